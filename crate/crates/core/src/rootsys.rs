//! Root systems of the supported simple types and the Weyl-group
//! combinatorics used by the Kostant cross-checks.
//!
//! Roots are stored as coefficient vectors over the simple roots. Weights
//! are stored in fundamental-weight (Dynkin label) coordinates. The Cartan
//! matrix convention is `cartan[i][j] = <alpha_j, alpha_i^vee>`, so the
//! Dynkin labels of `alpha_j` form column `j`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rat};

pub const MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl CartanType {
    pub fn from_letter(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            "G" | "g" => Ok(CartanType::G),
            other => Err(Error::UnsupportedAlgebra(format!("type {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::G => 'G',
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2` in the normalization where short roots have 1.
    pub half_lengths: Vec<i64>,
    /// Unit coefficient vectors, one per simple root.
    pub simple_roots: Vec<Vec<i64>>,
    /// Sorted by height, then lexicographically descending coefficients
    /// (so simple roots appear in node order).
    pub positive_roots: Vec<Vec<i64>>,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<Vec<Rat>>,
    /// Half the sum of the positive roots, in simple-root coordinates.
    pub weyl_vector: Vec<Rat>,
    index: BTreeMap<Vec<i64>, usize>,
}

fn cartan_matrix(kind: CartanType, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut d = vec![1i64; n];
    match kind {
        CartanType::A => {
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        CartanType::B => {
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // alpha_n short
            a[n - 1][n - 2] = -2;
            d = vec![2; n];
            d[n - 1] = 1;
        }
        CartanType::C => {
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // alpha_n long
            a[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        CartanType::D => {
            for i in 0..n - 2 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        CartanType::G => {
            // alpha_1 short, alpha_2 long
            a[0][1] = -3;
            a[1][0] = -1;
            d = vec![1, 3];
        }
    }
    (a, d)
}

fn supported(kind: CartanType, rank: usize) -> bool {
    match kind {
        CartanType::A => (1..=MAX_RANK).contains(&rank),
        CartanType::B | CartanType::C => (2..=MAX_RANK).contains(&rank),
        CartanType::D => (3..=MAX_RANK).contains(&rank),
        CartanType::G => rank == 2,
    }
}

pub fn build_root_system(kind: CartanType, rank: usize) -> Result<RootSystem> {
    if !supported(kind, rank) {
        return Err(Error::UnsupportedAlgebra(format!("{kind}{rank}")));
    }
    let (cartan, half_lengths) = cartan_matrix(kind, rank);
    let simple_roots: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect();

    // closure under root strings: beta + alpha_i is a root iff q > 0 where
    // q = p - <beta, alpha_i^vee> and p is the length of the downward string.
    let mut found: HashSet<Vec<i64>> = simple_roots.iter().cloned().collect();
    let mut layer = simple_roots.clone();
    let mut all = simple_roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..rank {
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if found.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if found.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let index = all.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

    // fundamental weights: omega_i = sum_j (A^{-1})_{ji} alpha_j
    let a_mat = Matrix::from_fn(rank, rank, |r, c| rat(cartan[r][c]));
    let inv = a_mat.inverse().expect("Cartan matrix is invertible");
    let fundamental_weights = (0..rank).map(|i| (0..rank).map(|j| inv[(j, i)].clone()).collect()).collect();

    let mut weyl_vector = vec![Rat::zero(); rank];
    for r in &all {
        for j in 0..rank {
            weyl_vector[j] += rat(r[j]) / rat(2);
        }
    }

    Ok(RootSystem {
        kind,
        rank,
        cartan,
        half_lengths,
        simple_roots,
        positive_roots: all,
        fundamental_weights,
        weyl_vector,
        index,
    })
}

impl RootSystem {
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// True for positive and negative roots.
    pub fn is_root(&self, root: &[i64]) -> bool {
        if self.index.contains_key(root) {
            return true;
        }
        let neg: Vec<i64> = root.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// Dynkin labels `<beta, alpha_i^vee>` of an element of the root lattice.
    pub fn dynkin_labels(&self, coeffs: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| coeffs[j] * self.cartan[i][j]).sum()).collect()
    }

    pub fn simple_root_labels(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|r| self.cartan[r][i]).collect()
    }

    /// `(beta, gamma)` for root-lattice elements with short roots of length² 2.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * b[j] * self.half_lengths[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// `(mu, beta)` for a weight in Dynkin labels and a root-lattice element.
    pub fn weight_root_inner(&self, mu: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank).map(|j| mu[j] * beta[j] * self.half_lengths[j]).sum()
    }

    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = mu[i];
        (0..self.rank).map(|r| mu[r] - c * self.cartan[r][i]).collect()
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// Checks the structural invariants of the root data; used by tests and
    /// the self-test.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Internal(format!("{}: {m}", self.label())));
        for i in 0..self.rank {
            if self.cartan[i][i] != 2 {
                return bad("Cartan diagonal");
            }
            for j in 0..self.rank {
                if i != j && self.cartan[i][j] > 0 {
                    return bad("positive off-diagonal Cartan entry");
                }
            }
        }
        for r in &self.positive_roots {
            if r.iter().any(|&c| c < 0) {
                return bad("positive root with negative coefficient");
            }
        }
        // the Weyl orbit of the simple roots is the full root set
        let orbit = self.weyl_orbit_of_simple_roots();
        let positive_in_orbit = orbit.iter().filter(|r| r.iter().all(|&c| c >= 0)).count();
        if positive_in_orbit != self.positive_roots.len() || !self.positive_roots.iter().all(|r| orbit.contains(r)) {
            return bad("positive roots differ from the Weyl orbit of the simple roots");
        }
        for a in &self.positive_roots {
            for b in &self.positive_roots {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if orbit.contains(&s) && !self.index.contains_key(&s) {
                    return bad("root sum missing");
                }
            }
        }
        let mut sum = vec![Rat::zero(); self.rank];
        for w in &self.fundamental_weights {
            for j in 0..self.rank {
                sum[j] += &w[j];
            }
        }
        if sum != self.weyl_vector {
            return bad("Weyl vector differs from sum of fundamental weights");
        }
        Ok(())
    }

    fn weyl_orbit_of_simple_roots(&self) -> HashSet<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack: Vec<Vec<i64>> = self.simple_roots.clone();
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            let labels = self.dynkin_labels(&r);
            for (i, &c) in labels.iter().enumerate() {
                let mut img = r.clone();
                img[i] -= c;
                if !seen.contains(&img) {
                    stack.push(img);
                }
            }
        }
        seen
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicChoice {
    /// 1-based node indices, sorted and deduplicated.
    pub crossed_nodes: Vec<usize>,
}

impl ParabolicChoice {
    pub fn new(rs: &RootSystem, nodes: &[usize]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidParabolic("no crossed nodes".into()));
        }
        let mut v = nodes.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&n| n == 0 || n > rs.rank) {
            return Err(Error::InvalidParabolic(format!("node index out of range: {bad} (rank {})", rs.rank)));
        }
        Ok(ParabolicChoice { crossed_nodes: v })
    }

    pub fn borel(rs: &RootSystem) -> Self {
        ParabolicChoice { crossed_nodes: (1..=rs.rank).collect() }
    }

    /// Zero-based membership test.
    pub fn is_crossed(&self, i: usize) -> bool {
        self.crossed_nodes.contains(&(i + 1))
    }
}

/// Grading degree of a (positive or negative) root: the sum of its
/// coefficients over the crossed simple roots.
pub fn root_height(rs: &RootSystem, root: &[i64], parabolic: &ParabolicChoice) -> Result<i64> {
    if root.len() != rs.rank || !rs.is_root(root) {
        return Err(Error::RootNotInSystem(root.to_vec()));
    }
    Ok((0..rs.rank).filter(|&i| parabolic.is_crossed(i)).map(|i| root[i]).sum())
}

/// A Weyl group element stored as a word in zero-based simple reflections;
/// `word = [i1, ..., il]` means `s_{i1} s_{i2} ... s_{il}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn from_word(word: &[usize]) -> Self {
        WeylElement { word: word.to_vec() }
    }

    pub fn act(&self, rs: &RootSystem, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        for &i in self.word.iter().rev() {
            v = rs.reflect(i, &v);
        }
        v
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut w = self.word.clone();
        w.extend(&other.word);
        WeylElement { word: w }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { word: self.word.iter().rev().copied().collect() }
    }

    /// Lexicographically minimal reduced word, found greedily from the image
    /// of rho: the first letter of a reduced word must be a left descent.
    pub fn canonical(&self, rs: &RootSystem) -> WeylElement {
        canonical_from_rho_image(rs, &self.act(rs, &rs.rho()))
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.canonical(rs).word.len()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join(""))
    }
}

fn canonical_from_rho_image(rs: &RootSystem, image: &[i64]) -> WeylElement {
    let mut v = image.to_vec();
    let mut word = Vec::new();
    while let Some(i) = v.iter().position(|&c| c < 0) {
        word.push(i);
        v = rs.reflect(i, &v);
    }
    WeylElement { word }
}

/// `w . lambda = w(lambda + rho) - rho`, in Dynkin labels.
pub fn affine_action(rs: &RootSystem, w: &WeylElement, lambda: &[i64]) -> Vec<i64> {
    let shifted: Vec<i64> = lambda.iter().map(|c| c + 1).collect();
    w.act(rs, &shifted).into_iter().map(|c| c - 1).collect()
}

pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let neg: Vec<i64> = rs.rho().iter().map(|c| -c).collect();
    canonical_from_rho_image(rs, &neg)
}

/// Highest weight of the dual representation, `-w0(lambda)`.
pub fn dual_weight(rs: &RootSystem, lambda: &[i64]) -> Vec<i64> {
    longest_element(rs).act(rs, lambda).into_iter().map(|c| -c).collect()
}

/// Elements `w` with `w^{-1}` sending every positive Levi root to a positive
/// root. Their inverses are the minimal representatives of `W / W_levi`,
/// which are in bijection with the orbit of `sum of crossed fundamental
/// weights` (stabilizer `W_levi`); the breadth-first search over that orbit
/// by simple reflections yields them together with their lengths. Sorted by
/// length and then by canonical word.
pub fn minimal_coset_representatives(rs: &RootSystem, parabolic: &ParabolicChoice) -> Vec<(WeylElement, usize)> {
    let start: Vec<i64> = (0..rs.rank).map(|i| i64::from(parabolic.is_crossed(i))).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut layer = vec![(start, Vec::<usize>::new())];
    let mut out = Vec::new();
    let mut length = 0;
    while !layer.is_empty() {
        let mut elems: Vec<WeylElement> =
            layer.iter().map(|(_, u)| WeylElement::from_word(u).inverse().canonical(rs)).collect();
        elems.sort();
        out.extend(elems.into_iter().map(|w| (w, length)));
        let mut next = Vec::new();
        for (v, u) in &layer {
            for i in 0..rs.rank {
                if v[i] > 0 {
                    let img = rs.reflect(i, v);
                    if seen.insert(img.clone()) {
                        let mut word = vec![i];
                        word.extend(u);
                        next.push((img, word));
                    }
                }
            }
        }
        layer = next;
        length += 1;
    }
    out
}

/// Full Weyl group by breadth-first search over the orbit of rho.
pub fn weyl_group(rs: &RootSystem) -> Vec<(WeylElement, usize)> {
    let all_crossed = ParabolicChoice::borel(rs);
    minimal_coset_representatives(rs, &all_crossed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: CartanType, n: usize) -> RootSystem {
        build_root_system(kind, n).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(CartanType::A, 1).num_positive_roots(), 1);
        assert_eq!(rs(CartanType::A, 2).num_positive_roots(), 3);
        assert_eq!(rs(CartanType::B, 2).num_positive_roots(), 4);
        for n in 1..=6 {
            assert_eq!(rs(CartanType::A, n).num_positive_roots(), n * (n + 1) / 2);
        }
        for n in 2..=6 {
            assert_eq!(rs(CartanType::B, n).num_positive_roots(), n * n);
            assert_eq!(rs(CartanType::C, n).num_positive_roots(), n * n);
        }
        for n in 3..=6 {
            assert_eq!(rs(CartanType::D, n).num_positive_roots(), n * (n - 1));
        }
        assert_eq!(rs(CartanType::G, 2).num_positive_roots(), 6);
    }

    #[test]
    fn unsupported_pairs() {
        for (k, n) in [(CartanType::G, 3), (CartanType::A, 7), (CartanType::B, 1), (CartanType::D, 2), (CartanType::A, 0)] {
            assert!(matches!(build_root_system(k, n), Err(Error::UnsupportedAlgebra(_))));
        }
    }

    #[test]
    fn invariants_hold_for_all_supported_types() {
        for (k, lo) in [(CartanType::A, 1), (CartanType::B, 2), (CartanType::C, 2), (CartanType::D, 3)] {
            for n in lo..=4 {
                rs(k, n).verify().unwrap();
            }
        }
        rs(CartanType::G, 2).verify().unwrap();
    }

    #[test]
    fn ordering_is_height_then_lex() {
        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let g2 = rs(CartanType::G, 2);
        assert_eq!(g2.highest_root(), &[3, 2]);
    }

    #[test]
    fn heights() {
        let a2 = rs(CartanType::A, 2);
        let borel = ParabolicChoice::new(&a2, &[1, 2]).unwrap();
        let p1 = ParabolicChoice::new(&a2, &[1]).unwrap();
        assert_eq!(root_height(&a2, &[1, 1], &borel).unwrap(), 2);
        assert_eq!(root_height(&a2, &[1, 1], &p1).unwrap(), 1);
        assert_eq!(root_height(&a2, &[-1, 0], &borel).unwrap(), -1);
        assert!(root_height(&a2, &[1, -1], &borel).is_err());
        assert!(root_height(&a2, &[2, 0], &borel).is_err());
    }

    #[test]
    fn parabolic_validation() {
        let a2 = rs(CartanType::A, 2);
        assert!(ParabolicChoice::new(&a2, &[3]).is_err());
        assert!(ParabolicChoice::new(&a2, &[]).is_err());
        assert!(ParabolicChoice::new(&a2, &[0]).is_err());
    }

    fn lengths(rs: &RootSystem, nodes: &[usize]) -> Vec<usize> {
        let p = ParabolicChoice::new(rs, nodes).unwrap();
        minimal_coset_representatives(rs, &p).into_iter().map(|(_, l)| l).collect()
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(lengths(&rs(CartanType::A, 1), &[1]), vec![0, 1]);
        assert_eq!(lengths(&rs(CartanType::A, 2), &[1, 2]), vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(lengths(&rs(CartanType::A, 2), &[1]), vec![0, 1, 2]);
        assert_eq!(weyl_group(&rs(CartanType::B, 3)).len(), 48);
        assert_eq!(weyl_group(&rs(CartanType::G, 2)).len(), 12);
        assert_eq!(weyl_group(&rs(CartanType::D, 4)).len(), 192);
    }

    // brute-force oracle: enumerate the group, keep w with w^{-1}(alpha_j) > 0
    // for every uncrossed simple root alpha_j
    #[test]
    fn coset_representatives_match_brute_force() {
        for (k, n) in [(CartanType::B, 3), (CartanType::C, 3), (CartanType::A, 4), (CartanType::G, 2)] {
            let r = rs(k, n);
            for mask in 1u32..(1 << n) {
                let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                let p = ParabolicChoice::new(&r, &nodes).unwrap();
                let mut expected: Vec<Vec<usize>> = weyl_group(&r)
                    .into_iter()
                    .filter(|(w, _)| {
                        (0..n).filter(|&j| !p.is_crossed(j)).all(|j| {
                            let img = act_on_root(&r, &w.inverse(), &r.simple_roots[j]);
                            img.iter().all(|&c| c >= 0)
                        })
                    })
                    .map(|(w, _)| w.word)
                    .collect();
                expected.sort();
                let mut got: Vec<Vec<usize>> =
                    minimal_coset_representatives(&r, &p).into_iter().map(|(w, _)| w.word).collect();
                got.sort();
                assert_eq!(got, expected, "{k}{n} {nodes:?}");
            }
        }
    }

    fn act_on_root(rs: &RootSystem, w: &WeylElement, root: &[i64]) -> Vec<i64> {
        let mut v = root.to_vec();
        for &i in w.word.iter().rev() {
            let c = rs.dynkin_labels(&v)[i];
            v[i] -= c;
        }
        v
    }

    #[test]
    fn affine_action_examples() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(affine_action(&a1, &WeylElement::identity(), &[1]), vec![1]);
        assert_eq!(affine_action(&a1, &WeylElement::from_word(&[0]), &[0]), vec![-2]);
        let a2 = rs(CartanType::A, 2);
        let w0 = longest_element(&a2);
        assert_eq!(w0.word.len(), 3);
        assert_eq!(affine_action(&a2, &w0, &[0, 0]), vec![-2, -2]);
        assert_eq!(affine_action(&a2, &WeylElement::identity(), &[1, 0]), vec![1, 0]);
        assert_eq!(dual_weight(&a2, &[1, 0]), vec![0, 1]);
    }

    #[test]
    fn canonical_words_are_lex_minimal() {
        let a2 = rs(CartanType::A, 2);
        let w = WeylElement::from_word(&[1, 0, 1]);
        assert_eq!(w.canonical(&a2).word, vec![0, 1, 0]);
        assert_eq!(WeylElement::from_word(&[0, 0]).canonical(&a2).word, Vec::<usize>::new());
    }

    #[test]
    fn length_counts_are_symmetric() {
        for (k, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 2), (CartanType::G, 2)] {
            let r = rs(k, n);
            for mask in 1u32..(1 << n) {
                let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                let ls = lengths(&r, &nodes);
                let top = *ls.iter().max().unwrap();
                for l in 0..=top {
                    let a = ls.iter().filter(|&&x| x == l).count();
                    let b = ls.iter().filter(|&&x| x == top - l).count();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

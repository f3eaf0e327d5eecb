//! Simply-laced root systems of types A, D and E.
//!
//! Node labels follow the usual conventions: `A_n` is the path `1 - 2 - ... - n`;
//! `D_n` is the path `1 - ... - (n-2)` with both `n-1` and `n` attached to the
//! trivalent node `n-2`; `E_6`, `E_7`, `E_8` use Bourbaki numbering (the chain
//! `1 - 3 - 4 - 5 - 6 - 7 - 8` with node `2` attached to `4`). A different
//! labeling can be supplied through [`RootSystem::with_cartan`].
//!
//! Roots are integer coefficient vectors over the simple roots. Positive roots
//! are enumerated by closure from the simple roots and stored sorted by height,
//! then lexicographically by coefficients.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

/// Cartan type of a simply-laced simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::D => "D",
            Kind::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "D" | "d" => Ok(Kind::D),
            "E" | "e" => Ok(Kind::E),
            other => Err(CrystalError::Parse(format!("unknown type {other:?}, expected A, D or E"))),
        }
    }
}

/// An element of the root lattice, written in simple-root coordinates.
///
/// Coordinate `k` (zero-based) is the coefficient of the simple root
/// `α_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    /// The simple root `α_i` (1-based `i`).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Nonzero with all coefficients nonnegative.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn plus(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i32) -> Root {
        Root(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Root {
        self.scaled(-1)
    }

    /// Compact label listing each simple root index once per unit of
    /// multiplicity, e.g. `α_1 + 2α_2 + α_3 + α_4` is `"12234"`. Ranks above
    /// nine use comma separators.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            for _ in 0..c.max(0) {
                parts.push((k + 1).to_string());
            }
        }
        if self.0.len() > 9 {
            parts.join(",")
        } else {
            parts.concat()
        }
    }

    /// Inverse of [`Root::label`] for positive roots of the given rank.
    pub fn from_label(rank: usize, label: &str) -> Result<Root> {
        let mut v = vec![0; rank];
        let pieces: Vec<String> = if label.contains(',') {
            label.split(',').map(|s| s.trim().to_string()).collect()
        } else {
            label.chars().map(|c| c.to_string()).collect()
        };
        for p in pieces {
            let k: usize = p
                .parse()
                .map_err(|_| CrystalError::Parse(format!("bad root label {label:?}")))?;
            if k == 0 || k > rank {
                return Err(CrystalError::InvalidNode { node: k, rank });
            }
            v[k - 1] += 1;
        }
        Ok(Root(v))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Name of a positive root of `D_n` in the `β_{i,k}` / `γ_{i,k}` scheme.
///
/// * `β_{i,k} = α_i + ... + α_k` for `1 <= i <= k <= n-1`;
/// * `γ_{i,k} = α_i + ... + α_{n-2} + α_n + α_{n-1} + ... + α_k` for
///   `1 <= i < k <= n`. The ascending segment is empty when `i = n-1` and
///   the descending one is empty when `k = n`, so `γ_{n-1,n} = α_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "lowercase")]
pub enum DRootName {
    Beta { i: usize, k: usize },
    Gamma { i: usize, k: usize },
}

impl DRootName {
    pub fn is_valid(&self, n: usize) -> bool {
        match *self {
            DRootName::Beta { i, k } => 1 <= i && i <= k && k < n,
            DRootName::Gamma { i, k } => 1 <= i && i < k && k <= n,
        }
    }

    /// All valid names for `D_n`, betas first.
    pub fn all(n: usize) -> Vec<DRootName> {
        let mut out = Vec::with_capacity(n * (n - 1));
        for i in 1..n {
            for k in i..n {
                out.push(DRootName::Beta { i, k });
            }
        }
        for i in 1..n {
            for k in i + 1..=n {
                out.push(DRootName::Gamma { i, k });
            }
        }
        out
    }

    /// The root this name denotes in `D_n`.
    pub fn root(&self, n: usize) -> Root {
        let mut v = vec![0; n];
        match *self {
            DRootName::Beta { i, k } => {
                for m in i..=k {
                    v[m - 1] += 1;
                }
            }
            DRootName::Gamma { i, k } => {
                for m in i..=n.saturating_sub(2) {
                    v[m - 1] += 1;
                }
                v[n - 1] += 1;
                for m in k..n {
                    v[m - 1] += 1;
                }
            }
        }
        Root(v)
    }
}

impl fmt::Display for DRootName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DRootName::Beta { i, k } => write!(f, "β_{{{i},{k}}}"),
            DRootName::Gamma { i, k } => write!(f, "γ_{{{i},{k}}}"),
        }
    }
}

/// A simply-laced root system with its positive roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    /// Builds the root system of the given type and rank with the standard
    /// labeling.
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let cartan = standard_cartan(kind, rank)?;
        Self::with_cartan(kind, cartan)
    }

    /// Builds a root system from a user-supplied simply-laced Cartan matrix.
    ///
    /// The matrix must be symmetric, have 2 on the diagonal and entries in
    /// `{0, -1}` elsewhere, describe a connected diagram, and be of finite
    /// type.
    pub fn with_cartan(kind: Kind, cartan: Vec<Vec<i32>>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(CrystalError::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(CrystalError::InvalidCartan(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(CrystalError::InvalidCartan(format!("diagonal entry ({}, {}) is {a}", i + 1, j + 1)));
                }
                if i != j && a != 0 && a != -1 {
                    return Err(CrystalError::InvalidCartan(format!(
                        "off-diagonal entry ({}, {}) is {a}, not simply-laced",
                        i + 1,
                        j + 1
                    )));
                }
                if cartan[j][i] != a {
                    return Err(CrystalError::InvalidCartan(format!("not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        if !is_connected(&cartan) {
            return Err(CrystalError::InvalidCartan("Dynkin diagram is not connected".into()));
        }
        let positive = enumerate_positive_roots(&cartan)?;
        let index = positive.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        Ok(RootSystem {
            kind,
            rank,
            cartan,
            positive,
            index,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Cartan entry `a_ij` for 1-based node indices.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i32 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Number of positive roots, which is also the length of `w_0`.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank, i)
    }

    /// Position of a positive root in [`RootSystem::positive_roots`].
    pub fn root_index(&self, beta: &Root) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn is_positive_root(&self, beta: &Root) -> bool {
        self.index.contains_key(beta)
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(CrystalError::InvalidNode { node: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    /// The bilinear form `(β|β') = Σ b_i b'_j a_ij`.
    pub fn pairing(&self, beta: &Root, other: &Root) -> Result<i32> {
        for r in [beta, other] {
            if r.rank() != self.rank {
                return Err(CrystalError::DimensionMismatch {
                    expected: self.rank,
                    found: r.rank(),
                });
            }
        }
        Ok(self.dot(beta.coeffs(), other.coeffs()))
    }

    pub(crate) fn dot(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += ai * bj * self.cartan[i][j];
            }
        }
        s
    }

    /// `(α_i|β)`, cheaper than a full pairing.
    pub(crate) fn pair_simple(&self, i: usize, beta: &[i32]) -> i32 {
        self.cartan[i - 1].iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// The simple reflection `s_i(β) = β - (β|α_i) α_i`.
    pub fn reflect(&self, i: usize, beta: &Root) -> Root {
        let p = self.pair_simple(i, beta.coeffs());
        let mut v = beta.0.clone();
        v[i - 1] -= p;
        Root(v)
    }

    /// `D_n` name of a positive root.
    pub fn name_root_d(&self, beta: &Root) -> Result<DRootName> {
        if self.kind != Kind::D {
            return Err(CrystalError::WrongKind {
                expected: Kind::D,
                found: self.kind,
            });
        }
        if !self.is_positive_root(beta) {
            return Err(CrystalError::NotARoot(beta.coeffs().to_vec()));
        }
        DRootName::all(self.rank)
            .into_iter()
            .find(|name| &name.root(self.rank) == beta)
            .ok_or_else(|| CrystalError::NotARoot(beta.coeffs().to_vec()))
    }

    /// The positive root named by `name` in `D_n`.
    pub fn d_root(&self, name: DRootName) -> Result<Root> {
        if self.kind != Kind::D {
            return Err(CrystalError::WrongKind {
                expected: Kind::D,
                found: self.kind,
            });
        }
        if !name.is_valid(self.rank) {
            return Err(CrystalError::Parse(format!("{name} is not a valid name in D_{}", self.rank)));
        }
        Ok(name.root(self.rank))
    }
}

#[derive(Serialize, Deserialize)]
struct RootSystemRepr {
    kind: Kind,
    rank: usize,
}

impl Serialize for RootSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RootSystemRepr {
            kind: self.kind,
            rank: self.rank,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RootSystemRepr::deserialize(deserializer)?;
        RootSystem::new(repr.kind, repr.rank).map_err(serde::de::Error::custom)
    }
}

fn standard_cartan(kind: Kind, rank: usize) -> Result<Vec<Vec<i32>>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match kind {
        Kind::A => {
            if rank < 1 {
                return Err(CrystalError::InvalidRank {
                    kind,
                    rank,
                    reason: "type A needs rank at least 1",
                });
            }
            edges.extend((1..rank).map(|i| (i, i + 1)));
        }
        Kind::D => {
            if rank < 3 {
                return Err(CrystalError::InvalidRank {
                    kind,
                    rank,
                    reason: "type D needs rank at least 3",
                });
            }
            edges.extend((1..rank - 2).map(|i| (i, i + 1)));
            edges.push((rank - 2, rank - 1));
            edges.push((rank - 2, rank));
        }
        Kind::E => {
            if !(6..=8).contains(&rank) {
                return Err(CrystalError::InvalidRank {
                    kind,
                    rank,
                    reason: "type E needs rank 6, 7 or 8",
                });
            }
            edges.push((1, 3));
            edges.push((2, 4));
            edges.extend((3..rank).map(|i| (i, i + 1)));
        }
    }
    let mut cartan = vec![vec![0; rank]; rank];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        cartan[i - 1][j - 1] = -1;
        cartan[j - 1][i - 1] = -1;
    }
    Ok(cartan)
}

fn is_connected(cartan: &[Vec<i32>]) -> bool {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if cartan[i][j] != 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Closure from the simple roots: `β + α_i` is added whenever it is a root,
/// which for a simply-laced system happens exactly when `(β|α_i) = -1`.
fn enumerate_positive_roots(cartan: &[Vec<i32>]) -> Result<Vec<Root>> {
    let rank = cartan.len();
    // Finite simply-laced systems have at most max(rank^2, 120) positive roots.
    let limit = (rank * rank).max(120);
    let pair_simple = |i: usize, v: &[i32]| -> i32 { cartan[i].iter().zip(v).map(|(a, b)| a * b).sum() };

    let mut all: Vec<Root> = (1..=rank).map(|i| Root::simple(rank, i)).collect();
    let mut seen: HashSet<Root> = all.iter().cloned().collect();
    let mut level = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..rank {
                if pair_simple(i, beta.coeffs()) == -1 {
                    let mut v = beta.coeffs().to_vec();
                    v[i] += 1;
                    let r = Root(v);
                    if seen.insert(r.clone()) {
                        next.push(r);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > limit {
            return Err(CrystalError::InvalidCartan("Cartan matrix is not of finite type".into()));
        }
        level = next;
    }
    // A finite system is closed under simple reflections up to sign; the
    // affine and hyperbolic cases fail this.
    for beta in &all {
        for i in 0..rank {
            let p = pair_simple(i, beta.coeffs());
            let mut v = beta.coeffs().to_vec();
            v[i] -= p;
            let img = Root(v);
            if !(seen.contains(&img) || seen.contains(&img.neg())) {
                return Err(CrystalError::InvalidCartan("Cartan matrix is not of finite type".into()));
            }
        }
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn root_counts() {
        for n in 1..=8 {
            assert_eq!(RootSystem::new(Kind::A, n).unwrap().num_positive(), n * (n + 1) / 2);
        }
        for n in 3..=8 {
            assert_eq!(RootSystem::new(Kind::D, n).unwrap().num_positive(), n * (n - 1));
        }
        for (n, count) in [(6, 36), (7, 63), (8, 120)] {
            assert_eq!(RootSystem::new(Kind::E, n).unwrap().num_positive(), count);
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::new(Kind::A, 0).is_err());
        assert!(RootSystem::new(Kind::D, 2).is_err());
        assert!(RootSystem::new(Kind::E, 5).is_err());
        assert!(RootSystem::new(Kind::E, 9).is_err());
    }

    #[test]
    fn cartan_override_validation() {
        assert!(RootSystem::with_cartan(Kind::A, vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(RootSystem::with_cartan(Kind::A, vec![vec![2, 0], vec![0, 2]]).is_err());
        assert!(RootSystem::with_cartan(Kind::A, vec![vec![2, -1], vec![0, 2]]).is_err());
        // affine A_2: a triangle
        let tri = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(RootSystem::with_cartan(Kind::A, tri).is_err());
        let a2 = RootSystem::with_cartan(Kind::A, vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2, RootSystem::new(Kind::A, 2).unwrap());
    }

    #[test]
    fn a3_contains_highest_root() {
        let rs = RootSystem::new(Kind::A, 3).unwrap();
        assert!(rs.is_positive_root(&r(&[1, 1, 1])));
        assert_eq!(rs.positive_roots().last().unwrap(), &r(&[1, 1, 1]));
    }

    #[test]
    fn d4_contains_highest_root() {
        let rs = RootSystem::new(Kind::D, 4).unwrap();
        assert_eq!(rs.num_positive(), 12);
        assert!(rs.is_positive_root(&Root::from_label(4, "12234").unwrap()));
        assert_eq!(rs.cartan_entry(2, 3), -1);
        assert_eq!(rs.cartan_entry(2, 4), -1);
        assert_eq!(rs.cartan_entry(3, 4), 0);
    }

    #[test]
    fn pairing_examples() {
        let a3 = RootSystem::new(Kind::A, 3).unwrap();
        assert_eq!(a3.pairing(&a3.simple_root(2), &a3.simple_root(2)).unwrap(), 2);
        assert_eq!(a3.pairing(&a3.simple_root(2), &r(&[1, 1, 1])).unwrap(), 0);
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        assert_eq!(d4.pairing(&d4.simple_root(4), &r(&[0, 1, 1, 0])).unwrap(), -1);
        assert_eq!(
            d4.pairing(&r(&[1, 0]), &r(&[1, 0, 0, 0])),
            Err(CrystalError::DimensionMismatch { expected: 4, found: 2 })
        );
    }

    #[test]
    fn reflection_examples() {
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        assert_eq!(a2.reflect(1, &a2.simple_root(1)), r(&[-1, 0]));
        assert_eq!(a2.reflect(1, &a2.simple_root(2)), r(&[1, 1]));
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        assert_eq!(d4.reflect(2, &d4.simple_root(4)), r(&[0, 1, 0, 1]));
    }

    #[test]
    fn closure_under_reflections() {
        for (kind, n) in [(Kind::A, 5), (Kind::D, 5), (Kind::E, 6), (Kind::E, 8)] {
            let rs = RootSystem::new(kind, n).unwrap();
            for beta in rs.positive_roots() {
                for i in 1..=n {
                    let img = rs.reflect(i, beta);
                    assert!(rs.is_positive_root(&img) || rs.is_positive_root(&img.neg()));
                }
            }
        }
    }

    #[test]
    fn positive_roots_have_connected_support() {
        let rs = RootSystem::new(Kind::E, 7).unwrap();
        for beta in rs.positive_roots() {
            let support: Vec<usize> = (0..7).filter(|&k| beta.coeffs()[k] > 0).collect();
            let sub: Vec<Vec<i32>> =
                support.iter().map(|&i| support.iter().map(|&j| rs.cartan()[i][j]).collect()).collect();
            assert!(is_connected(&sub), "{beta}");
        }
    }

    #[test]
    fn d_names() {
        let d4 = RootSystem::new(Kind::D, 4).unwrap();
        let name = |l: &str| d4.name_root_d(&Root::from_label(4, l).unwrap()).unwrap();
        assert_eq!(name("234"), DRootName::Gamma { i: 2, k: 3 });
        assert_eq!(name("124"), DRootName::Gamma { i: 1, k: 4 });
        assert_eq!(name("4"), DRootName::Gamma { i: 3, k: 4 });
        assert_eq!(name("12234"), DRootName::Gamma { i: 1, k: 2 });
        assert_eq!(name("123"), DRootName::Beta { i: 1, k: 3 });
        assert!(d4.name_root_d(&r(&[1, 0, 1, 0])).is_err());
        let a3 = RootSystem::new(Kind::A, 3).unwrap();
        assert!(a3.name_root_d(&a3.simple_root(1)).is_err());
    }

    #[test]
    fn d_names_bijective() {
        for n in 3..=7 {
            let rs = RootSystem::new(Kind::D, n).unwrap();
            let names = DRootName::all(n);
            assert_eq!(names.len(), rs.num_positive());
            let images: HashSet<Root> = names.iter().map(|nm| nm.root(n)).collect();
            assert_eq!(images.len(), names.len());
            for beta in rs.positive_roots() {
                let nm = rs.name_root_d(beta).unwrap();
                assert_eq!(&nm.root(n), beta);
            }
            assert_eq!(
                rs.name_root_d(&rs.simple_root(n)).unwrap(),
                DRootName::Gamma { i: n - 1, k: n }
            );
        }
    }

    #[test]
    fn labels_round_trip() {
        let rs = RootSystem::new(Kind::E, 8).unwrap();
        for beta in rs.positive_roots() {
            assert_eq!(&Root::from_label(8, &beta.label()).unwrap(), beta);
        }
    }

    #[test]
    fn serde_shapes() {
        let rs = RootSystem::new(Kind::D, 5).unwrap();
        let json = serde_json::to_string(&rs).unwrap();
        assert_eq!(json, r#"{"kind":"D","rank":5}"#);
        let back: RootSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rs);
        assert_eq!(serde_json::to_string(&r(&[1, 2, 1, 1])).unwrap(), "[1,2,1,1]");
    }
}

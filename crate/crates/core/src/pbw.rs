//! Lusztig data and the crystal operators computed by braid-move transport.
//!
//! A Lusztig datum is a vector of multiplicities aligned with the convex order
//! of a reduced word for `w_0`. Changing the word by a braid move changes the
//! datum by a piecewise-linear bijection; composing these along a braid path
//! gives the transition map between any two words. On a word starting with
//! `i`, `f_i` and `e_i` only touch the first coordinate, so the general
//! operator is: transport to an `i`-initial word, adjust, transport back.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};
use crate::root_system::{Root, RootSystem};
use crate::weyl::{self, BraidMove, MoveKind, ReducedWord, WeylElement};

/// A finitely supported function from positive roots to nonnegative
/// integers. Zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantPartition {
    mult: BTreeMap<Root, u32>,
}

#[derive(Serialize, Deserialize)]
struct PartEntry {
    root: Root,
    mult: u32,
}

impl Serialize for KostantPartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<PartEntry> = self
            .mult
            .iter()
            .map(|(root, &mult)| PartEntry {
                root: root.clone(),
                mult,
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KostantPartition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<PartEntry>::deserialize(deserializer)?;
        let mut p = KostantPartition::new();
        for e in entries {
            p.add(&e.root, e.mult as i64).map_err(serde::de::Error::custom)?;
        }
        Ok(p)
    }
}

impl KostantPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Root, u32)>>(pairs: I) -> Self {
        let mut p = Self::new();
        for (root, m) in pairs {
            p.set(root, m);
        }
        p
    }

    pub fn get(&self, beta: &Root) -> u32 {
        self.mult.get(beta).copied().unwrap_or(0)
    }

    pub fn set(&mut self, beta: Root, m: u32) {
        if m == 0 {
            self.mult.remove(&beta);
        } else {
            self.mult.insert(beta, m);
        }
    }

    /// Adds `delta` to the multiplicity of `beta`, refusing to go negative.
    pub fn add(&mut self, beta: &Root, delta: i64) -> Result<()> {
        let cur = self.get(beta) as i64 + delta;
        if cur < 0 {
            return Err(CrystalError::Invariant(format!(
                "multiplicity of {beta} would become {cur}"
            )));
        }
        self.set(beta.clone(), cur as u32);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Root, u32)> {
        self.mult.iter().map(|(r, &m)| (r, m))
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Number of parts counted with multiplicity.
    pub fn num_parts(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    /// Checks that every key is a positive root of `rs`.
    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        for beta in self.mult.keys() {
            if !rs.is_positive_root(beta) {
                return Err(CrystalError::NotARoot(beta.coeffs().to_vec()));
            }
        }
        Ok(())
    }

    /// `-Σ c_β β`.
    pub fn weight(&self, rank: usize) -> Root {
        let mut w = vec![0i32; rank];
        for (beta, m) in self.iter() {
            for (acc, c) in w.iter_mut().zip(beta.coeffs()) {
                *acc -= m as i32 * c;
            }
        }
        Root::new(w)
    }

    /// Canonical text form, sorted by root: `"1^2 12 123^4"`.
    pub fn key(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.iter()
            .map(|(r, m)| if m == 1 { r.label() } else { format!("{}^{m}", r.label()) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for KostantPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A reduced word for `w_0` with a multiplicity for each root of its convex
/// order, position by position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LusztigDatum {
    word: ReducedWord,
    vector: Vec<u32>,
}

/// Unvalidated JSON form of a [`LusztigDatum`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LusztigDatumRepr {
    pub word: Vec<usize>,
    pub vector: Vec<u32>,
}

impl LusztigDatum {
    pub fn new(rs: &RootSystem, word: ReducedWord, vector: Vec<u32>) -> Result<Self> {
        word.check_longest(rs)?;
        if vector.len() != word.len() {
            return Err(CrystalError::DimensionMismatch {
                expected: word.len(),
                found: vector.len(),
            });
        }
        Ok(LusztigDatum { word, vector })
    }

    pub fn zero(rs: &RootSystem, word: ReducedWord) -> Result<Self> {
        let n = word.len();
        Self::new(rs, word, vec![0; n])
    }

    pub fn from_repr(rs: &RootSystem, repr: LusztigDatumRepr) -> Result<Self> {
        let word = ReducedWord::longest(rs, repr.word)?;
        Self::new(rs, word, repr.vector)
    }

    pub fn to_repr(&self) -> LusztigDatumRepr {
        LusztigDatumRepr {
            word: self.word.letters().to_vec(),
            vector: self.vector.clone(),
        }
    }

    /// Reads a Kostant partition through the convex order of `word`.
    pub fn from_partition(rs: &RootSystem, word: ReducedWord, c: &KostantPartition) -> Result<Self> {
        c.validate(rs)?;
        let order = weyl::convex_order(rs, &word)?;
        let vector = order.roots().iter().map(|r| c.get(r)).collect();
        Ok(LusztigDatum { word, vector })
    }

    pub fn to_partition(&self, rs: &RootSystem) -> KostantPartition {
        let roots = weyl::inversion_roots(rs, self.word.letters());
        KostantPartition::from_pairs(roots.into_iter().zip(self.vector.iter().copied()))
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn vector(&self) -> &[u32] {
        &self.vector
    }

    pub fn weight(&self, rs: &RootSystem) -> Root {
        self.to_partition(rs).weight(rs.rank())
    }
}

/// The piecewise-linear map for a 3-term move on values `(x, y, z)` attached
/// to `(β, β+β'', β'')`. Returns the values in the new positions, which hold
/// `(β'', β+β'', β)`.
pub fn three_term(x: u32, y: u32, z: u32) -> (u32, u32, u32) {
    let (x, y, z) = (x as i64, y as i64, z as i64);
    let on_beta = y.max(x + y - z);
    let on_sum = x.min(z);
    let on_beta2 = y.max(y + z - x);
    (on_beta2 as u32, on_sum as u32, on_beta as u32)
}

fn transport_vector(v: &mut [u32], moves: &[BraidMove]) {
    for m in moves {
        let k = m.position - 1;
        match m.kind {
            MoveKind::Commute => v.swap(k, k + 1),
            MoveKind::Braid => {
                let (a, b, c) = three_term(v[k], v[k + 1], v[k + 2]);
                v[k] = a;
                v[k + 1] = b;
                v[k + 2] = c;
            }
        }
    }
}

/// Transport across a single braid move.
pub fn transport_move(rs: &RootSystem, d: &LusztigDatum, m: BraidMove) -> Result<LusztigDatum> {
    let word = weyl::apply_move(rs, &d.word, m)?;
    let mut vector = d.vector.clone();
    transport_vector(&mut vector, &[m]);
    Ok(LusztigDatum { word, vector })
}

/// Transport along an explicit path, checking each move.
pub fn transport_along(rs: &RootSystem, d: &LusztigDatum, path: &[BraidMove]) -> Result<LusztigDatum> {
    let word = weyl::apply_moves(rs, &d.word, path)?;
    let mut vector = d.vector.clone();
    transport_vector(&mut vector, path);
    Ok(LusztigDatum { word, vector })
}

/// The transition map to the Lusztig datum for `target`.
pub fn transport(rs: &RootSystem, d: &LusztigDatum, target: &ReducedWord) -> Result<LusztigDatum> {
    target.check_longest(rs)?;
    let path = weyl::braid_path(rs, &d.word, target)?;
    transport_along(rs, d, &path)
}

/// The `i`-initial word `i ++ word(s_i w_0)`.
pub fn initial_word(rs: &RootSystem, i: usize) -> Result<ReducedWord> {
    rs.check_node(i)?;
    let mut g = WeylElement::longest(rs);
    g.left_multiply(rs, i);
    let mut letters = vec![i];
    letters.extend_from_slice(weyl::word_of_element(rs, &g).letters());
    Ok(ReducedWord::from_trusted(letters))
}

/// Crystal operators on Lusztig data for a fixed word, computed by transport.
///
/// The braid path from the word to each `i`-initial word is computed once and
/// cached.
#[derive(Debug)]
pub struct PbwCrystal {
    rs: RootSystem,
    word: ReducedWord,
    roots: Vec<Root>,
    paths: Vec<OnceLock<Vec<BraidMove>>>,
}

impl PbwCrystal {
    pub fn new(rs: &RootSystem, word: ReducedWord) -> Result<Self> {
        word.check_longest(rs)?;
        let roots = weyl::inversion_roots(rs, word.letters());
        Ok(PbwCrystal {
            rs: rs.clone(),
            word,
            roots,
            paths: (0..rs.rank()).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    /// Roots of the convex order, position by position.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// The cached braid path from the word to the `i`-initial word.
    pub fn path_to_initial(&self, i: usize) -> Result<&[BraidMove]> {
        self.rs.check_node(i)?;
        if let Some(p) = self.paths[i - 1].get() {
            return Ok(p);
        }
        let target = initial_word(&self.rs, i)?;
        let path = weyl::braid_path(&self.rs, &self.word, &target)?;
        Ok(self.paths[i - 1].get_or_init(|| path))
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.roots.len() {
            return Err(CrystalError::DimensionMismatch {
                expected: self.roots.len(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.roots.len()]
    }

    /// `(first coordinate, path)` after transport to the `i`-initial word.
    fn to_initial(&self, v: &[u32], i: usize) -> Result<(Vec<u32>, &[BraidMove])> {
        self.check_len(v)?;
        let path = self.path_to_initial(i)?;
        let mut w = v.to_vec();
        transport_vector(&mut w, path);
        Ok((w, path))
    }

    pub fn f(&self, v: &[u32], i: usize) -> Result<Vec<u32>> {
        let (mut w, path) = self.to_initial(v, i)?;
        w[0] += 1;
        transport_vector(&mut w, &weyl::reverse_path(path));
        Ok(w)
    }

    pub fn e(&self, v: &[u32], i: usize) -> Result<Option<Vec<u32>>> {
        let (mut w, path) = self.to_initial(v, i)?;
        if w[0] == 0 {
            return Ok(None);
        }
        w[0] -= 1;
        transport_vector(&mut w, &weyl::reverse_path(path));
        Ok(Some(w))
    }

    pub fn epsilon(&self, v: &[u32], i: usize) -> Result<u32> {
        Ok(self.to_initial(v, i)?.0[0])
    }

    pub fn weight(&self, v: &[u32]) -> Root {
        let mut w = vec![0i32; self.rs.rank()];
        for (beta, &m) in self.roots.iter().zip(v) {
            for (acc, c) in w.iter_mut().zip(beta.coeffs()) {
                *acc -= m as i32 * c;
            }
        }
        Root::new(w)
    }

    pub fn partition(&self, v: &[u32]) -> KostantPartition {
        KostantPartition::from_pairs(self.roots.iter().cloned().zip(v.iter().copied()))
    }

    pub fn vector_of(&self, c: &KostantPartition) -> Vec<u32> {
        self.roots.iter().map(|r| c.get(r)).collect()
    }
}

pub fn f_general(rs: &RootSystem, d: &LusztigDatum, i: usize) -> Result<LusztigDatum> {
    let crystal = PbwCrystal::new(rs, d.word.clone())?;
    let vector = crystal.f(&d.vector, i)?;
    Ok(LusztigDatum {
        word: d.word.clone(),
        vector,
    })
}

pub fn e_general(rs: &RootSystem, d: &LusztigDatum, i: usize) -> Result<Option<LusztigDatum>> {
    let crystal = PbwCrystal::new(rs, d.word.clone())?;
    Ok(crystal.e(&d.vector, i)?.map(|vector| LusztigDatum {
        word: d.word.clone(),
        vector,
    }))
}

pub fn epsilon(rs: &RootSystem, d: &LusztigDatum, i: usize) -> Result<u32> {
    PbwCrystal::new(rs, d.word.clone())?.epsilon(&d.vector, i)
}

//! Weyl group elements, reduced words, convex orders and braid moves.
//!
//! Node indices in words are 1-based, matching the labels of the Dynkin
//! diagram. Braid move positions are 1-based as well.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};
use crate::root_system::{Root, RootSystem};

/// A Weyl group element, stored as its action matrix on simple-root
/// coordinates: column `j` holds the coordinates of `g(α_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: Vec<Vec<i32>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![vec![0; rank]; rank];
        for (k, row) in matrix.iter_mut().enumerate() {
            row[k] = 1;
        }
        WeylElement { matrix }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let mut g = Self::identity(rs.rank());
        g.right_multiply(rs, i);
        g
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_t}`.
    pub fn from_letters(rs: &RootSystem, letters: &[usize]) -> Self {
        let mut g = Self::identity(rs.rank());
        for &i in letters {
            g.right_multiply(rs, i);
        }
        g
    }

    pub fn longest(rs: &RootSystem) -> Self {
        Self::from_letters(rs, longest_word(rs).letters())
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `g ← g s_i`.
    pub fn right_multiply(&mut self, rs: &RootSystem, i: usize) {
        let n = self.rank();
        let col_i: Vec<i32> = (0..n).map(|r| self.matrix[r][i - 1]).collect();
        for j in 1..=n {
            let a = rs.cartan_entry(i, j);
            if a != 0 {
                for (r, row) in self.matrix.iter_mut().enumerate() {
                    row[j - 1] -= a * col_i[r];
                }
            }
        }
    }

    /// `g ← s_i g`.
    pub fn left_multiply(&mut self, rs: &RootSystem, i: usize) {
        let n = self.rank();
        for c in 0..n {
            let p: i32 = (0..n).map(|r| rs.cartan()[i - 1][r] * self.matrix[r][c]).sum();
            self.matrix[i - 1][c] -= p;
        }
    }

    pub fn apply(&self, beta: &Root) -> Root {
        let n = self.rank();
        let v = beta.coeffs();
        Root::new((0..n).map(|r| (0..n).map(|c| self.matrix[r][c] * v[c]).sum()).collect())
    }

    /// Image of the simple root `α_i`.
    pub fn image_of_simple(&self, i: usize) -> Root {
        Root::new(self.matrix.iter().map(|row| row[i - 1]).collect())
    }

    /// `ℓ(g s_i) < ℓ(g)`, i.e. `g(α_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.matrix.iter().any(|row| row[i - 1] < 0)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots().iter().filter(|b| self.apply(b).is_negative()).count()
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let word = word_of_element(rs, self);
        let rev: Vec<usize> = word.letters().iter().rev().copied().collect();
        Self::from_letters(rs, &rev)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..n).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum();
            }
        }
        WeylElement { matrix: m }
    }
}

/// A reduced word `s_{i_1} ... s_{i_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Validates reducedness: each letter must increase the length, i.e.
    /// `s_{i_1} ... s_{i_{k-1}} (α_{i_k}) > 0`.
    pub fn new(rs: &RootSystem, letters: Vec<usize>) -> Result<Self> {
        let mut g = WeylElement::identity(rs.rank());
        for (k, &i) in letters.iter().enumerate() {
            rs.check_node(i)?;
            if g.has_right_descent(i) {
                return Err(CrystalError::NotReduced { position: k + 1 });
            }
            g.right_multiply(rs, i);
        }
        Ok(ReducedWord { letters })
    }

    /// Validates reducedness and that the word has length `N`.
    pub fn longest(rs: &RootSystem, letters: Vec<usize>) -> Result<Self> {
        let w = Self::new(rs, letters)?;
        w.check_longest(rs)?;
        Ok(w)
    }

    pub(crate) fn from_trusted(letters: Vec<usize>) -> Self {
        ReducedWord { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.letters.first().copied()
    }

    pub fn element(&self, rs: &RootSystem) -> WeylElement {
        WeylElement::from_letters(rs, &self.letters)
    }

    pub fn check_longest(&self, rs: &RootSystem) -> Result<()> {
        if self.len() != rs.num_positive() {
            return Err(CrystalError::NotLongest {
                length: self.len(),
                expected: rs.num_positive(),
            });
        }
        Ok(())
    }

    /// Digit string when every index is at most 9, comma list otherwise.
    pub fn to_compact(&self) -> String {
        if self.letters.iter().all(|&i| i <= 9) {
            self.letters.iter().map(|i| i.to_string()).collect()
        } else {
            self.letters.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

/// Parses `"123421234234"` or `"1,2,10,3"` into letters.
pub fn parse_letters(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |p: &str| CrystalError::Parse(format!("bad letter {p:?} in word {s:?}"));
    if s.contains(',') || s.contains(' ') {
        s.split([',', ' '])
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| bad(p)))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(&c.to_string())))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// `(i, j) → (j, i)` with `a_ij = 0`.
    #[serde(rename = "2-term")]
    Commute,
    /// `(i, j, i) → (j, i, j)` with `a_ij = -1`.
    #[serde(rename = "3-term")]
    Braid,
}

impl MoveKind {
    pub fn span(self) -> usize {
        match self {
            MoveKind::Commute => 2,
            MoveKind::Braid => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MoveKind::Commute => "2-term",
            MoveKind::Braid => "3-term",
        }
    }
}

/// A braid move at a 1-based position of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidMove {
    pub position: usize,
    pub kind: MoveKind,
}

impl BraidMove {
    pub fn commute(position: usize) -> Self {
        BraidMove {
            position,
            kind: MoveKind::Commute,
        }
    }

    pub fn braid(position: usize) -> Self {
        BraidMove {
            position,
            kind: MoveKind::Braid,
        }
    }

    pub(crate) fn start(&self) -> usize {
        self.position - 1
    }
}

impl fmt::Display for BraidMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.name(), self.position)
    }
}

/// A total order on the positive roots, listed from smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConvexOrder {
    roots: Vec<Root>,
}

impl ConvexOrder {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn position(&self, beta: &Root) -> Option<usize> {
        self.roots.iter().position(|r| r == beta)
    }

    /// Checks every triple `β' = β + β''` of positive roots: `β'` must lie
    /// strictly between its summands.
    pub fn is_convex(&self, rs: &RootSystem) -> bool {
        self.first_violation(rs).is_none()
    }

    /// The first triple `(β, β'')` whose sum is not between them.
    pub fn first_violation(&self, rs: &RootSystem) -> Option<(Root, Root)> {
        let mut pos = vec![usize::MAX; rs.num_positive()];
        for (k, r) in self.roots.iter().enumerate() {
            match rs.root_index(r) {
                Some(idx) if pos[idx] == usize::MAX => pos[idx] = k,
                _ => return Some((r.clone(), r.clone())),
            }
        }
        if pos.contains(&usize::MAX) {
            let missing = rs.positive_roots()[pos.iter().position(|&p| p == usize::MAX).unwrap()].clone();
            return Some((missing.clone(), missing));
        }
        let roots = rs.positive_roots();
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                let sum = roots[a].plus(&roots[b]);
                if let Some(s) = rs.root_index(&sum) {
                    let (pa, pb, ps) = (pos[a], pos[b], pos[s]);
                    let between = (pa < ps && ps < pb) || (pb < ps && ps < pa);
                    if !between {
                        return Some((roots[a].clone(), roots[b].clone()));
                    }
                }
            }
        }
        None
    }
}

/// `β_k = s_{i_1} ... s_{i_{k-1}} (α_{i_k})` for any reduced word.
pub fn inversion_roots(rs: &RootSystem, letters: &[usize]) -> Vec<Root> {
    let mut g = WeylElement::identity(rs.rank());
    let mut out = Vec::with_capacity(letters.len());
    for &i in letters {
        out.push(g.image_of_simple(i));
        g.right_multiply(rs, i);
    }
    out
}

/// The convex order attached to a reduced word for `w_0`.
pub fn convex_order(rs: &RootSystem, w: &ReducedWord) -> Result<ConvexOrder> {
    w.check_longest(rs)?;
    Ok(ConvexOrder {
        roots: inversion_roots(rs, w.letters()),
    })
}

/// Greedy ascent: append the smallest letter that increases the length until
/// no letter does.
pub fn longest_word(rs: &RootSystem) -> ReducedWord {
    let mut g = WeylElement::identity(rs.rank());
    let mut letters = Vec::new();
    while let Some(i) = (1..=rs.rank()).find(|&i| !g.has_right_descent(i)) {
        g.right_multiply(rs, i);
        letters.push(i);
    }
    ReducedWord::from_trusted(letters)
}

/// A uniformly random ascent to `w_0`; every reduced word of `w_0` has
/// positive probability.
pub fn random_longest_word<R: Rng + ?Sized>(rs: &RootSystem, rng: &mut R) -> ReducedWord {
    let mut g = WeylElement::identity(rs.rank());
    let mut letters = Vec::new();
    loop {
        let ascents: Vec<usize> = (1..=rs.rank()).filter(|&i| !g.has_right_descent(i)).collect();
        if ascents.is_empty() {
            break;
        }
        let i = ascents[rng.random_range(0..ascents.len())];
        g.right_multiply(rs, i);
        letters.push(i);
    }
    ReducedWord::from_trusted(letters)
}

/// Greedy descent: strip the smallest right descent until the identity is
/// reached.
pub fn word_of_element(rs: &RootSystem, g: &WeylElement) -> ReducedWord {
    let mut h = g.clone();
    let mut rev = Vec::new();
    while let Some(i) = (1..=rs.rank()).find(|&i| h.has_right_descent(i)) {
        h.right_multiply(rs, i);
        rev.push(i);
    }
    rev.reverse();
    ReducedWord::from_trusted(rev)
}

fn move_at(rs: &RootSystem, letters: &[usize], k: usize) -> Vec<BraidMove> {
    let mut out = Vec::new();
    if k + 1 < letters.len() && rs.cartan_entry(letters[k], letters[k + 1]) == 0 {
        out.push(BraidMove::commute(k + 1));
    }
    if k + 2 < letters.len() && letters[k] == letters[k + 2] && rs.cartan_entry(letters[k], letters[k + 1]) == -1 {
        out.push(BraidMove::braid(k + 1));
    }
    out
}

/// All braid moves available on a word, read off its letters.
pub fn available_moves(rs: &RootSystem, w: &ReducedWord) -> Vec<BraidMove> {
    (0..w.len()).flat_map(|k| move_at(rs, w.letters(), k)).collect()
}

/// All braid moves available on a word, read off its inversion roots: a
/// 2-term move where `(β_k|β_{k+1}) = 0`, a 3-term move where
/// `β_{k+1} = β_k + β_{k+2}`.
pub fn available_moves_by_roots(rs: &RootSystem, roots: &[Root]) -> Vec<BraidMove> {
    let mut out = Vec::new();
    for k in 0..roots.len() {
        if k + 1 < roots.len() && rs.dot(roots[k].coeffs(), roots[k + 1].coeffs()) == 0 {
            out.push(BraidMove::commute(k + 1));
        }
        if k + 2 < roots.len() && roots[k + 1] == roots[k].plus(&roots[k + 2]) {
            out.push(BraidMove::braid(k + 1));
        }
    }
    out
}

pub(crate) fn is_admissible(rs: &RootSystem, letters: &[usize], m: BraidMove) -> bool {
    m.position >= 1 && move_at(rs, letters, m.start()).contains(&m)
}

/// Applies a move to raw letters, assuming admissibility.
pub(crate) fn apply_move_unchecked(letters: &mut [usize], m: BraidMove) {
    let k = m.start();
    match m.kind {
        MoveKind::Commute => letters.swap(k, k + 1),
        MoveKind::Braid => {
            let (i, j) = (letters[k], letters[k + 1]);
            letters[k] = j;
            letters[k + 1] = i;
            letters[k + 2] = j;
        }
    }
}

pub fn apply_move(rs: &RootSystem, w: &ReducedWord, m: BraidMove) -> Result<ReducedWord> {
    if !is_admissible(rs, w.letters(), m) {
        return Err(CrystalError::InadmissibleMove {
            position: m.position,
            kind: m.kind.name(),
        });
    }
    let mut letters = w.letters.clone();
    apply_move_unchecked(&mut letters, m);
    Ok(ReducedWord { letters })
}

/// Replays a sequence of moves, checking each one.
pub fn apply_moves(rs: &RootSystem, w: &ReducedWord, moves: &[BraidMove]) -> Result<ReducedWord> {
    let mut cur = w.clone();
    for &m in moves {
        cur = apply_move(rs, &cur, m)?;
    }
    Ok(cur)
}

/// The inverse of a move sequence: every braid move undoes itself, so the
/// same moves are replayed in reverse order.
pub fn reverse_path(path: &[BraidMove]) -> Vec<BraidMove> {
    path.iter().rev().copied().collect()
}

/// A sequence of braid moves transforming `a` into `b`.
///
/// Constructive Matsumoto: after the common prefix, the words begin with
/// distinct letters `s` and `t`, both left descents of the remaining element
/// `w`. Writing `w = w_{st} u` with `w_{st}` the longest element of the
/// parabolic subgroup `<s, t>`, both words are routed through
/// `(s t ...)_m u` and `(t s ...)_m u`, which differ by a single move.
pub fn braid_path(rs: &RootSystem, a: &ReducedWord, b: &ReducedWord) -> Result<Vec<BraidMove>> {
    if a.len() != b.len() || a.element(rs) != b.element(rs) {
        return Err(CrystalError::DifferentElements);
    }
    let mut out = Vec::new();
    path_rec(rs, a.letters(), b.letters(), 0, &mut out);
    Ok(out)
}

fn alternating(s: usize, t: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { s } else { t }).collect()
}

fn path_rec(rs: &RootSystem, a: &[usize], b: &[usize], offset: usize, out: &mut Vec<BraidMove>) {
    let Some(k) = a.iter().zip(b).position(|(x, y)| x != y) else {
        return;
    };
    let (a, b, offset) = (&a[k..], &b[k..], offset + k);
    let (s, t) = (a[0], b[0]);
    let m = if rs.cartan_entry(s, t) == 0 { 2 } else { 3 };
    let mut u = WeylElement::from_letters(rs, a);
    for &x in &alternating(s, t, m) {
        u.left_multiply(rs, x);
    }
    let tail = word_of_element(rs, &u);
    debug_assert_eq!(tail.len() + m, a.len());
    let mut c = alternating(s, t, m);
    c.extend_from_slice(tail.letters());
    let mut c2 = alternating(t, s, m);
    c2.extend_from_slice(tail.letters());
    path_rec(rs, a, &c, offset, out);
    out.push(if m == 2 {
        BraidMove::commute(offset + 1)
    } else {
        BraidMove::braid(offset + 1)
    });
    path_rec(rs, &c2, b, offset, out);
}

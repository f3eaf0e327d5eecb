//! Semi-adapted words and the bracketing crystal operators.
//!
//! For a word `w` and a node `i`, let `η_1, ..., η_k` be the roots before
//! `α_i` in the convex order with `(α_i|η_j) < 0`, and `ν_j = η_j + α_i`. The
//! bracket string of a Kostant partition `c` is
//!
//! ```text
//! )^{c(ν_1)} (^{c(η_1)}  ...  )^{c(ν_k)} (^{c(η_k)}  )^{c(α_i)}
//! ```
//!
//! and after cancelling `()` pairs, `f_i` acts at the leftmost uncanceled `(`
//! and `e_i` at the rightmost uncanceled `)`. This agrees with the crystal
//! structure obtained by transport whenever `w` is semi-adapted for `i`: it
//! can be brought to an `i`-initial word by 2-term moves and 3-term moves on
//! consecutive roots `(β, β+α_i, α_i)`.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};
use crate::pbw::KostantPartition;
use crate::root_system::{Root, RootSystem};
use crate::weyl::{self, BraidMove, MoveKind, ReducedWord};

/// Visited-state cap used by [`is_semi_adapted`].
pub const DEFAULT_SEARCH_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BracketPair {
    pub nu: Root,
    pub eta: Root,
}

/// The ordered `(ν_j, η_j)` pairs and the apex root `α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub apex: Root,
    pub pairs: Vec<BracketPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bracket {
    Open,
    Close,
}

impl Bracket {
    fn symbol(self) -> char {
        match self {
            Bracket::Open => '(',
            Bracket::Close => ')',
        }
    }
}

/// Which multiplicity a token was emitted for. Pair indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    Nu(usize),
    Eta(usize),
    Apex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub bracket: Bracket,
    pub block: Block,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketString {
    pub tokens: Vec<Token>,
    /// Indices into `tokens` left after cancellation, in increasing order.
    pub uncanceled: Vec<usize>,
}

impl BracketString {
    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        let brackets: Vec<Bracket> = tokens.iter().map(|t| t.bracket).collect();
        let uncanceled = cancel(&brackets);
        BracketString { tokens, uncanceled }
    }

    /// Index of the leftmost uncanceled `(`.
    pub fn leftmost_open(&self) -> Option<usize> {
        self.uncanceled.iter().copied().find(|&k| self.tokens[k].bracket == Bracket::Open)
    }

    /// Index of the rightmost uncanceled `)`.
    pub fn rightmost_close(&self) -> Option<usize> {
        self.uncanceled.iter().rev().copied().find(|&k| self.tokens[k].bracket == Bracket::Close)
    }

    pub fn render(&self) -> String {
        self.tokens.iter().map(|t| t.bracket.symbol()).collect()
    }

    /// Signature after cancellation: `(number of ')', number of '(')`.
    pub fn reduced_counts(&self) -> (usize, usize) {
        let closes = self.uncanceled.iter().filter(|&&k| self.tokens[k].bracket == Bracket::Close).count();
        (closes, self.uncanceled.len() - closes)
    }
}

impl fmt::Display for BracketString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Single-pass cancellation of adjacent `()` pairs. Returns the indices of
/// the uncanceled brackets, which read `)...)(...(`.
pub fn cancel(brackets: &[Bracket]) -> Vec<usize> {
    let mut closes = Vec::new();
    let mut opens: Vec<usize> = Vec::new();
    for (k, b) in brackets.iter().enumerate() {
        match b {
            Bracket::Open => opens.push(k),
            Bracket::Close => {
                if opens.pop().is_none() {
                    closes.push(k);
                }
            }
        }
    }
    closes.extend(opens);
    closes
}

/// The `η`/`ν` data for `w` and `i`.
pub fn bracket_spec(rs: &RootSystem, w: &ReducedWord, i: usize) -> Result<BracketSpec> {
    rs.check_node(i)?;
    let order = weyl::convex_order(rs, w)?;
    let apex = rs.simple_root(i);
    let Some(stop) = order.position(&apex) else {
        return Err(CrystalError::NotARoot(apex.coeffs().to_vec()));
    };
    let mut pairs = Vec::new();
    for eta in &order.roots()[..stop] {
        if rs.pair_simple(i, eta.coeffs()) < 0 {
            let nu = eta.plus(&apex);
            if !rs.is_positive_root(&nu) {
                return Err(CrystalError::Invariant(format!("{eta} + α_{i} is not a root")));
            }
            pairs.push(BracketPair { nu, eta: eta.clone() });
        }
    }
    Ok(BracketSpec { i, apex, pairs })
}

pub fn bracket_string(c: &KostantPartition, spec: &BracketSpec) -> BracketString {
    let mut tokens = Vec::new();
    let mut emit = |bracket, block, count: u32| {
        tokens.extend(std::iter::repeat_n(Token { bracket, block }, count as usize));
    };
    for (j, p) in spec.pairs.iter().enumerate() {
        emit(Bracket::Close, Block::Nu(j), c.get(&p.nu));
        emit(Bracket::Open, Block::Eta(j), c.get(&p.eta));
    }
    emit(Bracket::Close, Block::Apex, c.get(&spec.apex));
    BracketString::from_tokens(tokens)
}

fn apply_f(c: &KostantPartition, spec: &BracketSpec) -> Result<KostantPartition> {
    let s = bracket_string(c, spec);
    let mut out = c.clone();
    match s.leftmost_open().map(|k| s.tokens[k].block) {
        Some(Block::Eta(j)) => {
            let p = &spec.pairs[j];
            out.add(&p.nu, 1)?;
            out.add(&p.eta, -1)?;
        }
        Some(other) => return Err(CrystalError::Invariant(format!("'(' emitted for {other:?}"))),
        None => out.add(&spec.apex, 1)?,
    }
    Ok(out)
}

fn apply_e(c: &KostantPartition, spec: &BracketSpec) -> Result<Option<KostantPartition>> {
    let s = bracket_string(c, spec);
    let mut out = c.clone();
    match s.rightmost_close().map(|k| s.tokens[k].block) {
        Some(Block::Nu(j)) => {
            let p = &spec.pairs[j];
            out.add(&p.nu, -1)?;
            out.add(&p.eta, 1)?;
        }
        Some(Block::Apex) => out.add(&spec.apex, -1)?,
        Some(Block::Eta(_)) => return Err(CrystalError::Invariant("')' emitted for an η block".into())),
        None => return Ok(None),
    }
    Ok(Some(out))
}

pub fn f_bracket(c: &KostantPartition, rs: &RootSystem, w: &ReducedWord, i: usize) -> Result<KostantPartition> {
    apply_f(c, &bracket_spec(rs, w, i)?)
}

pub fn e_bracket(
    c: &KostantPartition,
    rs: &RootSystem,
    w: &ReducedWord,
    i: usize,
) -> Result<Option<KostantPartition>> {
    apply_e(c, &bracket_spec(rs, w, i)?)
}

/// Bracketing operators for a fixed word, with the bracket specs cached.
///
/// The operators compute on any word. Whether the word is semi-adapted for a
/// given `i` (and hence whether the result is the crystal operator) is
/// reported by [`BracketCrystal::certified`].
#[derive(Debug)]
pub struct BracketCrystal {
    rs: RootSystem,
    word: ReducedWord,
    specs: Vec<BracketSpec>,
    certification: Vec<OnceLock<bool>>,
}

impl BracketCrystal {
    pub fn new(rs: &RootSystem, word: ReducedWord) -> Result<Self> {
        let specs = (1..=rs.rank()).map(|i| bracket_spec(rs, &word, i)).collect::<Result<_>>()?;
        Ok(BracketCrystal {
            rs: rs.clone(),
            word,
            specs,
            certification: (0..rs.rank()).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn spec(&self, i: usize) -> Result<&BracketSpec> {
        self.rs.check_node(i)?;
        Ok(&self.specs[i - 1])
    }

    pub fn string(&self, c: &KostantPartition, i: usize) -> Result<BracketString> {
        Ok(bracket_string(c, self.spec(i)?))
    }

    pub fn f(&self, c: &KostantPartition, i: usize) -> Result<KostantPartition> {
        apply_f(c, self.spec(i)?)
    }

    pub fn e(&self, c: &KostantPartition, i: usize) -> Result<Option<KostantPartition>> {
        apply_e(c, self.spec(i)?)
    }

    /// Number of uncanceled `)`, which is how many times `e_i` applies.
    pub fn epsilon(&self, c: &KostantPartition, i: usize) -> Result<usize> {
        Ok(self.string(c, i)?.reduced_counts().0)
    }

    /// Whether the word was certified semi-adapted for `i` (search capped at
    /// [`DEFAULT_SEARCH_CAP`]; an inconclusive search counts as uncertified).
    pub fn certified(&self, i: usize) -> Result<bool> {
        self.rs.check_node(i)?;
        if let Some(&b) = self.certification[i - 1].get() {
            return Ok(b);
        }
        let ok = matches!(is_semi_adapted(&self.rs, &self.word, i)?, SemiAdaptedOutcome::Certified(_));
        Ok(*self.certification[i - 1].get_or_init(|| ok))
    }

    pub fn explain(&self, c: &KostantPartition, i: usize) -> Result<String> {
        Ok(explain(c, self.spec(i)?))
    }
}

/// Renders a bracket string with root labels above each token, the brackets
/// below, and `^` under the uncanceled ones.
pub fn explain(c: &KostantPartition, spec: &BracketSpec) -> String {
    let s = bracket_string(c, spec);
    let label = |b: Block| match b {
        Block::Nu(j) => spec.pairs[j].nu.label(),
        Block::Eta(j) => spec.pairs[j].eta.label(),
        Block::Apex => spec.apex.label(),
    };
    let uncanceled: HashSet<usize> = s.uncanceled.iter().copied().collect();
    let (mut top, mut mid, mut bottom) = (String::new(), String::new(), String::new());
    for (k, t) in s.tokens.iter().enumerate() {
        let l = label(t.block);
        let width = l.chars().count().max(1);
        let _ = write!(top, "{l:>width$} ");
        let _ = write!(mid, "{:>width$} ", t.bracket.symbol());
        let mark = if uncanceled.contains(&k) { '^' } else { ' ' };
        let _ = write!(bottom, "{mark:>width$} ");
    }
    let mut out = String::new();
    let _ = writeln!(out, "i = {}", spec.i);
    let blocks: Vec<String> = spec
        .pairs
        .iter()
        .map(|p| format!("({}, {})", p.nu.label(), p.eta.label()))
        .collect();
    let _ = writeln!(out, "pairs (ν, η): {}; apex {}", blocks.join(" "), spec.apex.label());
    if s.tokens.is_empty() {
        let _ = writeln!(out, "(empty bracket string)");
    } else {
        let _ = writeln!(out, "{}", top.trim_end());
        let _ = writeln!(out, "{}", mid.trim_end());
        let _ = writeln!(out, "{}", bottom.trim_end());
    }
    let f_at = match s.leftmost_open().map(|k| s.tokens[k].block) {
        Some(Block::Eta(j)) => format!("{} -> {}", spec.pairs[j].eta.label(), spec.pairs[j].nu.label()),
        _ => format!("new part {}", spec.apex.label()),
    };
    let e_at = match s.rightmost_close().map(|k| s.tokens[k].block) {
        Some(Block::Nu(j)) => format!("{} -> {}", spec.pairs[j].nu.label(), spec.pairs[j].eta.label()),
        Some(_) => format!("remove part {}", spec.apex.label()),
        None => "0".into(),
    };
    let _ = writeln!(out, "f_{}: {f_at}", spec.i);
    let _ = write!(out, "e_{}: {e_at}", spec.i);
    out
}

/// A sequence of allowed moves taking the word to an `i`-initial word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiAdaptedWitness {
    pub i: usize,
    pub moves: Vec<BraidMove>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SemiAdaptedOutcome {
    Certified(SemiAdaptedWitness),
    /// The reachable set was exhausted without reaching an `i`-initial word.
    NotSemiAdapted { explored: usize },
    /// The visited-state cap was hit first.
    Inconclusive { explored: usize },
}

impl SemiAdaptedOutcome {
    pub fn witness(&self) -> Option<&SemiAdaptedWitness> {
        match self {
            SemiAdaptedOutcome::Certified(w) => Some(w),
            _ => None,
        }
    }
}

pub fn is_semi_adapted(rs: &RootSystem, w: &ReducedWord, i: usize) -> Result<SemiAdaptedOutcome> {
    is_semi_adapted_capped(rs, w, i, DEFAULT_SEARCH_CAP)
}

/// Depth-first search over the words reachable by allowed moves.
///
/// Only the position `p` of `α_i` and the two sides of the word matter: a
/// 3-term move is allowed only at `p - 2`, and 2-term moves inside either
/// side do not change anything but the side's commutation class. States are
/// therefore keyed by the lexicographically least representatives of the
/// prefix and suffix classes, and each transition bubbles a letter to the
/// boundary with 2-term moves before the move that shifts `α_i`.
pub fn is_semi_adapted_capped(rs: &RootSystem, w: &ReducedWord, i: usize, cap: usize) -> Result<SemiAdaptedOutcome> {
    rs.check_node(i)?;
    w.check_longest(rs)?;
    let apex = rs.simple_root(i);
    let roots = weyl::inversion_roots(rs, w.letters());
    let p0 = roots.iter().position(|r| r == &apex).expect("every positive root occurs in a w_0 order");

    struct Node {
        letters: Vec<usize>,
        p: usize,
        parent: Option<usize>,
        moves: Vec<BraidMove>,
    }

    let key = |letters: &[usize], p: usize| -> (Vec<usize>, usize, Vec<usize>) {
        (
            normal_form(rs, &letters[..p]),
            letters[p],
            normal_form(rs, &letters[p + 1..]),
        )
    };

    let mut nodes = vec![Node {
        letters: w.letters().to_vec(),
        p: p0,
        parent: None,
        moves: Vec::new(),
    }];
    let mut visited = HashSet::new();
    visited.insert(key(w.letters(), p0));
    let mut stack = vec![0usize];

    while let Some(id) = stack.pop() {
        if nodes[id].p == 0 {
            let mut segments = Vec::new();
            let mut cur = Some(id);
            while let Some(c) = cur {
                segments.push(std::mem::take(&mut nodes[c].moves));
                cur = nodes[c].parent;
            }
            let moves = segments.into_iter().rev().flatten().collect();
            return Ok(SemiAdaptedOutcome::Certified(SemiAdaptedWitness { i, moves }));
        }
        // pushed in reverse priority: the 3-term moves are explored first
        let succ = successors(rs, &nodes[id].letters, nodes[id].p);
        for (letters, p, moves) in succ.into_iter().rev() {
            if visited.insert(key(&letters, p)) {
                if visited.len() > cap {
                    return Ok(SemiAdaptedOutcome::Inconclusive { explored: visited.len() - 1 });
                }
                nodes.push(Node {
                    letters,
                    p,
                    parent: Some(id),
                    moves,
                });
                stack.push(nodes.len() - 1);
            }
        }
    }
    Ok(SemiAdaptedOutcome::NotSemiAdapted { explored: visited.len() })
}

type Successor = (Vec<usize>, usize, Vec<BraidMove>);

/// Moves out of a state, ordered: 3-term moves, leftward 2-term moves of
/// `α_i`, rightward 2-term moves of `α_i`.
fn successors(rs: &RootSystem, letters: &[usize], p: usize) -> Vec<Successor> {
    let a = letters[p];
    let commutes = |x: usize, y: usize| rs.cartan_entry(x, y) == 0;
    let mut braids = Vec::new();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();

    for c in final_letters(rs, &letters[..p]) {
        let mut cur = letters.to_vec();
        let mut moves = Vec::new();
        bubble_right(&mut cur, &mut moves, c, p - 1);
        if commutes(c, a) {
            let m = BraidMove::commute(p);
            weyl::apply_move_unchecked(&mut cur, m);
            moves.push(m);
            lefts.push((cur, p - 1, moves));
        } else if rs.cartan_entry(c, a) == -1 && p >= 2 && final_letters(rs, &cur[..p - 1]).contains(&a) {
            bubble_right(&mut cur, &mut moves, a, p - 2);
            let m = BraidMove::braid(p - 1);
            weyl::apply_move_unchecked(&mut cur, m);
            moves.push(m);
            braids.push((cur, p - 2, moves));
        }
    }
    for c in initial_letters(rs, &letters[p + 1..]) {
        if !commutes(c, a) {
            continue;
        }
        let mut cur = letters.to_vec();
        let mut moves = Vec::new();
        bubble_left(&mut cur, &mut moves, c, p + 1);
        let m = BraidMove::commute(p + 1);
        weyl::apply_move_unchecked(&mut cur, m);
        moves.push(m);
        rights.push((cur, p + 1, moves));
    }
    braids.extend(lefts);
    braids.extend(rights);
    braids
}

/// Letters that can be moved to the end of `w` by commutations.
fn final_letters(rs: &RootSystem, w: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for c in 1..=rs.rank() {
        if let Some(q) = w.iter().rposition(|&x| x == c) {
            if w[q + 1..].iter().all(|&x| rs.cartan_entry(x, c) == 0) {
                out.push(c);
            }
        }
    }
    out
}

fn initial_letters(rs: &RootSystem, w: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for c in 1..=rs.rank() {
        if let Some(q) = w.iter().position(|&x| x == c) {
            if w[..q].iter().all(|&x| rs.cartan_entry(x, c) == 0) {
                out.push(c);
            }
        }
    }
    out
}

/// Moves the last `c` at or before `to` rightwards to position `to`.
fn bubble_right(letters: &mut [usize], moves: &mut Vec<BraidMove>, c: usize, to: usize) {
    let mut q = letters[..=to].iter().rposition(|&x| x == c).expect("letter present");
    while q < to {
        let m = BraidMove::commute(q + 1);
        weyl::apply_move_unchecked(letters, m);
        moves.push(m);
        q += 1;
    }
}

/// Moves the first `c` at or after `to` leftwards to position `to`.
fn bubble_left(letters: &mut [usize], moves: &mut Vec<BraidMove>, c: usize, to: usize) {
    let mut q = to + letters[to..].iter().position(|&x| x == c).expect("letter present");
    while q > to {
        let m = BraidMove::commute(q);
        weyl::apply_move_unchecked(letters, m);
        moves.push(m);
        q -= 1;
    }
}

/// Lexicographically least word in the commutation class of `w`.
fn normal_form(rs: &RootSystem, w: &[usize]) -> Vec<usize> {
    let mut rest = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for c in 1..=rs.rank() {
            if best.is_some_and(|(v, _)| v <= c) {
                break;
            }
            if let Some(q) = rest.iter().position(|&x| x == c) {
                if rest[..q].iter().all(|&x| rs.cartan_entry(x, c) == 0) {
                    best = Some((c, q));
                }
            }
        }
        let (_, q) = best.expect("some letter is always initial");
        out.push(rest.remove(q));
    }
    out
}

/// Replays a witness, checking every move is allowed and the final word
/// starts with `i`.
pub fn validate_witness(rs: &RootSystem, w: &ReducedWord, witness: &SemiAdaptedWitness) -> Result<ReducedWord> {
    let apex = rs.simple_root(witness.i);
    let mut cur = w.clone();
    for &m in &witness.moves {
        if m.kind == MoveKind::Braid {
            let roots = weyl::inversion_roots(rs, cur.letters());
            let k = m.position - 1;
            if k + 2 >= roots.len() || roots[k + 2] != apex || roots[k + 1] != roots[k].plus(&apex) {
                return Err(CrystalError::InadmissibleMove {
                    position: m.position,
                    kind: "restricted 3-term",
                });
            }
        }
        cur = weyl::apply_move(rs, &cur, m)?;
    }
    if cur.first() != Some(witness.i) {
        return Err(CrystalError::Invariant(format!(
            "witness ends at {cur}, which does not start with {}",
            witness.i
        )));
    }
    Ok(cur)
}

/// For each 3-term move of a witness, the index `j` of the bracket pair whose
/// `(η_j, ν_j)` it acts on (`None` if it acts on a triple outside the spec).
pub fn three_term_pair_indices(
    rs: &RootSystem,
    w: &ReducedWord,
    witness: &SemiAdaptedWitness,
) -> Result<Vec<Option<usize>>> {
    let spec = bracket_spec(rs, w, witness.i)?;
    let mut cur = w.clone();
    let mut out = Vec::new();
    for &m in &witness.moves {
        if m.kind == MoveKind::Braid {
            let roots = weyl::inversion_roots(rs, cur.letters());
            let k = m.position - 1;
            out.push(
                spec.pairs
                    .iter()
                    .position(|p| p.eta == roots[k] && p.nu == roots[k + 1]),
            );
        }
        cur = weyl::apply_move(rs, &cur, m)?;
    }
    Ok(out)
}

fn type_check(rs: &RootSystem, expected: crate::root_system::Kind) -> Result<()> {
    if rs.kind() != expected {
        return Err(CrystalError::WrongKind {
            expected,
            found: rs.kind(),
        });
    }
    Ok(())
}

/// `i^A`: `(1 2 ... n)(1 2 ... n-1) ... (1 2)(1)`.
pub fn word_a_letters(n: usize) -> Vec<usize> {
    (1..=n).rev().flat_map(|k| 1..=k).collect()
}

/// `i^D`: blocks `(i, i+1, ..., n-1, n, n-2, ..., i)` for `i = 1..n-2`,
/// followed by `(n-1, n)`.
pub fn word_d_letters(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        out.extend(i..=n);
        out.extend((i..=n - 2).rev());
    }
    out.extend([n - 1, n]);
    out
}

pub fn word_a(rs: &RootSystem) -> Result<ReducedWord> {
    type_check(rs, crate::root_system::Kind::A)?;
    ReducedWord::longest(rs, word_a_letters(rs.rank()))
}

pub fn word_d(rs: &RootSystem) -> Result<ReducedWord> {
    type_check(rs, crate::root_system::Kind::D)?;
    ReducedWord::longest(rs, word_d_letters(rs.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{DRootName, Kind};
    use crate::weyl::parse_letters;

    fn sys(kind: Kind, n: usize) -> RootSystem {
        RootSystem::new(kind, n).unwrap()
    }

    fn word(rs: &RootSystem, s: &str) -> ReducedWord {
        ReducedWord::longest(rs, parse_letters(s).unwrap()).unwrap()
    }

    fn lab(rs: &RootSystem, l: &str) -> Root {
        Root::from_label(rs.rank(), l).unwrap()
    }

    fn a3_example(rs: &RootSystem) -> KostantPartition {
        KostantPartition::from_pairs(
            [("1", 2), ("12", 3), ("123", 1), ("2", 3), ("23", 3), ("3", 2)].map(|(l, m)| (lab(rs, l), m)),
        )
    }

    fn d4_example(rs: &RootSystem) -> KostantPartition {
        let labels = ["1", "12", "123", "124", "1234", "12234", "2", "24", "23", "234", "3", "4"];
        let mults = [2, 1, 4, 2, 1, 3, 3, 1, 2, 1, 2, 0];
        KostantPartition::from_pairs(labels.iter().zip(mults).map(|(l, m)| (lab(rs, l), m)))
    }

    #[test]
    fn canonical_words() {
        assert_eq!(word_a_letters(3), vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(word_d_letters(4), parse_letters("123421234234").unwrap());
        for n in 1..=7 {
            word_a(&sys(Kind::A, n)).unwrap();
        }
        for n in 3..=7 {
            word_d(&sys(Kind::D, n)).unwrap();
        }
        assert!(word_d(&sys(Kind::A, 4)).is_err());
    }

    #[test]
    fn cancellation_examples() {
        use Bracket::*;
        assert!(cancel(&[]).is_empty());
        assert_eq!(cancel(&[Open, Close]), Vec::<usize>::new());
        assert_eq!(cancel(&[Close, Open, Open, Close, Close, Open]), vec![0, 5]);
    }

    #[test]
    fn a3_spec_and_string() {
        let rs = sys(Kind::A, 3);
        let w = word(&rs, "123121");
        let spec = bracket_spec(&rs, &w, 2).unwrap();
        assert_eq!(
            spec.pairs,
            vec![BracketPair {
                nu: lab(&rs, "12"),
                eta: lab(&rs, "1")
            }]
        );
        assert_eq!(spec.apex, lab(&rs, "2"));
        let s = bracket_string(&a3_example(&rs), &spec);
        assert_eq!(s.render(), ")))(()))");
        assert_eq!(s.leftmost_open(), None);
        let f = f_bracket(&a3_example(&rs), &rs, &w, 2).unwrap();
        let mut expected = a3_example(&rs);
        expected.set(lab(&rs, "2"), 4);
        assert_eq!(f, expected);
    }

    #[test]
    fn zero_partition() {
        let rs = sys(Kind::D, 4);
        let w = word_d(&rs).unwrap();
        for i in 1..=4 {
            let spec = bracket_spec(&rs, &w, i).unwrap();
            let s = bracket_string(&KostantPartition::new(), &spec);
            assert!(s.tokens.is_empty() && s.uncanceled.is_empty());
            assert_eq!(e_bracket(&KostantPartition::new(), &rs, &w, i).unwrap(), None);
        }
    }

    #[test]
    fn d4_example_f4() {
        let rs = sys(Kind::D, 4);
        let w = word_d(&rs).unwrap();
        let c = d4_example(&rs);
        let spec = bracket_spec(&rs, &w, 4).unwrap();
        let s = bracket_string(&c, &spec);
        assert_eq!(s.render(), "))()(((()((()((");
        let k = s.leftmost_open().unwrap();
        assert_eq!(s.tokens[k].block, Block::Eta(1));
        assert_eq!(spec.pairs[1].eta, lab(&rs, "123"));
        let f = f_bracket(&c, &rs, &w, 4).unwrap();
        assert_eq!(f.get(&lab(&rs, "123")), 3);
        assert_eq!(f.get(&lab(&rs, "1234")), 2);
        assert_eq!(e_bracket(&f, &rs, &w, 4).unwrap(), Some(c));
    }

    #[test]
    fn spec_for_word_a_matches_segments() {
        for n in 1..=6 {
            let rs = sys(Kind::A, n);
            let w = word_a(&rs).unwrap();
            let seg = |i: usize, j: usize| {
                let mut v = vec![0; n];
                for m in i..=j {
                    v[m - 1] = 1;
                }
                Root::new(v)
            };
            for i in 1..=n {
                let spec = bracket_spec(&rs, &w, i).unwrap();
                let expected: Vec<BracketPair> = (1..i)
                    .map(|j| BracketPair {
                        nu: seg(j, i),
                        eta: seg(j, i - 1),
                    })
                    .collect();
                assert_eq!(spec.pairs, expected, "A_{n}, i = {i}");
            }
        }
    }

    #[test]
    fn spec_for_word_d_matches_table() {
        for n in 4..=7 {
            let rs = sys(Kind::D, n);
            let w = word_d(&rs).unwrap();
            let root = |name: DRootName| name.root(n);
            use DRootName::{Beta, Gamma};
            for i in 1..=n {
                let spec = bracket_spec(&rs, &w, i).unwrap();
                let mut expected = Vec::new();
                if i == n {
                    for j in 1..=n - 2 {
                        expected.push((Gamma { i: j, k: n }, Beta { i: j, k: n - 2 }));
                        expected.push((Gamma { i: j, k: n - 1 }, Beta { i: j, k: n - 1 }));
                    }
                } else {
                    for j in 1..i {
                        expected.push((Beta { i: j, k: i }, Beta { i: j, k: i - 1 }));
                        expected.push((Gamma { i: j, k: i }, Gamma { i: j, k: i + 1 }));
                    }
                }
                let expected: Vec<BracketPair> = expected
                    .into_iter()
                    .map(|(nu, eta)| BracketPair {
                        nu: root(nu),
                        eta: root(eta),
                    })
                    .collect();
                assert_eq!(spec.pairs, expected, "D_{n}, i = {i}");
                assert_eq!(rs.name_root_d(&spec.apex).unwrap(), if i == n { Gamma { i: n - 1, k: n } } else { Beta { i, k: i } });
            }
        }
    }

    #[test]
    fn semi_adapted_simple_cases() {
        let rs = sys(Kind::A, 2);
        let w = word(&rs, "121");
        let out = is_semi_adapted(&rs, &w, 1).unwrap();
        assert_eq!(out.witness().unwrap().moves, vec![]);
        let out = is_semi_adapted(&rs, &w, 2).unwrap();
        let witness = out.witness().unwrap();
        assert_eq!(validate_witness(&rs, &w, witness).unwrap().letters(), &[2, 1, 2]);
    }

    #[test]
    fn canonical_words_semi_adapted() {
        for n in 1..=5 {
            let rs = sys(Kind::A, n);
            let w = word_a(&rs).unwrap();
            for i in 1..=n {
                let out = is_semi_adapted(&rs, &w, i).unwrap();
                let witness = out.witness().expect("certified");
                validate_witness(&rs, &w, witness).unwrap();
            }
        }
        for n in 3..=5 {
            let rs = sys(Kind::D, n);
            let w = word_d(&rs).unwrap();
            for i in 1..=n {
                let out = is_semi_adapted(&rs, &w, i).unwrap();
                validate_witness(&rs, &w, out.witness().expect("certified")).unwrap();
            }
        }
    }

    fn all_longest_words(rs: &RootSystem) -> Vec<ReducedWord> {
        let start = weyl::longest_word(rs);
        let mut seen = HashSet::from([start.letters().to_vec()]);
        let mut queue = vec![start];
        let mut out = Vec::new();
        while let Some(w) = queue.pop() {
            for m in weyl::available_moves(rs, &w) {
                let next = weyl::apply_move(rs, &w, m).unwrap();
                if seen.insert(next.letters().to_vec()) {
                    queue.push(next);
                }
            }
            out.push(w);
        }
        out
    }

    // Exhaustive search over concrete words using every allowed move.
    fn oracle_semi_adapted(rs: &RootSystem, w: &ReducedWord, i: usize) -> bool {
        let apex = rs.simple_root(i);
        let mut seen = HashSet::from([w.letters().to_vec()]);
        let mut queue = vec![w.clone()];
        while let Some(cur) = queue.pop() {
            if cur.first() == Some(i) {
                return true;
            }
            let roots = weyl::inversion_roots(rs, cur.letters());
            for m in weyl::available_moves(rs, &cur) {
                if m.kind == MoveKind::Braid && roots[m.position + 1] != apex {
                    continue;
                }
                let next = weyl::apply_move(rs, &cur, m).unwrap();
                if seen.insert(next.letters().to_vec()) {
                    queue.push(next);
                }
            }
        }
        false
    }

    #[test]
    fn search_agrees_with_exhaustive_oracle() {
        for (kind, n) in [(Kind::A, 3), (Kind::A, 4), (Kind::D, 4)] {
            let rs = sys(kind, n);
            let mut negatives = 0;
            for w in all_longest_words(&rs) {
                for i in 1..=n {
                    let expected = oracle_semi_adapted(&rs, &w, i);
                    let got = is_semi_adapted(&rs, &w, i).unwrap();
                    match &got {
                        SemiAdaptedOutcome::Certified(witness) => {
                            assert!(expected, "{kind}{n} {w} i={i}");
                            validate_witness(&rs, &w, witness).unwrap();
                        }
                        SemiAdaptedOutcome::NotSemiAdapted { .. } => {
                            assert!(!expected, "{kind}{n} {w} i={i}");
                            negatives += 1;
                        }
                        SemiAdaptedOutcome::Inconclusive { .. } => panic!("cap hit on {w}"),
                    }
                }
            }
            eprintln!("{kind}{n}: {negatives} (word, i) pairs not semi-adapted");
        }
    }

    #[test]
    fn search_cap_reports_inconclusive() {
        let rs = sys(Kind::A, 4);
        let w = word_a(&rs).unwrap();
        assert!(matches!(
            is_semi_adapted_capped(&rs, &w, 4, 0).unwrap(),
            SemiAdaptedOutcome::Inconclusive { .. }
        ));
    }

    #[test]
    fn normal_form_is_class_invariant() {
        let rs = sys(Kind::A, 4);
        assert_eq!(normal_form(&rs, &[3, 1]), vec![1, 3]);
        assert_eq!(normal_form(&rs, &[2, 4, 1]), normal_form(&rs, &[4, 2, 1]));
        assert_ne!(normal_form(&rs, &[1, 2]), normal_form(&rs, &[2, 1]));
    }

    #[test]
    fn explain_mentions_uncanceled() {
        let rs = sys(Kind::A, 3);
        let w = word(&rs, "123121");
        let crystal = BracketCrystal::new(&rs, w).unwrap();
        let text = crystal.explain(&a3_example(&rs), 2).unwrap();
        assert!(text.contains("f_2: new part 2"), "{text}");
        assert!(text.contains('^'));
        assert!(crystal.certified(2).unwrap());
    }
}

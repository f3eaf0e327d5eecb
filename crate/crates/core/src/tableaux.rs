//! Marginally large tableaux of types A and D, their crystal operators, and
//! the maps `Θ` (type A) and `Ψ` (type D) to Kostant partitions.
//!
//! Barred letters of the type D alphabet are stored as negative integers
//! (`k̄ = -k`). Their order is `1 < ... < n-1 < {n, n̄} < n-1‾ < ... < 1̄`
//! with `n` and `n̄` incomparable; see [`rank_of`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};
use crate::pbw::KostantPartition;
use crate::root_system::{DRootName, Kind, Root};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReadingMode {
    /// Rows top to bottom, each right to left.
    MiddleEastern,
    /// Columns right to left, each top to bottom.
    FarEastern,
}

impl std::str::FromStr for ReadingMode {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "middle-eastern" | "middle" => Ok(ReadingMode::MiddleEastern),
            "far-eastern" | "far" => Ok(ReadingMode::FarEastern),
            _ => Err(CrystalError::Parse(format!("unknown reading `{s}`"))),
        }
    }
}

/// Position of a letter in the alphabet order. Type D letters `n` and `n̄`
/// share a rank, which is how their incomparability shows up.
pub fn rank_of(kind: Kind, n: usize, letter: i32) -> i32 {
    match kind {
        Kind::D if letter < 0 => {
            let k = -letter;
            if k as usize == n {
                k
            } else {
                2 * n as i32 - k
            }
        }
        _ => letter,
    }
}

fn valid_letter(kind: Kind, n: usize, letter: i32) -> bool {
    match kind {
        Kind::A => (1..=n as i32 + 1).contains(&letter),
        Kind::D => letter != 0 && letter.unsigned_abs() as usize <= n,
        Kind::E => false,
    }
}

/// `f_i` in the fundamental crystal: the letter at the head of the `i`-arrow
/// leaving `letter`, if any.
pub fn arrow_f(kind: Kind, n: usize, i: usize, letter: i32) -> Option<i32> {
    let (i32n, ii) = (n as i32, i as i32);
    match kind {
        Kind::A => (letter == ii).then_some(ii + 1),
        Kind::D if i + 2 <= n => {
            if letter == ii {
                Some(ii + 1)
            } else if letter == -(ii + 1) {
                Some(-ii)
            } else {
                None
            }
        }
        Kind::D if i + 1 == n => match letter {
            l if l == i32n - 1 => Some(i32n),
            l if l == -i32n => Some(-(i32n - 1)),
            _ => None,
        },
        Kind::D => match letter {
            l if l == i32n - 1 => Some(-i32n),
            l if l == i32n => Some(-(i32n - 1)),
            _ => None,
        },
        Kind::E => None,
    }
}

/// `e_i` in the fundamental crystal: the tail of the `i`-arrow entering
/// `letter`, if any.
pub fn arrow_e(kind: Kind, n: usize, i: usize, letter: i32) -> Option<i32> {
    let candidates: Vec<i32> = match kind {
        Kind::A => (1..=n as i32 + 1).collect(),
        _ => (1..=n as i32).flat_map(|k| [k, -k]).collect(),
    };
    candidates.into_iter().find(|&x| arrow_f(kind, n, i, x) == Some(letter))
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    kind: Kind,
    n: usize,
    rows: Vec<Vec<i32>>,
}

/// A marginally large tableau of type `A_n` (n rows over `1..=n+1`) or
/// `D_n` (n-1 rows over `±1..=±n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr")]
pub struct Tableau {
    kind: Kind,
    n: usize,
    rows: Vec<Vec<i32>>,
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = CrystalError;

    fn try_from(r: TableauRepr) -> Result<Self> {
        Tableau::new(r.kind, r.n, r.rows)
    }
}

fn num_rows(kind: Kind, n: usize) -> Result<usize> {
    match kind {
        Kind::A if n >= 1 => Ok(n),
        Kind::D if n >= 3 => Ok(n - 1),
        _ => Err(CrystalError::InvalidRank {
            kind,
            rank: n,
            reason: "tableaux are implemented for A_n (n >= 1) and D_n (n >= 3)",
        }),
    }
}

impl Tableau {
    pub fn new(kind: Kind, n: usize, rows: Vec<Vec<i32>>) -> Result<Self> {
        let t = Tableau { kind, n, rows };
        t.validate()?;
        Ok(t)
    }

    /// The highest weight element: row `r` is all `r`s.
    pub fn highest(kind: Kind, n: usize) -> Result<Self> {
        let m = num_rows(kind, n)?;
        let rows = (1..=m).map(|r| vec![r as i32; m - r + 1]).collect();
        Tableau::new(kind, n, rows)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn rank(&self, letter: i32) -> i32 {
        rank_of(self.kind, self.n, letter)
    }

    fn largeness_defect(&self, r: usize) -> i64 {
        let row = &self.rows[r - 1];
        let count = row.iter().filter(|&&x| x == r as i32).count() as i64;
        let below = self.rows.get(r).map_or(0, Vec::len) as i64;
        count - below - 1
    }

    pub fn validate(&self) -> Result<()> {
        let m = num_rows(self.kind, self.n)?;
        let bad = |msg: String| Err(CrystalError::InvalidTableau(msg));
        if self.rows.len() != m {
            return bad(format!("expected {m} rows, found {}", self.rows.len()));
        }
        for (idx, row) in self.rows.iter().enumerate() {
            let r = idx + 1;
            for &x in row {
                if !valid_letter(self.kind, self.n, x) {
                    return bad(format!("letter {x} in row {r} is not in the alphabet"));
                }
                let rk = self.rank(x);
                if rk < r as i32 {
                    return bad(format!("row {r} contains {x}"));
                }
                if self.kind == Kind::D && rk > 2 * self.n as i32 - r as i32 {
                    return bad(format!("row {r} contains {}, larger than {r}̄", show_letter(x)));
                }
            }
            if row.windows(2).any(|p| self.rank(p[0]) > self.rank(p[1])) {
                return bad(format!("row {r} is not weakly increasing"));
            }
            if self.kind == Kind::D {
                let n = self.n as i32;
                if row.contains(&n) && row.contains(&-n) {
                    return bad(format!("row {r} contains both {n} and {n}̄"));
                }
            }
            let defect = self.largeness_defect(r);
            if defect != 0 {
                return bad(format!("row {r} is not marginally large (off by {defect})"));
            }
        }
        for (idx, pair) in self.rows.windows(2).enumerate() {
            for (c, (&up, &down)) in pair[0].iter().zip(&pair[1]).enumerate() {
                if self.rank(up) >= self.rank(down) {
                    return bad(format!("column {} not strictly increasing at rows {}-{}", c + 1, idx + 1, idx + 2));
                }
            }
        }
        Ok(())
    }

    /// Boxes in reading order as `(letter, (row, column))`, zero-based.
    pub fn reading(&self, mode: ReadingMode) -> Vec<(i32, (usize, usize))> {
        let mut out = Vec::with_capacity(self.num_boxes());
        match mode {
            ReadingMode::MiddleEastern => {
                for (r, row) in self.rows.iter().enumerate() {
                    for c in (0..row.len()).rev() {
                        out.push((row[c], (r, c)));
                    }
                }
            }
            ReadingMode::FarEastern => {
                let width = self.rows.first().map_or(0, Vec::len);
                for c in (0..width).rev() {
                    for (r, row) in self.rows.iter().enumerate() {
                        if let Some(&x) = row.get(c) {
                            out.push((x, (r, c)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Bracket signature of the reading for `i`: `(box, is_open)` for every
    /// box carrying a bracket, before cancellation.
    fn brackets(&self, i: usize, mode: ReadingMode) -> Vec<((usize, usize), bool)> {
        let mut out = Vec::new();
        for (x, pos) in self.reading(mode) {
            if arrow_f(self.kind, self.n, i, x).is_some() {
                out.push((pos, true));
            } else if arrow_e(self.kind, self.n, i, x).is_some() {
                out.push((pos, false));
            }
        }
        out
    }

    fn uncanceled(&self, i: usize, mode: ReadingMode) -> Vec<((usize, usize), bool)> {
        let b = self.brackets(i, mode);
        let kinds: Vec<crate::bracketing::Bracket> = b
            .iter()
            .map(|&(_, open)| {
                if open {
                    crate::bracketing::Bracket::Open
                } else {
                    crate::bracketing::Bracket::Close
                }
            })
            .collect();
        crate::bracketing::cancel(&kinds).into_iter().map(|k| b[k]).collect()
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(CrystalError::InvalidNode { node: i, rank: self.n });
        }
        Ok(())
    }

    /// Restores marginal largeness after a single box change by inserting
    /// (`defect = -1`) or deleting (`defect = 1`) the column `1, ..., r` at
    /// the left edge.
    fn repair(&mut self) -> Result<()> {
        let defects: Vec<(usize, i64)> = (1..=self.rows.len())
            .map(|r| (r, self.largeness_defect(r)))
            .filter(|&(_, d)| d != 0)
            .collect();
        match defects.as_slice() {
            [] => {}
            [(r, -1)] => {
                for k in 1..=*r {
                    self.rows[k - 1].insert(0, k as i32);
                }
            }
            [(r, 1)] => {
                for k in 1..=*r {
                    self.rows[k - 1].remove(0);
                }
            }
            _ => {
                return Err(CrystalError::Invariant(format!(
                    "marginal largeness defects {defects:?} cannot be repaired by one column"
                )))
            }
        }
        self.validate()
            .map_err(|e| CrystalError::Invariant(format!("operator produced an invalid tableau: {e}")))
    }

    pub fn f(&self, i: usize, mode: ReadingMode) -> Result<Tableau> {
        self.check_node(i)?;
        let mut out = self.clone();
        match self.uncanceled(i, mode).into_iter().find(|&(_, open)| open) {
            Some(((r, c), _)) => {
                let x = self.rows[r][c];
                out.rows[r][c] = arrow_f(self.kind, self.n, i, x).expect("open bracket has an arrow");
            }
            // the leading r's of row r always leave an uncanceled '(' for
            // i = r, so this is unreachable on valid input
            None => return Err(CrystalError::Invariant(format!("no uncanceled '(' for f_{i} in {self}"))),
        }
        out.repair()?;
        Ok(out)
    }

    pub fn e(&self, i: usize, mode: ReadingMode) -> Result<Option<Tableau>> {
        self.check_node(i)?;
        let Some(((r, c), _)) = self.uncanceled(i, mode).into_iter().rev().find(|&(_, open)| !open) else {
            return Ok(None);
        };
        let mut out = self.clone();
        let y = self.rows[r][c];
        out.rows[r][c] = arrow_e(self.kind, self.n, i, y).expect("close bracket has an arrow");
        out.repair()?;
        Ok(Some(out))
    }

    /// Number of uncanceled `)`; zero exactly at highest weight for `i`.
    pub fn epsilon(&self, i: usize, mode: ReadingMode) -> Result<usize> {
        self.check_node(i)?;
        Ok(self.uncanceled(i, mode).iter().filter(|&&(_, open)| !open).count())
    }

    /// Row-major key, e.g. `1 1 1 2 / 2 -3 / 3`.
    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" / ")
    }

    /// Box diagram with the leading (large) entries of each row shaded.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|row| row.iter().map(|&x| show_letter(x)).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for (r, row) in cells.iter().enumerate() {
            let lead = self.rows[r].iter().take_while(|&&x| x == r as i32 + 1).count();
            for (c, cell) in row.iter().enumerate() {
                let pad = width - cell.chars().count();
                let (l, rr) = if c < lead { ('[', ']') } else { ('|', '|') };
                out.push(l);
                out.push_str(&" ".repeat(pad));
                out.push_str(cell);
                out.push(rr);
            }
            out.push('\n');
        }
        out.pop();
        out
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

fn show_letter(x: i32) -> String {
    if x < 0 {
        format!("{}\u{0304}", -x)
    } else {
        x.to_string()
    }
}

fn seg(n: usize, i: usize, j: usize) -> Root {
    let mut v = vec![0; n];
    for m in i..=j {
        v[m - 1] = 1;
    }
    Root::new(v)
}

fn require(t: &Tableau, kind: Kind) -> Result<()> {
    if t.kind != kind {
        return Err(CrystalError::WrongKind { expected: kind, found: t.kind });
    }
    Ok(())
}

/// `Θ`: the multiplicity of `α_i + ... + α_j` is the number of `j+1`s in
/// row `i`.
pub fn theta(t: &Tableau) -> Result<KostantPartition> {
    require(t, Kind::A)?;
    let n = t.n;
    let mut c = KostantPartition::new();
    for (idx, row) in t.rows.iter().enumerate() {
        let i = idx + 1;
        for &x in row {
            let j = x as usize - 1;
            if j >= i {
                c.add(&seg(n, i, j), 1)?;
            }
        }
    }
    Ok(c)
}

/// Inverse of [`theta`], built from the bottom row up.
pub fn theta_inv(n: usize, c: &KostantPartition) -> Result<Tableau> {
    let mut rows: Vec<Vec<i32>> = vec![Vec::new(); n];
    let mut below = 0usize;
    for i in (1..=n).rev() {
        let mut row = vec![i as i32; below + 1];
        for j in i..=n {
            let m = c.get(&seg(n, i, j));
            row.extend(std::iter::repeat_n(j as i32 + 1, m as usize));
        }
        below = row.len();
        rows[i - 1] = row;
    }
    let t = Tableau::new(Kind::A, n, rows)?;
    if theta(&t)? != *c {
        return Err(CrystalError::InvalidTableau(format!("{c} is not a Kostant partition of type A_{n}")));
    }
    Ok(t)
}

/// `Ψ`, tallied row by row.
///
/// In row `j`: each `j̄` adds `β_{j,j}` and `γ_{j,j+1}`; for `j < k <= n-1`
/// each matched pair `(k, k̄)` adds `β_{j,k}` and `γ_{j,k+1}`; the remaining
/// unbarred `k > j` add `β_{j,k-1}` and the remaining barred `k̄` (`k > j`)
/// add `γ_{j,k}`. The leading `j`s add nothing.
pub fn psi(t: &Tableau) -> Result<KostantPartition> {
    require(t, Kind::D)?;
    let n = t.n;
    let mut c = KostantPartition::new();
    let mut bump = |name: DRootName, m: usize| -> Result<()> {
        if m > 0 {
            if !name.is_valid(n) {
                return Err(CrystalError::Invariant(format!("{name} is not a root of D_{n}")));
            }
            c.add(&name.root(n), m as i64)?;
        }
        Ok(())
    };
    for (idx, row) in t.rows.iter().enumerate() {
        let j = idx + 1;
        let count = |x: i32| row.iter().filter(|&&y| y == x).count();
        let mut plain: Vec<usize> = (0..=n).map(|k| count(k as i32)).collect();
        let mut barred: Vec<usize> = (0..=n).map(|k| if k == 0 { 0 } else { count(-(k as i32)) }).collect();

        bump(DRootName::Beta { i: j, k: j }, barred[j])?;
        bump(DRootName::Gamma { i: j, k: j + 1 }, barred[j])?;
        barred[j] = 0;

        for k in j + 1..n {
            let pairs = plain[k].min(barred[k]);
            bump(DRootName::Beta { i: j, k }, pairs)?;
            bump(DRootName::Gamma { i: j, k: k + 1 }, pairs)?;
            plain[k] -= pairs;
            barred[k] -= pairs;
        }
        for k in j + 1..=n {
            bump(DRootName::Beta { i: j, k: k - 1 }, plain[k])?;
            bump(DRootName::Gamma { i: j, k }, barred[k])?;
        }
    }
    Ok(c)
}

/// Inverts `Ψ` over a finite set of tableaux (for instance a generated
/// ball). Fails if two tableaux share an image.
pub fn psi_inverse_table<'a, I>(tableaux: I) -> Result<HashMap<KostantPartition, Tableau>>
where
    I: IntoIterator<Item = &'a Tableau>,
{
    let mut table = HashMap::new();
    for t in tableaux {
        let c = psi(t)?;
        if let Some(prev) = table.insert(c.clone(), t.clone()) {
            if prev != *t {
                return Err(CrystalError::Invariant(format!("Ψ({prev}) = Ψ({t}) = {c}")));
            }
        }
    }
    Ok(table)
}

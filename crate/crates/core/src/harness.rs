//! Crystal graph generation, isomorphism checks and the verification suites.
//!
//! Every model exposes the same small surface ([`CrystalModel`]); balls are
//! generated breadth-first from the highest weight element with nodes
//! identified by a canonical string key, so runs are byte-for-byte
//! reproducible.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bracketing::{self, BracketCrystal, SemiAdaptedOutcome};
use crate::error::{CrystalError, Result};
use crate::pbw::{self, KostantPartition, LusztigDatum, LusztigDatumRepr, PbwCrystal};
use crate::root_system::{Kind, Root, RootSystem};
use crate::tableaux::{self, ReadingMode, Tableau};
use crate::weyl::{self, ReducedWord};

/// Default node cap for ball generation.
pub const DEFAULT_MAX_NODES: usize = 500_000;

pub trait CrystalModel: Sync {
    type Element: Clone + Eq + Hash + Send + Sync;

    fn name(&self) -> &'static str;
    fn root_system(&self) -> &RootSystem;
    fn highest(&self) -> Self::Element;
    fn f(&self, x: &Self::Element, i: usize) -> Result<Self::Element>;
    fn e(&self, x: &Self::Element, i: usize) -> Result<Option<Self::Element>>;
    fn epsilon(&self, x: &Self::Element, i: usize) -> Result<u32>;
    fn weight(&self, x: &Self::Element) -> Result<Root>;
    /// Canonical serialization, used as node identity.
    fn key(&self, x: &Self::Element) -> String;
    fn to_json(&self, x: &Self::Element) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Element>;

    fn explain(&self, _x: &Self::Element, _i: usize) -> Result<Option<String>> {
        Ok(None)
    }

    fn pretty(&self, x: &Self::Element) -> String {
        self.key(x)
    }
}

/// `φ_i = ε_i + (α_i | wt)`.
pub fn phi<M: CrystalModel>(model: &M, x: &M::Element, i: usize) -> Result<i64> {
    let rs = model.root_system();
    let wt = model.weight(x)?;
    let pairing = rs.pairing(&rs.simple_root(i), &wt)?;
    Ok(model.epsilon(x, i)? as i64 + pairing as i64)
}

fn parse_json<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| CrystalError::Parse(e.to_string()))
}

/// Lusztig data under transport (elements are vectors along the word).
pub struct PbwGeneral {
    crystal: PbwCrystal,
}

impl PbwGeneral {
    pub fn new(rs: &RootSystem, word: ReducedWord) -> Result<Self> {
        Ok(PbwGeneral {
            crystal: PbwCrystal::new(rs, word)?,
        })
    }

    pub fn crystal(&self) -> &PbwCrystal {
        &self.crystal
    }
}

fn datum_json(word: &ReducedWord, vector: &[u32]) -> Value {
    json!({ "word": word.letters(), "vector": vector })
}

/// Accepts `{word, vector}` (re-expressed on `word` by transport if the
/// words differ) or a Kostant partition `[{root, mult}, ...]`.
fn vector_from_json(rs: &RootSystem, word: &ReducedWord, v: &Value) -> Result<Vec<u32>> {
    if v.is_array() {
        let c: KostantPartition = parse_json(v)?;
        c.validate(rs)?;
        return Ok(LusztigDatum::from_partition(rs, word.clone(), &c)?.vector().to_vec());
    }
    let repr: LusztigDatumRepr = parse_json(v)?;
    let d = LusztigDatum::from_repr(rs, repr)?;
    if d.word() == word {
        Ok(d.vector().to_vec())
    } else {
        Ok(pbw::transport(rs, &d, word)?.vector().to_vec())
    }
}

impl CrystalModel for PbwGeneral {
    type Element = Vec<u32>;

    fn name(&self) -> &'static str {
        "pbw-general"
    }

    fn root_system(&self) -> &RootSystem {
        self.crystal.root_system()
    }

    fn highest(&self) -> Vec<u32> {
        self.crystal.zero()
    }

    fn f(&self, x: &Vec<u32>, i: usize) -> Result<Vec<u32>> {
        self.crystal.f(x, i)
    }

    fn e(&self, x: &Vec<u32>, i: usize) -> Result<Option<Vec<u32>>> {
        self.crystal.e(x, i)
    }

    fn epsilon(&self, x: &Vec<u32>, i: usize) -> Result<u32> {
        self.crystal.epsilon(x, i)
    }

    fn weight(&self, x: &Vec<u32>) -> Result<Root> {
        Ok(self.crystal.weight(x))
    }

    fn key(&self, x: &Vec<u32>) -> String {
        self.crystal.partition(x).key()
    }

    fn to_json(&self, x: &Vec<u32>) -> Value {
        datum_json(self.crystal.word(), x)
    }

    fn from_json(&self, v: &Value) -> Result<Vec<u32>> {
        vector_from_json(self.crystal.root_system(), self.crystal.word(), v)
    }
}

/// Kostant partitions under the bracketing operators.
pub struct PbwBracket {
    crystal: BracketCrystal,
}

impl PbwBracket {
    pub fn new(rs: &RootSystem, word: ReducedWord) -> Result<Self> {
        Ok(PbwBracket {
            crystal: BracketCrystal::new(rs, word)?,
        })
    }

    pub fn crystal(&self) -> &BracketCrystal {
        &self.crystal
    }
}

impl CrystalModel for PbwBracket {
    type Element = KostantPartition;

    fn name(&self) -> &'static str {
        "pbw-bracket"
    }

    fn root_system(&self) -> &RootSystem {
        self.crystal.root_system()
    }

    fn highest(&self) -> KostantPartition {
        KostantPartition::new()
    }

    fn f(&self, x: &KostantPartition, i: usize) -> Result<KostantPartition> {
        self.crystal.f(x, i)
    }

    fn e(&self, x: &KostantPartition, i: usize) -> Result<Option<KostantPartition>> {
        self.crystal.e(x, i)
    }

    fn epsilon(&self, x: &KostantPartition, i: usize) -> Result<u32> {
        Ok(self.crystal.epsilon(x, i)? as u32)
    }

    fn weight(&self, x: &KostantPartition) -> Result<Root> {
        Ok(x.weight(self.root_system().rank()))
    }

    fn key(&self, x: &KostantPartition) -> String {
        x.key()
    }

    fn to_json(&self, x: &KostantPartition) -> Value {
        let rs = self.root_system();
        let d = LusztigDatum::from_partition(rs, self.crystal.word().clone(), x).expect("partition of this root system");
        datum_json(d.word(), d.vector())
    }

    fn from_json(&self, v: &Value) -> Result<KostantPartition> {
        let rs = self.root_system();
        let vector = vector_from_json(rs, self.crystal.word(), v)?;
        Ok(LusztigDatum::new(rs, self.crystal.word().clone(), vector)?.to_partition(rs))
    }

    fn explain(&self, x: &KostantPartition, i: usize) -> Result<Option<String>> {
        let mut text = self.crystal.explain(x, i)?;
        if !self.crystal.certified(i)? {
            text.push_str("\n(word not certified semi-adapted for this i)");
        }
        Ok(Some(text))
    }
}

/// Marginally large tableaux with a chosen reading.
pub struct TableauModel {
    rs: RootSystem,
    mode: ReadingMode,
}

impl TableauModel {
    pub fn new(kind: Kind, n: usize, mode: ReadingMode) -> Result<Self> {
        Tableau::highest(kind, n)?;
        Ok(TableauModel {
            rs: RootSystem::new(kind, n)?,
            mode,
        })
    }

    fn image(&self, t: &Tableau) -> Result<KostantPartition> {
        match t.kind() {
            Kind::A => tableaux::theta(t),
            _ => tableaux::psi(t),
        }
    }
}

impl CrystalModel for TableauModel {
    type Element = Tableau;

    fn name(&self) -> &'static str {
        match self.rs.kind() {
            Kind::A => "tableaux-A",
            _ => "tableaux-D",
        }
    }

    fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn highest(&self) -> Tableau {
        Tableau::highest(self.rs.kind(), self.rs.rank()).expect("checked in new")
    }

    fn f(&self, x: &Tableau, i: usize) -> Result<Tableau> {
        x.f(i, self.mode)
    }

    fn e(&self, x: &Tableau, i: usize) -> Result<Option<Tableau>> {
        x.e(i, self.mode)
    }

    fn epsilon(&self, x: &Tableau, i: usize) -> Result<u32> {
        Ok(x.epsilon(i, self.mode)? as u32)
    }

    /// Read off through `Θ`/`Ψ`, which preserve weight.
    fn weight(&self, x: &Tableau) -> Result<Root> {
        Ok(self.image(x)?.weight(self.rs.rank()))
    }

    fn key(&self, x: &Tableau) -> String {
        x.key()
    }

    fn to_json(&self, x: &Tableau) -> Value {
        serde_json::to_value(x).expect("tableau serializes")
    }

    fn from_json(&self, v: &Value) -> Result<Tableau> {
        let t: Tableau = parse_json(v)?;
        if t.kind() != self.rs.kind() || t.n() != self.rs.rank() {
            return Err(CrystalError::Parse(format!(
                "tableau of type {}{} given to a {}{} model",
                t.kind(),
                t.n(),
                self.rs.kind(),
                self.rs.rank()
            )));
        }
        Ok(t)
    }

    fn pretty(&self, x: &Tableau) -> String {
        x.pretty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub key: String,
    pub depth: usize,
    pub value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// A ball of a crystal graph around the highest weight element (node 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub model: String,
    pub kind: Kind,
    pub rank: usize,
    pub depth: usize,
    pub root: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl CrystalGraph {
    pub fn node_by_key(&self, key: &str) -> Option<usize> {
        if self.index.is_empty() && !self.nodes.is_empty() {
            return self.nodes.iter().position(|n| n.key == key);
        }
        self.index.get(key).copied()
    }

    pub fn counts_by_depth(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth + 1];
        for n in &self.nodes {
            out[n.depth] += 1;
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
        for n in &self.nodes {
            let label = if n.key.is_empty() { "∅" } else { &n.key };
            let _ = writeln!(out, "  n{} [label=\"{}\"];", n.id, label.replace('"', "\\\""));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// A generated ball together with the model elements behind its nodes.
pub struct Ball<E> {
    pub elements: Vec<E>,
    pub graph: CrystalGraph,
}

/// Breadth-first ball of radius `depth` from the highest weight element.
///
/// Every `f_i` lowers the weight by `α_i`, so all edges go from depth `d` to
/// depth `d+1`. The frontier is expanded in parallel and merged in order.
pub fn generate_ball<M: CrystalModel>(model: &M, depth: usize, max_nodes: usize) -> Result<Ball<M::Element>> {
    let rs = model.root_system();
    let n = rs.rank();
    let root = model.highest();
    let mut elements = vec![root.clone()];
    let mut nodes = vec![GraphNode {
        id: 0,
        key: model.key(&root),
        depth: 0,
        value: model.to_json(&root),
    }];
    let mut index = HashMap::from([(nodes[0].key.clone(), 0usize)]);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut truncation = None;

    'levels: for d in 0..depth {
        let expanded: Vec<Vec<M::Element>> = frontier
            .par_iter()
            .map(|&id| (1..=n).map(|i| model.f(&elements[id], i)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (&source, images) in frontier.iter().zip(expanded) {
            for (k, y) in images.into_iter().enumerate() {
                let key = model.key(&y);
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if elements.len() >= max_nodes {
                            truncation = Some(format!(
                                "node cap {max_nodes} reached while expanding depth {d}; depth {} incomplete",
                                d + 1
                            ));
                            break 'levels;
                        }
                        let t = elements.len();
                        index.insert(key.clone(), t);
                        nodes.push(GraphNode {
                            id: t,
                            key,
                            depth: d + 1,
                            value: model.to_json(&y),
                        });
                        elements.push(y);
                        next.push(t);
                        t
                    }
                };
                edges.push(GraphEdge {
                    source,
                    label: k + 1,
                    target,
                });
            }
        }
        frontier = next;
    }

    Ok(Ball {
        elements,
        graph: CrystalGraph {
            model: model.name().to_string(),
            kind: rs.kind(),
            rank: n,
            depth,
            root: 0,
            nodes,
            edges,
            truncated: truncation.is_some(),
            truncation,
            index,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    Unmapped { node: usize },
    NotInjective { first: usize, second: usize, image: usize },
    NotSurjective { node: usize },
    /// An edge of the source graph whose image is not an edge of the target.
    MissingForward { source: usize, label: usize, target: usize },
    /// An edge of the target graph with no preimage.
    MissingBackward { source: usize, label: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub passed: bool,
    pub nodes: usize,
    pub edges: usize,
    pub violations: Vec<Violation>,
}

/// Checks that `map` (indexed by `g1` node ids) is a bijection onto the
/// nodes of `g2` carrying labeled edges onto labeled edges, both ways.
pub fn check_isomorphism(g1: &CrystalGraph, g2: &CrystalGraph, map: &[Option<usize>]) -> IsoReport {
    let mut violations = Vec::new();
    let mut preimage: Vec<Option<usize>> = vec![None; g2.nodes.len()];
    for v in 0..g1.nodes.len() {
        match map.get(v).copied().flatten() {
            Some(w) if w < g2.nodes.len() => match preimage[w] {
                Some(first) => violations.push(Violation::NotInjective {
                    first,
                    second: v,
                    image: w,
                }),
                None => preimage[w] = Some(v),
            },
            _ => violations.push(Violation::Unmapped { node: v }),
        }
    }
    for (w, p) in preimage.iter().enumerate() {
        if p.is_none() {
            violations.push(Violation::NotSurjective { node: w });
        }
    }
    let e2: std::collections::HashSet<GraphEdge> = g2.edges.iter().copied().collect();
    let mut mapped = std::collections::HashSet::new();
    for e in &g1.edges {
        let (Some(s), Some(t)) = (map.get(e.source).copied().flatten(), map.get(e.target).copied().flatten()) else {
            continue;
        };
        let image = GraphEdge {
            source: s,
            label: e.label,
            target: t,
        };
        if !e2.contains(&image) {
            violations.push(Violation::MissingForward {
                source: e.source,
                label: e.label,
                target: e.target,
            });
        }
        mapped.insert(image);
    }
    for e in &g2.edges {
        if !mapped.contains(e) {
            violations.push(Violation::MissingBackward {
                source: e.source,
                label: e.label,
                target: e.target,
            });
        }
    }
    IsoReport {
        passed: violations.is_empty(),
        nodes: g1.nodes.len(),
        edges: g1.edges.len(),
        violations,
    }
}

/// Vertex map sending each `g1` node to the `g2` node with key `key_of(x)`.
pub fn map_by_key<E>(ball: &Ball<E>, g2: &CrystalGraph, mut key_of: impl FnMut(&E) -> Result<String>) -> Result<Vec<Option<usize>>> {
    ball.elements.iter().map(|x| Ok(g2.node_by_key(&key_of(x)?))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteName {
    #[serde(rename = "transport-roundtrip")]
    TransportRoundtrip,
    #[serde(rename = "bracket-vs-general")]
    BracketVsGeneral,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "psi")]
    Psi,
    #[serde(rename = "readings")]
    Readings,
    #[serde(rename = "semi-adapted-catalog")]
    SemiAdaptedCatalog,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::TransportRoundtrip,
        SuiteName::BracketVsGeneral,
        SuiteName::Theta,
        SuiteName::Psi,
        SuiteName::Readings,
        SuiteName::SemiAdaptedCatalog,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::TransportRoundtrip => "transport-roundtrip",
            SuiteName::BracketVsGeneral => "bracket-vs-general",
            SuiteName::Theta => "theta",
            SuiteName::Psi => "psi",
            SuiteName::Readings => "readings",
            SuiteName::SemiAdaptedCatalog => "semi-adapted-catalog",
        }
    }
}

impl std::str::FromStr for SuiteName {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| CrystalError::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteParams {
    pub kind: Kind,
    pub rank: usize,
    pub depth: usize,
    /// Word for the bracket-vs-general suite; the canonical word if absent.
    pub word: Option<Vec<usize>>,
    pub seed: u64,
    pub cases: usize,
    pub max_nodes: usize,
    pub search_cap: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            kind: Kind::D,
            rank: 4,
            depth: 5,
            word: None,
            seed: 0,
            cases: 200,
            max_nodes: DEFAULT_MAX_NODES,
            search_cap: bracketing::DEFAULT_SEARCH_CAP,
        }
    }
}

impl SuiteParams {
    pub fn new(kind: Kind, rank: usize, depth: usize) -> Self {
        SuiteParams {
            kind,
            rank,
            depth,
            ..Default::default()
        }
    }
}

/// Machine-readable suite outcome. Only the first few counterexamples are
/// kept; `failure_count` has the total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub passed: bool,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<Value>,
    pub notes: Vec<String>,
}

const KEPT_FAILURES: usize = 20;

impl SuiteReport {
    fn new(suite: &str, params: &SuiteParams) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            params: params.clone(),
            passed: true,
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.fail(counterexample());
        }
    }

    fn fail(&mut self, counterexample: Value) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(counterexample);
        }
    }

    fn absorb_iso(&mut self, label: &str, iso: &IsoReport, g1: &CrystalGraph, g2: &CrystalGraph) {
        self.checks += (iso.nodes + iso.edges) as u64;
        for v in &iso.violations {
            let key = |g: &CrystalGraph, id: usize| g.nodes.get(id).map(|n| n.key.clone());
            let detail = match v {
                Violation::MissingForward { source, target, .. } => json!({"from": key(g1, *source), "to": key(g1, *target)}),
                Violation::MissingBackward { source, target, .. } => json!({"from": key(g2, *source), "to": key(g2, *target)}),
                Violation::Unmapped { node } | Violation::NotSurjective { node } => json!({"node": key(g1, *node)}),
                Violation::NotInjective { first, second, .. } => json!({"first": key(g1, *first), "second": key(g1, *second)}),
            };
            self.fail(json!({"check": label, "violation": v, "detail": detail}));
        }
        if g1.truncated || g2.truncated {
            self.passed = false;
            self.notes.push(format!("{label}: ball truncated, result incomplete"));
        }
        self.notes.push(format!("{label}: {} nodes, {} edges", iso.nodes, iso.edges));
    }
}

/// `i^A` or `i^D` for the root system; the library's default word for E.
pub fn canonical_word(rs: &RootSystem) -> Result<ReducedWord> {
    match rs.kind() {
        Kind::A => bracketing::word_a(rs),
        Kind::D => bracketing::word_d(rs),
        Kind::E => Ok(weyl::longest_word(rs)),
    }
}

pub fn run_suite(name: SuiteName, params: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(name.as_str(), params);
    match name {
        SuiteName::TransportRoundtrip => transport_roundtrip(params, &mut report)?,
        SuiteName::BracketVsGeneral => bracket_vs_general(params, &mut report)?,
        SuiteName::Theta => theta_suite(params, &mut report)?,
        SuiteName::Psi => psi_suite(params, &mut report)?,
        SuiteName::Readings => readings_suite(params, &mut report)?,
        SuiteName::SemiAdaptedCatalog => catalog_suite(params, &mut report)?,
    }
    Ok(report)
}

fn random_datum(rs: &RootSystem, rng: &mut ChaCha8Rng) -> Result<LusztigDatum> {
    let w = weyl::random_longest_word(rs, rng);
    let vector = (0..w.len()).map(|_| rng.random_range(0..5)).collect();
    LusztigDatum::new(rs, w, vector)
}

/// Transport round trips, path independence through a third word, and
/// `e_i f_i = id`, `f_i e_i = id`, weight drop under the general operators.
fn transport_roundtrip(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let rs = RootSystem::new(params.kind, params.rank)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for case in 0..params.cases {
        let d = random_datum(&rs, &mut rng)?;
        let w2 = weyl::random_longest_word(&rs, &mut rng);
        let w3 = weyl::random_longest_word(&rs, &mut rng);
        let there = pbw::transport(&rs, &d, &w2)?;
        let back = pbw::transport(&rs, &there, d.word())?;
        report.check(back == d, || json!({"case": case, "check": "round-trip", "datum": d.to_repr(), "via": w2.letters()}));
        let detour = pbw::transport(&rs, &pbw::transport(&rs, &d, &w3)?, &w2)?;
        report.check(detour == there, || {
            json!({"case": case, "check": "path-independence", "datum": d.to_repr(), "target": w2.letters(), "via": w3.letters()})
        });

        for i in 1..=rs.rank() {
            let f = pbw::f_general(&rs, &d, i)?;
            let ef = pbw::e_general(&rs, &f, i)?;
            report.check(ef.as_ref() == Some(&d), || json!({"case": case, "check": "e_i f_i", "i": i, "datum": d.to_repr()}));
            let drop = d.weight(&rs).minus(&f.weight(&rs));
            report.check(drop == rs.simple_root(i), || json!({"case": case, "check": "weight drop", "i": i, "datum": d.to_repr()}));
            if let Some(e) = pbw::e_general(&rs, &d, i)? {
                let fe = pbw::f_general(&rs, &e, i)?;
                report.check(fe == d, || json!({"case": case, "check": "f_i e_i", "i": i, "datum": d.to_repr()}));
            }
        }
    }
    Ok(())
}

fn bracket_vs_general(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let rs = RootSystem::new(params.kind, params.rank)?;
    let word = match &params.word {
        Some(letters) => ReducedWord::longest(&rs, letters.clone())?,
        None => canonical_word(&rs)?,
    };
    let general = PbwGeneral::new(&rs, word.clone())?;
    let bracket = PbwBracket::new(&rs, word.clone())?;
    let mut certified = Vec::new();
    for i in 1..=rs.rank() {
        match bracketing::is_semi_adapted_capped(&rs, &word, i, params.search_cap)? {
            SemiAdaptedOutcome::Certified(_) => certified.push(i),
            other => report
                .notes
                .push(format!("word {word} not certified semi-adapted for i = {i} ({other:?}); skipped")),
        }
    }
    let ball = generate_ball(&general, params.depth, params.max_nodes)?;
    if ball.graph.truncated {
        report.passed = false;
        report.notes.push(ball.graph.truncation.clone().unwrap_or_default());
    }
    let crystal = general.crystal();
    for v in &ball.elements {
        let c = crystal.partition(v);
        for &i in &certified {
            let fg = crystal.partition(&crystal.f(v, i)?);
            let fb = bracket.f(&c, i)?;
            report.check(fg == fb, || json!({"op": format!("f{i}"), "datum": v, "general": fg.key(), "bracket": fb.key()}));
            let eg = crystal.e(v, i)?.map(|x| crystal.partition(&x));
            let eb = bracket.e(&c, i)?;
            report.check(eg == eb, || {
                json!({"op": format!("e{i}"), "datum": v, "general": eg.map(|x| x.key()), "bracket": eb.map(|x| x.key())})
            });
        }
    }
    report.notes.push(format!("{} elements in the ball", ball.elements.len()));
    Ok(())
}

fn theta_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    if params.kind != Kind::A {
        return Err(CrystalError::WrongKind {
            expected: Kind::A,
            found: params.kind,
        });
    }
    let n = params.rank;
    let rs = RootSystem::new(Kind::A, n)?;
    let tabs = generate_ball(&TableauModel::new(Kind::A, n, ReadingMode::MiddleEastern)?, params.depth, params.max_nodes)?;
    let parts = generate_ball(&PbwBracket::new(&rs, bracketing::word_a(&rs)?)?, params.depth, params.max_nodes)?;
    for t in &tabs.elements {
        let c = tableaux::theta(t)?;
        let back = tableaux::theta_inv(n, &c)?;
        report.check(&back == t, || json!({"check": "theta_inv(theta(T)) = T", "tableau": t}));
    }
    let map = map_by_key(&tabs, &parts.graph, |t| Ok(tableaux::theta(t)?.key()))?;
    let iso = check_isomorphism(&tabs.graph, &parts.graph, &map);
    report.absorb_iso("theta", &iso, &tabs.graph, &parts.graph);
    Ok(())
}

fn psi_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    if params.kind != Kind::D {
        return Err(CrystalError::WrongKind {
            expected: Kind::D,
            found: params.kind,
        });
    }
    let n = params.rank;
    let rs = RootSystem::new(Kind::D, n)?;
    let tabs = generate_ball(&TableauModel::new(Kind::D, n, ReadingMode::MiddleEastern)?, params.depth, params.max_nodes)?;
    let parts = generate_ball(&PbwBracket::new(&rs, bracketing::word_d(&rs)?)?, params.depth, params.max_nodes)?;
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (k, t) in tabs.elements.iter().enumerate() {
        let c = tableaux::psi(t)?;
        let key = c.key();
        let clash = seen.insert(key.clone(), k);
        report.check(clash.is_none(), || {
            json!({"check": "psi injective", "first": tabs.elements[clash.unwrap()], "second": t, "image": key})
        });
    }
    let map = map_by_key(&tabs, &parts.graph, |t| Ok(tableaux::psi(t)?.key()))?;
    let iso = check_isomorphism(&tabs.graph, &parts.graph, &map);
    report.absorb_iso("psi", &iso, &tabs.graph, &parts.graph);
    Ok(())
}

fn readings_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let middle = generate_ball(
        &TableauModel::new(params.kind, params.rank, ReadingMode::MiddleEastern)?,
        params.depth,
        params.max_nodes,
    )?;
    let far = generate_ball(
        &TableauModel::new(params.kind, params.rank, ReadingMode::FarEastern)?,
        params.depth,
        params.max_nodes,
    )?;
    let map = map_by_key(&middle, &far.graph, |t| Ok(t.key()))?;
    let iso = check_isomorphism(&middle.graph, &far.graph, &map);
    report.absorb_iso("middle-eastern vs far-eastern", &iso, &middle.graph, &far.graph);
    Ok(())
}

/// Certifies `i^A` / `i^D` for every rank up to `params.rank` and every `i`,
/// validates each witness, and checks the 3-term moves of each witness act on
/// the bracket pairs in strictly decreasing order.
fn catalog_suite(params: &SuiteParams, report: &mut SuiteReport) -> Result<()> {
    let ranks: Vec<usize> = match params.kind {
        Kind::A => (1..=params.rank).collect(),
        Kind::D => (3..=params.rank).collect(),
        Kind::E => {
            return Err(CrystalError::InvalidRank {
                kind: Kind::E,
                rank: params.rank,
                reason: "the catalog covers the words i^A and i^D only",
            })
        }
    };
    for n in ranks {
        let rs = RootSystem::new(params.kind, n)?;
        let w = canonical_word(&rs)?;
        for i in 1..=n {
            let out = bracketing::is_semi_adapted_capped(&rs, &w, i, params.search_cap)?;
            let Some(witness) = out.witness() else {
                report.fail(json!({"type": format!("{}{n}", params.kind), "i": i, "outcome": out}));
                report.checks += 1;
                continue;
            };
            report.check(bracketing::validate_witness(&rs, &w, witness).is_ok(), || {
                json!({"type": format!("{}{n}", params.kind), "i": i, "check": "witness replay", "witness": witness})
            });
            let order = bracketing::three_term_pair_indices(&rs, &w, witness)?;
            let decreasing = order.iter().all(Option::is_some) && order.windows(2).all(|p| p[0] > p[1]);
            report.check(decreasing, || {
                json!({"type": format!("{}{n}", params.kind), "i": i, "check": "3-term move order", "pairs": order})
            });
        }
        report.notes.push(format!("{}{n}: all i checked", params.kind));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelName {
    #[serde(rename = "pbw-general")]
    PbwGeneral,
    #[serde(rename = "pbw-bracket")]
    PbwBracket,
    #[serde(rename = "tableaux-A")]
    TableauxA,
    #[serde(rename = "tableaux-D")]
    TableauxD,
}

impl std::str::FromStr for ModelName {
    type Err = CrystalError;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string())).map_err(|_| CrystalError::Parse(format!("unknown model `{s}`")))
    }
}

/// One crystal operator of an operator string such as `"f2 f4 e1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    F(usize),
    E(usize),
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Op::F(i) => write!(f, "f{i}"),
            Op::E(i) => write!(f, "e{i}"),
        }
    }
}

/// Parses `"f2 f4 e1"` (commas also separate). Operators apply left to
/// right.
pub fn parse_ops(s: &str) -> Result<Vec<Op>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (head, tail) = t.split_at(1);
            let i: usize = tail.parse().map_err(|_| CrystalError::Parse(format!("bad operator `{t}`")))?;
            match head {
                "f" | "F" => Ok(Op::F(i)),
                "e" | "E" => Ok(Op::E(i)),
                _ => Err(CrystalError::Parse(format!("bad operator `{t}`"))),
            }
        })
        .collect()
}

/// Object-safe view of a model over JSON values, used by the CLI and the
/// fixture checker.
pub trait DynModel {
    fn model_name(&self) -> &'static str;
    fn rs(&self) -> &RootSystem;
    fn highest_json(&self) -> Value;
    /// Parses and re-serializes canonically.
    fn normalize(&self, v: &Value) -> Result<Value>;
    fn key_of(&self, v: &Value) -> Result<String>;
    /// Applies `ops` left to right; `None` once some `e_i` gives 0.
    fn apply(&self, v: &Value, ops: &[Op]) -> Result<Option<Value>>;
    fn explain_json(&self, v: &Value, i: usize) -> Result<Option<String>>;
    fn pretty_json(&self, v: &Value) -> Result<String>;
    fn ball(&self, depth: usize, max_nodes: usize) -> Result<CrystalGraph>;
}

impl<M: CrystalModel> DynModel for M {
    fn model_name(&self) -> &'static str {
        CrystalModel::name(self)
    }

    fn rs(&self) -> &RootSystem {
        CrystalModel::root_system(self)
    }

    fn highest_json(&self) -> Value {
        self.to_json(&self.highest())
    }

    fn normalize(&self, v: &Value) -> Result<Value> {
        Ok(self.to_json(&self.from_json(v)?))
    }

    fn key_of(&self, v: &Value) -> Result<String> {
        Ok(self.key(&self.from_json(v)?))
    }

    fn apply(&self, v: &Value, ops: &[Op]) -> Result<Option<Value>> {
        let mut x = self.from_json(v)?;
        for op in ops {
            match *op {
                Op::F(i) => x = self.f(&x, i)?,
                Op::E(i) => match self.e(&x, i)? {
                    Some(y) => x = y,
                    None => return Ok(None),
                },
            }
        }
        Ok(Some(self.to_json(&x)))
    }

    fn explain_json(&self, v: &Value, i: usize) -> Result<Option<String>> {
        CrystalModel::explain(self, &self.from_json(v)?, i)
    }

    fn pretty_json(&self, v: &Value) -> Result<String> {
        Ok(CrystalModel::pretty(self, &self.from_json(v)?))
    }

    fn ball(&self, depth: usize, max_nodes: usize) -> Result<CrystalGraph> {
        Ok(generate_ball(self, depth, max_nodes)?.graph)
    }
}

/// Everything needed to build a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: ModelName,
    pub kind: Kind,
    pub rank: usize,
    /// Letters of the word for PBW models; the canonical word if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ReadingMode>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<Box<dyn DynModel>> {
        let rs = RootSystem::new(self.kind, self.rank)?;
        let word = || match &self.word {
            Some(letters) => ReducedWord::longest(&rs, letters.clone()),
            None => canonical_word(&rs),
        };
        let mode = self.mode.unwrap_or(ReadingMode::MiddleEastern);
        let tableau_kind = |expected: Kind| {
            if self.kind == expected {
                Ok(())
            } else {
                Err(CrystalError::WrongKind {
                    expected,
                    found: self.kind,
                })
            }
        };
        Ok(match self.model {
            ModelName::PbwGeneral => Box::new(PbwGeneral::new(&rs, word()?)?),
            ModelName::PbwBracket => Box::new(PbwBracket::new(&rs, word()?)?),
            ModelName::TableauxA => {
                tableau_kind(Kind::A)?;
                Box::new(TableauModel::new(Kind::A, self.rank, mode)?)
            }
            ModelName::TableauxD => {
                tableau_kind(Kind::D)?;
                Box::new(TableauModel::new(Kind::D, self.rank, mode)?)
            }
        })
    }
}

/// A stored computation: apply `ops` to `input` (highest weight if absent)
/// and compare with `expected` (`null` for a zero result).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default)]
    pub name: String,
    #[serde(flatten)]
    pub spec: ModelSpec,
    #[serde(default)]
    pub input: Option<Value>,
    pub ops: String,
    pub expected: Value,
}

pub fn check_fixture(fx: &Fixture) -> Result<SuiteReport> {
    let model = fx.spec.build()?;
    let ops = parse_ops(&fx.ops)?;
    let input = match &fx.input {
        Some(v) => v.clone(),
        None => model.highest_json(),
    };
    let got = model.apply(&input, &ops)?;
    let got_key = got.as_ref().map(|v| model.key_of(v)).transpose()?;
    let expected_key = if fx.expected.is_null() {
        None
    } else {
        Some(model.key_of(&fx.expected)?)
    };
    let params = SuiteParams {
        kind: fx.spec.kind,
        rank: fx.spec.rank,
        depth: ops.len(),
        word: fx.spec.word.clone(),
        ..Default::default()
    };
    let mut report = SuiteReport::new("fixture", &params);
    if !fx.name.is_empty() {
        report.notes.push(fx.name.clone());
    }
    report.check(got_key == expected_key, || {
        json!({"model": model.model_name(), "ops": fx.ops, "input": input, "expected": fx.expected, "got": got})
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_and_a1_path() {
        let rs = RootSystem::new(Kind::A, 1).unwrap();
        let m = PbwGeneral::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        let b = generate_ball(&m, 0, 10).unwrap();
        assert_eq!(b.graph.nodes.len(), 1);
        assert!(b.graph.edges.is_empty());
        let b = generate_ball(&m, 5, 100).unwrap();
        assert_eq!(b.graph.nodes.len(), 6);
        assert_eq!(b.graph.edges.len(), 5);
    }

    // Count of Kostant partitions of A_2 with at most d parts, weighted by
    // height: the number of (a, b, c) with a + b + 2c <= d.
    #[test]
    fn a2_counts_match_brute_force() {
        let rs = RootSystem::new(Kind::A, 2).unwrap();
        let m = PbwGeneral::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        for d in 0..=5usize {
            let g = generate_ball(&m, d, 10_000).unwrap().graph;
            let mut brute = 0;
            for a in 0..=d {
                for b in 0..=d {
                    for c in 0..=d {
                        if a + b + 2 * c <= d {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(g.nodes.len(), brute, "depth {d}");
        }
    }

    #[test]
    fn truncation_is_reported() {
        let rs = RootSystem::new(Kind::A, 3).unwrap();
        let m = PbwBracket::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        let b = generate_ball(&m, 4, 5).unwrap();
        assert!(b.graph.truncated);
        assert_eq!(b.graph.nodes.len(), 5);
        assert!(b.graph.truncation.unwrap().contains("node cap"));
    }

    #[test]
    fn iso_identity_and_fault_injection() {
        let rs = RootSystem::new(Kind::A, 2).unwrap();
        let m = PbwBracket::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        let g = generate_ball(&m, 3, 1000).unwrap().graph;
        let id: Vec<Option<usize>> = (0..g.nodes.len()).map(Some).collect();
        assert!(check_isomorphism(&g, &g, &id).passed);
        let mut broken = g.clone();
        broken.edges[3].label = 3 - broken.edges[3].label;
        let report = check_isomorphism(&g, &broken, &id);
        // the relabeled edge is missing on one side and unmatched on the other
        assert_eq!(report.violations.len(), 2, "{:?}", report.violations);
        let mut dropped = g.clone();
        dropped.edges.remove(0);
        assert_eq!(check_isomorphism(&g, &dropped, &id).violations.len(), 1);
    }

    #[test]
    fn phi_on_highest_weight() {
        let rs = RootSystem::new(Kind::D, 4).unwrap();
        let m = PbwBracket::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        let zero = m.highest();
        for i in 1..=4 {
            assert_eq!(phi(&m, &zero, i).unwrap(), 0);
            let f = m.f(&zero, i).unwrap();
            // ε_i = 1 and (α_i | -α_i) = -2
            assert_eq!(phi(&m, &f, i).unwrap(), -1);
        }
    }

    #[test]
    fn suites_small() {
        for (name, params) in [
            (SuiteName::TransportRoundtrip, SuiteParams { cases: 20, ..SuiteParams::new(Kind::A, 3, 0) }),
            (SuiteName::BracketVsGeneral, SuiteParams::new(Kind::D, 4, 3)),
            (SuiteName::Theta, SuiteParams::new(Kind::A, 3, 4)),
            (SuiteName::Psi, SuiteParams::new(Kind::D, 4, 4)),
            (SuiteName::Readings, SuiteParams::new(Kind::D, 4, 4)),
            (SuiteName::SemiAdaptedCatalog, SuiteParams::new(Kind::D, 4, 0)),
        ] {
            let r = run_suite(name, &params).unwrap();
            assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let p = SuiteParams::new(Kind::A, 3, 4);
        let a = serde_json::to_string(&run_suite(SuiteName::Theta, &p).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(SuiteName::Theta, &p).unwrap()).unwrap();
        assert_eq!(a, b);
        let rs = RootSystem::new(Kind::A, 3).unwrap();
        let m = PbwGeneral::new(&rs, canonical_word(&rs).unwrap()).unwrap();
        let g1 = generate_ball(&m, 4, 1000).unwrap().graph;
        let g2 = generate_ball(&m, 4, 1000).unwrap().graph;
        assert_eq!(g1.to_dot(), g2.to_dot());
        assert_eq!(serde_json::to_string(&g1).unwrap(), serde_json::to_string(&g2).unwrap());
    }

    #[test]
    fn ops_parse() {
        assert_eq!(parse_ops("f2 f4 e1").unwrap(), vec![Op::F(2), Op::F(4), Op::E(1)]);
        assert!(parse_ops("g2").is_err());
        assert!(parse_ops("f").is_err());
    }

    #[test]
    fn fixture_detects_corruption() {
        let good = Fixture {
            name: "A3 f2".into(),
            spec: ModelSpec {
                model: ModelName::PbwBracket,
                kind: Kind::A,
                rank: 3,
                word: Some(vec![1, 2, 3, 1, 2, 1]),
                mode: None,
            },
            input: Some(json!({"word": [1, 2, 3, 1, 2, 1], "vector": [2, 3, 1, 3, 3, 2]})),
            ops: "f2".into(),
            expected: json!({"word": [1, 2, 3, 1, 2, 1], "vector": [2, 3, 1, 4, 3, 2]}),
        };
        assert!(check_fixture(&good).unwrap().passed);
        let mut bad = good.clone();
        bad.expected = json!({"word": [1, 2, 3, 1, 2, 1], "vector": [2, 3, 1, 3, 4, 2]});
        let r = check_fixture(&bad).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures.len(), 1);
    }
}

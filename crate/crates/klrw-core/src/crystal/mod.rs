//! Fundamental-weight crystal graphs and their path combinatorics.
//!
//! Classical families use the one-column tableaux model (with the spin models
//! for the short-node weights in types B and D); type G2 graphs are the two
//! hard-coded chains/graphs; the exceptional E and F types use the monomial
//! model. The tableaux and monomial engines double as independent oracles for
//! each other in the test suite.

mod g2;
mod monomial;
mod spin;
mod tableaux;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::cartan::{CartanDatum, Family};
use crate::{Error, Result};
use serde::Serialize;

/// Default cap on crystal sizes; E8's third fundamental crystal exceeds it.
pub const DEFAULT_VERTEX_LIMIT: usize = 2_000_000;

/// A fundamental crystal graph: labeled directed graph with a unique source
/// (the highest weight) and sink, layered by distance from the source.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub datum: CartanDatum,
    /// The fundamental weight index.
    pub weight: usize,
    /// Per-vertex weight in the fundamental-weight basis.
    pub weights: Vec<Vec<i64>>,
    /// Per-vertex distance from the source.
    pub layers: Vec<usize>,
    /// `out[v][i-1]` is the target of the i-edge leaving v, if any.
    pub out: Vec<Vec<Option<usize>>>,
    /// `inn[v][i-1]` is the source of the i-edge entering v, if any.
    pub inn: Vec<Vec<Option<usize>>>,
}

/// A rooted path, identified with its residue sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootedPath {
    pub residues: Vec<usize>,
    pub endpoint: usize,
}

impl RootedPath {
    /// The residue multiset, as a sorted vector.
    pub fn content(&self) -> Vec<usize> {
        let mut c = self.residues.clone();
        c.sort_unstable();
        c
    }

    pub fn residue_string(&self) -> String {
        self.residues.iter().map(|r| r.to_string()).collect()
    }
}

/// Kind of a two-color face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceKind {
    NonadjacentSquare,
    AdjacentSquare,
    Octagon,
    Decagon,
    Tetradecagon,
}

/// A minimal two-color face: two boundary words between a source and a sink
/// vertex, using exactly two residues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoColorFace {
    pub kind: FaceKind,
    pub residues: (usize, usize),
    pub source: usize,
    pub sink: usize,
    pub words: Vec<Vec<usize>>,
}

/// Abstraction over the concrete vertex models.
trait CrystalModel {
    type State: Clone + Eq + std::hash::Hash + Ord;
    fn highest(&self) -> Self::State;
    fn apply(&self, s: &Self::State, i: usize) -> Option<Self::State>;
    fn unapply(&self, s: &Self::State, i: usize) -> Option<Self::State>;
}

fn build_from_model<M: CrystalModel>(
    datum: &CartanDatum,
    weight: usize,
    model: &M,
    limit: usize,
) -> Result<CrystalGraph> {
    let e = datum.rank();
    let mut index: HashMap<M::State, usize> = HashMap::new();
    let mut states: Vec<M::State> = Vec::new();
    let mut layers: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<Option<usize>>> = Vec::new();
    let mut inn: Vec<Vec<Option<usize>>> = Vec::new();

    let hw = model.highest();
    index.insert(hw.clone(), 0);
    states.push(hw);
    layers.push(0);
    out.push(vec![None; e]);
    inn.push(vec![None; e]);

    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for i in 1..=e {
            if let Some(t) = model.apply(&states[v], i) {
                let tv = match index.get(&t) {
                    Some(&tv) => tv,
                    None => {
                        let tv = states.len();
                        if tv >= limit {
                            return Err(Error::SizeLimit(tv + 1, limit));
                        }
                        index.insert(t.clone(), tv);
                        states.push(t);
                        layers.push(layers[v] + 1);
                        out.push(vec![None; e]);
                        inn.push(vec![None; e]);
                        queue.push_back(tv);
                        tv
                    }
                };
                out[v][i - 1] = Some(tv);
                inn[tv][i - 1] = Some(v);
            }
        }
    }

    // Weight of each vertex in the fundamental-weight basis, read off from the
    // lengths of the i-strings through it.
    let mut weights = vec![vec![0i64; e]; states.len()];
    for (v, s) in states.iter().enumerate() {
        for i in 1..=e {
            let mut phi = 0i64;
            let mut cur = s.clone();
            while let Some(n) = model.apply(&cur, i) {
                phi += 1;
                cur = n;
            }
            let mut epsl = 0i64;
            let mut cur = s.clone();
            while let Some(p) = model.unapply(&cur, i) {
                epsl += 1;
                cur = p;
            }
            weights[v][i - 1] = phi - epsl;
        }
    }

    Ok(CrystalGraph {
        datum: datum.clone(),
        weight,
        weights,
        layers,
        out,
        inn,
    })
}

/// Constructs the crystal graph of the fundamental weight `i`.
pub fn fundamental_crystal(datum: &CartanDatum, i: usize, limit: usize) -> Result<CrystalGraph> {
    if i == 0 || i > datum.rank() {
        return Err(Error::InvalidConfig(format!(
            "weight index {i} out of range 1..={}",
            datum.rank()
        )));
    }
    let e = datum.rank();
    match datum.cartan_type.family {
        Family::B if i == e => build_from_model(datum, i, &spin::SpinModel::new_b(e), limit),
        Family::D if i >= e - 1 => {
            build_from_model(datum, i, &spin::SpinModel::new_d(e, i), limit)
        }
        Family::G => Ok(g2::build(datum, i)),
        _ => build_from_model(datum, i, &monomial::MonomialModel::new(datum, i), limit),
    }
}

/// The admissible one-column tableaux of a classical fundamental weight, as
/// (column, weight) pairs. Test oracle for vertex counts and weight
/// multisets of the generated crystals.
pub fn column_oracle(datum: &CartanDatum, i: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let model = tableaux::ColumnOracle::new(datum, i);
    model
        .columns()
        .into_iter()
        .map(|c| {
            let w = model.column_weight(&c);
            (c, w)
        })
        .collect()
}

/// Same construction routed through the monomial model, used as a cross-check
/// oracle for the hand-written models.
pub fn fundamental_crystal_monomial(
    datum: &CartanDatum,
    i: usize,
    limit: usize,
) -> Result<CrystalGraph> {
    build_from_model(datum, i, &monomial::MonomialModel::new(datum, i), limit)
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Maximal layer index; equals the distance of the sink.
    pub fn depth(&self) -> usize {
        self.layers.iter().copied().max().unwrap_or(0)
    }

    pub fn vertices_at_layer(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.layers[v] == n).collect()
    }

    /// The unique sink, if the graph is nonempty.
    pub fn sink(&self) -> usize {
        (0..self.len())
            .find(|&v| self.out[v].iter().all(Option::is_none))
            .expect("crystal has a sink")
    }

    /// Follows a residue sequence from the root; `None` if it is not a path.
    pub fn follow(&self, residues: &[usize]) -> Option<usize> {
        let mut v = 0usize;
        for &i in residues {
            v = self.out[v][i - 1]?;
        }
        Some(v)
    }

    /// All rooted paths of length `n`, sorted by residue sequence.
    pub fn paths_of_length(&self, n: usize) -> Vec<RootedPath> {
        let mut acc = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.path_dfs(0, n, &mut cur, &mut acc);
        acc.sort();
        acc
    }

    fn path_dfs(&self, v: usize, n: usize, cur: &mut Vec<usize>, acc: &mut Vec<RootedPath>) {
        if cur.len() == n {
            acc.push(RootedPath { residues: cur.clone(), endpoint: v });
            return;
        }
        for i in 1..=self.datum.rank() {
            if let Some(t) = self.out[v][i - 1] {
                cur.push(i);
                self.path_dfs(t, n, cur, acc);
                cur.pop();
            }
        }
    }

    /// All rooted paths to a fixed vertex.
    pub fn paths_to(&self, v: usize) -> Vec<RootedPath> {
        self.paths_of_length(self.layers[v])
            .into_iter()
            .filter(|p| p.endpoint == v)
            .collect()
    }

    /// Partitions paths by residue multiset. Each block is a set of paths
    /// whose contents agree.
    pub fn blocks(paths: &[RootedPath]) -> Vec<Vec<RootedPath>> {
        let mut by_content: BTreeMap<Vec<usize>, Vec<RootedPath>> = BTreeMap::new();
        for p in paths {
            by_content.entry(p.content()).or_default().push(p.clone());
        }
        by_content.into_values().collect()
    }

    /// Verifies the longest-word symmetry: relabeling residues by the diagram
    /// automorphism, reversing all edges and negating weights is an
    /// automorphism of the graph.
    pub fn w0_check(&self) -> bool {
        let e = self.datum.rank();
        let relabel: Vec<usize> = match self.datum.cartan_type.family {
            Family::A => (1..=e).map(|i| e + 1 - i).collect(),
            Family::D => {
                let mut m: Vec<usize> = (1..=e).collect();
                // the flip swaps the fishtail labels unless both spin weights
                // are fixed, which happens for even rank
                if e % 2 == 1 {
                    m.swap(e - 2, e - 1);
                }
                m
            }
            Family::E if e == 6 => vec![6, 2, 3, 4, 5, 1],
            _ => (1..=e).collect(),
        };
        // match vertices by BFS from the sink along reversed, relabeled edges
        let mut map = vec![usize::MAX; self.len()];
        map[0] = self.sink();
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for i in 1..=e {
                if let Some(t) = self.out[v][i - 1] {
                    let img = match self.inn[map[v]][relabel[i - 1] - 1] {
                        Some(x) => x,
                        None => return false,
                    };
                    if map[t] == usize::MAX {
                        map[t] = img;
                        queue.push_back(t);
                    } else if map[t] != img {
                        return false;
                    }
                }
            }
        }
        if map.iter().any(|&x| x == usize::MAX) {
            return false;
        }
        // weights negate under the automorphism (after relabeling coordinates)
        (0..self.len()).all(|v| {
            (1..=e).all(|i| self.weights[map[v]][relabel[i - 1] - 1] == -self.weights[v][i - 1])
        })
    }

    /// Enumerates every minimal two-color face, classified by kind.
    pub fn two_color_faces(&self) -> Vec<TwoColorFace> {
        let e = self.datum.rank();
        let mut faces = Vec::new();
        for src in 0..self.len() {
            for i in 1..=e {
                for j in i + 1..=e {
                    if self.out[src][i - 1].is_none() || self.out[src][j - 1].is_none() {
                        continue;
                    }
                    faces.extend(self.two_color_face_at(src, i, j));
                }
            }
        }
        faces
    }

    /// Minimal two-color faces with the given source and residue pair. The
    /// source must have both an i-edge and a j-edge.
    fn two_color_face_at(&self, src: usize, i: usize, j: usize) -> Vec<TwoColorFace> {
        // Walk all {i,j}-words from src, looking for the first reconvergence
        // of words with equal content. Words in these crystals have length
        // at most 7 (the tetradecagon).
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(src, Vec::new())];
        for _ in 0..7 {
            let mut next: Vec<(usize, Vec<usize>)> = Vec::new();
            for (v, w) in &frontier {
                for r in [i, j] {
                    if let Some(t) = self.out[*v][r - 1] {
                        let mut w2 = w.clone();
                        w2.push(r);
                        next.push((t, w2));
                    }
                }
            }
            // group by (endpoint, content)
            let mut groups: BTreeMap<(usize, Vec<usize>), Vec<Vec<usize>>> = BTreeMap::new();
            for (v, w) in &next {
                let mut c = w.clone();
                c.sort_unstable();
                groups.entry((*v, c)).or_default().push(w.clone());
            }
            let mut found = Vec::new();
            for ((sink, _), words) in groups {
                if words.len() < 2 {
                    continue;
                }
                // minimality: both residues must actually occur
                if !words[0].contains(&i) || !words[0].contains(&j) {
                    continue;
                }
                let kind = match words[0].len() {
                    2 => {
                        if self.datum.adjacent(i, j) {
                            FaceKind::AdjacentSquare
                        } else {
                            FaceKind::NonadjacentSquare
                        }
                    }
                    4 => FaceKind::Octagon,
                    5 => FaceKind::Decagon,
                    7 => FaceKind::Tetradecagon,
                    _ => continue,
                };
                found.push(TwoColorFace { kind, residues: (i, j), source: src, sink, words });
            }
            if !found.is_empty() {
                return found;
            }
            frontier = next;
        }
        Vec::new()
    }

    /// Closure of a residue sequence under the weighted plactic moves.
    ///
    /// Moves: `ij <-> ji` for nonadjacent pairs, and for an edge i ~> j of
    /// multiplicity m both `i^(m+1) j <-> i^m j i` and the partner move
    /// `jji <-> jij`, applied to contiguous windows.
    pub fn plactic_closure(datum: &CartanDatum, seq: &[usize], cap: usize) -> BTreeSet<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::from([seq.to_vec()]);
        seen.insert(seq.to_vec());
        while let Some(s) = queue.pop_front() {
            if seen.len() >= cap {
                break;
            }
            for t in plactic_neighbors(datum, &s) {
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Checks the plactic property: every source of an adjacent square must
    /// admit a path ending in one of the square's residues, directly or after
    /// plactic rewriting. Returns the failing sources.
    pub fn is_plactic(&self) -> (bool, Vec<usize>) {
        let mut bad = Vec::new();
        let mut seen_sources: HashSet<(usize, usize, usize)> = HashSet::new();
        for f in self.two_color_faces() {
            if f.kind != FaceKind::AdjacentSquare {
                continue;
            }
            let (i, j) = f.residues;
            if !seen_sources.insert((f.source, i, j)) {
                continue;
            }
            let paths = self.paths_to(f.source);
            let direct = paths
                .iter()
                .any(|p| p.residues.last().is_some_and(|&r| r == i || r == j));
            if direct {
                continue;
            }
            // condition (b): some plactic rewrite of some path ends in i or j
            let ok = paths.iter().any(|p| {
                CrystalGraph::plactic_closure(&self.datum, &p.residues, 200_000)
                    .iter()
                    .any(|s| s.last().is_some_and(|&r| r == i || r == j))
            });
            if !ok {
                bad.push(f.source);
            }
        }
        (bad.is_empty(), bad)
    }

    /// Path-ordered check at length `n`: no two paths with distinct endpoints
    /// may be related by swaps of nonadjacent residues only. Returns violating
    /// pairs of residue sequences.
    pub fn path_ordered_check(&self, n: usize) -> (bool, Vec<(Vec<usize>, Vec<usize>)>) {
        let mut bad = Vec::new();
        for len in 0..=n {
            let paths = self.paths_of_length(len);
            for block in CrystalGraph::blocks(&paths) {
                // group the block's sequences by nonadjacent-swap closure
                let mut assigned: HashMap<Vec<usize>, usize> = HashMap::new();
                let mut reps: Vec<RootedPath> = Vec::new();
                for p in &block {
                    if assigned.contains_key(&p.residues) {
                        continue;
                    }
                    let class = nonadjacent_closure(&self.datum, &p.residues);
                    let id = reps.len();
                    reps.push(p.clone());
                    for s in class {
                        assigned.insert(s, id);
                    }
                }
                for p in &block {
                    let rep = &reps[assigned[&p.residues]];
                    if rep.endpoint != p.endpoint {
                        bad.push((rep.residues.clone(), p.residues.clone()));
                    }
                }
            }
        }
        (bad.is_empty(), bad)
    }

    /// DOT rendering of the graph; edges are labeled and colored by residue.
    pub fn to_dot(&self, anonymous: bool) -> String {
        use std::fmt::Write as _;
        let palette = [
            "blue", "red", "forestgreen", "black", "brown", "purple", "orange", "gray",
        ];
        let mut s = String::from("digraph crystal {\n  rankdir=TB;\n  node [shape=plaintext];\n");
        for v in 0..self.len() {
            let label = if anonymous {
                "\u{2022}".to_string()
            } else {
                weight_label(&self.weights[v])
            };
            let _ = writeln!(s, "  v{v} [label=\"{label}\"];");
        }
        for v in 0..self.len() {
            for i in 1..=self.datum.rank() {
                if let Some(t) = self.out[v][i - 1] {
                    let color = palette[(i - 1) % palette.len()];
                    let _ = writeln!(s, "  v{v} -> v{t} [label=\"{i}\", color=\"{color}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: vertices with weights and layers, edges with residues.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<_> = (0..self.len())
            .map(|v| {
                serde_json::json!({
                    "id": v,
                    "weight": self.weights[v],
                    "layer": self.layers[v],
                })
            })
            .collect();
        let mut edges = Vec::new();
        for v in 0..self.len() {
            for i in 1..=self.datum.rank() {
                if let Some(t) = self.out[v][i - 1] {
                    edges.push(serde_json::json!({"src": v, "dst": t, "residue": i}));
                }
            }
        }
        serde_json::json!({"vertices": vertices, "edges": edges})
    }
}

fn weight_label(w: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (idx, &c) in w.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let i = idx + 1;
        let body = match c {
            1 => format!("L{i}"),
            -1 => format!("-L{i}"),
            c => format!("{c}L{i}"),
        };
        if !parts.is_empty() && c > 0 {
            parts.push(format!("+{body}"));
        } else {
            parts.push(body);
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.concat()
    }
}

/// One-step plactic rewrites of a residue sequence.
pub fn plactic_neighbors(datum: &CartanDatum, s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = s.len();
    // nonadjacent swaps
    for k in 0..n.saturating_sub(1) {
        let (a, b) = (s[k], s[k + 1]);
        if a != b && !datum.adjacent(a, b) {
            let mut t = s.to_vec();
            t.swap(k, k + 1);
            out.push(t);
        }
    }
    for ed in &datum.edges {
        let (i, j, m) = (ed.from, ed.to, ed.multiplicity);
        // i^(m+1) j <-> i^m j i
        let w = m + 1;
        if n >= w + 1 {
            for k in 0..=(n - w - 1) {
                if s[k..k + w].iter().all(|&r| r == i) && s[k + w] == j {
                    let mut t = s.to_vec();
                    t[k + w] = i;
                    t[k + w - 1] = j;
                    out.push(t);
                }
                if s[k..k + w - 1].iter().all(|&r| r == i) && s[k + w - 1] == j && s[k + w] == i {
                    let mut t = s.to_vec();
                    t[k + w - 1] = i;
                    t[k + w] = j;
                    out.push(t);
                }
            }
        }
        // partner: jji <-> jij
        if n >= 3 {
            for k in 0..=(n - 3) {
                if s[k] == j && s[k + 1] == j && s[k + 2] == i {
                    let mut t = s.to_vec();
                    t[k + 1] = i;
                    t[k + 2] = j;
                    out.push(t);
                }
                if s[k] == j && s[k + 1] == i && s[k + 2] == j {
                    let mut t = s.to_vec();
                    t[k + 1] = j;
                    t[k + 2] = i;
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Closure of a sequence under swaps of adjacent positions carrying
/// nonadjacent residues.
pub fn nonadjacent_closure(datum: &CartanDatum, seq: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([seq.to_vec()]);
    seen.insert(seq.to_vec());
    while let Some(s) = queue.pop_front() {
        for k in 0..s.len().saturating_sub(1) {
            let (a, b) = (s[k], s[k + 1]);
            if a != b && !datum.adjacent(a, b) {
                let mut t = s.clone();
                t.swap(k, k + 1);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests;

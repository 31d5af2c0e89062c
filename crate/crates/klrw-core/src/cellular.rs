//! Dotted idempotents, sandwiched dots, face permutations, dominance order
//! and the sandwich cell datum with its graded numerology.
//!
//! Face permutations are enumerated by a breadth-first search over residue
//! sequences: each state is a path together with the net place-permutation
//! that produced it, and the moves are the face moves (nonadjacent-square
//! swaps, adjacent-square and partial-octagon swaps, full octagons, and the
//! explicit decagon/tetradecagon word moves of the doubly-laced exceptional
//! type, the latter flagged experimental). One-color crossings of repeated
//! residues enter as separate detour factors on either end of a flank.

use num_rational::Rational64;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::cartan::CartanDatum;
use crate::coord::Coord;
use crate::crystal::{nonadjacent_closure, CrystalGraph};
use crate::laurent::LaurentPoly;
use crate::wdiagram::{self, IdempotentDiagram, StringKind};
use crate::{Error, Result};

/// Whether affine (sandwich polynomial algebras untruncated) or cyclotomic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Cyclotomic,
    Affine,
}

/// A permutation of `{0, .., n-1}` in one-line form: `w[k]` is the image
/// of k. Acting on a sequence puts the k-th entry at position `w[k]`.
pub type Perm = Vec<usize>;

pub fn apply_perm(w: &Perm, seq: &[usize]) -> Vec<usize> {
    let mut out = vec![0; seq.len()];
    for (k, &x) in seq.iter().enumerate() {
        out[w[k]] = x;
    }
    out
}

pub fn compose(after: &Perm, first: &Perm) -> Perm {
    first.iter().map(|&k| after[k]).collect()
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Cycle notation for display, 1-based.
pub fn cycles(w: &Perm) -> String {
    let mut seen = vec![false; w.len()];
    let mut out = String::new();
    for start in 0..w.len() {
        if seen[start] || w[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = w[start];
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = w[cur];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// The context a cell datum is built in: one crystal per red string, plus
/// one crystal per affine red residue in affine mode.
pub struct CellContext {
    pub datum: CartanDatum,
    pub graphs: Vec<CrystalGraph>,
    /// Crystals of the residues 1..=e, for the affine components.
    pub residue_graphs: Vec<CrystalGraph>,
    pub kappa: Vec<Rational64>,
    pub rho: Vec<usize>,
    pub mode: Mode,
}

impl CellContext {
    pub fn new(
        datum: &CartanDatum,
        rho: &[usize],
        kappa: &[Rational64],
        mode: Mode,
        limit: usize,
    ) -> Result<CellContext> {
        if rho.is_empty() || rho.len() != kappa.len() {
            return Err(Error::InvalidConfig("need equal numbers of charges and weights".into()));
        }
        let graphs = rho
            .iter()
            .map(|&i| crate::crystal::fundamental_crystal(datum, i, limit))
            .collect::<Result<Vec<_>>>()?;
        let residue_graphs = if mode == Mode::Affine {
            (1..=datum.rank())
                .map(|i| crate::crystal::fundamental_crystal(datum, i, limit))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(CellContext {
            datum: datum.clone(),
            graphs,
            residue_graphs,
            kappa: kappa.to_vec(),
            rho: rho.to_vec(),
            mode,
        })
    }

    /// Graph of one component of a tuple over the affine level: the genuine
    /// components first, then runs of n affine components per residue.
    fn component_graph(&self, c: usize, n: usize) -> &CrystalGraph {
        let ell = self.graphs.len();
        if c < ell {
            &self.graphs[c]
        } else {
            let residue = (c - ell) / n.max(1);
            &self.residue_graphs[residue]
        }
    }

    fn tuple_components(&self, n: usize) -> usize {
        match self.mode {
            Mode::Cyclotomic => self.graphs.len(),
            Mode::Affine => self.graphs.len() + n * self.datum.rank(),
        }
    }

    /// All (good) path tuples of total length n. In cyclotomic mode every
    /// tuple over the genuine components is good; in affine mode the tuples
    /// extend over the affine components and the last residue must not
    /// extend any earlier component's path.
    pub fn path_tuples(&self, n: usize) -> Vec<PathTuple> {
        let total = self.tuple_components(n);
        let mut out = Vec::new();
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); total];
        self.tuple_rec(n, 0, n, &mut parts, &mut out);
        if self.mode == Mode::Affine {
            out.retain(|t| self.is_good(t, n));
        }
        out.sort();
        out
    }

    fn tuple_rec(
        &self,
        n: usize,
        c: usize,
        rem: usize,
        parts: &mut Vec<Vec<usize>>,
        out: &mut Vec<PathTuple>,
    ) {
        if c == self.tuple_components(n) {
            if rem == 0 {
                out.push(PathTuple { parts: parts.clone() });
            }
            return;
        }
        for len in 0..=rem {
            let ps = self.component_graph(c, n).paths_of_length(len);
            if ps.is_empty() {
                break;
            }
            for p in ps {
                parts[c] = p.residues;
                self.tuple_rec(n, c + 1, rem - len, parts, out);
            }
        }
        parts[c] = Vec::new();
    }

    /// A tuple is good when its last residue cannot extend the path in any
    /// earlier component whenever the last nonempty component is affine.
    fn is_good(&self, t: &PathTuple, n: usize) -> bool {
        let ell = self.graphs.len();
        let Some(m) = t.parts.iter().rposition(|p| !p.is_empty()) else {
            return true;
        };
        if m < ell {
            return true;
        }
        let last = *t.parts[m].last().unwrap();
        for k in 0..m {
            let g = self.component_graph(k, n);
            if let Some(v) = g.follow(&t.parts[k]) {
                if g.out[v][last - 1].is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Endpoint tuple of a path tuple.
    pub fn sink(&self, p: &PathTuple) -> Vec<usize> {
        let n = p.n();
        p.parts
            .iter()
            .enumerate()
            .map(|(c, part)| {
                self.component_graph(c, n).follow(part).expect("tuple parts are paths")
            })
            .collect()
    }

    fn is_path_tuple(&self, p: &PathTuple) -> bool {
        let n = p.n();
        p.parts
            .iter()
            .enumerate()
            .all(|(c, part)| self.component_graph(c, n).follow(part).is_some())
    }

    pub fn diagram(&self, p: &PathTuple) -> Result<IdempotentDiagram> {
        let (seq, comps) = p.flatten();
        IdempotentDiagram::build(&seq, &comps, &self.kappa, &self.rho, &self.datum)
    }
}

/// A tuple of rooted paths, one per red string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathTuple {
    pub parts: Vec<Vec<usize>>,
}

impl PathTuple {
    pub fn single(residues: Vec<usize>) -> Self {
        PathTuple { parts: vec![residues] }
    }

    pub fn flatten(&self) -> (Vec<usize>, Vec<usize>) {
        let mut seq = Vec::new();
        let mut comps = Vec::new();
        for (c, part) in self.parts.iter().enumerate() {
            seq.extend_from_slice(part);
            comps.extend(std::iter::repeat(c + 1).take(part.len()));
        }
        (seq, comps)
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    fn from_flat(template: &PathTuple, seq: &[usize]) -> PathTuple {
        let mut parts = Vec::with_capacity(template.parts.len());
        let mut k = 0;
        for part in &template.parts {
            parts.push(seq[k..k + part.len()].to_vec());
            k += part.len();
        }
        PathTuple { parts }
    }

    pub fn residue_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// One-step face moves available from a path tuple, as window permutations
/// on the flat sequence paired with the resulting tuple.
fn face_moves(ctx: &CellContext, t: &PathTuple) -> Vec<(Perm, PathTuple)> {
    let (seq, _comps) = t.flatten();
    let n = seq.len();
    let datum = &ctx.datum;
    let mut out = Vec::new();
    let mut bounds = Vec::new();
    let mut k = 0;
    for part in &t.parts {
        bounds.push((k, k + part.len()));
        k += part.len();
    }
    let same_comp = |a: usize, b: usize| bounds.iter().any(|&(lo, hi)| lo <= a && b < hi);

    let push = |w: Perm, s: Vec<usize>, out: &mut Vec<(Perm, PathTuple)>| {
        let cand = PathTuple::from_flat(t, &s);
        if ctx.is_path_tuple(&cand) {
            out.push((w, cand));
        }
    };

    // transposition moves: nonadjacent squares, adjacent squares and partial
    // octagons or decagons
    for a in 0..n.saturating_sub(1) {
        let b = a + 1;
        if !same_comp(a, b) || seq[a] == seq[b] {
            continue;
        }
        let mut s = seq.clone();
        s.swap(a, b);
        let mut w = identity(n);
        w.swap(a, b);
        push(w, s, &mut out);
    }
    // full octagons: i j j i <-> j i i j with the crossing-minimal wiring
    for a in 0..n.saturating_sub(3) {
        if !same_comp(a, a + 3) {
            continue;
        }
        let (i, j) = (seq[a], seq[a + 1]);
        if i == j || seq[a + 2] != j || seq[a + 3] != i || !datum.adjacent(i, j) {
            continue;
        }
        let mut s = seq.clone();
        s[a] = j;
        s[a + 1] = i;
        s[a + 2] = i;
        s[a + 3] = j;
        let mut w = identity(n);
        w[a] = a + 2;
        w[a + 2] = a;
        w[a + 1] = a + 3;
        w[a + 3] = a + 1;
        push(w, s, &mut out);
    }
    // decagon and tetradecagon word moves of the doubly-laced exceptional
    // quiver, on residues 2 and 3
    if datum.cartan_type.family == crate::cartan::Family::F {
        let dec: [(&[usize], &[usize]); 3] = [
            (&[2, 3, 3, 3, 2], &[3, 2, 2, 3, 3]),
            (&[2, 3, 3, 3, 2], &[3, 2, 3, 2, 3]),
            (&[3, 2, 2, 3, 3], &[3, 2, 3, 2, 3]),
        ];
        let tet: [&[usize]; 4] = [
            &[2, 3, 3, 2, 3, 2, 3],
            &[3, 2, 2, 3, 3, 3, 2],
            &[3, 2, 3, 2, 3, 3, 2],
            &[2, 3, 3, 3, 2, 2, 3],
        ];
        let mut word_moves: Vec<(&[usize], &[usize])> = Vec::new();
        for &(x, y) in &dec {
            word_moves.push((x, y));
            word_moves.push((y, x));
        }
        for (ix, &x) in tet.iter().enumerate() {
            for (iy, &y) in tet.iter().enumerate() {
                if ix != iy {
                    word_moves.push((x, y));
                }
            }
        }
        for (from, to) in word_moves {
            let wlen = from.len();
            if n < wlen {
                continue;
            }
            for a in 0..=n - wlen {
                if !same_comp(a, a + wlen - 1) || &seq[a..a + wlen] != from {
                    continue;
                }
                let mut s = seq.clone();
                s[a..a + wlen].copy_from_slice(to);
                // order-preserving window map per repeated letter
                let mut w = identity(n);
                for letter in [2usize, 3] {
                    let src: Vec<usize> = (0..wlen).filter(|&p| from[p] == letter).collect();
                    let dst: Vec<usize> = (0..wlen).filter(|&p| to[p] == letter).collect();
                    for (ps, pd) in src.iter().zip(&dst) {
                        w[a + ps] = a + pd;
                    }
                }
                push(w, s, &mut out);
            }
        }
    }
    out
}

/// All net permutations of face-move compositions from `p` to `q`, with
/// intermediate paths restricted to the sinks of `p` and `q`.
pub fn enumerate_face_perms(ctx: &CellContext, p: &PathTuple, q: &PathTuple) -> BTreeSet<Perm> {
    if p.n() != q.n() {
        return BTreeSet::new();
    }
    let mut sinks = BTreeSet::new();
    sinks.insert(ctx.sink(p));
    sinks.insert(ctx.sink(q));
    let n = p.n();
    let mut found: BTreeSet<Perm> = BTreeSet::new();
    let mut seen: BTreeSet<(PathTuple, Perm)> = BTreeSet::new();
    let start = (p.clone(), identity(n));
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some((t, w)) = queue.pop_front() {
        if &t == q {
            found.insert(w.clone());
        }
        for (mv, t2) in face_moves(ctx, &t) {
            if !sinks.contains(&ctx.sink(&t2)) {
                continue;
            }
            let w2 = compose(&mv, &w);
            let state = (t2, w2);
            if seen.insert(state.clone()) {
                queue.push_back(state);
            }
        }
    }
    found
}

/// Positions of the repeated-residue clusters of a flat sequence.
fn clusters(datum: &CartanDatum, seq: &[usize]) -> Vec<Vec<usize>> {
    let n = seq.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for m in 0..n {
        if used[m] {
            continue;
        }
        let i = seq[m];
        let mut cluster = vec![m];
        for r in m + 1..n {
            if seq[r] == i {
                cluster.push(r);
            } else if datum.a(seq[r], i) != 0 {
                break;
            }
        }
        if cluster.len() > 1 {
            for &c in &cluster {
                used[c] = true;
            }
            out.push(cluster);
        }
    }
    out
}

/// Detour factors of a path: products of the longest words of its
/// repeated-residue clusters (the one-color crossings).
fn detour_factors(datum: &CartanDatum, seq: &[usize]) -> Vec<Perm> {
    let cls = clusters(datum, seq);
    let n = seq.len();
    let mut out = vec![identity(n)];
    for c in &cls {
        let mut w0 = identity(n);
        let k = c.len();
        for (a, &pos) in c.iter().enumerate() {
            w0[pos] = c[k - 1 - a];
        }
        let mut next = Vec::new();
        for w in &out {
            next.push(w.clone());
            next.push(compose(&w0, w));
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// The full action orbit of face permutations from a source path to a
/// target class: nets to every class member, composed with the target's own
/// cluster crossings, each with its wiring diagram and degree.
fn action_orbit(
    ctx: &CellContext,
    source: &PathTuple,
    sdiag: &IdempotentDiagram,
    class_rep: &PathTuple,
) -> Result<Vec<(Perm, IdempotentDiagram, i64)>> {
    let datum = &ctx.datum;
    let (rseq, _) = class_rep.flatten();
    let members: Vec<PathTuple> = nonadjacent_closure(datum, &rseq)
        .into_iter()
        .map(|s| PathTuple::from_flat(class_rep, &s))
        .filter(|t| ctx.is_path_tuple(t))
        .collect();
    let mut out = Vec::new();
    for member in &members {
        let nets = enumerate_face_perms(ctx, source, member);
        if nets.is_empty() {
            continue;
        }
        let mdiag = ctx.diagram(member)?;
        let (mseq, _) = member.flatten();
        let dts = detour_factors(datum, &mseq);
        let mut perms: BTreeSet<Perm> = BTreeSet::new();
        for w in &nets {
            for dt in &dts {
                perms.insert(compose(dt, w));
            }
        }
        for w in perms {
            let deg = wdiagram::permutation_degree(sdiag, &mdiag, &w)?;
            out.push((w, mdiag.clone(), deg));
        }
    }
    Ok(out)
}

/// A flanking diagram of a cell: a face permutation from the preferred path
/// to a good-path class representative, composed with detour factors.
#[derive(Debug, Clone, Serialize)]
pub struct Flank {
    pub perm: Perm,
    /// Index of the target vertex in the cell datum's vertex list.
    pub target: usize,
    pub degree: i64,
}

/// Per-vertex cell data.
#[derive(Debug, Clone)]
pub struct CellVertex {
    /// Endpoint tuple in the component crystals.
    pub sink: Vec<usize>,
    pub preferred: PathTuple,
    /// Good-path class representatives with this sink, preferred first.
    pub classes: Vec<PathTuple>,
    pub diagram: IdempotentDiagram,
    pub dots: Vec<usize>,
    pub c_vector: Vec<usize>,
    /// Number of unsteady strings (affine dot positions).
    pub affine_dots: usize,
    pub flanks: Vec<Flank>,
    /// Detour count: good-path classes to this sink reachable by face moves.
    pub detours: usize,
}

impl CellVertex {
    pub fn finch_size(&self) -> u64 {
        self.c_vector.iter().map(|&c| c as u64 + 1).product()
    }

    pub fn dotidem_degree(&self, datum: &CartanDatum) -> i64 {
        let (seq, _) = self.preferred.flatten();
        wdiagram::dots_degree(datum, &seq, &self.dots)
    }

    /// Graded rank of the sandwich algebra, including the dotted idempotent's
    /// own degree.
    pub fn sandwich_rank(&self, datum: &CartanDatum) -> LaurentPoly {
        let (seq, _) = self.preferred.flatten();
        let base = self.dotidem_degree(datum);
        let mut p = LaurentPoly::term(1, base);
        for (m, &c) in self.c_vector.iter().enumerate() {
            let mut factor = LaurentPoly::zero();
            let step = 2 * datum.d(seq[m]);
            for f in 0..=c as i64 {
                factor.add_term(1, f * step);
            }
            p = &p * &factor;
        }
        p
    }
}

/// The assembled cell datum for fixed n.
pub struct CellDatum {
    pub datum: CartanDatum,
    pub mode: Mode,
    pub n: usize,
    /// Vertices sorted by dominance, most dominant first.
    pub vertices: Vec<CellVertex>,
}

/// Dominance comparison of idempotent diagrams: coordinate vectors compared
/// lexicographically reading right to left.
pub fn dominance_compare(a: &IdempotentDiagram, b: &IdempotentDiagram) -> std::cmp::Ordering {
    let (va, vb) = (a.coordinate_vector(), b.coordinate_vector());
    for (x, y) in va.iter().rev().zip(vb.iter().rev()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// The sandwich dot allowance of each steady string, matched to the local
/// blocking configurations: a solid string pressed against a ghost across an
/// edge of multiplicity m takes `m - 1` extra dots beyond its idempotent
/// dots (one fewer when a triple edge sits in a one-color sandwich), and in
/// the simply-laced ghost-pressed case a string takes one extra dot exactly
/// when two blockers stack ahead of its ghost and the string either carries
/// an idempotent dot or is wedged against a foreign blocker.
fn sandwich_allowance(diag: &IdempotentDiagram, dots: &[usize]) -> Vec<usize> {
    let datum = &diag.datum;
    let n = diag.n();
    let strings = diag.all_strings();
    let at = |c: Coord| strings.iter().find(|s| s.coord == c);
    let mut out = vec![0usize; n];
    for m in 0..n {
        if diag.anchors[m] > diag.affine.level {
            continue;
        }
        let i = diag.seq[m];
        let x = diag.solids[m];
        let mut c_solid = 0i64;
        if let Some(b) = at(x + Coord::eps(1)) {
            if b.kind == StringKind::Ghost {
                if let Some(mult) = datum.edge_multiplicity(b.residue, i) {
                    // across a triple edge, same-residue solid strings
                    // stacked directly beyond the blocking ghost each absorb
                    // one allowed dot through the plactic relations
                    let mut stacked = 0i64;
                    if mult == 3 {
                        let mut probe = x + Coord::eps(2);
                        while at(probe)
                            .is_some_and(|s| s.kind == StringKind::Solid && s.residue == i)
                        {
                            stacked += 1;
                            probe = probe + Coord::eps(1);
                        }
                    }
                    c_solid = (mult as i64 - 1 - dots[m] as i64 - stacked).max(0);
                }
            }
        }
        let mut c_ghost = 0i64;
        let wedged = at(x + Coord::eps(1)).is_some_and(|s| {
            s.residue != i
                && wdiagram::blocks_string(s.kind, s.residue, i, datum)
                    == wdiagram::Blocks::BlocksSolid
        });
        for &g in &diag.ghosts[m] {
            // scan upward from the ghost through same-residue strings,
            // counting the short solid strings that block it
            let mut above: Vec<_> = strings.iter().filter(|s| s.coord > g).collect();
            above.sort_by(|a, b| a.coord.cmp(&b.coord));
            let mut r = 0;
            for s in above {
                if s.kind == StringKind::Solid && datum.edge(i, s.residue).is_some() {
                    if datum.d(s.residue) != 1 {
                        r = 0;
                        break;
                    }
                    r += 1;
                } else if s.residue == i
                    && !matches!(s.kind, StringKind::Red | StringKind::AffineRed)
                {
                    continue;
                } else {
                    break;
                }
            }
            if r >= 2 && datum.d(i) == 1 && (dots[m] >= 1 || wedged) {
                c_ghost = 1;
            }
        }
        out[m] = c_solid.max(c_ghost) as usize;
    }
    out
}

pub fn build_cell_datum(ctx: &CellContext, n: usize) -> Result<CellDatum> {
    let datum = ctx.datum.clone();
    // all paths, grouped into nonadjacent-move classes
    let tuples = ctx.path_tuples(n);
    let mut class_of: HashMap<PathTuple, usize> = HashMap::new();
    let mut class_reps: Vec<PathTuple> = Vec::new();
    for t in &tuples {
        if class_of.contains_key(t) {
            continue;
        }
        let (seq, _) = t.flatten();
        let closure = nonadjacent_closure(&datum, &seq);
        let id = class_reps.len();
        let mut members: Vec<PathTuple> = closure
            .into_iter()
            .map(|s| PathTuple::from_flat(t, &s))
            .filter(|c| tuples.binary_search(c).is_ok())
            .collect();
        members.sort();
        members.dedup();
        for m in &members {
            class_of.insert(m.clone(), id);
        }
        class_reps.push(members.into_iter().next().unwrap());
    }

    // group classes by sink; the preferred path is the least class rep
    let mut by_sink: BTreeMap<Vec<usize>, Vec<PathTuple>> = BTreeMap::new();
    for rep in &class_reps {
        by_sink.entry(ctx.sink(rep)).or_default().push(rep.clone());
    }

    struct Proto {
        sink: Vec<usize>,
        preferred: PathTuple,
        classes: Vec<PathTuple>,
        diagram: IdempotentDiagram,
    }
    let mut protos: Vec<Proto> = Vec::new();
    for (sink, mut classes) in by_sink {
        classes.sort();
        let preferred = classes[0].clone();
        let diagram = ctx.diagram(&preferred)?;
        if ctx.mode == Mode::Cyclotomic && !diagram.is_steady() {
            continue;
        }
        protos.push(Proto { sink, preferred, classes, diagram });
    }
    // dominance order, most dominant first
    protos.sort_by(|a, b| dominance_compare(&b.diagram, &a.diagram));

    let mut vertices: Vec<CellVertex> = Vec::new();
    for (vi, proto) in protos.iter().enumerate() {
        let (seq, _) = proto.preferred.flatten();
        let dots = wdiagram::dot_counts(&datum, &seq);
        let c_vector = sandwich_allowance(&proto.diagram, &dots);
        let affine_dots =
            proto.diagram.anchors.iter().filter(|&&a| a > proto.diagram.affine.level).count();
        let source_detours = detour_factors(&datum, &seq);
        let mut flanks: Vec<Flank> = Vec::new();
        let mut detours = 0usize;
        for (ti, tproto) in protos.iter().enumerate() {
            // flank targets are at least as dominant: earlier in the order
            if ti > vi {
                continue;
            }
            for class_rep in &tproto.classes {
                // the canonical bare net for this target class: degree
                // closest to zero over the class members and the target's
                // own cluster crossings, with the identity for the source's
                // own class
                let mut bare: Option<(Perm, IdempotentDiagram, i64)> = None;
                if class_rep == &proto.preferred {
                    bare = Some((identity(n), proto.diagram.clone(), 0));
                } else {
                    for (w, mdiag, deg) in
                        action_orbit(ctx, &proto.preferred, &proto.diagram, class_rep)?
                    {
                        if bare.as_ref().is_none_or(|(bw, _, bd)| {
                            deg.abs() < bd.abs() || (deg.abs() == bd.abs() && w < *bw)
                        }) {
                            bare = Some((w, mdiag, deg));
                        }
                    }
                }
                let Some((bare_w, tdiag, _)) = bare else { continue };
                if tproto.sink == proto.sink {
                    detours += 1;
                }
                let mut perms: BTreeSet<Perm> = BTreeSet::new();
                for ds in &source_detours {
                    perms.insert(compose(&bare_w, ds));
                }
                for w in perms {
                    let degree = wdiagram::permutation_degree(&proto.diagram, &tdiag, &w)?;
                    flanks.push(Flank { perm: w, target: ti, degree });
                }
            }
        }
        flanks.sort_by(|a, b| a.perm.cmp(&b.perm));
        flanks.dedup_by(|a, b| a.perm == b.perm);
        vertices.push(CellVertex {
            sink: proto.sink.clone(),
            preferred: proto.preferred.clone(),
            classes: proto.classes.clone(),
            diagram: proto.diagram.clone(),
            dots,
            c_vector,
            affine_dots,
            flanks,
            detours,
        });
    }
    Ok(CellDatum { datum, mode: ctx.mode, n, vertices })
}

impl CellDatum {
    /// Index of the vertex whose preferred residue string matches.
    pub fn vertex_by_path(&self, residues: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.preferred.residue_string() == residues)
    }

    /// Total graded rank: the sum of `v^deg` over all basis elements
    /// `(vertex; S, T; finite dots)`.
    pub fn graded_rank(&self) -> LaurentPoly {
        let mut total = LaurentPoly::zero();
        for v in &self.vertices {
            let sand = v.sandwich_rank(&self.datum);
            let mut flank_sum = LaurentPoly::zero();
            for f in &v.flanks {
                flank_sum.add_term(1, f.degree);
            }
            total += &(&(&flank_sum * &flank_sum) * &sand);
        }
        total
    }

    /// Graded rank of the corner cut out by the idempotents of two vertices:
    /// basis elements whose flanks target these vertices.
    pub fn pairwise_rank(&self, a: usize, b: usize) -> LaurentPoly {
        let mut total = LaurentPoly::zero();
        for v in &self.vertices {
            let sand = v.sandwich_rank(&self.datum);
            let mut to_a = LaurentPoly::zero();
            let mut to_b = LaurentPoly::zero();
            for f in &v.flanks {
                if f.target == a {
                    to_a.add_term(1, f.degree);
                }
                if f.target == b {
                    to_b.add_term(1, f.degree);
                }
            }
            total += &(&(&to_a * &to_b) * &sand);
        }
        total
    }

    /// Graded decomposition number `[D_a : L_b]`: the sum of `v^deg` over
    /// the raw face permutations from the preferred path of `a` to the
    /// preferred path of `b`, with no detour factors.
    pub fn decomposition_number(&self, ctx: &CellContext, a: usize, b: usize) -> LaurentPoly {
        if a == b {
            return LaurentPoly::one();
        }
        if b > a {
            // unitriangularity: only strictly more dominant simples occur
            return LaurentPoly::zero();
        }
        let (src, dst) = (&self.vertices[a], &self.vertices[b]);
        // one term per good-path class at the target vertex, each with the
        // largest wiring degree in its action orbit
        let mut out = LaurentPoly::zero();
        for class_rep in &dst.classes {
            let orbit = action_orbit(ctx, &src.preferred, &src.diagram, class_rep)
                .unwrap_or_default();
            if let Some(deg) = orbit.iter().map(|(_, _, d)| *d).max() {
                out.add_term(1, deg);
            }
        }
        out
    }

    /// Dimension of the simple module at a vertex: its detour count.
    pub fn simple_dimension(&self, v: usize) -> usize {
        self.vertices[v].detours
    }

    /// The face-permutation table entry between two vertices in the
    /// canonical normal form: detour products on the diagonal, and off the
    /// diagonal the raw nets composed with the source's cluster crossings.
    pub fn face_table_entry(&self, ctx: &CellContext, a: usize, b: usize) -> BTreeSet<String> {
        face_table_between(ctx, &self.vertices[a].preferred, &self.vertices[b].preferred)
    }

    /// Internal consistency: the rank at v = 1 must equal the sum over
    /// vertices of squared flank counts times finite-dot counts.
    pub fn rank_consistency(&self) -> (i64, i64) {
        let lhs = self.graded_rank().eval_one();
        let rhs: i64 = self
            .vertices
            .iter()
            .map(|v| (v.flanks.len() as i64).pow(2) * v.finch_size() as i64)
            .sum();
        (lhs, rhs)
    }

    /// JSON report of the full datum.
    pub fn to_json(&self, ctx: &CellContext, eps: Rational64) -> serde_json::Value {
        let verts: Vec<_> = self
            .vertices
            .iter()
            .map(|v| {
                serde_json::json!({
                    "preferred_path": v.preferred.residue_string(),
                    "sink": v.sink,
                    "coords": v
                        .diagram
                        .coordinate_vector()
                        .iter()
                        .map(|c| c.display_at(eps))
                        .collect::<Vec<_>>(),
                    "steady": v.diagram.is_steady(),
                    "dots": v.dots,
                    "sandwich": {
                        "c": v.c_vector,
                        "finch_size": v.finch_size(),
                        "grdim": format!("{}", v.sandwich_rank(&self.datum)),
                        "affine_generators": if self.mode == Mode::Affine {
                            serde_json::json!(format!(
                                "polynomial algebra on {} generators",
                                v.affine_dots
                            ))
                        } else {
                            serde_json::Value::Null
                        },
                    },
                    "face_set": v
                        .flanks
                        .iter()
                        .map(|f| {
                            serde_json::json!({
                                "perm": cycles(&f.perm),
                                "target": self.vertices[f.target].preferred.residue_string(),
                                "degree": f.degree,
                            })
                        })
                        .collect::<Vec<_>>(),
                    "simple_dimension": v.detours,
                })
            })
            .collect();
        let mut pairwise = serde_json::Map::new();
        for a in 0..self.vertices.len() {
            for b in a..self.vertices.len() {
                let p = self.pairwise_rank(a, b);
                if !p.is_zero() {
                    let key = format!(
                        "{}|{}",
                        self.vertices[a].preferred.residue_string(),
                        self.vertices[b].preferred.residue_string()
                    );
                    pairwise.insert(key, serde_json::json!(format!("{p}")));
                }
            }
        }
        let mut decomp = serde_json::Map::new();
        for a in 0..self.vertices.len() {
            for b in 0..self.vertices.len() {
                let d = self.decomposition_number(ctx, a, b);
                if !d.is_zero() {
                    let key = format!(
                        "{}|{}",
                        self.vertices[a].preferred.residue_string(),
                        self.vertices[b].preferred.residue_string()
                    );
                    decomp.insert(key, serde_json::json!(format!("{d}")));
                }
            }
        }
        serde_json::json!({
            "mode": self.mode,
            "n": self.n,
            "vertices": verts,
            "graded_rank": format!("{}", self.graded_rank()),
            "dimension": self.graded_rank().eval_one(),
            "pairwise": pairwise,
            "decomposition_matrix": decomp,
        })
    }
}

/// The face-permutation table entry between two explicit paths: on the
/// diagonal the detour products of the source's repeated-residue clusters,
/// off the diagonal the raw nets composed with the source's full cluster
/// crossing, in cycle notation.
pub fn face_table_between(ctx: &CellContext, a: &PathTuple, b: &PathTuple) -> BTreeSet<String> {
    let (seq, _) = a.flatten();
    if a == b {
        return detour_factors(&ctx.datum, &seq).iter().map(cycles).collect();
    }
    let nets = enumerate_face_perms(ctx, a, b);
    let full: Perm = detour_factors(&ctx.datum, &seq).into_iter().next_back().unwrap();
    nets.iter().map(|w| cycles(&compose(w, &full))).collect()
}

/// Test-only window into the sandwich allowance computation.
#[cfg(test)]
pub(crate) fn sandwich_allowance_for_tests(
    diag: &IdempotentDiagram,
    dots: &[usize],
) -> Vec<usize> {
    sandwich_allowance(diag, dots)
}

#[cfg(test)]
#[path = "cellular_tests.rs"]
mod tests;

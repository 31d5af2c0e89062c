//! Exact-coordinate idempotent diagrams: affine charge, blocking, parking,
//! anchors, steadiness and straight-segment degrees.
//!
//! Strings are placed one at a time in residue-sequence order. A new string
//! enters on the left of its component and is pulled right until some bundle
//! component (the solid string or one of its ghosts) reaches a string it
//! cannot honestly cross; it parks on the epsilon-grid slot below that
//! blocker. Components that cannot park on a genuine red string spill into
//! the affine region, where bookkeeping affine red strings block them.

use num_rational::Rational64;
use serde::Serialize;

use crate::cartan::{CartanDatum, LocalConfig};
use crate::coord::Coord;
use crate::{Error, Result};

/// The kinds of strings in a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StringKind {
    Solid,
    Ghost,
    Red,
    AffineRed,
}

/// Affine level, charge and red labels extending a cyclotomic charge.
#[derive(Debug, Clone, Serialize)]
pub struct AffineData {
    pub level: usize,
    pub affine_level: usize,
    pub charge: Vec<Coord>,
    pub residues: Vec<usize>,
}

/// Computes the affine extension: `ell + n*e` red strings total, the affine
/// ones at spacing `2n + 1` past the last genuine charge, with residues
/// `1, .., 1, 2, .., 2, ...` in runs of length n.
pub fn affine_charge(
    kappa: &[Rational64],
    rho: &[usize],
    n: usize,
    datum: &CartanDatum,
) -> Result<AffineData> {
    if kappa.len() != rho.len() || kappa.is_empty() {
        return Err(Error::InvalidConfig(
            "charge and residue tuples must have equal positive length".into(),
        ));
    }
    if kappa.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("charge must be strictly increasing".into()));
    }
    if let Some(&r) = rho.iter().find(|&&r| r == 0 || r > datum.rank()) {
        return Err(Error::InvalidConfig(format!("red residue {r} out of range")));
    }
    let ell = kappa.len();
    let e = datum.rank();
    let affine_level = ell + n * e;
    let mut charge: Vec<Coord> = kappa.iter().map(|&k| Coord::rational(k)).collect();
    let mut residues = rho.to_vec();
    let last = kappa[ell - 1];
    let spacing = Rational64::from_integer(2 * n as i64 + 1);
    for m in ell + 1..=affine_level {
        let steps = Rational64::from_integer((m - ell) as i64);
        charge.push(Coord::rational(last + spacing * steps));
        residues.push((m - ell - 1) / n.max(1) + 1);
    }
    Ok(AffineData { level: ell, affine_level, charge, residues })
}

/// What a string can block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocks {
    BlocksSolid,
    BlocksGhost,
    Nothing,
}

/// Whether a string of the given kind and residue `j` blocks i-strings.
///
/// Red and affine red j-strings and solid j-strings block solid i-strings
/// when i = j; ghost j-strings block solid i-strings across an edge j ~> i;
/// solid j-strings block ghost i-strings across an edge i ~> j.
pub fn blocks_string(kind: StringKind, j: usize, i: usize, datum: &CartanDatum) -> Blocks {
    match kind {
        StringKind::Red | StringKind::AffineRed => {
            if i == j {
                Blocks::BlocksSolid
            } else {
                Blocks::Nothing
            }
        }
        StringKind::Solid => {
            if i == j {
                Blocks::BlocksSolid
            } else if datum.edge(i, j).is_some() {
                Blocks::BlocksGhost
            } else {
                Blocks::Nothing
            }
        }
        StringKind::Ghost => {
            if datum.edge(j, i).is_some() {
                Blocks::BlocksSolid
            } else {
                Blocks::Nothing
            }
        }
    }
}

/// A placed string with its exact coordinate.
#[derive(Debug, Clone, Serialize)]
pub struct PlacedString {
    pub kind: StringKind,
    pub residue: usize,
    pub coord: Coord,
    /// Sequence index of the owning solid string for ghosts; `usize::MAX`
    /// for red and affine red strings.
    pub owner: usize,
    /// Anchor: the component index (1-based) of the (affine) red string this
    /// string is chained to.
    pub anchor: usize,
}

/// An idempotent diagram built from a residue sequence.
#[derive(Debug, Clone)]
pub struct IdempotentDiagram {
    pub datum: CartanDatum,
    pub affine: AffineData,
    pub seq: Vec<usize>,
    /// Component (1-based) of each sequence entry.
    pub comps: Vec<usize>,
    /// Solid coordinate per sequence entry.
    pub solids: Vec<Coord>,
    /// Ghost coordinates per sequence entry, one per outgoing edge.
    pub ghosts: Vec<Vec<Coord>>,
    /// Anchor component per sequence entry.
    pub anchors: Vec<usize>,
}

struct Placement {
    kind: StringKind,
    residue: usize,
    coord: Coord,
    #[allow(dead_code)]
    owner: usize,
    anchor: usize,
}

impl IdempotentDiagram {
    /// Builds the diagram for a residue sequence whose entries carry
    /// component labels (all 1 in the one-red-string case).
    pub fn build(
        seq: &[usize],
        comps: &[usize],
        kappa: &[Rational64],
        rho: &[usize],
        datum: &CartanDatum,
    ) -> Result<IdempotentDiagram> {
        let n = seq.len();
        let affine = affine_charge(kappa, rho, n.max(1), datum)?;
        if comps.len() != n {
            return Err(Error::InvalidConfig("component labels must match sequence".into()));
        }
        if let Some(&r) = seq.iter().find(|&&r| r == 0 || r > datum.rank()) {
            return Err(Error::InvalidConfig(format!("residue {r} out of range")));
        }
        if comps.iter().any(|&m| m == 0 || m > affine.affine_level) {
            return Err(Error::InvalidConfig("component out of range".into()));
        }

        let mut placed: Vec<Placement> = Vec::new();
        for m in 1..=affine.affine_level {
            let kind = if m <= affine.level { StringKind::Red } else { StringKind::AffineRed };
            placed.push(Placement {
                kind,
                residue: affine.residues[m - 1],
                coord: affine.charge[m - 1],
                owner: usize::MAX,
                anchor: m,
            });
        }

        let mut solids = Vec::with_capacity(n);
        let mut ghosts: Vec<Vec<Coord>> = Vec::with_capacity(n);
        let mut anchors = Vec::with_capacity(n);
        // a component's strings never park left of where that component has
        // already spilled
        let mut floor = vec![0usize; affine.affine_level + 1];

        for (k, (&r, &m)) in seq.iter().zip(comps).enumerate() {
            let offsets: Vec<Coord> = bundle_offsets(datum, r);
            let start = m.max(floor[m]);
            let mut chosen: Option<(Coord, usize)> = None;
            for l in start..=affine.affine_level {
                if let Some((x, anchor)) = park_in_component(datum, &placed, &offsets, r, l, n) {
                    chosen = Some((x, anchor));
                    break;
                }
            }
            let (x, anchor) = chosen.ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "no admissible parking position for residue {r} (entry {})",
                    k + 1
                ))
            })?;
            floor[m] = floor[m].max(anchor);
            solids.push(x);
            let gcs: Vec<Coord> = offsets[1..].iter().map(|&o| x + o).collect();
            ghosts.push(gcs.clone());
            anchors.push(anchor);
            placed.push(Placement {
                kind: StringKind::Solid,
                residue: r,
                coord: x,
                owner: k,
                anchor,
            });
            for &g in &gcs {
                placed.push(Placement {
                    kind: StringKind::Ghost,
                    residue: r,
                    coord: g,
                    owner: k,
                    anchor,
                });
            }
        }

        Ok(IdempotentDiagram {
            datum: datum.clone(),
            affine,
            seq: seq.to_vec(),
            comps: comps.to_vec(),
            solids,
            ghosts,
            anchors,
        })
    }

    /// One-component convenience constructor.
    pub fn build_level_one(
        seq: &[usize],
        kappa: Rational64,
        rho: usize,
        datum: &CartanDatum,
    ) -> Result<IdempotentDiagram> {
        IdempotentDiagram::build(seq, &vec![1; seq.len()], &[kappa], &[rho], datum)
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    /// True when every string is anchored on a genuine red string.
    pub fn is_steady(&self) -> bool {
        self.anchors.iter().all(|&a| a <= self.affine.level)
    }

    /// Anchor component of the k-th string (sequence order, 0-based).
    pub fn anchor_trace(&self, k: usize) -> usize {
        self.anchors[k]
    }

    /// Solid coordinates sorted left to right.
    pub fn coordinate_vector(&self) -> Vec<Coord> {
        let mut v = self.solids.clone();
        v.sort();
        v
    }

    /// All strings of the diagram, including red and affine red ones.
    pub fn all_strings(&self) -> Vec<PlacedString> {
        let mut out = Vec::new();
        for m in 1..=self.affine.affine_level {
            out.push(PlacedString {
                kind: if m <= self.affine.level { StringKind::Red } else { StringKind::AffineRed },
                residue: self.affine.residues[m - 1],
                coord: self.affine.charge[m - 1],
                owner: usize::MAX,
                anchor: m,
            });
        }
        for k in 0..self.n() {
            out.push(PlacedString {
                kind: StringKind::Solid,
                residue: self.seq[k],
                coord: self.solids[k],
                owner: k,
                anchor: self.anchors[k],
            });
            for &g in &self.ghosts[k] {
                out.push(PlacedString {
                    kind: StringKind::Ghost,
                    residue: self.seq[k],
                    coord: g,
                    owner: k,
                    anchor: self.anchors[k],
                });
            }
        }
        out
    }

    /// JSON dump of the string data at a display epsilon.
    pub fn to_json(&self, eps: Rational64) -> serde_json::Value {
        let strings: Vec<_> = self
            .all_strings()
            .into_iter()
            .map(|s| {
                serde_json::json!({
                    "kind": s.kind,
                    "residue": s.residue,
                    "coord": format!("{}", s.coord),
                    "coord_at_eps": s.coord.display_at(eps),
                    "anchor": s.anchor,
                })
            })
            .collect();
        serde_json::json!({
            "residue_sequence": self.seq,
            "steady": self.is_steady(),
            "strings": strings,
        })
    }

    /// Plain-text rendering: strings sorted by coordinate at the display
    /// epsilon, one per line.
    pub fn render(&self, eps: Rational64) -> String {
        let mut strings = self.all_strings();
        strings.sort_by(|a, b| a.coord.cmp(&b.coord));
        let mut out = String::new();
        for s in strings {
            let kind = match s.kind {
                StringKind::Solid => "solid",
                StringKind::Ghost => "ghost",
                StringKind::Red => "red",
                StringKind::AffineRed => "affine-red",
            };
            out.push_str(&format!("{:>8}  {kind:<10} {}\n", s.coord.display_at(eps), s.residue));
        }
        out
    }
}

/// Solid offset plus one offset per outgoing edge of `r`.
fn bundle_offsets(datum: &CartanDatum, r: usize) -> Vec<Coord> {
    let mut offsets = vec![Coord::integer(0)];
    for ed in datum.edges_from(r) {
        offsets.push(Coord::ghost_shift(ed.short_shift));
    }
    offsets
}

/// Attempts to park a bundle for residue `r` in component `l`; returns the
/// solid coordinate and the anchor component.
fn park_in_component(
    datum: &CartanDatum,
    placed: &[Placement],
    offsets: &[Coord],
    r: usize,
    l: usize,
    n: usize,
) -> Option<(Coord, usize)> {
    let occupied: Vec<Coord> = placed.iter().map(|p| p.coord).collect();
    let mut best: Option<(Coord, usize)> = None;
    for blocker in placed.iter().filter(|p| p.anchor == l) {
        for (ci, &off) in offsets.iter().enumerate() {
            let kind = if ci == 0 { StringKind::Solid } else { StringKind::Ghost };
            let relevant = match blocks_string(blocker.kind, blocker.residue, r, datum) {
                Blocks::BlocksSolid => kind == StringKind::Solid,
                Blocks::BlocksGhost => kind == StringKind::Ghost,
                Blocks::Nothing => false,
            };
            if !relevant {
                continue;
            }
            // rightmost free slot below this blocker
            for step in 1..=n as i64 {
                let contact = blocker.coord - Coord::eps(step);
                let solid = contact - off;
                let free = offsets.iter().all(|&o| !occupied.contains(&(solid + o)));
                if !free {
                    continue;
                }
                // honest pull towards the blocker: nothing in between may
                // block this bundle component
                let honest = placed.iter().all(|p| {
                    if p.coord <= contact || p.coord >= blocker.coord {
                        return true;
                    }
                    let b = blocks_string(p.kind, p.residue, r, datum);
                    !matches!(
                        (b, kind),
                        (Blocks::BlocksSolid, StringKind::Solid)
                            | (Blocks::BlocksGhost, StringKind::Ghost)
                    )
                });
                if !honest {
                    break;
                }
                // two same-residue solid strings directly against an
                // (affine) red string collapse; the newcomer passes instead
                if kind == StringKind::Solid
                    && blocker.kind == StringKind::Solid
                    && blocker.residue == r
                {
                    let red_above = placed.iter().any(|p| {
                        matches!(p.kind, StringKind::Red | StringKind::AffineRed)
                            && p.residue == r
                            && p.coord == blocker.coord + Coord::eps(1)
                    });
                    if red_above {
                        break;
                    }
                }
                let cand = (solid, blocker.anchor);
                best = match best {
                    None => Some(cand),
                    Some(b) if cand.0 < b.0 => Some(cand),
                    b => b,
                };
                break;
            }
        }
    }
    best
}

/// A straight-segment string of a permutation diagram.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub kind: StringKind,
    pub residue: usize,
    pub top: Coord,
    pub bot: Coord,
}

/// Degree of the permutation diagram that connects the solid strings of
/// `top` to those of `bottom` along `w`: sequence entry m on top joins
/// sequence entry `w[m]` below (0-based), ghosts follow their solids and red
/// strings stay vertical. Dots are not included.
pub fn permutation_degree(
    top: &IdempotentDiagram,
    bottom: &IdempotentDiagram,
    w: &[usize],
) -> Result<i64> {
    let n = top.n();
    if bottom.n() != n || w.len() != n {
        return Err(Error::InvalidConfig("matching must cover all strings".into()));
    }
    let mut seen = vec![false; n];
    for (m, &wm) in w.iter().enumerate() {
        if wm >= n || seen[wm] {
            return Err(Error::InvalidConfig("matching is not a permutation".into()));
        }
        seen[wm] = true;
        if top.seq[m] != bottom.seq[wm] {
            return Err(Error::InvalidConfig(format!(
                "matching joins residues {} and {}",
                top.seq[m], bottom.seq[wm]
            )));
        }
    }
    let mut segs: Vec<Segment> = Vec::new();
    for m in 1..=top.affine.level {
        segs.push(Segment {
            kind: StringKind::Red,
            residue: top.affine.residues[m - 1],
            top: top.affine.charge[m - 1],
            bot: top.affine.charge[m - 1],
        });
    }
    for (m, &wm) in w.iter().enumerate() {
        segs.push(Segment {
            kind: StringKind::Solid,
            residue: top.seq[m],
            top: top.solids[m],
            bot: bottom.solids[wm],
        });
        for (gi, &g) in top.ghosts[m].iter().enumerate() {
            segs.push(Segment {
                kind: StringKind::Ghost,
                residue: top.seq[m],
                top: g,
                bot: bottom.ghosts[wm][gi],
            });
        }
    }
    Ok(crossing_degree(&segs, &top.datum))
}

/// Sum of local degrees over all crossing pairs of segments.
pub fn crossing_degree(segs: &[Segment], datum: &CartanDatum) -> i64 {
    let mut deg = 0i64;
    for (a, sa) in segs.iter().enumerate() {
        for sb in segs.iter().skip(a + 1) {
            let crosses =
                (sa.top < sb.top && sa.bot > sb.bot) || (sb.top < sa.top && sb.bot > sa.bot);
            if !crosses {
                continue;
            }
            deg += crossing_local_degree(sa, sb, datum);
        }
    }
    deg
}

fn crossing_local_degree(a: &Segment, b: &Segment, datum: &CartanDatum) -> i64 {
    use StringKind::*;
    let cfg = match (a.kind, b.kind) {
        (Solid, Solid) => LocalConfig::SolidSolidCrossing(a.residue, b.residue),
        (Ghost, Solid) => LocalConfig::SolidGhostCrossing { ghost: a.residue, solid: b.residue },
        (Solid, Ghost) => LocalConfig::SolidGhostCrossing { ghost: b.residue, solid: a.residue },
        (Ghost, Ghost) => LocalConfig::GhostGhostCrossing,
        (Solid, Red) | (Solid, AffineRed) => LocalConfig::SolidRedCrossing(a.residue, b.residue),
        (Red, Solid) | (AffineRed, Solid) => LocalConfig::SolidRedCrossing(b.residue, a.residue),
        (Ghost, Red) | (Red, Ghost) | (Ghost, AffineRed) | (AffineRed, Ghost) => {
            LocalConfig::GhostRedCrossing
        }
        (Red | AffineRed, Red | AffineRed) => return 0,
    };
    datum.local_degree(cfg)
}

/// Forward-looking dot counts: `d[m]` is the number of later equal residues
/// inside the maximal dotted subsequence starting at m (entries equal to the
/// residue or commuting with it).
pub fn dot_counts(datum: &CartanDatum, seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut d = vec![0usize; n];
    for m in 0..n {
        let i = seq[m];
        for r in m + 1..n {
            if seq[r] == i {
                d[m] += 1;
            } else if datum.a(seq[r], i) != 0 {
                break;
            }
        }
    }
    d
}

/// Degree of a dot vector: each dot on a solid i-string contributes `2 d_i`
/// (its ghost dots are degree 0).
pub fn dots_degree(datum: &CartanDatum, seq: &[usize], dots: &[usize]) -> i64 {
    seq.iter()
        .zip(dots)
        .map(|(&r, &k)| k as i64 * datum.local_degree(LocalConfig::SolidDot(r)))
        .sum()
}

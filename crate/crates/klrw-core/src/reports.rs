//! Nonvanishing ranges, layer-collision bounds and semisimplicity verdicts.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::cartan::{CartanDatum, CartanType, Family};
use crate::cellular::{CellContext, Mode};
use crate::crystal::{self, CrystalGraph};
use crate::Result;

/// Closed form for the maximal nonzero string count of a single fundamental
/// weight.
pub fn n_closed_form(t: CartanType, i: usize) -> usize {
    let e = t.rank;
    match t.family {
        Family::A => i * (e - i + 1),
        Family::B => {
            if i != e {
                (e + i) * (e - i + 1)
            } else {
                e * (e + 1) / 2
            }
        }
        Family::C => (e + i - 1) * (e - i + 1),
        Family::D => {
            if i != e - 1 && i != e {
                2 * i * e - i * (i + 1)
            } else {
                e * (e - 1) / 2
            }
        }
        Family::E => match e {
            6 => [16, 30, 42, 22, 30, 16][i - 1],
            7 => [34, 66, 96, 51, 75, 52, 27][i - 1],
            _ => [92, 182, 270, 136, 220, 168, 114, 58][i - 1],
        },
        Family::F => [22, 42, 30, 16][i - 1],
        Family::G => [10, 6][i - 1],
    }
}

/// The reference lower bound `l(i)` for unique-simple blocks; `None` is
/// infinity (the crystal is entirely semisimple).
pub fn l_closed_form(t: CartanType, i: usize) -> Option<usize> {
    let e = t.rank;
    match t.family {
        Family::A => None,
        Family::B => {
            if i == 1 || i == e {
                None
            } else {
                Some(2 * e - 2 * i + 3)
            }
        }
        Family::C => {
            if i == 1 {
                Some(8)
            } else if i < e {
                Some(2 * i)
            } else {
                None
            }
        }
        Family::D => {
            if i == 1 || i >= e - 1 {
                None
            } else {
                Some(2 * e - 2 * i + 1)
            }
        }
        Family::E => match e {
            6 => [None, Some(7), Some(5), Some(11), Some(7), None][i - 1],
            7 => [Some(17), Some(7), Some(5), Some(11), Some(7), Some(9), None][i - 1],
            _ => {
                [Some(17), Some(7), Some(5), Some(11), Some(7), Some(9), Some(11), Some(29)]
                    [i - 1]
            }
        },
        Family::F => [Some(11), Some(5), Some(4), Some(8)][i - 1],
        Family::G => [Some(7), Some(5)][i - 1],
    }
}

/// Whether the fundamental crystal of weight `i` is entirely semisimple.
pub fn entirely_semisimple(t: CartanType, i: usize) -> bool {
    let e = t.rank;
    match t.family {
        Family::A => true,
        Family::B => i == 1 || i == e,
        Family::C => i == e,
        Family::D => i == 1 || i == e - 1 || i == e,
        Family::E => match e {
            6 => i == 1 || i == 6,
            7 => i == 7,
            _ => false,
        },
        Family::F | Family::G => false,
    }
}

/// Nonvanishing range of a weight tuple: the sum of crystal depths, which is
/// cross-checked against the closed forms in the test suite.
pub fn nonvanishing_range(datum: &CartanDatum, rho: &[usize], limit: usize) -> Result<usize> {
    let mut total = 0;
    for &i in rho {
        let g = crystal::fundamental_crystal(datum, i, limit)?;
        total += g.depth();
    }
    Ok(total)
}

/// Computed `(l, u)`: `l` is the smallest layer containing two distinct
/// vertices in one residue-content block, `u = n(i) - l`; `None` components
/// mean no such layer exists.
pub fn l_u_computed(graph: &CrystalGraph) -> (Option<usize>, Option<usize>) {
    let depth = graph.depth();
    let mut l = None;
    'outer: for layer in 0..=depth {
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for v in graph.vertices_at_layer(layer) {
            let paths = graph.paths_to(v);
            let content = paths[0].content();
            if let Some(&other) = seen.get(&content) {
                if other != v {
                    l = Some(layer);
                    break 'outer;
                }
            }
            seen.insert(content, v);
        }
    }
    let u = l.map(|l| depth - l);
    (l, u)
}

/// Number of multi-vertex residue-content blocks per layer.
pub fn block_multiplicities(graph: &CrystalGraph) -> Vec<usize> {
    (0..=graph.depth())
        .map(|layer| {
            let mut by_content: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for v in graph.vertices_at_layer(layer) {
                let content = graph.paths_to(v)[0].content();
                *by_content.entry(content).or_insert(0) += 1;
            }
            by_content.values().filter(|&&c| c > 1).count()
        })
        .collect()
}

/// Semisimplicity report for a weight tuple.
#[derive(Debug, Clone, Serialize)]
pub struct SemisimplicityReport {
    pub cartan_type: String,
    pub weights: Vec<usize>,
    /// True when the algebras are semisimple for every string count.
    pub semisimple_for_all_n: bool,
    /// Table-level reason per the entirely-semisimple classification.
    pub reason: String,
    /// Per-n verdicts up to the checked bound: (n, blocks unique, sandwiches
    /// trivial).
    pub per_n: Vec<(usize, bool, bool)>,
    /// A failing witness: (n, kind, paths).
    pub witness: Option<(usize, String, Vec<String>)>,
}

/// Computes the semisimplicity verdict by the classification, with per-n
/// evidence gathered up to `n_max`.
pub fn semisimple_verdict(
    datum: &CartanDatum,
    rho: &[usize],
    n_max: usize,
    limit: usize,
) -> Result<SemisimplicityReport> {
    let t = datum.cartan_type;
    let mut distinct = rho.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let repeated = distinct.len() != rho.len();
    let all_ss = rho.iter().all(|&i| entirely_semisimple(t, i));
    let verdict = !repeated && all_ss;
    let reason = if repeated {
        "repeated weight components: the block property fails".to_string()
    } else if !all_ss {
        let bad: Vec<String> = rho
            .iter()
            .filter(|&&i| !entirely_semisimple(t, i))
            .map(|i| format!("L{i}"))
            .collect();
        format!("weights {} are not entirely semisimple", bad.join(", "))
    } else {
        "pairwise distinct entirely semisimple weights".to_string()
    };

    let kappa: Vec<num_rational::Rational64> = (0..rho.len())
        .map(|k| num_rational::Rational64::from_integer(3 * k as i64))
        .collect();
    let ctx = CellContext::new(datum, rho, &kappa, Mode::Cyclotomic, limit)?;
    let bound = nonvanishing_range(datum, rho, limit)?.min(n_max);
    let mut per_n = Vec::new();
    let mut witness = None;
    for n in 1..=bound {
        let cd = crate::cellular::build_cell_datum(&ctx, n)?;
        // blocks unique: each residue content appears at one vertex only
        let mut by_content: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (vi, v) in cd.vertices.iter().enumerate() {
            let (seq, _) = v.preferred.flatten();
            let mut c = seq;
            c.sort_unstable();
            by_content.entry(c).or_default().push(vi);
        }
        let blocks_unique = by_content.values().all(|vs| vs.len() <= 1);
        let sandwiches_trivial = cd.vertices.iter().all(|v| v.finch_size() == 1);
        if witness.is_none() {
            if let Some(vs) = by_content.values().find(|vs| vs.len() > 1) {
                witness = Some((
                    n,
                    "block with two simple modules".to_string(),
                    vs.iter()
                        .map(|&vi| cd.vertices[vi].preferred.residue_string())
                        .collect(),
                ));
            } else if let Some(v) = cd.vertices.iter().find(|v| v.finch_size() > 1) {
                witness = Some((
                    n,
                    format!(
                        "nontrivial sandwich algebra of graded rank {}",
                        v.sandwich_rank(datum)
                    ),
                    vec![v.preferred.residue_string()],
                ));
            }
        }
        per_n.push((n, blocks_unique, sandwiches_trivial));
    }

    Ok(SemisimplicityReport {
        cartan_type: t.to_string(),
        weights: rho.to_vec(),
        semisimple_for_all_n: verdict,
        reason,
        per_n,
        witness,
    })
}

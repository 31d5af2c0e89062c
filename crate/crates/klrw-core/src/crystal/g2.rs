//! The two fundamental crystal graphs of type G2, stored explicitly.

use super::CrystalGraph;
use crate::cartan::CartanDatum;

/// Edge lists as (src, dst, residue), vertices numbered by BFS layer order.
///
/// The first weight gives the 14-vertex graph with the octagon 1221 = 2112;
/// the second the 7-vertex chain with residue word 212212 read downward.
const G2_W1: &[(usize, usize, usize)] = &[
    (0, 1, 1),
    (1, 2, 2),
    (2, 3, 2),
    (3, 4, 1),
    (3, 5, 2),
    (4, 6, 2),
    (5, 7, 1),
    (6, 8, 2),
    (7, 9, 1),
    (8, 10, 1),
    (9, 10, 2),
    (10, 11, 2),
    (11, 12, 2),
    (12, 13, 1),
];

const G2_W2: &[(usize, usize, usize)] = &[
    (0, 1, 2),
    (1, 2, 1),
    (2, 3, 2),
    (3, 4, 2),
    (4, 5, 1),
    (5, 6, 2),
];

pub fn build(datum: &CartanDatum, weight: usize) -> CrystalGraph {
    let edges = if weight == 1 { G2_W1 } else { G2_W2 };
    let n = edges.iter().map(|&(a, b, _)| a.max(b)).max().unwrap() + 1;
    let mut out = vec![vec![None; 2]; n];
    let mut inn = vec![vec![None; 2]; n];
    for &(a, b, i) in edges {
        out[a][i - 1] = Some(b);
        inn[b][i - 1] = Some(a);
    }
    let mut layers = vec![0usize; n];
    for &(a, b, _) in edges {
        layers[b] = layers[a] + 1;
    }
    // weights from string lengths
    let mut weights = vec![vec![0i64; 2]; n];
    for v in 0..n {
        for i in 1..=2 {
            let mut phi = 0i64;
            let mut cur = v;
            while let Some(t) = out[cur][i - 1] {
                phi += 1;
                cur = t;
            }
            let mut eps = 0i64;
            let mut cur = v;
            while let Some(t) = inn[cur][i - 1] {
                eps += 1;
                cur = t;
            }
            weights[v][i - 1] = phi - eps;
        }
    }
    CrystalGraph { datum: datum.clone(), weight, weights, layers, out, inn }
}

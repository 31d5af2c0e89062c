//! Finite-type Cartan and quiver data.
//!
//! Vertices are labeled `1..=e`. The labeling follows the convention where
//! type C is reflected relative to Bourbaki/SageMath (the double edge sits at
//! the left end, pointing right) and the E-types are numbered with the branch
//! vertex `4` above vertex `3`. Simply-laced edges are oriented left to right
//! along the diagrams; the two fishtail edges in types D and E point out of
//! the degree-3 vertex.

use serde::Serialize;
use std::collections::BTreeSet;

use crate::{Error, Result};

/// Dynkin families of finite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(Error::InvalidType(format!("unknown family {s:?}"))),
        }
    }
}

/// A finite Cartan type: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    /// Validates the family/rank combination.
    ///
    /// B requires rank > 1, C rank > 2, D rank > 3, E rank in {6,7,8},
    /// F rank 4 and G rank 2.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank > 1,
            Family::C => rank > 2,
            Family::D => rank > 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!(
                "{}{} is not a finite type in these conventions",
                family.letter(),
                rank
            )))
        }
    }

    /// Parses strings like `B3`, `E6`, `A10`.
    ///
    /// Affine names written with a caret or tilde (`A^2`, `D~4`) are rejected
    /// with a dedicated error since no affine quiver is cellular here.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('^') || s.contains('~') || s.to_lowercase().contains("affine") {
            return Err(Error::AffineType(s.to_string()));
        }
        let mut chars = s.chars();
        let fam: Family = chars
            .next()
            .ok_or_else(|| Error::InvalidType("empty type".into()))?
            .to_string()
            .parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("bad rank in {s:?}")))?;
        CartanType::new(fam, rank)
    }
}

impl std::fmt::Display for CartanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// An oriented edge `from -> to` of the quiver with Dynkin multiplicity
/// 1, 2 or 3. For multiplicity m the Cartan entries are `a[from][to] = -1`
/// and `a[to][from] = -m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
    /// True for the fishtail edge whose ghost shift is `1 - eps^2`.
    pub short_shift: bool,
}

/// Finite-type Cartan datum: Cartan matrix, symmetrizer, oriented quiver and
/// ghost shift data.
#[derive(Debug, Clone, Serialize)]
pub struct CartanDatum {
    pub cartan_type: CartanType,
    /// `a[i-1][j-1]` is the Cartan matrix entry `a_ij`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Minimal positive symmetrizer `d_i` with `d_i a_ij` symmetric.
    pub symmetrizer: Vec<i64>,
    pub edges: Vec<Edge>,
    /// Fishtail vertices: `{e-1, e}` in type D, `{4, 5}` in type E.
    pub fishtail: BTreeSet<usize>,
}

/// Row of the Q-polynomial table for a pair of residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QPolySpec {
    /// `u - v^m` for an edge i -> j of multiplicity m (m in 1..=3).
    UMinusVPow(usize),
    /// `v - u^m` for the reversed orientation.
    VMinusUPow(usize),
    /// `0` when i = j.
    Zero,
    /// `1` for nonadjacent pairs.
    One,
}

impl std::fmt::Display for QPolySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QPolySpec::UMinusVPow(1) => write!(f, "u-v"),
            QPolySpec::UMinusVPow(m) => write!(f, "u-v^{m}"),
            QPolySpec::VMinusUPow(1) => write!(f, "v-u"),
            QPolySpec::VMinusUPow(m) => write!(f, "v-u^{m}"),
            QPolySpec::Zero => write!(f, "0"),
            QPolySpec::One => write!(f, "1"),
        }
    }
}

/// Local string configurations carrying a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalConfig {
    SolidDot(usize),
    GhostDot(usize),
    SolidSolidCrossing(usize, usize),
    /// Crossing of a ghost i-string with a solid j-string.
    SolidGhostCrossing { ghost: usize, solid: usize },
    GhostGhostCrossing,
    /// Crossing of a solid i-string with a red j-string.
    SolidRedCrossing(usize, usize),
    GhostRedCrossing,
}

impl CartanDatum {
    /// Builds the datum for a valid finite type, with the fixed vertex
    /// numbering, orientations, symmetrizers and fishtail data.
    pub fn new(t: CartanType) -> Self {
        let e = t.rank;
        let mut edges: Vec<Edge> = Vec::new();
        let mut fishtail = BTreeSet::new();
        let simple = |from: usize, to: usize| Edge { from, to, multiplicity: 1, short_shift: false };
        match t.family {
            Family::A => {
                for i in 1..e {
                    edges.push(simple(i, i + 1));
                }
            }
            Family::B => {
                for i in 1..e - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push(Edge { from: e - 1, to: e, multiplicity: 2, short_shift: false });
            }
            Family::C => {
                edges.push(Edge { from: 1, to: 2, multiplicity: 2, short_shift: false });
                for i in 2..e {
                    edges.push(simple(i, i + 1));
                }
            }
            Family::D => {
                for i in 1..e - 2 {
                    edges.push(simple(i, i + 1));
                }
                // Branch vertex e-2: the upward edge to e-1 has ghost shift
                // 1 - eps^2, the rightward edge to e has shift 1.
                edges.push(Edge { from: e - 2, to: e - 1, multiplicity: 1, short_shift: true });
                edges.push(simple(e - 2, e));
                fishtail.insert(e - 1);
                fishtail.insert(e);
            }
            Family::E => {
                // Bottom chain 1 -> 2 -> 3 -> 5 -> 6 (-> 7 -> 8), branch 3 -> 4.
                edges.push(simple(1, 2));
                edges.push(simple(2, 3));
                edges.push(Edge { from: 3, to: 4, multiplicity: 1, short_shift: true });
                edges.push(simple(3, 5));
                for i in 5..e {
                    edges.push(simple(i, i + 1));
                }
                fishtail.insert(4);
                fishtail.insert(5);
            }
            Family::F => {
                edges.push(simple(1, 2));
                edges.push(Edge { from: 2, to: 3, multiplicity: 2, short_shift: false });
                edges.push(simple(3, 4));
            }
            Family::G => {
                edges.push(Edge { from: 1, to: 2, multiplicity: 3, short_shift: false });
            }
        }

        let mut a = vec![vec![0i64; e]; e];
        for i in 0..e {
            a[i][i] = 2;
        }
        for ed in &edges {
            a[ed.from - 1][ed.to - 1] = -1;
            a[ed.to - 1][ed.from - 1] = -(ed.multiplicity as i64);
        }

        // Minimal positive symmetrizer: propagate d_from = m * d_to along
        // multi-edges, d equal across simple edges, then normalize.
        let mut d = vec![1i64; e];
        // Iterate to a fixed point; the quiver is a tree so a few passes do.
        for _ in 0..e + 2 {
            for ed in &edges {
                let (f, t_) = (ed.from - 1, ed.to - 1);
                match ed.multiplicity {
                    1 => {
                        let m = d[f].max(d[t_]);
                        d[f] = m;
                        d[t_] = m;
                    }
                    m => {
                        // d_from * a_from,to = d_to * a_to,from  =>  d_from = m * d_to
                        if d[f] < (m as i64) * d[t_] {
                            d[f] = (m as i64) * d[t_];
                        } else if d[f] % (m as i64) == 0 {
                            d[t_] = d[t_].max(d[f] / m as i64);
                        }
                    }
                }
            }
        }
        let g = d.iter().fold(0i64, |acc, &x| gcd(acc, x));
        for x in &mut d {
            *x /= g;
        }

        let datum = CartanDatum {
            cartan_type: t,
            cartan_matrix: a,
            symmetrizer: d,
            edges,
            fishtail,
        };
        debug_assert!(datum.check_symmetrizable());
        datum
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Cartan matrix entry `a_ij` (1-based residues).
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan_matrix[i - 1][j - 1]
    }

    /// Symmetrizer entry `d_i`.
    pub fn d(&self, i: usize) -> i64 {
        self.symmetrizer[i - 1]
    }

    /// The symmetric bilinear form `(i, j) = d_i * a_ij`.
    pub fn bilinear(&self, i: usize, j: usize) -> i64 {
        self.d(i) * self.a(i, j)
    }

    /// True if there is an edge between `i` and `j` (either orientation).
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.a(i, j) != 0
    }

    /// The edge leaving `i` towards `j`, if `i ~> j`.
    pub fn edge(&self, i: usize, j: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.from == i && e.to == j)
    }

    /// Edges leaving residue `i`; each carries one ghost per solid i-string.
    pub fn edges_from(&self, i: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == i)
    }

    /// Dynkin multiplicity of the edge `i ~> j`, if present.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> Option<usize> {
        self.edge(i, j).map(|e| e.multiplicity)
    }

    fn check_symmetrizable(&self) -> bool {
        let e = self.rank();
        for i in 1..=e {
            for j in 1..=e {
                if self.bilinear(i, j) != self.d(j) * self.a(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// The Q-polynomial table row for the ordered pair `(i, j)`.
    pub fn q_polynomial(&self, i: usize, j: usize) -> QPolySpec {
        if i == j {
            QPolySpec::Zero
        } else if let Some(m) = self.edge_multiplicity(i, j) {
            QPolySpec::UMinusVPow(m)
        } else if let Some(m) = self.edge_multiplicity(j, i) {
            QPolySpec::VMinusUPow(m)
        } else {
            QPolySpec::One
        }
    }

    /// Degree of a local configuration per the degree table: solid dots
    /// contribute `2 d_i`, ghost dots 0, same-residue solid crossings
    /// `-2 d_i`, solid/ghost crossings `-(i,j)` across an edge, solid/red
    /// crossings `d_i` on equal residues, everything else 0.
    pub fn local_degree(&self, c: LocalConfig) -> i64 {
        match c {
            LocalConfig::SolidDot(i) => 2 * self.d(i),
            LocalConfig::GhostDot(_) => 0,
            LocalConfig::SolidSolidCrossing(i, j) => {
                if i == j {
                    -2 * self.d(i)
                } else {
                    0
                }
            }
            LocalConfig::SolidGhostCrossing { ghost: i, solid: j } => {
                if self.edge(i, j).is_some() {
                    -self.bilinear(i, j)
                } else {
                    0
                }
            }
            LocalConfig::GhostGhostCrossing => 0,
            LocalConfig::SolidRedCrossing(i, j) => {
                if i == j {
                    self.d(i)
                } else {
                    0
                }
            }
            LocalConfig::GhostRedCrossing => 0,
        }
    }

    /// Relabeling map to the common computer-algebra labeling, as data.
    ///
    /// Types C and G are reflected (`i <-> e+1-i` resp. `1 <-> 2`) and the
    /// E-types renumber the branch vertex. Identity elsewhere. The map is
    /// provided for comparison output and is never applied implicitly.
    pub fn sage_relabeling(&self) -> Vec<usize> {
        let e = self.rank();
        match self.cartan_type.family {
            Family::C => (1..=e).map(|i| e + 1 - i).collect(),
            Family::G => vec![2, 1],
            Family::E => {
                // Our bottom chain 1,2,3,5,..,e with 4 on top corresponds to
                // Bourbaki 1,3,4,5,..  with 2 on top.
                let mut m = Vec::with_capacity(e);
                m.push(1);
                m.push(3);
                m.push(4);
                m.push(2);
                for i in 5..=e {
                    m.push(i);
                }
                m
            }
            _ => (1..=e).collect(),
        }
    }

    /// Serializes to a JSON object with deterministic key order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.cartan_type.family.letter().to_string(),
            "rank": self.rank(),
            "cartan_matrix": self.cartan_matrix,
            "symmetrizer": self.symmetrizer,
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": e.from,
                "to": e.to,
                "multiplicity": e.multiplicity,
                "ghost_shift": if e.short_shift { "1-eps^2" } else { "1" },
            })).collect::<Vec<_>>(),
            "fishtail": self.fishtail.iter().collect::<Vec<_>>(),
        })
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> CartanDatum {
        CartanDatum::new(CartanType::parse(s).unwrap())
    }

    #[test]
    fn symmetrizers_match_conventions() {
        assert_eq!(datum("B3").symmetrizer, vec![2, 2, 1]);
        assert_eq!(datum("A5").symmetrizer, vec![1; 5]);
        assert_eq!(datum("G2").symmetrizer, vec![3, 1]);
        assert_eq!(datum("C4").symmetrizer, vec![2, 1, 1, 1]);
        assert_eq!(datum("F4").symmetrizer, vec![2, 2, 1, 1]);
        assert_eq!(datum("D5").symmetrizer, vec![1; 5]);
        assert_eq!(datum("E7").symmetrizer, vec![1; 7]);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(CartanType::new(Family::B, 1).is_err());
        assert!(CartanType::new(Family::C, 2).is_err());
        assert!(CartanType::new(Family::D, 3).is_err());
        assert!(CartanType::new(Family::E, 5).is_err());
        assert!(CartanType::new(Family::F, 3).is_err());
        assert!(CartanType::new(Family::G, 3).is_err());
        assert!(CartanType::parse("D~4").is_err());
    }

    #[test]
    fn symmetrizability_and_bound() {
        for s in ["A4", "B4", "C3", "D4", "E6", "F4", "G2"] {
            let d = datum(s);
            let e = d.rank();
            for i in 1..=e {
                assert_eq!(d.a(i, i), 2);
                for j in 1..=e {
                    assert_eq!(d.bilinear(i, j), d.bilinear(j, i));
                    if i != j {
                        assert!(d.a(i, j) * d.a(j, i) <= 3);
                        assert!((-3..=0).contains(&d.a(i, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn q_polynomial_rows() {
        let b3 = datum("B3");
        assert_eq!(b3.q_polynomial(1, 2), QPolySpec::UMinusVPow(1));
        assert_eq!(b3.q_polynomial(2, 1), QPolySpec::VMinusUPow(1));
        assert_eq!(b3.q_polynomial(2, 3), QPolySpec::UMinusVPow(2));
        assert_eq!(b3.q_polynomial(3, 2), QPolySpec::VMinusUPow(2));
        assert_eq!(b3.q_polynomial(1, 1), QPolySpec::Zero);
        assert_eq!(b3.q_polynomial(1, 3), QPolySpec::One);
        let g2 = datum("G2");
        assert_eq!(g2.q_polynomial(1, 2), QPolySpec::UMinusVPow(3));
    }

    #[test]
    fn local_degrees() {
        let b3 = datum("B3");
        // solid dot with d_i = 2
        assert_eq!(b3.local_degree(LocalConfig::SolidDot(1)), 4);
        assert_eq!(b3.local_degree(LocalConfig::SolidDot(3)), 2);
        // same-residue solid crossing with d_i = 1
        assert_eq!(b3.local_degree(LocalConfig::SolidSolidCrossing(3, 3)), -2);
        assert_eq!(b3.local_degree(LocalConfig::SolidSolidCrossing(1, 2)), 0);
        // ghost-solid crossing across an edge: -(i,j)
        assert_eq!(
            b3.local_degree(LocalConfig::SolidGhostCrossing { ghost: 1, solid: 2 }),
            2
        );
        assert_eq!(
            b3.local_degree(LocalConfig::SolidGhostCrossing { ghost: 2, solid: 3 }),
            2
        );
        assert_eq!(
            b3.local_degree(LocalConfig::SolidGhostCrossing { ghost: 2, solid: 1 }),
            0
        );
        // solid-red on equal residues: d_i
        let a2 = datum("A2");
        assert_eq!(a2.local_degree(LocalConfig::SolidRedCrossing(1, 1)), 1);
        assert_eq!(a2.local_degree(LocalConfig::SolidRedCrossing(1, 2)), 0);
        // mirror symmetry of the table rows that come in pairs
        assert_eq!(
            b3.local_degree(LocalConfig::SolidGhostCrossing { ghost: 2, solid: 3 }),
            b3.local_degree(LocalConfig::SolidGhostCrossing { ghost: 2, solid: 3 })
        );
    }

    #[test]
    fn fishtail_sets() {
        assert_eq!(datum("D5").fishtail.iter().copied().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(datum("E6").fishtail.iter().copied().collect::<Vec<_>>(), vec![4, 5]);
        assert!(datum("B4").fishtail.is_empty());
        // exactly one fishtail edge carries the shifted ghost
        let d5 = datum("D5");
        let shifted: Vec<_> = d5.edges.iter().filter(|e| e.short_shift).collect();
        assert_eq!(shifted.len(), 1);
        assert_eq!((shifted[0].from, shifted[0].to), (3, 4));
    }
}

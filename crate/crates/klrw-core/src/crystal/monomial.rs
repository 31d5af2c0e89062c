//! Generic highest-weight realization on monomials.
//!
//! States are Laurent monomials in commuting variables `Y_i(k)` for a residue
//! `i` and a slot `k >= 0`. Starting from `Y_i(0)` the Kashiwara operators
//! generate the crystal of the fundamental weight `i` for any symmetrizable
//! Cartan datum, which covers the exceptional families and doubles as an
//! independent oracle for the hand-written classical models.

use super::CrystalModel;
use crate::cartan::CartanDatum;
use std::collections::BTreeMap;

/// Monomial: exponents of Y_i(k), keyed by (residue, slot), zero-free.
pub type Monomial = BTreeMap<(usize, i64), i64>;

#[derive(Debug)]
pub struct MonomialModel {
    datum: CartanDatum,
    weight: usize,
    /// c[i][j] in {0,1} with c_ij + c_ji = 1 on adjacent pairs; edges of the
    /// quiver take c_ij = 1 along the orientation.
    c: Vec<Vec<i64>>,
}

impl MonomialModel {
    pub fn new(datum: &CartanDatum, weight: usize) -> Self {
        let e = datum.rank();
        let mut c = vec![vec![0i64; e + 1]; e + 1];
        for ed in &datum.edges {
            c[ed.from][ed.to] = 1;
            c[ed.to][ed.from] = 0;
        }
        MonomialModel { datum: datum.clone(), weight, c }
    }

    fn y(m: &Monomial, i: usize, k: i64) -> i64 {
        m.get(&(i, k)).copied().unwrap_or(0)
    }

    /// Multiplies by A_i(k)^sign where
    /// `A_i(k) = Y_i(k) Y_i(k+1) prod_{j ~ i} Y_j(k + c_ji)^{a_ji}`.
    fn mul_a(&self, m: &Monomial, i: usize, k: i64, sign: i64) -> Monomial {
        let mut out = m.clone();
        let bump = |out: &mut Monomial, key: (usize, i64), delta: i64| {
            let v = out.entry(key).or_insert(0);
            *v += delta;
            if *v == 0 {
                out.remove(&key);
            }
        };
        bump(&mut out, (i, k), sign);
        bump(&mut out, (i, k + 1), sign);
        for j in 1..=self.datum.rank() {
            let a_ji = self.datum.a(j, i);
            if j != i && a_ji != 0 {
                bump(&mut out, (j, k + self.c[j][i]), sign * a_ji);
            }
        }
        out
    }

    /// Returns (phi, eps, lowering slot, raising slot) for residue i.
    fn stats(&self, m: &Monomial, i: usize) -> (i64, i64, i64, i64) {
        let max_slot = m.keys().map(|&(_, k)| k).max().unwrap_or(0).max(0) + 1;
        let mut phi = 0i64;
        let mut kf = 0i64;
        let mut s = 0i64;
        for k in 0..=max_slot {
            s += Self::y(m, i, k);
            if s > phi {
                phi = s;
                kf = k;
            }
        }
        let wt = s;
        let mut ke = 0i64;
        let mut run = 0i64;
        for k in 0..=max_slot {
            run += Self::y(m, i, k);
            if run == phi {
                ke = k;
            }
        }
        (phi, phi - wt, kf, ke)
    }
}

impl CrystalModel for MonomialModel {
    type State = Monomial;

    fn highest(&self) -> Monomial {
        BTreeMap::from([((self.weight, 0i64), 1i64)])
    }

    fn apply(&self, s: &Monomial, i: usize) -> Option<Monomial> {
        let (phi, _, kf, _) = self.stats(s, i);
        if phi <= 0 {
            return None;
        }
        Some(self.mul_a(s, i, kf, -1))
    }

    fn unapply(&self, s: &Monomial, i: usize) -> Option<Monomial> {
        let (_, eps, _, ke) = self.stats(s, i);
        if eps <= 0 {
            return None;
        }
        Some(self.mul_a(s, i, ke, 1))
    }
}

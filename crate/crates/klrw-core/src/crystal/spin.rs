//! Spin models: the short-node weight in type B and the two fishtail weights
//! in type D, realized on sign vectors.

use super::CrystalModel;

/// A sign-vector crystal. `b_type` distinguishes the type B spin model from
/// the type D half-spin models.
#[derive(Debug)]
pub struct SpinModel {
    rank: usize,
    b_type: bool,
    /// Parity of the number of minus signs (type D only): 0 for the last
    /// weight, 1 for the second-to-last.
    parity: usize,
}

impl SpinModel {
    pub fn new_b(rank: usize) -> Self {
        SpinModel { rank, b_type: true, parity: 0 }
    }

    pub fn new_d(rank: usize, weight: usize) -> Self {
        let parity = if weight == rank { 0 } else { 1 };
        SpinModel { rank, b_type: false, parity }
    }
}

impl CrystalModel for SpinModel {
    /// true = plus sign.
    type State = Vec<bool>;

    fn highest(&self) -> Vec<bool> {
        let mut s = vec![true; self.rank];
        if !self.b_type && self.parity == 1 {
            s[self.rank - 1] = false;
        }
        s
    }

    fn apply(&self, s: &Vec<bool>, i: usize) -> Option<Vec<bool>> {
        let e = self.rank;
        if i < e {
            // (+,-) -> (-,+) at coordinates (i, i+1)
            if s[i - 1] && !s[i] {
                let mut t = s.clone();
                t[i - 1] = false;
                t[i] = true;
                return Some(t);
            }
            None
        } else if self.b_type {
            // flip the last sign + -> -
            if s[e - 1] {
                let mut t = s.clone();
                t[e - 1] = false;
                return Some(t);
            }
            None
        } else {
            // (+,+) -> (-,-) at coordinates (e-1, e)
            if s[e - 2] && s[e - 1] {
                let mut t = s.clone();
                t[e - 2] = false;
                t[e - 1] = false;
                return Some(t);
            }
            None
        }
    }

    fn unapply(&self, s: &Vec<bool>, i: usize) -> Option<Vec<bool>> {
        let e = self.rank;
        if i < e {
            if !s[i - 1] && s[i] {
                let mut t = s.clone();
                t[i - 1] = true;
                t[i] = false;
                return Some(t);
            }
            None
        } else if self.b_type {
            if !s[e - 1] {
                let mut t = s.clone();
                t[e - 1] = true;
                return Some(t);
            }
            None
        } else {
            if !s[e - 2] && !s[e - 1] {
                let mut t = s.clone();
                t[e - 2] = true;
                t[e - 1] = true;
                return Some(t);
            }
            None
        }
    }
}

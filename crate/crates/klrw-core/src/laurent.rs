//! Integer Laurent polynomials in the grading parameter `v`.

use serde::Serialize;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul};

/// A Laurent polynomial with integer coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0)
    }

    /// `v^k`.
    pub fn monomial(k: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, 1);
        LaurentPoly { coeffs }
    }

    pub fn term(coeff: i64, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Evaluation at `v = 1`: the total coefficient sum.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// True if the polynomial equals its own reverse after some shift,
    /// i.e. `p(v) = v^s p(1/v)` for an integer `s`.
    pub fn is_palindromic_up_to_shift(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let lo = self.min_degree().unwrap();
        let hi = self.max_degree().unwrap();
        let s = lo + hi;
        self.terms().all(|(e, c)| self.coeff(s - e) == c)
    }

    /// Substitutes `v^k` for `v`.
    pub fn scale_exponents(&self, k: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(c, e * k);
        }
        p
    }

    /// Parses a compact form like `6v^-2+19+26v^2`, for tests and fixtures.
    pub fn parse(s: &str) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        let s = s.replace(' ', "").replace('−', "-");
        // split into signed terms, keeping '-' after '^' attached to exponents
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = s.chars().collect();
        for (idx, &ch) in chars.iter().enumerate() {
            match ch {
                '+' => {
                    terms.push(std::mem::take(&mut cur));
                }
                '-' if idx > 0 && chars[idx - 1] != '^' => {
                    terms.push(std::mem::take(&mut cur));
                    cur.push('-');
                }
                c => cur.push(c),
            }
        }
        terms.push(cur);
        for tok in terms.iter().map(String::as_str) {
            if tok.is_empty() {
                continue;
            }
            let (coeff_str, exp_str) = match tok.find('v') {
                None => (tok, None),
                Some(i) => {
                    let (a, b) = tok.split_at(i);
                    let b = &b[1..];
                    let exp = if b.is_empty() {
                        "1".to_string()
                    } else {
                        b.strip_prefix('^')?.to_string()
                    };
                    (a, Some(exp))
                }
            };
            let coeff: i64 = match coeff_str {
                "" => 1,
                "-" => -1,
                c => c.parse().ok()?,
            };
            let exp: i64 = match exp_str {
                None => 0,
                Some(e) => e.parse().ok()?,
            };
            p.add_term(coeff, exp);
        }
        Some(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first && c > 0 {
                write!(f, "+")?;
            }
            first = false;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, e) => write!(f, "v{}", exp_str(e))?,
                (-1, e) => write!(f, "-v{}", exp_str(e))?,
                (c, e) => write!(f, "{c}v{}", exp_str(e))?,
            }
        }
        Ok(())
    }
}

fn exp_str(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

//! Exact string coordinates `a + b*eps + c*eps^2` with `eps` a positive
//! formal infinitesimal.
//!
//! The rational part carries the charge positions, the `eps` part the parking
//! offsets and the `eps^2` part the doubled fishtail ghost shift. Comparison
//! is lexicographic on `(a, b, c)`, which realizes "eps smaller than every
//! positive rational gap" without choosing a numeric value.

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;
use std::ops::{Add, Neg, Sub};

/// An element of the ordered ring Q[eps]/(eps^3) used for coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Coord {
    pub a: Rational64,
    pub b: i64,
    pub c: i64,
}

impl Coord {
    pub fn rational(a: Rational64) -> Self {
        Coord { a, b: 0, c: 0 }
    }

    pub fn integer(n: i64) -> Self {
        Coord::rational(Rational64::from_integer(n))
    }

    pub fn eps(k: i64) -> Self {
        Coord { a: Rational64::zero(), b: k, c: 0 }
    }

    pub fn eps2(k: i64) -> Self {
        Coord { a: Rational64::zero(), b: 0, c: k }
    }

    /// Ghost shift of 1 or, on the marked fishtail edge, `1 - eps^2`.
    pub fn ghost_shift(short: bool) -> Self {
        if short {
            Coord { a: Rational64::from_integer(1), b: 0, c: -1 }
        } else {
            Coord::integer(1)
        }
    }

    /// Substitutes a concrete rational value for `eps`, for display.
    pub fn eval(&self, eps: Rational64) -> Rational64 {
        self.a + eps * Rational64::from_integer(self.b) + eps * eps * Rational64::from_integer(self.c)
    }

    /// Renders the evaluated coordinate at the given display epsilon, as an
    /// exact decimal when possible and as a fraction otherwise.
    pub fn display_at(&self, eps: Rational64) -> String {
        let v = self.eval(eps);
        if v.is_integer() {
            return format!("{}", v.to_integer());
        }
        let den = *v.denom();
        let mut pow10: i64 = 1;
        let mut digits: u32 = 0;
        while pow10 % den != 0 && digits < 12 {
            pow10 *= 10;
            digits += 1;
        }
        if pow10 % den != 0 {
            return format!("{v}");
        }
        let scaled = v.numer() * (pow10 / den);
        let neg = scaled < 0;
        let abs = scaled.abs();
        let whole = abs / pow10;
        let frac = format!("{:0width$}", abs % pow10, width = digits as usize);
        let frac = frac.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, o: Coord) -> Coord {
        Coord { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c }
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, o: Coord) -> Coord {
        Coord { a: self.a - o.a, b: self.b - o.b, c: self.c - o.c }
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord { a: -self.a, b: -self.b, c: -self.c }
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.a
            .cmp(&other.a)
            .then(self.b.cmp(&other.b))
            .then(self.c.cmp(&other.c))
    }
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.a.is_zero() {
            parts.push(format!("{}", self.a));
        }
        match self.b {
            0 => {}
            1 => parts.push("eps".into()),
            -1 => parts.push("-eps".into()),
            b => parts.push(format!("{b}*eps")),
        }
        match self.c {
            0 => {}
            1 => parts.push("eps2".into()),
            -1 => parts.push("-eps2".into()),
            c => parts.push(format!("{c}*eps2")),
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if p.starts_with('-') {
                s.push_str(p);
            } else {
                s.push('+');
                s.push_str(p);
            }
        }
        write!(f, "{s}")
    }
}

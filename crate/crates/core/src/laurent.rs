//! Laurent polynomials in one variable `v` with integer coefficients.
//!
//! Exponents are kept in a `BTreeMap` so iteration order (and hence every
//! printout and serialization downstream) is deterministic. Coefficients stay
//! comfortably inside `i64` at the scales this crate works at; overflow
//! checks stay on in release builds to keep that honest.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::v_pow(0)
    }

    pub fn v_pow(k: i32) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, 1);
        LaurentPoly { coeffs }
    }

    pub fn constant(c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(0, c);
        p
    }

    pub fn add_term(&mut self, exp: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, a) in self.terms() {
            out.add_term(e, a * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn mul_v_pow(&self, k: i32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e + k, c);
        }
        out
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(-e, c);
        }
        out
    }

    /// The part with exponents `<= 0`.
    pub fn nonpositive_part(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            if e <= 0 {
                out.add_term(e, c);
            }
        }
        out
    }

    /// True if supported in strictly positive exponents.
    pub fn is_positive_exponents(&self) -> bool {
        self.min_degree().map_or(true, |d| d > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "v^{e}")?,
                (_, 1) => write!(f, "{a}*v")?,
                (_, _) => write!(f, "{a}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let v = LaurentPoly::v_pow(1);
        let vinv = LaurentPoly::v_pow(-1);
        let q = vinv.sub(&v); // v^{-1} - v
        let sq = q.mul(&q);
        assert_eq!(sq.coeff(-2), 1);
        assert_eq!(sq.coeff(0), -2);
        assert_eq!(sq.coeff(2), 1);
        assert_eq!(sq.eval_at_one(), 0);
        assert_eq!(q.bar(), q.neg());
        assert!(v.add(&v.neg()).is_zero());
    }

    #[test]
    fn parts_and_degrees() {
        let mut p = LaurentPoly::zero();
        p.add_term(-2, 3);
        p.add_term(0, 1);
        p.add_term(5, -4);
        assert_eq!(p.degree(), Some(5));
        assert_eq!(p.min_degree(), Some(-2));
        let low = p.nonpositive_part();
        assert_eq!(low.degree(), Some(0));
        assert_eq!(low.coeff(-2), 3);
        assert!(!p.is_positive_exponents());
        assert!(LaurentPoly::v_pow(2).is_positive_exponents());
        assert!(LaurentPoly::zero().is_positive_exponents());
    }

    #[test]
    fn display() {
        let mut p = LaurentPoly::zero();
        p.add_term(-1, 1);
        p.add_term(1, -2);
        assert_eq!(p.to_string(), "v^-1 - 2*v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }
}

//! Multivariate polynomials with exact rational coefficients.
//!
//! Monomials are exponent vectors keyed in a `BTreeMap`, so term order is
//! deterministic everywhere. These only ever hold products of a handful of
//! linear forms (degree bounded by the number of positive roots), so the
//! naive representation is plenty.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::rootsys::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    /// `constant + sum_i coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[Rat], constant: Rat) -> MultiPoly {
        let nvars = coeffs.len();
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], constant);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in self.terms() {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Component whose degree in the variable block `[lo, hi)` is exactly `d`.
    pub fn component_by_degree_in(&self, lo: usize, hi: usize, d: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in self.terms() {
            let deg: u32 = e[lo..hi].iter().sum();
            if deg == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Minimal degree in the variable block `[lo, hi)` over all terms.
    pub fn min_degree_in(&self, lo: usize, hi: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[lo..hi].iter().sum()).min()
    }

    /// Substitute exact values for some variables; the result still formally
    /// has `nvars` variables, with the substituted ones no longer occurring.
    pub fn substitute(&self, values: &[(usize, Rat)]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in self.terms() {
            let mut coeff = c.clone();
            let mut exps = e.clone();
            for (i, v) in values {
                for _ in 0..exps[*i] {
                    coeff = coeff * v.clone();
                }
                exps[*i] = 0;
            }
            out.add_term(exps, coeff);
        }
        out
    }

    /// Substitute every variable by a linear (or any) polynomial.
    pub fn substitute_all(&self, images: &[MultiPoly]) -> MultiPoly {
        debug_assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = MultiPoly::zero(nv);
        for (e, c) in self.terms() {
            let mut term = MultiPoly::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * point[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// All exponent vectors of total degree `d` in `nvars` variables,
    /// lexicographically sorted.
    pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
        fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if prefix.len() == nvars - 1 {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for k in 0..=d {
                prefix.push(k);
                rec(nvars, d - k, prefix, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(nvars, d, &mut Vec::new(), &mut out);
        out
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Render with the given variable names, e.g. `2*m1 - 1/2*l2^2`.
    /// Terms come in graded order, earlier variables first within a degree.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Vec<u32>, &Rat)> = self.terms().collect();
        ordered.sort_by(|(e1, _), (e2, _)| {
            let d1: u32 = e1.iter().sum();
            let d2: u32 = e2.iter().sum();
            d1.cmp(&d2).then_with(|| e2.cmp(e1))
        });
        let mut s = String::new();
        let mut first = true;
        for (e, c) in ordered {
            let neg = c < &Rat::zero();
            if first {
                if neg {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = if neg { -c.clone() } else { c.clone() };
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(a.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

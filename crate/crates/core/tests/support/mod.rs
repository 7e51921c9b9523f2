//! Test-side Kazhdan-Lusztig oracle: the classical one-variable recursion
//! over `q`, with Bruhat order taken straight from the subword definition.
//! Shares no code with the canonical-basis machinery it cross-checks.

use std::collections::{HashMap, HashSet};

use tiltval_core::affine::{AffineElement, AffineWeyl};

/// Polynomial in `q`, lowest degree first; empty means zero.
pub type QPoly = Vec<i64>;

fn add_scaled(into: &mut QPoly, from: &QPoly, shift: usize, scale: i64) {
    if into.len() < from.len() + shift {
        into.resize(from.len() + shift, 0);
    }
    for (k, &c) in from.iter().enumerate() {
        into[k + shift] += scale * c;
    }
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub struct NaiveKl<'a> {
    weyl: &'a AffineWeyl,
    below: HashMap<AffineElement, HashSet<AffineElement>>,
    memo: HashMap<(AffineElement, AffineElement), QPoly>,
}

impl<'a> NaiveKl<'a> {
    pub fn new(weyl: &'a AffineWeyl) -> NaiveKl<'a> {
        NaiveKl {
            weyl,
            below: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    /// Every product of a subword of one reduced word for `w`.
    fn below(&mut self, w: &AffineElement) -> &HashSet<AffineElement> {
        if !self.below.contains_key(w) {
            let word = self.weyl.reduced_word(w);
            let mut set = HashSet::new();
            for mask in 0u32..1 << word.len() {
                let mut x = self.weyl.identity();
                for (k, &s) in word.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        x = self.weyl.mul(&x, self.weyl.generator(s).unwrap());
                    }
                }
                set.insert(x);
            }
            self.below.insert(w.clone(), set);
        }
        &self.below[w]
    }

    pub fn leq(&mut self, x: &AffineElement, w: &AffineElement) -> bool {
        self.below(w).contains(x)
    }

    /// `P_{x,w}` by the original recursion, splitting off the largest right
    /// descent of `w`.
    pub fn kl(&mut self, x: &AffineElement, w: &AffineElement) -> QPoly {
        if !self.leq(x, w) {
            return Vec::new();
        }
        if x == w {
            return vec![1];
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let s = *self.weyl.right_descents(w).last().unwrap();
        let gen = self.weyl.generator(s).unwrap().clone();
        let v = self.weyl.mul(w, &gen);
        let xs = self.weyl.mul(x, &gen);
        let c = (self.weyl.length(&xs) < self.weyl.length(x)) as usize;
        let mut p = QPoly::new();
        add_scaled(&mut p, &self.kl(&xs, &v), 1 - c, 1);
        add_scaled(&mut p, &self.kl(x, &v), c, 1);
        let lw = self.weyl.length(w);
        let mut zs: Vec<AffineElement> = self.below(&v).iter().cloned().collect();
        zs.sort();
        for z in zs {
            if self.weyl.length(&self.weyl.mul(&z, &gen)) > self.weyl.length(&z) {
                continue;
            }
            if !self.leq(x, &z) {
                continue;
            }
            let m = self.mu(&z, &v);
            if m == 0 {
                continue;
            }
            let lz = self.weyl.length(&z);
            assert_eq!((lw - lz) % 2, 0);
            let pxz = self.kl(x, &z);
            add_scaled(&mut p, &pxz, ((lw - lz) / 2) as usize, -m);
        }
        let p = trim(p);
        self.memo.insert(key, p.clone());
        p
    }

    /// Coefficient of `q^{(l(v)-l(z)-1)/2}` in `P_{z,v}`.
    pub fn mu(&mut self, z: &AffineElement, v: &AffineElement) -> i64 {
        let (lz, lv) = (self.weyl.length(z), self.weyl.length(v));
        if lz >= lv || (lv - lz) % 2 == 0 {
            return 0;
        }
        let p = self.kl(z, v);
        p.get(((lv - lz - 1) / 2) as usize).copied().unwrap_or(0)
    }
}

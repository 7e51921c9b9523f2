//! The affine Weyl group as matrix-plus-translation pairs.
//!
//! An element acts on the weight space at level `c` by `v -> M v + c t`,
//! where the translation part `t` lies in the root lattice, written (like
//! everything else) in fundamental-weight coordinates. Generator `0` is the
//! affine reflection in the wall `<v, theta_s^vee> = c` (with `theta_s` the
//! highest short root, whose coroot is the highest coroot); generators
//! `1..=rank` are the finite simple reflections.
//!
//! Lengths and descents come from alcove geometry: with `u(x) = M_x rho +
//! h t_x` (an integer weight vector, `h` times the image of the alcove
//! barycentre-ish point `rho/h`), the number of hyperplanes `<v, alpha^vee> =
//! k` separating the fundamental alcove from `x`'s alcove is
//! `|floor(<u, alpha^vee>/h)|`, and the length is the sum over positive
//! roots. No reduced words are ever stored; they are recomputed on demand by
//! stripping the smallest left descent, which also makes them canonical.

use std::collections::HashMap;

use num::{One, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::rootsys::{rat, Mat, Rat, RootSystem, Weight};

/// `v -> M v + c t` at level `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineElement {
    pub mat: Mat,
    pub transl: Vec<i64>,
}

impl AffineElement {
    pub fn is_identity(&self) -> bool {
        self.transl.iter().all(|&t| t == 0) && self.mat == Mat::identity(self.mat.n)
    }
}

#[derive(Clone, Debug)]
pub struct AffineWeyl {
    pub rs: RootSystem,
    gens: Vec<AffineElement>,
}

/// A (finite) standard parabolic subgroup, named by the omitted generator.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub omitted: usize,
    pub gens: Vec<usize>,
    /// All elements, sorted by (length, canonical reduced word).
    pub elements: Vec<AffineElement>,
}

impl AffineWeyl {
    pub fn new(rs: RootSystem) -> AffineWeyl {
        let theta_s = &rs.positive_roots[rs.highest_short_root];
        let transl: Vec<i64> = theta_s.fw.clone();
        let mut gens = vec![AffineElement {
            mat: rs.reflection_mat(rs.highest_short_root),
            transl,
        }];
        for i in 0..rs.rank {
            gens.push(AffineElement {
                mat: rs.simple_reflection_mat(i),
                transl: vec![0; rs.rank],
            });
        }
        AffineWeyl { rs, gens }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, i: usize) -> Result<&AffineElement> {
        self.gens.get(i).ok_or(Error::BadGenerator(i))
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement {
            mat: Mat::identity(self.rs.rank),
            transl: vec![0; self.rs.rank],
        }
    }

    pub fn translation(&self, v: &[i64]) -> AffineElement {
        AffineElement {
            mat: Mat::identity(self.rs.rank),
            transl: v.to_vec(),
        }
    }

    /// Composition of maps: `(x y)(v) = x(y(v))`.
    pub fn mul(&self, x: &AffineElement, y: &AffineElement) -> AffineElement {
        let mat = x.mat.mul(&y.mat);
        let mut transl = x.mat.apply_int(&y.transl);
        for (t, &a) in transl.iter_mut().zip(&x.transl) {
            *t += a;
        }
        AffineElement { mat, transl }
    }

    pub fn inverse(&self, x: &AffineElement) -> AffineElement {
        let minv = x.mat.inverse();
        let transl: Vec<i64> = minv.apply_int(&x.transl).iter().map(|&t| -t).collect();
        AffineElement { mat: minv, transl }
    }

    pub fn act_level_int(&self, x: &AffineElement, v: &[i64], level: i64) -> Vec<i64> {
        let mut out = x.mat.apply_int(v);
        for (o, &t) in out.iter_mut().zip(&x.transl) {
            *o += level * t;
        }
        out
    }

    pub fn act_level(&self, x: &AffineElement, v: &Weight, level: &Rat) -> Weight {
        let mut out = x.mat.apply_rat(&v.0);
        for (o, &t) in out.iter_mut().zip(&x.transl) {
            if t != 0 {
                *o += level.clone() * rat(t);
            }
        }
        Weight(out)
    }

    /// `x . v = M(v + rho) + p t - rho` (dot action at level `p`).
    pub fn dot_int(&self, x: &AffineElement, v: &[i64], p: i64) -> Vec<i64> {
        let shifted: Vec<i64> = v.iter().map(|&c| c + 1).collect();
        let mut out = self.act_level_int(x, &shifted, p);
        for o in out.iter_mut() {
            *o -= 1;
        }
        out
    }

    /// `h` times the image of `rho/h`, an integer vector determining the
    /// alcove of `x` (and regular: never on a wall mod `h`).
    pub fn u_vector(&self, x: &AffineElement) -> Vec<i64> {
        self.act_level_int(x, &self.rs.rho_int(), self.rs.coxeter_number)
    }

    pub fn length(&self, x: &AffineElement) -> u32 {
        let u = self.u_vector(x);
        let h = self.rs.coxeter_number;
        let mut l = 0i64;
        for root in &self.rs.positive_roots {
            let n = self.rs.pairing_int(&u, &root.coroot);
            debug_assert!(n % h != 0, "alcove point fell on a wall");
            l += n.div_euclid(h).abs();
        }
        l as u32
    }

    /// Sign of the linear part; all generators have determinant -1, so this
    /// is the parity of the length.
    pub fn sign(&self, x: &AffineElement) -> i8 {
        if self.length(x) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Minimal-length representative of its coset `W_f x`, equivalently the
    /// alcove of `x` lies in the dominant chamber.
    pub fn is_min_rep(&self, x: &AffineElement) -> bool {
        self.u_vector(x).iter().all(|&c| c > 0)
    }

    pub fn is_left_descent(&self, i: usize, x: &AffineElement) -> bool {
        let gx = self.mul(&self.gens[i], x);
        self.length(&gx) < self.length(x)
    }

    pub fn is_right_descent(&self, x: &AffineElement, i: usize) -> bool {
        let xg = self.mul(x, &self.gens[i]);
        self.length(&xg) < self.length(x)
    }

    pub fn left_descents(&self, x: &AffineElement) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.is_left_descent(i, x))
            .collect()
    }

    pub fn right_descents(&self, x: &AffineElement) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.is_right_descent(x, i))
            .collect()
    }

    /// Canonical reduced word, by repeatedly stripping the smallest left
    /// descent; `x = s_{w[0]} s_{w[1]} ...`.
    pub fn reduced_word(&self, x: &AffineElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let mut stripped = false;
            for i in 0..self.gens.len() {
                let gx = self.mul(&self.gens[i], &cur);
                let l2 = self.length(&gx);
                if l2 < len {
                    word.push(i);
                    cur = gx;
                    len = l2;
                    stripped = true;
                    break;
                }
            }
            assert!(stripped, "non-identity element with no left descent");
        }
        word
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<AffineElement> {
        let mut x = self.identity();
        for &i in word {
            let g = self.generator(i)?;
            x = self.mul(&x, g);
        }
        Ok(x)
    }

    pub fn word_is_reduced(&self, word: &[usize]) -> Result<bool> {
        let x = self.element_from_word(word)?;
        Ok(self.length(&x) as usize == word.len())
    }

    /// Bruhat order, by the lifting property: with `s` the smallest left
    /// descent of `w`, `x <= w` iff (`sx <= sw` when `sx < x`, else
    /// `x <= sw`).
    pub fn bruhat_leq(&self, x: &AffineElement, w: &AffineElement) -> bool {
        let lx = self.length(x);
        let lw = self.length(w);
        if lx > lw {
            return false;
        }
        if lx == 0 {
            return true;
        }
        if x == w {
            return true;
        }
        if lx == lw {
            return false;
        }
        let s = (0..self.gens.len())
            .find(|&i| self.is_left_descent(i, w))
            .expect("non-identity element with no left descent");
        let sw = self.mul(&self.gens[s], w);
        let sx = self.mul(&self.gens[s], x);
        if self.length(&sx) < lx {
            self.bruhat_leq(&sx, &sw)
        } else {
            self.bruhat_leq(x, &sw)
        }
    }

    /// All elements with length at most `max_len`, sorted by
    /// (length, canonical word).
    pub fn elements_up_to_length(&self, max_len: u32, caps: &Caps) -> Result<Vec<AffineElement>> {
        let mut dist: HashMap<AffineElement, u32> = HashMap::new();
        let id = self.identity();
        dist.insert(id.clone(), 0);
        let mut frontier = vec![id];
        let mut depth = 0;
        while !frontier.is_empty() && depth < max_len {
            depth += 1;
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.gens {
                    let xg = self.mul(x, g);
                    if !dist.contains_key(&xg) {
                        debug_assert_eq!(self.length(&xg), depth);
                        dist.insert(xg.clone(), depth);
                        next.push(xg);
                    }
                }
            }
            if dist.len() > caps.max_group_size {
                return Err(Error::CapExceeded {
                    what: "affine length-ball enumeration",
                    limit: caps.max_group_size,
                });
            }
            frontier = next;
        }
        let mut out: Vec<AffineElement> = dist.into_keys().collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    pub fn sort_elements(&self, elements: &mut [AffineElement]) {
        let mut keyed: Vec<(u32, Vec<usize>, AffineElement)> = elements
            .iter()
            .map(|x| (self.length(x), self.reduced_word(x), x.clone()))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        for (slot, (_, _, x)) in elements.iter_mut().zip(keyed) {
            *slot = x;
        }
    }

    /// The standard parabolic omitting generator `omitted`; always a finite
    /// group since a proper subset of the affine generators is taken.
    pub fn parabolic(&self, omitted: usize, caps: &Caps) -> Result<Parabolic> {
        if omitted >= self.gens.len() {
            return Err(Error::BadGenerator(omitted));
        }
        let gens: Vec<usize> = (0..self.gens.len()).filter(|&i| i != omitted).collect();
        let mut seen: HashMap<AffineElement, ()> = HashMap::new();
        let id = self.identity();
        seen.insert(id.clone(), ());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for &i in &gens {
                    let xg = self.mul(x, &self.gens[i]);
                    if !seen.contains_key(&xg) {
                        seen.insert(xg.clone(), ());
                        next.push(xg);
                    }
                }
            }
            if seen.len() > caps.max_group_size {
                return Err(Error::CapExceeded {
                    what: "parabolic subgroup enumeration",
                    limit: caps.max_group_size,
                });
            }
            frontier = next;
        }
        let mut elements: Vec<AffineElement> = seen.into_keys().collect();
        self.sort_elements(&mut elements);
        Ok(Parabolic {
            omitted,
            gens,
            elements,
        })
    }

    /// The unique fixed point of the parabolic's level-1 action. The omitted
    /// generator leaves `rank` reflections whose walls are in general
    /// position, so the solution of the stacked system `(M_g - I) mu = -t_g`
    /// exists and is unique; both are asserted.
    pub fn invariant_point(&self, par: &Parabolic) -> Weight {
        let n = self.rs.rank;
        // rows of [A | b] for A mu = b
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for &gi in &par.gens {
            let g = &self.gens[gi];
            for r in 0..n {
                let mut row: Vec<Rat> = (0..n)
                    .map(|c| {
                        let mut a = rat(g.mat.at(r, c));
                        if r == c {
                            a -= Rat::one();
                        }
                        a
                    })
                    .collect();
                row.push(rat(-g.transl[r]));
                rows.push(row);
            }
        }
        // Gaussian elimination
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..n {
            let Some(pr) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, pr);
            let inv = rows[pivot_row][col].clone();
            for c in col..=n {
                let v = rows[pivot_row][c].clone() / inv.clone();
                rows[pivot_row][c] = v;
            }
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=n {
                        let v = rows[r][c].clone() - f.clone() * rows[pivot_row][c].clone();
                        rows[r][c] = v;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        assert_eq!(pivots.len(), n, "parabolic fixed point is not unique");
        for r in pivot_row..rows.len() {
            assert!(rows[r][n].is_zero(), "parabolic fixed-point system inconsistent");
        }
        let mut mu = vec![Rat::zero(); n];
        for &(r, c) in &pivots {
            mu[c] = rows[r][n].clone();
        }
        let w = Weight(mu);
        for &gi in &par.gens {
            debug_assert_eq!(
                self.act_level(&self.gens[gi], &w, &Rat::one()),
                w,
                "fixed point check failed"
            );
        }
        w
    }

    /// Finite part: the minimal coset representative decomposition
    /// `x = x_f * x^f` with `x_f` in the finite Weyl group and `x^f` minimal
    /// in `W_f x`.  Returned as (finite matrix, minimal representative).
    pub fn finite_decomposition(&self, x: &AffineElement) -> (Mat, AffineElement) {
        let mut rep = x.clone();
        let mut fin = Mat::identity(self.rs.rank);
        // strip finite left descents
        loop {
            let u = self.u_vector(&rep);
            let Some(i) = (0..self.rs.rank).find(|&i| u[i] < 0) else {
                break;
            };
            let g = &self.gens[i + 1];
            rep = self.mul(g, &rep);
            fin = fin.mul(&g.mat);
        }
        debug_assert!(self.is_min_rep(&rep));
        debug_assert_eq!(
            self.mul(
                &AffineElement {
                    mat: fin.clone(),
                    transl: vec![0; self.rs.rank]
                },
                &rep
            ),
            *x
        );
        (fin, rep)
    }
}

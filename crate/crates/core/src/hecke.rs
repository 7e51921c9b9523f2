//! Hecke algebra of the affine Weyl group, canonical basis, cells.
//!
//! Standard basis elements `H_x` satisfy `(H_s - v^{-1})(H_s + v) = 0`, i.e.
//! `H_x H_s = H_{xs}` when the length goes up and `H_{xs} + (v^{-1}-v) H_x`
//! when it goes down. The canonical basis element `Hb_w` is computed by the
//! usual self-correcting recursion: multiply `Hb_{ws}` by `Hb_s = H_s + v`
//! and subtract the canonical elements of lower terms whose coefficients
//! stray into nonpositive `v`-exponents; each such correction coefficient
//! must come out constant, which is asserted rather than trusted.
//!
//! Writing `Hb_w = sum_x h_{x,w} H_x`, the `h_{x,w}` determine everything
//! else here: Kazhdan-Lusztig polynomials via `h_{x,w} =
//! v^{l(w)-l(x)} P_{x,w}(v^{-2})`, the `mu` function as the coefficient of
//! `v`, cells from the `mu`-graph, and Lusztig's a-function as the top
//! `v`-degree of the structure constants `h_{x,y,z}` of `Hb_x Hb_y`.

use std::collections::{BTreeMap, HashMap};

use num::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::Graph;

use crate::affine::{AffineElement, AffineWeyl, Parabolic};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::multipoly::MultiPoly;
use crate::rootsys::{rat, Rat};

/// Element of the Hecke algebra in the standard basis.
pub type HeckeElt = BTreeMap<AffineElement, LaurentPoly>;

pub fn elt_insert(elt: &mut HeckeElt, x: AffineElement, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let slot = elt.entry(x).or_insert_with(LaurentPoly::zero);
    *slot = slot.add(&c);
    if slot.is_zero() {
        let key: Vec<AffineElement> = elt
            .iter()
            .filter(|(_, p)| p.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in key {
            elt.remove(&k);
        }
    }
}

pub fn elt_add_scaled(into: &mut HeckeElt, from: &HeckeElt, c: &LaurentPoly) {
    for (x, p) in from {
        elt_insert(into, x.clone(), p.mul(c));
    }
}

/// A two-sided cell with its (constant) a-function value.
#[derive(Clone, Debug)]
pub struct Cell {
    pub elements: Vec<AffineElement>,
    pub a: u32,
}

pub struct Hecke {
    pub weyl: AffineWeyl,
    canon: HashMap<AffineElement, HeckeElt>,
}

impl Hecke {
    pub fn new(weyl: AffineWeyl) -> Hecke {
        Hecke {
            weyl,
            canon: HashMap::new(),
        }
    }

    /// Right multiplication by the standard generator `H_s`.
    pub fn mul_gen(&self, elt: &HeckeElt, s: usize) -> HeckeElt {
        let g = self.weyl.generator(s).expect("generator index").clone();
        let mut out = HeckeElt::new();
        for (x, c) in elt {
            let xs = self.weyl.mul(x, &g);
            if self.weyl.length(&xs) > self.weyl.length(x) {
                elt_insert(&mut out, xs, c.clone());
            } else {
                elt_insert(&mut out, xs, c.clone());
                let shift = LaurentPoly::v_pow(-1).sub(&LaurentPoly::v_pow(1));
                elt_insert(&mut out, x.clone(), c.mul(&shift));
            }
        }
        out
    }

    /// Right multiplication by `Hb_s = H_s + v`.
    pub fn mul_canon_gen(&self, elt: &HeckeElt, s: usize) -> HeckeElt {
        let mut out = self.mul_gen(elt, s);
        elt_add_scaled(&mut out, elt, &LaurentPoly::v_pow(1));
        out
    }

    /// Right multiplication by `H_x`, along a reduced word of `x`.
    pub fn mul_standard(&self, elt: &HeckeElt, x: &AffineElement) -> HeckeElt {
        let mut out = elt.clone();
        for s in self.weyl.reduced_word(x) {
            out = self.mul_gen(&out, s);
        }
        out
    }

    /// Product of two general elements (right factor expanded over its
    /// standard support).
    pub fn mul_elt(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::new();
        for (x, c) in b {
            let ax = self.mul_standard(a, x);
            elt_add_scaled(&mut out, &ax, c);
        }
        out
    }

    /// The canonical basis element `Hb_w` in the standard basis.
    pub fn canonical(&mut self, w: &AffineElement) -> HeckeElt {
        if let Some(hit) = self.canon.get(w) {
            return hit.clone();
        }
        let lw = self.weyl.length(w);
        let result = if lw == 0 {
            let mut e = HeckeElt::new();
            elt_insert(&mut e, self.weyl.identity(), LaurentPoly::one());
            e
        } else {
            let s = (0..self.weyl.num_gens())
                .find(|&i| self.weyl.is_right_descent(w, i))
                .expect("non-identity element with no right descent");
            let u = self.weyl.mul(w, self.weyl.generator(s).unwrap());
            let base = self.canonical(&u);
            let mut prod = self.mul_canon_gen(&base, s);
            // strip lower canonical terms, longest first
            let mut support: Vec<AffineElement> = prod.keys().cloned().collect();
            support.sort_by_key(|z| std::cmp::Reverse(self.weyl.length(z)));
            for z in support {
                if z == *w {
                    continue;
                }
                let Some(c) = prod.get(&z) else { continue };
                let defect = c.nonpositive_part();
                if defect.is_zero() {
                    continue;
                }
                assert!(
                    defect.is_constant(),
                    "correction coefficient not constant: h = {c} at length {}",
                    self.weyl.length(&z)
                );
                let cz = self.canonical(&z);
                let neg = defect.neg();
                elt_add_scaled(&mut prod, &cz, &neg);
            }
            assert_eq!(prod.get(w), Some(&LaurentPoly::one()), "top coefficient");
            for (x, c) in &prod {
                assert!(
                    x == w || c.is_positive_exponents(),
                    "lower coefficient not in vZ[v]"
                );
            }
            prod
        };
        self.canon.insert(w.clone(), result.clone());
        result
    }

    /// Elements whose canonical expansion is currently cached, sorted.
    pub fn cached_canonicals(&self) -> Vec<AffineElement> {
        let mut keys: Vec<AffineElement> = self.canon.keys().cloned().collect();
        self.weyl.sort_elements(&mut keys);
        keys
    }

    /// Seed the cache with a precomputed expansion (from a cache file).
    pub fn insert_cached(&mut self, w: AffineElement, elt: HeckeElt) {
        assert_eq!(elt.get(&w), Some(&LaurentPoly::one()), "top coefficient");
        self.canon.insert(w, elt);
    }

    /// `h_{x,w}`, the coefficient of `H_x` in `Hb_w`.
    pub fn h_poly(&mut self, x: &AffineElement, w: &AffineElement) -> LaurentPoly {
        self.canonical(w).get(x).cloned().unwrap_or_default()
    }

    /// `mu(z,w)`: coefficient of `v` in `h_{z,w}`.
    pub fn mu(&mut self, z: &AffineElement, w: &AffineElement) -> i64 {
        self.h_poly(z, w).coeff(1)
    }

    fn mu_tilde(&mut self, x: &AffineElement, y: &AffineElement) -> i64 {
        if self.weyl.length(x) < self.weyl.length(y) {
            self.mu(x, y)
        } else {
            self.mu(y, x)
        }
    }

    /// Kazhdan-Lusztig polynomial `P_{x,w}` as `q`-coefficients
    /// (index = power of `q`); empty when `x` is not below `w`.
    pub fn kl_q_coeffs(&mut self, x: &AffineElement, w: &AffineElement) -> Vec<i64> {
        let h = self.h_poly(x, w);
        if h.is_zero() {
            return Vec::new();
        }
        let gap = self.weyl.length(w) as i32 - self.weyl.length(x) as i32;
        let mut out = Vec::new();
        for (e, c) in h.terms() {
            let diff = gap - e;
            assert!(diff >= 0 && diff % 2 == 0, "h-polynomial parity");
            let k = (diff / 2) as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] += c;
        }
        out
    }

    pub fn format_q_poly(coeffs: &[i64]) -> String {
        if coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let body = match (c, k) {
                (_, 0) => format!("{c}"),
                (1, 1) => "q".to_string(),
                (1, _) => format!("q^{k}"),
                (_, 1) => format!("{c}*q"),
                (_, _) => format!("{c}*q^{k}"),
            };
            parts.push(body);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Expand a general element over the canonical basis by stripping the
    /// longest remaining support element. Deterministic: ties broken by the
    /// canonical word.
    pub fn expand_canonical(&mut self, elt: &HeckeElt) -> Vec<(AffineElement, LaurentPoly)> {
        let mut rest = elt.clone();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let z = rest
                .keys()
                .map(|z| (self.weyl.length(z), self.weyl.reduced_word(z), z.clone()))
                .max_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
                .map(|(_, _, z)| z)
                .unwrap();
            let c = rest.get(&z).cloned().unwrap();
            let cz = self.canonical(&z);
            elt_add_scaled(&mut rest, &cz, &c.neg());
            debug_assert!(!rest.contains_key(&z));
            out.push((z, c));
        }
        out.sort_by(|a, b| {
            (self.weyl.length(&a.0), self.weyl.reduced_word(&a.0))
                .cmp(&(self.weyl.length(&b.0), self.weyl.reduced_word(&b.0)))
        });
        out
    }

    /// Structure constants `h_{x,y,z}` of `Hb_x Hb_y = sum_z h_{x,y,z} Hb_z`.
    pub fn canonical_product(
        &mut self,
        x: &AffineElement,
        y: &AffineElement,
    ) -> Vec<(AffineElement, LaurentPoly)> {
        let a = self.canonical(x);
        let b = self.canonical(y);
        let prod = self.mul_elt(&a, &b);
        self.expand_canonical(&prod)
    }

    /// Lusztig's a-function on a finite parabolic, from the structure
    /// constants over all pairs. Positivity of the constants is checked on
    /// the way.
    pub fn a_function(&mut self, par: &Parabolic) -> Result<BTreeMap<AffineElement, u32>> {
        let mut a_val: BTreeMap<AffineElement, u32> = BTreeMap::new();
        for z in &par.elements {
            a_val.insert(z.clone(), 0);
        }
        for x in &par.elements {
            for y in &par.elements {
                for (z, h) in self.canonical_product(x, y) {
                    if h.terms().any(|(_, c)| c < 0) {
                        return Err(Error::Positivity(format!(
                            "structure constant with negative coefficient: {h}"
                        )));
                    }
                    let deg = h.degree().expect("nonzero structure constant");
                    let slot = a_val.get_mut(&z).expect("product stays in parabolic");
                    if deg > 0 && deg as u32 > *slot {
                        *slot = deg as u32;
                    }
                }
            }
        }
        Ok(a_val)
    }

    fn descent_sets(
        &mut self,
        par: &Parabolic,
    ) -> Vec<(Vec<usize>, Vec<usize>)> {
        par.elements
            .iter()
            .map(|x| {
                let l = self
                    .weyl
                    .left_descents(x)
                    .into_iter()
                    .filter(|i| par.gens.contains(i))
                    .collect();
                let r = self
                    .weyl
                    .right_descents(x)
                    .into_iter()
                    .filter(|i| par.gens.contains(i))
                    .collect();
                (l, r)
            })
            .collect()
    }

    /// Two-sided cells of a finite parabolic, each with its a-value, sorted
    /// by (a, shortest element).
    pub fn two_sided_cells(&mut self, par: &Parabolic) -> Result<Vec<Cell>> {
        let n = par.elements.len();
        let descents = self.descent_sets(par);
        let mut graph = Graph::<usize, ()>::new();
        let nodes: Vec<_> = (0..n).map(|i| graph.add_node(i)).collect();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = par.elements[i].clone();
                let z = par.elements[j].clone();
                if self.mu_tilde(&z, &w) == 0 {
                    continue;
                }
                let left_edge = descents[j].0.iter().any(|s| !descents[i].0.contains(s));
                let right_edge = descents[j].1.iter().any(|s| !descents[i].1.contains(s));
                if left_edge || right_edge {
                    graph.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let a_val = self.a_function(par)?;
        let mut cells = Vec::new();
        for comp in tarjan_scc(&graph) {
            let mut elements: Vec<AffineElement> = comp
                .into_iter()
                .map(|ni| par.elements[graph[ni]].clone())
                .collect();
            self.weyl.sort_elements(&mut elements);
            let a = a_val[&elements[0]];
            for e in &elements {
                assert_eq!(a_val[e], a, "a-function not constant on a cell");
            }
            cells.push(Cell { elements, a });
        }
        cells.sort_by(|c1, c2| {
            let k1 = (c1.a, self.weyl.length(&c1.elements[0]), self.weyl.reduced_word(&c1.elements[0]));
            let k2 = (c2.a, self.weyl.length(&c2.elements[0]), self.weyl.reduced_word(&c2.elements[0]));
            k1.cmp(&k2)
        });
        Ok(cells)
    }

    /// Matrix of the specialized element `sum_x (-1)^{l(w)-l(x)} p_{x,w}(1) x`
    /// acting on degree-`d` symmetric polynomials through the linear parts
    /// (`(g f)(z) = f(g^{-1} z)`), in the monomial basis.
    pub fn sym_action_matrix(&mut self, w: &AffineElement, d: u32) -> Vec<Vec<Rat>> {
        let rank = self.weyl.rank();
        let monos = MultiPoly::monomials_of_degree(rank, d);
        let dim = monos.len();
        let mut out = vec![vec![Rat::zero(); dim]; dim];
        let sign_w = self.weyl.sign(w) as i64;
        for (x, h) in self.canonical(w) {
            let c = h.eval_at_one() * (self.weyl.sign(&x) as i64) * sign_w;
            if c == 0 {
                continue;
            }
            let minv = x.mat.inverse();
            let images: Vec<MultiPoly> = (0..rank)
                .map(|i| {
                    let coeffs: Vec<Rat> = (0..rank).map(|k| rat(minv.at(i, k))).collect();
                    MultiPoly::linear_form(&coeffs, Rat::zero())
                })
                .collect();
            for (col, e) in monos.iter().enumerate() {
                let mut img = MultiPoly::constant(rank, rat(c));
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        img = img.mul(&images[i].pow(k));
                    }
                }
                for (row, m) in monos.iter().enumerate() {
                    let v = img.coeff(m);
                    if !v.is_zero() {
                        out[row][col] += v;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::rootsys::RootSystem;

    fn hecke(label: &str) -> Hecke {
        Hecke::new(AffineWeyl::new(RootSystem::new(label).unwrap()))
    }

    fn word(h: &Hecke, w: &[usize]) -> AffineElement {
        h.weyl.element_from_word(w).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let h = hecke("A1");
        let mut e = HeckeElt::new();
        elt_insert(&mut e, h.weyl.identity(), LaurentPoly::one());
        let hs = h.mul_gen(&e, 1);
        let hss = h.mul_gen(&hs, 1);
        // H_s^2 = 1 + (v^{-1} - v) H_s
        assert_eq!(hss.get(&h.weyl.identity()), Some(&LaurentPoly::one()));
        let s1 = word(&h, &[1]);
        let expect = LaurentPoly::v_pow(-1).sub(&LaurentPoly::v_pow(1));
        assert_eq!(hss.get(&s1), Some(&expect));
    }

    #[test]
    fn small_canonicals() {
        let mut h = hecke("A1");
        let s1 = word(&h, &[1]);
        let c = h.canonical(&s1);
        assert_eq!(c.get(&s1), Some(&LaurentPoly::one()));
        assert_eq!(c.get(&h.weyl.identity()), Some(&LaurentPoly::v_pow(1)));

        let sas1 = word(&h, &[0, 1]);
        let c2 = h.canonical(&sas1);
        assert_eq!(c2.len(), 4);
        assert_eq!(c2.get(&h.weyl.identity()), Some(&LaurentPoly::v_pow(2)));
        assert_eq!(c2.get(&word(&h, &[0])), Some(&LaurentPoly::v_pow(1)));
        assert_eq!(c2.get(&word(&h, &[1])), Some(&LaurentPoly::v_pow(1)));
    }

    #[test]
    fn dihedral_kl_all_trivial() {
        // in the infinite dihedral (affine A1) group every P_{x,w} is 1
        let mut h = hecke("A1");
        let caps = Caps::default();
        let ball = h.weyl.elements_up_to_length(6, &caps).unwrap();
        for w in &ball {
            for x in &ball {
                if !h.weyl.bruhat_leq(x, w) {
                    assert!(h.kl_q_coeffs(x, w).is_empty());
                    continue;
                }
                assert_eq!(h.kl_q_coeffs(x, w), vec![1], "x,w in dihedral");
            }
        }
    }

    #[test]
    fn a3_kl_example() {
        // the first non-trivial KL polynomial in the symmetric group S4
        let mut h = hecke("A3");
        let x = word(&h, &[2]);
        let w = word(&h, &[2, 1, 3, 2]);
        assert_eq!(h.kl_q_coeffs(&x, &w), vec![1, 1]);
        assert_eq!(Hecke::format_q_poly(&[1, 1]), "1 + q");
        assert_eq!(h.mu(&x, &w), 1);
    }

    #[test]
    fn s3_structure() {
        let mut h = hecke("A2");
        let caps = Caps::default();
        let par = h.weyl.parabolic(0, &caps).unwrap();
        let a = h.a_function(&par).unwrap();
        let w0 = word(&h, &[1, 2, 1]);
        assert_eq!(a[&h.weyl.identity()], 0);
        assert_eq!(a[&w0], 3);
        assert_eq!(a[&word(&h, &[1])], 1);
        assert_eq!(a[&word(&h, &[1, 2])], 1);

        let cells = h.two_sided_cells(&par).unwrap();
        let sizes: Vec<usize> = cells.iter().map(|c| c.elements.len()).collect();
        let avals: Vec<u32> = cells.iter().map(|c| c.a).collect();
        assert_eq!(sizes, vec![1, 4, 1]);
        assert_eq!(avals, vec![0, 1, 3]);
    }

    #[test]
    fn canonical_square_of_generator() {
        // Hb_s Hb_s = (v + v^{-1}) Hb_s
        let mut h = hecke("A2");
        let s = word(&h, &[1]);
        let prod = h.canonical_product(&s, &s);
        assert_eq!(prod.len(), 1);
        let expect = LaurentPoly::v_pow(1).add(&LaurentPoly::v_pow(-1));
        assert_eq!(prod[0].0, s);
        assert_eq!(prod[0].1, expect);
    }

    #[test]
    fn a1xa1_cells() {
        let mut h = hecke("B2");
        let caps = Caps::default();
        let par = h.weyl.parabolic(1, &caps).unwrap();
        assert_eq!(par.elements.len(), 4);
        let cells = h.two_sided_cells(&par).unwrap();
        let avals: Vec<u32> = cells.iter().map(|c| c.a).collect();
        assert_eq!(avals, vec![0, 1, 1, 2]);
    }

    #[test]
    fn sym_action_s3() {
        let mut h = hecke("A2");
        let w0 = word(&h, &[1, 2, 1]);
        // w0 has a = 3: action vanishes on degrees 0..3 and not on 3
        for d in 0..3 {
            let m = h.sym_action_matrix(&w0, d);
            assert!(m.iter().flatten().all(|c| c.is_zero()), "degree {d}");
        }
        let m3 = h.sym_action_matrix(&w0, 3);
        assert!(m3.iter().flatten().any(|c| !c.is_zero()));

        let s1 = word(&h, &[1]);
        let m0 = h.sym_action_matrix(&s1, 0);
        assert!(m0.iter().flatten().all(|c| c.is_zero()));
        let m1 = h.sym_action_matrix(&s1, 1);
        assert!(m1.iter().flatten().any(|c| !c.is_zero()));
    }
}

//! Verification engine: valuations of tilting dimensions against a-values.
//!
//! For each standard parabolic `W_s` (omit one affine generator) and each
//! two-sided cell of it, the sweep looks for a character of the form
//! `Nb_y Hb_w` (`w` in the cell, `y` a minimal coset representative) whose
//! dimension at a `p`-restricted regular weight has `p`-adic valuation
//! exactly the a-value of the cell.
//!
//! The search for `y` is symbolic and `p`-free. Writing `Delta` for the Weyl
//! dimension polynomial (degree = number of positive roots `N`), the key
//! object is
//!
//! `D_{ybar,w}(mu, lambda) = sum_x p_{x,w}(1) Delta(mu + ybar xbar ybar^{-1}
//! lambda)`,
//!
//! a homogeneous polynomial of degree `N` in the two vector variables. Every
//! monomial has `mu`-degree at least `a(w)`; the dimension of `Nb_y Hb_w` at
//! a weight is `D` evaluated at `mu = p m_y` (with `m_y` the level-one image
//! of the parabolic fixed point under `y`), so the lowest `mu`-stratum
//! controls the valuation and `y` qualifies once the `mu`-degree-`a` stratum
//! survives the substitution `mu = m_y`. Homogeneity makes the test
//! independent of `p`.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{AffineElement, AffineWeyl, Parabolic};
use crate::antispherical::Antispherical;
use crate::cache::{CacheEntry, CacheFile, CacheTerm};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::hecke::Hecke;
use crate::laurent::LaurentPoly;
use crate::multipoly::MultiPoly;
use crate::rootsys::{rat, Mat, Rat, RootSystem, Weight};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Weak,
    FailedPTooSmall,
    SearchExhausted,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Witness {
    pub w: Vec<usize>,
    pub y: Vec<usize>,
    /// All minimal-length representatives passing the symbolic test.
    pub y_candidates: Vec<Vec<usize>>,
    pub lambda: Vec<i64>,
    pub dimension: String,
    pub valuation: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CellReport {
    pub omitted: usize,
    pub parabolic_gens: Vec<usize>,
    pub parabolic_order: usize,
    pub cell_index: usize,
    pub cell_size: usize,
    pub min_word: Vec<usize>,
    pub a: u32,
    pub status: Status,
    pub min_valuation: Option<u32>,
    pub lambdas_scanned: usize,
    pub witness: Option<Witness>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerifyReport {
    pub label: String,
    pub p: u64,
    pub all_verified: bool,
    pub reports: Vec<CellReport>,
}

#[derive(Clone, Debug)]
pub struct YSearch {
    pub y: AffineElement,
    pub word: Vec<usize>,
    pub candidates: Vec<Vec<usize>>,
}

pub struct Engine {
    pub anti: Antispherical,
    pub caps: Caps,
    delta_sum_cache: HashMap<(Mat, AffineElement), MultiPoly>,
    rep_ball: Option<Vec<AffineElement>>,
}

impl Engine {
    pub fn new(label: &str, caps: Caps) -> Result<Engine> {
        let rs = RootSystem::new(label)?;
        let weyl = AffineWeyl::new(rs);
        Ok(Engine {
            anti: Antispherical::new(Hecke::new(weyl)),
            caps,
            delta_sum_cache: HashMap::new(),
            rep_ball: None,
        })
    }

    pub fn weyl(&self) -> &AffineWeyl {
        &self.anti.hecke.weyl
    }

    pub fn rs(&self) -> &RootSystem {
        &self.anti.hecke.weyl.rs
    }

    /// The Weyl dimension value at a point given with `rho` already added:
    /// product of `<v, alpha^vee> / <rho, alpha^vee>`.
    pub fn delta_val(&self, v: &[Rat]) -> Rat {
        let mut acc = Rat::one();
        for root in &self.rs().positive_roots {
            let mut num = Rat::zero();
            for (i, &c) in root.coroot.iter().enumerate() {
                if c != 0 {
                    num += v[i].clone() * rat(c);
                }
            }
            acc = acc * num / rat(root.coheight());
        }
        acc
    }

    pub fn delta_val_int(&self, v: &[i64]) -> Rat {
        let vr: Vec<Rat> = v.iter().map(|&c| rat(c)).collect();
        self.delta_val(&vr)
    }

    /// Variable names for the symbolic polynomials: `m1..` then `l1..`.
    pub fn var_names(rank: usize) -> Vec<String> {
        let mut names: Vec<String> = (0..rank).map(|i| format!("m{}", i + 1)).collect();
        names.extend((0..rank).map(|i| format!("l{}", i + 1)));
        names
    }

    /// `D_{ybar,w}` above: homogeneous of degree `N` in `(mu, lambda)`.
    pub fn delta_sum(&mut self, ybar: &Mat, w: &AffineElement) -> MultiPoly {
        let key = (ybar.clone(), w.clone());
        if let Some(hit) = self.delta_sum_cache.get(&key) {
            return hit.clone();
        }
        let rank = self.rs().rank;
        let roots = self.rs().positive_roots.clone();
        let ybar_inv = ybar.inverse();
        let hw = self.anti.hecke.canonical(w);
        let mut acc = MultiPoly::zero(2 * rank);
        for (x, h) in &hw {
            let c = h.eval_at_one();
            if c == 0 {
                continue;
            }
            let conj = ybar.mul(&x.mat).mul(&ybar_inv);
            let mut term = MultiPoly::constant(2 * rank, rat(c));
            for root in &roots {
                let mut coeffs = vec![Rat::zero(); 2 * rank];
                for i in 0..rank {
                    coeffs[i] = rat(root.coroot[i]);
                }
                for k in 0..rank {
                    let s: i64 = (0..rank).map(|j| root.coroot[j] * conj.at(j, k)).sum();
                    coeffs[rank + k] = rat(s);
                }
                let lf = MultiPoly::linear_form(&coeffs, Rat::zero())
                    .scale(&(Rat::one() / rat(root.coheight())));
                term = term.mul(&lf);
            }
            acc = acc.add(&term);
        }
        self.delta_sum_cache.insert(key, acc.clone());
        acc
    }

    pub fn delta_sum_formatted(&mut self, ybar: &Mat, w: &AffineElement) -> String {
        let rank = self.rs().rank;
        let d = self.delta_sum(ybar, w);
        d.format_with(&Engine::var_names(rank))
    }

    /// Every monomial of `D_{ybar,w}` has `mu`-degree at least `a(w)`, for
    /// every finite `ybar`.
    pub fn lemma_holds(&mut self, w: &AffineElement, a: u32) -> Result<bool> {
        let rank = self.rs().rank;
        let wf = self.rs().weyl_group(&self.caps)?;
        for el in wf {
            let d = self.delta_sum(&el.mat, w);
            if let Some(md) = d.min_degree_in(0, rank) {
                if md < a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `D_{1,w}(mu, lambda) = sum_x (-1)^{l(x)} p_{x,w}(1)
    /// Delta(xbar^{-1} mu + lambda)`, by skew-symmetry of `Delta`.
    pub fn star_identity_holds(&mut self, w: &AffineElement) -> bool {
        let rank = self.rs().rank;
        let roots = self.rs().positive_roots.clone();
        let lhs = self.delta_sum(&Mat::identity(rank), w);
        let hw = self.anti.hecke.canonical(w);
        let mut rhs = MultiPoly::zero(2 * rank);
        for (x, h) in &hw {
            let c = h.eval_at_one() * x.mat.det();
            if c == 0 {
                continue;
            }
            let minv = x.mat.inverse();
            let mut term = MultiPoly::constant(2 * rank, rat(c));
            for root in &roots {
                let mut coeffs = vec![Rat::zero(); 2 * rank];
                for i in 0..rank {
                    let s: i64 = (0..rank).map(|j| root.coroot[j] * minv.at(j, i)).sum();
                    coeffs[i] = rat(s);
                }
                for k in 0..rank {
                    coeffs[rank + k] = rat(root.coroot[k]);
                }
                let lf = MultiPoly::linear_form(&coeffs, Rat::zero())
                    .scale(&(Rat::one() / rat(root.coheight())));
                term = term.mul(&lf);
            }
            rhs = rhs.add(&term);
        }
        lhs == rhs
    }

    fn rep_ball(&mut self) -> Result<Vec<AffineElement>> {
        if self.rep_ball.is_none() {
            let ball = self
                .weyl()
                .elements_up_to_length(self.caps.max_y_length, &self.caps)?;
            let reps: Vec<AffineElement> = ball
                .into_iter()
                .filter(|x| self.weyl().is_min_rep(x))
                .collect();
            self.rep_ball = Some(reps);
        }
        Ok(self.rep_ball.clone().unwrap())
    }

    /// Smallest (by length, then canonical word) minimal representative `y`
    /// for which the `mu`-degree-`a` stratum of `D_{ybar,w}` survives the
    /// substitution `mu = m_y`; all minimal-length hits are reported.
    pub fn find_minimal_y(
        &mut self,
        mu_s: &Weight,
        w: &AffineElement,
        a: u32,
    ) -> Result<YSearch> {
        let rank = self.rs().rank;
        let nroots = self.rs().num_positive_roots() as u32;
        if a > nroots {
            return Err(Error::SearchExhausted(self.caps.max_y_length));
        }
        let lam_deg = nroots - a;
        let reps = self.rep_ball()?;
        let mut found_len: Option<u32> = None;
        let mut chosen: Option<AffineElement> = None;
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for y in reps {
            let ly = self.weyl().length(&y);
            if let Some(fl) = found_len {
                if ly > fl {
                    break;
                }
            }
            let m_y = self.weyl().act_level(&y, mu_s, &Rat::one());
            let d = self.delta_sum(&y.mat, w);
            let comp = d.component_by_degree_in(rank, 2 * rank, lam_deg);
            if comp.is_zero() {
                continue;
            }
            let assigns: Vec<(usize, Rat)> = m_y.0.iter().cloned().enumerate().collect();
            if comp.substitute(&assigns).is_zero() {
                continue;
            }
            if found_len.is_none() {
                found_len = Some(ly);
                chosen = Some(y.clone());
            }
            candidates.push(self.weyl().reduced_word(&y));
        }
        match chosen {
            Some(y) => Ok(YSearch {
                word: self.weyl().reduced_word(&y),
                y,
                candidates,
            }),
            None => Err(Error::SearchExhausted(self.caps.max_y_length)),
        }
    }

    /// Dimension of `Nb_y Hb_w` at the `p`-dilated dot orbit of `lambda1`:
    /// specialize at `v = 1` and sum Weyl dimension values over the standard
    /// support.
    pub fn tilting_dimension(
        &mut self,
        y: &AffineElement,
        w: &AffineElement,
        lambda1: &[i64],
        p: u64,
    ) -> Result<BigInt> {
        let shifted: Vec<i64> = lambda1.iter().map(|&c| c + 1).collect();
        let nelt = self.anti.canonical_times_canonical(y, w);
        let mut acc = Rat::zero();
        for (z, c) in Antispherical::at_one(&nelt) {
            let img = self.weyl().act_level_int(&z, &shifted, p as i64);
            acc += self.delta_val_int(&img) * rat(c);
        }
        if !acc.is_integer() {
            return Err(Error::BadDimension(format!("non-integral dimension {acc}")));
        }
        let n = acc.to_integer();
        if !n.is_positive() {
            return Err(Error::BadDimension(format!("non-positive dimension {n}")));
        }
        Ok(n)
    }

    /// The same number three ways: the standard-support sum, the double sum
    /// over the two canonical supports, and the split form through the
    /// parabolic fixed point. All must agree exactly.
    pub fn dimension_three_ways(
        &mut self,
        mu_s: &Weight,
        y: &AffineElement,
        w: &AffineElement,
        lambda1: &[i64],
        p: u64,
    ) -> Result<(BigInt, BigInt, BigInt)> {
        let d1 = self.tilting_dimension(y, w, lambda1, p)?;

        let shifted: Vec<i64> = lambda1.iter().map(|&c| c + 1).collect();
        let ny = self.anti.canonical(y);
        let ny_one = Antispherical::at_one(&ny);
        let hw = self.anti.hecke.canonical(w);
        let hw_one: Vec<(AffineElement, i64)> = hw
            .iter()
            .filter_map(|(x, h)| {
                let v = h.eval_at_one();
                (v != 0).then(|| (x.clone(), v))
            })
            .collect();

        let mut acc2 = Rat::zero();
        for (y1, n1) in &ny_one {
            for (x, h1) in &hw_one {
                let z = self.weyl().mul(y1, x);
                let img = self.weyl().act_level_int(&z, &shifted, p as i64);
                acc2 += self.delta_val_int(&img) * rat(n1 * h1);
            }
        }

        let pr = rat(p as i64);
        let kappa: Vec<Rat> = shifted
            .iter()
            .zip(&mu_s.0)
            .map(|(&s, m)| rat(s) - pr.clone() * m.clone())
            .collect();
        let mut acc3 = Rat::zero();
        for (y1, n1) in &ny_one {
            let m1 = self.weyl().act_level(y1, mu_s, &Rat::one());
            for (x, h1) in &hw_one {
                let xk = x.mat.apply_rat(&kappa);
                let yxk = y1.mat.apply_rat(&xk);
                let point: Vec<Rat> = yxk
                    .iter()
                    .zip(&m1.0)
                    .map(|(q, m)| q.clone() + pr.clone() * m.clone())
                    .collect();
                acc3 += self.delta_val(&point) * rat(n1 * h1);
            }
        }

        for acc in [&acc2, &acc3] {
            if !acc.is_integer() {
                return Err(Error::BadDimension(format!("non-integral dimension {acc}")));
            }
        }
        Ok((d1, acc2.to_integer(), acc3.to_integer()))
    }

    fn verify_cell(
        &mut self,
        par: &Parabolic,
        mu_s: &Weight,
        cell_index: usize,
        cell_elements: &[AffineElement],
        a: u32,
        lambdas: &[Vec<i64>],
        p: u64,
    ) -> Result<CellReport> {
        let mut picked: Option<(AffineElement, YSearch)> = None;
        for w in cell_elements {
            match self.find_minimal_y(mu_s, w, a) {
                Ok(ys) => {
                    picked = Some((w.clone(), ys));
                    break;
                }
                Err(Error::SearchExhausted(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        let min_word = self.weyl().reduced_word(&cell_elements[0]);
        let base = CellReport {
            omitted: par.omitted,
            parabolic_gens: par.gens.clone(),
            parabolic_order: par.elements.len(),
            cell_index,
            cell_size: cell_elements.len(),
            min_word,
            a,
            status: Status::SearchExhausted,
            min_valuation: None,
            lambdas_scanned: lambdas.len(),
            witness: None,
        };
        let Some((w, ys)) = picked else {
            return Ok(base);
        };
        if lambdas.is_empty() {
            return Ok(CellReport {
                status: Status::FailedPTooSmall,
                ..base
            });
        }
        let mut scanned: Vec<(Vec<i64>, u32, BigInt)> = Vec::new();
        for lam in lambdas {
            let dim = self.tilting_dimension(&ys.y, &w, lam, p)?;
            let nu = valuation(&dim, p);
            scanned.push((lam.clone(), nu, dim));
        }
        let min_nu = scanned.iter().map(|(_, nu, _)| *nu).min().unwrap();
        let (lam, nu, dim) = scanned
            .iter()
            .find(|(_, nu, _)| *nu == min_nu)
            .cloned()
            .unwrap();
        let status = match min_nu.cmp(&a) {
            std::cmp::Ordering::Equal => Status::Verified,
            std::cmp::Ordering::Less => Status::Weak,
            std::cmp::Ordering::Greater => Status::FailedPTooSmall,
        };
        Ok(CellReport {
            status,
            min_valuation: Some(min_nu),
            witness: Some(Witness {
                w: self.weyl().reduced_word(&w),
                y: ys.word.clone(),
                y_candidates: ys.candidates.clone(),
                lambda: lam,
                dimension: dim.to_string(),
                valuation: nu,
            }),
            ..base
        })
    }

    /// Full sweep: every standard parabolic, every two-sided cell.
    pub fn verify(&mut self, p: u64) -> Result<VerifyReport> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let caps = self.caps.clone();
        let label = self.rs().label.clone();
        let lambdas = self.rs().lowest_alcove_weights(p);
        let mut reports = Vec::new();
        for omitted in 0..self.weyl().num_gens() {
            let par = self.weyl().parabolic(omitted, &caps)?;
            let mu_s = self.weyl().invariant_point(&par);
            let cells = self.anti.hecke.two_sided_cells(&par)?;
            for (ci, cell) in cells.iter().enumerate() {
                let report =
                    self.verify_cell(&par, &mu_s, ci, &cell.elements, cell.a, &lambdas, p)?;
                reports.push(report);
            }
        }
        let all_verified = reports.iter().all(|r| r.status == Status::Verified);
        Ok(VerifyReport {
            label,
            p,
            all_verified,
            reports,
        })
    }

    fn entry_terms(
        weyl: &AffineWeyl,
        elt: &std::collections::BTreeMap<AffineElement, LaurentPoly>,
    ) -> Vec<CacheTerm> {
        let mut terms: Vec<(u32, Vec<usize>, CacheTerm)> = elt
            .iter()
            .map(|(x, c)| {
                let word = weyl.reduced_word(x);
                let t = CacheTerm {
                    x: word.clone(),
                    c: c.terms().collect(),
                };
                (weyl.length(x), word, t)
            })
            .collect();
        terms.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        terms.into_iter().map(|(_, _, t)| t).collect()
    }

    pub fn export_cache(&mut self) -> CacheFile {
        let label = self.rs().label.clone();
        let mut entries = Vec::new();
        for w in self.anti.hecke.cached_canonicals() {
            let elt = self.anti.hecke.canonical(&w);
            let weyl = self.weyl();
            entries.push(CacheEntry {
                basis: "H".to_string(),
                w: weyl.reduced_word(&w),
                terms: Engine::entry_terms(weyl, &elt),
            });
        }
        for y in self.anti.cached_canonicals() {
            let elt = self.anti.canonical(&y);
            let weyl = self.weyl();
            entries.push(CacheEntry {
                basis: "N".to_string(),
                w: weyl.reduced_word(&y),
                terms: Engine::entry_terms(weyl, &elt),
            });
        }
        CacheFile::new(&label, entries)
    }

    pub fn import_cache(&mut self, file: &CacheFile) -> Result<()> {
        let label = self.rs().label.clone();
        if file.label != label {
            return Err(Error::Cache(format!(
                "cache is for type {} but this run is type {label}",
                file.label
            )));
        }
        for entry in &file.entries {
            let w = self.weyl().element_from_word(&entry.w)?;
            let mut elt = std::collections::BTreeMap::new();
            for t in &entry.terms {
                let x = self.weyl().element_from_word(&t.x)?;
                let mut c = LaurentPoly::zero();
                for &(e, a) in &t.c {
                    c.add_term(e, a);
                }
                if !c.is_zero() {
                    elt.insert(x, c);
                }
            }
            if elt.get(&w) != Some(&LaurentPoly::one()) {
                return Err(Error::Cache(format!(
                    "entry for {:?} has a bad top coefficient",
                    entry.w
                )));
            }
            match entry.basis.as_str() {
                "H" => self.anti.hecke.insert_cached(w, elt),
                "N" => {
                    if !self.weyl().is_min_rep(&w) {
                        return Err(Error::Cache(format!(
                            "entry for {:?} is not a minimal representative",
                            entry.w
                        )));
                    }
                    self.anti.insert_cached(w, elt);
                }
                other => {
                    return Err(Error::Cache(format!("unknown basis {other:?}")));
                }
            }
        }
        Ok(())
    }
}

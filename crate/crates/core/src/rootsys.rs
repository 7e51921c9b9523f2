//! Root systems in fundamental-weight coordinates.
//!
//! All weight-space points are written in the basis of fundamental weights, so
//! coordinate `i` of a point `v` is the pairing `<v, alpha_i^vee>`. Roots are
//! generated from the Cartan matrix by reflection closure; alongside the
//! simple-root coordinates of each root we track the simple-coroot coordinates
//! of its coroot, which is all that is ever needed to pair against weights.
//! The coroot lattice is identified with its image in the weight space through
//! the Cartan matrix (`alpha_i^vee` maps to the column for `alpha_i`), so
//! translation vectors live in the root lattice written in fundamental-weight
//! coordinates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// small dense integer matrices

/// Row-major integer matrix acting on fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let c = self.at(i, k);
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += c * other.at(k, j);
                }
            }
        }
        Mat { n, a }
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..n {
                    let c = self.at(i, j);
                    if c != 0 {
                        acc += v[j].clone() * rat(c);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn det(&self) -> i64 {
        match self.n {
            1 => self.at(0, 0),
            2 => self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0),
            3 => {
                self.at(0, 0) * (self.at(1, 1) * self.at(2, 2) - self.at(1, 2) * self.at(2, 1))
                    - self.at(0, 1)
                        * (self.at(1, 0) * self.at(2, 2) - self.at(1, 2) * self.at(2, 0))
                    + self.at(0, 2)
                        * (self.at(1, 0) * self.at(2, 1) - self.at(1, 1) * self.at(2, 0))
            }
            _ => panic!("determinant only implemented for rank <= 3"),
        }
    }

    /// Inverse of a matrix with determinant +-1 (all Weyl group elements).
    pub fn inverse(&self) -> Mat {
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix is not unimodular");
        let n = self.n;
        let mut adj = vec![0i64; n * n];
        match n {
            1 => adj[0] = 1,
            2 => {
                adj[0] = self.at(1, 1);
                adj[1] = -self.at(0, 1);
                adj[2] = -self.at(1, 0);
                adj[3] = self.at(0, 0);
            }
            3 => {
                for i in 0..3 {
                    for j in 0..3 {
                        let r = [(0..3).filter(|&k| k != j).collect::<Vec<_>>()];
                        let rows: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                        let cols = &r[0];
                        let m00 = self.at(rows[0], cols[0]);
                        let m01 = self.at(rows[0], cols[1]);
                        let m10 = self.at(rows[1], cols[0]);
                        let m11 = self.at(rows[1], cols[1]);
                        let minor = m00 * m11 - m01 * m10;
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        // adjugate = transpose of cofactor matrix
                        adj[j * 3 + i] = sign * minor;
                    }
                }
            }
            _ => panic!("inverse only implemented for rank <= 3"),
        }
        if d == -1 {
            for x in adj.iter_mut() {
                *x = -*x;
            }
        }
        Mat { n, a: adj }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i64>> = (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        write!(f, "{:?}", rows)
    }
}

// ---------------------------------------------------------------------------
// weights

/// A weight-space point in fundamental-weight coordinates, exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn from_i64(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&c| rat(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn coords_string(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

// ---------------------------------------------------------------------------
// roots

/// One root, carried in three coordinate systems at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients over the simple roots.
    pub simple: Vec<i64>,
    /// Coefficients of the coroot over the simple coroots.
    pub coroot: Vec<i64>,
    /// Fundamental-weight coordinates (Cartan matrix times `simple`).
    pub fw: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    pub fn coheight(&self) -> i64 {
        self.coroot.iter().sum()
    }
}

/// A finite Weyl group element with its cached length and sign.
#[derive(Clone, Debug)]
pub struct FiniteWeylElement {
    pub mat: Mat,
    pub length: u32,
    pub sign: i8,
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for FiniteWeylElement {}

// ---------------------------------------------------------------------------
// the root system

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`, so column `j` is `alpha_j` in
    /// fundamental-weight coordinates.
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    /// Index into `positive_roots` of the highest root.
    pub highest_root: usize,
    /// Index of the root whose coroot is the highest coroot (the highest
    /// short root); its wall bounds the fundamental alcove from above.
    pub highest_short_root: usize,
    pub coxeter_number: i64,
}

impl RootSystem {
    pub fn new(label: &str) -> Result<RootSystem> {
        let norm = label.trim().to_ascii_uppercase();
        let cartan: Vec<Vec<i64>> = match norm.as_str() {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" => vec![vec![2, -1], vec![-2, 2]],
            "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            "G2" => vec![vec![2, -3], vec![-1, 2]],
            _ => return Err(Error::UnsupportedType(label.to_string())),
        };
        let rank = cartan.len();

        // Reflection closure from the simple pairs (alpha_i, alpha_i^vee).
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        let mut all: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..rank {
            let mut r = vec![0; rank];
            r[i] = 1;
            let c = r.clone();
            seen.insert(r.clone());
            queue.push_back((r.clone(), c.clone()));
            all.push((r, c));
        }
        while let Some((r, c)) = queue.pop_front() {
            for j in 0..rank {
                // <alpha, alpha_j^vee> = sum_i r_i * cartan[j][i]
                let pr: i64 = (0..rank).map(|i| r[i] * cartan[j][i]).sum();
                // <alpha_j, beta^vee> = sum_i c_i * cartan[i][j]
                let pc: i64 = (0..rank).map(|i| c[i] * cartan[i][j]).sum();
                let mut r2 = r.clone();
                r2[j] -= pr;
                let mut c2 = c.clone();
                c2[j] -= pc;
                if seen.insert(r2.clone()) {
                    queue.push_back((r2.clone(), c2.clone()));
                    all.push((r2, c2));
                }
            }
            if all.len() > 256 {
                return Err(Error::CapExceeded {
                    what: "root closure",
                    limit: 256,
                });
            }
        }

        let mut positive_roots: Vec<Root> = all
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .map(|(simple, coroot)| {
                let fw: Vec<i64> = (0..rank)
                    .map(|k| (0..rank).map(|i| cartan[k][i] * simple[i]).sum())
                    .collect();
                Root { simple, coroot, fw }
            })
            .collect();
        positive_roots.sort_by(|a, b| (a.height(), &a.simple).cmp(&(b.height(), &b.simple)));

        let highest_root = {
            let max_h = positive_roots.iter().map(|r| r.height()).max().unwrap();
            let idxs: Vec<usize> = (0..positive_roots.len())
                .filter(|&i| positive_roots[i].height() == max_h)
                .collect();
            assert_eq!(idxs.len(), 1, "highest root must be unique");
            idxs[0]
        };
        let highest_short_root = {
            let max_h = positive_roots.iter().map(|r| r.coheight()).max().unwrap();
            let idxs: Vec<usize> = (0..positive_roots.len())
                .filter(|&i| positive_roots[i].coheight() == max_h)
                .collect();
            assert_eq!(idxs.len(), 1, "highest coroot must be unique");
            idxs[0]
        };
        let coxeter_number = positive_roots[highest_root].height() + 1;

        Ok(RootSystem {
            label: norm,
            rank,
            cartan,
            positive_roots,
            highest_root,
            highest_short_root,
            coxeter_number,
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// All-ones vector: rho in fundamental-weight coordinates.
    pub fn rho(&self) -> Weight {
        Weight(vec![Rat::one(); self.rank])
    }

    pub fn rho_int(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// `<v, alpha^vee>` for a coroot given over the simple coroots.
    pub fn pairing(&self, v: &Weight, coroot: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &c) in coroot.iter().enumerate() {
            if c != 0 {
                acc += v.0[i].clone() * rat(c);
            }
        }
        acc
    }

    pub fn pairing_int(&self, v: &[i64], coroot: &[i64]) -> i64 {
        coroot.iter().zip(v).map(|(&c, &x)| c * x).sum()
    }

    /// Matrix of the simple reflection `s_i` (1-based root index `i`, here
    /// 0-based over the finite simples) on fundamental-weight coordinates.
    pub fn simple_reflection_mat(&self, i: usize) -> Mat {
        let n = self.rank;
        let mut m = Mat::identity(n);
        for k in 0..n {
            m.a[k * n + i] -= self.cartan[k][i];
        }
        m
    }

    /// Matrix of the reflection in an arbitrary positive root.
    pub fn reflection_mat(&self, root_idx: usize) -> Mat {
        let n = self.rank;
        let root = &self.positive_roots[root_idx];
        let mut m = Mat::identity(n);
        for k in 0..n {
            for j in 0..n {
                m.a[k * n + j] -= root.fw[k] * root.coroot[j];
            }
        }
        m
    }

    /// Look up the image of a positive root under a matrix; returns
    /// `(index, positive)` or None if the vector is not a root image.
    pub fn root_image(&self, m: &Mat, root_idx: usize) -> Option<(usize, bool)> {
        let img = m.apply_int(&self.positive_roots[root_idx].fw);
        for (i, r) in self.positive_roots.iter().enumerate() {
            if r.fw == img {
                return Some((i, true));
            }
            if r.fw.iter().zip(&img).all(|(&a, &b)| a == -b) {
                return Some((i, false));
            }
        }
        None
    }

    /// Length of a finite Weyl element given by its matrix: the number of
    /// positive roots it sends negative.
    pub fn inversion_count(&self, m: &Mat) -> u32 {
        let mut count = 0;
        for i in 0..self.positive_roots.len() {
            let (_, pos) = self
                .root_image(m, i)
                .expect("matrix does not permute the roots");
            if !pos {
                count += 1;
            }
        }
        count
    }

    pub fn finite_element(&self, mat: Mat) -> FiniteWeylElement {
        let length = self.inversion_count(&mat);
        let sign = if length % 2 == 0 { 1 } else { -1 };
        debug_assert_eq!(mat.det(), sign as i64);
        FiniteWeylElement { mat, length, sign }
    }

    /// Full enumeration of the finite Weyl group, sorted by (length, matrix).
    pub fn weyl_group(&self, caps: &Caps) -> Result<Vec<FiniteWeylElement>> {
        let gens: Vec<Mat> = (0..self.rank).map(|i| self.simple_reflection_mat(i)).collect();
        let mut dist: HashMap<Mat, u32> = HashMap::new();
        let id = Mat::identity(self.rank);
        dist.insert(id.clone(), 0);
        let mut frontier = vec![id];
        let mut depth = 0u32;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let prod = m.mul(g);
                    if !dist.contains_key(&prod) {
                        dist.insert(prod.clone(), depth);
                        next.push(prod);
                    }
                }
            }
            if dist.len() > caps.max_group_size {
                return Err(Error::CapExceeded {
                    what: "finite Weyl group enumeration",
                    limit: caps.max_group_size,
                });
            }
            frontier = next;
        }
        let mut out: Vec<FiniteWeylElement> = dist
            .into_iter()
            .map(|(mat, length)| {
                let sign = if length % 2 == 0 { 1 } else { -1 };
                FiniteWeylElement { mat, length, sign }
            })
            .collect();
        out.sort_by(|a, b| (a.length, &a.mat.a).cmp(&(b.length, &b.mat.a)));
        Ok(out)
    }

    pub fn is_dominant(&self, v: &Weight) -> bool {
        v.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_regular(&self, v: &Weight) -> bool {
        self.positive_roots
            .iter()
            .all(|r| !self.pairing(v, &r.coroot).is_zero())
    }

    /// Interior of the lowest alcove at level `p`:
    /// `0 < <v + rho, alpha^vee> < p` for every positive root.
    pub fn in_lowest_alcove(&self, v: &Weight, p: u64) -> bool {
        let vr = v.add(&self.rho());
        let pp = rat(p as i64);
        self.positive_roots.iter().all(|r| {
            let pr = self.pairing(&vr, &r.coroot);
            pr.is_positive() && pr < pp
        })
    }

    /// Integral dominant weights in the open lowest alcove, lex order.
    pub fn lowest_alcove_weights(&self, p: u64) -> Vec<Vec<i64>> {
        let bound = p as i64 - 1;
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        loop {
            let w = Weight::from_i64(&cur);
            if self.in_lowest_alcove(&w, p) {
                out.push(cur.clone());
            }
            // odometer over the box [0, p-2]^rank
            let mut i = 0;
            loop {
                if i == self.rank {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= bound {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::new(label).unwrap()
    }

    #[test]
    fn basic_counts() {
        for (label, n, h) in [
            ("A1", 1, 2),
            ("A2", 3, 3),
            ("A3", 6, 4),
            ("B2", 4, 4),
            ("B3", 9, 6),
            ("G2", 6, 6),
        ] {
            let r = rs(label);
            assert_eq!(r.num_positive_roots(), n, "{label}");
            assert_eq!(r.coxeter_number, h, "{label}");
        }
        assert!(RootSystem::new("E8").is_err());
    }

    #[test]
    fn highest_roots() {
        let a2 = rs("A2");
        assert_eq!(a2.positive_roots[a2.highest_root].simple, vec![1, 1]);
        assert_eq!(a2.highest_root, a2.highest_short_root);

        let b2 = rs("B2");
        assert_eq!(b2.positive_roots[b2.highest_root].simple, vec![1, 2]);
        assert_eq!(b2.positive_roots[b2.highest_short_root].simple, vec![1, 1]);
        assert_eq!(b2.positive_roots[b2.highest_short_root].coroot, vec![2, 1]);

        let g2 = rs("G2");
        assert_eq!(g2.positive_roots[g2.highest_root].simple, vec![3, 2]);
        assert_eq!(g2.positive_roots[g2.highest_short_root].simple, vec![2, 1]);
        assert_eq!(g2.positive_roots[g2.highest_short_root].coroot, vec![2, 3]);
    }

    #[test]
    fn two_rho_is_sum_of_positive_roots() {
        for label in ["A1", "A2", "A3", "B2", "B3", "G2"] {
            let r = rs(label);
            let mut sum = vec![0i64; r.rank];
            for root in &r.positive_roots {
                for i in 0..r.rank {
                    sum[i] += root.fw[i];
                }
            }
            assert_eq!(sum, vec![2; r.rank], "{label}");
        }
    }

    #[test]
    fn weyl_group_orders() {
        let caps = Caps::default();
        for (label, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12)]
        {
            let r = rs(label);
            let w = r.weyl_group(&caps).unwrap();
            assert_eq!(w.len(), order, "{label}");
            // identity has length 0, sign multiplicativity on a sample
            assert_eq!(w[0].length, 0);
            for el in &w {
                assert_eq!(el.sign as i64, el.mat.det());
            }
        }
    }

    #[test]
    fn lengths_match_bfs_depth_and_inversions() {
        let caps = Caps::default();
        for label in ["A2", "B2", "G2", "A3"] {
            let r = rs(label);
            for el in r.weyl_group(&caps).unwrap() {
                assert_eq!(el.length, r.inversion_count(&el.mat), "{label}");
            }
        }
    }

    #[test]
    fn elements_permute_roots() {
        let caps = Caps::default();
        for label in ["A2", "B2", "G2"] {
            let r = rs(label);
            for el in r.weyl_group(&caps).unwrap() {
                for i in 0..r.num_positive_roots() {
                    assert!(r.root_image(&el.mat, i).is_some(), "{label}");
                }
            }
        }
    }

    #[test]
    fn pairings() {
        let a2 = rs("A2");
        let rho = a2.rho();
        for i in 0..2 {
            let mut co = vec![0; 2];
            co[i] = 1;
            assert_eq!(a2.pairing(&rho, &co), rat(1));
        }
        let theta_co = &a2.positive_roots[a2.highest_root].coroot;
        let omega1 = Weight::from_i64(&[1, 0]);
        assert_eq!(a2.pairing(&omega1, theta_co), rat(1));
        let omega2_minus = Weight::from_i64(&[0, 0]);
        assert_eq!(a2.pairing(&omega2_minus, theta_co), rat(0));
    }

    #[test]
    fn dominance_and_alcove() {
        let a1 = rs("A1");
        let w3 = Weight::from_i64(&[3]);
        assert!(a1.is_dominant(&w3));
        assert!(a1.is_regular(&w3));
        assert!(a1.in_lowest_alcove(&w3, 5));
        assert!(!a1.in_lowest_alcove(&Weight::from_i64(&[4]), 5));
        assert!(!a1.is_regular(&Weight::from_i64(&[0])));

        let a2 = rs("A2");
        assert!(a2.in_lowest_alcove(&Weight::zero(2), 7));
        assert_eq!(a2.lowest_alcove_weights(7).len(), 15);
    }

    #[test]
    fn reflection_matrices() {
        let b2 = rs("B2");
        let s1 = b2.simple_reflection_mat(0);
        let s2 = b2.simple_reflection_mat(1);
        assert_eq!(s1.mul(&s1), Mat::identity(2));
        assert_eq!(s2.mul(&s2), Mat::identity(2));
        assert_eq!(s1.det(), -1);
        // s1 s2 has order 4 in B2
        let r = s1.mul(&s2);
        let r2 = r.mul(&r);
        let r4 = r2.mul(&r2);
        assert_ne!(r2, Mat::identity(2));
        assert_eq!(r4, Mat::identity(2));

        // reflection in the highest root fixes its wall: s_theta(theta) = -theta
        let a2 = rs("A2");
        let st = a2.reflection_mat(a2.highest_root);
        let theta_fw = &a2.positive_roots[a2.highest_root].fw;
        let img = st.apply_int(theta_fw);
        assert!(img.iter().zip(theta_fw).all(|(&a, &b)| a == -b));
    }

    #[test]
    fn mat_inverse_roundtrip() {
        let caps = Caps::default();
        for label in ["A3", "B3", "G2"] {
            let r = rs(label);
            for el in r.weyl_group(&caps).unwrap() {
                assert_eq!(el.mat.mul(&el.mat.inverse()), Mat::identity(r.rank));
            }
        }
    }
}

//! Root systems of gl(N|2m), osp(2n+1|2m), osp(2n|2m) and spo(2n|2m) in the
//! minimal symmetric grading.
//!
//! Weights are integer vectors over the ordered basis `(δ_1.., ε_1..)`. For gl
//! there are `2m` δ's, for the orthosymplectic families `m` of them. The basis
//! vector `v_i` of the natural module `V` (1-based) has weight
//!
//! * gl: `δ_i` for `i ≤ m`, `ε_{i-m}` up to `m+N`, then `δ_{i-N}`;
//! * osp/spo: `δ_i` for `i ≤ m`, `ε_{i-m}` up to `m+n`, `0` in the middle for
//!   odd `N`, and `wt(v_{i'}) = -wt(v_i)` with `i' = N + 2m + 1 - i`.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::gradedlin::Grading;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("weight has {got} coordinates, expected {want}")]
    Dimension { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "OSP-odd")]
    OspOdd,
    #[serde(rename = "OSP-even")]
    OspEven,
    #[serde(rename = "SPO")]
    Spo,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "gl" => Some(Family::Gl),
            "osp-odd" | "ospodd" => Some(Family::OspOdd),
            "osp-even" | "ospeven" => Some(Family::OspEven),
            "spo" => Some(Family::Spo),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "GL",
            Family::OspOdd => "OSP-odd",
            Family::OspEven => "OSP-even",
            Family::Spo => "SPO",
        }
    }

    pub fn is_ortho(self) -> bool {
        self != Family::Gl
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Weight = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    family: Family,
    bn: usize,
    bm: usize,
    n_delta: usize,
    n_eps: usize,
    simple: Vec<Weight>,
    positive: Vec<Weight>,
    vweights: Vec<Weight>,
    grading: Grading,
}

impl RootSystem {
    /// `bn` is N for gl and the bold n otherwise; `bm` is the bold m.
    pub fn new(family: Family, bn: usize, bm: usize) -> Result<Self, RootError> {
        if bm == 0 {
            return Err(RootError::Unsupported("bold m must be at least 1".into()));
        }
        match family {
            Family::Gl | Family::OspEven | Family::Spo if bn == 0 => {
                return Err(RootError::Unsupported(format!("{family} needs n ≥ 1")));
            }
            _ => {}
        }
        let (n_delta, n_eps) = match family {
            Family::Gl => (2 * bm, bn),
            _ => (bm, bn),
        };
        let bdim = n_delta + n_eps;
        let unit = |k: usize| {
            let mut w = vec![0; bdim];
            w[k] = 1;
            w
        };
        let delta = |i: usize| unit(i);
        let eps = |j: usize| unit(n_delta + j);
        let mut vweights = Vec::new();
        match family {
            Family::Gl => {
                for i in 0..bm {
                    vweights.push(delta(i));
                }
                for j in 0..bn {
                    vweights.push(eps(j));
                }
                for i in bm..2 * bm {
                    vweights.push(delta(i));
                }
            }
            _ => {
                for i in 0..bm {
                    vweights.push(delta(i));
                }
                for j in 0..bn {
                    vweights.push(eps(j));
                }
                if family == Family::OspOdd {
                    vweights.push(vec![0; bdim]);
                }
                let half: Vec<Weight> = vweights[..bm + bn].to_vec();
                for w in half.iter().rev() {
                    vweights.push(neg(w));
                }
            }
        }
        let d = vweights.len();
        let parity = (0..d)
            .map(|i| match family {
                Family::Gl => u8::from(i < bm || i >= bn + bm),
                _ => u8::from(i < bm || i >= d - bm),
            })
            .collect();
        let grading = Grading::new(parity);

        let mut simple = Vec::new();
        match family {
            Family::Gl => {
                for i in 0..d - 1 {
                    simple.push(sub(&vweights[i], &vweights[i + 1]));
                }
            }
            _ => {
                let r = bm + bn;
                for i in 0..r - 1 {
                    simple.push(sub(&vweights[i], &vweights[i + 1]));
                }
                simple.push(match family {
                    Family::OspOdd => vweights[r - 1].clone(),
                    Family::OspEven => add(&vweights[r - 2], &vweights[r - 1]),
                    Family::Spo => scale(&vweights[r - 1], 2),
                    Family::Gl => unreachable!(),
                });
            }
        }

        let mut positive = Vec::new();
        match family {
            Family::Gl => {
                for a in 0..d {
                    for b in a + 1..d {
                        positive.push(sub(&vweights[a], &vweights[b]));
                    }
                }
            }
            _ => {
                let m = bm;
                let n = bn;
                // even roots, then odd roots
                for i in 0..m {
                    for j in i + 1..m {
                        positive.push(sub(&delta(i), &delta(j)));
                        positive.push(add(&delta(i), &delta(j)));
                    }
                }
                if family != Family::Spo {
                    for i in 0..m {
                        positive.push(scale(&delta(i), 2));
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        positive.push(sub(&eps(i), &eps(j)));
                        positive.push(add(&eps(i), &eps(j)));
                    }
                }
                match family {
                    Family::OspOdd => (0..n).for_each(|i| positive.push(eps(i))),
                    Family::Spo => (0..n).for_each(|i| positive.push(scale(&eps(i), 2))),
                    _ => {}
                }
                for i in 0..m {
                    for j in 0..n {
                        positive.push(sub(&delta(i), &eps(j)));
                        positive.push(add(&delta(i), &eps(j)));
                    }
                }
                if family == Family::OspOdd {
                    (0..m).for_each(|i| positive.push(delta(i)));
                }
            }
        }

        Ok(RootSystem {
            family,
            bn,
            bm,
            n_delta,
            n_eps,
            simple,
            positive,
            vweights,
            grading,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn bn(&self) -> usize {
        self.bn
    }

    pub fn bm(&self) -> usize {
        self.bm
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn basis_dim(&self) -> usize {
        self.n_delta + self.n_eps
    }

    /// Dimension of the natural module, `N + 2m`.
    pub fn n_eps(&self) -> usize {
        self.n_eps
    }

    pub fn dim_v(&self) -> usize {
        self.vweights.len()
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Simple root `α_{i+1}` (0-based index).
    pub fn simple(&self, i: usize) -> &Weight {
        &self.simple[i]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    /// Weight of the basis vector `v_{i+1}` (0-based index).
    pub fn vweight(&self, i: usize) -> &Weight {
        &self.vweights[i]
    }

    /// `i'` for 0-based indices.
    pub fn prime(&self, i: usize) -> usize {
        self.dim_v() - 1 - i
    }

    /// Middle index of V for odd N in the orthosymplectic case.
    pub fn middle(&self) -> Option<usize> {
        (self.family == Family::OspOdd).then(|| self.bm + self.bn)
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        assert_eq!(a.len(), self.basis_dim());
        assert_eq!(b.len(), self.basis_dim());
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(k, (x, y))| if k < self.n_delta { -x * y } else { x * y })
            .sum()
    }

    pub fn checked_pair(&self, a: &[i64], b: &[i64]) -> Result<i64, RootError> {
        for w in [a, b] {
            if w.len() != self.basis_dim() {
                return Err(RootError::Dimension {
                    got: w.len(),
                    want: self.basis_dim(),
                });
            }
        }
        Ok(self.pair(a, b))
    }

    /// Parity of a root: odd iff the δ-coordinates have odd total size.
    pub fn root_parity(&self, w: &[i64]) -> u8 {
        (w[..self.n_delta].iter().map(|x| x.abs()).sum::<i64>() % 2) as u8
    }

    pub fn simple_parity(&self, i: usize) -> u8 {
        self.root_parity(&self.simple[i])
    }

    pub fn is_grey(&self, i: usize) -> bool {
        self.simple_parity(i) == 1 && self.pair(&self.simple[i], &self.simple[i]) == 0
    }

    pub fn is_black_odd(&self, i: usize) -> bool {
        self.simple_parity(i) == 1 && self.pair(&self.simple[i], &self.simple[i]) != 0
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.pair(&self.simple[i], &self.simple[j])).collect())
            .collect()
    }

    /// The matrix unit `e_ab` (0-based) carrying the leading term of `π(e_i)`,
    /// i.e. `wt(v_a) - wt(v_b) = α_i`.
    pub fn principal_edge(&self, i: usize) -> (usize, usize) {
        let r = self.rank();
        match self.family {
            Family::Gl => (i, i + 1),
            _ if i + 1 < r => (i, i + 1),
            Family::OspOdd | Family::Spo => (r - 1, r),
            Family::OspEven => (r - 2, r),
        }
    }

    /// Coordinates of a weight in the basis of simple roots, if it lies in their span.
    pub fn simple_coords(&self, w: &[i64]) -> Option<Vec<BigRational>> {
        let cols: Vec<Vec<BigRational>> = self
            .simple
            .iter()
            .map(|s| s.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let rhs: Vec<BigRational> = w.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        crate::linalg::solve_columns(&cols, &rhs)
    }

    /// Integer coordinates over Π, when `w` is an integral combination of simple roots.
    pub fn simple_coords_int(&self, w: &[i64]) -> Option<Vec<i64>> {
        let c = self.simple_coords(w)?;
        c.iter()
            .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
            .collect()
    }

    pub fn is_root(&self, w: &[i64]) -> bool {
        let n = neg(w);
        self.positive.iter().any(|p| p.as_slice() == w || *p == n)
    }

    pub fn is_positive_root(&self, w: &[i64]) -> bool {
        self.positive.iter().any(|p| p.as_slice() == w)
    }

    /// `q_α` exponent: `1` if `(α,α) = 0`, else `(α,α)/2` (may be half-integral).
    pub fn q_alpha_exponent(&self, w: &[i64]) -> BigRational {
        let n = self.pair(w, w);
        if n == 0 {
            BigRational::from_integer(1.into())
        } else {
            BigRational::new(n.into(), 2.into())
        }
    }

    pub fn basis_label(&self, k: usize) -> String {
        if k < self.n_delta {
            format!("δ{}", k + 1)
        } else {
            format!("ε{}", k - self.n_delta + 1)
        }
    }

    /// Text form of a weight, e.g. `δ1-ε1` or `2ε1`.
    pub fn label(&self, w: &[i64]) -> String {
        let mut s = String::new();
        for (k, &c) in w.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&self.basis_label(k));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Gl => format!("gl({}|{})", self.bn, 2 * self.bm),
            Family::OspOdd => format!("osp({}|{})", 2 * self.bn + 1, 2 * self.bm),
            Family::OspEven => format!("osp({}|{})", 2 * self.bn, 2 * self.bm),
            Family::Spo => format!("spo({}|{})", 2 * self.bn, 2 * self.bm),
        }
    }

    /// Parses `gl(1|2)`, `OSP(3|2)`, `spo(2|4)` and the like.
    pub fn from_name(s: &str) -> Result<Self, RootError> {
        let bad = || RootError::Unsupported(format!("cannot parse algebra name {s:?}"));
        let s = s.trim().to_ascii_lowercase();
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let (a, b) = rest.trim_end_matches(')').split_once('|').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if b % 2 == 1 {
            return Err(bad());
        }
        let (family, bn) = match head.trim() {
            "gl" => (Family::Gl, a),
            "osp" if a % 2 == 1 => (Family::OspOdd, a / 2),
            "osp" => (Family::OspEven, a / 2),
            "spo" if a.is_multiple_of(2) => (Family::Spo, a / 2),
            _ => return Err(bad()),
        };
        RootSystem::new(family, bn, b / 2)
    }

    /// Every supported instance with `dim V ≤ max_dim`, in a fixed order.
    pub fn instances(max_dim: usize) -> Vec<RootSystem> {
        let mut out = Vec::new();
        for family in [Family::Gl, Family::OspOdd, Family::OspEven, Family::Spo] {
            for bm in 1..=max_dim / 2 {
                for bn in 0..=max_dim {
                    if let Ok(rs) = RootSystem::new(family, bn, bm) {
                        if rs.dim_v() <= max_dim {
                            out.push(rs);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let roots = |v: &[Weight]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|w| {
                    serde_json::json!({
                        "label": self.label(w),
                        "coords": w,
                        "parity": self.root_parity(w),
                    })
                })
                .collect()
        };
        let basis: Vec<String> = (0..self.basis_dim()).map(|k| self.basis_label(k)).collect();
        serde_json::json!({
            "algebra": self.name(),
            "family": self.family,
            "bn": self.bn,
            "bm": self.bm,
            "rank": self.rank(),
            "basis": basis,
            "simple_roots": roots(&self.simple),
            "positive_roots": roots(&self.positive),
            "gram": self.gram(),
            "v_parities": self.grading.parities(),
            "v_weights": self.vweights.iter().map(|w| self.label(w)).collect::<Vec<_>>(),
        })
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Weight {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[i64], k: i64) -> Weight {
    a.iter().map(|x| k * x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|x| *x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_1_2_simple_roots_are_grey() {
        let rs = RootSystem::new(Family::Gl, 1, 1).unwrap();
        let labels: Vec<String> = rs.simple_roots().iter().map(|w| rs.label(w)).collect();
        assert_eq!(labels, ["δ1-ε1", "-δ2+ε1"]);
        assert!(rs.is_grey(0) && rs.is_grey(1));
        assert_eq!(rs.gram(), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn osp_1_2_has_black_odd_root() {
        let rs = RootSystem::new(Family::OspOdd, 0, 1).unwrap();
        assert_eq!(rs.rank(), 1);
        assert_eq!(rs.label(rs.simple(0)), "δ1");
        assert!(rs.is_black_odd(0));
        assert_eq!(rs.gram(), vec![vec![-1]]);
        assert_eq!(rs.grading().parities(), &[1, 0, 1]);
    }

    #[test]
    fn spo_2_2_parities() {
        let rs = RootSystem::new(Family::Spo, 1, 1).unwrap();
        let labels: Vec<String> = rs.simple_roots().iter().map(|w| rs.label(w)).collect();
        assert_eq!(labels, ["δ1-ε1", "2ε1"]);
        assert_eq!((rs.simple_parity(0), rs.simple_parity(1)), (1, 0));
    }

    #[test]
    fn osp_2_2m_special_tail() {
        let rs = RootSystem::new(Family::OspEven, 1, 2).unwrap();
        let labels: Vec<String> = rs.simple_roots().iter().map(|w| rs.label(w)).collect();
        assert_eq!(labels, ["δ1-δ2", "δ2-ε1", "δ2+ε1"]);
        assert!(rs.is_grey(1) && rs.is_grey(2));
    }

    #[test]
    fn pairing_examples() {
        let rs = RootSystem::new(Family::Gl, 2, 1).unwrap();
        let a = rs.simple(0).clone();
        assert_eq!(rs.pair(&a, &a), 0);
        let e1 = rs.vweight(1).clone();
        let e2 = rs.vweight(2).clone();
        let d1 = rs.vweight(0).clone();
        assert_eq!(rs.pair(&e1, &e1), 1);
        assert_eq!(rs.pair(&d1, &e2), 0);
        assert!(rs.checked_pair(&[1], &e1).is_err());
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(RootSystem::new(Family::Gl, 0, 1).is_err());
        assert!(RootSystem::new(Family::OspEven, 0, 1).is_err());
        assert!(RootSystem::new(Family::Spo, 1, 0).is_err());
        assert!(RootSystem::new(Family::OspOdd, 0, 1).is_ok());
    }
}

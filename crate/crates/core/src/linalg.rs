//! Dense exact linear algebra over Q and Q(q).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qring::ScalarQ;

/// The field operations Gaussian elimination needs.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division by a nonzero element.
    fn div(&self, o: &Self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for ScalarQ {
    fn zero() -> Self {
        ScalarQ::zero()
    }
    fn one() -> Self {
        ScalarQ::one()
    }
    fn is_zero(&self) -> bool {
        ScalarQ::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.checked_div(o).expect("pivot is nonzero")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    if !m[r][k].is_zero() {
                        let v = m[i][k].sub(&f.mul(&m[r][k]));
                        m[i][k] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solution set of `A x = b`: one particular solution and a nullspace basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub nullspace: Vec<Vec<F>>,
}

/// Solves `A x = b` for an `r × c` matrix given by rows; `None` if inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Solution<F>> {
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = F::zero().sub(&aug[r][f]);
            }
            v
        })
        .collect();
    Some(Solution { particular, nullspace })
}

/// Coordinates of `rhs` in the span of linearly independent `cols`.
pub fn solve_columns(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let rows: Vec<Vec<BigRational>> = (0..rhs.len())
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let sol = solve(&rows, rhs, n)?;
    Some(sol.particular)
}

/// Incrementally maintained row echelon basis of a subspace of `F^n`.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new() }
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (k, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v[k] = v[k].sub(&f.mul(x));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one().div(&r[p]);
        let r: Vec<F> = r.iter().map(|x| x.mul(&inv)).collect();
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn solves_underdetermined_system() {
        let a = vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let b = vec![q(2), q(3)];
        let s = solve(&a, &b, 3).unwrap();
        assert_eq!(s.particular, vec![q(2), q(0), q(3)]);
        assert_eq!(s.nullspace, vec![vec![q(-1), q(1), q(0)]]);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)], 2).is_none());
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut e = EchelonBasis::new();
        assert!(e.insert(&[q(1), q(2)]));
        assert!(!e.insert(&[q(2), q(4)]));
        assert!(e.insert(&[q(0), q(1)]));
        assert_eq!(e.dim(), 2);
    }
}

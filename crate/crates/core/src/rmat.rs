//! R-matrices on `V ⊗ V` and the Yang–Baxter / braid checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::gradedlin::{graded_permutation, GradedOp, LinError};
use crate::qring::ScalarQ;
use crate::report::{from_difference, Instance, VerificationReport};
use crate::rootdata::{Family, RootError, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoKappa {
    pub rho: Vec<BigRational>,
    pub kappa: Vec<i64>,
}

fn half(twice: i64) -> BigRational {
    BigRational::new(BigInt::from(twice), BigInt::from(2))
}

/// `ρ` and `κ` for an orthosymplectic family (0-based positions).
pub fn rho_kappa(rs: &RootSystem) -> Result<RhoKappa, RootError> {
    let (bn, bm) = (rs.bn() as i64, rs.bm() as i64);
    // values are stored doubled until the end
    let mut twice: Vec<i64> = Vec::new();
    match rs.family() {
        Family::Gl => return Err(RootError::Unsupported("gl has no ρ/κ table".into())),
        Family::OspOdd => {
            let k2 = 2 * bn + 1;
            twice.extend((1..=bm).rev().map(|t| k2 - 2 * t));
            twice.extend((0..bn).map(|t| k2 - 2 - 2 * t));
            twice.push(0);
        }
        Family::OspEven => {
            twice.extend((1..=bm).rev().map(|t| 2 * (bn - t)));
            twice.extend((0..bn).map(|t| 2 * (bn - 1 - t)));
        }
        Family::Spo => {
            twice.extend((0..bm).map(|t| 2 * (bn - bm + 1 + t)));
            twice.extend((0..bn).map(|t| 2 * (bn - t)));
        }
    }
    let head = twice.len() - usize::from(rs.family() == Family::OspOdd);
    let tail: Vec<i64> = twice[..head].iter().rev().map(|x| -x).collect();
    twice.extend(tail);
    let d = rs.dim_v();
    debug_assert_eq!(twice.len(), d);
    let m = rs.bm();
    let kappa = (0..d)
        .map(|i| match rs.family() {
            Family::Spo if i >= m && i < d - m => {
                if i < d / 2 {
                    1
                } else {
                    -1
                }
            }
            Family::Spo => -1,
            _ if i < m => -1,
            _ => 1,
        })
        .collect();
    Ok(RhoKappa {
        rho: twice.into_iter().map(half).collect(),
        kappa,
    })
}

fn sign(odd: bool) -> ScalarQ {
    if odd {
        -ScalarQ::one()
    } else {
        ScalarQ::one()
    }
}

/// `ω = q - q^{-1}`.
pub fn omega() -> ScalarQ {
    ScalarQ::q() - ScalarQ::q_pow(-1)
}

/// Abstract coefficients of `R` in the basis `e_ij ⊗ e_kl` (0-based).
///
/// For osp(2n+1|2m) the exponent `ρ_i - ρ_j` is a half-integer whenever exactly
/// one index is the middle one. Those terms are conjugated by `D ⊗ D` with
/// `D = diag(1, …, q^{1/4}, …, 1)`, which shifts the exponent by `±1/2` and
/// leaves the Yang–Baxter, braid and reflection equations intact for every
/// K-matrix without off-diagonal middle entries.
pub fn r_expansion(rs: &RootSystem) -> BTreeMap<[usize; 4], ScalarQ> {
    let rk = rs.family().is_ortho().then(|| rho_kappa(rs).expect("orthosymplectic"));
    r_expansion_with(rs, rk.as_ref())
}

/// [`r_expansion`] with an explicit `ρ`/`κ` table (`None` gives the gl formula).
pub fn r_expansion_with(rs: &RootSystem, rk: Option<&RhoKappa>) -> BTreeMap<[usize; 4], ScalarQ> {
    let g = rs.grading();
    let d = rs.dim_v();
    let p = |i: usize| i64::from(g.p(i));
    let w = omega();
    let mut exp: BTreeMap<[usize; 4], ScalarQ> = BTreeMap::new();
    let mut add = |key: [usize; 4], c: ScalarQ| {
        let e = exp.entry(key).or_insert_with(ScalarQ::zero);
        *e = &*e + &c;
    };
    let ortho = rk.is_some();
    for i in 0..d {
        for j in 0..d {
            let x = if ortho {
                let s = if p(j) == 1 { -1 } else { 1 };
                s * (i64::from(i == j) - i64::from(i == rs.prime(j)))
            } else {
                let s = if p(i) == 1 { -1 } else { 1 };
                s * i64::from(i == j)
            };
            add([i, i, j, j], ScalarQ::q_pow(x));
        }
    }
    let mid = rs.middle();
    for i in 0..d {
        for j in 0..i {
            add([i, j, j, i], &w * &sign(p(j) == 1));
            if let Some(rk) = rk {
                let mut ex = &rk.rho[i] - &rk.rho[j];
                if Some(i) == mid {
                    ex += half(1);
                }
                if Some(j) == mid {
                    ex -= half(1);
                }
                assert!(ex.is_integer(), "non-integral R exponent after gauge");
                let ex: i64 = ex.to_integer().try_into().expect("small exponent");
                let s = p(i) + p(j) + p(i) * p(j) + 1;
                let c = &w * &sign(s % 2 == 1) * ScalarQ::from_int(rk.kappa[i] * rk.kappa[j]) * ScalarQ::q_pow(ex);
                add([i, j, rs.prime(i), rs.prime(j)], c);
            }
        }
    }
    exp.retain(|_, c| !c.is_zero());
    exp
}

pub fn build_r(rs: &RootSystem) -> GradedOp {
    GradedOp::from_expansion(rs.grading(), &r_expansion(rs))
}

/// Note attached to reports that depend on the gauge in [`r_expansion`].
pub fn gauge_note(rs: &RootSystem) -> Option<String> {
    (rs.family() == Family::OspOdd)
        .then(|| "R conjugated by diag(..., q^(1/4) at the middle index, ...) to stay in Q(q)".to_string())
}

/// `S = P R`.
pub fn braid_operator(r: &GradedOp) -> Result<GradedOp, LinError> {
    graded_permutation(r.grading()).compose(r)
}

fn diff(lhs: &GradedOp, rhs: &GradedOp) -> Option<(String, String, String)> {
    lhs.mat().first_difference(rhs.mat()).map(|(r, c, a, b)| {
        (
            format!("row {} col {}", lhs.index_label(r), lhs.index_label(c)),
            a.to_string(),
            b.to_string(),
        )
    })
}

/// `R12 R13 R23 = R23 R13 R12` on `V^{⊗3}`.
pub fn check_ybe(r: &GradedOp, inst: Instance) -> VerificationReport {
    let run = || -> Result<_, LinError> {
        let r12 = r.lift3((1, 2))?;
        let r13 = r.lift3((1, 3))?;
        let r23 = r.lift3((2, 3))?;
        let lhs = GradedOp::chain(&[&r12, &r13, &r23])?;
        let rhs = GradedOp::chain(&[&r23, &r13, &r12])?;
        Ok(diff(&lhs, &rhs))
    };
    match run() {
        Ok(d) => from_difference("ybe", inst, d),
        Err(e) => VerificationReport::precondition("ybe", inst, e.to_string()),
    }
}

/// `S12 S23 S12 = S23 S12 S23` for `S = P R`.
pub fn check_braid(r: &GradedOp, inst: Instance) -> VerificationReport {
    let run = || -> Result<_, LinError> {
        let s = braid_operator(r)?;
        let s12 = s.lift3((1, 2))?;
        let s23 = s.lift3((2, 3))?;
        let lhs = GradedOp::chain(&[&s12, &s23, &s12])?;
        let rhs = GradedOp::chain(&[&s23, &s12, &s23])?;
        Ok(diff(&lhs, &rhs))
    };
    match run() {
        Ok(d) => from_difference("braid", inst, d),
        Err(e) => VerificationReport::precondition("braid", inst, e.to_string()),
    }
}

/// YBE report for the R-matrix of `rs`, with the gauge note when relevant.
pub fn verify_ybe(rs: &RootSystem) -> VerificationReport {
    let mut rep = check_ybe(&build_r(rs), Instance::of(rs));
    rep.notes.extend(gauge_note(rs));
    rep
}

pub fn verify_braid(rs: &RootSystem) -> VerificationReport {
    let mut rep = check_braid(&build_r(rs), Instance::of(rs));
    rep.notes.extend(gauge_note(rs));
    rep
}

/// `R - Σ q^{…} e_ii ⊗ e_jj` vanishes at `q = 1`.
pub fn classical_limit_is_trivial(rs: &RootSystem) -> bool {
    let one = BigRational::from_integer(1.into());
    r_expansion(rs).iter().all(|(&[i, j, k, l], c)| {
        let v = c.eval(&one).expect("no pole at 1");
        if i == j && k == l {
            v == one
        } else {
            v.is_zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rho_kappa_tables() {
        let rs = RootSystem::new(Family::OspOdd, 0, 1).unwrap();
        let rk = rho_kappa(&rs).unwrap();
        assert_eq!(rk.rho, vec![rat(-1, 2), rat(0, 1), rat(1, 2)]);
        assert_eq!(rk.kappa, vec![-1, 1, 1]);

        let rs = RootSystem::new(Family::OspEven, 1, 1).unwrap();
        let rk = rho_kappa(&rs).unwrap();
        assert!(rk.rho.iter().all(Zero::is_zero));
        assert_eq!(rk.kappa, vec![-1, 1, 1, 1]);

        let rs = RootSystem::new(Family::Spo, 1, 1).unwrap();
        let rk = rho_kappa(&rs).unwrap();
        assert_eq!(rk.rho, vec![rat(1, 1), rat(1, 1), rat(-1, 1), rat(-1, 1)]);
        assert_eq!(rk.kappa, vec![-1, 1, -1, -1]);

        // osp(5|4): k = 5/2
        let rs = RootSystem::new(Family::OspOdd, 2, 2).unwrap();
        let rk = rho_kappa(&rs).unwrap();
        let want: Vec<_> = [1, 3, 3, 1, 0, -1, -3, -3, -1].iter().map(|&x| rat(x, 2)).collect();
        assert_eq!(rk.rho, want);

        assert!(rho_kappa(&RootSystem::new(Family::Gl, 1, 1).unwrap()).is_err());
    }

    #[test]
    fn gl_1_2_entries() {
        let rs = RootSystem::new(Family::Gl, 1, 1).unwrap();
        let exp = r_expansion(&rs);
        assert_eq!(exp[&[0, 0, 0, 0]], ScalarQ::q_pow(-1));
        assert_eq!(exp[&[1, 0, 0, 1]], -omega());
        assert_eq!(exp[&[0, 0, 1, 1]], ScalarQ::one());
        assert!(classical_limit_is_trivial(&rs));
    }

    #[test]
    fn identity_passes_and_perturbations_fail() {
        let rs = RootSystem::new(Family::Gl, 1, 1).unwrap();
        let id = GradedOp::identity(rs.grading(), 2);
        assert!(check_ybe(&id, Instance::of(&rs)).is_pass());
        assert!(check_braid(&id, Instance::of(&rs)).is_pass());

        let mut exp = r_expansion(&rs);
        let c = exp.get_mut(&[1, 0, 0, 1]).unwrap();
        *c = -c.clone();
        let bad = GradedOp::from_expansion(rs.grading(), &exp);
        assert!(!check_ybe(&bad, Instance::of(&rs)).is_pass());

        let mut exp = r_expansion(&rs);
        let c = exp.get_mut(&[0, 0, 1, 1]).unwrap();
        *c = &*c + &omega();
        let bad = GradedOp::from_expansion(rs.grading(), &exp);
        assert!(!check_braid(&bad, Instance::of(&rs)).is_pass());
    }

    #[test]
    fn wrong_tables_break_ybe() {
        let rs = RootSystem::new(Family::Spo, 2, 1).unwrap();
        let good = rho_kappa(&rs).unwrap();
        let mut rk = good.clone();
        rk.kappa[1] = -rk.kappa[1];
        let r = GradedOp::from_expansion(rs.grading(), &r_expansion_with(&rs, Some(&rk)));
        assert!(!check_ybe(&r, Instance::of(&rs)).is_pass());

        let mut rk = good;
        rk.rho[0] += rat(1, 1);
        rk.rho[5] -= rat(1, 1);
        let r = GradedOp::from_expansion(rs.grading(), &r_expansion_with(&rs, Some(&rk)));
        assert!(!check_ybe(&r, Instance::of(&rs)).is_pass());
    }

    #[test]
    fn r_is_even() {
        for rs in RootSystem::instances(6) {
            assert!(build_r(&rs).is_even(), "{}", rs.name());
        }
    }
}

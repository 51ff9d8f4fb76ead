//! The natural representation of U_q(g) on `C^{N|2m}` and a checker for the
//! defining relations (i), (ii), (iv), (v) inside it.
//!
//! Cartan images are built from weights, `π(q^{h_β}) = diag(q^{(β, wt v_j)})`,
//! which reproduces the printed case tables (see the `cartan_tables` test).

use crate::gradedlin::{GradedOp, LinError};
use crate::qring::ScalarQ;
use crate::report::{Instance, VerificationReport, Witness};
use crate::rootdata::{neg, Family, RootSystem, Weight};

#[derive(Debug, Clone)]
pub struct Representation {
    rs: RootSystem,
    e: Vec<GradedOp>,
    f: Vec<GradedOp>,
    k: Vec<GradedOp>,
    kinv: Vec<GradedOp>,
    zeta: Vec<GradedOp>,
    zeta_inv: Vec<GradedOp>,
}

/// One generator of U_q(g) as seen in the natural representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl Representation {
    pub fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let e = (0..r).map(|i| build_e(rs, i + 1)).collect();
        let f = (0..r).map(|i| build_f(rs, i + 1)).collect();
        let k = (0..r).map(|i| cartan(rs, rs.simple(i))).collect();
        let kinv = (0..r).map(|i| cartan(rs, &neg(rs.simple(i)))).collect();
        let (zeta, zeta_inv) = if rs.family() == Family::Gl {
            (
                (0..rs.dim_v()).map(|i| cartan(rs, rs.vweight(i))).collect(),
                (0..rs.dim_v()).map(|i| cartan(rs, &neg(rs.vweight(i)))).collect(),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        Representation {
            rs: rs.clone(),
            e,
            f,
            k,
            kinv,
            zeta,
            zeta_inv,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `π(e_i)` for the 0-based simple root index.
    pub fn e(&self, i: usize) -> &GradedOp {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &GradedOp {
        &self.f[i]
    }

    /// `π(q^{h_i})`.
    pub fn k(&self, i: usize) -> &GradedOp {
        &self.k[i]
    }

    pub fn kinv(&self, i: usize) -> &GradedOp {
        &self.kinv[i]
    }

    /// `π(q^{h_{ζ_i}})` (gl only).
    pub fn zeta(&self, i: usize) -> Option<&GradedOp> {
        self.zeta.get(i)
    }

    pub fn zeta_inv(&self, i: usize) -> Option<&GradedOp> {
        self.zeta_inv.get(i)
    }

    pub fn image(&self, g: Gen) -> &GradedOp {
        match g {
            Gen::E(i) => &self.e[i],
            Gen::F(i) => &self.f[i],
            Gen::K(i) => &self.k[i],
            Gen::KInv(i) => &self.kinv[i],
        }
    }

    /// `π(q^{h_β})` for an arbitrary weight `β`.
    pub fn cartan(&self, beta: &[i64]) -> GradedOp {
        cartan(&self.rs, beta)
    }
}

pub fn cartan(rs: &RootSystem, beta: &[i64]) -> GradedOp {
    let vals = (0..rs.dim_v())
        .map(|j| ScalarQ::q_pow(rs.pair(beta, rs.vweight(j))))
        .collect();
    GradedOp::diag(rs.grading(), vals)
}

/// Builder with 1-based indices, mirroring the printed assignments.
struct Mat1<'a> {
    rs: &'a RootSystem,
    op: GradedOp,
}

impl<'a> Mat1<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Mat1 {
            rs,
            op: GradedOp::zero(rs.grading(), 1),
        }
    }

    fn add(&mut self, c: ScalarQ, a: usize, b: usize) -> &mut Self {
        self.op.add_entry(a - 1, b - 1, &c);
        self
    }

    fn p(&self, i: usize) -> i64 {
        self.rs.grading().p(i - 1) as i64
    }

    fn pr(&self, i: usize) -> usize {
        self.rs.dim_v() + 1 - i
    }
}

fn sgn(odd: i64) -> ScalarQ {
    if odd.rem_euclid(2) == 1 {
        -ScalarQ::one()
    } else {
        ScalarQ::one()
    }
}

fn kron(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

fn build_e(rs: &RootSystem, i: usize) -> GradedOp {
    let mut m = Mat1::new(rs);
    let bm = rs.bm();
    let r = rs.rank();
    match rs.family() {
        Family::Gl => {
            m.add(ScalarQ::one(), i, i + 1);
        }
        Family::OspEven if i == r => {
            let c = ScalarQ::q_pow(-kron(i - 1, bm));
            let s = -sgn(m.p(i - 1));
            let (a, b) = (m.pr(i + 1), m.pr(i - 1));
            m.add(c, i - 1, i + 1).add(s, a, b);
        }
        Family::Spo if i == r => {
            m.add(ScalarQ::one(), i, i + 1);
        }
        _ => {
            let c = ScalarQ::q_pow(-kron(i, bm));
            let s = -sgn(m.p(i) * (m.p(i + 1) + 1));
            let (a, b) = (m.pr(i + 1), m.pr(i));
            m.add(c, i, i + 1).add(s, a, b);
        }
    }
    m.op
}

fn build_f(rs: &RootSystem, i: usize) -> GradedOp {
    let mut m = Mat1::new(rs);
    let bm = rs.bm();
    let r = rs.rank();
    let q = ScalarQ::q();
    match rs.family() {
        Family::Gl if i == bm => {
            m.add(-ScalarQ::one(), i + 1, i);
        }
        Family::Gl => {
            m.add(ScalarQ::one(), i + 1, i);
        }
        Family::OspEven if rs.bn() == 1 && i == bm + 1 => {
            let (a, b) = (m.pr(i - 1), m.pr(i + 1));
            m.add(-q, i + 1, i - 1).add(ScalarQ::one(), a, b);
        }
        _ if i == bm => {
            let (a, b) = (m.pr(i), m.pr(i + 1));
            m.add(-q, i + 1, i).add(ScalarQ::one(), a, b);
        }
        _ => {
            // transpose of every matrix unit of e_i
            let e = build_e(rs, i);
            for (a, b, c) in e.mat().entries() {
                m.op.add_entry(b, a, c);
            }
            let _ = r;
        }
    }
    m.op
}

fn first_diff(lhs: &GradedOp, rhs: &GradedOp) -> Option<(String, String, String)> {
    lhs.mat().first_difference(rhs.mat()).map(|(r, c, a, b)| {
        (
            format!("{} {}", lhs.index_label(r), lhs.index_label(c)),
            a.to_string(),
            b.to_string(),
        )
    })
}

/// Denominator `q_α - q_α^{-1}` of `[h_α]_{q_α}`.
///
/// For `(α,α) = ±1` the printed `q_α = q^{±1/2}` lies outside Q(q); the natural
/// representation realizes `(K - K^{-1})/(q - q^{-1})` there, which is what is
/// checked, and the report carries a note.
fn q_alpha_denominator(norm: i64) -> (ScalarQ, bool) {
    let d = match norm {
        -1..=1 => 1,
        _ => norm / 2,
    };
    (ScalarQ::q_pow(d) - ScalarQ::q_pow(-d), norm.abs() == 1)
}

/// `v_ij` of the Serre relation (v).
pub fn serre_degree(rs: &RootSystem, i: usize, j: usize) -> usize {
    let aii = rs.pair(rs.simple(i), rs.simple(i));
    let aij = rs.pair(rs.simple(i), rs.simple(j));
    if aii == 0 {
        if aij == 0 {
            1
        } else {
            2
        }
    } else {
        let v = 1 - 2 * aij / aii;
        assert_eq!(2 * aij % aii, 0, "non-integral Cartan entry");
        v as usize
    }
}

/// `ad_{q'}(x) y = x y - (-1)^{|x||y|} q'^{(α_x, wt y)} y x` with explicit weights.
fn ad(rs: &RootSystem, x: &GradedOp, wx: &[i64], y: &GradedOp, wy: &[i64], qsign: i64) -> Result<GradedOp, LinError> {
    let s = x.parity()? * y.parity()?;
    let c = sgn(s as i64) * ScalarQ::q_pow(qsign * rs.pair(wx, wy));
    x.compose(y)?.minus(&y.compose(x)?.scale(&c))
}

pub fn check_defining_relations(rep: &Representation) -> VerificationReport {
    let rs = &rep.rs;
    let inst = Instance::of(rs);
    let r = rs.rank();
    let id = GradedOp::identity(rs.grading(), 1);
    let mut notes = Vec::new();
    if rs.family() == Family::Gl {
        notes.push("q^{h_zeta_i} summed over all N+2m diagonal positions".to_string());
    }
    let fail = |rel: &str, d: (String, String, String), notes: &[String]| {
        let mut rep = VerificationReport::fail(
            "relations",
            inst.clone(),
            Witness {
                location: format!("{rel}: {}", d.0),
                lhs: d.1,
                rhs: d.2,
            },
        );
        rep.notes.extend(notes.iter().cloned());
        rep
    };

    // (i)
    for i in 0..r {
        let kk = rep.k[i].compose(&rep.kinv[i]).expect("same grading");
        if let Some(d) = first_diff(&kk, &id) {
            return fail(&format!("(i) K_{}K_{}^-1", i + 1, i + 1), d, &notes);
        }
        for j in 0..r {
            let a = rep.k[i].compose(&rep.k[j]).expect("same grading");
            let b = rep.k[j].compose(&rep.k[i]).expect("same grading");
            if let Some(d) = first_diff(&a, &b) {
                return fail(&format!("(i) K_{}K_{}", i + 1, j + 1), d, &notes);
            }
        }
    }
    for (z, zi) in rep.zeta.iter().zip(&rep.zeta_inv) {
        if let Some(d) = first_diff(&z.compose(zi).expect("same grading"), &id) {
            return fail("(i) zeta", d, &notes);
        }
    }

    // (ii)
    for i in 0..r {
        for j in 0..r {
            let a = rs.pair(rs.simple(i), rs.simple(j));
            for (x, sign, tag) in [(&rep.e[j], 1, "e"), (&rep.f[j], -1, "f")] {
                let lhs = GradedOp::chain(&[&rep.k[i], x, &rep.kinv[i]]).expect("same grading");
                let rhs = x.scale(&ScalarQ::q_pow(sign * a));
                if let Some(d) = first_diff(&lhs, &rhs) {
                    return fail(&format!("(ii) K_{} {tag}_{}", i + 1, j + 1), d, &notes);
                }
            }
        }
        for (z_idx, z) in rep.zeta.iter().enumerate() {
            let zi = &rep.zeta_inv[z_idx];
            let a = rs.pair(rs.vweight(z_idx), rs.simple(i));
            let lhs = GradedOp::chain(&[z, &rep.e[i], zi]).expect("same grading");
            if let Some(d) = first_diff(&lhs, &rep.e[i].scale(&ScalarQ::q_pow(a))) {
                return fail(&format!("(ii) zeta_{} e_{}", z_idx + 1, i + 1), d, &notes);
            }
        }
    }

    // (iv)
    for i in 0..r {
        for j in 0..r {
            let lhs = match rep.e[i].supercommutator(&rep.f[j]) {
                Ok(x) => x,
                Err(e) => return VerificationReport::precondition("relations", inst, e.to_string()),
            };
            let rhs = if i == j {
                let norm = rs.pair(rs.simple(i), rs.simple(i));
                let (den, half) = q_alpha_denominator(norm);
                if half {
                    let n = format!(
                        "alpha_{} has (a,a) = {norm}: q_a = q^(1/2 sign) not in Q(q); checked with q - q^-1",
                        i + 1
                    );
                    if !notes.contains(&n) {
                        notes.push(n);
                    }
                }
                let inv = den.inv().expect("q_a - q_a^-1 is nonzero");
                rep.k[i].minus(&rep.kinv[i]).expect("same grading").scale(&inv)
            } else {
                GradedOp::zero(rs.grading(), 1)
            };
            if let Some(d) = first_diff(&lhs, &rhs) {
                return fail(&format!("(iv) [e_{}, f_{}]", i + 1, j + 1), d, &notes);
            }
        }
    }

    // (v)
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let v = serre_degree(rs, i, j);
            for qs in [1, -1] {
                for (xs, wsign, tag) in [(&rep.e, 1, "e"), (&rep.f, -1, "f")] {
                    let wi: Weight = rs.simple(i).iter().map(|c| wsign * c).collect();
                    let mut wy: Weight = rs.simple(j).iter().map(|c| wsign * c).collect();
                    let mut y = xs[j].clone();
                    for _ in 0..v {
                        y = match ad(rs, &xs[i], &wi, &y, &wy, qs) {
                            Ok(y) => y,
                            Err(e) => return VerificationReport::precondition("relations", inst, e.to_string()),
                        };
                        wy = crate::rootdata::add(&wy, &wi);
                    }
                    if !y.mat().is_zero() {
                        let zero = GradedOp::zero(rs.grading(), 1);
                        let d = first_diff(&y, &zero).expect("nonzero");
                        let qname = if qs == 1 { "q" } else { "q^-1" };
                        return fail(
                            &format!("(v) (ad_{qname} {tag}_{})^{v} {tag}_{}", i + 1, j + 1),
                            d,
                            &notes,
                        );
                    }
                }
            }
        }
    }

    let mut rep = VerificationReport::pass("relations", inst);
    rep.notes = notes;
    rep
}

//! Coideal generators in the natural representation.
//!
//! Composite root vectors are nested q-commutators of `F_β = q^{h_β} f_β`.
//! The mixture parameters `c_α`, `ć_α` are found by requiring that a K-matrix
//! commutes with every generator image, `X_α` included.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::gradedlin::{GradedOp, LinError};
use crate::kmat::{KKind, KParams};
use crate::linalg;
use crate::natrep::Representation;
use crate::report::{Instance, Status, VerificationReport, Witness};
use crate::rootdata::{add, sub, Family, RootSystem, Weight};
use crate::satake::{diagram_for_kind, DecoratedDiagram, Mixture, SatakeError};
use crate::ScalarQ;

#[derive(Debug, Error)]
pub enum CoidealError {
    #[error("q-commutator of an inhomogeneous operator")]
    Inhomogeneous,
    #[error("no composite root vector catalogued for α{0} on {1}")]
    Uncataloged(usize, String),
    #[error("catalogued vector for α{index} has root {got}, expected {want}")]
    RootMismatch { index: usize, got: String, want: String },
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
}

/// The twist `q^{∓⌈i/2⌉(α,β)}` of a q-commutator: `sign` is `+1` for `q^{+i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMode {
    pub sign: i8,
    pub i: u8,
}

impl QMode {
    pub const PLAIN: QMode = QMode { sign: 1, i: 0 };
    pub const Q: QMode = QMode { sign: 1, i: 1 };
    pub const QBAR: QMode = QMode { sign: -1, i: 1 };
    pub const Q2: QMode = QMode { sign: 1, i: 2 };

    /// Exponent of q multiplying `yx` for roots with `(α, β) = pair`.
    pub fn exponent(self, pair: i64) -> i64 {
        let half = (self.i as i64 + 1) / 2;
        -(self.sign as i64) * half * pair
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.sign) {
            (0, _) => Ok(()),
            (1, 1) => f.write_str("_q"),
            (1, _) => f.write_str("_q̄"),
            (i, 1) => write!(f, "_q^{i}"),
            (i, _) => write!(f, "_q^-{i}"),
        }
    }
}

/// An operator tagged with the positive root it is attached to.
#[derive(Debug, Clone, PartialEq)]
pub struct RootOp {
    pub op: GradedOp,
    pub root: Weight,
}

/// `[x, y]_{q^{±i}} = xy − (−1)^{|x||y|} q^{∓⌈i/2⌉(wx,wy)} yx`, carrying the root `wx + wy`.
pub fn q_commutator(rs: &RootSystem, x: &RootOp, y: &RootOp, mode: QMode) -> Result<RootOp, CoidealError> {
    let px = x.op.parity().map_err(|_| CoidealError::Inhomogeneous)?;
    let py = y.op.parity().map_err(|_| CoidealError::Inhomogeneous)?;
    let mut coeff = ScalarQ::q_pow(mode.exponent(rs.pair(&x.root, &y.root)));
    if px * py == 1 {
        coeff = -coeff;
    }
    let xy = x.op.compose(&y.op)?;
    let yx = y.op.compose(&x.op)?;
    Ok(RootOp {
        op: xy.minus(&yx.scale(&coeff))?,
        root: add(&x.root, &y.root),
    })
}

/// `F_β = q^{h_β} f_β` for the simple root `β = α_{i+1}`.
pub fn simple_f(rep: &Representation, i: usize) -> Result<RootOp, CoidealError> {
    Ok(RootOp {
        op: rep.k(i).compose(rep.f(i))?,
        root: rep.root_system().simple(i).clone(),
    })
}

/// A nested q-commutator of simple `F`s; indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FExpr {
    Simple(usize),
    Comm(Box<FExpr>, Box<FExpr>, QMode),
}

impl FExpr {
    fn comm(a: FExpr, b: usize, mode: QMode) -> FExpr {
        FExpr::Comm(Box::new(a), Box::new(FExpr::Simple(b)), mode)
    }

    /// Left-nested chain `[..[[F_start, F_a]_., F_b]_., ..]`.
    fn chain(start: usize, steps: impl IntoIterator<Item = (usize, QMode)>) -> FExpr {
        steps
            .into_iter()
            .fold(FExpr::Simple(start), |acc, (j, mode)| FExpr::comm(acc, j, mode))
    }

    pub fn eval(&self, rep: &Representation) -> Result<RootOp, CoidealError> {
        match self {
            FExpr::Simple(j) => simple_f(rep, j - 1),
            FExpr::Comm(a, b, mode) => q_commutator(rep.root_system(), &a.eval(rep)?, &b.eval(rep)?, *mode),
        }
    }
}

impl fmt::Display for FExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FExpr::Simple(j) => write!(f, "F{j}"),
            FExpr::Comm(a, b, mode) => write!(f, "[{a},{b}]{mode}"),
        }
    }
}

/// The K-matrix kind and block a diagram belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case {
    pub kind: KKind,
    pub m: usize,
}

/// Recognizes the diagrams of K-matrices of kind A, B, C and A-GL.
pub fn catalog_case(d: &DecoratedDiagram) -> Option<Case> {
    let rs = d.root_system();
    let same = |kind: &str, m: usize| {
        diagram_for_kind(rs, kind, m)
            .map(|e| e.pil() == d.pil() && e.tau() == d.tau())
            .unwrap_or(false)
    };
    if rs.family() == Family::Gl {
        return (1..=rs.dim_v() / 2)
            .find(|&m| same("A", m))
            .map(|m| Case { kind: KKind::AGl, m });
    }
    let top = rs.rank();
    if let Some(m) = (1..=top).find(|&m| same("A", m)) {
        return Some(Case { kind: KKind::A, m });
    }
    if let Some(m) = (2..=top).step_by(2).find(|&m| same("B", m)) {
        return Some(Case { kind: KKind::B, m });
    }
    let c_ok = rs.family() == Family::OspEven && rs.bn() == 1 && rs.bm().is_multiple_of(2);
    (c_ok && same("C", 0)).then_some(Case { kind: KKind::C, m: 0 })
}

/// The chain for `α̃_m` of an A-shaped diagram on an orthosymplectic algebra.
fn ortho_a_chain(fam: Family, n: usize, m: usize) -> FExpr {
    let q = QMode::Q;
    let down = |to: usize| (m + 1..=to).rev().map(move |j| (j, q));
    match fam {
        Family::OspOdd => FExpr::chain(
            m,
            (m + 1..=n)
                .map(|j| (j, q))
                .chain([(n, QMode::PLAIN)])
                .chain(down(n - 1)),
        ),
        Family::OspEven => FExpr::chain(m, (m + 1..=n).map(|j| (j, q)).chain(down(n - 2))),
        _ => FExpr::chain(m, (m + 1..n).map(|j| (j, q)).chain([(n, QMode::Q2)]).chain(down(n - 1))),
    }
}

fn b_pair(i: usize) -> FExpr {
    FExpr::comm(FExpr::comm(FExpr::Simple(i), i + 1, QMode::Q), i - 1, QMode::Q)
}

/// The nested expression for `F_{α̃}` with `α = α_{i+1}` white.
pub fn composite_expr(d: &DecoratedDiagram, i: usize) -> Result<FExpr, CoidealError> {
    let rs = d.root_system();
    let t = d.tilde_root(i)?;
    if let Some(j) = (0..rs.rank()).find(|&j| *rs.simple(j) == t) {
        return Ok(FExpr::Simple(j + 1));
    }
    let uncataloged = || CoidealError::Uncataloged(i + 1, format!("{} {}", rs.name(), d.key()));
    let case = catalog_case(d).ok_or_else(uncataloged)?;
    let (fam, n, m, a) = (rs.family(), rs.rank(), case.m, i + 1);
    let q = QMode::Q;
    let e = match case.kind {
        KKind::AGl if a == m => FExpr::chain(m + 1, (m + 2..=n - m + 1).map(|j| (j, q))),
        KKind::AGl if a == n - m + 1 => FExpr::chain(m, (m + 1..=n - m).map(|j| (j, QMode::QBAR))),
        KKind::A if a == m => ortho_a_chain(fam, n, m),
        KKind::B if a < m && a % 2 == 0 => b_pair(a),
        KKind::B => match (fam, a) {
            (Family::OspOdd, _) if m == n && a == n => FExpr::comm(FExpr::Simple(n - 1), n, QMode::QBAR),
            (Family::OspEven, _) if m == n - 1 && a == n - 1 => FExpr::comm(FExpr::Simple(n), n - 2, q),
            (Family::OspEven, _) if m == n - 1 && a == n => FExpr::comm(FExpr::Simple(n - 1), n - 2, q),
            (_, _) if a == m => FExpr::comm(ortho_a_chain(fam, n, m), m - 1, q),
            _ => return Err(uncataloged()),
        },
        KKind::C if a < n - 1 && a % 2 == 0 => b_pair(a),
        KKind::C if a == n => FExpr::comm(FExpr::Simple(n), n - 2, q),
        KKind::C if a == n - 1 => FExpr::comm(FExpr::Simple(n - 1), n - 2, q),
        _ => return Err(uncataloged()),
    };
    Ok(e)
}

/// `π(F_{α̃})` for `α = α_{i+1}`, checked to carry the root `α̃`.
pub fn composite_f(d: &DecoratedDiagram, rep: &Representation, i: usize) -> Result<GradedOp, CoidealError> {
    let rs = d.root_system();
    let t = d.tilde_root(i)?;
    let v = composite_expr(d, i)?.eval(rep)?;
    if v.root != t {
        return Err(CoidealError::RootMismatch {
            index: i + 1,
            got: rs.label(&v.root),
            want: rs.label(&t),
        });
    }
    Ok(v.op)
}

/// `q^{h_{α̃} − h_α}` for `α = α_{i+1}`.
pub fn cartan_shift(d: &DecoratedDiagram, rep: &Representation, i: usize) -> GradedOp {
    let rs = d.root_system();
    rep.cartan(&sub(&d.tilde_weight(i), rs.simple(i)))
}

/// `X_α = q^{h_{α̃}−h_α} e_α + c F_{α̃} + ć (q^{h_α} − 1)`.
pub fn mixed_generator(
    d: &DecoratedDiagram,
    rep: &Representation,
    i: usize,
    mix: &Mixture,
) -> Result<GradedOp, CoidealError> {
    let (head, f, u) = generator_parts(d, rep, i)?;
    Ok(head.plus(&f.scale(&mix.c))?.plus(&u.scale(&mix.c_grave))?)
}

fn generator_parts(
    d: &DecoratedDiagram,
    rep: &Representation,
    i: usize,
) -> Result<(GradedOp, GradedOp, GradedOp), CoidealError> {
    let rs = d.root_system();
    let head = cartan_shift(d, rep, i).compose(rep.e(i))?;
    let f = composite_f(d, rep, i)?;
    let u = rep.cartan(rs.simple(i)).minus(&GradedOp::identity(rs.grading(), 1))?;
    Ok((head, f, u))
}

fn commutator(k: &GradedOp, x: &GradedOp) -> Result<GradedOp, LinError> {
    k.compose(x)?.minus(&x.compose(k)?)
}

/// First entry where `Kx ≠ xK`, as `(row, col, (Kx)_rc, (xK)_rc)` 1-based.
fn first_noncommuting(k: &GradedOp, x: &GradedOp) -> Result<Option<(usize, usize, ScalarQ, ScalarQ)>, LinError> {
    let kx = k.compose(x)?;
    let xk = x.compose(k)?;
    let diff = kx.minus(&xk)?;
    let first = diff.mat().entries().next().map(|(r, c, _)| (r, c));
    Ok(first.map(|(r, c)| (r + 1, c + 1, kx.get(r, c), xk.get(r, c))))
}

#[derive(Debug, Error)]
pub enum MixtureError {
    #[error("K does not commute with {0}")]
    Precondition(String),
    #[error("no mixture for α{0} is compatible with K")]
    Inconsistent(usize),
    #[error("the mixture for α{0} is not determined by K")]
    NonUnique(usize),
    #[error(transparent)]
    Coideal(#[from] CoidealError),
}

impl MixtureError {
    pub fn status(&self) -> Status {
        match self {
            MixtureError::Precondition(_) => Status::PreconditionFail,
            MixtureError::NonUnique(_) => Status::NonUnique,
            _ => Status::Fail,
        }
    }

    pub fn report(&self, inst: Instance) -> VerificationReport {
        VerificationReport::new("mixture", inst, self.status()).note(self.to_string())
    }
}

/// Images K must commute with before mixtures make sense.
fn fixed_images(d: &DecoratedDiagram, rep: &Representation) -> Vec<(String, GradedOp)> {
    let rs = d.root_system();
    let mut out = Vec::new();
    for &b in d.pil() {
        let j = b + 1;
        out.push((format!("e{j}"), rep.e(b).clone()));
        out.push((format!("f{j}"), rep.f(b).clone()));
        out.push((format!("q^h{j}"), rep.k(b).clone()));
        out.push((format!("q^-h{j}"), rep.kinv(b).clone()));
    }
    for i in d.white() {
        let j = i + 1;
        let w = sub(&d.tilde_weight(i), rs.simple(i));
        out.push((format!("q^(h~{j}-h{j})"), rep.cartan(&w)));
        out.push((format!("q^-(h~{j}-h{j})"), rep.cartan(&crate::rootdata::neg(&w))));
    }
    out
}

/// Solves `[K, X_α] = 0` for `(c_α, ć_α)`; `ć_α` is an unknown only where it is allowed.
pub fn solve_mixture(
    d: &DecoratedDiagram,
    rep: &Representation,
    k: &GradedOp,
) -> Result<BTreeMap<usize, Mixture>, MixtureError> {
    for (label, x) in fixed_images(d, rep) {
        if first_noncommuting(k, &x).map_err(CoidealError::from)?.is_some() {
            return Err(MixtureError::Precondition(label));
        }
    }
    let mut out = BTreeMap::new();
    for i in d.white() {
        let (head, f, u) = generator_parts(d, rep, i)?;
        let eligible = d.grave_eligible(i);
        let lin = |x: &GradedOp| commutator(k, x).map_err(CoidealError::from);
        let mut cols = vec![lin(&f)?];
        if eligible {
            cols.push(lin(&u)?);
        }
        let rhs = lin(&head)?;
        let mut rows_at = BTreeSet::new();
        for m in cols.iter().chain([&rhs]) {
            rows_at.extend(m.mat().entries().map(|(r, c, _)| (r, c)));
        }
        let a: Vec<Vec<ScalarQ>> = rows_at
            .iter()
            .map(|&(r, c)| cols.iter().map(|m| m.get(r, c)).collect())
            .collect();
        let b: Vec<ScalarQ> = rows_at.iter().map(|&(r, c)| -rhs.get(r, c)).collect();
        let sol = linalg::solve(&a, &b, cols.len()).ok_or(MixtureError::Inconsistent(i + 1))?;
        if !sol.nullspace.is_empty() {
            return Err(MixtureError::NonUnique(i + 1));
        }
        let c_grave = if eligible {
            sol.particular[1].clone()
        } else {
            ScalarQ::zero()
        };
        out.insert(
            i,
            Mixture {
                c: sol.particular[0].clone(),
                c_grave,
            },
        );
    }
    Ok(out)
}

/// Generator images of the coideal for a diagram with concrete mixtures.
#[derive(Debug, Clone)]
pub struct CoidealGenerators {
    pub diagram: DecoratedDiagram,
    pub rep: Representation,
    pub images: Vec<(String, GradedOp)>,
}

impl CoidealGenerators {
    /// Uses `d.mixtures`; missing entries count as zero.
    pub fn new(d: &DecoratedDiagram, rep: &Representation) -> Result<Self, CoidealError> {
        let mut images = fixed_images(d, rep);
        let zero = Mixture {
            c: ScalarQ::zero(),
            c_grave: ScalarQ::zero(),
        };
        for i in d.white() {
            let mix = d.mixtures.get(&i).unwrap_or(&zero);
            images.push((format!("X{}", i + 1), mixed_generator(d, rep, i, mix)?));
        }
        Ok(CoidealGenerators {
            diagram: d.clone(),
            rep: rep.clone(),
            images,
        })
    }
}

/// `[K, x] = 0` for every generator image.
pub fn check_commutant(gens: &CoidealGenerators, k: &GradedOp) -> VerificationReport {
    let inst = gens.diagram.instance();
    for (label, x) in &gens.images {
        match first_noncommuting(k, x) {
            Err(e) => return VerificationReport::precondition("commutant", inst, e.to_string()),
            Ok(None) => {}
            Ok(Some((r, c, lhs, rhs))) => {
                return VerificationReport::fail(
                    "commutant",
                    inst,
                    Witness {
                        location: format!("{label} ({r},{c})"),
                        lhs: format!("(K·{label})={lhs}"),
                        rhs: format!("({label}·K)={rhs}"),
                    },
                )
            }
        }
    }
    VerificationReport::pass("commutant", inst)
}

/// Every proven K-matrix kind and block on `rs`: A, B, C, or A-GL for gl.
pub fn k_matrix_cases(rs: &RootSystem) -> Vec<(KKind, Option<usize>)> {
    let mut out = Vec::new();
    if rs.family() == Family::Gl {
        out.extend((1..=rs.dim_v() / 2).map(|m| (KKind::AGl, Some(m))));
        return out;
    }
    for m in 1..=rs.bm() {
        out.push((KKind::A, Some(m)));
        if m % 2 == 0 {
            out.push((KKind::B, Some(m)));
        }
    }
    if rs.family() == Family::OspEven && rs.bn() == 1 && rs.bm().is_multiple_of(2) {
        out.push((KKind::C, None));
    }
    out
}

/// The diagram whose coideal a K-matrix of kind A, B, C or A-GL centralizes.
pub fn diagram_for_k(rs: &RootSystem, kind: KKind, block: Option<usize>) -> Result<DecoratedDiagram, CoidealError> {
    let name = match kind {
        KKind::AGl => "A",
        KKind::A | KKind::B | KKind::C => kind.name(),
        _ => return Err(CoidealError::Uncataloged(0, format!("{} {kind}", rs.name()))),
    };
    Ok(diagram_for_kind(rs, name, block.unwrap_or(0))?)
}

/// Solves the mixtures of `p`, compares them with the closed forms and checks
/// the commutant; returns the `mixture` and `commutant` reports.
pub fn verify_mixture(rs: &RootSystem, p: &KParams) -> Vec<VerificationReport> {
    let inst = Instance::of(rs)
        .with_kind(p.kind.name(), p.block)
        .with_params(p.digest());
    let pre = |why: String| vec![VerificationReport::precondition("mixture", inst.clone(), why)];
    let d = match diagram_for_k(rs, p.kind, p.block) {
        Ok(d) => d,
        Err(e) => return pre(e.to_string()),
    };
    let k = match crate::kmat::build_k(rs, p) {
        Ok(k) => k,
        Err(e) => return pre(e.to_string()),
    };
    let rep = Representation::new(rs);
    let mixtures = match solve_mixture(&d, &rep, &k) {
        Ok(m) => m,
        Err(e) => return vec![e.report(inst)],
    };
    let mut report = VerificationReport::pass("mixture", inst.clone());
    for (i, mix) in &mixtures {
        let printed = closed_form(rs, p, *i);
        if printed.as_ref() != Some(mix) {
            let shown = printed.map_or("none".to_string(), |m| format!("c={} c_grave={}", m.c, m.c_grave));
            report = VerificationReport::fail(
                "mixture",
                inst.clone(),
                Witness {
                    location: format!("alpha{}", i + 1),
                    lhs: format!("c={} c_grave={}", mix.c, mix.c_grave),
                    rhs: shown,
                },
            );
            break;
        }
    }
    let mut d = d;
    d.mixtures = mixtures;
    let mut commutant = match CoidealGenerators::new(&d, &rep) {
        Ok(g) => check_commutant(&g, &k),
        Err(e) => VerificationReport::precondition("commutant", d.instance(), e.to_string()),
    };
    commutant.instance = inst;
    vec![report, commutant]
}

fn pm(odd: bool) -> ScalarQ {
    if odd {
        -ScalarQ::one()
    } else {
        ScalarQ::one()
    }
}

/// The printed closed form of `(c_α, ć_α)` for `α = α_{i+1}` and a K-matrix
/// of kind A, B, C or A-GL; `None` outside the printed cases.
pub fn closed_form(rs: &RootSystem, p: &KParams, i: usize) -> Option<Mixture> {
    let q = ScalarQ::q();
    let qp = ScalarQ::q_pow;
    let x = |j: usize| p.offdiag.get(&j).cloned();
    let div = |a: ScalarQ, b: ScalarQ| a.checked_div(&b).ok();
    let lam = p.lambda.clone();
    let (fam, n, bn, bm, dd) = (rs.family(), rs.rank(), rs.bn(), rs.bm(), rs.dim_v());
    let a = i + 1;
    let plain = |c: ScalarQ| Mixture {
        c,
        c_grave: ScalarQ::zero(),
    };
    let m = p.block.unwrap_or(0);
    let delta = m == bm;
    // -y_{a+1} / (q y_a)
    let ratio = |a: usize, b: usize| div(-x(b)?, &q * &x(a)?);
    let c = match p.kind {
        KKind::AGl => {
            let mu = p.mu.clone()?;
            let nn = bn as i64;
            if 2 * m == dd && a == m {
                let y = x(m)?;
                let c = div(-(&lam * &mu * &q), &y * &y)?;
                let cg = div((&mu + &lam) * &q, (&qp(2) - &ScalarQ::one()) * y)?;
                return Some(Mixture { c, c_grave: cg });
            }
            if a < m || a > dd - m {
                // 𝐦' is the odd simple root of the second half, α_{D-𝐦}
                let s = pm(a == dd - bm);
                s * div(x(a + 1)?, x(a)?)?
            } else if a == m {
                pm(nn % 2 == 1) * div(p.mu.clone()?, x(m)?)?
            } else if a == dd - m {
                let (mi, bmi, ddi) = (m as i64, bm as i64, dd as i64);
                let (s, e) = if bm <= m {
                    (nn + 1 + delta as i64, 2 * ddi - 4 * mi - 3)
                } else {
                    (nn + 1, 2 * (nn - 2 * bmi) + 4 * mi + 3)
                };
                pm(s % 2 == 1) * qp(e) * div(lam, x(m)?)?
            } else {
                return None;
            }
        }
        KKind::A if a < m => ratio(a, a + 1)?,
        KKind::A if a == m || (fam == Family::OspEven && m == n - 1 && a == n) => {
            let (mi, ni, d) = (m as i64, n as i64, delta as i64);
            let lam_y = div(lam, x(m)?)?;
            match fam {
                Family::OspOdd if m == n && delta => -div(lam_y, q)?,
                Family::OspOdd => pm((ni - mi - d) % 2 != 0) * qp(-2 * d) * lam_y,
                Family::OspEven if m == n - 1 => -div(lam_y, qp(2))?,
                Family::OspEven => pm((ni - mi + 1 + d) % 2 != 0) * qp(-2 * d) * lam_y,
                Family::Spo => pm((ni - mi + d) % 2 != 0) * qp(-2 * d) * lam_y,
                Family::Gl => return None,
            }
        }
        KKind::B if a < m && a.is_multiple_of(2) => ratio(a - 1, a + 1)?,
        KKind::B if a == m || (fam == Family::OspEven && m == n - 1 && a == n) => {
            let (ni, d) = (n as i64, delta as i64);
            let lam_z = div(lam, x(m - 1)?)?;
            match fam {
                Family::OspOdd if m == n => div(lam_z, qp(3))?,
                Family::OspOdd => pm((ni + d) % 2 != 0) * qp(-2 * d - 1) * lam_z,
                Family::OspEven if m == n - 1 => -div(lam_z, qp(3))?,
                Family::OspEven => pm((ni + 1 + d) % 2 != 0) * qp(-2 * d - 1) * lam_z,
                Family::Spo => pm((ni + d) % 2 != 0) * qp(-2 * d - 1) * lam_z,
                Family::Gl => return None,
            }
        }
        KKind::C if a == n => ratio(n, n + 2)?,
        KKind::C if a == n - 1 => ratio(n - 2, n)?,
        KKind::C if a.is_multiple_of(2) => ratio(a - 1, a + 1)?,
        _ => return None,
    };
    Some(plain(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_modes() {
        assert_eq!(QMode::PLAIN.exponent(3), 0);
        assert_eq!(QMode::Q.exponent(-1), 1);
        assert_eq!(QMode::Q2.exponent(2), -2);
        assert_eq!(QMode::QBAR.exponent(2), 2);
    }

    #[test]
    fn chain_rendering() {
        let e = FExpr::chain(2, [(3, QMode::Q), (3, QMode::PLAIN)]);
        assert_eq!(e.to_string(), "[[F2,F3]_q,F3]");
    }
}

//! K-matrices and the reflection equations.
//!
//! Every kind is described by a [`Shape`]: diagonal entries, and blocks of
//! matrix units carrying one or two parameters tied by a constraint. Building,
//! constraint checking and parameter sampling all work off that description.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gradedlin::{GradedOp, LinError};
use crate::qring::ScalarQ;
use crate::report::{Instance, VerificationReport, Witness};
use crate::rmat::{braid_operator, build_r, gauge_note, rho_kappa, RhoKappa};
use crate::rootdata::{Family, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KError {
    #[error("kind {kind} is not defined for {algebra}: {why}")]
    Mismatch { kind: KKind, algebra: String, why: String },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("missing parameter {0}")]
    Missing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KKind {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "A-GL")]
    AGl,
    #[serde(rename = "BLACK-TAIL")]
    BlackTail,
    #[serde(rename = "WHITE-TAIL")]
    WhiteTail,
    #[serde(rename = "HALF-TAIL")]
    HalfTail,
    #[serde(rename = "WHITE-TAIL-TWISTED")]
    WhiteTailTwisted,
    #[serde(rename = "GL-LEFT")]
    GlLeft,
    #[serde(rename = "GL-RIGHT")]
    GlRight,
}

/// Which reflection equation a kind is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    /// `S K2 S K2 = K2 S K2 S`
    Untwisted,
    /// `R21 K1 R21^{t1} K2 = K2 R12^{t2} K1 R21`
    TwistedTranspose,
    /// `R21 K1 R12^{θ1} K2 = K2 R21^{θ2} K1 R12`, θ the tail flip
    TwistedTheta,
}

impl KKind {
    pub const ALL: [KKind; 10] = [
        KKind::A,
        KKind::B,
        KKind::C,
        KKind::AGl,
        KKind::BlackTail,
        KKind::WhiteTail,
        KKind::HalfTail,
        KKind::WhiteTailTwisted,
        KKind::GlLeft,
        KKind::GlRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KKind::A => "A",
            KKind::B => "B",
            KKind::C => "C",
            KKind::AGl => "A-GL",
            KKind::BlackTail => "BLACK-TAIL",
            KKind::WhiteTail => "WHITE-TAIL",
            KKind::HalfTail => "HALF-TAIL",
            KKind::WhiteTailTwisted => "WHITE-TAIL-TWISTED",
            KKind::GlLeft => "GL-LEFT",
            KKind::GlRight => "GL-RIGHT",
        }
    }

    pub fn parse(s: &str) -> Option<KKind> {
        let s = s.trim().to_ascii_uppercase().replace('_', "-");
        KKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn is_conjecture(self) -> bool {
        !matches!(self, KKind::A | KKind::B | KKind::C | KKind::AGl)
    }

    pub fn equation(self) -> Equation {
        match self {
            KKind::GlLeft | KKind::GlRight => Equation::TwistedTranspose,
            KKind::WhiteTailTwisted => Equation::TwistedTheta,
            _ => Equation::Untwisted,
        }
    }

    pub fn uses_block(self) -> bool {
        matches!(self, KKind::A | KKind::B | KKind::AGl | KKind::BlackTail)
    }
}

impl fmt::Display for KKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Alternative readings of printed formulas, kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Reading {
    #[default]
    Standard,
    /// A with the corner term `y_{i'} e_{i',i'}` instead of `y_{i'} e_{i',i}`.
    CornerDiagonal,
    /// Half-tail with the tail block at `n` exactly as printed, so `n'-1 = n`.
    HalfTailLiteral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KParams {
    pub kind: KKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    pub lambda: ScalarQ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<ScalarQ>,
    /// `y_i`, `z_i`, `x_i` keyed by their 1-based index.
    #[serde(default)]
    pub offdiag: BTreeMap<usize, ScalarQ>,
    #[serde(default)]
    pub reading: Reading,
}

impl KParams {
    pub fn new(kind: KKind, block: Option<usize>, lambda: ScalarQ) -> Self {
        KParams {
            kind,
            block,
            lambda,
            mu: None,
            offdiag: BTreeMap::new(),
            reading: Reading::Standard,
        }
    }

    pub fn with(mut self, i: usize, v: ScalarQ) -> Self {
        self.offdiag.insert(i, v);
        self
    }

    pub fn with_mu(mut self, mu: ScalarQ) -> Self {
        self.mu = Some(mu);
        self
    }

    /// Short stable text form used in report keys.
    pub fn digest(&self) -> String {
        let mut s = format!("lambda={}", self.lambda);
        if let Some(mu) = &self.mu {
            s += &format!(";mu={mu}");
        }
        for (i, v) in &self.offdiag {
            s += &format!(";{i}={v}");
        }
        if self.reading != Reading::Standard {
            s += &format!(";reading={:?}", self.reading);
        }
        s
    }
}

/// Constraint tying the parameters of one block.
#[derive(Debug, Clone, PartialEq)]
pub enum Tie {
    Free,
    /// `p_a p_b = c`
    Product(ScalarQ),
    /// `p_a p_b = p_c p_d`
    SameProduct(usize, usize),
    /// `p_a = c_a`, `p_b = c_b`
    Fixed(ScalarQ, ScalarQ),
}

/// Parameters (1-based index) with the matrix units they multiply.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub params: Vec<(usize, Vec<(usize, usize, ScalarQ)>)>,
    pub tie: Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiagVal {
    Const(ScalarQ),
    Param(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    pub diag: Vec<(usize, DiagVal)>,
    pub blocks: Vec<Block>,
    /// `μ` implied by the kind, if it is not free.
    pub mu: Option<ScalarQ>,
}

fn one() -> ScalarQ {
    ScalarQ::one()
}

fn neg1() -> ScalarQ {
    -ScalarQ::one()
}

/// `p_a (e_{a,a'} )+ p_{a'} (e_{a',a})`, 1-based.
fn y_block(rs: &RootSystem, i: usize, c: Option<ScalarQ>, diagonal_corner: bool) -> Block {
    let ip = rs.dim_v() + 1 - i;
    let back = if diagonal_corner { (ip, ip) } else { (ip, i) };
    Block {
        params: vec![(i, vec![(i, ip, one())]), (ip, vec![(back.0, back.1, one())])],
        tie: c.map_or(Tie::Free, Tie::Product),
    }
}

/// `p_i (e_{i,i'-1} - e_{i+1,i'}) + p_{i'-1} (e_{i'-1,i} - e_{i',i+1})`, 1-based.
fn z_block(rs: &RootSystem, i: usize, tie: Tie) -> Block {
    let ip = rs.dim_v() + 1 - i;
    Block {
        params: vec![
            (i, vec![(i, ip - 1, one()), (i + 1, ip, neg1())]),
            (ip - 1, vec![(ip - 1, i, one()), (ip, i + 1, neg1())]),
        ],
        tie,
    }
}

fn q_pow_rational_twice(two_x: &num_rational::BigRational) -> i64 {
    assert!(two_x.is_integer(), "2ρ is an integer");
    two_x.to_integer().try_into().expect("small exponent")
}

/// `q^{-2ρ_a}` for 1-based `a`.
fn q_minus_2rho(rk: &RhoKappa, a: usize, shift: i64) -> ScalarQ {
    let two = num_rational::BigRational::from_integer(2.into());
    let x = (&rk.rho[a - 1] + num_rational::BigRational::from_integer(shift.into())) * two;
    ScalarQ::q_pow(-q_pow_rational_twice(&x))
}

fn kappa(rk: &RhoKappa, a: usize) -> ScalarQ {
    ScalarQ::from_int(rk.kappa[a - 1])
}

/// The shape of `kind` on `rs` for given `λ` and (if free) `μ`.
pub fn shape(
    rs: &RootSystem,
    kind: KKind,
    block: Option<usize>,
    lambda: &ScalarQ,
    mu: Option<&ScalarQ>,
    reading: Reading,
) -> Result<Shape, KError> {
    let fam = rs.family();
    let d = rs.dim_v();
    let (bn, bm, n) = (rs.bn(), rs.bm(), rs.rank());
    let bad = |why: &str| KError::Mismatch {
        kind,
        algebra: rs.name(),
        why: why.to_string(),
    };
    let need_block = || block.ok_or_else(|| KError::Missing("block size m".into()));
    let free_mu = || mu.cloned().ok_or_else(|| KError::Missing("mu".into()));
    let prime = |i: usize| d + 1 - i;
    let mut diag = Vec::new();
    let mut blocks = Vec::new();
    let derived_mu;

    let ortho_rk = || rho_kappa(rs).map_err(|_| bad("needs an orthosymplectic algebra"));
    // diagonal `λ+μ` on 1..=top, `λ` strictly between top and top'
    let ab_diag = |diag: &mut Vec<(usize, DiagVal)>, top: usize, lm: &ScalarQ| {
        for i in 1..=d {
            if i <= top {
                diag.push((i, DiagVal::Const(lm.clone())));
            } else if i < prime(top) {
                diag.push((i, DiagVal::Const(lambda.clone())));
            }
        }
    };

    match kind {
        KKind::A => {
            let rk = ortho_rk()?;
            let m = need_block()?;
            if m == 0 || m > bm {
                return Err(bad("needs 1 ≤ m ≤ bold m"));
            }
            let mu = -(lambda * &kappa(&rk, m) * kappa(&rk, prime(m)) * q_minus_2rho(&rk, m, 0));
            let lm = lambda + &mu;
            ab_diag(&mut diag, m, &lm);
            let c = -(lambda * &mu);
            for i in 1..=m {
                blocks.push(y_block(rs, i, Some(c.clone()), reading == Reading::CornerDiagonal));
            }
            derived_mu = Some(mu);
        }
        KKind::B => {
            let rk = ortho_rk()?;
            let m = need_block()?;
            if m < 2 || m % 2 == 1 || m > bm {
                return Err(bad("needs even 2 ≤ m ≤ bold m"));
            }
            let mu = lambda * &kappa(&rk, m - 1) * kappa(&rk, prime(m) + 1) * q_minus_2rho(&rk, m, 1);
            let lm = lambda + &mu;
            ab_diag(&mut diag, m, &lm);
            let c = -(lambda * &mu);
            for i in (1..=m).step_by(2) {
                blocks.push(z_block(rs, i, Tie::Product(c.clone())));
            }
            derived_mu = Some(mu);
        }
        KKind::C => {
            if fam != Family::OspEven || bn != 1 || bm % 2 == 1 {
                return Err(bad("only for osp(2|4m)"));
            }
            let nn = d / 2;
            blocks.push(Block {
                params: vec![(nn, vec![(nn, nn + 1, one())]), (nn + 1, vec![(nn + 1, nn, one())])],
                tie: Tie::Free,
            });
            for i in (1..2 * nn).step_by(2).filter(|&i| i < nn) {
                blocks.push(z_block(rs, i, Tie::SameProduct(nn, nn + 1)));
            }
            derived_mu = None;
        }
        KKind::AGl => {
            if fam != Family::Gl {
                return Err(bad("only for gl"));
            }
            let m = need_block()?;
            if m == 0 || 2 * m > d {
                return Err(bad("needs 1 ≤ m ≤ dim V / 2"));
            }
            let mu = free_mu()?;
            let lm = lambda + &mu;
            ab_diag(&mut diag, m, &lm);
            let c = -(lambda * &mu);
            for i in 1..=m {
                blocks.push(y_block(rs, i, Some(c.clone()), false));
            }
            derived_mu = None;
        }
        KKind::BlackTail => {
            let rk = ortho_rk()?;
            let m = need_block()?;
            if m < bm + 2 || (m - bm) % 2 == 1 || m >= n {
                return Err(bad("needs bold m + 2 ≤ m < rank with m - bold m even"));
            }
            let mu = lambda * &kappa(&rk, m) * kappa(&rk, prime(m)) * q_minus_2rho(&rk, m + 1, 0);
            let lm = lambda + &mu;
            ab_diag(&mut diag, m, &lm);
            let c = -(lambda * &mu);
            for i in 1..=bm {
                blocks.push(y_block(rs, i, Some(c.clone()), false));
            }
            for i in (bm + 1..m).step_by(2) {
                blocks.push(z_block(rs, i, Tie::Product(c.clone())));
            }
            derived_mu = Some(mu);
        }
        KKind::WhiteTail => {
            if fam == Family::Gl || bm % 2 == 1 || bn == 0 {
                return Err(bad("needs an orthosymplectic algebra with even bold m and n ≥ 1"));
            }
            let mu = match fam {
                Family::OspEven => -lambda.clone(),
                Family::OspOdd => -(lambda * &ScalarQ::q_pow(-1)),
                _ => free_mu()?,
            };
            let lm = lambda + &mu;
            for i in 1..=n {
                diag.push((i, DiagVal::Const(lm.clone())));
            }
            if fam == Family::OspOdd {
                diag.push((n + 1, DiagVal::Const(lambda.clone())));
            }
            let c = -(lambda * &mu);
            for i in bm + 1..=n {
                blocks.push(y_block(rs, i, Some(c.clone()), false));
            }
            for i in (1..bm).step_by(2) {
                blocks.push(z_block(rs, i, Tie::Product(c.clone())));
            }
            derived_mu = (fam != Family::Spo).then_some(mu);
        }
        KKind::HalfTail => {
            if fam != Family::OspEven || bn != 2 {
                return Err(bad("only for osp(4|2m)"));
            }
            let mu = free_mu()?;
            let lm = lambda + &mu;
            for i in 1..=n {
                diag.push((i, DiagVal::Const(lm.clone())));
            }
            let c = -(lambda * &mu);
            for i in 1..=n - 2 {
                blocks.push(y_block(rs, i, Some(c.clone()), false));
            }
            if reading == Reading::HalfTailLiteral {
                // z_n (e_{n,n'-1} - e_{n+1,n'}) + z_{n'-1} (…) with n'-1 = n
                let units = vec![(n, n, one()), (n + 1, n + 1, neg1())];
                blocks.push(Block {
                    params: vec![(n, units.clone()), (n, units)],
                    tie: Tie::Product(c),
                });
            } else {
                blocks.push(z_block(rs, n - 1, Tie::Product(c)));
            }
            derived_mu = None;
        }
        KKind::WhiteTailTwisted => {
            if fam != Family::OspEven || bm % 2 == 1 || bn < 2 {
                return Err(bad("needs osp(2n|2m) with even bold m and n ≥ 2"));
            }
            let mu = -(lambda * &ScalarQ::q_pow(-2));
            let lm = lambda + &mu;
            for i in 1..n {
                diag.push((i, DiagVal::Const(lm.clone())));
            }
            let c = -(lambda * &mu);
            for i in bm + 1..n {
                blocks.push(y_block(rs, i, Some(c.clone()), false));
            }
            let mut yn = y_block(rs, n, None, false);
            yn.tie = Tie::Fixed(lambda.clone(), lambda.clone());
            blocks.push(yn);
            for i in (1..bm).step_by(2) {
                blocks.push(z_block(rs, i, Tie::Product(c.clone())));
            }
            derived_mu = Some(mu);
        }
        KKind::GlRight => {
            if fam != Family::Gl || bm % 2 == 1 {
                return Err(bad("needs gl(N|2m) with even bold m"));
            }
            let q = ScalarQ::q();
            for i in (1..=bm).step_by(2) {
                let ip = prime(i);
                blocks.push(Block {
                    params: vec![
                        (i, vec![(i, i + 1, one()), (i + 1, i, -q.clone())]),
                        (ip - 1, vec![(ip - 1, ip, one()), (ip, ip - 1, -q.clone())]),
                    ],
                    tie: Tie::Free,
                });
            }
            for i in bm + 1..prime(bm) {
                diag.push((i, DiagVal::Param(i)));
            }
            derived_mu = None;
        }
        KKind::GlLeft => {
            if fam != Family::Gl || bn % 2 == 1 {
                return Err(bad("needs gl(N|2m) with even N"));
            }
            for i in (1..=bm).chain(prime(bm)..=d) {
                diag.push((i, DiagVal::Param(i)));
            }
            let qi = ScalarQ::q_pow(-1);
            for i in (bm + 1..prime(bm)).step_by(2) {
                blocks.push(Block {
                    params: vec![(i, vec![(i, i + 1, one()), (i + 1, i, -qi.clone())])],
                    tie: Tie::Free,
                });
            }
            derived_mu = None;
        }
    }
    Ok(Shape {
        diag,
        blocks,
        mu: derived_mu,
    })
}

fn param(p: &KParams, i: usize) -> Result<&ScalarQ, KError> {
    p.offdiag
        .get(&i)
        .ok_or_else(|| KError::Missing(format!("parameter at index {i}")))
}

fn shape_of(rs: &RootSystem, p: &KParams) -> Result<Shape, KError> {
    shape(rs, p.kind, p.block, &p.lambda, p.mu.as_ref(), p.reading)
}

/// Every constraint of `p` that fails, as human-readable text.
pub fn violations(rs: &RootSystem, p: &KParams) -> Result<Vec<String>, KError> {
    let sh = shape_of(rs, p)?;
    let mut out = Vec::new();
    if let (Some(derived), Some(given)) = (&sh.mu, &p.mu) {
        if derived != given {
            out.push(format!("mu = {given} but the kind fixes mu = {derived}"));
        }
    }
    for b in &sh.blocks {
        let vals: Vec<&ScalarQ> = b.params.iter().map(|(i, _)| param(p, *i)).collect::<Result<_, _>>()?;
        let idx: Vec<usize> = b.params.iter().map(|(i, _)| *i).collect();
        match &b.tie {
            Tie::Free => {}
            Tie::Product(c) => {
                let got = vals[0] * vals[1];
                if &got != c {
                    out.push(format!("p{} p{} = {got}, expected {c}", idx[0], idx[1]));
                }
            }
            Tie::SameProduct(a, bb) => {
                let got = vals[0] * vals[1];
                let want = param(p, *a)? * param(p, *bb)?;
                if got != want {
                    out.push(format!("x{} x{} = {got}, expected x{a} x{bb} = {want}", idx[0], idx[1]));
                }
            }
            Tie::Fixed(ca, cb) => {
                if vals[0] != ca || vals[1] != cb {
                    out.push(format!(
                        "p{} = {}, p{} = {}, expected {ca}, {cb}",
                        idx[0], vals[0], idx[1], vals[1]
                    ));
                }
            }
        }
    }
    if p.kind == KKind::AGl && (&p.lambda * p.mu.as_ref().expect("free mu checked")).is_zero() {
        out.push("lambda mu must be nonzero".into());
    }
    Ok(out)
}

/// Assembles the matrix without checking the constraints.
pub fn build_k_unchecked(rs: &RootSystem, p: &KParams) -> Result<GradedOp, KError> {
    let sh = shape_of(rs, p)?;
    let mut k = GradedOp::zero(rs.grading(), 1);
    for (i, v) in &sh.diag {
        let v = match v {
            DiagVal::Const(c) => c.clone(),
            DiagVal::Param(j) => param(p, *j)?.clone(),
        };
        k.add_entry(i - 1, i - 1, &v);
    }
    for b in &sh.blocks {
        for (j, units) in &b.params {
            let v = param(p, *j)?;
            for (r, c, s) in units {
                k.add_entry(r - 1, c - 1, &(v * s));
            }
        }
    }
    Ok(k)
}

/// Builds `K`, refusing parameters that break the kind's constraints.
pub fn build_k(rs: &RootSystem, p: &KParams) -> Result<GradedOp, KError> {
    let v = violations(rs, p)?;
    if !v.is_empty() {
        return Err(KError::Constraint(v.join("; ")));
    }
    build_k_unchecked(rs, p)
}

fn sample_value(seed: usize, k: usize) -> ScalarQ {
    let a = (k + 2 * seed + 1) as i64;
    let shift = ((k + seed) % 3) as i64 - 1;
    ScalarQ::from_int(a) * ScalarQ::q_pow(shift) + ScalarQ::from_int(seed as i64)
}

/// A deterministic constraint-satisfying parameter set; `seed` varies the values.
pub fn sample_params(rs: &RootSystem, kind: KKind, block: Option<usize>, seed: usize) -> Result<KParams, KError> {
    sample_params_with(rs, kind, block, seed, Reading::Standard)
}

pub fn sample_params_with(
    rs: &RootSystem,
    kind: KKind,
    block: Option<usize>,
    seed: usize,
    reading: Reading,
) -> Result<KParams, KError> {
    let lambda = sample_value(seed, 0) + ScalarQ::q();
    let mut mu = match shape(rs, kind, block, &lambda, None, reading) {
        Err(KError::Missing(_)) => Some(sample_value(seed, 1)),
        Err(e) => return Err(e),
        Ok(_) => None,
    };
    let sh = shape(rs, kind, block, &lambda, mu.as_ref(), reading)?;
    // a single parameter squared must equal -λμ: pick μ to make that possible
    let squares = sh
        .blocks
        .iter()
        .any(|b| b.params.len() == 2 && b.params[0].0 == b.params[1].0);
    if squares && sh.mu.is_none() {
        mu = Some(-(&lambda * &ScalarQ::from_int(4)));
    }
    let sh = shape(rs, kind, block, &lambda, mu.as_ref(), reading)?;
    let mut p = KParams {
        kind,
        block,
        lambda: lambda.clone(),
        mu,
        offdiag: BTreeMap::new(),
        reading,
    };
    for (i, v) in &sh.diag {
        if let DiagVal::Param(j) = v {
            p.offdiag.insert(*j, sample_value(seed, i + 3));
        }
    }
    let mut later = Vec::new();
    for (t, b) in sh.blocks.iter().enumerate() {
        let idx: Vec<usize> = b.params.iter().map(|(i, _)| *i).collect();
        match &b.tie {
            Tie::Free => {
                for (u, i) in idx.iter().enumerate() {
                    p.offdiag.insert(*i, sample_value(seed, 2 * t + u + 5));
                }
            }
            Tie::Product(c) if idx[0] == idx[1] => {
                // c = 4λ², the root is 2λ
                let root = &lambda * &ScalarQ::from_int(2);
                debug_assert_eq!(&(&root * &root), c);
                p.offdiag.insert(idx[0], root);
            }
            Tie::Product(c) => {
                let a = sample_value(seed, 2 * t + 5);
                let b = c.checked_div(&a).expect("sample is nonzero");
                p.offdiag.insert(idx[0], a);
                p.offdiag.insert(idx[1], b);
            }
            Tie::Fixed(ca, cb) => {
                p.offdiag.insert(idx[0], ca.clone());
                p.offdiag.insert(idx[1], cb.clone());
            }
            Tie::SameProduct(..) => later.push(t),
        }
    }
    for t in later {
        let b = &sh.blocks[t];
        if let Tie::SameProduct(a, bb) = b.tie {
            let c = &p.offdiag[&a] * &p.offdiag[&bb];
            let x = sample_value(seed, 2 * t + 5);
            let y = c.checked_div(&x).expect("sample is nonzero");
            p.offdiag.insert(b.params[0].0, x);
            p.offdiag.insert(b.params[1].0, y);
        }
    }
    debug_assert!(violations(rs, &p).map(|v| v.is_empty()).unwrap_or(false));
    Ok(p)
}

/// Breaks the first tied block of a valid parameter set; `None` if nothing is tied.
pub fn violate(rs: &RootSystem, p: &KParams) -> Option<KParams> {
    let sh = shape_of(rs, p).ok()?;
    let b = sh.blocks.iter().find(|b| b.tie != Tie::Free)?;
    let i = b.params.last()?.0;
    let mut out = p.clone();
    let v = out.offdiag.get_mut(&i)?;
    *v = &*v * &ScalarQ::from_int(2);
    Some(out)
}

/// Conjugation matrix swapping `v_n` and `v_{n'}` (osp(2n|2m) tail flip).
pub fn tail_flip_matrix(rs: &RootSystem) -> GradedOp {
    let d = rs.dim_v();
    let n = d / 2;
    let mut m = GradedOp::zero(rs.grading(), 1);
    for i in 0..d {
        let j = if i == n - 1 {
            n
        } else if i == n {
            n - 1
        } else {
            i
        };
        m.add_entry(i, j, &ScalarQ::one());
    }
    m
}

fn witness(loc: &str, lhs: &GradedOp, rhs: &GradedOp) -> Option<Witness> {
    lhs.mat().first_difference(rhs.mat()).map(|(r, c, a, b)| Witness {
        location: format!("{loc} row {} col {}", lhs.index_label(r), lhs.index_label(c)),
        lhs: a.to_string(),
        rhs: b.to_string(),
    })
}

fn outcome(check: &str, inst: Instance, w: Option<Witness>) -> VerificationReport {
    match w {
        None => VerificationReport::pass(check, inst),
        Some(w) => VerificationReport::fail(check, inst, w),
    }
}

/// `S K2 S K2 = K2 S K2 S`.
pub fn check_re(s: &GradedOp, k: &GradedOp, inst: Instance) -> VerificationReport {
    if !k.is_even() {
        return VerificationReport::precondition("re", inst, "K is not even");
    }
    let run = || -> Result<_, LinError> {
        let k2 = GradedOp::on_leg(k, 2)?;
        let lhs = GradedOp::chain(&[s, &k2, s, &k2])?;
        let rhs = GradedOp::chain(&[&k2, s, &k2, s])?;
        Ok(witness("SK2SK2", &lhs, &rhs))
    };
    match run() {
        Ok(w) => outcome("re", inst, w),
        Err(e) => VerificationReport::precondition("re", inst, e.to_string()),
    }
}

/// `R21 K1 R21^{t1} K2 = K2 R12^{t2} K1 R21`, after checking `R^{t1 t2} = R21`.
pub fn check_re_twisted_t(r: &GradedOp, k: &GradedOp, inst: Instance) -> VerificationReport {
    const CHECK: &str = "re-twisted-t";
    if !k.is_even() {
        return VerificationReport::precondition(CHECK, inst, "K is not even");
    }
    let run = || -> Result<Result<Option<Witness>, String>, LinError> {
        let r21 = r.flip()?;
        let rtt = r.partial_supertranspose(1)?.partial_supertranspose(2)?;
        if let Some(w) = witness("R^{t1t2} vs R21", &rtt, &r21) {
            return Ok(Err(format!(
                "R^(t1 t2) != R21 at {}: {} vs {}",
                w.location, w.lhs, w.rhs
            )));
        }
        let k1 = GradedOp::on_leg(k, 1)?;
        let k2 = GradedOp::on_leg(k, 2)?;
        let lhs = GradedOp::chain(&[&r21, &k1, &r21.partial_supertranspose(1)?, &k2])?;
        let rhs = GradedOp::chain(&[&k2, &r.partial_supertranspose(2)?, &k1, &r21])?;
        Ok(Ok(witness("twisted RE", &lhs, &rhs)))
    };
    match run() {
        Ok(Ok(w)) => outcome(CHECK, inst, w),
        Ok(Err(why)) => VerificationReport::precondition(CHECK, inst, why),
        Err(e) => VerificationReport::precondition(CHECK, inst, e.to_string()),
    }
}

/// `R21 K1 R12^{θ1} K2 = K2 R21^{θ2} K1 R12` with `θ = Ad M`, after checking
/// that `M` is an even involution and `(θ⊗θ) R = R`.
pub fn check_re_twisted_theta(r: &GradedOp, k: &GradedOp, m: &GradedOp, inst: Instance) -> VerificationReport {
    const CHECK: &str = "re-twisted-theta";
    if !k.is_even() {
        return VerificationReport::precondition(CHECK, inst, "K is not even");
    }
    if !m.is_even() {
        return VerificationReport::precondition(CHECK, inst, "M is not even");
    }
    let run = || -> Result<Result<Option<Witness>, String>, LinError> {
        let id = GradedOp::identity(m.grading(), 1);
        if m.compose(m)? != id {
            return Ok(Err("M is not an involution".into()));
        }
        let rtt = r.conjugate_leg(m, 1)?.conjugate_leg(m, 2)?;
        if let Some(w) = witness("(θ⊗θ)R vs R", &rtt, r) {
            return Ok(Err(format!(
                "(theta x theta)R != R at {}: {} vs {}",
                w.location, w.lhs, w.rhs
            )));
        }
        let r21 = r.flip()?;
        let k1 = GradedOp::on_leg(k, 1)?;
        let k2 = GradedOp::on_leg(k, 2)?;
        let lhs = GradedOp::chain(&[&r21, &k1, &r.conjugate_leg(m, 1)?, &k2])?;
        let rhs = GradedOp::chain(&[&k2, &r21.conjugate_leg(m, 2)?, &k1, r])?;
        Ok(Ok(witness("twisted RE", &lhs, &rhs)))
    };
    match run() {
        Ok(Ok(w)) => outcome(CHECK, inst, w),
        Ok(Err(why)) => VerificationReport::precondition(CHECK, inst, why),
        Err(e) => VerificationReport::precondition(CHECK, inst, e.to_string()),
    }
}

/// Builds `K` from `p` and checks the equation its kind calls for.
///
/// Constraint violations do not stop the check; they are listed in the notes.
/// Conjectural kinds get CONJECTURE-* statuses.
pub fn verify_k(rs: &RootSystem, p: &KParams) -> VerificationReport {
    let inst = Instance::of(rs)
        .with_kind(p.kind.name(), p.block)
        .with_params(p.digest());
    let k = match build_k_unchecked(rs, p) {
        Ok(k) => k,
        Err(e) => return VerificationReport::precondition("re", inst, e.to_string()),
    };
    let broken = violations(rs, p).unwrap_or_default();
    let r = build_r(rs);
    let mut rep = match p.kind.equation() {
        Equation::Untwisted => match braid_operator(&r) {
            Ok(s) => check_re(&s, &k, inst),
            Err(e) => VerificationReport::precondition("re", inst, e.to_string()),
        },
        Equation::TwistedTranspose => check_re_twisted_t(&r, &k, inst),
        Equation::TwistedTheta => check_re_twisted_theta(&r, &k, &tail_flip_matrix(rs), inst),
    };
    rep.notes.extend(gauge_note(rs));
    for v in broken {
        rep.notes.push(format!("constraint violated: {v}"));
    }
    match p.reading {
        Reading::Standard => {
            if p.kind == KKind::A {
                rep.notes.push("corner term read as y_{i'} e_{i',i}".into());
            }
            if p.kind == KKind::HalfTail {
                rep.notes.push(
                    "tail block read at n-1: z_{n-1}(e_{n-1,n+1} - e_{n,n+2}) + z_{n+1}(e_{n+1,n-1} - e_{n+2,n})"
                        .into(),
                );
            }
        }
        Reading::CornerDiagonal => rep.notes.push("corner term read as y_{i'} e_{i',i'}".into()),
        Reading::HalfTailLiteral => rep
            .notes
            .push("tail block as printed; n'-1 = n collapses it to 2 z_n (e_nn - e_{n+1,n+1})".into()),
    }
    if p.kind.is_conjecture() {
        rep.status = rep.status.conjectural();
    }
    rep
}

/// Smallest admissible instance and block for each conjectural kind.
pub fn conjecture_instances() -> Vec<(KKind, RootSystem, Option<usize>, Reading)> {
    let rs = |f, n, m| RootSystem::new(f, n, m).expect("valid instance");
    vec![
        (KKind::BlackTail, rs(Family::Spo, 3, 1), Some(3), Reading::Standard),
        (KKind::WhiteTail, rs(Family::OspOdd, 1, 2), None, Reading::Standard),
        (KKind::HalfTail, rs(Family::OspEven, 2, 1), None, Reading::Standard),
        (
            KKind::HalfTail,
            rs(Family::OspEven, 2, 1),
            None,
            Reading::HalfTailLiteral,
        ),
        (
            KKind::WhiteTailTwisted,
            rs(Family::OspEven, 2, 2),
            None,
            Reading::Standard,
        ),
        (KKind::GlLeft, rs(Family::Gl, 2, 1), None, Reading::Standard),
        (KKind::GlRight, rs(Family::Gl, 1, 2), None, Reading::Standard),
    ]
}

/// Runs the conjecture suite at the smallest instances.
pub fn verify_conjectures() -> Vec<VerificationReport> {
    conjecture_instances()
        .into_iter()
        .map(
            |(kind, rs, block, reading)| match sample_params_with(&rs, kind, block, 0, reading) {
                Ok(p) => verify_k(&rs, &p),
                Err(e) => VerificationReport::precondition(
                    "re",
                    Instance::of(&rs).with_kind(kind.name(), block),
                    e.to_string(),
                ),
            },
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn osp12() -> RootSystem {
        RootSystem::new(Family::OspOdd, 0, 1).unwrap()
    }

    #[test]
    fn a_on_osp_1_2_shape() {
        let rs = osp12();
        let p = KParams::new(KKind::A, Some(1), ScalarQ::one())
            .with(1, ScalarQ::one())
            .with(3, -ScalarQ::q());
        let k = build_k(&rs, &p).unwrap();
        assert_eq!(k.get(0, 0), ScalarQ::one() + ScalarQ::q());
        assert_eq!(k.get(1, 1), ScalarQ::one());
        assert_eq!(k.get(2, 2), ScalarQ::zero());
        assert_eq!(k.get(0, 2), ScalarQ::one());
        assert_eq!(k.get(2, 0), -ScalarQ::q());
        assert!(verify_k(&rs, &p).is_pass());

        let bad = p.clone().with(3, ScalarQ::q());
        assert!(matches!(build_k(&rs, &bad), Err(KError::Constraint(_))));
        let rep = verify_k(&rs, &bad);
        assert_eq!(rep.status, Status::Fail);
        assert!(rep.notes.iter().any(|n| n.starts_with("constraint violated")));
    }

    #[test]
    fn scalar_k_passes() {
        let rs = RootSystem::new(Family::OspEven, 1, 1).unwrap();
        let s = braid_operator(&build_r(&rs)).unwrap();
        let k = GradedOp::identity(rs.grading(), 1).scale(&ScalarQ::q());
        assert!(check_re(&s, &k, Instance::of(&rs)).is_pass());
    }

    /// Unlike the untwisted equation, the transpose-twisted one has no scalar
    /// solutions once V has an odd part: the odd block of K must be skew.
    #[test]
    fn scalar_k_is_not_transpose_twisted() {
        for (bn, bm) in [(1, 1), (2, 1), (1, 2)] {
            let r = build_r(&RootSystem::new(Family::Gl, bn, bm).unwrap());
            let k = GradedOp::identity(r.grading(), 1).scale(&ScalarQ::from_int(3));
            let rep = check_re_twisted_t(&r, &k, Instance::default());
            assert_eq!(rep.status, Status::Fail);
        }
    }

    #[test]
    fn identity_twist_reduces_to_untwisted() {
        let rs = RootSystem::new(Family::OspOdd, 1, 1).unwrap();
        let r = build_r(&rs);
        let s = braid_operator(&r).unwrap();
        let p = sample_params(&rs, KKind::A, Some(1), 2).unwrap();
        let k = build_k(&rs, &p).unwrap();
        let id = GradedOp::identity(rs.grading(), 1);
        let a = check_re(&s, &k, Instance::of(&rs));
        let b = check_re_twisted_theta(&r, &k, &id, Instance::of(&rs));
        assert!(a.is_pass() && b.is_pass());
        let bad = build_k_unchecked(&rs, &violate(&rs, &p).unwrap()).unwrap();
        assert!(!check_re(&s, &bad, Instance::of(&rs)).is_pass());
        assert!(!check_re_twisted_theta(&r, &bad, &id, Instance::of(&rs)).is_pass());
    }

    #[test]
    fn theta_precondition_is_enforced() {
        let rs = RootSystem::new(Family::OspOdd, 1, 1).unwrap();
        let r = build_r(&rs);
        // swap v_1 and v_2: not a symmetry of R
        let mut m = GradedOp::zero(rs.grading(), 1);
        for (a, b) in [(0, 1), (1, 0), (2, 2), (3, 3), (4, 4)] {
            m.add_entry(a, b, &ScalarQ::one());
        }
        let k = GradedOp::identity(rs.grading(), 1);
        let rep = check_re_twisted_theta(&r, &k, &m, Instance::of(&rs));
        assert_eq!(rep.status, Status::PreconditionFail);
    }

    #[test]
    fn c_shape_on_osp_2_4() {
        let rs = RootSystem::new(Family::OspEven, 1, 2).unwrap();
        let p = sample_params(&rs, KKind::C, None, 0).unwrap();
        let k = build_k(&rs, &p).unwrap();
        let x = |i: usize| p.offdiag[&i].clone();
        assert_eq!(k.get(0, 4), x(1));
        assert_eq!(k.get(1, 5), -x(1));
        assert_eq!(k.get(4, 0), x(5));
        assert_eq!(k.get(5, 1), -x(5));
        assert_eq!(k.get(2, 3), x(3));
        assert_eq!(k.get(3, 2), x(4));
        assert_eq!(&x(1) * &x(5), &x(3) * &x(4));
        assert_eq!(k.mat().nnz(), 6);
    }

    #[test]
    fn a_gl_blocks() {
        let rs = RootSystem::new(Family::Gl, 2, 1).unwrap();
        let p = sample_params(&rs, KKind::AGl, Some(1), 0).unwrap();
        let k = build_k(&rs, &p).unwrap();
        let lm = &p.lambda + p.mu.as_ref().unwrap();
        assert_eq!(k.get(0, 0), lm);
        assert_eq!(k.get(1, 1), p.lambda);
        assert_eq!(k.get(2, 2), p.lambda);
        assert_eq!(k.get(3, 3), ScalarQ::zero());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in KKind::ALL {
            assert_eq!(KKind::parse(k.name()), Some(k));
            assert_eq!(KKind::parse(&k.name().to_lowercase()), Some(k));
        }
    }
}

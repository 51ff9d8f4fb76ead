//! The classical (q = 1) side: matrix realization of g inside End(V), the
//! subalgebra k generated by a decorated diagram, and sphericity.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DecoratedDiagram, SatakeError};
use crate::gradedlin::GradedOp;
use crate::linalg::{self, EchelonBasis};
use crate::natrep::Representation;
use crate::report::{Instance, VerificationReport, Witness};
use crate::rootdata::{Family, RootSystem, Weight};

type Q = BigRational;

fn q(a: i64) -> Q {
    Q::from_integer(a.into())
}

/// A `d × d` rational matrix stored row-major, with a parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub v: Vec<Q>,
    pub parity: u8,
}

/// Exact matrix model of g at q = 1.
#[derive(Debug, Clone)]
pub struct Realization {
    rs: RootSystem,
    d: usize,
    e: Vec<Elem>,
    f: Vec<Elem>,
    g: Vec<Elem>,
    g_span: EchelonBasis<Q>,
    derived: Vec<Elem>,
}

fn eval_op(op: &GradedOp, parity: u8) -> Elem {
    let d = op.grading().dim();
    let mut v = vec![Q::zero(); d * d];
    let one = Q::one();
    for (r, c, x) in op.mat().entries() {
        v[r * d + c] = x.eval(&one).expect("generators are regular at q = 1");
    }
    Elem { v, parity }
}

impl Realization {
    pub fn new(rs: &RootSystem) -> Self {
        let rep = Representation::new(rs);
        let d = rs.dim_v();
        let r = rs.rank();
        let e: Vec<Elem> = (0..r).map(|i| eval_op(rep.e(i), rs.simple_parity(i))).collect();
        let f: Vec<Elem> = (0..r).map(|i| eval_op(rep.f(i), rs.simple_parity(i))).collect();
        let cartan: Vec<Elem> = if rs.family() == Family::Gl {
            (0..d)
                .map(|j| {
                    let mut v = vec![Q::zero(); d * d];
                    v[j * d + j] = Q::one();
                    Elem { v, parity: 0 }
                })
                .collect()
        } else {
            (0..r).map(|i| h_of(rs, rs.simple(i))).collect()
        };
        let mut gens = e.clone();
        gens.extend(f.iter().cloned());
        gens.extend(cartan.iter().cloned());
        let (g, g_span) = closure(&gens, d);
        let mut dspan = EchelonBasis::new();
        let mut derived = Vec::new();
        for a in &g {
            for b in &g {
                let c = bracket(a, b, d);
                if dspan.insert(&c.v) {
                    derived.push(c);
                }
            }
        }
        Realization {
            rs: rs.clone(),
            d,
            e,
            f,
            g,
            g_span,
            derived,
        }
    }

    pub fn dim_g(&self) -> usize {
        self.g_span.dim()
    }

    /// `dim [g, g]`; smaller than `dim g` only for gl.
    pub fn dim_derived(&self) -> usize {
        self.derived.len()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Simple root vector `e_i` at q = 1.
    pub fn e(&self, i: usize) -> &Elem {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &Elem {
        &self.f[i]
    }

    /// The weight `wt_a - wt_b` of the matrix unit `e_ab`.
    fn unit_weight(&self, a: usize, b: usize) -> Weight {
        crate::rootdata::sub(self.rs.vweight(a), self.rs.vweight(b))
    }

    fn project(&self, x: &Elem, keep: impl Fn(&Weight) -> bool) -> Elem {
        let d = self.d;
        let mut v = x.v.clone();
        for a in 0..d {
            for b in 0..d {
                if !v[a * d + b].is_zero() && !keep(&self.unit_weight(a, b)) {
                    v[a * d + b] = Q::zero();
                }
            }
        }
        Elem { v, parity: x.parity }
    }

    /// A spanning vector of the root space `g_β`, or `None` if it is zero.
    pub fn root_vector(&self, beta: &[i64]) -> Option<Elem> {
        let parity = self.rs.root_parity(beta);
        let mut span = EchelonBasis::new();
        let mut first = None;
        for x in &self.g {
            let p = self.project(x, |w| w.as_slice() == beta);
            if span.insert(&p.v) && first.is_none() {
                first = Some(p.v);
            }
        }
        assert!(span.dim() <= 1, "root space of {beta:?} has dimension {}", span.dim());
        first.map(|v| Elem { v, parity })
    }

    /// `h_β = diag((β, wt v_j))`.
    pub fn h(&self, beta: &[i64]) -> Elem {
        h_of(&self.rs, beta)
    }

    /// Spanning set of `b⁻ = h ⊕ n⁻`.
    pub fn b_minus(&self) -> Vec<Elem> {
        let rs = &self.rs;
        self.g
            .iter()
            .map(|x| {
                self.project(x, |w| {
                    w.iter().all(|c| *c == 0) || rs.is_positive_root(&crate::rootdata::neg(w))
                })
            })
            .collect()
    }
}

fn h_of(rs: &RootSystem, beta: &[i64]) -> Elem {
    let d = rs.dim_v();
    let mut v = vec![Q::zero(); d * d];
    for j in 0..d {
        v[j * d + j] = q(rs.pair(beta, rs.vweight(j)));
    }
    Elem { v, parity: 0 }
}

fn mul(a: &[Q], b: &[Q], d: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = &a[i * d + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                let y = &b[k * d + j];
                if !y.is_zero() {
                    out[i * d + j] += x * y;
                }
            }
        }
    }
    out
}

/// Graded commutator of homogeneous elements.
pub fn bracket(a: &Elem, b: &Elem, d: usize) -> Elem {
    let ab = mul(&a.v, &b.v, d);
    let ba = mul(&b.v, &a.v, d);
    let sign = if a.parity * b.parity == 1 { q(-1) } else { q(1) };
    let v = ab.iter().zip(&ba).map(|(x, y)| x - &sign * y).collect();
    Elem {
        v,
        parity: (a.parity + b.parity) % 2,
    }
}

/// Subalgebra generated by homogeneous `gens`: left-normed brackets span it.
pub fn closure(gens: &[Elem], d: usize) -> (Vec<Elem>, EchelonBasis<Q>) {
    let mut span = EchelonBasis::new();
    let mut basis = Vec::new();
    let mut queue = Vec::new();
    for g in gens {
        if span.insert(&g.v) {
            basis.push(g.clone());
            queue.push(g.clone());
        }
    }
    let bound = d * d;
    while let Some(x) = queue.pop() {
        for s in gens {
            let y = bracket(s, &x, d);
            if span.insert(&y.v) {
                assert!(span.dim() <= bound, "closure does not stabilize");
                basis.push(y.clone());
                queue.push(y);
            }
        }
    }
    (basis, span)
}

/// Rational mixture parameters `(c_α, ć_α)` at q = 1.
pub type ClassicalMixtures = BTreeMap<usize, (Q, Q)>;

const SAMPLE_VALUES: [(i64, i64); 6] = [(1, 1), (-2, 1), (3, 2), (-1, 3), (5, 1), (2, 7)];

fn sample_value(k: usize) -> Q {
    let (a, b) = SAMPLE_VALUES[k % SAMPLE_VALUES.len()];
    Q::new(a.into(), b.into())
}

/// Deterministic nonzero mixtures, sample `s ∈ {0, 1, 2}`.
pub fn sample_mixtures(d: &DecoratedDiagram, s: usize) -> ClassicalMixtures {
    d.white()
        .into_iter()
        .map(|i| {
            let c = sample_value(s + 2 * i);
            let cg = if d.grave_eligible(i) {
                sample_value(s + 2 * i + 1)
            } else {
                Q::zero()
            };
            (i, (c, cg))
        })
        .collect()
}

/// Generators of k: `e_α, f_α` for α ∈ Π_l, `h_α̃ - h_α` and
/// `x_α = e_α + c_α f_α̃ + ć_α h_α` for α ∈ Π̄_l.
pub fn k_generators(re: &Realization, d: &DecoratedDiagram, mix: &ClassicalMixtures) -> Result<Vec<Elem>, SatakeError> {
    let mut gens = Vec::new();
    for &i in d.pil() {
        gens.push(re.e[i].clone());
        gens.push(re.f[i].clone());
    }
    for i in d.white() {
        let t = d.tilde_root(i)?;
        let a = re.rs.simple(i);
        let mut h = re.h(&t);
        for (x, y) in h.v.iter_mut().zip(&re.h(a).v) {
            *x -= y;
        }
        if h.v.iter().any(|x| !x.is_zero()) {
            gens.push(h);
        }
        let (c, cg) = mix.get(&i).cloned().unwrap_or((Q::zero(), Q::zero()));
        let ft = re
            .root_vector(&crate::rootdata::neg(&t))
            .ok_or_else(|| SatakeError::NotPositive(i + 1, re.rs.label(&t)))?;
        let u = re.h(a);
        let mut x = re.e[i].clone();
        for k in 0..x.v.len() {
            x.v[k] = &x.v[k] + &c * &ft.v[k] + &cg * &u.v[k];
        }
        gens.push(x);
    }
    Ok(gens)
}

/// Dimensions produced by one closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureDims {
    pub dim_k: usize,
    pub dim_g: usize,
    pub dim_k_plus_b_minus: usize,
    /// `k ⊇ [g, g]`, which is `k = g` outside gl.
    pub contains_derived: bool,
}

impl ClosureDims {
    /// k exhausts g up to the centre of gl, which brackets never reach.
    pub fn is_whole(&self) -> bool {
        self.contains_derived
    }
    pub fn is_spherical(&self) -> bool {
        self.dim_k_plus_b_minus == self.dim_g
    }
}

pub fn classical_k_closure(
    re: &Realization,
    d: &DecoratedDiagram,
    mix: &ClassicalMixtures,
) -> Result<ClosureDims, SatakeError> {
    let gens = k_generators(re, d, mix)?;
    let (k, span) = closure(&gens, re.d);
    let mut sum = span.clone();
    for b in re.b_minus() {
        sum.insert(&b.v);
    }
    for x in &k {
        debug_assert!(re.g_span.contains(&x.v), "k escapes g");
    }
    let contains_derived = re.derived.iter().all(|x| span.contains(&x.v));
    Ok(ClosureDims {
        contains_derived,
        dim_k: span.dim(),
        dim_g: re.dim_g(),
        dim_k_plus_b_minus: sum.dim(),
    })
}

/// `dim(k + b⁻) = dim g` for each of the three mixture samples.
pub fn check_spherical(re: &Realization, d: &DecoratedDiagram) -> VerificationReport {
    for s in 0..3 {
        match classical_k_closure(re, d, &sample_mixtures(d, s)) {
            Ok(c) if c.is_spherical() => {}
            Ok(c) => {
                return VerificationReport::fail(
                    "spherical",
                    d.instance(),
                    Witness {
                        location: format!("mixture sample {s}"),
                        lhs: format!("dim(k+b-) = {}", c.dim_k_plus_b_minus),
                        rhs: format!("dim g = {}", c.dim_g),
                    },
                )
            }
            Err(e) => return VerificationReport::precondition("spherical", d.instance(), e.to_string()),
        }
    }
    VerificationReport::pass("spherical", d.instance())
}

/// `k = g` for all three mixture samples.
pub fn is_trivial(re: &Realization, d: &DecoratedDiagram) -> Result<bool, SatakeError> {
    for s in 0..3 {
        if !classical_k_closure(re, d, &sample_mixtures(d, s))?.is_whole() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mixtures forced by `[K₀, x_α] = 0` for a classical matrix `K₀` (row-major `d × d`).
pub fn mixtures_from_k(re: &Realization, d: &DecoratedDiagram, k0: &[Q]) -> Result<ClassicalMixtures, String> {
    let n = re.d;
    let comm = |x: &[Q]| -> Vec<Q> {
        let a = mul(k0, x, n);
        let b = mul(x, k0, n);
        a.iter().zip(&b).map(|(p, q)| p - q).collect()
    };
    let mut out = BTreeMap::new();
    for i in d.white() {
        let t = d.tilde_root(i).map_err(|e| e.to_string())?;
        let ft = re.root_vector(&crate::rootdata::neg(&t)).ok_or("no root vector")?;
        let mut cols = vec![comm(&ft.v)];
        let eligible = d.grave_eligible(i);
        if eligible {
            cols.push(comm(&re.h(re.rs.simple(i)).v));
        }
        let rhs: Vec<Q> = comm(&re.e[i].v).iter().map(|x| -x).collect();
        let rows: Vec<Vec<Q>> = (0..n * n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let sol = linalg::solve(&rows, &rhs, cols.len()).ok_or_else(|| format!("no mixture for α{}", i + 1))?;
        if !sol.nullspace.is_empty() {
            return Err(format!("mixture for α{} is not unique", i + 1));
        }
        let c = sol.particular[0].clone();
        let cg = if eligible { sol.particular[1].clone() } else { Q::zero() };
        out.insert(i, (c, cg));
    }
    Ok(out)
}

/// Evaluates an order-1 operator at q = 1 into a row-major matrix.
pub fn at_one(op: &GradedOp) -> Vec<Q> {
    eval_op(op, 0).v
}

/// For each α ∈ Π̄_l: the l-module generated by `e_α` has a unique highest
/// weight, and `w_l` sends it to the lowest weight α.
pub fn check_high_low(re: &Realization, d: &DecoratedDiagram) -> VerificationReport {
    let rs = &re.rs;
    let inst: Instance = d.instance();
    for i in d.white() {
        let alpha = rs.simple(i).clone();
        let mut spans: BTreeMap<Weight, EchelonBasis<Q>> = BTreeMap::new();
        let mut queue = vec![(alpha.clone(), re.e[i].clone())];
        spans.entry(alpha.clone()).or_default().insert(&re.e[i].v);
        while let Some((w, x)) = queue.pop() {
            for &b in d.pil() {
                for (g, sign) in [(&re.e[b], 1), (&re.f[b], -1)] {
                    let y = bracket(g, &x, re.d);
                    let wy = crate::rootdata::add(&w, &crate::rootdata::scale(rs.simple(b), sign));
                    if spans.entry(wy.clone()).or_default().insert(&y.v) {
                        queue.push((wy, y));
                    }
                }
            }
        }
        let weights: Vec<&Weight> = spans.iter().filter(|(_, s)| s.dim() > 0).map(|(w, _)| w).collect();
        let has = |w: &Weight| weights.contains(&w);
        let extreme = |sign: i64| -> Vec<Weight> {
            weights
                .iter()
                .filter(|w| {
                    d.pil()
                        .iter()
                        .all(|&b| !has(&crate::rootdata::add(w, &crate::rootdata::scale(rs.simple(b), sign))))
                })
                .map(|w| (*w).clone())
                .collect()
        };
        let (high, low) = (extreme(1), extreme(-1));
        let ok = high.len() == 1 && low == vec![alpha.clone()] && d.w_l().apply(&high[0]) == alpha;
        if !ok {
            return VerificationReport::fail(
                "high-low",
                inst,
                Witness {
                    location: format!("module of e_α{}", i + 1),
                    lhs: format!("{:?}", high.iter().map(|w| rs.label(w)).collect::<Vec<_>>()),
                    rhs: format!("{:?}", low.iter().map(|w| rs.label(w)).collect::<Vec<_>>()),
                },
            );
        }
    }
    VerificationReport::pass("high-low", inst)
}

//! Decorated Dynkin diagrams: admissible Levi subsets, Weyl operators,
//! involutions τ, pseudo-symmetry, selection rules and the graded Satake
//! classification.
//!
//! Simple roots are indexed from 0 in code and from 1 in every rendered or
//! serialized form.

pub mod classical;
mod rules;
mod templates;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::qring::ScalarQ;
use crate::report::{Instance, VerificationReport, Witness};
use crate::rootdata::{Family, RootSystem, Weight};

pub use rules::{violates_selection_rules, Violation};
pub use templates::{classify, Classification, SatakeType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatakeError {
    #[error("Π_l = {0} is not admissible")]
    Inadmissible(String),
    #[error("τ = {0} is not an even involutive diagram automorphism agreeing with -w_l on Π_l")]
    BadTau(String),
    #[error("α_{0} is not in the complement of Π_l")]
    NotWhite(usize),
    #[error("α̃_{0} = {1} is not a positive root")]
    NotPositive(usize, String),
}

/// A signed permutation of the δ/ε basis, stored as an integer matrix acting
/// on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightInvolution {
    m: Vec<Vec<i64>>,
}

impl WeightInvolution {
    pub fn identity(dim: usize) -> Self {
        let m = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        WeightInvolution { m }
    }

    pub fn minus(&self) -> Self {
        WeightInvolution {
            m: self.m.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn apply(&self, w: &[i64]) -> Weight {
        self.m
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &WeightInvolution) -> WeightInvolution {
        let n = self.dim();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.m[i][k] * o.m[k][j]).sum()).collect())
            .collect();
        WeightInvolution { m }
    }

    pub fn is_involutive(&self) -> bool {
        self.compose(self) == WeightInvolution::identity(self.dim())
    }

    pub fn is_signed_permutation(&self) -> bool {
        let ok = |v: Vec<i64>| v.iter().filter(|x| **x != 0).count() == 1 && v.iter().all(|x| x.abs() <= 1);
        (0..self.dim()).all(|i| ok(self.m[i].clone()) && ok(self.m.iter().map(|r| r[i]).collect()))
    }

    /// Preserves the bilinear form of `rs` on basis vectors.
    pub fn is_orthogonal(&self, rs: &RootSystem) -> bool {
        let n = self.dim();
        let unit = |k: usize| (0..n).map(|j| i64::from(j == k)).collect::<Vec<_>>();
        (0..n).all(|a| {
            (0..n).all(|b| rs.pair(&self.apply(&unit(a)), &self.apply(&unit(b))) == rs.pair(&unit(a), &unit(b)))
        })
    }

    /// Maps δ-coordinates to δ-coordinates and ε to ε.
    pub fn is_even(&self, rs: &RootSystem) -> bool {
        let nd = rs.basis_dim() - rs.n_eps();
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.m[i][j] == 0 || (i < nd) == (j < nd)))
    }
}

/// Connected components of `set` in the Dynkin graph, each sorted.
pub fn components(rs: &RootSystem, set: &[usize]) -> Vec<Vec<usize>> {
    let g = rs.gram();
    let mut seen = vec![false; rs.rank()];
    let mut out = Vec::new();
    for &s in set {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for &b in set {
                if !seen[b] && g[a][b] != 0 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

/// Whether the component is of orthosymplectic type (contains the tail).
fn is_tail_component(rs: &RootSystem, comp: &[usize]) -> bool {
    let r = rs.rank();
    match rs.family() {
        Family::Gl => false,
        Family::OspEven => comp.contains(&(r - 1)) && comp.contains(&(r - 2)),
        _ => comp.contains(&(r - 1)),
    }
}

fn signed_unit(w: &[i64]) -> Option<(usize, i64)> {
    let nz: Vec<usize> = (0..w.len()).filter(|&k| w[k] != 0).collect();
    (nz.len() == 1 && w[nz[0]].abs() == 1).then(|| (nz[0], w[nz[0]]))
}

/// For a chain `β_1..β_k`, signed unit weights `w_0..w_k` with `β_j = w_{j-1} - w_j`.
fn chain_sequence(rs: &RootSystem, comp: &[usize]) -> Option<Vec<Weight>> {
    let first = rs.simple(comp[0]);
    for c in 0..first.len() {
        if first[c] == 0 {
            continue;
        }
        let mut w0 = vec![0; first.len()];
        w0[c] = first[c].signum();
        let mut seq = vec![w0];
        let mut ok = true;
        for &i in comp {
            let next = crate::rootdata::sub(seq.last().unwrap(), rs.simple(i));
            match signed_unit(&next) {
                Some((k, _)) if seq.iter().all(|w| w[k] == 0) => seq.push(next),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(seq);
        }
    }
    None
}

fn vindex(rs: &RootSystem, w: &[i64]) -> Option<usize> {
    (0..rs.dim_v()).find(|&j| rs.vweight(j).as_slice() == w)
}

/// Checks one component and returns its Weyl operator.
fn component_operator(rs: &RootSystem, comp: &[usize]) -> Result<WeightInvolution, String> {
    let n = rs.basis_dim();
    let mut w = WeightInvolution::identity(n);
    if is_tail_component(rs, comp) {
        for &i in comp {
            for (k, &c) in rs.simple(i).iter().enumerate() {
                if c != 0 {
                    w.m[k][k] = -1;
                }
            }
        }
        return Ok(w);
    }
    let seq = chain_sequence(rs, comp).ok_or_else(|| format!("{comp:?} is not a chain"))?;
    let par: Vec<u8> = seq
        .iter()
        .map(|x| vindex(rs, x).map(|j| rs.grading().p(j)))
        .collect::<Option<_>>()
        .ok_or("weight outside V")?;
    let k = seq.len() - 1;
    let symmetric = (0..=k).all(|t| par[t] == par[k - t]);
    let changes = par.windows(2).filter(|p| p[0] != p[1]).count();
    if !symmetric || changes > 2 {
        return Err(format!(
            "induced grading {par:?} on {} is not minimal symmetric",
            label_set(comp)
        ));
    }
    for t in 0..=k {
        let (c, s) = signed_unit(&seq[t]).unwrap();
        let img = &seq[k - t];
        for r in 0..n {
            w.m[r][c] = s * img[r];
        }
    }
    Ok(w)
}

fn label_set(s: &[usize]) -> String {
    let v: Vec<String> = s.iter().map(|i| format!("α{}", i + 1)).collect();
    format!("{{{}}}", v.join(","))
}

/// `w_l` for an admissible Π_l; errors name the offending component.
pub fn weyl_operator(rs: &RootSystem, pil: &[usize]) -> Result<WeightInvolution, SatakeError> {
    let mut w = WeightInvolution::identity(rs.basis_dim());
    for comp in components(rs, pil) {
        let c = component_operator(rs, &comp).map_err(SatakeError::Inadmissible)?;
        w = w.compose(&c);
    }
    Ok(w)
}

pub fn is_admissible(rs: &RootSystem, pil: &[usize]) -> bool {
    weyl_operator(rs, pil).is_ok()
}

/// All admissible Π_l, as sorted index lists in order of the bit mask.
pub fn enumerate_admissible(rs: &RootSystem) -> Vec<Vec<usize>> {
    let r = rs.rank();
    (0u32..1 << r)
        .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| is_admissible(rs, s))
        .collect()
}

/// All involutive diagram automorphisms preserving Gram matrix and parities.
pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<Vec<usize>> {
    let g = rs.gram();
    let r = rs.rank();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn rec(rs: &RootSystem, g: &[Vec<i64>], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let r = g.len();
        let i = cur.len();
        if i == r {
            if (0..r).all(|k| cur[cur[k]] == k) {
                out.push(cur.clone());
            }
            return;
        }
        for j in 0..r {
            if used[j] || rs.simple_parity(i) != rs.simple_parity(j) || g[i][i] != g[j][j] {
                continue;
            }
            if (0..i).any(|k| g[k][i] != g[cur[k]][j]) {
                continue;
            }
            used[j] = true;
            cur.push(j);
            rec(rs, g, cur, used, out);
            cur.pop();
            used[j] = false;
        }
    }
    rec(rs, &g, &mut cur, &mut used, &mut out);
    out
}

/// Involutions τ with `τ|Π_l = -w_l`.
pub fn enumerate_taus(rs: &RootSystem, pil: &[usize]) -> Vec<Vec<usize>> {
    let Ok(w) = weyl_operator(rs, pil) else {
        return Vec::new();
    };
    diagram_automorphisms(rs)
        .into_iter()
        .filter(|t| {
            pil.iter().all(|&i| {
                let img = crate::rootdata::neg(&w.apply(rs.simple(i)));
                img == *rs.simple(t[i])
            })
        })
        .collect()
}

/// The linear extension of a diagram automorphism to the weight lattice.
fn tau_linear(rs: &RootSystem, tau: &[usize]) -> WeightInvolution {
    let n = rs.basis_dim();
    let mut m = vec![vec![0i64; n]; n];
    if rs.family() == Family::Gl {
        let d = rs.dim_v();
        let flip = tau.first().is_some_and(|&t| t != 0);
        for j in 0..d {
            let (c, _) = signed_unit(rs.vweight(j)).unwrap();
            let img = if flip {
                crate::rootdata::neg(rs.vweight(d - 1 - j))
            } else {
                rs.vweight(j).clone()
            };
            for r in 0..n {
                m[r][c] = img[r];
            }
        }
        return WeightInvolution { m };
    }
    for c in 0..n {
        let mut e = vec![0; n];
        e[c] = 1;
        let coords = rs.simple_coords(&e).expect("simple roots span the weight space");
        let mut img = vec![BigRational::zero(); n];
        for (i, x) in coords.iter().enumerate() {
            for (r, v) in rs.simple(tau[i]).iter().enumerate() {
                img[r] += x * BigRational::from_integer((*v).into());
            }
        }
        for r in 0..n {
            m[r][c] = img[r].to_integer().to_i64().expect("integral image");
        }
    }
    WeightInvolution { m }
}

/// Mixture parameters `(c_α, ć_α)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mixture {
    pub c: ScalarQ,
    pub c_grave: ScalarQ,
}

#[derive(Debug, Clone)]
pub struct DecoratedDiagram {
    rs: RootSystem,
    pil: Vec<usize>,
    tau: Vec<usize>,
    wl: WeightInvolution,
    pub mixtures: BTreeMap<usize, Mixture>,
}

impl PartialEq for DecoratedDiagram {
    fn eq(&self, o: &Self) -> bool {
        self.rs == o.rs && self.pil == o.pil && self.tau == o.tau && self.mixtures == o.mixtures
    }
}

impl DecoratedDiagram {
    /// Validates admissibility and the τ invariants.
    pub fn new(rs: &RootSystem, pil: &[usize], tau: &[usize]) -> Result<Self, SatakeError> {
        let mut pil = pil.to_vec();
        pil.sort_unstable();
        pil.dedup();
        let wl = weyl_operator(rs, &pil)?;
        if !enumerate_taus(rs, &pil).iter().any(|t| t == tau) {
            return Err(SatakeError::BadTau(format!(
                "{:?}",
                tau.iter().map(|t| t + 1).collect::<Vec<_>>()
            )));
        }
        Ok(DecoratedDiagram {
            rs: rs.clone(),
            pil,
            tau: tau.to_vec(),
            wl,
            mixtures: BTreeMap::new(),
        })
    }

    /// Identity τ shorthand.
    pub fn with_identity(rs: &RootSystem, pil: &[usize]) -> Result<Self, SatakeError> {
        let id: Vec<usize> = (0..rs.rank()).collect();
        Self::new(rs, pil, &id)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn pil(&self) -> &[usize] {
        &self.pil
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.pil.binary_search(&i).is_ok()
    }

    /// Π̄_l in increasing order.
    pub fn white(&self) -> Vec<usize> {
        (0..self.rs.rank()).filter(|&i| !self.is_black(i)).collect()
    }

    pub fn tau_is_identity(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn w_l(&self) -> &WeightInvolution {
        &self.wl
    }

    /// `θ = -w_l ∘ τ` on the weight lattice.
    pub fn theta(&self) -> WeightInvolution {
        self.wl.compose(&tau_linear(&self.rs, &self.tau)).minus()
    }

    /// `α̃ = w_l τ(α)` as a weight, without positivity checks.
    pub fn tilde_weight(&self, i: usize) -> Weight {
        self.wl.apply(self.rs.simple(self.tau[i]))
    }

    /// `α̃` for `α ∈ Π̄_l`; must be a positive root.
    pub fn tilde_root(&self, i: usize) -> Result<Weight, SatakeError> {
        if self.is_black(i) {
            return Err(SatakeError::NotWhite(i + 1));
        }
        let t = self.tilde_weight(i);
        if !self.rs.is_positive_root(&t) {
            return Err(SatakeError::NotPositive(i + 1, self.rs.label(&t)));
        }
        Ok(t)
    }

    /// Whether `ć_α` may be nonzero.
    pub fn grave_eligible(&self, i: usize) -> bool {
        let rs = &self.rs;
        !self.is_black(i)
            && rs.simple_parity(i) == 0
            && self.tau[i] == i
            && self.tilde_weight(i) == *rs.simple(i)
            && self.pil.iter().all(|&b| rs.pair(rs.simple(i), rs.simple(b)) == 0)
    }

    /// Stable identifier, e.g. `piL=2,3;tau=1,2,3`.
    pub fn key(&self) -> String {
        let p: Vec<String> = self.pil.iter().map(|i| (i + 1).to_string()).collect();
        let t: Vec<String> = self.tau.iter().map(|i| (i + 1).to_string()).collect();
        format!("piL={};tau={}", p.join(","), t.join(","))
    }

    pub fn instance(&self) -> Instance {
        Instance::of(&self.rs).with_params(self.key())
    }

    /// One-line ASCII picture: `*` for Π_l, `o` for Π̄_l, brackets for odd
    /// nodes, `=>`/`<=` for the double bond of the tail, a parenthesised
    /// fork for osp(2n|2m), and the nontrivial τ pairs.
    pub fn render(&self) -> String {
        let rs = &self.rs;
        let r = rs.rank();
        let node = |i: usize| {
            let c = if self.is_black(i) { "*" } else { "o" };
            if rs.simple_parity(i) == 1 {
                format!("[{c}]")
            } else {
                c.to_string()
            }
        };
        let mut s = String::new();
        let chain_end = if rs.family() == Family::OspEven { r - 2 } else { r };
        for i in 0..chain_end {
            if i > 0 {
                let last = i == r - 1;
                let bond = match rs.family() {
                    Family::OspOdd if last => "=>",
                    Family::Spo if last => "<=",
                    _ => "-",
                };
                s.push_str(bond);
            }
            s.push_str(&node(i));
        }
        if rs.family() == Family::OspEven {
            if chain_end > 0 {
                s.push('<');
            }
            s.push_str(&format!("({}|{})", node(r - 2), node(r - 1)));
        }
        let pairs: Vec<String> = (0..r)
            .filter(|&i| self.tau[i] > i)
            .map(|i| format!("({} {})", i + 1, self.tau[i] + 1))
            .collect();
        if !pairs.is_empty() {
            s.push_str(" tau:");
            s.push_str(&pairs.join(""));
        }
        s
    }
}

impl fmt::Display for DecoratedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rs.name(), self.render())
    }
}

/// Both orthogonality conditions with `α̃ = w_l τ(α)`.
pub fn check_pseudo_symmetric(d: &DecoratedDiagram) -> VerificationReport {
    let rs = &d.rs;
    let white = d.white();
    let plus = |i: usize| crate::rootdata::add(rs.simple(i), &d.tilde_weight(i));
    let minus = |i: usize| crate::rootdata::sub(rs.simple(i), &d.tilde_weight(i));
    let fail = |loc: String, v: i64| {
        VerificationReport::fail(
            "pseudo-symmetric",
            d.instance(),
            Witness {
                location: loc,
                lhs: v.to_string(),
                rhs: "0".into(),
            },
        )
    };
    for &mu in &white {
        for &a in &d.pil {
            let v = rs.pair(&plus(mu), rs.simple(a));
            if v != 0 {
                return fail(format!("(μ+μ̃, α) with μ = α{}, α = α{}", mu + 1, a + 1), v);
            }
        }
    }
    for &mu in &white {
        for &nu in &white {
            let v = rs.pair(&plus(mu), &minus(nu));
            if v != 0 {
                return fail(format!("(μ+μ̃, ν-ν̃) with μ = α{}, ν = α{}", mu + 1, nu + 1), v);
            }
        }
    }
    VerificationReport::pass("pseudo-symmetric", d.instance())
}

/// θ is involutive, orthogonal, even, fixes Π_l and sends `α ↦ -α̃` with `α̃ ∈ R⁺`.
pub fn check_theta(d: &DecoratedDiagram) -> VerificationReport {
    let rs = &d.rs;
    let th = d.theta();
    let bad = |what: &str| {
        VerificationReport::fail(
            "theta",
            d.instance(),
            Witness {
                location: what.to_string(),
                lhs: format!("{:?}", th.matrix()),
                rhs: String::new(),
            },
        )
    };
    if !th.is_involutive() {
        return bad("θ² ≠ id");
    }
    if !th.is_orthogonal(rs) {
        return bad("θ not orthogonal");
    }
    if !th.is_even(rs) || !th.is_signed_permutation() {
        return bad("θ not even");
    }
    for &i in &d.pil {
        if th.apply(rs.simple(i)) != *rs.simple(i) {
            return bad(&format!("θ(α{}) ≠ α{}", i + 1, i + 1));
        }
    }
    for i in d.white() {
        match d.tilde_root(i) {
            Ok(t) if th.apply(rs.simple(i)) == crate::rootdata::neg(&t) => {}
            _ => return bad(&format!("θ(α{}) ≠ -α̃{}", i + 1, i + 1)),
        }
    }
    if d.wl.compose(&tau_linear(rs, &d.tau)) != tau_linear(rs, &d.tau).compose(&d.wl) {
        return bad("τ does not commute with w_l");
    }
    VerificationReport::pass("theta", d.instance())
}

/// One graded Satake diagram with its template; `None` when no template fits.
#[derive(Debug, Clone)]
pub struct SatakeEntry {
    pub diagram: DecoratedDiagram,
    pub class: Option<Classification>,
}

impl SatakeEntry {
    pub fn to_json(&self) -> serde_json::Value {
        let d = &self.diagram;
        serde_json::json!({
            "piL": d.pil.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "tau": d.tau.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "type": self.class.as_ref().map_or("UNCLASSIFIED", |c| c.kind.as_str()),
            "family": self.class.as_ref().map(|c| c.family),
            "variant": self.class.as_ref().map(|c| c.variant.clone()),
            "ascii": d.render(),
        })
    }
}

/// Every pseudo-symmetric decorated diagram, paired with its selection-rule verdict.
pub fn enumerate_pseudo_symmetric(rs: &RootSystem) -> Vec<(DecoratedDiagram, Option<Violation>)> {
    let mut out = Vec::new();
    for pil in enumerate_admissible(rs) {
        for tau in enumerate_taus(rs, &pil) {
            let d = DecoratedDiagram::new(rs, &pil, &tau).expect("enumerated data is valid");
            if check_pseudo_symmetric(&d).is_pass() {
                let v = violates_selection_rules(&d);
                out.push((d, v));
            }
        }
    }
    out
}

/// Graded Satake diagrams: admissible, pseudo-symmetric, free of forbidden
/// subdiagrams. A diagram matching zero or several templates keeps `class = None`.
pub fn enumerate_satake(rs: &RootSystem) -> Vec<SatakeEntry> {
    enumerate_pseudo_symmetric(rs)
        .into_iter()
        .filter(|(_, v)| v.is_none())
        .map(|(d, _)| {
            let mut cls = classify(&d);
            let class = if cls.len() == 1 { cls.pop() } else { None };
            SatakeEntry { diagram: d, class }
        })
        .collect()
}

/// The diagram whose coideal centralizes a K-matrix of kind A, B or C with block `m`.
pub fn diagram_for_kind(rs: &RootSystem, kind: &str, m: usize) -> Result<DecoratedDiagram, SatakeError> {
    let r = rs.rank();
    let id: Vec<usize> = (0..r).collect();
    let flip_tail = || {
        let mut t = id.clone();
        t.swap(r - 2, r - 1);
        t
    };
    let odd_below = |m: usize| (0..m.saturating_sub(1)).step_by(2).collect::<Vec<_>>();
    match (rs.family(), kind) {
        (Family::Gl, _) => {
            let d = rs.dim_v();
            let pil: Vec<usize> = (m..d.saturating_sub(m + 1)).collect();
            let flip: Vec<usize> = (0..r).map(|i| r - 1 - i).collect();
            DecoratedDiagram::new(rs, &pil, &flip)
        }
        (Family::OspEven, "A") if m == r - 1 => DecoratedDiagram::new(rs, &[], &flip_tail()),
        (Family::OspEven, "B") if m == r - 1 => DecoratedDiagram::new(rs, &odd_below(m), &flip_tail()),
        (_, "A") => DecoratedDiagram::new(rs, &(m..r).collect::<Vec<_>>(), &id),
        (_, "B") => {
            let mut pil = odd_below(m);
            pil.extend(m..r);
            DecoratedDiagram::new(rs, &pil, &id)
        }
        (_, _) => DecoratedDiagram::new(rs, &odd_below(r - 1), &id),
    }
}

//! Sparse operators on tensor powers of a Z2-graded space.
//!
//! The underlying space is `V = span(v_1..v_D)` with a parity per basis vector.
//! An operator of order `k` acts on `V^{⊗k}`, whose basis vector
//! `v_{u_1} ⊗ .. ⊗ v_{u_k}` is flattened to `u_1 D^{k-1} + .. + u_k` (0-based).
//!
//! Tensor products of matrix units are embedded with the Koszul rule
//! `(x_1 ⊗ .. ⊗ x_k)(u_1 ⊗ .. ⊗ u_k) = (-1)^s (x_1 u_1) ⊗ .. ⊗ (x_k u_k)`
//! where `s = sum_t |x_t| (|u_1| + .. + |u_{t-1}|)`. The abstract coefficient of
//! `e_ij ⊗ e_kl` is recovered from the embedded matrix by undoing that sign, so
//! partial supertransposes and leg flips can be taken on the abstract expansion.

use std::collections::BTreeMap;

use crate::qring::ScalarQ;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operator is not homogeneous")]
    NotHomogeneous,
}

/// Parity assignment `|i|` on the basis of `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Grading {
    parity: Vec<u8>,
}

impl Grading {
    pub fn new(parity: Vec<u8>) -> Self {
        assert!(parity.iter().all(|&p| p <= 1), "parities must be 0 or 1");
        Grading { parity }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Parity of the 0-based basis vector `i`.
    pub fn p(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    /// Splits a flat index of `V^{⊗order}` into its legs.
    pub fn split(&self, order: usize, mut idx: usize) -> Vec<usize> {
        let d = self.dim();
        let mut out = vec![0; order];
        for t in (0..order).rev() {
            out[t] = idx % d;
            idx /= d;
        }
        out
    }

    pub fn join(&self, legs: &[usize]) -> usize {
        legs.iter().fold(0, |acc, &u| acc * self.dim() + u)
    }

    /// Total parity of a flat basis index of `V^{⊗order}`.
    pub fn flat_parity(&self, order: usize, idx: usize) -> u8 {
        self.split(order, idx).iter().map(|&u| self.p(u)).sum::<u8>() % 2
    }
}

fn sign(odd: bool) -> ScalarQ {
    if odd {
        -ScalarQ::one()
    } else {
        ScalarQ::one()
    }
}

/// Square sparse matrix with `ScalarQ` entries, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    n: usize,
    rows: Vec<BTreeMap<usize, ScalarQ>>,
}

impl SparseMat {
    pub fn zero(n: usize) -> Self {
        SparseMat {
            n,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMat::zero(n);
        for i in 0..n {
            m.set(i, i, ScalarQ::one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> ScalarQ {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: ScalarQ) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &ScalarQ) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(x) => {
                let s = &*x + v;
                if s.is_zero() {
                    row.remove(&c);
                } else {
                    *x = s;
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ScalarQ)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, ScalarQ> {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, o: &SparseMat) -> SparseMat {
        assert_eq!(self.n, o.n);
        let mut out = SparseMat::zero(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, ScalarQ> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &o.rows[*k] {
                    let p = a * b;
                    match acc.get_mut(c) {
                        Some(x) => *x = &*x + &p,
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        out
    }

    pub fn add(&self, o: &SparseMat) -> SparseMat {
        let mut out = self.clone();
        for (r, c, v) in o.entries() {
            out.add_at(r, c, v);
        }
        out
    }

    pub fn sub(&self, o: &SparseMat) -> SparseMat {
        self.add(&o.scale(&-ScalarQ::one()))
    }

    pub fn scale(&self, a: &ScalarQ) -> SparseMat {
        let mut out = SparseMat::zero(self.n);
        if a.is_zero() {
            return out;
        }
        for (r, c, v) in self.entries() {
            out.set(r, c, v * a);
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.n);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// First entry (in row-major order) where `self` and `o` differ.
    pub fn first_difference(&self, o: &SparseMat) -> Option<(usize, usize, ScalarQ, ScalarQ)> {
        for r in 0..self.n {
            let keys: std::collections::BTreeSet<usize> =
                self.rows[r].keys().chain(o.rows[r].keys()).copied().collect();
            for c in keys {
                let (a, b) = (self.get(r, c), o.get(r, c));
                if a != b {
                    return Some((r, c, a, b));
                }
            }
        }
        None
    }
}

/// A linear operator on `V^{⊗order}` together with the grading of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOp {
    grading: Grading,
    order: usize,
    mat: SparseMat,
}

impl GradedOp {
    pub fn zero(grading: &Grading, order: usize) -> Self {
        let n = grading.dim().pow(order as u32);
        GradedOp {
            grading: grading.clone(),
            order,
            mat: SparseMat::zero(n),
        }
    }

    pub fn identity(grading: &Grading, order: usize) -> Self {
        let n = grading.dim().pow(order as u32);
        GradedOp {
            grading: grading.clone(),
            order,
            mat: SparseMat::identity(n),
        }
    }

    pub fn from_mat(grading: &Grading, order: usize, mat: SparseMat) -> Result<Self, LinError> {
        if mat.size() != grading.dim().pow(order as u32) {
            return Err(LinError::Dimension(format!(
                "matrix of size {} for order {order} over dim {}",
                mat.size(),
                grading.dim()
            )));
        }
        Ok(GradedOp {
            grading: grading.clone(),
            order,
            mat,
        })
    }

    /// Matrix unit `e_ij` (0-based) on `V`.
    pub fn unit(grading: &Grading, i: usize, j: usize) -> Self {
        let mut op = GradedOp::zero(grading, 1);
        op.mat.set(i, j, ScalarQ::one());
        op
    }

    pub fn diag(grading: &Grading, vals: Vec<ScalarQ>) -> Self {
        let mut op = GradedOp::zero(grading, 1);
        for (i, v) in vals.into_iter().enumerate() {
            op.mat.set(i, i, v);
        }
        op
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mat(&self) -> &SparseMat {
        &self.mat
    }

    pub fn get(&self, r: usize, c: usize) -> ScalarQ {
        self.mat.get(r, c)
    }

    /// Adds `v` at the 0-based position `(r, c)` of the order-1 matrix.
    pub fn add_entry(&mut self, r: usize, c: usize, v: &ScalarQ) {
        self.mat.add_at(r, c, v);
    }

    fn check_same(&self, o: &GradedOp) -> Result<(), LinError> {
        if self.grading != o.grading {
            return Err(LinError::GradingMismatch(format!(
                "{:?} vs {:?}",
                self.grading.parities(),
                o.grading.parities()
            )));
        }
        if self.order != o.order {
            return Err(LinError::Dimension(format!("order {} vs {}", self.order, o.order)));
        }
        Ok(())
    }

    pub fn compose(&self, o: &GradedOp) -> Result<GradedOp, LinError> {
        self.check_same(o)?;
        Ok(GradedOp {
            grading: self.grading.clone(),
            order: self.order,
            mat: self.mat.mul(&o.mat),
        })
    }

    pub fn plus(&self, o: &GradedOp) -> Result<GradedOp, LinError> {
        self.check_same(o)?;
        Ok(GradedOp {
            grading: self.grading.clone(),
            order: self.order,
            mat: self.mat.add(&o.mat),
        })
    }

    pub fn minus(&self, o: &GradedOp) -> Result<GradedOp, LinError> {
        self.check_same(o)?;
        Ok(GradedOp {
            grading: self.grading.clone(),
            order: self.order,
            mat: self.mat.sub(&o.mat),
        })
    }

    pub fn scale(&self, a: &ScalarQ) -> GradedOp {
        GradedOp {
            grading: self.grading.clone(),
            order: self.order,
            mat: self.mat.scale(a),
        }
    }

    /// Product of a chain of operators, left to right.
    pub fn chain(ops: &[&GradedOp]) -> Result<GradedOp, LinError> {
        let mut acc = ops[0].clone();
        for op in &ops[1..] {
            acc = acc.compose(op)?;
        }
        Ok(acc)
    }

    /// Parity of a homogeneous operator; the zero operator counts as even.
    pub fn parity(&self) -> Result<u8, LinError> {
        let mut par = None;
        for (r, c, _) in self.mat.entries() {
            let p = (self.grading.flat_parity(self.order, r) + self.grading.flat_parity(self.order, c)) % 2;
            match par {
                None => par = Some(p),
                Some(x) if x != p => return Err(LinError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(par.unwrap_or(0))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Ok(0)
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba` for homogeneous operators.
    pub fn supercommutator(&self, o: &GradedOp) -> Result<GradedOp, LinError> {
        let s = self.parity()? * o.parity()?;
        let ab = self.compose(o)?;
        let ba = o.compose(self)?;
        ab.minus(&ba.scale(&sign(s == 1)))
    }

    /// Supertranspose `A^t_ij = A_ji (-1)^{(|i|+|j|)|i|}` of an order-1 operator.
    pub fn supertranspose(&self) -> Result<GradedOp, LinError> {
        self.require_order(1)?;
        let mut out = GradedOp::zero(&self.grading, 1);
        for (r, c, v) in self.mat.entries() {
            // entry A_rc lands at (c, r) with sign (-1)^{(|c|+|r|)|c|}
            let odd = (self.grading.p(c) + self.grading.p(r)) * self.grading.p(c) % 2 == 1;
            out.mat.set(c, r, v * &sign(odd));
        }
        Ok(out)
    }

    fn require_order(&self, k: usize) -> Result<(), LinError> {
        if self.order != k {
            return Err(LinError::Dimension(format!("expected order {k}, got {}", self.order)));
        }
        Ok(())
    }

    /// Koszul embedding of a sum of tensor monomials into `V^{⊗order}`.
    ///
    /// Each term lists, per leg, either a matrix unit `(i, j)` or `None` for the
    /// identity on that leg.
    pub fn embed_terms<'a, I>(grading: &Grading, order: usize, terms: I) -> GradedOp
    where
        I: IntoIterator<Item = (Vec<Option<(usize, usize)>>, &'a ScalarQ)>,
    {
        let d = grading.dim();
        let mut op = GradedOp::zero(grading, order);
        for (legs, c) in terms {
            let free: Vec<usize> = (0..order).filter(|&t| legs[t].is_none()).collect();
            let count = d.pow(free.len() as u32);
            for a in 0..count {
                let mut rest = a;
                let mut input = vec![0; order];
                let mut output = vec![0; order];
                for &t in free.iter().rev() {
                    input[t] = rest % d;
                    output[t] = rest % d;
                    rest /= d;
                }
                for t in 0..order {
                    if let Some((i, j)) = legs[t] {
                        input[t] = j;
                        output[t] = i;
                    }
                }
                let mut s = 0u32;
                let mut before = 0u32;
                for t in 0..order {
                    if let Some((i, j)) = legs[t] {
                        let px = (grading.p(i) + grading.p(j)) as u32;
                        s += px * before;
                    }
                    before += grading.p(input[t]) as u32;
                }
                let v = c * &sign(s % 2 == 1);
                op.mat.add_at(grading.join(&output), grading.join(&input), &v);
            }
        }
        op
    }

    /// Order-2 operator from abstract coefficients of `e_ij ⊗ e_kl`.
    pub fn from_expansion(grading: &Grading, exp: &BTreeMap<[usize; 4], ScalarQ>) -> GradedOp {
        GradedOp::embed_terms(
            grading,
            2,
            exp.iter()
                .map(|(&[i, j, k, l], c)| (vec![Some((i, j)), Some((k, l))], c)),
        )
    }

    /// Abstract coefficients of `e_ij ⊗ e_kl` of an order-2 operator.
    pub fn expansion(&self) -> Result<BTreeMap<[usize; 4], ScalarQ>, LinError> {
        self.require_order(2)?;
        let g = &self.grading;
        let mut out = BTreeMap::new();
        for (r, c, v) in self.mat.entries() {
            let (i, k) = (r / g.dim(), r % g.dim());
            let (j, l) = (c / g.dim(), c % g.dim());
            let odd = (g.p(k) + g.p(l)) * g.p(j) % 2 == 1;
            out.insert([i, j, k, l], v * &sign(odd));
        }
        Ok(out)
    }

    /// `a ⊗ b` for order-1 operators.
    pub fn tensor(a: &GradedOp, b: &GradedOp) -> Result<GradedOp, LinError> {
        a.require_order(1)?;
        b.require_order(1)?;
        a.check_same(b)?;
        let mut exp: BTreeMap<[usize; 4], ScalarQ> = BTreeMap::new();
        for (i, j, x) in a.mat.entries() {
            for (k, l, y) in b.mat.entries() {
                exp.insert([i, j, k, l], x * y);
            }
        }
        Ok(GradedOp::from_expansion(&a.grading, &exp))
    }

    /// `a ⊗ 1` (leg 1) or `1 ⊗ a` (leg 2).
    pub fn on_leg(a: &GradedOp, leg: usize) -> Result<GradedOp, LinError> {
        a.require_order(1)?;
        let id = GradedOp::identity(&a.grading, 1);
        match leg {
            1 => GradedOp::tensor(a, &id),
            2 => GradedOp::tensor(&id, a),
            _ => Err(LinError::Dimension(format!("leg {leg} of an order-2 operator"))),
        }
    }

    /// Places an order-2 operator on legs `(a, b)` of `V^{⊗3}`, `a < b`.
    pub fn lift3(&self, legs: (usize, usize)) -> Result<GradedOp, LinError> {
        let exp = self.expansion()?;
        let (a, b) = legs;
        if !(a < b && b <= 3 && a >= 1) {
            return Err(LinError::Dimension(format!("legs {legs:?}")));
        }
        Ok(GradedOp::embed_terms(
            &self.grading,
            3,
            exp.iter().map(|(&[i, j, k, l], c)| {
                let mut t = vec![None; 3];
                t[a - 1] = Some((i, j));
                t[b - 1] = Some((k, l));
                (t, c)
            }),
        ))
    }

    /// Order-2 operator with its legs exchanged, `x_21`.
    pub fn flip(&self) -> Result<GradedOp, LinError> {
        let g = &self.grading;
        let exp = self.expansion()?;
        let out = exp
            .into_iter()
            .map(|([i, j, k, l], c)| {
                let odd = (g.p(i) + g.p(j)) * (g.p(k) + g.p(l)) % 2 == 1;
                ([k, l, i, j], c * sign(odd))
            })
            .collect();
        Ok(GradedOp::from_expansion(g, &out))
    }

    /// Supertranspose in leg 1 or 2, taken on the abstract expansion.
    pub fn partial_supertranspose(&self, leg: usize) -> Result<GradedOp, LinError> {
        let g = &self.grading;
        let exp = self.expansion()?;
        // (e_ij)^t = (-1)^{(|i|+|j|)|j|} e_ji
        let st = |i: usize, j: usize| (g.p(i) + g.p(j)) * g.p(j) % 2 == 1;
        let mut out = BTreeMap::new();
        for ([i, j, k, l], c) in exp {
            let (key, odd) = match leg {
                1 => ([j, i, k, l], st(i, j)),
                2 => ([i, j, l, k], st(k, l)),
                _ => return Err(LinError::Dimension(format!("leg {leg}"))),
            };
            out.insert(key, c * sign(odd));
        }
        Ok(GradedOp::from_expansion(g, &out))
    }

    /// Applies `x -> M x M^{-1}` to one leg, for an even involution `M` of `V`.
    pub fn conjugate_leg(&self, m: &GradedOp, leg: usize) -> Result<GradedOp, LinError> {
        let mm = GradedOp::on_leg(m, leg)?;
        mm.compose(self)?.compose(&mm)
    }

    /// Same operator over the same basis with every entry mapped by `f`.
    pub fn map_entries(&self, f: impl Fn(&ScalarQ) -> ScalarQ) -> GradedOp {
        let mut out = GradedOp::zero(&self.grading, self.order);
        for (r, c, v) in self.mat.entries() {
            out.mat.set(r, c, f(v));
        }
        out
    }

    /// Human-readable label for a flat index, e.g. `(2,1)` (1-based legs).
    pub fn index_label(&self, idx: usize) -> String {
        let legs = self.grading.split(self.order, idx);
        let parts: Vec<String> = legs.iter().map(|u| (u + 1).to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// `{dim, order, parity, entries}` with entries `[row legs.., col legs.., scalar]`
    /// (0-based legs) in lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows: Vec<(Vec<usize>, serde_json::Value)> = self
            .mat
            .entries()
            .map(|(r, c, v)| {
                let mut key = self.grading.split(self.order, r);
                key.extend(self.grading.split(self.order, c));
                (key, v.to_json())
            })
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let entries: Vec<serde_json::Value> = rows
            .into_iter()
            .map(|(key, v)| {
                let mut e: Vec<serde_json::Value> = key.into_iter().map(serde_json::Value::from).collect();
                e.push(v);
                serde_json::Value::Array(e)
            })
            .collect();
        serde_json::json!({
            "dim": self.grading.dim(),
            "order": self.order,
            "parity": self.grading.parities(),
            "entries": entries,
        })
    }

    /// Describes the first entry where two operators differ.
    pub fn describe_difference(&self, o: &GradedOp) -> Option<String> {
        self.mat.first_difference(&o.mat).map(|(r, c, a, b)| {
            format!(
                "entry row {} col {}: lhs = {a}, rhs = {b}",
                self.index_label(r),
                self.index_label(c)
            )
        })
    }
}

/// Graded permutation `P = sum (-1)^{|j|} e_ij ⊗ e_ji`.
pub fn graded_permutation(grading: &Grading) -> GradedOp {
    let d = grading.dim();
    let mut exp = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            exp.insert([i, j, j, i], sign(grading.p(j) == 1));
        }
    }
    GradedOp::from_expansion(grading, &exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g12() -> Grading {
        Grading::new(vec![1, 0, 1])
    }

    #[test]
    fn supertranspose_of_odd_unit() {
        let g = g12();
        let e21 = GradedOp::unit(&g, 1, 0);
        let t = e21.supertranspose().unwrap();
        assert_eq!(t.get(0, 1), -ScalarQ::one());
        let e12 = GradedOp::unit(&g, 0, 1);
        assert_eq!(e12.supertranspose().unwrap().get(1, 0), ScalarQ::one());
    }

    #[test]
    fn permutation_swaps_with_koszul_sign() {
        let g = g12();
        let p = graded_permutation(&g);
        // P(v_1 ⊗ v_3) = (-1)^{|1||3|} v_3 ⊗ v_1 = -v_3 ⊗ v_1
        assert_eq!(p.get(g.join(&[2, 0]), g.join(&[0, 2])), -ScalarQ::one());
        assert_eq!(p.get(g.join(&[1, 0]), g.join(&[0, 1])), ScalarQ::one());
        assert_eq!(p.compose(&p).unwrap(), GradedOp::identity(&g, 2));
    }

    #[test]
    fn expansion_round_trip() {
        let g = g12();
        let mut exp = BTreeMap::new();
        exp.insert([0, 1, 1, 2], ScalarQ::q());
        exp.insert([2, 2, 0, 1], ScalarQ::from_int(3));
        let op = GradedOp::from_expansion(&g, &exp);
        assert_eq!(op.expansion().unwrap(), exp);
    }

    #[test]
    fn tensor_is_multiplicative_up_to_koszul_sign() {
        let g = g12();
        let a = GradedOp::unit(&g, 0, 1);
        let b = GradedOp::unit(&g, 1, 2);
        let c = GradedOp::unit(&g, 1, 0);
        let d = GradedOp::unit(&g, 2, 2);
        let lhs = GradedOp::tensor(&a, &b)
            .unwrap()
            .compose(&GradedOp::tensor(&c, &d).unwrap())
            .unwrap();
        let rhs = GradedOp::tensor(&a.compose(&c).unwrap(), &b.compose(&d).unwrap()).unwrap();
        // |b||c| = 1
        assert_eq!(lhs, rhs.scale(&-ScalarQ::one()));
    }

    #[test]
    fn flip_matches_permutation_conjugation() {
        let g = g12();
        let x = GradedOp::tensor(&GradedOp::unit(&g, 0, 1), &GradedOp::unit(&g, 2, 1)).unwrap();
        let p = graded_permutation(&g);
        let pxp = GradedOp::chain(&[&p, &x, &p]).unwrap();
        assert_eq!(x.flip().unwrap(), pxp);
    }
}

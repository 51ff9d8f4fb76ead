//! Closed-form α̃ and θ for the diagrams carrying the A, B and C K-matrices.
//!
//! Shared with the acceptance target of the CLI crate.

use qsym::rootdata::{Family, RootSystem, Weight};

pub fn sum(rs: &RootSystem, terms: &[(usize, i64)]) -> Weight {
    let mut w = vec![0; rs.basis_dim()];
    for &(l, c) in terms {
        for (x, y) in w.iter_mut().zip(rs.simple(l - 1)) {
            *x += c * y;
        }
    }
    w
}

/// `Σ_{l=a}^{b} c·α_l` as (index, coefficient) pairs, 1-based.
pub fn span(a: usize, b: usize, c: i64) -> Vec<(usize, i64)> {
    (a..=b).map(|l| (l, c)).collect()
}

/// Closed-form α̃_i (1-based) for A/B/C diagrams.
pub fn expected_tilde(rs: &RootSystem, kind: &str, m: usize, i: usize) -> Vec<(usize, i64)> {
    let n = rs.rank();
    let fam = rs.family();
    if fam == Family::Gl {
        let d = rs.dim_v();
        return if i < m || i > n - m + 1 {
            vec![(d - i, 1)]
        } else if i == m && m == n - m + 1 {
            vec![(i, 1)]
        } else if i == m {
            span(m + 1, n - m + 1, 1)
        } else {
            span(m, n - m, 1)
        };
    }
    // the sum over α_{m+1}.. with the family's tail
    let tail = |from: usize| -> Vec<(usize, i64)> {
        match fam {
            Family::OspOdd => span(from, n, 2),
            Family::OspEven => {
                let mut v = span(from, n - 2, 2);
                v.extend([(n - 1, 1), (n, 1)]);
                v
            }
            _ => {
                let mut v = span(from, n - 1, 2);
                v.push((n, 1));
                v
            }
        }
    };
    match kind {
        "A" => {
            if i < m {
                vec![(i, 1)]
            } else if fam == Family::OspEven && m == n - 1 {
                vec![(if i == n - 1 { n } else { n - 1 }, 1)]
            } else if fam == Family::Spo && m == n - 1 {
                vec![(n - 1, 1), (n, 1)]
            } else if fam == Family::OspOdd && m == n {
                vec![(n, 1)]
            } else {
                let mut v = vec![(m, 1)];
                v.extend(tail(m + 1));
                v
            }
        }
        "B" => {
            if i < m {
                span(i - 1, i + 1, 1)
            } else if fam == Family::OspEven && m == n - 1 {
                vec![(n - 2, 1), (if i == n - 1 { n } else { n - 1 }, 1)]
            } else {
                let mut v = vec![(m - 1, 1), (m, 1)];
                v.extend(tail(m + 1));
                v
            }
        }
        _ => {
            if i < n - 1 {
                span(i - 1, i + 1, 1)
            } else {
                vec![(n - 2, 1), (i, 1)]
            }
        }
    }
}

/// Closed-form θ on the δ/ε (or ζ) basis vector `k` (0-based coordinate).
pub fn expected_theta(rs: &RootSystem, kind: &str, m: usize, k: usize) -> Weight {
    let dim = rs.basis_dim();
    let unit = |j: usize, s: i64| {
        let mut w = vec![0; dim];
        w[j] = s;
        w
    };
    if rs.family() == Family::Gl {
        // ζ_i = vweight(i), i' = d - 1 - i
        let d = rs.dim_v();
        let i = (0..d).find(|&j| rs.vweight(j) == &unit(k, 1)).unwrap();
        return if i < m || i >= d - m {
            rs.vweight(d - 1 - i).clone()
        } else {
            rs.vweight(i).clone()
        };
    }
    let nd = dim - rs.n_eps();
    if k >= nd {
        // ε_1 flips only for C
        return unit(k, if kind == "C" && k == nd { -1 } else { 1 });
    }
    let i = k + 1;
    let bound = if kind == "C" { rs.rank() } else { m };
    match kind {
        "A" if i <= m => unit(k, -1),
        "B" | "C" if i <= bound && i % 2 == 1 && i < bound => unit(k + 1, -1),
        "B" | "C" if i <= bound && i.is_multiple_of(2) => unit(k - 1, -1),
        _ => unit(k, 1),
    }
}

/// A/B/C diagrams on the grid of the K-matrix checks.
pub fn k_diagrams() -> Vec<(RootSystem, &'static str, usize)> {
    let mut out = Vec::new();
    for name in ["gl(1|2)", "gl(2|2)", "gl(1|4)"] {
        let rs = RootSystem::from_name(name).unwrap();
        for m in 1..=rs.dim_v() / 2 {
            out.push((rs.clone(), "A", m));
        }
    }
    for name in [
        "osp(1|2)", "osp(3|2)", "osp(2|2)", "osp(1|4)", "osp(2|4)", "spo(2|2)", "spo(4|2)", "spo(2|4)",
    ] {
        let rs = RootSystem::from_name(name).unwrap();
        for m in 1..=rs.bm() {
            out.push((rs.clone(), "A", m));
            if m % 2 == 0 {
                out.push((rs.clone(), "B", m));
            }
        }
    }
    out.push((RootSystem::from_name("osp(2|4)").unwrap(), "C", 0));
    out
}

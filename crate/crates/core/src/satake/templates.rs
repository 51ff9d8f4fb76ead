//! Family templates for graded Satake diagrams.
//!
//! Each template is a predicate on `(family, n, m, Π_l, τ)`. Periods in the
//! pictures become index progressions: "zero or more" for `( )` and "at least
//! once" for `[ ]`.

use serde::Serialize;

use super::DecoratedDiagram;
use crate::rootdata::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SatakeType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
}

impl SatakeType {
    pub fn as_str(self) -> &'static str {
        match self {
            SatakeType::I => "I",
            SatakeType::II => "II",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: SatakeType,
    pub family: &'static str,
    pub variant: String,
}

fn class(kind: SatakeType, family: &'static str, variant: impl Into<String>) -> Classification {
    Classification {
        kind,
        family,
        variant: variant.into(),
    }
}

/// 1-based positions `from, from+2, .., ≤ to`.
fn step2(from: usize, to: usize) -> Vec<usize> {
    (from..=to).step_by(2).collect()
}

fn range(from: usize, to: usize) -> Vec<usize> {
    (from..=to).collect()
}

/// All templates matched by `d`. A well-formed graded Satake diagram matches exactly one.
pub fn classify(d: &DecoratedDiagram) -> Vec<Classification> {
    use SatakeType::{I, II};
    let rs = d.root_system();
    let (fam, bn, bm) = (rs.family(), rs.bn(), rs.bm());
    let n = rs.rank();
    // 1-based Π_l
    let black: Vec<usize> = d.pil().iter().map(|i| i + 1).collect();
    let is = |v: Vec<usize>| black == v;
    let tau_id = d.tau_is_identity();
    let tau_flip = d.tau().iter().enumerate().all(|(i, &t)| t == n - 1 - i);
    let tail_flip = n >= 2 && d.tau()[n - 2] == n - 1 && d.tau().iter().enumerate().all(|(i, &t)| i >= n - 2 || t == i);
    let mut out = Vec::new();

    // A-shape: white α_1..α_m, black α_{m+1}..α_n; B-shape: black α_1, α_3, .., α_{m-1} in front.
    let a_shape = |m: usize| is(range(m + 1, n));
    let b_shape = |m: usize| {
        let mut v = step2(1, m - 1);
        v.extend(range(m + 1, n));
        is(v)
    };

    match fam {
        Family::Gl => {
            if tau_flip {
                let centered = (0..=n / 2 + 1).any(|m| 2 * m <= n + 1 && is(range(m + 1, n - m)));
                if centered {
                    out.push(class(
                        I,
                        "GL-I",
                        if n % 2 == 1 && black.is_empty() {
                            "middle"
                        } else {
                            "chain"
                        },
                    ));
                }
            }
            if tau_id && bn % 2 == 0 && bn >= 2 && is(step2(bm + 1, bm + bn - 1)) {
                out.push(class(II, "ANOM-GL", "left"));
            }
            if tau_id && bm % 2 == 0 && bm >= 2 {
                let mut v = step2(1, bm - 1);
                v.extend(step2(bm + bn + 1, n));
                if is(v) {
                    out.push(class(II, "ANOM-GL", "right"));
                }
            }
        }
        _ => {
            let name = match fam {
                Family::Spo => "SPO-I",
                Family::OspOdd => "OSP-I-odd",
                Family::OspEven if bn >= 2 => "OSP-I-even",
                _ => "OSP-I-even-2",
            };
            // the largest m whose A/B shape keeps the whole tail black
            let tail_black_max = match fam {
                Family::OspEven => n - 2,
                _ => n - 1,
            };
            let m_max_a = if fam == Family::OspOdd && bn == 0 {
                n
            } else {
                tail_black_max.min(bm)
            };
            if tau_id {
                for m in 0..=m_max_a.min(bm) {
                    if a_shape(m) {
                        out.push(class(I, name, format!("A m={m}")));
                    }
                }
                for m in (2..=m_max_a.min(bm)).step_by(2) {
                    if b_shape(m) {
                        out.push(class(I, name, format!("B m={m}")));
                    }
                }
            }
            if fam == Family::OspEven && bn == 1 && tail_flip {
                if black.is_empty() {
                    out.push(class(I, "OSP-I-even-2-flip", "A m=n-1"));
                }
                if bm % 2 == 0 && is(step2(1, bm - 1)) {
                    out.push(class(I, "C-type-diag", "B m=n-1"));
                }
            }
            // black tail: α_1..α_m white except black α_{m+1}, α_{m+3}, .., α_{m-1}, tail black
            if tau_id {
                for m in (bm + 2..=tail_black_max).step_by(2) {
                    let mut v = step2(bm + 1, m - 1);
                    v.extend(range(m + 1, n));
                    if is(v) {
                        out.push(class(II, "ANOM-OSP", format!("black-tail m={m}")));
                    }
                }
            }
            if fam == Family::OspEven && bn == 2 && tau_id && (is(vec![n - 1]) || is(vec![n])) {
                out.push(class(II, "ANOM-OSP", "half-tail"));
            }
            let white_tail_ok = match fam {
                Family::OspEven => bn >= 2,
                _ => bn >= 1,
            };
            if white_tail_ok && bm % 2 == 0 && is(step2(1, bm - 1)) {
                if tau_id {
                    out.push(class(II, "ANOM-OSP", "white-tail"));
                } else if fam == Family::OspEven && tail_flip {
                    out.push(class(II, "ANOM-OSP", "white-tail twisted"));
                }
            }
            if fam == Family::OspEven && bn == 1 && tau_id && bm % 2 == 0 && is(step2(1, bm - 1)) {
                out.push(class(II, "C-type-diag0", ""));
            }
        }
    }
    out
}

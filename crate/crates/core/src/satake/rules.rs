//! Forbidden decorated subdiagrams.
//!
//! Matching works on Gram matrix, parities and decoration only, so every
//! orientation of a pattern is found.

use serde::Serialize;

use super::DecoratedDiagram;
use crate::rootdata::Family;

/// A matched forbidden subdiagram; `nodes` are 0-based in pattern order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub nodes: Vec<usize>,
}

impl Violation {
    pub fn describe(&self) -> String {
        let v: Vec<String> = self.nodes.iter().map(|i| format!("α{}", i + 1)).collect();
        format!("{} at {}", self.rule, v.join(","))
    }
}

struct View<'a> {
    d: &'a DecoratedDiagram,
    g: Vec<Vec<i64>>,
}

impl View<'_> {
    fn r(&self) -> usize {
        self.g.len()
    }
    fn adj(&self, a: usize, b: usize) -> bool {
        a != b && self.g[a][b] != 0
    }
    fn black(&self, i: usize) -> bool {
        self.d.is_black(i)
    }
    fn odd(&self, i: usize) -> bool {
        self.d.rs.simple_parity(i) == 1
    }
    fn grey(&self, i: usize) -> bool {
        self.d.rs.is_grey(i)
    }
    fn fixed(&self, i: usize) -> bool {
        self.d.tau[i] == i
    }
    fn black_nbrs(&self, i: usize) -> Vec<usize> {
        (0..self.r()).filter(|&j| self.adj(i, j) && self.black(j)).collect()
    }
    /// `i` is black and forms a Π_l component on its own.
    fn lone_black(&self, i: usize) -> bool {
        self.black(i) && self.black_nbrs(i).is_empty()
    }
    /// Single bond between two non-isotropic nodes.
    fn simple_bond(&self, a: usize, b: usize) -> bool {
        let (aa, bb, ab) = (self.g[a][a], self.g[b][b], self.g[a][b]);
        aa != 0 && bb != 0 && 4 * ab * ab == aa * bb
    }
}

/// `C(β) ∪ {β, τβ}` is a single simple bond `● — ○` with both nodes even.
fn rvsr(v: &View) -> Option<Violation> {
    for b in 0..v.r() {
        if v.black(b) || !v.fixed(b) || v.odd(b) {
            continue;
        }
        if let [a] = v.black_nbrs(b)[..] {
            if v.lone_black(a) && !v.odd(a) && v.simple_bond(a, b) {
                return Some(Violation {
                    rule: "RVSR",
                    nodes: vec![a, b],
                });
            }
        }
    }
    None
}

/// A τ-fixed grey white node with no black neighbours next to another white node.
fn iso_odd(v: &View) -> Option<Violation> {
    for b in 0..v.r() {
        if v.black(b) || !v.grey(b) || !v.fixed(b) || !v.black_nbrs(b).is_empty() {
            continue;
        }
        if let Some(a) = (0..v.r()).find(|&a| v.adj(a, b) && !v.black(a)) {
            return Some(Violation {
                rule: "ISO-ODD",
                nodes: vec![a, b],
            });
        }
    }
    None
}

/// `α — β — γ — σ`: α, γ lone black even, β white odd τ-fixed with black
/// neighbours exactly {α, γ}, σ white even τ-fixed attached to γ.
fn four_nodes(v: &View) -> Option<Violation> {
    for b in 0..v.r() {
        if v.black(b) || !v.odd(b) || !v.fixed(b) {
            continue;
        }
        let nb = v.black_nbrs(b);
        if nb.len() != 2 || nb.iter().any(|&x| v.odd(x) || !v.lone_black(x)) {
            continue;
        }
        for (a, c) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            for s in 0..v.r() {
                if s != b && v.adj(c, s) && !v.black(s) && !v.odd(s) && v.fixed(s) {
                    return Some(Violation {
                        rule: "4NODES",
                        nodes: vec![a, b, c, s],
                    });
                }
            }
        }
    }
    None
}

/// Forbidden tails of osp(2n|2m).
fn d_tail(v: &View) -> Option<Violation> {
    if v.d.rs.family() != Family::OspEven || v.r() < 4 {
        return None;
    }
    let r = v.r();
    let (s1, s2, fork) = (r - 2, r - 1, r - 3);
    let even_lone = |x: usize| !v.odd(x) && v.lone_black(x);
    // left: α ● — β □ — γ ● fork with σ, σ' white and swapped by τ
    if r >= 5 {
        let (a, b, c) = (r - 5, r - 4, fork);
        if even_lone(a)
            && !v.black(b)
            && v.odd(b)
            && v.fixed(b)
            && even_lone(c)
            && !v.black(s1)
            && !v.black(s2)
            && !v.odd(s1)
            && v.d.tau[s1] == s2
        {
            return Some(Violation {
                rule: "D-TAIL",
                nodes: vec![a, b, c, s1, s2],
            });
        }
    }
    // right: α ● — β □ (fork) with one tail node black, the other white and τ-fixed
    let (a, b) = (r - 4, fork);
    if even_lone(a) && !v.black(b) && v.odd(b) && v.fixed(b) {
        for (c, s) in [(s1, s2), (s2, s1)] {
            if even_lone(c) && !v.black(s) && !v.odd(s) && v.fixed(s) {
                return Some(Violation {
                    rule: "D-TAIL",
                    nodes: vec![a, b, c, s],
                });
            }
        }
    }
    None
}

/// The first forbidden subdiagram found, checking RVSR, ISO-ODD, 4NODES and D-TAIL in turn.
pub fn violates_selection_rules(d: &DecoratedDiagram) -> Option<Violation> {
    let v = View { d, g: d.rs.gram() };
    rvsr(&v)
        .or_else(|| iso_odd(&v))
        .or_else(|| four_nodes(&v))
        .or_else(|| d_tail(&v))
}

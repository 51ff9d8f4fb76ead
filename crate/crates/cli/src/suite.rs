//! The verification grid as independent jobs.

use rayon::prelude::*;

use qsym::coideal::{k_matrix_cases, verify_mixture};
use qsym::kmat::{sample_params, verify_conjectures, verify_k, violate, KKind};
use qsym::natrep::{check_defining_relations, Representation};
use qsym::report::{Instance, Status, VerificationReport, Witness};
use qsym::rmat::{verify_braid, verify_ybe};
use qsym::rootdata::RootSystem;
use qsym::satake::classical::{check_spherical, Realization};
use qsym::satake::{
    check_pseudo_symmetric, check_theta, enumerate_pseudo_symmetric, enumerate_satake, is_admissible,
    violates_selection_rules, SatakeEntry,
};

use crate::config::{Check, ExplicitK, RunConfig};

#[derive(Debug, Clone)]
pub enum Job {
    Ybe(RootSystem),
    Braid(RootSystem),
    Relations(RootSystem),
    Re(RootSystem, KKind, Option<usize>, usize),
    /// A constraint-violating sample must fail the RE.
    ReConstraint(RootSystem, KKind, Option<usize>),
    Conjectures,
    Satake(RootSystem),
    Spherical(RootSystem),
    Mixture(RootSystem, KKind, Option<usize>, usize),
    Explicit(ExplicitK),
}

/// Jobs for `cfg` in a fixed order.
pub fn plan(cfg: &RunConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    let instances = cfg.instances();
    for &check in &cfg.checks {
        if check == Check::Conjectures {
            jobs.push(Job::Conjectures);
            continue;
        }
        for rs in &instances {
            let rs = rs.clone();
            match check {
                Check::Ybe => jobs.push(Job::Ybe(rs)),
                Check::Braid => jobs.push(Job::Braid(rs)),
                Check::Relations => jobs.push(Job::Relations(rs)),
                Check::Satake => jobs.push(Job::Satake(rs)),
                Check::Spherical => jobs.push(Job::Spherical(rs)),
                Check::Re | Check::Mixture => {
                    for (kind, block) in k_matrix_cases(&rs) {
                        for seed in 0..cfg.seeds {
                            jobs.push(if check == Check::Re {
                                Job::Re(rs.clone(), kind, block, seed)
                            } else {
                                Job::Mixture(rs.clone(), kind, block, seed)
                            });
                        }
                        if check == Check::Re {
                            jobs.push(Job::ReConstraint(rs.clone(), kind, block));
                        }
                    }
                }
                Check::Conjectures => unreachable!(),
            }
        }
    }
    jobs.extend(cfg.explicit.iter().cloned().map(Job::Explicit));
    jobs
}

fn sampled(
    rs: &RootSystem,
    kind: KKind,
    block: Option<usize>,
    seed: usize,
    f: impl Fn(&qsym::kmat::KParams) -> Vec<VerificationReport>,
) -> Vec<VerificationReport> {
    match sample_params(rs, kind, block, seed) {
        Ok(p) => f(&p),
        Err(e) => vec![VerificationReport::precondition(
            "re",
            Instance::of(rs).with_kind(kind.name(), block),
            e.to_string(),
        )],
    }
}

/// Re-checks an enumerated diagram and records its template.
pub fn satake_report(e: &SatakeEntry) -> VerificationReport {
    let d = &e.diagram;
    let rs = d.root_system();
    let inst = d.instance();
    let mut rep = if !is_admissible(rs, d.pil()) {
        VerificationReport::precondition("satake", inst, "not admissible")
    } else if let Some(v) = violates_selection_rules(d) {
        VerificationReport::fail(
            "satake",
            inst,
            Witness {
                location: v.describe(),
                lhs: d.render(),
                rhs: "no forbidden subdiagram".into(),
            },
        )
    } else {
        let ps = check_pseudo_symmetric(d);
        if ps.is_pass() {
            let mut th = check_theta(d);
            th.check = "satake".into();
            th
        } else {
            ps
        }
    };
    rep.notes.push(d.render());
    rep.notes.push(match &e.class {
        Some(c) => format!("type {} {} {}", c.kind.as_str(), c.family, c.variant)
            .trim_end()
            .to_string(),
        None => "UNCLASSIFIED: no family template matches".into(),
    });
    rep
}

impl Job {
    pub fn run(&self) -> Vec<VerificationReport> {
        match self {
            Job::Ybe(rs) => vec![verify_ybe(rs)],
            Job::Braid(rs) => vec![verify_braid(rs)],
            Job::Relations(rs) => vec![check_defining_relations(&Representation::new(rs))],
            Job::Re(rs, kind, block, seed) => sampled(rs, *kind, *block, *seed, |p| vec![verify_k(rs, p)]),
            Job::ReConstraint(rs, kind, block) => sampled(rs, *kind, *block, 0, |p| {
                let inst = Instance::of(rs).with_kind(kind.name(), *block);
                let rep = match violate(rs, p) {
                    None => VerificationReport::precondition("re-constraint", inst, "no tied block to break"),
                    Some(bad) => {
                        let r = verify_k(rs, &bad);
                        if r.status == Status::Fail {
                            VerificationReport::pass("re-constraint", inst.with_params(bad.digest()))
                        } else {
                            VerificationReport::fail(
                                "re-constraint",
                                inst.with_params(bad.digest()),
                                Witness {
                                    location: "violated sample".into(),
                                    lhs: r.status.to_string(),
                                    rhs: Status::Fail.to_string(),
                                },
                            )
                        }
                    }
                };
                vec![rep]
            }),
            Job::Conjectures => verify_conjectures(),
            Job::Satake(rs) => enumerate_satake(rs).iter().map(satake_report).collect(),
            Job::Spherical(rs) => {
                let re = Realization::new(rs);
                enumerate_pseudo_symmetric(rs)
                    .iter()
                    .map(|(d, _)| check_spherical(&re, d))
                    .collect()
            }
            Job::Mixture(rs, kind, block, seed) => sampled(rs, *kind, *block, *seed, |p| verify_mixture(rs, p)),
            Job::Explicit(e) => {
                let mut out = vec![verify_k(&e.rs, &e.params)];
                if !e.params.kind.is_conjecture() {
                    out.extend(verify_mixture(&e.rs, &e.params));
                }
                for r in &mut out {
                    r.notes.push(format!("config section k {}", e.name));
                }
                out
            }
        }
    }
}

/// Runs every job on `parallelism` threads and sorts by instance, then check.
///
/// The sort is stable and the parallel collect keeps job order, so the
/// result does not depend on scheduling.
pub fn run_suite(cfg: &RunConfig) -> Vec<VerificationReport> {
    let jobs = plan(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .expect("thread pool");
    let mut reports: Vec<VerificationReport> = pool.install(|| jobs.par_iter().flat_map_iter(|j| j.run()).collect());
    reports.sort_by(|a, b| a.instance.cmp(&b.instance).then_with(|| a.check.cmp(&b.check)));
    reports
}

/// One canonical JSON report per line.
pub fn render_jsonl(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s += &r.to_json();
        s.push('\n');
    }
    s
}

/// 0 all pass, 2 any FAIL (or NON-UNIQUE), 3 any PRECONDITION-FAIL.
///
/// CONJECTURE-FAIL counts as FAIL only with `strict_conjectures`.
pub fn exit_code(reports: &[VerificationReport], strict_conjectures: bool) -> i32 {
    let has = |s: Status| reports.iter().any(|r| r.status == s);
    if has(Status::Fail) || has(Status::NonUnique) || (strict_conjectures && has(Status::ConjectureFail)) {
        2
    } else if has(Status::PreconditionFail) {
        3
    } else {
        0
    }
}

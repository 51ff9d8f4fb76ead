use proptest::prelude::*;

use qsym::coideal::{
    check_commutant, closed_form, composite_expr, composite_f, diagram_for_k, k_matrix_cases, q_commutator, simple_f,
    solve_mixture, verify_mixture, CoidealError, CoidealGenerators, MixtureError, QMode, RootOp,
};
use qsym::gradedlin::GradedOp;
use qsym::kmat::{build_k, sample_params, shape, KKind, KParams, Reading};
use qsym::natrep::Representation;
use qsym::report::Status;
use qsym::rootdata::RootSystem;
use qsym::satake::{diagram_for_kind, enumerate_satake, DecoratedDiagram, SatakeType};
use qsym::ScalarQ;

const GRID: [&str; 8] = [
    "osp(1|2)", "osp(3|2)", "osp(2|2)", "osp(1|4)", "osp(2|4)", "spo(2|2)", "spo(4|2)", "spo(2|4)",
];

fn k_cases(rs: &RootSystem) -> Vec<(KKind, Option<usize>)> {
    k_matrix_cases(rs)
}

fn diagram_of(rs: &RootSystem, kind: KKind, block: Option<usize>) -> DecoratedDiagram {
    diagram_for_k(rs, kind, block).unwrap()
}

/// Solves, compares with the closed forms and checks the commutant.
fn check_instance(rs: &RootSystem, p: &KParams) {
    let tag = format!("{} {} {:?} [{}]", rs.name(), p.kind.name(), p.block, p.digest());
    let d = diagram_of(rs, p.kind, p.block);
    let rep = Representation::new(rs);
    let k = build_k(rs, p).unwrap();
    let mixtures = solve_mixture(&d, &rep, &k).unwrap_or_else(|e| panic!("{tag}: {e}"));
    assert_eq!(mixtures.len(), d.white().len(), "{tag}");
    for (i, mix) in &mixtures {
        let printed = closed_form(rs, p, *i).unwrap_or_else(|| panic!("{tag} α{}: no closed form", i + 1));
        assert_eq!(mix, &printed, "{tag} α{}", i + 1);
    }
    let mut d = d;
    d.mixtures = mixtures;
    let gens = CoidealGenerators::new(&d, &rep).unwrap();
    let rep = check_commutant(&gens, &k);
    assert_eq!(rep.status, Status::Pass, "{tag}: {}", rep.to_json());
}

#[test]
fn mixtures_on_the_k_matrix_grid() {
    for name in GRID {
        let rs = RootSystem::from_name(name).unwrap();
        for (kind, block) in k_cases(&rs) {
            for seed in 0..3 {
                check_instance(&rs, &sample_params(&rs, kind, block, seed).unwrap());
            }
        }
    }
    let gl = RootSystem::from_name("gl(2|2)").unwrap();
    for m in [1, 2] {
        for seed in 0..3 {
            check_instance(&gl, &sample_params(&gl, KKind::AGl, Some(m), seed).unwrap());
        }
    }
}

#[test]
fn mixtures_up_to_dim_8() {
    for rs in RootSystem::instances(8) {
        for (kind, block) in k_cases(&rs) {
            let p = sample_params(&rs, kind, block, 1).unwrap();
            check_instance(&rs, &p);
            for r in verify_mixture(&rs, &p) {
                assert_eq!(r.status, Status::Pass, "{}", r.to_json());
            }
        }
    }
}

/// Kinds A, B and A-GL sit on type-I diagrams; C is the one type-II diagram with a proven K.
#[test]
fn k_diagrams_are_satake() {
    for rs in RootSystem::instances(8) {
        let entries = enumerate_satake(&rs);
        for (kind, block) in k_cases(&rs) {
            let d = diagram_of(&rs, kind, block);
            let e = entries
                .iter()
                .find(|e| e.diagram.pil() == d.pil() && e.diagram.tau() == d.tau())
                .unwrap_or_else(|| panic!("{} {kind:?} {block:?} not enumerated", rs.name()));
            let want = if kind == KKind::C {
                SatakeType::II
            } else {
                SatakeType::I
            };
            assert_eq!(
                e.class.as_ref().map(|c| c.kind),
                Some(want),
                "{} {kind:?} {block:?} {:?}",
                rs.name(),
                e.class
            );
        }
    }
}

#[test]
fn c_grave_only_in_the_middle_gl_case() {
    for rs in RootSystem::instances(8) {
        for (kind, block) in k_cases(&rs) {
            let p = sample_params(&rs, kind, block, 2).unwrap();
            let d = diagram_of(&rs, kind, block);
            let k = build_k(&rs, &p).unwrap();
            let mix = solve_mixture(&d, &Representation::new(&rs), &k).unwrap();
            let middle = kind == KKind::AGl && 2 * block.unwrap() == rs.dim_v();
            for (i, x) in &mix {
                let expect = middle && *i + 1 == block.unwrap();
                assert_eq!(
                    !x.c_grave.is_zero(),
                    expect,
                    "{} {kind:?} {block:?} α{}",
                    rs.name(),
                    i + 1
                );
            }
        }
    }
    // μ = −λ switches it off
    let rs = RootSystem::from_name("gl(2|2)").unwrap();
    let lambda = ScalarQ::q() + ScalarQ::from_int(2);
    let y = ScalarQ::from_int(3);
    let c = &lambda * &lambda;
    let p = KParams::new(KKind::AGl, Some(2), lambda.clone())
        .with_mu(-lambda.clone())
        .with(1, ScalarQ::from_int(1))
        .with(4, c.clone())
        .with(2, y.clone())
        .with(3, c.checked_div(&y).unwrap());
    let d = diagram_of(&rs, KKind::AGl, Some(2));
    let mix = solve_mixture(&d, &Representation::new(&rs), &build_k(&rs, &p).unwrap()).unwrap();
    assert!(mix[&1].c_grave.is_zero());
    assert_eq!(Some(mix[&1].clone()), closed_form(&rs, &p, 1));
}

#[test]
fn osp_1_2_numeric_mixture() {
    let rs = RootSystem::from_name("osp(1|2)").unwrap();
    let one = ScalarQ::one();
    let mu = shape(&rs, KKind::A, Some(1), &one, None, Reading::Standard)
        .unwrap()
        .mu
        .unwrap();
    let p = KParams::new(KKind::A, Some(1), one.clone()).with(1, one).with(3, -mu);
    let d = diagram_of(&rs, KKind::A, Some(1));
    let rep = Representation::new(&rs);
    let k = build_k(&rs, &p).unwrap();
    let mix = solve_mixture(&d, &rep, &k).unwrap();
    assert_eq!(mix[&0].c, -ScalarQ::q_pow(-1));

    let mut d = d;
    d.mixtures = mix.clone();
    assert!(check_commutant(&CoidealGenerators::new(&d, &rep).unwrap(), &k).is_pass());
    d.mixtures.get_mut(&0).unwrap().c = &mix[&0].c * &ScalarQ::from_int(2);
    let bad = check_commutant(&CoidealGenerators::new(&d, &rep).unwrap(), &k);
    assert_eq!(bad.status, Status::Fail);
    assert!(bad.witness.unwrap().location.starts_with("X1 "));
}

#[test]
fn scalar_k_is_non_unique_and_commutes_with_everything() {
    let rs = RootSystem::from_name("osp(1|4)").unwrap();
    let rep = Representation::new(&rs);
    let k = GradedOp::identity(rs.grading(), 1).scale(&ScalarQ::from_int(5));
    let d = diagram_of(&rs, KKind::A, Some(1));
    let err = solve_mixture(&d, &rep, &k).unwrap_err();
    assert!(matches!(err, MixtureError::NonUnique(1)));
    assert_eq!(err.status(), Status::NonUnique);

    let all: Vec<usize> = (0..rs.rank()).collect();
    let whole = DecoratedDiagram::with_identity(&rs, &all).unwrap();
    let gens = CoidealGenerators::new(&whole, &rep).unwrap();
    assert!(check_commutant(&gens, &k).is_pass());
}

#[test]
fn wrong_diagram_is_a_precondition_failure() {
    let rs = RootSystem::from_name("osp(1|4)").unwrap();
    let rep = Representation::new(&rs);
    let k2 = build_k(&rs, &sample_params(&rs, KKind::A, Some(2), 0).unwrap()).unwrap();
    let err = solve_mixture(&diagram_of(&rs, KKind::A, Some(1)), &rep, &k2).unwrap_err();
    assert_eq!(err.status(), Status::PreconditionFail, "{err}");
    // no black nodes to violate: the system itself has no solution
    let k1 = build_k(&rs, &sample_params(&rs, KKind::A, Some(1), 0).unwrap()).unwrap();
    let err = solve_mixture(&diagram_of(&rs, KKind::A, Some(2)), &rep, &k1).unwrap_err();
    assert!(matches!(err, MixtureError::Inconsistent(_)), "{err}");
    assert_eq!(err.status(), Status::Fail);
}

fn op_product(a: &GradedOp, b: &GradedOp) -> GradedOp {
    a.compose(b).unwrap()
}

#[test]
fn q_commutator_basics() {
    let rs = RootSystem::from_name("osp(3|4)").unwrap();
    let rep = Representation::new(&rs);
    let f: Vec<RootOp> = (0..rs.rank()).map(|i| simple_f(&rep, i).unwrap()).collect();
    // mode 0 is the graded commutator
    for (x, y) in [(&f[1], &f[2]), (&f[1], &f[0])] {
        let plain = q_commutator(&rs, x, y, QMode::PLAIN).unwrap();
        assert_eq!(plain.op, x.op.supercommutator(&y.op).unwrap());
    }
    // orthogonal even roots: the twist vanishes
    let (a, c) = (&f[0], &f[2]);
    assert_eq!(rs.pair(&a.root, &c.root), 0);
    let v = q_commutator(&rs, a, c, QMode::Q).unwrap();
    assert_eq!(v.op, op_product(&a.op, &c.op).minus(&op_product(&c.op, &a.op)).unwrap());

    let e = GradedOp::unit(rs.grading(), 0, 0)
        .plus(&GradedOp::unit(rs.grading(), 0, 2))
        .unwrap();
    let inhom = RootOp {
        op: e,
        root: rs.simple(0).clone(),
    };
    assert!(matches!(
        q_commutator(&rs, &inhom, &f[0], QMode::Q),
        Err(CoidealError::Inhomogeneous)
    ));
}

#[test]
fn nested_odd_chain_matches_direct_product() {
    // osp(2n+1|2m) with the A-diagram at m = n−1: F = [[F_{n−1}, F_n]_q, F_n]
    let rs = RootSystem::from_name("osp(1|4)").unwrap();
    let n = rs.rank();
    let rep = Representation::new(&rs);
    let d = diagram_of(&rs, KKind::A, Some(1));
    assert_eq!(composite_expr(&d, 0).unwrap().to_string(), "[[F1,F2]_q,F2]");
    let a = simple_f(&rep, n - 2).unwrap();
    let b = simple_f(&rep, n - 1).unwrap();
    let ab = rs.pair(&a.root, &b.root);
    let (pa, pb) = (a.op.parity().unwrap(), b.op.parity().unwrap());
    let sgn = |odd: bool| if odd { -ScalarQ::one() } else { ScalarQ::one() };
    let inner = op_product(&a.op, &b.op)
        .minus(&op_product(&b.op, &a.op).scale(&(sgn(pa * pb == 1) * ScalarQ::q_pow(-ab))))
        .unwrap();
    let pi = (pa + pb) % 2;
    let outer = op_product(&inner, &b.op)
        .minus(&op_product(&b.op, &inner).scale(&sgn(pi * pb == 1)))
        .unwrap();
    assert_eq!(composite_f(&d, &rep, 0).unwrap(), outer);
}

#[test]
fn catalogued_expressions() {
    let show = |name: &str, kind: &str, m: usize, i: usize| {
        let rs = RootSystem::from_name(name).unwrap();
        composite_expr(&diagram_for_kind(&rs, kind, m).unwrap(), i - 1)
            .unwrap()
            .to_string()
    };
    assert_eq!(show("gl(2|4)", "A", 1, 1), "[[[F2,F3]_q,F4]_q,F5]_q");
    assert_eq!(show("gl(2|4)", "A", 1, 5), "[[[F1,F2]_q̄,F3]_q̄,F4]_q̄");
    assert_eq!(show("gl(2|4)", "A", 2, 1), "F5");
    assert_eq!(show("spo(2|4)", "A", 2, 2), "[F2,F3]_q^2");
    assert_eq!(show("spo(2|4)", "A", 1, 1), "[[[F1,F2]_q,F3]_q^2,F2]_q");
    assert_eq!(show("osp(2|4)", "A", 1, 1), "[[F1,F2]_q,F3]_q");
    assert_eq!(show("osp(1|6)", "A", 1, 1), "[[[[F1,F2]_q,F3]_q,F3],F2]_q");
    assert_eq!(show("osp(1|4)", "B", 2, 2), "[F1,F2]_q̄");
    assert_eq!(show("osp(2|4)", "B", 2, 2), "[F3,F1]_q");
    assert_eq!(show("osp(2|4)", "B", 2, 3), "[F2,F1]_q");
    assert_eq!(show("spo(2|4)", "B", 2, 2), "[[F2,F3]_q^2,F1]_q");
    assert_eq!(show("osp(2|4)", "C", 0, 3), "[F3,F1]_q");
    assert_eq!(show("osp(2|4)", "C", 0, 2), "[F2,F1]_q");
}

#[test]
fn uncatalogued_composites_are_reported() {
    // a type-II diagram with a non-simple α̃
    let rs = RootSystem::from_name("osp(3|4)").unwrap();
    let mut seen = false;
    for e in enumerate_satake(&rs) {
        if e.class.as_ref().map(|c| c.kind) != Some(SatakeType::II) {
            continue;
        }
        for i in e.diagram.white() {
            if let Err(err) = composite_expr(&e.diagram, i) {
                assert!(matches!(err, CoidealError::Uncataloged(..)), "{err}");
                seen = true;
            }
        }
    }
    assert!(seen);
}

fn all_composites() -> Vec<(RootSystem, DecoratedDiagram, usize)> {
    let mut out = Vec::new();
    for rs in RootSystem::instances(8) {
        for (kind, block) in k_cases(&rs) {
            let d = diagram_of(&rs, kind, block);
            for i in d.white() {
                out.push((rs.clone(), d.clone(), i));
            }
        }
    }
    out
}

#[test]
fn composites_lower_by_their_root() {
    for (rs, d, i) in all_composites() {
        let rep = Representation::new(&rs);
        let f = composite_f(&d, &rep, i).unwrap();
        assert!(
            f.mat().entries().next().is_some(),
            "{} {} α{}",
            rs.name(),
            d.key(),
            i + 1
        );
        let t = d.tilde_root(i).unwrap();
        for j in 0..rs.rank() {
            let conj = rep.k(j).compose(&f).unwrap().compose(rep.kinv(j)).unwrap();
            let s = ScalarQ::q_pow(-rs.pair(&t, rs.simple(j)));
            assert_eq!(conj, f.scale(&s), "{} {} α{} by k{}", rs.name(), d.key(), i + 1, j + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solved_mixtures_match_closed_forms(idx in 0usize..GRID.len(), pick in 0usize..8, seed in 0usize..40) {
        let rs = RootSystem::from_name(GRID[idx]).unwrap();
        let cases = k_cases(&rs);
        let (kind, block) = cases[pick % cases.len()];
        check_instance(&rs, &sample_params(&rs, kind, block, seed).unwrap());
    }
}

use qsym::kmat::{sample_params, sample_params_with, verify_conjectures, verify_k, violate, KKind, Reading};
use qsym::report::Status;
use qsym::rootdata::RootSystem;

const GRID: [&str; 8] = [
    "osp(1|2)", "osp(3|2)", "osp(2|2)", "osp(1|4)", "osp(2|4)", "spo(2|2)", "spo(4|2)", "spo(2|4)",
];

#[test]
fn a_and_b_hold_and_constraints_bite() {
    for name in GRID {
        let rs = RootSystem::from_name(name).unwrap();
        for m in 1..=rs.bm() {
            let kinds: &[KKind] = if m % 2 == 0 { &[KKind::A, KKind::B] } else { &[KKind::A] };
            for &kind in kinds {
                for seed in 0..3 {
                    let p = sample_params(&rs, kind, Some(m), seed).unwrap();
                    let rep = verify_k(&rs, &p);
                    assert_eq!(rep.status, Status::Pass, "{name} {kind} m={m}: {}", rep.to_json());
                }
                let bad = violate(&rs, &sample_params(&rs, kind, Some(m), 0).unwrap()).unwrap();
                assert_eq!(verify_k(&rs, &bad).status, Status::Fail, "{name} {kind} m={m}");
            }
        }
    }
}

#[test]
fn c_on_osp_2_4() {
    let rs = RootSystem::from_name("osp(2|4)").unwrap();
    for seed in 0..3 {
        let p = sample_params(&rs, KKind::C, None, seed).unwrap();
        assert!(verify_k(&rs, &p).is_pass());
    }
    let bad = violate(&rs, &sample_params(&rs, KKind::C, None, 0).unwrap()).unwrap();
    assert_eq!(verify_k(&rs, &bad).status, Status::Fail);
}

#[test]
fn a_gl_on_gl_2_2() {
    let rs = RootSystem::from_name("gl(2|2)").unwrap();
    for m in [1, 2] {
        let p = sample_params(&rs, KKind::AGl, Some(m), 1).unwrap();
        assert!(verify_k(&rs, &p).is_pass());
        assert_eq!(verify_k(&rs, &violate(&rs, &p).unwrap()).status, Status::Fail);
    }
}

#[test]
fn only_the_antidiagonal_corner_passes() {
    let rs = RootSystem::from_name("osp(1|2)").unwrap();
    let good = sample_params(&rs, KKind::A, Some(1), 0).unwrap();
    let printed = sample_params_with(&rs, KKind::A, Some(1), 0, Reading::CornerDiagonal).unwrap();
    assert!(verify_k(&rs, &good).is_pass());
    assert_eq!(verify_k(&rs, &printed).status, Status::Fail);
}

#[test]
fn conjectures_get_conjecture_statuses() {
    for rep in verify_conjectures() {
        assert!(
            matches!(rep.status, Status::ConjecturePass | Status::ConjectureFail),
            "{}",
            rep.to_json()
        );
    }
}

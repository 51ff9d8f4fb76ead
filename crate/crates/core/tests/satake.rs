use std::path::PathBuf;

mod common;

use proptest::prelude::*;
use qsym::kmat::{self, KKind};
use qsym::rootdata::{Family, RootSystem};
use qsym::satake::classical::{self, Realization};
use qsym::satake::{self, DecoratedDiagram, SatakeType};

use common::{expected_theta, expected_tilde, k_diagrams, sum};

const SIX: [&str; 6] = ["gl(1|2)", "gl(2|2)", "osp(1|2)", "osp(1|4)", "osp(2|4)", "spo(2|2)"];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/satake")
}

fn file_name(name: &str) -> String {
    name.replace(['(', ')'], "").replace('|', "_") + ".json"
}

#[test]
fn satake_entries_recheck_and_match_one_template() {
    for name in SIX {
        let rs = RootSystem::from_name(name).unwrap();
        for e in satake::enumerate_satake(&rs) {
            let d = &e.diagram;
            let again = DecoratedDiagram::new(&rs, d.pil(), d.tau()).expect("admissible with valid τ");
            assert!(satake::check_pseudo_symmetric(&again).is_pass(), "{d}");
            assert_eq!(satake::violates_selection_rules(&again), None, "{d}");
            assert_eq!(satake::classify(&again).len(), 1, "{d}");
            assert!(e.class.is_some(), "{d}");
        }
    }
}

#[test]
fn satake_counts() {
    let expect = [
        ("gl(1|2)", 2, 0),
        ("gl(2|2)", 4, 1),
        ("osp(1|2)", 2, 0),
        ("osp(1|4)", 4, 0),
        ("osp(2|4)", 5, 1),
        ("spo(2|2)", 2, 0),
    ];
    for (name, total, type_ii) in expect {
        let rs = RootSystem::from_name(name).unwrap();
        let all = satake::enumerate_satake(&rs);
        let ii = all
            .iter()
            .filter(|e| e.class.as_ref().map(|c| c.kind) == Some(SatakeType::II))
            .count();
        assert_eq!((all.len(), ii), (total, type_ii), "{name}");
    }
}

#[test]
fn satake_golden_json() {
    let bless = std::env::var_os("QSYM_BLESS").is_some();
    for name in SIX {
        let rs = RootSystem::from_name(name).unwrap();
        let json: Vec<_> = satake::enumerate_satake(&rs).iter().map(|e| e.to_json()).collect();
        let text = serde_json::to_string_pretty(&json).unwrap() + "\n";
        let path = golden_dir().join(file_name(name));
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(text, want, "{name} differs from {}", path.display());
    }
}

#[test]
fn tilde_roots_and_theta_closed_forms() {
    for (rs, kind, m) in k_diagrams() {
        let d = satake::diagram_for_kind(&rs, kind, m).unwrap();
        for i in d.white() {
            let want = sum(&rs, &expected_tilde(&rs, kind, m, i + 1));
            assert_eq!(d.tilde_root(i).unwrap(), want, "{d} {kind} m={m} α̃{}", i + 1);
        }
        let th = d.theta();
        for k in 0..rs.basis_dim() {
            let mut e = vec![0; rs.basis_dim()];
            e[k] = 1;
            assert_eq!(
                th.apply(&e),
                expected_theta(&rs, kind, m, k),
                "{d} {kind} m={m} basis {k}"
            );
        }
    }
}

#[test]
fn theta_on_every_enumerated_diagram() {
    for rs in RootSystem::instances(8) {
        for (d, _) in satake::enumerate_pseudo_symmetric(&rs) {
            let r = satake::check_theta(&d);
            assert!(r.is_pass(), "{}", r.to_json());
        }
    }
}

#[test]
fn spherical_up_to_dim_6() {
    for rs in RootSystem::instances(6) {
        let re = Realization::new(&rs);
        for (d, _) in satake::enumerate_pseudo_symmetric(&rs) {
            let r = classical::check_spherical(&re, &d);
            assert!(r.is_pass(), "{}", r.to_json());
        }
    }
}

fn diagram(name: &str, pil: &[usize], tau: Option<&[usize]>) -> DecoratedDiagram {
    let rs = RootSystem::from_name(name).unwrap();
    let pil: Vec<usize> = pil.iter().map(|i| i - 1).collect();
    match tau {
        Some(t) => DecoratedDiagram::new(&rs, &pil, &t.iter().map(|i| i - 1).collect::<Vec<_>>()).unwrap(),
        None => DecoratedDiagram::with_identity(&rs, &pil).unwrap(),
    }
}

#[test]
fn violators_are_trivial() {
    let cases = [
        (diagram("gl(1|2)", &[], None), "ISO-ODD"),
        (diagram("osp(3|2)", &[], None), "ISO-ODD"),
        (diagram("osp(2|4)", &[], None), "ISO-ODD"),
        (diagram("gl(3|2)", &[2], None), "RVSR"),
        (diagram("osp(1|6)", &[1], None), "RVSR"),
        (diagram("osp(5|4)", &[1, 3], None), "4NODES"),
    ];
    for (d, rule) in cases {
        let v = satake::violates_selection_rules(&d).expect("violates");
        assert_eq!(v.rule, rule, "{d}");
        let re = Realization::new(d.root_system());
        assert_eq!(classical::is_trivial(&re, &d), Ok(true), "{d}");
    }
}

#[test]
fn odd_white_next_to_black_even_is_allowed() {
    // RVSR shape with β odd: no violation
    let d = diagram("gl(2|2)", &[2], None);
    assert_eq!(d.render(), "[o]-*-[o]");
    assert_eq!(satake::violates_selection_rules(&d), None);
}

#[test]
fn a_b_shapes_beyond_bold_m_are_trivial() {
    for (name, kind, m) in [
        ("osp(3|2)", "A", 2),
        ("osp(5|2)", "A", 2),
        ("spo(4|2)", "A", 2),
        ("osp(5|4)", "B", 4),
    ] {
        let rs = RootSystem::from_name(name).unwrap();
        assert!(m > rs.bm());
        let d = satake::diagram_for_kind(&rs, kind, m).unwrap();
        assert!(satake::violates_selection_rules(&d).is_some(), "{d}");
        let re = Realization::new(&rs);
        assert_eq!(classical::is_trivial(&re, &d), Ok(true), "{d}");
    }
}

#[test]
fn k_matrix_mixtures_give_proper_k() {
    for rs in RootSystem::instances(6) {
        let re = Realization::new(&rs);
        let kinds: &[KKind] = if rs.family() == Family::Gl {
            &[KKind::AGl]
        } else {
            &[KKind::A, KKind::B, KKind::C]
        };
        for &kind in kinds {
            let blocks: Vec<Option<usize>> = if kind == KKind::C {
                vec![None]
            } else {
                (1..=rs.rank()).map(Some).collect()
            };
            for block in blocks {
                let Ok(p) = kmat::sample_params(&rs, kind, block, 0) else {
                    continue;
                };
                let Ok(k) = kmat::build_k(&rs, &p) else { continue };
                let label = if kind == KKind::C {
                    "C"
                } else if kind == KKind::B {
                    "B"
                } else {
                    "A"
                };
                let d = satake::diagram_for_kind(&rs, label, block.unwrap_or(0)).unwrap();
                assert_eq!(satake::classify(&d).len(), 1, "{d}");
                let mix = classical::mixtures_from_k(&re, &d, &classical::at_one(&k)).unwrap();
                let dims = classical::classical_k_closure(&re, &d, &mix).unwrap();
                assert!(!dims.is_whole() && dims.dim_k < dims.dim_g, "{d} {kind}: {dims:?}");
                assert!(dims.is_spherical(), "{d} {kind}: {dims:?}");
            }
        }
    }
}

fn any_diagram() -> impl Strategy<Value = (RootSystem, u32, usize)> {
    let all = RootSystem::instances(8);
    (0..all.len(), any::<u32>(), any::<usize>()).prop_map(move |(i, mask, t)| (all[i].clone(), mask, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_operator_is_an_even_orthogonal_involution((rs, mask, _) in any_diagram()) {
        let pil: Vec<usize> = (0..rs.rank()).filter(|i| mask >> i & 1 == 1).collect();
        if let Ok(w) = satake::weyl_operator(&rs, &pil) {
            prop_assert!(w.is_involutive());
            prop_assert!(w.is_orthogonal(&rs));
            prop_assert!(w.is_even(&rs));
            // w_l maps Π_l to -Π_l
            for &i in &pil {
                let img: Vec<i64> = w.apply(rs.simple(i)).iter().map(|x| -x).collect();
                prop_assert!(pil.iter().any(|&j| *rs.simple(j) == img));
            }
        }
    }

    #[test]
    fn theta_sends_white_roots_to_negative_roots((rs, mask, t) in any_diagram()) {
        let pil: Vec<usize> = (0..rs.rank()).filter(|i| mask >> i & 1 == 1).collect();
        let taus = satake::enumerate_taus(&rs, &pil);
        if !taus.is_empty() {
            let d = DecoratedDiagram::new(&rs, &pil, &taus[t % taus.len()]).unwrap();
            let th = d.theta();
            prop_assert!(th.is_involutive() && th.is_orthogonal(&rs) && th.is_even(&rs));
            for i in d.white() {
                let a = d.tilde_root(i).unwrap();
                prop_assert!(rs.is_positive_root(&a));
                prop_assert_eq!(th.apply(rs.simple(i)), a.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
    }
}

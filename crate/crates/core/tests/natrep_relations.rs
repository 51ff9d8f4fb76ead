use qsym::natrep::{check_defining_relations, Representation};
use qsym::rootdata::RootSystem;

#[test]
fn relations_on_every_instance_up_to_dim_8() {
    let all = RootSystem::instances(8);
    assert!(all.len() > 20);
    for rs in all {
        let rep = check_defining_relations(&Representation::new(&rs));
        assert!(rep.is_pass(), "{}: {}", rs.name(), rep.to_json());
    }
}

#[test]
fn names_round_trip() {
    for rs in RootSystem::instances(7) {
        assert_eq!(RootSystem::from_name(&rs.name()).unwrap(), rs);
    }
}

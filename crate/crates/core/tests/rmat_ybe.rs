use qsym::rmat::{verify_braid, verify_ybe};
use qsym::rootdata::RootSystem;

#[test]
fn ybe_and_braid_up_to_dim_8() {
    for rs in RootSystem::instances(8) {
        let y = verify_ybe(&rs);
        assert!(y.is_pass(), "{}: {}", rs.name(), y.to_json());
        let b = verify_braid(&rs);
        assert!(b.is_pass(), "{}: {}", rs.name(), b.to_json());
    }
}

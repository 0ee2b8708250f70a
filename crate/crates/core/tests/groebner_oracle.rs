mod common;

#[test]
fn membership_agrees_with_linear_algebra() {
    let (probes, members) = common::run_probes(0x6b).unwrap();
    assert_eq!(probes, 200);
    assert!((100..200).contains(&members), "{members} members");
}

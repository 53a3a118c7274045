mod cones_and_duality {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cones_and_duality.rs"));
}

#[test]
fn cones_and_duality_runs() {
    cones_and_duality::run_example().expect("cones_and_duality example should run");
}

mod mld_of_cyclic_quotients {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mld_of_cyclic_quotients.rs"));
}

#[test]
fn mld_of_cyclic_quotients_runs() {
    mld_of_cyclic_quotients::run_example().expect("mld_of_cyclic_quotients example should run");
}

mod class_group_cox {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/class_group_cox.rs"));
}

#[test]
fn class_group_cox_runs() {
    class_group_cox::run_example().expect("class_group_cox example should run");
}

mod quotient_towers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quotient_towers.rs"));
}

#[test]
fn quotient_towers_runs() {
    quotient_towers::run_example().expect("quotient_towers example should run");
}

mod fan_automorphisms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fan_automorphisms.rs"));
}

#[test]
fn fan_automorphisms_runs() {
    fan_automorphisms::run_example().expect("fan_automorphisms example should run");
}

mod acc_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/acc_sweep.rs"));
}

#[test]
fn acc_sweep_runs() {
    acc_sweep::run_example().expect("acc_sweep example should run");
}

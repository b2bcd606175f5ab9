use ramify::error::Error;
use ramify::exactmath::rat::{BreakBound, Rat};
use ramify::galois::{galois_group, Extension, StepSpec, TowerSpec};
use ramify::localfield::scalar::Ground;
use ramify::report::{
    build_report, builtin_examples, knots_tsv, not_galois_report, stable_json, Report,
    ReportOptions, REPORT_SCHEMA,
};

fn eis(coeffs: &[&str]) -> StepSpec {
    StepSpec::Eisenstein {
        coeffs: coeffs.iter().map(|s| s.to_string()).collect(),
    }
}

fn q2() -> Ground {
    Ground::Padic { p: 2 }
}

fn rat(s: &str) -> Rat {
    s.parse().unwrap()
}

fn fin(s: &str) -> BreakBound {
    BreakBound::Finite(rat(s))
}

fn sqrt2_spec() -> TowerSpec {
    TowerSpec::new(q2(), vec![eis(&["-2", "0", "1"])], None)
}

#[test]
fn square_root_of_two_full_report() {
    let report = build_report(&sqrt2_spec(), &ReportOptions::default()).unwrap();

    assert_eq!(report.schema, REPORT_SCHEMA);
    assert_eq!(report.extension.ground, "Q_2");
    assert_eq!(report.extension.degree, 2);
    assert_eq!(report.extension.e, 2);
    assert_eq!(report.extension.f, 1);
    assert_eq!(report.extension.minpoly, vec!["-2", "0", "1"]);

    let b = &report.breaks;
    assert_eq!(b.ram_profile, vec![rat("3/2")]);
    assert_eq!(b.herbrand_knots, vec![(rat("3/2"), rat("3"))]);
    assert_eq!(b.herbrand_slopes, vec![rat("2"), rat("1")]);
    assert_eq!(b.lower_breaks, vec![rat("3/2")]);
    assert_eq!(b.upper_breaks, vec![rat("3")]);
    assert_eq!(b.i_max, fin("3/2"));
    assert_eq!(b.u_max, fin("3"));
    assert_eq!(b.conductor, rat("3"));
    assert_eq!(b.derivative_identity.0, b.derivative_identity.1);

    let pm = report.pm.as_ref().unwrap();
    assert!(!pm.base_field_rows.is_empty());
    for row in &pm.base_field_rows {
        let expect = if row.m <= rat("1") {
            "counterexample"
        } else if row.m <= rat("3") {
            "holds-exhausted"
        } else {
            "holds-bound"
        };
        assert_eq!(row.verdict, expect, "m = {}", row.m);
    }
    assert_eq!(pm.lower_bound, fin("11/4"));
    let witness = pm.lower_witness.as_ref().unwrap();
    assert_eq!(witness.label, "K(pi^(1/4), w=-1)");
    assert_eq!(witness.m, rat("11/4"));
    let window = pm.window.as_ref().unwrap();
    assert_eq!(window.u, rat("3"));
    assert_eq!(window.window_low, rat("11/4"));
    assert!(pm.catalog_size > 1);
    for row in &pm.soundness {
        if !row.embedding {
            assert!(row.max_value_valuation.as_ref().unwrap() <= &rat("3"));
        }
    }

    let lat = report.lattice.as_ref().unwrap();
    assert_eq!(lat.group_order, 2);
    assert_eq!(lat.inertia_order, 2);
    let labels: Vec<&str> = lat.members.iter().map(|m| m.label.as_str()).collect();
    assert_eq!(labels, vec!["L", "K"]);
    assert_eq!(lat.members[0].u, Some(fin("3")));
    assert_eq!(lat.members[0].unramified, Some(false));
    assert_eq!(lat.members[1].u, Some(BreakBound::NegInf));
}

#[test]
fn eighth_cyclotomic_lattice_tables() {
    let example = builtin_examples()
        .into_iter()
        .find(|e| e.name == "zeta8")
        .unwrap();
    let opts = ReportOptions {
        pm: false,
        subextensions: example.subextensions,
        ..ReportOptions::default()
    };
    let report = build_report(&example.spec, &opts).unwrap();

    assert_eq!(report.breaks.upper_breaks, vec![rat("2"), rat("2"), rat("3")]);
    assert!(report.pm.is_none());

    let lat = report.lattice.as_ref().unwrap();
    assert_eq!(lat.group_order, 4);
    assert_eq!(lat.inertia_order, 4);
    assert_eq!(lat.members.len(), 5);
    assert_eq!(lat.compat.len(), 3);
    assert_eq!(lat.unverified, vec!["L"]);
    assert_eq!(lat.composite_pairs, 25);

    let quad: Vec<(&str, &[Rat])> = lat
        .compat
        .iter()
        .map(|r| (r.label.as_str(), r.induced.as_slice()))
        .collect();
    assert_eq!(
        quad,
        vec![
            ("Q_2(i)", &[rat("2")][..]),
            ("Q_2(sqrt -2)", &[rat("3")][..]),
            ("Q_2(sqrt 2)", &[rat("3")][..]),
        ]
    );

    let at: Vec<(String, &str)> = lat
        .fixed_rows
        .iter()
        .map(|r| (r.m.to_string(), r.at.as_str()))
        .collect();
    assert_eq!(
        at,
        vec![
            ("1/1".to_string(), "K"),
            ("2/1".to_string(), "K"),
            ("5/2".to_string(), "Q_2(i)"),
            ("3/1".to_string(), "Q_2(i)"),
            ("7/2".to_string(), "L"),
        ]
    );
    assert_eq!(lat.fixed_rows[3].above, "L");

    let bc: Vec<(&str, i64, &BreakBound)> = lat
        .base_change
        .iter()
        .map(|r| (r.label.as_str(), r.e_prime, &r.relative_u))
        .collect();
    assert_eq!(bc.len(), 4);
    assert!(bc.contains(&("Q_2(i)", 2, &fin("4"))));
}

#[test]
fn stable_json_agrees_across_precision() {
    let spec = sqrt2_spec();
    let opts32 = ReportOptions {
        precision: 32,
        ..ReportOptions::default()
    };
    let opts64 = ReportOptions {
        precision: 64,
        ..ReportOptions::default()
    };
    let r32 = build_report(&spec, &opts32).unwrap();
    let r64 = build_report(&spec, &opts64).unwrap();
    let j32 = stable_json(&r32);
    assert_eq!(j32, stable_json(&r64));

    let round: Report = serde_json::from_str(&j32).unwrap();
    assert_eq!(stable_json(&round), j32);

    assert_eq!(knots_tsv(&r32), "u\tf(u)\n0/1\t0/1\n3/2\t3/1\n");
}

#[test]
fn unramified_quadratic_report() {
    let spec = TowerSpec::new(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let report = build_report(&spec, &ReportOptions::default()).unwrap();

    assert_eq!(report.extension.e, 1);
    assert_eq!(report.extension.f, 2);
    assert_eq!(report.breaks.u_max, fin("0"));
    assert_eq!(report.breaks.conductor, rat("0"));

    let pm = report.pm.as_ref().unwrap();
    assert_eq!(pm.lower_bound, fin("0"));
    for row in &pm.base_field_rows {
        assert!(row.verdict.starts_with("holds"), "m = {}: {}", row.m, row.verdict);
    }

    let lat = report.lattice.as_ref().unwrap();
    assert_eq!(lat.inertia_order, 1);
    assert_eq!(lat.members[0].unramified, Some(true));
    assert_eq!(lat.members[0].u, Some(fin("0")));
}

#[test]
fn degree_one_report_is_empty_but_valid() {
    let spec = TowerSpec::new(q2(), vec![], None);
    let report = build_report(&spec, &ReportOptions::default()).unwrap();
    assert_eq!(report.extension.degree, 1);
    assert!(report.breaks.ram_profile.is_empty());
    assert_eq!(report.breaks.u_max, BreakBound::NegInf);
    let pm = report.pm.as_ref().unwrap();
    assert!(pm.base_field_rows.is_empty());
    assert_eq!(pm.lower_bound, BreakBound::NegInf);
    let lat = report.lattice.as_ref().unwrap();
    assert_eq!(lat.group_order, 1);
    assert_eq!(lat.members.len(), 1);
    assert_eq!(lat.members[0].label, "K");
}

#[test]
fn non_galois_cubic_reports_the_verdict() {
    let spec = TowerSpec::new(q2(), vec![eis(&["-2", "0", "0", "1"])], None);
    let ext = Extension::analyze(&spec, 32).unwrap();
    match galois_group(&ext) {
        Err(Error::NotGalois { found, degree }) => {
            assert_eq!((found, degree), (1, 3));
            let summary = not_galois_report(&spec, &ReportOptions::default(), found, degree).unwrap();
            assert_eq!(summary.schema, REPORT_SCHEMA);
            assert_eq!(summary.verdict, "not Galois: 1 of 3 conjugates in the field");
        }
        Err(other) => panic!("expected a non-Galois verdict, got {other}"),
        Ok(_) => panic!("expected a non-Galois verdict, got a group"),
    }
}

#[test]
fn builtin_examples_have_the_advertised_breaks() {
    let examples = builtin_examples();
    assert_eq!(examples.len(), 8);
    let opts = ReportOptions {
        pm: false,
        lattice: false,
        ..ReportOptions::default()
    };
    for ex in examples {
        let report = build_report(&ex.spec, &opts).unwrap();
        assert_eq!(report.breaks.u_max, ex.expected_u, "{}", ex.name);
        assert!(report.serre.is_none());
        assert!(report.lattice.is_none());
    }
}

#[test]
fn serre_convention_shifts_by_one() {
    let opts = ReportOptions {
        serre: true,
        pm: false,
        lattice: false,
        ..ReportOptions::default()
    };
    let report = build_report(&sqrt2_spec(), &opts).unwrap();
    let serre = report.serre.as_ref().unwrap();
    assert_eq!(serre.lower_breaks, vec![rat("2")]);
    assert_eq!(serre.upper_breaks, vec![rat("2")]);
}

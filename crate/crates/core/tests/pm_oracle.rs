//! The lifting-property oracle on the worked examples: witness
//! enumeration, verdicts through both decision routes, catalog scans and
//! the window / transport consistency checks.

use std::rc::Rc;

use ramify::exactmath::rat::Rat;
use ramify::galois::{Extension, StepSpec, TowerSpec};
use ramify::localfield::elem::VK;
use ramify::localfield::tower::TowerField;
use ramify::pm_oracle::{
    build_catalog, fontaine_window_check, hom_witnesses, m_grid, m_lower_bound, pm_verdict,
    soundness_scan, unramified_transport_check, verdict_table, CatalogKind, CatalogOptions,
    PmVerdict, QuotientTarget, ScanMode, BRUTE_AGREE_CAP,
};
use ramify::ramification::{breaks, conjugate_profile, BreakBound};
use ramify::localfield::scalar::Ground;
use ramify::Error;

fn eis(coeffs: &[&str]) -> StepSpec {
    StepSpec::Eisenstein {
        coeffs: coeffs.iter().map(|s| s.to_string()).collect(),
    }
}

fn q2() -> Ground {
    Ground::Padic { p: 2 }
}

fn q3() -> Ground {
    Ground::Padic { p: 3 }
}

fn f2t() -> Ground {
    Ground::Laurent { p: 2 }
}

fn analyze(ground: Ground, steps: Vec<StepSpec>, generator: Option<Vec<String>>) -> Extension {
    let spec = TowerSpec::new(ground, steps, generator);
    Extension::analyze(&spec, 32).unwrap()
}

fn sqrt2() -> Extension {
    analyze(q2(), vec![eis(&["-2", "0", "1"])], None)
}

fn build_field(ground: Ground, steps: Vec<StepSpec>) -> Rc<TowerField> {
    TowerSpec::new(ground, steps, None).build(32).unwrap().0
}

fn upper_break(ext: &Extension) -> Rat {
    match breaks(&conjugate_profile(ext).unwrap()).unwrap().u_max {
        BreakBound::Finite(u) => u,
        BreakBound::NegInf => panic!("trivial extension"),
    }
}

#[test]
fn witness_enumeration_on_the_worked_quadratic() {
    let ext = sqrt2();

    let at_one = QuotientTarget::new(&ext.ground, &Rat::one()).unwrap();
    assert_eq!(at_one.digit_cut(), 1);
    assert_eq!(at_one.class_count(), 2);
    let w = hom_witnesses(&ext, &at_one, BRUTE_AGREE_CAP).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].valuation(), VK::Infinite);

    let above = QuotientTarget::new(&ext.ground, &Rat::new(3, 2)).unwrap();
    assert_eq!(above.digit_cut(), 2);
    assert_eq!(above.class_count(), 4);
    assert!(hom_witnesses(&ext, &above, BRUTE_AGREE_CAP).unwrap().is_empty());

    // No witnesses in the unramified direction either.
    let unram = analyze(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let t = QuotientTarget::new(&unram.ground, &Rat::new(1, 2)).unwrap();
    assert!(hom_witnesses(&unram, &t, BRUTE_AGREE_CAP).unwrap().is_empty());
}

#[test]
fn witness_qualification_is_a_class_property() {
    // Perturbing a qualifying representative inside its residue class must
    // keep it qualifying: the polynomial value moves inside the ideal.
    let ext = sqrt2();
    let p = ext.minpoly_over(&ext.ground);
    let m = Rat::one();
    for k in [1i64, 2, 3, 5] {
        let moved = ramify::localfield::elem::TowerElem::one(&ext.ground)
            .mul_uniformizer_pow(k)
            .unwrap();
        match p.eval(&moved).valuation() {
            VK::Exact(v) => assert!(v >= m),
            VK::Infinite => {}
            other => panic!("inexact value {other:?}"),
        }
    }
}

#[test]
fn enumeration_cap_is_enforced() {
    let ext = sqrt2();
    let t = QuotientTarget::new(&ext.ground, &Rat::from_int(200)).unwrap();
    assert_eq!(t.class_count(), u128::MAX);
    match hom_witnesses(&ext, &t, BRUTE_AGREE_CAP) {
        Err(Error::EnumerationTooLarge { .. }) => {}
        other => panic!("expected enumeration overflow, got {other:?}"),
    }
}

#[test]
fn verdicts_against_the_base_field() {
    let ext = sqrt2();
    let u = upper_break(&ext);
    assert_eq!(u, Rat::from_int(3));

    // v(P(0)) = 1 and x^2 - 2 has no root downstairs.
    match pm_verdict(&ext, &ext.ground, &Rat::one(), ScanMode::Brute, None).unwrap() {
        PmVerdict::Counterexample(c) => {
            assert_eq!(c.v_p, Rat::one());
            assert_eq!(c.witness.valuation(), VK::Infinite);
            assert_eq!(c.search.roots_found, 0);
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }

    // Above the attainable maximum the property holds by exhaustion.
    match pm_verdict(&ext, &ext.ground, &Rat::new(5, 4), ScanMode::Brute, None).unwrap() {
        PmVerdict::TrueByExhaustion {
            scanned,
            embedding,
            smart,
        } => {
            assert_eq!(scanned, 4);
            assert!(!embedding);
            assert!(!smart);
        }
        other => panic!("expected exhaustion, got {other:?}"),
    }

    // Against the extension itself there is always an embedding.
    match pm_verdict(&ext, &ext.tower, &Rat::one(), ScanMode::Auto, None).unwrap() {
        PmVerdict::TrueByExhaustion { embedding, .. } => assert!(embedding),
        other => panic!("expected an embedding, got {other:?}"),
    }

    // Above the largest upper break the bound decides without scanning.
    match pm_verdict(&ext, &ext.ground, &Rat::new(13, 4), ScanMode::Brute, Some(&u)).unwrap() {
        PmVerdict::TrueByBound => {}
        other => panic!("expected the bound shortcut, got {other:?}"),
    }
}

#[test]
fn verdicts_in_the_twisted_quadratic() {
    // E = Q_2(sqrt(-2)): no root of x^2 - 2, attainable maximum 5/2.
    let ext = sqrt2();
    let e_field = build_field(q2(), vec![eis(&["2", "0", "1"])]);

    match pm_verdict(&ext, &e_field, &Rat::from_int(2), ScanMode::Brute, None).unwrap() {
        PmVerdict::Counterexample(c) => {
            // First qualifying class in digit order is the uniformizer.
            assert_eq!(c.witness.valuation(), VK::Exact(Rat::new(1, 2)));
            assert_eq!(c.v_p, Rat::from_int(2));
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }

    match pm_verdict(&ext, &e_field, &Rat::new(5, 2), ScanMode::Smart, None).unwrap() {
        PmVerdict::Counterexample(c) => {
            assert_eq!(c.v_p, Rat::new(5, 2));
            assert_eq!(c.search.roots_found, 0);
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }

    match pm_verdict(&ext, &e_field, &Rat::new(11, 4), ScanMode::Smart, None).unwrap() {
        PmVerdict::TrueByExhaustion { smart, .. } => assert!(smart),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn both_routes_agree_and_flip_once() {
    let ext = sqrt2();
    let e_field = build_field(q2(), vec![eis(&["2", "0", "1"])]);
    let grid = m_grid(&Rat::zero(), &Rat::from_int(3), 4);
    let mut last_was_counterexample = true;
    let mut flips = 0;
    for m in &grid {
        let brute = pm_verdict(&ext, &e_field, m, ScanMode::Brute, None).unwrap();
        let smart = pm_verdict(&ext, &e_field, m, ScanMode::Smart, None).unwrap();
        assert_eq!(
            brute.is_counterexample(),
            smart.is_counterexample(),
            "routes disagree at m = {m}"
        );
        let cex = brute.is_counterexample();
        assert_eq!(cex, *m <= Rat::new(5, 2), "unexpected verdict at m = {m}");
        if cex != last_was_counterexample {
            flips += 1;
        }
        last_was_counterexample = cex;
    }
    assert_eq!(flips, 1);
}

#[test]
fn grid_contents() {
    // All reduced fractions with denominator up to four: twelve quarter
    // points and six third points.
    let grid = m_grid(&Rat::zero(), &Rat::from_int(3), 4);
    assert_eq!(grid.len(), 18);
    assert_eq!(grid[0], Rat::new(1, 4));
    assert_eq!(grid[17], Rat::from_int(3));
    assert!(grid.contains(&Rat::new(11, 4)));
    assert!(grid.contains(&Rat::new(8, 3)));
    assert!(grid.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn catalog_composition_for_the_worked_quadratic() {
    let ext = sqrt2();
    let u = upper_break(&ext);
    let catalog = build_catalog(&ext, Some(&u), &[], &CatalogOptions::default()).unwrap();
    assert!(catalog.skipped.is_empty(), "skipped: {:?}", catalog.skipped);

    let count = |kind: CatalogKind| {
        catalog
            .entries
            .iter()
            .filter(|e| e.kind == kind)
            .count()
    };
    assert_eq!(count(CatalogKind::SelfField), 2);
    // Three unit twists for each ramification index 2, 3, 4.
    assert_eq!(count(CatalogKind::TameTwist), 9);
    // One perturbation per twist index that admits an integral exponent,
    // including the base field itself.
    assert_eq!(count(CatalogKind::Perturbed), 10);
}

#[test]
fn lower_bound_scan_finds_the_deep_counterexample() {
    // The strongest counterexample for the worked quadratic sits in the
    // quartic twist by -1, a quarter below the largest upper break.
    let ext = sqrt2();
    let u = upper_break(&ext);
    let catalog = build_catalog(&ext, Some(&u), &[], &CatalogOptions::default()).unwrap();
    let grid = m_grid(&Rat::zero(), &u, 4);
    let scan = m_lower_bound(&ext, &catalog.entries, &grid, ScanMode::Auto).unwrap();

    assert_eq!(scan.lower, BreakBound::Finite(Rat::new(11, 4)));
    let w = scan.witness.expect("a witness");
    assert_eq!(w.m, Rat::new(11, 4));
    assert!(w.v_p >= Rat::new(11, 4));
    assert_eq!(w.label, "K(pi^(1/4), w=-1)");

    let profile = conjugate_profile(&ext).unwrap();
    let max_profile = profile.diffs().last().unwrap();
    let report =
        fontaine_window_check(&u, &scan.lower, 4, ext.degree(), max_profile, &grid).unwrap();
    assert_eq!(report.window_low, Rat::new(11, 4));
    assert_eq!(report.crude_cap, Rat::from_int(3));
}

#[test]
fn window_check_rejects_a_shallow_bound() {
    let ext = sqrt2();
    let u = upper_break(&ext);
    let grid = m_grid(&Rat::zero(), &u, 4);
    let profile = conjugate_profile(&ext).unwrap();
    let max_profile = profile.diffs().last().unwrap();
    let shallow = BreakBound::Finite(Rat::new(5, 2));
    match fontaine_window_check(&u, &shallow, 4, ext.degree(), max_profile, &grid) {
        Err(Error::IdentityFailure(_)) => {}
        other => panic!("expected a window failure, got {other:?}"),
    }
}

#[test]
fn soundness_over_the_quadratic_catalog() {
    let ext = sqrt2();
    let u = upper_break(&ext);
    let catalog = build_catalog(&ext, Some(&u), &[], &CatalogOptions::default()).unwrap();
    let rows = soundness_scan(&ext, &catalog.entries, &u).unwrap();

    let row = |label: &str| {
        rows.iter()
            .find(|r| r.label == label)
            .unwrap_or_else(|| panic!("missing row {label}"))
    };
    assert_eq!(row("K").max_vp, Some(Rat::one()));
    assert!(row("K").brute_checked);
    assert!(row("L").embedding);
    // The twist by -1 misses the roots; the untwisted one contains them.
    assert_eq!(row("K(pi^(1/2), w=-1)").max_vp, Some(Rat::new(5, 2)));
    assert!(row("K(pi^(1/2), w=1)").embedding);
    assert_eq!(row("K(pi^(1/4), w=-1)").max_vp, Some(Rat::new(11, 4)));
}

#[test]
fn counterexamples_survive_unramified_base_change() {
    let ext = sqrt2();
    let e_field = build_field(q2(), vec![eis(&["2", "0", "1"])]);
    let cex = match pm_verdict(&ext, &e_field, &Rat::from_int(2), ScanMode::Brute, None).unwrap()
    {
        PmVerdict::Counterexample(c) => c,
        other => panic!("expected a counterexample, got {other:?}"),
    };
    assert!(unramified_transport_check(&ext, &e_field, &cex, 2).unwrap());
}

#[test]
fn verdict_table_over_the_base_field() {
    let ext = sqrt2();
    let grid = m_grid(&Rat::zero(), &Rat::new(3, 2), 2);
    let table = verdict_table(&ext, &ext.ground, &grid, ScanMode::Brute, None);
    assert_eq!(table.len(), 3);
    assert!(table[0].1.as_ref().unwrap().is_counterexample());
    assert!(table[1].1.as_ref().unwrap().is_counterexample());
    assert!(!table[2].1.as_ref().unwrap().is_counterexample());
}

#[test]
fn trivial_and_unramified_conventions() {
    // Degree one: nothing to scan, bound is minus infinity.
    let trivial = analyze(q2(), vec![], None);
    let scan = m_lower_bound(&trivial, &[], &[], ScanMode::Auto).unwrap();
    assert_eq!(scan.lower, BreakBound::NegInf);
    assert!(scan.witness.is_none());

    // Unramified: the largest upper break is zero, the positive grid is
    // empty and the scan reports the grid floor.
    let unram = analyze(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let u = upper_break(&unram);
    assert_eq!(u, Rat::zero());
    let catalog = build_catalog(&unram, Some(&u), &[], &CatalogOptions::default()).unwrap();
    let grid = m_grid(&Rat::zero(), &u, 4);
    assert!(grid.is_empty());
    let scan = m_lower_bound(&unram, &catalog.entries, &grid, ScanMode::Auto).unwrap();
    assert_eq!(scan.lower, BreakBound::Finite(Rat::zero()));
    assert!(scan.witness.is_none());
}

#[test]
fn tame_quadratic_fails_at_its_break() {
    // x^2 - 3 over Q_3: the break is 1 and the base field itself is a
    // counterexample there, so the scan attains the break exactly.
    let ext = analyze(q3(), vec![eis(&["-3", "0", "1"])], None);
    let u = upper_break(&ext);
    assert_eq!(u, Rat::one());
    let catalog = build_catalog(&ext, Some(&u), &[], &CatalogOptions::default()).unwrap();
    let grid = m_grid(&Rat::zero(), &u, 4);
    let scan = m_lower_bound(&ext, &catalog.entries, &grid, ScanMode::Auto).unwrap();
    assert_eq!(scan.lower, BreakBound::Finite(Rat::one()));
    assert_eq!(scan.witness.unwrap().label, "K");
}

#[test]
fn tame_sextic_needs_its_residue_extension() {
    // For the S3 example the witness lives over the unramified quadratic,
    // not over the base field: approximation quality jumps only once the
    // residue extension is available.
    let ext = analyze(
        q2(),
        vec![StepSpec::Unramified { degree: 2 }, eis(&["-2", "0", "0", "1"])],
        None,
    );
    let u = upper_break(&ext);
    assert_eq!(u, Rat::one());
    let subext = vec![(
        "K2".to_string(),
        TowerSpec::new(q2(), vec![StepSpec::Unramified { degree: 2 }], None),
    )];
    let opts = CatalogOptions {
        perturb: false,
        ..CatalogOptions::default()
    };
    let catalog = build_catalog(&ext, Some(&u), &subext, &opts).unwrap();
    let grid = m_grid(&Rat::zero(), &u, 4);
    let scan = m_lower_bound(&ext, &catalog.entries, &grid, ScanMode::Auto).unwrap();
    assert_eq!(scan.lower, BreakBound::Finite(Rat::one()));
    assert_eq!(scan.witness.unwrap().label, "K2");

    // Over the base field the polynomial stays at valuation zero.
    match pm_verdict(&ext, &ext.ground, &Rat::new(1, 4), ScanMode::Brute, None).unwrap() {
        PmVerdict::TrueByExhaustion { embedding, .. } => assert!(!embedding),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn equal_characteristic_scan_and_window() {
    // x^2 + tx + t over F_2((t)): wild quadratic with largest upper break
    // 2. Square twists are inseparable and excluded; the perturbed cubic
    // twist attains value 11/6, putting the scan floor at 7/4.
    let ext = analyze(f2t(), vec![eis(&["t", "t", "1"])], None);
    let u = upper_break(&ext);
    assert_eq!(u, Rat::from_int(2));
    let catalog = build_catalog(&ext, Some(&u), &[], &CatalogOptions::default()).unwrap();
    assert!(catalog
        .entries
        .iter()
        .all(|e| e.kind != CatalogKind::TameTwist || e.twist_index == 3));

    let grid = m_grid(&Rat::zero(), &u, 4);
    let scan = m_lower_bound(&ext, &catalog.entries, &grid, ScanMode::Auto).unwrap();
    assert_eq!(scan.lower, BreakBound::Finite(Rat::new(7, 4)));
    let w = scan.witness.unwrap();
    assert!(w.label.contains("perturbed"));
    assert_eq!(w.v_p, Rat::new(11, 6));

    let profile = conjugate_profile(&ext).unwrap();
    let max_profile = profile.diffs().last().unwrap();
    let report =
        fontaine_window_check(&u, &scan.lower, 3, ext.degree(), max_profile, &grid).unwrap();
    assert_eq!(report.window_low, Rat::new(5, 3));

    let rows = soundness_scan(&ext, &catalog.entries, &u).unwrap();
    assert!(rows.iter().any(|r| r.label == "K" && r.max_vp == Some(Rat::one())));
}

#[test]
fn soundness_of_the_cyclotomic_examples() {
    // Tame-twist catalogs only: the perturbed fields get large and the
    // bound checks do not need them.
    let opts = CatalogOptions {
        perturb: false,
        ..CatalogOptions::default()
    };

    let zeta8 = analyze(
        q2(),
        vec![eis(&["2", "4", "6", "4", "1"])],
        Some(vec!["1".to_string(), "1".to_string()]),
    );
    let u8 = upper_break(&zeta8);
    assert_eq!(u8, Rat::from_int(3));
    let catalog = build_catalog(&zeta8, Some(&u8), &[], &opts).unwrap();
    let rows = soundness_scan(&zeta8, &catalog.entries, &u8).unwrap();
    let base = rows.iter().find(|r| r.label == "K").unwrap();
    assert_eq!(base.max_vp, Some(Rat::one()));
    assert!(rows.iter().all(|r| r.embedding || r.brute_checked));

    let zeta9 = analyze(
        q3(),
        vec![eis(&["3", "9", "18", "21", "15", "6", "1"])],
        Some(vec!["1".to_string(), "1".to_string()]),
    );
    let u9 = upper_break(&zeta9);
    assert_eq!(u9, Rat::from_int(2));
    let catalog = build_catalog(&zeta9, Some(&u9), &[], &opts).unwrap();
    let rows = soundness_scan(&zeta9, &catalog.entries, &u9).unwrap();
    let base = rows.iter().find(|r| r.label == "K").unwrap();
    assert_eq!(base.max_vp, Some(Rat::one()));
}

//! Profiles, transition functions, breaks, disc covers, conductors and
//! the point identities on the worked examples.

use ramify::exactmath::rat::Rat;
use ramify::galois::{galois_group, Extension, StepSpec, TowerSpec};
use ramify::localfield::elem::TowerElem;
use ramify::localfield::scalar::Ground;
use ramify::ramification::{
    breaks, conductor, conjugate_profile, derivative_valuation_check, disc_cover,
    fontaine_identity_check, krasner_check, lower_filtration, p_part,
    profile_from_roots, serre_lower_break, serre_upper_break, BreakBound, RamProfile,
};

fn eis(coeffs: &[&str]) -> StepSpec {
    StepSpec::Eisenstein {
        coeffs: coeffs.iter().map(|s| s.to_string()).collect(),
    }
}

fn gen(lits: &[&str]) -> Option<Vec<String>> {
    Some(lits.iter().map(|s| s.to_string()).collect())
}

fn q2() -> Ground {
    Ground::Padic { p: 2 }
}

fn q3() -> Ground {
    Ground::Padic { p: 3 }
}

fn rats(pairs: &[(i64, i64)]) -> Vec<Rat> {
    pairs.iter().map(|&(n, d)| Rat::new(n, d)).collect()
}

fn analyze(ground: Ground, steps: Vec<StepSpec>, generator: Option<Vec<String>>) -> Extension {
    let spec = TowerSpec::new(ground, steps, generator);
    Extension::analyze(&spec, 32).unwrap()
}

#[test]
fn sqrt2_profile_and_breaks() {
    let ext = analyze(q2(), vec![eis(&["-2", "0", "1"])], None);
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(profile.diffs(), &rats(&[(3, 2)]));

    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.i_max, BreakBound::Finite(Rat::new(3, 2)));
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::from_int(3)));
    assert_eq!(brk.upper, rats(&[(3, 1)]));
    assert_eq!(
        brk.f.knots(),
        &[
            (Rat::zero(), Rat::zero()),
            (Rat::new(3, 2), Rat::from_int(3))
        ]
    );
    assert_eq!(brk.f.slopes(), rats(&[(2, 1), (1, 1)]));

    // Classical numbering for the literature cross-check.
    assert_eq!(serre_lower_break(2, &Rat::new(3, 2)), Rat::from_int(2));
    assert_eq!(serre_upper_break(&Rat::from_int(3)), Rat::from_int(2));
}

#[test]
fn sqrt2_two_profile_routes_agree() {
    let ext = analyze(q2(), vec![eis(&["-2", "0", "1"])], None);
    let g = galois_group(&ext).unwrap();
    assert_eq!(
        conjugate_profile(&ext).unwrap(),
        profile_from_roots(&ext, &g).unwrap()
    );
}

#[test]
fn zeta8_profile_breaks_and_wild_order() {
    let ext = analyze(q2(), vec![eis(&["2", "4", "6", "4", "1"])], gen(&["1", "1"]));
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(profile.diffs(), &rats(&[(1, 2), (1, 2), (1, 1)]));

    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.upper, rats(&[(2, 1), (2, 1), (3, 1)]));
    assert_eq!(brk.i_max, BreakBound::Finite(Rat::one()));
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::from_int(3)));
    assert_eq!(
        brk.f.knots(),
        &[
            (Rat::zero(), Rat::zero()),
            (Rat::new(1, 2), Rat::from_int(2)),
            (Rat::one(), Rat::from_int(3))
        ]
    );
    assert_eq!(brk.f.slopes(), rats(&[(4, 1), (2, 1), (1, 1)]));

    // Just above 1 the upper filtration is the wild part of inertia.
    assert_eq!(brk.upper_order_above(&Rat::one()), p_part(4, 2));

    let lf = lower_filtration(&profile);
    assert_eq!(
        lf.steps,
        vec![(Rat::new(1, 2), 4), (Rat::one(), 2)]
    );
    assert_eq!(lf.order_at(&Rat::new(1, 4)), 4);
    assert_eq!(lf.order_at(&Rat::new(3, 4)), 2);
    assert_eq!(lf.order_at(&Rat::from_int(2)), 1);
}

#[test]
fn unramified_profile_is_zero() {
    let ext = analyze(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(profile.diffs(), &rats(&[(0, 1)]));

    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::zero()));
    // f = identity: no positive breaks.
    assert_eq!(brk.f.knots().len(), 1);
    assert_eq!(brk.f.final_slope(), &Rat::one());
}

#[test]
fn trivial_extension_sentinel() {
    let profile = RamProfile::new(Vec::new(), 1);
    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.i_max, BreakBound::NegInf);
    assert_eq!(brk.u_max, BreakBound::NegInf);
    assert!(brk.u_max.finite().is_none());
}

#[test]
fn tame_cube_profile_and_unit_break() {
    let ext = analyze(
        q2(),
        vec![StepSpec::Unramified { degree: 2 }, eis(&["-2", "0", "0", "1"])],
        None,
    );
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(
        profile.diffs(),
        &rats(&[(0, 1), (0, 1), (0, 1), (1, 3), (1, 3)])
    );
    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::one()));
    // Tame: nothing survives above 1.
    assert_eq!(brk.upper_order_above(&Rat::one()), 1);
    assert_eq!(p_part(3, 2), 1);
}

#[test]
fn zeta9_profile_and_breaks() {
    let ext = analyze(
        q3(),
        vec![eis(&["3", "9", "18", "21", "15", "6", "1"])],
        gen(&["1", "1"]),
    );
    assert_eq!(ext.degree(), 6);
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(
        profile.diffs(),
        &rats(&[(1, 6), (1, 6), (1, 6), (1, 2), (1, 2)])
    );
    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::from_int(2)));
    assert_eq!(
        brk.f.knots(),
        &[
            (Rat::zero(), Rat::zero()),
            (Rat::new(1, 6), Rat::one()),
            (Rat::new(1, 2), Rat::from_int(2))
        ]
    );
    // Wild part of inertia has order 3.
    assert_eq!(brk.upper_order_above(&Rat::one()), p_part(6, 3));
}

#[test]
fn equal_characteristic_profile() {
    let ext = analyze(
        Ground::Laurent { p: 2 },
        vec![eis(&["t", "t", "1"])],
        None,
    );
    let profile = conjugate_profile(&ext).unwrap();
    assert_eq!(profile.diffs(), &rats(&[(1, 1)]));
    let brk = breaks(&profile).unwrap();
    assert_eq!(brk.u_max, BreakBound::Finite(Rat::from_int(2)));
}

#[test]
fn sqrt2_disc_cover_and_conductor() {
    let ext = analyze(q2(), vec![eis(&["-2", "0", "1"])], None);
    let g = galois_group(&ext).unwrap();
    let profile = conjugate_profile(&ext).unwrap();
    let brk = breaks(&profile).unwrap();

    // m = 2: radius exponent 1 <= 3/2, one two-element component.
    let dc = disc_cover(&ext, &g.roots, &brk, &Rat::from_int(2)).unwrap();
    assert_eq!(dc.radius, Rat::one());
    assert_eq!(dc.components, vec![vec![0, 1]]);
    assert!(!dc.qpp_holds);
    assert_eq!(dc.q_holds, dc.qpp_holds);

    // m = 7/2: radius exponent 2 > 3/2, singletons.
    let dc = disc_cover(&ext, &g.roots, &brk, &Rat::new(7, 2)).unwrap();
    assert_eq!(dc.radius, Rat::from_int(2));
    assert_eq!(dc.components.len(), 2);
    assert!(dc.qpp_holds);
    assert_eq!(dc.q_holds, dc.qpp_holds);

    assert_eq!(conductor(&g.roots, &brk).unwrap(), Rat::from_int(3));
}

#[test]
fn disc_cover_agreement_on_grid() {
    // Q'' and the sampled verdict agree on a grid of m with denominators
    // up to 4, and the verdict is monotone in m.
    let ext = analyze(q2(), vec![eis(&["2", "4", "6", "4", "1"])], gen(&["1", "1"]));
    let g = galois_group(&ext).unwrap();
    let profile = conjugate_profile(&ext).unwrap();
    let brk = breaks(&profile).unwrap();

    let mut last: Option<bool> = None;
    for num in 1..=20 {
        let m = Rat::new(num, 4);
        let dc = disc_cover(&ext, &g.roots, &brk, &m).unwrap();
        assert_eq!(dc.q_holds, dc.qpp_holds, "disagreement at m = {m}");
        if let Some(prev) = last {
            assert!(!prev || dc.qpp_holds, "verdict not monotone at m = {m}");
        }
        last = Some(dc.qpp_holds);
        // Above the largest upper break the discs always separate.
        let u = brk.u_max.finite().unwrap();
        assert_eq!(dc.qpp_holds, &m > u);
    }

    assert_eq!(conductor(&g.roots, &brk).unwrap(), Rat::from_int(3));
}

#[test]
fn unramified_conductor_is_zero() {
    let ext = analyze(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let g = galois_group(&ext).unwrap();
    let profile = conjugate_profile(&ext).unwrap();
    let brk = breaks(&profile).unwrap();
    assert_eq!(conductor(&g.roots, &brk).unwrap(), Rat::zero());
    // Any positive m separates the two unit-distance roots.
    let dc = disc_cover(&ext, &g.roots, &brk, &Rat::new(1, 2)).unwrap();
    assert!(dc.qpp_holds);
    assert_eq!(dc.q_holds, dc.qpp_holds);
}

#[test]
fn fontaine_identity_at_explicit_points() {
    let ext = analyze(q2(), vec![eis(&["-2", "0", "1"])], None);
    let g = galois_group(&ext).unwrap();
    let profile = conjugate_profile(&ext).unwrap();
    let brk = breaks(&profile).unwrap();

    // beta = 0: v(P(0)) = v(-2) = 1; max v(z - 0) = 1/2; f(1/2) = 1.
    let beta = TowerElem::zero(&ext.tower);
    let (lhs, rhs) = fontaine_identity_check(&ext, &g.roots, &brk.f, &beta).unwrap();
    assert_eq!(lhs, Rat::one());
    assert_eq!(rhs, Rat::one());

    // beta = alpha + 4: v(P(beta)) = 7/2; max v(z - beta) = v(4) = 2;
    // f(2) = 3 + 1/2.
    let four = TowerElem::from_int(&ext.tower, 4);
    let beta = ext.alpha.add(&four);
    let (lhs, rhs) = fontaine_identity_check(&ext, &g.roots, &brk.f, &beta).unwrap();
    assert_eq!(lhs, Rat::new(7, 2));
    assert_eq!(rhs, Rat::new(7, 2));
    assert_eq!(brk.f.eval(&Rat::from_int(2)).unwrap(), Rat::new(7, 2));

    // beta = a root: degenerate, reported as a precision error.
    assert!(fontaine_identity_check(&ext, &g.roots, &brk.f, &ext.alpha).is_err());
}

#[test]
fn krasner_certificates() {
    let ext = analyze(q2(), vec![eis(&["-2", "0", "1"])], None);
    let g = galois_group(&ext).unwrap();

    // x = alpha + 4: v(x - alpha) = 2 > 3/2, certifies alpha.
    let four = TowerElem::from_int(&ext.tower, 4);
    let x = ext.alpha.add(&four);
    assert_eq!(
        krasner_check(&x, &g.roots).unwrap(),
        Some(g.identity),
    );

    // x = 0: distance 1/2 to both roots, no certificate.
    let x = TowerElem::zero(&ext.tower);
    assert_eq!(krasner_check(&x, &g.roots).unwrap(), None);

    // x = a root itself.
    assert_eq!(
        krasner_check(&ext.alpha, &g.roots).unwrap(),
        Some(g.identity)
    );
}

#[test]
fn derivative_valuation_identity() {
    for (ground, steps, generator) in [
        (q2(), vec![eis(&["-2", "0", "1"])], None),
        (q2(), vec![eis(&["2", "4", "6", "4", "1"])], gen(&["1", "1"])),
        (q2(), vec![StepSpec::Unramified { degree: 2 }], None),
        (
            q2(),
            vec![StepSpec::Unramified { degree: 2 }, eis(&["-2", "0", "0", "1"])],
            None,
        ),
        (q3(), vec![eis(&["3", "9", "18", "21", "15", "6", "1"])], gen(&["1", "1"])),
    ] {
        let ext = analyze(ground, steps, generator);
        let (lhs, rhs) = derivative_valuation_check(&ext).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn upper_order_matches_transition_of_lower_order() {
    // #G^(m) = #G_(p_inv(m)) on a grid, tying the two numberings together.
    let ext = analyze(q2(), vec![eis(&["2", "4", "6", "4", "1"])], gen(&["1", "1"]));
    let profile = conjugate_profile(&ext).unwrap();
    let brk = breaks(&profile).unwrap();
    for num in 0..=16 {
        let m = Rat::new(num, 4);
        let t = brk.p_inv.eval(&m).unwrap();
        assert_eq!(brk.upper_order_at(&m), profile.order_at(&t));
    }
}

//! Extension building, minimal polynomials, and Galois groups on the
//! worked examples.

use ramify::exactmath::rat::Rat;
use ramify::galois::{galois_group, Extension, StepSpec, TowerSpec};
use ramify::localfield::elem::VK;
use ramify::localfield::scalar::Ground;
use ramify::Error;

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

fn minpoly_ints(ext: &Extension) -> Vec<i64> {
    ext.minpoly
        .coeffs()
        .iter()
        .map(|c| {
            let s = &c.coeffs()[0];
            let n = s.to_bigint().unwrap_or_else(|| panic!("inexact coefficient {s}"));
            n.to_string().parse().unwrap()
        })
        .collect()
}

#[test]
fn sqrt2_minpoly_and_group() {
    let spec = TowerSpec::new(q2(), vec![eis(&["-2", "0", "1"])], None);
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(ext.degree(), 2);
    assert_eq!(ext.ram_index(), 2);
    assert_eq!(ext.residue_degree(), 1);
    assert_eq!(minpoly_ints(&ext), vec![-2, 0, 1]);

    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 2);
    let other = 1 - g.identity;
    assert_eq!(g.table[other][other], g.identity);
    // i(sigma) = v(z - alpha) = 3/2.
    let diff = g.roots[other].sub(&ext.alpha);
    assert_eq!(diff.valuation(), VK::Exact(Rat::new(3, 2)));
}

#[test]
fn unramified_quadratic_minpoly() {
    let spec = TowerSpec::new(q2(), vec![StepSpec::Unramified { degree: 2 }], None);
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(ext.ram_index(), 1);
    assert_eq!(ext.residue_degree(), 2);
    assert_eq!(minpoly_ints(&ext), vec![1, 1, 1]);

    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 2);
    let frob = 1 - g.identity;
    // Roots differ by a unit.
    let diff = g.roots[frob].sub(&ext.alpha);
    assert_eq!(diff.valuation(), VK::Exact(Rat::zero()));
}

#[test]
fn zeta8_minpoly_is_x4_plus_1() {
    let spec = TowerSpec::new(
        q2(),
        vec![eis(&["2", "4", "6", "4", "1"])],
        gen(&["1", "1"]),
    );
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(ext.degree(), 4);
    assert_eq!(minpoly_ints(&ext), vec![1, 0, 0, 0, 1]);

    // Klein four group: every non-identity element has order 2.
    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 4);
    for s in 0..4 {
        if s != g.identity {
            assert_eq!(g.element_order(s), 2);
        }
    }
    // Latin square.
    for i in 0..4 {
        let mut row: Vec<usize> = g.table[i].clone();
        let mut col: Vec<usize> = (0..4).map(|j| g.table[j][i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        assert_eq!(row, vec![0, 1, 2, 3]);
        assert_eq!(col, vec![0, 1, 2, 3]);
    }
    // Subgroup lattice of the Klein four group: 1 + 3 + 1.
    let subs = g.subgroups();
    assert_eq!(subs.len(), 5);
    assert_eq!(subs.iter().filter(|h| h.len() == 2).count(), 3);
}

#[test]
fn zeta4_generator_with_infinite_digit_expansion() {
    // generator -1 + pi has no finite canonical digit expansion; the
    // identity root must still be matched through the separation bound.
    let spec = TowerSpec::new(q2(), vec![eis(&["2", "-2", "1"])], gen(&["-1", "1"]));
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(minpoly_ints(&ext), vec![1, 0, 1]);
    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 2);
}

#[test]
fn tame_cube_auto_generator_and_s3() {
    let spec = TowerSpec::new(
        q2(),
        vec![StepSpec::Unramified { degree: 2 }, eis(&["-2", "0", "0", "1"])],
        None,
    );
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(ext.degree(), 6);
    assert_eq!(ext.ram_index(), 3);
    assert_eq!(ext.residue_degree(), 2);

    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 6);
    // S_3: nonabelian, three elements of order 2, two of order 3.
    let orders: Vec<usize> = (0..6).map(|s| g.element_order(s)).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
    assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    let noncommuting = (0..6).any(|a| (0..6).any(|b| g.table[a][b] != g.table[b][a]));
    assert!(noncommuting);
    // 6 subgroups: 1, three C2, C3, S3.
    assert_eq!(g.subgroups().len(), 6);
}

#[test]
fn cbrt2_is_not_galois() {
    let spec = TowerSpec::new(q2(), vec![eis(&["-2", "0", "0", "1"])], None);
    let ext = Extension::analyze(&spec, 32).unwrap();
    match galois_group(&ext) {
        Err(Error::NotGalois { found, degree }) => {
            assert_eq!(found, 1);
            assert_eq!(degree, 3);
        }
        other => panic!("expected NotGalois, got {:?}", other.map(|g| g.order())),
    }
}

#[test]
fn artin_schreier_like_quadratic_in_char_2() {
    let spec = TowerSpec::new(
        Ground::Laurent { p: 2 },
        vec![eis(&["t", "t", "1"])],
        None,
    );
    let ext = Extension::analyze(&spec, 32).unwrap();
    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 2);
    let other = 1 - g.identity;
    // sigma(pi) = pi + t, so i(sigma) = v(t) = 1.
    let diff = g.roots[other].sub(&ext.alpha);
    assert_eq!(diff.valuation(), VK::Exact(Rat::one()));
}

#[test]
fn inseparable_input_is_rejected() {
    let spec = TowerSpec::new(Ground::Laurent { p: 2 }, vec![eis(&["t", "0", "1"])], None);
    let ext = Extension::analyze(&spec, 32).unwrap();
    match galois_group(&ext) {
        Err(Error::Inseparable) => {}
        other => panic!("expected Inseparable, got {:?}", other.map(|g| g.order())),
    }
}

#[test]
fn mixed_tower_auto_generator() {
    // Unramified quadratic followed by x^2 - 2x + 2.
    let spec = TowerSpec::new(
        q2(),
        vec![StepSpec::Unramified { degree: 2 }, eis(&["2", "-2", "1"])],
        None,
    );
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(ext.degree(), 4);
    assert_eq!(ext.ram_index(), 2);
    assert_eq!(ext.residue_degree(), 2);
    let g = galois_group(&ext).unwrap();
    assert_eq!(g.order(), 4);
}

#[test]
fn spec_json_round_trip() {
    let text = r#"{
        "schema": "ramify-spec/1",
        "base": {"kind": "padic", "p": 2},
        "steps": [{"type": "eisenstein", "coeffs": ["-2", "0", "1"]}]
    }"#;
    let spec = TowerSpec::from_json(text).unwrap();
    let ext = Extension::analyze(&spec, 32).unwrap();
    assert_eq!(minpoly_ints(&ext), vec![-2, 0, 1]);

    let bad = r#"{"schema": "other/9", "base": {"kind": "padic", "p": 2}}"#;
    assert!(TowerSpec::from_json(bad).is_err());

    let laurent = r#"{
        "schema": "ramify-spec/1",
        "base": {"kind": "laurent", "p": 2},
        "steps": [{"type": "eisenstein", "coeffs": ["t", "t", "1"]}]
    }"#;
    let spec = TowerSpec::from_json(laurent).unwrap();
    assert!(Extension::analyze(&spec, 32).is_ok());
}

//! Assembled machine-readable reports: one JSON document per analyzed
//! extension carrying the break data, the scan results and the lattice
//! tables, with every number exact. Reports are byte-stable across runs
//! and across working precisions, so regenerating at higher precision is
//! itself a consistency check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rat::{BreakBound, Rat};
use crate::filtration::{
    base_change_inequality_check, composite_break_check, fixed_field_table, member_break,
    quotient_compatibility_check, residue_action_kernel, structure_checks, subextension_lattice,
    upper_filtration,
};
use crate::galois::{galois_group, Extension, StepSpec, TowerSpec};
use crate::localfield::elem::VK;
use crate::localfield::scalar::Ground;
use crate::pm_oracle::{
    build_catalog, fontaine_window_check, m_grid, m_lower_bound, soundness_scan, verdict_table,
    CatalogOptions, PmVerdict, ScanMode,
};
use crate::ramification::{
    breaks, conductor, conjugate_profile, derivative_valuation_check, serre_lower_break,
    serre_upper_break,
};

pub const REPORT_SCHEMA: &str = "ramify-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub ground: String,
    pub degree: usize,
    pub e: i64,
    pub f: usize,
    /// Minimal polynomial of the generator over the ground field,
    /// ascending coefficient literals.
    pub minpoly: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BreakSection {
    pub ram_profile: Vec<Rat>,
    /// Knots of the transition function past the origin.
    pub herbrand_knots: Vec<(Rat, Rat)>,
    pub herbrand_slopes: Vec<Rat>,
    pub lower_breaks: Vec<Rat>,
    pub upper_breaks: Vec<Rat>,
    pub i_max: BreakBound,
    pub u_max: BreakBound,
    /// Disc-separation threshold; equality with the largest upper break
    /// is asserted during assembly.
    pub conductor: Rat,
    /// Profile sum and derivative valuation, two routes to one number.
    pub derivative_identity: (Rat, Rat),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SerreSection {
    pub lower_breaks: Vec<Rat>,
    pub upper_breaks: Vec<Rat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PmRow {
    pub m: Rat,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_valuation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_valuation: Option<Rat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerWitnessOut {
    pub label: String,
    pub m: Rat,
    pub value_valuation: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowOut {
    pub u: Rat,
    pub lower: BreakBound,
    pub window_low: Rat,
    pub crude_cap: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SoundnessOut {
    pub label: String,
    pub embedding: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_value_valuation: Option<Rat>,
    pub brute_checked: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PmSection {
    pub grid_denominator: i64,
    /// Verdicts over the base field itself.
    pub base_field_rows: Vec<PmRow>,
    pub lower_bound: BreakBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_witness: Option<LowerWitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowOut>,
    pub soundness: Vec<SoundnessOut>,
    pub catalog_size: usize,
    pub skipped: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MemberOut {
    pub label: String,
    pub degree: usize,
    pub order: usize,
    pub normal: bool,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<BreakBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unramified: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixedRowOut {
    pub m: Rat,
    pub at: String,
    pub order_at: usize,
    pub above: String,
    pub order_above: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompatOut {
    pub label: String,
    pub induced: Vec<Rat>,
    pub direct: Vec<Rat>,
    pub u: BreakBound,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseChangeOut {
    pub label: String,
    pub e_prime: i64,
    pub relative_u: BreakBound,
    pub bound: BreakBound,
    pub equality: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSection {
    pub group_order: usize,
    pub inertia_order: usize,
    pub members: Vec<MemberOut>,
    pub fixed_rows: Vec<FixedRowOut>,
    pub compat: Vec<CompatOut>,
    pub unverified: Vec<String>,
    pub composite_pairs: usize,
    pub base_change: Vec<BaseChangeOut>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub extension: ExtensionSummary,
    pub breaks: BreakSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub serre: Option<SerreSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pm: Option<PmSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
    /// Wall-clock assembly time. Excluded from stability comparisons.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Verdict of a spec whose splitting test fails: reported, not raised.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NotGaloisReport {
    pub schema: String,
    pub extension: ExtensionSummary,
    pub verdict: String,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub precision: i64,
    pub grid_denominator: i64,
    pub catalog: CatalogOptions,
    pub serre: bool,
    pub pm: bool,
    pub lattice: bool,
    /// Labeled descriptions of known subextensions, used both as oracle
    /// test fields and to name lattice members.
    pub subextensions: Vec<(String, TowerSpec)>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            precision: crate::galois::DEFAULT_PRECISION,
            grid_denominator: 4,
            catalog: CatalogOptions::default(),
            serre: false,
            pm: true,
            lattice: true,
            subextensions: Vec::new(),
        }
    }
}

pub fn ground_name(g: Ground) -> String {
    match g {
        Ground::Padic { p } => format!("Q_{p}"),
        Ground::Laurent { p } => format!("F_{p}((t))"),
    }
}

fn vk_string(v: &VK) -> String {
    match v {
        VK::Infinite => "inf".to_string(),
        VK::Exact(r) => r.to_string(),
        VK::AtLeast(r) => format!(">={r}"),
    }
}

pub fn extension_summary(spec: &TowerSpec, ext: &Extension) -> ExtensionSummary {
    let minpoly = ext
        .minpoly
        .coeffs()
        .iter()
        .map(|c| {
            c.coeffs()[0]
                .to_literal()
                .unwrap_or_else(|| "?".to_string())
        })
        .collect();
    ExtensionSummary {
        ground: ground_name(ext.tower.ground_field()),
        degree: ext.degree(),
        e: ext.ram_index(),
        f: ext.residue_degree(),
        minpoly,
        generator: spec.generator.clone(),
    }
}

fn verdict_row(m: &Rat, verdict: &Result<PmVerdict>) -> PmRow {
    match verdict {
        Ok(PmVerdict::TrueByBound) => PmRow {
            m: m.clone(),
            verdict: "holds-bound".to_string(),
            witness_valuation: None,
            value_valuation: None,
        },
        Ok(PmVerdict::TrueByExhaustion { embedding, .. }) => PmRow {
            m: m.clone(),
            verdict: if *embedding {
                "holds-embedding".to_string()
            } else {
                "holds-exhausted".to_string()
            },
            witness_valuation: None,
            value_valuation: None,
        },
        Ok(PmVerdict::Counterexample(c)) => PmRow {
            m: m.clone(),
            verdict: "counterexample".to_string(),
            witness_valuation: Some(vk_string(&c.witness.valuation())),
            value_valuation: Some(c.v_p.clone()),
        },
        Err(e) => PmRow {
            m: m.clone(),
            verdict: format!("error: {e}"),
            witness_valuation: None,
            value_valuation: None,
        },
    }
}

fn pm_section(ext: &Extension, u_max: &BreakBound, opts: &ReportOptions) -> Result<PmSection> {
    let u = match u_max {
        BreakBound::Finite(u) => u.clone(),
        BreakBound::NegInf => {
            return Ok(PmSection {
                grid_denominator: opts.grid_denominator,
                base_field_rows: Vec::new(),
                lower_bound: BreakBound::NegInf,
                lower_witness: None,
                window: None,
                soundness: Vec::new(),
                catalog_size: 0,
                skipped: Vec::new(),
            })
        }
    };
    let hi = u.clone() + Rat::new(1, 2);
    let grid = m_grid(&Rat::zero(), &hi, opts.grid_denominator);
    let table = verdict_table(ext, &ext.ground, &grid, ScanMode::Auto, Some(&u));
    let base_field_rows = table.iter().map(|(m, v)| verdict_row(m, v)).collect();

    let catalog = build_catalog(ext, Some(&u), &opts.subextensions, &opts.catalog)?;
    let scan = m_lower_bound(ext, &catalog.entries, &grid, ScanMode::Auto)?;
    let soundness = soundness_scan(ext, &catalog.entries, &u)?
        .into_iter()
        .map(|r| SoundnessOut {
            label: r.label,
            embedding: r.embedding,
            max_value_valuation: r.max_vp,
            brute_checked: r.brute_checked,
        })
        .collect();

    let profile = conjugate_profile(ext)?;
    let max_profile = profile
        .diffs()
        .last()
        .cloned()
        .unwrap_or_else(Rat::zero);
    let best_twist = catalog
        .entries
        .iter()
        .map(|e| e.twist_index)
        .max()
        .unwrap_or(1);
    let window = fontaine_window_check(&u, &scan.lower, best_twist, ext.degree(), &max_profile, &grid)?;

    let mut skipped = catalog.skipped.clone();
    for (label, m) in &scan.skipped {
        skipped.push((label.clone(), format!("scan budget at m = {m}")));
    }

    Ok(PmSection {
        grid_denominator: opts.grid_denominator,
        base_field_rows,
        lower_bound: scan.lower.clone(),
        lower_witness: scan.witness.map(|w| LowerWitnessOut {
            label: w.label,
            m: w.m,
            value_valuation: w.v_p,
        }),
        window: Some(WindowOut {
            u: window.u,
            lower: window.lower,
            window_low: window.window_low,
            crude_cap: window.crude_cap,
        }),
        soundness,
        catalog_size: catalog.entries.len(),
        skipped,
    })
}

/// Probe grid for the fixed-field table: midpoints between consecutive
/// breaks, the breaks themselves, and one point past the end.
fn fixed_row_grid(breaks: &[Rat]) -> Vec<Rat> {
    let mut grid = Vec::new();
    let mut prev = Rat::zero();
    for b in breaks {
        if b <= &Rat::zero() {
            continue;
        }
        let mid = (prev.clone() + b.clone()) / Rat::from_int(2);
        if mid > prev {
            grid.push(mid);
        }
        grid.push(b.clone());
        prev = b.clone();
    }
    grid.push(prev + Rat::new(1, 2));
    grid
}

fn lattice_section(
    ext: &Extension,
    group: &crate::galois::GaloisGroup,
    opts: &ReportOptions,
) -> Result<LatticeSection> {
    let filt = upper_filtration(ext, group)?;
    let lattice = subextension_lattice(ext, group, &opts.subextensions)?;
    let inertia = residue_action_kernel(ext, group)?;

    let mut members = Vec::new();
    for m in &lattice.members {
        let (u, unramified) = if m.normal {
            let u = member_break(&filt, group, &m.subgroup)?;
            let unram = inertia.iter().all(|g| m.subgroup.binary_search(g).is_ok());
            (Some(u), Some(unram))
        } else {
            (None, None)
        };
        members.push(MemberOut {
            label: lattice.display_of(&m.subgroup),
            degree: m.degree,
            order: m.subgroup.len(),
            normal: m.normal,
            matched: m.label.is_some(),
            u,
            unramified,
        });
    }

    let rows = fixed_field_table(group, &filt, &lattice, &fixed_row_grid(&filt.breaks))?;
    let fixed_rows = rows
        .into_iter()
        .map(|r| FixedRowOut {
            m: r.m,
            at: r.display_at,
            order_at: r.at.len(),
            above: r.display_above,
            order_above: r.above.len(),
        })
        .collect();

    let compat_report = quotient_compatibility_check(ext, group, &filt, &lattice)?;
    let compat = compat_report
        .rows
        .into_iter()
        .map(|r| CompatOut {
            label: r.label,
            induced: r.induced,
            direct: r.direct,
            u: r.u_max,
        })
        .collect();

    // Structural laws are asserted as a side effect.
    structure_checks(ext, group, &filt, &lattice)?;
    let composite_pairs = composite_break_check(group, &filt, &lattice)?;
    let base_change = base_change_inequality_check(ext, group, &filt, &lattice)?
        .into_iter()
        .map(|r| BaseChangeOut {
            label: r.label,
            e_prime: r.e_prime,
            relative_u: r.relative_u,
            bound: r.bound,
            equality: r.equality,
        })
        .collect();

    Ok(LatticeSection {
        group_order: group.order(),
        inertia_order: inertia.len(),
        members,
        fixed_rows,
        compat,
        unverified: compat_report.unverified,
        composite_pairs,
        base_change,
    })
}

/// Full pipeline: build, certify, breaks, conductor, scans, lattice.
/// Fails with `NotGalois` when the generator's minimal polynomial does
/// not split; see [`not_galois_report`] for the reporting path.
pub fn build_report(spec: &TowerSpec, opts: &ReportOptions) -> Result<Report> {
    spec.validate()?;
    let ext = Extension::analyze(spec, opts.precision)?;
    let group = galois_group(&ext)?;

    let profile = conjugate_profile(&ext)?;
    let brk = breaks(&profile)?;
    let cond = conductor(&group.roots, &brk)?;
    let deriv = derivative_valuation_check(&ext)?;
    if deriv.0 != deriv.1 {
        return Err(Error::IdentityFailure(format!(
            "profile sum {} differs from derivative valuation {}",
            deriv.0, deriv.1
        )));
    }

    let knots = brk.f.knots();
    let breaks_section = BreakSection {
        ram_profile: profile.diffs().to_vec(),
        herbrand_knots: knots.iter().skip(1).cloned().collect(),
        herbrand_slopes: brk.f.slopes(),
        lower_breaks: brk.lower.clone(),
        upper_breaks: brk.upper.clone(),
        i_max: brk.i_max.clone(),
        u_max: brk.u_max.clone(),
        conductor: cond,
        derivative_identity: deriv,
    };

    let serre = if opts.serre {
        Some(SerreSection {
            lower_breaks: brk
                .lower
                .iter()
                .map(|t| serre_lower_break(ext.ram_index() as usize, t))
                .collect(),
            upper_breaks: brk.upper.iter().map(serre_upper_break).collect(),
        })
    } else {
        None
    };

    let pm = if opts.pm {
        Some(pm_section(&ext, &brk.u_max, opts)?)
    } else {
        None
    };

    let lattice = if opts.lattice {
        Some(lattice_section(&ext, &group, opts)?)
    } else {
        None
    };

    Ok(Report {
        schema: REPORT_SCHEMA.to_string(),
        extension: extension_summary(spec, &ext),
        breaks: breaks_section,
        serre,
        pm,
        lattice,
        timing_ms: None,
    })
}

/// The reporting path for a spec that fails the splitting test.
pub fn not_galois_report(
    spec: &TowerSpec,
    opts: &ReportOptions,
    found: usize,
    degree: usize,
) -> Result<NotGaloisReport> {
    let ext = Extension::analyze(spec, opts.precision)?;
    Ok(NotGaloisReport {
        schema: REPORT_SCHEMA.to_string(),
        extension: extension_summary(spec, &ext),
        verdict: format!("not Galois: {found} of {degree} conjugates in the field"),
    })
}

/// Canonical serialized form used for stability comparisons: pretty JSON
/// with the timing field cleared.
pub fn stable_json(report: &Report) -> String {
    let mut stripped = report.clone();
    stripped.timing_ms = None;
    serde_json::to_string_pretty(&stripped).expect("report serialization")
}

/// Herbrand knots in tab-separated form, origin included.
pub fn knots_tsv(report: &Report) -> String {
    let mut out = String::from("u\tf(u)\n0/1\t0/1\n");
    for (x, y) in &report.breaks.herbrand_knots {
        out.push_str(&format!("{x}\t{y}\n"));
    }
    out
}

pub struct BuiltinExample {
    pub name: &'static str,
    pub spec: TowerSpec,
    pub expected_u: BreakBound,
    pub subextensions: Vec<(String, TowerSpec)>,
}

fn eis(coeffs: &[&str]) -> StepSpec {
    StepSpec::Eisenstein {
        coeffs: coeffs.iter().map(|s| s.to_string()).collect(),
    }
}

/// The worked examples shipped with the tool, with their expected largest
/// upper breaks.
pub fn builtin_examples() -> Vec<BuiltinExample> {
    let q2 = Ground::Padic { p: 2 };
    let q3 = Ground::Padic { p: 3 };
    let f2t = Ground::Laurent { p: 2 };
    let fin = |n: i64| BreakBound::Finite(Rat::from_int(n));
    vec![
        BuiltinExample {
            name: "sqrt2",
            spec: TowerSpec::new(q2, vec![eis(&["-2", "0", "1"])], None),
            expected_u: fin(3),
            subextensions: vec![],
        },
        BuiltinExample {
            name: "zeta8",
            spec: TowerSpec::new(
                q2,
                vec![eis(&["2", "4", "6", "4", "1"])],
                Some(vec!["1".to_string(), "1".to_string()]),
            ),
            expected_u: fin(3),
            subextensions: vec![
                (
                    "Q_2(i)".to_string(),
                    TowerSpec::new(q2, vec![eis(&["2", "-2", "1"])], None),
                ),
                (
                    "Q_2(sqrt 2)".to_string(),
                    TowerSpec::new(q2, vec![eis(&["-2", "0", "1"])], None),
                ),
                (
                    "Q_2(sqrt -2)".to_string(),
                    TowerSpec::new(q2, vec![eis(&["2", "0", "1"])], None),
                ),
            ],
        },
        BuiltinExample {
            name: "zeta4",
            spec: TowerSpec::new(q2, vec![eis(&["2", "-2", "1"])], None),
            expected_u: fin(2),
            subextensions: vec![],
        },
        BuiltinExample {
            name: "unram2",
            spec: TowerSpec::new(q2, vec![StepSpec::Unramified { degree: 2 }], None),
            expected_u: fin(0),
            subextensions: vec![],
        },
        BuiltinExample {
            name: "tamecube",
            spec: TowerSpec::new(
                q2,
                vec![
                    StepSpec::Unramified { degree: 2 },
                    eis(&["-2", "0", "0", "1"]),
                ],
                None,
            ),
            expected_u: fin(1),
            subextensions: vec![(
                "K2".to_string(),
                TowerSpec::new(q2, vec![StepSpec::Unramified { degree: 2 }], None),
            )],
        },
        BuiltinExample {
            name: "as2",
            spec: TowerSpec::new(f2t, vec![eis(&["t", "t", "1"])], None),
            expected_u: fin(2),
            subextensions: vec![],
        },
        BuiltinExample {
            name: "zeta9",
            spec: TowerSpec::new(
                q3,
                vec![eis(&["3", "9", "18", "21", "15", "6", "1"])],
                Some(vec!["1".to_string(), "1".to_string()]),
            ),
            expected_u: fin(2),
            subextensions: vec![
                (
                    "Q_3(zeta3)".to_string(),
                    TowerSpec::new(q3, vec![eis(&["3", "3", "1"])], None),
                ),
                (
                    "cubic subfield".to_string(),
                    TowerSpec::new(q3, vec![eis(&["3", "9", "6", "1"])], None),
                ),
            ],
        },
        BuiltinExample {
            name: "tamesq3",
            spec: TowerSpec::new(q3, vec![eis(&["-3", "0", "1"])], None),
            expected_u: fin(1),
            subextensions: vec![],
        },
    ]
}

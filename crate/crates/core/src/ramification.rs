//! Ramification invariants of a monogenic Galois extension: the
//! conjugate-difference profile, transition function and breaks, the disc
//! cover of the sets `X^m = {x : v(P(x)) >= m}`, the conductor, and
//! Krasner-style root separation certificates.
//!
//! All indices are ground-normalized rationals. The transition function
//! `f(u) = integral of #G_(t) dt` maps lower indices to upper indices; its
//! inverse is written `p_inv` throughout.

use std::rc::Rc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::plfun::PlFunction;
use crate::exactmath::rat::Rat;
use crate::galois::{Extension, GaloisGroup};
use crate::localfield::elem::{TowerElem, VK};
use crate::localfield::newton;
use crate::localfield::tower::TowerField;

/// The multiset `{v_K(z_i - alpha)}` over the non-identity conjugates of a
/// certified generator, sorted ascending. Every break datum derives from it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RamProfile {
    diffs: Vec<Rat>,
    degree: usize,
}

pub use crate::exactmath::rat::BreakBound;

impl RamProfile {
    pub fn new(mut diffs: Vec<Rat>, degree: usize) -> RamProfile {
        debug_assert_eq!(diffs.len() + 1, degree.max(1));
        diffs.sort();
        RamProfile { diffs, degree }
    }

    pub fn diffs(&self) -> &[Rat] {
        &self.diffs
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn i_max(&self) -> BreakBound {
        match self.diffs.last() {
            None => BreakBound::NegInf,
            Some(d) => BreakBound::Finite(d.clone()),
        }
    }

    pub fn multiplicity(&self, t: &Rat) -> usize {
        self.diffs.iter().filter(|d| *d == t).count()
    }

    /// `#G_(t) = 1 + #{sigma != 1 : i(sigma) >= t}`.
    pub fn order_at(&self, t: &Rat) -> usize {
        1 + self.diffs.iter().filter(|d| *d >= t).count()
    }
}

/// Profile via the Newton polygon of `P(x + alpha) / x`: exact, no root
/// approximation involved.
pub fn conjugate_profile(ext: &Extension) -> Result<RamProfile> {
    let n = ext.degree();
    if n == 1 {
        return Ok(RamProfile::new(Vec::new(), 1));
    }
    let p_l = ext.minpoly_over(&ext.tower);
    let shifted = p_l.shift(&ext.alpha);
    if !shifted.coeff(0).is_exact_zero() {
        return Err(Error::InsufficientPrecision(
            "generator does not cancel its minimal polynomial exactly".to_string(),
        ));
    }
    let q = shifted.divide_by_x_pow(1)?;
    let segments = newton::polygon(&q.valuation_points())?;
    let mut diffs = Vec::with_capacity(n - 1);
    for s in &segments {
        for _ in 0..s.length {
            diffs.push(s.slope.clone());
        }
    }
    Ok(RamProfile::new(diffs, n))
}

/// Profile via direct subtraction of the found conjugates: the approximate
/// dual route to `conjugate_profile`, used for cross-checking.
pub fn profile_from_roots(ext: &Extension, group: &GaloisGroup) -> Result<RamProfile> {
    let mut diffs = Vec::with_capacity(group.order().saturating_sub(1));
    for (idx, z) in group.roots.iter().enumerate() {
        if idx == group.identity {
            continue;
        }
        match z.sub(&ext.alpha).valuation() {
            VK::Exact(v) => diffs.push(v),
            VK::Infinite => {
                return Err(Error::BadInput("duplicate conjugate".to_string()));
            }
            VK::AtLeast(_) => {
                return Err(Error::InsufficientPrecision(
                    "conjugate difference valuation not certified".to_string(),
                ))
            }
        }
    }
    Ok(RamProfile::new(diffs, ext.degree()))
}

/// The transition function `f(u) = integral over [0, u] of #G_(t) dt` and
/// its inverse. The empty profile gives the identity function.
pub fn herbrand(profile: &RamProfile) -> (PlFunction, PlFunction) {
    let f = PlFunction::from_profile(profile.diffs());
    let p_inv = f.inverse();
    (f, p_inv)
}

/// The step function `t -> #G_(t)` as explicit (threshold, order) pairs:
/// the order holds on the interval ending at the threshold, and drops just
/// above it; beyond the last threshold the order is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LowerFiltration {
    pub steps: Vec<(Rat, usize)>,
}

pub fn lower_filtration(profile: &RamProfile) -> LowerFiltration {
    let mut thresholds: Vec<Rat> = profile.diffs().to_vec();
    thresholds.dedup();
    let steps = thresholds
        .into_iter()
        .map(|t| {
            let order = profile.order_at(&t);
            (t, order)
        })
        .collect();
    LowerFiltration { steps }
}

impl LowerFiltration {
    pub fn order_at(&self, t: &Rat) -> usize {
        for (b, order) in &self.steps {
            if t <= b {
                return *order;
            }
        }
        1
    }
}

/// Lower and upper break data of an extension.
#[derive(Clone, PartialEq, Debug)]
pub struct Breaks {
    pub i_max: BreakBound,
    pub u_max: BreakBound,
    /// The profile multiset itself, ascending.
    pub lower: Vec<Rat>,
    /// Its elementwise image under `f`, ascending.
    pub upper: Vec<Rat>,
    pub f: PlFunction,
    pub p_inv: PlFunction,
}

pub fn breaks(profile: &RamProfile) -> Result<Breaks> {
    let (f, p_inv) = herbrand(profile);
    let lower = profile.diffs().to_vec();
    let mut upper = Vec::with_capacity(lower.len());
    for d in &lower {
        upper.push(f.eval(d)?);
    }
    let i_max = profile.i_max();
    let u_max = match &i_max {
        BreakBound::NegInf => BreakBound::NegInf,
        BreakBound::Finite(i) => BreakBound::Finite(f.eval(i)?),
    };
    Ok(Breaks {
        i_max,
        u_max,
        lower,
        upper,
        f,
        p_inv,
    })
}

impl Breaks {
    /// Order of `{sigma : u(sigma) >= m} ∪ {1}`.
    pub fn upper_order_at(&self, m: &Rat) -> usize {
        1 + self.upper.iter().filter(|u| *u >= m).count()
    }

    /// Order of `{sigma : u(sigma) > m} ∪ {1}`.
    pub fn upper_order_above(&self, m: &Rat) -> usize {
        1 + self.upper.iter().filter(|u| *u > m).count()
    }

    pub fn lower_order_at(&self, t: &Rat) -> usize {
        1 + self.lower.iter().filter(|d| *d >= t).count()
    }
}

/// Conversion to the classical normalization for cross-checking against
/// literature tables: lower indices scale by e and shift by one, upper
/// indices shift by one.
pub fn serre_lower_break(e: usize, t: &Rat) -> Rat {
    t.clone() * Rat::from_int(e as i64) - Rat::one()
}

pub fn serre_upper_break(u: &Rat) -> Rat {
    u.clone() - Rat::one()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u64) -> usize {
    let p = p as usize;
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}

/// The disc cover of `X^m`: discs of radius exponent `p_inv(m)` around the
/// conjugates, grouped into overlap components, with the separation
/// verdict computed twice (geometrically and by point sampling).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiscCover {
    pub m: Rat,
    /// `p_inv(m)`: points of `X^m` lie within this valuation distance of a
    /// conjugate.
    pub radius: Rat,
    pub components: Vec<Vec<usize>>,
    /// Every component is a singleton (all pairwise conjugate distances
    /// stay strictly below the radius exponent).
    pub qpp_holds: bool,
    /// Sampled points at the boundary radius each land in exactly one
    /// disc and satisfy the defining inequality of `X^m`.
    pub q_holds: bool,
}

fn certified_at_least(v: &VK, r: &Rat) -> Result<bool> {
    match v {
        VK::Infinite => Ok(true),
        VK::Exact(x) => Ok(x >= r),
        VK::AtLeast(b) => {
            if b >= r {
                Ok(true)
            } else {
                Err(Error::InsufficientPrecision(format!(
                    "valuation known only to be >= {b}, threshold {r}"
                )))
            }
        }
    }
}

fn exact_pairwise(roots: &[TowerElem]) -> Result<Vec<Vec<Option<Rat>>>> {
    let n = roots.len();
    let mut out = vec![vec![None; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            match roots[i].sub(&roots[j]).valuation() {
                VK::Exact(v) => {
                    out[i][j] = Some(v.clone());
                    out[j][i] = Some(v);
                }
                VK::Infinite => {
                    return Err(Error::BadInput("duplicate conjugate".to_string()))
                }
                VK::AtLeast(_) => {
                    return Err(Error::InsufficientPrecision(
                        "pairwise conjugate distance not certified".to_string(),
                    ))
                }
            }
        }
    }
    Ok(out)
}

/// An element of exact valuation `r >= 0` over `field`, built in `field`
/// itself when `r` is a multiple of `1/e` and in an auxiliary Eisenstein
/// step `y^s = pi` otherwise. Returns the element together with the field
/// it lives in.
fn element_of_valuation(
    field: &Rc<TowerField>,
    r: &Rat,
) -> Result<(Rc<TowerField>, TowerElem)> {
    if r.is_negative() {
        return Err(Error::BadInput(format!(
            "cannot sample at negative radius exponent {r}"
        )));
    }
    let e = field.ram_index() as i64;
    let scaled = r.clone() * Rat::from_int(e);
    if scaled.is_integer() {
        let k = scaled.to_i64().expect("radius exponent fits in i64");
        let tau = TowerElem::one(field).mul_uniformizer_pow(k)?;
        return Ok((Rc::clone(field), tau));
    }
    let s = scaled
        .denom()
        .to_i64()
        .expect("radius denominator fits in i64");
    let pi = TowerElem::uniformizer(field);
    let mut lows = vec![pi.neg()];
    for _ in 1..s {
        lows.push(TowerElem::zero(field));
    }
    let aux = field.extend_eisenstein(&lows)?;
    let k = (r.clone() * Rat::from_int(e * s))
        .to_i64()
        .expect("scaled radius exponent fits in i64");
    let tau = TowerElem::one(&aux).mul_uniformizer_pow(k)?;
    Ok((aux, tau))
}

pub fn disc_cover(
    ext: &Extension,
    roots: &[TowerElem],
    brk: &Breaks,
    m: &Rat,
) -> Result<DiscCover> {
    if m.is_negative() {
        return Err(Error::BadInput("disc cover index must be >= 0".to_string()));
    }
    let radius = brk.p_inv.eval(m)?;
    let n = roots.len();
    let pairwise = exact_pairwise(roots)?;

    // Overlap components. The relation v(z_i - z_j) >= radius is already
    // transitive for ultrametric discs; union-find keeps it robust.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if pairwise[i][j].as_ref().unwrap() >= &radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            by_root.entry(r).or_default().push(i);
        }
        for (_, mut c) in by_root {
            c.sort_unstable();
            components.push(c);
        }
        components.sort();
    }
    let qpp_holds = components.iter().all(|c| c.len() == 1);

    // Independent sample check: one point per conjugate at the exact
    // boundary radius. Each sample must satisfy the defining inequality
    // and land in the discs of exactly its own component.
    let field = match roots.first() {
        Some(z) => Rc::clone(z.field()),
        None => Rc::clone(&ext.tower),
    };
    let (sample_field, tau) = element_of_valuation(&field, &radius)?;
    let p_s = ext.minpoly_over(&sample_field);
    let up_roots: Vec<TowerElem> = roots
        .iter()
        .map(|z| z.coerce_to(&sample_field))
        .collect::<Result<_>>()?;
    let mut q_holds = true;
    for i in 0..n {
        let beta = up_roots[i].add(&tau);
        let value = p_s.eval(&beta).valuation();
        let member = match &value {
            VK::Infinite => true,
            VK::Exact(v) => v >= m,
            VK::AtLeast(b) => {
                if b >= m {
                    true
                } else {
                    return Err(Error::InsufficientPrecision(
                        "sample membership in X^m not certified".to_string(),
                    ));
                }
            }
        };
        let mut in_discs = 0usize;
        for z in &up_roots {
            if certified_at_least(&beta.sub(z).valuation(), &radius)? {
                in_discs += 1;
            }
        }
        if !(member && in_discs == 1) {
            q_holds = false;
        }
    }

    Ok(DiscCover {
        m: m.clone(),
        radius,
        components,
        qpp_holds,
        q_holds,
    })
}

/// Locates `f(s)` by binary search over the knot list of `f`, then linear
/// interpolation on the containing segment.
fn eval_by_knot_search(f: &PlFunction, s: &Rat) -> Rat {
    let knots = f.knots();
    let mut lo = 0usize;
    let mut hi = knots.len();
    // Rightmost knot with x <= s.
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if &knots[mid].0 <= s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (x0, y0) = &knots[lo];
    let slope = if lo + 1 < knots.len() {
        let (x1, y1) = &knots[lo + 1];
        (y1 - y0) / (x1 - x0)
    } else {
        f.final_slope().clone()
    };
    y0.clone() + slope * (s - x0)
}

/// The separation threshold `c = inf{m : all discs of X^m are singletons}`,
/// computed from the disc side (largest pairwise conjugate distance mapped
/// through the transition function) and asserted equal to the largest
/// upper break. The trivial extension returns 0.
pub fn conductor(roots: &[TowerElem], brk: &Breaks) -> Result<Rat> {
    if roots.len() <= 1 {
        return Ok(Rat::zero());
    }
    let pairwise = exact_pairwise(roots)?;
    let n = roots.len();
    let mut s = None::<Rat>;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = pairwise[i][j].as_ref().unwrap();
            if s.as_ref().map_or(true, |cur| v > cur) {
                s = Some(v.clone());
            }
        }
    }
    let s = s.unwrap();
    let c = eval_by_knot_search(&brk.f, &s);

    // Inverse consistency and the separation flip around c.
    if brk.p_inv.eval(&c)? != s {
        return Err(Error::IdentityFailure(format!(
            "transition inverse at {c} does not return the separation {s}"
        )));
    }
    let quarter = Rat::new(1, 4);
    let above = c.clone() + quarter.clone();
    if !(brk.p_inv.eval(&above)? > s) {
        return Err(Error::IdentityFailure(
            "discs fail to separate just above the computed threshold".to_string(),
        ));
    }
    let below = c.clone() - quarter;
    if !below.is_negative() && !(brk.p_inv.eval(&below)? < s) {
        return Err(Error::IdentityFailure(
            "discs already separate below the computed threshold".to_string(),
        ));
    }

    match &brk.u_max {
        BreakBound::Finite(u) if *u == c => Ok(c),
        other => Err(Error::IdentityFailure(format!(
            "disc-side threshold {c} differs from largest upper break {other:?}"
        ))),
    }
}

/// Evaluates both sides of the identity `v(P(beta)) = f(max_i v(z_i - beta))`
/// at an explicit point. The roots and the point must live in the same
/// field; callers coerce first. Degenerate points (beta indistinguishable
/// from a root at working precision) raise a precision error and are
/// reported rather than asserted.
pub fn fontaine_identity_check(
    ext: &Extension,
    roots: &[TowerElem],
    f: &PlFunction,
    beta: &TowerElem,
) -> Result<(Rat, Rat)> {
    if roots.is_empty() {
        return Err(Error::BadInput("no conjugates supplied".to_string()));
    }
    let p_f = ext.minpoly_over(beta.field());
    let lhs = match p_f.eval(beta).valuation() {
        VK::Exact(v) => v,
        _ => {
            return Err(Error::InsufficientPrecision(
                "v(P(beta)) not certified exact (beta may be a root)".to_string(),
            ))
        }
    };
    let mut inner = None::<Rat>;
    for z in roots {
        match z.sub(beta).valuation() {
            VK::Exact(v) => {
                if inner.as_ref().map_or(true, |cur| &v > cur) {
                    inner = Some(v);
                }
            }
            _ => {
                return Err(Error::InsufficientPrecision(
                    "v(z - beta) not certified exact".to_string(),
                ))
            }
        }
    }
    let rhs = f.eval(&inner.unwrap())?;
    Ok((lhs, rhs))
}

/// Krasner certificate: the unique conjugate `z` with
/// `v(x - z) > max_{z' != z} v(z - z')`, if one exists. When it does,
/// the subfield generated by `z` embeds into the field generated by `x`.
pub fn krasner_check(x: &TowerElem, roots: &[TowerElem]) -> Result<Option<usize>> {
    let n = roots.len();
    let mut undecided = false;
    for j in 0..n {
        let mut sep = None::<Rat>;
        for (j2, z2) in roots.iter().enumerate() {
            if j2 == j {
                continue;
            }
            match roots[j].sub(z2).valuation() {
                VK::Exact(v) => {
                    if sep.as_ref().map_or(true, |cur| &v > cur) {
                        sep = Some(v);
                    }
                }
                VK::Infinite => {
                    return Err(Error::BadInput("duplicate conjugate".to_string()))
                }
                VK::AtLeast(_) => {
                    return Err(Error::InsufficientPrecision(
                        "conjugate separation not certified".to_string(),
                    ))
                }
            }
        }
        let d = x.sub(&roots[j]).valuation();
        let qualifies = match (&d, &sep) {
            (_, None) => true,
            (VK::Infinite, _) => true,
            (VK::Exact(v), Some(s)) => v > s,
            (VK::AtLeast(b), Some(s)) => {
                if b > s {
                    true
                } else {
                    // The true valuation might still clear the bar.
                    undecided = true;
                    false
                }
            }
        };
        if qualifies {
            return Ok(Some(j));
        }
    }
    if undecided {
        return Err(Error::InsufficientPrecision(
            "distance to a candidate conjugate not certified".to_string(),
        ));
    }
    Ok(None)
}

/// Both sides of `sum_{sigma != 1} i(sigma) = v(P'(alpha))`: the profile
/// sum against the derivative valuation, two independent routes.
pub fn derivative_valuation_check(ext: &Extension) -> Result<(Rat, Rat)> {
    let profile = conjugate_profile(ext)?;
    let mut lhs = Rat::zero();
    for d in profile.diffs() {
        lhs = lhs + d.clone();
    }
    let p_l = ext.minpoly_over(&ext.tower);
    let rhs = match p_l.derivative().eval(&ext.alpha).valuation() {
        VK::Exact(v) => v,
        VK::Infinite => return Err(Error::Inseparable),
        VK::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "derivative valuation at the generator not certified".to_string(),
            ))
        }
    };
    Ok((lhs, rhs))
}

//! Root finding for monic integral polynomials over a tower field, by
//! branch recursion on residue roots.
//!
//! Each node of the recursion studies the ball `center + pi^k O` through
//! the normalized polynomial `Q(x) = P(center + pi^k x) / pi^(e mu)` where
//! `mu` is the content valuation. Roots of the residue of `Q` split the
//! ball: simple residue roots are finished by Hensel lifting (Newton
//! iteration with a certified simple-root condition), multiple ones
//! recurse one digit deeper, and a rootless residue kills the ball with an
//! exact certificate: `v(P(x)) = mu` for every `x` in it. Dead balls are
//! reported; they drive both exhaustive-search shortcuts and the
//! obstruction analysis used to adjoin missing roots.
//!
//! The input must be monic and integral. A provably vanishing derivative
//! is rejected as inseparable; polynomials with multiple roots are not
//! detected up front and will exhaust precision instead of terminating.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::exactmath::fq::{
    qp_deg, qp_derivative, qp_divrem, qp_eval, qp_factor, qp_roots, qp_scale, FqElem,
};
use crate::exactmath::rat::Rat;
use crate::localfield::elem::{TowerElem, VK};
use crate::localfield::newton::{polygon, Segment};
use crate::localfield::poly::Poly;
use crate::localfield::tower::{StepKind, TowerField};

#[derive(Clone)]
pub struct FoundRoot {
    pub approx: TowerElem,
    /// Whether `P(approx)` is provably zero (the approximation is the
    /// root).
    pub exact: bool,
    /// Residue-index path through the recursion; lexicographic order on
    /// this is the canonical root order.
    pub digits: Vec<u64>,
}

#[derive(Clone)]
pub struct DeadBall {
    pub center: TowerElem,
    /// Ball radius exponent: the ball is `center + pi^k O`.
    pub k: i64,
    /// Exact value of `v(P(x))` for every `x` in the ball.
    pub level: Rat,
}

/// Diagnostic record of one recursion node, kept for obstruction analysis
/// when no root exists in the base field.
pub struct NodeInfo {
    pub center: TowerElem,
    pub k: i64,
    pub mu: Rat,
    /// Factorization of the residue polynomial.
    pub residue_factors: Vec<(Vec<FqElem>, usize)>,
    /// Newton polygon of the node polynomial, when certifiable.
    pub segments: Option<Vec<Segment>>,
    /// The node polynomial itself (content-normalized).
    pub poly: Poly,
}

pub struct RootSearch {
    pub roots: Vec<FoundRoot>,
    pub dead: Vec<DeadBall>,
    pub nodes: Vec<NodeInfo>,
}

struct SearchCtx {
    p: Poly,
    field: Rc<TowerField>,
    /// Required certified valuation of `P` at returned approximations.
    target: Rat,
    max_depth: i64,
    roots: Vec<FoundRoot>,
    dead: Vec<DeadBall>,
    nodes: Vec<NodeInfo>,
}

/// Finds all roots of a monic integral polynomial in the ring of integers
/// of its coefficient field. Approximations are certified to satisfy
/// `v(P(approx)) >= target`, with a Hensel uniqueness ball each.
pub fn find_roots(p: &Poly, target: &Rat) -> Result<RootSearch> {
    let field = Rc::clone(p.field());
    let n = p
        .degree()
        .ok_or_else(|| Error::BadInput("zero polynomial".to_string()))?;
    if n == 0 {
        return Ok(RootSearch {
            roots: vec![],
            dead: vec![],
            nodes: vec![],
        });
    }
    if !p.is_monic() {
        return Err(Error::BadInput(
            "root search requires a monic polynomial".to_string(),
        ));
    }
    match p.content_valuation() {
        VK::Exact(c) if !c.is_negative() => {}
        VK::Exact(c) => {
            return Err(Error::NotIntegral(format!("coefficient valuation {c}")));
        }
        _ => {
            return Err(Error::InsufficientPrecision(
                "cannot certify integrality of the input".to_string(),
            ))
        }
    }
    if p.derivative().is_zero() {
        return Err(Error::Inseparable);
    }
    let mut ctx = SearchCtx {
        p: p.clone(),
        field: Rc::clone(&field),
        target: target.clone(),
        max_depth: field.precision() * field.ram_index() + 8,
        roots: vec![],
        dead: vec![],
        nodes: vec![],
    };
    search_node(&mut ctx, TowerElem::zero(&field), 0, 0, vec![])?;
    ctx.roots.sort_by(|a, b| a.digits.cmp(&b.digits));
    Ok(RootSearch {
        roots: ctx.roots,
        dead: ctx.dead,
        nodes: ctx.nodes,
    })
}

fn search_node(
    ctx: &mut SearchCtx,
    center: TowerElem,
    k: i64,
    drop_center: usize,
    digits: Vec<u64>,
) -> Result<()> {
    if k > ctx.max_depth {
        return Err(Error::InsufficientPrecision(format!(
            "root search descended past depth {} without resolving",
            ctx.max_depth
        )));
    }
    let field = Rc::clone(&ctx.field);
    let field = &field;
    let pi = TowerElem::uniformizer(field);
    let pi_k = pi.pow(k as u64);
    let shifted = ctx.p.shift(&center).scale_arg(&pi_k);

    // Exact zeros at the bottom: the center itself is a root.
    let mut m0 = 0;
    while m0 < shifted.coeffs().len() && shifted.coeff(m0).is_exact_zero() {
        m0 += 1;
    }
    if m0 > drop_center {
        let mut d = digits.clone();
        d.push(u64::MAX); // sorts after any residue index
        ctx.roots.push(FoundRoot {
            approx: center.clone(),
            exact: true,
            digits: d,
        });
    }
    let rest = shifted.divide_by_x_pow(m0)?;
    if rest.degree().is_none() {
        return Ok(());
    }
    let (q, mu) = rest.normalize_content()?;
    if q.degree() == Some(0) {
        // No further roots in this ball beyond the exact center.
        if m0 == 0 {
            ctx.dead.push(DeadBall {
                center,
                k,
                level: mu,
            });
        }
        return Ok(());
    }

    let kfq = field.residue_field().clone();
    let qbar = q.residue_poly()?;
    let res_roots = qp_roots(&kfq, &qbar).map_err(Error::Fq)?;
    let factors = qp_factor(&kfq, &qbar).map_err(Error::Fq)?;
    let segments = node_segments(&q);
    ctx.nodes.push(NodeInfo {
        center: center.clone(),
        k,
        mu: mu.clone(),
        residue_factors: factors,
        segments,
        poly: q.clone(),
    });

    if res_roots.is_empty() && m0 == 0 {
        ctx.dead.push(DeadBall {
            center,
            k,
            level: mu,
        });
        return Ok(());
    }

    let qbar_deriv = qp_derivative(&kfq, &qbar);
    for rho in res_roots {
        let mut d = digits.clone();
        d.push(kfq.index(&rho));
        let simple = !kfq.is_zero(&qp_eval(&kfq, &qbar_deriv, &rho));
        let lifted = TowerElem::lift(field, &rho);
        if simple {
            let x = hensel_refine(&q, &lifted, &(&ctx.target - &mu))?;
            let approx = center.add(&pi_k.mul(&x));
            ctx.roots.push(FoundRoot {
                approx,
                exact: false,
                digits: d,
            });
        } else {
            let new_center = center.add(&pi_k.mul(&lifted));
            let zero_root_stays = kfq.is_zero(&rho) && m0 > 0;
            let drop = if zero_root_stays { m0 } else { 0 };
            search_node(ctx, new_center, k + 1, drop, d)?;
        }
    }
    Ok(())
}

fn node_segments(q: &Poly) -> Option<Vec<Segment>> {
    polygon(&q.valuation_points()).ok()
}

/// Newton iteration from a lifted simple residue root until
/// `v(Q(x)) >= target`.
fn hensel_refine(q: &Poly, start: &TowerElem, target: &Rat) -> Result<TowerElem> {
    let dq = q.derivative();
    let mut x = start.clone();
    let mut last_bound: Option<Rat> = None;
    for _ in 0..64 {
        let value = q.eval(&x);
        let bound = match value.valuation() {
            VK::Infinite => return Ok(x),
            VK::Exact(v) | VK::AtLeast(v) => v,
        };
        if bound >= *target {
            return Ok(x);
        }
        if last_bound.as_ref().map_or(false, |lb| bound <= *lb) {
            return Err(Error::InsufficientPrecision(format!(
                "newton iteration stalled at valuation {bound}"
            )));
        }
        last_bound = Some(bound);
        let deriv = dq.eval(&x);
        let step = value.mul(&deriv.inv()?);
        x = x.sub(&step);
    }
    Err(Error::InsufficientPrecision(
        "newton iteration did not reach the target valuation".to_string(),
    ))
}

/// Result of adjoining a root: the (possibly unchanged) field and the root
/// found there.
pub struct Adjoined {
    pub field: Rc<TowerField>,
    pub root: FoundRoot,
    /// Steps added on top of the original field, for reporting.
    pub added_steps: Vec<(StepKind, usize)>,
}

/// Extends the coefficient field until the polynomial acquires a root,
/// using obstructions recorded by the failed searches: an irreducible
/// residue factor of degree `d >= 2` yields an unramified step, a
/// single-segment node polynomial with fractional slope yields a totally
/// ramified step via the minimal polynomial of a uniformizer of the
/// would-be extension. Gives up honestly when neither applies.
pub fn adjoin_root(p: &Poly, target: &Rat) -> Result<Adjoined> {
    let mut field = Rc::clone(p.field());
    let base_dim = field.dim();
    let deg = p
        .degree()
        .ok_or_else(|| Error::BadInput("zero polynomial".to_string()))?;
    let mut added: Vec<(StepKind, usize)> = Vec::new();
    loop {
        let cur = p.coerce_to(&field)?;
        let search = find_roots(&cur, target)?;
        if let Some(root) = search.roots.into_iter().next() {
            return Ok(Adjoined {
                field,
                root,
                added_steps: added,
            });
        }
        if field.dim() / base_dim >= deg {
            return Err(Error::Unsupported(
                "no root found although the extension degree is exhausted".to_string(),
            ));
        }

        // Obstruction 1: an irreducible residue factor of degree >= 2.
        let mut unram: Option<usize> = None;
        for node in &search.nodes {
            for (f, _) in &node.residue_factors {
                let d = f.len() - 1;
                if d >= 2 && unram.map_or(true, |u| d < u) {
                    unram = Some(d);
                }
            }
        }
        if let Some(d) = unram {
            field = field.extend_unramified(d)?;
            added.push((StepKind::Unramified, d));
            continue;
        }

        // Obstruction 2: a node whose polygon is a single segment of
        // fractional slope a/b and length l b. The quotient algebra by the
        // node polynomial is a product of l pieces, each totally ramified
        // of degree b over an unramified part; the plan below picks a step
        // that peels off one piece.
        let mut candidates: Vec<(Poly, Rat)> = Vec::new();
        for node in &search.nodes {
            if let Some(segs) = &node.segments {
                if segs.len() == 1 {
                    let s = &segs[0];
                    let scaled = s.slope.clone() * Rat::from_int(field.ram_index());
                    if !scaled.is_integer()
                        && s.length == node.poly.degree().unwrap_or(0)
                    {
                        candidates.push((node.poly.clone(), s.slope.clone()));
                    }
                }
            }
        }
        let mut last_err = Error::Unsupported(
            "no usable obstruction found to extend the field".to_string(),
        );
        let mut plan = None;
        for (node_poly, slope) in &candidates {
            match ramified_step_plan(&field, node_poly, slope, target) {
                Ok(p) => {
                    plan = Some(p);
                    break;
                }
                Err(e) => last_err = e,
            }
        }
        match plan {
            Some(StepPlan::Eisenstein(step)) => {
                let coeffs: Vec<TowerElem> = step.coeffs()[..step.degree().unwrap()]
                    .iter()
                    .cloned()
                    .collect();
                let b = coeffs.len();
                field = field.extend_eisenstein(&coeffs)?;
                added.push((StepKind::Eisenstein, b));
            }
            Some(StepPlan::Unramified(d)) => {
                field = field.extend_unramified(d)?;
                added.push((StepKind::Unramified, d));
            }
            None => return Err(last_err),
        }
    }
}

enum StepPlan {
    Eisenstein(Poly),
    Unramified(usize),
}

/// Decides how to extend the field so that a single-segment node
/// polynomial of fractional slope `a/b` (in units of the base value
/// group) gains a root. When the segment length equals `b` the quotient
/// algebra is a field and the minimal polynomial of a uniformizer is the
/// step. For length `l b` with `l >= 2` the segment residual polynomial
/// (degree `l` over the residue field) arbitrates: a simple root selects
/// one piece of the split algebra via an approximate idempotent, an
/// irreducible factor of degree `d >= 2` asks for an unramified step
/// first, and a residual with only repeated roots is out of scope.
fn ramified_step_plan(
    field: &Rc<TowerField>,
    node_poly: &Poly,
    slope: &Rat,
    target: &Rat,
) -> Result<StepPlan> {
    let scaled = slope.clone() * Rat::from_int(field.ram_index());
    let a: i64 = scaled
        .numer()
        .try_into()
        .map_err(|_| Error::BadInput("slope numerator overflow".to_string()))?;
    let b: i64 = scaled
        .denom()
        .try_into()
        .map_err(|_| Error::BadInput("slope denominator overflow".to_string()))?;
    let n = node_poly.degree().unwrap();
    if n % b as usize != 0 {
        return Err(Error::InsufficientPrecision(
            "segment length is not a multiple of the slope denominator".to_string(),
        ));
    }
    let l = n / b as usize;
    if l == 1 {
        let tau = uniformizer_in_algebra(field, node_poly, a, b)?;
        let step = minimal_polynomial_in_algebra(field, node_poly, &tau, b as usize)?;
        return Ok(StepPlan::Eisenstein(step));
    }
    let kfq = field.residue_field().clone();
    let res = segment_residual(field, node_poly, a, b)?;
    let factors = qp_factor(&kfq, &res).map_err(Error::Fq)?;
    if let Some((lin, _)) = factors
        .iter()
        .find(|(f, m)| *m == 1 && qp_deg(f) == Some(1))
    {
        let step = idempotent_step_poly(field, node_poly, a, b, &res, lin, target)?;
        return Ok(StepPlan::Eisenstein(step));
    }
    if let Some(d) = factors
        .iter()
        .filter_map(|(f, _)| qp_deg(f).filter(|d| *d >= 2))
        .min()
    {
        return Ok(StepPlan::Unramified(d));
    }
    Err(Error::Unsupported(
        "segment residual has only repeated roots; refining the slope data is not supported"
            .to_string(),
    ))
}

/// Residual polynomial of a full-length segment of slope `a/b`: the
/// degree-`l` polynomial over the residue field whose coefficient `j` is
/// the residue of `c_{j b} / pi^(v_0 - j a)`, zero for lattice points
/// strictly above the hull. Valuations here are in base value group
/// units, so `v_0` (the constant term valuation) is an integer.
fn segment_residual(
    field: &Rc<TowerField>,
    node_poly: &Poly,
    a: i64,
    b: i64,
) -> Result<Vec<FqElem>> {
    let e = field.ram_index();
    let n = node_poly.degree().unwrap();
    let l = n / b as usize;
    let v0 = match node_poly.coeff(0).valuation() {
        VK::Exact(v) => v,
        _ => {
            return Err(Error::InsufficientPrecision(
                "constant term valuation unknown".to_string(),
            ))
        }
    };
    let v0_units = v0 * Rat::from_int(e);
    if !v0_units.is_integer() {
        return Err(Error::InsufficientPrecision(
            "constant term valuation is not in the value group".to_string(),
        ));
    }
    let v0_units: i64 = v0_units
        .numer()
        .try_into()
        .map_err(|_| Error::BadInput("valuation overflow".to_string()))?;
    let mut out = Vec::with_capacity(l + 1);
    for j in 0..=l {
        let c = node_poly.coeff(j * b as usize);
        let units = v0_units - a * j as i64;
        let expected = Rat::new(units, e);
        let digit = match c.valuation() {
            VK::Infinite => field.residue_field().zero(),
            VK::Exact(v) if v == expected => c.mul_uniformizer_pow(-units)?.residue()?,
            VK::Exact(v) if v > expected => field.residue_field().zero(),
            VK::Exact(_) => {
                return Err(Error::InsufficientPrecision(
                    "coefficient below the segment hull".to_string(),
                ))
            }
            VK::AtLeast(w) if w > expected => field.residue_field().zero(),
            VK::AtLeast(_) => {
                return Err(Error::InsufficientPrecision(
                    "segment residual digit unknown".to_string(),
                ))
            }
        };
        out.push(digit);
    }
    Ok(out)
}

/// Eisenstein step polynomial of the piece of a split quotient algebra
/// selected by a simple root of the segment residual. The residual
/// idempotent is evaluated on the unit `sigma = x^b pi^(-a)` and
/// Newton-lifted (`e <- e^2 (3 - 2 e)` doubles the valuation of
/// `e^2 - e`); the minimal polynomial of `tau e` is then `y phi(y)` with
/// `phi` the Eisenstein polynomial of the selected piece.
fn idempotent_step_poly(
    field: &Rc<TowerField>,
    node_poly: &Poly,
    a: i64,
    b: i64,
    res: &[FqElem],
    lin: &[FqElem],
    target: &Rat,
) -> Result<Poly> {
    let kfq = field.residue_field().clone();
    let reduce = |p: Poly| -> Result<Poly> { Ok(p.divrem(node_poly)?.1) };

    let (cof, _) = qp_divrem(&kfq, res, lin);
    let root = kfq.neg(&lin[0]);
    let inv = kfq.inv(&qp_eval(&kfq, &cof, &root));
    let ebar = qp_scale(&kfq, &inv, &cof);

    let x = Poly::x(field);
    let sigma = pow_mod(&x, b as u64, node_poly)?.mul_uniformizer_pow(-a)?;
    let mut e = Poly::zero(field);
    for c in ebar.iter().rev() {
        let lifted = Poly::new(field, vec![TowerElem::lift(field, c)]);
        e = reduce(e.mul(&sigma))?.add(&lifted);
    }

    let three = Poly::from_int_coeffs(field, &[3]);
    let two = Poly::from_int_coeffs(field, &[2]);
    let goal = target.clone() + Rat::from_int(2);
    let mut settled = false;
    for _ in 0..32 {
        let defect = reduce(e.mul(&e))?.sub(&e);
        match defect.content_valuation() {
            VK::Infinite => {
                settled = true;
                break;
            }
            VK::Exact(c) | VK::AtLeast(c) => {
                if c >= goal {
                    settled = true;
                    break;
                }
            }
        }
        let sq = reduce(e.mul(&e))?;
        e = reduce(sq.mul(&three.sub(&two.mul(&e))))?;
    }
    if !settled {
        return Err(Error::InsufficientPrecision(
            "idempotent iteration did not converge".to_string(),
        ));
    }

    let tau = uniformizer_in_algebra(field, node_poly, a, b)?;
    let rho = reduce(tau.mul(&e))?;
    let m = minimal_polynomial_in_algebra(field, node_poly, &rho, b as usize + 1)?;
    if m.degree() != Some(b as usize + 1) {
        return Err(Error::Unsupported(
            "selected piece has an unexpected degree".to_string(),
        ));
    }
    Ok(Poly::new(field, m.coeffs()[1..].to_vec()))
}

/// The element `tau = x^r pi^t` of the quotient algebra by the node
/// polynomial, with Bezout `r a + t b = 1`: its valuation is `1/b` in
/// base uniformizer units, so for a field piece its minimal polynomial
/// is Eisenstein of degree `b`. `x` is invertible in the algebra because
/// the node polynomial has a nonzero constant term.
fn uniformizer_in_algebra(
    field: &Rc<TowerField>,
    node_poly: &Poly,
    a: i64,
    b: i64,
) -> Result<Poly> {
    let (r, t) = bezout(a, b);
    let x = Poly::x(field);
    let xr = if r >= 0 {
        pow_mod(&x, r as u64, node_poly)?
    } else {
        let inv_x = invert_in_algebra(&x, node_poly)?;
        pow_mod(&inv_x, (-r) as u64, node_poly)?
    };
    xr.mul_uniformizer_pow(t)
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    // r a + t b = gcd(a, b) = 1. `a` may be negative (roots of negative
    // valuation in a shifted node); Euclid then lands on gcd = -1 and the
    // coefficients need a sign flip.
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    assert_eq!(r0, 1, "slope not in lowest terms");
    (s0, t0)
}

fn pow_mod(base: &Poly, mut e: u64, modulus: &Poly) -> Result<Poly> {
    let field = base.field();
    let mut result = Poly::from_int_coeffs(field, &[1]);
    let mut b = base.divrem(modulus)?.1;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b).divrem(modulus)?.1;
        }
        b = b.mul(&b).divrem(modulus)?.1;
        e >>= 1;
    }
    Ok(result)
}

/// Inverse of an element in `field[x]/(modulus)` via linear algebra.
fn invert_in_algebra(elem: &Poly, modulus: &Poly) -> Result<Poly> {
    let field = elem.field();
    let n = modulus.degree().unwrap();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut xj = vec![TowerElem::zero(field); j + 1];
        xj[j] = TowerElem::one(field);
        let basis = Poly::new(field, xj);
        let prod = elem.mul(&basis).divrem(modulus)?.1;
        cols.push((0..n).map(|i| prod.coeff(i)).collect::<Vec<_>>());
    }
    let mut rhs = vec![TowerElem::zero(field); n];
    rhs[0] = TowerElem::one(field);
    match crate::localfield::linalg::solve_columns(field, &cols, &rhs)? {
        Some(sol) => Ok(Poly::new(field, sol)),
        None => Err(Error::DivisionByZero),
    }
}

/// Minimal polynomial of `tau` in `field[x]/(modulus)`, trying degrees
/// from `expected` (its mathematically forced value) upward.
fn minimal_polynomial_in_algebra(
    field: &Rc<TowerField>,
    modulus: &Poly,
    tau: &Poly,
    expected: usize,
) -> Result<Poly> {
    let n = modulus.degree().unwrap();
    let mut powers: Vec<Poly> = vec![Poly::from_int_coeffs(field, &[1])];
    for _ in 0..n {
        let next = powers.last().unwrap().mul(tau).divrem(modulus)?.1;
        powers.push(next);
    }
    let as_vec = |p: &Poly| -> Vec<TowerElem> { (0..n).map(|i| p.coeff(i)).collect() };
    for deg in expected..=n {
        let cols: Vec<Vec<TowerElem>> = powers[..deg].iter().map(&as_vec).collect();
        let rhs = as_vec(&powers[deg]);
        if let Some(sol) = crate::localfield::linalg::solve_columns(field, &cols, &rhs)? {
            let mut coeffs: Vec<TowerElem> = sol.into_iter().map(|c| c.neg()).collect();
            coeffs.push(TowerElem::one(field));
            return Ok(Poly::new(field, coeffs));
        }
    }
    Err(Error::Unsupported(
        "no minimal polynomial found in the quotient algebra".to_string(),
    ))
}

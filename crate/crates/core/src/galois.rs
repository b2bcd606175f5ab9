//! Field specifications, extension analysis, and Galois groups.
//!
//! A `TowerSpec` describes a complete discrete valuation field as a ground
//! field (p-adic numbers or Laurent series over a prime field) plus a
//! stack of unramified and Eisenstein steps, together with a distinguished
//! generator. `Extension::analyze` builds the tower at a working
//! precision, certifies that the generator really generates the ring of
//! integers over the ground field (unit change-of-basis determinant), and
//! computes its minimal polynomial by a division-free characteristic
//! polynomial, so the minimal polynomial has exact coefficients whenever
//! the tower data is exact.

use std::rc::Rc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rat::Rat;
use crate::localfield::elem::{solve_scalar_system, TowerElem, VK};
use crate::localfield::linalg::{charpoly, det};
use crate::localfield::poly::Poly;
use crate::localfield::roots::{find_roots, FoundRoot};
use crate::localfield::scalar::{Ground, Scalar, Val};
use crate::localfield::tower::{StepKind, TowerField};

pub const DEFAULT_PRECISION: i64 = 32;
pub const MAX_PRECISION: i64 = 512;

pub const SPEC_SCHEMA: &str = "ramify-spec/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSpec {
    pub kind: String,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StepSpec {
    Unramified { degree: usize },
    Eisenstein { coeffs: Vec<String> },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SpecOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

/// On-disk field description, schema `ramify-spec/1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerSpec {
    pub schema: String,
    pub base: BaseSpec,
    #[serde(default)]
    pub steps: Vec<StepSpec>,
    /// Generator as ground-literal coefficients on powers of the top step
    /// generator; defaults to the top step generator itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<String>>,
    #[serde(default)]
    pub options: SpecOptions,
}

impl TowerSpec {
    pub fn from_json(text: &str) -> Result<TowerSpec> {
        let spec: TowerSpec =
            serde_json::from_str(text).map_err(|e| Error::BadInput(format!("bad spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn new(ground: Ground, steps: Vec<StepSpec>, generator: Option<Vec<String>>) -> TowerSpec {
        let (kind, p) = match ground {
            Ground::Padic { p } => ("padic", p),
            Ground::Laurent { p } => ("laurent", p),
        };
        TowerSpec {
            schema: SPEC_SCHEMA.to_string(),
            base: BaseSpec {
                kind: kind.to_string(),
                p,
            },
            steps,
            generator,
            options: SpecOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SPEC_SCHEMA {
            return Err(Error::BadInput(format!(
                "unsupported schema {:?}, expected {:?}",
                self.schema, SPEC_SCHEMA
            )));
        }
        self.ground()?;
        Ok(())
    }

    pub fn ground(&self) -> Result<Ground> {
        let p = self.base.p;
        if !is_prime(p) {
            return Err(Error::BadInput(format!("{p} is not prime")));
        }
        match self.base.kind.as_str() {
            "padic" => Ok(Ground::Padic { p }),
            "laurent" => Ok(Ground::Laurent { p }),
            other => Err(Error::BadInput(format!(
                "unknown base kind {other:?}, expected \"padic\" or \"laurent\""
            ))),
        }
    }

    pub fn precision(&self) -> i64 {
        self.options.precision.unwrap_or(DEFAULT_PRECISION)
    }

    /// Builds the tower at the given working precision and returns it with
    /// the generator element.
    pub fn build(&self, prec: i64) -> Result<(Rc<TowerField>, TowerElem)> {
        let g = self.ground()?;
        let mut field = TowerField::ground(g, prec);
        for step in &self.steps {
            match step {
                StepSpec::Unramified { degree } => {
                    field = field.extend_unramified(*degree)?;
                }
                StepSpec::Eisenstein { coeffs } => {
                    let lows: Vec<TowerElem> = coeffs
                        .iter()
                        .take(coeffs.len().saturating_sub(1))
                        .map(|s| {
                            Ok(TowerElem::from_scalar(&field, parse_ground_literal(g, s)?))
                        })
                        .collect::<Result<_>>()?;
                    check_monic_literal(g, coeffs)?;
                    field = field.extend_eisenstein(&lows)?;
                }
            }
        }
        let alpha = match &self.generator {
            None => {
                if self.steps.is_empty() {
                    TowerElem::uniformizer(&field)
                } else {
                    TowerElem::top_generator(&field)
                }
            }
            Some(lits) => {
                let gen = if self.steps.is_empty() {
                    TowerElem::uniformizer(&field)
                } else {
                    TowerElem::top_generator(&field)
                };
                let mut acc = TowerElem::zero(&field);
                let mut pow = TowerElem::one(&field);
                for lit in lits {
                    let c = TowerElem::from_scalar(&field, parse_ground_literal(g, lit)?);
                    acc = acc.add(&c.mul(&pow));
                    pow = pow.mul(&gen);
                }
                acc
            }
        };
        Ok((field, alpha))
    }
}

fn check_monic_literal(g: Ground, coeffs: &[String]) -> Result<()> {
    match coeffs.last() {
        Some(lead) => {
            let s = parse_ground_literal(g, lead)?;
            let one = Scalar::one(g);
            if !s.sub(&one).is_exact_zero() {
                return Err(Error::BadInput(format!(
                    "Eisenstein step must be monic, leading coefficient {lead:?}"
                )));
            }
            Ok(())
        }
        None => Err(Error::BadInput("empty Eisenstein step".to_string())),
    }
}

/// Parses a ground literal: a decimal integer for p-adic grounds, an
/// integer polynomial in `t` (such as `"1+t^2-3t"`) for Laurent grounds.
pub fn parse_ground_literal(g: Ground, text: &str) -> Result<Scalar> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::BadInput("empty literal".to_string()));
    }
    match g {
        Ground::Padic { .. } => {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::BadInput(format!("bad integer literal {text:?}")))?;
            Ok(Scalar::from_bigint(g, n))
        }
        Ground::Laurent { .. } => {
            let mut coeffs: Vec<i64> = Vec::new();
            for (sign, term) in split_signed_terms(&s)? {
                let (c, k) = parse_t_term(term)?;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, 0);
                }
                coeffs[k] += sign * c;
            }
            Ok(Scalar::from_tpoly(g, &coeffs))
        }
    }
}

fn split_signed_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0usize;
    let mut sign = 1i64;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            if i == start {
                return Err(Error::BadInput(format!("bad literal {s:?}")));
            }
            out.push((sign, &s[start..i]));
            if i < bytes.len() {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                start = i + 1;
            }
        }
        i += 1;
    }
    Ok(out)
}

/// One term: `5`, `t`, `5t`, `5*t`, `t^3`, `5t^3`.
fn parse_t_term(term: &str) -> Result<(i64, usize)> {
    let bad = || Error::BadInput(format!("bad term {term:?} in Laurent literal"));
    match term.find('t') {
        None => Ok((term.parse().map_err(|_| bad())?, 0)),
        Some(pos) => {
            let coeff_part = term[..pos].trim_end_matches('*');
            let c: i64 = if coeff_part.is_empty() {
                1
            } else {
                coeff_part.parse().map_err(|_| bad())?
            };
            let rest = &term[pos + 1..];
            let k: usize = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            Ok((c, k))
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Whether a valuation provably exceeds a separation bound.
fn clears(v: &VK, sep: &Rat) -> bool {
    match v.lower_bound() {
        None => true,
        Some(b) => b > sep,
    }
}

/// An analyzed extension `L/K`: the tower, the certified generator, and
/// its exact minimal polynomial over the ground field.
#[derive(Clone)]
pub struct Extension {
    pub tower: Rc<TowerField>,
    pub ground: Rc<TowerField>,
    pub alpha: TowerElem,
    /// Minimal polynomial of `alpha` over the ground field, monic of
    /// degree `[L:K]`, coefficients exact for exact tower data.
    pub minpoly: Poly,
    /// Columns of the change-of-basis matrix from powers of `alpha` to the
    /// tower monomial basis; its determinant is a certified unit.
    alpha_cols: Vec<Vec<Scalar>>,
}

impl Extension {
    /// Builds and certifies the extension at one working precision. When
    /// the spec leaves the generator implicit and the default fails the
    /// monogenicity certificate (possible for towers that are neither
    /// totally ramified nor unramified), tries uniformizer-plus-residue
    /// combinations until one certifies, with a bounded retry budget.
    pub fn analyze(spec: &TowerSpec, prec: i64) -> Result<Extension> {
        let (tower, alpha) = spec.build(prec)?;
        let ground = TowerField::ground(tower.ground_field(), prec);
        let first = Self::from_parts(Rc::clone(&tower), Rc::clone(&ground), alpha);
        if spec.generator.is_some() || first.is_ok() {
            return first;
        }
        let mixed = tower.ram_index() > 1 && tower.residue_degree() > 1;
        if !mixed {
            return first;
        }
        let first_err = first.err().unwrap();
        if matches!(first_err, Error::InsufficientPrecision(_)) {
            return Err(first_err);
        }
        let pi = TowerElem::uniformizer(&tower);
        let res = tower.residue_field().clone();
        let omega = TowerElem::lift(&tower, &res.generator());
        let mut candidates = vec![pi.add(&omega), pi.mul(&omega)];
        for k in 2..16u64 {
            if k < res.order() {
                candidates.push(pi.add(&TowerElem::lift(&tower, &res.element(k))));
            }
        }
        for cand in candidates {
            match Self::from_parts(Rc::clone(&tower), Rc::clone(&ground), cand) {
                Ok(ext) => return Ok(ext),
                Err(Error::InsufficientPrecision(d)) => {
                    return Err(Error::InsufficientPrecision(d))
                }
                Err(_) => continue,
            }
        }
        Err(first_err)
    }

    pub fn from_parts(
        tower: Rc<TowerField>,
        ground: Rc<TowerField>,
        alpha: TowerElem,
    ) -> Result<Extension> {
        let n = tower.dim();
        let g = tower.ground_field();

        // Powers of alpha as columns; their span decides monogenicity.
        let mut alpha_cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        let mut pow = TowerElem::one(&tower);
        for _ in 0..n {
            alpha_cols.push(pow.coeffs().to_vec());
            pow = pow.mul(&alpha);
        }
        if n > 1 {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|i| (0..n).map(|j| alpha_cols[j][i].clone()).collect())
                .collect();
            match det(g, &rows).valuation() {
                Val::Exact(0) => {}
                Val::Exact(v) => {
                    return Err(Error::NotMonogenic(format!(
                        "generator power basis has determinant valuation {v}"
                    )));
                }
                Val::Infinite => {
                    return Err(Error::NotMonogenic(
                        "generator powers are linearly dependent".to_string(),
                    ));
                }
                Val::AtLeast(_) => {
                    return Err(Error::InsufficientPrecision(
                        "cannot certify the generator power basis".to_string(),
                    ));
                }
            }
        }

        // Multiplication-by-alpha matrix on the monomial basis; its
        // characteristic polynomial is the minimal polynomial once the
        // power basis is certified.
        let minpoly = if n == 1 {
            let c = alpha.coeffs()[0].clone();
            Poly::new(
                &ground,
                vec![
                    TowerElem::from_scalar(&ground, c.neg()),
                    TowerElem::one(&ground),
                ],
            )
        } else {
            let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(g); n]; n];
            for j in 0..n {
                let mut basis = vec![Scalar::zero(g); n];
                basis[j] = Scalar::one(g);
                let col = TowerElem::from_coeffs(&tower, basis).mul(&alpha);
                for (i, c) in col.coeffs().iter().enumerate() {
                    rows[i][j] = c.clone();
                }
            }
            let coeffs = charpoly(g, &rows);
            Poly::new(
                &ground,
                coeffs
                    .into_iter()
                    .map(|c| TowerElem::from_scalar(&ground, c))
                    .collect(),
            )
        };

        // The generator must satisfy its characteristic polynomial
        // exactly; with exact tower data this is automatic.
        let value = lift_ground_poly(&minpoly, &tower).eval(&alpha);
        if !value.is_zeroish() {
            return Err(Error::BadInput(
                "generator does not satisfy its characteristic polynomial".to_string(),
            ));
        }

        Ok(Extension {
            tower,
            ground,
            alpha,
            minpoly,
            alpha_cols,
        })
    }

    pub fn degree(&self) -> usize {
        self.tower.dim()
    }

    pub fn ram_index(&self) -> i64 {
        self.tower.ram_index()
    }

    pub fn residue_degree(&self) -> usize {
        self.tower.residue_degree()
    }

    /// Writes an element as a polynomial in the generator: coefficients
    /// `c` with `x = sum c_k alpha^k`.
    pub fn as_alpha_polynomial(&self, x: &TowerElem) -> Result<Vec<Scalar>> {
        solve_scalar_system(&self.tower, self.alpha_cols.clone(), x.coeffs().to_vec())
    }

    /// Evaluates `sum c_k y^k` for coefficients produced by
    /// `as_alpha_polynomial`.
    pub fn eval_alpha_polynomial(&self, c: &[Scalar], y: &TowerElem) -> TowerElem {
        let mut acc = TowerElem::zero(&self.tower);
        for ck in c.iter().rev() {
            acc = acc.mul(y).add(&TowerElem::from_scalar(&self.tower, ck.clone()));
        }
        acc
    }

    /// The minimal polynomial transplanted to coefficients in any field
    /// over the same ground.
    pub fn minpoly_over(&self, field: &Rc<TowerField>) -> Poly {
        lift_ground_poly(&self.minpoly, field)
    }
}

/// Re-coefficients a polynomial over a ground field into any tower over
/// the same kind of ground (scalars carry no field identity).
pub fn lift_ground_poly(p: &Poly, field: &Rc<TowerField>) -> Poly {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| TowerElem::from_scalar(field, c.coeffs()[0].clone()))
        .collect();
    Poly::new(field, coeffs)
}

/// Runs an analysis at increasing precision until it stops failing with
/// `InsufficientPrecision`, doubling from the spec's starting precision up
/// to `MAX_PRECISION`.
pub fn with_escalation<T>(
    spec: &TowerSpec,
    f: impl Fn(&Extension) -> Result<T>,
) -> Result<T> {
    let mut prec = spec.precision();
    loop {
        let attempt = Extension::analyze(spec, prec).and_then(|ext| f(&ext));
        match attempt {
            Err(Error::InsufficientPrecision(detail)) => {
                if prec >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted {
                        limit: MAX_PRECISION,
                        detail,
                    });
                }
                prec = (prec * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

/// The Galois group of a certified extension, as the action on the root
/// list of the generator's minimal polynomial.
pub struct GaloisGroup {
    pub ext: Extension,
    /// Certified approximations of the roots, canonical order.
    pub roots: Vec<TowerElem>,
    pub identity: usize,
    /// `table[i][j]` is the index of `sigma_i . sigma_j`.
    pub table: Vec<Vec<usize>>,
    /// Largest valuation of a difference of distinct roots; matching an
    /// element to a root requires beating this bound.
    pub separation: Rat,
    /// Root approximation quality: `v(minpoly(root))` certified at least
    /// this.
    pub target: Rat,
}

/// Computes the Galois group. Fails with `NotGalois` when the minimal
/// polynomial does not split in the field.
pub fn galois_group(ext: &Extension) -> Result<GaloisGroup> {
    let n = ext.degree();
    let target = Rat::new(3 * ext.tower.precision(), 4);
    let p_over_l = ext.minpoly_over(&ext.tower);
    let found = find_roots(&p_over_l, &target)?;
    if found.roots.len() != n {
        return Err(Error::NotGalois {
            found: found.roots.len(),
            degree: n,
        });
    }
    let roots: Vec<TowerElem> = found.roots.iter().map(|r| r.approx.clone()).collect();

    // Pairwise separations must be exactly resolved and well below the
    // approximation target, otherwise roots cannot be told apart.
    let mut separation = Rat::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            match roots[i].sub(&roots[j]).valuation() {
                VK::Exact(v) => {
                    if &v + &v >= target {
                        return Err(Error::InsufficientPrecision(format!(
                            "roots {i} and {j} agree to valuation {v}"
                        )));
                    }
                    separation = separation.max(v);
                }
                _ => {
                    return Err(Error::InsufficientPrecision(format!(
                        "separation of roots {i} and {j} is not exactly resolved"
                    )));
                }
            }
        }
    }

    let mut group = GaloisGroup {
        ext: ext.clone(),
        roots,
        identity: 0,
        table: vec![],
        separation,
        target,
    };
    group.identity = group.match_root(&ext.alpha)?;

    let mut table = vec![vec![0usize; n]; n];
    for j in 0..n {
        let c = ext.as_alpha_polynomial(&group.roots[j])?;
        for i in 0..n {
            let w = ext.eval_alpha_polynomial(&c, &group.roots[i]);
            table[i][j] = group.match_root(&w)?;
        }
    }
    group.table = table;
    for (i, row) in group.table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InsufficientPrecision(format!(
                "composition row {i} is not a permutation"
            )));
        }
    }
    Ok(group)
}

impl GaloisGroup {
    pub fn order(&self) -> usize {
        self.roots.len()
    }

    /// Applies `sigma_g` to an arbitrary element of the field.
    pub fn apply(&self, g: usize, x: &TowerElem) -> Result<TowerElem> {
        let c = self.ext.as_alpha_polynomial(x)?;
        Ok(self.ext.eval_alpha_polynomial(&c, &self.roots[g]))
    }

    /// Matches an approximate element against the root list: succeeds only
    /// when the element is provably closer to one root than any two
    /// distinct roots are to each other.
    pub fn match_root(&self, w: &TowerElem) -> Result<usize> {
        for (i, z) in self.roots.iter().enumerate() {
            if clears(&w.sub(z).valuation(), &self.separation) {
                return Ok(i);
            }
        }
        Err(Error::InsufficientPrecision(
            "element does not match any root beyond the separation bound".to_string(),
        ))
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order())
            .find(|&h| self.table[g][h] == self.identity)
            .expect("group table has inverses")
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != self.identity {
            acc = self.table[g][acc];
            k += 1;
        }
        k
    }

    /// All subgroups, each as a sorted index list; the list itself is
    /// sorted by size then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut queue: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            let h = self.closure(&[g]);
            if !seen.contains(&h) {
                seen.push(h.clone());
                queue.push(h);
            }
        }
        let mut i = 0;
        while i < seen.len() {
            let a = seen[i].clone();
            for j in 0..seen.len() {
                let mut gens = a.clone();
                gens.extend_from_slice(&seen[j]);
                let h = self.closure(&gens);
                if !seen.contains(&h) {
                    seen.push(h);
                }
            }
            i += 1;
        }
        seen.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        seen
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut h = vec![self.identity];
        let mut frontier = gens.to_vec();
        while let Some(g) = frontier.pop() {
            if h.contains(&g) {
                continue;
            }
            h.push(g);
            let snapshot = h.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let c = self.table[a][b];
                    if !h.contains(&c) {
                        frontier.push(c);
                    }
                }
            }
        }
        h.sort_unstable();
        h
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        for g in 0..self.order() {
            let gi = self.inverse(g);
            for &x in h {
                let c = self.table[self.table[g][x]][gi];
                if !h.contains(&c) {
                    return false;
                }
            }
        }
        true
    }

    /// Tests whether the fixed field of `H` is the field described by
    /// `candidate`: the candidate generator must have a root in the tower
    /// fixed by every element of `H` (certified through root separation),
    /// and the degrees must match.
    pub fn fixed_field_is(&self, h: &[usize], candidate: &Extension) -> Result<bool> {
        if candidate.degree() * h.len() != self.order() {
            return Ok(false);
        }
        if candidate.degree() == 1 {
            return Ok(true);
        }
        let embeddings = self.embeddings_of(candidate)?;
        if embeddings.is_empty() {
            return Ok(false);
        }
        let seps = pairwise_separation(&embeddings)?;
        for m in &embeddings {
            let mut fixed = true;
            for &s in h {
                if s == self.identity {
                    continue;
                }
                let sm = self.apply(s, m)?;
                if !clears(&sm.sub(m).valuation(), &seps) {
                    fixed = false;
                    break;
                }
            }
            if fixed {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Roots in the tower of the candidate's generator minimal polynomial.
    pub fn embeddings_of(&self, candidate: &Extension) -> Result<Vec<TowerElem>> {
        let p = candidate.minpoly_over(&self.ext.tower);
        let found = find_roots(&p, &self.target)?;
        Ok(found.roots.into_iter().map(|r| r.approx).collect())
    }
}

/// Largest valuation of a pairwise difference, exactly resolved. Zero for
/// fewer than two elements.
pub fn pairwise_separation(xs: &[TowerElem]) -> Result<Rat> {
    let mut out = Rat::zero();
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            match xs[i].sub(&xs[j]).valuation() {
                VK::Exact(v) => out = out.max(v),
                _ => {
                    return Err(Error::InsufficientPrecision(
                        "pairwise separation not exactly resolved".to_string(),
                    ))
                }
            }
        }
    }
    Ok(out)
}

/// Adjoins a root of an exact ground polynomial to a field, reusing the
/// branch-recursion obstructions.
pub fn splitting_step(
    field: &Rc<TowerField>,
    p: &Poly,
    target: &Rat,
) -> Result<(Rc<TowerField>, FoundRoot)> {
    let lifted = lift_ground_poly(p, field);
    let adjoined = crate::localfield::roots::adjoin_root(&lifted, target)?;
    Ok((adjoined.field, adjoined.root))
}

/// Summary of a tower's shape for reports.
pub fn tower_shape(field: &TowerField) -> Vec<(StepKind, usize)> {
    field.steps()
}

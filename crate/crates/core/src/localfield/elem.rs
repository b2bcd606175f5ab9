//! Elements of a tower field: coefficient vectors over the monomial basis.

use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::exactmath::fq::FqElem;
use crate::exactmath::rat::Rat;
use crate::localfield::scalar::{Scalar, Val};
use crate::localfield::tower::TowerField;

/// Ground-normalized valuation of an element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VK {
    Exact(Rat),
    /// Not provably nonzero; the true valuation is at least this.
    AtLeast(Rat),
    /// Provably zero.
    Infinite,
}

impl VK {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            VK::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// A lower bound valid in all three cases (`None` = unbounded).
    pub fn lower_bound(&self) -> Option<&Rat> {
        match self {
            VK::Exact(v) | VK::AtLeast(v) => Some(v),
            VK::Infinite => None,
        }
    }
}

#[derive(Clone)]
pub struct TowerElem {
    field: Rc<TowerField>,
    coeffs: Vec<Scalar>,
}

impl TowerElem {
    pub fn zero(field: &Rc<TowerField>) -> TowerElem {
        TowerElem {
            field: Rc::clone(field),
            coeffs: vec![Scalar::zero(field.ground_field()); field.dim()],
        }
    }

    pub fn one(field: &Rc<TowerField>) -> TowerElem {
        TowerElem::from_int(field, 1)
    }

    pub fn from_int(field: &Rc<TowerField>, n: i64) -> TowerElem {
        TowerElem::from_scalar(field, Scalar::from_int(field.ground_field(), n))
    }

    pub fn from_scalar(field: &Rc<TowerField>, s: Scalar) -> TowerElem {
        let mut coeffs = vec![Scalar::zero(field.ground_field()); field.dim()];
        coeffs[0] = s;
        TowerElem {
            field: Rc::clone(field),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &Rc<TowerField>, coeffs: Vec<Scalar>) -> TowerElem {
        assert_eq!(coeffs.len(), field.dim(), "coefficient vector length");
        TowerElem {
            field: Rc::clone(field),
            coeffs,
        }
    }

    /// The generator adjoined by the top step.
    pub fn top_generator(field: &Rc<TowerField>) -> TowerElem {
        let parent_dim = field
            .parent()
            .expect("ground field has no generator")
            .dim();
        let mut coeffs = vec![Scalar::zero(field.ground_field()); field.dim()];
        coeffs[parent_dim] = Scalar::one(field.ground_field());
        TowerElem {
            field: Rc::clone(field),
            coeffs,
        }
    }

    /// A uniformizer: the last Eisenstein generator, or the ground
    /// uniformizer when the tower is unramified.
    pub fn uniformizer(field: &Rc<TowerField>) -> TowerElem {
        match field.pi_index() {
            Some(idx) => {
                let mut coeffs = vec![Scalar::zero(field.ground_field()); field.dim()];
                coeffs[idx] = Scalar::one(field.ground_field());
                TowerElem {
                    field: Rc::clone(field),
                    coeffs,
                }
            }
            None => TowerElem::from_scalar(
                field,
                Scalar::uniformizer_pow(field.ground_field(), 1),
            ),
        }
    }

    pub fn field(&self) -> &Rc<TowerField> {
        &self.field
    }

    pub fn field_id(&self) -> u64 {
        self.field.id()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Reinterprets an element of a lower floor in a taller tower built on
    /// top of it (the monomial basis of the floor is a prefix).
    pub fn coerce_to(&self, target: &Rc<TowerField>) -> Result<TowerElem> {
        if target.id() == self.field.id() {
            return Ok(TowerElem {
                field: Rc::clone(target),
                coeffs: self.coeffs.clone(),
            });
        }
        let mut cur = target.parent();
        let mut found = false;
        while let Some(fld) = cur {
            if fld.id() == self.field.id() {
                found = true;
                break;
            }
            cur = fld.parent();
        }
        if !found {
            return Err(Error::BadInput(
                "element does not belong to a floor of the target tower".to_string(),
            ));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(target.dim(), Scalar::zero(self.field.ground_field()));
        Ok(TowerElem {
            field: Rc::clone(target),
            coeffs,
        })
    }

    fn assert_same(&self, other: &TowerElem) {
        assert_eq!(
            self.field.id(),
            other.field.id(),
            "elements of different towers"
        );
    }

    pub fn add(&self, other: &TowerElem) -> TowerElem {
        self.assert_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        TowerElem {
            field: Rc::clone(&self.field),
            coeffs,
        }
    }

    pub fn neg(&self) -> TowerElem {
        TowerElem {
            field: Rc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &TowerElem) -> TowerElem {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, s: &Scalar) -> TowerElem {
        TowerElem {
            field: Rc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn mul_int(&self, n: i64) -> TowerElem {
        self.mul_scalar(&Scalar::from_int(self.field.ground_field(), n))
    }

    pub fn mul(&self, other: &TowerElem) -> TowerElem {
        self.assert_same(other);
        let coeffs = mul_slices(&self.field, &self.coeffs, &other.coeffs);
        TowerElem {
            field: Rc::clone(&self.field),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> TowerElem {
        let mut result = TowerElem::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    pub fn is_zeroish(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zeroish())
    }

    pub fn valuation(&self) -> VK {
        let mut min_exact: Option<Rat> = None;
        let mut min_bound: Option<Rat> = None;
        for (c, mv) in self.coeffs.iter().zip(self.field.monomial_vals()) {
            match c.valuation() {
                Val::Infinite => {}
                Val::Exact(v) => {
                    let cand = Rat::from_int(v) + mv.clone();
                    if min_exact.as_ref().map_or(true, |m| cand < *m) {
                        min_exact = Some(cand);
                    }
                }
                Val::AtLeast(b) => {
                    let cand = Rat::from_int(b) + mv.clone();
                    if min_bound.as_ref().map_or(true, |m| cand < *m) {
                        min_bound = Some(cand);
                    }
                }
            }
        }
        match (min_exact, min_bound) {
            (None, None) => VK::Infinite,
            (Some(v), None) => VK::Exact(v),
            (None, Some(b)) => VK::AtLeast(b),
            (Some(v), Some(b)) => {
                if v <= b {
                    VK::Exact(v)
                } else {
                    VK::AtLeast(b)
                }
            }
        }
    }

    /// Residue in the residue field; requires provable integrality and
    /// known residue digits.
    pub fn residue(&self) -> Result<FqElem> {
        match self.valuation() {
            VK::Infinite => return Ok(self.field.residue_field().zero()),
            VK::Exact(v) => {
                if v.is_negative() {
                    return Err(Error::NotIntegral(format!("valuation {v}")));
                }
            }
            VK::AtLeast(b) => {
                if b.is_negative() {
                    return Err(Error::InsufficientPrecision(
                        "integrality not certified".to_string(),
                    ));
                }
            }
        }
        let k = self.field.residue_field();
        let mut acc = k.zero();
        for (idx, r) in self.field.res_monomials() {
            let digit = self.coeffs[*idx].residue_digit().ok_or_else(|| {
                Error::InsufficientPrecision("residue digit unknown".to_string())
            })?;
            if digit != 0 {
                let term = k.mul(&k.from_int(digit as i64), r);
                acc = k.add(&acc, &term);
            }
        }
        Ok(acc)
    }

    /// Lift of a residue element (exact, supported on unramified
    /// monomials).
    pub fn lift(field: &Rc<TowerField>, x: &FqElem) -> TowerElem {
        TowerElem {
            field: Rc::clone(field),
            coeffs: field.lift_coeffs(x),
        }
    }

    /// Multiplicative inverse by solving the regular-representation linear
    /// system.
    pub fn inv(&self) -> Result<TowerElem> {
        let d = self.field.dim();
        // Columns: self * basis monomial j.
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut unit = vec![Scalar::zero(self.field.ground_field()); d];
            unit[j] = Scalar::one(self.field.ground_field());
            cols.push(mul_slices(&self.field, &self.coeffs, &unit));
        }
        let mut rhs = vec![Scalar::zero(self.field.ground_field()); d];
        rhs[0] = Scalar::one(self.field.ground_field());
        let x = solve_scalar_system(&self.field, cols, rhs)?;
        Ok(TowerElem {
            field: Rc::clone(&self.field),
            coeffs: x,
        })
    }

    pub fn div(&self, other: &TowerElem) -> Result<TowerElem> {
        Ok(self.mul(&other.inv()?))
    }

    /// Multiplies by `uniformizer^k` (any sign of `k`).
    pub fn mul_uniformizer_pow(&self, k: i64) -> Result<TowerElem> {
        if k == 0 {
            return Ok(self.clone());
        }
        let pi = TowerElem::uniformizer(&self.field);
        if k > 0 {
            return Ok(self.mul(&pi.pow(k as u64)));
        }
        let inv_coeffs = self.field.inv_pi_coeffs(|| {
            let inv = pi.inv()?;
            Ok(inv.coeffs)
        })?;
        let inv_pi = TowerElem {
            field: Rc::clone(&self.field),
            coeffs: inv_coeffs,
        };
        Ok(self.mul(&inv_pi.pow((-k) as u64)))
    }

    /// The unit part `self / uniformizer^(e v)` of an element of exact
    /// valuation `v`, together with `e v` (the valuation in tower units).
    pub fn unit_part(&self) -> Result<(TowerElem, i64)> {
        match self.valuation() {
            VK::Exact(v) => {
                let scaled = v * Rat::from_int(self.field.ram_index());
                let k = scaled
                    .to_i64()
                    .expect("valuation lies in (1/e)Z");
                Ok((self.mul_uniformizer_pow(-k)?, k))
            }
            VK::AtLeast(_) => Err(Error::InsufficientPrecision(
                "unit part of a value with uncertain valuation".to_string(),
            )),
            VK::Infinite => Err(Error::DivisionByZero),
        }
    }
}

/// Multiplication on raw coefficient slices, recursing down the tower.
fn mul_slices(field: &Rc<TowerField>, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    match field.step_view() {
        None => vec![a[0].mul(&b[0])],
        Some((degree, rel, parent)) => {
            let w = parent.dim();
            let d = degree;
            let g = field.ground_field();
            let mut blocks: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(g); w]; 2 * d - 1];
            for i in 0..d {
                let ai = &a[i * w..(i + 1) * w];
                if ai.iter().all(|c| c.is_exact_zero()) {
                    continue;
                }
                for j in 0..d {
                    let bj = &b[j * w..(j + 1) * w];
                    if bj.iter().all(|c| c.is_exact_zero()) {
                        continue;
                    }
                    let prod = mul_slices(&parent, ai, bj);
                    for (acc, p) in blocks[i + j].iter_mut().zip(&prod) {
                        *acc = acc.add(p);
                    }
                }
            }
            for i in (d..2 * d - 1).rev() {
                let block = std::mem::replace(&mut blocks[i], vec![]);
                if block.iter().all(|c| c.is_exact_zero()) {
                    continue;
                }
                for (t, r) in rel.iter().enumerate() {
                    if r.iter().all(|c| c.is_exact_zero()) {
                        continue;
                    }
                    let prod = mul_slices(&parent, &block, r);
                    for (acc, p) in blocks[i - d + t].iter_mut().zip(&prod) {
                        *acc = acc.add(p);
                    }
                }
            }
            let mut out = Vec::with_capacity(d * w);
            for block in blocks.into_iter().take(d) {
                out.extend(block);
            }
            out
        }
    }
}

/// Solves `M x = rhs` over ground scalars by Gaussian elimination with
/// minimal-valuation pivoting. `cols` are the columns of `M`.
pub(crate) fn solve_scalar_system(
    field: &Rc<TowerField>,
    cols: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
) -> Result<Vec<Scalar>> {
    let d = rhs.len();
    let prec = field.precision();
    // Row-major augmented matrix.
    let mut m: Vec<Vec<Scalar>> = (0..d)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut row_of_col = vec![usize::MAX; d];
    let mut used = vec![false; d];
    for col in 0..d {
        // Pivot: unused row with an entry of minimal exact valuation.
        let mut best: Option<(usize, i64)> = None;
        let mut saw_uncertain = false;
        for (r, row) in m.iter().enumerate() {
            if used[r] {
                continue;
            }
            match row[col].valuation() {
                Val::Exact(v) => {
                    if best.map_or(true, |(_, bv)| v < bv) {
                        best = Some((r, v));
                    }
                }
                Val::AtLeast(_) => saw_uncertain = true,
                Val::Infinite => {}
            }
        }
        let (pr, _) = match best {
            Some(b) => b,
            None => {
                if saw_uncertain {
                    return Err(Error::InsufficientPrecision(
                        "no certified pivot in linear solve".to_string(),
                    ));
                }
                return Err(Error::DivisionByZero);
            }
        };
        used[pr] = true;
        row_of_col[col] = pr;
        let pivot_inv = m[pr][col].inv(prec)?;
        let prow: Vec<Scalar> = m[pr].iter().map(|x| x.mul(&pivot_inv)).collect();
        m[pr] = prow;
        for r in 0..d {
            if r == pr {
                continue;
            }
            let factor = m[r][col].clone();
            if factor.is_exact_zero() {
                continue;
            }
            for c in 0..=d {
                let sub = factor.mul(&m[pr][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
    }
    Ok((0..d).map(|col| m[row_of_col[col]][d].clone()).collect())
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

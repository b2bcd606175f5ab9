//! Polynomials with coefficients in a tower field.
//!
//! Coefficients are stored lowest first. Only provably-zero leading
//! coefficients are trimmed; an uncertain leading coefficient stays and
//! surfaces as a precision error if something depends on its exact degree.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::exactmath::fq::FqElem;
use crate::exactmath::rat::Rat;
use crate::localfield::elem::{TowerElem, VK};
use crate::localfield::scalar::Scalar;
use crate::localfield::tower::TowerField;

#[derive(Clone)]
pub struct Poly {
    field: Rc<TowerField>,
    coeffs: Vec<TowerElem>,
}

impl Poly {
    pub fn new(field: &Rc<TowerField>, coeffs: Vec<TowerElem>) -> Poly {
        for c in &coeffs {
            assert_eq!(c.field_id(), field.id(), "coefficient from another field");
        }
        let mut p = Poly {
            field: Rc::clone(field),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Rc<TowerField>) -> Poly {
        Poly {
            field: Rc::clone(field),
            coeffs: vec![],
        }
    }

    pub fn from_int_coeffs(field: &Rc<TowerField>, coeffs: &[i64]) -> Poly {
        Poly::new(
            field,
            coeffs
                .iter()
                .map(|&c| TowerElem::from_int(field, c))
                .collect(),
        )
    }

    /// `x`.
    pub fn x(field: &Rc<TowerField>) -> Poly {
        Poly::from_int_coeffs(field, &[0, 1])
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .map_or(false, |c| c.is_exact_zero())
        {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Rc<TowerField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[TowerElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> TowerElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| TowerElem::zero(&self.field))
    }

    pub fn leading(&self) -> Option<&TowerElem> {
        self.coeffs.last()
    }

    /// Whether the leading coefficient is exactly one.
    pub fn is_monic(&self) -> bool {
        match self.coeffs.last() {
            None => false,
            Some(c) => c.sub(&TowerElem::one(&self.field)).is_exact_zero(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: Rc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out =
            vec![TowerElem::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn mul_elem(&self, c: &TowerElem) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn eval(&self, x: &TowerElem) -> TowerElem {
        let mut acc = TowerElem::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_int(i as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// `P(x + a)` by repeated synthetic division (exactness-preserving).
    pub fn shift(&self, a: &TowerElem) -> Poly {
        let mut work: Vec<TowerElem> = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            // One synthetic division of `work` by (x - a); remainder is the
            // k-th Taylor coefficient.
            for i in (k..n - 1).rev() {
                let t = work[i + 1].mul(a);
                work[i] = work[i].add(&t);
            }
            out.push(work.get(k).cloned().unwrap_or_else(|| {
                TowerElem::zero(&self.field)
            }));
        }
        Poly::new(&self.field, out)
    }

    /// `P(c x)`.
    pub fn scale_arg(&self, c: &TowerElem) -> Poly {
        let mut power = TowerElem::one(&self.field);
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let r = a.mul(&power);
                power = power.mul(c);
                r
            })
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// Divides out `x^k`, checking the dropped coefficients are exact
    /// zeros.
    pub fn divide_by_x_pow(&self, k: usize) -> Result<Poly> {
        for i in 0..k {
            if !self.coeff(i).is_exact_zero() {
                return Err(Error::BadInput(format!(
                    "coefficient {i} is not exactly zero"
                )));
            }
        }
        Ok(Poly::new(
            &self.field,
            self.coeffs.iter().skip(k).cloned().collect(),
        ))
    }

    /// Quotient and remainder by a divisor with invertible leading
    /// coefficient.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut quot = vec![TowerElem::zero(&self.field); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_exact_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for j in 0..=dd {
                let t = c.mul(&divisor.coeffs[j]);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
            rem[i] = TowerElem::zero(&self.field);
        }
        Ok((Poly::new(&self.field, quot), Poly::new(&self.field, rem)))
    }

    /// Minimum coefficient valuation (the content, as a valuation).
    pub fn content_valuation(&self) -> VK {
        let mut min_exact: Option<Rat> = None;
        let mut min_bound: Option<Rat> = None;
        for c in &self.coeffs {
            match c.valuation() {
                VK::Infinite => {}
                VK::Exact(v) => {
                    if min_exact.as_ref().map_or(true, |m| v < *m) {
                        min_exact = Some(v);
                    }
                }
                VK::AtLeast(b) => {
                    if min_bound.as_ref().map_or(true, |m| b < *m) {
                        min_bound = Some(b);
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

    /// Divides by `uniformizer^(e*mu)` where `mu` is the content valuation,
    /// making the content a unit. Returns the normalized polynomial and
    /// `mu`.
    pub fn normalize_content(&self) -> Result<(Poly, Rat)> {
        match self.content_valuation() {
            VK::Infinite => Err(Error::DivisionByZero),
            VK::AtLeast(_) => Err(Error::InsufficientPrecision(
                "content valuation not exactly known".to_string(),
            )),
            VK::Exact(mu) => {
                let k = (mu.clone() * Rat::from_int(self.field.ram_index()))
                    .to_i64()
                    .expect("content valuation lies in (1/e)Z");
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| c.mul_uniformizer_pow(-k))
                    .collect::<Result<Vec<_>>>()?;
                Ok((Poly::new(&self.field, coeffs), mu))
            }
        }
    }

    /// Residue polynomial (coefficients must be integral with known
    /// residues).
    pub fn residue_poly(&self) -> Result<Vec<FqElem>> {
        let k = self.field.residue_field();
        let mut out: Vec<FqElem> = self
            .coeffs
            .iter()
            .map(|c| c.residue())
            .collect::<Result<Vec<_>>>()?;
        while out.last().map_or(false, |c| k.is_zero(c)) {
            out.pop();
        }
        Ok(out)
    }

    /// Reinterprets the polynomial over a taller tower.
    pub fn coerce_to(&self, target: &Rc<TowerField>) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.coerce_to(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target, coeffs))
    }

    /// Valuation data for the Newton polygon: `(i, v(a_i))`.
    pub fn valuation_points(&self) -> Vec<(usize, VK)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.valuation()))
            .collect()
    }

    /// Multiplies every coefficient by `uniformizer^k`.
    pub fn mul_uniformizer_pow(&self, k: i64) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul_uniformizer_pow(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.field, coeffs))
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*x^{i}")?;
        }
        Ok(())
    }
}

/// Builds a monic polynomial over `field` from ground-scalar coefficient
/// vectors (used when reconstructing relations).
pub fn poly_from_scalar_rows(field: &Rc<TowerField>, rows: Vec<Vec<Scalar>>) -> Poly {
    let coeffs = rows
        .into_iter()
        .map(|r| TowerElem::from_coeffs(field, r))
        .collect();
    Poly::new(field, coeffs)
}

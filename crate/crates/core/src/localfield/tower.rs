//! Finite towers of unramified and Eisenstein steps over `Q_p` or
//! `F_p((t))`.
//!
//! A tower fixes a monomial basis: products of powers of the step
//! generators, top step outermost. That basis is a valuation basis: the
//! valuation of an element is the minimum of `v(coefficient) +
//! v(monomial)` over the basis, with no hidden cancellation. Eisenstein
//! monomial valuations run through all classes of `(1/e)Z` modulo `Z`
//! exactly once, and residues of the unramified monomials form a basis of
//! the residue field, which is what rules cancellation out.
//!
//! Valuations here are ground-normalized throughout: the ground
//! uniformizer has valuation 1 and a tower with absolute ramification
//! index `e` has value group `(1/e)Z`.

use std::cell::OnceCell;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::exactmath::fq::{qp_is_irreducible, Fq, FqElem};
use crate::exactmath::rat::Rat;
use crate::localfield::elem::{TowerElem, VK};
use crate::localfield::scalar::{Ground, Scalar};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepKind {
    Unramified,
    Eisenstein,
}

pub(crate) struct StepData {
    pub kind: StepKind,
    pub degree: usize,
    /// Monic defining relation of the step generator `g`:
    /// `g^degree = sum_j rel[j] g^j`, each `rel[j]` a coefficient vector
    /// over the floor below this step.
    pub rel: Vec<Vec<Scalar>>,
}

pub struct TowerField {
    pub(crate) id: u64,
    pub(crate) parent: Option<Rc<TowerField>>,
    pub(crate) ground: Ground,
    /// Working relative precision in ground uniformizer digits, used by
    /// every division performed over this field.
    pub(crate) prec: i64,
    pub(crate) step: Option<StepData>,
    pub(crate) dim: usize,
    pub(crate) e: i64,
    pub(crate) f: usize,
    /// Ground-normalized valuation of each basis monomial.
    pub(crate) monomial_vals: Vec<Rat>,
    pub(crate) residue: Fq,
    /// `(basis index, residue)` for monomials free of Eisenstein
    /// generators; the residues are an `F_p`-basis of `residue`.
    pub(crate) res_monomials: Vec<(usize, FqElem)>,
    /// Row `i` gives the `F_p`-coordinates selecting the coefficient of
    /// `res_monomials[i]` from a residue element's canonical coordinates.
    pub(crate) lift_rows: Vec<Vec<u64>>,
    /// Basis index of the uniformizer monomial; `None` when the ground
    /// uniformizer still uniformizes (no Eisenstein step).
    pub(crate) pi_index: Option<usize>,
    pub(crate) inv_pi: OnceCell<Vec<Scalar>>,
}

impl TowerField {
    pub fn ground(g: Ground, prec: i64) -> Rc<TowerField> {
        assert!(prec >= 1, "precision must be at least one digit");
        let residue = Fq::prime(g.p()).expect("ground residue field");
        let one = residue.one();
        Rc::new(TowerField {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            parent: None,
            ground: g,
            prec,
            step: None,
            dim: 1,
            e: 1,
            f: 1,
            monomial_vals: vec![Rat::zero()],
            residue,
            res_monomials: vec![(0, one)],
            lift_rows: vec![vec![1]],
            pi_index: None,
            inv_pi: OnceCell::new(),
        })
    }

    pub fn ground_field(&self) -> Ground {
        self.ground
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn pi_index(&self) -> Option<usize> {
        self.pi_index
    }

    pub fn monomial_vals(&self) -> &[Rat] {
        &self.monomial_vals
    }

    pub fn res_monomials(&self) -> &[(usize, FqElem)] {
        &self.res_monomials
    }

    /// Degree, defining relation and parent of the top step.
    pub(crate) fn step_view(&self) -> Option<(usize, &[Vec<Scalar>], Rc<TowerField>)> {
        self.step.as_ref().map(|s| {
            (
                s.degree,
                s.rel.as_slice(),
                Rc::clone(self.parent.as_ref().expect("stepped tower has a parent")),
            )
        })
    }

    /// Cached coefficient vector of `uniformizer^{-1}`.
    pub(crate) fn inv_pi_coeffs(
        &self,
        compute: impl FnOnce() -> Result<Vec<Scalar>>,
    ) -> Result<Vec<Scalar>> {
        if let Some(v) = self.inv_pi.get() {
            return Ok(v.clone());
        }
        let v = compute()?;
        let _ = self.inv_pi.set(v.clone());
        Ok(v)
    }

    pub fn p(&self) -> u64 {
        self.ground.p()
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ram_index(&self) -> i64 {
        self.e
    }

    pub fn residue_degree(&self) -> usize {
        self.f
    }

    pub fn residue_field(&self) -> &Fq {
        &self.residue
    }

    pub fn parent(&self) -> Option<&Rc<TowerField>> {
        self.parent.as_ref()
    }

    pub fn monomial_valuation(&self, idx: usize) -> &Rat {
        &self.monomial_vals[idx]
    }

    /// Step descriptors from the ground up, as (kind, degree).
    pub fn steps(&self) -> Vec<(StepKind, usize)> {
        let mut out = Vec::new();
        let mut cur = Some(self);
        while let Some(fld) = cur {
            if let Some(step) = &fld.step {
                out.push((step.kind, step.degree));
            }
            cur = fld.parent.as_deref();
        }
        out.reverse();
        out
    }

    /// Extends by an unramified step of the given degree. The defining
    /// polynomial is the lift of the first irreducible of that degree over
    /// the current residue field in the deterministic enumeration.
    pub fn extend_unramified(self: &Rc<Self>, degree: usize) -> Result<Rc<TowerField>> {
        if degree < 2 {
            return Err(Error::BadInput(format!(
                "unramified step must have degree >= 2, got {degree}"
            )));
        }
        let q0 = &self.residue;
        let h = smallest_irreducible(q0, degree)?;
        // Lift the relation x^degree = -(h_0 + ... + h_{degree-1} x^{degree-1}).
        // The negation happens after the digit lift so the step modulus is
        // the canonical integer lift of h itself.
        let rel: Vec<Vec<Scalar>> = h[..degree]
            .iter()
            .map(|c| {
                self.lift_coeffs(c)
                    .into_iter()
                    .map(|s| s.neg())
                    .collect()
            })
            .collect();

        let f_new = self.f * degree;
        let residue = Fq::new(self.p(), f_new)?;
        let eps_root = residue
            .embed_root(q0.modulus())?
            .expect("residue subfield embeds");
        let h_up: Vec<FqElem> = h
            .iter()
            .map(|c| residue.embed(q0, &eps_root, c))
            .collect();
        let mut gen_roots = crate::exactmath::fq::qp_roots(&residue, &h_up)?;
        let rho = gen_roots.drain(..).next().expect("step generator residue");

        let w = self.dim;
        let dim = w * degree;
        let mut monomial_vals = Vec::with_capacity(dim);
        for _ in 0..degree {
            monomial_vals.extend(self.monomial_vals.iter().cloned());
        }
        let mut res_monomials = Vec::with_capacity(f_new);
        let mut rho_pow = residue.one();
        for a in 0..degree {
            for (idx, r) in &self.res_monomials {
                let up = residue.embed(q0, &eps_root, r);
                res_monomials.push((a * w + idx, residue.mul(&up, &rho_pow)));
            }
            rho_pow = residue.mul(&rho_pow, &rho);
        }
        let lift_rows = lift_rows_for(&residue, &res_monomials);

        Ok(Rc::new(TowerField {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            parent: Some(Rc::clone(self)),
            ground: self.ground,
            prec: self.prec,
            step: Some(StepData {
                kind: StepKind::Unramified,
                degree,
                rel,
            }),
            dim,
            e: self.e,
            f: f_new,
            monomial_vals,
            residue,
            res_monomials,
            lift_rows,
            pi_index: self.pi_index,
            inv_pi: OnceCell::new(),
        }))
    }

    /// Extends by the Eisenstein polynomial
    /// `x^d + coeffs[d-1] x^{d-1} + ... + coeffs[0]` with coefficients over
    /// this field. Checks the Eisenstein condition exactly.
    pub fn extend_eisenstein(self: &Rc<Self>, coeffs: &[TowerElem]) -> Result<Rc<TowerField>> {
        let d = coeffs.len();
        if d < 2 {
            return Err(Error::BadInput(format!(
                "Eisenstein step must have degree >= 2, got {d}"
            )));
        }
        let floor_unit = Rat::new(1, self.e);
        for (i, c) in coeffs.iter().enumerate() {
            assert_eq!(c.field_id(), self.id, "coefficient from a different field");
            match c.valuation() {
                VK::Infinite => {
                    if i == 0 {
                        return Err(Error::NotEisenstein(
                            "constant term is zero".to_string(),
                        ));
                    }
                }
                VK::Exact(v) => {
                    if i == 0 && v != floor_unit {
                        return Err(Error::NotEisenstein(format!(
                            "constant term has valuation {v}, expected {floor_unit}"
                        )));
                    }
                    if v < floor_unit {
                        return Err(Error::NotEisenstein(format!(
                            "coefficient {i} has valuation {v} below {floor_unit}"
                        )));
                    }
                }
                VK::AtLeast(b) => {
                    if b < floor_unit {
                        return Err(Error::InsufficientPrecision(format!(
                            "cannot certify Eisenstein condition for coefficient {i}"
                        )));
                    }
                    if i == 0 {
                        return Err(Error::InsufficientPrecision(
                            "constant term valuation not exactly known".to_string(),
                        ));
                    }
                }
            }
        }
        let rel: Vec<Vec<Scalar>> = coeffs.iter().map(|c| c.neg().into_coeffs()).collect();

        let w = self.dim;
        let dim = w * d;
        let e_new = self.e * d as i64;
        let mut monomial_vals = Vec::with_capacity(dim);
        for a in 0..d {
            let shift = Rat::new(a as i64, e_new);
            for v in &self.monomial_vals {
                monomial_vals.push(v + &shift);
            }
        }

        Ok(Rc::new(TowerField {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            parent: Some(Rc::clone(self)),
            ground: self.ground,
            prec: self.prec,
            step: Some(StepData {
                kind: StepKind::Eisenstein,
                degree: d,
                rel,
            }),
            dim,
            e: e_new,
            f: self.f,
            monomial_vals,
            residue: self.residue.clone(),
            res_monomials: self.res_monomials.clone(),
            lift_rows: self.lift_rows.clone(),
            pi_index: Some(w),
            inv_pi: OnceCell::new(),
        }))
    }

    /// Coefficient vector of the lift of a residue element: an exact
    /// element supported on the unramified monomials.
    pub(crate) fn lift_coeffs(&self, x: &FqElem) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.ground); self.dim];
        for (row, (idx, _)) in self.lift_rows.iter().zip(&self.res_monomials) {
            let mut digit: u64 = 0;
            for (a, c) in row.iter().zip(x.coeffs()) {
                digit = (digit + a * c) % self.p();
            }
            out[*idx] = Scalar::from_int(self.ground, digit as i64);
        }
        out
    }
}

/// First monic irreducible of the given degree over `k` in the index
/// enumeration (lower coefficients are base-`order` digits of an ascending
/// counter).
fn smallest_irreducible(k: &Fq, degree: usize) -> Result<Vec<FqElem>> {
    let q = k.order() as u128;
    let total = q
        .checked_pow(degree as u32)
        .ok_or(Error::EnumerationTooLarge {
            size: u128::MAX,
            cap: 100_000_000,
        })?;
    if total > 100_000_000 {
        return Err(Error::EnumerationTooLarge {
            size: total,
            cap: 100_000_000,
        });
    }
    for idx in 0..total {
        let mut poly = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            poly.push(k.element((rest % q) as u64));
            rest /= q;
        }
        poly.push(k.one());
        if qp_is_irreducible(k, &poly)? {
            return Ok(poly);
        }
    }
    unreachable!("irreducible polynomials of every degree exist");
}

/// Rows extracting res_monomial coordinates from canonical coordinates:
/// the inverse of the matrix whose columns are the residues.
fn lift_rows_for(k: &Fq, res_monomials: &[(usize, FqElem)]) -> Vec<Vec<u64>> {
    let n = res_monomials.len();
    debug_assert_eq!(n, k.degree());
    let p = k.p();
    // Augmented [A | I], columns of A are residue coordinate vectors.
    let mut m = vec![vec![0u64; 2 * n]; n];
    for (j, (_, r)) in res_monomials.iter().enumerate() {
        for (i, &c) in r.coeffs().iter().enumerate() {
            m[i][j] = c;
        }
    }
    for i in 0..n {
        m[i][n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col] != 0)
            .expect("residue monomials are independent");
        m.swap(col, pivot);
        let inv = u64_inv_mod(m[col][col], p);
        for x in m[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..2 * n {
                    let sub = factor * m[col][c] % p;
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
    }
    // Solving A lambda = x gives lambda = A^{-1} x; row i of A^{-1} selects
    // the coefficient of res_monomials[i].
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn u64_inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut base = (a % p) as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

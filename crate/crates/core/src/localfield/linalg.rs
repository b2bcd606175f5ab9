//! Linear algebra over scalars and tower elements.
//!
//! The characteristic polynomial uses the Berkowitz algorithm: division
//! free, so exact inputs give exact output. That matters: minimal
//! polynomials of exact generators come out exact, and evaluating them at
//! the generator cancels to a provable zero.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::localfield::elem::{TowerElem, VK};
use crate::localfield::scalar::{Ground, Scalar};
use crate::localfield::tower::TowerField;

/// Characteristic polynomial `det(xI - A)` of a square scalar matrix
/// (rows), returned lowest coefficient first, monic.
pub fn charpoly(g: Ground, a: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = a.len();
    // Highest-first coefficient vector, built by the Berkowitz recursion
    // on principal submatrices from the bottom right up.
    let mut p = vec![Scalar::one(g)];
    for r in (0..n).rev() {
        // Block split at position r: scalar a[r][r], row R = a[r][r+1..],
        // column S = a[r+1..][r], trailing block M = a[r+1..][r+1..].
        let m_size = n - r - 1;
        // Toeplitz column: 1, -a_rr, -R S, -R M S, -R M^2 S, ...
        let mut c = vec![Scalar::one(g), a[r][r].neg()];
        let mut w: Vec<Scalar> = (0..m_size).map(|i| a[r + 1 + i][r].clone()).collect();
        for _ in 0..m_size {
            let mut dot = Scalar::zero(g);
            for (i, wi) in w.iter().enumerate() {
                dot = dot.add(&a[r][r + 1 + i].mul(wi));
            }
            c.push(dot.neg());
            let mut next = vec![Scalar::zero(g); m_size];
            for (row, slot) in next.iter_mut().enumerate() {
                for (col, wc) in w.iter().enumerate() {
                    *slot = slot.add(&a[r + 1 + row][r + 1 + col].mul(wc));
                }
            }
            w = next;
        }
        // p <- conv(c, p) truncated to the new length.
        let new_len = p.len() + 1;
        let mut next = vec![Scalar::zero(g); new_len];
        for (j, slot) in next.iter_mut().enumerate() {
            for (i, ci) in c.iter().enumerate() {
                if i > j {
                    break;
                }
                if let Some(pj) = p.get(j - i) {
                    *slot = slot.add(&ci.mul(pj));
                }
            }
        }
        p = next;
    }
    p.reverse();
    p
}

/// Determinant via the constant term of the characteristic polynomial.
pub fn det(g: Ground, a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    if n == 0 {
        return Scalar::one(g);
    }
    let p = charpoly(g, a);
    let c0 = p[0].clone();
    if n % 2 == 1 {
        c0.neg()
    } else {
        c0
    }
}

/// Solves the (possibly overdetermined) system with the given columns for
/// `rhs` over tower elements. `Ok(None)` means provably inconsistent;
/// uncertain pivots or residuals raise precision errors only when they
/// block the decision.
pub fn solve_columns(
    field: &Rc<TowerField>,
    cols: &[Vec<TowerElem>],
    rhs: &[TowerElem],
) -> Result<Option<Vec<TowerElem>>> {
    let rows = rhs.len();
    let k = cols.len();
    let mut m: Vec<Vec<TowerElem>> = (0..rows)
        .map(|r| {
            let mut row: Vec<TowerElem> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut used = vec![false; rows];
    let mut pivot_row_of = vec![usize::MAX; k];
    for col in 0..k {
        let mut best: Option<(usize, crate::exactmath::rat::Rat)> = None;
        let mut saw_uncertain = false;
        for (r, row) in m.iter().enumerate() {
            if used[r] {
                continue;
            }
            match row[col].valuation() {
                VK::Exact(v) => {
                    if best.as_ref().map_or(true, |(_, bv)| v < *bv) {
                        best = Some((r, v));
                    }
                }
                VK::AtLeast(_) => saw_uncertain = true,
                VK::Infinite => {}
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
                return Err(Error::BadInput(
                    "dependent columns in linear solve".to_string(),
                ));
            }
        };
        used[pr] = true;
        pivot_row_of[col] = pr;
        let inv = m[pr][col].inv()?;
        let prow: Vec<TowerElem> = m[pr].iter().map(|x| x.mul(&inv)).collect();
        m[pr] = prow;
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = m[r][col].clone();
            if factor.is_exact_zero() {
                continue;
            }
            for c in 0..=k {
                let t = factor.mul(&m[pr][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    // Residual rows: any provably nonzero entry means no solution.
    for (r, row) in m.iter().enumerate() {
        if used[r] {
            continue;
        }
        if let VK::Exact(_) = row[k].valuation() {
            return Ok(None);
        }
    }
    let _ = field;
    Ok(Some(
        (0..k).map(|c| m[pivot_row_of[c]][k].clone()).collect(),
    ))
}

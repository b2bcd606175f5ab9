//! Newton polygons with exact rational slopes.
//!
//! The polygon of a polynomial is the lower convex hull of the points
//! `(i, v(a_i))`. Each hull segment from `(i, v)` to `(j, v')` with `j > i`
//! accounts for `j - i` roots of valuation `(v - v') / (j - i)`. Segments
//! are reported sorted by increasing root valuation.
//!
//! Coefficients whose valuation is only bounded below are tolerated as
//! long as the bound keeps them strictly above the hull determined by the
//! exactly-known points; otherwise the polygon is not certified and a
//! precision error is raised. Provably-zero coefficients never lie on the
//! hull. The constant term must be exactly known and nonzero (callers
//! split off zero roots first) and so must the leading term.

use crate::error::{Error, Result};
use crate::exactmath::rat::Rat;
use crate::localfield::elem::VK;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    /// Common valuation of the roots attached to this segment.
    pub slope: Rat,
    /// Number of such roots.
    pub length: usize,
}

/// Computes the polygon from `(index, valuation)` data for coefficients
/// `a_0 ... a_n` (the full list, index position meaningful).
pub fn polygon(points: &[(usize, VK)]) -> Result<Vec<Segment>> {
    let n = match points.len() {
        0 | 1 => return Err(Error::BadInput("polynomial has no roots".to_string())),
        l => l - 1,
    };
    match &points[0].1 {
        VK::Exact(_) => {}
        VK::Infinite => {
            return Err(Error::BadInput(
                "constant term is zero; split off zero roots first".to_string(),
            ))
        }
        VK::AtLeast(_) => {
            return Err(Error::InsufficientPrecision(
                "constant term valuation unknown".to_string(),
            ))
        }
    }
    match &points[n].1 {
        VK::Exact(_) => {}
        _ => {
            return Err(Error::InsufficientPrecision(
                "leading coefficient valuation unknown".to_string(),
            ))
        }
    }

    let exact: Vec<(usize, Rat)> = points
        .iter()
        .filter_map(|(i, v)| v.exact().map(|r| (*i, r.clone())))
        .collect();

    // Monotone-chain lower hull over the exact points.
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for (i, v) in &exact {
        while hull.len() >= 2 {
            let (i1, v1) = &hull[hull.len() - 2];
            let (i2, v2) = &hull[hull.len() - 1];
            // Drop the middle point unless it turns strictly left
            // (cross product of (p2-p1) x (p3-p1) > 0).
            let cross = (Rat::from_int((i2 - i1) as i64)) * (v.clone() - v1.clone())
                - (Rat::from_int((i - i1) as i64)) * (v2.clone() - v1.clone());
            if cross > Rat::zero() {
                break;
            }
            hull.pop();
        }
        hull.push((*i, v.clone()));
    }

    // Uncertain points must certifiably lie on or above the hull.
    for (i, v) in points {
        if let VK::AtLeast(b) = v {
            let h = hull_height(&hull, *i);
            if *b < h {
                return Err(Error::InsufficientPrecision(format!(
                    "coefficient {i} only known to valuation {b}, hull needs >= {h}"
                )));
            }
        }
    }

    let mut segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| {
            let (i1, v1) = &w[0];
            let (i2, v2) = &w[1];
            Segment {
                slope: (v1.clone() - v2.clone()) / Rat::from_int((i2 - i1) as i64),
                length: i2 - i1,
            }
        })
        .collect();
    segments.sort_by(|a, b| a.slope.cmp(&b.slope));
    Ok(segments)
}

fn hull_height(hull: &[(usize, Rat)], i: usize) -> Rat {
    for w in hull.windows(2) {
        let (i1, v1) = &w[0];
        let (i2, v2) = &w[1];
        if i >= *i1 && i <= *i2 {
            let t = Rat::from_int((i - i1) as i64) / Rat::from_int((i2 - i1) as i64);
            return v1.clone() + t * (v2.clone() - v1.clone());
        }
    }
    // Outside the hull's index range (can happen when the extreme
    // coefficients are the only exact ones); anything is fine there.
    Rat::from_int(i64::MIN / 2)
}

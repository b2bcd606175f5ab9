//! Piecewise linear functions on `[0, +inf)` with rational knots.
//!
//! These model transition functions of ramification filtrations: strictly
//! increasing, starting at the origin, with finitely many slope changes and
//! a constant slope beyond the last knot. Strict monotonicity makes every
//! such function invertible within the same class.

use serde::{Deserialize, Serialize};

use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlFunction {
    /// Slope-change points `(x, y)`, strictly increasing in both
    /// coordinates; the first knot is always `(0, 0)`.
    knots: Vec<(Rat, Rat)>,
    /// Slope to the right of the last knot.
    final_slope: Rat,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("knot list must start at (0, 0)")]
    MissingOrigin,
    #[error("knots must be strictly increasing in both coordinates")]
    NotIncreasing,
    #[error("slopes must be positive")]
    BadSlope,
    #[error("evaluation point {0} is negative")]
    NegativeArgument(Rat),
}

impl PlFunction {
    pub fn identity() -> Self {
        PlFunction {
            knots: vec![(Rat::zero(), Rat::zero())],
            final_slope: Rat::one(),
        }
    }

    pub fn from_knots(knots: Vec<(Rat, Rat)>, final_slope: Rat) -> Result<Self, PlError> {
        match knots.first() {
            Some((x, y)) if x.is_zero() && y.is_zero() => {}
            _ => return Err(PlError::MissingOrigin),
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(PlError::NotIncreasing);
            }
        }
        if final_slope <= Rat::zero() {
            return Err(PlError::BadSlope);
        }
        Ok(PlFunction { knots, final_slope })
    }

    /// The transition function determined by a multiset of jump heights: on
    /// `(0, t]` below the largest height the slope is `1 + #{heights >= t}`,
    /// dropping to 1 beyond the largest height. An empty multiset gives the
    /// identity.
    pub fn from_profile(profile: &[Rat]) -> Self {
        let mut distinct: Vec<Rat> = profile
            .iter()
            .filter(|t| **t > Rat::zero())
            .cloned()
            .collect();
        distinct.sort();
        distinct.dedup();
        let mut knots = vec![(Rat::zero(), Rat::zero())];
        for t in &distinct {
            let slope = Rat::from_int(1 + profile.iter().filter(|h| *h >= t).count() as i64);
            let (px, py) = knots.last().unwrap().clone();
            let y = py + slope * (t.clone() - px);
            knots.push((t.clone(), y));
        }
        PlFunction {
            knots,
            final_slope: Rat::one(),
        }
    }

    pub fn knots(&self) -> &[(Rat, Rat)] {
        &self.knots
    }

    pub fn final_slope(&self) -> &Rat {
        &self.final_slope
    }

    /// Slope on the segment immediately left of each knot after the first,
    /// then the final slope.
    pub fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for w in self.knots.windows(2) {
            let dx = w[1].0.clone() - w[0].0.clone();
            let dy = w[1].1.clone() - w[0].1.clone();
            out.push(dy / dx);
        }
        out.push(self.final_slope.clone());
        out
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat, PlError> {
        if t.is_negative() {
            return Err(PlError::NegativeArgument(t.clone()));
        }
        for w in self.knots.windows(2) {
            if *t <= w[1].0 {
                let dx = w[1].0.clone() - w[0].0.clone();
                let dy = w[1].1.clone() - w[0].1.clone();
                return Ok(w[0].1.clone() + dy / dx * (t.clone() - w[0].0.clone()));
            }
        }
        let (lx, ly) = self.knots.last().unwrap();
        Ok(ly.clone() + self.final_slope.clone() * (t.clone() - lx.clone()))
    }

    /// The inverse function (total because slopes are positive).
    pub fn inverse(&self) -> PlFunction {
        PlFunction {
            knots: self.knots.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            final_slope: self.final_slope.recip(),
        }
    }

    /// `self` after `inner`: returns the function `t -> self(inner(t))`.
    pub fn compose(&self, inner: &PlFunction) -> PlFunction {
        // Knot x-positions of the composite: knots of the inner function
        // together with inner preimages of the outer knots.
        let inv = inner.inverse();
        let mut xs: Vec<Rat> = inner.knots.iter().map(|(x, _)| x.clone()).collect();
        for (ox, _) in &self.knots {
            xs.push(inv.eval(ox).expect("outer knots are nonnegative"));
        }
        xs.sort();
        xs.dedup();
        let knots: Vec<(Rat, Rat)> = xs
            .into_iter()
            .map(|x| {
                let y = self
                    .eval(&inner.eval(&x).expect("nonnegative"))
                    .expect("nonnegative");
                (x, y)
            })
            .collect();
        let final_slope = self.final_slope.clone() * inner.final_slope.clone();
        // Drop interior knots where the slope does not actually change.
        let mut cleaned: Vec<(Rat, Rat)> = Vec::with_capacity(knots.len());
        for k in knots {
            while cleaned.len() >= 2 {
                let a = &cleaned[cleaned.len() - 2];
                let b = &cleaned[cleaned.len() - 1];
                let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
                let s2 = (&k.1 - &b.1) / (&k.0 - &b.0);
                if s1 == s2 {
                    cleaned.pop();
                } else {
                    break;
                }
            }
            cleaned.push(k);
        }
        // The last interior knot may also be redundant against the tail.
        while cleaned.len() >= 2 {
            let a = &cleaned[cleaned.len() - 2];
            let b = &cleaned[cleaned.len() - 1];
            let s = (&b.1 - &a.1) / (&b.0 - &a.0);
            if s == final_slope {
                cleaned.pop();
            } else {
                break;
            }
        }
        PlFunction {
            knots: cleaned,
            final_slope,
        }
    }

    /// Largest x-coordinate where the slope changes; `None` for the
    /// identity-like case of a single knot.
    pub fn last_knot_x(&self) -> Option<&Rat> {
        if self.knots.len() > 1 {
            self.knots.last().map(|(x, _)| x)
        } else {
            None
        }
    }

    /// Largest y-coordinate where the slope changes.
    pub fn last_knot_y(&self) -> Option<&Rat> {
        if self.knots.len() > 1 {
            self.knots.last().map(|(_, y)| y)
        } else {
            None
        }
    }
}

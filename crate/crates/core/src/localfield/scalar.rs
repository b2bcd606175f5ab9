//! Ground-field scalars: elements of `Q_p` or `F_p((t))` with explicit
//! precision tracking.
//!
//! A scalar is `uniformizer^val * mantissa` with the mantissa a unit, or
//! one of two zero forms: `ExactZero` (provably zero) and `ApproxZero`
//! (all digits below a known bound vanish, higher ones unknown). Ring
//! operations on exact mantissas stay exact, so values assembled from
//! integer and polynomial literals by ring operations have decidable
//! valuations. Division is the only operation that truncates; it takes an
//! explicit precision budget, and inverting a value that is not provably
//! nonzero reports `InsufficientPrecision` so callers can retry at a
//! higher budget (or `DivisionByZero` when the value is exactly zero).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// The two supported ground fields, identified by residue characteristic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ground {
    /// `Q_p`, uniformizer `p`.
    Padic { p: u64 },
    /// `F_p((t))`, uniformizer `t`.
    Laurent { p: u64 },
}

impl Ground {
    pub fn p(&self) -> u64 {
        match *self {
            Ground::Padic { p } | Ground::Laurent { p } => p,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, Ground::Laurent { .. })
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("value is zero to working precision (valuation >= {min_val}); cannot invert")]
    InsufficientPrecision { min_val: i64 },
}

/// Outcome of a valuation query, in integer uniformizer units of the field
/// the query was made in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Val {
    Exact(i64),
    AtLeast(i64),
    /// Provably zero.
    Infinite,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Mantissa {
    /// Full integer mantissa, not divisible by `p`; may be negative.
    ExactInt(BigInt),
    /// Known modulo `p^rel`, reduced into `[1, p^rel)`, unit mod `p`.
    ModInt { digits: BigUint, rel: i64 },
    /// Polynomial in `t` over `F_p`, nonzero constant term, exact.
    ExactPoly(Vec<u64>),
    /// Known modulo `t^rel`; coefficients trimmed, constant term nonzero.
    ModPoly { digits: Vec<u64>, rel: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Form {
    ExactZero,
    /// Not provably zero: valuation at least `min_val`.
    ApproxZero { min_val: i64 },
    Unit { val: i64, mant: Mantissa },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    ground: Ground,
    form: Form,
}

fn pow_big(p: u64, e: i64) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

impl Scalar {
    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn zero(g: Ground) -> Scalar {
        Scalar {
            ground: g,
            form: Form::ExactZero,
        }
    }

    pub fn one(g: Ground) -> Scalar {
        Scalar::from_bigint(g, BigInt::one())
    }

    /// An integer literal. In the Laurent field the integer is reduced
    /// modulo `p` (so multiples of `p` become exact zero).
    pub fn from_bigint(g: Ground, n: BigInt) -> Scalar {
        if n.is_zero() {
            return Scalar::zero(g);
        }
        let p = g.p();
        match g {
            Ground::Padic { .. } => {
                let big_p = BigInt::from(p);
                let mut val = 0i64;
                let mut m = n;
                loop {
                    let (q, r) = m.div_rem(&big_p);
                    if r.is_zero() {
                        val += 1;
                        m = q;
                    } else {
                        break;
                    }
                }
                Scalar {
                    ground: g,
                    form: Form::Unit {
                        val,
                        mant: Mantissa::ExactInt(m),
                    },
                }
            }
            Ground::Laurent { .. } => {
                let r = n.mod_floor(&BigInt::from(p));
                let digit = r.to_u64().unwrap();
                if digit == 0 {
                    Scalar::zero(g)
                } else {
                    Scalar {
                        ground: g,
                        form: Form::Unit {
                            val: 0,
                            mant: Mantissa::ExactPoly(vec![digit]),
                        },
                    }
                }
            }
        }
    }

    pub fn from_int(g: Ground, n: i64) -> Scalar {
        Scalar::from_bigint(g, BigInt::from(n))
    }

    /// A polynomial in `t` with integer coefficients, lowest first
    /// (Laurent ground only).
    pub fn from_tpoly(g: Ground, coeffs: &[i64]) -> Scalar {
        assert!(g.is_laurent(), "t-polynomial literal over a p-adic ground");
        let p = g.p() as i64;
        let mut digits: Vec<u64> = coeffs
            .iter()
            .map(|&c| (((c % p) + p) % p) as u64)
            .collect();
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let val = match digits.iter().position(|&c| c != 0) {
            None => return Scalar::zero(g),
            Some(k) => k,
        };
        digits.drain(..val);
        Scalar {
            ground: g,
            form: Form::Unit {
                val: val as i64,
                mant: Mantissa::ExactPoly(digits),
            },
        }
    }

    /// The exact integer value, when there is one: `p^val * mant` with a
    /// nonnegative valuation and exact mantissa. Laurent scalars qualify
    /// only when constant.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.form {
            Form::ExactZero => Some(BigInt::zero()),
            Form::ApproxZero { .. } => None,
            Form::Unit { val, mant } => {
                if *val < 0 {
                    return None;
                }
                match mant {
                    Mantissa::ExactInt(m) => {
                        Some(m * BigInt::from(pow_big(self.ground.p(), *val)))
                    }
                    Mantissa::ExactPoly(c) if *val == 0 && c.len() == 1 => {
                        Some(BigInt::from(c[0]))
                    }
                    _ => None,
                }
            }
        }
    }

    /// A literal string that parses back to this scalar, when the value is
    /// exact and integral: a decimal integer over `Q_p`, a `t`-polynomial
    /// over `F_p((t))`.
    pub fn to_literal(&self) -> Option<String> {
        if let Some(n) = self.to_bigint() {
            return Some(n.to_string());
        }
        match &self.form {
            Form::Unit { val, mant } if *val >= 0 => match mant {
                Mantissa::ExactPoly(c) => {
                    let terms: Vec<String> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, &d)| d != 0)
                        .map(|(i, &d)| {
                            let k = *val + i as i64;
                            match (d, k) {
                                (d, 0) => format!("{d}"),
                                (1, 1) => "t".to_string(),
                                (1, k) => format!("t^{k}"),
                                (d, 1) => format!("{d}*t"),
                                (d, k) => format!("{d}*t^{k}"),
                            }
                        })
                        .collect();
                    Some(terms.join("+"))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// The uniformizer raised to an integer power.
    pub fn uniformizer_pow(g: Ground, e: i64) -> Scalar {
        let mant = match g {
            Ground::Padic { .. } => Mantissa::ExactInt(BigInt::one()),
            Ground::Laurent { .. } => Mantissa::ExactPoly(vec![1]),
        };
        Scalar {
            ground: g,
            form: Form::Unit { val: e, mant },
        }
    }

    /// An unknown-tail zero: valuation at least `min_val`. Test helper and
    /// the natural output of cancellations.
    pub fn approx_zero(g: Ground, min_val: i64) -> Scalar {
        Scalar {
            ground: g,
            form: Form::ApproxZero { min_val },
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.form, Form::ExactZero)
    }

    /// Whether every digit we know about vanishes (both zero forms).
    pub fn is_zeroish(&self) -> bool {
        !matches!(self.form, Form::Unit { .. })
    }

    /// Whether no information was lost to truncation.
    pub fn is_exact(&self) -> bool {
        matches!(
            self.form,
            Form::ExactZero
                | Form::Unit {
                    mant: Mantissa::ExactInt(_) | Mantissa::ExactPoly(_),
                    ..
                }
        )
    }

    pub fn valuation(&self) -> Val {
        match &self.form {
            Form::ExactZero => Val::Infinite,
            Form::ApproxZero { min_val } => Val::AtLeast(*min_val),
            Form::Unit { val, .. } => Val::Exact(*val),
        }
    }

    /// Absolute precision: digits at this valuation and above are unknown.
    /// `None` means exact (all digits known).
    pub fn abs_prec(&self) -> Option<i64> {
        match &self.form {
            Form::ExactZero => None,
            Form::ApproxZero { min_val } => Some(*min_val),
            Form::Unit { val, mant } => match mant {
                Mantissa::ExactInt(_) | Mantissa::ExactPoly(_) => None,
                Mantissa::ModInt { rel, .. } | Mantissa::ModPoly { rel, .. } => Some(val + rel),
            },
        }
    }

    /// Digits of the mantissa as a `BigUint` reduced mod `p^cap` (p-adic).
    fn int_digits(&self, cap: i64) -> BigUint {
        let p = self.ground.p();
        match &self.form {
            Form::Unit {
                mant: Mantissa::ExactInt(m),
                ..
            } => m.mod_floor(&BigInt::from(pow_big(p, cap))).to_biguint().unwrap(),
            Form::Unit {
                mant: Mantissa::ModInt { digits, .. },
                ..
            } => digits.mod_floor(&pow_big(p, cap)),
            _ => unreachable!(),
        }
    }

    fn poly_digits(&self, cap: i64) -> Vec<u64> {
        match &self.form {
            Form::Unit {
                mant: Mantissa::ExactPoly(c),
                ..
            }
            | Form::Unit {
                mant: Mantissa::ModPoly { digits: c, .. },
                ..
            } => {
                let mut d: Vec<u64> = c.iter().take(cap.max(0) as usize).cloned().collect();
                while d.last() == Some(&0) {
                    d.pop();
                }
                d
            }
            _ => unreachable!(),
        }
    }

    /// Builds a normalized scalar from digits known in the window
    /// `[val, val + len)`; `abs` is the absolute precision (`None` exact).
    fn from_int_window(g: Ground, val: i64, digits: BigInt, abs: Option<i64>) -> Scalar {
        let p = g.p();
        if digits.is_zero() {
            return match abs {
                None => Scalar::zero(g),
                Some(a) => Scalar::approx_zero(g, a),
            };
        }
        let big_p = BigInt::from(p);
        let mut val = val;
        let mut m = digits;
        loop {
            let (q, r) = m.div_rem(&big_p);
            if r.is_zero() {
                val += 1;
                m = q;
            } else {
                break;
            }
        }
        match abs {
            None => Scalar {
                ground: g,
                form: Form::Unit {
                    val,
                    mant: Mantissa::ExactInt(m),
                },
            },
            Some(a) => {
                let rel = a - val;
                if rel <= 0 {
                    return Scalar::approx_zero(g, a);
                }
                let digits = m.mod_floor(&BigInt::from(pow_big(p, rel))).to_biguint().unwrap();
                if digits.is_zero() {
                    Scalar::approx_zero(g, a)
                } else {
                    Scalar {
                        ground: g,
                        form: Form::Unit {
                            val,
                            mant: Mantissa::ModInt { digits, rel },
                        },
                    }
                }
            }
        }
    }

    fn from_poly_window(g: Ground, val: i64, mut digits: Vec<u64>, abs: Option<i64>) -> Scalar {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let lead = digits.iter().position(|&c| c != 0);
        match lead {
            None => match abs {
                None => Scalar::zero(g),
                Some(a) => Scalar::approx_zero(g, a),
            },
            Some(k) => {
                let val = val + k as i64;
                digits.drain(..k);
                match abs {
                    None => Scalar {
                        ground: g,
                        form: Form::Unit {
                            val,
                            mant: Mantissa::ExactPoly(digits),
                        },
                    },
                    Some(a) => {
                        let rel = a - val;
                        if rel <= 0 {
                            return Scalar::approx_zero(g, a);
                        }
                        digits.truncate(rel as usize);
                        while digits.last() == Some(&0) {
                            digits.pop();
                        }
                        if digits.is_empty() {
                            Scalar::approx_zero(g, a)
                        } else {
                            Scalar {
                                ground: g,
                                form: Form::Unit {
                                    val,
                                    mant: Mantissa::ModPoly { digits, rel },
                                },
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.ground, other.ground, "mixed ground fields");
        let g = self.ground;
        match (&self.form, &other.form) {
            (Form::ExactZero, _) => other.clone(),
            (_, Form::ExactZero) => self.clone(),
            (Form::ApproxZero { min_val: m1 }, Form::ApproxZero { min_val: m2 }) => {
                Scalar::approx_zero(g, (*m1).min(*m2))
            }
            (Form::ApproxZero { min_val }, Form::Unit { .. }) => {
                other.truncate_abs(*min_val)
            }
            (Form::Unit { .. }, Form::ApproxZero { min_val }) => {
                self.truncate_abs(*min_val)
            }
            (Form::Unit { val: v1, .. }, Form::Unit { val: v2, .. }) => {
                let base = (*v1).min(*v2);
                let abs = match (self.abs_prec(), other.abs_prec()) {
                    (None, None) => None,
                    (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
                };
                if g.is_laurent() {
                    let width = match abs {
                        None => {
                            let l1 = v1 + self.poly_digits(i64::MAX).len() as i64;
                            let l2 = v2 + other.poly_digits(i64::MAX).len() as i64;
                            l1.max(l2) - base
                        }
                        Some(a) => a - base,
                    };
                    let p = g.p();
                    let mut digits = vec![0u64; width.max(0) as usize];
                    for (s, v) in [(self, *v1), (other, *v2)] {
                        let off = (v - base) as usize;
                        for (i, &c) in s.poly_digits(width - (v - base)).iter().enumerate() {
                            let j = off + i;
                            if j < digits.len() {
                                digits[j] = (digits[j] + c) % p;
                            }
                        }
                    }
                    Scalar::from_poly_window(g, base, digits, abs)
                } else {
                    let shift1 = pow_big(g.p(), v1 - base);
                    let shift2 = pow_big(g.p(), v2 - base);
                    let (d1, d2) = match abs {
                        None => match (&self.form, &other.form) {
                            (
                                Form::Unit {
                                    mant: Mantissa::ExactInt(a),
                                    ..
                                },
                                Form::Unit {
                                    mant: Mantissa::ExactInt(b),
                                    ..
                                },
                            ) => (a.clone(), b.clone()),
                            _ => unreachable!(),
                        },
                        Some(a) => {
                            let take = |s: &Scalar, v: i64| {
                                if a > v {
                                    BigInt::from(s.int_digits(a - v))
                                } else {
                                    BigInt::zero()
                                }
                            };
                            (take(self, *v1), take(other, *v2))
                        }
                    };
                    let sum = d1 * BigInt::from(shift1) + d2 * BigInt::from(shift2);
                    Scalar::from_int_window(g, base, sum, abs)
                }
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        let g = self.ground;
        match &self.form {
            Form::ExactZero | Form::ApproxZero { .. } => self.clone(),
            Form::Unit { val, mant } => {
                let p = g.p();
                let mant = match mant {
                    Mantissa::ExactInt(m) => Mantissa::ExactInt(-m),
                    Mantissa::ModInt { digits, rel } => Mantissa::ModInt {
                        digits: pow_big(p, *rel) - digits,
                        rel: *rel,
                    },
                    Mantissa::ExactPoly(c) => {
                        Mantissa::ExactPoly(c.iter().map(|&x| (p - x) % p).collect())
                    }
                    Mantissa::ModPoly { digits, rel } => Mantissa::ModPoly {
                        digits: digits.iter().map(|&x| (p - x) % p).collect(),
                        rel: *rel,
                    },
                };
                Scalar {
                    ground: g,
                    form: Form::Unit { val: *val, mant },
                }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        assert_eq!(self.ground, other.ground, "mixed ground fields");
        let g = self.ground;
        match (&self.form, &other.form) {
            (Form::ExactZero, _) | (_, Form::ExactZero) => Scalar::zero(g),
            (Form::ApproxZero { min_val: m1 }, Form::ApproxZero { min_val: m2 }) => {
                Scalar::approx_zero(g, m1 + m2)
            }
            (Form::ApproxZero { min_val }, Form::Unit { val, .. })
            | (Form::Unit { val, .. }, Form::ApproxZero { min_val }) => {
                Scalar::approx_zero(g, min_val + val)
            }
            (
                Form::Unit {
                    val: v1,
                    mant: mant1,
                },
                Form::Unit {
                    val: v2,
                    mant: mant2,
                },
            ) => {
                let val = v1 + v2;
                let rel = match (self.rel_prec(), other.rel_prec()) {
                    (None, None) => None,
                    (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
                };
                if g.is_laurent() {
                    let p = g.p();
                    let (a, b) = (poly_of(mant1), poly_of(mant2));
                    let mut prod = vec![0u64; a.len() + b.len() - 1];
                    for (i, &x) in a.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (j, &y) in b.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    Scalar::from_poly_window(g, val, prod, rel.map(|r| val + r))
                } else {
                    let prod = int_of(mant1) * int_of(mant2);
                    Scalar::from_int_window(g, val, prod, rel.map(|r| val + r))
                }
            }
        }
    }

    /// Relative precision of the mantissa (`None` = exact).
    fn rel_prec(&self) -> Option<i64> {
        match &self.form {
            Form::Unit {
                mant: Mantissa::ModInt { rel, .. } | Mantissa::ModPoly { rel, .. },
                ..
            } => Some(*rel),
            _ => None,
        }
    }

    /// Forgets digits at and above absolute precision `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Scalar {
        let g = self.ground;
        match &self.form {
            Form::ExactZero => Scalar::approx_zero(g, abs),
            Form::ApproxZero { min_val } => Scalar::approx_zero(g, (*min_val).min(abs)),
            Form::Unit { val, .. } => {
                if self.abs_prec().map_or(false, |a| a <= abs) {
                    return self.clone();
                }
                if g.is_laurent() {
                    let digits = self.poly_digits((abs - val).max(0));
                    Scalar::from_poly_window(g, *val, digits, Some(abs))
                } else {
                    if abs <= *val {
                        return Scalar::approx_zero(g, abs);
                    }
                    let digits = BigInt::from(self.int_digits(abs - val));
                    Scalar::from_int_window(g, *val, digits, Some(abs))
                }
            }
        }
    }

    /// Inverse with `prec` digits of relative precision.
    pub fn inv(&self, prec: i64) -> Result<Scalar, ScalarError> {
        let g = self.ground;
        match &self.form {
            Form::ExactZero => Err(ScalarError::DivisionByZero),
            Form::ApproxZero { min_val } => {
                Err(ScalarError::InsufficientPrecision { min_val: *min_val })
            }
            Form::Unit { val, mant } => {
                let rel = self.rel_prec().unwrap_or(i64::MAX).min(prec);
                assert!(rel >= 1, "inverse with nonpositive precision");
                let mant = match mant {
                    Mantissa::ExactInt(_) | Mantissa::ModInt { .. } => {
                        let p = g.p();
                        let modulus = pow_big(p, rel);
                        let digits = self.int_digits(rel);
                        let inv = mod_inverse(&digits, &modulus)
                            .expect("mantissa is a unit");
                        Mantissa::ModInt { digits: inv, rel }
                    }
                    Mantissa::ExactPoly(_) | Mantissa::ModPoly { .. } => {
                        let p = g.p();
                        let a = self.poly_digits(rel);
                        // Power series inversion: b_0 = a_0^-1,
                        // b_n = -a_0^-1 * sum_{i=1..n} a_i b_{n-i}.
                        let a0_inv = u64_mod_inverse(a[0], p);
                        let mut b = vec![0u64; rel as usize];
                        b[0] = a0_inv;
                        for n in 1..rel as usize {
                            let mut acc: u128 = 0;
                            for i in 1..=n {
                                let ai = *a.get(i).unwrap_or(&0);
                                acc += ai as u128 * b[n - i] as u128;
                            }
                            let s = (acc % p as u128) as u64;
                            b[n] = (p - s) % p * a0_inv % p;
                        }
                        while b.last() == Some(&0) {
                            b.pop();
                        }
                        Mantissa::ModPoly { digits: b, rel }
                    }
                };
                Ok(Scalar {
                    ground: g,
                    form: Form::Unit { val: -val, mant },
                })
            }
        }
    }

    /// The residue of an integral scalar in `F_p`; `None` when the scalar
    /// might not be integral or its residue is unknown.
    pub fn residue_digit(&self) -> Option<u64> {
        match &self.form {
            Form::ExactZero => Some(0),
            Form::ApproxZero { min_val } => {
                if *min_val >= 1 {
                    Some(0)
                } else {
                    None
                }
            }
            Form::Unit { val, .. } => {
                if *val > 0 {
                    Some(0)
                } else if *val < 0 {
                    None
                } else if self.ground.is_laurent() {
                    Some(self.poly_digits(1)[0])
                } else {
                    self.int_digits(1).to_u64()
                }
            }
        }
    }

    /// Multiplies by an integer power of the uniformizer.
    pub fn shift(&self, k: i64) -> Scalar {
        let g = self.ground;
        match &self.form {
            Form::ExactZero => self.clone(),
            Form::ApproxZero { min_val } => Scalar::approx_zero(g, min_val + k),
            Form::Unit { val, mant } => Scalar {
                ground: g,
                form: Form::Unit {
                    val: val + k,
                    mant: mant.clone(),
                },
            },
        }
    }
}

fn poly_of(m: &Mantissa) -> &[u64] {
    match m {
        Mantissa::ExactPoly(c) => c,
        Mantissa::ModPoly { digits, .. } => digits,
        _ => unreachable!("p-adic mantissa in Laurent arithmetic"),
    }
}

fn int_of(m: &Mantissa) -> BigInt {
    match m {
        Mantissa::ExactInt(n) => n.clone(),
        Mantissa::ModInt { digits, .. } => BigInt::from(digits.clone()),
        _ => unreachable!("Laurent mantissa in p-adic arithmetic"),
    }
}

fn u64_mod_inverse(a: u64, p: u64) -> u64 {
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

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let e = a.extended_gcd(&m_int);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(&m_int).to_biguint().unwrap())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = if self.ground.is_laurent() { "t" } else { "p" };
        match &self.form {
            Form::ExactZero => write!(f, "0"),
            Form::ApproxZero { min_val } => write!(f, "O({u}^{min_val})"),
            Form::Unit { val, mant } => {
                let m = match mant {
                    Mantissa::ExactInt(n) => format!("{n}"),
                    Mantissa::ModInt { digits, rel } => format!("{digits} + O({u}^{rel})"),
                    Mantissa::ExactPoly(c) => format!("{c:?}"),
                    Mantissa::ModPoly { digits, rel } => format!("{digits:?} + O({u}^{rel})"),
                };
                write!(f, "{u}^{val}*({m})")
            }
        }
    }
}

impl Val {
    pub fn exact(&self) -> Option<i64> {
        match self {
            Val::Exact(v) => Some(*v),
            _ => None,
        }
    }
}

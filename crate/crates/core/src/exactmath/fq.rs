//! Small finite fields `F_{p^f}`.
//!
//! Elements are polynomials in a fixed generator modulo a monic irreducible
//! over `F_p`. The modulus is chosen deterministically: candidates of degree
//! `f` are enumerated by encoding the lower coefficients as base-`p` digits
//! of an index and the first irreducible wins. Everything downstream
//! (element enumeration order, root ordering, residue factorizations) is
//! therefore reproducible run to run.
//!
//! The module also provides polynomial arithmetic over such a field: roots
//! by exhaustive search, irreducibility via the Frobenius criterion and a
//! deterministic factorization used for residue computations. Fields here
//! are always tiny (residue fields of explicitly given local fields), so
//! brute force with an explicit enumeration cap is the right tool.

use serde::{Deserialize, Serialize};

/// Largest field order for which exhaustive element enumeration is allowed.
pub const ENUM_CAP: u64 = 1_000_000;

/// Candidate cap for deterministic factor search of residue polynomials.
const FACTOR_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FqError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported extension degree {0}")]
    BadDegree(usize),
    #[error("field order {0}^{1} is too large")]
    OrderTooLarge(u64, usize),
    #[error("exhaustive search over {0} candidates exceeds the enumeration cap")]
    EnumerationTooLarge(u64),
    #[error("modulus is not irreducible")]
    ReducibleModulus,
}

/// An element of `F_{p^f}`, stored as `f` base-`p` digits, lowest power of
/// the field generator first. Elements do not know their field; all
/// arithmetic goes through [`Fq`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `F_{p^f}` with a fixed monic irreducible modulus over `F_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fq {
    p: u64,
    f: usize,
    /// Monic, length `f + 1`, coefficients in `[0, p)`, lowest first.
    modulus: Vec<u64>,
}

impl Fq {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Fq, FqError> {
        Fq::new(p, 1)
    }

    /// `F_{p^f}` with the deterministically chosen modulus.
    pub fn new(p: u64, f: usize) -> Result<Fq, FqError> {
        if !is_prime(p) {
            return Err(FqError::NotPrime(p));
        }
        if f == 0 || f > 16 {
            return Err(FqError::BadDegree(f));
        }
        let mut order: u64 = 1;
        for _ in 0..f {
            order = order
                .checked_mul(p)
                .filter(|&o| o <= ENUM_CAP)
                .ok_or(FqError::OrderTooLarge(p, f))?;
        }
        if f == 1 {
            return Ok(Fq {
                p,
                f,
                modulus: vec![0, 1],
            });
        }
        let base = Fq::prime(p)?;
        for idx in 0..order {
            let mut modulus = Vec::with_capacity(f + 1);
            let mut rest = idx;
            for _ in 0..f {
                modulus.push(rest % p);
                rest /= p;
            }
            modulus.push(1);
            let as_qpoly: Vec<FqElem> = modulus
                .iter()
                .map(|&c| FqElem { coeffs: vec![c] })
                .collect();
            if qp_is_irreducible(&base, &as_qpoly)? {
                return Ok(Fq { p, f, modulus });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists");
    }

    /// Builds the field from an explicit modulus, verifying irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Fq, FqError> {
        if !is_prime(p) {
            return Err(FqError::NotPrime(p));
        }
        let f = modulus.len().saturating_sub(1);
        if f == 0 || f > 16 {
            return Err(FqError::BadDegree(f));
        }
        let mut order: u64 = 1;
        for _ in 0..f {
            order = order
                .checked_mul(p)
                .filter(|&o| o <= ENUM_CAP)
                .ok_or(FqError::OrderTooLarge(p, f))?;
        }
        if modulus[f] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FqError::ReducibleModulus);
        }
        let base = Fq::prime(p)?;
        let as_qpoly: Vec<FqElem> = modulus
            .iter()
            .map(|&c| FqElem { coeffs: vec![c] })
            .collect();
        if f > 1 && !qp_is_irreducible(&base, &as_qpoly)? {
            return Err(FqError::ReducibleModulus);
        }
        Ok(Fq { p, f, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            coeffs: vec![0; self.f],
        }
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// The field generator (the class of the modulus variable). In the prime
    /// field this is zero, so only meaningful when `f > 1`.
    pub fn generator(&self) -> FqElem {
        let mut coeffs = vec![0; self.f];
        if self.f > 1 {
            coeffs[1] = 1;
        }
        FqElem { coeffs }
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.p as i64;
        let mut r = n % p;
        if r < 0 {
            r += p;
        }
        let mut coeffs = vec![0; self.f];
        coeffs[0] = r as u64;
        FqElem { coeffs }
    }

    /// Bijection `[0, q) -> F_q` by base-`p` digits.
    pub fn element(&self, idx: u64) -> FqElem {
        debug_assert!(idx < self.order());
        let mut coeffs = Vec::with_capacity(self.f);
        let mut rest = idx;
        for _ in 0..self.f {
            coeffs.push(rest % self.p);
            rest /= self.p;
        }
        FqElem { coeffs }
    }

    pub fn index(&self, e: &FqElem) -> u64 {
        let mut idx = 0u64;
        for &c in e.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn is_zero(&self, e: &FqElem) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FqElem { coeffs }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut prod = vec![0u64; 2 * self.f - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] as u128 + x as u128 * y as u128) as u64 % self.p;
            }
        }
        // Reduce by the monic modulus.
        for i in (self.f..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.f {
                let m = self.modulus[j];
                if m != 0 {
                    let sub = (c as u128 * m as u128 % self.p as u128) as u64;
                    prod[i - self.f + j] = (prod[i - self.f + j] + self.p - sub) % self.p;
                }
            }
        }
        prod.truncate(self.f);
        FqElem { coeffs: prod }
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FqElem) -> FqElem {
        assert!(!self.is_zero(a), "inverse of zero in F_q");
        // a^(q-2); q fits in u64 by construction.
        self.pow(a, self.order() - 2)
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.mul(a, &self.inv(b))
    }

    /// The arithmetic Frobenius `x -> x^p`.
    pub fn frob(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// Digit-lex smallest root in this field of a monic polynomial given by
    /// its `F_p` coefficients (used to embed a subfield deterministically).
    pub fn embed_root(&self, sub_modulus: &[u64]) -> Result<Option<FqElem>, FqError> {
        let poly: Vec<FqElem> = sub_modulus.iter().map(|&c| self.from_int(c as i64)).collect();
        let roots = qp_roots(self, &poly)?;
        Ok(roots.into_iter().next())
    }

    /// Image of a subfield element under the embedding sending the subfield
    /// generator to `root`.
    pub fn embed(&self, sub: &Fq, root: &FqElem, e: &FqElem) -> FqElem {
        let _ = sub;
        let mut acc = self.zero();
        for &c in e.coeffs.iter().rev() {
            acc = self.mul(&acc, root);
            acc = self.add(&acc, &self.from_int(c as i64));
        }
        acc
    }
}

// Polynomials over F_q, lowest coefficient first, with trailing zeros
// trimmed by `qp_trim`. The zero polynomial is the empty vector.

pub fn qp_trim(k: &Fq, mut a: Vec<FqElem>) -> Vec<FqElem> {
    while let Some(last) = a.last() {
        if k.is_zero(last) {
            a.pop();
        } else {
            break;
        }
    }
    a
}

pub fn qp_deg(a: &[FqElem]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn qp_is_zero(a: &[FqElem]) -> bool {
    a.is_empty()
}

pub fn qp_x(k: &Fq) -> Vec<FqElem> {
    vec![k.zero(), k.one()]
}

pub fn qp_add(k: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| k.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| k.zero());
        out.push(k.add(&x, &y));
    }
    qp_trim(k, out)
}

pub fn qp_neg(k: &Fq, a: &[FqElem]) -> Vec<FqElem> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn qp_sub(k: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    qp_add(k, a, &qp_neg(k, b))
}

pub fn qp_scale(k: &Fq, c: &FqElem, a: &[FqElem]) -> Vec<FqElem> {
    qp_trim(k, a.iter().map(|x| k.mul(c, x)).collect())
}

pub fn qp_mul(k: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = k.mul(x, y);
            out[i + j] = k.add(&out[i + j], &t);
        }
    }
    qp_trim(k, out)
}

/// Quotient and remainder; the divisor may have any nonzero leading
/// coefficient.
pub fn qp_divrem(k: &Fq, a: &[FqElem], b: &[FqElem]) -> (Vec<FqElem>, Vec<FqElem>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = k.inv(&b[db]);
    let mut rem: Vec<FqElem> = a.to_vec();
    if rem.len() <= db {
        return (vec![], qp_trim(k, rem));
    }
    let mut quot = vec![k.zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = k.mul(&rem[i], &lead_inv);
        if k.is_zero(&c) {
            continue;
        }
        quot[i - db] = c.clone();
        for j in 0..=db {
            let t = k.mul(&c, &b[j]);
            rem[i - db + j] = k.sub(&rem[i - db + j], &t);
        }
    }
    (qp_trim(k, quot), qp_trim(k, rem))
}

pub fn qp_rem(k: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    qp_divrem(k, a, b).1
}

pub fn qp_monic(k: &Fq, a: &[FqElem]) -> Vec<FqElem> {
    match a.last() {
        None => vec![],
        Some(lead) => qp_scale(k, &k.inv(lead), a),
    }
}

pub fn qp_gcd(k: &Fq, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = qp_rem(k, &a, &b);
        a = b;
        b = r;
    }
    qp_monic(k, &a)
}

pub fn qp_derivative(k: &Fq, a: &[FqElem]) -> Vec<FqElem> {
    let mut out = Vec::new();
    for (i, c) in a.iter().enumerate().skip(1) {
        let mut factor = k.from_int(i as i64);
        factor = k.mul(&factor, c);
        out.push(factor);
    }
    qp_trim(k, out)
}

pub fn qp_eval(k: &Fq, a: &[FqElem], x: &FqElem) -> FqElem {
    let mut acc = k.zero();
    for c in a.iter().rev() {
        acc = k.mul(&acc, x);
        acc = k.add(&acc, c);
    }
    acc
}

pub fn qp_pow_mod(k: &Fq, base: &[FqElem], mut e: u64, m: &[FqElem]) -> Vec<FqElem> {
    let mut result = vec![k.one()];
    let mut base = qp_rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = qp_rem(k, &qp_mul(k, &result, &base), m);
        }
        base = qp_rem(k, &qp_mul(k, &base, &base), m);
        e >>= 1;
    }
    result
}

/// Roots in `F_q` by exhaustive search, sorted by element index.
pub fn qp_roots(k: &Fq, a: &[FqElem]) -> Result<Vec<FqElem>, FqError> {
    assert!(!qp_is_zero(a), "roots of the zero polynomial");
    if k.order() > ENUM_CAP {
        return Err(FqError::EnumerationTooLarge(k.order()));
    }
    let mut out = Vec::new();
    for x in k.elements() {
        if k.is_zero(&qp_eval(k, a, &x)) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Frobenius criterion: a monic polynomial of degree `n` is irreducible over
/// `F_q` iff `x^(q^n) = x (mod g)` and `x^(q^(n/r)) - x` is coprime to `g`
/// for every prime `r` dividing `n`.
pub fn qp_is_irreducible(k: &Fq, g: &[FqElem]) -> Result<bool, FqError> {
    let n = match qp_deg(g) {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let g = qp_monic(k, g);
    let q = k.order();
    // frob[j] = x^(q^j) mod g
    let mut fr = qp_x(k);
    let mut powers = vec![fr.clone()];
    for _ in 0..n {
        fr = qp_pow_mod(k, &fr, q, &g);
        powers.push(fr.clone());
    }
    if powers[n] != qp_x(k) {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let diff = qp_sub(k, &powers[n / r], &qp_x(k));
        if qp_is_zero(&diff) {
            return Ok(false);
        }
        if qp_deg(&qp_gcd(k, &diff, &g)) != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest degree of an irreducible factor.
fn smallest_factor_degree(k: &Fq, g: &[FqElem]) -> usize {
    let n = qp_deg(g).expect("nonconstant polynomial");
    let q = k.order();
    let mut fr = qp_x(k);
    for d in 1..=n / 2 {
        fr = qp_pow_mod(k, &fr, q, g);
        let diff = qp_sub(k, &fr, &qp_x(k));
        if qp_is_zero(&diff) || qp_deg(&qp_gcd(k, &diff, g)) != Some(0) {
            return d;
        }
    }
    n
}

/// A monic irreducible factor, deterministic: minimal degree, then smallest
/// in the index-lex enumeration of monic polynomials of that degree.
pub fn qp_irreducible_factor(k: &Fq, g: &[FqElem]) -> Result<Vec<FqElem>, FqError> {
    let g = qp_monic(k, g);
    let n = qp_deg(&g).expect("nonconstant polynomial");
    if n == 1 {
        return Ok(g);
    }
    let d = smallest_factor_degree(k, &g);
    if d == n {
        return Ok(g);
    }
    if d == 1 {
        let roots = qp_roots(k, &g)?;
        let r = roots.first().expect("degree-1 factor implies a root");
        return Ok(vec![k.neg(r), k.one()]);
    }
    let q = k.order();
    let candidates = (q as u128).pow(d as u32);
    if candidates > FACTOR_SEARCH_CAP as u128 {
        return Err(FqError::EnumerationTooLarge(candidates as u64));
    }
    for idx in 0..candidates as u64 {
        let mut poly = Vec::with_capacity(d + 1);
        let mut rest = idx;
        for _ in 0..d {
            poly.push(k.element(rest % q));
            rest /= q;
        }
        poly.push(k.one());
        if qp_rem(k, &g, &poly).is_empty() && qp_is_irreducible(k, &poly)? {
            return Ok(poly);
        }
    }
    unreachable!("a factor of the minimal degree exists");
}

/// Full factorization into monic irreducibles with multiplicities, sorted by
/// (degree, index-lex). The input need not be monic; the leading coefficient
/// is discarded.
pub fn qp_factor(k: &Fq, g: &[FqElem]) -> Result<Vec<(Vec<FqElem>, usize)>, FqError> {
    let mut rest = qp_monic(k, g);
    let mut factors: Vec<(Vec<FqElem>, usize)> = Vec::new();
    while qp_deg(&rest).unwrap_or(0) > 0 {
        let f = qp_irreducible_factor(k, &rest)?;
        let mut mult = 0;
        loop {
            let (q, r) = qp_divrem(k, &rest, &f);
            if r.is_empty() {
                rest = q;
                mult += 1;
            } else {
                break;
            }
        }
        factors.push((f, mult));
    }
    factors.sort_by_key(|(f, _)| {
        let digits: Vec<u64> = f.iter().map(|c| k.index(c)).collect();
        (f.len(), digits)
    });
    Ok(factors)
}

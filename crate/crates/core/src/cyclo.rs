//! Exact arithmetic in the cyclotomic field Q(zeta_N).
//!
//! A [`CycloNum`] is a polynomial in `zeta = zeta_N` of degree `< phi(N)`,
//! reduced modulo the cyclotomic polynomial `Phi_N`, stored as integer
//! numerators over one positive common denominator. The representation is
//! canonical: two numbers are equal in the field iff their stored data agree.
//!
//! The context precomputes `zeta^k mod Phi_N` for every `0 <= k < N`, which
//! makes roots of unity, conjugation and the high half of products plain
//! table-driven linear combinations.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("operands belong to different cyclotomic fields (N = {0} vs N = {1})")]
    ContextMismatch(u32, u32),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("reduction table for N = {0} does not fit in 64-bit words")]
    TableOverflow(u32),
    #[error("division by zero")]
    DivisionByZero,
}

/// Cyclotomic field context: conductor `N`, `Phi_N`, and the reduced powers of
/// `zeta_N`.
pub struct CycloCtx {
    n: u32,
    phi: usize,
    /// `Phi_N`, low-to-high, monic, length `phi + 1`.
    cyclotomic: Vec<i64>,
    /// Row `k` (length `phi`) holds `zeta^k mod Phi_N`.
    powers: Vec<i64>,
    unit_circle: Vec<Complex64>,
}

impl fmt::Debug for CycloCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloCtx").field("n", &self.n).field("phi", &self.phi).finish()
    }
}

impl CycloCtx {
    pub fn new(n: u32) -> Result<Arc<Self>, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let cyclotomic: Vec<i64> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| c.to_i64().ok_or(CycloError::TableOverflow(n)))
            .collect::<Result<_, _>>()?;
        let phi = cyclotomic.len() - 1;

        let mut powers = vec![0i64; n as usize * phi];
        let mut row = vec![0i64; phi];
        row[0] = 1;
        for k in 0..n as usize {
            powers[k * phi..(k + 1) * phi].copy_from_slice(&row);
            // row <- x * row mod Phi_N
            let top = row[phi - 1];
            for i in (1..phi).rev() {
                row[i] = row[i - 1];
            }
            row[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    row[i] = top
                        .checked_mul(cyclotomic[i])
                        .and_then(|t| row[i].checked_sub(t))
                        .ok_or(CycloError::TableOverflow(n))?;
                }
            }
        }

        let unit_circle = (0..n)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
            .collect();

        Ok(Arc::new(CycloCtx { n, phi, cyclotomic, powers, unit_circle }))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `phi(N)`, the field degree.
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `Phi_N`, low-to-high.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.cyclotomic
    }

    /// `zeta^k mod Phi_N` for `0 <= k < N`.
    pub fn power_row(&self, k: usize) -> &[i64] {
        &self.powers[k * self.phi..(k + 1) * self.phi]
    }

    fn reduce_exp(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    pub fn zero(self: &Arc<Self>) -> CycloNum {
        CycloNum { ctx: Arc::clone(self), num: Vec::new(), den: BigInt::one() }
    }

    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CycloNum {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(self: &Arc<Self>, n: BigInt) -> CycloNum {
        CycloNum::normalized(Arc::clone(self), vec![n], BigInt::one())
    }

    pub fn from_rational(self: &Arc<Self>, r: &BigRational) -> CycloNum {
        CycloNum::normalized(Arc::clone(self), vec![r.numer().clone()], r.denom().clone())
    }

    /// `zeta_N^k`, with k taken mod N.
    pub fn root(self: &Arc<Self>, k: i64) -> CycloNum {
        let row = self.power_row(self.reduce_exp(k));
        CycloNum::normalized(
            Arc::clone(self),
            row.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    /// `sum_k weights[k] * zeta^k` over `0 <= k < N`; the main constructor for
    /// exponential sums.
    pub fn from_root_weights(self: &Arc<Self>, weights: &[i64]) -> CycloNum {
        assert_eq!(weights.len(), self.n as usize, "one weight per N-th root of unity");
        let mut acc = vec![0i128; self.phi];
        for (k, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(self.power_row(k)) {
                *a = a
                    .checked_add(w as i128 * r as i128)
                    .expect("root weight sum exceeds 128 bits");
            }
        }
        CycloNum::normalized(
            Arc::clone(self),
            acc.into_iter().map(BigInt::from).collect(),
            BigInt::one(),
        )
    }

    /// Builds a number from explicit reduced-basis rational coefficients.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[BigRational]) -> CycloNum {
        assert!(coeffs.len() <= self.phi, "more coefficients than the field degree");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        CycloNum::normalized(Arc::clone(self), num, den)
    }
}

/// Exact element of Q(zeta_N).
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<CycloCtx>,
    /// Numerators of the reduced-basis coefficients, trailing zeros trimmed.
    num: Vec<BigInt>,
    /// Positive, coprime to the gcd of `num`.
    den: BigInt,
}

impl CycloNum {
    fn normalized(ctx: Arc<CycloCtx>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return CycloNum { ctx, num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                den /= &g;
                for c in &mut num {
                    *c /= &g;
                }
            }
        }
        CycloNum { ctx, num, den }
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    fn check_ctx(&self, other: &Self) -> Result<(), CycloError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.n == other.ctx.n {
            Ok(())
        } else {
            Err(CycloError::ContextMismatch(self.ctx.n, other.ctx.n))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Rational coefficients in the basis `1, zeta, ..., zeta^(phi-1)`,
    /// always of length `phi(N)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        out.resize(self.ctx.phi, BigRational::zero());
        out
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    /// Numerators as `i64` with the denominator, when everything fits.
    pub fn to_scaled_i64(&self) -> Option<(Vec<i64>, i64)> {
        let num = self.num.iter().map(|c| c.to_i64()).collect::<Option<Vec<_>>>()?;
        Some((num, self.den.to_i64()?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ctx(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ctx(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let len = self.num.len().max(other.num.len());
        let (num, den) = if self.den == other.den {
            let num = (0..len)
                .map(|i| {
                    let a = self.num.get(i).cloned().unwrap_or_default();
                    let b = other.num.get(i).cloned().unwrap_or_default();
                    if subtract { a - b } else { a + b }
                })
                .collect();
            (num, self.den.clone())
        } else {
            let den = self.den.lcm(&other.den);
            let fa = &den / &self.den;
            let fb = &den / &other.den;
            let num = (0..len)
                .map(|i| {
                    let a = self.num.get(i).map(|c| c * &fa).unwrap_or_default();
                    let b = other.num.get(i).map(|c| c * &fb).unwrap_or_default();
                    if subtract { a - b } else { a + b }
                })
                .collect();
            (num, den)
        };
        CycloNum::normalized(Arc::clone(&self.ctx), num, den)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ctx.zero());
        }
        if let Some(r) = self.as_rational() {
            return Ok(other.mul_rational(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.mul_rational(&r));
        }
        let num = match (self.to_scaled_i64(), other.to_scaled_i64()) {
            (Some((a, _)), Some((b, _))) => mul_reduce_small(&self.ctx, &a, &b),
            _ => None,
        }
        .unwrap_or_else(|| mul_reduce_big(&self.ctx, &self.num, &other.num));
        Ok(CycloNum::normalized(Arc::clone(&self.ctx), num, &self.den * &other.den))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloNum::normalized(Arc::clone(&self.ctx), num, &self.den * r.denom())
    }

    pub fn mul_int(&self, n: i64) -> Self {
        self.mul_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, r: &BigRational) -> Result<Self, CycloError> {
        if r.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        Ok(self.mul_rational(&r.recip()))
    }

    /// Multiplication by `zeta^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.ctx.n as i64;
        self.permute_powers(|i| (i as i64 + k).rem_euclid(n) as usize)
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^(N-1)`.
    pub fn conj(&self) -> Self {
        let n = self.ctx.n as usize;
        self.permute_powers(|i| (n - i) % n)
    }

    /// Sends `zeta^i` to `zeta^target(i)` and reduces.
    fn permute_powers(&self, target: impl Fn(usize) -> usize) -> Self {
        let phi = self.ctx.phi;
        if let Some((small, _)) = self.to_scaled_i64() {
            let mut acc = vec![0i128; phi];
            let mut ok = true;
            'outer: for (i, &c) in small.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (a, &r) in acc.iter_mut().zip(self.ctx.power_row(target(i))) {
                    if r != 0 {
                        match a.checked_add(c as i128 * r as i128) {
                            Some(v) => *a = v,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                let num = acc.into_iter().map(BigInt::from).collect();
                return CycloNum::normalized(Arc::clone(&self.ctx), num, self.den.clone());
            }
        }
        let mut acc = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &r) in acc.iter_mut().zip(self.ctx.power_row(target(i))) {
                if r != 0 {
                    *a += c * r;
                }
            }
        }
        CycloNum::normalized(Arc::clone(&self.ctx), acc, self.den.clone())
    }

    /// `a * conj(a)`.
    pub fn abs_square(&self) -> Self {
        self.checked_mul(&self.conj()).expect("same context")
    }

    /// Double-precision value under the embedding `zeta -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut z = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if let Some(c) = c.to_f64() {
                z += self.ctx.unit_circle[i] * c;
            }
        }
        z / den
    }
}

fn mul_reduce_small(ctx: &CycloCtx, a: &[i64], b: &[i64]) -> Option<Vec<BigInt>> {
    let phi = ctx.phi;
    let mut prod = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    let reduced = reduce_i128(ctx, &prod)?;
    debug_assert!(reduced.len() <= phi);
    Some(reduced.into_iter().map(BigInt::from).collect())
}

/// Folds an unreduced coefficient vector (any length) back into the basis of
/// length `phi` using the power table.
pub(crate) fn reduce_i128(ctx: &CycloCtx, unreduced: &[i128]) -> Option<Vec<i128>> {
    let phi = ctx.phi;
    let n = ctx.n as usize;
    let mut out = vec![0i128; phi];
    for (e, &c) in unreduced.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if e < phi {
            out[e] = out[e].checked_add(c)?;
        } else {
            for (o, &r) in out.iter_mut().zip(ctx.power_row(e % n)) {
                if r != 0 {
                    *o = o.checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
    }
    Some(out)
}

fn mul_reduce_big(ctx: &CycloCtx, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let phi = ctx.phi;
    let n = ctx.n as usize;
    let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let mut out = vec![BigInt::zero(); phi];
    for (e, c) in prod.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if e < phi {
            out[e] += c;
        } else {
            for (o, &r) in out.iter_mut().zip(ctx.power_row(e % n)) {
                if r != 0 {
                    *o += &c * r;
                }
            }
        }
    }
    out
}

/// `Phi_N` by exact division of `x^N - 1` by every `Phi_d`, `d | N`, `d < N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0);
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = div_exact_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn div_exact_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - dm];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dm].clone();
        if !c.is_zero() {
            for (j, mj) in m.iter().enumerate() {
                rem[i + j] -= &c * mj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[N={}]({})", self.ctx.n, self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert!(p105.iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=120u32 {
            let totient = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(CycloCtx::new(n).unwrap().degree(), totient, "N = {n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        let ctx = CycloCtx::new(3).unwrap();
        assert_eq!(ctx.root(0), ctx.one());
        assert_eq!(ctx.root(3), ctx.one());
        assert_eq!(ctx.root(2), ctx.from_int(-1) - ctx.root(1));
        assert_eq!(ctx.root(-1), ctx.root(2));
        let one = CycloCtx::new(1).unwrap();
        assert_eq!(one.root(5), one.one());
    }

    #[test]
    fn conj_and_abs_square() {
        let ctx = CycloCtx::new(3).unwrap();
        let z = ctx.root(1);
        assert_eq!(z.abs_square(), ctx.one());
        let a = ctx.one() + z.mul_int(2);
        assert_eq!(a.conj(), ctx.from_int(-1) - z.mul_int(2));
        assert_eq!(a.abs_square(), ctx.from_int(3));
    }

    #[test]
    fn to_complex_examples() {
        let c3 = CycloCtx::new(3).unwrap();
        let one = c3.one().to_complex();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let a = (c3.one() + c3.root(1).mul_int(2)).to_complex();
        assert!((a - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        let c4 = CycloCtx::new(4).unwrap();
        assert!((c4.root(1).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn prime_root_sums_vanish() {
        let ctx = CycloCtx::new(60).unwrap();
        for p in [2i64, 3, 5] {
            let mut s = ctx.zero();
            for k in 0..p {
                s += &ctx.root(k * 60 / p);
            }
            assert!(s.is_zero(), "p = {p}");
        }
        let mut weights = vec![0i64; 60];
        for k in 0..5 {
            weights[k * 12] = 1;
        }
        assert!(ctx.from_root_weights(&weights).is_zero());
    }

    #[test]
    fn rational_helpers() {
        let ctx = CycloCtx::new(7).unwrap();
        let half = ctx.from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.mul_int(2), ctx.one());
        assert_eq!(half.as_rational(), Some(BigRational::new(1.into(), 2.into())));
        assert!(ctx.root(1).as_rational().is_none());
        assert_eq!(
            ctx.root(1).div_rational(&BigRational::zero()),
            Err(CycloError::DivisionByZero)
        );
        assert_eq!(ctx.root(3).mul_root(5), ctx.root(1));
        let other = CycloCtx::new(5).unwrap();
        assert_eq!(
            ctx.one().checked_add(&other.one()),
            Err(CycloError::ContextMismatch(7, 5))
        );
    }

    fn arb_num(ctx: Arc<CycloCtx>) -> impl Strategy<Value = CycloNum> {
        let n = ctx.conductor() as i64;
        prop::collection::vec((-4i64..=4, 0..n, 1i64..=3), 0..5).prop_map(move |terms| {
            let mut acc = ctx.zero();
            for (c, k, d) in terms {
                let r = BigRational::new(c.into(), d.into());
                acc = acc + ctx.root(k).mul_rational(&r);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, c) in Just(CycloCtx::new(24).unwrap())
                .prop_flat_map(|ctx| (arb_num(ctx.clone()), arb_num(ctx.clone()), arb_num(ctx)))
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            let za = a.to_complex();
            let zb = b.to_complex();
            prop_assert!(((&a * &b).to_complex() - za * zb).norm() < 1e-9);
            prop_assert!((a.conj().to_complex() - za.conj()).norm() < 1e-9);
        }

        #[test]
        fn roots_have_unit_norm(k in -500i64..500) {
            let ctx = CycloCtx::new(168).unwrap();
            prop_assert_eq!(ctx.root(k).abs_square(), ctx.one());
            prop_assert_eq!(&ctx.root(k) * &ctx.root(-k), ctx.one());
        }

        #[test]
        fn big_and_small_products_agree(
            (a, b) in Just(CycloCtx::new(20).unwrap())
                .prop_flat_map(|ctx| (arb_num(ctx.clone()), arb_num(ctx)))
        ) {
            let ctx = a.ctx().clone();
            let fast = &a * &b;
            let slow = CycloNum::normalized(
                ctx.clone(),
                if a.is_zero() || b.is_zero() { vec![] } else { mul_reduce_big(&ctx, &a.num, &b.num) },
                &a.den * &b.den,
            );
            prop_assert_eq!(fast, slow);
        }
    }
}

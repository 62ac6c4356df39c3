//! Arithmetic in GF(q) for odd prime powers q = p^f.
//!
//! Elements are stored as a single integer code: the polynomial-basis
//! coefficients `c_0 + c_1 x + ... + c_{f-1} x^{f-1}` are packed as the base-p
//! number `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`. Multiplication goes through
//! discrete log / exponent tables built once from the fixed generator `nu`, so
//! every operation after construction is table lookups and small integer math.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted. The log/exp/trace tables are `O(q)` words.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported; q must be odd")]
    EvenCharacteristic,
    #[error("modulus {0:?} is reducible over GF(p)")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order p^f exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("coefficient vector {0:?} does not describe an element of this field")]
    InvalidElement(Vec<u32>),
}

/// An element of GF(q), encoded as its base-p packed coefficient vector.
///
/// The value is only meaningful together with the [`FieldCtx`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed code; for prime fields this is the residue itself.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `code < q` for the field in use.
    pub(crate) fn from_code_unchecked(code: u32) -> Self {
        FieldElement(code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Immutable arithmetic context for GF(q).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, coefficients low-to-high, length f + 1.
    modulus: Vec<u32>,
    nu: FieldElement,
    /// `exp[i] = nu^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[a] = i` with `nu^i = a`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    half: FieldElement,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .field("nu", &self.coeffs(self.nu))
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus && self.nu == other.nu
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds GF(p^f).
    ///
    /// Without a modulus, the smallest monic irreducible polynomial is chosen,
    /// ordering candidates by their packed non-leading coefficients. `nu` is
    /// always the generator of GF(q)^x with the smallest code.
    pub fn new(p: u64, f: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if f == 0 {
            return Err(FieldError::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge)?;
        let p = p as u32;
        let q = q as u32;

        let modulus = match modulus {
            Some(m) => {
                let m = poly::trim(m.iter().map(|&c| c % p).collect());
                if m.len() != f as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(FieldError::InvalidModulus(format!(
                        "expected a monic polynomial of degree {f}, got {m:?}"
                    )));
                }
                if f > 1 && !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m));
                }
                m
            }
            None if f == 1 => vec![0, 1],
            None => poly::smallest_irreducible(p, f),
        };

        let order = q as u64 - 1;
        let order_primes = prime_factors(order);
        let nu = (1..q)
            .find(|&code| {
                let g = unpack(code, p, f);
                order_primes.iter().all(|&r| {
                    poly::pow_mod(&g, order / r, &modulus, p) != [1]
                })
            })
            .expect("GF(q)^x is cyclic");

        let nu_poly = unpack(nu, p, f);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..order as u32 {
            let code = pack(&cur, p);
            exp.push(code);
            log[code as usize] = i;
            cur = poly::mul_mod(&cur, &nu_poly, &modulus, p);
        }

        let mut ctx = FieldCtx {
            p,
            f,
            q,
            modulus,
            nu: FieldElement(nu),
            exp,
            log,
            trace: Vec::new(),
            half: FieldElement::ZERO,
        };
        ctx.half = ctx.inv(ctx.from_int(2));
        ctx.trace = (0..q)
            .map(|code| {
                let mut acc = FieldElement::ZERO;
                let mut x = FieldElement(code);
                for _ in 0..f {
                    acc = ctx.add(acc, x);
                    x = ctx.pow(x, p as i64);
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        Ok(ctx)
    }

    /// Builds GF(q) from the order alone, factoring q = p^f.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, f, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, coefficients low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed multiplicative generator.
    pub fn nu(&self) -> FieldElement {
        self.nu
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Inverse of 2.
    pub fn half(&self) -> FieldElement {
        self.half
    }

    pub fn element(&self, code: u32) -> Option<FieldElement> {
        (code < self.q).then_some(FieldElement(code))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut v = unpack(a.0, self.p, self.f);
        v.resize(self.f as usize, 0);
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::InvalidElement(coeffs.to_vec()));
        }
        Ok(FieldElement(pack(coeffs, self.p)))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// All q elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// Nonzero elements in ascending code order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.f == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.f == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            x /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics if `a` is zero; use [`FieldCtx::checked_inv`] otherwise.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.checked_inv(a).expect("inverse of zero in GF(q)")
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroArgument);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// `a^e`; negative exponents require `a != 0`. `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        if a.0 == 0 {
            assert!(e >= 0, "negative power of zero in GF(q)");
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        FieldElement(self.exp[(l * e.rem_euclid(n)).rem_euclid(n) as usize])
    }

    /// `nu^e` for any integer e.
    pub fn nu_pow(&self, e: i64) -> FieldElement {
        FieldElement(self.exp[e.rem_euclid((self.q - 1) as i64) as usize])
    }

    /// Discrete logarithm to base `nu`; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Quadratic residue symbol `(u/F)`, computed as `u^((q-1)/2)`.
    pub fn legendre(&self, u: FieldElement) -> Result<i8, FieldError> {
        if u.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let r = self.pow(u, ((self.q - 1) / 2) as i64);
        if r == FieldElement::ONE {
            Ok(1)
        } else {
            debug_assert_eq!(r, self.neg(FieldElement::ONE));
            Ok(-1)
        }
    }

    /// Absolute trace to GF(p), returned as a residue in `[0, p)`.
    pub fn trace(&self, u: FieldElement) -> u32 {
        self.trace[u.0 as usize]
    }
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut code: u32, p: u32, f: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(f as usize);
    while code > 0 {
        v.push(code % p);
        code /= p;
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Splits `q = p^f`, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let primes = prime_factors(q);
    if primes.len() != 1 {
        return None;
    }
    let p = primes[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p, f))
}

/// Dense polynomials over GF(p), low-to-high, used only while constructing a
/// field context.
mod poly {
    pub(super) fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
        a
    }

    fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = inv_mod_p(*m.last().unwrap(), p) as u64;
        while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
            let top = *a.last().unwrap() as u64;
            if top != 0 {
                let factor = top * lead_inv % p as u64;
                let shift = a.len() - 1 - dm;
                for (i, &c) in m.iter().enumerate() {
                    let sub = factor * c as u64 % p as u64;
                    let cur = a[shift + i] as u64;
                    a[shift + i] = ((cur + p as u64 - sub) % p as u64) as u32;
                }
            }
            a.pop();
        }
        trim(a)
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&out.into_iter().map(|c| c as u32).collect::<Vec<_>>(), m, p)
    }

    pub(super) fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        result
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !is_zero(&b) {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Monic `m` of degree f is irreducible iff `gcd(x^(p^k) - x, m) = 1` for
    /// every `1 <= k <= f/2`.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let f = m.len() - 1;
        if f <= 1 {
            return f == 1;
        }
        let x = vec![0, 1];
        let mut xpk = x.clone();
        for _ in 1..=f / 2 {
            xpk = pow_mod(&xpk, p as u64, m, p);
            let mut diff = xpk.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(m, &trim(diff), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    pub(super) fn smallest_irreducible(p: u32, f: u32) -> Vec<u32> {
        let count = (p as u64).pow(f);
        (0..count)
            .map(|code| {
                let mut m = Vec::with_capacity(f as usize + 1);
                let mut c = code;
                for _ in 0..f {
                    m.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn order(ctx: &FieldCtx, a: FieldElement) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != ctx.one() {
            x = ctx.mul(x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn gf3_generator_is_two() {
        let ctx = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(ctx.q(), 3);
        assert_eq!(ctx.nu(), ctx.from_int(2));
        assert_eq!(order(&ctx, ctx.from_int(1)), 1);
        assert_eq!(order(&ctx, ctx.from_int(2)), 2);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(FieldCtx::new(2, 1, None).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(FieldCtx::new(9, 1, None).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(FieldCtx::from_order(4).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(FieldCtx::from_order(15).unwrap_err(), FieldError::NotPrimePower(15));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 2 = (x - 1)(x + 1) over GF(3)
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[2, 0, 1])),
            Err(FieldError::ReducibleModulus(_))
        ));
        assert!(matches!(
            FieldCtx::new(3, 2, Some(&[1, 1])),
            Err(FieldError::InvalidModulus(_))
        ));
    }

    #[test]
    fn gf9_with_x2_plus_1() {
        let ctx = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(ctx.q(), 9);
        assert_eq!(order(&ctx, ctx.nu()), 8);
        // smallest generator: x has order 4, x + 1 has order 8
        assert_eq!(ctx.coeffs(ctx.nu()), vec![1, 1]);
        // auto-selection picks the same modulus
        let auto = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(auto.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn legendre_examples() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.legendre(f3.from_int(1)), Ok(1));
        assert_eq!(f3.legendre(f3.from_int(2)), Ok(-1));
        assert_eq!(f3.legendre(f3.zero()), Err(FieldError::ZeroArgument));
        let f5 = FieldCtx::new(5, 1, None).unwrap();
        assert_eq!(f5.legendre(f5.from_int(2)), Ok(-1));
        assert_eq!(f5.legendre(f5.from_int(4)), Ok(1));
    }

    #[test]
    fn trace_examples() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(f3.trace(f3.from_int(2)), 2);
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.trace(x), 0);
        assert_eq!(f9.trace(f9.one()), 2);
    }

    #[test]
    fn legendre_counts_and_generator_order() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            let ctx = FieldCtx::from_order(q).unwrap();
            assert_eq!(order(&ctx, ctx.nu()), ctx.q() - 1, "q = {q}");
            let squares = ctx.units().filter(|&u| ctx.legendre(u) == Ok(1)).count();
            assert_eq!(squares as u32, (ctx.q() - 1) / 2);
            for u in ctx.units() {
                let is_square = ctx.units().any(|t| ctx.mul(t, t) == u);
                assert_eq!(ctx.legendre(u) == Ok(1), is_square);
            }
            // trace is onto GF(p)
            let mut hit = vec![false; ctx.p() as usize];
            for a in ctx.elements() {
                hit[ctx.trace(a) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }

    fn arb_field() -> impl Strategy<Value = FieldCtx> {
        prop::sample::select(vec![3u64, 5, 7, 9, 11, 25, 27, 81, 125])
            .prop_map(|q| FieldCtx::from_order(q).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(ctx in arb_field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let q = ctx.q();
            let (a, b, c) = (
                ctx.element(a % q).unwrap(),
                ctx.element(b % q).unwrap(),
                ctx.element(c % q).unwrap(),
            );
            prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
            prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
            prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            prop_assert_eq!(ctx.add(a, ctx.neg(a)), ctx.zero());
            prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
            if !a.is_zero() {
                prop_assert_eq!(ctx.mul(a, ctx.inv(a)), ctx.one());
            }
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(
                    ctx.legendre(ctx.mul(a, b)).unwrap(),
                    ctx.legendre(a).unwrap() * ctx.legendre(b).unwrap()
                );
            }
            let p = ctx.p();
            prop_assert_eq!(ctx.trace(ctx.add(a, b)), (ctx.trace(a) + ctx.trace(b)) % p);
            let k = ctx.from_int(2);
            prop_assert_eq!(ctx.trace(ctx.mul(k, a)), (2 * ctx.trace(a)) % p);
        }
    }
}

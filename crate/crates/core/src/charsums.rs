//! Additive characters of GF(q) and the exponential sums built from them.
//!
//! The additive character is fixed once and for all as
//! `lambda(z) = zeta_p^Tr(z)`, realised inside Q(zeta_N) with
//! `N = lcm(p, q - 1, q + 1)` so that every table entry shares one field.

use std::sync::Arc;

use num_integer::Integer;

use crate::cyclo::{CycloCtx, CycloError, CycloNum};
use crate::ffield::{FieldCtx, FieldElement, FieldError};

/// Label recorded in serialized output for the additive character choice.
pub const LAMBDA_LABEL: &str = "zeta_p^Tr";
/// Label recorded in serialized output for the square-root branch.
pub const SQRT_BRANCH_LABEL: &str = "sum lambda(t^2)";

/// The conductor used for GF(q): `lcm(p, q - 1, q + 1)`.
pub fn conductor(field: &FieldCtx) -> u32 {
    let q = field.q();
    field.p().lcm(&(q - 1)).lcm(&(q + 1))
}

/// Fixed conventions shared by every character value: the field, the
/// cyclotomic context, `lambda`, `delta` and the branch of `sqrt(delta q)`.
#[derive(Clone, Debug)]
pub struct CharConvention {
    field: Arc<FieldCtx>,
    cyclo: Arc<CycloCtx>,
    delta: i8,
    sqrt_delta_q: CycloNum,
    /// `exp_of[code] = Tr(z) * N / p`, the exponent of `lambda(z)` in zeta_N.
    exp_of: Vec<u32>,
}

impl CharConvention {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self, CycloError> {
        let cyclo = CycloCtx::new(conductor(&field))?;
        let step = cyclo.conductor() / field.p();
        let exp_of = field.elements().map(|z| field.trace(z) * step).collect();
        let q = field.q();
        let delta = if ((q - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let mut conv = CharConvention {
            field,
            cyclo: cyclo.clone(),
            delta,
            sqrt_delta_q: cyclo.zero(),
            exp_of,
        };
        conv.sqrt_delta_q = conv.sum_lambda(conv.field.elements().map(|t| conv.field.mul(t, t)));
        Ok(conv)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn cyclo(&self) -> &Arc<CycloCtx> {
        &self.cyclo
    }

    /// `(-1)^((q-1)/2)`.
    pub fn delta(&self) -> i8 {
        self.delta
    }

    /// The fixed square root of `delta * q`, namely `sum_t lambda(t^2)`.
    pub fn sqrt_delta_q(&self) -> &CycloNum {
        &self.sqrt_delta_q
    }

    /// Exponent `e` with `lambda(z) = zeta_N^e`.
    pub fn lambda_exponent(&self, z: FieldElement) -> u32 {
        self.exp_of[z.code() as usize]
    }

    pub fn lambda(&self, z: FieldElement) -> CycloNum {
        self.cyclo.root(self.lambda_exponent(z) as i64)
    }

    /// `lambda_u(z) = lambda(u z)`.
    pub fn lambda_u(&self, u: FieldElement, z: FieldElement) -> CycloNum {
        self.lambda(self.field.mul(u, z))
    }

    /// `sum lambda(a)` over the given arguments, with multiplicity.
    pub fn sum_lambda(&self, args: impl IntoIterator<Item = FieldElement>) -> CycloNum {
        let mut weights = vec![0i64; self.cyclo.conductor() as usize];
        for a in args {
            weights[self.lambda_exponent(a) as usize] += 1;
        }
        self.cyclo.from_root_weights(&weights)
    }

    /// `Q(lambda_u) = sum_{t in F} lambda_u(-t^2 / 2)`, by direct summation.
    pub fn gauss_q(&self, u: FieldElement) -> Result<CycloNum, FieldError> {
        if u.is_zero() {
            return Err(FieldError::ZeroArgument);
        }
        let f = &*self.field;
        let c = f.neg(f.mul(u, f.half()));
        Ok(self.sum_lambda(f.elements().map(|t| f.mul(c, f.mul(t, t)))))
    }

    /// `sum_{t != 0} lambda(-(d t^3 + c) / t)`, the sums on the classes
    /// L_m and M_m.
    pub fn cubic_sum(&self, d: FieldElement, c: FieldElement) -> CycloNum {
        let f = &*self.field;
        self.sum_lambda(f.units().map(|t| {
            let cube = f.mul(d, f.mul(t, f.mul(t, t)));
            f.neg(f.div(f.add(cube, c), t))
        }))
    }

    /// `rho^e` with `rho = exp(2 pi i / (q - 1))`.
    pub fn rho_pow(&self, e: i64) -> CycloNum {
        let step = (self.cyclo.conductor() / (self.field.q() - 1)) as i64;
        self.cyclo.root(e * step)
    }

    /// `sigma^e` with `sigma = exp(2 pi i / (q + 1))`.
    pub fn sigma_pow(&self, e: i64) -> CycloNum {
        let step = (self.cyclo.conductor() / (self.field.q() + 1)) as i64;
        self.cyclo.root(e * step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conv(q: u64) -> CharConvention {
        CharConvention::new(Arc::new(FieldCtx::from_order(q).unwrap())).unwrap()
    }

    #[test]
    fn conductors() {
        let n = |q| conductor(&FieldCtx::from_order(q).unwrap());
        assert_eq!(n(3), 12);
        assert_eq!(n(5), 60);
        assert_eq!(n(7), 168);
        assert_eq!(n(9), 120);
        assert_eq!(n(11), 660);
    }

    #[test]
    fn lambda_basics() {
        let c = conv(3);
        let f = c.field().clone();
        let n = c.cyclo().conductor() as i64;
        for z in f.elements() {
            assert_eq!(c.lambda_u(f.zero(), z), c.cyclo().one());
        }
        // lambda(1) = zeta_3
        assert_eq!(c.lambda_u(f.one(), f.one()), c.cyclo().root(n / 3));
        for a in f.elements() {
            for b in f.elements() {
                let u = f.from_int(2);
                assert_eq!(c.lambda_u(u, f.add(a, b)), &c.lambda_u(u, a) * &c.lambda_u(u, b));
            }
        }
        assert!(f.elements().any(|z| c.lambda(z) != c.cyclo().one()));
    }

    #[test]
    fn gauss_sum_at_q3() {
        let c = conv(3);
        let f = c.field().clone();
        let z3 = c.cyclo().root(c.cyclo().conductor() as i64 / 3);
        let expected = c.cyclo().one() + z3.mul_int(2);
        assert_eq!(c.gauss_q(f.one()).unwrap(), expected);
        assert_eq!(c.gauss_q(f.from_int(2)).unwrap(), -&expected);
        assert_eq!(c.gauss_q(f.zero()), Err(FieldError::ZeroArgument));
    }

    #[test]
    fn sqrt_delta_q_squares() {
        for q in [3u64, 5, 7, 9, 11, 13] {
            let c = conv(q);
            let s = c.sqrt_delta_q();
            let dq = c.cyclo().from_int(c.delta() as i64 * q as i64);
            assert_eq!(&(s * s), &dq, "q = {q}");
        }
        assert_eq!(conv(3).delta(), -1);
        assert_eq!(conv(5).delta(), 1);
    }

    #[test]
    fn cubic_sum_degenerate_cases() {
        let c = conv(7);
        let f = c.field().clone();
        assert_eq!(c.cubic_sum(f.zero(), f.zero()), c.cyclo().from_int(6));
        for cc in f.units() {
            assert_eq!(c.cubic_sum(f.zero(), cc), c.cyclo().from_int(-1));
        }
    }

    #[test]
    fn cubic_sum_q3_by_hand() {
        // t = 1: -(1 + 1)/1 = -2 = 1; t = 2: -(8 + 1)/2 = 0 in GF(3).
        let c = conv(3);
        let f = c.field().clone();
        let z3 = c.cyclo().root(4);
        assert_eq!(c.cubic_sum(f.one(), f.one()), c.cyclo().one() + z3);
    }

    #[test]
    fn rho_sigma() {
        let c = conv(7);
        assert_eq!(c.rho_pow(0), c.cyclo().one());
        assert_eq!(c.sigma_pow(8), c.cyclo().one());
        assert_eq!(&c.rho_pow(1) * &c.rho_pow(-1), c.cyclo().one());
        assert_ne!(c.sigma_pow(4), c.cyclo().one());
    }

    #[test]
    fn cubic_sum_norms_match_embedding() {
        for q in [5u64, 9] {
            let c = conv(q);
            let f = c.field().clone();
            for d in f.elements() {
                for cc in f.elements() {
                    let s = c.cubic_sum(d, cc);
                    let n = s.abs_square();
                    assert!((n.to_complex().re - s.to_complex().norm_sqr()).abs() < 1e-9);
                    assert!(n.to_complex().im.abs() < 1e-9);
                    assert_eq!(n.conj(), n);
                }
            }
        }
    }
}

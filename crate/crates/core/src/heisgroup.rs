//! The split extension `G = H_1(q) x| Sp(2,q)`.
//!
//! Elements are triples `(s, w, z)` standing for the 4x4 matrix
//!
//! ```text
//! [ 1  w*  z  ]
//! [ 0  s   sw ]
//! [ 0  0   1  ]
//! ```
//!
//! with `w* = (-y, x) / 2` for `w = (x, y)`. Multiplying two such matrices
//! gives `(s1, w1, z1)(s2, w2, z2) = (s1 s2, w2 + s2^-1 w1, z1 + z2 + w1*(s2 w2))`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ffield::{FieldCtx, FieldElement};

/// Default ceiling on `|G|` for anything that walks the whole group.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("|G| = {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: u64, cap: u64 },
}

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sp2Element {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

pub type Vector = [FieldElement; 2];

impl Sp2Element {
    pub const IDENTITY: Sp2Element = Sp2Element {
        a: FieldElement::ONE,
        b: FieldElement::ZERO,
        c: FieldElement::ZERO,
        d: FieldElement::ONE,
    };

    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Sp2Element { a, b, c, d }
    }

    pub fn scalar(f: &FieldCtx, x: FieldElement) -> Self {
        Sp2Element::new(x, f.zero(), f.zero(), x)
    }

    pub fn det(&self, f: &FieldCtx) -> FieldElement {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &FieldCtx) -> FieldElement {
        f.add(self.a, self.d)
    }

    pub fn mul(&self, o: &Self, f: &FieldCtx) -> Self {
        Sp2Element {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inv(&self, f: &FieldCtx) -> Self {
        Sp2Element { a: self.d, b: f.neg(self.b), c: f.neg(self.c), d: self.a }
    }

    pub fn pow(&self, mut e: u64, f: &FieldCtx) -> Self {
        let mut base = *self;
        let mut acc = Sp2Element::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, w: Vector, f: &FieldCtx) -> Vector {
        [
            f.add(f.mul(self.a, w[0]), f.mul(self.b, w[1])),
            f.add(f.mul(self.c, w[0]), f.mul(self.d, w[1])),
        ]
    }

    /// Multiplicative order (brute force, bounded by `|SL(2,q)|`).
    pub fn order(&self, f: &FieldCtx) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while x != Sp2Element::IDENTITY {
            x = x.mul(self, f);
            k += 1;
        }
        k
    }
}

/// `(s, w, z)`, one element of G.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub s: Sp2Element,
    pub w: Vector,
    pub z: FieldElement,
}

/// Wire form of a group element: field elements as coefficient vectors.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupElementRecord {
    pub s: [[Vec<u32>; 2]; 2],
    pub w: [Vec<u32>; 2],
    pub z: Vec<u32>,
}

/// Group operations for `G` over a fixed field.
#[derive(Clone, Debug)]
pub struct Group {
    field: Arc<FieldCtx>,
}

impl Group {
    pub fn new(field: Arc<FieldCtx>) -> Self {
        Group { field }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// `|G| = q^4 (q^2 - 1)`.
    pub fn order(&self) -> u64 {
        let q = self.field.q() as u64;
        q.pow(4) * (q * q - 1)
    }

    pub fn identity(&self) -> GroupElement {
        let f = &self.field;
        GroupElement { s: Sp2Element::IDENTITY, w: [f.zero(); 2], z: f.zero() }
    }

    pub fn element(&self, s: Sp2Element, w: Vector, z: FieldElement) -> GroupElement {
        GroupElement { s, w, z }
    }

    /// Central element `A(z) = (1, 0, z)`.
    pub fn central(&self, z: FieldElement) -> GroupElement {
        GroupElement { z, ..self.identity() }
    }

    /// The row `w* = (-y, x) / 2`, so that `w* v = j(w, v) / 2`.
    pub fn wstar(&self, w: Vector) -> Vector {
        let f = &*self.field;
        [f.mul(f.half(), f.neg(w[1])), f.mul(f.half(), w[0])]
    }

    /// `w* v`.
    pub fn pair(&self, w: Vector, v: Vector) -> FieldElement {
        let f = &*self.field;
        let r = self.wstar(w);
        f.add(f.mul(r[0], v[0]), f.mul(r[1], v[1]))
    }

    fn vadd(&self, a: Vector, b: Vector) -> Vector {
        [self.field.add(a[0], b[0]), self.field.add(a[1], b[1])]
    }

    fn vsub(&self, a: Vector, b: Vector) -> Vector {
        [self.field.sub(a[0], b[0]), self.field.sub(a[1], b[1])]
    }

    pub fn multiply(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let s2_inv = g2.s.inv(f);
        let s2w2 = g2.s.apply(g2.w, f);
        GroupElement {
            s: g1.s.mul(&g2.s, f),
            w: self.vadd(g2.w, s2_inv.apply(g1.w, f)),
            z: f.add(f.add(g1.z, g2.z), self.pair(g1.w, s2w2)),
        }
    }

    /// `(s, w, z)^-1 = (s^-1, -s w, -z)`.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let sw = g.s.apply(g.w, f);
        GroupElement { s: g.s.inv(f), w: [f.neg(sw[0]), f.neg(sw[1])], z: f.neg(g.z) }
    }

    /// `g1 g2 g1^-1`, in closed form:
    /// `(s1 s2 s1^-1, s1 (w2 - w1 + s2^-1 w1), z2 - (w2 + s2^-1 w1 + s2 w2)* w1)`.
    pub fn conjugate(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let s1_inv = g1.s.inv(f);
        let s2_inv_w1 = g2.s.inv(f).apply(g1.w, f);
        let inner = self.vadd(self.vsub(g2.w, g1.w), s2_inv_w1);
        let lhs = self.vadd(self.vadd(g2.w, s2_inv_w1), g2.s.apply(g2.w, f));
        GroupElement {
            s: g1.s.mul(&g2.s, f).mul(&s1_inv, f),
            w: g1.s.apply(inner, f),
            z: f.sub(g2.z, self.pair(lhs, g1.w)),
        }
    }

    /// All of SL(2,q), row-major lexicographic in element codes.
    pub fn sl2_elements(&self) -> Vec<Sp2Element> {
        let f = &*self.field;
        let mut out = Vec::with_capacity((f.q() as usize).pow(3));
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        let s = Sp2Element::new(a, b, c, d);
                        if s.det(f) == f.one() {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    /// Every element exactly once, ordered by (s row-major, x, y, z).
    pub fn enumerate(&self, cap: u64) -> Result<impl Iterator<Item = GroupElement> + '_, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        let f = &*self.field;
        let sl2 = self.sl2_elements();
        Ok(sl2.into_iter().flat_map(move |s| {
            f.elements().flat_map(move |x| {
                f.elements()
                    .flat_map(move |y| f.elements().map(move |z| GroupElement { s, w: [x, y], z }))
            })
        }))
    }

    /// An element of order `q + 1` in SL(2,q).
    ///
    /// GF(q^2) is realised as `F[a]/(a^2 - nu)`; multiplication by a norm-one
    /// element `c + d a` has matrix `[[c, d nu], [d, c]]` in the basis `{1, a}`.
    /// The first `(c, d)` in code order whose matrix has order exactly `q + 1`
    /// is returned.
    pub fn singer_cycle(&self) -> Sp2Element {
        let f = &*self.field;
        let target = f.q() as u64 + 1;
        let primes = crate::ffield::prime_factors(target);
        let nu = f.nu();
        for c in f.elements() {
            for d in f.units() {
                let b = Sp2Element::new(c, f.mul(d, nu), d, c);
                if b.det(f) != f.one() {
                    continue;
                }
                if b.pow(target, f) == Sp2Element::IDENTITY
                    && primes.iter().all(|&r| b.pow(target / r, f) != Sp2Element::IDENTITY)
                {
                    return b;
                }
            }
        }
        unreachable!("the norm-one subgroup of GF(q^2)^x is cyclic of order q + 1")
    }

    pub fn record(&self, g: &GroupElement) -> GroupElementRecord {
        let f = &*self.field;
        GroupElementRecord {
            s: [[f.coeffs(g.s.a), f.coeffs(g.s.b)], [f.coeffs(g.s.c), f.coeffs(g.s.d)]],
            w: [f.coeffs(g.w[0]), f.coeffs(g.w[1])],
            z: f.coeffs(g.z),
        }
    }

    /// The displayed 4x4 matrix of `g`.
    pub fn to_matrix(&self, g: &GroupElement) -> [[FieldElement; 4]; 4] {
        let f = &*self.field;
        let ws = self.wstar(g.w);
        let sw = g.s.apply(g.w, f);
        let (o, l) = (f.zero(), f.one());
        [
            [l, ws[0], ws[1], g.z],
            [o, g.s.a, g.s.b, sw[0]],
            [o, g.s.c, g.s.d, sw[1]],
            [o, o, o, l],
        ]
    }

    /// Reads a 4x4 matrix of the displayed shape back into a triple.
    pub fn from_matrix(&self, m: &[[FieldElement; 4]; 4]) -> Option<GroupElement> {
        let f = &*self.field;
        let s = Sp2Element::new(m[1][1], m[1][2], m[2][1], m[2][2]);
        if s.det(f) != f.one() {
            return None;
        }
        let w = s.inv(f).apply([m[1][3], m[2][3]], f);
        let g = GroupElement { s, w, z: m[0][3] };
        (self.to_matrix(&g) == *m).then_some(g)
    }
}

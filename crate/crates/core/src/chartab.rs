//! The character table of G.
//!
//! Rows come in three blocks:
//!
//! * `q + 4` characters inflated from `SL(2,q) = G / H_1(q)`;
//! * `q` characters `kappa` induced from linear characters `mu_{u1,u2}` of the
//!   Sylow p-subgroup K;
//! * `(q - 1)(q + 4)` products `omega_u * chi` of the degree-q extensions
//!   `omega_u` of the non-linear characters of `H_1(q)` with the inflated rows
//!   (`omega_u` itself being the product with the trivial character).
//!
//! Values on classes of families C through I with `z != 0` follow from the
//! `z = 0` value through the central character:
//! `chi(X(z)) = chi(A(z)) / chi(1) * chi(X(0))`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::charsums::CharConvention;
use crate::classes::{class_representatives, ClassRep, Family};
use crate::cyclo::{CycloError, CycloNum};
use crate::ffield::{FieldCtx, FieldElement, FieldError};
use crate::heisgroup::Group;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Irreducible characters of SL(2,q), inflated to G.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlCharacter {
    Trivial,
    Eta1,
    Eta2,
    Xi1,
    Xi2,
    /// `1 <= j <= (q-1)/2`
    Theta(u32),
    Psi,
    /// `1 <= i <= (q-3)/2`
    Chi(u32),
}

impl SlCharacter {
    /// All of them in table order.
    pub fn all(q: u32) -> Vec<SlCharacter> {
        let mut v = vec![
            SlCharacter::Trivial,
            SlCharacter::Eta1,
            SlCharacter::Eta2,
            SlCharacter::Xi1,
            SlCharacter::Xi2,
        ];
        v.extend((1..=(q - 1) / 2).map(SlCharacter::Theta));
        v.push(SlCharacter::Psi);
        v.extend((1..=(q - 3) / 2).map(SlCharacter::Chi));
        v
    }

    pub fn degree(self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            SlCharacter::Trivial => 1,
            SlCharacter::Eta1 | SlCharacter::Eta2 => (q - 1) / 2,
            SlCharacter::Xi1 | SlCharacter::Xi2 => q.div_ceil(2),
            SlCharacter::Theta(_) => q - 1,
            SlCharacter::Psi => q,
            SlCharacter::Chi(_) => q + 1,
        }
    }

    fn validate(self, q: u32) -> Result<(), TableError> {
        match self {
            SlCharacter::Theta(j) if j == 0 || j > (q - 1) / 2 => {
                Err(TableError::IndexOutOfRange(format!("theta_{j} with q = {q}")))
            }
            SlCharacter::Chi(i) if i == 0 || i > (q.saturating_sub(3)) / 2 => {
                Err(TableError::IndexOutOfRange(format!("chi_{i} with q = {q}")))
            }
            _ => Ok(()),
        }
    }

    fn name(self) -> &'static str {
        match self {
            SlCharacter::Trivial => "triv",
            SlCharacter::Eta1 => "eta1",
            SlCharacter::Eta2 => "eta2",
            SlCharacter::Xi1 => "xi1",
            SlCharacter::Xi2 => "xi2",
            SlCharacter::Theta(_) => "theta_j",
            SlCharacter::Psi => "psi",
            SlCharacter::Chi(_) => "chi_i",
        }
    }
}

impl fmt::Display for SlCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlCharacter::Trivial => write!(f, "1"),
            SlCharacter::Eta1 => write!(f, "eta1"),
            SlCharacter::Eta2 => write!(f, "eta2"),
            SlCharacter::Xi1 => write!(f, "xi1"),
            SlCharacter::Xi2 => write!(f, "xi2"),
            SlCharacter::Theta(j) => write!(f, "theta_{j}"),
            SlCharacter::Psi => write!(f, "psi"),
            SlCharacter::Chi(i) => write!(f, "chi_{i}"),
        }
    }
}

/// Which of the two families of induced characters: `mu_{1,nu^n}` or
/// `mu_{nu,nu^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KappaTwist {
    One,
    Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharacterId {
    Inflated(SlCharacter),
    /// `mu_{0,1}^G`
    Kappa0,
    /// `mu_{d, nu^n}^G` with `d` in `{1, nu}`, `1 <= n <= (q-1)/2`
    Kappa { twist: KappaTwist, n: u32 },
    /// `omega_u * factor`; `factor = Trivial` is `omega_u` itself.
    Weil { u: FieldElement, factor: SlCharacter },
}

impl CharacterId {
    pub fn degree(&self, q: u32) -> u64 {
        match *self {
            CharacterId::Inflated(c) => c.degree(q),
            CharacterId::Kappa0 | CharacterId::Kappa { .. } => (q as u64).pow(2) - 1,
            CharacterId::Weil { factor, .. } => q as u64 * factor.degree(q),
        }
    }

    /// Family name as used in serialized output.
    pub fn family_name(&self) -> String {
        match *self {
            CharacterId::Inflated(c) => c.name().to_string(),
            CharacterId::Kappa0 => "kappa0".into(),
            CharacterId::Kappa { twist: KappaTwist::One, .. } => "kappa_1_n".into(),
            CharacterId::Kappa { twist: KappaTwist::Nu, .. } => "kappa_nu_n".into(),
            CharacterId::Weil { factor: SlCharacter::Trivial, .. } => "omega_u".into(),
            CharacterId::Weil { factor: SlCharacter::Theta(_), .. } => "omega_theta_ju".into(),
            CharacterId::Weil { factor: SlCharacter::Chi(_), .. } => "omega_chi_iu".into(),
            CharacterId::Weil { factor, .. } => format!("omega_{}_u", factor.name()),
        }
    }

    /// Kappa parameters `(u1, u2)` such that this row is `mu_{u1,u2}^G`.
    pub fn kappa_parameters(&self, field: &FieldCtx) -> Option<(FieldElement, FieldElement)> {
        match *self {
            CharacterId::Kappa0 => Some((field.zero(), field.one())),
            CharacterId::Kappa { twist, n } => {
                let d = match twist {
                    KappaTwist::One => field.one(),
                    KappaTwist::Nu => field.nu(),
                };
                Some((d, field.nu_pow(n as i64)))
            }
            _ => None,
        }
    }
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterId::Inflated(c) => write!(f, "{c}"),
            CharacterId::Kappa0 => write!(f, "kappa0"),
            CharacterId::Kappa { twist: KappaTwist::One, n } => write!(f, "kappa_1,{n}"),
            CharacterId::Kappa { twist: KappaTwist::Nu, n } => write!(f, "kappa_nu,{n}"),
            CharacterId::Weil { u, factor: SlCharacter::Trivial } => write!(f, "omega[u={u}]"),
            CharacterId::Weil { u, factor } => write!(f, "omega[u={u}]*{factor}"),
        }
    }
}

/// Row labels in table order: inflated rows, kappa rows, then the Weil rows
/// grouped by factor with `u = nu^0, ..., nu^(q-2)` innermost.
pub fn character_ids(field: &FieldCtx) -> Vec<CharacterId> {
    let q = field.q();
    let mut out: Vec<CharacterId> =
        SlCharacter::all(q).into_iter().map(CharacterId::Inflated).collect();
    out.push(CharacterId::Kappa0);
    for twist in [KappaTwist::One, KappaTwist::Nu] {
        out.extend((1..=(q - 1) / 2).map(|n| CharacterId::Kappa { twist, n }));
    }
    for factor in SlCharacter::all(q) {
        out.extend((0..q - 1).map(|e| CharacterId::Weil { u: field.nu_pow(e as i64), factor }));
    }
    out
}

fn check_class(field: &FieldCtx, class: &ClassRep) -> Result<(), TableError> {
    let q = field.q();
    if let Some(k) = class.params.k {
        if k == 0 || k > q.saturating_sub(3) / 2 {
            return Err(TableError::IndexOutOfRange(format!("class index k = {k} with q = {q}")));
        }
    }
    if let Some(m) = class.params.m {
        if m == 0 || m > (q - 1) / 2 {
            return Err(TableError::IndexOutOfRange(format!("class index m = {m} with q = {q}")));
        }
    }
    Ok(())
}

fn sign(e: u32) -> i64 {
    if e.is_multiple_of(2) { 1 } else { -1 }
}

fn half(x: CycloNum) -> CycloNum {
    x.mul_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)))
}

/// `(a + b * r) / 2` for integers a, b.
fn half_combo(conv: &CharConvention, a: i64, b: i64, r: &CycloNum) -> CycloNum {
    half(conv.cyclo().from_int(a) + r.mul_int(b))
}

/// `sqrt(delta q)` with the sign attached to the first/second member of a
/// pair (eta1/eta2, xi1/xi2).
fn branch(conv: &CharConvention, ch: SlCharacter) -> CycloNum {
    match ch {
        SlCharacter::Eta2 | SlCharacter::Xi2 => -conv.sqrt_delta_q(),
        _ => conv.sqrt_delta_q().clone(),
    }
}

fn kmm(class: &ClassRep) -> (u32, u32) {
    (class.params.k.unwrap_or(0), class.params.m.unwrap_or(0))
}

/// Value of an inflated SL(2,q) character. Inflated characters are constant
/// along z, and take the degree on the whole of `H_1(q)` (classes A and B).
pub fn inflated_value(
    conv: &CharConvention,
    ch: SlCharacter,
    class: &ClassRep,
) -> Result<CycloNum, TableError> {
    let field = &**conv.field();
    let q = field.q();
    ch.validate(q)?;
    check_class(field, class)?;
    let c = conv.cyclo();
    let qi = q as i64;
    let delta = conv.delta() as i64;
    let int = |n: i64| c.from_int(n);
    let (k, m) = kmm(class);
    use Family as Fa;
    use SlCharacter as S;

    let v = match (ch, class.family) {
        (S::Trivial, _) => int(1),
        (_, Fa::A | Fa::B) => int(ch.degree(q) as i64),

        (S::Eta1 | S::Eta2, fam) => {
            let r = branch(conv, ch);
            match fam {
                Fa::C => half(int(-delta * (qi - 1))),
                Fa::D => int(0),
                Fa::E => half_combo(conv, -1, 1, &r).mul_int(-delta),
                Fa::F => half_combo(conv, -1, -1, &r).mul_int(-delta),
                Fa::G => int(sign(m + 1)),
                Fa::H | Fa::L => half_combo(conv, -1, 1, &r),
                Fa::I | Fa::M => half_combo(conv, -1, -1, &r),
                Fa::A | Fa::B => unreachable!(),
            }
        }
        (S::Xi1 | S::Xi2, fam) => {
            let r = branch(conv, ch);
            match fam {
                Fa::C => half(int(delta * (qi + 1))),
                Fa::D => int(sign(k)),
                Fa::E => half_combo(conv, 1, 1, &r).mul_int(delta),
                Fa::F => half_combo(conv, 1, -1, &r).mul_int(delta),
                Fa::G => int(0),
                Fa::H | Fa::L => half_combo(conv, 1, 1, &r),
                Fa::I | Fa::M => half_combo(conv, 1, -1, &r),
                Fa::A | Fa::B => unreachable!(),
            }
        }
        (S::Theta(j), fam) => match fam {
            Fa::C => int(sign(j) * (qi - 1)),
            Fa::D => int(0),
            Fa::E | Fa::F => int(sign(j + 1)),
            Fa::G => -(conv.sigma_pow((j * m) as i64) + conv.sigma_pow(-((j * m) as i64))),
            Fa::H | Fa::I | Fa::L | Fa::M => int(-1),
            Fa::A | Fa::B => unreachable!(),
        },
        (S::Psi, fam) => match fam {
            Fa::C => int(qi),
            Fa::D => int(1),
            Fa::E | Fa::F => int(0),
            Fa::G => int(-1),
            Fa::H | Fa::I | Fa::L | Fa::M => int(0),
            Fa::A | Fa::B => unreachable!(),
        },
        (S::Chi(i), fam) => match fam {
            Fa::C => int(sign(i) * (qi + 1)),
            Fa::D => conv.rho_pow((i * k) as i64) + conv.rho_pow(-((i * k) as i64)),
            Fa::E | Fa::F => int(sign(i)),
            Fa::G => int(0),
            Fa::H | Fa::I | Fa::L | Fa::M => int(1),
            Fa::A | Fa::B => unreachable!(),
        },
    };
    Ok(v)
}

/// Central scaling `lambda_u(z)` for the classes that carry a z coordinate.
fn central_scale(conv: &CharConvention, u: FieldElement, class: &ClassRep, base: CycloNum) -> CycloNum {
    match class.params.z {
        Some(z) if !z.is_zero() => {
            let e = conv.lambda_exponent(conv.field().mul(u, z));
            base.mul_root(e as i64)
        }
        _ => base,
    }
}

/// `omega_u(g)`: `q lambda_u(z)` on A(z), 0 on B, `delta` on C, E, F,
/// `(-1)^k` on D_k, `(-1)^(m+1)` on G_m, `Q(lambda_u)` on H, `-Q(lambda_u)` on
/// I, and 0 on L_m, M_m.
pub fn omega_value(conv: &CharConvention, u: FieldElement, class: &ClassRep) -> Result<CycloNum, TableError> {
    weil_product_value(conv, SlCharacter::Trivial, u, class)
}

/// Value of `omega_u * factor`, entry by entry from the closed forms of the
/// product rows (not computed as a product; see the tests for that check).
pub fn weil_product_value(
    conv: &CharConvention,
    factor: SlCharacter,
    u: FieldElement,
    class: &ClassRep,
) -> Result<CycloNum, TableError> {
    let field = &**conv.field();
    if u.is_zero() {
        return Err(FieldError::ZeroArgument.into());
    }
    let q = field.q();
    factor.validate(q)?;
    check_class(field, class)?;
    let c = conv.cyclo();
    let qi = q as i64;
    let delta = conv.delta() as i64;
    let int = |n: i64| c.from_int(n);
    let (k, m) = kmm(class);
    let gauss = || conv.gauss_q(u);
    use Family as Fa;
    use SlCharacter as S;

    let base = match (factor, class.family) {
        (_, Fa::A) => int(qi * factor.degree(q) as i64),
        (_, Fa::B | Fa::L | Fa::M) => int(0),

        (S::Trivial, fam) => match fam {
            Fa::C | Fa::E | Fa::F => int(delta),
            Fa::D => int(sign(k)),
            Fa::G => int(sign(m + 1)),
            Fa::H => gauss()?,
            Fa::I => -gauss()?,
            _ => unreachable!(),
        },
        (S::Eta1 | S::Eta2, fam) => {
            let r = branch(conv, factor);
            match fam {
                Fa::C => half(int(-(qi - 1))),
                Fa::D => int(0),
                Fa::E => half_combo(conv, 1, -1, &r),
                Fa::F => half_combo(conv, 1, 1, &r),
                Fa::G => int(1),
                Fa::H => half_combo(conv, -1, 1, &r) * gauss()?,
                Fa::I => half_combo(conv, 1, 1, &r) * gauss()?,
                _ => unreachable!(),
            }
        }
        (S::Xi1 | S::Xi2, fam) => {
            let r = branch(conv, factor);
            match fam {
                Fa::C => half(int(qi + 1)),
                Fa::D => int(1),
                Fa::E => half_combo(conv, 1, 1, &r),
                Fa::F => half_combo(conv, 1, -1, &r),
                Fa::G => int(0),
                Fa::H => half_combo(conv, 1, 1, &r) * gauss()?,
                Fa::I => half_combo(conv, -1, 1, &r) * gauss()?,
                _ => unreachable!(),
            }
        }
        (S::Theta(j), fam) => match fam {
            Fa::C => int(sign(j) * delta * (qi - 1)),
            Fa::D => int(0),
            Fa::E | Fa::F => int(sign(j + 1) * delta),
            Fa::G => (conv.sigma_pow((j * m) as i64) + conv.sigma_pow(-((j * m) as i64))).mul_int(sign(m)),
            Fa::H => -gauss()?,
            Fa::I => gauss()?,
            _ => unreachable!(),
        },
        (S::Psi, fam) => match fam {
            Fa::C => int(delta * qi),
            Fa::D => int(sign(k)),
            Fa::E | Fa::F => int(0),
            Fa::G => int(sign(m)),
            Fa::H | Fa::I => int(0),
            _ => unreachable!(),
        },
        (S::Chi(i), fam) => match fam {
            Fa::C => int(sign(i) * delta * (qi + 1)),
            Fa::D => (conv.rho_pow((i * k) as i64) + conv.rho_pow(-((i * k) as i64))).mul_int(sign(k)),
            Fa::E | Fa::F => int(sign(i) * delta),
            Fa::G => int(0),
            Fa::H => gauss()?,
            Fa::I => -gauss()?,
            _ => unreachable!(),
        },
    };
    Ok(central_scale(conv, u, class, base))
}

/// `mu_{u1,u2}^G(g)` from its closed forms: `q^2 - 1` on A(z); on B, `-1` if
/// `u2 != 0` and `q^2 - 1` otherwise; 0 on C through G; on H and I,
/// `-1 +- Q(lambda_{2 u1})` (or `q - 1` when `u1 = 0`); on L_m and M_m the
/// cubic sums with `(d, c) = (u1, u2 nu^m)` and `(u1 nu, u2 nu^m)`.
///
/// Only `(0,1)`, `(1, nu^n)` and `(nu, nu^n)` appear in the table (see
/// [`is_kappa_parameter`]); other pairs are still evaluated.
pub fn mu_induced_closed_form(
    conv: &CharConvention,
    u1: FieldElement,
    u2: FieldElement,
    class: &ClassRep,
) -> Result<CycloNum, TableError> {
    let field = &**conv.field();
    check_class(field, class)?;
    let c = conv.cyclo();
    let q = field.q() as i64;
    let (_, m) = kmm(class);
    let v = match class.family {
        Family::A => c.from_int(q * q - 1),
        Family::B if !u2.is_zero() => c.from_int(-1),
        Family::B => c.from_int(q * q - 1),
        Family::C | Family::D | Family::E | Family::F | Family::G => c.zero(),
        Family::H | Family::I if u1.is_zero() => c.from_int(q - 1),
        Family::H => c.from_int(-1) + conv.gauss_q(field.mul(field.from_int(2), u1))?,
        Family::I => c.from_int(-1) - conv.gauss_q(field.mul(field.from_int(2), u1))?,
        Family::L => conv.cubic_sum(u1, field.mul(u2, field.nu_pow(m as i64))),
        Family::M => conv.cubic_sum(field.mul(u1, field.nu()), field.mul(u2, field.nu_pow(m as i64))),
    };
    Ok(v)
}

/// Whether `(u1, u2)` is one of the parameter pairs used for the kappa rows.
pub fn is_kappa_parameter(field: &FieldCtx, u1: FieldElement, u2: FieldElement) -> bool {
    if u1.is_zero() {
        return u2 == field.one();
    }
    let n = match field.log(u2) {
        Some(n) => n,
        None => return false,
    };
    (u1 == field.one() || u1 == field.nu()) && (1..=(field.q() - 1) / 2).contains(&n)
}

/// Value of any row label on any class, straight from the closed forms.
pub fn character_value(
    conv: &CharConvention,
    ch: &CharacterId,
    class: &ClassRep,
) -> Result<CycloNum, TableError> {
    match *ch {
        CharacterId::Inflated(c) => inflated_value(conv, c, class),
        CharacterId::Weil { u, factor } => weil_product_value(conv, factor, u, class),
        CharacterId::Kappa0 | CharacterId::Kappa { .. } => {
            let (u1, u2) = ch.kappa_parameters(conv.field()).expect("kappa row");
            mu_induced_closed_form(conv, u1, u2, class)
        }
    }
}

/// The full table with its conventions.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    conv: CharConvention,
    group: Group,
    classes: Vec<ClassRep>,
    chars: Vec<CharacterId>,
    /// Row-major, `chars.len() x classes.len()`.
    values: Vec<CycloNum>,
}

impl CharacterTable {
    pub fn conv(&self) -> &CharConvention {
        &self.conv
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.conv.field()
    }

    pub fn q(&self) -> u32 {
        self.conv.field().q()
    }

    pub fn classes(&self) -> &[ClassRep] {
        &self.classes
    }

    pub fn characters(&self) -> &[CharacterId] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn value(&self, row: usize, col: usize) -> &CycloNum {
        &self.values[row * self.classes.len() + col]
    }

    pub fn row(&self, row: usize) -> &[CycloNum] {
        let n = self.classes.len();
        &self.values[row * n..(row + 1) * n]
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.chars[row].degree(self.q())
    }

    pub fn character_index(&self, id: &CharacterId) -> Option<usize> {
        self.chars.iter().position(|c| c == id)
    }

    pub fn class_index(&self, family: Family, z: Option<FieldElement>, k: Option<u32>, m: Option<u32>) -> Option<usize> {
        self.classes.iter().position(|c| {
            c.family == family && c.params.z == z && c.params.k == k && c.params.m == m
        })
    }

    /// `chi(g)`, using the central-character relation
    /// `chi(X(z)) = chi(A(z)) / chi(1) * chi(X(0))` for families C through I
    /// with `z != 0`; every other class reads the stored entry.
    pub fn value_at(&self, row: usize, col: usize) -> CycloNum {
        let class = &self.classes[col];
        match class.params.z {
            Some(z) if class.family.scales_with_center() && !z.is_zero() => {
                let a_z = self.class_index(Family::A, Some(z), None, None).expect("A(z) present");
                let base = self
                    .class_index(class.family, Some(FieldElement::ZERO), class.params.k, class.params.m)
                    .expect("z = 0 member present");
                let degree = BigRational::from_integer(BigInt::from(self.degree(row)));
                let ratio = self.value(row, a_z).div_rational(&degree).expect("degree is positive");
                &ratio * self.value(row, base)
            }
            _ => self.value(row, col).clone(),
        }
    }
}

/// Builds the whole table for GF(q).
pub fn build_table(field: Arc<FieldCtx>) -> Result<CharacterTable, TableError> {
    let conv = CharConvention::new(field.clone())?;
    let group = Group::new(field.clone());
    let classes = class_representatives(&group);
    let chars = character_ids(&field);
    debug_assert_eq!(chars.len(), classes.len());

    // Value on the z = 0 member of each class, then the central scaling.
    let base_of: Vec<usize> = classes
        .iter()
        .map(|c| {
            let base = c.base_params();
            classes.iter().position(|d| d.family == c.family && d.params == base).unwrap()
        })
        .collect();

    let rows: Vec<Vec<CycloNum>> = chars
        .par_iter()
        .map(|ch| -> Result<Vec<CycloNum>, TableError> {
            let mut base_vals: Vec<Option<CycloNum>> = vec![None; classes.len()];
            for (i, c) in classes.iter().enumerate() {
                if base_of[i] == i {
                    base_vals[i] = Some(character_value(&conv, ch, c)?);
                }
            }
            Ok(classes
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let base = base_vals[base_of[i]].clone().expect("base computed");
                    match *ch {
                        CharacterId::Weil { u, .. } => central_scale(&conv, u, c, base),
                        _ => base,
                    }
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;

    Ok(CharacterTable { conv, group, classes, chars, values: rows.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn table(q: u64) -> CharacterTable {
        build_table(Arc::new(FieldCtx::from_order(q).unwrap())).unwrap()
    }

    #[test]
    fn q3_degrees() {
        let t = table(3);
        assert_eq!(t.len(), 24);
        assert_eq!(t.classes().len(), 24);
        let mut degs: Vec<u64> = (0..t.len()).map(|r| t.degree(r)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 6, 6, 6, 6, 6, 6, 8, 8, 8, 9, 9]);
        assert_eq!(degs.iter().map(|d| d * d).sum::<u64>(), 648);
        // identity column holds the degrees
        let id = t.class_index(Family::A, Some(FieldElement::ZERO), None, None).unwrap();
        for r in 0..t.len() {
            assert_eq!(t.value(r, id), &t.conv().cyclo().from_int(t.degree(r) as i64));
        }
    }

    #[test]
    fn family_counts() {
        for q in [3u64, 5, 7, 9] {
            let f = FieldCtx::from_order(q).unwrap();
            let ids = character_ids(&f);
            let mut by_block = BTreeMap::new();
            for id in &ids {
                let block = match id {
                    CharacterId::Inflated(_) => 0,
                    CharacterId::Kappa0 | CharacterId::Kappa { .. } => 1,
                    CharacterId::Weil { .. } => 2,
                };
                *by_block.entry(block).or_insert(0u64) += 1;
            }
            assert_eq!(by_block[&0], q + 4);
            assert_eq!(by_block[&1], q);
            assert_eq!(by_block[&2], (q - 1) * (q + 4));
            assert_eq!(ids.len() as u64, q * q + 5 * q);
        }
    }

    #[test]
    fn printed_spot_values() {
        let t = table(5);
        let c = t.conv().cyclo().clone();
        let find = |id: CharacterId| t.character_index(&id).unwrap();
        let cls = |fam, z: Option<u32>, k, m| {
            t.class_index(fam, z.map(|z| t.field().element(z).unwrap()), k, m).unwrap()
        };
        let triv = find(CharacterId::Inflated(SlCharacter::Trivial));
        for col in 0..t.classes().len() {
            assert_eq!(t.value(triv, col), &c.one());
        }
        let psi = find(CharacterId::Inflated(SlCharacter::Psi));
        assert_eq!(t.value(psi, cls(Family::D, Some(0), Some(1), None)), &c.one());
        assert_eq!(t.value(psi, cls(Family::H, Some(0), None, None)), &c.zero());
        let theta = find(CharacterId::Inflated(SlCharacter::Theta(1)));
        assert_eq!(t.degree(theta), 4);

        let k0 = find(CharacterId::Kappa0);
        assert_eq!(t.value(k0, cls(Family::H, Some(0), None, None)), &c.from_int(4));
        assert_eq!(t.value(k0, cls(Family::I, Some(0), None, None)), &c.from_int(4));
        assert_eq!(t.value(k0, cls(Family::L, None, None, Some(1))), &c.from_int(-1));
        assert_eq!(t.value(k0, cls(Family::B, None, None, None)), &c.from_int(-1));

        // kappa_{1,n}(I(0)) = -1 - (2/F) Q(lambda)
        let f = t.field().clone();
        let two_sym = f.legendre(f.from_int(2)).unwrap() as i64;
        let gauss = t.conv().gauss_q(f.one()).unwrap();
        for n in 1..=2 {
            let r = find(CharacterId::Kappa { twist: KappaTwist::One, n });
            let expected = c.from_int(-1) - gauss.mul_int(two_sym);
            assert_eq!(t.value(r, cls(Family::I, Some(0), None, None)), &expected);
            let r = find(CharacterId::Kappa { twist: KappaTwist::Nu, n });
            let expected = c.from_int(-1) + gauss.mul_int(two_sym);
            assert_eq!(t.value(r, cls(Family::I, Some(0), None, None)), &expected);
        }

        let om = find(CharacterId::Weil { u: f.one(), factor: SlCharacter::Trivial });
        assert_eq!(t.value(om, cls(Family::A, Some(0), None, None)), &c.from_int(5));
        assert_eq!(t.value(om, cls(Family::B, None, None, None)), &c.zero());
        assert_eq!(t.value(om, cls(Family::L, None, None, Some(2))), &c.zero());
        let om_psi = find(CharacterId::Weil { u: f.one(), factor: SlCharacter::Psi });
        assert_eq!(t.degree(om_psi), 25);
        let om_eta = find(CharacterId::Weil { u: f.nu(), factor: SlCharacter::Eta1 });
        assert_eq!(t.value(om_eta, cls(Family::B, None, None, None)), &c.zero());
        let om_theta = find(CharacterId::Weil { u: f.one(), factor: SlCharacter::Theta(1) });
        for m in 1..=2u32 {
            let expected = (t.conv().sigma_pow(m as i64) + t.conv().sigma_pow(-(m as i64))).mul_int(sign(m));
            assert_eq!(t.value(om_theta, cls(Family::G, Some(0), None, Some(m))), &expected);
        }
    }

    #[test]
    fn weil_rows_are_products() {
        for q in [3u64, 5, 7, 9] {
            let t = table(q);
            for (r, id) in t.characters().iter().enumerate() {
                let CharacterId::Weil { u, factor } = *id else { continue };
                let omega = t.character_index(&CharacterId::Weil { u, factor: SlCharacter::Trivial }).unwrap();
                let infl = t.character_index(&CharacterId::Inflated(factor)).unwrap();
                for col in 0..t.classes().len() {
                    assert_eq!(
                        t.value(r, col),
                        &(t.value(omega, col) * t.value(infl, col)),
                        "q={q} {id} at {}",
                        t.classes()[col].label()
                    );
                }
            }
        }
    }

    #[test]
    fn value_at_matches_stored_entries() {
        for q in [3u64, 5, 9] {
            let t = table(q);
            for r in 0..t.len() {
                for col in 0..t.classes().len() {
                    assert_eq!(t.value_at(r, col), *t.value(r, col));
                }
            }
        }
        let t = table(5);
        let f = t.field().clone();
        let delta = t.conv().delta() as i64;
        for u in f.units() {
            let r = t.character_index(&CharacterId::Weil { u, factor: SlCharacter::Trivial }).unwrap();
            for z in f.elements() {
                let col = t.class_index(Family::C, Some(z), None, None).unwrap();
                assert_eq!(t.value_at(r, col), t.conv().lambda_u(u, z).mul_int(delta));
            }
        }
        let k0 = t.character_index(&CharacterId::Kappa0).unwrap();
        for z in f.elements() {
            let col = t.class_index(Family::D, Some(z), Some(1), None).unwrap();
            assert!(t.value_at(k0, col).is_zero());
        }
    }

    #[test]
    fn index_errors() {
        let t = table(5);
        let conv = t.conv();
        let class = &t.classes()[0];
        assert!(matches!(
            inflated_value(conv, SlCharacter::Theta(3), class),
            Err(TableError::IndexOutOfRange(_))
        ));
        assert!(matches!(
            inflated_value(conv, SlCharacter::Chi(0), class),
            Err(TableError::IndexOutOfRange(_))
        ));
        assert!(matches!(
            omega_value(conv, FieldElement::ZERO, class),
            Err(TableError::Field(FieldError::ZeroArgument))
        ));
        let mut bad = class.clone();
        bad.family = Family::G;
        bad.params.m = Some(9);
        assert!(matches!(inflated_value(conv, SlCharacter::Psi, &bad), Err(TableError::IndexOutOfRange(_))));
    }

    #[test]
    fn kappa_parameter_set() {
        let f = FieldCtx::from_order(7).unwrap();
        assert!(is_kappa_parameter(&f, f.zero(), f.one()));
        assert!(!is_kappa_parameter(&f, f.zero(), f.nu()));
        assert!(is_kappa_parameter(&f, f.nu(), f.nu_pow(3)));
        assert!(!is_kappa_parameter(&f, f.nu(), f.nu_pow(4)));
        assert!(!is_kappa_parameter(&f, f.nu_pow(2), f.nu()));
    }
}

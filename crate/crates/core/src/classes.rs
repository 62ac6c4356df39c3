//! The `q^2 + 5q` conjugacy classes of G: representatives, sizes and
//! centralizer orders, family by family.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::ffield::FieldElement;
use crate::heisgroup::{Group, GroupElement, GroupElementRecord, Sp2Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    L,
    M,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
        Family::H,
        Family::I,
        Family::L,
        Family::M,
    ];

    /// Families parameterised by a central coordinate z.
    pub fn has_z(self) -> bool {
        !matches!(self, Family::B | Family::L | Family::M)
    }

    /// Families whose values scale with the central character (C through I).
    pub fn scales_with_center(self) -> bool {
        self.has_z() && self != Family::A
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
            Family::H => 'H',
            Family::I => 'I',
            Family::L => 'L',
            Family::M => 'M',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Parameters of a class: the central coordinate and the `k` / `m` index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassParams {
    pub z: Option<FieldElement>,
    pub k: Option<u32>,
    pub m: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub family: Family,
    pub params: ClassParams,
    pub rep: GroupElement,
    pub size: u64,
    pub centralizer_order: u64,
}

impl ClassRep {
    /// `|C_G(g)| = |G| / |(g)|`.
    pub fn centralizer_order(&self) -> u64 {
        self.centralizer_order
    }

    /// The same family and index with `z = 0`.
    pub fn base_params(&self) -> ClassParams {
        ClassParams { z: self.params.z.map(|_| FieldElement::ZERO), ..self.params }
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        s.push(self.family.letter());
        if let Some(k) = self.params.k {
            write!(s, "_{k}").unwrap();
        }
        if let Some(m) = self.params.m {
            write!(s, "_{m}").unwrap();
        }
        if let Some(z) = self.params.z {
            write!(s, "({z})").unwrap();
        }
        s
    }
}

/// Class sizes by family, as functions of q.
pub fn family_size(family: Family, q: u64) -> u64 {
    let q2m1 = q * q - 1;
    match family {
        Family::A => 1,
        Family::B => q * q2m1,
        Family::C => q * q,
        Family::D => q.pow(3) * (q + 1),
        Family::E | Family::F => q * q * q2m1 / 2,
        Family::G => q.pow(3) * (q - 1),
        Family::H | Family::I => q * q2m1 / 2,
        Family::L | Family::M => q * q * q2m1,
    }
}

/// The canonical list of class representatives: families in the order
/// A, B, C, D, E, F, G, H, I, L, M, then `k`/`m` ascending, then `z` ascending.
pub fn class_representatives(group: &Group) -> Vec<ClassRep> {
    let f = &**group.field();
    let q = f.q() as u64;
    let order = group.order();
    let nu = f.nu();
    let (zero, one) = (f.zero(), f.one());
    let minus_one = f.neg(one);
    let b = group.singer_cycle();

    let mut out = Vec::with_capacity((q * q + 5 * q) as usize);
    let mut push = |family: Family, params: ClassParams, rep: GroupElement| {
        let size = family_size(family, q);
        out.push(ClassRep { family, params, rep, size, centralizer_order: order / size });
    };
    let semisimple = |s: Sp2Element, z: FieldElement| group.element(s, [zero, zero], z);
    let lower = |diag: FieldElement, sub: FieldElement| Sp2Element::new(diag, zero, sub, diag);

    for z in f.elements() {
        push(Family::A, ClassParams { z: Some(z), ..Default::default() }, group.central(z));
    }
    push(
        Family::B,
        ClassParams::default(),
        group.element(Sp2Element::IDENTITY, [one, zero], zero),
    );
    for z in f.elements() {
        let s = Sp2Element::scalar(f, minus_one);
        push(Family::C, ClassParams { z: Some(z), ..Default::default() }, semisimple(s, z));
    }
    for k in 1..=(q.saturating_sub(3) / 2) as u32 {
        let s = Sp2Element::new(f.nu_pow(k as i64), zero, zero, f.nu_pow(-(k as i64)));
        for z in f.elements() {
            push(Family::D, ClassParams { z: Some(z), k: Some(k), m: None }, semisimple(s, z));
        }
    }
    for z in f.elements() {
        let params = ClassParams { z: Some(z), ..Default::default() };
        push(Family::E, params, semisimple(lower(minus_one, minus_one), z));
    }
    for z in f.elements() {
        let params = ClassParams { z: Some(z), ..Default::default() };
        push(Family::F, params, semisimple(lower(minus_one, f.neg(nu)), z));
    }
    for m in 1..=((q - 1) / 2) as u32 {
        let s = b.pow(m as u64, f);
        for z in f.elements() {
            push(Family::G, ClassParams { z: Some(z), k: None, m: Some(m) }, semisimple(s, z));
        }
    }
    for z in f.elements() {
        let params = ClassParams { z: Some(z), ..Default::default() };
        push(Family::H, params, semisimple(lower(one, one), z));
    }
    for z in f.elements() {
        let params = ClassParams { z: Some(z), ..Default::default() };
        push(Family::I, params, semisimple(lower(one, nu), z));
    }
    for (family, eps) in [(Family::L, one), (Family::M, nu)] {
        for m in 1..=((q - 1) / 2) as u32 {
            let w = [f.nu_pow(m as i64), zero];
            let params = ClassParams { z: None, k: None, m: Some(m) };
            push(family, params, group.element(lower(one, eps), w, zero));
        }
    }
    out
}

/// Serializable view of a class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub family: Family,
    pub label: String,
    pub params: ParamsRecord,
    pub size: u64,
    pub centralizer_order: u64,
    pub rep: GroupElementRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

pub fn class_record(group: &Group, c: &ClassRep) -> ClassRecord {
    ClassRecord {
        family: c.family,
        label: c.label(),
        params: ParamsRecord {
            z: c.params.z.map(|z| group.field().coeffs(z)),
            k: c.params.k,
            m: c.params.m,
        },
        size: c.size,
        centralizer_order: c.centralizer_order,
        rep: group.record(&c.rep),
    }
}

/// Plain-text table in the layout of the class list: one row per family with
/// its size formula and parameter range, then one row per class.
pub fn render_text(group: &Group, classes: &[ClassRep]) -> String {
    let q = group.field().q() as u64;
    let mut s = String::new();
    writeln!(s, "G = H_1({q}) x| Sp(2,{q}),  |G| = {}", group.order()).unwrap();
    writeln!(s, "{} conjugacy classes", classes.len()).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "{:<8} {:>14}  parameters", "family", "|(g)|").unwrap();
    for fam in Family::ALL {
        let params = match fam {
            Family::A | Family::C | Family::E | Family::F | Family::H | Family::I => "z in F".to_string(),
            Family::B => String::new(),
            Family::D if q == 3 => "none for q = 3".to_string(),
            Family::D => format!("z in F, 1 <= k <= {}", (q - 3) / 2),
            Family::G => format!("z in F, 1 <= m <= {}", (q - 1) / 2),
            Family::L | Family::M => format!("1 <= m <= {}", (q - 1) / 2),
        };
        writeln!(s, "{:<8} {:>14}  {}", fam, family_size(fam, q), params).unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "{:<12} {:>14} {:>14}", "class", "size", "|C_G(g)|").unwrap();
    for c in classes {
        writeln!(s, "{:<12} {:>14} {:>14}", c.label(), c.size, c.centralizer_order).unwrap();
    }
    s
}

//! Serialized forms of the table: JSON, CSV, LaTeX and plain text.
//!
//! Every renderer walks the table in its canonical order, so the same input
//! always produces the same bytes.

use std::fmt::Write as _;
use std::io;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charsums::{CharConvention, LAMBDA_LABEL, SQRT_BRANCH_LABEL};
use crate::chartab::{CharacterId, CharacterTable, KappaTwist, SlCharacter};
use crate::classes::{class_record, ClassRecord, Family};
use crate::cyclo::CycloNum;
use crate::ffield::FieldCtx;

/// An integer that is written as a JSON number when it fits in i64 and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(n: &BigInt) -> Self {
        n.to_i64().map(WireInt::Small).unwrap_or_else(|| WireInt::Big(n.to_string()))
    }
}

/// A cyclotomic number as `phi(N)` numerators over one positive denominator,
/// in the basis `1, zeta_N, ..., zeta_N^(phi-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloRecord {
    pub num: Vec<WireInt>,
    pub den: WireInt,
}

impl From<&CycloNum> for CycloRecord {
    fn from(x: &CycloNum) -> Self {
        let phi = x.ctx().degree();
        let zero = BigInt::zero();
        let num = (0..phi).map(|i| WireInt::from(x.numerators().get(i).unwrap_or(&zero))).collect();
        CycloRecord { num, den: WireInt::from(x.denominator()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub nu: Vec<u32>,
    pub lambda: &'static str,
    pub sqrt_branch: &'static str,
    pub conductor: u32,
    pub phi: usize,
    pub delta: i8,
    pub group_order: u64,
}

impl Meta {
    pub fn new(conv: &CharConvention) -> Self {
        let f = conv.field();
        let q = f.q() as u64;
        Meta {
            q: f.q(),
            p: f.p(),
            f: f.f(),
            modulus: f.modulus().to_vec(),
            nu: f.coeffs(f.nu()),
            lambda: LAMBDA_LABEL,
            sqrt_branch: SQRT_BRANCH_LABEL,
            conductor: conv.cyclo().conductor(),
            phi: conv.cyclo().degree(),
            delta: conv.delta(),
            group_order: q.pow(4) * (q * q - 1),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Indices {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRecord {
    pub label: String,
    pub family: String,
    pub indices: Indices,
    pub degree: u64,
}

pub fn character_record(field: &FieldCtx, id: &CharacterId) -> CharacterRecord {
    let mut indices = Indices::default();
    let base = |c: SlCharacter, ix: &mut Indices| match c {
        SlCharacter::Theta(j) => ix.j = Some(j),
        SlCharacter::Chi(i) => ix.i = Some(i),
        _ => {}
    };
    match *id {
        CharacterId::Inflated(c) => base(c, &mut indices),
        CharacterId::Kappa0 => {}
        CharacterId::Kappa { twist, n } => {
            indices.n = Some(n);
            indices.d = Some(match twist {
                KappaTwist::One => "1",
                KappaTwist::Nu => "nu",
            });
        }
        CharacterId::Weil { u, factor } => {
            base(factor, &mut indices);
            indices.u = Some(field.coeffs(u));
        }
    }
    CharacterRecord { label: id.to_string(), family: id.family_name(), indices, degree: id.degree(field.q()) }
}

/// Rounds to 12 decimals and clears negative zero.
fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 { 0.0 } else { r }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRecord {
    pub meta: Meta,
    pub classes: Vec<ClassRecord>,
    pub characters: Vec<CharacterRecord>,
    pub values: Vec<Vec<CycloRecord>>,
    pub approx: Vec<Vec<[f64; 2]>>,
}

pub fn table_record(table: &CharacterTable) -> TableRecord {
    let field = table.field();
    let n = table.classes().len();
    TableRecord {
        meta: Meta::new(table.conv()),
        classes: table.classes().iter().map(|c| class_record(table.group(), c)).collect(),
        characters: table.characters().iter().map(|c| character_record(field, c)).collect(),
        values: (0..table.len()).map(|r| (0..n).map(|c| CycloRecord::from(table.value(r, c))).collect()).collect(),
        approx: (0..table.len())
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let z = table.value(r, c).to_complex();
                        [round12(z.re), round12(z.im)]
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn write_json(table: &CharacterTable, w: impl io::Write) -> io::Result<()> {
    let mut w = io::BufWriter::new(w);
    serde_json::to_writer(&mut w, &table_record(table))?;
    io::Write::write_all(&mut w, b"\n")?;
    io::Write::flush(&mut w)
}

fn complex_cell(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", round12(z.re), round12(z.im))
}

/// One row per character: label, degree, then the complex value on each
/// class to 12 decimals.
pub fn write_csv(table: &CharacterTable, w: impl io::Write) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["character".to_string(), "degree".to_string()];
    header.extend(table.classes().iter().map(|c| c.label()));
    out.write_record(&header)?;
    for (r, id) in table.characters().iter().enumerate() {
        let mut rec = vec![id.to_string(), table.degree(r).to_string()];
        rec.extend(table.row(r).iter().map(|v| complex_cell(v.to_complex())));
        out.write_record(&rec)?;
    }
    out.flush()
}

/// LaTeX for a cyclotomic number, in powers of `\zeta_{N}`.
pub fn latex_cyclo(x: &CycloNum) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let n = x.ctx().conductor();
    let den = x.denominator();
    let mut terms = String::new();
    let mut first = true;
    for (i, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
        let mag = c.abs();
        let root = match i {
            0 => String::new(),
            1 => format!("\\zeta_{{{n}}}"),
            _ => format!("\\zeta_{{{n}}}^{{{i}}}"),
        };
        let coeff = if mag == BigInt::from(1) && i > 0 { String::new() } else { mag.to_string() };
        write!(terms, "{sign}{coeff}{root}").unwrap();
        first = false;
    }
    if den == &BigInt::from(1) {
        terms
    } else {
        format!("\\frac{{{terms}}}{{{den}}}")
    }
}

fn latex_class(c: &crate::classes::ClassRep) -> String {
    let script = format!("\\mathscr{{{}}}", c.family.letter());
    let sub = c.params.k.or(c.params.m).map(|x| format!("_{{{x}}}")).unwrap_or_default();
    let arg = c.params.z.map(|z| format!("({z})")).unwrap_or_default();
    format!("${script}{sub}{arg}$")
}

fn latex_character(id: &CharacterId) -> String {
    let base = |c: SlCharacter| match c {
        SlCharacter::Trivial => String::new(),
        SlCharacter::Eta1 => "\\eta_1".into(),
        SlCharacter::Eta2 => "\\eta_2".into(),
        SlCharacter::Xi1 => "\\xi_1".into(),
        SlCharacter::Xi2 => "\\xi_2".into(),
        SlCharacter::Theta(j) => format!("\\theta_{{{j}}}"),
        SlCharacter::Psi => "\\psi".into(),
        SlCharacter::Chi(i) => format!("\\chi_{{{i}}}"),
    };
    let s = match *id {
        CharacterId::Inflated(SlCharacter::Trivial) => "1_G".into(),
        CharacterId::Inflated(c) => base(c),
        CharacterId::Kappa0 => "\\kappa_0".into(),
        CharacterId::Kappa { twist: KappaTwist::One, n } => format!("\\kappa_{{1,{n}}}"),
        CharacterId::Kappa { twist: KappaTwist::Nu, n } => format!("\\kappa_{{\\nu,{n}}}"),
        CharacterId::Weil { u, factor } => format!("\\omega_{{{u}}}{}", base(factor)),
    };
    format!("${s}$")
}

/// Three tabulars in the layout of the printed table: columns
/// `1, A(z), B, C(0), D_k(0)`, then `E(0), F(0), G_m(0), H(0)`, then
/// `I(0), L_m, M_m`. Rows are split into the inflated, kappa and Weil blocks.
pub fn write_latex(table: &CharacterTable, mut w: impl io::Write) -> io::Result<()> {
    let classes = table.classes();
    let at_zero = |c: &crate::classes::ClassRep| c.params.z.is_none_or(|z| z.is_zero());
    let part = |fams: &[Family]| -> Vec<usize> {
        classes
            .iter()
            .enumerate()
            .filter(|(_, c)| fams.contains(&c.family) && (c.family == Family::A || at_zero(c)))
            .map(|(i, _)| i)
            .collect()
    };
    let parts = [
        part(&[Family::A, Family::B, Family::C, Family::D]),
        part(&[Family::E, Family::F, Family::G, Family::H]),
        part(&[Family::I, Family::L, Family::M]),
    ];
    let block = |id: &CharacterId| match id {
        CharacterId::Inflated(_) => 0,
        CharacterId::Kappa0 | CharacterId::Kappa { .. } => 1,
        CharacterId::Weil { .. } => 2,
    };
    let meta = Meta::new(table.conv());
    writeln!(
        w,
        "% q = {}, zeta_{{{}}} = exp(2 pi i / {}), lambda = {}, sqrt(delta q) = {}",
        meta.q, meta.conductor, meta.conductor, meta.lambda, meta.sqrt_branch
    )?;
    for cols in &parts {
        writeln!(w, "\\begin{{tabular}}{{|c||{}|}} \\hline", vec!["c"; cols.len()].join("|"))?;
        let head: Vec<String> = cols.iter().map(|&c| latex_class(&classes[c])).collect();
        writeln!(w, "{{}} & {} \\\\ \\hline\\hline", head.join(" & "))?;
        let mut prev = None;
        for (r, id) in table.characters().iter().enumerate() {
            if prev.is_some_and(|p| p != block(id)) {
                writeln!(w, "\\hline")?;
            }
            prev = Some(block(id));
            let cells: Vec<String> = cols.iter().map(|&c| format!("${}$", latex_cyclo(table.value(r, c)))).collect();
            writeln!(w, "{} & {} \\\\", latex_character(id), cells.join(" & "))?;
        }
        writeln!(w, "\\hline\n\\end{{tabular}}\n")?;
    }
    Ok(())
}

/// Header with the conventions, then one block per character listing its
/// exact value on every class.
pub fn write_text(table: &CharacterTable, mut w: impl io::Write) -> io::Result<()> {
    let meta = Meta::new(table.conv());
    writeln!(w, "character table of H_1({q}) x| Sp(2,{q}), |G| = {}", meta.group_order, q = meta.q)?;
    writeln!(w, "field GF({}^{}), modulus {:?}, nu = {:?}", meta.p, meta.f, meta.modulus, meta.nu)?;
    writeln!(
        w,
        "values in Q(z), z = exp(2 pi i / {}); lambda = {}; sqrt(delta q) = {} (delta = {})",
        meta.conductor, meta.lambda, meta.sqrt_branch, meta.delta
    )?;
    writeln!(w, "{} characters x {} classes", table.len(), table.classes().len())?;
    let width = table.classes().iter().map(|c| c.label().len()).max().unwrap_or(0);
    for (r, id) in table.characters().iter().enumerate() {
        writeln!(w)?;
        writeln!(w, "{id}  (degree {})", table.degree(r))?;
        for (c, class) in table.classes().iter().enumerate() {
            writeln!(w, "  {:<width$}  {}", class.label(), table.value(r, c))?;
        }
    }
    Ok(())
}

/// Report of the exponential sums behind the table.
#[derive(Clone, Debug, Serialize)]
pub struct SumsRecord {
    pub meta: Meta,
    pub sqrt_delta_q: SumEntry,
    pub gauss: Vec<GaussEntry>,
    pub cubic: Vec<CubicEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumEntry {
    pub exact: String,
    pub value: CycloRecord,
    pub approx: [f64; 2],
}

impl From<&CycloNum> for SumEntry {
    fn from(x: &CycloNum) -> Self {
        let z = x.to_complex();
        SumEntry { exact: x.to_string(), value: x.into(), approx: [round12(z.re), round12(z.im)] }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussEntry {
    pub u: Vec<u32>,
    pub legendre: i8,
    /// `Q(lambda_u)`
    pub sum: SumEntry,
    /// `|Q(lambda_u)|^2`
    pub norm: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicEntry {
    pub d: Vec<u32>,
    pub c: Vec<u32>,
    pub sum: SumEntry,
}

/// `Q(lambda_u)` for every unit u, and the cubic sums
/// `sum_{t != 0} lambda(-(d t^3 + c)/t)` for `d` in `{1, nu}`, `c != 0`.
pub fn sums_record(conv: &CharConvention) -> SumsRecord {
    let f = conv.field();
    let gauss = f
        .units()
        .map(|u| {
            let g = conv.gauss_q(u).expect("u is a unit");
            GaussEntry {
                u: f.coeffs(u),
                legendre: f.legendre(u).expect("u is a unit"),
                sum: (&g).into(),
                norm: g.abs_square().to_string(),
            }
        })
        .collect();
    let mut cubic = Vec::new();
    for d in [f.one(), f.nu()] {
        for c in f.units() {
            cubic.push(CubicEntry { d: f.coeffs(d), c: f.coeffs(c), sum: (&conv.cubic_sum(d, c)).into() });
        }
    }
    SumsRecord { meta: Meta::new(conv), sqrt_delta_q: conv.sqrt_delta_q().into(), gauss, cubic }
}

pub fn render_sums_text(rec: &SumsRecord) -> String {
    let mut s = String::new();
    writeln!(s, "q = {}, delta = {}, zeta = exp(2 pi i / {})", rec.meta.q, rec.meta.delta, rec.meta.conductor).unwrap();
    writeln!(s, "sqrt(delta q) = {} ~ {:?}", rec.sqrt_delta_q.exact, rec.sqrt_delta_q.approx).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "Q(lambda_u) = sum_t lambda(-u t^2 / 2)").unwrap();
    for g in &rec.gauss {
        writeln!(s, "  u = {:?}  (u/F) = {:+}  |Q|^2 = {}  Q = {}", g.u, g.legendre, g.norm, g.sum.exact).unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "cubic sums sum_(t != 0) lambda(-(d t^3 + c)/t)").unwrap();
    for c in &rec.cubic {
        writeln!(s, "  d = {:?}, c = {:?}: {}  ~ {:?}", c.d, c.c, c.sum.exact, c.sum.approx).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::chartab::build_table;

    fn table(q: u64) -> CharacterTable {
        build_table(Arc::new(FieldCtx::from_order(q).unwrap())).unwrap()
    }

    #[test]
    fn json_shape_q3() {
        let t = table(3);
        let mut buf = Vec::new();
        write_json(&t, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["q"], 3);
        assert_eq!(v["meta"]["conductor"], 12);
        assert_eq!(v["meta"]["lambda"], "zeta_p^Tr");
        assert_eq!(v["meta"]["sqrt_branch"], "sum lambda(t^2)");
        assert_eq!(v["classes"].as_array().unwrap().len(), 24);
        assert_eq!(v["characters"].as_array().unwrap().len(), 24);
        let values = v["values"].as_array().unwrap();
        assert_eq!(values.len(), 24);
        assert_eq!(values[0].as_array().unwrap().len(), 24);
        assert_eq!(values[0][0]["num"].as_array().unwrap().len(), 4);
        assert_eq!(v["approx"][0][0][0], 1.0);
    }

    #[test]
    fn renderers_are_deterministic() {
        let a = table(5);
        let b = table(5);
        type Render = fn(&CharacterTable, &mut Vec<u8>) -> io::Result<()>;
        let renders: [Render; 4] = [
            |t, w| write_json(t, w),
            |t, w| write_csv(t, w),
            |t, w| write_latex(t, w),
            |t, w| write_text(t, w),
        ];
        for render in renders {
            let (mut x, mut y) = (Vec::new(), Vec::new());
            render(&a, &mut x).unwrap();
            render(&b, &mut y).unwrap();
            assert_eq!(x, y);
            assert!(!x.is_empty());
        }
    }

    #[test]
    fn csv_layout() {
        let t = table(3);
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 25);
        assert!(lines[0].starts_with("character,degree,A(0),"));
        assert!(lines[1].starts_with("1,1,1.000000000000+0.000000000000i"));
    }

    #[test]
    fn latex_numbers() {
        let t = table(3);
        let c = t.conv().cyclo();
        assert_eq!(latex_cyclo(&c.zero()), "0");
        assert_eq!(latex_cyclo(&c.from_int(-3)), "-3");
        assert_eq!(latex_cyclo(&(c.one() + c.root(1).mul_int(2))), "1+2\\zeta_{12}");
        let half = c.root(2).mul_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(latex_cyclo(&half), "\\frac{\\zeta_{12}^{2}}{2}");
        let mut buf = Vec::new();
        write_latex(&t, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.matches("\\begin{tabular}").count(), 3);
        assert!(s.contains("\\kappa_0"));
    }

    #[test]
    fn sums_report() {
        let conv = CharConvention::new(Arc::new(FieldCtx::from_order(5).unwrap())).unwrap();
        let rec = sums_record(&conv);
        assert_eq!(rec.gauss.len(), 4);
        assert!(rec.gauss.iter().all(|g| g.norm == "5"));
        assert_eq!(rec.cubic.len(), 8);
        assert!(render_sums_text(&rec).contains("sqrt(delta q)"));
    }
}

//! Independent checks of the character table.
//!
//! * exact first and second orthogonality in `Q(zeta_N)`, with a floating
//!   point cross-check;
//! * conjugacy classes recomputed as orbits over the enumerated group;
//! * induced characters `mu^G` summed over every conjugator;
//! * the restriction of `omega_u` to `H_1(q)`, the Weil product rows, the
//!   Gauss-sum identities and the kappa distinctness sums;
//! * a numerical Burnside/Dixon oracle rebuilding the whole table from class
//!   multiplication coefficients.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::charsums::CharConvention;
use crate::chartab::{
    character_value, mu_induced_closed_form, CharacterId, CharacterTable, SlCharacter, TableError,
};
use crate::classes::{ClassRep, Family};
use crate::cyclo::{reduce_i128, CycloCtx, CycloNum};
use crate::ffield::FieldElement;
use crate::heisgroup::{Group, GroupElement, GroupError, Sp2Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    TooLarge(#[from] GroupError),
    #[error("class matrix eigenvalues stayed degenerate after {attempts} random combinations")]
    DegenerateEigenspaces { attempts: u32 },
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Failures listed individually in a report before the rest are only counted.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub passed: bool,
    /// `"exact"` or `"tol=<t>"`.
    pub mode: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub q: u32,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    /// Wall time; left out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, q: u32) -> Self {
        VerificationReport { suite: suite.into(), q, passed: true, checks: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn push(&mut self, id: impl Into<String>, passed: bool, mode: &str, expected: impl fmt::Display, got: impl fmt::Display) {
        self.passed &= passed;
        self.checks.push(CheckRecord {
            id: id.into(),
            passed,
            mode: mode.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    /// Records `count` checks of one kind: a summary line plus the first few
    /// failures verbatim.
    fn push_batch(&mut self, id: &str, mode: &str, count: usize, failures: Vec<CheckRecord>) {
        let n = failures.len();
        let summary_ok = n == 0;
        for f in failures.into_iter().take(MAX_LISTED_FAILURES) {
            self.passed = false;
            self.checks.push(f);
        }
        self.push(id, summary_ok, mode, format!("{count} checks pass"), format!("{} pass, {n} fail", count - n));
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.passed &= other.passed;
        self.elapsed += other.elapsed;
        self.checks.extend(other.checks);
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "suite {} (q = {}): {}", self.suite, self.q, if self.passed { "PASS" } else { "FAIL" }).unwrap();
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            if c.passed {
                writeln!(s, "  {tag} {} [{}] {}", c.id, c.mode, c.got).unwrap();
            } else {
                writeln!(s, "  {tag} {} [{}] expected {} got {}", c.id, c.mode, c.expected, c.got).unwrap();
            }
        }
        s
    }
}

fn exact_record(id: String, expected: &CycloNum, got: &CycloNum) -> Option<CheckRecord> {
    (expected != got).then(|| CheckRecord {
        id,
        passed: false,
        mode: "exact".into(),
        expected: expected.to_string(),
        got: got.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Orthogonality

/// Vectors of cyclotomic numbers scaled to a common integer denominator.
struct ScaledVectors {
    den: Vec<i64>,
    /// `entries[v][k]`: numerators of `den[v] * x[v][k]`.
    entries: Vec<Vec<Vec<i64>>>,
    /// Same for the complex conjugates.
    conj: Vec<Vec<Vec<i64>>>,
}

/// Bound on the scaled numerators so that triple products stay inside i128.
const SCALED_BOUND: i64 = 1 << 40;

fn scale_vectors(vectors: &[Vec<CycloNum>]) -> Option<ScaledVectors> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    let mut den = Vec::with_capacity(vectors.len());
    let mut entries = Vec::with_capacity(vectors.len());
    let mut conj = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut d = 1i64;
        for x in v {
            d = d.lcm(&x.denominator().to_i64()?);
        }
        let to_ints = |x: &CycloNum| -> Option<Vec<i64>> {
            let y = x.mul_int(d);
            debug_assert!(y.denominator() == &BigInt::from(1));
            y.numerators()
                .iter()
                .map(|c| c.to_i64().filter(|c| c.abs() < SCALED_BOUND))
                .collect()
        };
        entries.push(v.iter().map(to_ints).collect::<Option<Vec<_>>>()?);
        conj.push(v.iter().map(|x| to_ints(&x.conj())).collect::<Option<Vec<_>>>()?);
        den.push(d);
    }
    Some(ScaledVectors { den, entries, conj })
}

/// `sum_k w_k a_k conj(b_k)` with everything as integer polynomials in zeta,
/// reduced once at the end.
fn weighted_dot(ctx: &CycloCtx, a: &[Vec<i64>], b_conj: &[Vec<i64>], w: &[i64], buf: &mut [i128]) -> Option<Vec<i128>> {
    buf.iter_mut().for_each(|c| *c = 0);
    for ((x, y), &wk) in a.iter().zip(b_conj).zip(w) {
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let xw = xi as i128 * wk as i128;
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    buf[i + j] = buf[i + j].checked_add(xw.checked_mul(yj as i128)?)?;
                }
            }
        }
    }
    reduce_i128(ctx, buf)
}

/// All Hermitian products `<v_a, v_b> = sum_k w_k v_a[k] conj(v_b[k])` for
/// `a <= b`, exactly.
fn exact_gram(ctx: &std::sync::Arc<CycloCtx>, vectors: &[Vec<CycloNum>], weights: &[i64]) -> Vec<(usize, usize, CycloNum)> {
    let n = vectors.len();
    let phi = ctx.degree();
    let scaled = scale_vectors(vectors);
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut buf = vec![0i128; 2 * phi];
            let scaled = scaled.as_ref();
            (a..n)
                .map(|b| {
                    let fast = scaled.and_then(|s| {
                        let red = weighted_dot(ctx, &s.entries[a], &s.conj[b], weights, &mut buf)?;
                        let coeffs: Vec<BigRational> = red
                            .into_iter()
                            .map(|c| BigRational::new(BigInt::from(c), BigInt::from(s.den[a]) * s.den[b]))
                            .collect();
                        Some(ctx.from_coeffs(&coeffs))
                    });
                    let value = fast.unwrap_or_else(|| {
                        let mut acc = ctx.zero();
                        for ((x, y), &w) in vectors[a].iter().zip(&vectors[b]).zip(weights) {
                            acc += &(x * &y.conj()).mul_int(w);
                        }
                        acc
                    });
                    (a, b, value)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn numeric_gram(vectors: &[Vec<Complex64>], weights: &[f64]) -> Vec<(usize, usize, Complex64)> {
    let n = vectors.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            (a..n).map(move |b| {
                let s = vectors[a]
                    .iter()
                    .zip(&vectors[b])
                    .zip(weights)
                    .map(|((x, y), w)| x * y.conj() * w)
                    .sum::<Complex64>();
                (a, b, s)
            })
        })
        .collect()
}

/// Every entry through [`CharacterTable::value_at`], row-major.
fn table_values(table: &CharacterTable) -> Vec<Vec<CycloNum>> {
    (0..table.len())
        .into_par_iter()
        .map(|r| (0..table.classes().len()).map(|c| table.value_at(r, c)).collect())
        .collect()
}

/// Default tolerance of the floating point cross-checks.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// First orthogonality: `<chi, psi> = (1/|G|) sum_classes |(g)| chi(g) conj(psi(g))`
/// is 1 on the diagonal and 0 elsewhere, exactly; then again in floating
/// point at [`NUMERIC_TOLERANCE`]. Also checks the degree column.
pub fn check_row_orthogonality(table: &CharacterTable) -> VerificationReport {
    let start = Instant::now();
    let q = table.q();
    let ctx = table.conv().cyclo();
    let order = table.group().order();
    let mut report = VerificationReport::new("row-orthogonality", q);

    let id_col = table.class_index(Family::A, Some(FieldElement::ZERO), None, None).expect("identity class");
    let mut degree_failures = Vec::new();
    let mut sum_sq = BigInt::from(0);
    for r in 0..table.len() {
        let v = table.value(r, id_col);
        let positive_int = v.as_rational().filter(|x| x.is_integer() && *x > BigRational::from_integer(0.into()));
        match positive_int {
            Some(d) => sum_sq += d.numer() * d.numer(),
            None => degree_failures.push(CheckRecord {
                id: format!("degree of {}", table.characters()[r]),
                passed: false,
                mode: "exact".into(),
                expected: "positive integer".into(),
                got: v.to_string(),
            }),
        }
    }
    report.push_batch("degrees are positive integers", "exact", table.len(), degree_failures);
    report.push("sum of squared degrees = |G|", sum_sq == BigInt::from(order), "exact", order, &sum_sq);

    let values = table_values(table);
    let sizes: Vec<i64> = table.classes().iter().map(|c| c.size as i64).collect();
    let gram = exact_gram(ctx, &values, &sizes);
    let g = ctx.from_int(order as i64);
    let zero = ctx.zero();
    let failures: Vec<CheckRecord> = gram
        .iter()
        .filter_map(|(a, b, v)| {
            let expected = if a == b { &g } else { &zero };
            let label = format!("<{}, {}> * |G|", table.characters()[*a], table.characters()[*b]);
            exact_record(label, expected, v)
        })
        .collect();
    report.push_batch(&format!("row inner products, {} pairs", gram.len()), "exact", gram.len(), failures);

    let approx: Vec<Vec<Complex64>> = values.iter().map(|row| row.iter().map(CycloNum::to_complex).collect()).collect();
    let wf: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let numeric = numeric_gram(&approx, &wf);
    let failures = numeric_failures(&numeric, |_, _| order as f64, |a| table.characters()[a].to_string());
    report.push_batch("row inner products (numeric)", &format!("tol={NUMERIC_TOLERANCE:e}"), numeric.len(), failures);
    report.timed(start)
}

fn numeric_failures(
    gram: &[(usize, usize, Complex64)],
    norm: impl Fn(usize, usize) -> f64,
    name: impl Fn(usize) -> String,
) -> Vec<CheckRecord> {
    gram.iter()
        .filter_map(|&(a, b, v)| {
            let expected = if a == b { 1.0 } else { 0.0 };
            let got = v / norm(a, b);
            ((got - expected).norm() > NUMERIC_TOLERANCE).then(|| CheckRecord {
                id: format!("({}, {})", name(a), name(b)),
                passed: false,
                mode: format!("tol={NUMERIC_TOLERANCE:e}"),
                expected: expected.to_string(),
                got: format!("{got}"),
            })
        })
        .collect()
}

/// Second orthogonality: `sum_chi chi(g) conj(chi(h)) = |C_G(g)|` if g and h
/// are the same class and 0 otherwise, exactly and numerically.
pub fn check_column_orthogonality(table: &CharacterTable) -> VerificationReport {
    let start = Instant::now();
    let q = table.q();
    let ctx = table.conv().cyclo();
    let classes = table.classes();
    let mut report = VerificationReport::new("column-orthogonality", q);

    let rows = table_values(table);
    let columns: Vec<Vec<CycloNum>> =
        (0..classes.len()).map(|c| rows.iter().map(|row| row[c].clone()).collect()).collect();
    let ones = vec![1i64; table.len()];
    let gram = exact_gram(ctx, &columns, &ones);
    let zero = ctx.zero();
    let failures: Vec<CheckRecord> = gram
        .iter()
        .filter_map(|(a, b, v)| {
            let expected =
                if a == b { ctx.from_int(classes[*a].centralizer_order as i64) } else { zero.clone() };
            exact_record(format!("columns {} / {}", classes[*a].label(), classes[*b].label()), &expected, v)
        })
        .collect();
    report.push_batch(&format!("column products, {} pairs", gram.len()), "exact", gram.len(), failures);

    let approx: Vec<Vec<Complex64>> = columns.iter().map(|c| c.iter().map(CycloNum::to_complex).collect()).collect();
    let numeric = numeric_gram(&approx, &vec![1.0; table.len()]);
    let cent: Vec<f64> = classes.iter().map(|c| c.centralizer_order as f64).collect();
    let failures = numeric_failures(&numeric, |a, b| (cent[a] * cent[b]).sqrt(), |a| classes[a].label());
    report.push_batch("column products (numeric)", &format!("tol={NUMERIC_TOLERANCE:e}"), numeric.len(), failures);
    report.timed(start)
}

// ---------------------------------------------------------------------------
// Brute force over the group

/// Dense numbering of the elements of G: `index = sl2 * q^3 + x q^2 + y q + z`.
#[derive(Clone, Debug)]
pub struct ElementIndex {
    q: usize,
    sl2: Vec<Sp2Element>,
    /// `sl2_of[a q^3 + b q^2 + c q + d]` for `s = [[a, b], [c, d]]`.
    sl2_of: Vec<u32>,
}

impl ElementIndex {
    pub fn new(group: &Group, cap: u64) -> Result<Self, VerifyError> {
        let order = group.order();
        if order > cap {
            return Err(GroupError::TooLarge { order, cap }.into());
        }
        let q = group.field().q() as usize;
        let sl2 = group.sl2_elements();
        let mut sl2_of = vec![u32::MAX; q.pow(4)];
        for (i, s) in sl2.iter().enumerate() {
            sl2_of[Self::sl2_key(q, s)] = i as u32;
        }
        Ok(ElementIndex { q, sl2, sl2_of })
    }

    fn sl2_key(q: usize, s: &Sp2Element) -> usize {
        ((s.a.code() as usize * q + s.b.code() as usize) * q + s.c.code() as usize) * q + s.d.code() as usize
    }

    pub fn len(&self) -> usize {
        self.sl2.len() * self.q.pow(3)
    }

    pub fn is_empty(&self) -> bool {
        self.sl2.is_empty()
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        let q = self.q;
        let s = self.sl2_of[Self::sl2_key(q, &g.s)] as usize;
        ((s * q + g.w[0].code() as usize) * q + g.w[1].code() as usize) * q + g.z.code() as usize
    }

    pub fn element(&self, i: usize) -> GroupElement {
        let q = self.q;
        let code = |c: usize| FieldElement::from_code_unchecked(c as u32);
        GroupElement {
            s: self.sl2[i / q.pow(3)],
            w: [code(i / (q * q) % q), code(i / q % q)],
            z: code(i % q),
        }
    }
}

/// Conjugacy classes of G recomputed as orbits.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub index: ElementIndex,
    /// Orbit number of every element.
    pub orbit_of: Vec<u32>,
    pub orbit_sizes: Vec<u64>,
    /// Orbit of each closed-form representative, in class order.
    pub rep_orbit: Vec<u32>,
}

impl ClassPartition {
    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }

    /// Column of the closed-form class containing `g`.
    pub fn class_of(&self, g: &GroupElement) -> Option<usize> {
        let orbit = self.orbit_of[self.index.index(g)];
        self.rep_orbit.iter().position(|&o| o == orbit)
    }
}

/// Orbits of G acting on itself by conjugation, found by conjugating each
/// not-yet-visited element by every element of G, then matched against the
/// closed-form class list.
pub fn bruteforce_classes(
    group: &Group,
    classes: &[ClassRep],
    cap: u64,
) -> Result<(ClassPartition, VerificationReport), VerifyError> {
    let start = Instant::now();
    let q = group.field().q();
    let index = ElementIndex::new(group, cap)?;
    let elements: Vec<GroupElement> = (0..index.len()).map(|i| index.element(i)).collect();
    let mut orbit_of = vec![u32::MAX; elements.len()];
    let mut orbit_sizes = Vec::new();
    for i in 0..elements.len() {
        if orbit_of[i] != u32::MAX {
            continue;
        }
        let id = orbit_sizes.len() as u32;
        let g = elements[i];
        let members: Vec<usize> = elements.par_iter().map(|x| index.index(&group.conjugate(x, &g))).collect();
        let mut size = 0;
        for m in members {
            if orbit_of[m] == u32::MAX {
                orbit_of[m] = id;
                size += 1;
            }
        }
        orbit_sizes.push(size);
    }
    let rep_orbit: Vec<u32> = classes.iter().map(|c| orbit_of[index.index(&c.rep)]).collect();

    let mut report = VerificationReport::new("classes", q);
    report.push("orbit count", orbit_sizes.len() == classes.len(), "exact", classes.len(), orbit_sizes.len());
    let mut distinct = rep_orbit.clone();
    distinct.sort_unstable();
    distinct.dedup();
    report.push(
        "representatives lie in distinct orbits",
        distinct.len() == classes.len(),
        "exact",
        classes.len(),
        distinct.len(),
    );
    let failures: Vec<CheckRecord> = classes
        .iter()
        .zip(&rep_orbit)
        .filter(|(c, &o)| orbit_sizes[o as usize] != c.size)
        .map(|(c, &o)| CheckRecord {
            id: format!("size of {}", c.label()),
            passed: false,
            mode: "exact".into(),
            expected: c.size.to_string(),
            got: orbit_sizes[o as usize].to_string(),
        })
        .collect();
    report.push_batch("orbit sizes match the class list", "exact", classes.len(), failures);
    let total: u64 = orbit_sizes.iter().sum();
    report.push("orbits cover G", total == group.order(), "exact", group.order(), total);
    let partition = ClassPartition { index, orbit_of, orbit_sizes, rep_orbit };
    Ok((partition, report.timed(start)))
}

/// Reads `x = (s, w, z)` as an element `k_(a,x,y,z)` of the Sylow p-subgroup
/// K (s upper unitriangular), returning `(a, y)`.
pub fn sylow_coordinates(x: &GroupElement) -> Option<(FieldElement, FieldElement)> {
    let s = &x.s;
    let unitriangular = s.a == FieldElement::ONE && s.d == FieldElement::ONE && s.c.is_zero();
    unitriangular.then_some((s.b, x.w[1]))
}

/// `mu^G(g) = (1/|K|) sum_{x in G} mu°(x g x^-1)`, with `mu°` the extension of
/// `mu_{u1,u2}(k_(a,x,y,z)) = lambda(u1 a + u2 y)` by zero off K.
pub fn bruteforce_induced_mu(
    conv: &CharConvention,
    group: &Group,
    u1: FieldElement,
    u2: FieldElement,
    g: &GroupElement,
    cap: u64,
) -> Result<CycloNum, VerifyError> {
    let f = &**conv.field();
    let elements: Vec<GroupElement> = group.enumerate(cap)?.collect();
    let hits: Vec<FieldElement> = elements
        .par_iter()
        .filter_map(|x| {
            let (a, y) = sylow_coordinates(&group.conjugate(x, g))?;
            Some(f.add(f.mul(u1, a), f.mul(u2, y)))
        })
        .collect();
    let sum = conv.sum_lambda(hits);
    let k_order = (f.q() as i64).pow(4);
    Ok(sum.div_rational(&BigRational::from_integer(k_order.into())).expect("nonzero"))
}

/// Brute-force `mu^G` against the closed forms on every class representative
/// for the given parameter pairs.
pub fn check_induced_mu(
    table: &CharacterTable,
    pairs: &[(FieldElement, FieldElement)],
    cap: u64,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let conv = table.conv();
    let group = table.group();
    let f = conv.field();
    let mut report = VerificationReport::new("induced", table.q());
    for &(u1, u2) in pairs {
        let mut failures = Vec::new();
        for class in table.classes() {
            let closed = mu_induced_closed_form(conv, u1, u2, class)?;
            let brute = bruteforce_induced_mu(conv, group, u1, u2, &class.rep, cap)?;
            let label = format!("mu_({},{}) at {}", f.coeffs(u1).iter().map(u32::to_string).collect::<Vec<_>>().join(":"),
                f.coeffs(u2).iter().map(u32::to_string).collect::<Vec<_>>().join(":"), class.label());
            failures.extend(exact_record(label, &closed, &brute));
        }
        report.push_batch(
            &format!("mu^G_({u1},{u2}) brute force = closed form"),
            "exact",
            table.classes().len(),
            failures,
        );
    }
    Ok(report.timed(start))
}

/// The parameter pairs of the kappa rows: `(0,1)`, `(1, nu^n)`, `(nu, nu^n)`.
pub fn kappa_pairs(table: &CharacterTable) -> Vec<(FieldElement, FieldElement)> {
    table.characters().iter().filter_map(|c| c.kappa_parameters(table.field())).collect()
}

// ---------------------------------------------------------------------------
// Closed-form consistency

/// `omega_u(A(z)) = q lambda_u(z)` and `omega_u(B) = 0` for every u, so the
/// restriction to `H_1(q)` is `lambda~_u`; distinct u give distinct rows.
pub fn check_omega_restriction(table: &CharacterTable) -> VerificationReport {
    let start = Instant::now();
    let conv = table.conv();
    let f = conv.field();
    let q = f.q() as i64;
    let ctx = conv.cyclo();
    let mut report = VerificationReport::new("omega-restriction", table.q());
    let b_col = table.class_index(Family::B, None, None, None).expect("class B");
    let mut failures = Vec::new();
    let mut count = 0;
    let mut rows = Vec::new();
    for u in f.units() {
        let r = table
            .character_index(&CharacterId::Weil { u, factor: SlCharacter::Trivial })
            .expect("omega row");
        rows.push(r);
        for z in f.elements() {
            let col = table.class_index(Family::A, Some(z), None, None).expect("class A(z)");
            count += 1;
            failures.extend(exact_record(
                format!("omega[u={u}](A({z}))"),
                &conv.lambda_u(u, z).mul_int(q),
                &table.value_at(r, col),
            ));
        }
        count += 1;
        failures.extend(exact_record(format!("omega[u={u}](B)"), &ctx.zero(), &table.value_at(r, b_col)));
    }
    report.push_batch("omega_u restricted to H_1(q) is lambda~_u", "exact", count, failures);

    let a_cols: Vec<usize> = f
        .elements()
        .map(|z| table.class_index(Family::A, Some(z), None, None).unwrap())
        .collect();
    let mut distinct = 0;
    let mut pairs = 0;
    for (i, &r) in rows.iter().enumerate() {
        for &s in &rows[i + 1..] {
            pairs += 1;
            if a_cols.iter().any(|&c| table.value(r, c) != table.value(s, c)) {
                distinct += 1;
            }
        }
    }
    report.push("omega_u rows differ on the center", distinct == pairs, "exact", pairs, distinct);
    report.timed(start)
}

/// Product rows equal `omega_u * (inflated row)` on every class.
pub fn check_weil_products(table: &CharacterTable) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("weil-products", table.q());
    let n = table.classes().len();
    let rows: Vec<(usize, usize, usize)> = table
        .characters()
        .iter()
        .enumerate()
        .filter_map(|(r, id)| match *id {
            CharacterId::Weil { u, factor } if factor != SlCharacter::Trivial => Some((
                r,
                table.character_index(&CharacterId::Weil { u, factor: SlCharacter::Trivial })?,
                table.character_index(&CharacterId::Inflated(factor))?,
            )),
            _ => None,
        })
        .collect();
    let failures: Vec<CheckRecord> = rows
        .par_iter()
        .flat_map_iter(|&(r, omega, infl)| {
            (0..n).filter_map(move |c| {
                let product = table.value_at(omega, c) * table.value_at(infl, c);
                exact_record(
                    format!("{} at {}", table.characters()[r], table.classes()[c].label()),
                    &product,
                    &table.value_at(r, c),
                )
            })
        })
        .collect();
    report.push_batch("product rows = omega_u x inflated", "exact", rows.len() * n, failures);

    // The stored table against a fresh evaluation of the closed forms.
    let fresh: Vec<CheckRecord> = (0..table.len())
        .into_par_iter()
        .flat_map_iter(|r| {
            table.classes().iter().enumerate().filter_map(move |(c, class)| {
                let v = character_value(table.conv(), &table.characters()[r], class).ok()?;
                exact_record(format!("{} at {}", table.characters()[r], class.label()), &v, &table.value_at(r, c))
            })
        })
        .collect();
    report.push_batch("value_at = closed form on every class", "exact", table.len() * n, fresh);
    report.timed(start)
}

/// `|Q(lambda_u)|^2 = q`, `Q(lambda_u) = (u/F) Q(lambda)` and
/// `sqrt(delta q)^2 = delta q`.
pub fn check_gauss_sums(conv: &CharConvention) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let f = conv.field();
    let q = f.q() as i64;
    let ctx = conv.cyclo();
    let mut report = VerificationReport::new("gauss-sums", f.q());
    let base = conv.gauss_q(f.one()).map_err(TableError::from)?;
    let mut failures = Vec::new();
    for u in f.units() {
        let g = conv.gauss_q(u).map_err(TableError::from)?;
        failures.extend(exact_record(format!("|Q(lambda_{u})|^2"), &ctx.from_int(q), &g.abs_square()));
        let sym = f.legendre(u).map_err(TableError::from)? as i64;
        failures.extend(exact_record(format!("Q(lambda_{u}) = ({u}/F) Q(lambda)"), &base.mul_int(sym), &g));
    }
    report.push_batch("Gauss sums", "exact", 2 * (f.q() as usize - 1), failures);
    let s = conv.sqrt_delta_q();
    let dq = ctx.from_int(conv.delta() as i64 * q);
    let sq = s * s;
    report.push("sqrt(delta q)^2 = delta q", sq == dq, "exact", &dq, &sq);
    Ok(report.timed(start))
}

/// `kappa0(H(0)) + kappa0(I(0)) = 2q - 2` while every `kappa_{d,n}` gives -2.
pub fn check_kappa_distinctness(table: &CharacterTable) -> VerificationReport {
    let start = Instant::now();
    let q = table.q() as i64;
    let ctx = table.conv().cyclo();
    let mut report = VerificationReport::new("kappa", table.q());
    let zero = Some(FieldElement::ZERO);
    let h = table.class_index(Family::H, zero, None, None).expect("H(0)");
    let i = table.class_index(Family::I, zero, None, None).expect("I(0)");
    for (r, id) in table.characters().iter().enumerate() {
        let expected = match id {
            CharacterId::Kappa0 => ctx.from_int(2 * q - 2),
            CharacterId::Kappa { .. } => ctx.from_int(-2),
            _ => continue,
        };
        let got = table.value(r, h) + table.value(r, i);
        report.push(format!("{id}(H(0)) + {id}(I(0))"), got == expected, "exact", &expected, &got);
    }
    report.timed(start)
}

// ---------------------------------------------------------------------------
// Burnside / Dixon oracle

/// Outcome of [`burnside_oracle`].
#[derive(Clone, Debug)]
pub struct BurnsideResult {
    /// Recovered characters, columns in the class order of the table.
    pub characters: Vec<Vec<Complex64>>,
    /// `row_match[i]`: the table row matched by recovered character i.
    pub row_match: Vec<usize>,
    pub max_error: f64,
    /// Random combinations tried before the eigenvalues separated.
    pub attempts: u32,
    pub report: VerificationReport,
}

const MAX_ATTEMPTS: u32 = 8;

/// Rebuilds the table numerically from the class multiplication
/// coefficients `a_ijk = #{x in C_i : x^-1 g_k in C_j}`.
///
/// The vectors `w_chi(k) = |C_k| chi(g_k) / chi(1)` are the common
/// eigenvectors of the matrices `(M_i)_{jk} = a_ijk`; a random combination of
/// the `M_i` splits them. Recovered rows are matched to the table up to
/// permutation; classes are matched through the brute-force partition.
pub fn burnside_oracle(
    table: &CharacterTable,
    tolerance: f64,
    seed: u64,
    cap: u64,
) -> Result<BurnsideResult, VerifyError> {
    let start = Instant::now();
    let group = table.group();
    let classes = table.classes();
    let r = classes.len();
    let (partition, _) = bruteforce_classes(group, classes, cap)?;
    let column_of_orbit: Vec<usize> = {
        let mut v = vec![usize::MAX; partition.orbit_count()];
        for (col, &o) in partition.rep_orbit.iter().enumerate() {
            v[o as usize] = col;
        }
        v
    };
    if column_of_orbit.contains(&usize::MAX) {
        let mut report = VerificationReport::new("burnside", table.q());
        report.push("class partition matches", false, "exact", r, partition.orbit_count());
        return Ok(BurnsideResult {
            characters: Vec::new(),
            row_match: Vec::new(),
            max_error: f64::INFINITY,
            attempts: 0,
            report: report.timed(start),
        });
    }
    let index = &partition.index;
    let class_of = |g: &GroupElement| column_of_orbit[partition.orbit_of[index.index(g)] as usize];

    // a[i][j][k]
    let per_k: Vec<Vec<f64>> = classes
        .par_iter()
        .map(|ck| {
            let mut counts = vec![0f64; r * r];
            for e in 0..index.len() {
                let x = index.element(e);
                let y = group.multiply(&group.inverse(&x), &ck.rep);
                counts[class_of(&x) * r + class_of(&y)] += 1.0;
            }
            counts
        })
        .collect();

    let sizes: Vec<f64> = classes.iter().map(|c| c.size as f64).collect();
    let id_col = table.class_index(Family::A, Some(FieldElement::ZERO), None, None).expect("identity class");
    let order = group.order() as f64;

    let mut attempts = 0;
    let characters = loop {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(VerifyError::DegenerateEigenspaces { attempts: MAX_ATTEMPTS });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempts as u64 - 1));
        let coeffs: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = DMatrix::from_fn(r, r, |j, k| (0..r).map(|i| coeffs[i] * per_k[k][i * r + j]).sum::<f64>());
        let eig: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        let scale = eig.iter().map(|e| e.norm()).fold(1.0, f64::max);
        let separated = eig
            .iter()
            .enumerate()
            .all(|(a, x)| eig[a + 1..].iter().all(|y| (x - y).norm() > 1e-6 * scale));
        if !separated {
            continue;
        }
        let mc = m.map(|x| Complex64::new(x, 0.0));
        let chars: Vec<Vec<Complex64>> = eig
            .iter()
            .map(|&lambda| {
                let shifted = &mc - DMatrix::<Complex64>::identity(r, r) * lambda;
                let svd = shifted.svd(false, true);
                let v_t = svd.v_t.expect("requested V^T");
                let (best, _) = svd
                    .singular_values
                    .iter()
                    .enumerate()
                    .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
                let v: Vec<Complex64> = v_t.row(best).iter().map(|x| x.conj()).collect();
                let v1 = v[id_col];
                let w: Vec<Complex64> = v.iter().map(|x| x / v1).collect();
                let norm: f64 = w.iter().zip(&sizes).map(|(x, s)| x.norm_sqr() / s).sum();
                let degree = (order / norm).sqrt();
                w.iter().zip(&sizes).map(|(x, s)| x * degree / s).collect()
            })
            .collect();
        break chars;
    };

    let approx: Vec<Vec<Complex64>> =
        (0..table.len()).map(|row| table.row(row).iter().map(CycloNum::to_complex).collect()).collect();
    let mut used = vec![false; table.len()];
    let mut row_match = Vec::with_capacity(characters.len());
    let mut max_error: f64 = 0.0;
    for ch in &characters {
        let (best, err) = approx
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, row)| (i, row.iter().zip(ch).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)))
            .fold((usize::MAX, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        if best != usize::MAX {
            used[best] = true;
        }
        row_match.push(best);
        max_error = max_error.max(err);
    }

    let mut report = VerificationReport::new("burnside", table.q());
    report.push("recovered character count", characters.len() == table.len(), "exact", table.len(), characters.len());
    let mut recovered: Vec<u64> = characters.iter().map(|c| c[id_col].re.round() as u64).collect();
    let mut expected: Vec<u64> = (0..table.len()).map(|row| table.degree(row)).collect();
    recovered.sort_unstable();
    expected.sort_unstable();
    report.push("recovered degree multiset", recovered == expected, "exact", format!("{expected:?}"), format!("{recovered:?}"));
    let real_positive = characters.iter().all(|c| c[id_col].re > 0.0 && c[id_col].im.abs() < tolerance);
    report.push("identity column real positive", real_positive, &format!("tol={tolerance:e}"), true, real_positive);
    report.push(
        "rows match the table up to permutation",
        max_error < tolerance && used.iter().all(|&u| u),
        &format!("tol={tolerance:e}"),
        format!("max error < {tolerance:e}"),
        format!("max error {max_error:e}"),
    );
    Ok(BurnsideResult { characters, row_match, max_error, attempts, report: report.timed(start) })
}

// ---------------------------------------------------------------------------
// Suites

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Orthogonality,
    Classes,
    Induced,
    Weil,
    Gauss,
    Kappa,
    Burnside,
}

impl Suite {
    /// Everything except the Burnside oracle.
    pub const DEFAULT: [Suite; 6] =
        [Suite::Orthogonality, Suite::Classes, Suite::Induced, Suite::Weil, Suite::Gauss, Suite::Kappa];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Classes => "classes",
            Suite::Induced => "induced",
            Suite::Weil => "weil",
            Suite::Gauss => "gauss",
            Suite::Kappa => "kappa",
            Suite::Burnside => "burnside",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        [Suite::Burnside].into_iter().chain(Suite::DEFAULT).find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub cap: u64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: crate::heisgroup::DEFAULT_ENUMERATION_CAP, tolerance: 1e-8, seed: 0 }
    }
}

pub fn run_suite(table: &CharacterTable, suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let mut report = VerificationReport::new(suite.name(), table.q());
    match suite {
        Suite::Orthogonality => {
            report.merge(check_row_orthogonality(table));
            report.merge(check_column_orthogonality(table));
        }
        Suite::Classes => report.merge(bruteforce_classes(table.group(), table.classes(), opts.cap)?.1),
        Suite::Induced => report.merge(check_induced_mu(table, &kappa_pairs(table), opts.cap)?),
        Suite::Weil => {
            report.merge(check_weil_products(table));
            report.merge(check_omega_restriction(table));
        }
        Suite::Gauss => report.merge(check_gauss_sums(table.conv())?),
        Suite::Kappa => report.merge(check_kappa_distinctness(table)),
        Suite::Burnside => report.merge(burnside_oracle(table, opts.tolerance, opts.seed, opts.cap)?.report),
    }
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::chartab::build_table;
    use crate::ffield::FieldCtx;

    fn table(q: u64) -> CharacterTable {
        build_table(Arc::new(FieldCtx::from_order(q).unwrap())).unwrap()
    }

    #[test]
    fn orthogonality_q3() {
        let t = table(3);
        let rows = check_row_orthogonality(&t);
        assert!(rows.passed, "{}", rows.render_text());
        assert!(rows.checks.iter().any(|c| c.id.contains("276") || c.id.contains("300")));
        let cols = check_column_orthogonality(&t);
        assert!(cols.passed, "{}", cols.render_text());
    }

    #[test]
    fn orthogonality_detects_a_corrupted_entry() {
        let t = table(3);
        let values: Vec<Vec<CycloNum>> = table_values(&t);
        let mut bad = values.clone();
        bad[5][7] = &bad[5][7] + &t.conv().cyclo().one();
        let sizes: Vec<i64> = t.classes().iter().map(|c| c.size as i64).collect();
        let good = exact_gram(t.conv().cyclo(), &values, &sizes);
        let broken = exact_gram(t.conv().cyclo(), &bad, &sizes);
        assert_ne!(good, broken);
    }

    #[test]
    fn gram_fast_path_matches_slow_path() {
        let t = table(5);
        let values: Vec<Vec<CycloNum>> = table_values(&t).into_iter().take(6).collect();
        let w: Vec<i64> = t.classes().iter().map(|c| c.size as i64).collect();
        let fast = exact_gram(t.conv().cyclo(), &values, &w);
        for (a, b, v) in fast {
            let mut acc = t.conv().cyclo().zero();
            for ((x, y), &wk) in values[a].iter().zip(&values[b]).zip(&w) {
                acc += &(x * &y.conj()).mul_int(wk);
            }
            assert_eq!(v, acc);
        }
    }

    #[test]
    fn element_index_round_trip() {
        let f = Arc::new(FieldCtx::from_order(3).unwrap());
        let g = Group::new(f);
        let idx = ElementIndex::new(&g, u64::MAX).unwrap();
        assert_eq!(idx.len(), 648);
        for (i, e) in g.enumerate(u64::MAX).unwrap().enumerate() {
            assert_eq!(idx.index(&e), i);
            assert_eq!(idx.element(i), e);
        }
    }

    #[test]
    fn classes_q3() {
        let t = table(3);
        let (partition, report) = bruteforce_classes(t.group(), t.classes(), u64::MAX).unwrap();
        assert!(report.passed, "{}", report.render_text());
        assert_eq!(partition.orbit_count(), 24);
        for (c, &o) in t.classes().iter().zip(&partition.rep_orbit) {
            if c.family == Family::A {
                assert_eq!(partition.orbit_sizes[o as usize], 1);
            }
            if c.family == Family::B {
                assert_eq!(partition.orbit_sizes[o as usize], 24);
            }
        }
    }

    #[test]
    fn too_large() {
        let t = table(3);
        assert!(matches!(
            bruteforce_classes(t.group(), t.classes(), 100),
            Err(VerifyError::TooLarge(GroupError::TooLarge { order: 648, cap: 100 }))
        ));
    }

    #[test]
    fn induced_mu_examples() {
        let t = table(3);
        let conv = t.conv();
        let f = conv.field().clone();
        let g = t.group();
        for (u1, u2) in [(f.zero(), f.one()), (f.one(), f.nu()), (f.nu(), f.nu()), (f.one(), f.zero())] {
            let a = t.class_index(Family::A, Some(f.one()), None, None).unwrap();
            let v = bruteforce_induced_mu(conv, g, u1, u2, &t.classes()[a].rep, u64::MAX).unwrap();
            assert_eq!(v, conv.cyclo().from_int(8));
            let c = t.class_index(Family::C, Some(f.zero()), None, None).unwrap();
            assert!(bruteforce_induced_mu(conv, g, u1, u2, &t.classes()[c].rep, u64::MAX).unwrap().is_zero());
        }
        let l1 = t.class_index(Family::L, None, None, Some(1)).unwrap();
        let v = bruteforce_induced_mu(conv, g, f.one(), f.nu(), &t.classes()[l1].rep, u64::MAX).unwrap();
        assert_eq!(v, conv.cubic_sum(f.one(), f.mul(f.nu(), f.nu())));
        // B with u2 = 0 is not printed; the brute force gives q^2 - 1.
        let b = t.class_index(Family::B, None, None, None).unwrap();
        let v = bruteforce_induced_mu(conv, g, f.one(), f.zero(), &t.classes()[b].rep, u64::MAX).unwrap();
        assert_eq!(v, conv.cyclo().from_int(8));
    }

    #[test]
    fn suites_pass_q3() {
        let t = table(3);
        for suite in Suite::DEFAULT {
            let r = run_suite(&t, suite, &VerifyOptions::default()).unwrap();
            assert!(r.passed, "{}", r.render_text());
        }
    }

    #[test]
    fn burnside_q3() {
        let t = table(3);
        let res = burnside_oracle(&t, 1e-8, 0, u64::MAX).unwrap();
        assert!(res.report.passed, "{}", res.report.render_text());
        assert!(res.max_error < 1e-8);
        let mut seen = res.row_match.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..24).collect::<Vec<_>>());
    }

    #[test]
    fn report_json_has_no_wall_time() {
        let t = table(3);
        let r = check_kappa_distinctness(&t);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("elapsed"));
        assert!(r.passed);
    }
}

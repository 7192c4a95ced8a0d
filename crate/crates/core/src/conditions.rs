//! Cayley-type determinant conditions for periodicity and elliptic
//! periodicity, their condition polynomials in the caustic parameter `ν`,
//! and the discriminant factorizations of `G_3 … G_7`.
//!
//! Coefficient sequences are expanded in `μ = 1/ν`: each radicand factor
//! `X - t` is normalized to `1 - X/t`, so every Taylor coefficient is a
//! polynomial in `μ` and the determinants stay polynomial. A condition
//! polynomial `d(μ)` of degree `k` becomes `G(ν) = ν^k d(1/ν)`.

use crate::error::{Error, Result};
use crate::exact::linalg::{determinant, hankel};
use crate::exact::ring::{int, pow, rat, to_f64, Rational, Ring};
use crate::exact::sturm::isolate_real_roots;
use crate::exact::{RatPoly, TruncSeries};
use crate::minkowski::{trajectory_causal, CausalType, Caustic, ConfocalFamily, TableKind};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyTag {
    B,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

/// Index of a radicand factor: `X - a`, `X - b`, `X - c` or `X - ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Root {
    A,
    B,
    C,
    Nu,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 10] = [
        FamilyTag::B,
        FamilyTag::D,
        FamilyTag::E,
        FamilyTag::F,
        FamilyTag::G,
        FamilyTag::H,
        FamilyTag::I,
        FamilyTag::J,
        FamilyTag::K,
        FamilyTag::L,
    ];

    /// Factors under the square root: numerator and denominator.
    fn radicand(self) -> (&'static [Root], &'static [Root]) {
        use Root::*;
        match self {
            FamilyTag::B => (&[A, B, C, Nu], &[]),
            FamilyTag::D => (&[A, B, C], &[Nu]),
            FamilyTag::E => (&[A, B, C], &[]),
            FamilyTag::F => (&[B, C], &[A, Nu]),
            FamilyTag::G => (&[B, Nu], &[A, C]),
            FamilyTag::H => (&[A, B, Nu], &[C]),
            FamilyTag::I => (&[B, C, Nu], &[A]),
            FamilyTag::J => (&[C, Nu], &[A, B]),
            FamilyTag::K => (&[A, C], &[B, Nu]),
            FamilyTag::L => (&[A, C, Nu], &[B]),
        }
    }

    pub fn involves_nu(self) -> bool {
        self != FamilyTag::E
    }

    /// Human-readable radicand, with the sign factor.
    pub fn radicand_string(self) -> String {
        let name = |r: &Root| match r {
            Root::A => "(X-a)",
            Root::B => "(X-b)",
            Root::C => "(X-c)",
            Root::Nu => "(X-ν)",
        };
        let (num, den) = self.radicand();
        let sign = if self == FamilyTag::E { "δ" } else { "ε" };
        let n: String = num.iter().map(name).collect();
        if den.is_empty() {
            format!("sqrt({sign}{n})")
        } else {
            let d: String = den.iter().map(name).collect();
            format!("sqrt({sign}{n}/{d})")
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Hankel determinant layouts: `Even(m)` is `[X_{i+j+3}]` of size `m-1`,
/// `Odd(m)` is `[X_{i+j+2}]` of size `m`, `LightLike(m)` is the even layout on
/// `E`, and `EllipticEven(m)` is `[X_{i+j+1}]` of size `m`. `EllipticOdd` has
/// the odd layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Even(usize),
    Odd(usize),
    LightLike(usize),
    EllipticEven(usize),
    EllipticOdd(usize),
}

impl Shape {
    pub fn offset(self) -> usize {
        match self {
            Shape::Even(_) | Shape::LightLike(_) => 3,
            Shape::Odd(_) | Shape::EllipticOdd(_) => 2,
            Shape::EllipticEven(_) => 1,
        }
    }

    pub fn size(self) -> usize {
        match self {
            Shape::Even(m) | Shape::LightLike(m) => m.saturating_sub(1),
            Shape::Odd(m) | Shape::EllipticEven(m) | Shape::EllipticOdd(m) => m,
        }
    }

    /// Highest Taylor index the determinant needs.
    pub fn order(self) -> usize {
        self.offset() + 2 * self.size().saturating_sub(1)
    }
}

/// Reciprocals `1/a, 1/b, 1/c, μ` in a coefficient ring.
#[derive(Clone, Debug)]
pub struct Reciprocals<C: Ring> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub mu: C,
}

impl<C: Ring> Reciprocals<C> {
    fn get(&self, r: Root) -> &C {
        match r {
            Root::A => &self.a,
            Root::B => &self.b,
            Root::C => &self.c,
            Root::Nu => &self.mu,
        }
    }
}

/// Normalized Taylor coefficients of the family's square root, exact through
/// `order`. Constant prefactors are dropped; they scale a `k×k` determinant
/// by a nonzero constant only.
pub fn coeff_sequence<C: Ring>(
    tag: FamilyTag,
    inv: &Reciprocals<C>,
    order: usize,
) -> Result<TruncSeries<C>> {
    let (num, den) = tag.radicand();
    let mut s = TruncSeries::one(order);
    for r in num {
        s = s.mul(&TruncSeries::one_minus(inv.get(*r), order));
    }
    for r in den {
        s = s.mul(&TruncSeries::geometric(inv.get(*r), order));
    }
    s.sqrt()
}

/// Determinant of the layout over the family's coefficient sequence.
pub fn family_determinant<C: Ring>(
    tag: FamilyTag,
    shape: Shape,
    inv: &Reciprocals<C>,
) -> Result<C> {
    let size = shape.size();
    if size == 0 {
        return Ok(C::one_el());
    }
    let s = coeff_sequence(tag, inv, shape.order())?;
    Ok(determinant(&hankel(s.coeffs(), shape.offset(), size)))
}

/// How `ν` is supplied to a condition.
#[derive(Clone, Debug, PartialEq)]
pub enum NuArg {
    Symbolic,
    Exact(Rational),
    Float(f64),
}

impl NuArg {
    pub fn approx(&self) -> Option<f64> {
        match self {
            NuArg::Symbolic => None,
            NuArg::Exact(r) => Some(to_f64(r)),
            NuArg::Float(v) => Some(*v),
        }
    }
}

fn exact_params(fam: &ConfocalFamily) -> Result<[Rational; 3]> {
    fam.exact()
        .cloned()
        .ok_or_else(|| Error::InvalidFamily("exact (rational) parameters required".into()))
}

fn check_branch(fam: &ConfocalFamily, nu: f64) -> Result<()> {
    if [fam.a, fam.b, fam.c, 0.0].contains(&nu) || !nu.is_finite() {
        return Err(Error::InvalidRange(format!("ν = {nu} is a branch point")));
    }
    Ok(())
}

/// Evaluated determinant of one condition.
#[derive(Clone, Debug, PartialEq)]
pub enum DetValue {
    Exact(Rational),
    Float(f64),
    /// Numerator polynomial in `ν`, content-normalized.
    Poly(RatPoly),
}

/// Evaluates a family/shape determinant for the given `ν`.
pub fn evaluate(
    tag: FamilyTag,
    shape: Shape,
    fam: &ConfocalFamily,
    nu: &NuArg,
) -> Result<DetValue> {
    match nu {
        NuArg::Symbolic => {
            let [a, b, c] = exact_params(fam)?;
            let k = |r: &Rational| RatPoly::constant(Rational::one() / r);
            let inv = Reciprocals {
                a: k(&a),
                b: k(&b),
                c: k(&c),
                mu: RatPoly::x(),
            };
            let d = family_determinant(tag, shape, &inv)?;
            Ok(DetValue::Poly(mu_to_nu(&d)))
        }
        NuArg::Exact(v) => {
            check_branch(fam, to_f64(v))?;
            let [a, b, c] = exact_params(fam)?;
            let one = Rational::one();
            let inv = Reciprocals {
                a: &one / a,
                b: &one / b,
                c: &one / c,
                mu: &one / v,
            };
            Ok(DetValue::Exact(family_determinant(tag, shape, &inv)?))
        }
        NuArg::Float(v) => {
            check_branch(fam, *v)?;
            let inv = Reciprocals {
                a: 1.0 / fam.a,
                b: 1.0 / fam.b,
                c: 1.0 / fam.c,
                mu: 1.0 / v,
            };
            Ok(DetValue::Float(family_determinant(tag, shape, &inv)?))
        }
    }
}

/// `ν^k d(1/ν)` with `k = deg d`, content-normalized to a primitive integer
/// polynomial with positive leading coefficient.
pub fn mu_to_nu(d: &RatPoly) -> RatPoly {
    match d.degree() {
        None => RatPoly::zero(),
        Some(k) => d.reverse(k).primitive_part().1,
    }
}

/// Admissible `ν` interval with a label such as `(-inf,b)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NuRange {
    pub lo: f64,
    pub hi: f64,
    pub label: String,
}

impl NuRange {
    pub fn contains(&self, v: f64) -> bool {
        self.lo < v && v < self.hi
    }
}

#[derive(Clone, Copy)]
enum Pt {
    NegInf,
    Zero,
    A,
    B,
    C,
    PosInf,
}

fn ranges(fam: &ConfocalFamily, pairs: &[(Pt, Pt)]) -> Vec<NuRange> {
    let val = |p: Pt| match p {
        Pt::NegInf => f64::NEG_INFINITY,
        Pt::Zero => 0.0,
        Pt::A => fam.a,
        Pt::B => fam.b,
        Pt::C => fam.c,
        Pt::PosInf => f64::INFINITY,
    };
    let name = |p: Pt| match p {
        Pt::NegInf => "-inf",
        Pt::Zero => "0",
        Pt::A => "a",
        Pt::B => "b",
        Pt::C => "c",
        Pt::PosInf => "inf",
    };
    pairs
        .iter()
        .map(|&(l, h)| NuRange {
            lo: val(l),
            hi: val(h),
            label: format!("({},{})", name(l), name(h)),
        })
        .collect()
}

/// Ranges where a caustic yields billiard trajectories. On the collared
/// table `(0,a)` is included although its trajectories never reach the
/// boundary; `(a,b)` is empty.
pub fn admissible_ranges(fam: &ConfocalFamily) -> Vec<NuRange> {
    use Pt::*;
    match fam.kind() {
        TableKind::Collared => ranges(fam, &[(NegInf, Zero), (Zero, A), (B, C), (C, PosInf)]),
        TableKind::Transverse => ranges(
            fam,
            &[(NegInf, B), (B, Zero), (Zero, A), (A, C), (C, PosInf)],
        ),
    }
}

/// Label of the interval between consecutive branch points holding `v`.
pub fn range_label(fam: &ConfocalFamily, v: f64) -> String {
    let mut pts = vec![(0.0, "0"), (fam.a, "a"), (fam.b, "b"), (fam.c, "c")];
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut lo = "-inf";
    for (p, name) in pts {
        if v == p {
            return name.to_string();
        }
        if v < p {
            return format!("({lo},{name})");
        }
        lo = name;
    }
    format!("({lo},inf)")
}

/// Why a root is special, if it is.
pub fn range_note(fam: &ConfocalFamily, v: f64) -> Option<&'static str> {
    match fam.kind() {
        TableKind::Collared if 0.0 < v && v < fam.a => Some("resonant"),
        TableKind::Collared if fam.a < v && v < fam.b => Some("empty"),
        _ if [0.0, fam.a, fam.b, fam.c].contains(&v) => Some("branch point"),
        _ => None,
    }
}

/// One real root of a condition polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub nu: f64,
    pub multiplicity: usize,
    pub range: String,
    pub causal: CausalType,
    pub in_range: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    /// Also a root of the `n`-periodic condition (elliptic parts only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub also_periodic: Option<bool>,
}

fn ser_poly<S: Serializer>(p: &Option<RatPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.collect_seq(p.coeff_strings()),
        None => s.serialize_none(),
    }
}

/// Verdict of one determinant condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub family: FamilyTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<char>,
    pub n: usize,
    pub table: TableKind,
    pub shape: Shape,
    /// Numeric value of the determinant for a concrete `ν`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<f64>,
    /// Whether the determinant vanishes exactly (rational `ν` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_zero: Option<bool>,
    /// Condition polynomial in `ν`, lowest degree first, for symbolic `ν`.
    #[serde(serialize_with = "ser_poly", skip_serializing_if = "Option::is_none")]
    pub poly: Option<RatPoly>,
    pub valid_nu_ranges: Vec<NuRange>,
    pub roots: Vec<RootReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionReport {
    /// True when the determinant vanishes (numerically to `tol` relative to
    /// its unnormalized scale is the caller's business; here exact or `|d| <= tol`).
    pub fn vanishes(&self, tol: f64) -> bool {
        match (self.exact_zero, self.determinant) {
            (Some(z), _) => z,
            (None, Some(d)) => d.abs() <= tol,
            _ => false,
        }
    }
}

/// Real roots of `poly` tagged against the given ranges.
pub fn tag_roots(poly: &RatPoly, fam: &ConfocalFamily, valid: &[NuRange]) -> Vec<RootReport> {
    if poly.degree().is_none_or(|d| d == 0) {
        return vec![];
    }
    isolate_real_roots(poly)
        .iter()
        .map(|r| {
            let nu = r.refine(1e-13);
            RootReport {
                nu,
                multiplicity: r.multiplicity,
                range: range_label(fam, nu),
                causal: trajectory_causal(Caustic::Finite(nu), fam),
                in_range: valid.iter().any(|g| g.contains(nu)),
                note: range_note(fam, nu),
                also_periodic: None,
            }
        })
        .collect()
}

/// Family and layout of the `n`-periodic condition.
pub fn periodic_shape(n: usize) -> Result<(FamilyTag, Shape)> {
    match n {
        0..=2 => Err(Error::UnsupportedPeriod(format!(
            "n = {n}: only symmetry-plane 2-periodic trajectories exist"
        ))),
        _ if n.is_multiple_of(2) => Ok((FamilyTag::B, Shape::Even(n / 2))),
        _ => Ok((FamilyTag::D, Shape::Odd(n / 2))),
    }
}

fn build_report(
    tag: FamilyTag,
    part: Option<char>,
    n: usize,
    shape: Shape,
    fam: &ConfocalFamily,
    nu: &NuArg,
    valid: Vec<NuRange>,
) -> Result<ConditionReport> {
    let mut rep = ConditionReport {
        family: tag,
        part,
        n,
        table: fam.kind(),
        shape,
        determinant: None,
        exact_zero: None,
        poly: None,
        valid_nu_ranges: valid,
        roots: vec![],
        note: None,
    };
    match evaluate(tag, shape, fam, nu)? {
        DetValue::Poly(p) => {
            rep.roots = tag_roots(&p, fam, &rep.valid_nu_ranges);
            rep.poly = Some(p);
        }
        DetValue::Exact(d) => {
            rep.exact_zero = Some(d.is_zero());
            rep.determinant = Some(to_f64(&d));
        }
        DetValue::Float(d) => rep.determinant = Some(d),
    }
    Ok(rep)
}

/// The `n`-periodic Cayley condition (B for even `n`, D for odd `n`).
/// `n = 2` returns a degenerate report: such trajectories lie in the
/// symmetry planes.
pub fn periodicity_condition(
    n: usize,
    fam: &ConfocalFamily,
    nu: &NuArg,
) -> Result<ConditionReport> {
    if n == 2 {
        return Ok(ConditionReport {
            family: FamilyTag::B,
            part: None,
            n,
            table: fam.kind(),
            shape: Shape::Even(1),
            determinant: None,
            exact_zero: None,
            poly: None,
            valid_nu_ranges: vec![],
            roots: vec![],
            note: Some("2-periodic trajectories lie in the planes of symmetry".into()),
        });
    }
    let (tag, shape) = periodic_shape(n)?;
    build_report(tag, None, n, shape, fam, nu, admissible_ranges(fam))
}

/// The light-like condition on `E`, for `n = 2m >= 4`.
pub fn lightlike_condition(n: usize, fam: &ConfocalFamily, exact: bool) -> Result<ConditionReport> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::UnsupportedPeriod(format!(
            "light-like periods are even and at least 4, got {n}"
        )));
    }
    let nu = if exact {
        NuArg::Exact(int(1))
    } else {
        NuArg::Float(1.0)
    };
    // `E` ignores `ν`; any non-branch value works as a placeholder.
    let nu = match nu {
        NuArg::Exact(_) if fam.a == 1.0 || fam.b == 1.0 || fam.c == 1.0 => {
            NuArg::Exact(rat(-7, 13))
        }
        NuArg::Float(_) => NuArg::Float(-0.5384615384615384),
        other => other,
    };
    build_report(
        FamilyTag::E,
        None,
        n,
        Shape::LightLike(n / 2),
        fam,
        &nu,
        vec![],
    )
}

/// One part of the elliptic-periodicity theorem.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticPart {
    pub part: char,
    pub family: FamilyTag,
    pub shape: Shape,
    pub ranges: Vec<NuRange>,
}

/// Parts applicable to period `n` on the family's table.
pub fn elliptic_parts(n: usize, fam: &ConfocalFamily) -> Vec<EllipticPart> {
    use Pt::*;
    let even = n.is_multiple_of(2);
    let m = n / 2;
    let mut out = Vec::new();
    let mut push = |part: char, family: FamilyTag, shape: Shape, rg: &[(Pt, Pt)]| {
        out.push(EllipticPart {
            part,
            family,
            shape,
            ranges: ranges(fam, rg),
        });
    };
    match fam.kind() {
        TableKind::Collared => {
            let neg_hyp = [(NegInf, Zero), (B, C), (C, PosInf)];
            if n >= 2 {
                push('a', FamilyTag::B, Shape::Even(n), &neg_hyp);
            }
            let outer = [(NegInf, Zero), (C, PosInf)];
            if even && n >= 2 {
                push('b', FamilyTag::F, Shape::EllipticEven(m), &outer);
            } else if !even && n >= 3 {
                push('b', FamilyTag::D, Shape::Odd(m), &outer);
            }
            if even && n >= 4 {
                push('c', FamilyTag::G, Shape::EllipticEven(m), &[(B, C)]);
            } else if !even && n >= 5 {
                push('c', FamilyTag::H, Shape::EllipticOdd(m), &[(B, C)]);
            }
            if !even && n >= 3 {
                push('d', FamilyTag::I, Shape::EllipticOdd(m), &neg_hyp);
            }
        }
        TableKind::Transverse => {
            if n >= 2 {
                push(
                    'e',
                    FamilyTag::B,
                    Shape::Even(n),
                    &[(NegInf, B), (B, Zero), (Zero, A), (A, C), (C, PosInf)],
                );
            }
            if even && n >= 2 {
                push(
                    'f',
                    FamilyTag::J,
                    Shape::EllipticEven(m),
                    &[(NegInf, B), (A, C), (C, PosInf)],
                );
                push('g', FamilyTag::F, Shape::EllipticEven(m), &[(B, Zero)]);
            }
            if even && n >= 4 {
                push('h', FamilyTag::K, Shape::EllipticEven(m), &[(Zero, A)]);
            }
            if !even && n >= 3 {
                push(
                    'i',
                    FamilyTag::I,
                    Shape::EllipticOdd(m),
                    &[(NegInf, B), (B, Zero), (A, C), (C, PosInf)],
                );
                push(
                    'j',
                    FamilyTag::L,
                    Shape::EllipticOdd(m),
                    &[(NegInf, B), (Zero, A), (A, C), (C, PosInf)],
                );
            }
        }
    }
    out
}

/// Elliptic-periodicity conditions. For a concrete `ν` only the parts whose
/// ranges contain it are evaluated; symbolically every part for `n` is
/// reported, with roots flagged when they also satisfy the `n`-periodic
/// condition.
pub fn elliptic_periodicity_condition(
    n: usize,
    fam: &ConfocalFamily,
    nu: &NuArg,
) -> Result<Vec<ConditionReport>> {
    let parts = elliptic_parts(n, fam);
    let selected: Vec<&EllipticPart> = match nu.approx() {
        None => parts.iter().collect(),
        Some(v) => parts
            .iter()
            .filter(|p| p.ranges.iter().any(|r| r.contains(v)))
            .collect(),
    };
    if selected.is_empty() {
        return Err(Error::NuOutOfAllRanges(format!(
            "no elliptic-periodicity part covers ν = {} for n = {n}",
            nu.approx().map_or("?".into(), |v| v.to_string())
        )));
    }
    let periodic = if n >= 3 && matches!(nu, NuArg::Symbolic) {
        let (tag, shape) = periodic_shape(n)?;
        match evaluate(tag, shape, fam, nu)? {
            DetValue::Poly(p) => Some(p),
            _ => None,
        }
    } else {
        None
    };
    let mut out = Vec::new();
    for p in selected {
        let mut rep = build_report(
            p.family,
            Some(p.part),
            n,
            p.shape,
            fam,
            nu,
            p.ranges.clone(),
        )?;
        if let (Some(per), Some(poly)) = (&periodic, &rep.poly) {
            let common = per.gcd(poly);
            for r in rep.roots.iter_mut() {
                r.also_periodic = Some(
                    common.degree().is_some_and(|d| d > 0)
                        && common.eval_f64(r.nu).abs()
                            <= 1e-8
                                * common.to_f64_coeffs().iter().map(|c| c.abs()).sum::<f64>()
                                * r.nu.abs().max(1.0).powi(common.degree().unwrap() as i32),
                );
            }
        } else if n == 2 {
            for r in rep.roots.iter_mut() {
                r.also_periodic = Some(false);
            }
        }
        rep.note = Some(p.family.radicand_string());
        out.push(rep);
    }
    Ok(out)
}

/// Which condition a polynomial is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondSpec {
    Periodic,
    Part(char),
}

/// Content-normalized condition polynomial in `ν`.
pub fn condition_polynomial(n: usize, spec: CondSpec, fam: &ConfocalFamily) -> Result<RatPoly> {
    let (tag, shape) = match spec {
        CondSpec::Periodic => periodic_shape(n)?,
        CondSpec::Part(c) => {
            let p = elliptic_parts(n, fam)
                .into_iter()
                .find(|p| p.part == c)
                .ok_or_else(|| {
                    Error::InvalidRange(format!("part ({c}) does not apply to n = {n}"))
                })?;
            (p.family, p.shape)
        }
    };
    match evaluate(tag, shape, fam, &NuArg::Symbolic)? {
        DetValue::Poly(p) => Ok(p),
        _ => unreachable!("symbolic evaluation yields a polynomial"),
    }
}

/// Periodic caustic found by root isolation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicCaustic {
    pub nu: f64,
    pub family: FamilyTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<char>,
    pub causal: CausalType,
    pub range: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    /// Exact value when the root is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

/// Rational roots of an integer polynomial, by the rational root theorem
/// applied to its linear factors found through root isolation.
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    let mut out = Vec::new();
    for r in isolate_real_roots(p) {
        let v = r.refine(1e-14);
        let cand = crate::exact::ring::approximate(v, 1_000_000);
        if p.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

/// Real roots of the `n`-periodic condition (and optionally the elliptic
/// parts) lying in admissible ranges.
pub fn find_periodic_caustics(
    n: usize,
    fam: &ConfocalFamily,
    include_elliptic: bool,
) -> Result<Vec<PeriodicCaustic>> {
    if n <= 2 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut push = |poly: &RatPoly, family: FamilyTag, part: Option<char>, valid: &[NuRange]| {
        let exact = rational_roots(poly);
        // Roots on 0, a, b or c are degenerate levels, not caustics.
        let singular = [0.0, fam.a, fam.b, fam.c];
        let near_singular = |nu: f64| {
            singular
                .iter()
                .any(|s| (nu - s).abs() <= 1e-9 * s.abs().max(1.0))
        };
        for r in tag_roots(poly, fam, valid)
            .into_iter()
            .filter(|r| r.in_range && !near_singular(r.nu))
        {
            let ex = exact
                .iter()
                .find(|e| (to_f64(e) - r.nu).abs() < 1e-9)
                .map(|e| e.to_string());
            out.push(PeriodicCaustic {
                nu: r.nu,
                family,
                part,
                causal: r.causal,
                range: r.range,
                note: r.note,
                exact: ex,
            });
        }
    };
    let (tag, _) = periodic_shape(n)?;
    let poly = condition_polynomial(n, CondSpec::Periodic, fam)?;
    push(&poly, tag, None, &admissible_ranges(fam));
    if include_elliptic {
        for p in elliptic_parts(n, fam) {
            let poly = condition_polynomial(n, CondSpec::Part(p.part), fam)?;
            push(&poly, p.family, Some(p.part), &p.ranges);
        }
    }
    Ok(out)
}

/// Symmetric functions `p = a+b+c`, `q = ab+ac+bc`, `r = abc`.
pub fn symmetric(a: &Rational, b: &Rational, c: &Rational) -> (Rational, Rational, Rational) {
    (a + b + c, a * b + a * c + b * c, a * b * c)
}

fn poly(cs: Vec<Rational>) -> RatPoly {
    RatPoly::new(cs)
}

/// `G_3 … G_6` exactly as printed, as polynomials in `ν`.
pub fn printed_g(n: usize, a: &Rational, b: &Rational, c: &Rational) -> Result<RatPoly> {
    let (p, q, r) = symmetric(a, b, c);
    let i = |k: i64| int(k);
    Ok(match n {
        3 => poly(vec![
            i(3) * &r * &r,
            i(-2) * &q * &r,
            i(4) * &p * &r - &q * &q,
        ]),
        4 => {
            let lin = |k: Rational| poly(vec![-&r, k]);
            lin(-(a * b) + a * c + b * c)
                .mul(&lin(a * b + a * c - b * c))
                .mul(&lin(a * b - a * c + b * c))
        }
        5 => {
            let (p2, q2, r2) = (&p * &p, &q * &q, &r * &r);
            let (q3, r3) = (&q2 * &q, &r2 * &r);
            let r4 = &r3 * &r;
            let c0 = i(5) * pow(&r, 6);
            let c1 = i(-10) * &q * pow(&r, 5);
            let c2 = &r4 * (i(52) * &p * &r - i(9) * &q2);
            let c3 = i(4) * &r3 * (i(-36) * &p * &q * &r + i(9) * &q3 + i(56) * &r2);
            let c4 = &r2
                * (i(-16) * &r2 * (&p2 + i(14) * &q) + i(120) * &p * &q2 * &r - i(29) * &q2 * &q2);
            let c5 = i(2)
                * &r
                * (i(16) * &q * &r2 * (&q - &p2) - i(8) * &p * &q3 * &r
                    + i(64) * &p * &r3
                    + i(3) * &q2 * &q3);
            let c6 = i(48) * &p2 * &q2 * &r2
                - i(64) * &r3 * (&p2 * &p + i(4) * &r)
                - i(12) * &p * &q2 * &q2 * &r
                + i(128) * &p * &q * &r3
                - i(32) * &q3 * &r2
                + &q3 * &q3;
            poly(vec![c0, c1, c2, c3, c4, c5, c6])
        }
        6 => {
            let (a2, b2, c2) = (a * a, b * b, c * c);
            let two_r = i(2) * &r;
            let f1 = poly(vec![
                &r * &r,
                &two_r * (a * b - a * c - b * c),
                i(-3) * &a2 * &b2 + &c2 * pow(&(a - b), 2) + &two_r * (a + b),
            ]);
            let f2 = poly(vec![
                i(3) * &r * &r,
                -&two_r * &q,
                -(&a2 * pow(&(b - c), 2)) + &two_r * (b + c) - &b2 * &c2,
            ]);
            let f3 = poly(vec![
                &r * &r,
                &two_r * (-(a * b) - a * c + b * c),
                &a2 * pow(&(b - c), 2) + &two_r * (b + c) - i(3) * &b2 * &c2,
            ]);
            let f4 = poly(vec![
                &r * &r,
                &two_r * (-(a * b) + a * c - b * c),
                &a2 * (b - c) * (b + i(3) * c) + &two_r * (c - b) + &b2 * &c2,
            ]);
            f1.mul(&f2).mul(&f3).mul(&f4)
        }
        _ => return Err(Error::UnsupportedPeriod(format!("G_{n} is not printed"))),
    })
}

/// Printed elliptic conditions: 2-elliptic `F_1`, `J_1` and 3-elliptic
/// `I_2`, `L_2`, as polynomials in `ν`.
pub fn printed_elliptic(
    tag: FamilyTag,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<RatPoly> {
    let r = a * b * c;
    let two = int(2);
    Ok(match tag {
        FamilyTag::F => poly(vec![r.clone(), -(a * b) - a * c + b * c]),
        FamilyTag::J => poly(vec![r.clone(), a * b - a * c - b * c]),
        FamilyTag::I => poly(vec![
            &r * &r,
            -&two * &r * (-(b * c) + a * b + a * c),
            a * a * pow(&(b - c), 2) + &two * &r * (b + c) - int(3) * b * b * c * c,
        ]),
        FamilyTag::L => poly(vec![
            &r * &r,
            -&two * &r * (a * b - a * c + b * c),
            b * b * c * c + &two * &r * (c - b) + a * a * (b * b + &two * b * c - int(3) * c * c),
        ]),
        _ => {
            return Err(Error::UnsupportedPeriod(format!(
                "no printed condition for {tag}"
            )))
        }
    })
}

/// `λ` with `p = λ q` exactly, if the polynomials are proportional.
pub fn proportionality(p: &RatPoly, q: &RatPoly) -> Option<Rational> {
    if p.degree() != q.degree() || q.is_zero() {
        return None;
    }
    let l = p.leading() / q.leading();
    (p == &q.scale(&l)).then_some(l)
}

/// Constant term the printed `G_n` carries, in terms of `r = abc`.
pub fn printed_constant(n: usize, r: &Rational) -> Result<Rational> {
    Ok(match n {
        3 => int(3) * pow(r, 2),
        4 => -pow(r, 3),
        5 => int(5) * pow(r, 6),
        6 => int(3) * pow(r, 8),
        7 => int(7) * pow(r, 12),
        _ => {
            return Err(Error::UnsupportedPeriod(format!(
                "no printed normalization for n = {n}"
            )))
        }
    })
}

/// Condition polynomial rescaled so its constant term matches the printed
/// normalization; returns the polynomial and the applied factor.
pub fn normalized_condition_polynomial(
    n: usize,
    fam: &ConfocalFamily,
) -> Result<(RatPoly, Rational)> {
    let [a, b, c] = exact_params(fam)?;
    let g = condition_polynomial(n, CondSpec::Periodic, fam)?;
    let c0 = g.coeff(0);
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let k = printed_constant(n, &(&a * &b * &c))? / c0;
    Ok((g.scale(&k), k))
}

/// `Δ = p²q² − 4p³r + 18pqr − 4q³ − 27r²`, the discriminant of the cubic
/// with roots `a, b, c`.
pub fn cubic_delta(p: &Rational, q: &Rational, r: &Rational) -> Rational {
    let i = |k: i64| int(k);
    p * p * q * q - i(4) * pow(p, 3) * r + i(18) * p * q * r - i(4) * pow(q, 3) - i(27) * r * r
}

/// Closed forms of `Disc_ν G_n` for `n = 3 … 7` in `(p, q, r)`.
pub fn closed_form_discriminant(
    n: usize,
    p: &Rational,
    q: &Rational,
    r: &Rational,
) -> Result<Rational> {
    let i = |k: i64| int(k);
    let two = i(2);
    let d = cubic_delta(p, q, r);
    Ok(match n {
        3 => i(16) * r * r * (q * q - i(3) * p * r),
        4 => i(64) * pow(r, 8) * d,
        5 => {
            let br = i(-889) * p * p * q * q * r * r
                + pow(r, 3) * (i(1369) * pow(p, 3) + i(4320) * r)
                + i(243) * p * pow(q, 4) * r
                - i(2880) * p * q * pow(r, 3)
                + i(640) * pow(q, 3) * r * r
                - i(27) * pow(q, 6);
            pow(&two, 44) * i(5) * pow(r, 38) * pow(&d, 4) * br
        }
        6 => pow(&two, 88) * pow(r, 74) * (q * q - i(3) * p * r) * pow(&-d, 9),
        7 => {
            let p3 = pow(p, 3);
            let br = i(13884993) * p * p * pow(q, 8) * r * r
                - i(4) * pow(q, 6) * pow(r, 3) * (i(19497321) * &p3 + i(36960632) * r)
                - i(633232064) * p * p * pow(q, 5) * pow(r, 4)
                + p * pow(q, 4) * pow(r, 4) * (i(254629897) * &p3 + i(1330582752) * r)
                + i(64) * pow(q, 3) * pow(r, 5) * (i(17805509) * &p3 - i(16979328) * r)
                - i(2) * p * p * q * q * pow(r, 5) * (i(209755567) * &p3 + i(1588370256) * r)
                - i(576) * p * q * pow(r, 6) * (i(846895) * &p3 - i(8489664) * r)
                + pow(r, 6)
                    * (i(731717280) * &p3 * r + i(250406527) * pow(p, 6) - i(3667534848) * r * r)
                + i(134695872) * p * pow(q, 7) * pow(r, 3)
                - i(1518750) * p * pow(q, 10) * r
                - i(9977472) * pow(q, 9) * r * r
                + i(84375) * pow(q, 12);
            -pow(&two, 184) * i(49) * pow(r, 172) * pow(&d, 20) * br
        }
        _ => {
            return Err(Error::UnsupportedPeriod(format!(
                "no closed form for n = {n}"
            )))
        }
    })
}

/// One sample of the discriminant check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantSample {
    pub a: String,
    pub b: String,
    pub c: String,
    /// Factor applied to the content-normalized `G_n` to reach the printed
    /// normalization.
    pub fitted_constant: String,
    /// `computed / closed form`, exactly 1 on a match.
    pub ratio: String,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub n: usize,
    pub degree: usize,
    pub samples: Vec<DiscriminantSample>,
    pub pass: bool,
}

/// Compares `Disc_ν G_n` with the closed form at each sample triple. For
/// `n ≤ 6` equality must be exact; `n = 7` is accepted at relative `1e-6`.
pub fn verify_discriminant_factorization(
    n: usize,
    samples: &[[Rational; 3]],
) -> Result<DiscriminantReport> {
    if !(3..=7).contains(&n) {
        return Err(Error::UnsupportedPeriod(format!(
            "discriminant check needs 3 <= n <= 7, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut degree = 0;
    let mut pass = true;
    for [a, b, c] in samples {
        let fam = ConfocalFamily::from_rationals(a.clone(), b.clone(), c.clone())?;
        let (g, k) = normalized_condition_polynomial(n, &fam)?;
        degree = g.degree().unwrap_or(0);
        let disc = g.discriminant();
        let (p, q, r) = symmetric(a, b, c);
        let closed = closed_form_discriminant(n, &p, &q, &r)?;
        let ratio = if closed.is_zero() {
            Rational::zero()
        } else {
            &disc / &closed
        };
        let rel = if closed.is_zero() {
            f64::INFINITY
        } else {
            to_f64(&(&ratio - Rational::one()).abs())
        };
        let ok = if n <= 6 { ratio.is_one() } else { rel <= 1e-6 };
        pass &= ok;
        out.push(DiscriminantSample {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            fitted_constant: k.to_string(),
            ratio: ratio.to_string(),
            relative_error: rel,
        });
    }
    let rep = DiscriminantReport {
        n,
        degree,
        samples: out,
        pass,
    };
    if !rep.pass {
        let bad: Vec<String> = rep
            .samples
            .iter()
            .filter(|s| s.ratio != "1")
            .map(|s| format!("({},{},{}) ratio {}", s.a, s.b, s.c, s.ratio))
            .collect();
        return Err(Error::MismatchBeyondScalar(format!(
            "n = {n}: {}",
            bad.join("; ")
        )));
    }
    Ok(rep)
}

/// The separability observation for `G_3`: with `(p,q,r) = (AB, A+B, 1)`
/// and `B = CA`, `Disc_ν G_3 = 2⁴A²(1 − C + C²)`. Returns both sides.
pub fn g3_separability(a_: &Rational, c_: &Rational) -> (Rational, Rational) {
    let b_ = c_ * a_;
    let (p, q, r) = (a_ * &b_, a_ + &b_, Rational::one());
    let g3 = poly(vec![
        int(3) * &r * &r,
        int(-2) * &q * &r,
        int(4) * &p * &r - &q * &q,
    ]);
    let lhs = g3.discriminant();
    let rhs = int(16) * a_ * a_ * (Rational::one() - c_ + c_ * c_);
    (lhs, rhs)
}

fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=50i64);
    let num = rng.gen_range(lo * den..=hi * den);
    Rational::new(num.into(), den.into())
}

/// Random rational parameters of the requested table type, with numerators
/// and denominators bounded by about 50.
pub fn random_family<R: Rng>(kind: TableKind, rng: &mut R) -> [Rational; 3] {
    loop {
        let mut v: Vec<Rational> = (0..3).map(|_| random_rational(rng, 0, 5)).collect();
        if v.iter().any(|x| x.is_zero() || x.numer().abs() > 50.into()) {
            continue;
        }
        v.sort();
        if v[0] == v[1] || v[1] == v[2] {
            continue;
        }
        match kind {
            TableKind::Collared => return [v[0].clone(), v[1].clone(), v[2].clone()],
            TableKind::Transverse => {
                let b = -v[0].clone();
                return [v[1].clone(), b, v[2].clone()];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam123() -> ConfocalFamily {
        ConfocalFamily::from_rationals(int(1), int(2), int(3)).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(Shape::Even(3).size(), 2);
        assert_eq!(Shape::Even(3).order(), 5);
        assert_eq!(Shape::Odd(3).order(), 6);
        assert_eq!(Shape::EllipticEven(2).order(), 3);
    }

    #[test]
    fn g3_instance() {
        let p = condition_polynomial(3, CondSpec::Periodic, &fam123()).unwrap();
        assert_eq!(p, RatPoly::from_ints(&[108, -132, 23]));
    }

    #[test]
    fn g4_instance_factors() {
        let p = condition_polynomial(4, CondSpec::Periodic, &fam123()).unwrap();
        // (ν+6)(5ν−6)(7ν−6), from substituting (1,2,3) in the printed factors.
        let q = RatPoly::from_ints(&[6, 1])
            .mul(&RatPoly::from_ints(&[-6, 5]))
            .mul(&RatPoly::from_ints(&[-6, 7]));
        assert!(proportionality(&p, &q).is_some());
        let r = periodicity_condition(4, &fam123(), &NuArg::Exact(rat(6, 7))).unwrap();
        assert_eq!(r.exact_zero, Some(true));
    }

    #[test]
    fn numeric_g3_root() {
        let nu = (132.0 + 7488f64.sqrt()) / 46.0;
        let r = periodicity_condition(3, &fam123(), &NuArg::Float(nu)).unwrap();
        assert!(r.determinant.unwrap().abs() < 1e-10);
        assert!(matches!(
            periodicity_condition(3, &fam123(), &NuArg::Float(2.0)),
            Err(Error::InvalidRange(_))
        ));
    }

    #[test]
    fn two_elliptic_collared() {
        let fam = fam123();
        let reps = elliptic_periodicity_condition(2, &fam, &NuArg::Symbolic).unwrap();
        let b = reps.iter().find(|r| r.part == Some('b')).unwrap();
        assert_eq!(b.roots.len(), 1);
        assert!((b.roots[0].nu + 6.0).abs() < 1e-12 && b.roots[0].in_range);
        let printed = printed_elliptic(FamilyTag::F, &int(1), &int(2), &int(3)).unwrap();
        assert!(proportionality(b.poly.as_ref().unwrap(), &printed).is_some());
    }

    #[test]
    fn printed_g_matches_at_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=5 {
            for _ in 0..3 {
                let [a, b, c] = random_family(TableKind::Collared, &mut rng);
                let fam = ConfocalFamily::from_rationals(a.clone(), b.clone(), c.clone()).unwrap();
                let g = condition_polynomial(n, CondSpec::Periodic, &fam).unwrap();
                let pg = printed_g(n, &a, &b, &c).unwrap();
                assert!(proportionality(&g, &pg).is_some(), "n={n} at ({a},{b},{c})");
            }
        }
    }

    #[test]
    fn discriminant_closed_form_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s: Vec<[Rational; 3]> = (0..2)
            .map(|_| random_family(TableKind::Transverse, &mut rng))
            .collect();
        let rep = verify_discriminant_factorization(3, &s).unwrap();
        assert!(rep.pass);
        let rep = verify_discriminant_factorization(4, &s).unwrap();
        assert_eq!(rep.degree, 3);
    }

    #[test]
    fn separability() {
        let (l, r) = g3_separability(&rat(3, 7), &rat(-5, 2));
        assert_eq!(l, r);
    }

    #[test]
    fn range_labels() {
        let f = fam123();
        assert_eq!(range_label(&f, -3.0), "(-inf,0)");
        assert_eq!(range_label(&f, 0.5), "(0,a)");
        assert_eq!(range_label(&f, 4.0), "(c,inf)");
        assert_eq!(range_note(&f, 6.0 / 7.0), Some("resonant"));
    }

    #[test]
    fn find_caustics_123() {
        let cs = find_periodic_caustics(4, &fam123(), false).unwrap();
        assert!(cs
            .iter()
            .any(|c| c.exact.as_deref() == Some("6/7") && c.causal == CausalType::SpaceLike));
        assert!(cs.iter().any(|c| c.exact.as_deref() == Some("-6")));
        // 6/5 lies in the empty band (a,b).
        assert!(!cs.iter().any(|c| c.exact.as_deref() == Some("6/5")));
        let cs = find_periodic_caustics(3, &fam123(), false).unwrap();
        let live: Vec<_> = cs.iter().filter(|c| c.note.is_none()).collect();
        assert_eq!(live.len(), 1);
        assert!((live[0].nu - 4.750722).abs() < 1e-5);
        assert!(cs.iter().any(|c| c.note == Some("resonant")));
        assert!(find_periodic_caustics(2, &fam123(), false)
            .unwrap()
            .is_empty());
    }
}

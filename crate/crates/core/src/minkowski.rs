//! Minkowski 3-space with the form diag(-1, 1, 1), the one-sheeted
//! hyperboloid `H`, confocal cone families, foci and Jacobi coordinates.

use crate::error::{Error, Result};
use crate::exact::ring::{to_f64, Rational};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// On-surface tolerance.
pub const TAU_H: f64 = 1e-10;
/// Relative tolerance for the light-like zero test.
pub const TAU_LIGHT: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", from = "[f64; 3]")]
pub struct MVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MVec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        MVec3 { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        MVec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Minkowski product `-x x' + y y' + z z'`.
    pub fn dot(self, o: Self) -> f64 {
        -self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn edot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn enorm(self) -> f64 {
        self.edot(self).sqrt()
    }

    pub fn enorm2(self) -> f64 {
        self.edot(self)
    }

    pub fn cross(self, o: Self) -> Self {
        MVec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Applies `J = diag(-1, 1, 1)`, turning a Euclidean covector into the
    /// Minkowski gradient.
    pub fn flip_x(self) -> Self {
        MVec3::new(-self.x, self.y, self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn causal(self) -> CausalType {
        causal_type(self)
    }

    /// Rescales to `<v,v> = ±1`, or to Euclidean unit length if light-like.
    pub fn normalized(self) -> Self {
        let vv = self.dot(self);
        if vv.abs() <= TAU_LIGHT * self.enorm2() {
            self * (1.0 / self.enorm())
        } else {
            self * (1.0 / vv.abs().sqrt())
        }
    }
}

impl From<[f64; 3]> for MVec3 {
    fn from(a: [f64; 3]) -> Self {
        MVec3::from_array(a)
    }
}

impl From<MVec3> for [f64; 3] {
    fn from(v: MVec3) -> Self {
        v.to_array()
    }
}

impl Add for MVec3 {
    type Output = MVec3;
    fn add(self, o: Self) -> Self {
        MVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, o: Self) -> Self {
        MVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for MVec3 {
    type Output = MVec3;
    fn mul(self, s: f64) -> Self {
        MVec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> Self {
        MVec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalType {
    SpaceLike,
    TimeLike,
    LightLike,
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalType::SpaceLike => "space-like",
            CausalType::TimeLike => "time-like",
            CausalType::LightLike => "light-like",
        })
    }
}

pub fn causal_type(v: MVec3) -> CausalType {
    let vv = v.dot(v);
    if vv.abs() <= TAU_LIGHT * v.enorm2() {
        CausalType::LightLike
    } else if vv > 0.0 {
        CausalType::SpaceLike
    } else {
        CausalType::TimeLike
    }
}

/// A point of `H: -x^2 + y^2 + z^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub v: MVec3,
}

impl HPoint {
    pub fn new(v: MVec3) -> Result<Self> {
        let r = v.dot(v) - 1.0;
        if !v.is_finite() || r.abs() > TAU_H {
            return Err(Error::NotOnHyperboloid(r));
        }
        Ok(HPoint { v })
    }

    /// Rescales a vector with `<v,v> > 0` onto `H`.
    pub fn project(v: MVec3) -> Result<Self> {
        let vv = v.dot(v);
        if !(vv > 0.0) {
            return Err(Error::NotOnHyperboloid(vv - 1.0));
        }
        Ok(HPoint {
            v: v * (1.0 / vv.sqrt()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Collared,
    Transverse,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Collared => "collared",
            TableKind::Transverse => "transverse",
        })
    }
}

/// Cones `-x^2/(a-λ) + y^2/(b-λ) + z^2/(c-λ) = 0` confocal with `C_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfocalFamily {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    kind: TableKind,
    exact: Option<[Rational; 3]>,
}

impl ConfocalFamily {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let kind = if 0.0 < a && a < b && b < c {
            TableKind::Collared
        } else if b < 0.0 && 0.0 < a && a < c {
            TableKind::Transverse
        } else {
            return Err(Error::InvalidFamily(format!(
                "need 0<a<b<c or b<0<a<c, got ({a}, {b}, {c})"
            )));
        };
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidFamily("non-finite parameter".into()));
        }
        Ok(ConfocalFamily {
            a,
            b,
            c,
            kind,
            exact: None,
        })
    }

    pub fn from_rationals(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let mut f = Self::new(to_f64(&a), to_f64(&b), to_f64(&c))?;
        f.exact = Some([a, b, c]);
        Ok(f)
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Exact parameters, if the family was built from rationals.
    pub fn exact(&self) -> Option<&[Rational; 3]> {
        self.exact.as_ref()
    }

    /// Boundary form `Q0(p) = -x^2/a + y^2/b + z^2/c`.
    pub fn q0(&self, p: MVec3) -> f64 {
        self.q0_bilinear(p, p)
    }

    pub fn q0_bilinear(&self, p: MVec3, q: MVec3) -> f64 {
        -p.x * q.x / self.a + p.y * q.y / self.b + p.z * q.z / self.c
    }

    /// Euclidean gradient of `Q0 / 2`.
    pub fn q0_grad(&self, p: MVec3) -> MVec3 {
        MVec3::new(-p.x / self.a, p.y / self.b, p.z / self.c)
    }

    /// Left side of the cone equation for `C_λ` multiplied through by
    /// `(a-λ)(b-λ)(c-λ)`; a quadratic in `λ` with leading coefficient `<p,p>`.
    pub fn cone_polynomial(&self, p: MVec3, lambda: f64) -> f64 {
        let (a, b, c) = (self.a, self.b, self.c);
        let (x2, y2, z2) = (p.x * p.x, p.y * p.y, p.z * p.z);
        -x2 * (b - lambda) * (c - lambda)
            + y2 * (a - lambda) * (c - lambda)
            + z2 * (a - lambda) * (b - lambda)
    }
}

/// A caustic parameter, possibly the light-like conic at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Caustic {
    Finite(f64),
    Infinity,
}

impl Caustic {
    pub fn finite(self) -> Option<f64> {
        match self {
            Caustic::Finite(v) => Some(v),
            Caustic::Infinity => None,
        }
    }
}

impl fmt::Display for Caustic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caustic::Finite(v) => write!(f, "{v}"),
            Caustic::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for Caustic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Caustic::Finite(v) => s.serialize_f64(*v),
            Caustic::Infinity => s.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConicKind {
    CollaredEllipse,
    TransverseEllipseXY,
    TransverseEllipseXZ,
    HyperbolicType,
    #[serde(rename = "DegenerateCircle_a")]
    DegenerateCircleA,
    #[serde(rename = "DegenerateHyperbola_b")]
    DegenerateHyperbolaB,
    #[serde(rename = "DegenerateHyperbola_c")]
    DegenerateHyperbolaC,
    AtInfinity,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicCausal {
    SpaceLike,
    TimeLike,
    LightLike,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConicClass {
    pub lambda: Caustic,
    pub kind: ConicKind,
    pub causal: ConicCausal,
}

/// Case table for `C_λ ∩ H`. The causal label describes the conic itself
/// where it has a single type, and `Mixed` where its tangent lines change type.
pub fn classify_conic(lambda: Caustic, fam: &ConfocalFamily) -> ConicClass {
    use ConicCausal::*;
    use ConicKind::*;
    let (a, b, c) = (fam.a, fam.b, fam.c);
    let (kind, causal) = match lambda {
        Caustic::Infinity => (AtInfinity, LightLike),
        Caustic::Finite(l) => match fam.kind {
            TableKind::Collared => {
                if l < a {
                    (CollaredEllipse, SpaceLike)
                } else if l == a {
                    (DegenerateCircleA, SpaceLike)
                } else if l < b {
                    (Empty, Mixed)
                } else if l == b {
                    (DegenerateHyperbolaB, TimeLike)
                } else if l < c {
                    (HyperbolicType, TimeLike)
                } else if l == c {
                    (DegenerateHyperbolaC, Mixed)
                } else {
                    (Empty, TimeLike)
                }
            }
            TableKind::Transverse => {
                if l < b {
                    (HyperbolicType, Mixed)
                } else if l == b {
                    (DegenerateHyperbolaB, TimeLike)
                } else if l < a {
                    (TransverseEllipseXY, Mixed)
                } else if l == a {
                    (DegenerateCircleA, SpaceLike)
                } else if l < c {
                    (TransverseEllipseXZ, Mixed)
                } else if l == c {
                    (DegenerateHyperbolaC, Mixed)
                } else {
                    (HyperbolicType, Mixed)
                }
            }
        },
    };
    ConicClass {
        lambda,
        kind,
        causal,
    }
}

/// Causal type of the billiard trajectories tangent to `C_λ`.
pub fn trajectory_causal(lambda: Caustic, fam: &ConfocalFamily) -> CausalType {
    match lambda {
        Caustic::Infinity => CausalType::LightLike,
        Caustic::Finite(l) => match fam.kind {
            TableKind::Collared => {
                if l < fam.a {
                    CausalType::SpaceLike
                } else {
                    CausalType::TimeLike
                }
            }
            TableKind::Transverse => {
                if l > 0.0 {
                    CausalType::SpaceLike
                } else {
                    CausalType::TimeLike
                }
            }
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobiCoords {
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JacobiResult {
    Coords(JacobiCoords),
    /// Double root: the point lies on one of the joint light-like tangents.
    TangentLineLocus(f64),
    NoRealSolutions,
}

impl JacobiResult {
    pub fn coords(self) -> Option<JacobiCoords> {
        match self {
            JacobiResult::Coords(c) => Some(c),
            _ => None,
        }
    }
}

pub fn jacobi_coords(p: &HPoint, fam: &ConfocalFamily) -> JacobiResult {
    let (a, b, c) = (fam.a, fam.b, fam.c);
    let v = p.v;
    let (x2, y2, z2) = (v.x * v.x, v.y * v.y, v.z * v.z);
    let lead = v.dot(v);
    let lin = x2 * (b + c) - y2 * (a + c) - z2 * (a + b);
    let cst = -x2 * b * c + y2 * a * c + z2 * a * b;
    let scale = lin.abs().max(cst.abs()).max(1.0);
    if lead.abs() < 1e-14 * scale {
        // Linear fallback; the quadratic never degenerates on H.
        let l = -cst / lin;
        return JacobiResult::Coords(JacobiCoords {
            lambda1: l,
            lambda2: l,
        });
    }
    let disc = lin * lin - 4.0 * lead * cst;
    let tol = 1e-10 * (lin * lin + (4.0 * lead * cst).abs());
    if disc.abs() <= tol {
        return JacobiResult::TangentLineLocus(-lin / (2.0 * lead));
    }
    if disc < 0.0 {
        return JacobiResult::NoRealSolutions;
    }
    // Stable quadratic formula.
    let s = disc.sqrt();
    let q = -0.5 * (lin + lin.signum() * s);
    let (r1, r2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / lead, cst / q)
    };
    JacobiResult::Coords(JacobiCoords {
        lambda1: r1.min(r2),
        lambda2: r1.max(r2),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Focus {
    pub label: String,
    pub point: MVec3,
}

/// The twelve foci `F^z_{±±}, F^y_{±±}, F^x_{±±}` of a transverse family.
pub fn foci(fam: &ConfocalFamily) -> Result<Vec<Focus>> {
    let (a, b, c) = (fam.a, fam.b, fam.c);
    let rad = |n: f64, d: f64| -> Result<f64> {
        let r = n / d;
        if r > 0.0 && r.is_finite() {
            Ok(r.sqrt())
        } else {
            Err(Error::InvalidFamily(format!(
                "focus radicand {r} is not positive"
            )))
        }
    };
    let z1 = rad(c - a, a - b)?;
    let z2 = rad(c - b, a - b)?;
    let y1 = rad(a - b, c - a)?;
    let y2 = rad(c - b, c - a)?;
    let x1 = rad(a - b, c - b)?;
    let x2 = rad(c - a, c - b)?;
    let mut out = Vec::with_capacity(12);
    for (s1, t1) in [(1.0, '+'), (-1.0, '-')] {
        for (s2, t2) in [(1.0, '+'), (-1.0, '-')] {
            out.push(Focus {
                label: format!("Fz{t1}{t2}"),
                point: MVec3::new(s1 * z1, s2 * z2, 0.0),
            });
            out.push(Focus {
                label: format!("Fy{t1}{t2}"),
                point: MVec3::new(s1 * y1, 0.0, s2 * y2),
            });
            out.push(Focus {
                label: format!("Fx{t1}{t2}"),
                point: MVec3::new(0.0, s1 * x1, s2 * x2),
            });
        }
    }
    Ok(out)
}

/// Caustic of the plane `w · x = 0`, i.e. the `ν` whose cone it is tangent to.
pub fn caustic_of_plane(w: MVec3, fam: &ConfocalFamily) -> Caustic {
    let (w1, w2, w3) = (w.x * w.x, w.y * w.y, w.z * w.z);
    let den = w1 - w2 - w3;
    if den.abs() <= TAU_LIGHT * w.enorm2() {
        return Caustic::Infinity;
    }
    Caustic::Finite((fam.a * w1 - fam.b * w2 - fam.c * w3) / den)
}

/// Geodesic of `H`: the section of `H` by a plane through the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    pub base: HPoint,
    pub dir: MVec3,
    pub causal: CausalType,
    pub plane_normal: MVec3,
}

impl Geodesic {
    pub fn at(&self, t: f64) -> MVec3 {
        let (p, v) = (self.base.v, self.dir);
        match self.causal {
            CausalType::SpaceLike => p * t.cos() + v * t.sin(),
            CausalType::TimeLike => p * t.cosh() + v * t.sinh(),
            CausalType::LightLike => p + v * t,
        }
    }

    pub fn velocity(&self, t: f64) -> MVec3 {
        let (p, v) = (self.base.v, self.dir);
        match self.causal {
            CausalType::SpaceLike => p * (-t.sin()) + v * t.cos(),
            CausalType::TimeLike => p * t.sinh() + v * t.cosh(),
            CausalType::LightLike => v,
        }
    }
}

pub fn geodesic_at(p: HPoint, v: MVec3) -> Result<Geodesic> {
    if v.enorm2() == 0.0 || !v.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let pv = p.v.dot(v);
    if pv.abs() > TAU_H * v.enorm().max(1.0) {
        return Err(Error::NotTangent(pv));
    }
    let dir = v.normalized();
    let causal = causal_type(dir);
    let n = p.v.cross(dir);
    Ok(Geodesic {
        base: p,
        dir,
        causal,
        plane_normal: n * (1.0 / n.enorm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collared() -> ConfocalFamily {
        ConfocalFamily::new(1.0, 2.0, 3.0).unwrap()
    }

    fn transverse() -> ConfocalFamily {
        ConfocalFamily::new(1.0, -1.0, 3.0).unwrap()
    }

    #[test]
    fn causal_examples() {
        assert_eq!(
            causal_type(MVec3::new(1.0, 1.0, 0.0)),
            CausalType::LightLike
        );
        assert_eq!(
            causal_type(MVec3::new(0.0, 1.0, 0.0)),
            CausalType::SpaceLike
        );
        assert_eq!(causal_type(MVec3::new(1.0, 0.0, 0.0)), CausalType::TimeLike);
    }

    #[test]
    fn geodesic_examples() {
        let p = HPoint::new(MVec3::new(0.0, 0.0, 1.0)).unwrap();
        let g = geodesic_at(p, MVec3::new(0.0, 1.0, 0.0)).unwrap();
        let t = 0.7;
        assert!((g.at(t) - MVec3::new(0.0, t.sin(), t.cos())).enorm() < 1e-15);
        let g = geodesic_at(p, MVec3::new(1.0, 0.0, 0.0)).unwrap();
        assert!((g.at(t) - MVec3::new(t.sinh(), 0.0, t.cosh())).enorm() < 1e-15);
        let g = geodesic_at(p, MVec3::new(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(g.causal, CausalType::LightLike);
        let s = 2.0f64.sqrt();
        assert!((g.at(t * s) - MVec3::new(t, t, 1.0)).enorm() < 1e-14);
        assert!(matches!(
            geodesic_at(p, MVec3::new(0.0, 0.0, 1.0)),
            Err(Error::NotTangent(_))
        ));
    }

    #[test]
    fn jacobi_examples() {
        let fam = collared();
        let p = HPoint::new(MVec3::new(0.0, 0.0, 1.0)).unwrap();
        let j = jacobi_coords(&p, &fam).coords().unwrap();
        assert!((j.lambda1 - 1.0).abs() < 1e-14 && (j.lambda2 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let f = collared();
        let k = classify_conic(Caustic::Finite(0.5), &f);
        assert_eq!(
            (k.kind, k.causal),
            (ConicKind::CollaredEllipse, ConicCausal::SpaceLike)
        );
        let k = classify_conic(Caustic::Finite(2.5), &f);
        assert_eq!(
            (k.kind, k.causal),
            (ConicKind::HyperbolicType, ConicCausal::TimeLike)
        );
        let k = classify_conic(Caustic::Finite(3.0), &transverse());
        assert_eq!(k.kind, ConicKind::DegenerateHyperbolaC);
        assert_eq!(
            classify_conic(Caustic::Infinity, &f).causal,
            ConicCausal::LightLike
        );
    }

    #[test]
    fn foci_example() {
        let f = foci(&transverse()).unwrap();
        assert_eq!(f.len(), 12);
        let fz = f.iter().find(|f| f.label == "Fz++").unwrap();
        assert!((fz.point - MVec3::new(1.0, 2f64.sqrt(), 0.0)).enorm() < 1e-15);
        assert!(matches!(foci(&collared()), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn caustic_examples() {
        let f = collared();
        assert_eq!(
            caustic_of_plane(MVec3::new(0.0, 0.0, 1.0), &f),
            Caustic::Finite(3.0)
        );
        assert_eq!(
            caustic_of_plane(MVec3::new(0.0, 1.0, 0.0), &f),
            Caustic::Finite(2.0)
        );
        assert_eq!(
            caustic_of_plane(MVec3::new(1.0, 1.0, 0.0), &f),
            Caustic::Infinity
        );
    }

    #[test]
    fn family_validation() {
        assert!(ConfocalFamily::new(2.0, 1.0, 3.0).is_err());
        assert!(ConfocalFamily::new(1.0, -1.0, 0.5).is_err());
        assert_eq!(transverse().kind(), TableKind::Transverse);
    }
}

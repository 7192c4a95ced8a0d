//! Rotation numbers `ρ = ∫_{c3}^{∞} / ∫_{c1}^{c2}` of the quartic
//! `T(s) = Π (s − c_i)` built from the reciprocals `1/a, 1/b, 1/c, 1/ν`.

use crate::elliptic::{quartic_integral, QuarticInterval};
use crate::error::{Error, Result};
use crate::exact::sturm::count_roots_open;
use crate::extremal::PellPair;
use crate::minkowski::{ConfocalFamily, TableKind};
use serde::Serialize;
use std::fmt;

/// Winding relation. `I` and `II` share roots (`ν < 0`, or `ν > c` mapped
/// onto `I`); `III` is the hyperbolic-type caustic `ν ∈ (b, c)`.
/// Transverse tables use the sorted reciprocal roots under the same
/// definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationCase {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "transverse")]
    Transverse,
}

impl fmt::Display for RotationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RotationCase::I => "i",
            RotationCase::II => "ii",
            RotationCase::III => "iii",
            RotationCase::Transverse => "transverse",
        })
    }
}

impl std::str::FromStr for RotationCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "1" => Ok(RotationCase::I),
            "ii" | "2" => Ok(RotationCase::II),
            "iii" | "3" => Ok(RotationCase::III),
            "transverse" => Ok(RotationCase::Transverse),
            _ => Err(Error::Parse(format!("unknown rotation case '{s}'"))),
        }
    }
}

/// Ordered roots `c0 < c1 < c2 < c3` with their origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuarticSpec {
    pub roots: [f64; 4],
    pub case: RotationCase,
    pub nu: f64,
}

impl QuarticSpec {
    /// Builds from raw roots, which are sorted and must be distinct.
    pub fn from_roots(mut roots: [f64; 4], case: RotationCase, nu: f64) -> Result<Self> {
        roots.sort_by(f64::total_cmp);
        if roots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::CoincidentRoots);
        }
        Ok(Self { roots, case, nu })
    }

    /// Roots for `(fam, ν)`. On a collared table `case` picks between the
    /// two relations sharing `ν < 0`; it is otherwise inferred.
    pub fn for_caustic(fam: &ConfocalFamily, nu: f64, case: Option<RotationCase>) -> Result<Self> {
        if nu == 0.0 || !nu.is_finite() {
            return Err(Error::NuOutOfRange(format!("ν = {nu}")));
        }
        let r = [1.0 / fam.a, 1.0 / fam.b, 1.0 / fam.c, 1.0 / nu];
        let inferred = match fam.kind() {
            TableKind::Collared if nu < 0.0 || nu > fam.c => match case {
                Some(RotationCase::II) => RotationCase::II,
                _ => RotationCase::I,
            },
            TableKind::Collared if fam.b < nu && nu < fam.c => RotationCase::III,
            TableKind::Collared => {
                return Err(Error::NuOutOfRange(format!(
                    "ν = {nu} lies in (0, b], outside every collared case"
                )))
            }
            TableKind::Transverse => RotationCase::Transverse,
        };
        if let Some(c) = case {
            if c != inferred {
                return Err(Error::NuOutOfRange(format!(
                    "ν = {nu} is not in case ({c})"
                )));
            }
        }
        Self::from_roots(r, inferred, nu)
    }

    pub fn inner(&self) -> Result<f64> {
        quartic_integral(self.roots, QuarticInterval::Inner)
    }

    pub fn tail(&self) -> Result<f64> {
        quartic_integral(self.roots, QuarticInterval::Tail)
    }
}

/// `ρ = ∫_{c3}^{∞} ds/√T / ∫_{c1}^{c2} ds/√T`, required to lie in `(0, 1)`.
pub fn rotation_number(spec: &QuarticSpec) -> Result<f64> {
    let rho = spec.tail()? / spec.inner()?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::ConstraintViolated(format!(
            "ρ = {rho} outside (0, 1)"
        )));
    }
    Ok(rho)
}

/// `ρ` for a caustic, inferring the case.
pub fn rotation_for(fam: &ConfocalFamily, nu: f64) -> Result<f64> {
    rotation_number(&QuarticSpec::for_caustic(fam, nu, None)?)
}

/// Relative defect of `∫_{c1}^{c2} = ∫_{-∞}^{c0} + ∫_{c3}^{∞}`, the
/// homology of the cycles around `[ν, a]` and `[b, c]`.
pub fn homology_residual(spec: &QuarticSpec) -> Result<f64> {
    let inner = spec.inner()?;
    let lower = quartic_integral(spec.roots, QuarticInterval::Lower)?;
    Ok((lower + spec.tail()? - inner).abs() / inner)
}

/// Winding integers of one case for an `n`-periodic caustic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseDecomposition {
    pub case: RotationCase,
    pub roots: [f64; 4],
    pub rho: f64,
    pub n: usize,
    pub n1: i64,
    /// `(name, value)` pairs: `m0, m1` for (i), `m2, m3` for (ii), `m4, m5`
    /// for (iii).
    pub m: [(String, i64); 2],
    /// `|ρ n − n₁|`.
    pub residual: f64,
    /// `ρ n` is an integer in `(0, n)` to `1e-6`.
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology_residual: Option<f64>,
}

/// Case relation and integers for `(fam, ν, n)` on a collared table.
pub fn case_decomposition(
    fam: &ConfocalFamily,
    nu: f64,
    n: usize,
    case: Option<RotationCase>,
) -> Result<CaseDecomposition> {
    if fam.kind() != TableKind::Collared {
        return Err(Error::NotCollared);
    }
    let spec = QuarticSpec::for_caustic(fam, nu, case)?;
    let rho = rotation_number(&spec)?;
    let n1 = (rho * n as f64).round() as i64;
    let residual = (rho * n as f64 - n1 as f64).abs();
    let ni = n as i64;
    let (m, hom) = match spec.case {
        RotationCase::I => ([("m0".into(), ni), ("m1".into(), -n1)], None),
        RotationCase::II => (
            [("m2".into(), ni), ("m3".into(), ni - n1)],
            Some(homology_residual(&spec)?),
        ),
        _ => ([("m4".into(), ni), ("m5".into(), -n1)], None),
    };
    Ok(CaseDecomposition {
        case: spec.case,
        roots: spec.roots,
        rho,
        n,
        n1,
        m,
        residual,
        consistent: residual <= 1e-6 && 0 < n1 && n1 < ni,
        homology_residual: hom,
    })
}

/// `μ = 1/ν` range of a collared case: the moving root is `c0` in (i)/(ii)
/// and `c1` in (iii).
fn mu_range(fam: &ConfocalFamily, case: RotationCase) -> Result<(f64, f64)> {
    match case {
        RotationCase::I | RotationCase::II => Ok((-1e6 / fam.a, 1.0 / fam.c)),
        RotationCase::III => Ok((1.0 / fam.c, 1.0 / fam.b)),
        RotationCase::Transverse => Err(Error::NotCollared),
    }
}

fn rho_at_mu(fam: &ConfocalFamily, mu: f64, case: RotationCase) -> Result<f64> {
    let spec =
        QuarticSpec::from_roots([1.0 / fam.a, 1.0 / fam.b, 1.0 / fam.c, mu], case, 1.0 / mu)?;
    rotation_number(&spec)
}

/// `ν` with `ρ(ν) = target`, by bisection in `μ = 1/ν` along which `ρ` is
/// monotone.
pub fn find_caustic_for_rotation(
    fam: &ConfocalFamily,
    target: f64,
    case: RotationCase,
) -> Result<f64> {
    if fam.kind() != TableKind::Collared {
        return Err(Error::NotCollared);
    }
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::NotBracketed(target));
    }
    let (lo, hi) = mu_range(fam, case)?;
    let eps = 1e-9 * (hi - lo).min(hi.abs().max(lo.abs().min(1.0)));
    let (mut a, mut b) = (lo + eps, hi - eps);
    let (ra, rb) = (rho_at_mu(fam, a, case)?, rho_at_mu(fam, b, case)?);
    if (ra - target) * (rb - target) > 0.0 {
        return Err(Error::NotBracketed(target));
    }
    let increasing = rb > ra;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let r = rho_at_mu(fam, mid, case)?;
        if (r < target) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mu = 0.5 * (a + b);
    if mu == 0.0 {
        return Err(Error::NuOutOfRange("ν = ∞".into()));
    }
    Ok(1.0 / mu)
}

/// Zeros of `p̂_n` in `(c0, c1)`, counted with Sturm sequences.
pub fn sturm_zero_count(pair: &PellPair) -> usize {
    let mut r = pair.quartic_roots.clone();
    r.sort();
    count_roots_open(&pair.p_hat, &r[0], &r[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam() -> ConfocalFamily {
        ConfocalFamily::new(1.0, 2.0, 3.0).unwrap()
    }

    #[test]
    fn case_mapping() {
        let s = QuarticSpec::for_caustic(&fam(), 2.5, None).unwrap();
        assert_eq!(s.case, RotationCase::III);
        assert_eq!(s.roots, [1.0 / 3.0, 0.4, 0.5, 1.0]);
        let s = QuarticSpec::for_caustic(&fam(), -2.0, None).unwrap();
        assert_eq!((s.case, s.roots[0]), (RotationCase::I, -0.5));
        assert!(QuarticSpec::for_caustic(&fam(), 1.5, None).is_err());
        assert!(QuarticSpec::for_caustic(&fam(), 2.5, Some(RotationCase::I)).is_err());
    }

    #[test]
    fn period4_root_has_rho_half() {
        let d = case_decomposition(&fam(), -6.0, 4, None).unwrap();
        assert!(d.consistent && d.n1 == 2, "{d:?}");
        let d = case_decomposition(&fam(), -6.0, 4, Some(RotationCase::II)).unwrap();
        assert!(d.homology_residual.unwrap() < 1e-8);
        assert_eq!(d.m[1].1, 2);
    }

    #[test]
    fn inverse_round_trip() {
        let nu = find_caustic_for_rotation(&fam(), 0.5, RotationCase::I).unwrap();
        assert!((nu + 6.0).abs() < 1e-8, "{nu}");
        assert!(matches!(
            find_caustic_for_rotation(&fam(), 1.0, RotationCase::I),
            Err(Error::NotBracketed(_))
        ));
    }

    #[test]
    fn monotone_in_mu() {
        let mut prev = f64::INFINITY;
        for i in 1..40 {
            let mu = -5.0 + i as f64 * (5.0 + 1.0 / 3.0) / 40.0;
            let r = rho_at_mu(&fam(), mu, RotationCase::I).unwrap();
            assert!(r < prev);
            prev = r;
        }
    }
}

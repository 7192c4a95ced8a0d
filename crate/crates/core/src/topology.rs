//! Liouville foliation census: the static case table of level sets and a
//! numerical component counter used to validate it.

use crate::dynamics::{random_interior_start, run, BilliardTable, RunOutcome};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::minkowski::{
    geodesic_at, trajectory_causal, CausalType, Caustic, ConfocalFamily, MVec3, TableKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Atom {
    A,
    B,
    C2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LevelNote {
    Resonant,
    Separatrix,
    Regular,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelSetClass {
    pub lambda: Caustic,
    pub tori_count: usize,
    pub atom: Option<Atom>,
    /// How many atoms of that kind sit at this level.
    pub atom_count: usize,
    pub notes: LevelNote,
}

/// Level set of the caustic parameter on a table of the given kind, with
/// `a, b, c` taken from `fam`.
pub fn classify_level_set(fam: &ConfocalFamily, lambda: Caustic) -> LevelSetClass {
    let (a, b, c) = (fam.a, fam.b, fam.c);
    let mk = |tori, atom, atom_count, notes| LevelSetClass {
        lambda,
        tori_count: tori,
        atom,
        atom_count,
        notes,
    };
    let Caustic::Finite(l) = lambda else {
        return match fam.kind() {
            TableKind::Collared => mk(2, None, 0, LevelNote::Regular),
            TableKind::Transverse => mk(1, None, 0, LevelNote::Regular),
        };
    };
    match fam.kind() {
        TableKind::Transverse => {
            if l == a || l == b {
                mk(1, Some(Atom::B), 1, LevelNote::Separatrix)
            } else if l == 0.0 {
                mk(0, Some(Atom::A), 2, LevelNote::Separatrix)
            } else if b < l && l < a {
                mk(2, None, 0, LevelNote::Regular)
            } else {
                mk(1, None, 0, LevelNote::Regular)
            }
        }
        TableKind::Collared => {
            if l == c {
                mk(0, Some(Atom::C2), 1, LevelNote::Separatrix)
            } else if l == a || l == b {
                mk(0, Some(Atom::A), 2, LevelNote::Separatrix)
            } else if a < l && l < b {
                mk(0, None, 0, LevelNote::Empty)
            } else if 0.0 <= l && l < a {
                mk(2, None, 0, LevelNote::Resonant)
            } else {
                mk(2, None, 0, LevelNote::Regular)
            }
        }
    }
}

/// Coordinate signs held along an orbit (0 when they change) and the sense
/// of winding around the `x` axis (0 when it reverses).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub x: i8,
    pub y: i8,
    pub z: i8,
    pub winding: i8,
}

fn constant_sign(vals: impl Iterator<Item = f64>, tol: f64) -> i8 {
    let (mut pos, mut neg) = (false, false);
    for v in vals {
        pos |= v > tol;
        neg |= v < -tol;
    }
    match (pos, neg) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Signature of a sampled closed or long orbit.
pub fn signature(points: &[MVec3]) -> Signature {
    let tol = 1e-9;
    let cross = points.windows(2).map(|w| w[0].y * w[1].z - w[0].z * w[1].y);
    Signature {
        x: constant_sign(points.iter().map(|p| p.x), tol),
        y: constant_sign(points.iter().map(|p| p.y), tol),
        z: constant_sign(points.iter().map(|p| p.z), tol),
        winding: constant_sign(cross, 1e-12),
    }
}

/// Result of the numerical census of one level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentCount {
    pub lambda: f64,
    pub count: usize,
    pub samples: usize,
    /// Seeds actually placed on the level set.
    pub seeded: usize,
    /// Seeds whose trajectory never reaches the boundary.
    pub never_hit: usize,
    pub signatures: Vec<Signature>,
}

/// Seeds `samples` states on the level `λ`, follows each one and clusters
/// the orbits by [`Signature`].
pub fn count_components_numeric(
    table: &BilliardTable,
    lambda: f64,
    samples: usize,
    seed: u64,
) -> Result<ComponentCount> {
    let fam = &table.fam;
    if [0.0, fam.a, fam.b, fam.c].contains(&lambda) || !lambda.is_finite() {
        return Err(Error::DegenerateLevel(lambda));
    }
    let caustic = Caustic::Finite(lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<_> = (0..samples)
        .filter_map(|_| random_interior_start(table, caustic, &mut rng))
        .collect();
    let orbits = par_map(&starts, |(p, v)| -> Result<(Signature, bool)> {
        match run(p, *v, table, 80)? {
            RunOutcome::Trajectory(t) => Ok((signature(&t.polyline(12)), false)),
            RunOutcome::NeverHitsBoundary { .. } => {
                let g = geodesic_at(*p, *v)?;
                if g.causal != CausalType::SpaceLike {
                    return Err(Error::DegenerateLevel(lambda));
                }
                let pts: Vec<MVec3> = (0..256)
                    .map(|k| g.at(k as f64 * std::f64::consts::TAU / 256.0))
                    .collect();
                Ok((signature(&pts), true))
            }
        }
    });
    let mut sigs = BTreeSet::new();
    let mut never_hit = 0;
    for o in orbits {
        let (sig, nh) = o?;
        sigs.insert(sig);
        never_hit += usize::from(nh);
    }
    let seeded = starts.len();
    Ok(ComponentCount {
        lambda,
        count: sigs.len(),
        samples,
        seeded,
        never_hit,
        signatures: sigs.into_iter().collect(),
    })
}

/// One open interval of the census.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusBand {
    pub range: String,
    /// Representative level inside the band; `None` for `λ = ∞`.
    pub sample: Option<f64>,
    pub tori_count: usize,
    pub notes: LevelNote,
    pub causal: CausalType,
}

/// One singular level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusAtom {
    pub lambda: String,
    pub atom: Atom,
    pub count: usize,
}

/// Edge of the Fomenko graph with its marks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEdge {
    pub from: String,
    pub to: String,
    pub r: String,
    pub epsilon: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Census {
    pub table: TableKind,
    pub bands: Vec<CensusBand>,
    pub atoms: Vec<CensusAtom>,
    pub edges: Vec<CensusEdge>,
    /// `n` marks on families, by atom location.
    pub n_marks: Vec<(String, i64)>,
    /// Gluing matrices, row-major.
    pub gluing: Vec<(String, [[i8; 2]; 2])>,
    /// Billiard-book permutations in cycle notation on sheets 1..4.
    pub billiard_book: Vec<(String, String)>,
}

/// Static census for the table kind of `fam`.
pub fn census(fam: &ConfocalFamily) -> Census {
    let band = |range: &str, l: f64| {
        let c = classify_level_set(fam, Caustic::Finite(l));
        CensusBand {
            range: range.into(),
            sample: Some(l),
            tori_count: c.tori_count,
            notes: c.notes,
            causal: trajectory_causal(Caustic::Finite(l), fam),
        }
    };
    let inf = classify_level_set(fam, Caustic::Infinity);
    let inf_band = CensusBand {
        range: "inf".into(),
        sample: None,
        tori_count: inf.tori_count,
        notes: inf.notes,
        causal: CausalType::LightLike,
    };
    let atom = |l: &str, atom, count| CensusAtom {
        lambda: l.into(),
        atom,
        count,
    };
    let edge = |f: &str, t: &str, r: &str, e| CensusEdge {
        from: f.into(),
        to: t.into(),
        r: r.into(),
        epsilon: e,
    };
    let (a, b, c) = (fam.a, fam.b, fam.c);
    match fam.kind() {
        TableKind::Collared => Census {
            table: TableKind::Collared,
            bands: vec![
                band("(-inf,0)", -1.0 - c),
                band("(0,a)", a / 2.0),
                band("(a,b)", (a + b) / 2.0),
                band("(b,c)", (b + c) / 2.0),
                band("(c,inf)", 2.0 * c),
                inf_band,
            ],
            atoms: vec![
                atom("a", Atom::A, 2),
                atom("b", Atom::A, 2),
                atom("c", Atom::C2, 1),
            ],
            edges: vec![
                edge("C2(c)", "A(b)#1", "0", 1),
                edge("C2(c)", "A(a)#1", "inf", 1),
                edge("C2(c)", "A(b)#2", "0", 1),
                edge("C2(c)", "A(a)#2", "inf", 1),
            ],
            n_marks: vec![],
            gluing: vec![
                ("A_L".into(), [[0, 1], [1, 0]]),
                ("A_R".into(), [[1, 0], [0, -1]]),
            ],
            billiard_book: [
                ("sigma1", "(12)(34)"),
                ("sigma2", "(14)(23)"),
                ("sigma3", "id"),
                ("sigma4", "id"),
            ]
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .to_vec(),
        },
        TableKind::Transverse => Census {
            table: TableKind::Transverse,
            bands: vec![
                band("(-inf,b)", b - 1.0),
                band("(b,0)", b / 2.0),
                band("(0,a)", a / 2.0),
                band("(a,c)", (a + c) / 2.0),
                band("(c,inf)", 2.0 * c),
                inf_band,
            ],
            atoms: vec![
                atom("0-", Atom::A, 2),
                atom("0+", Atom::A, 2),
                atom("a", Atom::B, 1),
                atom("b", Atom::B, 1),
            ],
            edges: vec![
                edge("B(a)", "A(0+)#1", "0", 1),
                edge("B(a)", "A(0+)#2", "0", 1),
                edge("B(a)", "B(b)", "0", -1),
                edge("B(b)", "A(0-)#1", "0", 1),
                edge("B(b)", "A(0-)#2", "0", 1),
            ],
            n_marks: vec![("B(a)".into(), 0), ("B(b)".into(), 0)],
            gluing: vec![],
            billiard_book: vec![],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_table() {
        let t = ConfocalFamily::new(1.0, -1.0, 3.0).unwrap();
        assert_eq!(classify_level_set(&t, Caustic::Finite(2.0)).tori_count, 1);
        assert_eq!(classify_level_set(&t, Caustic::Finite(0.5)).tori_count, 2);
        assert_eq!(
            classify_level_set(&t, Caustic::Finite(1.0)).atom,
            Some(Atom::B)
        );
        let c = ConfocalFamily::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(
            classify_level_set(&c, Caustic::Finite(3.0)).atom,
            Some(Atom::C2)
        );
        let r = classify_level_set(&c, Caustic::Finite(0.5));
        assert_eq!((r.tori_count, r.notes), (2, LevelNote::Resonant));
        assert_eq!(
            classify_level_set(&c, Caustic::Finite(1.5)).notes,
            LevelNote::Empty
        );
    }

    #[test]
    fn signatures() {
        let pts = [MVec3::new(1.0, 1.0, 0.5), MVec3::new(-1.0, 0.5, 1.0)];
        assert_eq!(
            signature(&pts),
            Signature {
                x: 0,
                y: 1,
                z: 1,
                winding: 1
            }
        );
    }

    #[test]
    fn numeric_hyperbolic_band() {
        let table = BilliardTable::new(ConfocalFamily::new(1.0, 2.0, 3.0).unwrap());
        let r = count_components_numeric(&table, 2.5, 12, 3).unwrap();
        assert_eq!(r.count, 2, "{r:?}");
        assert!(count_components_numeric(&table, 3.0, 4, 3).is_err());
    }
}

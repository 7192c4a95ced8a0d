//! Billiard flow inside a confocal conic on `H`: geodesic flow to the
//! boundary, Minkowski reflection, trajectories and closure detection.

use crate::error::{Error, Result};
use crate::minkowski::{
    causal_type, caustic_of_plane, jacobi_coords, CausalType, Caustic, ConfocalFamily, HPoint,
    JacobiCoords, MVec3, TableKind, TAU_H, TAU_LIGHT,
};
use rand::Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Arc parameters below this are the current bounce, not a new one.
pub const TAU_STEP: f64 = 1e-9;
/// Cartesian closure tolerance.
pub const CLOSURE_TOL: f64 = 1e-6;
/// Jacobi-track closure tolerance.
pub const JACOBI_TOL: f64 = 1e-8;

/// The compact table: the collar of `C_0` around the neck of `H`, or the
/// upper (`z > 0`) disc of a transverse `C_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilliardTable {
    pub fam: ConfocalFamily,
}

impl BilliardTable {
    pub fn new(fam: ConfocalFamily) -> Self {
        BilliardTable { fam }
    }

    pub fn kind(&self) -> TableKind {
        self.fam.kind()
    }

    pub fn contains(&self, p: MVec3) -> bool {
        let inside = self.fam.q0(p) >= -1e-12;
        match self.kind() {
            TableKind::Collared => inside,
            TableKind::Transverse => inside && p.z > 0.0,
        }
    }

    pub fn on_boundary(&self, p: MVec3) -> bool {
        self.fam.q0(p).abs() <= TAU_H * self.fam.q0_grad(p).enorm().max(1.0)
            && (p.dot(p) - 1.0).abs() <= TAU_H
    }

    /// Boundary point at angle `phi`. For the collared table `upper` picks
    /// the component with `x > 0`; the transverse boundary is a single curve.
    pub fn boundary_point(&self, phi: f64, upper: bool) -> HPoint {
        let (a, b, c) = (self.fam.a, self.fam.b, self.fam.c);
        let v = match self.kind() {
            TableKind::Collared => {
                let y = phi.cos() / (1.0 - a / b).sqrt();
                let z = phi.sin() / (1.0 - a / c).sqrt();
                let x = (a * (y * y / b + z * z / c)).sqrt();
                MVec3::new(if upper { x } else { -x }, y, z)
            }
            TableKind::Transverse => {
                let x = phi.cos() / (c / a - 1.0).sqrt();
                let y = phi.sin() / (1.0 - c / b).sqrt();
                let z = (c * (x * x / a - y * y / b)).sqrt();
                MVec3::new(x, y, z)
            }
        };
        HPoint { v }
    }

    /// Inward boundary normal inside `T_q H` and the Euclidean gradient of `Q0`.
    pub fn normal(&self, q: MVec3) -> (MVec3, MVec3) {
        let g = self.fam.q0_grad(q);
        let gh = g.flip_x();
        let n = gh - q * gh.dot(q);
        (if g.edot(n) < 0.0 { -n } else { n }, g)
    }

    /// Tangent to the boundary curve at `q`.
    pub fn boundary_tangent(&self, q: MVec3) -> MVec3 {
        q.flip_x().cross(self.fam.q0_grad(q))
    }
}

/// Reflection outcome; `retro` marks the light-like-normal branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reflection {
    pub v_out: MVec3,
    pub retro: bool,
}

pub fn reflect_flagged(q: &HPoint, v_in: MVec3, table: &BilliardTable) -> Result<Reflection> {
    let qv = q.v;
    if !table.on_boundary(qv) {
        return Err(Error::NotOnBoundary(table.fam.q0(qv)));
    }
    let t = qv.dot(v_in);
    if t.abs() > 1e-8 * v_in.enorm().max(1.0) {
        return Err(Error::NotTangent(t));
    }
    let (n, _) = table.normal(qv);
    let nn = n.dot(n);
    if nn.abs() < TAU_LIGHT * n.enorm2() {
        return Ok(Reflection {
            v_out: -v_in,
            retro: true,
        });
    }
    Ok(Reflection {
        v_out: v_in - n * (2.0 * v_in.dot(n) / nn),
        retro: false,
    })
}

/// Minkowski reflection in the boundary normal.
pub fn reflect(q: &HPoint, v_in: MVec3, table: &BilliardTable) -> Result<MVec3> {
    reflect_flagged(q, v_in, table).map(|r| r.v_out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bounce {
    Hit { point: HPoint, t: f64, v_in: MVec3 },
    NeverHitsBoundary,
}

fn real_quadratic_roots(a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let scale = a2.abs().max(a1.abs()).max(a0.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a2.abs() <= 1e-14 * scale {
        return if a1 != 0.0 { vec![-a0 / a1] } else { vec![] };
    }
    let d = a1 * a1 - 4.0 * a2 * a0;
    if d < 0.0 {
        if d > -1e-14 * a1 * a1 {
            return vec![-a1 / (2.0 * a2)];
        }
        return vec![];
    }
    let s = d.sqrt();
    let q = -0.5 * (a1 + if a1 >= 0.0 { s } else { -s });
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a2, a0 / q]
}

/// First boundary hit along the geodesic through `q` with velocity `v`,
/// from the closed-form trigonometric, hyperbolic or quadratic equation.
pub fn next_bounce(q: &HPoint, v: MVec3, table: &BilliardTable) -> Result<Bounce> {
    if v.enorm2() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let fam = &table.fam;
    let p = q.v;
    let v = v.normalized();
    let causal = causal_type(v);
    let (a, b, c) = (fam.q0(p), fam.q0_bilinear(p, v), fam.q0(v));
    let gamma = |t: f64| match causal {
        CausalType::SpaceLike => p * t.cos() + v * t.sin(),
        CausalType::TimeLike => p * t.cosh() + v * t.sinh(),
        CausalType::LightLike => p + v * t,
    };
    let vel = |t: f64| match causal {
        CausalType::SpaceLike => p * (-t.sin()) + v * t.cos(),
        CausalType::TimeLike => p * t.sinh() + v * t.cosh(),
        CausalType::LightLike => v,
    };
    let mut cands: Vec<f64> = Vec::new();
    let from_boundary = table.on_boundary(p);
    // With t = 0 divided out, arbitrarily short arcs are genuine.
    let t_min = if from_boundary { 0.0 } else { TAU_STEP };
    if from_boundary {
        // Q(γ(t)) has the root t = 0; the other one solves 2b + c·tan(t) = 0
        // (tanh, or linear, for the other causal types).
        let r = -2.0 * b / c;
        match causal {
            CausalType::SpaceLike => cands.push((-2.0 * b).atan2(c).rem_euclid(PI)),
            CausalType::TimeLike if r.abs() < 1.0 => cands.push(r.atanh()),
            CausalType::TimeLike => {}
            CausalType::LightLike => cands.push(r),
        }
    } else {
        match causal {
            CausalType::SpaceLike => {
                let m = 0.5 * (a + c);
                let pp = 0.5 * (a - c);
                let r = pp.hypot(b);
                if r < m.abs() || r == 0.0 {
                    return Ok(Bounce::NeverHitsBoundary);
                }
                let phi = b.atan2(pp);
                let base = (-m / r).clamp(-1.0, 1.0).acos();
                for s in [phi + base, phi - base] {
                    for k in -2..=4 {
                        cands.push(0.5 * (s + TAU * k as f64));
                    }
                }
            }
            CausalType::TimeLike => {
                let (w2, w1, w0) = (a + 2.0 * b + c, 2.0 * (a - c), a - 2.0 * b + c);
                for w in real_quadratic_roots(w2, w1, w0) {
                    if w > 0.0 {
                        cands.push(0.5 * w.ln());
                    }
                }
            }
            CausalType::LightLike => cands.extend(real_quadratic_roots(c, 2.0 * b, a)),
        }
    }
    let Some(mut t) = cands
        .into_iter()
        .filter(|&t| t > t_min && t.is_finite())
        .min_by(|x, y| x.total_cmp(y))
    else {
        return Ok(Bounce::NeverHitsBoundary);
    };
    if causal == CausalType::SpaceLike && t > PI + 1e-9 {
        return Ok(Bounce::NeverHitsBoundary);
    }
    for _ in 0..3 {
        let g = gamma(t);
        let d = 2.0 * fam.q0_bilinear(g, vel(t));
        if d == 0.0 {
            break;
        }
        let step = fam.q0(g) / d;
        if !step.is_finite() || step.abs() > 1e-6 {
            break;
        }
        t -= step;
    }
    let point = gamma(t);
    Ok(Bounce::Hit {
        point: HPoint { v: point },
        t,
        v_in: vel(t),
    })
}

/// Pulls a numerically drifted state back onto `C_0 ∩ H` with a tangent,
/// normalized velocity.
pub fn project_state(table: &BilliardTable, q: MVec3, v: MVec3) -> (HPoint, MVec3) {
    let fam = &table.fam;
    let mut q = q * (1.0 / q.dot(q).sqrt());
    for _ in 0..3 {
        let (n, g) = table.normal(q);
        let d = 2.0 * g.edot(n);
        if d != 0.0 {
            q = q - n * (fam.q0(q) / d);
        }
        q = q * (1.0 / q.dot(q).sqrt());
    }
    let v = v - q * v.dot(q);
    (HPoint { v: q }, v.normalized())
}

/// Tangency form of `C_ν` on plane normals: zero iff the plane `w·x = 0`
/// touches the cone.
pub fn tangency_form(caustic: Caustic, fam: &ConfocalFamily) -> [f64; 3] {
    match caustic {
        Caustic::Finite(nu) => [nu - fam.a, fam.b - nu, fam.c - nu],
        Caustic::Infinity => [1.0, -1.0, -1.0],
    }
}

fn form(p: &[f64; 3], u: MVec3, w: MVec3) -> f64 {
    p[0] * u.x * w.x + p[1] * u.y * w.y + p[2] * u.z * w.z
}

/// Tangent directions at `q` (in span of `e1, e2`) whose geodesic is tangent
/// to `C_ν`, not normalized or oriented.
pub fn tangent_directions(
    q: MVec3,
    e1: MVec3,
    e2: MVec3,
    caustic: Caustic,
    fam: &ConfocalFamily,
) -> Vec<MVec3> {
    let p = tangency_form(caustic, fam);
    let (w1, w2) = (q.cross(e1), q.cross(e2));
    let (a, b, c) = (form(&p, w1, w1), form(&p, w1, w2), form(&p, w2, w2));
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![];
    }
    let mut out = Vec::new();
    if c.abs() <= 1e-13 * scale {
        out.push(e2);
        if b != 0.0 {
            out.push(e1 + e2 * (-a / (2.0 * b)));
        }
        return out;
    }
    let disc = b * b - a * c;
    if disc < -1e-13 * scale * scale {
        return out;
    }
    let s = disc.max(0.0).sqrt();
    for r in [(-b + s) / c, (-b - s) / c] {
        out.push(e1 + e2 * r);
    }
    out
}

/// Inward unit directions at a boundary point tangent to the caustic.
pub fn directions_for_caustic(
    q: &HPoint,
    caustic: Caustic,
    table: &BilliardTable,
) -> Result<Vec<MVec3>> {
    if !table.on_boundary(q.v) {
        return Err(Error::NotOnBoundary(table.fam.q0(q.v)));
    }
    let (n, g) = table.normal(q.v);
    let tau = table.boundary_tangent(q.v);
    let dirs = tangent_directions(q.v, tau, n, caustic, &table.fam);
    if dirs.is_empty() {
        return Err(Error::NoDirection(format!(
            "no boundary direction for caustic {caustic}"
        )));
    }
    Ok(dirs
        .into_iter()
        .map(|v| {
            let v = v.normalized();
            if g.edot(v) < 0.0 {
                -v
            } else {
                v
            }
        })
        .collect())
}

/// Orthogonal-ish basis of `T_p H`.
pub fn tangent_basis(p: MVec3) -> (MVec3, MVec3) {
    let jp = p.flip_x();
    let axis = if jp.x.abs() < 0.9 * jp.enorm() {
        MVec3::new(1.0, 0.0, 0.0)
    } else {
        MVec3::new(0.0, 1.0, 0.0)
    };
    let e1 = jp.cross(axis);
    let e2 = jp.cross(e1);
    (e1 * (1.0 / e1.enorm()), e2 * (1.0 / e2.enorm()))
}

/// Directions at an arbitrary point of `H` tangent to the caustic, both
/// orientations included.
pub fn interior_directions(p: &HPoint, caustic: Caustic, fam: &ConfocalFamily) -> Vec<MVec3> {
    let (e1, e2) = tangent_basis(p.v);
    tangent_directions(p.v, e1, e2, caustic, fam)
        .into_iter()
        .flat_map(|v| {
            let v = v.normalized();
            [v, -v]
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BounceRecord {
    pub p: MVec3,
    pub v_in: MVec3,
    pub v_out: MVec3,
    /// Arc parameter of the segment that ended at this bounce.
    #[serde(skip)]
    pub arc: f64,
    #[serde(skip)]
    pub retro: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Closure {
    /// Smallest Cartesian period, if any.
    pub n: Option<usize>,
    /// Gap at `n`, or the smallest gap observed when nothing closed.
    pub cartesian_gap: f64,
    pub jacobi_gap: f64,
    /// Smallest period of the Jacobi-coordinate track.
    pub jacobi_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableInfo {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub kind: TableKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub table: TableInfo,
    pub caustic: Caustic,
    pub causal: CausalType,
    pub bounces: Vec<BounceRecord>,
    #[serde(serialize_with = "ser_jacobi")]
    pub jacobi: Vec<Option<JacobiCoords>>,
    pub closure: Closure,
}

fn ser_jacobi<S: serde::Serializer>(
    j: &[Option<JacobiCoords>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(j.iter().map(|c| c.map(|c| [c.lambda1, c.lambda2])))
}

impl Trajectory {
    /// Euclidean gap between bounce `n` and bounce 0, combining the point
    /// and the unit outgoing direction.
    pub fn gap(&self, n: usize) -> f64 {
        let (b0, bn) = (&self.bounces[0], &self.bounces[n]);
        let u0 = b0.v_out * (1.0 / b0.v_out.enorm());
        let un = bn.v_out * (1.0 / bn.v_out.enorm());
        (bn.p - b0.p).enorm().max((un - u0).enorm())
    }

    pub fn jacobi_gap(&self, n: usize) -> f64 {
        match (self.jacobi[0], self.jacobi[n]) {
            (Some(a), Some(b)) => (a.lambda1 - b.lambda1)
                .abs()
                .max((a.lambda2 - b.lambda2).abs()),
            _ => f64::INFINITY,
        }
    }

    /// Per-segment caustic parameters.
    pub fn segment_caustics(&self) -> Vec<Caustic> {
        self.bounces
            .iter()
            .map(|b| caustic_of_plane(b.p.cross(b.v_out), &fam_of(&self.table)))
            .collect()
    }

    /// Points sampled along each arc, for plotting.
    pub fn polyline(&self, per_arc: usize) -> Vec<MVec3> {
        let mut out = Vec::new();
        for w in self.bounces.windows(2) {
            let (p, v) = (w[0].p, w[0].v_out.normalized());
            let t1 = w[1].arc;
            for k in 0..per_arc {
                let t = t1 * k as f64 / per_arc as f64;
                out.push(match causal_type(v) {
                    CausalType::SpaceLike => p * t.cos() + v * t.sin(),
                    CausalType::TimeLike => p * t.cosh() + v * t.sinh(),
                    CausalType::LightLike => p + v * t,
                });
            }
        }
        if let Some(b) = self.bounces.last() {
            out.push(b.p);
        }
        out
    }
}

fn fam_of(t: &TableInfo) -> ConfocalFamily {
    ConfocalFamily::new(t.a, t.b, t.c).expect("table info comes from a valid family")
}

#[derive(Clone, Debug, PartialEq)]
pub enum RunOutcome {
    Trajectory(Trajectory),
    /// The geodesic through the start never meets `C_0` (resonant band).
    NeverHitsBoundary {
        start: HPoint,
        caustic: Caustic,
    },
}

impl RunOutcome {
    pub fn trajectory(self) -> Option<Trajectory> {
        match self {
            RunOutcome::Trajectory(t) => Some(t),
            RunOutcome::NeverHitsBoundary { .. } => None,
        }
    }
}

/// Iterates the billiard map for `max_bounces` reflections. A boundary start
/// is bounce 0 with `v0` as its outgoing velocity; an interior start flows
/// to the boundary first.
pub fn run(
    q0: &HPoint,
    v0: MVec3,
    table: &BilliardTable,
    max_bounces: usize,
) -> Result<RunOutcome> {
    let fam = &table.fam;
    if q0.v.dot(v0).abs() > 1e-8 * v0.enorm().max(1.0) {
        return Err(Error::NotTangent(q0.v.dot(v0)));
    }
    let caustic = caustic_of_plane(q0.v.cross(v0), fam);
    let mut bounces = Vec::with_capacity(max_bounces + 1);
    let (mut q, mut v);
    if table.on_boundary(q0.v) {
        let (p, vo) = project_state(table, q0.v, v0);
        let back = reflect_flagged(&p, vo, table)?;
        bounces.push(BounceRecord {
            p: p.v,
            v_in: back.v_out,
            v_out: vo,
            arc: 0.0,
            retro: back.retro,
        });
        q = p;
        v = vo;
    } else {
        match next_bounce(q0, v0, table)? {
            Bounce::NeverHitsBoundary => {
                return Ok(RunOutcome::NeverHitsBoundary {
                    start: *q0,
                    caustic,
                })
            }
            Bounce::Hit { point, t, v_in } => {
                let (p, vi) = project_state(table, point.v, v_in);
                let r = reflect_flagged(&p, vi, table)?;
                let (_, vo) = project_state(table, p.v, r.v_out);
                bounces.push(BounceRecord {
                    p: p.v,
                    v_in: vi,
                    v_out: vo,
                    arc: t,
                    retro: r.retro,
                });
                q = p;
                v = vo;
            }
        }
    }
    for _ in 0..max_bounces {
        match next_bounce(&q, v, table)? {
            Bounce::NeverHitsBoundary => {
                return Err(Error::NoDirection("trajectory left the table".into()))
            }
            Bounce::Hit { point, t, v_in } => {
                let (p, vi) = project_state(table, point.v, v_in);
                let r = reflect_flagged(&p, vi, table)?;
                let (_, vo) = project_state(table, p.v, r.v_out);
                bounces.push(BounceRecord {
                    p: p.v,
                    v_in: vi,
                    v_out: vo,
                    arc: t,
                    retro: r.retro,
                });
                q = p;
                v = vo;
            }
        }
    }
    let jacobi: Vec<Option<JacobiCoords>> = bounces
        .iter()
        .map(|b| jacobi_coords(&HPoint { v: b.p }, fam).coords())
        .collect();
    let info = TableInfo {
        a: fam.a,
        b: fam.b,
        c: fam.c,
        kind: fam.kind(),
    };
    let mut traj = Trajectory {
        table: info,
        caustic,
        causal: causal_type(bounces[0].v_out),
        bounces,
        jacobi,
        closure: Closure {
            n: None,
            cartesian_gap: f64::INFINITY,
            jacobi_gap: f64::INFINITY,
            jacobi_n: None,
        },
    };
    traj.closure = detect_closure(&traj, CLOSURE_TOL, JACOBI_TOL);
    Ok(RunOutcome::Trajectory(traj))
}

/// Smallest Cartesian and Jacobi periods under the given tolerances.
pub fn detect_closure(t: &Trajectory, cartesian_tol: f64, jacobi_tol: f64) -> Closure {
    let len = t.bounces.len();
    let mut n = None;
    let mut best = f64::INFINITY;
    for k in 1..len {
        let g = t.gap(k);
        if g <= cartesian_tol {
            n = Some(k);
            best = g;
            break;
        }
        best = best.min(g);
    }
    let mut jn = None;
    let mut jbest = f64::INFINITY;
    for k in 1..len {
        let g = t.jacobi_gap(k);
        if g <= jacobi_tol {
            jn = Some(k);
            jbest = g;
            break;
        }
        jbest = jbest.min(g);
    }
    Closure {
        n,
        cartesian_gap: best,
        jacobi_gap: jbest,
        jacobi_n: jn,
    }
}

/// Random boundary start with the given caustic, if one exists.
pub fn random_boundary_start<R: Rng>(
    table: &BilliardTable,
    caustic: Caustic,
    rng: &mut R,
) -> Option<(HPoint, MVec3)> {
    for _ in 0..200 {
        let phi = rng.gen_range(0.0..TAU);
        let upper = rng.gen_bool(0.5);
        let q = table.boundary_point(phi, upper);
        if let Ok(dirs) = directions_for_caustic(&q, caustic, table) {
            let v = dirs[rng.gen_range(0..dirs.len())];
            if v.enorm() > 0.0 && v.is_finite() {
                return Some((q, v));
            }
        }
    }
    None
}

/// Random interior start with the given caustic, if one is found.
pub fn random_interior_start<R: Rng>(
    table: &BilliardTable,
    caustic: Caustic,
    rng: &mut R,
) -> Option<(HPoint, MVec3)> {
    for _ in 0..500 {
        let (y, z) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let x2: f64 = y * y + z * z - 1.0;
        let x = match table.kind() {
            TableKind::Collared => {
                if x2 < 0.0 {
                    continue;
                }
                let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                s * x2.sqrt() * rng.gen_range(0.0..1.0)
            }
            TableKind::Transverse => rng.gen_range(-2.0..2.0),
        };
        let v = MVec3::new(x, y, z);
        let Ok(p) = HPoint::project(v) else { continue };
        if !table.contains(p.v) || table.on_boundary(p.v) {
            continue;
        }
        let dirs = interior_directions(&p, caustic, &table.fam);
        if !dirs.is_empty() {
            return Some((p, dirs[rng.gen_range(0..dirs.len())]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table(a: f64, b: f64, c: f64) -> BilliardTable {
        BilliardTable::new(ConfocalFamily::new(a, b, c).unwrap())
    }

    #[test]
    fn boundary_points_lie_on_both_surfaces() {
        for t in [table(1.0, 2.0, 3.0), table(1.0, -1.0, 3.0)] {
            for k in 0..16 {
                let q = t.boundary_point(k as f64 * 0.4, k % 2 == 0);
                assert!((q.v.dot(q.v) - 1.0).abs() < 1e-13);
                assert!(t.fam.q0(q.v).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn reflection_identities() {
        let t = table(1.0, 2.0, 3.0);
        let q = t.boundary_point(0.3, true);
        let (n, _) = t.normal(q.v);
        let tau = t.boundary_tangent(q.v);
        let vo = reflect(&q, n, &t).unwrap();
        assert!((vo + n).enorm() < 1e-12);
        let vo = reflect(&q, tau, &t).unwrap();
        assert!((vo - tau).enorm() < 1e-12);
        let v = tau + n * 0.4;
        let vo = reflect(&q, v, &t).unwrap();
        assert!((vo.dot(vo) - v.dot(v)).abs() < 1e-12);
    }

    #[test]
    fn symmetric_two_bounce() {
        // Normal incidence in the plane z = 0 crosses to the mirror component.
        let t = table(1.0, 2.0, 3.0);
        let q = t.boundary_point(0.0, true);
        let (n, _) = t.normal(q.v);
        match next_bounce(&q, n, &t).unwrap() {
            Bounce::Hit { point, .. } => {
                assert!((point.v - MVec3::new(-q.v.x, q.v.y, 0.0)).enorm() < 1e-10)
            }
            _ => panic!("expected a hit"),
        }
    }

    #[test]
    fn resonant_band_never_hits() {
        let t = table(1.0, 2.0, 3.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (p, v) = random_interior_start(&t, Caustic::Finite(0.5), &mut rng).unwrap();
        assert_eq!(next_bounce(&p, v, &t).unwrap(), Bounce::NeverHitsBoundary);
    }

    #[test]
    fn caustic_is_conserved_and_four_periodic() {
        let t = table(1.0, 2.0, 3.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (q, v) = random_boundary_start(&t, Caustic::Finite(-6.0), &mut rng).unwrap();
        let tr = run(&q, v, &t, 8).unwrap().trajectory().unwrap();
        for c in tr.segment_caustics() {
            assert!((c.finite().unwrap() + 6.0).abs() < 1e-8);
        }
        assert_eq!(tr.closure.n, Some(4));
        assert_eq!(tr.closure.jacobi_n, Some(2));
        let g = |n: usize| tr.bounces[n].p;
        for k in 0..8 {
            assert!(t.fam.q0(g(k)).abs() < 1e-12);
        }
    }
}

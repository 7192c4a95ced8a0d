use hyperbilliards::dynamics::{random_boundary_start, run, BilliardTable, RunOutcome};
use hyperbilliards::minkowski::{Caustic, ConfocalFamily};
use hyperbilliards::rotation::{find_caustic_for_rotation, rotation_for, RotationCase};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn minkowski(u: [f64; 3], v: [f64; 3]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

#[test]
fn bounces_stay_on_table_and_keep_speed() {
    for (a, b, c, nu) in [
        (1.0, 2.0, 3.0, -2.5),
        (1.0, 2.0, 3.0, 5.0),
        (1.0, -2.0, 3.0, 2.0),
    ] {
        let table = BilliardTable::new(ConfocalFamily::new(a, b, c).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (p, v) = random_boundary_start(&table, Caustic::Finite(nu), &mut rng).unwrap();
        let RunOutcome::Trajectory(t) = run(&p, v, &table, 30).unwrap() else {
            panic!("no boundary hit")
        };
        for r in &t.bounces {
            let x = [r.p.x, r.p.y, r.p.z];
            assert!((minkowski(x, x) - 1.0).abs() < 1e-9);
            // Boundary conic: x²/a − y²/b − z²/c = 0 up to the sign convention of Q.
            let q = x[0] * x[0] / a - x[1] * x[1] / b - x[2] * x[2] / c;
            assert!(q.abs() < 1e-7, "off boundary: {q}");
            let vi = [r.v_in.x, r.v_in.y, r.v_in.z];
            let vo = [r.v_out.x, r.v_out.y, r.v_out.z];
            assert!(
                (minkowski(vi, vi) - minkowski(vo, vo)).abs()
                    < 1e-8 * minkowski(vi, vi).abs().max(1.0)
            );
        }
        for cs in t.segment_caustics() {
            let Caustic::Finite(l) = cs else {
                panic!("{cs}")
            };
            assert!(
                (l - nu).abs() < 1e-6 * nu.abs().max(1.0),
                "caustic drifted to {l}"
            );
        }
    }
}

#[test]
fn rotation_round_trip_hits_printed_g3_root() {
    // 23ν² − 132ν + 108 = 0 at (1, 2, 3); its larger root is 3-periodic.
    let root = (132.0 + (132.0f64 * 132.0 - 4.0 * 23.0 * 108.0).sqrt()) / 46.0;
    let fam = ConfocalFamily::new(1.0, 2.0, 3.0).unwrap();
    let nu = find_caustic_for_rotation(&fam, 1.0 / 3.0, RotationCase::I).unwrap();
    assert!((nu - root).abs() < 1e-7, "{nu} vs {root}");
    assert!((rotation_for(&fam, root).unwrap() - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn rotation_at_minus_six_is_one_half() {
    let fam = ConfocalFamily::new(1.0, 2.0, 3.0).unwrap();
    assert!((rotation_for(&fam, -6.0).unwrap() - 0.5).abs() < 1e-9);
}

proptest::proptest! {
    #[test]
    fn rotation_number_lies_in_unit_interval(
        a in 0.2f64..3.0, db in 0.1f64..3.0, dc in 0.1f64..3.0, t in 0.01f64..0.99, band in 0usize..3,
    ) {
        let (b, c) = (a + db, a + db + dc);
        let fam = ConfocalFamily::new(a, b, c).unwrap();
        let nu = match band {
            0 => -40.0 * t,
            1 => b + (c - b) * t,
            _ => c + 40.0 * t,
        };
        let rho = rotation_for(&fam, nu).unwrap();
        proptest::prop_assert!(rho > 0.0 && rho < 1.0, "ρ = {}", rho);
    }
}

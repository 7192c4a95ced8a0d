use hyperbilliards::dynamics::BilliardTable;
use hyperbilliards::minkowski::{Caustic, ConfocalFamily};
use hyperbilliards::topology::{census, classify_level_set, count_components_numeric, LevelNote};

fn check(fam: ConfocalFamily, lambdas: &[f64]) {
    let table = BilliardTable::new(fam.clone());
    for (i, &l) in lambdas.iter().enumerate() {
        let cls = classify_level_set(&fam, Caustic::Finite(l));
        let r = count_components_numeric(&table, l, 24, 100 + i as u64).unwrap();
        if cls.notes == LevelNote::Empty {
            assert_eq!(r.seeded, 0, "λ={l}: {r:?}");
        } else {
            assert_eq!(r.count, cls.tori_count, "λ={l}: {r:?}");
            assert!(r.seeded > 0);
            if cls.notes == LevelNote::Resonant {
                assert_eq!(r.never_hit, r.seeded, "λ={l}");
            } else {
                assert_eq!(r.never_hit, 0, "λ={l}");
            }
        }
    }
}

#[test]
fn collared_counts_match_table() {
    let l = [
        -40.0, -7.0, -2.5, -1.0, -0.3, 0.1, 0.4, 0.7, 0.95, 1.2, 1.5, 1.9, 2.1, 2.4, 2.6, 2.9, 3.2,
        4.0, 7.0, 50.0,
    ];
    check(ConfocalFamily::new(1.0, 2.0, 3.0).unwrap(), &l);
}

#[test]
fn transverse_counts_match_table() {
    let l = [
        -40.0, -6.0, -3.0, -2.2, -1.8, -1.2, -0.6, -0.2, 0.1, 0.4, 0.7, 0.9, 1.1, 1.4, 1.8, 2.5,
        3.2, 4.0, 9.0, 60.0,
    ];
    check(ConfocalFamily::new(1.0, -2.0, 3.0).unwrap(), &l);
}

#[test]
fn census_structure() {
    let c = census(&ConfocalFamily::new(1.0, 2.0, 3.0).unwrap());
    assert_eq!(c.gluing.len(), 2);
    assert!(c.edges.iter().all(|e| e.epsilon == 1));
    let t = census(&ConfocalFamily::new(1.0, -2.0, 3.0).unwrap());
    assert_eq!(t.edges.iter().filter(|e| e.epsilon == -1).count(), 1);
    assert_eq!(t.n_marks.len(), 2);
}

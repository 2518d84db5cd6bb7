use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supercone::canonical_form::{canonicalize, canonicalize_traced, is_canonical};
use supercone::nilcone::random_group_element;
use supercone::orbit_census::{enumerate_reps, enumerate_theorem_shapes, orbit_signature, rep_matrix};
use supercone::superalgebra::act;

#[test]
fn conjugates_of_every_representative_return_home() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, n) in [(1, 2), (2, 2), (3, 2), (2, 4), (3, 3), (4, 3), (4, 4)] {
        for p in enumerate_reps(m, n) {
            let rep = rep_matrix(&p, m, n).unwrap();
            for _ in 0..4 {
                let g = random_group_element(&mut rng, m, n);
                let x = act(&g, &rep).unwrap();
                let res = canonicalize(&x).unwrap_or_else(|e| panic!("{p:?} in gl({m}|{n}): {e}"));
                assert_eq!(act(&res.g, &x).unwrap(), res.y);
                assert_eq!(res.params, p, "gl({m}|{n})");
            }
        }
    }
}

#[test]
fn literal_shapes_normalize_within_their_orbit() {
    for (m, n) in [(3, 3), (4, 4), (5, 3)] {
        let census = enumerate_reps(m, n);
        for p in enumerate_theorem_shapes(m, n) {
            let y = rep_matrix(&p, m, n).unwrap();
            let res = canonicalize(&y).unwrap();
            assert!(census.contains(&res.params));
            assert_eq!(orbit_signature(&res.y), orbit_signature(&y));
            if p.is_normalized() {
                assert_eq!(res.params, p);
            }
        }
    }
}

#[test]
fn idempotent_and_traced() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in enumerate_reps(3, 4) {
        let rep = rep_matrix(&p, 3, 4).unwrap();
        let x = act(&random_group_element(&mut rng, 3, 4), &rep).unwrap();
        let res = canonicalize_traced(&x).unwrap();
        let trace = res.trace.as_ref().unwrap();
        assert_eq!(trace.last().unwrap().y, res.y);
        let again = canonicalize(&res.y).unwrap();
        assert_eq!(again.params, res.params);
        assert!(again.g.fixes(&res.y));
        assert_eq!(is_canonical(&res.y), Some(res.params.clone()));
    }
}

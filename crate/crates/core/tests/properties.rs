mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclograph::equiv::{are_equivalent, canonical_form, canonical_key, canonical_key_exhaustive, Flavor};
use cyclograph::grow::is_minimal_noncyclotomic;
use cyclograph::{is_cyclotomic_matrix, HermitianMatrix, Ring};

use common::*;

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Gaussian), Just(Ring::Eisenstein)]
}

fn matrix(max_n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (ring(), 1..=max_n, any::<u64>()).prop_map(|(r, n, seed)| random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), r, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_interlace(a in matrix(6)) {
        prop_assert!(interlaces(&a));
    }

    #[test]
    fn polynomials_are_consistent(a in matrix(6)) {
        prop_assert_eq!(check_polynomials(&a), Ok(()));
    }

    #[test]
    fn invariants_are_constant_on_orbits(a in matrix(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(check_invariance(&mut rng, &a, 5), Ok(()));
    }

    #[test]
    fn canonical_form_is_equivalent_and_idempotent(a in matrix(6)) {
        for flavor in [Flavor::Strong, Flavor::Full] {
            let c = canonical_form(&a, flavor).unwrap();
            prop_assert_eq!(canonical_key(&c, flavor).unwrap(), canonical_key(&a, flavor).unwrap());
            prop_assert_eq!(canonical_form(&c, flavor).unwrap(), c.clone());
            prop_assert!(are_equivalent(&a, &c, flavor).unwrap());
        }
    }

    #[test]
    fn pruned_and_exhaustive_keys_partition_alike(a in matrix(5), b_seed in any::<u64>(), coin in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(b_seed);
        // half the time compare with an equivalent matrix, otherwise an unrelated one
        let b = if coin {
            random_equivalent(&mut rng, &a, Flavor::Full)
        } else {
            random_matrix(&mut rng, a.ring(), a.n())
        };
        for flavor in [Flavor::Strong, Flavor::Full] {
            let pruned = canonical_key(&a, flavor).unwrap() == canonical_key(&b, flavor).unwrap();
            let exhaustive = canonical_key_exhaustive(&a, flavor).unwrap() == canonical_key_exhaustive(&b, flavor).unwrap();
            prop_assert_eq!(pruned, exhaustive);
        }
    }

    #[test]
    fn minimality_matches_its_definition(a in matrix(5)) {
        // every proper connected induced subgraph must be cyclotomic
        let n = a.n();
        let by_definition = a.is_connected()
            && !is_cyclotomic_matrix(&a)
            && (1..(1u32 << n) - 1).all(|mask| {
                let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                is_cyclotomic_matrix(&a.principal_submatrix(&keep).unwrap())
            });
        prop_assert_eq!(is_minimal_noncyclotomic(&a), by_definition);
    }
}

#[test]
fn three_vertex_gaussian_partition_matches_orbits() {
    let all = three_vertex_gaussian();
    let full = oracle_partition(&all, Flavor::Full).unwrap();
    let strong = oracle_partition(&all, Flavor::Strong).unwrap();
    assert!(full < strong, "negation should merge classes: {full} vs {strong}");
}

#[test]
fn three_vertex_eisenstein_units_partition_matches_orbits() {
    let ring = Ring::Eisenstein;
    let all = all_connected(ring, 3, &ring.units(), &[-1, 0, 1]);
    oracle_partition(&all, Flavor::Full).unwrap();
    oracle_partition(&all, Flavor::Strong).unwrap();
}

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_census::enumerate::{exact_ab_distribution, exact_ab_distribution_for_beta, Caps};
use surface_census::perm::{make_beta, sample_matching, Permutation};
use surface_census::surface::{invariants_from_cycles, validate_params};

/// Connected components of the glued surface: faces joined by the pairing.
fn components(alpha: &[usize], n: usize, k: usize) -> usize {
    let mut parent: Vec<usize> = (0..n / k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &j) in alpha.iter().enumerate() {
        let (a, b) = (find(&mut parent, i / k), find(&mut parent, j / k));
        parent[a] = b;
    }
    (0..n / k).filter(|&f| find(&mut parent, f) == f).count()
}

#[test]
fn sampled_glueings_have_consistent_invariants() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    let mut disconnected = 0;
    for (n, k) in [
        (6, 3),
        (12, 3),
        (8, 4),
        (12, 6),
        (24, 4),
        (30, 5),
        (60, 3),
        (120, 4),
    ] {
        let params = validate_params(n, k).unwrap();
        let b = beta(n, k);
        let mut parity = None;
        for _ in 0..2000 {
            let a = sample_matching(n, &mut r).unwrap();
            let a: Vec<usize> = a.image_one_based().iter().map(|x| x - 1).collect();
            let v = cycle_count(&alpha_then_beta(&a, &b));
            let c = components(&a, n, k) as i64;
            let chi = params.euler_characteristic(v);
            // each component is a closed orientable surface
            assert!(
                chi % 2 == 0 && chi <= 2 * c,
                "n = {n}, k = {k}, v = {v}, c = {c}"
            );
            if c == 1 {
                let inv = invariants_from_cycles(&params, v).unwrap();
                assert_eq!(inv.genus as i64, (2 - chi) / 2);
            } else {
                disconnected += 1;
            }
            assert_eq!(*parity.get_or_insert((n - v) % 2), (n - v) % 2);
            if params.gamburd_regime {
                assert_eq!((n - v) % 2, 0);
            }
            assert_eq!((n - v) % 2, params.cycle_parity());
        }
    }
    assert!(
        disconnected > 0,
        "small cases should produce disconnected glueings"
    );
}

#[test]
fn law_does_not_depend_on_the_choice_of_beta() {
    let caps = Caps::default();
    let mut r = ChaCha8Rng::seed_from_u64(23);
    for (n, k) in [(6, 3), (8, 4), (12, 3), (12, 4)] {
        let (base, _) = exact_ab_distribution(n, k, &caps).unwrap();
        for _ in 0..2 {
            // a random element of the class: blocks of a shuffled label list
            let shuffled = surface_census::perm::sample_permutation(n, &mut r).image_one_based();
            let mut img = vec![0; n];
            for block in shuffled.chunks(k) {
                for (i, &x) in block.iter().enumerate() {
                    img[x - 1] = block[(i + 1) % k];
                }
            }
            let other = Permutation::from_one_based(&img).unwrap();
            let (d, _) = exact_ab_distribution_for_beta(&other, Some(k), &caps).unwrap();
            assert_eq!(d, base, "(n, k) = ({n}, {k}), beta = {other}");
        }
        assert_eq!(
            make_beta(n, k).unwrap().cycle_type().parts(),
            vec![k; n / k].as_slice()
        );
    }
}

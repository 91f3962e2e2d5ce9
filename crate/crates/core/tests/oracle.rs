mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unisets::verify::{verify_basis, verify_tuple_sets, verify_universal_for};
use unisets::{Exec, Group, GroupSpec, Strategy, Subset, VerifyMode, VerifyOptions};

fn groups() -> Vec<Group> {
    let mut out: Vec<Group> = (1..=24).map(|n| Group::cyclic(n).unwrap()).collect();
    for f in [vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![3, 3], vec![2, 6], vec![4, 4], vec![2, 2, 6]] {
        out.push(Group::abelian(&f).unwrap());
    }
    out.push(Group::symmetric(3).unwrap());
    out.push(Group::symmetric(4).unwrap());
    out.push(Group::new(&GroupSpec::product(vec![GroupSpec::symmetric(3), GroupSpec::cyclic(2)])).unwrap());
    out
}

fn random_subset(g: &Group, rng: &mut ChaCha8Rng, density: std::ops::Range<f64>) -> Vec<usize> {
    let p = rng.gen_range(density);
    g.elements().filter(|_| rng.gen_bool(p)).collect()
}

#[test]
fn universal_verifier_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let opts = VerifyOptions::default();
    let mut seen = [0usize; 2];
    for g in groups() {
        for k in 1..=3 {
            for _ in 0..12 {
                let u = random_subset(&g, &mut rng, 0.2..0.9);
                let mut x = random_subset(&g, &mut rng, 0.3..1.0);
                if x.len() < k {
                    x = g.elements().collect();
                }
                if x.len() < k {
                    continue;
                }
                let (us, xs) = (common::subset(&g, &u), common::subset(&g, &x));
                let v = verify_universal_for(&us, &xs, k, Strategy::Exact, 0, &opts).unwrap();
                let naive = common::universal_for(&g, &u, &x, k);
                assert_eq!(v.pass, naive.is_ok(), "{g:?} k={k} U={u:?} X={x:?}");
                seen[v.pass as usize] += 1;
                if let Some(w) = v.witness {
                    assert_eq!(w.len(), k);
                    assert!(w.iter().all(|e| x.contains(e)));
                    // The witness re-fails on its own.
                    assert!(common::universal_for(&g, &u, &w, k).is_err());
                }
            }
        }
    }
    assert!(seen[0] > 50 && seen[1] > 50, "{seen:?}");
}

#[test]
fn tuple_verifier_matches_both_characterizations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = VerifyOptions::default();
    for g in groups().into_iter().filter(|g| g.order() <= 12) {
        for k in 1..=3 {
            for _ in 0..6 {
                let sets: Vec<Vec<usize>> =
                    (0..k).map(|_| random_subset(&g, &mut rng, 0.3..0.95)).collect();
                let subs: Vec<Subset> = sets.iter().map(|s| common::subset(&g, s)).collect();
                let all: Vec<usize> = g.elements().collect();
                let direct = common::tuple_universal(&g, &sets, &all);
                assert_eq!(direct, common::tuple_by_differences(&g, &sets));
                let v = verify_tuple_sets(&subs, None, Strategy::Exact, 0, &opts).unwrap();
                assert_eq!(v.pass, direct, "{g:?} {sets:?}");
            }
        }
    }
}

#[test]
fn basis_verifier_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for g in groups() {
        for _ in 0..10 {
            let b = random_subset(&g, &mut rng, 0.2..0.4);
            let a = random_subset(&g, &mut rng, 0.2..0.4);
            let v = verify_basis(&common::subset(&g, &b), &common::subset(&g, &a)).unwrap();
            assert_eq!(v.pass, common::basis_covers(&g, &b, &a));
            assert_eq!(v.mode, VerifyMode::Exact);
        }
    }
}

#[test]
fn sampled_verifier_is_seed_determined_and_sound_on_passes() {
    let g = Group::cyclic(40).unwrap();
    let u = common::subset(&g, &(0..40).filter(|i| i % 3 != 0).collect::<Vec<_>>());
    let x = Subset::full(&g);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let opts = VerifyOptions { trials: 5000, exec, ..VerifyOptions::default() };
        let a = verify_universal_for(&u, &x, 3, Strategy::Sampled, 17, &opts).unwrap();
        let b = verify_universal_for(&u, &x, 3, Strategy::Sampled, 17, &opts).unwrap();
        assert_eq!(a, b);
        let all: Vec<usize> = g.elements().collect();
        let naive = common::universal_for(&g, &u.to_vec(), &all, 3);
        if !a.pass {
            assert!(naive.is_err());
        }
    }
}

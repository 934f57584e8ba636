use dominoflip::bridge::{code_to_tiling, round_trip_order, tiling_to_code};
use dominoflip::constructions::{construct_irreducible, lift, trivial_regular, Irreducible};
use dominoflip::explorer::{constrained_connect, flip_class, simple_tiling, SearchLimits};
use dominoflip::regularity::{find_regular_partition, simple_components};
use dominoflip::tiling::{validate_tiling, Region};
use dominoflip::word::Alphabet;
use proptest::prelude::*;

fn regular_irreducible_count(n: usize, d: usize) -> (usize, usize) {
    let mut total = 0;
    let mut hits = 0;
    for words in Region::full(n).tilings(d) {
        let t = validate_tiling(&words, n, d).unwrap();
        total += 1;
        if t.star_columns().is_empty() && find_regular_partition(&t).is_some() {
            hits += 1;
        }
    }
    (total, hits)
}

#[test]
fn no_regular_irreducible_beyond_bound_d2() {
    let (total, hits) = regular_irreducible_count(3, 2);
    assert!(hits > 0 && total > hits);
    for n in [4, 5] {
        let (total, hits) = regular_irreducible_count(n, 2);
        assert!(total > 0);
        assert_eq!(hits, 0, "n={n}");
    }
}

#[test]
fn round_trips_of_named_tilings() {
    let mut inputs = Vec::new();
    for d in 1..=4 {
        for n in d + 1..=d + 3 {
            inputs.push(trivial_regular(n, d).unwrap());
        }
        for n in d + 1..(1 << d) {
            if let Irreducible::Tiling(t) = construct_irreducible(n, d).unwrap() {
                let c = find_regular_partition(&t).unwrap();
                inputs.push((t, c));
            }
        }
    }
    let lifted: Vec<_> = inputs.iter().filter(|(t, _)| t.d() < 4).map(|(t, c)| lift(t, c).unwrap()).collect();
    inputs.extend(lifted);
    for (t, c) in &inputs {
        let v = tiling_to_code(t, c, &mut Alphabet::new()).unwrap();
        let back = code_to_tiling(&v);
        let order = round_trip_order(t, c).unwrap();
        assert_eq!(back, t.star_reduce().0.permute_columns(&order).unwrap(), "{t:?}");
    }
}

#[test]
fn constrained_paths_keep_component() {
    let t = dominoflip::tiling::validate_tiling(
        &["0*0*0**", "1*1*1**", "*00*1**", "*10*1**", "0*1**1*", "0*1**0*", "1**00**", "1**10**"]
            .map(|s| s.parse().unwrap()),
        7,
        3,
    )
    .unwrap();
    for comp in simple_components(&t) {
        let path = constrained_connect(&t, &comp, 1_000_000).unwrap();
        assert_eq!(path.target, simple_tiling(7, &comp.support).unwrap());
        let mut cur = t.clone();
        for f in &path.flips {
            assert!(comp.words.iter().all(|w| !f.touches(w)));
            cur = cur.apply_flip(f).unwrap();
            assert!(comp.words.iter().all(|w| cur.contains(w)));
        }
        assert_eq!(cur, path.target);
    }
}

#[test]
fn regular_tilings_share_one_class_at_3_2() {
    let all: Vec<_> = Region::full(3).tilings(2).map(|w| validate_tiling(&w, 3, 2).unwrap()).collect();
    let (q, _) = trivial_regular(3, 2).unwrap();
    let class = flip_class(&q, SearchLimits::default());
    assert!(!class.truncated);
    for t in &all {
        if find_regular_partition(t).is_some() {
            assert!(class.index_of(t).is_some());
        }
    }
}

fn random_regular() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..=3).prop_flat_map(|d| (Just(d), 0usize..=2, proptest::collection::vec(0usize..64, 0..6)))
        .prop_map(|(d, extra, walk)| (d + 1 + extra, d, walk))
}

proptest! {
    #[test]
    fn flip_law_along_random_walks((n, d, walk) in random_regular()) {
        let mut t = trivial_regular(n, d).unwrap().0;
        for step in walk {
            for p in t.twin_pairs() {
                let flips = t.flips_of(&p.words[0], &p.words[1]).unwrap();
                prop_assert_eq!(flips.len(), n - d);
                for f in &flips {
                    let next = t.apply_flip(f).unwrap();
                    prop_assert!(validate_tiling(next.words(), n, d).is_ok());
                }
            }
            let all = t.all_flips();
            t = t.apply_flip(&all[step % all.len()]).unwrap();
        }
    }
}

use std::time::Instant;

use dominoflip::codes::letter_sum_census;
use dominoflip::constructions::max_letter_code;
use dominoflip::word::Alphabet;

// A code has 2^d words, so 2^d pairs per coordinate is never a restriction.
#[test]
fn letter_sums_up_to_d3() {
    for d in 1..=3 {
        let pairs = 1 << d;
        let start = Instant::now();
        let census = letter_sum_census(d, pairs);
        let max = (1 << d) - 1;
        eprintln!("d={d}: {} codes {:?} in {:?}", census.total(), census.by_letter_sum, start.elapsed());
        assert_eq!(census.max_letter_sum(), Some(max));
        assert_eq!(census.by_letter_sum.keys().next(), Some(&d));
        assert_eq!(census.unbalanced, 0);
        let built = max_letter_code(d, &mut Alphabet::new()).unwrap();
        assert_eq!(census.witness.unwrap().letter_profile().sum(), built.letter_profile().sum());
    }
}

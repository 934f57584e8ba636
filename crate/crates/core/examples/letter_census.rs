//! Lists cube tiling codes of length d through the all-zero word, tallied by
//! letter sum, and prints one code of the largest sum in code-file format.
//!
//!     cargo run --release -p dominoflip-core --example letter_census -- 3

use dominoflip::codes::letter_sum_census;
use dominoflip::text::format_code;
use dominoflip::word::Alphabet;

fn main() {
    let d: usize = std::env::args().nth(1).map_or(3, |s| s.parse().expect("d must be a number"));
    let census = letter_sum_census(d, 1 << d);
    eprintln!("{} codes", census.total());
    for (sum, count) in &census.by_letter_sum {
        eprintln!("sum {sum}: {count}");
    }
    // census letters carry bases 0, 1, ... per coordinate; give them names
    let mut a = Alphabet::new();
    for k in 0..(1usize << d) {
        a.intern(&format!("p{}", k + 1));
    }
    if let Some(v) = census.witness {
        print!("{}", format_code(&v, &a));
    }
}

#![no_main]

use libfuzzer_sys::fuzz_target;
use mmp::pattern::{border_p_count, mmp_matches};
use mmp::perm::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sigma) = Permutation::parse(text) else {
        return;
    };
    // parsed permutations must be well formed and survive the statistics
    let n = sigma.n();
    assert!(n >= 1);
    assert_eq!(sigma.position_of(n), sigma.word().iter().position(|&v| v == n).unwrap() + 1);
    let report = mmp_matches(&sigma, 2).expect("k = 2 is always valid");
    assert!(report.count_primed <= n);
    let _ = border_p_count(&sigma);
    // display/parse round-trip
    let again = Permutation::parse(&sigma.to_string()).expect("display form reparses");
    assert_eq!(again, sigma);
});

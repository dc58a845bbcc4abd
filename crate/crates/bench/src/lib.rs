//! Benchmark inputs shared by the criterion targets.

use tricover::algebra::random_form;
use tricover::Form;

/// Two products with a common factor `h`, so their gcd is nontrivial.
pub fn gcd_pair(degree: u32, seed: u64) -> (Form, Form) {
    let f = random_form(degree, seed, 9);
    let g = random_form(degree, seed + 1, 9);
    let h = random_form(degree, seed + 2, 9);
    (&f * &h, &g * &h)
}

//! Even-index Bernoulli numbers `B_2 … B_22` as exact rationals.

/// `(numerator, denominator)` of `B_{2k}` for `k = 1..=11`.
const EVEN: [(f64, f64); 11] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
];

/// Largest `k` for which [`bernoulli_even`] is defined.
pub const MAX_EVEN_INDEX: usize = EVEN.len();

/// `B_{2k}`, `1 ≤ k ≤ 11`.
pub fn bernoulli_even(k: usize) -> f64 {
    assert!((1..=MAX_EVEN_INDEX).contains(&k), "B_{{2k}} tabulated for 1 ≤ k ≤ 11, got k = {k}");
    let (num, den) = EVEN[k - 1];
    num / den
}

/// `B_{2k} / (2k)!`.
pub fn bernoulli_even_over_factorial(k: usize) -> f64 {
    let mut fact = 1.0;
    for i in 1..=(2 * k) {
        fact *= i as f64;
    }
    bernoulli_even(k) / fact
}

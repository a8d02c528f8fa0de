//! `f64` helpers that work without `std`.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// `H_n = 1 + 1/2 + ... + 1/n`.
pub(crate) fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// `lhs <= rhs` up to [`crate::REL_TOL`] relative slack on the right.
#[inline]
pub(crate) fn le_tol(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + crate::REL_TOL * rhs.abs()
}

/// `x^n` by repeated multiplication.
#[inline]
pub(crate) fn powi(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

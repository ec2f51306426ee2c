//! Gauss-Legendre nodes and weights on `[-1, 1]`.

use crate::scalar::Real;

/// Legendre polynomial `P_n(x)` and its derivative, by three-term
/// recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::of_usize(k);
        let next = ((T::of_usize(2 * k - 1) * x * p) - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let dp = T::of_usize(n) * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

/// Nodes (ascending) and weights of the `n`-point Gauss-Legendre rule.
///
/// Newton iteration from the Chebyshev-like initial guess; nodes are
/// computed for one half and mirrored, so the rule is exactly symmetric.
/// Exact (up to rounding) for polynomials of degree `2n - 1`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "quadrature rule needs at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let tol = T::epsilon() * T::of(4.0);

    for i in 0..n.div_ceil(2) {
        let guess_angle =
            T::PI() * (T::of_usize(i) + T::of(0.75)) / (T::of_usize(n) + T::of(0.5));
        let mut x = guess_angle.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= tol {
                // One polishing step after convergence.
                let (p2, d2) = legendre_with_derivative(n, x);
                dp = d2;
                x = x - p2 / d2;
                break;
            }
        }
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        // x starts near +1 for i = 0; store descending half at the top end.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        // Middle node is exactly zero by symmetry.
        nodes[n / 2] = T::zero();
        let (_, dp) = legendre_with_derivative(n, T::zero());
        weights[n / 2] = T::of(2.0) / (dp * dp);
    }
    (nodes, weights)
}

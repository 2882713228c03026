//! Integer reference oracles, independent of the rational solver in `hsl-core`.

/// All `(m, n)` in `[−bound, bound]²` with
/// `(m² − r²)δ₀² − 2(mn − rs)δ₀ + (m² − r²)δ₁² + n² − s² = 0`
/// for `δ₀ = p0/q0`, `δ₁² = p1/q1`, by clearing denominators and testing
/// every pair in `i128`.
pub fn brute_force_solutions(p0: i64, q0: i64, p1: i64, q1: i64, r: i64, s: i64, bound: i64) -> Vec<(i64, i64)> {
    let [p0, q0, p1, q1, r, s] = [p0, q0, p1, q1, r, s].map(i128::from);
    let mut out = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let (m, n) = (i128::from(m), i128::from(n));
            let v = (m * m - r * r) * (p0 * p0 * q1 + p1 * q0 * q0) - 2 * (m * n - r * s) * p0 * q0 * q1
                + (n * n - s * s) * q0 * q0 * q1;
            if v == 0 {
                out.push((m as i64, n as i64));
            }
        }
    }
    out
}

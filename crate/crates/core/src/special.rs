//! Bose–Einstein tail integrals `∫_ζ^∞ yⁿ dy / (eʸ − 1)` for n = 0 and 2.

use crate::scales::ZETA3;

/// `∫_ζ^∞ dy / (eʸ − 1) = −ln(1 − e^{−ζ})`, for ζ > 0.
pub fn bose_tail_0(zeta: f64) -> f64 {
    -(-(-zeta).exp_m1()).ln()
}

// B_{2j} / (2j)! for j = 1..=10
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

/// `∫_ζ^∞ y² dy / (eʸ − 1)`, for ζ ≥ 0.
///
/// Below ζ = 1 uses `2ζ(3) − ∫₀^ζ` with the Bernoulli expansion of
/// `y/(eʸ − 1)`; above, the series `Σ_k e^{−kζ}(ζ²/k + 2ζ/k² + 2/k³)`.
pub fn bose_tail_2(zeta: f64) -> f64 {
    if zeta < 1.0 {
        // ∫₀^ζ y·[1 − y/2 + Σ_j B_{2j} y^{2j}/(2j)!] dy
        let z2 = zeta * zeta;
        let mut head = z2 / 2.0 - zeta * z2 / 6.0;
        let mut p = z2 * z2;
        for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
            head += c * p / (2 * j + 4) as f64;
            p *= z2;
        }
        return 2.0 * ZETA3 - head;
    }
    let q = (-zeta).exp();
    let mut qk = q;
    let mut total = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        let term = qk * (zeta * zeta / kf + 2.0 * zeta / (kf * kf) + 2.0 / (kf * kf * kf));
        total += term;
        if term < 1e-17 * total {
            break;
        }
        qk *= q;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::quadrature::integrate;

    fn numeric<F: Fn(f64) -> f64>(f: F, lo: f64) -> f64 {
        let out = integrate(f, &[lo, lo + 1.0, lo + 5.0, lo + 20.0, lo + 60.0], 1e-13, 0.0, 200);
        assert!(out.converged);
        out.value
    }

    #[test]
    fn tails_match_quadrature() {
        for z in [1e-4, 0.1, 0.7, 0.999, 1.0, 2.5, 10.0] {
            let num = numeric(|y| y * y / y.exp_m1(), z);
            assert!((bose_tail_2(z) - num).abs() < 1e-11 * num, "{z}");
            let num0 = numeric(|y| 1.0 / y.exp_m1(), z);
            assert!((bose_tail_0(z) - num0).abs() < 1e-11 * num0, "{z}");
        }
    }

    #[test]
    fn branches_join() {
        let below = bose_tail_2(1.0 - 1e-12);
        let above = bose_tail_2(1.0);
        assert!((below - above).abs() < 1e-12);
        assert!((bose_tail_2(0.0) - 2.0 * ZETA3).abs() < 1e-15);
    }
}

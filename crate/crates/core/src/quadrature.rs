//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the
//! summed estimate drops below `max(rel_tol·|I|, abs_tol)` or the interval
//! budget is exhausted. Error estimates follow QUADPACK's `qk21`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_error: f64,
    pub converged: bool,
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Single 21-point Kronrod panel with its error estimate.
pub fn gauss_kronrod21<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_abs = fc.abs() * WGK[10];
    let mut res_g = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(roundoff);
    }
    (value, err)
}

/// Adaptive integration over `[points[0], points[last]]` with the given
/// interior breakpoints. `max_intervals` bounds the total panel count.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> QuadOutcome {
    assert!(points.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::with_capacity(max_intervals.max(points.len()));
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (value, error) = gauss_kronrod21(&f, w[0], w[1]);
            evaluations += 21;
            heap.push(Panel {
                lo: w[0],
                hi: w[1],
                value,
                error,
            });
        }
    }
    let totals = |heap: &BinaryHeap<Panel>| {
        // sum in a fixed order so the result does not depend on heap layout
        let mut panels: Vec<&Panel> = heap.iter().collect();
        panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut value = crate::sum::Neumaier::default();
        let mut error = 0.0;
        for p in panels {
            value.add(p.value);
            error += p.error;
        }
        (value.total(), error)
    };
    let mut roundoff_stall = 0;
    loop {
        let (value, error) = totals(&heap);
        let tol = (rel_tol * value.abs()).max(abs_tol);
        if error <= tol {
            return QuadOutcome {
                value,
                abs_error: error,
                converged: true,
                intervals: heap.len(),
                evaluations,
            };
        }
        if heap.len() >= max_intervals || roundoff_stall > 8 {
            return QuadOutcome {
                value,
                abs_error: error,
                converged: false,
                intervals: heap.len(),
                evaluations,
            };
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval no longer divisible in floating point
            heap.push(Panel {
                error: 0.0,
                ..worst
            });
            roundoff_stall += 1;
            continue;
        }
        let (v1, e1) = gauss_kronrod21(&f, worst.lo, mid);
        let (v2, e2) = gauss_kronrod21(&f, mid, worst.hi);
        evaluations += 42;
        if (e1 + e2) >= worst.error && (v1 + v2 - worst.value).abs() <= 1e-5 * (v1 + v2).abs() {
            roundoff_stall += 1;
        }
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let out = integrate(|x| x.powi(7) - 3.0 * x * x, &[0.0, 2.0], 1e-12, 0.0, 10);
        assert!(out.converged);
        assert!((out.value - (32.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫₀^∞ y ln(1 - e^{-y}) dy = -ζ(3)
        let out = integrate(
            |y: f64| y * (-(-y).exp_m1()).ln(),
            &[0.0, 1.0, 4.0, 16.0, 45.0],
            1e-13,
            0.0,
            200,
        );
        assert!(out.converged, "{out:?}");
        assert!((out.value + crate::scales::ZETA3).abs() < 1e-12, "{out:?}");
    }

    #[test]
    fn reports_non_convergence() {
        let out = integrate(|x: f64| 1.0 / x.abs().sqrt().max(1e-300), &[-1.0, 1.0], 1e-14, 0.0, 6);
        assert!(!out.converged);
        assert_eq!(out.intervals, 6);
    }
}

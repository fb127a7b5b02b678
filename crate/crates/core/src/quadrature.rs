//! Globally adaptive 21-point Gauss-Kronrod quadrature for complex-valued
//! integrands of a real parameter.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below `max(abs_tol * A, rel_tol * |I|)`, where `A` is the
//! current estimate of the integral of `|f|`. Measuring the absolute part
//! against `A` keeps the stopping rule independent of the overall scale of
//! `f`. Error estimates follow the QUADPACK `qk21` rescaling, applied to
//! complex moduli.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
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
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_659_477_834,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Tolerance in units of the integral of `|f|`.
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_levels: u32,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_levels: 60,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_tolerance(self, tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    level: u32,
    value: Complex64,
    error: f64,
    mass: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut kronrod = fc * WGK[10];
    let mut res_abs = fc.norm() * WGK[10];
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let scale = half.abs();
    let value = kronrod * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut err = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 10.0 * f64::EPSILON * res_abs;
    (value, err.max(floor), res_abs)
}

/// Integrate `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let (value, error, mass) = kronrod21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        level: 0,
        value,
        error,
        mass,
    });
    let mut evaluations = 21;
    let mut total = value;
    let mut total_err = error;
    let mut total_mass = mass;
    loop {
        let tol = (cfg.abs_tol * total_mass).max(cfg.rel_tol * total.norm());
        if total_err <= tol {
            break;
        }
        let worst = *heap.peek().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = worst.level < cfg.max_levels && mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b);
        if !splittable || heap.len() >= cfg.max_intervals {
            return Err(Error::QuadratureFailure {
                tolerance: tol,
                error: total_err,
                intervals: heap.len(),
            });
        }
        heap.pop();
        let (v1, e1, m1) = kronrod21(&f, worst.a, mid);
        let (v2, e2, m2) = kronrod21(&f, mid, worst.b);
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        total_mass += m1 + m2 - worst.mass;
        for (lo, hi, v, e, m) in [(worst.a, mid, v1, e1, m1), (mid, worst.b, v2, e2, m2)] {
            heap.push(Segment {
                a: lo,
                b: hi,
                level: worst.level + 1,
                value: v,
                error: e,
                mass: m,
            });
        }
    }
    // Re-sum in positional order so the result does not depend on update history.
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let intervals = segments.len();
    let (value, abs_error) = segments
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), s| {
            (v + s.value, e + s.error)
        });
    Ok(QuadResult {
        value,
        abs_error,
        intervals,
        evaluations,
    })
}

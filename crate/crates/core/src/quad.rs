//! Adaptive Gauss–Kronrod (7/15) quadrature.

use crate::summation::CompensatedSum;

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point
// Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod estimate and |Kronrod - Gauss| on `[a, b]`.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h)
}

pub(crate) fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, depth: u32, acc: &mut CompensatedSum) {
    let (est, err) = gk15(f, a, b);
    if depth == 0 || err <= rel_tol * est.abs() {
        acc.add(est);
        return;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, rel_tol, depth - 1, acc);
    adaptive(f, mid, b, rel_tol, depth - 1, acc);
}

/// `∫_a^b f` to relative tolerance `rel_tol` (best effort, depth-capped).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    adaptive(&f, a, b, rel_tol, 40, &mut acc);
    acc.value()
}

//! Log-Gamma with sign, by the Lanczos approximation and reflection.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `(ln|Γ(x)|, sign Γ(x))`. Poles (non-positive integers) give `(+∞, 0)`.
pub fn ln_gamma(x: f64) -> (f64, i32) {
    if x <= 0.0 && x == x.floor() {
        return (f64::INFINITY, 0);
    }
    if x < 0.5 {
        // Γ(x) Γ(1−x) = π / sin(πx)
        let s = (PI * x).sin();
        let (lg, _) = ln_gamma(1.0 - x);
        let sign = if s > 0.0 { 1 } else { -1 };
        return (PI.ln() - s.abs().ln() - lg, sign);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln(), 1)
}

pub fn gamma(x: f64) -> f64 {
    let (lg, s) = ln_gamma(x);
    if s == 0 {
        return f64::NAN;
    }
    s as f64 * lg.exp()
}

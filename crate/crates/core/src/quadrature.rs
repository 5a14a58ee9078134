//! Gauss–Legendre rules used to build exact-enough cell averages.

/// Five-point Gauss–Legendre nodes on [-1, 1].
pub const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];

/// Weights matching [`GL5_NODES`].
pub const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Mean of `f` over `[a, b]` with the five-point rule (exact for degree ≤ 9).
pub fn mean_gl5(a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
        acc += w * f(mid + half * x);
    }
    0.5 * acc
}

/// Mean of `f` over the rectangle `[ax, bx] × [ay, by]` with the tensor rule.
pub fn mean_gl5_2d(x: (f64, f64), y: (f64, f64), mut f: impl FnMut(f64, f64) -> f64) -> f64 {
    let (mx, hx) = (0.5 * (x.0 + x.1), 0.5 * (x.1 - x.0));
    let (my, hy) = (0.5 * (y.0 + y.1), 0.5 * (y.1 - y.0));
    let mut acc = 0.0;
    for (yn, wy) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
        for (xn, wx) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            acc += wx * wy * f(mx + hx * xn, my + hy * yn);
        }
    }
    0.25 * acc
}

/// Composite version of [`mean_gl5`] over `panels` equal sub-intervals.
pub fn mean_gl5_composite(a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let w = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * w;
            mean_gl5(lo, lo + w, &mut f)
        })
        .sum::<f64>()
        / panels as f64
}

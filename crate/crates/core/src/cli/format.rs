/// Six significant digits for human-facing tables.
///
/// Fixed notation for magnitudes in `[1e-4, 1e6)`, scientific otherwise.
pub fn fmt_sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    // The exponent after rounding to six digits decides the layout.
    let sci = format!("{x:.5e}");
    let exponent: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-4..6).contains(&exponent) {
        let decimals = (5 - exponent) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// Shortest text that parses back to exactly `x`.
pub fn fmt_full(x: f64) -> String {
    let mag = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&mag) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

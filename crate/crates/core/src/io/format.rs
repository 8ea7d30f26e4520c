//! Display rounding and plot-data emission.

use crate::indicator::IndicatorSeries;

use super::table::channel_columns;

/// Formats `value` with exactly `precision` decimals, rounding half away
/// from zero on its shortest decimal representation, so `1.005` becomes
/// `1.01` even though the nearest double sits just below it.
pub fn format_fixed(value: f64, precision: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let repr = value.abs().to_string();
    let (int_part, frac_part) = repr.split_once('.').unwrap_or((&repr, ""));

    let mut digits: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes().take(precision))
        .map(|b| b - b'0')
        .collect();
    digits.extend(std::iter::repeat_n(
        0,
        precision.saturating_sub(frac_part.len()),
    ));
    if frac_part
        .as_bytes()
        .get(precision)
        .is_some_and(|&d| d >= b'5')
    {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }

    let split = digits.len() - precision;
    let mut out = String::with_capacity(digits.len() + 2);
    if value < 0.0 && digits.iter().any(|&d| d != 0) {
        out.push('-');
    }
    out.extend(digits[..split].iter().map(|&d| char::from(b'0' + d)));
    if precision > 0 {
        out.push('.');
        out.extend(digits[split..].iter().map(|&d| char::from(b'0' + d)));
    }
    out
}

/// CSV `t,V[,channels...]` with every value rounded for display. An empty
/// series yields the header line only.
pub fn emit_plot_data(series: &IndicatorSeries, precision: usize) -> String {
    let channels = channel_columns(series);
    let mut out = String::from("t,V");
    for name in channels.into_iter().flatten() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for p in &series.points {
        out.push_str(&p.t.to_string());
        out.push(',');
        out.push_str(&format_fixed(p.sum, precision));
        if channels.is_some() {
            for v in &p.values {
                out.push(',');
                out.push_str(&format_fixed(*v, precision));
            }
        }
        out.push('\n');
    }
    out
}

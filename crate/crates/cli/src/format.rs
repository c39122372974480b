/// Significant digits of every number written to CSV.
pub const SIGNIFICANT_DIGITS: i32 = 12;

/// Plain decimal notation with twelve significant digits.
pub fn fixed12(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.prec$}", 0.0, prec = (SIGNIFICANT_DIGITS - 1) as usize);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (SIGNIFICANT_DIGITS - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit (9.99…→10.0…)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count() as i32;
    if digits > SIGNIFICANT_DIGITS && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(fixed12).unwrap_or_default()
}

pub fn opt_int(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

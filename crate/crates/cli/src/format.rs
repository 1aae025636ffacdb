use num_rational::Rational64;

/// Decimal with 9 significant digits, trailing zeros trimmed. Magnitudes
/// outside [1e-6, 1e15) switch to scientific notation.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..15).contains(&mag) {
        return format!("{x:.8e}");
    }
    // Rounding can carry into the next decade, so format once and re-check.
    let mut s = format!("{x:.*}", (8 - mag).max(0) as usize);
    let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>().trim_start_matches('0').len();
    if digits > 9 && s.contains('.') {
        s = format!("{x:.*}", (7 - mag).max(0) as usize);
    }
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// x rounded to 9 significant digits, for JSON output.
pub fn round9(x: f64) -> f64 {
    if x.is_finite() {
        sig9(x).parse().unwrap_or(x)
    } else {
        x
    }
}

pub fn rational(q: Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

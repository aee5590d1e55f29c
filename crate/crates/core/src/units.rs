//! Physical constants, decibel helpers and SI-suffixed number parsing.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Amplitude ratio to decibels (20·log10).
pub fn amplitude_db(ratio: f64) -> f64 {
    20.0 * ratio.log10()
}

/// Decibels to amplitude ratio.
pub fn db_to_amplitude(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Decibels to power ratio.
pub fn db_to_power(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Free-space wavelength in meters.
pub fn wavelength(freq_hz: f64) -> f64 {
    SPEED_OF_LIGHT / freq_hz
}

/// Parse a number with an optional trailing SI multiplier.
///
/// Accepted suffixes: `k`, `M` (mega), `m` (milli), `u`, `n`, `p`, `f`.
/// Suffixes are case-sensitive, so `1M` is a megohm and `1m` a milliohm.
pub fn parse_si(text: &str) -> Option<f64> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let last = text.chars().last()?;
    let (number, scale) = match last {
        'k' => (&text[..text.len() - 1], 1e3),
        'M' => (&text[..text.len() - 1], 1e6),
        'm' => (&text[..text.len() - 1], 1e-3),
        'u' => (&text[..text.len() - 1], 1e-6),
        'n' => (&text[..text.len() - 1], 1e-9),
        'p' => (&text[..text.len() - 1], 1e-12),
        'f' => (&text[..text.len() - 1], 1e-15),
        _ => (text, 1.0),
    };
    let value: f64 = number.parse().ok()?;
    value.is_finite().then_some(value * scale)
}

/// Render a float with nine significant digits in scientific notation.
///
/// Used for every machine-readable output so that repeated runs are
/// byte-identical.
pub fn format_sig9(value: f64) -> String {
    if value.is_nan() {
        "nan".to_string()
    } else if value.is_infinite() {
        if value > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{value:.8e}")
    }
}

/// Round to nine significant digits (for JSON emission).
pub fn round_sig9(value: f64) -> f64 {
    if !value.is_finite() {
        return value;
    }
    format_sig9(value).parse().unwrap_or(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_suffixes() {
        assert_eq!(parse_si("1000"), Some(1000.0));
        assert_eq!(parse_si("4.7k"), Some(4700.0));
        assert_eq!(parse_si("2M"), Some(2e6));
        assert_eq!(parse_si("3m"), Some(3e-3));
        assert_eq!(parse_si("1e-9"), Some(1e-9));
        assert!((parse_si("0.6p").unwrap() - 0.6e-12).abs() < 1e-27);
        assert!((parse_si("150p").unwrap() - 150e-12).abs() < 1e-24);
        assert!((parse_si("10f").unwrap() - 10e-15).abs() < 1e-28);
        assert_eq!(parse_si("22u"), Some(22.0 * 1e-6));
        assert_eq!(parse_si("1n"), Some(1e-9));
        assert_eq!(parse_si(""), None);
        assert_eq!(parse_si("k"), None);
        assert_eq!(parse_si("1x"), None);
        assert_eq!(parse_si("inf"), None);
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(24.0), "2.40000000e1");
        assert_eq!(format_sig9(f64::INFINITY), "inf");
        assert_eq!(round_sig9(-7.077_439_988_123), -7.07743999);
    }

    #[test]
    fn db_helpers() {
        assert!((amplitude_db(0.5) + 6.0206).abs() < 1e-4);
        assert!((db_to_amplitude(amplitude_db(0.37)) - 0.37).abs() < 1e-12);
        assert!((db_to_power(10.0) - 10.0).abs() < 1e-12);
    }
}

use num_complex::Complex64;

/// `n!` as a float; exact up to `n = 22`, correctly rounded products beyond.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parse `a+bi`, `a-bi`, `bi`, `a`, `i`, `-i` (no spaces).
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not part of an exponent or the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re, im) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().ok()?,
        };
        Some(Complex64::new(re.parse().ok()?, im))
    } else {
        Some(Complex64::new(s.parse().ok()?, 0.0))
    }
}

/// Inverse of [`parse_complex`]: `re+imi` / `re-imi` using shortest round-trip floats.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

//! Fixed numeric formats shared by every subcommand.

use avn::qcore::Complex64;

/// Fidelity column: nine decimals.
pub fn fidelity(f: f64) -> String {
    format!("{f:.9}")
}

/// Twelve significant digits, fixed notation.
pub fn significant12(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.11}", 0.0);
    }
    // exponent after rounding to 12 significant digits
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Shortest decimal with at most twelve fractional digits; `-0` prints as `0`.
pub fn compact(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-9 {
        return format!("{x:.3e}");
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Real part alone when the imaginary part vanishes, otherwise `a+bi`.
pub fn complex(c: Complex64) -> String {
    const EPS: f64 = 1e-12;
    match (c.re.abs() > EPS, c.im.abs() > EPS) {
        (_, false) => format!("{:+.12}", c.re),
        (false, true) => format!("{:+.12}i", c.im),
        (true, true) => format!("{:+.12}{:+.12}i", c.re, c.im),
    }
}

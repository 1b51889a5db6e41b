use std::str::FromStr;

use splitwalk::{CoinParameter, Complex64, InitialCoin};

use crate::error::CliError;

/// Coin inputs farther than this from unit norm are rejected unless the
/// caller asks for normalization; closer ones are treated as rounding and
/// rescaled silently.
pub const NORM_ROUNDING: f64 = 1e-6;

/// Parses θ as a decimal number of radians or a rational multiple of π
/// ("pi", "pi/3", "2pi/5", "2*pi/5"). Rational forms go through
/// [`CoinParameter::from_pi_fraction`], so "pi/4" has u = 1 exactly.
pub fn parse_theta(text: &str) -> Result<CoinParameter, CliError> {
    let cleaned: String = text.trim().to_ascii_lowercase().replace('π', "pi");
    if cleaned.is_empty() {
        return Err(CliError::Usage("empty theta".into()));
    }
    let param = if let Some(pos) = cleaned.find("pi") {
        let (head, tail) = cleaned.split_at(pos);
        let tail = &tail[2..];
        let head = head.strip_suffix('*').unwrap_or(head);
        let num: u64 = if head.is_empty() {
            1
        } else {
            head.parse().map_err(|_| malformed(text))?
        };
        let den: u64 = match tail {
            "" => 1,
            t => t
                .strip_prefix('/')
                .ok_or_else(|| malformed(text))?
                .parse()
                .map_err(|_| malformed(text))?,
        };
        CoinParameter::from_pi_fraction(num, den)
    } else {
        let value: f64 = cleaned.parse().map_err(|_| malformed(text))?;
        CoinParameter::new(value)
    };
    param.map_err(|e| CliError::Usage(format!("theta '{text}': {e}")))
}

fn malformed(text: &str) -> CliError {
    CliError::Usage(format!(
        "malformed theta '{text}': expected radians or a multiple of pi such as pi/3 or 2pi/5"
    ))
}

/// Parses a complex literal such as "0.5+0.5i", "-i", or "1".
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value = Complex64::from_str(&cleaned)
        .map_err(|_| CliError::Usage(format!("malformed complex number '{text}'")))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Usage(format!(
            "complex number '{text}' is not finite"
        )))
    }
}

/// Builds the initial coin, rescaling to unit norm when `normalize` is set
/// or when the input is already within [`NORM_ROUNDING`] of it.
pub fn make_coin(
    alpha: Complex64,
    beta: Complex64,
    normalize: bool,
) -> Result<InitialCoin, CliError> {
    let norm2 = alpha.norm_sqr() + beta.norm_sqr();
    if !normalize && (norm2 - 1.0).abs() > NORM_ROUNDING {
        return Err(CliError::Usage(format!(
            "|alpha|^2 + |beta|^2 = {norm2}; pass --normalize to rescale"
        )));
    }
    InitialCoin::normalized(alpha, beta).map_err(|e| CliError::Usage(e.to_string()))
}

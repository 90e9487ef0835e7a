//! Parsing of positive-sequence specifications and sequence files.

use std::fs;

use discrete_hardy::sequences::parse_rational;
use discrete_hardy::{Complex, FiniteSequence, PositiveSequence};
use rug::Float;

use crate::CliError;

/// Parses `ones`, `linear`, `pow:<r>`, `shifted`, `copson-tilde-lambda`,
/// `copson-hat-lambda` or `file:<path>`.
///
/// Files hold one positive decimal per line for `n = 1, 2, ...`; blank lines
/// and lines starting with `#` are skipped. Values are parsed exactly and
/// rounded to `bits`.
pub fn parse_sequence_spec(text: &str, bits: u32) -> Result<PositiveSequence, CliError> {
    let text = text.trim();
    Ok(match text {
        "ones" => PositiveSequence::ones(),
        "linear" => PositiveSequence::linear(),
        "shifted" => PositiveSequence::shifted(),
        "copson-tilde-lambda" => PositiveSequence::copson_tilde_lambda(),
        "copson-hat-lambda" => PositiveSequence::copson_hat_lambda(),
        _ => {
            if let Some(r) = text.strip_prefix("pow:") {
                let r = parse_rational(r)
                    .map_err(|e| CliError::Usage(format!("sequence `{text}`: {e}")))?;
                PositiveSequence::power(r)
            } else if let Some(path) = text.strip_prefix("file:") {
                let values = read_lines(path)?
                    .into_iter()
                    .map(|(line, s)| {
                        parse_rational(&s)
                            .map(|r| Float::with_val(bits, &r))
                            .map_err(|e| CliError::Usage(format!("{path}:{line}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if values.is_empty() {
                    return Err(CliError::Usage(format!("{path}: no values")));
                }
                PositiveSequence::explicit(text, values)?
            } else {
                return Err(CliError::Usage(format!(
                    "unknown sequence `{text}`; expected ones, linear, pow:<r>, shifted, copson-tilde-lambda, copson-hat-lambda or file:<path>"
                )));
            }
        }
    })
}

/// Reads a test sequence `A_1, A_2, ...` with `A_0 = 0`. Each line holds a
/// real part and an optional imaginary part separated by whitespace.
pub fn read_test_sequence(path: &str, bits: u32) -> Result<FiniteSequence, CliError> {
    let mut values = vec![Complex::zero(bits)];
    for (line, s) in read_lines(path)? {
        let mut parts = s.split_whitespace();
        let mut next = |required: bool| -> Result<Float, CliError> {
            match parts.next() {
                Some(p) => parse_rational(p)
                    .map(|r| Float::with_val(bits, &r))
                    .map_err(|e| CliError::Usage(format!("{path}:{line}: {e}"))),
                None if required => Err(CliError::Usage(format!("{path}:{line}: missing value"))),
                None => Ok(Float::new(bits)),
            }
        };
        let re = next(true)?;
        let im = next(false)?;
        if parts.next().is_some() {
            return Err(CliError::Usage(format!(
                "{path}:{line}: expected at most two numbers"
            )));
        }
        values.push(Complex::new(re, im));
    }
    Ok(FiniteSequence::from_values(bits, values))
}

fn read_lines(path: &str) -> Result<Vec<(usize, String)>, CliError> {
    let content = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    Ok(content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

//! Shared plumbing for the line-oriented model files and number printing.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}

/// Non-blank lines with `#` comments stripped, paired with 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Reads the `<keyword> N` header line and returns N.
pub(crate) fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<usize, ParseError> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, format!("missing `{keyword} N` header")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(ParseError::new(no, format!("expected `{keyword} N` header")));
    }
    let count = parts
        .next()
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| ParseError::new(no, "header count is not a number"))?;
    if parts.next().is_some() {
        return Err(ParseError::new(no, "trailing tokens after header"));
    }
    Ok(count)
}

pub(crate) fn parse_usize(line: usize, token: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("{what} `{token}` is not a non-negative integer")))
}

pub(crate) fn parse_f64(line: usize, token: Option<&str>, what: &str) -> Result<f64, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(ParseError::new(line, format!("{what} `{token}` is not a finite number"))),
    }
}

/// Parameter formatting for model files: 17 significant digits, enough to
/// round-trip any `f64`.
pub fn format_param(x: f64) -> String {
    format!("{x:.16e}")
}

/// Probability formatting for reports: 12 significant digits, trailing zeros
/// trimmed but at least one decimal kept.
pub fn format_prob(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.1}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(1) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    s
}

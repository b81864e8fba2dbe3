//! Number formatting and table writers.

use std::io::Write;

use serde::Serialize;

use crate::error::CliError;

/// Render `x` with 12 significant digits, trailing zeros dropped; plain
/// notation for exponents in `-5..12`, scientific otherwise.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A flat record: header names and the matching cells.
pub trait Record {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

pub fn write_csv<R: Record>(out: &mut dyn Write, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::header())?;
    for r in rows {
        w.write_record(r.cells())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn write_rows<R: Record + Serialize>(out: &mut dyn Write, rows: &[R], format: Format) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.2), "0.2");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0), "0.666666666667");
        assert_eq!(sig12(-1.5), "-1.5");
        assert_eq!(sig12(123456.7890123456), "123456.789012");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.25e-7), "1.25e-7");
        assert_eq!(sig12(6.02214076e23), "6.02214076e23");
        assert_eq!(sig12(0.000012345), "0.000012345");
    }

    proptest! {
        #[test]
        fn round_trips_to_twelve_digits(x in -1e6f64..1e6) {
            let back: f64 = sig12(x).parse().unwrap();
            let tol = x.abs() * 1e-11 + f64::MIN_POSITIVE;
            prop_assert!((back - x).abs() <= tol, "{} -> {}", x, sig12(x));
        }
    }
}

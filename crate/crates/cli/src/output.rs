use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64;
use qfock_core::suite::OutputFormat;
use qfock_core::util::format_complex;
use serde::Serialize;

/// Text produced by a command, written to stdout or `--out`.
pub struct Artifact(pub String);

#[derive(Serialize)]
struct RealValue<'a> {
    target: &'a str,
    value: f64,
}

#[derive(Serialize)]
struct ComplexValue<'a> {
    target: &'a str,
    value: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Coefficients<'a> {
    target: &'a str,
    /// Index is the power of t.
    coefficients: &'a [f64],
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Result<Self> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        Ok(Artifact(s))
    }

    pub fn real(target: &str, value: f64, fmt: OutputFormat) -> Result<Self> {
        match fmt {
            OutputFormat::Csv => Ok(Artifact(format!("value\n{value}\n"))),
            OutputFormat::Json => Self::json(&RealValue { target, value }),
        }
    }

    pub fn complex(target: &str, value: Complex64, fmt: OutputFormat) -> Result<Self> {
        match fmt {
            OutputFormat::Csv => Ok(Artifact(format!("re,im\n{},{}\n", value.re, value.im))),
            OutputFormat::Json => {
                Self::json(&ComplexValue { target, value: format_complex(value), re: value.re, im: value.im })
            }
        }
    }

    pub fn coefficients(target: &str, coefficients: &[f64], fmt: OutputFormat) -> Result<Self> {
        match fmt {
            OutputFormat::Csv => {
                let mut s = String::from("power,coefficient\n");
                for (m, c) in coefficients.iter().enumerate() {
                    s.push_str(&format!("{m},{c}\n"));
                }
                Ok(Artifact(s))
            }
            OutputFormat::Json => Self::json(&Coefficients { target, coefficients }),
        }
    }

    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let text = &self.0;
        match out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(stdout.flush()?)
            }
        }
    }
}

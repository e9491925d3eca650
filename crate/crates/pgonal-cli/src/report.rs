//! JSON report envelope: versioned schema, deterministic field order
//! (struct declaration order), byte-identical output for identical inputs.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report<P: Serialize, R: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub params: P,
    pub results: R,
    pub engine_version: &'static str,
    pub oracle_verified: bool,
}

impl<P: Serialize, R: Serialize> Report<P, R> {
    pub fn new(command: &'static str, params: P, results: R, oracle_verified: bool) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command,
            params,
            results,
            engine_version: ENGINE_VERSION,
            oracle_verified,
        }
    }

    pub fn emit(&self, out: Option<&Path>) -> io::Result<()> {
        let mut body = serde_json::to_string_pretty(self).expect("report serializes");
        body.push('\n');
        match out {
            Some(path) => fs::write(path, body),
            None => io::stdout().write_all(body.as_bytes()),
        }
    }
}

/// Formats a float to the given number of significant digits, plain decimal.
pub fn significant(v: f64, digits: i32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

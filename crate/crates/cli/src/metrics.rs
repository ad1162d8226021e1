//! Per-instruction metrics scraped from simulator output.
//!
//! A metric line starts with an instruction address and carries `key=value`
//! pairs, in any order, optionally mixed with free text such as a
//! disassembly:
//!
//! ```text
//! 0x10078 addi count=120 cpi=1.25 imiss=0 dmiss=3
//! 00010080: ld count=12 cpi=4.0 dmiss=7
//! ```
//!
//! Recognised keys: `count`/`freq`/`frequency`, `cpi`, `imiss`/`icache_misses`,
//! `dmiss`/`dcache_misses`. A line must carry a count to be a record. Anything
//! that is not a well-formed record ends up verbatim in [`MetricsReport::raw`].

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRecord {
    pub address: u64,
    /// Free text between the address and the metrics, e.g. the disassembly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    pub frequency: u64,
    pub cpi: Option<f64>,
    pub icache_misses: Option<u64>,
    pub dcache_misses: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MetricsReport {
    pub executable: String,
    pub simulator: String,
    pub exit_status: Option<i32>,
    pub records: Vec<MetricRecord>,
    /// Output lines that are not metric records, unmodified.
    pub raw: Vec<String>,
}

fn parse_address(token: &str) -> Option<u64> {
    let token = token.strip_suffix(':').unwrap_or(token);
    let digits = token
        .strip_prefix("0x")
        .or_else(|| token.strip_prefix("0X"))
        .unwrap_or(token);
    if digits.is_empty() || digits.len() > 16 {
        return None;
    }
    u64::from_str_radix(digits, 16).ok()
}

/// Parse one line; `None` if it is not a well-formed metric record.
pub fn parse_line(line: &str) -> Option<MetricRecord> {
    let mut tokens = line.split_whitespace();
    let address = parse_address(tokens.next()?)?;
    let mut record = MetricRecord {
        address,
        text: None,
        frequency: 0,
        cpi: None,
        icache_misses: None,
        dcache_misses: None,
    };
    let mut frequency = None;
    let mut text: Vec<&str> = Vec::new();
    for token in tokens {
        let Some((key, value)) = token.split_once('=') else {
            text.push(token);
            continue;
        };
        match key.to_ascii_lowercase().as_str() {
            "count" | "freq" | "frequency" => frequency = Some(value.parse().ok()?),
            "cpi" => {
                let cpi: f64 = value.parse().ok()?;
                if !cpi.is_finite() || cpi < 1.0 {
                    return None;
                }
                record.cpi = Some(cpi);
            }
            "imiss" | "icache_misses" => record.icache_misses = Some(value.parse().ok()?),
            "dmiss" | "dcache_misses" => record.dcache_misses = Some(value.parse().ok()?),
            _ => text.push(token),
        }
    }
    record.frequency = frequency?;
    if record.frequency == 0 && record.cpi.is_some() {
        // CPI is only meaningful for executed instructions.
        return None;
    }
    if !text.is_empty() {
        record.text = Some(text.join(" "));
    }
    Some(record)
}

/// Split simulator output into records and raw lines.
pub fn parse_output(output: &str) -> (Vec<MetricRecord>, Vec<String>) {
    let mut records = Vec::new();
    let mut raw = Vec::new();
    for line in output.lines() {
        match parse_line(line) {
            Some(r) => records.push(r),
            None => raw.push(line.to_string()),
        }
    }
    (records, raw)
}

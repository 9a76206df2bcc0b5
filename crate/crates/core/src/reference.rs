//! Published reference energies and optimal exponents for Z = 2..=10.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::basis::Exponents;
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../data/hf_results.txt");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub z: u32,
    pub symbol: String,
    pub configuration: String,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub e_calc: f64,
    pub e_best_hf: f64,
    pub e_exact: f64,
}

impl ReferenceRow {
    pub fn exponents(&self) -> Result<Exponents> {
        Exponents::new(self.alpha, self.beta, self.gamma)
    }

    /// `|E_calc − E_bestHF| / |E_bestHF|` as a fraction.
    pub fn gap_to_best_hf(&self) -> f64 {
        ((self.e_calc - self.e_best_hf) / self.e_best_hf).abs()
    }

    /// True unless `E_exact ≤ E_bestHF < E_calc` holds.
    pub fn best_hf_anomaly(&self) -> bool {
        !(self.e_exact <= self.e_best_hf && self.e_best_hf < self.e_calc)
    }
}

fn parse_table(text: &str) -> Result<Vec<ReferenceRow>> {
    let bad = |line: &str, why: &str| Error::Report(format!("reference table: {why}: `{line}`"));
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        if cells.len() != 9 {
            return Err(bad(line, "expected 9 cells"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(line, "bad number"));
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
        rows.push(ReferenceRow {
            z: cells[0].parse().map_err(|_| bad(line, "bad Z"))?,
            symbol: cells[1].to_string(),
            configuration: cells[2].to_string(),
            alpha: num(cells[3])?,
            beta: opt(cells[4])?,
            gamma: opt(cells[5])?,
            e_calc: num(cells[6])?,
            e_best_hf: num(cells[7])?,
            e_exact: num(cells[8])?,
        });
    }
    Ok(rows)
}

pub fn reference_table() -> &'static [ReferenceRow] {
    static ROWS: OnceLock<Vec<ReferenceRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table(TABLE).expect("embedded reference table is well formed"))
}

pub fn reference_row(z: u32) -> Result<&'static ReferenceRow> {
    reference_table().iter().find(|r| r.z == z).ok_or(Error::AtomicNumber(z))
}

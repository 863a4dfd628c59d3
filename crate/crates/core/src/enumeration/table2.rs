//! One row of the proportion table: how many of the q/2 possible even
//! lengths each family reaches.

use serde::{Deserialize, Serialize};

use super::{our_lengths, prior_lengths, ref16_lengths, PowerReading};
use crate::error::Result;

pub const CSV_HEADER: &str = "r,q,prior_pct,ref16_pct,ours_pct,new_count";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub r: u64,
    pub q: u64,
    pub reading: PowerReading,
    pub prior_count: usize,
    pub ref16_count: usize,
    pub ours_count: usize,
    pub prior_pct: f64,
    pub ref16_pct: f64,
    pub ours_pct: f64,
    /// Lengths reached by ours but by neither of the other two.
    pub new_count: usize,
}

impl Table2Row {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{:.2},{:.2},{:.2},{}",
            self.r, self.q, self.prior_pct, self.ref16_pct, self.ours_pct, self.new_count
        )
    }
}

pub fn table2_row(r: u64, reading: PowerReading) -> Result<Table2Row> {
    let ours = our_lengths(r)?;
    let ref16 = ref16_lengths(r)?;
    let prior = prior_lengths(r, false, reading)?;
    let new_count = ours
        .lengths
        .iter()
        .filter(|n| !prior.contains(**n) && !ref16.contains(**n))
        .count();
    Ok(Table2Row {
        r,
        q: r * r,
        reading,
        prior_count: prior.len(),
        ref16_count: ref16.len(),
        ours_count: ours.len(),
        prior_pct: prior.percentage(),
        ref16_pct: ref16.percentage(),
        ours_pct: ours.percentage(),
        new_count,
    })
}

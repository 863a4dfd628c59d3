//! Achievable lengths of self-dual codes from the S/T constructions,
//! alongside the lengths known from earlier constructions.
//!
//! For a pair `(a, b)` the construction yields, over every valid `(s, t)`,
//! either `n = s(q-1)/a + t(q-1)/b` or `n + 2`. Pairs sharing the same odd
//! part of `gcd(a, b)` are dominated by one canonical pair
//! `(u(r+1), v(r-1))`, so the full catalog only needs `U × V`.

mod prior;
mod table2;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constructions::{self, Branch};
use crate::error::{Error, Result};
use crate::grs::Construction;

pub use prior::{prior_lengths, prior_rows, PowerReading, PriorRow};
pub use table2::{table2_row, Table2Row, CSV_HEADER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogFamily {
    #[serde(rename = "ours-theorem1")]
    OursTheorem1,
    #[serde(rename = "ours-theorem2")]
    OursTheorem2,
    #[serde(rename = "ref16")]
    Ref16,
    #[serde(rename = "prior-table1")]
    PriorTable1,
    #[serde(rename = "union")]
    Union,
}

impl CatalogFamily {
    pub fn label(self) -> &'static str {
        match self {
            CatalogFamily::OursTheorem1 => "ours-theorem1",
            CatalogFamily::OursTheorem2 => "ours-theorem2",
            CatalogFamily::Ref16 => "ref16",
            CatalogFamily::PriorTable1 => "prior-table1",
            CatalogFamily::Union => "union",
        }
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CatalogFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            CatalogFamily::OursTheorem1,
            CatalogFamily::OursTheorem2,
            CatalogFamily::Ref16,
            CatalogFamily::PriorTable1,
            CatalogFamily::Union,
        ]
        .into_iter()
        .find(|f| f.label() == s)
        .ok_or_else(|| Error::InvalidParams(format!("unknown catalog family {s:?}")))
    }
}

/// Parameters producing one length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: u64,
    pub b: u64,
    pub s: u64,
    pub t: u64,
    pub construction: Construction,
}

/// A set of even lengths `2 <= n <= q+1` with optional witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCatalog {
    pub r: u64,
    pub q: u64,
    pub family: CatalogFamily,
    pub lengths: BTreeSet<u64>,
    pub witnesses: BTreeMap<u64, Witness>,
}

impl LengthCatalog {
    pub fn empty(r: u64, family: CatalogFamily) -> LengthCatalog {
        LengthCatalog {
            r,
            q: r * r,
            family,
            lengths: BTreeSet::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lengths.contains(&n)
    }

    /// `|catalog| / (q/2)` as a percentage.
    pub fn percentage(&self) -> f64 {
        100.0 * self.len() as f64 / (self.q as f64 / 2.0)
    }

    fn insert(&mut self, n: u64, witness: Option<Witness>) {
        debug_assert!(n.is_multiple_of(2) && n >= 2 && n <= self.q + 1, "length {n} out of range");
        self.lengths.insert(n);
        if let Some(w) = witness {
            self.witnesses.entry(n).or_insert(w);
        }
    }

    /// Adds every length of `other`, keeping existing witnesses.
    pub fn merge(&mut self, other: &LengthCatalog) {
        self.lengths.extend(other.lengths.iter().copied());
        for (&n, &w) in &other.witnesses {
            self.witnesses.entry(n).or_insert(w);
        }
    }

    pub fn is_subset(&self, other: &LengthCatalog) -> bool {
        self.lengths.is_subset(&other.lengths)
    }
}

fn check_r(r: u64) -> Result<()> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("r = {r} must be odd and at least 3")));
    }
    Ok(())
}

pub fn ours_family(r: u64) -> CatalogFamily {
    if r % 4 == 1 {
        CatalogFamily::OursTheorem1
    } else {
        CatalogFamily::OursTheorem2
    }
}

/// `U = {u(r+1) : u odd, u | r-1}` and `V = {v(r-1) : v odd, v | r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPairs {
    pub r: u64,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

impl CanonicalPairs {
    /// `U × V`, ascending in a then b.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.u.iter().flat_map(|&a| self.v.iter().map(move |&b| (a, b))).collect()
    }
}

pub fn canonical_pairs(r: u64) -> Result<CanonicalPairs> {
    check_r(r)?;
    let u: Vec<u64> = arith::odd_divisors(r - 1).into_iter().map(|d| d * (r + 1)).collect();
    let v: Vec<u64> = arith::odd_divisors(r + 1).into_iter().map(|d| d * (r - 1)).collect();
    let pairs = CanonicalPairs { r, u, v };
    for (a, b) in pairs.pairs() {
        constructions::validate(r, a, b, 1, 1)?;
        constructions::branch_for(r, a, b)?;
    }
    Ok(pairs)
}

/// Every `(a, b)` accepted by the construction for this r, ascending in a
/// then b.
pub fn valid_pairs(r: u64) -> Result<Vec<(u64, u64)>> {
    check_r(r)?;
    let evens: Vec<u64> = arith::divisors(r * r - 1).into_iter().filter(|d| d % 2 == 0).collect();
    Ok(evens
        .iter()
        .flat_map(|&a| evens.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| {
            constructions::validate(r, a, b, 1, 1).is_ok() && constructions::branch_for(r, a, b).is_ok()
        })
        .collect())
}

/// All self-dual lengths obtainable from one pair.
pub fn lengths_for_pair(r: u64, a: u64, b: u64) -> Result<LengthCatalog> {
    constructions::validate(r, a, b, 1, 1)?;
    let branch = constructions::branch_for(r, a, b)?;
    let q1 = r * r - 1;
    let g = arith::gcd(a, b);
    let mut cat = LengthCatalog::empty(r, ours_family(r));
    for s in 1..=a / g {
        let plain = constructions::is_plain(branch, r, a, b, s);
        let construction = match (branch, plain) {
            (Branch::S, true) => Construction::Theorem1Even,
            (Branch::S, false) => Construction::Theorem1Odd,
            (Branch::T, true) => Construction::Theorem2Odd,
            (Branch::T, false) => Construction::Theorem2Even,
        };
        for t in 1..=b / g {
            let n = s * q1 / a + t * q1 / b + if plain { 0 } else { 2 };
            cat.insert(n, Some(Witness { a, b, s, t, construction }));
        }
    }
    Ok(cat)
}

fn union_over(r: u64, pairs: &[(u64, u64)]) -> Result<LengthCatalog> {
    let parts = pairs
        .par_iter()
        .map(|&(a, b)| lengths_for_pair(r, a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut cat = LengthCatalog::empty(r, ours_family(r));
    for part in &parts {
        cat.merge(part);
    }
    Ok(cat)
}

/// Union of [`lengths_for_pair`] over the canonical pairs.
pub fn our_lengths(r: u64) -> Result<LengthCatalog> {
    union_over(r, &canonical_pairs(r)?.pairs())
}

/// Union of [`lengths_for_pair`] over every valid pair. Slow for large r.
pub fn our_lengths_all_pairs(r: u64) -> Result<LengthCatalog> {
    union_over(r, &valid_pairs(r)?)
}

/// The canonical pair that dominates `(a, b)`: `(u(r+1), v(r-1))` with
/// `u = gcd(gcd(a,b), r-1)/2` and `v = gcd(gcd(a,b), r+1)/2`.
pub fn dominating_pair(r: u64, a: u64, b: u64) -> (u64, u64) {
    let g = arith::gcd(a, b);
    let u = arith::gcd(g, r - 1) / 2;
    let v = arith::gcd(g, r + 1) / 2;
    (u * (r + 1), v * (r - 1))
}

/// Lengths `s(r-1) + t(r+1)` with `1 <= s <= (r+1)/2`, `1 <= t <= (r-1)/2`,
/// s even when r ≡ 1 (mod 4) and odd when r ≡ 3 (mod 4).
pub fn ref16_lengths(r: u64) -> Result<LengthCatalog> {
    check_r(r)?;
    let mut cat = LengthCatalog::empty(r, CatalogFamily::Ref16);
    let want_odd = r % 4 == 3;
    for s in (1..=r.div_ceil(2)).filter(|s| (s % 2 == 1) == want_odd) {
        for t in 1..=(r - 1) / 2 {
            cat.insert(s * (r - 1) + t * (r + 1), None);
        }
    }
    Ok(cat)
}

/// Ours, the earlier rows and ref16 together.
pub fn union_lengths(r: u64, reading: PowerReading) -> Result<LengthCatalog> {
    let mut cat = our_lengths(r)?;
    cat.family = CatalogFamily::Union;
    cat.merge(&prior_lengths(r, true, reading)?);
    Ok(cat)
}

pub fn catalog(r: u64, family: CatalogFamily, reading: PowerReading) -> Result<LengthCatalog> {
    match family {
        CatalogFamily::OursTheorem1 | CatalogFamily::OursTheorem2 => {
            if ours_family(r) != family {
                return Err(Error::InvalidParams(format!(
                    "{family} needs r ≡ {} (mod 4)",
                    if family == CatalogFamily::OursTheorem1 { 1 } else { 3 }
                )));
            }
            our_lengths(r)
        }
        CatalogFamily::Ref16 => ref16_lengths(r),
        CatalogFamily::PriorTable1 => prior_lengths(r, false, reading),
        CatalogFamily::Union => union_lengths(r, reading),
    }
}

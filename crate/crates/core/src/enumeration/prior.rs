//! Lengths of self-dual MDS codes known from earlier constructions,
//! restricted to odd square q. Each row is generated literally from its
//! stated condition and then filtered to even lengths in `2..=q+1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{check_r, ref16_lengths, CatalogFamily, LengthCatalog};
use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Sign};

/// How rows stated for `q = r^s` are read when q is a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerReading {
    /// Only `q = r^2`.
    SquareOnly,
    /// Every `q = r'^s'` meeting the row's condition on s'.
    AllDecompositions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorRow {
    pub id: &'static str,
    pub condition: &'static str,
    pub lengths: BTreeSet<u64>,
}

struct Rows {
    q: u64,
    rows: Vec<PriorRow>,
}

impl Rows {
    fn row(&mut self, id: &'static str, condition: &'static str, lengths: impl IntoIterator<Item = u64>) {
        let q = self.q;
        let lengths = lengths.into_iter().filter(|&n| n % 2 == 0 && n >= 2 && n <= q + 1).collect();
        self.rows.push(PriorRow { id, condition, lengths });
    }
}

/// η of an integer read in the prime field; `None` when it is 0 mod p.
fn eta_int(field: &FiniteField, n: i64) -> Option<Sign> {
    field.quadratic_character(field.from_int(n)).ok()
}

fn plus(field: &FiniteField, n: i64) -> bool {
    eta_int(field, n) == Some(Sign::Plus)
}

/// `(r', s')` with `r'^s' = q` for the requested reading.
fn decompositions(p: u64, m: u32, r: u64, reading: PowerReading) -> Vec<(u64, u32)> {
    match reading {
        PowerReading::SquareOnly => vec![(r, 2)],
        PowerReading::AllDecompositions => arith::divisors(m as u64)
            .into_iter()
            .filter(|&d| d < m as u64)
            .map(|d| (p.pow(d as u32), m / d as u32))
            .collect(),
    }
}

/// Every row except the two coset-pair rows (see [`ref16_lengths`]).
pub fn prior_rows(r: u64, reading: PowerReading) -> Result<Vec<PriorRow>> {
    check_r(r)?;
    let (p, e) = arith::prime_power(r)
        .ok_or_else(|| Error::InvalidParams(format!("r = {r} is not a prime power")))?;
    let field = FiniteField::new(p, 2 * e)?;
    let f = &field;
    let m = 2 * e;
    let q = r * r;
    let q1 = q - 1;
    let divs = arith::divisors(q1);
    let neg_one_square = plus(f, -1);
    let decomp = decompositions(p, m, r, reading);
    let mut out = Rows { q, rows: Vec::new() };

    out.row("q+1", "n = q+1", [q + 1]);
    out.row("le-r", "n <= r", 1..=r);
    if r % 4 == 3 {
        out.row("2tr", "r ≡ 3 (mod 4), n = 2tr, t <= (r-1)/2", (1..=(r - 1) / 2).map(|t| 2 * t * r));
    }
    out.row(
        "4n-n2",
        "4^n n^2 <= q",
        (1..).take_while(|&n: &u64| n < 32 && 4u64.pow(n as u32) * n * n <= q),
    );
    out.row("n-1-div", "(n-1) | (q-1)", divs.iter().map(|d| d + 1));
    out.row("pl+1-le", "n = p^l + 1, l <= m", (0..=m).map(|l| p.pow(l) + 1));

    let mut two_t_rl = Vec::new();
    let mut odd_t_rl = Vec::new();
    for &(rr, ss) in decomp.iter().filter(|&&(_, ss)| ss % 2 == 0) {
        for l in 0..=ss {
            let rl = rr.pow(l);
            two_t_rl.extend((1..=(rr - 1) / 2).map(|t| 2 * t * rl));
            odd_t_rl.extend((0..=(rr - 1) / 2).map(|t| (2 * t + 1) * rl + 1));
        }
    }
    out.row("2t-rl", "q = r^s, s even, n = 2t r^l, 0 <= l <= s, 1 <= t <= (r-1)/2", two_t_rl);
    out.row("2t+1-rl+1", "q = r^s, s even, n = (2t+1) r^l + 1, 0 <= l <= s, 0 <= t <= (r-1)/2", odd_t_rl);

    out.row(
        "n-2-div-eta",
        "(n-2) | (q-1), η(2-n) = 1",
        divs.iter().map(|d| d + 2).filter(|&n| plus(f, 2 - n as i64)),
    );
    out.row(
        "n-1-div-eta",
        "(n-1) | (q-1), η(1-n) = 1",
        divs.iter().map(|d| d + 1).filter(|&n| plus(f, 1 - n as i64)),
    );
    out.row("n-div", "n | (q-1)", divs.iter().copied());
    out.row(
        "pl+1-div",
        "n = p^l + 1, l | m",
        arith::divisors(m as u64).into_iter().map(|l| p.pow(l as u32) + 1),
    );
    out.row(
        "2pl",
        "n = 2p^l, l < m, η(-1) = 1",
        (0..m).filter(|_| neg_one_square).map(|l| 2 * p.pow(l)),
    );

    let mut rows_tr = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for &(rr, _) in decomp.iter().filter(|&&(_, ss)| ss >= 2) {
        for t in (2..=rr).step_by(2) {
            if (rr - 1) % (2 * t) == 0 {
                rows_tr[0].push(t * rr);
            }
            if (rr - 1) % (t - 1) == 0 && plus(f, 1 - t as i64) {
                rows_tr[1].push(t * rr);
            }
        }
        for t in (1..=rr).step_by(2) {
            if (rr - 1) % t == 0 && plus(f, t as i64) {
                rows_tr[2].push(t * rr + 1);
            }
            if t > 1 && (rr - 1) % (t - 1) == 0 && plus(f, t as i64 - 1) && neg_one_square {
                rows_tr[3].push(t * rr + 1);
            }
        }
    }
    let [tr_a, tr_b, tr_c, tr_d] = rows_tr;
    out.row("tr-2t-div", "q = r^s, s >= 2, n = tr, t even, 2t | (r-1)", tr_a);
    out.row("tr-t-1-div", "q = r^s, s >= 2, n = tr, t even, (t-1) | (r-1), η(1-t) = 1", tr_b);
    out.row("tr+1-t-div", "q = r^s, s >= 2, n = tr+1, t odd, t | (r-1), η(t) = 1", tr_c);
    out.row(
        "tr+1-t-1-div",
        "q = r^s, s >= 2, n = tr+1, t odd, (t-1) | (r-1), η(t-1) = η(-1) = 1",
        tr_d,
    );
    out.row("tr-even", "n = tr, t even, 1 <= t <= r", (2..=r).step_by(2).map(|t| t * r));
    out.row("tr+1-odd", "n = tr+1, t odd, 1 <= t <= r", (1..=r).step_by(2).map(|t| t * r + 1));

    let mut plus_side = [Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    let mut minus_side = [Vec::new(), Vec::new(), Vec::new()];
    for &mm in &divs {
        let quotient_even = (q1 / mm).is_multiple_of(2);
        let gp = arith::gcd(r + 1, mm);
        let gm = arith::gcd(r - 1, mm);
        if quotient_even {
            plus_side[0].extend((1..=(r + 1) / gp).map(|t| t * mm));
            minus_side[0].extend((1..=(r - 1) / gm).map(|t| t * mm));
        }
        plus_side[1].extend((2..=(r + 1) / (2 * gp)).map(|t| t * mm).filter(|tm| tm % 2 == 1).map(|tm| tm + 1));
        plus_side[2].extend(
            (1..=(r + 1) / gp)
                .filter(|&t| (t * mm) % 2 == 0 && !(t % 2 == 0 && mm % 2 == 0 && r % 4 == 1))
                .map(|t| t * mm + 2),
        );
        if quotient_even {
            for s in (2..=r + 1).step_by(2) {
                if mm % s == 0 && (r + 1).is_multiple_of(s) && ((r + 1) / s).is_multiple_of(2) {
                    let bound = s * (r - 1) / arith::gcd(s * (r - 1), mm);
                    plus_side[3].extend((1..=bound).map(|t| t * mm));
                    plus_side[4].extend((1..=bound).map(|t| t * mm + 2));
                }
            }
        }
        for t in 2..=(r - 1) / gm {
            let tm = t * mm;
            if tm % 2 == 1 {
                minus_side[1].push(tm + 1);
            } else {
                minus_side[2].push(tm + 2);
            }
        }
    }
    let [pa, pb, pc, pd, pe] = plus_side;
    out.row("tm-plus", "n = tm, (q-1)/m even, 1 <= t <= (r+1)/gcd(r+1,m)", pa);
    out.row("tm+1-plus", "n = tm+1, tm odd, m | (q-1), 2 <= t <= (r+1)/(2 gcd(r+1,m))", pb);
    out.row(
        "tm+2-plus",
        "n = tm+2, tm even, m | (q-1), not (t, m even and r ≡ 1 (mod 4)), 1 <= t <= (r+1)/gcd(r+1,m)",
        pc,
    );
    out.row(
        "tm-s",
        "n = tm, (q-1)/m even, 1 <= t <= s(r-1)/gcd(s(r-1),m), s even, s | m, (r+1)/s even",
        pd,
    );
    out.row(
        "tm+2-s",
        "n = tm+2, (q-1)/m even, (r+1)/s even, 1 <= t <= s(r-1)/gcd(s(r-1),m), s even, s | m",
        pe,
    );
    let [ma, mb, mc] = minus_side;
    out.row("tm-minus", "n = tm, (q-1)/m even, 1 <= t <= (r-1)/gcd(r-1,m)", ma);
    out.row("tm+1-minus", "n = tm+1, tm odd, m | (q-1), 2 <= t <= (r-1)/gcd(r-1,m)", mb);
    out.row("tm+2-minus", "n = tm+2, tm even, m | (q-1), 2 <= t <= (r-1)/gcd(r-1,m)", mc);

    Ok(out.rows)
}

/// Union of [`prior_rows`], optionally with the coset-pair rows.
pub fn prior_lengths(r: u64, include_ref16: bool, reading: PowerReading) -> Result<LengthCatalog> {
    let mut cat = LengthCatalog::empty(r, CatalogFamily::PriorTable1);
    for row in prior_rows(r, reading)? {
        cat.lengths.extend(row.lengths);
    }
    if include_ref16 {
        cat.merge(&ref16_lengths(r)?);
    }
    Ok(cat)
}

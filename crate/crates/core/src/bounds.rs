//! Exact lower bounds on P(x) and the minimal-q threshold table.
//!
//! master(q)    = 1 - a(q)/i(G) - u(G) b(q)/i(G)
//! displayed(q) = 1 - Σ (closed-form terms)
//!
//! Everything is evaluated in big rationals at q = 2^f.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::census::{ledger, BoundLedgerEntry};
use crate::error::{Error, Result};
use crate::expr::{rat, Expr};
use crate::group::Family;

/// Largest exponent f searched for thresholds and witnesses.
pub const MAX_F: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityBound {
    pub family: Family,
    pub n: u32,
    pub f: u32,
    pub master: BigRational,
    pub displayed: BigRational,
    pub positive: bool,
}

fn q_of(f: u32) -> BigInt {
    BigInt::one() << f as usize
}

/// The two subtracted terms a/i and u·b/i of the master bound.
pub fn master_terms(row: &BoundLedgerEntry, f: u32) -> (BigRational, BigRational) {
    let q = q_of(f);
    let i = row.i_g.eval(&q);
    let a = row.a.eval(&q) / &i;
    let ub = row.u_g.eval(&q) * row.b.eval(&q) / &i;
    (a, ub)
}

pub fn master_lower(family: Family, n: u32, f: u32) -> Result<BigRational> {
    let row = ledger(family, n)?;
    let (a, ub) = master_terms(&row, f);
    Ok(BigRational::one() - a - ub)
}

fn displayed_of(row: &BoundLedgerEntry, f: u32) -> BigRational {
    let q = q_of(f);
    row.displayed.iter().fold(BigRational::one(), |acc, t| acc - t.eval(&q))
}

pub fn displayed_lower(family: Family, n: u32, f: u32) -> Result<BigRational> {
    Ok(displayed_of(&ledger(family, n)?, f))
}

pub fn evaluate(family: Family, n: u32, f: u32) -> Result<ProbabilityBound> {
    let row = ledger(family, n)?;
    let (a, ub) = master_terms(&row, f);
    let displayed = displayed_of(&row, f);
    Ok(ProbabilityBound {
        family: row.family,
        n,
        f,
        master: BigRational::one() - a - ub,
        positive: displayed.is_positive(),
        displayed,
    })
}

/// Whether the master bound decomposes into the displayed terms at q = 2^f.
///
/// Rows whose proof relaxes the master bound in a final step (only PSL₄) are
/// checked as master ≥ displayed instead, for q within the row's condition.
pub fn terms_match(row: &BoundLedgerEntry, f: u32) -> bool {
    let (a, ub) = master_terms(row, f);
    let terms = row.comparison_terms();
    if terms.len() == 2 {
        let q = q_of(f);
        a == terms[0].eval(&q) && ub == terms[1].eval(&q)
    } else {
        !row.condition.holds(f) || BigRational::one() - a - ub >= displayed_of(row, f)
    }
}

/// `(c, k)` for an expression of the form c·q^k.
fn monomial(e: &Expr) -> Option<(BigRational, i32)> {
    match e {
        Expr::Const(c) => Some((c.clone(), 0)),
        Expr::QPow(k) => Some((BigRational::one(), *k)),
        Expr::Product(parts) => {
            let mut c = BigRational::one();
            let mut k = 0;
            for p in parts {
                let (c2, k2) = monomial(p)?;
                c *= c2;
                k += k2;
            }
            Some((c, k))
        }
        _ => None,
    }
}

/// Threshold search result for one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    /// Least f ≤ [`MAX_F`] with displayed(2^f) > 0.
    pub min_f: u32,
    /// Every subtracted term is c·q^k with c > 0 and k < 0, so displayed is
    /// strictly increasing in q and stays positive beyond `min_f`.
    pub monotone: bool,
}

pub fn min_q_positive(family: Family, n: u32) -> Result<Threshold> {
    let row = ledger(family, n)?;
    let min_f = (1..=MAX_F)
        .find(|&f| displayed_of(&row, f).is_positive())
        .ok_or_else(|| Error::OutOfRange(alloc::format!("{} never positive for f <= {MAX_F}", row.name())))?;
    let monotone = row
        .displayed
        .iter()
        .all(|t| matches!(monomial(t), Some((c, k)) if c.is_positive() && k < 0));
    Ok(Threshold { min_f, monotone })
}

/// Least f with displayed(2^f) > 1 - 2^-10.
pub fn limit_witness(family: Family, n: u32) -> Result<u32> {
    let row = ledger(family, n)?;
    let target = BigRational::one() - rat(1, 1024);
    (1..=MAX_F)
        .find(|&f| displayed_of(&row, f) > target)
        .ok_or_else(|| Error::OutOfRange(alloc::format!("{} has no witness for f <= {MAX_F}", row.name())))
}

/// displayed(2^f) for f = from..=to, checking strict increase along the way.
pub fn strictly_increasing(family: Family, n: u32, from: u32, to: u32) -> Result<bool> {
    let row = ledger(family, n)?;
    let values: Vec<BigRational> = (from..=to).map(|f| displayed_of(&row, f)).collect();
    Ok(values.windows(2).all(|w| w[1] > w[0]) && values.iter().all(|v| !v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::LEDGER_ROWS;

    #[test]
    fn thresholds_reproduce_table() {
        let expected = [3, 7, 2, 6, 4, 4, 5, 2, 3, 2, 2];
        for (&(fam, n), &f) in LEDGER_ROWS.iter().zip(&expected) {
            let t = min_q_positive(fam, n).unwrap();
            assert_eq!(t.min_f, f, "{fam} {n}");
            assert!(t.monotone);
            assert_eq!(ledger(fam, n).unwrap().published_min_f, f);
        }
    }

    #[test]
    fn displayed_examples() {
        assert_eq!(displayed_lower(Family::PSL, 4, 3).unwrap(), rat(3, 8));
        assert_eq!(displayed_lower(Family::Sp, 6, 6).unwrap(), rat(7, 64));
        assert_eq!(displayed_lower(Family::OmegaPlus, 8, 4).unwrap(), rat(168, 4096));
        // at q = 2^6 the PSL6 bound is still negative
        assert_eq!(
            displayed_lower(Family::PSL, 6, 6).unwrap(),
            rat(-5, 16) - rat(12, 1 << 24)
        );
    }

    #[test]
    fn master_examples() {
        for f in 1..=10 {
            let q = 1i64 << f;
            assert_eq!(master_lower(Family::Sp, 6, f).unwrap(), BigRational::one() - rat(57, q));
            assert!(master_lower(Family::OmegaMinus, 12, 2).unwrap().is_positive());
        }
    }

    #[test]
    fn terms_match_for_all_rows() {
        for &(fam, n) in &LEDGER_ROWS {
            let row = ledger(fam, n).unwrap();
            for f in 1..=10 {
                assert!(terms_match(&row, f), "{} f={f}", row.name());
            }
        }
    }

    #[test]
    fn witnesses_and_monotonicity() {
        for &(fam, n) in &LEDGER_ROWS {
            let w = limit_witness(fam, n).unwrap();
            let t = min_q_positive(fam, n).unwrap();
            assert!(w >= t.min_f);
            assert!(strictly_increasing(fam, n, t.min_f, MAX_F).unwrap());
        }
        assert_eq!(limit_witness(Family::PSL, 4).unwrap(), 13);
    }
}

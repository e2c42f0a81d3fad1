//! Certification of cubic graphical regular representations.
//!
//! Cay(G, S) is a GRR exactly when |Aut(Cay(G, S))| = |G|. Generation is
//! checked first since a disconnected Cayley graph is never a GRR.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::autom::automorphism_group;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::build_cayley;
use crate::table::ElementTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// S = {x, x⁻¹, y}, |x| > 2, y an involution.
    Mixed,
    /// S = three distinct involutions.
    ThreeInvolutions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrrVerdict {
    /// Sorted element indices of S.
    pub connection: Vec<u32>,
    pub generates: bool,
    /// |Aut(Cay(G, S))|; `None` when S does not generate or the budget ran out.
    pub aut_order: Option<BigUint>,
    pub is_grr: bool,
    /// Set when the automorphism search was cut short; `is_grr` is then unknown.
    pub budget_exceeded: bool,
    pub nodes: u64,
}

/// Certify an arbitrary inverse-closed connection set.
pub fn certify<B: Budget>(table: &ElementTable, s: &[u32], budget: &mut B) -> Result<GrrVerdict> {
    let cay = build_cayley(table, s)?;
    let mut verdict = GrrVerdict {
        connection: cay.connection.clone(),
        generates: table.generates(s)?,
        aut_order: None,
        is_grr: false,
        budget_exceeded: false,
        nodes: 0,
    };
    if !verdict.generates {
        return Ok(verdict);
    }
    let known: Vec<Vec<u32>> = table
        .generator_indices()
        .iter()
        .map(|&g| table.right_translation(g))
        .collect();
    match automorphism_group(&cay.graph, &known, budget) {
        Ok(r) => {
            verdict.is_grr = r.order == BigUint::from(table.len());
            verdict.aut_order = Some(r.order);
            verdict.nodes = r.nodes;
        }
        Err(Error::BudgetExceeded(_)) => verdict.budget_exceeded = true,
        Err(e) => return Err(e),
    }
    Ok(verdict)
}

/// Certify S = {x, x⁻¹, y}.
pub fn is_grr<B: Budget>(table: &ElementTable, x: u32, y: u32, budget: &mut B) -> Result<GrrVerdict> {
    let s = mixed_set(table, x, y)?;
    certify(table, &s, budget)
}

fn mixed_set(table: &ElementTable, x: u32, y: u32) -> Result<Vec<u32>> {
    if x as usize >= table.len() || y as usize >= table.len() {
        return Err(Error::NotInGroup);
    }
    if table.involutions().binary_search(&y).is_err() {
        return Err(Error::InvalidConnectionSet("y is not an involution".into()));
    }
    let xi = table.inv(x);
    if x == 0 || xi == x {
        return Err(Error::InvalidConnectionSet("x must have order greater than 2".into()));
    }
    Ok(vec![x, xi, y])
}

/// Whether some non-identity permutation of S extends to an automorphism of G.
///
/// Requires ⟨S⟩ = G. A candidate σ is a bijection of S with σ(s⁻¹) = σ(s)⁻¹;
/// it extends iff g·s ↦ φ(g)·σ(s) is well defined on the whole group.
pub fn aut_gs_nontrivial(table: &ElementTable, s: &[u32]) -> Result<bool> {
    if !table.generates(s)? {
        return Err(Error::InvalidConnectionSet("S does not generate G".into()));
    }
    let inv: Vec<u32> = s.iter().map(|&a| table.inv(a)).collect();
    let right: Vec<Vec<u32>> = s.iter().map(|&a| table.right_translation(a)).collect();
    let k = s.len();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
        let respects_inverses = (0..k).all(|i| {
            let j = s.iter().position(|&b| b == inv[i]).expect("S is inverse-closed");
            s[perm[j]] == inv[perm[i]]
        });
        if respects_inverses && extends(table, &right, &perm) {
            return Ok(true);
        }
    }
}

fn extends(table: &ElementTable, right: &[Vec<u32>], perm: &[usize]) -> bool {
    let n = table.len();
    let mut phi = vec![u32::MAX; n];
    phi[0] = 0;
    let mut stack = vec![0u32];
    while let Some(g) = stack.pop() {
        for (i, r) in right.iter().enumerate() {
            let h = r[g as usize];
            let image = right[perm[i]][phi[g as usize] as usize];
            if phi[h as usize] == u32::MAX {
                phi[h as usize] = image;
                stack.push(h);
            } else if phi[h as usize] != image {
                return false;
            }
        }
    }
    true
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All candidate connection sets of a shape, in a fixed order.
///
/// Mixed: one x per {x, x⁻¹} (the smaller index) with |x| > 2, times every involution.
/// Three involutions: unordered triples of distinct involutions.
pub fn candidates(table: &ElementTable, shape: Shape) -> Vec<Vec<u32>> {
    let invs = table.involutions();
    match shape {
        Shape::Mixed => {
            let mut out = Vec::new();
            for x in 1..table.len() as u32 {
                let xi = table.inv(x);
                if xi <= x {
                    continue;
                }
                for &y in invs {
                    out.push(vec![x, xi, y]);
                }
            }
            out
        }
        Shape::ThreeInvolutions => {
            let mut out = Vec::new();
            for a in 0..invs.len() {
                for b in a + 1..invs.len() {
                    for c in b + 1..invs.len() {
                        out.push(vec![invs[a], invs[b], invs[c]]);
                    }
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub shape: Shape,
    pub candidates: u64,
    pub examined: u64,
    pub generating: u64,
    /// Connection sets certified as GRRs.
    pub witnesses: Vec<Vec<u32>>,
    /// Candidates whose certification ran out of budget.
    pub unknown: u64,
    /// True when every candidate was decided.
    pub complete: bool,
}

/// Run every candidate of the shape; stops at the first witness when `first_only`.
pub fn exhaustive_search<B: Budget>(
    table: &ElementTable,
    shape: Shape,
    first_only: bool,
    budget: &mut B,
) -> Result<SearchReport> {
    let cands = candidates(table, shape);
    let mut report = SearchReport {
        shape,
        candidates: cands.len() as u64,
        examined: 0,
        generating: 0,
        witnesses: Vec::new(),
        unknown: 0,
        complete: true,
    };
    for s in &cands {
        let v = certify(table, s, budget)?;
        report.examined += 1;
        report.generating += v.generates as u64;
        if v.budget_exceeded {
            report.unknown += 1;
            report.complete = false;
            break;
        }
        if v.is_grr {
            report.witnesses.push(v.connection);
            if first_only {
                break;
            }
        }
    }
    if report.examined < report.candidates && report.witnesses.is_empty() {
        report.complete = false;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EstimateMode {
    Exhaustive,
    Sample(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    /// i₂(G).
    pub involutions: u64,
    /// successes / trials; exactly |K(x) ∩ L(x)| / i₂(G) in exhaustive mode.
    pub fraction: BigRational,
    pub exhaustive: bool,
}

/// Empirical P(x): the fraction of involutions y making {x, x⁻¹, y} a GRR.
pub fn estimate_p<B: Budget, R: Rng + ?Sized>(
    table: &ElementTable,
    x: u32,
    mode: EstimateMode,
    rng: &mut R,
    budget: &mut B,
) -> Result<Estimate> {
    let ys: Vec<u32> = match mode {
        EstimateMode::Exhaustive => table.involutions().to_vec(),
        EstimateMode::Sample(0) => return Err(Error::OutOfRange("sample size must be positive".into())),
        EstimateMode::Sample(n) => (0..n).map(|_| table.sample_involution(rng)).collect::<Result<_>>()?,
    };
    let mut successes = 0;
    for &y in &ys {
        let v = is_grr(table, x, y, budget)?;
        if v.budget_exceeded {
            return Err(Error::BudgetExceeded(format!(
                "certification of y = {y} ran out of budget"
            )));
        }
        successes += v.is_grr as u64;
    }
    let trials = ys.len() as u64;
    let fraction = if trials == 0 {
        BigRational::zero()
    } else {
        BigRational::new(successes.into(), trials.into())
    };
    Ok(Estimate {
        successes,
        trials,
        involutions: table.involutions().len() as u64,
        fraction,
        exhaustive: mode == EstimateMode::Exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::NodeBudget;
    use crate::field::Field;
    use crate::group::{Family, GroupSpec};
    use crate::table::DEFAULT_CAP;

    fn table(family: Family, n: usize, field: Field) -> ElementTable {
        ElementTable::enumerate(&GroupSpec::matrix(family, n, field).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn s3_has_no_cubic_grr() {
        let t = table(Family::SL, 2, Field::binary(1).unwrap());
        // one {x, x⁻¹} pair of 3-cycles times three involutions; each graph is a prism
        assert_eq!(candidates(&t, Shape::Mixed).len(), 3);
        let m = exhaustive_search(&t, Shape::Mixed, false, &mut NodeBudget::unlimited()).unwrap();
        assert!(m.complete && m.witnesses.is_empty());
        let s = &candidates(&t, Shape::Mixed)[0];
        let v = certify(&t, s, &mut NodeBudget::unlimited()).unwrap();
        assert_eq!(v.aut_order, Some(BigUint::from(12u32)));
        let v = certify(&t, t.involutions(), &mut NodeBudget::unlimited()).unwrap();
        assert_eq!(v.aut_order, Some(BigUint::from(72u32)));
        assert!(v.generates && !v.is_grr);
        let r = exhaustive_search(&t, Shape::ThreeInvolutions, false, &mut NodeBudget::unlimited()).unwrap();
        assert_eq!((r.candidates, r.complete, r.witnesses.len()), (1, true, 0));
    }

    #[test]
    fn shapes_are_validated() {
        let t = table(Family::SL, 3, Field::binary(1).unwrap());
        let y = t.involutions()[0];
        assert!(is_grr(&t, y, y, &mut NodeBudget::unlimited()).is_err());
        assert!(is_grr(&t, 0, y, &mut NodeBudget::unlimited()).is_err());
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let x = (1..168).find(|&i| t.order_of(i) == 7).unwrap();
        assert!(estimate_p(&t, x, EstimateMode::Sample(0), &mut rng, &mut NodeBudget::unlimited()).is_err());
    }

    #[test]
    fn psl27_mixed_candidates() {
        let t = table(Family::PSL, 2, Field::prime(7).unwrap());
        assert_eq!(candidates(&t, Shape::Mixed).len(), 73 * 21);
        assert_eq!(candidates(&t, Shape::ThreeInvolutions).len(), 1330);
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = 1;
        while next_permutation(&mut p) {
            seen += 1;
        }
        assert_eq!(seen, 6);
    }
}

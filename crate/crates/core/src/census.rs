//! Involution censuses of GL_n(q) in characteristic 2 and the bound ledger.
//!
//! Every involution of GL_n(q), q even, is conjugate to exactly one Suzuki form
//! j_ℓ(n), 1 ≤ ℓ ≤ n/2, whose centralizer has order
//! q^{ℓ(2n-3ℓ)} |GL_ℓ(q)| |GL_{n-2ℓ}(q)|.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::group::Family;

/// |GL_n(q)|, with |GL_0(q)| = 1.
pub fn gl_order(n: u32, q: &BigUint) -> BigUint {
    let mut order = BigUint::one();
    let qn = num_traits::pow(q.clone(), n as usize);
    let mut qi = BigUint::one();
    for _ in 0..n {
        order *= &qn - &qi;
        qi *= q;
    }
    order
}

fn check_q(q: &BigUint) -> Result<()> {
    if q < &BigUint::from(2u32) || q.count_ones() != 1 {
        return Err(Error::OutOfRange(format!("q = {q} is not a power of 2 at least 2")));
    }
    Ok(())
}

/// Centralizer order of j_ℓ(n) in GL_n(q).
pub fn gl_centralizer_order(n: u32, l: u32, q: &BigUint) -> Result<BigUint> {
    check_q(q)?;
    if l < 1 || 2 * l > n {
        return Err(Error::OutOfRange(format!("need 1 <= l <= n/2, got n = {n}, l = {l}")));
    }
    let unipotent = num_traits::pow(q.clone(), (l * (2 * n - 3 * l)) as usize);
    Ok(unipotent * gl_order(l, q) * gl_order(n - 2 * l, q))
}

/// Data of the involution class of j_ℓ(n) in GL_n(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionClassInfo {
    pub n: u32,
    pub l: u32,
    pub q: BigUint,
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
}

/// All involution classes of GL_n(q); errors if a class size were not integral.
pub fn involution_classes(n: u32, q: &BigUint) -> Result<Vec<InvolutionClassInfo>> {
    check_q(q)?;
    let total = gl_order(n, q);
    (1..=n / 2)
        .map(|l| {
            let c = gl_centralizer_order(n, l, q)?;
            let (size, rem) = total.div_rem(&c);
            if !rem.is_zero() {
                return Err(Error::Mismatch(format!(
                    "centralizer order does not divide |GL_{n}({q})|"
                )));
            }
            Ok(InvolutionClassInfo {
                n,
                l,
                q: q.clone(),
                centralizer_order: c,
                class_size: size,
            })
        })
        .collect()
}

/// i₂(GL_n(q)) for q even; equals i₂(SL_n(q)) and i₂(PSL_n(q)).
pub fn i2_gl_exact(n: u32, q: &BigUint) -> Result<BigUint> {
    Ok(involution_classes(n, q)?
        .into_iter()
        .fold(BigUint::zero(), |acc, c| acc + c.class_size))
}

/// Ceiling on i₂(C_G(α)) for α conjugate to j_{n/2}(n):
/// i₂(SL_{n/2}(q)) q^{n²/4-(n-2)} + q^{n²/4}.
pub fn commuting_involution_ceiling(n: u32, q: &BigUint) -> Result<BigUint> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::OutOfRange(format!("n = {n} must be even and at least 2")));
    }
    let half = n / 2;
    let sq = (n * n / 4) as usize;
    Ok(i2_gl_exact(half, q)? * num_traits::pow(q.clone(), sq - (n as usize - 2)) + num_traits::pow(q.clone(), sq))
}

/// Side condition on q attached to a ledger row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QCondition {
    Even,
    EvenAtLeast4,
}

impl QCondition {
    pub fn holds(self, f: u32) -> bool {
        match self {
            QCondition::Even => f >= 1,
            QCondition::EvenAtLeast4 => f >= 2,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            QCondition::Even => "q even",
            QCondition::EvenAtLeast4 => "q>=4 even",
        }
    }
}

/// One row of the bound ledger, all entries closed forms in q.
#[derive(Debug, Clone)]
pub struct BoundLedgerEntry {
    /// PSL, Sp (projective symplectic), OmegaPlus or OmegaMinus.
    pub family: Family,
    pub n: u32,
    pub e: u32,
    pub condition: QCondition,
    pub normalizer: Expr,
    /// Lower bound on i₂(G).
    pub i_g: Expr,
    /// Upper bound on |Inv(x)| used by the master bound.
    pub u_g: Expr,
    /// The coarser polynomial bound on |Inv(x)|, where the row refines the table value.
    pub u_coarse: Option<Expr>,
    /// The table's |Inv(x)| bound.
    pub u_table: Expr,
    /// Bound on the involutions in the maximal overgroups of x.
    pub a: Expr,
    /// Bound on i₂(C_G(α)) for α ∈ Inv(x).
    pub b: Expr,
    /// Subtracted terms of the displayed P(x) bound, 1 - Σ terms.
    pub displayed: Vec<Expr>,
    /// The displayed terms as the master bound decomposes them, when they differ.
    pub displayed_split: Option<Vec<Expr>>,
    /// Published threshold: q ≥ 2^min_f.
    pub published_min_f: u32,
}

impl BoundLedgerEntry {
    /// Short row name such as `PSL4` or `O-10`.
    pub fn name(&self) -> alloc::string::String {
        let head = match self.family {
            Family::PSL => "PSL",
            Family::Sp => "PSp",
            Family::OmegaPlus => "O+",
            Family::OmegaMinus => "O-",
            _ => "?",
        };
        format!("{head}{}", self.n)
    }

    /// Terms compared against the master bound's two terms.
    pub fn comparison_terms(&self) -> &[Expr] {
        self.displayed_split.as_deref().unwrap_or(&self.displayed)
    }
}

/// The (family, n) pairs of the eleven ledger rows, in table order.
pub const LEDGER_ROWS: [(Family, u32); 11] = [
    (Family::PSL, 4),
    (Family::PSL, 6),
    (Family::PSL, 8),
    (Family::Sp, 6),
    (Family::Sp, 8),
    (Family::OmegaPlus, 8),
    (Family::OmegaPlus, 10),
    (Family::OmegaPlus, 12),
    (Family::OmegaMinus, 8),
    (Family::OmegaMinus, 10),
    (Family::OmegaMinus, 12),
];

fn plus(k: i32, c: i64) -> Expr {
    Expr::q_plus(k, c)
}

/// The ledger row for (family, n). SL is accepted as an alias of PSL.
pub fn ledger(family: Family, n: u32) -> Result<BoundLedgerEntry> {
    use Expr as E;
    use QCondition::*;
    let family = if family == Family::SL { Family::PSL } else { family };
    let half_q = |k| E::mono(1, 2, k);
    let row = |cond, normalizer, i_g, u_table: Expr, a, b, displayed: Vec<Expr>, min_f| BoundLedgerEntry {
        family,
        n,
        e: if family == Family::OmegaPlus { n - 2 } else { n },
        condition: cond,
        normalizer,
        i_g,
        u_g: u_table.clone(),
        u_coarse: None,
        u_table,
        a,
        b,
        displayed,
        displayed_split: None,
        published_min_f: min_f,
    };
    let entry = match (family, n) {
        (Family::PSL, 4) => {
            let mut r = row(
                EvenAtLeast4,
                E::product([E::int(4), plus(4, -1)]).over(plus(1, -1)),
                E::product([E::q(5), plus(3, -1)]),
                E::mono(22, 1, 3),
                E::mono(3, 2, 7),
                E::mono(2, 1, 4),
                alloc::vec![E::mono(5, 1, -1)],
                3,
            );
            r.u_g = E::product([plus(2, 1), plus(1, 2)]);
            r.u_coarse = Some(E::mono(13, 8, 3));
            r
        }
        (Family::PSL, 6) => row(
            EvenAtLeast4,
            E::product([E::int(6), plus(6, -1)]).over(E::product([plus(1, -1), E::GcdQMinusOne(6)])),
            half_q(18),
            E::mono(32, 1, 5),
            E::mono(6, 1, 14),
            E::mono(21, 16, 12),
            alloc::vec![E::mono(12, 1, -4), E::mono(84, 1, -1)],
            7,
        ),
        (Family::PSL, 8) => row(
            Even,
            E::product([E::int(8), plus(8, -1)]).over(plus(1, -1)),
            half_q(32),
            E::mono(64, 1, 7),
            E::mono(6, 1, 23),
            E::mono(21, 16, 20),
            alloc::vec![E::mono(12, 1, -9), E::mono(168, 1, -5)],
            2,
        ),
        (Family::Sp, 6) => {
            let mut r = row(
                EvenAtLeast4,
                E::product([E::int(6), plus(3, 1)]),
                E::q(12),
                E::mono(25, 1, 3),
                E::mono(7, 1, 11),
                E::mono(2, 1, 8),
                alloc::vec![E::mono(57, 1, -1)],
                6,
            );
            r.displayed_split = Some(alloc::vec![E::mono(7, 1, -1), E::mono(50, 1, -1)]);
            r
        }
        (Family::Sp, 8) => row(
            Even,
            E::product([E::int(8), plus(4, 1)]),
            E::q(20),
            E::mono(34, 1, 4),
            E::mono(8, 1, 16),
            E::mono(2, 1, 14),
            alloc::vec![E::mono(8, 1, -4), E::mono(68, 1, -2)],
            4,
        ),
        (Family::OmegaPlus, 8) => row(
            EvenAtLeast4,
            E::product([E::int(6), plus(3, 1), plus(1, 1)]),
            half_q(16),
            E::mono(61, 1, 4),
            E::mono(12, 1, 13),
            E::mono(2, 1, 10),
            alloc::vec![E::mono(24, 1, -3), E::mono(244, 1, -2)],
            4,
        ),
        (Family::OmegaPlus, 10) => row(
            Even,
            E::product([E::int(8), plus(4, 1), plus(1, 1)]),
            half_q(24),
            E::mono(102, 1, 5),
            E::mono(10, 1, 21),
            E::mono(3, 1, 17),
            alloc::vec![E::mono(20, 1, -3), E::mono(612, 1, -2)],
            5,
        ),
        (Family::OmegaPlus, 12) => row(
            Even,
            E::product([E::int(10), plus(5, 1), plus(1, 1)]),
            half_q(36),
            E::mono(124, 1, 6),
            E::mono(10, 1, 31),
            E::mono(3, 1, 24),
            alloc::vec![E::mono(20, 1, -5), E::mono(744, 1, -6)],
            2,
        ),
        (Family::OmegaMinus, 8) => row(
            Even,
            E::product([E::int(4), plus(4, 1)]),
            half_q(16),
            E::mono(34, 1, 4),
            E::mono(3, 1, 8),
            E::mono(3, 1, 9),
            alloc::vec![E::mono(6, 1, -8), E::mono(204, 1, -3)],
            3,
        ),
        (Family::OmegaMinus, 10) => row(
            Even,
            E::product([E::int(5), plus(5, 1)]),
            half_q(24),
            E::mono(42, 1, 5),
            E::mono(6, 1, 15),
            E::mono(3, 1, 15),
            alloc::vec![E::mono(12, 1, -9), E::mono(252, 1, -4)],
            2,
        ),
        (Family::OmegaMinus, 12) => row(
            Even,
            E::product([E::int(6), plus(6, 1)]),
            half_q(36),
            E::mono(49, 1, 6),
            E::mono(4, 1, 18),
            E::mono(5, 1, 22),
            alloc::vec![E::mono(8, 1, -18), E::mono(490, 1, -8)],
            2,
        ),
        _ => return Err(Error::UnknownRow(format!("{family} {n}"))),
    };
    Ok(entry)
}

/// All eleven rows.
pub fn ledger_rows() -> Vec<BoundLedgerEntry> {
    LEDGER_ROWS
        .iter()
        .map(|&(f, n)| ledger(f, n).expect("listed rows exist"))
        .collect()
}

/// Outcome of comparing the exact census with the ledger's i(G).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct I2BoundReport {
    pub n: u32,
    pub q: BigUint,
    pub exact: BigUint,
    pub ledger_value: num_rational::BigRational,
    /// Whether q satisfies the row's side condition.
    pub applicable: bool,
    pub holds: bool,
}

/// Check i₂(PSL_n(q)) ≥ i(G) for the linear rows.
pub fn check_i2_lower_bound(n: u32, q: &BigUint) -> Result<I2BoundReport> {
    let row = ledger(Family::PSL, n)?;
    let exact = i2_gl_exact(n, q)?;
    let f = q.bits() as u32 - 1;
    let ledger_value = row.i_g.eval(&BigInt::from(q.clone()));
    let holds = num_rational::BigRational::from_integer(BigInt::from(exact.clone())) >= ledger_value;
    Ok(I2BoundReport {
        n,
        q: q.clone(),
        exact,
        ledger_value,
        applicable: row.condition.holds(f),
        holds,
    })
}

//! Closed forms in the field order q, evaluated exactly over big rationals.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(BigRational),
    /// `q^k`, k may be negative.
    QPow(i32),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    /// `gcd(k, q - 1)`.
    GcdQMinusOne(u32),
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Expr {
    pub fn int(c: i64) -> Expr {
        Expr::Const(rat(c, 1))
    }

    pub fn q(k: i32) -> Expr {
        Expr::QPow(k)
    }

    /// `(num/den) * q^k`.
    pub fn mono(num: i64, den: i64, k: i32) -> Expr {
        let c = rat(num, den);
        if k == 0 {
            Expr::Const(c)
        } else if c.is_one() {
            Expr::QPow(k)
        } else {
            Expr::Product(alloc::vec![Expr::Const(c), Expr::QPow(k)])
        }
    }

    /// `q^k + c`.
    pub fn q_plus(k: i32, c: i64) -> Expr {
        Expr::Sum(alloc::vec![Expr::QPow(k), Expr::int(c)])
    }

    pub fn product(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Product(parts.into_iter().collect())
    }

    pub fn sum(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Sum(parts.into_iter().collect())
    }

    pub fn over(self, den: Expr) -> Expr {
        Expr::Quotient(Box::new(self), Box::new(den))
    }

    pub fn eval(&self, q: &BigInt) -> BigRational {
        match self {
            Expr::Const(c) => c.clone(),
            Expr::QPow(k) => {
                let base = BigRational::from_integer(q.clone());
                if *k >= 0 {
                    num_traits::pow(base, *k as usize)
                } else {
                    num_traits::pow(base, k.unsigned_abs() as usize).recip()
                }
            }
            Expr::Sum(parts) => parts.iter().fold(BigRational::zero(), |acc, p| acc + p.eval(q)),
            Expr::Product(parts) => parts.iter().fold(BigRational::one(), |acc, p| acc * p.eval(q)),
            Expr::Quotient(a, b) => a.eval(q) / b.eval(q),
            Expr::GcdQMinusOne(k) => BigRational::from_integer(BigInt::from(*k).gcd(&(q - BigInt::one()))),
        }
    }

    /// Evaluate at `q = 2^f`.
    pub fn eval_pow2(&self, f: u32) -> BigRational {
        self.eval(&(BigInt::one() << f as usize))
    }

    fn needs_parens(&self) -> bool {
        matches!(self, Expr::Sum(_)) || matches!(self, Expr::Const(c) if !c.is_integer() || c.is_negative())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::QPow(1) => write!(f, "q"),
            Expr::QPow(k) if *k < 0 => write!(f, "q^({k})"),
            Expr::QPow(k) => write!(f, "q^{k}"),
            Expr::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    match p {
                        Expr::Const(c) if i > 0 && c.is_negative() => write!(f, " - {}", -c)?,
                        _ if i > 0 => write!(f, " + {p}")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Expr::Product(parts) => {
                let mut first = true;
                for p in parts {
                    if !first {
                        f.write_str("*")?;
                    }
                    first = false;
                    if p.needs_parens() {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            Expr::Quotient(a, b) => {
                let wrap = |e: &Expr| -> String {
                    if matches!(e, Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(..)) {
                        alloc::format!("({e})")
                    } else {
                        alloc::format!("{e}")
                    }
                };
                write!(f, "{}/{}", wrap(a), wrap(b))
            }
            Expr::GcdQMinusOne(k) => write!(f, "gcd({k}, q - 1)"),
        }
    }
}

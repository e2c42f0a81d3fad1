//! Integer factorisation below 2^128 and primitive prime divisors.
//!
//! Factorisation is trial division up to 10^6 followed by Pollard rho with
//! Brent's cycle detection. Primality is Miller-Rabin with the first thirteen
//! prime bases, which is deterministic below 3.3 * 10^24; above that bound a
//! strong Lucas test is added (Baillie-PSW).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Family, GroupElement, GroupSpec};
use crate::prand::ProductReplacement;

const TRIAL_LIMIT: u128 = 1_000_000;
const SMALL_PRIMES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
/// Below this bound Miller-Rabin with [`SMALL_PRIMES`] as bases is exact.
const MR13_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
/// Default number of rho iterations before giving up.
pub const DEFAULT_RHO_BUDGET: u64 = 1 << 32;

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 as u64 as u128) + (p10 as u64 as u128);
    let lo = (p00 as u64 as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (lo, hi)
}

/// Montgomery arithmetic modulo an odd n with R = 2^128.
#[derive(Clone, Copy)]
struct Mont {
    n: u128,
    ninv: u128,
    r2: u128,
}

impl Mont {
    fn new(n: u128) -> Mont {
        debug_assert!(n & 1 == 1 && n > 1);
        let mut x: u128 = 1;
        for _ in 0..7 {
            x = x.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(x)));
        }
        let r = (u128::MAX % n + 1) % n;
        let mut r2 = r;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Mont {
            n,
            ninv: x.wrapping_neg(),
            r2,
        }
    }

    fn redc(&self, lo: u128, hi: u128) -> u128 {
        let m = lo.wrapping_mul(self.ninv);
        let (_, mhi) = mul_wide(m, self.n);
        let carry = (lo != 0) as u128;
        let (t, o1) = hi.overflowing_add(mhi);
        let (t, o2) = t.overflowing_add(carry);
        if o1 || o2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (lo, hi) = mul_wide(a, b);
        self.redc(lo, hi)
    }

    fn to(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn from(&self, a: u128) -> u128 {
        self.redc(a, 0)
    }

    fn pow(&self, base: u128, mut e: u128) -> u128 {
        let mut r = self.to(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

fn sub_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

fn half_mod(a: u128, n: u128) -> u128 {
    if a & 1 == 0 {
        a >> 1
    } else {
        (a >> 1) + (n >> 1) + 1
    }
}

/// `a * b mod n` for any n ≥ 1.
pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n == 1 {
        return 0;
    }
    if n <= u64::MAX as u128 {
        return (a % n) * (b % n) % n;
    }
    if n & 1 == 1 {
        let m = Mont::new(n);
        return m.from(m.mul(m.to(a), m.to(b)));
    }
    // even modulus: double and add
    let (mut a, mut b) = (a % n, b % n);
    let mut r = 0;
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, n);
        }
        a = add_mod(a, a, n);
        b >>= 1;
    }
    r
}

/// `a^e mod n` for any n ≥ 1.
pub fn pow_mod(a: u128, mut e: u128, n: u128) -> u128 {
    if n == 1 {
        return 0;
    }
    if n & 1 == 1 && n > u64::MAX as u128 {
        let m = Mont::new(n);
        return m.from(m.pow(m.to(a), e));
    }
    let mut r = 1;
    let mut b = a % n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, n);
        }
        b = mul_mod(b, b, n);
        e >>= 1;
    }
    r
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn strong_probable_prime(m: &Mont, d: u128, s: u32, base: u128) -> bool {
    let n = m.n;
    let one = m.to(1);
    let minus_one = m.to(n - 1);
    let mut x = m.pow(m.to(base), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn jacobi(a: i128, n: u128) -> i32 {
    // n odd positive
    let mut a = if a < 0 {
        (n - a.unsigned_abs() % n) % n
    } else {
        a as u128 % n
    };
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above
    let mut x = 1u128 << ((128 - n.leading_zeros()) / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Strong Lucas probable prime test with Selfridge parameters (P = 1).
fn strong_lucas(n: u128) -> bool {
    let r = isqrt(n);
    if r * r == n {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        let j = jacobi(d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.unsigned_abs() != n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let m = Mont::new(n);
    let to_mod = |v: i128| -> u128 {
        if v < 0 {
            n - (v.unsigned_abs() % n)
        } else {
            v as u128 % n
        }
    };
    let dm = m.to(to_mod(d));
    let qm = m.to(to_mod((1 - d) / 4));
    let two = m.to(2);
    // n + 1 = k * 2^s, computed without overflowing
    let (mut k, mut s) = (n / 2 + 1, 1u32);
    while k % 2 == 0 {
        k /= 2;
        s += 1;
    }
    // U_1 = 1, V_1 = P = 1, Q^1
    let one = m.to(1);
    let (mut u, mut v, mut qk) = (one, one, qm);
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        // doubling
        u = m.mul(u, v);
        v = sub_mod(m.mul(v, v), m.mul(two, qk), n);
        qk = m.mul(qk, qk);
        if k >> i & 1 == 1 {
            let nu = half_mod(add_mod(u, v, n), n);
            let nv = half_mod(add_mod(m.mul(dm, u), v, n), n);
            u = nu;
            v = nv;
            qk = m.mul(qk, qm);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = sub_mod(m.mul(v, v), m.mul(two, qk), n);
        qk = m.mul(qk, qk);
        if v == 0 {
            return true;
        }
    }
    false
}

/// Primality for any n < 2^128.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let m = Mont::new(n);
    if !SMALL_PRIMES.iter().all(|&b| strong_probable_prime(&m, d, s, b)) {
        return false;
    }
    n < MR13_BOUND || strong_lucas(n)
}

fn rho_split(n: u128, budget: &mut u64) -> Result<u128> {
    let m = Mont::new(n);
    let one = m.to(1);
    for c0 in 1u128.. {
        let c = m.to(c0);
        let f = |x: u128| add_mod(m.mul(x, x), c, n);
        let mut y = m.to(2);
        let mut x = y;
        let mut ys = y;
        let mut g = 1u128;
        let mut r: u64 = 1;
        let mut q = one;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = m.mul(q, sub_mod(x, y, n));
                }
                if *budget < steps {
                    return Err(Error::BudgetExceeded(format!("rho on {n}")));
                }
                *budget -= steps;
                g = gcd(m.from(q), n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(sub_mod(x, ys, n), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
        // cycle collapsed onto n; try another constant
    }
    unreachable!()
}

fn factor_into(n: u128, out: &mut Vec<u128>, budget: &mut u64) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        out.push(n);
        return Ok(());
    }
    let d = rho_split(n, budget)?;
    factor_into(d, out, budget)?;
    factor_into(n / d, out, budget)
}

/// Prime factors of `n` with multiplicity, sorted ascending. `factorize(1)` is empty.
pub fn factorize(n: u128) -> Result<Vec<u128>> {
    factorize_with_budget(n, DEFAULT_RHO_BUDGET)
}

pub fn factorize_with_budget(mut n: u128, mut budget: u64) -> Result<Vec<u128>> {
    if n == 0 {
        return Err(Error::OutOfRange("cannot factor 0".into()));
    }
    let mut out = Vec::new();
    while n % 2 == 0 {
        out.push(2);
        n /= 2;
    }
    let mut d = 3u128;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            out.push(n);
        } else {
            factor_into(n, &mut out, &mut budget)?;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Collapse a sorted factor list into (prime, exponent) pairs.
pub fn group_factors(factors: &[u128]) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    for &p in factors {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The cyclotomic value Φ_m(a).
pub fn cyclotomic_value(a: u64, m: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let a = BigUint::from(a);
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let term = num_traits::pow(a.clone(), d as usize) - 1u32;
        match mobius(m / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Primitive prime divisors of a^m - 1 with their order certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpdResult {
    pub a: u64,
    pub m: u64,
    /// Sorted ascending.
    pub primes: Vec<u128>,
    /// Multiplicative order of `a` modulo each prime; always `m`.
    pub orders: Vec<u64>,
    /// Zsigmondy exception: no primitive prime divisor exists.
    pub exceptional: bool,
}

fn distinct_primes_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Proves ord_r(a) = m: a^m ≡ 1 and a^(m/p) ≢ 1 for each prime p | m.
pub fn certify_order(a: u64, m: u64, r: u128) -> bool {
    let a = a as u128 % r;
    if a == 0 || pow_mod(a, m as u128, r) != 1 {
        return false;
    }
    distinct_primes_u64(m)
        .into_iter()
        .all(|p| pow_mod(a, (m / p) as u128, r) != 1)
}

/// Primitive prime divisors of (a, m): primes dividing a^m - 1 but no a^i - 1, i < m.
pub fn ppd_set(a: u64, m: u64) -> Result<PpdResult> {
    if a < 2 || m < 2 {
        return Err(Error::OutOfRange(format!(
            "ppd needs a >= 2 and m >= 2, got ({a}, {m})"
        )));
    }
    // every primitive prime divisor of a^m - 1 divides Φ_m(a)
    let phi = cyclotomic_value(a, m);
    let phi = phi
        .to_u128()
        .ok_or_else(|| Error::OutOfRange(format!("Phi_{m}({a}) exceeds 2^128")))?;
    let mut primes: Vec<u128> = group_factors(&factorize(phi)?)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&r| certify_order(a, m, r))
        .collect();
    primes.sort_unstable();
    let orders = vec![m; primes.len()];
    Ok(PpdResult {
        a,
        m,
        exceptional: primes.is_empty(),
        primes,
        orders,
    })
}

/// Outcome of a search for an element of primitive-prime-divisor order.
#[derive(Debug, Clone)]
pub enum PpdSearch {
    Found {
        element: GroupElement,
        order: u128,
        /// The e·f for which `order` is a primitive prime divisor of 2^(ef) - 1.
        ef: u64,
        samples: u64,
    },
    /// ppd(2, ef) is empty, so no such element exists.
    Absent { ef: u64 },
}

/// The e attached to each family with a ppd construction; `None` otherwise.
pub fn table_e(spec: &GroupSpec) -> Option<u64> {
    let field = spec.field()?;
    if !field.is_binary() {
        return None;
    }
    let n = spec.degree();
    match spec.family() {
        Family::SL | Family::PSL if matches!(n, 4 | 6 | 8) => Some(n as u64),
        Family::Sp if matches!(n, 6 | 8) => Some(n as u64),
        Family::OmegaPlus if matches!(n, 8 | 10 | 12) => Some(n as u64 - 2),
        Family::OmegaMinus if matches!(n, 8 | 10 | 12) => Some(n as u64),
        _ => None,
    }
}

/// Random search for x of order r ∈ ppd(2, e·f), preferring the largest r.
///
/// Samples product-replacement elements g and returns g^(|g|/r) once r divides |g|.
pub fn find_ppd_element<R: Rng + ?Sized>(spec: &GroupSpec, max_samples: u64, rng: &mut R) -> Result<PpdSearch> {
    let e = table_e(spec).ok_or_else(|| Error::Unsupported(format!("{} has no ppd construction", spec.describe())))?;
    let f = spec.field().expect("table families are matrix groups").degree() as u64;
    let ef = e * f;
    let set = ppd_set(2, ef)?;
    let Some(&r) = set.primes.last() else {
        return Ok(PpdSearch::Absent { ef });
    };
    let order_info = spec.factored_order()?;
    let mut pr = ProductReplacement::new(spec, rng)?;
    for sample in 1..=max_samples {
        let g = pr.next(spec, rng);
        let ord = spec.element_order_with(&order_info, &g)?;
        if (&ord % BigUint::from(r)).is_zero() {
            let k = &ord / BigUint::from(r);
            let x = spec.pow_big(&g, &k);
            debug_assert_eq!(spec.element_order_with(&order_info, &x)?, BigUint::from(r));
            return Ok(PpdSearch::Found {
                element: x,
                order: r,
                ef,
                samples: sample,
            });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no element of order {r} after {max_samples} samples"
    )))
}

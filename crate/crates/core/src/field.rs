//! Finite fields GF(2^f) in polynomial basis and prime fields GF(p).
//!
//! An element is its integer encoding in `[0, q)`: the bit vector of
//! polynomial coefficients for GF(2^f) and the residue for GF(p). The same
//! integer is used on the command line and in JSON.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Integer encoding of a field element, always in `[0, q)`.
pub type FieldElem = u16;

/// Largest supported extension degree over GF(2).
pub const MAX_BINARY_DEGREE: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Binary,
    Prime,
}

/// Arithmetic context for one finite field. Immutable once built.
#[derive(Clone)]
pub struct Field {
    kind: FieldKind,
    order: u32,
    characteristic: u32,
    degree: u32,
    /// Reduction polynomial bits for GF(2^f); `p` for prime fields.
    modulus: u32,
    generator: FieldElem,
    exp: Vec<FieldElem>,
    log: Vec<u32>,
}

impl core::fmt::Debug for Field {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Field")
            .field("kind", &self.kind)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.order == other.order && self.modulus == other.modulus
    }
}
impl Eq for Field {}

/// Carry-less product of two polynomials of degree < 16 reduced modulo `poly`.
pub(crate) fn poly_mulmod(a: u32, b: u32, poly: u32) -> u32 {
    let deg = 31 - poly.leading_zeros();
    let mut acc: u64 = 0;
    for i in 0..16 {
        if b >> i & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    for bit in (deg..64).rev() {
        if acc >> bit & 1 == 1 {
            acc ^= (poly as u64) << (bit - deg);
        }
    }
    acc as u32
}

/// Remainder of `a` modulo `b` as GF(2) polynomials.
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = 31 - b.leading_zeros();
    while a != 0 && 31 - a.leading_zeros() >= db {
        let da = 31 - a.leading_zeros();
        a ^= b << (da - db);
    }
    a
}

/// Exhaustive factor check: no polynomial of degree 1..=deg/2 divides `poly`.
pub fn is_irreducible_gf2(poly: u32) -> bool {
    if poly < 2 {
        return false;
    }
    let deg = 31 - poly.leading_zeros();
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for cand in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(poly, cand) == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least irreducible polynomial of degree `f` over GF(2).
pub fn least_irreducible(f: u32) -> u32 {
    ((1u32 << f)..(1u32 << (f + 1)))
        .find(|&p| is_irreducible_gf2(p))
        .expect("irreducible polynomials exist in every degree")
}

fn is_small_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn small_prime_factors(mut n: u32) -> Vec<u32> {
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

impl Field {
    /// GF(2^f) with the lexicographically least irreducible reduction polynomial.
    pub fn binary(f: u32) -> Result<Field> {
        if f == 0 || f > MAX_BINARY_DEGREE {
            return Err(Error::InvalidField(format!(
                "binary extension degree must be in 1..=16, got {f}"
            )));
        }
        Field::with_polynomial(least_irreducible(f))
    }

    /// GF(2^f) reduced by an explicit polynomial, which must be irreducible.
    pub fn with_polynomial(poly: u32) -> Result<Field> {
        if poly < 2 || poly >= 1 << (MAX_BINARY_DEGREE + 1) {
            return Err(Error::InvalidField(format!("polynomial {poly:#b} out of range")));
        }
        if !is_irreducible_gf2(poly) {
            return Err(Error::InvalidField(format!("polynomial {poly:#b} is reducible")));
        }
        let f = 31 - poly.leading_zeros();
        let order = 1u32 << f;
        let mul = |a: u32, b: u32| poly_mulmod(a, b, poly);
        let generator = find_generator(order, 1, mul);
        Ok(Field::from_tables(FieldKind::Binary, order, 2, f, poly, generator, mul))
    }

    /// Prime field GF(p) for an odd prime p < 2^16.
    pub fn prime(p: u32) -> Result<Field> {
        if p < 3 || p >= 1 << 16 || !is_small_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^16")));
        }
        let mul = |a: u32, b: u32| a * b % p;
        let generator = find_generator(p, 1, mul);
        Ok(Field::from_tables(FieldKind::Prime, p, p, 1, p, generator, mul))
    }

    /// Dispatch on kind: `param` is f for binary fields and p for prime fields.
    pub fn new(kind: FieldKind, param: u32) -> Result<Field> {
        match kind {
            FieldKind::Binary => Field::binary(param),
            FieldKind::Prime => Field::prime(param),
        }
    }

    fn from_tables(
        kind: FieldKind,
        order: u32,
        characteristic: u32,
        degree: u32,
        modulus: u32,
        generator: u32,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Field {
        let m = (order - 1) as usize;
        let mut exp = vec![0 as FieldElem; 2 * m.max(1)];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..m {
            exp[i] = x as FieldElem;
            log[x as usize] = i as u32;
            x = mul(x, generator);
        }
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }
        if m == 1 {
            exp[0] = 1;
            exp[1] = 1;
        }
        Field {
            kind,
            order,
            characteristic,
            degree,
            modulus,
            generator: generator as FieldElem,
            exp,
            log,
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Field order q.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Extension degree f (1 for prime fields).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Reduction polynomial bits (binary) or the prime (prime fields).
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// A primitive element: the least encoding of multiplicative order q - 1.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn is_binary(&self) -> bool {
        self.kind == FieldKind::Binary
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(|a| a as FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match self.kind {
            FieldKind::Binary => a ^ b,
            FieldKind::Prime => ((a as u32 + b as u32) % self.order) as FieldElem,
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match self.kind {
            FieldKind::Binary => a,
            FieldKind::Prime => {
                if a == 0 {
                    0
                } else {
                    (self.order - a as u32) as FieldElem
                }
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.order == 2 {
            return 1;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.order - 1;
        Ok(self.exp[((m - self.log[a as usize]) % m) as usize])
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.order - 1) as u64;
        let k = (self.log[a as usize] as u64 * (e % m)) % m;
        self.exp[k as usize]
    }

    /// The Frobenius map a ↦ a^p; squaring in characteristic 2, identity on GF(p).
    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        match self.kind {
            FieldKind::Binary => self.mul(a, a),
            FieldKind::Prime => a,
        }
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> FieldElem {
        let m = (self.order - 1) as u64;
        self.exp[(k % m) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.order - 1;
        let mut ord = m;
        for p in small_prime_factors(m) {
            while ord % p == 0 && self.pow(a, (ord / p) as u64) == 1 {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// All λ with λ^n = 1.
    pub fn roots_of_unity(&self, n: u32) -> Vec<FieldElem> {
        (1..self.order)
            .map(|a| a as FieldElem)
            .filter(|&a| self.pow(a, n as u64) == 1)
            .collect()
    }

    /// Absolute trace to the prime field (binary fields only).
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        debug_assert!(self.is_binary());
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.degree {
            t ^= x;
            x = self.frobenius(x);
        }
        t
    }
}

fn find_generator(order: u32, one: u32, mul: impl Fn(u32, u32) -> u32) -> u32 {
    let m = order - 1;
    if m == 1 {
        return one;
    }
    let pow = |mut b: u32, mut e: u32| {
        let mut r = one;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let primes = small_prime_factors(m);
    (2..order)
        .find(|&g| primes.iter().all(|&p| pow(g, m / p) != one))
        .expect("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent schoolbook oracle: multiply as polynomials, then reduce by
    /// long division.
    fn school_mul(a: u32, b: u32, poly: u32) -> u32 {
        let mut prod: u64 = 0;
        let mut i = 0;
        while b >> i != 0 {
            if b >> i & 1 == 1 {
                prod ^= (a as u64) << i;
            }
            i += 1;
        }
        let deg = 63 - (poly as u64).leading_zeros() as u64;
        loop {
            if prod == 0 {
                return 0;
            }
            let d = 63 - prod.leading_zeros() as u64;
            if d < deg {
                return prod as u32;
            }
            prod ^= (poly as u64) << (d - deg);
        }
    }

    #[test]
    fn least_irreducible_polynomials() {
        assert_eq!(least_irreducible(1), 0b10);
        assert_eq!(least_irreducible(2), 0b111);
        assert_eq!(least_irreducible(3), 0b1011);
        assert_eq!(least_irreducible(4), 0b10011);
        assert_eq!(least_irreducible(8), 0x11b);
        for f in 1..=16 {
            assert!(is_irreducible_gf2(least_irreducible(f)));
        }
        assert!(!is_irreducible_gf2(0b101)); // (x+1)^2
    }

    #[test]
    fn gf8_product() {
        let k = Field::binary(3).unwrap();
        assert_eq!(k.modulus(), 0b1011);
        assert_eq!(k.mul(0b010, 0b100), 0b011);
    }

    #[test]
    fn gf2_is_prime_field_in_disguise() {
        let k = Field::binary(1).unwrap();
        assert_eq!(k.order(), 2);
        assert_eq!(k.mul(1, 1), 1);
        assert_eq!(k.add(1, 1), 0);
        assert_eq!(k.inv(1).unwrap(), 1);
    }

    #[test]
    fn prime_field_fermat() {
        let k = Field::prime(7).unwrap();
        assert_eq!(k.order(), 7);
        assert_eq!(k.pow(3, 6), 1);
        assert_eq!(k.generator(), 3);
        assert_eq!(k.frobenius(5), 5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::binary(0).is_err());
        assert!(Field::binary(17).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(65537).is_err());
        assert!(Field::with_polynomial(0b101).is_err());
        assert_eq!(Field::binary(4).unwrap().inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn axioms_against_schoolbook_for_small_fields() {
        let mut fields: Vec<Field> = (1..=8).map(|f| Field::binary(f).unwrap()).collect();
        fields.extend([3u32, 5, 7, 11, 13].iter().map(|&p| Field::prime(p).unwrap()));
        for k in &fields {
            let q = k.order() as u16;
            for a in 0..q {
                for b in 0..q {
                    let expect = match k.kind() {
                        FieldKind::Binary => school_mul(a as u32, b as u32, k.modulus()) as u16,
                        FieldKind::Prime => (a as u32 * b as u32 % q as u32) as u16,
                    };
                    assert_eq!(k.mul(a, b), expect, "q={q} a={a} b={b}");
                }
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
            }
            // associativity and distributivity are exhaustive for q <= 16 and
            // sampled on a stride for larger fields
            let step = if q <= 16 { 1 } else { 7 };
            for a in (0..q).step_by(step) {
                for b in (0..q).step_by(step) {
                    for c in (0..q).step_by(step) {
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn distributivity_exhaustive_gf256() {
        let k = Field::binary(8).unwrap();
        for a in (0..256u16).step_by(3) {
            for b in 0..256u16 {
                for c in (0..256u16).step_by(5) {
                    assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for f in 1..=16 {
            let k = Field::binary(f).unwrap();
            assert_eq!(k.mult_order(k.generator()).unwrap(), k.order() - 1);
        }
        for p in [3u32, 7, 11, 257, 65521] {
            let k = Field::prime(p).unwrap();
            assert_eq!(k.mult_order(k.generator()).unwrap(), p - 1);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let k = Field::binary(5).unwrap();
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
            }
            assert_eq!(k.add(a, a), 0);
        }
    }
}

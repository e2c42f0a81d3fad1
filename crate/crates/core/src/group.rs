//! Classical groups over finite fields and explicit permutation groups.
//!
//! Matrix groups act on column vectors. Standard forms, for n = 2m:
//!
//! * symplectic: Gram matrix `[[0, I_m], [I_m, 0]]`, i.e. B(v, w) = Σ v_i w_{m+i} + v_{m+i} w_i;
//! * plus type: Q(v) = Σ_{i<m} v_i v_{m+i};
//! * minus type: Q(v) = Σ_{i<m-1} v_i v_{m+i} + v_{m-1}^2 + v_{m-1} v_{2m-1} + μ v_{2m-1}^2,
//!   where μ is the least element with x^2 + x + μ irreducible (absolute trace 1).
//!
//! In characteristic 2 the groups Sp and Ω± have trivial centre, so they are
//! their own projective images. PSL elements are stored as the lexicographically
//! least scalar multiple λM with λ^n = 1.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashSet;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, FieldKind};
use crate::matrix;
use crate::ppd;

/// Largest supported matrix dimension.
pub const MAX_DIMENSION: usize = 12;
/// Closure cap used when a permutation group's order has to be found by enumeration.
pub const PERM_ORDER_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GL,
    SL,
    PSL,
    Sp,
    OmegaPlus,
    OmegaMinus,
    Perm,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GL => "gl",
            Family::SL => "sl",
            Family::PSL => "psl",
            Family::Sp => "sp",
            Family::OmegaPlus => "omega-plus",
            Family::OmegaMinus => "omega-minus",
            Family::Perm => "perm",
        }
    }

    pub fn is_matrix(self) -> bool {
        self != Family::Perm
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gl" => Family::GL,
            "sl" => Family::SL,
            "psl" => Family::PSL,
            "sp" | "psp" => Family::Sp,
            "omega-plus" | "omegaplus" | "oplus" | "o+" | "omega+" => Family::OmegaPlus,
            "omega-minus" | "omegaminus" | "ominus" | "o-" | "omega-" => Family::OmegaMinus,
            "perm" | "permgroup" => Family::Perm,
            other => return Err(Error::Unsupported(format!("unknown family {other:?}"))),
        })
    }
}

/// A matrix (row-major entries) or a permutation (image list), depending on the spec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<FieldElem>);

impl GroupElement {
    pub fn from_vec(data: Vec<FieldElem>) -> Self {
        GroupElement(data)
    }

    pub fn as_slice(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<FieldElem> {
        self.0
    }
}

/// Descriptor of a group: family, dimension (or degree), field and generators.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    family: Family,
    degree: usize,
    field: Option<Arc<Field>>,
    /// Upper-triangular coefficients of the quadratic form (Ω± only).
    quad: Option<Vec<FieldElem>>,
    /// Gram matrix of the bilinear form (Sp and Ω±).
    gram: Option<Vec<FieldElem>>,
    /// Scalars λ with λ^n = 1 (PSL only).
    scalars: Vec<FieldElem>,
    generators: Vec<GroupElement>,
}

impl GroupSpec {
    /// A matrix group of the given family and dimension over `field`.
    pub fn matrix(family: Family, n: usize, field: Field) -> Result<GroupSpec> {
        if family == Family::Perm {
            return Err(Error::Unsupported("use GroupSpec::perm for permutation groups".into()));
        }
        if n < 1 || n > MAX_DIMENSION {
            return Err(Error::OutOfRange(format!("dimension {n} not in 1..=12")));
        }
        let needs_even = matches!(family, Family::Sp | Family::OmegaPlus | Family::OmegaMinus);
        if needs_even && (n % 2 != 0 || !field.is_binary()) {
            return Err(Error::Unsupported(format!(
                "{family} needs even dimension over GF(2^f), got n = {n}, q = {}",
                field.order()
            )));
        }
        if matches!(family, Family::OmegaPlus | Family::OmegaMinus) && n < 4 {
            return Err(Error::Unsupported(format!("{family} needs n >= 4")));
        }
        if matches!(family, Family::SL | Family::PSL) && n < 2 {
            return Err(Error::Unsupported(format!("{family} needs n >= 2")));
        }
        let m = n / 2;
        let mut spec = GroupSpec {
            family,
            degree: n,
            field: None,
            quad: None,
            gram: None,
            scalars: Vec::new(),
            generators: Vec::new(),
        };
        match family {
            Family::PSL => spec.scalars = field.roots_of_unity(n as u32),
            Family::Sp => spec.gram = Some(hyperbolic_gram(n)),
            Family::OmegaPlus | Family::OmegaMinus => {
                let mut quad = vec![0; n * n];
                let hyperbolic = if family == Family::OmegaPlus { m } else { m - 1 };
                for i in 0..hyperbolic {
                    quad[i * n + m + i] = 1;
                }
                if family == Family::OmegaMinus {
                    let mu = anisotropic_constant(&field);
                    quad[(m - 1) * n + (m - 1)] = 1;
                    quad[(m - 1) * n + (2 * m - 1)] = 1;
                    quad[(2 * m - 1) * n + (2 * m - 1)] = mu;
                }
                spec.gram = Some(polar_gram(&field, n, &quad));
                spec.quad = Some(quad);
            }
            _ => {}
        }
        spec.field = Some(Arc::new(field));
        spec.generators = spec.build_generators()?;
        Ok(spec)
    }

    /// A permutation group on `0..degree` generated by the given image lists.
    pub fn perm(degree: usize, generators: Vec<Vec<u32>>) -> Result<GroupSpec> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(Error::OutOfRange(format!("permutation degree {degree}")));
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != degree {
                return Err(Error::Mismatch(format!(
                    "generator of length {} on {degree} points",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in &g {
                if x as usize >= degree || core::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Parse("generator is not a permutation".into()));
                }
            }
            gens.push(GroupElement(g.into_iter().map(|x| x as FieldElem).collect()));
        }
        Ok(GroupSpec {
            family: Family::Perm,
            degree,
            field: None,
            quad: None,
            gram: None,
            scalars: Vec::new(),
            generators: gens,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Matrix dimension n, or permutation degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_deref()
    }

    fn k(&self) -> &Field {
        self.field.as_deref().expect("matrix group has a field")
    }

    pub fn quadratic_form(&self) -> Option<&[FieldElem]> {
        self.quad.as_deref()
    }

    pub fn gram_matrix(&self) -> Option<&[FieldElem]> {
        self.gram.as_deref()
    }

    /// Number of stored entries per element.
    pub fn stride(&self) -> usize {
        if self.family.is_matrix() {
            self.degree * self.degree
        } else {
            self.degree
        }
    }

    /// Human-readable name such as `PSL(2,7)` or `Omega-(8,4)`.
    pub fn describe(&self) -> String {
        let head = match self.family {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
            Family::Sp => "Sp",
            Family::OmegaPlus => "Omega+",
            Family::OmegaMinus => "Omega-",
            Family::Perm => return format!("Perm({}; {} gens)", self.degree, self.generators.len()),
        };
        format!("{head}({},{})", self.degree, self.k().order())
    }

    /// Stable machine descriptor, e.g. `psl:2:p7` or `sl:4:f1`.
    pub fn descriptor(&self) -> String {
        match &self.field {
            Some(k) => {
                let (tag, param) = match k.kind() {
                    FieldKind::Binary => ('f', k.degree()),
                    FieldKind::Prime => ('p', k.order()),
                };
                format!("{}:{}:{}{}", self.family, self.degree, tag, param)
            }
            None => {
                let mut s = format!("perm:{}", self.degree);
                for g in &self.generators {
                    s.push(':');
                    let parts: Vec<String> = g.0.iter().map(|x| format!("{x}")).collect();
                    s.push_str(&parts.join(","));
                }
                s
            }
        }
    }

    pub fn identity(&self) -> GroupElement {
        if self.family.is_matrix() {
            GroupElement(matrix::identity(self.degree))
        } else {
            GroupElement((0..self.degree as FieldElem).collect())
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        if self.family.is_matrix() {
            matrix::is_identity(self.degree, &g.0)
        } else {
            g.0.iter().enumerate().all(|(i, &x)| i == x as usize)
        }
    }

    /// Projective normal form for PSL; identity map for every other family.
    pub fn canonicalize(&self, g: GroupElement) -> GroupElement {
        if self.family != Family::PSL || self.scalars.len() <= 1 {
            return g;
        }
        let k = self.k();
        let mut best = g.0.clone();
        for &lambda in &self.scalars {
            if lambda == 1 {
                continue;
            }
            let cand = matrix::scale(k, lambda, &g.0);
            if cand < best {
                best = cand;
            }
        }
        GroupElement(best)
    }

    pub fn is_canonical(&self, g: &GroupElement) -> bool {
        self.canonicalize(g.clone()) == *g
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out = GroupElement(vec![0; self.stride()]);
        self.mul_into(&a.0, &b.0, &mut out.0);
        if self.family == Family::PSL {
            out = self.canonicalize(out);
        }
        out
    }

    /// Raw product into a buffer; PSL results still need [`canonicalize`](Self::canonicalize).
    pub fn mul_into(&self, a: &[FieldElem], b: &[FieldElem], out: &mut [FieldElem]) {
        if self.family.is_matrix() {
            matrix::mul_into(self.k(), self.degree, a, b, out);
        } else {
            // act on the right: i^(ab) = (i^a)^b
            for (o, &x) in out.iter_mut().zip(a) {
                *o = b[x as usize];
            }
        }
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        if self.family.is_matrix() {
            let m = matrix::inverse(self.k(), self.degree, &g.0).expect("group elements are invertible");
            self.canonicalize(GroupElement(m))
        } else {
            let mut out = vec![0; self.degree];
            for (i, &x) in g.0.iter().enumerate() {
                out[x as usize] = i as FieldElem;
            }
            GroupElement(out)
        }
    }

    pub fn pow(&self, g: &GroupElement, e: u64) -> GroupElement {
        self.pow_digits(g, &[e])
    }

    pub fn pow_big(&self, g: &GroupElement, e: &BigUint) -> GroupElement {
        self.pow_digits(g, &e.to_u64_digits())
    }

    fn pow_digits(&self, g: &GroupElement, digits: &[u64]) -> GroupElement {
        if self.family.is_matrix() {
            let m = matrix::pow_digits(self.k(), self.degree, &g.0, digits);
            self.canonicalize(GroupElement(m))
        } else {
            let mut result = self.identity();
            let mut base = g.clone();
            for (i, &d) in digits.iter().enumerate() {
                for bit in 0..64 {
                    if d >> bit & 1 == 1 {
                        result = self.mul(&result, &base);
                    }
                    if i + 1 == digits.len() && d >> bit >> 1 == 0 {
                        break;
                    }
                    base = self.mul(&base, &base);
                }
            }
            result
        }
    }

    /// `h^-1 g h`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inv(h), g), h)
    }

    /// The standard generating set (see [`standard_generators`]).
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Membership of a matrix (or permutation) in the group.
    ///
    /// For permutation groups only the shape is checked; membership in the
    /// generated subgroup needs an enumerated table.
    pub fn in_group(&self, g: &GroupElement) -> Result<bool> {
        if g.0.len() != self.stride() {
            return Err(Error::Mismatch(format!(
                "element has {} entries, {} expects {}",
                g.0.len(),
                self.describe(),
                self.stride()
            )));
        }
        if !self.family.is_matrix() {
            let mut seen = vec![false; self.degree];
            for &x in &g.0 {
                if x as usize >= self.degree || core::mem::replace(&mut seen[x as usize], true) {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let k = self.k();
        let n = self.degree;
        if g.0.iter().any(|&x| !k.contains(x as u32)) {
            return Err(Error::Mismatch(format!("entry outside GF({})", k.order())));
        }
        let det = matrix::det(k, n, &g.0);
        Ok(match self.family {
            Family::GL => det != 0,
            Family::SL | Family::PSL => det == 1,
            Family::Sp => det != 0 && self.preserves_gram(&g.0),
            Family::OmegaPlus | Family::OmegaMinus => {
                det != 0 && self.preserves_quadratic(&g.0) && dickson_invariant(k, n, &g.0) == 0
            }
            Family::Perm => unreachable!(),
        })
    }

    fn preserves_gram(&self, m: &[FieldElem]) -> bool {
        let k = self.k();
        let n = self.degree;
        let gram = self.gram.as_deref().expect("form");
        let mt = matrix::transpose(n, m);
        let lhs = matrix::mul(k, n, &matrix::mul(k, n, &mt, gram), m);
        lhs == gram
    }

    fn preserves_quadratic(&self, m: &[FieldElem]) -> bool {
        let k = self.k();
        let n = self.degree;
        let quad = self.quad.as_deref().expect("form");
        // Q(Mv) = Q(v) for all v iff the polar form is preserved and Q agrees on a basis
        self.preserves_gram(m)
            && (0..n).all(|j| {
                let col: Vec<FieldElem> = (0..n).map(|i| m[i * n + j]).collect();
                quadratic_value(k, n, quad, &col) == quad[j * n + j]
            })
    }

    /// Exact group order from the standard formulas (closure size for permutation groups).
    pub fn order(&self) -> Result<BigUint> {
        if self.family == Family::Perm {
            return Ok(BigUint::from(self.perm_closure_size()?));
        }
        Ok(self.factored_order()?.iter().fold(BigUint::one(), |acc, &(p, e)| {
            acc * num_traits::pow(BigUint::from(p), e as usize)
        }))
    }

    fn perm_closure_size(&self) -> Result<usize> {
        let mut seen: HashSet<Vec<FieldElem>> = HashSet::new();
        let id = self.identity();
        seen.insert(id.0.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for s in &self.generators {
                let h = self.mul(&g, s);
                if seen.insert(h.0.clone()) {
                    if seen.len() > PERM_ORDER_CAP {
                        return Err(Error::CapExceeded {
                            order: format!("> {PERM_ORDER_CAP}"),
                            cap: PERM_ORDER_CAP as u64,
                        });
                    }
                    frontier.push(h);
                }
            }
        }
        Ok(seen.len())
    }

    /// Prime factorisation of the group order, computed factor by factor.
    pub fn factored_order(&self) -> Result<Vec<(u128, u32)>> {
        if self.family == Family::Perm {
            let order = self.perm_closure_size()? as u128;
            return Ok(ppd::group_factors(&ppd::factorize(order)?));
        }
        let k = self.k();
        let (p, f) = match k.kind() {
            FieldKind::Binary => (2u64, k.degree() as u64),
            FieldKind::Prime => (k.order() as u64, 1u64),
        };
        let q = k.order() as u64;
        let n = self.degree as u64;
        let mut acc: BTreeMap<u128, i64> = BTreeMap::new();
        let mut add = |factors: Vec<(u128, u32)>, sign: i64| {
            for (r, e) in factors {
                *acc.entry(r).or_insert(0) += sign * e as i64;
            }
        };
        // p^(f*k)
        let p_power = |k_exp: u64| vec![(p as u128, (f * k_exp) as u32)];
        let q_pow_minus_one = |i: u64| -> Result<Vec<(u128, u32)>> { power_minus_one(p, f * i) };
        let q_pow_plus_one = |i: u64| -> Result<Vec<(u128, u32)>> { power_plus_one(p, f * i) };
        match self.family {
            Family::GL | Family::SL | Family::PSL => {
                add(p_power(n * (n - 1) / 2), 1);
                for i in 1..=n {
                    add(q_pow_minus_one(i)?, 1);
                }
                if self.family != Family::GL {
                    add(q_pow_minus_one(1)?, -1);
                }
                if self.family == Family::PSL {
                    let z = n.gcd(&(q - 1));
                    add(ppd::group_factors(&ppd::factorize(z as u128)?), -1);
                }
            }
            Family::Sp => {
                let m = n / 2;
                add(p_power(m * m), 1);
                for i in 1..=m {
                    add(q_pow_minus_one(2 * i)?, 1);
                }
            }
            Family::OmegaPlus | Family::OmegaMinus => {
                let m = n / 2;
                add(p_power(m * (m - 1)), 1);
                if self.family == Family::OmegaPlus {
                    add(q_pow_minus_one(m)?, 1);
                } else {
                    add(q_pow_plus_one(m)?, 1);
                }
                for i in 1..m {
                    add(q_pow_minus_one(2 * i)?, 1);
                }
            }
            Family::Perm => unreachable!(),
        }
        let mut out = Vec::new();
        for (r, e) in acc {
            if e < 0 {
                return Err(Error::Unsupported("negative exponent in order formula".into()));
            }
            if e > 0 {
                out.push((r, e as u32));
            }
        }
        Ok(out)
    }

    /// Exact multiplicative order of `g`; errors if `g` is not in the group.
    pub fn element_order(&self, g: &GroupElement) -> Result<BigUint> {
        if !self.in_group(g)? {
            return Err(Error::NotInGroup);
        }
        let factored = self.factored_order()?;
        self.element_order_with(&factored, g)
    }

    /// Order of `g` by the divide-and-power method over a known factorisation of |G|.
    pub fn element_order_with(&self, factored: &[(u128, u32)], g: &GroupElement) -> Result<BigUint> {
        if !self.family.is_matrix() {
            return Ok(perm_order(&g.0));
        }
        let mut ord = factored.iter().fold(BigUint::one(), |acc, &(p, e)| {
            acc * num_traits::pow(BigUint::from(p), e as usize)
        });
        if !self.is_identity(&self.pow_big(g, &ord)) {
            return Err(Error::NotInGroup);
        }
        for &(p, e) in factored {
            let p = BigUint::from(p);
            for _ in 0..e {
                let cand = &ord / &p;
                if self.is_identity(&self.pow_big(g, &cand)) {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    fn build_generators(&self) -> Result<Vec<GroupElement>> {
        let k = self.k();
        let n = self.degree;
        let m = n / 2;
        let gens: Vec<Vec<FieldElem>> = match self.family {
            Family::GL => {
                let mut g = sl_generators(k, n);
                g.push(diag_first(k, n, k.generator()));
                g
            }
            Family::SL | Family::PSL => sl_generators(k, n),
            Family::Sp => {
                let mut g: Vec<_> = gl_generators(k, m).iter().map(|a| levi(k, n, m, a)).collect();
                let mut upper = matrix::identity(n);
                upper[m] = 1;
                let mut lower = matrix::identity(n);
                lower[m * n] = 1;
                g.push(upper);
                g.push(lower);
                g
            }
            Family::OmegaPlus => {
                let mut g: Vec<_> = gl_generators(k, m).iter().map(|a| levi(k, n, m, a)).collect();
                let quad = self.quad.as_deref().expect("form");
                let gram = self.gram.as_deref().expect("form");
                g.push(eichler(k, n, quad, gram, &unit(n, 0), &unit(n, 1)));
                g.push(eichler(k, n, quad, gram, &unit(n, m), &unit(n, m + 1)));
                g
            }
            Family::OmegaMinus => {
                let quad = self.quad.as_deref().expect("form");
                let gram = self.gram.as_deref().expect("form");
                let mut g = Vec::new();
                if m >= 3 {
                    for a in gl_generators(k, m - 1) {
                        g.push(levi_partial(k, n, m, m - 1, &a));
                    }
                }
                let (e0, f0) = (unit(n, 0), unit(n, m));
                let plane = [unit(n, m - 1), unit(n, 2 * m - 1)];
                for w in &plane {
                    g.push(eichler(k, n, quad, gram, &e0, w));
                    g.push(eichler(k, n, quad, gram, &f0, w));
                    let w2: Vec<FieldElem> = w.iter().map(|&x| k.mul(x, k.generator())).collect();
                    g.push(eichler(k, n, quad, gram, &e0, &w2));
                }
                if m >= 3 {
                    g.push(eichler(k, n, quad, gram, &e0, &unit(n, 1)));
                    g.push(eichler(k, n, quad, gram, &f0, &unit(n, m + 1)));
                }
                g
            }
            Family::Perm => unreachable!(),
        };
        let mut out: Vec<GroupElement> = Vec::new();
        for g in gens {
            let g = self.canonicalize(GroupElement(g));
            debug_assert!(
                self.in_group(&g).unwrap_or(false),
                "generator outside {}",
                self.describe()
            );
            if !self.is_identity(&g) && !out.contains(&g) {
                out.push(g);
            }
        }
        if out.is_empty() {
            out.push(self.identity());
        }
        Ok(out)
    }
}

/// The standard generating set of a spec.
///
/// * GL: the SL set plus diag(ω, 1, …, 1);
/// * SL and PSL: diag(ω, ω⁻¹, 1, …), and the elementary transvections
///   I + E_{i,i+1}, I + E_{i+1,i};
/// * Sp: the Levi factor diag(A, A^-T) for A in the GL_m set, plus I + E_{1,m+1} and I + E_{m+1,1};
/// * Ω+: the same Levi factor plus two Eichler transformations;
/// * Ω−: the GL_{m-1} Levi factor and Eichler transformations through the anisotropic plane;
/// * permutation groups: the explicit generators.
///
/// ω is the field's primitive element. Each set is checked by full
/// enumeration against the order formula for desk-scale groups.
pub fn standard_generators(spec: &GroupSpec) -> Vec<GroupElement> {
    spec.generators.clone()
}

/// The Suzuki form j_ℓ(n) = [[I_ℓ,0,0],[0,I_{n-2ℓ},0],[I_ℓ,0,I_ℓ]].
pub fn suzuki_involution(n: usize, l: usize, field: &Field) -> Result<GroupElement> {
    if l < 1 || 2 * l > n {
        return Err(Error::OutOfRange(format!("need 1 <= l <= n/2, got l = {l}, n = {n}")));
    }
    let _ = field;
    let mut m = matrix::identity(n);
    for i in 0..l {
        m[(n - l + i) * n + i] = 1;
    }
    Ok(GroupElement(m))
}

/// Dickson invariant rank(M + I) mod 2.
pub fn dickson_invariant(k: &Field, n: usize, m: &[FieldElem]) -> usize {
    let sum = matrix::add(k, m, &matrix::identity(n));
    matrix::rank(k, n, &sum) % 2
}

/// Q(v) for an upper-triangular coefficient matrix.
pub fn quadratic_value(k: &Field, n: usize, quad: &[FieldElem], v: &[FieldElem]) -> FieldElem {
    let mut acc = 0;
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        for j in i..n {
            let c = quad[i * n + j];
            if c != 0 && v[j] != 0 {
                acc = k.add(acc, k.mul(c, k.mul(v[i], v[j])));
            }
        }
    }
    acc
}

fn perm_order(images: &[FieldElem]) -> BigUint {
    let mut seen = vec![false; images.len()];
    let mut ord = BigUint::one();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        ord = ord.lcm(&BigUint::from(len));
    }
    ord
}

/// Factorisation of p^k - 1 through its cyclotomic factors Φ_d(p), d | k.
fn power_minus_one(p: u64, k: u64) -> Result<Vec<(u128, u32)>> {
    let mut all = Vec::new();
    for d in (1..=k).filter(|d| k % d == 0) {
        all.extend(cyclotomic_factors(p, d)?);
    }
    all.sort_unstable();
    Ok(ppd::group_factors(&all))
}

/// Factorisation of p^k + 1 = Π Φ_d(p) over d | 2k, d ∤ k.
fn power_plus_one(p: u64, k: u64) -> Result<Vec<(u128, u32)>> {
    let mut all = Vec::new();
    for d in (1..=2 * k).filter(|d| (2 * k) % d == 0 && k % d != 0) {
        all.extend(cyclotomic_factors(p, d)?);
    }
    all.sort_unstable();
    Ok(ppd::group_factors(&all))
}

fn cyclotomic_factors(p: u64, d: u64) -> Result<Vec<u128>> {
    let v = ppd::cyclotomic_value(p, d);
    if v.is_zero() {
        return Ok(Vec::new());
    }
    let v = v
        .to_u128()
        .ok_or_else(|| Error::OutOfRange(format!("Phi_{d}({p}) exceeds 2^128")))?;
    ppd::factorize(v)
}

fn unit(n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn hyperbolic_gram(n: usize) -> Vec<FieldElem> {
    let m = n / 2;
    let mut g = vec![0; n * n];
    for i in 0..m {
        g[i * n + m + i] = 1;
        g[(m + i) * n + i] = 1;
    }
    g
}

fn polar_gram(k: &Field, n: usize, quad: &[FieldElem]) -> Vec<FieldElem> {
    let mut g = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                g[i * n + j] = k.add(quad[i * n + j], quad[j * n + i]);
            }
        }
    }
    g
}

/// Least μ with x^2 + x + μ irreducible over GF(q), i.e. absolute trace 1.
pub fn anisotropic_constant(k: &Field) -> FieldElem {
    k.elements()
        .find(|&mu| k.trace(mu) == 1)
        .expect("an irreducible quadratic exists")
}

fn bilinear(k: &Field, n: usize, gram: &[FieldElem], x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let mut acc = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            let g = gram[i * n + j];
            if g != 0 && y[j] != 0 {
                acc = k.add(acc, k.mul(x[i], k.mul(g, y[j])));
            }
        }
    }
    acc
}

/// Eichler transformation v ↦ v + B(v,u)w + B(v,w)u + Q(w)B(v,u)u (u singular, w ⊥ u).
fn eichler(
    k: &Field,
    n: usize,
    quad: &[FieldElem],
    gram: &[FieldElem],
    u: &[FieldElem],
    w: &[FieldElem],
) -> Vec<FieldElem> {
    debug_assert_eq!(quadratic_value(k, n, quad, u), 0);
    debug_assert_eq!(bilinear(k, n, gram, u, w), 0);
    let qw = quadratic_value(k, n, quad, w);
    let mut m = vec![0; n * n];
    for j in 0..n {
        let ej = unit(n, j);
        let bu = bilinear(k, n, gram, &ej, u);
        let bw = bilinear(k, n, gram, &ej, w);
        for i in 0..n {
            let mut v = ej[i];
            v = k.add(v, k.mul(bu, w[i]));
            v = k.add(v, k.mul(bw, u[i]));
            v = k.add(v, k.mul(qw, k.mul(bu, u[i])));
            m[i * n + j] = v;
        }
    }
    m
}

/// diag(A, A^-T) acting on the first `m` coordinates and the `m` coordinates after them.
fn levi(k: &Field, n: usize, m: usize, a: &[FieldElem]) -> Vec<FieldElem> {
    levi_partial(k, n, m, m, a)
}

/// A (size r) on coordinates 0..r, A^-T on m..m+r, identity elsewhere.
fn levi_partial(k: &Field, n: usize, m: usize, r: usize, a: &[FieldElem]) -> Vec<FieldElem> {
    let ait = matrix::transpose(r, &matrix::inverse(k, r, a).expect("GL element"));
    let mut out = matrix::identity(n);
    for i in 0..r {
        for j in 0..r {
            out[i * n + j] = a[i * r + j];
            out[(m + i) * n + m + j] = ait[i * r + j];
        }
    }
    out
}

fn diag_first(k: &Field, n: usize, x: FieldElem) -> Vec<FieldElem> {
    let _ = k;
    let mut m = matrix::identity(n);
    m[0] = x;
    m
}

fn sl_generators(k: &Field, n: usize) -> Vec<Vec<FieldElem>> {
    let mut gens = Vec::new();
    if n >= 2 && k.order() > 2 {
        let w = k.generator();
        let mut h = matrix::identity(n);
        h[0] = w;
        h[n + 1] = k.inv(w).expect("nonzero");
        gens.push(h);
    }
    for i in 0..n.saturating_sub(1) {
        let mut up = matrix::identity(n);
        up[i * n + i + 1] = 1;
        gens.push(up);
        let mut down = matrix::identity(n);
        down[(i + 1) * n + i] = 1;
        gens.push(down);
    }
    gens
}

fn gl_generators(k: &Field, n: usize) -> Vec<Vec<FieldElem>> {
    let mut g = sl_generators(k, n);
    if k.order() > 2 {
        g.push(diag_first(k, n, k.generator()));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, n: usize, f: u32) -> GroupSpec {
        GroupSpec::matrix(family, n, Field::binary(f).unwrap()).unwrap()
    }

    #[test]
    fn orders_from_formulas() {
        assert_eq!(spec(Family::SL, 4, 1).order().unwrap(), BigUint::from(20160u32));
        assert_eq!(spec(Family::Sp, 6, 1).order().unwrap(), BigUint::from(1451520u32));
        assert_eq!(spec(Family::SL, 2, 2).order().unwrap(), BigUint::from(60u32));
        assert_eq!(spec(Family::PSL, 3, 2).order().unwrap(), BigUint::from(20160u32));
        assert_eq!(spec(Family::SL, 3, 2).order().unwrap(), BigUint::from(60480u32));
        assert_eq!(spec(Family::GL, 3, 2).order().unwrap(), BigUint::from(181440u32));
        assert_eq!(spec(Family::OmegaPlus, 6, 1).order().unwrap(), BigUint::from(20160u32));
        assert_eq!(spec(Family::OmegaMinus, 6, 1).order().unwrap(), BigUint::from(25920u32));
        assert_eq!(spec(Family::OmegaMinus, 4, 1).order().unwrap(), BigUint::from(60u32));
        assert_eq!(spec(Family::OmegaPlus, 4, 1).order().unwrap(), BigUint::from(36u32));
        let psl27 = GroupSpec::matrix(Family::PSL, 2, Field::prime(7).unwrap()).unwrap();
        assert_eq!(psl27.order().unwrap(), BigUint::from(168u32));
        // trivial centre: PSL = SL
        assert_eq!(
            spec(Family::PSL, 4, 1).order().unwrap(),
            spec(Family::SL, 4, 1).order().unwrap()
        );
        assert_eq!(
            spec(Family::PSL, 4, 3).order().unwrap(),
            spec(Family::SL, 4, 3).order().unwrap()
        );
    }

    #[test]
    fn large_order_factorisations() {
        // |Ω+(12, 2^16)| has factors such as 2^80 - 1; the product must match the formula
        let s = spec(Family::OmegaPlus, 12, 16);
        let q = BigUint::from(65536u32);
        let mut expect = num_traits::pow(q.clone(), 30) * (num_traits::pow(q.clone(), 6) - 1u32);
        for i in 1..6 {
            expect *= num_traits::pow(q.clone(), 2 * i) - 1u32;
        }
        assert_eq!(s.order().unwrap(), expect);
    }

    #[test]
    fn suzuki_forms() {
        let k = Field::binary(1).unwrap();
        let j = suzuki_involution(3, 1, &k).unwrap();
        assert_eq!(j.as_slice(), &[1, 0, 0, 0, 1, 0, 1, 0, 1]);
        let j41 = suzuki_involution(4, 1, &k).unwrap();
        assert_eq!(j41.as_slice(), &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1]);
        let j42 = suzuki_involution(4, 2, &k).unwrap();
        assert_eq!(j42.as_slice(), &[1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1]);
        assert!(suzuki_involution(4, 3, &k).is_err());
        assert!(suzuki_involution(4, 0, &k).is_err());
        for f in [1, 2] {
            let k = Field::binary(f).unwrap();
            for n in 2..=12 {
                let s = GroupSpec::matrix(Family::SL, n, k.clone()).unwrap();
                for l in 1..=n / 2 {
                    let j = suzuki_involution(n, l, &k).unwrap();
                    assert!(s.is_identity(&s.mul(&j, &j)));
                    assert!(!s.is_identity(&j));
                    assert!(s.in_group(&j).unwrap());
                }
            }
        }
    }

    #[test]
    fn membership() {
        for fam in [
            Family::GL,
            Family::SL,
            Family::PSL,
            Family::Sp,
            Family::OmegaPlus,
            Family::OmegaMinus,
        ] {
            let s = spec(fam, 6, 2);
            assert!(s.in_group(&s.identity()).unwrap());
            for g in s.generators() {
                assert!(s.in_group(g).unwrap(), "{fam}");
            }
        }
        let s = spec(Family::SL, 4, 2);
        let k = s.field().unwrap();
        let d = GroupElement::from_vec(diag_first(k, 4, k.generator()));
        assert!(!s.in_group(&d).unwrap());
        assert!(s.in_group(&GroupElement::from_vec(vec![1, 0, 0, 1])).is_err());
        // a transvection I + E_12 is symplectic only when it pairs a hyperbolic pair
        let sp = spec(Family::Sp, 4, 1);
        let mut t = matrix::identity(4);
        t[1] = 1;
        assert!(!sp.in_group(&GroupElement::from_vec(t)).unwrap());
        // the swap of a hyperbolic pair preserves Q but has Dickson invariant 1
        let op = spec(Family::OmegaPlus, 4, 1);
        let mut r = vec![0; 16];
        r[2] = 1;
        r[4 + 1] = 1;
        r[8] = 1;
        r[12 + 3] = 1;
        assert!(!op.in_group(&GroupElement::from_vec(r)).unwrap());
    }

    #[test]
    fn minus_type_constant() {
        assert_eq!(anisotropic_constant(&Field::binary(1).unwrap()), 1);
        for f in 1..=6 {
            let k = Field::binary(f).unwrap();
            let mu = anisotropic_constant(&k);
            // x^2 + x + mu has no root
            assert!(k.elements().all(|x| k.add(k.add(k.mul(x, x), x), mu) != 0));
        }
    }

    #[test]
    fn psl_canonical_form() {
        let s = spec(Family::PSL, 3, 2);
        assert_eq!(s.scalars.len(), 3);
        for g in s.generators() {
            assert!(s.is_canonical(g));
        }
        let k = s.field().unwrap();
        let w = k.exp(5); // a cube root of unity in GF(4)* of order 3
        let scaled = GroupElement::from_vec(matrix::scale(k, w, s.identity().as_slice()));
        assert_eq!(s.canonicalize(scaled), s.identity());
    }

    #[test]
    fn element_orders() {
        let s = spec(Family::SL, 4, 1);
        assert_eq!(s.element_order(&s.identity()).unwrap(), BigUint::one());
        let j = suzuki_involution(4, 1, s.field().unwrap()).unwrap();
        assert_eq!(s.element_order(&j).unwrap(), BigUint::from(2u32));
        // block companion of x^3 + x + 1 has order 7; the oracle powers it directly
        let mut c = matrix::identity(4);
        c[..3].copy_from_slice(&[0, 0, 1]);
        c[4..7].copy_from_slice(&[1, 0, 1]);
        c[8..11].copy_from_slice(&[0, 1, 0]);
        let c = GroupElement::from_vec(c);
        let mut p = c.clone();
        let mut brute = 1;
        while !s.is_identity(&p) {
            p = s.mul(&p, &c);
            brute += 1;
        }
        assert_eq!(brute, 7);
        assert_eq!(s.element_order(&c).unwrap(), BigUint::from(7u32));
        let k = s.field().unwrap();
        let foreign = GroupElement::from_vec(diag_first(k, 4, 1));
        assert!(s.element_order(&foreign).is_ok());
        let bad = GroupElement::from_vec(vec![0; 16]);
        assert_eq!(s.element_order(&bad), Err(Error::NotInGroup));
    }

    #[test]
    fn permutation_groups() {
        let g = GroupSpec::perm(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        assert_eq!(g.order().unwrap(), BigUint::from(24u32));
        assert_eq!(standard_generators(&g).len(), 2);
        let c = &g.generators()[0];
        assert_eq!(g.element_order(c).unwrap(), BigUint::from(4u32));
        assert!(GroupSpec::perm(3, vec![vec![0, 0, 1]]).is_err());
        assert!(g.in_group(&g.inv(c)).unwrap());
        assert!(g.is_identity(&g.mul(c, &g.inv(c))));
    }

    #[test]
    fn unsupported_shapes() {
        let k = Field::binary(1).unwrap();
        assert!(GroupSpec::matrix(Family::Sp, 5, k.clone()).is_err());
        assert!(GroupSpec::matrix(Family::OmegaPlus, 2, k.clone()).is_err());
        assert!(GroupSpec::matrix(Family::SL, 13, k.clone()).is_err());
        assert!(GroupSpec::matrix(Family::Sp, 4, Field::prime(7).unwrap()).is_err());
        assert!("nonsense".parse::<Family>().is_err());
        assert_eq!("psp".parse::<Family>().unwrap(), Family::Sp);
    }
}

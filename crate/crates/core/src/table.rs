//! Full enumeration of desk-scale groups.
//!
//! Elements are stored flat, `stride` entries each, in BFS order from the
//! identity (index 0). A hash table maps canonical encodings back to indices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::group::{Family, GroupElement, GroupSpec};

/// Default refusal threshold for enumeration.
pub const DEFAULT_CAP: usize = 2_000_000;

const CACHE_MAGIC: &[u8; 5] = b"GRRF1";

#[derive(Debug, Clone)]
pub struct ElementTable {
    spec: GroupSpec,
    stride: usize,
    data: Vec<FieldElem>,
    index: HashTable<u32>,
    hasher: DefaultHashBuilder,
    involutions: Vec<u32>,
    /// Indices of the generators and their inverses.
    gens: Vec<u32>,
}

impl ElementTable {
    /// BFS closure of the standard generators (and their inverses) under right multiplication.
    pub fn enumerate(spec: &GroupSpec, cap: usize) -> Result<ElementTable> {
        let expected = if spec.family().is_matrix() {
            let order = spec.order()?;
            match order.to_usize() {
                Some(o) if o <= cap => Some(o),
                _ => {
                    return Err(Error::CapExceeded {
                        order: format!("{order}"),
                        cap: cap as u64,
                    })
                }
            }
        } else {
            None
        };
        let mut gens: Vec<GroupElement> = Vec::new();
        for g in spec.generators() {
            for h in [g.clone(), spec.inv(g)] {
                if !gens.contains(&h) {
                    gens.push(h);
                }
            }
        }
        let mut table = ElementTable::empty(spec, expected.unwrap_or(1024));
        table.insert(spec.identity().as_slice());
        let mut buf = vec![0; table.stride];
        let mut head = 0usize;
        while head < table.len() {
            for g in &gens {
                spec.mul_into(table.raw(head as u32), g.as_slice(), &mut buf);
                let key = spec.canonicalize(GroupElement::from_vec(buf.clone()));
                if table.find(key.as_slice()).is_none() {
                    if table.len() >= cap {
                        return Err(Error::CapExceeded {
                            order: format!("> {cap}"),
                            cap: cap as u64,
                        });
                    }
                    table.insert(key.as_slice());
                }
            }
            head += 1;
        }
        if let Some(o) = expected {
            if table.len() != o {
                return Err(Error::Mismatch(format!(
                    "closure of the generators of {} has {} elements, expected {o}",
                    spec.describe(),
                    table.len()
                )));
            }
        }
        table.finish(&gens)?;
        Ok(table)
    }

    fn empty(spec: &GroupSpec, capacity: usize) -> ElementTable {
        let stride = spec.stride();
        ElementTable {
            spec: spec.clone(),
            stride,
            data: Vec::with_capacity(capacity * stride),
            index: HashTable::with_capacity(capacity),
            hasher: DefaultHashBuilder::default(),
            involutions: Vec::new(),
            gens: Vec::new(),
        }
    }

    fn insert(&mut self, key: &[FieldElem]) -> u32 {
        let i = self.len() as u32;
        self.data.extend_from_slice(key);
        let hasher = &self.hasher;
        let data = &self.data;
        let stride = self.stride;
        let h = hasher.hash_one(key);
        self.index.insert_unique(h, i, |&j| {
            hasher.hash_one(&data[j as usize * stride..(j as usize + 1) * stride])
        });
        i
    }

    fn find(&self, key: &[FieldElem]) -> Option<u32> {
        let h = self.hasher.hash_one(key);
        self.index.find(h, |&j| self.raw(j) == key).copied()
    }

    fn finish(&mut self, gens: &[GroupElement]) -> Result<()> {
        self.gens = gens
            .iter()
            .map(|g| self.find(g.as_slice()).ok_or(Error::NotInGroup))
            .collect::<Result<_>>()?;
        let mut buf = vec![0; self.stride];
        let mut invs = Vec::new();
        for i in 1..self.len() as u32 {
            self.spec.mul_into(self.raw(i), self.raw(i), &mut buf);
            let sq = self.spec.canonicalize(GroupElement::from_vec(buf.clone()));
            if self.spec.is_identity(&sq) {
                invs.push(i);
            }
        }
        self.involutions = invs;
        Ok(())
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.stride
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Stored encoding of element `i`.
    pub fn raw(&self, i: u32) -> &[FieldElem] {
        let i = i as usize;
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn element(&self, i: u32) -> GroupElement {
        GroupElement::from_vec(self.raw(i).to_vec())
    }

    /// Index of `g` after canonicalization, or `None` for a foreign element.
    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        if g.as_slice().len() != self.stride {
            return None;
        }
        let key = self.spec.canonicalize(g.clone());
        self.find(key.as_slice())
    }

    fn require(&self, i: u32) -> Result<()> {
        if (i as usize) < self.len() {
            Ok(())
        } else {
            Err(Error::NotInGroup)
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = vec![0; self.stride];
        self.spec.mul_into(self.raw(a), self.raw(b), &mut buf);
        self.lookup_raw(&buf)
    }

    pub fn inv(&self, a: u32) -> u32 {
        let inv = self.spec.inv(&self.element(a));
        self.find(inv.as_slice()).expect("table is closed")
    }

    /// The permutation g ↦ s·g of element indices.
    pub fn left_translation(&self, s: u32) -> Vec<u32> {
        self.translation(s, true)
    }

    /// The permutation g ↦ g·s of element indices.
    pub fn right_translation(&self, s: u32) -> Vec<u32> {
        self.translation(s, false)
    }

    fn translation(&self, s: u32, left: bool) -> Vec<u32> {
        let mut buf = vec![0; self.stride];
        let sv = self.raw(s).to_vec();
        (0..self.len() as u32)
            .map(|g| {
                if left {
                    self.spec.mul_into(&sv, self.raw(g), &mut buf);
                } else {
                    self.spec.mul_into(self.raw(g), &sv, &mut buf);
                }
                self.lookup_raw(&buf)
            })
            .collect()
    }

    fn lookup_raw(&self, buf: &[FieldElem]) -> u32 {
        if self.spec.family() == Family::PSL {
            let key = self.spec.canonicalize(GroupElement::from_vec(buf.to_vec()));
            self.find(key.as_slice())
        } else {
            self.find(buf)
        }
        .expect("table is closed")
    }

    /// Indices of the standard generators and their inverses.
    pub fn generator_indices(&self) -> &[u32] {
        &self.gens
    }

    /// Sorted indices of elements of order exactly 2.
    pub fn involutions(&self) -> &[u32] {
        &self.involutions
    }

    pub fn order_of(&self, i: u32) -> u64 {
        let g = self.element(i);
        let mut p = g.clone();
        let mut k = 1;
        while !self.spec.is_identity(&p) {
            p = self.spec.mul(&p, &g);
            k += 1;
        }
        k
    }

    /// Size of the subgroup generated by the given elements.
    pub fn subgroup_size(&self, set: &[u32]) -> Result<usize> {
        for &s in set {
            self.require(s)?;
        }
        let mut moves: Vec<GroupElement> = Vec::new();
        for &s in set {
            moves.push(self.element(s));
            moves.push(self.element(self.inv(s)));
        }
        let mut seen = vec![0u64; self.len().div_ceil(64)];
        seen[0] |= 1;
        let mut stack = vec![0u32];
        let mut count = 1;
        let mut buf = vec![0; self.stride];
        while let Some(i) = stack.pop() {
            for m in &moves {
                self.spec.mul_into(self.raw(i), m.as_slice(), &mut buf);
                let j = self.lookup_raw(&buf);
                let (w, b) = (j as usize / 64, j as usize % 64);
                if seen[w] >> b & 1 == 0 {
                    seen[w] |= 1 << b;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        Ok(count)
    }

    /// Whether the given elements generate the whole group.
    pub fn generates(&self, set: &[u32]) -> Result<bool> {
        Ok(self.subgroup_size(set)? == self.len())
    }

    /// Number of elements commuting with element `g`.
    pub fn centralizer_order(&self, g: u32) -> Result<u64> {
        self.require(g)?;
        Ok((0..self.len() as u32).filter(|&h| self.commute(g, h)).count() as u64)
    }

    /// Number of involutions commuting with element `g`.
    pub fn centralizer_involution_count(&self, g: u32) -> Result<u64> {
        self.require(g)?;
        Ok(self.involutions.iter().filter(|&&h| self.commute(g, h)).count() as u64)
    }

    /// Whether elements `a` and `b` commute.
    pub fn commute(&self, a: u32, b: u32) -> bool {
        let (x, y) = (self.element(a), self.element(b));
        self.spec.mul(&x, &y) == self.spec.mul(&y, &x)
    }

    /// A uniformly random involution.
    pub fn sample_involution<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u32> {
        if self.involutions.is_empty() {
            return Err(Error::Unsupported(format!(
                "{} has no involutions",
                self.spec.describe()
            )));
        }
        Ok(self.involutions[rng.gen_range(0..self.involutions.len())])
    }

    /// Serialize as: magic `GRRF1`, u16 descriptor length, descriptor,
    /// u64 element count, u32 stride, u8 entry width (2), then u16 entries, all little endian.
    pub fn to_cache_bytes(&self) -> Vec<u8> {
        let desc = self.spec.descriptor();
        let mut out = Vec::with_capacity(32 + desc.len() + 2 * self.data.len());
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&(desc.len() as u16).to_le_bytes());
        out.extend_from_slice(desc.as_bytes());
        out.extend_from_slice(&(self.len() as u64).to_le_bytes());
        out.extend_from_slice(&(self.stride as u32).to_le_bytes());
        out.push(2);
        for &x in &self.data {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    /// Rebuild a table from cache bytes, re-verifying every element.
    ///
    /// The reloaded elements must be canonical group members, pairwise distinct,
    /// as many as the group order, and must contain the generators.
    pub fn from_cache_bytes(spec: &GroupSpec, bytes: &[u8]) -> Result<ElementTable> {
        let corrupt = |why: &str| Error::CorruptCache(String::from(why));
        let mut r = Reader { bytes, pos: 0 };
        if r.take(5).ok_or_else(|| corrupt("truncated header"))? != CACHE_MAGIC {
            return Err(corrupt("bad magic"));
        }
        let dlen = u16::from_le_bytes(r.array().ok_or_else(|| corrupt("truncated header"))?) as usize;
        let desc = r.take(dlen).ok_or_else(|| corrupt("truncated descriptor"))?;
        if desc != spec.descriptor().as_bytes() {
            return Err(corrupt("descriptor does not match the requested group"));
        }
        let count = u64::from_le_bytes(r.array().ok_or_else(|| corrupt("truncated header"))?) as usize;
        let stride = u32::from_le_bytes(r.array().ok_or_else(|| corrupt("truncated header"))?) as usize;
        let width = r.take(1).ok_or_else(|| corrupt("truncated header"))?[0];
        if stride != spec.stride() || width != 2 {
            return Err(corrupt("unexpected element layout"));
        }
        let body = r.rest();
        if body.len() != count.checked_mul(stride * 2).ok_or_else(|| corrupt("bad count"))? {
            return Err(corrupt("element data has the wrong length"));
        }
        let expected = spec.order()?;
        if expected.to_usize() != Some(count) {
            return Err(corrupt("element count differs from the group order"));
        }
        let mut table = ElementTable::empty(spec, count);
        for chunk in body.chunks_exact(stride * 2) {
            let g: Vec<FieldElem> = chunk
                .chunks_exact(2)
                .map(|b| u16::from_le_bytes([b[0], b[1]]))
                .collect();
            let ge = GroupElement::from_vec(g);
            if !spec.in_group(&ge)? || !spec.is_canonical(&ge) {
                return Err(corrupt("entry is not a canonical group element"));
            }
            if table.find(ge.as_slice()).is_some() {
                return Err(corrupt("duplicate entry"));
            }
            table.insert(ge.as_slice());
        }
        if !spec.is_identity(&table.element(0)) {
            return Err(corrupt("first entry is not the identity"));
        }
        let mut gens: Vec<GroupElement> = Vec::new();
        for g in spec.generators() {
            for h in [g.clone(), spec.inv(g)] {
                if !gens.contains(&h) {
                    gens.push(h);
                }
            }
        }
        table
            .finish(&gens)
            .map_err(|_| corrupt("generator missing from table"))?;
        Ok(table)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.bytes.get(self.pos..self.pos.checked_add(n)?)?;
        self.pos += n;
        Some(s)
    }

    fn array<const N: usize>(&mut self) -> Option<[u8; N]> {
        self.take(N)?.try_into().ok()
    }

    fn rest(&mut self) -> &'a [u8] {
        let s = &self.bytes[self.pos..];
        self.pos = self.bytes.len();
        s
    }
}

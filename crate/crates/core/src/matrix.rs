//! Dense square matrices over a [`Field`], stored row-major as `&[FieldElem]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

pub fn identity(n: usize) -> Vec<FieldElem> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn is_identity(n: usize, a: &[FieldElem]) -> bool {
    a.iter()
        .enumerate()
        .all(|(k, &v)| v == if k / n == k % n { 1 } else { 0 })
}

/// `out = a * b`.
pub fn mul_into(k: &Field, n: usize, a: &[FieldElem], b: &[FieldElem], out: &mut [FieldElem]) {
    if k.order() == 2 {
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            row.fill(0);
            for l in 0..n {
                if a[i * n + l] != 0 {
                    let brow = &b[l * n..(l + 1) * n];
                    for (o, &x) in row.iter_mut().zip(brow) {
                        *o ^= x;
                    }
                }
            }
        }
        return;
    }
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for l in 0..n {
                acc = k.add(acc, k.mul(a[i * n + l], b[l * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

pub fn mul(k: &Field, n: usize, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![0; n * n];
    mul_into(k, n, a, b, &mut out);
    out
}

pub fn transpose(n: usize, a: &[FieldElem]) -> Vec<FieldElem> {
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

pub fn add(k: &Field, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect()
}

pub fn scale(k: &Field, s: FieldElem, a: &[FieldElem]) -> Vec<FieldElem> {
    a.iter().map(|&x| k.mul(s, x)).collect()
}

/// Row echelon reduction in place; returns (rank, determinant of the square input).
fn eliminate(k: &Field, rows: usize, cols: usize, m: &mut [FieldElem]) -> (usize, FieldElem) {
    let mut rank = 0;
    let mut det: FieldElem = 1;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            det = 0;
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.swap(p * cols + j, rank * cols + j);
            }
            det = k.neg(det);
        }
        let piv = m[rank * cols + c];
        det = k.mul(det, piv);
        let pinv = k.inv(piv).expect("pivot is nonzero");
        for j in 0..cols {
            m[rank * cols + j] = k.mul(m[rank * cols + j], pinv);
        }
        for r in 0..rows {
            if r != rank && m[r * cols + c] != 0 {
                let factor = m[r * cols + c];
                for j in 0..cols {
                    let t = k.mul(factor, m[rank * cols + j]);
                    m[r * cols + j] = k.sub(m[r * cols + j], t);
                }
            }
        }
        rank += 1;
    }
    (rank, if rank == rows { det } else { 0 })
}

pub fn det(k: &Field, n: usize, a: &[FieldElem]) -> FieldElem {
    let mut m = a.to_vec();
    eliminate(k, n, n, &mut m).1
}

pub fn rank(k: &Field, n: usize, a: &[FieldElem]) -> usize {
    let mut m = a.to_vec();
    eliminate(k, n, n, &mut m).0
}

pub fn inverse(k: &Field, n: usize, a: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let w = 2 * n;
    let mut aug = vec![0; n * w];
    for i in 0..n {
        aug[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        aug[i * w + n + i] = 1;
    }
    // Only the left block decides invertibility; eliminate column by column.
    for c in 0..n {
        let p = (c..n)
            .find(|&r| aug[r * w + c] != 0)
            .ok_or_else(|| Error::Mismatch(String::from("singular matrix")))?;
        if p != c {
            for j in 0..w {
                aug.swap(p * w + j, c * w + j);
            }
        }
        let pinv = k.inv(aug[c * w + c])?;
        for j in 0..w {
            aug[c * w + j] = k.mul(aug[c * w + j], pinv);
        }
        for r in 0..n {
            if r != c && aug[r * w + c] != 0 {
                let factor = aug[r * w + c];
                for j in 0..w {
                    let t = k.mul(factor, aug[c * w + j]);
                    aug[r * w + j] = k.sub(aug[r * w + j], t);
                }
            }
        }
    }
    let mut out = vec![0; n * n];
    for i in 0..n {
        out[i * n..(i + 1) * n].copy_from_slice(&aug[i * w + n..(i + 1) * w]);
    }
    Ok(out)
}

/// `a^e` by square and multiply, with the exponent given as little-endian u64 digits.
pub fn pow_digits(k: &Field, n: usize, a: &[FieldElem], digits: &[u64]) -> Vec<FieldElem> {
    let mut result = identity(n);
    let Some(top) = digits.iter().rposition(|&d| d != 0) else {
        return result;
    };
    let bits = top * 64 + 64 - digits[top].leading_zeros() as usize;
    let mut base = a.to_vec();
    let mut tmp = vec![0; n * n];
    for i in 0..bits {
        if digits[i / 64] >> (i % 64) & 1 == 1 {
            mul_into(k, n, &result, &base, &mut tmp);
            core::mem::swap(&mut result, &mut tmp);
        }
        if i + 1 < bits {
            mul_into(k, n, &base, &base, &mut tmp);
            core::mem::swap(&mut base, &mut tmp);
        }
    }
    result
}

/// Parse `"1,0,0;0,1,0;1,0,1"`: rows joined by `;`, entries by `,`.
pub fn parse_literal(k: &Field, s: &str) -> Result<(usize, Vec<FieldElem>)> {
    let rows: Vec<&str> = s.trim().split(';').collect();
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                entries.len()
            )));
        }
        for e in entries {
            let v: u32 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element {e:?}")))?;
            if !k.contains(v) {
                return Err(Error::Parse(format!("{v} is not in GF({})", k.order())));
            }
            data.push(v as FieldElem);
        }
    }
    Ok((n, data))
}

pub fn format_literal(n: usize, a: &[FieldElem]) -> String {
    let mut s = String::new();
    for i in 0..n {
        if i > 0 {
            s.push(';');
        }
        for j in 0..n {
            if j > 0 {
                s.push(',');
            }
            s.push_str(&format!("{}", a[i * n + j]));
        }
    }
    s
}

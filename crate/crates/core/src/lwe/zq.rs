//! Vectors and matrices over `Z_q`, stored as canonical representatives in
//! `[0, q)`.

use rand::Rng;

use crate::error::{decode_err, Result};

/// Centered representative in `(-q/2, q/2]`.
#[inline]
pub fn center(x: u64, q: u64) -> i64 {
    if x > q / 2 {
        x as i64 - q as i64
    } else {
        x as i64
    }
}

#[inline]
pub fn reduce_i64(x: i64, q: u64) -> u64 {
    x.rem_euclid(q as i64) as u64
}

#[inline]
pub fn reduce_i128(x: i128, q: u64) -> u64 {
    x.rem_euclid(q as i128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Squared Euclidean norm, saturating.
pub fn norm2(e: &[i64]) -> u128 {
    e.iter()
        .fold(0u128, |acc, &x| acc.saturating_add((x as i128 * x as i128) as u128))
}

/// `|e|^2 <= max`, stopping as soon as the running sum exceeds `max`.
pub fn norm2_at_most(e: &[i64], max: u128) -> bool {
    let mut acc = 0u128;
    for &x in e {
        acc += (x as i128 * x as i128) as u128;
        if acc > max {
            return false;
        }
    }
    true
}

fn dot_slices(a: &[u64], b: &[u64], q: u64) -> u64 {
    let s: u128 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x as u128 * y as u128) % q as u128)
        .sum();
    (s % q as u128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModqVector(pub Vec<u64>);

impl ModqVector {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn uniform<R: Rng + ?Sized>(len: usize, q: u64, rng: &mut R) -> Self {
        Self((0..len).map(|_| rng.gen_range(0..q)).collect())
    }

    pub fn from_signed(v: &[i64], q: u64) -> Self {
        Self(v.iter().map(|&x| reduce_i64(x, q)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn add(&self, other: &Self, q: u64) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| add_mod(a, b, q)).collect())
    }

    pub fn sub(&self, other: &Self, q: u64) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| sub_mod(a, b, q)).collect())
    }

    pub fn scale(&self, k: u64, q: u64) -> Self {
        Self(self.0.iter().map(|&a| mul_mod(a, k, q)).collect())
    }

    pub fn centered(&self, q: u64) -> Vec<i64> {
        self.0.iter().map(|&a| center(a, q)).collect()
    }

    /// `<h, self> mod q` for a small signed `h`.
    pub fn dot_small(&self, h: &[i64], q: u64) -> u64 {
        Self::dot_small_slice(&self.0, h, q)
    }

    fn dot_small_slice(a: &[u64], h: &[i64], q: u64) -> u64 {
        debug_assert_eq!(a.len(), h.len());
        if q < 1 << 31 && a.len() < 1 << 15 && h.iter().all(|x| x.unsigned_abs() < 1 << 16) {
            // |h_i| * q < 2^47 and len < 2^15 keeps the sum inside i64.
            let s: i64 = a.iter().zip(h).map(|(&x, &y)| x as i64 * y).sum();
            reduce_i64(s, q)
        } else {
            let s: i128 = a.iter().zip(h).map(|(&x, &y)| x as i128 * y as i128).sum();
            reduce_i128(s, q)
        }
    }

    pub fn dot(&self, other: &Self, q: u64) -> u64 {
        dot_slices(&self.0, &other.0, q)
    }

    /// Little-endian entries of `width` bytes each.
    pub fn write_le(&self, width: usize, out: &mut Vec<u8>) {
        for &x in &self.0 {
            out.extend_from_slice(&x.to_le_bytes()[..width]);
        }
    }

    pub fn read_le(bytes: &[u8], len: usize, width: usize, q: u64) -> Result<Self> {
        if bytes.len() != len * width {
            return Err(decode_err(format!(
                "expected {} bytes of Z_q entries, got {}",
                len * width,
                bytes.len()
            )));
        }
        bytes
            .chunks(width)
            .map(|c| {
                let mut buf = [0u8; 8];
                buf[..width].copy_from_slice(c);
                let x = u64::from_le_bytes(buf);
                if x < q {
                    Ok(x)
                } else {
                    Err(decode_err(format!("entry {x} is not reduced mod {q}")))
                }
            })
            .collect::<Result<Vec<u64>>>()
            .map(Self)
    }
}

/// Row-major `rows x cols` matrix over `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn uniform<R: Rng + ?Sized>(rows: usize, cols: usize, q: u64, rng: &mut R) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows * cols).map(|_| rng.gen_range(0..q)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    /// `self * s mod q`.
    pub fn mul_vec(&self, s: &ModqVector, q: u64) -> ModqVector {
        assert_eq!(s.len(), self.cols);
        ModqVector((0..self.rows).map(|i| dot_slices(self.row(i), &s.0, q)).collect())
    }

    /// `self^t * h mod q` for a small signed `h`.
    pub fn transpose_mul_small(&self, h: &[i64], q: u64) -> ModqVector {
        self.transposed().mul_small(h, q)
    }

    pub fn transposed(&self) -> Transposed {
        let mut cols = vec![0u64; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                cols[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        let data_f64 = cols.iter().map(|&x| x as f64).collect();
        Transposed { rows: self.rows, data: cols, data_f64 }
    }

    pub fn write_le(&self, width: usize, out: &mut Vec<u8>) {
        for &x in &self.data {
            out.extend_from_slice(&x.to_le_bytes()[..width]);
        }
    }
}

/// Column-major copy of a matrix, for repeated `A^t h` products.
///
/// Products whose every partial sum stays below `2^53` in magnitude are
/// computed exactly in `f64`, which vectorizes on baseline x86-64.
#[derive(Clone, Debug)]
pub struct Transposed {
    rows: usize,
    data: Vec<u64>,
    data_f64: Vec<f64>,
}

impl Transposed {
    /// `A^t h mod q` for a small signed `h`.
    pub fn mul_small(&self, h: &[i64], q: u64) -> ModqVector {
        assert_eq!(h.len(), self.rows);
        let l1: u128 = h.iter().map(|x| x.unsigned_abs() as u128).sum();
        if l1 * q as u128 >= 1 << 53 {
            return ModqVector(
                self.data
                    .chunks(self.rows)
                    .map(|col| ModqVector::dot_small_slice(col, h, q))
                    .collect(),
            );
        }
        let hf: Vec<f64> = h.iter().map(|&x| x as f64).collect();
        ModqVector(
            self.data_f64
                .chunks(self.rows)
                .map(|col| {
                    let mut acc = [0f64; 4];
                    let (c4, ct) = col.split_at(col.len() / 4 * 4);
                    let (h4, ht) = hf.split_at(c4.len());
                    for (c, y) in c4.chunks_exact(4).zip(h4.chunks_exact(4)) {
                        for k in 0..4 {
                            acc[k] += c[k] * y[k];
                        }
                    }
                    let tail: f64 = ct.iter().zip(ht).map(|(c, y)| c * y).sum();
                    let total = (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail;
                    reduce_i64(total as i64, q)
                })
                .collect(),
        )
    }
}

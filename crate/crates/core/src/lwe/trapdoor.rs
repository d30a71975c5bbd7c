//! Gadget trapdoors: `A0 = [Abar ; R Abar]`, `T = [-R | I]`, `T A0 = 0`, and
//! with the identity tag `A = A0 + [0 ; G]`, `T A = G`.
//!
//! Inversion computes `T x = G s + T e` and decodes each gadget block from
//! the most significant power of two down. Decoding is exact as long as every
//! coordinate of `T e` is below `q / 6`; with `|e| <= B' = q / (8 sqrt m)` and
//! every row of `T` of squared norm at most `m/2 + 1` this always holds.

use rand::Rng;

use super::params::{LweParams, SquaredBound};
use super::zq::{center, norm2_at_most, reduce_i128, sub_mod, ModqMatrix, ModqVector};

/// `[1, 2, 4, ..., 2^k]` with `k = ceil(log2 q) - 1`.
pub fn gadget_vector(q: u64) -> Vec<u64> {
    let k = 64 - (q - 1).leading_zeros() - 1;
    (0..=k).map(|l| (1u64 << l) % q).collect()
}

/// `G = I_n (x) g`, shape `(n * width) x n`.
pub fn gadget_matrix(p: &LweParams) -> ModqMatrix {
    let g = gadget_vector(p.q);
    let mut out = ModqMatrix::zero(p.n * p.width, p.n);
    for i in 0..p.n {
        for (l, &gl) in g.iter().enumerate() {
            out.row_mut(i * p.width + l)[i] = gl;
        }
    }
    out
}

/// `G s`.
pub fn gadget_apply(p: &LweParams, s: &ModqVector) -> ModqVector {
    let g = gadget_vector(p.q);
    ModqVector(
        s.0.iter()
            .flat_map(|&si| g.iter().map(move |&gl| super::zq::mul_mod(si, gl, p.q)))
            .collect(),
    )
}

/// `A0 + [0 ; G]`.
pub fn tagged_matrix(p: &LweParams, a0: &ModqMatrix) -> ModqMatrix {
    let mut a = a0.clone();
    let g = gadget_vector(p.q);
    for i in 0..p.n {
        for (l, &gl) in g.iter().enumerate() {
            let row = a.row_mut(p.m_bar + i * p.width + l);
            row[i] = super::zq::add_mod(row[i], gl, p.q);
        }
    }
    a
}

/// The ternary matrix `R`; `T = [-R | I]` is derived on use.
#[derive(Clone, PartialEq, Eq)]
pub struct Trapdoor {
    rows: usize,
    cols: usize,
    r: Vec<i8>,
}

impl std::fmt::Debug for Trapdoor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Trapdoor({}x{})", self.rows, self.cols)
    }
}

impl Trapdoor {
    /// Entries are 0 with probability 1/2 and +-1 with probability 1/4 each.
    pub fn sample<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let r = (0..rows * cols)
            .map(|_| match rng.gen_range(0..4u8) {
                0 => 1,
                1 => -1,
                _ => 0,
            })
            .collect();
        Self { rows, cols, r }
    }

    pub fn from_entries(rows: usize, cols: usize, r: Vec<i8>) -> Self {
        assert_eq!(r.len(), rows * cols);
        assert!(r.iter().all(|x| x.abs() <= 1));
        Self { rows, cols, r }
    }

    pub fn entries(&self) -> &[i8] {
        &self.r
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn row(&self, i: usize) -> &[i8] {
        &self.r[i * self.cols..(i + 1) * self.cols]
    }

    /// `R M` for a `cols x k` matrix `M`.
    fn mul_matrix(&self, m: &ModqMatrix, q: u64) -> ModqMatrix {
        let mut out = ModqMatrix::zero(self.rows, m.cols());
        for i in 0..self.rows {
            let mut acc = vec![0i128; m.cols()];
            for (j, &rij) in self.row(i).iter().enumerate() {
                if rij != 0 {
                    for (a, &x) in acc.iter_mut().zip(m.row(j)) {
                        *a += rij as i128 * x as i128;
                    }
                }
            }
            for (o, a) in out.row_mut(i).iter_mut().zip(acc) {
                *o = reduce_i128(a, q);
            }
        }
        out
    }

    /// `T x = x_bot - R x_top mod q`.
    pub fn apply(&self, x: &ModqVector, q: u64) -> Vec<u64> {
        assert_eq!(x.len(), self.rows + self.cols);
        let (top, bot) = x.0.split_at(self.cols);
        (0..self.rows)
            .map(|i| {
                let rx: i128 = self
                    .row(i)
                    .iter()
                    .zip(top)
                    .map(|(&r, &t)| r as i128 * t as i128)
                    .sum();
                sub_mod(bot[i], reduce_i128(rx, q), q)
            })
            .collect()
    }

    /// `T M` for an `m x k` matrix.
    pub fn apply_matrix(&self, m: &ModqMatrix, q: u64) -> ModqMatrix {
        assert_eq!(m.rows(), self.rows + self.cols);
        let top = ModqMatrix::from_rows(
            self.cols,
            m.cols(),
            m.entries()[..self.cols * m.cols()].to_vec(),
        );
        let rt = self.mul_matrix(&top, q);
        let mut out = ModqMatrix::zero(self.rows, m.cols());
        for i in 0..self.rows {
            let bot = m.row(self.cols + i);
            for ((o, &b), &r) in out.row_mut(i).iter_mut().zip(bot).zip(rt.row(i)) {
                *o = sub_mod(b, r, q);
            }
        }
        out
    }

    /// Power-iteration estimate of the largest singular value of `T`,
    /// i.e. `sqrt(lambda_max(R R^t + I))`.
    pub fn s1_estimate(&self) -> f64 {
        let mut v = vec![1.0f64; self.rows];
        let mut lambda = 1.0;
        for _ in 0..60 {
            let mut rtv = vec![0.0f64; self.cols];
            for (i, &vi) in v.iter().enumerate() {
                for (acc, &r) in rtv.iter_mut().zip(self.row(i)) {
                    *acc += r as f64 * vi;
                }
            }
            let w: Vec<f64> = (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&rtv)
                        .map(|(&r, &x)| r as f64 * x)
                        .sum::<f64>()
                        + v[i]
                })
                .collect();
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            lambda = norm / vnorm;
            v = w.into_iter().map(|x| x / norm).collect();
        }
        lambda.sqrt()
    }
}

/// Samples `(T, A0)`, resampling while `s1(T) > 2 sqrt(m)`.
pub fn trapgen<R: Rng + ?Sized>(p: &LweParams, rng: &mut R) -> (Trapdoor, ModqMatrix) {
    assert!(p.m_bar >= p.n * p.width, "m_bar too small for the gadget");
    let limit = 2.0 * (p.m as f64).sqrt();
    loop {
        let a_bar = ModqMatrix::uniform(p.m_bar, p.n, p.q, rng);
        let t = Trapdoor::sample(p.n * p.width, p.m_bar, rng);
        let s1 = t.s1_estimate();
        if s1 > limit {
            log::debug!("trapgen: s1(T) = {s1:.1} above {limit:.1}, resampling");
            continue;
        }
        let ra = t.mul_matrix(&a_bar, p.q);
        let mut data = a_bar.entries().to_vec();
        data.extend_from_slice(ra.entries());
        return (t, ModqMatrix::from_rows(p.m, p.n, data));
    }
}

/// Recovers `X` from `y_l = 2^l X + eps_l mod q`, `l = 0..=k`.
pub fn gadget_decode(y: &[u64], q: u64) -> u64 {
    let k = y.len() - 1;
    let q = q as u128;
    // n / 2^j approximates 2^(k-j) X mod q, with 0 <= n < q 2^j.
    let mut n = y[k] as u128;
    for j in 0..k {
        let scale = 1u128 << (j + 1);
        let modulus = q * scale;
        let target = y[k - 1 - j] as u128 * scale;
        let alt = n + (q << j);
        let dist = |c: u128| {
            let d = c.abs_diff(target);
            d.min(modulus - d)
        };
        if dist(alt) < dist(n) {
            n = alt;
        }
    }
    (((n + (1u128 << k >> 1)) >> k) % q) as u64
}

/// Finds `(s, e)` with `x = A s + e` and `|e|^2` inside `bound`, or `None`.
pub fn gadget_invert(
    p: &LweParams,
    td: &Trapdoor,
    a: &ModqMatrix,
    x: &ModqVector,
    bound: &SquaredBound,
) -> Option<(ModqVector, Vec<i64>)> {
    let y = td.apply(x, p.q);
    let s = ModqVector(y.chunks(p.width).map(|block| gadget_decode(block, p.q)).collect());
    let as_ = a.mul_vec(&s, p.q);
    let e: Vec<i64> = x.0.iter().zip(&as_.0).map(|(&xi, &ai)| center(sub_mod(xi, ai, p.q), p.q)).collect();
    norm2_at_most(&e, bound.max_norm2()).then_some((s, e))
}

//! Banded LU factorisation with partial pivoting.
//!
//! Storage follows the LAPACK `gbtrf` layout: column `j` keeps rows
//! `j - ku - kl ..= j + kl`, the extra `kl` super-diagonals absorbing the
//! fill-in created by row interchanges.

#[derive(Clone, Debug)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    ab: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularPivot(pub usize);

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            ldab,
            ab: vec![0.0; ldab * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        // row offset inside column j
        j * self.ldab + (self.kl + self.ku + i - j)
    }

    #[inline]
    fn in_band(&self, i: usize, j: usize) -> bool {
        i + self.ku + self.kl >= j && i <= j + self.kl
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i < self.n && j < self.n && self.in_band(i, j) {
            self.ab[self.idx(i, j)]
        } else {
            0.0
        }
    }

    /// Adds `v` to entry `(i, j)`, which must lie within the original band
    /// (`j ≤ i + ku`, `i ≤ j + kl`).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(
            j <= i + self.ku && i <= j + self.kl,
            "entry ({i}, {j}) outside band kl={} ku={}",
            self.kl,
            self.ku
        );
        let k = self.idx(i, j);
        self.ab[k] += v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (i, o) in out.iter_mut().enumerate() {
            let lo = i.saturating_sub(self.kl);
            let hi = (i + self.ku).min(self.n - 1);
            for (j, xj) in x.iter().enumerate().take(hi + 1).skip(lo) {
                *o += self.get(i, j) * xj;
            }
        }
        out
    }

    /// Factorises in place and solves `A x = b`; `b` is overwritten with `x`.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_in_place(mut self, b: &mut [f64]) -> Result<(), SingularPivot> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        assert_eq!(b.len(), n);
        let scale = self.ab.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tiny = scale * f64::EPSILON * n as f64;
        let mut piv = vec![0usize; n];
        // rightmost column touched by row k after interchanges
        let mut ju = 0usize;
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).abs();
            for i in k + 1..=last {
                let v = self.ab[self.idx(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= tiny || !best.is_finite() {
                return Err(SingularPivot(k));
            }
            piv[k] = p;
            ju = ju.max((p + ku).min(n - 1));
            if p != k {
                for j in k..=ju {
                    let (a, c) = (self.idx(k, j), self.idx(p, j));
                    self.ab.swap(a, c);
                }
            }
            let pivot = self.ab[self.idx(k, k)];
            for i in k + 1..=last {
                let ik = self.idx(i, k);
                let m = self.ab[ik] / pivot;
                self.ab[ik] = m;
                if m != 0.0 {
                    for j in k + 1..=ju {
                        let kj = self.ab[self.idx(k, j)];
                        if kj != 0.0 {
                            let ij = self.idx(i, j);
                            self.ab[ij] -= m * kj;
                        }
                    }
                }
            }
        }

        // forward: apply interchanges and unit-lower L
        for k in 0..n {
            let p = piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                for (i, bi) in b
                    .iter_mut()
                    .enumerate()
                    .take((k + kl).min(n - 1) + 1)
                    .skip(k + 1)
                {
                    *bi -= self.ab[self.idx(i, k)] * bk;
                }
            }
        }
        // backward: U has bandwidth kl + ku
        for k in (0..n).rev() {
            let hi = (k + kl + ku).min(n - 1);
            let mut s = b[k];
            for (j, bj) in b.iter().enumerate().take(hi + 1).skip(k + 1) {
                s -= self.ab[self.idx(k, j)] * bj;
            }
            b[k] = s / self.ab[self.idx(k, k)];
        }
        Ok(())
    }
}

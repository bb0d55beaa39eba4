//! Factor-once solvers for the constant banded systems of the IMEX schemes.
//!
//! Both factorizations skip pivoting; the scheme matrices are strictly
//! diagonally dominant.

use crate::error::{Error, Result};

/// Thomas factorization of a tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    sub: Vec<f64>,
    inv_pivot: Vec<f64>,
    sup_scaled: Vec<f64>,
}

impl TridiagonalLu {
    /// `sub[i]` multiplies `x[i-1]` in row `i` (`sub[0]` unused), `sup[i]` multiplies `x[i+1]`.
    pub fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        assert!(sub.len() == n && sup.len() == n, "band lengths must match the diagonal");
        let mut inv_pivot = vec![0.0; n];
        let mut sup_scaled = vec![0.0; n];
        let mut prev = 0.0;
        for i in 0..n {
            let pivot = diag[i] - if i > 0 { sub[i] * prev } else { 0.0 };
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularMatrix { row: i });
            }
            inv_pivot[i] = 1.0 / pivot;
            prev = if i + 1 < n { sup[i] * inv_pivot[i] } else { 0.0 };
            sup_scaled[i] = prev;
        }
        Ok(Self { sub: sub.to_vec(), inv_pivot, sup_scaled })
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.len();
        assert_eq!(rhs.len(), n);
        rhs[0] *= self.inv_pivot[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.sub[i] * rhs[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            rhs[i] -= self.sup_scaled[i] * rhs[i + 1];
        }
    }
}

/// Square band matrix with `kl` sub- and `ku` super-diagonals, stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, data: vec![0.0; n * (kl + ku + 1)] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.ku {
            None
        } else {
            Some(i * (self.kl + self.ku + 1) + (j + self.kl - i))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    /// Adds `value` to entry `(i, j)`; panics outside the band.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j).unwrap_or_else(|| panic!("({i}, {j}) outside band"));
        self.data[s] += value;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku + 1).min(self.n);
                (lo..hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }
}

/// In-band LU (Doolittle) of a [`BandedMatrix`]; no fill-in without pivoting.
#[derive(Debug, Clone)]
pub struct BandedLu {
    lu: BandedMatrix,
}

impl BandedLu {
    pub fn factor(matrix: BandedMatrix) -> Result<Self> {
        let mut lu = matrix;
        let (n, kl, ku) = (lu.n, lu.kl, lu.ku);
        for k in 0..n {
            let pivot = lu.get(k, k);
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularMatrix { row: k });
            }
            for i in k + 1..(k + kl + 1).min(n) {
                let s = lu.slot(i, k).unwrap();
                let l = lu.data[s] / pivot;
                lu.data[s] = l;
                if l == 0.0 {
                    continue;
                }
                for j in k + 1..(k + ku + 1).min(n) {
                    let ukj = lu.get(k, j);
                    let t = lu.slot(i, j).unwrap();
                    lu.data[t] -= l * ukj;
                }
            }
        }
        Ok(Self { lu })
    }

    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let lu = &self.lu;
        let n = lu.n;
        assert_eq!(rhs.len(), n);
        for i in 0..n {
            let lo = i.saturating_sub(lu.kl);
            let mut acc = rhs[i];
            for j in lo..i {
                acc -= lu.get(i, j) * rhs[j];
            }
            rhs[i] = acc;
        }
        for i in (0..n).rev() {
            let hi = (i + lu.ku + 1).min(n);
            let mut acc = rhs[i];
            for j in i + 1..hi {
                acc -= lu.get(i, j) * rhs[j];
            }
            rhs[i] = acc / lu.get(i, i);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dominant_band(n: usize, kl: usize, ku: usize, seed: &[f64]) -> BandedMatrix {
        let mut m = BandedMatrix::zeros(n, kl, ku);
        let mut it = seed.iter().cycle();
        for i in 0..n {
            let mut off = 0.0;
            for j in i.saturating_sub(kl)..(i + ku + 1).min(n) {
                if j != i {
                    let v = *it.next().unwrap();
                    m.add(i, j, v);
                    off += v.abs();
                }
            }
            m.add(i, i, off + 1.0 + it.next().unwrap().abs());
        }
        m
    }

    fn to_dense(m: &BandedMatrix) -> Vec<Vec<f64>> {
        (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j)).collect()).collect()
    }

    #[test]
    fn thomas_small_system() {
        // [2 -1 0; -1 2 -1; 0 -1 2] x = [1 0 1] -> x = [1 1 1]
        let lu = TridiagonalLu::factor(&[0.0, -1.0, -1.0], &[2.0; 3], &[-1.0, -1.0, 0.0]).unwrap();
        let mut b = vec![1.0, 0.0, 1.0];
        lu.solve_in_place(&mut b);
        for x in b {
            assert!((x - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn singular_pivot_reported() {
        let err = TridiagonalLu::factor(&[0.0, 1.0], &[1.0, 1.0], &[1.0, 0.0]).unwrap_err();
        assert_eq!(err, Error::SingularMatrix { row: 1 });
        let m = BandedMatrix::zeros(3, 1, 1);
        assert!(BandedLu::factor(m).is_err());
    }

    #[test]
    #[should_panic]
    fn outside_band_panics() {
        BandedMatrix::zeros(4, 1, 1).add(0, 3, 1.0);
    }

    proptest! {
        #[test]
        fn thomas_matches_dense(seed in prop::collection::vec(-2.0f64..2.0, 8..40), n in 3usize..30) {
            let m = dominant_band(n, 1, 1, &seed);
            let sub: Vec<f64> = (0..n).map(|i| if i > 0 { m.get(i, i - 1) } else { 0.0 }).collect();
            let diag: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
            let sup: Vec<f64> = (0..n).map(|i| if i + 1 < n { m.get(i, i + 1) } else { 0.0 }).collect();
            let rhs: Vec<f64> = (0..n).map(|i| seed[i % seed.len()] + i as f64 * 0.1).collect();
            let lu = TridiagonalLu::factor(&sub, &diag, &sup).unwrap();
            let mut x = rhs.clone();
            lu.solve_in_place(&mut x);
            let oracle = dense::solve(to_dense(&m), rhs);
            for (a, b) in x.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn banded_lu_matches_dense(seed in prop::collection::vec(-2.0f64..2.0, 8..40), n in 3usize..30,
                                    kl in 0usize..3, ku in 0usize..3) {
            let m = dominant_band(n, kl, ku, &seed);
            let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
            let lu = BandedLu::factor(m.clone()).unwrap();
            let mut x = rhs.clone();
            lu.solve_in_place(&mut x);
            let oracle = dense::solve(to_dense(&m), rhs.clone());
            for (a, b) in x.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-12);
            }
            let back = m.mul_vec(&x);
            for (a, b) in back.iter().zip(&rhs) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

use num_complex::Complex64;

use super::space::FockSpace;
use crate::modes::Mode;
use crate::params::RamanParams;

/// Square sparse matrix in compressed-row form.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl SparseOperator {
    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != Complex64::new(0.0, 0.0));

        let mut row_ptr = vec![0; dim + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        SparseOperator {
            dim,
            row_ptr,
            cols: merged.iter().map(|&(_, c, _)| c).collect(),
            vals: merged.iter().map(|&(_, _, v)| v).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&col) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim)
            .flat_map(move |r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k])))
    }

    /// `y = A x`
    pub fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        self.apply_into(x, &mut y);
        y
    }

    pub fn adjoint(&self) -> SparseOperator {
        let t = self.triplets().map(|(r, c, v)| (c, r, v.conj())).collect();
        SparseOperator::from_triplets(self.dim, t)
    }

    /// `max |A - A†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.triplets()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Largest absolute row sum; bounds the spectral norm of a Hermitian matrix.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                self.vals[self.row_ptr[r]..self.row_ptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Diagonal entries.
    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, r)).collect()
    }
}

/// Assembles the four-mode Raman Hamiltonian on `space`
///
/// ```text
/// H = sum_m w_m N_m + g (a b† c† + h.c.) + chi (a c d† + h.c.)
/// ```
///
/// with the frame's mode frequencies. Ladder moves that leave the truncated
/// space are dropped, which keeps the matrix exactly Hermitian.
pub fn build_hamiltonian(p: &RamanParams, space: &FockSpace) -> SparseOperator {
    let w = p.mode_frequencies();
    let dim = space.dim();
    let mut trip = Vec::with_capacity(5 * dim);
    let sq = |n: usize| (n as f64).sqrt();
    for col in 0..dim {
        let n = space.occupations(col);
        let diag: f64 = (0..4).map(|m| w[m] * n[m] as f64).sum();
        if diag != 0.0 {
            trip.push((col, col, Complex64::new(diag, 0.0)));
        }
        let [na, nb, nc, nd] = n;
        // a b† c† and its conjugate a† b c
        if p.g != 0.0 && na > 0 {
            if let Some(row) = space.index([na - 1, nb + 1, nc + 1, nd]) {
                let v = p.g * sq(na) * sq(nb + 1) * sq(nc + 1);
                trip.push((row, col, Complex64::new(v, 0.0)));
                trip.push((col, row, Complex64::new(v, 0.0)));
            }
        }
        // a c d† and its conjugate a† c† d
        if p.chi != 0.0 && na > 0 && nc > 0 {
            if let Some(row) = space.index([na - 1, nb, nc - 1, nd + 1]) {
                let v = p.chi * sq(na) * sq(nc) * sq(nd + 1);
                trip.push((row, col, Complex64::new(v, 0.0)));
                trip.push((col, row, Complex64::new(v, 0.0)));
            }
        }
    }
    SparseOperator::from_triplets(dim, trip)
}

/// Diagonal number operator of `mode` as a vector of occupations.
pub fn number_diagonal(space: &FockSpace, mode: Mode) -> Vec<f64> {
    (0..space.dim()).map(|i| space.level(i, mode) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Frame;

    #[test]
    fn zero_couplings_and_frequencies_give_zero_operator() {
        let p = RamanParams {
            g: 0.0,
            chi: 0.0,
            d_omega1: 0.0,
            d_omega2: 0.0,
            frame: Frame::CoRotating,
        };
        let h = build_hamiltonian(&p, &FockSpace::uniform(3).unwrap());
        assert_eq!(h.nnz(), 0);
    }

    #[test]
    fn stokes_matrix_element() {
        let p = RamanParams {
            g: 2.5,
            chi: 0.0,
            ..RamanParams::paper()
        };
        let s = FockSpace::uniform(2).unwrap();
        let h = build_hamiltonian(&p, &s);
        let from = s.index([1, 0, 0, 0]).unwrap();
        let to = s.index([0, 1, 1, 0]).unwrap();
        assert_eq!(h.get(to, from), Complex64::new(2.5, 0.0));
        assert_eq!(h.get(from, to), Complex64::new(2.5, 0.0));
    }

    #[test]
    fn hermitian_and_sparse() {
        let s = FockSpace::new([4, 3, 5, 2]).unwrap();
        let h = build_hamiltonian(&RamanParams::paper(), &s);
        assert_eq!(h.hermiticity_defect(), 0.0);
        assert_eq!(h, h.adjoint());
        assert!(h.nnz() <= 9 * s.dim());
    }

    #[test]
    fn csr_apply_matches_triplets() {
        let t = vec![
            (0, 1, Complex64::new(1.0, 2.0)),
            (2, 0, Complex64::new(-3.0, 0.0)),
            (0, 1, Complex64::new(1.0, 0.0)),
            (1, 1, Complex64::new(0.0, 0.0)),
        ];
        let a = SparseOperator::from_triplets(3, t);
        assert_eq!(a.nnz(), 2);
        let y = a.apply(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(5.0, 0.0),
        ]);
        assert_eq!(y[0], Complex64::new(2.0, 2.0) * Complex64::new(0.0, 1.0));
        assert_eq!(y[1], Complex64::new(0.0, 0.0));
        assert_eq!(y[2], Complex64::new(-3.0, 0.0));
    }
}

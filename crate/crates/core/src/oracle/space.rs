use crate::error::{Error, Result};
use crate::modes::Mode;

/// Largest basis accepted by [`FockSpace::new`]; 2^22 states is 64 MiB per
/// complex vector.
pub const DEFAULT_MAX_DIM: usize = 1 << 22;

/// Truncated number basis of the four modes.
///
/// Basis states are ordered lexicographically in `(n_a, n_b, n_c, n_d)` with
/// `n_d` varying fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    cutoffs: [usize; 4],
    strides: [usize; 4],
    dim: usize,
}

impl FockSpace {
    pub fn new(cutoffs: [usize; 4]) -> Result<Self> {
        Self::with_limit(cutoffs, DEFAULT_MAX_DIM)
    }

    /// Same cutoff on every mode.
    pub fn uniform(cutoff: usize) -> Result<Self> {
        Self::new([cutoff; 4])
    }

    pub fn with_limit(cutoffs: [usize; 4], max_dim: usize) -> Result<Self> {
        let mut strides = [0; 4];
        let mut dim: usize = 1;
        for m in (0..4).rev() {
            strides[m] = dim;
            dim = cutoffs[m]
                .checked_add(1)
                .and_then(|levels| dim.checked_mul(levels))
                .ok_or(Error::DimensionTooLarge {
                    dim: usize::MAX,
                    limit: max_dim,
                })?;
        }
        if dim > max_dim {
            return Err(Error::DimensionTooLarge { dim, limit: max_dim });
        }
        Ok(FockSpace { cutoffs, strides, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoffs(&self) -> [usize; 4] {
        self.cutoffs
    }

    pub fn cutoff(&self, mode: Mode) -> usize {
        self.cutoffs[mode.index()]
    }

    pub fn stride(&self, mode: Mode) -> usize {
        self.strides[mode.index()]
    }

    /// Flat position of an occupation tuple; `None` if any level exceeds its cutoff.
    pub fn index(&self, n: [usize; 4]) -> Option<usize> {
        let mut idx = 0;
        for ((&k, &cutoff), &stride) in n.iter().zip(&self.cutoffs).zip(&self.strides) {
            if k > cutoff {
                return None;
            }
            idx += k * stride;
        }
        Some(idx)
    }

    pub fn occupations(&self, mut idx: usize) -> [usize; 4] {
        debug_assert!(idx < self.dim);
        self.strides.map(|stride| {
            let k = idx / stride;
            idx %= stride;
            k
        })
    }

    /// Occupation of `mode` at flat position `idx`.
    pub fn level(&self, idx: usize, mode: Mode) -> usize {
        let m = mode.index();
        (idx / self.strides[m]) % (self.cutoffs[m] + 1)
    }
}

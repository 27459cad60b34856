//! Operator basis σᵢⱼ = |i⟩⟨j| for the four atomic levels.
//!
//! Levels are 0-based in code: level 1 of the model is index 0, level 4 is
//! index 3. The 16 operators are ordered row-major by (i, j).

use crate::{Op, C64};

pub const LEVELS: usize = 4;
pub const DIM: usize = LEVELS * LEVELS;
/// Dimension of the traceless fluctuation subspace (σ₄₄ eliminated).
pub const REDUCED_DIM: usize = DIM - 1;

#[derive(Debug, Clone, Copy, Default)]
pub struct AtomicBasis;

impl AtomicBasis {
    #[inline]
    pub const fn index(i: usize, j: usize) -> usize {
        i * LEVELS + j
    }

    #[inline]
    pub const fn levels(index: usize) -> (usize, usize) {
        (index / LEVELS, index % LEVELS)
    }

    /// Index of σⱼᵢ, the adjoint of σᵢⱼ.
    #[inline]
    pub const fn adjoint(index: usize) -> usize {
        let (i, j) = Self::levels(index);
        Self::index(j, i)
    }

    pub fn operator(index: usize) -> Op {
        let (i, j) = Self::levels(index);
        sigma(i, j)
    }

    pub fn population_indices() -> [usize; LEVELS] {
        [0, 5, 10, 15]
    }
}

/// |i⟩⟨j| with 0-based level indices.
pub fn sigma(i: usize, j: usize) -> Op {
    let mut m = Op::zeros();
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_bijective_and_adjoint_is_involution() {
        let mut seen = [false; DIM];
        for i in 0..LEVELS {
            for j in 0..LEVELS {
                let k = AtomicBasis::index(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(AtomicBasis::levels(k), (i, j));
                assert_eq!(AtomicBasis::adjoint(AtomicBasis::adjoint(k)), k);
                assert_eq!(AtomicBasis::operator(k).adjoint(), AtomicBasis::operator(AtomicBasis::adjoint(k)));
            }
        }
    }
}

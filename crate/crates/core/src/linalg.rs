use nalgebra::{DMatrix, DVector};

use crate::atom::{AtomicBasis, DIM, LEVELS};
use crate::{Op, C64};

pub(crate) fn vec_row_major(m: &Op) -> DVector<C64> {
    DVector::from_iterator(
        DIM,
        (0..DIM).map(|r| {
            let (i, j) = AtomicBasis::levels(r);
            m[(i, j)]
        }),
    )
}

pub(crate) fn unvec_row_major(v: &DVector<C64>) -> Op {
    let mut m = Op::zeros();
    for r in 0..DIM {
        let (i, j) = AtomicBasis::levels(r);
        m[(i, j)] = v[r];
    }
    m
}

/// One classical RK4 step for a linear ODE ẋ = Lx is multiplication by the
/// degree-4 Taylor polynomial of e^{hL}.
pub(crate) fn rk4_propagator(l: &DMatrix<C64>, h: f64) -> DMatrix<C64> {
    let n = l.nrows();
    let hl = l * C64::new(h, 0.0);
    let mut term = DMatrix::<C64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=4 {
        term = &term * &hl * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    sum
}

/// `base`^`n` by binary exponentiation.
pub(crate) fn matrix_power(base: &DMatrix<C64>, mut n: u64) -> DMatrix<C64> {
    let size = base.nrows();
    let mut result = DMatrix::<C64>::identity(size, size);
    let mut square = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &square;
        }
        n >>= 1;
        if n > 0 {
            square = &square * &square;
        }
    }
    result
}

pub(crate) fn hermitian_part(m: &Op) -> Op {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub(crate) fn min_eigenvalue_hermitian(m: &Op) -> f64 {
    hermitian_part(m).symmetric_eigenvalues().min()
}

pub(crate) fn trace(m: &Op) -> C64 {
    (0..LEVELS).map(|k| m[(k, k)]).sum()
}

/// Eigenvalues of a general complex square matrix.
pub(crate) fn eigenvalues(m: &DMatrix<C64>) -> Vec<C64> {
    m.clone().schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
}

pub(crate) fn sorted_singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(f64::total_cmp);
    s
}

/// Largest entry modulus.
pub(crate) fn max_abs<'a>(entries: impl IntoIterator<Item = &'a C64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

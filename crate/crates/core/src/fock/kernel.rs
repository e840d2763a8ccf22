//! Strided kernels that apply local operators to flat product-basis arrays.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::ModeRegister;

/// Flat offsets of every fiber start for the given mode positions, i.e. all
/// basis indices whose digits on `modes` are zero.
pub(crate) fn fiber_bases(register: &ModeRegister, modes: &[usize]) -> Vec<usize> {
    let dims = register.dims();
    let strides = register.strides();
    let others: Vec<usize> = (0..dims.len()).filter(|i| !modes.contains(i)).collect();
    let count: usize = others.iter().map(|&i| dims[i]).product();
    let mut bases = Vec::with_capacity(count);
    let mut digits = vec![0usize; others.len()];
    for _ in 0..count {
        bases.push(others.iter().zip(&digits).map(|(&m, &d)| d * strides[m]).sum());
        for pos in (0..others.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < dims[others[pos]] {
                break;
            }
            digits[pos] = 0;
        }
    }
    bases
}

/// `data ← (I ⊗ op ⊗ I) data` for a single-mode operator.
pub(crate) fn apply_single(data: &mut [C64], bases: &[usize], stride: usize, op: &DMatrix<C64>) {
    let dim = op.nrows();
    let zero = C64::new(0.0, 0.0);
    let diagonal = (0..dim).all(|c| (0..dim).all(|r| r == c || op[(r, c)] == zero));
    if diagonal {
        for &base in bases {
            for k in 0..dim {
                data[base + k * stride] *= op[(k, k)];
            }
        }
        return;
    }
    let mut buf = vec![zero; dim];
    for &base in bases {
        for (k, b) in buf.iter_mut().enumerate() {
            *b = data[base + k * stride];
        }
        for row in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for (col, b) in buf.iter().enumerate() {
                acc += op[(row, col)] * b;
            }
            data[base + row * stride] = acc;
        }
    }
}

/// One invariant block of a two-mode operator: the basis pairs it spans and the
/// dense matrix acting on them.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub(crate) basis: Vec<(usize, usize)>,
    pub(crate) matrix: DMatrix<C64>,
}

pub(crate) fn apply_blocks(
    data: &mut [C64],
    bases: &[usize],
    strides: (usize, usize),
    blocks: &[Block],
) {
    let mut buf = Vec::new();
    for &base in bases {
        for block in blocks {
            buf.clear();
            buf.extend(block.basis.iter().map(|&(x, y)| data[base + x * strides.0 + y * strides.1]));
            for (row, &(x, y)) in block.basis.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (col, b) in buf.iter().enumerate() {
                    acc += block.matrix[(row, col)] * b;
                }
                data[base + x * strides.0 + y * strides.1] = acc;
            }
        }
    }
}

/// Applies a column-vector kernel to every column of a square matrix, then to
/// every row from the adjoint side: `M ← K M K†`.
pub(crate) fn conjugate_by<F>(matrix: &mut DMatrix<C64>, mut kernel: F)
where
    F: FnMut(&mut [C64]),
{
    let n = matrix.nrows();
    for col in matrix.as_mut_slice().chunks_mut(n) {
        kernel(col);
    }
    let mut adj = matrix.adjoint();
    for col in adj.as_mut_slice().chunks_mut(n) {
        kernel(col);
    }
    *matrix = adj.adjoint();
}

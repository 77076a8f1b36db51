//! Backtracking enumeration of one-entry-per-row selections of a sparsified
//! matrix, with forward pruning.
//!
//! Fixing entry `ã_ij` in row `i` (with `p_i ≠ 𝟘`) forces `x_j >= αΔ⁻¹ã_ij⁻¹p_i`.
//! Any later row `k` with `ã_kj >= ã_ij p_i⁻¹ p_k` is then satisfied through
//! column `j` alone, so its other entries are dropped before the search
//! reaches it. Rows with `p_i = 𝟘` carry no constraint and are pinned to
//! their leftmost entry.

use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Vector};
use crate::semifield::{MaxPlus, Scalar, Semifield};

/// A matrix keeping one non-`𝟘` entry per row of a base matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelectionMatrix {
    pub base_shape: (usize, usize),
    /// For each row, the column of the retained entry.
    pub chosen_col: Vec<usize>,
}

impl SelectionMatrix {
    /// The selection as a matrix: the chosen entries of `base`, `𝟘` elsewhere.
    pub fn materialize<S: Semifield>(&self, base: &Matrix<S>) -> Matrix<S> {
        let (m, n) = self.base_shape;
        debug_assert_eq!(base.shape(), self.base_shape);
        let mut out = Matrix::zeros(m, n);
        for (i, &j) in self.chosen_col.iter().enumerate() {
            out.set(i, j, base.get(i, j).clone());
        }
        out
    }

    /// Every chosen entry is non-`𝟘` in `base`.
    pub fn is_valid_for<S: Semifield>(&self, base: &Matrix<S>) -> bool {
        base.shape() == self.base_shape
            && self.chosen_col.len() == base.rows()
            && self
                .chosen_col
                .iter()
                .enumerate()
                .all(|(i, &j)| j < base.cols() && base.get(i, j).is_finite())
    }
}

/// `|𝒜|`: product of the per-row counts of non-`𝟘` entries (saturating).
pub fn selection_count<S: Semifield>(sparse: &Matrix<S>) -> u128 {
    (0..sparse.rows())
        .map(|i| sparse.row(i).iter().filter(|a| a.is_finite()).count() as u128)
        .fold(1u128, u128::saturating_mul)
}

struct Frame {
    row: usize,
    mask: Vec<bool>,
    candidates: Vec<usize>,
    next: usize,
}

/// Lazy stream of selections in depth-first order: rows top to bottom,
/// columns left to right within a row.
pub struct Selections<'a, S: Semifield = MaxPlus> {
    sparse: &'a Matrix<S>,
    p: &'a Vector<S>,
    prune: bool,
    stack: Vec<Frame>,
}

impl<'a, S: Semifield> Selections<'a, S> {
    pub fn new(sparse: &'a Matrix<S>, p: &'a Vector<S>, prune: bool) -> Self {
        let mask = sparse.entries().iter().map(Scalar::is_finite).collect();
        let mut it = Selections {
            sparse,
            p,
            prune,
            stack: Vec::new(),
        };
        let root = it.frame(0, mask);
        it.stack.push(root);
        it
    }

    fn frame(&self, row: usize, mask: Vec<bool>) -> Frame {
        let n = self.sparse.cols();
        let mut candidates: Vec<usize> = (0..n).filter(|&j| mask[row * n + j]).collect();
        if self.p[row].is_zero() {
            candidates.truncate(1);
        }
        Frame {
            row,
            mask,
            candidates,
            next: 0,
        }
    }

    fn fix(&self, mask: &mut [bool], row: usize, col: usize) {
        let n = self.sparse.cols();
        for j in 0..n {
            mask[row * n + j] = j == col;
        }
    }

    fn prune_below(&self, mask: &mut [bool], row: usize, col: usize) {
        let p_i = &self.p[row];
        if p_i.is_zero() {
            return;
        }
        let n = self.sparse.cols();
        // ã_ij p_i⁻¹
        let scaled = S::mul(self.sparse.get(row, col), &S::conj(p_i));
        for k in row + 1..self.sparse.rows() {
            let p_k = &self.p[k];
            if p_k.is_zero() || !mask[k * n + col] {
                continue;
            }
            if S::le(&S::mul(&scaled, p_k), self.sparse.get(k, col)) {
                self.fix(mask, k, col);
            }
        }
    }

    fn emit(&self, mask: &[bool]) -> SelectionMatrix {
        let n = self.sparse.cols();
        let chosen_col = (0..self.sparse.rows())
            .map(|i| {
                (0..n)
                    .find(|&j| mask[i * n + j])
                    .expect("every row is fixed before emission")
            })
            .collect();
        SelectionMatrix {
            base_shape: self.sparse.shape(),
            chosen_col,
        }
    }
}

impl<S: Semifield> Iterator for Selections<'_, S> {
    type Item = SelectionMatrix;

    fn next(&mut self) -> Option<SelectionMatrix> {
        let last_row = self.sparse.rows() - 1;
        loop {
            let top = self.stack.last_mut()?;
            if top.next >= top.candidates.len() {
                self.stack.pop();
                continue;
            }
            let col = top.candidates[top.next];
            top.next += 1;
            let row = top.row;
            let mut mask = top.mask.clone();
            self.fix(&mut mask, row, col);
            if self.prune {
                self.prune_below(&mut mask, row, col);
            }
            if row == last_row {
                return Some(self.emit(&mask));
            }
            let child = self.frame(row + 1, mask);
            self.stack.push(child);
        }
    }
}

/// Stream of selection matrices of `sparse`, pruned as described in the
/// module docs.
pub fn enumerate_selections<'a, S: Semifield>(
    sparse: &'a Matrix<S>,
    p: &'a Vector<S>,
) -> Selections<'a, S> {
    Selections::new(sparse, p, true)
}

/// Every member of `𝒜` (rows with `p_i = 𝟘` still pinned), without pruning.
pub fn enumerate_all_selections<'a, S: Semifield>(
    sparse: &'a Matrix<S>,
    p: &'a Vector<S>,
) -> Selections<'a, S> {
    Selections::new(sparse, p, false)
}

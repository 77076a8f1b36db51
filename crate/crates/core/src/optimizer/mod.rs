//! Minimisation of `q⁻x (Ax)⁻p` over regular `x`.
//!
//! The minimum is `Δ = (Aq)⁻p`. Solutions are characterised by
//! `q⁻x = α, Ax >= αΔ⁻¹p`; dropping entries of `A` below the threshold
//! `Δ⁻¹p_i q_j⁻¹` changes neither `Δ` nor the solution set. Every solution is
//! then a combination of the columns of `I ⊕ Δ⁻¹A₁⁻pq⁻` for some selection
//! `A₁` of the sparsified matrix; collecting those columns over the pruned
//! enumeration and removing dependent ones yields the complete solution `S₀`.

mod selection;

use std::sync::OnceLock;

pub use selection::{
    enumerate_all_selections, enumerate_selections, selection_count, SelectionMatrix, Selections,
};

use crate::error::{Error, Result};
use crate::inequality::{interval_to_generators, GeneratorSet, IntervalSet};
use crate::linalg::{reduce_to_independent, Matrix, Vector};
use crate::semifield::{MaxPlus, Scalar, Semifield};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// The problem data `(A, p, q)` with lazily cached `Δ` and sparsified matrix.
#[derive(Debug, Clone)]
pub struct SpanProblem<S: Semifield = MaxPlus> {
    a: Matrix<S>,
    p: Vector<S>,
    q: Vector<S>,
    cached_delta: OnceLock<Scalar>,
    cached_sparse: OnceLock<Matrix<S>>,
}

impl<S: Semifield> SpanProblem<S> {
    /// `A` must be row-regular, `p` nonzero and `q` regular.
    pub fn new(a: Matrix<S>, p: Vector<S>, q: Vector<S>) -> Result<Self> {
        if a.rows() != p.dim() || a.cols() != q.dim() {
            return Err(Error::shape("span problem", a.shape(), (p.dim(), q.dim())));
        }
        if !a.is_row_regular() {
            return Err(Error::NotRowRegular("A".into()));
        }
        if p.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !q.is_regular() {
            return Err(Error::NotRegularVector("q".into()));
        }
        Ok(SpanProblem {
            a,
            p,
            q,
            cached_delta: OnceLock::new(),
            cached_sparse: OnceLock::new(),
        })
    }

    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn p(&self) -> &Vector<S> {
        &self.p
    }

    pub fn q(&self) -> &Vector<S> {
        &self.q
    }

    pub fn delta(&self) -> &Scalar {
        self.cached_delta.get_or_init(|| {
            let aq = self.a.mul_vec(&self.q).expect("shapes checked on construction");
            aq.conj_dot(&self.p).expect("shapes checked on construction")
        })
    }

    pub fn sparse(&self) -> &Matrix<S> {
        self.cached_sparse.get_or_init(|| {
            let threshold = self.threshold_matrix();
            let (m, n) = self.a.shape();
            let mut out = self.a.clone();
            for i in 0..m {
                for j in 0..n {
                    if !S::le(threshold.get(i, j), self.a.get(i, j)) {
                        out.set(i, j, Scalar::Zero);
                    }
                }
            }
            out
        })
    }

    /// `Δ⁻¹ p q⁻`.
    pub fn threshold_matrix(&self) -> Matrix<S> {
        self.p.outer(&self.q.conj()).scale(&S::conj(self.delta()))
    }

    /// Same problem with `A` replaced by its sparsified matrix.
    pub fn sparsified(&self) -> Self {
        let out = SpanProblem::new(self.sparse().clone(), self.p.clone(), self.q.clone())
            .expect("sparsification keeps A row-regular");
        let _ = out.cached_delta.set(self.delta().clone());
        out
    }
}

/// Solver knobs shared by the library entry points and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Upper limit on enumerated selection matrices.
    pub budget: usize,
    /// Enumerate all of `𝒜` instead of the pruned family.
    pub exhaustive: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
            exhaustive: false,
        }
    }
}

/// Result of [`complete_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteSolution<S: Semifield = MaxPlus> {
    pub delta: Scalar,
    /// `S₀`: independent generators of all solutions.
    pub generators: GeneratorSet<S>,
    /// Selections visited, in enumeration order.
    pub selections: Vec<SelectionMatrix>,
    /// Columns of every `S₁` before reduction, grouped by column index.
    pub combined: Matrix<S>,
    pub enumerated_count: usize,
    /// `|𝒜|` minus the selections visited.
    pub pruned_count: u128,
}

fn checked_image<S: Semifield>(prob: &SpanProblem<S>, x: &Vector<S>) -> Result<Vector<S>> {
    if x.dim() != prob.q.dim() {
        return Err(Error::shape("objective", prob.a.shape(), (x.dim(), 1)));
    }
    if x.is_zero() {
        return Err(Error::NotRegularVector("x".into()));
    }
    let ax = prob.a.mul_vec(x)?;
    let uncovered = ax
        .iter()
        .zip(prob.p.iter())
        .any(|(y, p)| y.is_zero() && p.is_finite());
    if uncovered {
        return Err(Error::NotRegularVector("Ax on the support of p".into()));
    }
    Ok(ax)
}

/// `q⁻x (Ax)⁻p`.
///
/// Defined for regular `x`, and more generally for any nonzero `x` whose image
/// `Ax` is finite wherever `p` is (so generator columns with `𝟘` entries can be
/// evaluated as limits of regular vectors).
pub fn objective<S: Semifield>(prob: &SpanProblem<S>, x: &Vector<S>) -> Result<Scalar> {
    let ax = checked_image(prob, x)?;
    Ok(S::mul(&prob.q.conj_dot(x)?, &ax.conj_dot(&prob.p)?))
}

/// `Δ = (Aq)⁻p`.
pub fn minimum_value<S: Semifield>(prob: &SpanProblem<S>) -> Scalar {
    prob.delta().clone()
}

pub fn sparsify<S: Semifield>(prob: &SpanProblem<S>) -> Matrix<S> {
    prob.sparse().clone()
}

/// Bounds `x′ = Δ⁻¹Â⁻p` and `x″ = q` of the extended solution
/// `αx′ <= x <= αx″`.
pub fn extended_interval<S: Semifield>(prob: &SpanProblem<S>) -> IntervalSet<S> {
    let lower = prob
        .sparse()
        .conj_transpose()
        .and_then(|t| t.mul_vec(&prob.p))
        .expect("sparsified matrix is row-regular")
        .scale(&S::conj(prob.delta()));
    IntervalSet::new(lower, prob.q.clone()).expect("Δ⁻¹Â⁻p <= q holds after sparsification")
}

/// `I ⊕ Δ⁻¹Â⁻pq⁻`.
pub fn extended_solution<S: Semifield>(prob: &SpanProblem<S>) -> GeneratorSet<S> {
    interval_to_generators(&extended_interval(prob))
}

/// `S₁ = I ⊕ Δ⁻¹A₁⁻pq⁻` for the selection `A₁` of the sparsified matrix.
pub fn selection_generators<S: Semifield>(
    sel: &SelectionMatrix,
    prob: &SpanProblem<S>,
) -> Result<GeneratorSet<S>> {
    let sparse = prob.sparse();
    if !sel.is_valid_for(sparse) {
        return Err(Error::Validation(
            "selection does not pick non-zero entries of the sparsified matrix".into(),
        ));
    }
    let lower = sel
        .materialize(sparse)
        .conj_transpose()?
        .mul_vec(&prob.p)?
        .scale(&S::conj(prob.delta()));
    Ok(interval_to_generators(&IntervalSet::new(lower, prob.q.clone())?))
}

pub fn complete_solution<S: Semifield>(prob: &SpanProblem<S>) -> Result<CompleteSolution<S>> {
    complete_solution_with(prob, &SolveOptions::default())
}

/// Sparsify, enumerate selections, gather the columns of every `S₁` and keep
/// an independent subset.
///
/// Columns are gathered column-index first: column 1 of each `S₁` in
/// enumeration order, then column 2, and so on.
pub fn complete_solution_with<S: Semifield>(
    prob: &SpanProblem<S>,
    opts: &SolveOptions,
) -> Result<CompleteSolution<S>> {
    let sparse = prob.sparse();
    let stream = if opts.exhaustive {
        enumerate_all_selections(sparse, &prob.p)
    } else {
        enumerate_selections(sparse, &prob.p)
    };

    let mut selections = Vec::new();
    for sel in stream {
        if selections.len() == opts.budget {
            return Err(Error::EnumerationBudgetExceeded {
                budget: opts.budget,
                partial: selections,
            });
        }
        selections.push(sel);
    }

    let blocks = selections
        .iter()
        .map(|sel| selection_generators(sel, prob))
        .collect::<Result<Vec<_>>>()?;
    let n = prob.q.dim();
    let mut columns = Vec::with_capacity(n * blocks.len());
    for j in 0..n {
        for block in &blocks {
            columns.push(block.generators().column(j));
        }
    }
    let combined = Matrix::from_columns(&columns)?;
    let (s0, _) = reduce_to_independent(&combined)?;

    let enumerated_count = selections.len();
    Ok(CompleteSolution {
        delta: prob.delta().clone(),
        generators: GeneratorSet::new(s0)?,
        pruned_count: selection_count(sparse).saturating_sub(enumerated_count as u128),
        enumerated_count,
        selections,
        combined,
    })
}

/// Checks `Ax >= αΔ⁻¹p` with `α = q⁻x`, which holds iff `x` attains `Δ`.
pub fn verify_optimal<S: Semifield>(prob: &SpanProblem<S>, x: &Vector<S>) -> Result<bool> {
    let ax = checked_image(prob, x)?;
    let alpha = prob.q.conj_dot(x)?;
    let rhs = prob.p.scale(&S::mul(&alpha, &S::conj(prob.delta())));
    Ok(rhs.le(&ax))
}

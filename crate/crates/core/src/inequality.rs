//! Closed-form solutions of `Ax <= d`, `Ax <= x` and the two-sided bound
//! `αg <= x <= αh`.

use crate::error::{Error, Result};
use crate::linalg::{residual, Matrix, Vector};
use crate::semifield::{MaxPlus, Semifield};

/// The set `{x : αg <= x <= αh for some α > 𝟘}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet<S: Semifield = MaxPlus> {
    lower: Vector<S>,
    upper: Vector<S>,
}

impl<S: Semifield> IntervalSet<S> {
    /// `upper` must be regular and `lower <= upper`.
    pub fn new(lower: Vector<S>, upper: Vector<S>) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::shape(
                "interval",
                (lower.dim(), 1),
                (upper.dim(), 1),
            ));
        }
        if !upper.is_regular() {
            return Err(Error::NotRegularVector("interval upper bound".into()));
        }
        if !lower.le(&upper) {
            return Err(Error::Validation("interval lower bound exceeds upper bound".into()));
        }
        Ok(IntervalSet { lower, upper })
    }

    pub fn lower(&self) -> &Vector<S> {
        &self.lower
    }

    pub fn upper(&self) -> &Vector<S> {
        &self.upper
    }
}

/// A solution span `{S v : v regular, v <= bound}`; the bound is optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet<S: Semifield = MaxPlus> {
    generators: Matrix<S>,
    coeff_upper_bound: Option<Vector<S>>,
}

impl<S: Semifield> GeneratorSet<S> {
    pub fn new(generators: Matrix<S>) -> Result<Self> {
        if let Some(j) = generators.columns().position(|c| c.is_zero()) {
            return Err(Error::ZeroColumn(j));
        }
        Ok(GeneratorSet {
            generators,
            coeff_upper_bound: None,
        })
    }

    pub fn with_bound(generators: Matrix<S>, bound: Vector<S>) -> Result<Self> {
        if bound.dim() != generators.cols() {
            return Err(Error::shape(
                "coefficient bound",
                generators.shape(),
                (bound.dim(), 1),
            ));
        }
        if !bound.is_regular() {
            return Err(Error::NotRegularVector("coefficient bound".into()));
        }
        let mut set = Self::new(generators)?;
        set.coeff_upper_bound = Some(bound);
        Ok(set)
    }

    pub fn generators(&self) -> &Matrix<S> {
        &self.generators
    }

    pub fn coeff_upper_bound(&self) -> Option<&Vector<S>> {
        self.coeff_upper_bound.as_ref()
    }

    pub fn len(&self) -> usize {
        self.generators.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `S v`.
    pub fn combine(&self, v: &Vector<S>) -> Result<Vector<S>> {
        self.generators.mul_vec(v)
    }

    pub fn contains(&self, x: &Vector<S>) -> Result<bool> {
        membership(self, x)
    }
}

/// Greatest solution `(d⁻A)⁻` of `A x <= d`; every `x` below it also solves
/// the inequality.
pub fn solve_upper_bound<S: Semifield>(a: &Matrix<S>, d: &Vector<S>) -> Result<Vector<S>> {
    if !a.is_column_regular() {
        return Err(Error::NotColumnRegular("constraint matrix".into()));
    }
    if !d.is_regular() {
        return Err(Error::NotRegularVector("right-hand side".into()));
    }
    Ok(a.left_mul_vec(&d.conj())?.conj())
}

/// Kleene star `A*`, whose regular combinations `A* u` are exactly the regular
/// solutions of `A x <= x`.
pub fn solve_subinvariant<S: Semifield>(a: &Matrix<S>) -> Result<Matrix<S>> {
    a.kleene_star()
}

/// Generator form `I ⊕ g h⁻` of an interval set.
pub fn interval_to_generators<S: Semifield>(iv: &IntervalSet<S>) -> GeneratorSet<S> {
    let n = iv.lower.dim();
    let generators = Matrix::identity(n)
        .add(&iv.lower.outer(&iv.upper.conj()))
        .expect("outer product of equal-length vectors is square");
    GeneratorSet {
        generators,
        coeff_upper_bound: None,
    }
}

/// Whether `x = S v` for some regular `v` (with `v <= bound` when a bound is
/// present).
///
/// Uses the greatest coefficient vector `v̂` with `S v̂ <= x`, clipped by the
/// bound: any admissible `v` lies below the clipped `v̂`, so `x` is reachable
/// iff the clipped `v̂` reproduces it.
pub fn membership<S: Semifield>(gs: &GeneratorSet<S>, x: &Vector<S>) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let s = &gs.generators;
    if s.rows() != x.dim() {
        return Err(Error::shape("membership", s.shape(), (x.dim(), 1)));
    }
    let mut v = residual(s, x)?;
    if let Some(bound) = &gs.coeff_upper_bound {
        v = v.meet(bound)?;
    }
    Ok(v.is_regular() && s.mul_vec(&v)? == *x)
}

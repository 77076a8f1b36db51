//! Independent reference arithmetic for the integration tests: max-plus over
//! `Option<i64>` (`None` is −∞), written without any of the crate's algebra,
//! plus seeded generators of random instances.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropspan::{Matrix, Scalar, Vector};

pub type T = Option<i64>;

pub fn add(a: T, b: T) -> T {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

pub fn mul(a: T, b: T) -> T {
    Some(a? + b?)
}

pub fn matvec(a: &[Vec<T>], x: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(None, |acc, (&aij, &xj)| add(acc, mul(aij, xj))))
        .collect()
}

/// `max_j(x_j − q_j) + max_{i : p_i finite}(p_i − (Ax)_i)` for regular `x`.
pub fn objective(a: &[Vec<T>], p: &[T], q: &[i64], x: &[i64]) -> i64 {
    let xs: Vec<T> = x.iter().map(|&v| Some(v)).collect();
    let ax = matvec(a, &xs);
    let left = x.iter().zip(q).map(|(x, q)| x - q).max().unwrap();
    let right = p
        .iter()
        .zip(&ax)
        .filter_map(|(p, y)| Some(p.as_ref()? - y.expect("A row-regular")))
        .max()
        .expect("p nonzero");
    left + right
}

/// `max y − min y`.
pub fn span(y: &[i64]) -> i64 {
    y.iter().max().unwrap() - y.iter().min().unwrap()
}

pub fn to_scalar(v: T) -> Scalar {
    v.map_or(Scalar::Zero, Scalar::int)
}

pub fn to_matrix(a: &[Vec<T>]) -> Matrix {
    Matrix::from_rows(a.iter().map(|r| r.iter().map(|&v| to_scalar(v)).collect()).collect()).unwrap()
}

pub fn to_vector(v: &[T]) -> Vector {
    Vector::new(v.iter().map(|&x| to_scalar(x)).collect()).unwrap()
}

pub fn to_regular(v: &[i64]) -> Vector {
    Vector::new(v.iter().map(|&x| Scalar::int(x)).collect()).unwrap()
}

pub fn from_scalar(s: &Scalar) -> T {
    if s.is_zero() {
        None
    } else {
        Some(s.to_i64().expect("integer data stays integral"))
    }
}

/// Entry in `[lo, hi]`, or −∞ with probability `zero_prob`.
pub fn entry(rng: &mut ChaCha8Rng, lo: i64, hi: i64, zero_prob: f64) -> T {
    if rng.gen_bool(zero_prob) {
        None
    } else {
        Some(rng.gen_range(lo..=hi))
    }
}

/// A random span instance: row-regular `A` (m × n), nonzero `p`, regular `q`.
pub struct SpanInstance {
    pub a: Vec<Vec<T>>,
    pub p: Vec<T>,
    pub q: Vec<i64>,
}

pub fn span_instance(rng: &mut ChaCha8Rng, max_dim: usize, range: i64) -> SpanInstance {
    let m = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_dim);
    let mut a: Vec<Vec<T>> = (0..m)
        .map(|_| (0..n).map(|_| entry(rng, -range, range, 0.3)).collect())
        .collect();
    for row in &mut a {
        if row.iter().all(Option::is_none) {
            let j = rng.gen_range(0..n);
            row[j] = Some(rng.gen_range(-range..=range));
        }
    }
    let mut p: Vec<T> = (0..m).map(|_| entry(rng, -range, range, 0.2)).collect();
    if p.iter().all(Option::is_none) {
        let i = rng.gen_range(0..m);
        p[i] = Some(rng.gen_range(-range..=range));
    }
    let q = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
    SpanInstance { a, p, q }
}

pub struct ScheduleData {
    pub a: Vec<Vec<T>>,
    pub b: Vec<Vec<T>>,
    pub c: Vec<Vec<T>>,
    pub f: Vec<i64>,
}

/// Random schedule data with regular `A`; precedence may be infeasible.
pub fn schedule_data(rng: &mut ChaCha8Rng, n: usize) -> ScheduleData {
    let square = |rng: &mut ChaCha8Rng, zero_prob: f64| -> Vec<Vec<T>> {
        (0..n)
            .map(|_| (0..n).map(|_| entry(rng, -3, 3, zero_prob)).collect())
            .collect()
    };
    let mut a = square(rng, 0.3);
    // Row and column i are both inspected, so an index loop reads best here.
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let row_empty = a[i].iter().all(Option::is_none);
        let col_empty = (0..n).all(|k| a[k][i].is_none());
        if row_empty || col_empty {
            a[i][i] = Some(rng.gen_range(-3..=3));
        }
    }
    let b = square(rng, 0.6);
    let c = square(rng, 0.6);
    let f = (0..n).map(|_| rng.gen_range(0..=10)).collect();
    ScheduleData { a, b, c, f }
}

/// Minimum span of `y = Ax` over integer `x ∈ [lo, hi]ⁿ` meeting all four
/// constraint families, by exhaustive search.
pub fn grid_min_span(d: &ScheduleData, lo: i64, hi: i64) -> Option<i64> {
    let n = d.f.len();
    let mut x = vec![lo; n];
    let mut best: Option<i64> = None;
    loop {
        let xs: Vec<T> = x.iter().map(|&v| Some(v)).collect();
        let y = matvec(&d.a, &xs);
        let ys: Vec<i64> = y.iter().map(|v| v.expect("A row-regular")).collect();
        let bx = matvec(&d.b, &xs);
        let cy = matvec(&d.c, &y);
        let ok = (0..n).all(|i| {
            bx[i].is_none_or(|v| v <= x[i])
                && cy[i].is_none_or(|v| v <= x[i])
                && ys[i] <= d.f[i]
        });
        if ok {
            let s = span(&ys);
            best = Some(best.map_or(s, |b: i64| b.min(s)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            if x[k] < hi {
                x[k] += 1;
                break;
            }
            x[k] = lo;
            k += 1;
        }
    }
}

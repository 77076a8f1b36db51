use proptest::prelude::*;
use tropspan::{
    in_span, kleene_star, reduce_to_independent, residual, Matrix, MaxPlus, Scalar, Semifield,
    Vector,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        1 => Just(Scalar::Zero),
        4 => (-6i64..=6).prop_map(Scalar::int),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(scalar(), rows * cols).prop_map(move |e| Matrix::new(rows, cols, e).unwrap())
}

fn nonzero_vector(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(scalar(), n)
        .prop_filter("nonzero", |e| e.iter().any(Scalar::is_finite))
        .prop_map(|e| Vector::new(e).unwrap())
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in matrix(2, 3), b in matrix(3, 2), c in matrix(2, 4)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn residual_is_the_greatest_subsolution(a in matrix(3, 3), b in nonzero_vector(3)) {
        let x = residual(&a, &b).unwrap();
        prop_assert!(a.mul_vec(&x).unwrap().le(&b));
        // raising any finite component breaks Ax <= b
        for j in 0..3 {
            if x[j].is_finite() {
                let mut up = x.clone().into_entries();
                up[j] = MaxPlus::mul(&up[j], &Scalar::ratio(1, 2));
                prop_assert!(!a.mul_vec(&Vector::new(up).unwrap()).unwrap().le(&b));
            }
        }
    }

    #[test]
    fn star_is_idempotent_closure(a in matrix(3, 3)) {
        // shift A down so that Tr(A) <= 𝟙 always holds
        let a = a.scale(&Scalar::int(-7));
        let s = kleene_star(&a).unwrap();
        prop_assert_eq!(s.mul(&s).unwrap(), s.clone());
        prop_assert!(Matrix::identity(3).le(&s));
        prop_assert!(a.mul(&s).unwrap().le(&s));
    }

    #[test]
    fn conjugation_is_an_involution(a in matrix(3, 2)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.conj_transpose().unwrap().conj_transpose().unwrap(), a);
    }

    #[test]
    fn reduction_keeps_the_span(cols in proptest::collection::vec(nonzero_vector(3), 1..6)) {
        let m = Matrix::from_columns(&cols).unwrap();
        let (r, kept) = reduce_to_independent(&m).unwrap();
        prop_assert_eq!(r.cols(), kept.len());
        for c in m.columns() {
            prop_assert!(in_span(&r, &c).unwrap());
        }
        // no kept column is redundant
        for j in 0..r.cols() {
            let others: Vec<usize> = (0..r.cols()).filter(|&k| k != j).collect();
            if !others.is_empty() {
                let rest = r.select_columns(&others).unwrap();
                prop_assert!(!in_span(&rest, &r.column(j)).unwrap());
            }
        }
    }
}

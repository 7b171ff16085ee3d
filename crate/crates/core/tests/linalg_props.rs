use proptest::prelude::*;
use tdl_core::field::gf3;
use tdl_core::{TernaryMatrix, TernaryVector};

fn symbols(len: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, len)
}

fn pair(max: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    (0..=max).prop_flat_map(|n| (symbols(n), symbols(n)))
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
    (1usize..150, 0usize..12).prop_flat_map(|(n, r)| (Just(n), prop::collection::vec(symbols(n), r)))
}

proptest! {
    #[test]
    fn packed_ops_match_symbols((a, b) in pair(300), c in 0u8..3) {
        let (x, y) = (TernaryVector::from_symbols(&a).unwrap(), TernaryVector::from_symbols(&b).unwrap());
        let mut sum = x.clone();
        sum.add_assign(&y);
        let expect: Vec<u8> = a.iter().zip(&b).map(|(&p, &q)| gf3::add(p, q)).collect();
        prop_assert_eq!(sum.symbols(), expect);

        let mut diff = x.clone();
        diff.sub_assign(&y);
        let expect: Vec<u8> = a.iter().zip(&b).map(|(&p, &q)| gf3::sub(p, q)).collect();
        prop_assert_eq!(diff.symbols(), expect);

        let expect: Vec<u8> = a.iter().map(|&p| gf3::mul(c, p)).collect();
        prop_assert_eq!(x.scaled(c).symbols(), expect);

        prop_assert_eq!(x.weight(), a.iter().filter(|&&s| s != 0).count());
        let dot = a.iter().zip(&b).fold(0u8, |acc, (&p, &q)| gf3::add(acc, gf3::mul(p, q)));
        prop_assert_eq!(x.dot(&y), dot);
    }

    #[test]
    fn dot_is_bilinear((a, b) in pair(200), cs in symbols(200), c in 0u8..3) {
        let n = a.len();
        let x = TernaryVector::from_symbols(&a).unwrap();
        let y = TernaryVector::from_symbols(&b).unwrap();
        let z = TernaryVector::from_symbols(&cs[..n]).unwrap();
        let mut xy = x.clone();
        xy.add_scaled(&y, c);
        prop_assert_eq!(xy.dot(&z), gf3::add(x.dot(&z), gf3::mul(c, y.dot(&z))));
        prop_assert_eq!(x.dot(&y), y.dot(&x));
    }

    #[test]
    fn rank_nullity_and_orthogonality((n, rows) in matrix()) {
        let g = TernaryMatrix::from_symbol_rows(n, &rows).unwrap();
        let kernel = g.null_space();
        prop_assert_eq!(g.rank() + kernel.nrows(), n);
        for k in kernel.rows() {
            for r in g.rows() {
                prop_assert_eq!(r.dot(k), 0);
            }
        }
        let reduced = g.rref();
        prop_assert_eq!(reduced.rref(), reduced.clone());
        prop_assert!(reduced.same_row_space(&g));
        for r in g.rows() {
            prop_assert!(reduced.row_space_contains(r));
        }
    }

    #[test]
    fn combine_lies_in_row_space((n, rows) in matrix(), u in symbols(12)) {
        let g = TernaryMatrix::from_symbol_rows(n, &rows).unwrap();
        let v = g.combine(&u[..g.nrows()]);
        prop_assert!(g.row_space_contains(&v));
    }

    #[test]
    fn shift_preserves_weight(a in symbols(1..200)) {
        let x = TernaryVector::from_symbols(&a).unwrap();
        let mut y = x.clone();
        for _ in 0..a.len() {
            y = y.cyclic_shift();
            prop_assert_eq!(y.weight(), x.weight());
        }
        prop_assert_eq!(y, x);
    }
}

use kdilate_core::matrix::{smith_normal_form, solve, IntMatrix};
use kdilate_core::BigInt;
use kdilate_oracle::{det_cofactor, smith_diagonal_by_minors};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn to_int(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn smith_contract(rows in matrix(8, 50)) {
        let m = to_int(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&(&snf.u * &m) * &snf.v), &snf.s);
        prop_assert!(snf.s.is_diagonal());
        prop_assert!(is_unimodular(&snf.u));
        prop_assert!(is_unimodular(&snf.v));
        prop_assert_eq!(&snf.u * &snf.u_inv, IntMatrix::identity(m.rows()));
        prop_assert_eq!(&snf.v * &snf.v_inv, IntMatrix::identity(m.cols()));

        let d = snf.diagonal();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            // zeros trail, and each nonzero entry divides the next
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(snf.rank, d.iter().filter(|x| !x.is_zero()).count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn smith_diagonal_matches_determinantal_divisors(rows in matrix(4, 12)) {
        let m = to_int(&rows);
        let d = smith_normal_form(&m).diagonal();
        prop_assert_eq!(d, smith_diagonal_by_minors(&rows, rows[0].len()));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..=5, seed in prop::collection::vec(-20i64..=20, 25)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert_eq!(to_int(&rows).determinant().unwrap(), det_cofactor(&rows));
    }

    #[test]
    fn solve_finds_preimages(rows in matrix(6, 20), x in prop::collection::vec(-30i64..=30, 6)) {
        let a = to_int(&rows);
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve(&a, &b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }
}

#[test]
fn zero_matrix_is_its_own_smith_form() {
    let z = IntMatrix::zeros(3, 2);
    let snf = smith_normal_form(&z);
    assert_eq!(snf.s, z);
    assert_eq!(snf.rank, 0);
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::from(2).pow(80u32);
    let m = IntMatrix::new(2, 2, vec![big.clone(), BigInt::zero(), BigInt::zero(), &big * 3]).unwrap();
    assert_eq!(smith_normal_form(&m).diagonal(), vec![big.clone(), big * 3]);
}

use num_traits::One;
use proptest::prelude::*;

use nx_homotopy::gca::{Element, GeneratorSet};
use nx_homotopy::linalg::{cokernel_complement, kernel_basis, preimage, Echelon, Matrix, SparseVec};
use nx_homotopy::sp::{
    decompose, decomposition_dim, irrep_character, irrep_dimension, irrep_dimension_rank2, tensor_decompose,
    IrrepLabel,
};
use nx_homotopy::weight::Weight;
use nx_homotopy::Rational as Q;

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix<Q> {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_ints(&refs)
}

fn int_vector(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len)
}

fn sparse(xs: &[i64]) -> SparseVec<Q> {
    SparseVec::from_pairs(xs.iter().enumerate().map(|(i, x)| (i, Q::from_integer((*x).into()))))
}

proptest! {
    #[test]
    fn rank_plus_nullity(rows in int_matrix(6, 7)) {
        let m = to_matrix(&rows);
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.len(), m.ncols());
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        prop_assert_eq!(Echelon::from_vectors(&k).rank(), k.len());
    }

    #[test]
    fn preimage_round_trip(rows in int_matrix(5, 6), seed in int_vector(6)) {
        let m = to_matrix(&rows);
        let x = sparse(&seed[..m.ncols()]);
        let b = m.mul_vec(&x);
        let y = preimage(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn complement_spans_the_ambient_space(rows in int_matrix(5, 6)) {
        let n = rows[0].len();
        let gens: Vec<SparseVec<Q>> = rows.iter().map(|r| sparse(r)).collect();
        let comp = cokernel_complement(&gens, n).unwrap();
        let image = Echelon::from_vectors(&gens);
        let mut all = Echelon::from_vectors(&gens);
        for v in &comp {
            prop_assert!(all.insert(v.clone()), "complement vector lies in the span");
        }
        prop_assert_eq!(all.rank(), n);
        prop_assert_eq!(image.rank() + comp.len(), n);
    }
}

const DEGREES: [u32; 5] = [1, 2, 3, 3, 4];

fn generators() -> GeneratorSet {
    let mut g = GeneratorSet::new(1);
    for (i, d) in DEGREES.iter().enumerate() {
        g.push(format!("x{i}"), *d, Weight::zero(1)).unwrap();
    }
    g
}

fn word(g: &GeneratorSet, idx: &[usize]) -> Element<Q> {
    idx.iter().fold(Element::one(), |acc, &i| g.product(&acc, &Element::generator(i)))
}

/// Sign of sorting a word, counting only swaps of two odd letters;
/// `None` if an odd letter repeats.
fn sorting_sign(idx: &[usize]) -> Option<i32> {
    let odd = |i: usize| DEGREES[i] % 2 == 1;
    let mut sign = 1;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if odd(idx[a]) && idx[a] == idx[b] {
                return None;
            }
            if idx[a] > idx[b] && odd(idx[a]) && odd(idx[b]) {
                sign = -sign;
            }
        }
    }
    Some(sign)
}

fn word_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..DEGREES.len(), 0..5)
}

proptest! {
    #[test]
    fn koszul_sign_of_reordering(w in word_strategy()) {
        let g = generators();
        let x = word(&g, &w);
        let mut sorted = w.clone();
        sorted.sort_unstable();
        let y = word(&g, &sorted);
        match sorting_sign(&w) {
            None => prop_assert!(x.is_zero()),
            Some(s) => prop_assert_eq!(x, y.scaled(&Q::from_integer(s.into()))),
        }
    }

    #[test]
    fn graded_commutativity(a in word_strategy(), b in word_strategy()) {
        let g = generators();
        let (x, y) = (word(&g, &a), word(&g, &b));
        let xy = g.product(&x, &y);
        let yx = g.product(&y, &x);
        let (dx, dy): (u32, u32) = (a.iter().map(|i| DEGREES[*i]).sum(), b.iter().map(|i| DEGREES[*i]).sum());
        let sign = if (dx * dy) % 2 == 1 { -Q::one() } else { Q::one() };
        prop_assert_eq!(xy, yx.scaled(&sign));
    }

    #[test]
    fn associativity(a in word_strategy(), b in word_strategy(), c in word_strategy(), k in -3i64..=3) {
        let g = generators();
        let x = word(&g, &a).plus(&word(&g, &c).scaled(&Q::from_integer(k.into())));
        let (y, z) = (word(&g, &b), word(&g, &c));
        prop_assert_eq!(g.product(&g.product(&x, &y), &z), g.product(&x, &g.product(&y, &z)));
    }
}

fn label(rank: usize, max: u32) -> impl Strategy<Value = IrrepLabel> {
    prop::collection::vec(0..=max, rank).prop_map(IrrepLabel)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_two_dimension_oracle(a in 0u32..=6, b in 0u32..=6) {
        let l = IrrepLabel::new(&[a, b]);
        let (a6, b6) = (a as u64, b as u64);
        let oracle = (a6 + 1) * (b6 + 1) * (a6 + b6 + 2) * (a6 + 2 * b6 + 3) / 6;
        prop_assert_eq!(irrep_dimension_rank2(a, b), oracle);
        prop_assert_eq!(irrep_dimension(&l), oracle);
        prop_assert_eq!(irrep_character(&l).dim(), oracle);
    }

    #[test]
    fn characters_round_trip(l in prop_oneof![label(2, 4), label(3, 2)]) {
        let c = irrep_character(&l);
        prop_assert!(c.is_weyl_symmetric());
        prop_assert_eq!(c.mult(&l.highest_weight()), 1);
        prop_assert_eq!(decompose(&c).unwrap(), vec![(l.clone(), 1)]);
        prop_assert_eq!(c.dim(), irrep_dimension(&l));
    }

    #[test]
    fn tensor_products_multiply_dimensions(x in label(2, 3), y in label(2, 3)) {
        let d = tensor_decompose(&x, &y);
        prop_assert_eq!(decomposition_dim(&d), irrep_dimension(&x) * irrep_dimension(&y));
        prop_assert!(d.contains(&(x.plus(&y), 1)));
        let rebuilt = d.iter().fold(nx_homotopy::sp::Character::zero(2), |acc, (l, m)| acc.plus(&irrep_character(l).scaled(*m)));
        prop_assert_eq!(rebuilt, irrep_character(&x).tensor(&irrep_character(&y)));
        prop_assert_eq!(tensor_decompose(&y, &x).len(), d.len());
    }
}

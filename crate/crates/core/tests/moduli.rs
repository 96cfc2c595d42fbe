use nx_homotopy::moduli::{
    betti, betti_table, build_cohomology_algebra, full_quotient, invariant_ring, relation_subspace_e,
};
use nx_homotopy::Rational as Q;

#[test]
fn both_betti_paths_agree() {
    for g in 2..=4 {
        let t = betti_table::<Q>(g).unwrap();
        assert!(t.agree(), "g={g}: {t:?}");
        assert_eq!(t.quotient[3], 2 * g as usize);
        let top = t.quotient.len() - 1;
        for n in 0..=top {
            assert_eq!(t.quotient[n], t.quotient[top - n]);
        }
    }
}

#[test]
fn genus_three_betti() {
    println!("{:?}", betti::<Q>(3).unwrap());
}

#[test]
fn relations_vanish_in_quotient() {
    for g in 2..=3 {
        let ring = build_cohomology_algebra::<Q>(g).unwrap();
        for e in &ring.relations {
            assert!(ring.quotient.is_zero_in_quotient(e).unwrap());
        }
    }
}

#[test]
fn relation_space_is_minimal() {
    for g in 2..=3 {
        let e = relation_subspace_e::<Q>(g).unwrap();
        let full = build_cohomology_algebra::<Q>(g).unwrap().betti();
        let top = 6 * g - 6;
        for skip in 0..e.len() {
            let rest: Vec<_> = e.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, x)| x.clone()).collect();
            let q = full_quotient::<Q>(g, rest, top).unwrap();
            let b: Vec<usize> = (0..=top).map(|n| q.dim(n)).collect();
            assert!(
                b.iter().zip(&full).any(|(x, y)| x > y),
                "g={g}: dropping relation {skip} changes nothing"
            );
        }
    }
}

#[test]
fn invariant_ring_total_dimension() {
    for g in 1..=5 {
        let r = invariant_ring::<Q>(g).unwrap();
        let total: usize = r.hilbert().iter().sum();
        // product of the degree ratios (g)(g+1)(g+2)/6
        assert_eq!(total as u32, g * (g + 1) * (g + 2) / 6);
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[i64], k: u32) -> Vec<i64> {
    (0..k).fold(vec![1], |acc, _| poly_mul(&acc, a))
}

/// Divides by `1 - t^k` exactly, asserting a zero remainder.
fn divide_one_minus(p: &[i64], k: usize) -> Vec<i64> {
    let mut rem = p.to_vec();
    let mut q = vec![0; p.len()];
    for i in 0..p.len() {
        q[i] = rem[i];
        if i + k < rem.len() {
            rem[i + k] += rem[i];
        } else {
            assert_eq!(rem[i], 0, "not divisible by 1 - t^{k}");
        }
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    q
}

/// Poincaré polynomial from the point count of the moduli stack:
/// `((1+t^3)^{2g} - t^{2g}(1+t)^{2g}) / ((1-t^2)(1-t^4))`.
fn poincare_oracle(g: u32) -> Vec<usize> {
    let mut num = poly_pow(&[1, 0, 0, 1], 2 * g);
    let mut shifted = vec![0; 2 * g as usize];
    shifted.extend(poly_pow(&[1, 1], 2 * g));
    num.resize(num.len().max(shifted.len()), 0);
    for (i, c) in shifted.iter().enumerate() {
        num[i] -= c;
    }
    let p = divide_one_minus(&divide_one_minus(&num, 2), 4);
    p.into_iter().map(|c| usize::try_from(c).unwrap()).collect()
}

#[test]
fn betti_numbers_match_the_point_count_oracle() {
    for g in 2..=4 {
        assert_eq!(betti::<Q>(g).unwrap(), poincare_oracle(g), "g={g}");
    }
    assert_eq!(poincare_oracle(2), vec![1, 0, 1, 4, 1, 0, 1]);
}

//! Reference tables the verification suites compare against.

use nx_homotopy::sp::{Decomposition, IrrepLabel};

pub const GENUS2_BETTI: [usize; 7] = [1, 0, 1, 4, 1, 0, 1];

pub const Q_GENUS1: [&str; 3] = ["α", "β", "γ"];
pub const Q_GENUS2: [&str; 3] = ["α^2 + β", "αβ + γ", "αγ"];

type Row = (u32, &'static [(&'static [u32], u64)]);

/// `V^n` of the genus-2 model, degrees 2 through 7.
pub const GENUS2_LOW_DEGREES: &[Row] = &[
    (2, &[(&[0, 0], 1)]),
    (3, &[(&[1, 0], 1)]),
    (4, &[(&[1, 0], 1)]),
    (5, &[(&[0, 1], 1), (&[0, 0], 1)]),
    (6, &[(&[2, 0], 1), (&[0, 1], 1)]),
    (7, &[(&[1, 1], 1), (&[2, 0], 1), (&[1, 0], 1)]),
];

fn to_decomposition(row: &[(&[u32], u64)]) -> Decomposition {
    row.iter().map(|(l, m)| (IrrepLabel::new(l), *m)).collect()
}

pub fn genus2_low_degrees() -> Vec<(u32, Decomposition)> {
    GENUS2_LOW_DEGREES.iter().map(|(n, row)| (*n, to_decomposition(row))).collect()
}

/// The unique dominance-maximal summand of `V^n` for genus 2, `n ≥ 4`.
pub fn genus2_leading(n: u32) -> IrrepLabel {
    let m = n / 2;
    if n % 2 == 0 {
        IrrepLabel::new(&[m - 1, 0])
    } else {
        IrrepLabel::new(&[m - 2, 1])
    }
}

/// `V^n` for `2 ≤ n ≤ 2g+1` and genus `g ≥ 3`.
pub fn higher_genus_table(g: u32) -> Vec<(u32, Decomposition)> {
    let r = g as usize;
    let triv = IrrepLabel::trivial(r);
    let e1 = IrrepLabel::fundamental(r, 1);
    let e2 = IrrepLabel::fundamental(r, 2);
    let mut out = vec![
        (2, vec![(triv.clone(), 1)]),
        (3, vec![(e1.clone(), 1)]),
        (4, vec![(triv.clone(), 1)]),
    ];
    for n in 5..=2 * g - 2 {
        out.push((n, vec![]));
    }
    out.push((2 * g - 1, vec![(triv.clone(), 1)]));
    out.push((2 * g, vec![(e1, 1)]));
    out.push((2 * g + 1, vec![(e2, 1), (triv, 1)]));
    out
}

/// A summand `V^n` must contain for genus `g ≥ 3` and `n ≥ 2g+2`, if any.
pub fn higher_genus_containment(g: u32, n: u32) -> Option<IrrepLabel> {
    let r = g as usize;
    if n < 2 * g + 2 {
        return None;
    }
    let e1 = IrrepLabel::fundamental(r, 1);
    if n % 2 == 0 {
        // n = 2(g + k - 1), k ≥ 2
        let k = n / 2 + 1 - g;
        (k >= 2).then(|| IrrepLabel(e1.0.iter().map(|a| a * k).collect()))
    } else {
        // n = 2(g + k) + 1, k ≥ 1
        let k = (n - 1) / 2 - g;
        (k >= 1).then(|| IrrepLabel(e1.0.iter().map(|a| a * k).collect()).plus(&IrrepLabel::fundamental(r, 2)))
    }
}

/// Degrees of the generators of the invariant-ring model.
pub fn invariant_model_degrees(g: u32) -> Vec<u32> {
    let mut d = vec![2, 4, 6, 2 * g - 1, 2 * g + 1, 2 * g + 3];
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_labels() {
        assert_eq!(genus2_leading(8), IrrepLabel::new(&[3, 0]));
        assert_eq!(genus2_leading(9), IrrepLabel::new(&[2, 1]));
        assert_eq!(genus2_leading(10), IrrepLabel::new(&[4, 0]));
    }

    #[test]
    fn higher_genus_rows() {
        let t = higher_genus_table(4);
        let degrees: Vec<u32> = t.iter().map(|(n, _)| *n).collect();
        assert_eq!(degrees, (2..=9).collect::<Vec<_>>());
        assert!(t[3].1.is_empty() && t[4].1.is_empty());
        assert_eq!(higher_genus_containment(3, 8), Some(IrrepLabel::new(&[2, 0, 0])));
        assert_eq!(higher_genus_containment(3, 9), Some(IrrepLabel::new(&[1, 1, 0])));
        assert_eq!(higher_genus_containment(3, 7), None);
    }
}

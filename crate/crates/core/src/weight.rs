//! Torus weights in the `L_1, ..., L_g` basis.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Weight(pub SmallVec<[i32; 4]>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    pub fn from_slice(xs: &[i32]) -> Self {
        Weight(SmallVec::from_slice(xs))
    }

    /// `±L_i`, with `i` counted from zero.
    pub fn basis(rank: usize, i: usize, sign: i32) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = sign;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    /// Dominant for type C: `w_1 >= w_2 >= ... >= w_g >= 0`.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1]) && self.0.last().is_none_or(|&x| x >= 0)
    }

    /// The unique dominant weight in the Weyl orbit (signed permutations).
    pub fn dominant_rep(&self) -> Weight {
        let mut v: SmallVec<[i32; 4]> = self.0.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

//! Characters of `Sp(2g, C)`: dominance order, Weyl dimension formula,
//! Freudenthal multiplicities, decomposition by highest-weight peeling, and
//! tensor products.
//!
//! Weights are integer vectors in the `L_1..L_g` basis. The positive roots
//! are `L_i ± L_j` (`i < j`) and `2 L_i`, so `ρ = (g, g-1, ..., 1)` and the
//! Weyl group acts by signed permutations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpError {
    #[error("not the character of a representation: {0}")]
    NotACharacter(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// `Γ_{(a_1,...,a_g)}`, highest weight `Σ_i a_i (L_1 + ... + L_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct IrrepLabel(pub Vec<u32>);

impl IrrepLabel {
    pub fn new(a: &[u32]) -> Self {
        IrrepLabel(a.to_vec())
    }

    pub fn trivial(rank: usize) -> Self {
        IrrepLabel(vec![0; rank])
    }

    /// `e_k`, with `k` counted from one.
    pub fn fundamental(rank: usize, k: usize) -> Self {
        let mut a = vec![0; rank];
        a[k - 1] = 1;
        IrrepLabel(a)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn highest_weight(&self) -> Weight {
        let mut w = Weight::zero(self.rank());
        let mut acc = 0i32;
        for i in (0..self.rank()).rev() {
            acc += self.0[i] as i32;
            w.0[i] = acc;
        }
        w
    }

    /// Label of a dominant weight.
    pub fn from_dominant(w: &Weight) -> Self {
        debug_assert!(w.is_dominant());
        let c = w.coords();
        IrrepLabel(
            (0..c.len())
                .map(|i| (c[i] - c.get(i + 1).copied().unwrap_or(0)) as u32)
                .collect(),
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        IrrepLabel(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `μ ≤ λ` in the dominance order with rational coefficients: every partial
/// sum of `λ - μ` is nonnegative.
pub fn weight_leq(mu: &Weight, lambda: &Weight) -> bool {
    let mut s = 0i64;
    for (a, b) in lambda.coords().iter().zip(mu.coords()) {
        s += (*a - *b) as i64;
        if s < 0 {
            return false;
        }
    }
    true
}

pub fn dominance_leq(x: &IrrepLabel, y: &IrrepLabel) -> bool {
    if x.rank() == 2 && y.rank() == 2 {
        return dominance_leq_rank2((x.0[0], x.0[1]), (y.0[0], y.0[1]));
    }
    weight_leq(&x.highest_weight(), &y.highest_weight())
}

/// `(a,b) ≤ (c,d)` iff `a + b ≤ c + d` and `a + 2b ≤ c + 2d`.
pub fn dominance_leq_rank2((a, b): (u32, u32), (c, d): (u32, u32)) -> bool {
    a + b <= c + d && a + 2 * b <= c + 2 * d
}

pub fn dominance_lt(x: &IrrepLabel, y: &IrrepLabel) -> bool {
    x != y && dominance_leq(x, y)
}

fn positive_roots(rank: usize) -> Vec<Vec<i32>> {
    let mut roots = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            let mut a = vec![0; rank];
            a[i] = 1;
            a[j] = -1;
            roots.push(a.clone());
            a[j] = 1;
            roots.push(a);
        }
        let mut a = vec![0; rank];
        a[i] = 2;
        roots.push(a);
    }
    roots
}

fn rho(rank: usize) -> Vec<i32> {
    (0..rank).map(|i| (rank - i) as i32).collect()
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(x, y)| *x as i64 * *y as i64).sum()
}

/// Weyl dimension formula.
pub fn irrep_dimension(x: &IrrepLabel) -> u64 {
    let g = x.rank();
    let lam = x.highest_weight();
    let r = rho(g);
    let lr: Vec<i32> = lam.coords().iter().zip(&r).map(|(a, b)| a + b).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in positive_roots(g) {
        num *= dot(&lr, &a);
        den *= dot(&r, &a);
    }
    let (q, rem) = (&num / &den, &num % &den);
    debug_assert!(rem.is_zero());
    q.to_u64().expect("dimension fits in u64")
}

/// Rank-2 closed form: `p q (p^2 - q^2) / 6` with `p = a + b + 2`, `q = b + 1`.
pub fn irrep_dimension_rank2(a: u32, b: u32) -> u64 {
    let p = (a + b + 2) as u64;
    let q = (b + 1) as u64;
    p * q * (p * p - q * q) / 6
}

/// A weight-multiplicity function.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Character {
    rank: usize,
    mults: BTreeMap<Weight, u64>,
}

#[derive(Serialize)]
struct WeightMult<'a> {
    weight: &'a Weight,
    mult: u64,
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.mults.iter().map(|(w, m)| WeightMult { weight: w, mult: *m }))
    }
}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character { rank, mults: BTreeMap::new() }
    }

    /// The character of a space with one basis vector per listed weight.
    pub fn from_weights<'a>(rank: usize, ws: impl IntoIterator<Item = &'a Weight>) -> Self {
        let mut c = Self::zero(rank);
        for w in ws {
            c.add_weight(w.clone(), 1);
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_weight(&mut self, w: Weight, m: u64) {
        debug_assert_eq!(w.rank(), self.rank);
        if m > 0 {
            *self.mults.entry(w).or_insert(0) += m;
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.mults.iter().map(|(w, m)| (w, *m))
    }

    pub fn dim(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (w, m) in other.iter() {
            c.add_weight(w.clone(), m);
        }
        c
    }

    pub fn scaled(&self, k: u64) -> Self {
        let mut c = Self::zero(self.rank);
        for (w, m) in self.iter() {
            c.add_weight(w.clone(), m * k);
        }
        c
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut c = Self::zero(self.rank);
        for (a, m) in self.iter() {
            for (b, n) in other.iter() {
                c.add_weight(a + b, m * n);
            }
        }
        c
    }

    /// Invariant under every signed permutation of coordinates.
    pub fn is_weyl_symmetric(&self) -> bool {
        self.mults
            .iter()
            .all(|(w, m)| weyl_orbit(&w.dominant_rep()).iter().all(|v| self.mult(v) == *m))
    }

    /// Multiplicities at dominant weights only.
    pub fn dominant_part(&self) -> BTreeMap<Weight, u64> {
        self.mults
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }
}

/// All signed permutations of a weight, deduplicated.
pub fn weyl_orbit(w: &Weight) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let mut coords: Vec<i32> = w.coords().to_vec();
    permute(&mut coords, 0, &mut |p| {
        let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            let mut v = p.to_vec();
            for (b, &i) in nonzero.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v[i] = -v[i];
                }
            }
            out.insert(Weight::from_slice(&v));
        }
    });
    out
}

fn permute(xs: &mut Vec<i32>, k: usize, f: &mut dyn FnMut(&[i32])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Dominant weights `μ ≤ λ` congruent to `λ` modulo the root lattice.
fn dominant_weights_below(lambda: &Weight) -> Vec<Weight> {
    let g = lambda.rank();
    let parity = lambda.coords().iter().map(|&x| x as i64).sum::<i64>().rem_euclid(2);
    let mut out = Vec::new();
    let mut cur = vec![0i32; g];
    fn rec(i: usize, bound: i32, lambda: &Weight, cur: &mut Vec<i32>, parity: i64, out: &mut Vec<Weight>) {
        if i == cur.len() {
            let w = Weight::from_slice(cur);
            let s: i64 = cur.iter().map(|&x| x as i64).sum();
            if s.rem_euclid(2) == parity && weight_leq(&w, lambda) {
                out.push(w);
            }
            return;
        }
        for x in (0..=bound).rev() {
            cur[i] = x;
            let partial: i64 = cur[..=i].iter().map(|&v| v as i64).sum();
            let lam_partial: i64 = lambda.coords()[..=i].iter().map(|&v| v as i64).sum();
            if partial > lam_partial {
                continue;
            }
            rec(i + 1, x, lambda, cur, parity, out);
        }
    }
    rec(0, lambda.coords().first().copied().unwrap_or(0), lambda, &mut cur, parity, &mut out);
    out
}

/// Dominant multiplicities of `Γ_λ` by the Freudenthal recursion.
pub fn freudenthal_dominant(x: &IrrepLabel) -> BTreeMap<Weight, u64> {
    let g = x.rank();
    let lambda = x.highest_weight();
    let r = rho(g);
    let roots = positive_roots(g);
    let lr: Vec<i32> = lambda.coords().iter().zip(&r).map(|(a, b)| a + b).collect();
    let lr2 = dot(&lr, &lr);
    let depth = |mu: &Weight| -> i64 {
        let mut s = 0i64;
        let mut acc = 0i64;
        for (a, b) in lambda.coords().iter().zip(mu.coords()) {
            acc += (*a - *b) as i64;
            s += acc;
        }
        s
    };
    let mut weights = dominant_weights_below(&lambda);
    weights.sort_by_key(|w| (depth(w), std::cmp::Reverse(w.clone())));
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in weights {
        if mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = 0i64;
        for a in &roots {
            let mut k = 1;
            loop {
                let shifted: Vec<i32> = mu.coords().iter().zip(a).map(|(m, a)| m + k * a).collect();
                let sw = Weight::from_slice(&shifted);
                let m = mult.get(&sw.dominant_rep()).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                num += m as i64 * dot(&shifted, a);
                k += 1;
            }
        }
        let mr: Vec<i32> = mu.coords().iter().zip(&r).map(|(a, b)| a + b).collect();
        let den = lr2 - dot(&mr, &mr);
        debug_assert!(den > 0 && (2 * num) % den == 0);
        let m = (2 * num / den) as u64;
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    mult.into_iter().collect()
}

static CHARACTER_MEMO: Lazy<RwLock<HashMap<IrrepLabel, Arc<Character>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Full character of `Γ_x`, memoized.
pub fn irrep_character(x: &IrrepLabel) -> Arc<Character> {
    if let Some(c) = CHARACTER_MEMO.read().expect("memo lock").get(x) {
        return c.clone();
    }
    let mut c = Character::zero(x.rank());
    for (mu, m) in freudenthal_dominant(x) {
        for w in weyl_orbit(&mu) {
            c.add_weight(w, m);
        }
    }
    let c = Arc::new(c);
    CHARACTER_MEMO
        .write()
        .expect("memo lock")
        .entry(x.clone())
        .or_insert(c)
        .clone()
}

/// Irreducible constituents with multiplicities, dominance-maximal first.
pub type Decomposition = Vec<(IrrepLabel, u64)>;

pub fn decomposition_dim(d: &Decomposition) -> u64 {
    d.iter().map(|(l, m)| irrep_dimension(l) * m).sum()
}

/// Greedy highest-weight peeling.
pub fn decompose(c: &Character) -> Result<Decomposition, SpError> {
    let mut residual: BTreeMap<Weight, i64> = c.iter().map(|(w, m)| (w.clone(), m as i64)).collect();
    let mut out = Vec::new();
    loop {
        let dominant: Vec<(Weight, i64)> = residual
            .iter()
            .filter(|(w, m)| **m != 0 && w.is_dominant())
            .map(|(w, m)| (w.clone(), *m))
            .collect();
        if let Some((w, m)) = dominant.iter().find(|(_, m)| *m < 0) {
            return Err(SpError::NotACharacter(format!("multiplicity {m} at {w}")));
        }
        let maximal = dominant
            .iter()
            .filter(|(w, _)| !dominant.iter().any(|(v, _)| v != w && weight_leq(w, v)))
            .map(|(w, m)| (IrrepLabel::from_dominant(w), *m))
            .max_by(|a, b| a.0.cmp(&b.0));
        let Some((label, m)) = maximal else {
            break;
        };
        for (w, k) in irrep_character(&label).iter() {
            *residual.entry(w.clone()).or_insert(0) -= m * k as i64;
        }
        out.push((label, m as u64));
    }
    if let Some((w, m)) = residual.iter().find(|(_, m)| **m != 0) {
        return Err(SpError::NotACharacter(format!("residual multiplicity {m} at non-dominant weight {w}")));
    }
    Ok(out)
}

pub fn tensor_decompose(x: &IrrepLabel, y: &IrrepLabel) -> Decomposition {
    let c = irrep_character(x).tensor(&irrep_character(y));
    decompose(&c).expect("tensor product of characters is a character")
}

/// Multiplicity of `label` in a decomposition.
pub fn multiplicity(d: &Decomposition, label: &IrrepLabel) -> u64 {
    d.iter().filter(|(l, _)| l == label).map(|(_, m)| m).sum()
}

/// Lowest degree in which `Γ_{a,b}` can occur in the `g = 2` minimal model.
pub fn n_bound(a: u32, b: u32) -> u32 {
    if b >= 1 || (a, b) == (1, 0) {
        2 * a + 4 * b + 1
    } else {
        2 * a + 2
    }
}

/// Character of `∧^k` of a representation, from its weights.
pub fn exterior_power(c: &Character, k: usize) -> Character {
    let weights: Vec<&Weight> = c.iter().flat_map(|(w, m)| std::iter::repeat_n(w, m as usize)).collect();
    let mut out = Character::zero(c.rank());
    let mut pick = Vec::with_capacity(k);
    fn rec<'a>(ws: &[&'a Weight], start: usize, k: usize, pick: &mut Vec<&'a Weight>, rank: usize, out: &mut Character) {
        if pick.len() == k {
            let mut s = Weight::zero(rank);
            for w in pick.iter() {
                s = &s + w;
            }
            out.add_weight(s, 1);
            return;
        }
        for i in start..ws.len() {
            pick.push(ws[i]);
            rec(ws, i + 1, k, pick, rank, out);
            pick.pop();
        }
    }
    rec(&weights, 0, k, &mut pick, c.rank(), &mut out);
    out
}

/// Character of `Sym^k` of a representation, from its weights.
pub fn symmetric_power(c: &Character, k: usize) -> Character {
    let weights: Vec<&Weight> = c.iter().flat_map(|(w, m)| std::iter::repeat_n(w, m as usize)).collect();
    let mut out = Character::zero(c.rank());
    let mut pick = Vec::with_capacity(k);
    fn rec<'a>(ws: &[&'a Weight], start: usize, k: usize, pick: &mut Vec<&'a Weight>, rank: usize, out: &mut Character) {
        if pick.len() == k {
            let mut s = Weight::zero(rank);
            for w in pick.iter() {
                s = &s + w;
            }
            out.add_weight(s, 1);
            return;
        }
        for i in start..ws.len() {
            pick.push(ws[i]);
            rec(ws, i, k, pick, rank, out);
            pick.pop();
        }
    }
    rec(&weights, 0, k, &mut pick, c.rank(), &mut out);
    out
}

pub fn render_decomposition(d: &Decomposition) -> String {
    if d.is_empty() {
        return "0".to_string();
    }
    d.iter()
        .map(|(l, m)| if *m == 1 { l.to_string() } else { format!("{m}·{l}") })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

//! Free graded-commutative algebras `⋀V` on weighted generators.
//!
//! Even generators are polynomial, odd generators exterior. A [`Monomial`]
//! stores its factors sorted by generator index, so odd factors are always in
//! ascending order and products pick up the Koszul sign of the reordering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Field;
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcaError {
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {name:?} has degree 0")]
    ZeroDegree { name: String },
    #[error("generator {name:?} has weight of rank {got}, expected {expected}")]
    WeightRank { name: String, expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub weight: Weight,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A product of generators: `(generator index, exponent)` sorted by index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn generator(i: usize) -> Self {
        Monomial(smallvec::smallvec![(i as u32, 1)])
    }

    /// Builds from `(index, exponent)` pairs; zero exponents are dropped.
    pub fn from_factors(factors: &[(usize, u32)]) -> Self {
        let mut v: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for &(i, e) in factors {
            if e > 0 {
                v.push((i as u32, e));
            }
        }
        v.sort_by_key(|p| p.0);
        Monomial(v)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0
            .iter()
            .find(|p| p.0 as usize == i)
            .map_or(0, |p| p.1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|p| p.0 as usize)
    }
}

/// Canonical order within a degree: lexicographic on the exponent vector
/// with larger exponents of earlier generators first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                return a.0.cmp(&b.0);
            }
            if a.1 != b.1 {
                return b.1.cmp(&a.1);
            }
        }
        other.0.len().cmp(&self.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational combination of monomials with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), F::one())
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(Monomial::generator(i), F::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.clone() * c);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-F::one(), other);
        out
    }

    /// Terms of word length at least `k`.
    pub fn filtration_at_least(&self, k: u32) -> Self {
        self.filter(|m| m.word_length() >= k)
    }

    /// Terms of word length exactly `k`.
    pub fn filtration_exactly(&self, k: u32) -> Self {
        self.filter(|m| m.word_length() == k)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest word length among the terms.
    pub fn min_word_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::word_length).min()
    }
}

/// An ordered, immutable-once-built list of generators; it defines the free
/// algebra `⋀V` and its canonical monomial order.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    rank: usize,
    gens: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl GeneratorSet {
    /// An empty set whose weights live in `Z^rank`.
    pub fn new(rank: usize) -> Self {
        GeneratorSet { rank, gens: Vec::new(), by_name: HashMap::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, degree: u32, weight: Weight) -> Result<usize, GcaError> {
        let name = name.into();
        if degree == 0 {
            return Err(GcaError::ZeroDegree { name });
        }
        if weight.rank() != self.rank {
            return Err(GcaError::WeightRank { name, expected: self.rank, got: weight.rank() });
        }
        if self.by_name.contains_key(&name) {
            return Err(GcaError::DuplicateName(name));
        }
        let i = self.gens.len();
        self.by_name.insert(name.clone(), i);
        self.gens.push(Generator { name, degree, weight });
        Ok(i)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Keeps only the first `n` generators.
    pub fn truncate(&mut self, n: usize) {
        for g in self.gens.drain(n.min(self.gens.len())..) {
            self.by_name.remove(&g.name);
        }
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.factors().map(|(i, e)| self.gens[i].degree * e).sum()
    }

    pub fn weight(&self, m: &Monomial) -> Weight {
        let mut w = Weight::zero(self.rank);
        for (i, e) in m.factors() {
            for (acc, x) in w.0.iter_mut().zip(self.gens[i].weight.coords()) {
                *acc += x * e as i32;
            }
        }
        w
    }

    /// Degree of a homogeneous element (`None` for zero or inhomogeneous).
    pub fn element_degree<F: Field>(&self, x: &Element<F>) -> Option<u32> {
        let mut degs = x.terms().map(|(m, _)| self.degree(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn element_weight<F: Field>(&self, x: &Element<F>) -> Option<Weight> {
        let mut ws = x.terms().map(|(m, _)| self.weight(m));
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    /// `a · b` as `(sign, monomial)`, or `None` when an odd generator repeats.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut out: SmallVec<[(u32, u32); 4]> = SmallVec::with_capacity(a.0.len() + b.0.len());
        let mut negative = false;
        // odd factors of `a` not yet passed by the merge
        let mut odd_a_remaining = a.0.iter().filter(|p| self.gens[p.0 as usize].is_odd()).count();
        let (mut p, mut q) = (0, 0);
        while p < a.0.len() || q < b.0.len() {
            let take_a = q >= b.0.len() || (p < a.0.len() && a.0[p].0 < b.0[q].0);
            let take_b = p >= a.0.len() || (q < b.0.len() && b.0[q].0 < a.0[p].0);
            if take_a {
                if self.gens[a.0[p].0 as usize].is_odd() {
                    odd_a_remaining -= 1;
                }
                out.push(a.0[p]);
                p += 1;
            } else if take_b {
                if self.gens[b.0[q].0 as usize].is_odd() && odd_a_remaining % 2 == 1 {
                    negative = !negative;
                }
                out.push(b.0[q]);
                q += 1;
            } else {
                let i = a.0[p].0;
                if self.gens[i as usize].is_odd() {
                    return None;
                }
                out.push((i, a.0[p].1 + b.0[q].1));
                p += 1;
                q += 1;
            }
        }
        Some((negative, Monomial(out)))
    }

    /// The graded-commutative product.
    pub fn product<F: Field>(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if let Some((neg, m)) = self.monomial_product(a, b) {
                    let c = ca.clone() * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn power<F: Field>(&self, x: &Element<F>, k: u32) -> Element<F> {
        let mut acc = Element::one();
        for _ in 0..k {
            acc = self.product(&acc, x);
        }
        acc
    }

    /// Evaluates `x` under the algebra map sending generator `i` to
    /// `images[i]`, computing in `target`.
    ///
    /// The images must have the same parity as the generators they replace.
    pub fn evaluate<F: Field>(&self, x: &Element<F>, images: &[Element<F>], target: &GeneratorSet) -> Element<F> {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let mut acc = Element::one();
            for (i, e) in m.factors() {
                acc = target.product(&acc, &target.power(&images[i], e));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(c, &acc);
        }
        out
    }

    /// All monomials of degree `degree` in canonical order, optionally
    /// restricted to one weight.
    pub fn monomial_basis(&self, degree: u32, weight: Option<&Weight>) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut stack: SmallVec<[(u32, u32); 8]> = SmallVec::new();
        self.enumerate(0, degree, &mut stack, &mut |m| {
            if weight.is_none_or(|w| self.weight(&m) == *w) {
                out.push(m);
            }
            true
        });
        out
    }

    /// All monomials of degree `degree`, grouped by weight (each group in
    /// canonical order).
    pub fn monomials_by_weight(&self, degree: u32) -> BTreeMap<Weight, Vec<Monomial>> {
        let mut out: BTreeMap<Weight, Vec<Monomial>> = BTreeMap::new();
        let mut stack: SmallVec<[(u32, u32); 8]> = SmallVec::new();
        self.enumerate(0, degree, &mut stack, &mut |m| {
            out.entry(self.weight(&m)).or_default().push(m);
            true
        });
        out
    }

    /// Number of monomials of degree `degree`, without enumerating them.
    pub fn count_monomials(&self, degree: u32) -> u128 {
        let n = degree as usize;
        let mut series = vec![0u128; n + 1];
        series[0] = 1;
        for g in &self.gens {
            let d = g.degree as usize;
            if d > n {
                continue;
            }
            if g.is_odd() {
                for k in (d..=n).rev() {
                    series[k] = series[k].saturating_add(series[k - d]);
                }
            } else {
                for k in d..=n {
                    series[k] = series[k].saturating_add(series[k - d]);
                }
            }
        }
        series[n]
    }

    // Depth-first over nondecreasing factor sequences; smallest next factor
    // first, which visits monomials in canonical order.
    fn enumerate(
        &self,
        start: usize,
        remaining: u32,
        stack: &mut SmallVec<[(u32, u32); 8]>,
        emit: &mut dyn FnMut(Monomial) -> bool,
    ) -> bool {
        if remaining == 0 {
            return emit(Monomial(stack.iter().copied().collect()));
        }
        for j in start..self.gens.len() {
            let g = &self.gens[j];
            if g.degree > remaining {
                continue;
            }
            let same = stack.last().is_some_and(|p| p.0 as usize == j);
            if same {
                if g.is_odd() {
                    continue;
                }
                stack.last_mut().unwrap().1 += 1;
            } else {
                stack.push((j as u32, 1));
            }
            let go_on = self.enumerate(j, remaining - g.degree, stack, emit);
            if same {
                stack.last_mut().unwrap().1 -= 1;
            } else {
                stack.pop();
            }
            if !go_on {
                return false;
            }
        }
        true
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut s = String::new();
        let mut after_power = false;
        for (i, e) in m.factors() {
            if after_power {
                s.push('·');
            }
            s.push_str(&self.gens[i].name);
            after_power = e > 1;
            if after_power {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Renders e.g. `α^2·β − 2·γ1γ3`.
    pub fn render<F: Field>(&self, x: &Element<F>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in x.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('−'),
                (0, false) => {}
                (_, true) => s.push_str(" − "),
                (_, false) => s.push_str(" + "),
            }
            let mono = self.render_monomial(m);
            if mag.is_one() {
                s.push_str(&mono);
            } else if m.is_one() {
                let _ = write!(s, "{mag}");
            } else {
                let _ = write!(s, "{mag}·{mono}");
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    /// α, γ1..γ4, β with the moduli-ring weights for g = 2.
    fn genus_two() -> GeneratorSet {
        let mut g = GeneratorSet::new(2);
        g.push("α", 2, Weight::zero(2)).unwrap();
        for i in 0..2 {
            g.push(format!("γ{}", i + 1), 3, Weight::basis(2, i, 1)).unwrap();
        }
        for i in 0..2 {
            g.push(format!("γ{}", i + 3), 3, Weight::basis(2, i, -1)).unwrap();
        }
        g.push("β", 4, Weight::zero(2)).unwrap();
        g
    }

    fn gen(i: usize) -> Element<Q> {
        Element::generator(i)
    }

    #[test]
    fn odd_generators_anticommute() {
        let g = genus_two();
        let m12 = Element::monomial(Monomial::from_factors(&[(1, 1), (2, 1)]), Q::from_int(1));
        assert_eq!(g.product(&gen(1), &gen(2)), m12);
        assert_eq!(g.product(&gen(2), &gen(1)), m12.scaled(&Q::from_int(-1)));
        assert!(g.product(&gen(1), &gen(1)).is_zero());
    }

    #[test]
    fn even_generators_are_central() {
        let g = genus_two();
        let a = g.product(&gen(0), &gen(1));
        assert_eq!(a, g.product(&gen(1), &gen(0)));
        assert_eq!(g.render(&a), "αγ1");
    }

    #[test]
    fn basis_small_degrees() {
        let g = genus_two();
        assert_eq!(g.monomial_basis(0, None), vec![Monomial::one()]);
        let six: Vec<String> = g.monomial_basis(6, None).iter().map(|m| g.render_monomial(m)).collect();
        assert_eq!(six, ["α^3", "αβ", "γ1γ2", "γ1γ3", "γ1γ4", "γ2γ3", "γ2γ4", "γ3γ4"]);
        let five: Vec<String> = g.monomial_basis(5, None).iter().map(|m| g.render_monomial(m)).collect();
        assert_eq!(five, ["αγ1", "αγ2", "αγ3", "αγ4"]);
        assert_eq!(g.count_monomials(6), 8);
        assert_eq!(g.count_monomials(5), 4);
    }

    #[test]
    fn weighted_basis() {
        let g = genus_two();
        let zero = g.monomial_basis(6, Some(&Weight::zero(2)));
        let names: Vec<String> = zero.iter().map(|m| g.render_monomial(m)).collect();
        assert_eq!(names, ["α^3", "αβ", "γ1γ3", "γ2γ4"]);
    }

    #[test]
    fn filtration_components() {
        let g = genus_two();
        let x = gen(0).plus(&g.product(&gen(1), &gen(2)));
        assert_eq!(x.filtration_at_least(2), g.product(&gen(1), &gen(2)));
        assert!(gen(3).filtration_at_least(2).is_zero());
        let a3 = g.power(&gen(0), 3);
        let ab = g.product(&gen(0), &gen(5));
        assert_eq!(ab.plus(&a3).filtration_exactly(2), ab);
    }

    #[test]
    fn rendering() {
        let g = genus_two();
        let x = g
            .product(&g.power(&gen(0), 2), &gen(5))
            .minus(&g.product(&gen(1), &gen(3)).scaled(&Q::from_int(2)));
        assert_eq!(g.render(&x), "α^2·β − 2·γ1γ3");
        assert_eq!(g.render(&Element::<Q>::one().scaled(&Q::ratio(-1, 2))), "−1/2");
        assert_eq!(g.render(&Element::<Q>::zero()), "0");
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut g = genus_two();
        assert!(matches!(g.push("α", 2, Weight::zero(2)), Err(GcaError::DuplicateName(_))));
    }
}

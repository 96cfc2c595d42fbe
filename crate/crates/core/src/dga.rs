//! Differential graded algebras presented on a [`GeneratorSet`], optionally
//! modulo a homogeneous ideal, and their cohomology per (degree, weight)
//! block.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::gca::{Element, GeneratorSet, Monomial};
use crate::linalg::{self, Echelon, SparseVec};
use crate::scalar::Field;
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("d({name}) is not homogeneous of degree {expected}")]
    DegreeMismatch { name: String, expected: u32 },
    #[error("d({name}) has weight {got}, expected {expected}")]
    WeightMismatch { name: String, expected: Weight, got: Weight },
    #[error("expected {expected} differentials, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("relation {index} is not homogeneous in degree and weight")]
    InhomogeneousRelation { index: usize },
    #[error("degree {degree} is beyond the computed range {max}")]
    OutOfRange { degree: u32, max: u32 },
}

/// One `(degree, weight)` block of a graded quotient `⋀V / I`.
#[derive(Clone, Debug)]
pub struct QuotientBlock<F> {
    /// Every free monomial of this degree and weight, canonical order.
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// RREF of the ideal's span, in the coordinates of `monomials`.
    ideal: Echelon<F>,
    /// Non-pivot positions: the canonical monomial transversal of the quotient.
    basis: Vec<usize>,
}

impl<F: Field> QuotientBlock<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }
}

/// A graded commutative algebra `⋀V / I` with `I` generated by homogeneous,
/// weight-homogeneous relations. Each block's basis is the set of monomials
/// left as non-pivots after row-reducing the ideal's span in that block.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F> {
    gens: GeneratorSet,
    relations: Vec<Element<F>>,
    max_degree: u32,
    blocks: BTreeMap<(u32, Weight), QuotientBlock<F>>,
    /// Set when all degrees above this one are known to vanish.
    top: Option<u32>,
}

impl<F: Field> GradedQuotient<F> {
    /// Builds every block in degrees `0..=max_degree`.
    pub fn new(gens: GeneratorSet, relations: Vec<Element<F>>, max_degree: u32) -> Result<Self, DgaError> {
        let mut rel_info = Vec::with_capacity(relations.len());
        for (k, r) in relations.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            match (gens.element_degree(r), gens.element_weight(r)) {
                (Some(d), Some(w)) => rel_info.push((k, d, w)),
                _ => return Err(DgaError::InhomogeneousRelation { index: k }),
            }
        }
        let degree_blocks: Vec<Vec<((u32, Weight), QuotientBlock<F>)>> = (0..=max_degree)
            .into_par_iter()
            .map(|n| Self::build_degree(&gens, &relations, &rel_info, n))
            .collect();
        let blocks: BTreeMap<_, _> = degree_blocks.into_iter().flatten().collect();
        let mut q = GradedQuotient { gens, relations, max_degree, blocks, top: None };
        q.top = q.detect_top();
        Ok(q)
    }

    fn build_degree(
        gens: &GeneratorSet,
        relations: &[Element<F>],
        rel_info: &[(usize, u32, Weight)],
        n: u32,
    ) -> Vec<((u32, Weight), QuotientBlock<F>)> {
        let mut out = Vec::new();
        let by_weight = gens.monomials_by_weight(n);
        let mut spans: BTreeMap<Weight, Vec<Element<F>>> = BTreeMap::new();
        let mut cofactor_cache: HashMap<u32, BTreeMap<Weight, Vec<Monomial>>> = HashMap::new();
        for (k, d, w) in rel_info {
            if *d > n {
                continue;
            }
            let cofactors = cofactor_cache
                .entry(n - d)
                .or_insert_with(|| gens.monomials_by_weight(n - d));
            for (cw, monos) in cofactors.iter() {
                let target = w + cw;
                if !by_weight.contains_key(&target) {
                    continue;
                }
                let bucket = spans.entry(target).or_default();
                for m in monos {
                    let p = gens.product(&relations[*k], &Element::monomial(m.clone(), F::one()));
                    if !p.is_zero() {
                        bucket.push(p);
                    }
                }
            }
        }
        for (w, monomials) in by_weight {
            let index: HashMap<Monomial, usize> =
                monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ideal = Echelon::new();
            if let Some(vs) = spans.remove(&w) {
                for v in vs {
                    ideal.insert(SparseVec::from_pairs(v.terms().map(|(m, c)| (index[m], c.clone()))));
                    if ideal.rank() == monomials.len() {
                        break;
                    }
                }
            }
            let basis = (0..monomials.len()).filter(|i| !ideal.is_pivot(*i)).collect();
            out.push(((n, w), QuotientBlock { monomials, index, ideal, basis }));
        }
        out
    }

    fn detect_top(&self) -> Option<u32> {
        let span = self.gens.iter().map(|g| g.degree).max().unwrap_or(1);
        (0..=self.max_degree)
            .rev()
            .filter(|&t| self.dim(t) > 0)
            .find(|&t| t + span <= self.max_degree && (t + 1..=t + span).all(|k| self.dim(k) == 0))
            .or_else(|| (self.gens.is_empty()).then_some(0))
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Highest nonzero degree, when the algebra is known to vanish above it.
    pub fn top_degree(&self) -> Option<u32> {
        self.top
    }

    pub fn block(&self, n: u32, w: &Weight) -> Option<&QuotientBlock<F>> {
        self.blocks.get(&(n, w.clone()))
    }

    pub fn blocks_in_degree(&self, n: u32) -> impl Iterator<Item = (&Weight, &QuotientBlock<F>)> {
        self.blocks
            .range((n, Weight::default())..)
            .take_while(move |((d, _), _)| *d == n)
            .map(|((_, w), b)| (w, b))
    }

    /// Whether degree `n` is known (computed or provably zero).
    pub fn covers(&self, n: u32) -> bool {
        n <= self.max_degree || self.top.is_some_and(|t| n > t)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.blocks_in_degree(n).map(|(_, b)| b.dim()).sum()
    }

    pub fn dim_weight(&self, n: u32, w: &Weight) -> usize {
        self.block(n, w).map_or(0, |b| b.dim())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|n| self.dim(n)).collect()
    }

    /// Basis monomials of the quotient in degree `n` (all weights, weight-sorted).
    pub fn basis(&self, n: u32) -> Vec<Monomial> {
        self.blocks_in_degree(n)
            .flat_map(|(_, b)| b.basis_monomials().cloned())
            .collect()
    }

    /// Normal form of `x`: the representative supported on basis monomials.
    pub fn reduce(&self, x: &Element<F>) -> Result<Element<F>, DgaError> {
        let mut grouped: BTreeMap<(u32, Weight), Vec<(&Monomial, &F)>> = BTreeMap::new();
        for (m, c) in x.terms() {
            grouped.entry((self.gens.degree(m), self.gens.weight(m))).or_default().push((m, c));
        }
        let mut out = Element::zero();
        for ((n, w), terms) in grouped {
            if n > self.max_degree {
                if self.top.is_some_and(|t| n > t) {
                    continue;
                }
                return Err(DgaError::OutOfRange { degree: n, max: self.max_degree });
            }
            let Some(block) = self.blocks.get(&(n, w)) else {
                continue;
            };
            let v = SparseVec::from_pairs(terms.into_iter().map(|(m, c)| (block.index[m], c.clone())));
            for (i, c) in block.ideal.reduce(&v).into_entries() {
                out.add_term(block.monomials[i].clone(), c);
            }
        }
        Ok(out)
    }

    pub fn is_zero_in_quotient(&self, x: &Element<F>) -> Result<bool, DgaError> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Product followed by reduction.
    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>, DgaError> {
        self.reduce(&self.gens.product(x, y))
    }
}

/// Coordinates for one chain group: an ordered basis and its index.
#[derive(Clone, Debug, Default)]
pub struct ChainSpace {
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl ChainSpace {
    pub fn new(basis: Vec<Monomial>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        ChainSpace { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of an element supported on this basis.
    pub fn coords<F: Field>(&self, x: &Element<F>) -> SparseVec<F> {
        SparseVec::from_pairs(x.terms().map(|(m, c)| {
            (
                *self.index.get(m).unwrap_or_else(|| panic!("monomial {m:?} outside chain basis")),
                c.clone(),
            )
        }))
    }

    pub fn element<F: Field>(&self, v: &SparseVec<F>) -> Element<F> {
        Element::from_terms(v.entries().iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())))
    }
}

/// `Z^n`, `B^n` and a canonical complement representing `H^n` in one block.
#[derive(Clone, Debug)]
pub struct CohomologyBlock<F> {
    pub degree: u32,
    pub weight: Option<Weight>,
    pub chains: ChainSpace,
    pub cocycles: Vec<SparseVec<F>>,
    pub coboundaries: Vec<SparseVec<F>>,
    pub classes: Vec<SparseVec<F>>,
}

impl<F: Field> CohomologyBlock<F> {
    pub fn dim_cocycles(&self) -> usize {
        self.cocycles.len()
    }

    pub fn dim_coboundaries(&self) -> usize {
        self.coboundaries.len()
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn class_representatives(&self) -> Vec<Element<F>> {
        self.classes.iter().map(|v| self.chains.element(v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredReport {
    pub max_degree: u32,
    pub checked: usize,
    /// `(generator name, rendered d(d(v)))` for each failure.
    pub violations: Vec<(String, String)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A DGA `(⋀V / I, d)` with `d` given on generators and extended by Leibniz.
#[derive(Clone, Debug)]
pub struct Dga<F> {
    gens: GeneratorSet,
    d: Vec<Element<F>>,
    quotient: Option<Arc<GradedQuotient<F>>>,
}

impl<F: Field> Dga<F> {
    /// A free DGA. Each `d[i]` must be zero or homogeneous of degree
    /// `deg(v_i) + 1` with the weight of `v_i`.
    pub fn new(gens: GeneratorSet, d: Vec<Element<F>>) -> Result<Self, DgaError> {
        Self::validate(&gens, &d)?;
        Ok(Dga { gens, d, quotient: None })
    }

    /// A quotient DGA. The differential must preserve the ideal; this is not
    /// checked.
    pub fn with_quotient(quotient: Arc<GradedQuotient<F>>, d: Vec<Element<F>>) -> Result<Self, DgaError> {
        Self::validate(quotient.gens(), &d)?;
        Ok(Dga { gens: quotient.gens().clone(), d, quotient: Some(quotient) })
    }

    /// `(A, 0)` for a quotient algebra `A`.
    pub fn zero_differential(quotient: Arc<GradedQuotient<F>>) -> Self {
        let d = vec![Element::zero(); quotient.gens().len()];
        Dga { gens: quotient.gens().clone(), d, quotient: Some(quotient) }
    }

    fn validate(gens: &GeneratorSet, d: &[Element<F>]) -> Result<(), DgaError> {
        if d.len() != gens.len() {
            return Err(DgaError::Arity { expected: gens.len(), got: d.len() });
        }
        for (g, dv) in gens.iter().zip(d) {
            if dv.is_zero() {
                continue;
            }
            if gens.element_degree(dv) != Some(g.degree + 1) {
                return Err(DgaError::DegreeMismatch { name: g.name.clone(), expected: g.degree + 1 });
            }
            match gens.element_weight(dv) {
                Some(w) if w == g.weight => {}
                got => {
                    return Err(DgaError::WeightMismatch {
                        name: g.name.clone(),
                        expected: g.weight.clone(),
                        got: got.unwrap_or_default(),
                    })
                }
            }
        }
        Ok(())
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn d_on_generator(&self, i: usize) -> &Element<F> {
        &self.d[i]
    }

    pub fn quotient(&self) -> Option<&GradedQuotient<F>> {
        self.quotient.as_deref()
    }

    /// Every `d(v)` lies in `⋀^{≥2}V`.
    pub fn is_minimal(&self) -> bool {
        self.d.iter().all(|x| x.min_word_length().is_none_or(|k| k >= 2))
    }

    /// Leibniz extension of `d` to a monomial, in the free algebra.
    pub fn d_monomial(&self, m: &Monomial) -> Element<F> {
        d_monomial_free(&self.gens, &self.d, m)
    }

    /// `d(x)`, reduced into the quotient when there is one.
    pub fn apply_d(&self, x: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(c, &self.d_monomial(m));
        }
        match &self.quotient {
            Some(q) => q.reduce(&out).expect("differential stays inside the computed range"),
            None => out,
        }
    }

    pub fn check_d_squared(&self, max_degree: u32) -> DSquaredReport {
        let mut checked = 0;
        let mut violations = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            if g.degree > max_degree {
                continue;
            }
            checked += 1;
            let dd = self.apply_d(&self.d[i]);
            if !dd.is_zero() {
                violations.push((g.name.clone(), self.gens.render(&dd)));
            }
        }
        DSquaredReport { max_degree, checked, violations }
    }

    /// Basis of the degree-`n` cochains, optionally in one weight.
    pub fn chain_space(&self, n: u32, weight: Option<&Weight>) -> ChainSpace {
        match &self.quotient {
            None => ChainSpace::new(self.gens.monomial_basis(n, weight)),
            Some(q) => ChainSpace::new(match weight {
                Some(w) => q
                    .block(n, w)
                    .map(|b| b.basis_monomials().cloned().collect())
                    .unwrap_or_default(),
                None => q.basis(n),
            }),
        }
    }

    /// Matrix columns of `d: C^n -> C^{n+1}` in the given coordinates.
    fn d_columns(&self, source: &ChainSpace, target: &ChainSpace) -> Vec<SparseVec<F>> {
        source
            .basis
            .iter()
            .map(|m| target.coords(&self.apply_d(&Element::monomial(m.clone(), F::one()))))
            .collect()
    }

    pub fn cohomology(&self, n: u32, weight: Option<&Weight>) -> CohomologyBlock<F> {
        let chains = self.chain_space(n, weight);
        let next = self.chain_space(n + 1, weight);
        let d_n = linalg::Matrix::from_columns(next.dim(), &self.d_columns(&chains, &next))
            .expect("columns live in the target chain space");
        let cocycles = linalg::kernel_basis(&d_n);
        let mut b = Echelon::new();
        if n > 0 {
            let prev = self.chain_space(n - 1, weight);
            for col in self.d_columns(&prev, &chains) {
                b.insert(col);
            }
        }
        let z = Echelon::from_vectors(&cocycles);
        let classes = z.relative_complement(&b);
        CohomologyBlock {
            degree: n,
            weight: weight.cloned(),
            chains,
            cocycles,
            coboundaries: b.into_rows(),
            classes,
        }
    }

    /// Weights occurring in the degree-`n` cochains.
    pub fn weights_in_degree(&self, n: u32) -> Vec<Weight> {
        match &self.quotient {
            None => self.gens.monomials_by_weight(n).into_keys().collect(),
            Some(q) => q.blocks_in_degree(n).map(|(w, _)| w.clone()).collect(),
        }
    }
}

/// Leibniz rule on a monomial for a free algebra with `d` on generators.
pub(crate) fn d_monomial_free<F: Field>(gens: &GeneratorSet, d: &[Element<F>], m: &Monomial) -> Element<F> {
    let factors: Vec<(usize, u32)> = m.factors().collect();
    let mut out = Element::zero();
    for (k, &(i, e)) in factors.iter().enumerate() {
        if d[i].is_zero() {
            continue;
        }
        let prefix = Monomial::from_factors(&factors[..k]);
        let prefix_deg = gens.degree(&prefix);
        let mut rest: Vec<(usize, u32)> = factors[k + 1..].to_vec();
        if e > 1 {
            rest.push((i, e - 1));
        }
        let left = Element::monomial(prefix, F::one());
        let right = Element::monomial(Monomial::from_factors(&rest), F::from_int(e as i64));
        // x_i^{e-1} is even, so it may sit on either side of d(x_i)
        let mut term = gens.product(&gens.product(&left, &d[i]), &right);
        if prefix_deg % 2 == 1 {
            term = term.scaled(&-F::one());
        }
        out.add_scaled(&F::one(), &term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    /// Model of S^2: x in degree 2, y in degree 3, dy = x^2.
    fn sphere() -> Dga<Q> {
        let mut g = GeneratorSet::new(1);
        g.push("x", 2, Weight::zero(1)).unwrap();
        g.push("y", 3, Weight::zero(1)).unwrap();
        let x2 = g.power(&Element::generator(0), 2);
        Dga::new(g, vec![Element::zero(), x2]).unwrap()
    }

    #[test]
    fn leibniz_on_sphere_model() {
        let s = sphere();
        let g = s.gens();
        let xy = g.product(&Element::generator(0), &Element::generator(1));
        assert_eq!(s.apply_d(&xy), g.power(&Element::generator(0), 3));
        assert!(s.check_d_squared(5).passed());
    }

    #[test]
    fn sphere_cohomology() {
        let s = sphere();
        let dims: Vec<usize> = (0..=7).map(|n| s.cohomology(n, None).dim()).collect();
        assert_eq!(dims, [1, 0, 1, 0, 0, 0, 0, 0]);
        let h2 = s.cohomology(2, None);
        assert_eq!(h2.class_representatives(), vec![Element::generator(0)]);
        assert_eq!(s.cohomology(4, None).dim_coboundaries(), 1);
    }

    #[test]
    fn exterior_cocycles() {
        let mut g = GeneratorSet::new(1);
        g.push("a", 3, Weight::zero(1)).unwrap();
        g.push("b", 3, Weight::zero(1)).unwrap();
        let s = Dga::new(g.clone(), vec![Element::<Q>::zero(), Element::zero()]).unwrap();
        let ab = g.product(&Element::generator(0), &Element::generator(1));
        assert!(s.apply_d(&ab).is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_differential() {
        let mut g = GeneratorSet::new(1);
        g.push("x", 2, Weight::zero(1)).unwrap();
        g.push("y", 3, Weight::zero(1)).unwrap();
        let bad = g.power(&Element::<Q>::generator(0), 2).plus(&Element::generator(0));
        assert!(matches!(
            Dga::new(g, vec![Element::zero(), bad]),
            Err(DgaError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_weight_change() {
        let mut g = GeneratorSet::new(1);
        g.push("x", 2, Weight::from_slice(&[1])).unwrap();
        g.push("y", 3, Weight::zero(1)).unwrap();
        let x2 = g.power(&Element::<Q>::generator(0), 2);
        assert!(matches!(
            Dga::new(g, vec![Element::zero(), x2]),
            Err(DgaError::WeightMismatch { .. })
        ));
    }

    #[test]
    fn truncated_polynomial_quotient() {
        let mut g = GeneratorSet::new(1);
        g.push("h", 2, Weight::zero(1)).unwrap();
        let h2 = g.power(&Element::<Q>::generator(0), 2);
        let q = GradedQuotient::new(g, vec![h2], 8).unwrap();
        assert_eq!(q.dims(), [1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(q.top_degree(), Some(2));
        let a = Dga::zero_differential(Arc::new(q));
        assert_eq!(a.cohomology(2, None).dim(), 1);
        assert_eq!(a.cohomology(4, None).dim(), 0);
    }
}

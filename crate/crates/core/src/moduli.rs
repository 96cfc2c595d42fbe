//! The rational cohomology ring of `N_X` for genus `g` and its
//! mapping-class-group invariant subring `Q[α, β, γ] / I_g`.
//!
//! The full ring is presented as `⋀(α, γ_1, ..., γ_{2g}, β)` modulo the ideal
//! generated by the relation space `E`. Generator `γ_i` carries torus weight
//! `+L_i` for `i ≤ g` and `-L_{i-g}` otherwise, so the symplectic form
//! `ω = Σ γ_i γ_{i+g}` is invariant.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::dga::{Dga, DgaError, GradedQuotient};
use crate::gca::{Element, GeneratorSet, Monomial};
use crate::linalg::{kernel_basis, Matrix, SparseVec};
use crate::scalar::Field;
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("genus {g} is not supported here (need g ≥ {min})")]
    InvalidGenus { g: u32, min: u32 },
    #[error("validation failure: {0}")]
    ValidationFailure(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
}

/// Generators `α, β, γ` of degrees 2, 4, 6 with zero weight in rank `g`.
pub fn invariant_generators(g: u32) -> GeneratorSet {
    let mut gens = GeneratorSet::new(g as usize);
    for (name, deg) in [("α", 2), ("β", 4), ("γ", 6)] {
        gens.push(name, deg, Weight::zero(g as usize)).expect("fresh names");
    }
    gens
}

/// Generators `α, γ_1..γ_{2g}, β` of the full ring.
pub fn full_generators(g: u32) -> GeneratorSet {
    let rank = g as usize;
    let mut gens = GeneratorSet::new(rank);
    gens.push("α", 2, Weight::zero(rank)).expect("fresh names");
    for i in 0..2 * rank {
        let w = if i < rank { Weight::basis(rank, i, 1) } else { Weight::basis(rank, i - rank, -1) };
        gens.push(format!("γ{}", i + 1), 3, w).expect("fresh names");
    }
    gens.push("β", 4, Weight::zero(rank)).expect("fresh names");
    gens
}

fn gamma_index(g: u32, i: usize) -> usize {
    debug_assert!(i < 2 * g as usize);
    1 + i
}

/// `(q_g^1, q_g^2, q_g^3)` in `Q[α, β, γ]`.
#[derive(Clone, Debug)]
pub struct QTriple<F> {
    pub g: u32,
    pub gens: GeneratorSet,
    pub q: [Element<F>; 3],
}

impl<F: Field> QTriple<F> {
    pub fn degrees(&self) -> [u32; 3] {
        [2 * self.g, 2 * self.g + 2, 2 * self.g + 4]
    }

    pub fn render(&self) -> [String; 3] {
        [0, 1, 2].map(|i| self.gens.render(&self.q[i]))
    }
}

/// `q_r` for `r = 0..=g`, from the seeds `(1, 0, 0)`.
pub fn q_sequence<F: Field>(g: u32) -> Vec<[Element<F>; 3]> {
    let gens = invariant_generators(g.max(1));
    let (a, b, c) = (Element::generator(0), Element::generator(1), Element::generator(2));
    let mut out = vec![[Element::one(), Element::zero(), Element::zero()]];
    for r in 0..g {
        let [q1, q2, q3] = &out[r as usize];
        let next1 = gens.product(&a, q1).plus(&q2.scaled(&F::from_int((r * r) as i64)));
        let next2 = gens.product(&b, q1).plus(&q3.scaled(&F::ratio(2 * r as i64, r as i64 + 1)));
        let next3 = gens.product(&c, q1);
        out.push([next1, next2, next3]);
    }
    out
}

pub fn q_polynomials<F: Field>(g: u32) -> QTriple<F> {
    let q = q_sequence::<F>(g).pop().expect("sequence is nonempty");
    QTriple { g, gens: invariant_generators(g.max(1)), q }
}

/// `ω = Σ_i γ_i γ_{i+g}` in the full ring.
pub fn symplectic_form<F: Field>(g: u32) -> Element<F> {
    let g = g as usize;
    Element::from_terms((0..g).map(|i| {
        (
            Monomial::from_factors(&[(gamma_index(g as u32, i), 1), (gamma_index(g as u32, i + g), 1)]),
            F::one(),
        )
    }))
}

/// The algebra map `Q[α, β, γ] -> ⋀(α, γ_i, β)` with `γ ↦ -2ω`.
pub fn expand_invariant<F: Field>(g: u32, x: &Element<F>) -> Element<F> {
    let full = full_generators(g);
    let images = [
        Element::generator(0),
        Element::generator(2 * g as usize + 1),
        symplectic_form::<F>(g).scaled(&F::from_int(-2)),
    ];
    invariant_generators(g).evaluate(x, &images, &full)
}

fn binomial(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = k as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim ∧_0^k W = C(2g, k) - C(2g, k-2)`.
pub fn primitive_dimension(g: u32, k: u32) -> u64 {
    binomial(2 * g as u64, k as i64) - binomial(2 * g as u64, k as i64 - 2)
}

/// Basis of `∧_0^k W = ker(ω^{g-k+1} : ∧^k W -> ∧^{2g-k+2} W)`, one torus
/// weight block at a time.
pub fn primitive_basis<F: Field>(g: u32, k: u32) -> Vec<Element<F>> {
    assert!(k <= g, "primitive part needs k ≤ g");
    let full = full_generators(g);
    let omega_power = full.power(&symplectic_form::<F>(g), g - k + 1);
    let mut by_weight: BTreeMap<Weight, Vec<Monomial>> = BTreeMap::new();
    for (w, ms) in full.monomials_by_weight(3 * k) {
        let exterior: Vec<Monomial> = ms
            .into_iter()
            .filter(|m| m.factors().all(|(i, _)| (1..=2 * g as usize).contains(&i)))
            .collect();
        if !exterior.is_empty() {
            by_weight.insert(w, exterior);
        }
    }
    let mut out = Vec::new();
    for ms in by_weight.values() {
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let columns: Vec<SparseVec<F>> = ms
            .iter()
            .map(|m| {
                let img = full.product(&omega_power, &Element::monomial(m.clone(), F::one()));
                SparseVec::from_pairs(img.terms().map(|(t, c)| {
                    let next = index.len();
                    (*index.entry(t.clone()).or_insert(next), c.clone())
                }))
            })
            .collect();
        let m = Matrix::from_columns(index.len(), &columns).expect("indices are in range");
        for v in kernel_basis(&m) {
            out.push(Element::from_terms(v.entries().iter().map(|(i, c)| (ms[*i].clone(), c.clone()))));
        }
    }
    out
}

/// Basis of the relation space `E`: `q_g^1`, `q_g^2`, then `q_{g-k}^1 · ∧_0^k W`
/// for `k = 1..g-1`, then `∧_0^g W`, all with `γ` expanded.
pub fn relation_subspace_e<F: Field>(g: u32) -> Result<Vec<Element<F>>, ModuliError> {
    if g < 2 {
        return Err(ModuliError::InvalidGenus { g, min: 2 });
    }
    let full = full_generators(g);
    let qs = q_sequence::<F>(g);
    let mut out = vec![expand_invariant(g, &qs[g as usize][0]), expand_invariant(g, &qs[g as usize][1])];
    for k in 1..g {
        let q = expand_invariant(g, &qs[(g - k) as usize][0]);
        for p in primitive_basis::<F>(g, k) {
            out.push(full.product(&q, &p));
        }
    }
    out.extend(primitive_basis::<F>(g, g));
    Ok(out)
}

/// Degree bound that lets the quotient certify its own top degree.
fn full_build_degree(g: u32) -> u32 {
    6 * g - 6 + 4
}

/// `H*(N_X, Q)` with its canonical per-block bases.
#[derive(Clone, Debug)]
pub struct ModuliRing<F> {
    pub g: u32,
    pub relations: Vec<Element<F>>,
    pub quotient: Arc<GradedQuotient<F>>,
}

impl<F: Field> ModuliRing<F> {
    pub fn top_degree(&self) -> u32 {
        6 * self.g - 6
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|n| self.quotient.dim(n)).collect()
    }

    pub fn render_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.quotient.gens().render(r)).collect()
    }
}

/// Quotient of the full free algebra by an arbitrary relation list, without
/// validation.
pub fn full_quotient<F: Field>(g: u32, relations: Vec<Element<F>>, max_degree: u32) -> Result<GradedQuotient<F>, ModuliError> {
    Ok(GradedQuotient::new(full_generators(g), relations, max_degree)?)
}

pub fn build_cohomology_algebra<F: Field>(g: u32) -> Result<ModuliRing<F>, ModuliError> {
    let relations = relation_subspace_e::<F>(g)?;
    let quotient = full_quotient(g, relations.clone(), full_build_degree(g))?;
    let ring = ModuliRing { g, relations, quotient: Arc::new(quotient) };
    validate_ring(&ring)?;
    Ok(ring)
}

fn validate_ring<F: Field>(ring: &ModuliRing<F>) -> Result<(), ModuliError> {
    let g = ring.g;
    let top = ring.top_degree();
    let q = &ring.quotient;
    let fail = |msg: String| Err(ModuliError::ValidationFailure(msg));
    if q.top_degree() != Some(top) {
        return fail(format!("top degree {:?}, expected {top}", q.top_degree()));
    }
    if q.dim(top) != 1 {
        return fail(format!("dim A^{top} = {}, expected 1", q.dim(top)));
    }
    for n in 0..=top {
        if q.dim(n) != q.dim(top - n) {
            return fail(format!("Poincaré duality fails: dim A^{n} = {} but dim A^{} = {}", q.dim(n), top - n, q.dim(top - n)));
        }
    }
    if q.dim(2) != 1 || q.dim(3) != 2 * g as usize {
        return fail(format!("dim A^2 = {}, dim A^3 = {}", q.dim(2), q.dim(3)));
    }
    Ok(())
}

/// `Q[α, β, γ] / (q_g^1, q_g^2, q_g^3)`.
#[derive(Clone, Debug)]
pub struct InvariantRing<F> {
    pub q: QTriple<F>,
    pub quotient: Arc<GradedQuotient<F>>,
}

impl<F: Field> InvariantRing<F> {
    pub fn hilbert(&self) -> Vec<usize> {
        (0..=6 * self.q.g.saturating_sub(1)).map(|n| self.quotient.dim(n)).collect()
    }
}

/// Coefficients of `Π (1 - t^{d_i}) / ((1 - t^2)(1 - t^4)(1 - t^6))` with
/// `d = (2g, 2g+2, 2g+4)`, a polynomial of degree `6g - 6`.
pub fn invariant_hilbert_closed_form(g: u32) -> Vec<i64> {
    let top = 6 * g as usize - 6;
    let mut num = vec![1i64];
    for d in [2 * g, 2 * g + 2, 2 * g + 4] {
        let d = d as usize;
        let mut next = vec![0i64; num.len() + d];
        for (i, c) in num.iter().enumerate() {
            next[i] += c;
            next[i + d] -= c;
        }
        num = next;
    }
    // divide by (1 - t^d): running sum with stride d
    for d in [2usize, 4, 6] {
        for i in d..num.len() {
            num[i] += num[i - d];
        }
    }
    debug_assert!(num[top + 1..].iter().all(|c| *c == 0));
    num.truncate(top + 1);
    num
}

pub fn invariant_ring<F: Field>(g: u32) -> Result<InvariantRing<F>, ModuliError> {
    if g < 1 {
        return Err(ModuliError::InvalidGenus { g, min: 1 });
    }
    let q = q_polynomials::<F>(g);
    let top = 6 * g - 6;
    let quotient = GradedQuotient::new(q.gens.clone(), q.q.to_vec(), top + 6)?;
    let ring = InvariantRing { q, quotient: Arc::new(quotient) };
    let closed = invariant_hilbert_closed_form(g);
    let direct: Vec<i64> = (0..=top + 6).map(|n| ring.quotient.dim(n) as i64).collect();
    let expected: Vec<i64> = (0..=top as usize + 6).map(|n| closed.get(n).copied().unwrap_or(0)).collect();
    if direct != expected {
        return Err(ModuliError::ValidationFailure(format!(
            "invariant ring dimensions {direct:?} differ from the Hilbert series {expected:?}"
        )));
    }
    Ok(ring)
}

/// Betti numbers from the decomposition `⊕_k ∧_0^k W ⊗ Q[α,β,γ]/I_{g-k}`.
pub fn betti_from_decomposition<F: Field>(g: u32) -> Result<Vec<usize>, ModuliError> {
    let top = 6 * g as usize - 6;
    let mut b = vec![0usize; top + 1];
    for k in 0..g {
        let h = invariant_ring::<F>(g - k)?.hilbert();
        let mult = primitive_dimension(g, k) as usize;
        for (n, c) in h.iter().enumerate() {
            let shifted = n + 3 * k as usize;
            if *c > 0 {
                if shifted > top {
                    return Err(ModuliError::ValidationFailure(format!("class in degree {shifted} above the top")));
                }
                b[shifted] += mult * c;
            }
        }
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub quotient: Vec<usize>,
    pub decomposition: Vec<usize>,
}

impl BettiTable {
    pub fn agree(&self) -> bool {
        self.quotient == self.decomposition
    }
}

/// Both Betti computations, before cross-checking.
pub fn betti_table<F: Field>(g: u32) -> Result<BettiTable, ModuliError> {
    if g < 2 {
        return Err(ModuliError::InvalidGenus { g, min: 2 });
    }
    Ok(BettiTable {
        quotient: build_cohomology_algebra::<F>(g)?.betti(),
        decomposition: betti_from_decomposition::<F>(g)?,
    })
}

pub fn betti<F: Field>(g: u32) -> Result<Vec<usize>, ModuliError> {
    let t = betti_table::<F>(g)?;
    if !t.agree() {
        return Err(ModuliError::ValidationFailure(format!(
            "Betti numbers disagree: quotient {:?}, decomposition {:?}",
            t.quotient, t.decomposition
        )));
    }
    Ok(t.quotient)
}

/// The Koszul model `(⋀(α, β, γ, f_1, f_2, f_3), d)` with `d f_i = q_g^i`.
pub fn invariant_koszul_model<F: Field>(g: u32) -> Result<Dga<F>, ModuliError> {
    let q = q_polynomials::<F>(g);
    let mut gens = q.gens.clone();
    let rank = gens.rank();
    for (i, deg) in q.degrees().iter().enumerate() {
        gens.push(format!("f{}", i + 1), deg - 1, Weight::zero(rank)).expect("fresh names");
    }
    let mut d = vec![Element::zero(); 3];
    d.extend(q.q.iter().cloned());
    Ok(Dga::new(gens, d)?)
}

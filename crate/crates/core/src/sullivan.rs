//! Inductive minimal model of a 1-connected target `(A, 0)`.
//!
//! Stage `n` adds `V^n = C^n ⊕ N^n`:
//!
//! * `C^n` is a canonical complement of the image of `H^n(⋀V^{<n}) -> A^n`;
//!   its generators are cocycles mapping to the complementary basis vectors.
//! * `N^n` is the kernel of `H^{n+1}(⋀V^{<n}) -> A^{n+1}`; each generator is
//!   sent by `d` to a canonical cocycle representative of one kernel class and
//!   by `ρ` to zero.
//!
//! Everything is computed one torus weight block at a time, so the character
//! of every `V^n` is well defined.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dga::{d_monomial_free, Dga, DgaError, GradedQuotient};
use crate::gca::{Element, GeneratorSet, Monomial};
use crate::linalg::{cokernel_complement, kernel_basis, Echelon, Matrix, SparseVec};
use crate::scalar::Field;
use crate::sp::{self, Character, Decomposition, IrrepLabel, SpError};
use crate::weight::Weight;

/// Default cap on the number of monomials in the largest chain group a
/// stage touches.
pub const DEFAULT_MONOMIAL_BUDGET: u128 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SullivanError {
    #[error("target is not 1-connected: dim A^0 = {dim0}, dim A^1 = {dim1}")]
    TargetNotOneConnected { dim0: usize, dim1: usize },
    #[error("target algebra is only known through degree {known}, degree {needed} is needed")]
    TargetTooShort { needed: u32, known: u32 },
    #[error("stage {degree} would touch about {estimated} monomials, over the budget of {budget}")]
    BudgetExceeded { degree: u32, estimated: u128, budget: u128 },
    #[error("stage {got} requested, next stage is {expected}")]
    StageOrder { expected: u32, got: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no generator named {0:?}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Sp(#[from] SpError),
}

/// `(A, 0)` with a coordinate system on every `(degree, weight)` block.
#[derive(Clone, Debug)]
pub struct TargetAlgebra<F> {
    quotient: Arc<GradedQuotient<F>>,
    positions: HashMap<Monomial, usize>,
}

impl<F: Field> TargetAlgebra<F> {
    pub fn new(quotient: Arc<GradedQuotient<F>>) -> Result<Self, SullivanError> {
        let (dim0, dim1) = (quotient.dim(0), quotient.dim(1));
        if dim0 != 1 || dim1 != 0 {
            return Err(SullivanError::TargetNotOneConnected { dim0, dim1 });
        }
        let mut positions = HashMap::new();
        for n in 0..=quotient.max_degree() {
            for (_, b) in quotient.blocks_in_degree(n) {
                for (j, m) in b.basis_monomials().enumerate() {
                    positions.insert(m.clone(), j);
                }
            }
        }
        Ok(TargetAlgebra { quotient, positions })
    }

    pub fn quotient(&self) -> &GradedQuotient<F> {
        &self.quotient
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.quotient.gens()
    }

    pub fn rank(&self) -> usize {
        self.gens().rank()
    }

    pub fn covers(&self, n: u32) -> bool {
        self.quotient.covers(n)
    }

    pub fn dim(&self, n: u32) -> usize {
        if n > self.quotient.max_degree() {
            return 0;
        }
        self.quotient.dim(n)
    }

    pub fn dim_weight(&self, n: u32, w: &Weight) -> usize {
        if n > self.quotient.max_degree() {
            return 0;
        }
        self.quotient.dim_weight(n, w)
    }

    /// Weights of nonzero blocks in degree `n`.
    pub fn weights(&self, n: u32) -> Vec<Weight> {
        if n > self.quotient.max_degree() {
            return Vec::new();
        }
        self.quotient
            .blocks_in_degree(n)
            .filter(|(_, b)| b.dim() > 0)
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// The `j`-th basis element of the `(n, w)` block.
    pub fn basis_element(&self, n: u32, w: &Weight, j: usize) -> Element<F> {
        let b = self.quotient.block(n, w).expect("block exists");
        let m = b.basis_monomials().nth(j).expect("index within block").clone();
        Element::monomial(m, F::one())
    }

    /// Coordinates of a normal-form element in its block basis.
    pub fn coords(&self, x: &Element<F>) -> SparseVec<F> {
        SparseVec::from_pairs(x.terms().map(|(m, c)| (self.positions[m], c.clone())))
    }

    pub fn reduce(&self, x: &Element<F>) -> Element<F> {
        self.quotient.reduce(x).expect("target covers the degree")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Part {
    C,
    N,
}

/// The generators added in one degree.
#[derive(Clone, Debug)]
pub struct MinimalModelStage {
    pub degree: u32,
    /// Indices into the model's generator list.
    pub generators: Vec<usize>,
    pub c_count: usize,
    pub n_count: usize,
}

impl MinimalModelStage {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalModel<F> {
    target: TargetAlgebra<F>,
    gens: GeneratorSet,
    d: Vec<Element<F>>,
    rho: Vec<Element<F>>,
    parts: Vec<Part>,
    stages: Vec<MinimalModelStage>,
    budget: u128,
}

struct BlockResult<F> {
    weight: Weight,
    c_rho: Vec<Element<F>>,
    n_d: Vec<Element<F>>,
}

impl<F: Field> MinimalModel<F> {
    /// The empty model (`V^1 = 0`, no stages yet).
    pub fn new(target: TargetAlgebra<F>, budget: u128) -> Self {
        let rank = target.rank();
        MinimalModel {
            target,
            gens: GeneratorSet::new(rank),
            d: Vec::new(),
            rho: Vec::new(),
            parts: Vec::new(),
            stages: Vec::new(),
            budget,
        }
    }

    /// Stages `2..=max_degree`.
    pub fn build(target: TargetAlgebra<F>, max_degree: u32, budget: u128) -> Result<Self, SullivanError> {
        let mut m = Self::new(target, budget);
        for n in 2..=max_degree {
            m.extend_stage(n)?;
        }
        Ok(m)
    }

    pub fn target(&self) -> &TargetAlgebra<F> {
        &self.target
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn d_image(&self, i: usize) -> &Element<F> {
        &self.d[i]
    }

    pub fn rho_image(&self, i: usize) -> &Element<F> {
        &self.rho[i]
    }

    pub fn part(&self, i: usize) -> Part {
        self.parts[i]
    }

    pub fn stages(&self) -> &[MinimalModelStage] {
        &self.stages
    }

    pub fn stage(&self, n: u32) -> Option<&MinimalModelStage> {
        self.stages.iter().find(|s| s.degree == n)
    }

    /// Highest completed stage (1 when no stage has been built).
    pub fn max_degree(&self) -> u32 {
        self.stages.last().map_or(1, |s| s.degree)
    }

    pub fn dim(&self, n: u32) -> usize {
        self.stage(n).map_or(0, |s| s.dim())
    }

    /// The free DGA `(⋀V^{≤N}, d)`.
    pub fn dga(&self) -> Dga<F> {
        Dga::new(self.gens.clone(), self.d.clone()).expect("model differential is homogeneous")
    }

    /// `ρ` on a monomial, as a normal form in the target.
    pub fn rho_monomial(&self, m: &Monomial) -> Element<F> {
        if m.factors().any(|(i, _)| self.rho[i].is_zero()) {
            return Element::zero();
        }
        let tg = self.target.gens();
        let mut acc = Element::one();
        for (i, e) in m.factors() {
            acc = tg.product(&acc, &tg.power(&self.rho[i], e));
            if acc.is_zero() {
                return acc;
            }
        }
        self.target.reduce(&acc)
    }

    pub fn rho(&self, x: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(c, &self.rho_monomial(m));
        }
        self.target.reduce(&out)
    }

    fn d_monomial(&self, m: &Monomial) -> Element<F> {
        d_monomial_free(&self.gens, &self.d, m)
    }

    fn check_budget(&self, n: u32) -> Result<(), SullivanError> {
        let estimated = self.gens.count_monomials(n + 1).max(self.gens.count_monomials(n + 2));
        if estimated > self.budget {
            return Err(SullivanError::BudgetExceeded { degree: n, estimated, budget: self.budget });
        }
        Ok(())
    }

    /// Adds `V^n`. Stages must be added in order starting from 2.
    pub fn extend_stage(&mut self, n: u32) -> Result<&MinimalModelStage, SullivanError> {
        let expected = self.max_degree() + 1;
        if n != expected {
            return Err(SullivanError::StageOrder { expected, got: n });
        }
        if !self.target.covers(n + 1) {
            return Err(SullivanError::TargetTooShort { needed: n + 1, known: self.target.quotient().max_degree() });
        }
        self.check_budget(n)?;
        let mut by_n = self.gens.monomials_by_weight(n);
        let mut by_n1 = self.gens.monomials_by_weight(n + 1);
        let weights: BTreeSet<Weight> = by_n1.keys().cloned().chain(self.target.weights(n)).collect();
        let jobs: Vec<(Weight, Vec<Monomial>, Vec<Monomial>)> = weights
            .into_iter()
            .map(|w| {
                let a = by_n.remove(&w).unwrap_or_default();
                let b = by_n1.remove(&w).unwrap_or_default();
                (w, a, b)
            })
            .collect();
        let results: Vec<BlockResult<F>> = jobs
            .into_par_iter()
            .map(|(w, src, src1)| self.stage_block(n, w, &src, &src1))
            .collect();

        let start = self.gens.len();
        let (mut c_count, mut n_count) = (0, 0);
        for r in results {
            let w_name = r.weight.to_string();
            let mut k = 0;
            for rho in r.c_rho {
                self.push_generator(format!("v{n}_{w_name}_{k}"), n, r.weight.clone(), Part::C, Element::zero(), rho)?;
                k += 1;
                c_count += 1;
            }
            for d in r.n_d {
                self.push_generator(format!("v{n}_{w_name}_{k}"), n, r.weight.clone(), Part::N, d, Element::zero())?;
                k += 1;
                n_count += 1;
            }
        }
        for i in start..self.gens.len() {
            if self.parts[i] == Part::N && !self.rho(&self.d[i]).is_zero() {
                return Err(SullivanError::InternalInconsistency(format!(
                    "ρ(d {}) ≠ 0",
                    self.gens.get(i).name
                )));
            }
        }
        self.stages.push(MinimalModelStage {
            degree: n,
            generators: (start..self.gens.len()).collect(),
            c_count,
            n_count,
        });
        Ok(self.stages.last().expect("just pushed"))
    }

    fn push_generator(
        &mut self,
        name: String,
        degree: u32,
        weight: Weight,
        part: Part,
        d: Element<F>,
        rho: Element<F>,
    ) -> Result<(), SullivanError> {
        self.gens
            .push(name, degree, weight)
            .map_err(|e| SullivanError::InternalInconsistency(e.to_string()))?;
        self.d.push(d);
        self.rho.push(rho);
        self.parts.push(part);
        Ok(())
    }

    /// Coordinates of `d(m)` for each `m`, indexing the image monomials
    /// through `index` (extended on demand).
    fn d_columns(&self, src: &[Monomial], index: &mut HashMap<Monomial, usize>, offset: usize) -> Vec<SparseVec<F>> {
        src.iter()
            .map(|m| {
                let img = self.d_monomial(m);
                SparseVec::from_pairs(img.terms().map(|(t, c)| {
                    let next = index.len();
                    (offset + *index.entry(t.clone()).or_insert(next), c.clone())
                }))
            })
            .collect()
    }

    fn stage_block(&self, n: u32, w: Weight, src: &[Monomial], src1: &[Monomial]) -> BlockResult<F> {
        // C^n: complement of ρ(Z^n) in A^n_w
        let mut index1: HashMap<Monomial, usize> =
            src1.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d_n = self.d_columns(src, &mut index1, 0);
        debug_assert_eq!(index1.len(), src1.len());
        let dim_a = self.target.dim_weight(n, &w);
        let mut c_rho = Vec::new();
        if dim_a > 0 {
            let z = kernel_basis(&Matrix::from_columns(src1.len(), &d_n).expect("columns in range"));
            let images: Vec<SparseVec<F>> = z
                .iter()
                .map(|v| {
                    let x = Element::from_terms(v.entries().iter().map(|(i, c)| (src[*i].clone(), c.clone())));
                    self.target.coords(&self.rho(&x))
                })
                .collect();
            for e in cokernel_complement(&images, dim_a).expect("coordinates in range") {
                let (j, _) = e.leading().expect("unit vector");
                c_rho.push(self.target.basis_element(n, &w, j));
            }
        }

        // N^n: kernel of [d; ρ] on (⋀V)^{n+1}_w modulo B^{n+1}_w
        let mut n_d = Vec::new();
        if !src1.is_empty() {
            let dim_a1 = self.target.dim_weight(n + 1, &w);
            let mut index2 = HashMap::new();
            let mut cols = self.d_columns(src1, &mut index2, dim_a1);
            for (col, m) in cols.iter_mut().zip(src1) {
                let r = self.target.coords(&self.rho_monomial(m));
                col.axpy(&F::one(), &r);
            }
            let m = Matrix::from_columns(dim_a1 + index2.len(), &cols).expect("columns in range");
            let kernel = Echelon::from_vectors(&kernel_basis(&m));
            let boundaries = Echelon::from_vectors(&d_n);
            for v in kernel.relative_complement(&boundaries) {
                n_d.push(Element::from_terms(v.entries().iter().map(|(i, c)| (src1[*i].clone(), c.clone()))));
            }
        }
        BlockResult { weight: w, c_rho, n_d }
    }

    /// Weight-multiplicity function of `V^n`.
    pub fn character(&self, n: u32) -> Character {
        let ws = self.stage(n).into_iter().flat_map(|s| s.generators.iter()).map(|&i| &self.gens.get(i).weight);
        Character::from_weights(self.gens.rank(), ws)
    }

    pub fn decomposition(&self, n: u32) -> Result<Decomposition, SullivanError> {
        Ok(sp::decompose(&self.character(n))?)
    }

    pub fn equivariant_report(&self) -> Result<Vec<StageReport>, SullivanError> {
        self.stages
            .iter()
            .map(|s| {
                let decomposition = self.decomposition(s.degree)?;
                Ok(StageReport {
                    degree: s.degree,
                    dim: s.dim(),
                    c_dim: s.c_count,
                    n_dim: s.n_count,
                    character: self.character(s.degree),
                    decomposition,
                })
            })
            .collect()
    }

    /// Recomputes `H^i(⋀V^{≤N}) -> H^i(A)` for `i ≤ up_to + 1`, where `N` is
    /// the last built stage and `up_to ≤ N`.
    pub fn verify_quasi_iso(&self, up_to: u32) -> QuasiIsoReport {
        let up_to = up_to.min(self.max_degree());
        let degrees: Vec<CohomologyComparison> = (0..=up_to + 1)
            .map(|i| {
                let mut by_i = self.gens.monomials_by_weight(i);
                let mut by_prev = if i > 0 { self.gens.monomials_by_weight(i - 1) } else { BTreeMap::new() };
                let weights: BTreeSet<Weight> = by_i.keys().cloned().chain(self.target.weights(i)).collect();
                let mut cmp = CohomologyComparison { degree: i, model: 0, target: self.target.dim(i), image: 0 };
                for w in weights {
                    let src = by_i.remove(&w).unwrap_or_default();
                    let prev = by_prev.remove(&w).unwrap_or_default();
                    let mut index = HashMap::new();
                    let d_i = self.d_columns(&src, &mut index, 0);
                    let z = kernel_basis(&Matrix::from_columns(index.len(), &d_i).expect("in range"));
                    let mut index_src: HashMap<Monomial, usize> =
                        src.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
                    let b = Echelon::from_vectors(&self.d_columns(&prev, &mut index_src, 0));
                    let images = Echelon::from_vectors(
                        &z.iter()
                            .map(|v| {
                                let x = Element::from_terms(
                                    v.entries().iter().map(|(k, c)| (src[*k].clone(), c.clone())),
                                );
                                self.target.coords(&self.rho(&x))
                            })
                            .collect::<Vec<_>>(),
                    );
                    cmp.model += z.len() - b.rank();
                    cmp.image += images.rank();
                }
                cmp
            })
            .collect();
        QuasiIsoReport { up_to, degrees }
    }

    pub fn check_properties(&self) -> PropertyReport {
        let dga = self.dga();
        let mut report = PropertyReport::default();
        report.d_squared = dga.check_d_squared(u32::MAX).violations.into_iter().map(|(n, _)| n).collect();
        for (i, g) in self.gens.iter().enumerate() {
            let d = &self.d[i];
            if d.min_word_length().is_some_and(|k| k < 2) {
                report.not_minimal.push(g.name.clone());
            }
            if !d.is_zero() && self.gens.element_weight(d).as_ref() != Some(&g.weight) {
                report.weight_changed.push(g.name.clone());
            }
            if !d.is_zero() && self.gens.element_degree(d) != Some(g.degree + 1) {
                report.weight_changed.push(g.name.clone());
            }
            if !self.rho(d).is_zero() {
                report.rho_d_nonzero.push(g.name.clone());
            }
            match self.parts[i] {
                Part::N if !self.rho[i].is_zero() => report.rho_on_n_nonzero.push(g.name.clone()),
                Part::C if !d.is_zero() => report.d_on_c_nonzero.push(g.name.clone()),
                _ => {}
            }
        }
        for s in &self.stages {
            let ds: Vec<&Element<F>> =
                s.generators.iter().filter(|&&i| self.parts[i] == Part::N).map(|&i| &self.d[i]).collect();
            let mut index = HashMap::new();
            let mut e = Echelon::new();
            for x in &ds {
                e.insert(SparseVec::from_pairs(x.terms().map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), c.clone())
                })));
            }
            if e.rank() != ds.len() {
                report.d_not_injective_on_n.push(s.degree);
            }
        }
        report
    }

    /// Degrees in `[first, max_degree]` with `V^n = 0`.
    pub fn vanishing_degrees(&self, first: u32) -> Vec<u32> {
        (first..=self.max_degree()).filter(|&n| self.dim(n) == 0).collect()
    }

    /// `⋀V^{≤n}` as a model in its own right.
    pub fn truncated(&self, n: u32) -> Self {
        let keep = self.gens.iter().take_while(|g| g.degree <= n).count();
        let mut out = self.clone();
        out.gens.truncate(keep);
        out.d.truncate(keep);
        out.rho.truncate(keep);
        out.parts.truncate(keep);
        out.stages.retain(|s| s.degree <= n);
        out
    }

    /// Copy of the model truncated at the stage containing `name`, with that
    /// generator removed.
    pub fn without_generator(&self, name: &str) -> Result<Self, SullivanError> {
        let drop = self.gens.index_of(name).ok_or_else(|| SullivanError::UnknownGenerator(name.to_string()))?;
        let degree = self.gens.get(drop).degree;
        let keep: Vec<usize> = (0..self.gens.len())
            .filter(|&i| i != drop && self.gens.get(i).degree <= degree)
            .collect();
        let mut out = Self::new(self.target.clone(), self.budget);
        let mut remap = HashMap::new();
        for &i in &keep {
            remap.insert(i, out.gens.len());
            let g = self.gens.get(i);
            let d = Element::from_terms(self.d[i].terms().map(|(m, c)| {
                let f: Vec<(usize, u32)> = m.factors().map(|(j, e)| (remap[&j], e)).collect();
                (Monomial::from_factors(&f), c.clone())
            }));
            out.push_generator(g.name.clone(), g.degree, g.weight.clone(), self.parts[i], d, self.rho[i].clone())?;
        }
        for s in self.stages.iter().filter(|s| s.degree <= degree) {
            let generators: Vec<usize> = s.generators.iter().filter_map(|i| remap.get(i).copied()).collect();
            let c_count = generators.iter().filter(|&&i| out.parts[i] == Part::C).count();
            out.stages.push(MinimalModelStage {
                degree: s.degree,
                n_count: generators.len() - c_count,
                c_count,
                generators,
            });
        }
        Ok(out)
    }

    pub fn dump(&self) -> Result<ModelDump, SullivanError> {
        let report = self.equivariant_report()?;
        let tg = self.target.gens();
        let stages = self
            .stages
            .iter()
            .zip(report)
            .map(|(s, r)| StageDump {
                degree: s.degree,
                dim: s.dim(),
                irreps: r.decomposition.iter().map(|(l, m)| IrrepDump { label: l.clone(), mult: *m }).collect(),
                character: r.character,
                generators: s
                    .generators
                    .iter()
                    .map(|&i| {
                        let g = self.gens.get(i);
                        GeneratorDump {
                            name: g.name.clone(),
                            degree: g.degree,
                            weight: g.weight.clone(),
                            part: self.parts[i],
                            d_image: self.gens.render(&self.d[i]),
                            rho_image: tg.render(&self.rho[i]),
                        }
                    })
                    .collect(),
            })
            .collect();
        Ok(ModelDump { genus: self.gens.rank() as u32, stages })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub degree: u32,
    pub dim: usize,
    pub c_dim: usize,
    pub n_dim: usize,
    pub character: Character,
    pub decomposition: Decomposition,
}

impl StageReport {
    /// Constituents not strictly dominated by another constituent.
    pub fn maximal_summands(&self) -> Vec<(IrrepLabel, u64)> {
        self.decomposition
            .iter()
            .filter(|(l, _)| !self.decomposition.iter().any(|(k, _)| sp::dominance_lt(l, k)))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyComparison {
    pub degree: u32,
    /// `dim H^i(⋀V^{≤N})`.
    pub model: usize,
    /// `dim A^i`.
    pub target: usize,
    /// Rank of `ρ*` in degree `i`.
    pub image: usize,
}

impl CohomologyComparison {
    pub fn injective(&self) -> bool {
        self.image == self.model
    }

    pub fn isomorphism(&self) -> bool {
        self.injective() && self.image == self.target
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIsoReport {
    pub up_to: u32,
    pub degrees: Vec<CohomologyComparison>,
}

impl QuasiIsoReport {
    /// Human-readable failures: isomorphism through `up_to`, injectivity one
    /// degree above.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.degrees {
            if c.degree <= self.up_to && !c.isomorphism() {
                out.push(format!(
                    "isomorphism fails in degree {}: dim H = {}, dim A = {}, rank ρ* = {}",
                    c.degree, c.model, c.target, c.image
                ));
            }
            if c.degree == self.up_to + 1 && !c.injective() {
                out.push(format!(
                    "injectivity fails at stage {}: dim H^{} = {} but rank ρ* = {}",
                    self.up_to, c.degree, c.model, c.image
                ));
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn model_betti(&self) -> Vec<usize> {
        self.degrees.iter().filter(|c| c.degree <= self.up_to).map(|c| c.model).collect()
    }
}

/// Generator names violating each structural property.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub d_squared: Vec<String>,
    pub not_minimal: Vec<String>,
    pub weight_changed: Vec<String>,
    pub rho_d_nonzero: Vec<String>,
    pub rho_on_n_nonzero: Vec<String>,
    pub d_on_c_nonzero: Vec<String>,
    pub d_not_injective_on_n: Vec<u32>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.d_squared.is_empty()
            && self.not_minimal.is_empty()
            && self.weight_changed.is_empty()
            && self.rho_d_nonzero.is_empty()
            && self.rho_on_n_nonzero.is_empty()
            && self.d_on_c_nonzero.is_empty()
            && self.d_not_injective_on_n.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepDump {
    pub label: IrrepLabel,
    pub mult: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDump {
    pub name: String,
    pub degree: u32,
    pub weight: Weight,
    pub part: Part,
    pub d_image: String,
    pub rho_image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageDump {
    pub degree: u32,
    pub dim: usize,
    pub irreps: Vec<IrrepDump>,
    pub generators: Vec<GeneratorDump>,
    pub character: Character,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelDump {
    pub genus: u32,
    pub stages: Vec<StageDump>,
}

/// Summands `Γ_{a,b}` of a rank-2 model that appear below `n_bound(a, b)`.
pub fn n_bound_violations(reports: &[StageReport]) -> Vec<(u32, IrrepLabel)> {
    let mut out = Vec::new();
    for r in reports {
        for (l, _) in &r.decomposition {
            if l.rank() == 2 && r.degree < sp::n_bound(l.0[0], l.0[1]) {
                out.push((r.degree, l.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    /// `Q[h]/(h^2)` with `deg h = 2`.
    fn sphere_target() -> TargetAlgebra<Q> {
        let mut g = GeneratorSet::new(1);
        g.push("h", 2, Weight::zero(1)).unwrap();
        let h2 = g.power(&Element::<Q>::generator(0), 2);
        TargetAlgebra::new(Arc::new(GradedQuotient::new(g, vec![h2], 8).unwrap())).unwrap()
    }

    #[test]
    fn sphere_stages() {
        let m = MinimalModel::build(sphere_target(), 5, DEFAULT_MONOMIAL_BUDGET).unwrap();
        let dims: Vec<usize> = (2..=5).map(|n| m.dim(n)).collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
        let s2 = m.stage(2).unwrap();
        assert_eq!((s2.c_count, s2.n_count), (1, 0));
        assert_eq!(m.target().gens().render(m.rho_image(0)), "h");
        let s3 = m.stage(3).unwrap();
        assert_eq!((s3.c_count, s3.n_count), (0, 1));
        assert_eq!(m.gens().render(m.d_image(1)), "v2_(0)_0^2");
        assert!(m.check_properties().passed());
        let q = m.verify_quasi_iso(5);
        assert!(q.passed(), "{:?}", q.failures());
        assert_eq!(q.model_betti(), vec![1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn stages_must_be_sequential() {
        let mut m = MinimalModel::new(sphere_target(), DEFAULT_MONOMIAL_BUDGET);
        assert!(matches!(m.extend_stage(3), Err(SullivanError::StageOrder { expected: 2, got: 3 })));
    }

    #[test]
    fn rejects_non_simply_connected_target() {
        let mut g = GeneratorSet::new(1);
        g.push("x", 1, Weight::zero(1)).unwrap();
        let q = GradedQuotient::<Q>::new(g, vec![], 4).unwrap();
        assert!(matches!(
            TargetAlgebra::new(Arc::new(q)),
            Err(SullivanError::TargetNotOneConnected { dim0: 1, dim1: 1 })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let r = MinimalModel::build(sphere_target(), 5, 0);
        assert!(matches!(r, Err(SullivanError::BudgetExceeded { degree: 3, estimated: 1, budget: 0 })));
    }

    #[test]
    fn dropped_generator_breaks_injectivity() {
        let m = MinimalModel::build(sphere_target(), 4, DEFAULT_MONOMIAL_BUDGET).unwrap();
        let broken = m.without_generator("v3_(0)_0").unwrap();
        let q = broken.verify_quasi_iso(3);
        assert!(!q.passed());
        assert!(q.failures().iter().any(|f| f.starts_with("injectivity fails at stage 3")));
    }
}

//! Golden and property suites shared by `nx verify` and the acceptance tests.

use std::collections::HashMap;
use std::sync::Arc;

use clap::ValueEnum;
use nx_homotopy::gca::{Element, GeneratorSet};
use nx_homotopy::linalg::{Echelon, SparseVec};
use nx_homotopy::moduli::{betti_table, build_cohomology_algebra, invariant_ring, q_polynomials};
use nx_homotopy::sp::{
    decompose, exterior_power, irrep_character, multiplicity, render_decomposition, symmetric_power,
    tensor_decompose, Decomposition, IrrepLabel,
};
use nx_homotopy::sullivan::{n_bound_violations, Part, SullivanError};
use nx_homotopy::{MinimalModel, Rational, TargetAlgebra};
use num_traits::One;
use serde::Serialize;

use crate::fixtures;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Genus-2 model through degree 7 against the reference table.
    Genus2Table,
    /// Every genus-2 summand Γ(a,b) of V^n satisfies n ≥ n(a,b).
    DegreeBound,
    /// Unique dominance-maximal summand of the genus-2 V^n.
    LeadingTerms,
    /// Genus ≥ 3 models through degree 2g+1, plus the predicted containments above.
    HigherGenus,
    /// The invariant-subring model has generators in degrees 2,4,6,2g-1,2g+1,2g+3.
    InvariantModel,
    /// Structural properties of every built model and the character identities.
    Properties,
    All,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub genus: Option<u32>,
    pub max_degree: Option<u32>,
    pub budget: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    pub fn render(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{verdict}  {}", self.name)
        } else {
            format!("{verdict}  {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn full_model(g: u32, max_degree: u32, budget: u128) -> Result<MinimalModel, CliError> {
    let ring = build_cohomology_algebra::<Rational>(g)?;
    let target = TargetAlgebra::new(Arc::clone(&ring.quotient))?;
    Ok(MinimalModel::build(target, max_degree, budget)?)
}

pub fn invariant_model(g: u32, max_degree: u32, budget: u128) -> Result<MinimalModel, CliError> {
    let ring = invariant_ring::<Rational>(g)?;
    let target = TargetAlgebra::new(Arc::clone(&ring.quotient))?;
    Ok(MinimalModel::build(target, max_degree, budget)?)
}

fn sorted(d: &Decomposition) -> Decomposition {
    let mut d = d.clone();
    d.sort();
    d
}

fn compare_stage(model: &MinimalModel, n: u32, expected: &Decomposition) -> Result<Check, CliError> {
    let got = model.decomposition(n)?;
    let passed = sorted(&got) == sorted(expected);
    let detail = if passed {
        render_decomposition(&got)
    } else {
        format!("expected {}, got {}", render_decomposition(expected), render_decomposition(&got))
    };
    Ok(Check::new(format!("V^{n}"), passed, detail))
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, CliError> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Genus2Table,
            Suite::DegreeBound,
            Suite::LeadingTerms,
            Suite::HigherGenus,
            Suite::InvariantModel,
            Suite::Properties,
        ],
        s => vec![s],
    };
    suites
        .into_iter()
        .map(|s| {
            let checks = match s {
                Suite::Genus2Table => genus2_table(cfg)?,
                Suite::DegreeBound => degree_bound(cfg.max_degree.unwrap_or(10), cfg.budget)?,
                Suite::LeadingTerms => leading_terms(cfg.max_degree.unwrap_or(10), cfg.budget)?,
                Suite::HigherGenus => {
                    let mut out = Vec::new();
                    for g in cfg.genus.map_or(vec![3, 4], |g| vec![g]) {
                        out.extend(higher_genus(g, cfg.max_degree.unwrap_or(2 * g + 1), cfg.budget)?);
                    }
                    out
                }
                Suite::InvariantModel => {
                    let mut out = Vec::new();
                    for g in cfg.genus.map_or(vec![2, 3, 4], |g| vec![g]) {
                        out.extend(invariant_model_checks(g, cfg.max_degree, cfg.budget)?);
                    }
                    out
                }
                Suite::Properties => properties(cfg)?,
                Suite::All => unreachable!(),
            };
            Ok(SuiteReport { suite: s, checks })
        })
        .collect()
}

pub fn genus2_table(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let model = full_model(2, 7, cfg.budget)?;
    let mut out = Vec::new();
    for (n, expected) in fixtures::genus2_low_degrees() {
        out.push(compare_stage(&model, n, &expected)?);
    }
    let q = model.verify_quasi_iso(7);
    out.push(Check::new("quasi-isomorphism through degree 7", q.passed(), q.failures().join("; ")));
    let betti: Vec<usize> = q.model_betti().into_iter().take(7).collect();
    out.push(Check::new(
        "Betti numbers recovered from the model",
        betti == fixtures::GENUS2_BETTI,
        format!("{betti:?}"),
    ));
    Ok(out)
}

pub fn degree_bound(max_degree: u32, budget: u128) -> Result<Vec<Check>, CliError> {
    let model = full_model(2, max_degree, budget)?;
    let reports = model.equivariant_report()?;
    let bad = n_bound_violations(&reports);
    let summands: usize = reports.iter().map(|r| r.decomposition.len()).sum();
    let detail = if bad.is_empty() {
        format!("{summands} summands in degrees 2..{max_degree}")
    } else {
        bad.iter().map(|(n, l)| format!("{l} in V^{n}")).collect::<Vec<_>>().join(", ")
    };
    Ok(vec![Check::new(format!("n ≥ n(a,b) through degree {max_degree}"), bad.is_empty(), detail)])
}

pub fn leading_terms(max_degree: u32, budget: u128) -> Result<Vec<Check>, CliError> {
    let model = full_model(2, max_degree, budget)?;
    let mut out = Vec::new();
    for r in model.equivariant_report()? {
        if r.degree < 4 {
            continue;
        }
        let expected = fixtures::genus2_leading(r.degree);
        let maximal = r.maximal_summands();
        let passed = maximal == vec![(expected.clone(), 1)];
        let got = maximal
            .iter()
            .map(|(l, m)| format!("{m}·{l}"))
            .collect::<Vec<_>>()
            .join(", ");
        out.push(Check::new(
            format!("leading summand of V^{}", r.degree),
            passed,
            if passed { format!("{expected} with multiplicity 1") } else { format!("expected 1·{expected}, got {got}") },
        ));
    }
    Ok(out)
}

pub fn higher_genus(g: u32, max_degree: u32, budget: u128) -> Result<Vec<Check>, CliError> {
    if g < 3 {
        return Err(CliError::Usage(format!("the higher-genus suite needs genus ≥ 3, got {g}")));
    }
    let max_degree = max_degree.max(2 * g + 1);
    let model = full_model(g, max_degree, budget)?;
    let mut out = Vec::new();
    for (n, expected) in fixtures::higher_genus_table(g) {
        let mut c = compare_stage(&model, n, &expected)?;
        c.name = format!("g={g} {}", c.name);
        out.push(c);
    }
    for n in 2 * g + 2..=max_degree {
        if let Some(l) = fixtures::higher_genus_containment(g, n) {
            let d = model.decomposition(n)?;
            out.push(Check::new(
                format!("g={g} V^{n} contains {l}"),
                multiplicity(&d, &l) > 0,
                render_decomposition(&d),
            ));
        }
    }
    Ok(out)
}

/// Renames the degree-2/4/6 cocycle generators to `α, β, γ` via `ρ`, so a
/// d-image can be compared with the relations.
fn pull_back(model: &MinimalModel, x: &Element<Rational>, target: &GeneratorSet) -> Option<Element<Rational>> {
    let images: Vec<Element<Rational>> = (0..model.gens().len())
        .map(|i| match model.part(i) {
            Part::C => model.rho_image(i).clone(),
            Part::N => Element::zero(),
        })
        .collect();
    let uses_n = x.terms().any(|(m, _)| m.factors().any(|(i, _)| model.part(i) == Part::N));
    (!uses_n).then(|| model.gens().evaluate(x, &images, target))
}

/// Whether `x` is a nonzero multiple of `q` modulo the ideal generated by `lower`.
fn equal_modulo(
    gens: &GeneratorSet,
    x: &Element<Rational>,
    q: &Element<Rational>,
    lower: &[Element<Rational>],
) -> bool {
    let Some(deg) = gens.element_degree(q) else {
        return false;
    };
    let mut index = HashMap::new();
    let mut coords = |e: &Element<Rational>| {
        SparseVec::from_pairs(e.terms().map(|(m, c)| {
            let next = index.len();
            (*index.entry(m.clone()).or_insert(next), c.clone())
        }))
    };
    let mut ideal = Echelon::new();
    for r in lower {
        let Some(dr) = gens.element_degree(r) else { continue };
        if dr > deg {
            continue;
        }
        for m in gens.monomial_basis(deg - dr, None) {
            ideal.insert(coords(&gens.product(r, &Element::monomial(m, Rational::one()))));
        }
    }
    let xr = ideal.reduce(&coords(x));
    let qr = ideal.reduce(&coords(q));
    if xr.is_zero() || qr.is_zero() {
        return false;
    }
    let (j, c) = qr.leading().expect("nonzero");
    let Some(cx) = xr.get(j) else { return false };
    let mut diff = xr.clone();
    diff.axpy(&-(cx.clone() / c.clone()), &qr);
    diff.is_zero()
}

/// The invariant-ring model should be `⋀(α, β, γ, f_1, f_2, f_3)` with
/// `d f_i = q_g^i`, and nothing else through the given degree.
pub fn invariant_model_checks(g: u32, max_degree: Option<u32>, budget: u128) -> Result<Vec<Check>, CliError> {
    let wanted = max_degree.unwrap_or(if g == 2 { 13 } else { 2 * (2 * g + 3) });
    let (model, reached) = match invariant_model(g, wanted, budget) {
        Ok(m) => (m, wanted),
        Err(CliError::Sullivan(SullivanError::BudgetExceeded { .. })) if max_degree.is_none() => {
            (invariant_model(g, 13, budget)?, 13)
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    let degrees: Vec<u32> = model.gens().iter().map(|x| x.degree).collect();
    let expected: Vec<u32> = fixtures::invariant_model_degrees(g).into_iter().filter(|d| *d <= reached).collect();
    out.push(Check::new(
        format!("g={g} generator degrees through {reached}"),
        degrees == expected,
        if degrees == expected { format!("{degrees:?}") } else { format!("expected {expected:?}, got {degrees:?}") },
    ));

    let q = q_polynomials::<Rational>(g);
    let tg = model.target().gens().clone();
    let mut cocycles = Vec::new();
    let mut images = Vec::new();
    for i in 0..model.gens().len() {
        if model.part(i) == Part::C {
            cocycles.push(tg.render(model.rho_image(i)));
        } else {
            images.push(pull_back(&model, model.d_image(i), &tg));
        }
    }
    let cocycles_ok = cocycles == ["α", "β", "γ"];
    out.push(Check::new(
        format!("g={g} cocycle generators map to α, β, γ"),
        cocycles_ok,
        format!("{cocycles:?}"),
    ));
    for (k, qk) in q.q.iter().enumerate() {
        let name = if k == 0 {
            format!("g={g} d f1 = q1")
        } else {
            format!("g={g} d f{} = q{} mod (q1..q{})", k + 1, k + 1, k)
        };
        let got = images.get(k).cloned().flatten();
        let passed = cocycles_ok
            && images.len() == 3
            && got.as_ref().is_some_and(|x| equal_modulo(&tg, x, qk, &q.q[..k]));
        let detail = match &got {
            Some(x) => format!("d f{} = {}, q{} = {}", k + 1, tg.render(x), k + 1, tg.render(qk)),
            None => format!("no matching generator (q{} = {})", k + 1, tg.render(qk)),
        };
        out.push(Check::new(name, passed, detail));
    }
    Ok(out)
}

/// d² = 0, minimality, the quasi-isomorphism conditions at every stage, ρ(N) = 0,
/// ρ∘d = 0 and weight preservation for one model.
pub fn model_property_checks(label: &str, model: &MinimalModel, hyperbolic_from: Option<u32>) -> Vec<Check> {
    let mut out = Vec::new();
    let p = model.check_properties();
    let fmt = |v: &[String]| if v.is_empty() { "ok".to_string() } else { v.join(", ") };
    out.push(Check::new(format!("{label} d² = 0"), p.d_squared.is_empty(), fmt(&p.d_squared)));
    out.push(Check::new(format!("{label} minimality"), p.not_minimal.is_empty(), fmt(&p.not_minimal)));
    out.push(Check::new(format!("{label} ρ(N) = 0"), p.rho_on_n_nonzero.is_empty(), fmt(&p.rho_on_n_nonzero)));
    out.push(Check::new(format!("{label} ρ∘d = 0"), p.rho_d_nonzero.is_empty(), fmt(&p.rho_d_nonzero)));
    out.push(Check::new(
        format!("{label} d preserves degree+1 and weight"),
        p.weight_changed.is_empty(),
        fmt(&p.weight_changed),
    ));
    out.push(Check::new(
        format!("{label} d|C = 0 and d injective on N"),
        p.d_on_c_nonzero.is_empty() && p.d_not_injective_on_n.is_empty(),
        format!("{:?} {:?}", p.d_on_c_nonzero, p.d_not_injective_on_n),
    ));
    let mut failures = Vec::new();
    for s in model.stages() {
        let q = model.truncated(s.degree).verify_quasi_iso(s.degree);
        failures.extend(q.failures());
    }
    out.push(Check::new(
        format!("{label} quasi-isomorphism conditions at every stage"),
        failures.is_empty(),
        if failures.is_empty() { format!("stages 2..{}", model.max_degree()) } else { failures.join("; ") },
    ));
    if let Some(first) = hyperbolic_from {
        let zero = model.vanishing_degrees(first);
        out.push(Check::new(
            format!("{label} V^n ≠ 0 for {first} ≤ n ≤ {}", model.max_degree()),
            zero.is_empty(),
            if zero.is_empty() { "ok".to_string() } else { format!("V^n = 0 for n in {zero:?}") },
        ));
    }
    out
}

pub fn character_round_trip(rank: usize, max_entry: u32) -> Check {
    let mut labels = vec![vec![]];
    for _ in 0..rank {
        labels = labels
            .into_iter()
            .flat_map(|l: Vec<u32>| {
                (0..=max_entry).map(move |a| {
                    let mut l = l.clone();
                    l.push(a);
                    l
                })
            })
            .collect();
    }
    let mut bad = Vec::new();
    for l in &labels {
        let label = IrrepLabel(l.clone());
        match decompose(&irrep_character(&label)) {
            Ok(d) if d == vec![(label.clone(), 1)] => {}
            other => bad.push(format!("{label} -> {other:?}")),
        }
    }
    Check::new(
        format!("decompose∘character = id, rank {rank}, entries ≤ {max_entry}"),
        bad.is_empty(),
        if bad.is_empty() { format!("{} labels", labels.len()) } else { bad.join("; ") },
    )
}

pub fn tensor_identities() -> Vec<Check> {
    let l = |a: &[u32]| IrrepLabel::new(a);
    let std = irrep_character(&l(&[1, 0]));
    let mut out = Vec::new();
    let ext = decompose(&exterior_power(&std, 2)).map(|d| sorted(&d));
    let want = sorted(&vec![(l(&[0, 1]), 1), (l(&[0, 0]), 1)]);
    out.push(Check::new("∧²Γ(1,0) = Γ(0,1) ⊕ Γ(0,0)", ext.as_ref() == Ok(&want), match &ext {
        Ok(d) => render_decomposition(d),
        Err(e) => e.to_string(),
    }));
    let mut sym_bad = Vec::new();
    for a in 1..=6 {
        let d = decompose(&symmetric_power(&std, a));
        if d != Ok(vec![(l(&[a as u32, 0]), 1)]) {
            sym_bad.push(format!("a={a}: {d:?}"));
        }
    }
    out.push(Check::new("Sym^a Γ(1,0) = Γ(a,0) for a ≤ 6", sym_bad.is_empty(), sym_bad.join("; ")));
    let t = sorted(&tensor_decompose(&l(&[0, 1]), &l(&[1, 0])));
    let want = sorted(&vec![(l(&[1, 1]), 1), (l(&[1, 0]), 1)]);
    out.push(Check::new("Γ(0,1) ⊗ Γ(1,0) = Γ(1,1) ⊕ Γ(1,0)", t == want, render_decomposition(&t)));
    out
}

pub fn negative_containments() -> Vec<Check> {
    let mut out = Vec::new();
    for rank in [2usize, 3] {
        for k in 2..=4u32 {
            let mut big = vec![0; rank];
            big[0] = k;
            let mut small = vec![0; rank];
            small[0] = k - 2;
            let target = IrrepLabel(big);
            let d = tensor_decompose(&IrrepLabel(small.clone()), &IrrepLabel::fundamental(rank, 2));
            out.push(Check::new(
                format!("{target} ⊄ {} ⊗ {}", IrrepLabel(small), IrrepLabel::fundamental(rank, 2)),
                multiplicity(&d, &target) == 0,
                render_decomposition(&d),
            ));
        }
    }
    out
}

pub fn properties(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let genus2_top = cfg.max_degree.unwrap_or(10);
    out.extend(model_property_checks("g=2", &full_model(2, genus2_top, cfg.budget)?, Some(3)));
    out.extend(model_property_checks("g=3", &full_model(3, 9, cfg.budget)?, Some(5)));
    out.extend(model_property_checks("g=4", &full_model(4, 9, cfg.budget)?, Some(7)));
    for g in [2, 3, 4] {
        let model = invariant_model(g, 2 * (2 * g + 3), cfg.budget)?;
        out.extend(model_property_checks(&format!("invariant g={g}"), &model, None));
    }
    out.push(character_round_trip(2, 3));
    out.push(character_round_trip(3, 3));
    out.extend(tensor_identities());
    out.extend(negative_containments());
    Ok(out)
}

/// Betti table of the full ring, both computation paths.
pub fn betti_check(g: u32) -> Result<Check, CliError> {
    let t = betti_table::<Rational>(g)?;
    Ok(Check::new(
        format!("g={g} Betti numbers, both paths"),
        t.agree(),
        format!("quotient {:?}, decomposition {:?}", t.quotient, t.decomposition),
    ))
}

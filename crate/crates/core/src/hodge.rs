//! Hodge ideals of the Q-divisor `D = α·Z`, where `Z = {f = 0}` has an
//! isolated singularity at the origin.
//!
//! Two routes compute the chain `I_0 ⊇ I_1 ⊇ … ⊇ I_K`:
//!
//! * **Recursive** (weighted mode): `I_0 = O^{≥α}` and `I_{k+1}` is
//!   generated by the Milnor-basis monomials of weight at least `α + k + 1`
//!   together with `T_{i, α+k}(g)` and `f·g` over generators `g` of `I_k`,
//!   where `T_{i,c}(a) = f ∂_i a − c·a·∂_i f`.  The step is independent of
//!   the chosen generating set: `T_{i,c}(h·g) = h·T_{i,c}(g) + f·g·∂_i h`.
//!
//! * **Direct**: `I_k` is generated by
//!   `f^{k−i−m} · T_{j_m, α+i+m−1}(⋯ T_{j_1, α+i}(v) ⋯)` over
//!   `0 ≤ i ≤ k`, `0 ≤ m ≤ k − i`, filtration generators `v` of `O^{≥α+i}`
//!   (the Newton filtration `Õ` in Newton mode), and multisets
//!   `j_1 ≤ … ≤ j_m` of derivation indices — successive `T`-operators
//!   commute here up to terms the earlier factors already generate, so
//!   ordered multisets suffice.
//!
//! Every ideal in a chain lives on one shared truncation `m^M` with
//! `M = max(filtration bound at α + K, Jacobian exponent) + 1`; the `+ 1`
//! puts `m^M` inside `m·I_k` for every level, which keeps quotient data and
//! minimal generators exact, not just correct modulo truncation.

use std::sync::Arc;

use num_traits::Signed;

use crate::error::Error;
use crate::localring::{
    jacobian_data, truncate_degree_for, JacobianData, MonomialTable, Relation,
    TruncatedIdeal,
};
use crate::newton::NewtonPolyhedron;
use crate::poly::{render_rational, twisted_derivation, Exponent, Polynomial, Rational};
use crate::weights::{
    check_weighted_homogeneous, detect_weights, filtration_generators, WeightData,
};

/// Cap on the truncation sweep that certifies the Milnor number.
pub const JACOBIAN_SWEEP_CAP: u32 = 40;

/// Which filtration the divisor carries.
pub enum WeightSource {
    /// Quasi-homogeneous weights detected from the support.
    Weighted(WeightData),
    /// A convenient, non-degenerate Newton polyhedron.
    Newton(NewtonPolyhedron),
}

/// How the weight data should be obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Weighted,
    Newton,
}

/// A validated Q-divisor `α·Z`: `0 < α ≤ 1`, `f` singular exactly at the
/// origin, weight data established for the requested mode.
pub struct QDivisor {
    f: Polynomial,
    alpha: Rational,
    source: WeightSource,
    jacobian: JacobianData,
}

impl QDivisor {
    fn validate(f: &Polynomial, alpha: &Rational) -> Result<(), Error> {
        if !alpha.is_positive() || *alpha > Rational::from_integer(1.into()) {
            return Err(Error::AlphaOutOfRange(render_rational(alpha)));
        }
        if f.is_zero() {
            return Err(Error::Invalid("the divisor polynomial is zero".into()));
        }
        if f.min_degree() < Some(2) {
            return Err(Error::Invalid(
                "the divisor must be singular at the origin: every term needs degree at least 2"
                    .into(),
            ));
        }
        Ok(())
    }

    pub fn new(f: Polynomial, alpha: Rational, mode: Mode) -> Result<Self, Error> {
        Self::validate(&f, &alpha)?;
        let source = match mode {
            Mode::Weighted => WeightSource::Weighted(detect_weights(&f)?),
            Mode::Newton => {
                let np = NewtonPolyhedron::build(&f)?;
                if !np.is_convenient() {
                    return Err(Error::NotConvenient(
                        "Newton mode needs a support point on every coordinate axis".into(),
                    ));
                }
                if !np.has_compact_facets() {
                    return Err(Error::DegenerateNewton(
                        "the Newton polyhedron has no compact facets".into(),
                    ));
                }
                let report = np.nondegeneracy_report();
                if !report.nondegenerate {
                    let bad: Vec<String> = report
                        .checks
                        .iter()
                        .filter(|c| !c.nondegenerate)
                        .map(|c| {
                            let face = &np.faces()[c.face];
                            format!("{}", np.face_polynomial(c.face).clone())
                                + &format!(" (dimension {})", face.dimension())
                        })
                        .collect();
                    return Err(Error::DegenerateNewton(format!(
                        "degenerate face polynomial(s): {}",
                        bad.join("; ")
                    )));
                }
                WeightSource::Newton(np)
            }
        };
        let weights = match &source {
            WeightSource::Weighted(w) => Some(w),
            WeightSource::Newton(_) => None,
        };
        let jacobian = jacobian_data(&f, weights, JACOBIAN_SWEEP_CAP)?;
        Ok(QDivisor { f, alpha, source, jacobian })
    }

    /// Weighted-mode divisor with an explicitly supplied weight vector, for
    /// inputs whose support does not determine the weights on its own.
    pub fn with_weights(
        f: Polynomial,
        alpha: Rational,
        weights: WeightData,
    ) -> Result<Self, Error> {
        Self::validate(&f, &alpha)?;
        check_weighted_homogeneous(&f, &weights)?;
        let jacobian = jacobian_data(&f, Some(&weights), JACOBIAN_SWEEP_CAP)?;
        Ok(QDivisor {
            f,
            alpha,
            source: WeightSource::Weighted(weights),
            jacobian,
        })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn vars(&self) -> usize {
        self.f.vars()
    }

    pub fn source(&self) -> &WeightSource {
        &self.source
    }

    pub fn weights(&self) -> Option<&WeightData> {
        match &self.source {
            WeightSource::Weighted(w) => Some(w),
            WeightSource::Newton(_) => None,
        }
    }

    pub fn polyhedron(&self) -> Option<&NewtonPolyhedron> {
        match &self.source {
            WeightSource::Weighted(_) => None,
            WeightSource::Newton(np) => Some(np),
        }
    }

    pub fn jacobian(&self) -> &JacobianData {
        &self.jacobian
    }

    /// Minimal monomial generators of the mode's filtration at level `c`.
    pub fn filtration_generator_exponents(&self, c: &Rational) -> Vec<Exponent> {
        match &self.source {
            WeightSource::Weighted(w) => filtration_generators(c, w),
            WeightSource::Newton(np) => np
                .tilde_filtration_generators(c)
                .expect("polyhedron validated at construction"),
        }
    }

    pub fn filtration_generator_polys(&self, c: &Rational) -> Vec<Polynomial> {
        self.filtration_generator_exponents(c)
            .into_iter()
            .map(|e| Polynomial::monomial(self.vars(), e, Rational::from_integer(1.into())))
            .collect()
    }

    /// Smallest degree whose maximal-ideal power lies inside the filtration
    /// at level `c`.
    fn filtration_truncation(&self, c: &Rational) -> u32 {
        match &self.source {
            WeightSource::Weighted(w) => truncate_degree_for(c, w),
            WeightSource::Newton(np) => {
                let min_sum = np
                    .facets()
                    .iter()
                    .map(|f| f.normal_sum())
                    .min()
                    .expect("validated facets");
                let min_entry = np
                    .facets()
                    .iter()
                    .flat_map(|f| f.normal().iter().cloned())
                    .min()
                    .expect("validated facets");
                let slack = c - min_sum;
                if !slack.is_positive() {
                    return 1;
                }
                let steps = (&slack / &min_entry).ceil().to_integer();
                u32::try_from(steps).expect("truncation degree fits in u32").max(1)
            }
        }
    }

    /// Shared truncation degree for a chain of depth `k_max`.
    pub fn chain_truncation(&self, k_max: u32) -> u32 {
        let top = &self.alpha + Rational::from_integer(k_max.into());
        self.filtration_truncation(&top).max(self.jacobian.exponent) + 1
    }

    /// Milnor-basis monomials of weight at least `c`; the Milnor part of the
    /// recursion step.  Weighted mode only.
    pub(crate) fn milnor_candidates(&self, c: &Rational) -> Option<Vec<Polynomial>> {
        let rho = self.jacobian.basis_rho.as_ref()?;
        Some(
            self.jacobian
                .basis
                .iter()
                .zip(rho)
                .filter(|(_, r)| *r >= c)
                .map(|(e, _)| {
                    Polynomial::monomial(self.vars(), e.clone(), Rational::from_integer(1.into()))
                })
                .collect(),
        )
    }
}

/// Which construction produced a chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Recursive,
    Direct,
}

/// The chain `I_0 ⊇ … ⊇ I_K` on one shared truncation, with minimal
/// generators per level.
pub struct HodgeChain {
    pub alpha: Rational,
    pub method: Method,
    pub truncation: u32,
    pub ideals: Vec<TruncatedIdeal>,
    pub generators: Vec<Vec<Polynomial>>,
}

impl HodgeChain {
    pub fn depth(&self) -> u32 {
        (self.ideals.len() - 1) as u32
    }

    pub fn table(&self) -> &Arc<MonomialTable> {
        self.ideals[0].table()
    }
}

/// The level-by-level recursion.  Weighted mode only: the Milnor part of
/// the step needs the weight of every basis monomial.
pub fn hodge_ideal_recursive(d: &QDivisor, k_max: u32) -> Result<HodgeChain, Error> {
    if d.weights().is_none() {
        return Err(Error::WeightedModeOnly);
    }
    let table = MonomialTable::new(d.vars(), d.chain_truncation(k_max));
    let mut ideals = Vec::with_capacity(k_max as usize + 1);
    let mut generators = Vec::with_capacity(k_max as usize + 1);

    let first = TruncatedIdeal::new(&d.filtration_generator_polys(d.alpha()), Arc::clone(&table));
    generators.push(first.minimal_generators());
    ideals.push(first);

    for k in 0..k_max {
        let c = d.alpha() + Rational::from_integer(k.into());
        let next_weight = d.alpha() + Rational::from_integer((k + 1).into());
        let mut candidates = d
            .milnor_candidates(&next_weight)
            .expect("weighted mode checked above");
        for g in &generators[k as usize] {
            for var in 0..d.vars() {
                candidates.push(twisted_derivation(g, d.polynomial(), &c, var));
            }
            candidates.push(d.polynomial() * g);
        }
        let ideal = TruncatedIdeal::new(&candidates, Arc::clone(&table));
        generators.push(ideal.minimal_generators());
        ideals.push(ideal);
    }
    Ok(HodgeChain {
        alpha: d.alpha().clone(),
        method: Method::Recursive,
        truncation: table.max_degree(),
        ideals,
        generators,
    })
}

/// The closed-form generator list, one level at a time.  Works in both
/// modes; in Newton mode the filtration is the Newton one.
pub fn hodge_ideal_direct(d: &QDivisor, k_max: u32) -> Result<HodgeChain, Error> {
    let table = MonomialTable::new(d.vars(), d.chain_truncation(k_max));
    let mut ideals = Vec::with_capacity(k_max as usize + 1);
    let mut generators = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let mut candidates = Vec::new();
        for i in 0..=k {
            let c0 = d.alpha() + Rational::from_integer(i.into());
            for v in d.filtration_generator_polys(&c0) {
                push_derivation_chains(d, &v, &c0, (k - i) as usize, 0, &mut candidates);
            }
        }
        let ideal = TruncatedIdeal::new(&candidates, Arc::clone(&table));
        generators.push(ideal.minimal_generators());
        ideals.push(ideal);
    }
    Ok(HodgeChain {
        alpha: d.alpha().clone(),
        method: Method::Direct,
        truncation: table.max_degree(),
        ideals,
        generators,
    })
}

/// Emits `f^{budget−m} · (current chain value)` for every extension of the
/// current `T`-chain by `m ≤ budget` more derivations with indices at least
/// `min_var`.
fn push_derivation_chains(
    d: &QDivisor,
    current: &Polynomial,
    c: &Rational,
    budget: usize,
    min_var: usize,
    out: &mut Vec<Polynomial>,
) {
    out.push(if budget == 0 {
        current.clone()
    } else {
        &d.polynomial().pow(budget as u32) * current
    });
    if budget == 0 {
        return;
    }
    let next_c = c + Rational::from_integer(1.into());
    for var in min_var..d.vars() {
        let extended = twisted_derivation(current, d.polynomial(), c, var);
        push_derivation_chains(d, &extended, &next_c, budget - 1, var, out);
    }
}

/// `floor(n − σ − α)`: the closed-form generating level.  Weighted mode
/// only.
pub fn generating_level_formula(d: &QDivisor) -> Result<i64, Error> {
    let w = d.weights().ok_or(Error::WeightedModeOnly)?;
    let value = Rational::from_integer(d.vars().into()) - w.sigma() - d.alpha();
    let floored = value.floor().to_integer();
    Ok(i64::try_from(floored).expect("generating level fits in i64"))
}

/// One comparison `J_k` vs `I_k` in the empirical generating-level sweep.
pub struct LevelStep {
    pub k: u32,
    /// How `J_k = (T_{i,α+k−1}(g), f·g : g generates I_{k−1})` sits inside
    /// `I_k`; always `Equal` or `LeftInRight`.
    pub relation: Relation,
}

pub struct LevelTable {
    pub steps: Vec<LevelStep>,
    /// Largest `k` whose step ideal falls short of `I_k`; 0 when none does.
    pub level: u32,
}

/// Finds the generating level empirically: the last `k` where the previous
/// ideal's image fails to generate `I_k`.  Weighted mode only.
pub fn generating_level_empirical(d: &QDivisor, k_max: u32) -> Result<LevelTable, Error> {
    let chain = hodge_ideal_recursive(d, k_max)?;
    let mut steps = Vec::new();
    let mut level = 0;
    for k in 1..=k_max {
        let c = d.alpha() + Rational::from_integer((k - 1).into());
        let mut candidates = Vec::new();
        for g in &chain.generators[(k - 1) as usize] {
            for var in 0..d.vars() {
                candidates.push(twisted_derivation(g, d.polynomial(), &c, var));
            }
            candidates.push(d.polynomial() * g);
        }
        let step_ideal = TruncatedIdeal::new(&candidates, Arc::clone(chain.table()));
        let relation = step_ideal.compare(&chain.ideals[k as usize])?;
        if relation != Relation::Equal {
            level = k;
        }
        steps.push(LevelStep { k, relation });
    }
    Ok(LevelTable { steps, level })
}

/// Asserts the structural invariants of a computed chain: each ideal
/// contains the next, contains the filtration at its own level, and the
/// chain starts at the filtration ideal itself.
pub fn verify_chain_structure(d: &QDivisor, chain: &HodgeChain) -> Result<(), Error> {
    let table = chain.table();
    let expected_first =
        TruncatedIdeal::new(&d.filtration_generator_polys(d.alpha()), Arc::clone(table));
    if chain.ideals[0].compare(&expected_first)? != Relation::Equal {
        return Err(Error::Assertion(
            "the chain does not start at the filtration ideal".into(),
        ));
    }
    for k in 0..chain.ideals.len() {
        if k + 1 < chain.ideals.len() && !chain.ideals[k + 1].subset_of(&chain.ideals[k])? {
            return Err(Error::Assertion(format!(
                "chain is not descending at level {}",
                k + 1
            )));
        }
        let c = d.alpha() + Rational::from_integer(k.into());
        for v in d.filtration_generator_polys(&c) {
            if !chain.ideals[k].contains(&v) {
                return Err(Error::Assertion(format!(
                    "level-{k} ideal misses the filtration monomial {v}"
                )));
            }
        }
    }
    Ok(())
}

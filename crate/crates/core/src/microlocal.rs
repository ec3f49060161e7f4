//! Microlocal ideals `Ĩ_0 ⊇ Ĩ_1 ⊇ … ⊇ Ĩ_K` of the Q-divisor `D = α·Z`
//! and the comparison machinery against the Hodge-ideal tower.
//!
//! The chain follows the recursion `Ĩ_0 = O^{≥α}` and
//! `Ĩ_p = Σ_{ρ(v_j) ≥ α+p} O·v_j + (∂_1 f, …, ∂_n f)·Ĩ_{p−1}`, valid for
//! weighted homogeneous `f` only.  The step is independent of the chosen
//! generating set of `Ĩ_{p−1}` because a product of ideals is generated by
//! products of generators.
//!
//! Both towers share the truncation degree of [`QDivisor::chain_truncation`].
//! That keeps the microlocal side exact too: every weighted-degree-`d` piece
//! of `O` splits into Milnor-basis monomials plus `(∂f)`-multiples of pieces
//! one weighted degree lower, so `O^{≥α+p} ⊆ Ĩ_p` by induction and `m^M`
//! stays inside `m·Ĩ_p` at every level.
//!
//! [`compare_chains`] relates the towers level by level and enforces three
//! proved facts as hard assertions — they can only fail on an implementation
//! bug, never on honest input:
//!
//! * `I_k + (f) = Ĩ_k + (f)` at every level;
//! * `I_k = Ĩ_k = m^t` for some `t` forces `I_{k+1} = Ĩ_{k+1}`;
//! * at `k = 0`, that criterion is the *only* way to get `I_1 = Ĩ_1`.
//!
//! The open question is whether the criterion stays the only way for
//! `k ≥ 1`.  [`compare_chains`] reports equality at `k+1` without the
//! criterion firing at `k` as a *counterexample verdict* rather than an
//! error, and [`conjecture_sweep`] batches that experiment over many `α`.

use std::sync::Arc;

use crate::error::Error;
use crate::hodge::{hodge_ideal_recursive, QDivisor};
use crate::localring::{MonomialTable, Relation, TruncatedIdeal};
use crate::poly::{Polynomial, Rational};

/// The chain `Ĩ_0 ⊇ … ⊇ Ĩ_K` on one shared truncation, with minimal
/// generators per level.
pub struct MicrolocalChain {
    pub alpha: Rational,
    pub truncation: u32,
    pub ideals: Vec<TruncatedIdeal>,
    pub generators: Vec<Vec<Polynomial>>,
}

impl MicrolocalChain {
    pub fn depth(&self) -> u32 {
        (self.ideals.len() - 1) as u32
    }

    pub fn table(&self) -> &Arc<MonomialTable> {
        self.ideals[0].table()
    }
}

/// Runs the microlocal recursion up to level `k_max`.  Weighted mode only:
/// the recursion is proved for weighted homogeneous `f` and nothing else.
pub fn microlocal_chain(d: &QDivisor, k_max: u32) -> Result<MicrolocalChain, Error> {
    if d.weights().is_none() {
        return Err(Error::WeightedModeOnly);
    }
    let table = MonomialTable::new(d.vars(), d.chain_truncation(k_max));
    let partials: Vec<Polynomial> = (0..d.vars())
        .map(|var| d.polynomial().partial_derivative(var))
        .collect();
    let mut ideals = Vec::with_capacity(k_max as usize + 1);
    let mut generators = Vec::with_capacity(k_max as usize + 1);

    let first = TruncatedIdeal::new(&d.filtration_generator_polys(d.alpha()), Arc::clone(&table));
    generators.push(first.minimal_generators());
    ideals.push(first);

    for p in 1..=k_max {
        let c = d.alpha() + Rational::from_integer(p.into());
        let mut candidates = d
            .milnor_candidates(&c)
            .expect("weighted mode checked above");
        for g in &generators[(p - 1) as usize] {
            for partial in &partials {
                candidates.push(partial * g);
            }
        }
        let ideal = TruncatedIdeal::new(&candidates, Arc::clone(&table));
        generators.push(ideal.minimal_generators());
        ideals.push(ideal);
    }
    Ok(MicrolocalChain {
        alpha: d.alpha().clone(),
        truncation: table.max_degree(),
        ideals,
        generators,
    })
}

/// Outcome of the equality experiment at one level: `I_{k+1} = Ĩ_{k+1}`
/// without the power-of-`m` criterion firing at `k` would contradict the
/// conjectured converse.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjectureVerdict {
    Consistent,
    Counterexample,
}

/// One level of the tower comparison.
pub struct LevelComparison {
    pub k: u32,
    /// How `I_k` sits against `Ĩ_k`.
    pub relation: Relation,
    /// `Some(t)` exactly when `I_k = m^t`.
    pub hodge_power: Option<u32>,
    /// `I_k + (f) = Ĩ_k + (f)`; always true — a false value is an
    /// assertion breach, not data.
    pub mod_f_equal: bool,
    /// The equality criterion held at this level: `I_k = Ĩ_k` and `I_k` is
    /// a power of the maximal ideal.
    pub criterion_fired: bool,
    /// Verdict about level `k+1`; `None` on the last computed level.
    pub conjecture: Option<ConjectureVerdict>,
}

/// Level-by-level comparison of the two towers attached to one divisor.
pub struct ComparisonReport {
    pub alpha: Rational,
    pub levels: Vec<LevelComparison>,
    pub hodge_generators: Vec<Vec<Polynomial>>,
    pub microlocal_generators: Vec<Vec<Polynomial>>,
    /// True when any level carries a counterexample verdict.
    pub counterexample: bool,
}

/// Computes both towers to depth `k_max` and compares them.  Weighted mode
/// only.
pub fn compare_chains(d: &QDivisor, k_max: u32) -> Result<ComparisonReport, Error> {
    let hodge = hodge_ideal_recursive(d, k_max)?;
    let micro = microlocal_chain(d, k_max)?;
    let table = hodge.table();
    let f = d.polynomial();

    let mut levels = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max as usize {
        let relation = hodge.ideals[k].compare(&micro.ideals[k])?;
        let hodge_power = hodge.ideals[k].is_power_of_maximal();

        let mut left = hodge.generators[k].clone();
        left.push(f.clone());
        let mut right = micro.generators[k].clone();
        right.push(f.clone());
        let left_mod = TruncatedIdeal::new(&left, Arc::clone(table));
        let right_mod = TruncatedIdeal::new(&right, Arc::clone(table));
        if left_mod.compare(&right_mod)? != Relation::Equal {
            return Err(Error::Assertion(format!(
                "I_{k} and the microlocal ideal disagree modulo (f)"
            )));
        }

        if k > 0 && !micro.ideals[k].subset_of(&micro.ideals[k - 1])? {
            return Err(Error::Assertion(format!(
                "microlocal chain is not descending at level {k}"
            )));
        }

        levels.push(LevelComparison {
            k: k as u32,
            relation,
            hodge_power,
            mod_f_equal: true,
            criterion_fired: relation == Relation::Equal && hodge_power.is_some(),
            conjecture: None,
        });
    }

    for k in 0..k_max as usize {
        let next_equal = levels[k + 1].relation == Relation::Equal;
        if levels[k].criterion_fired && !next_equal {
            return Err(Error::Assertion(format!(
                "towers equal to a power of the maximal ideal at level {k} \
                 but unequal at level {}",
                k + 1
            )));
        }
        if k == 0
            && next_equal
            && levels[0].relation == Relation::Equal
            && levels[0].hodge_power.is_none()
        {
            return Err(Error::Assertion(
                "towers equal at level 1 although I_0 is not a power of the maximal ideal"
                    .into(),
            ));
        }
        levels[k].conjecture = Some(if next_equal && !levels[k].criterion_fired {
            ConjectureVerdict::Counterexample
        } else {
            ConjectureVerdict::Consistent
        });
    }

    let counterexample = levels
        .iter()
        .any(|l| l.conjecture == Some(ConjectureVerdict::Counterexample));
    Ok(ComparisonReport {
        alpha: d.alpha().clone(),
        levels,
        hodge_generators: hodge.generators,
        microlocal_generators: micro.generators,
        counterexample,
    })
}

/// One entry of a sweep: per-α failures are recorded, never propagated.
pub struct SweepItem {
    pub alpha: Rational,
    pub outcome: Result<ComparisonReport, Error>,
}

/// Runs [`compare_chains`] for `f` at every listed `α`, in input order.
pub fn conjecture_sweep(f: &Polynomial, alphas: &[Rational], k_max: u32) -> Vec<SweepItem> {
    alphas
        .iter()
        .map(|alpha| {
            let outcome = crate::hodge::QDivisor::new(
                f.clone(),
                alpha.clone(),
                crate::hodge::Mode::Weighted,
            )
            .and_then(|d| compare_chains(&d, k_max));
            SweepItem { alpha: alpha.clone(), outcome }
        })
        .collect()
}

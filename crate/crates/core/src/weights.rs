//! Weight vectors and the weight filtration on the local ring.
//!
//! A polynomial `f` with `f(0) = 0` is weighted homogeneous for positive
//! rational weights `w = (w_1, ..., w_n)` when every exponent `A` in its
//! support satisfies `⟨A, w⟩ = 1`.  For such `f` with an isolated critical
//! point the weight of a series `g = Σ g_A x^A` is
//!
//! ```text
//! ρ(g) = w_1 + ... + w_n + min{ ⟨A, w⟩ : g_A ≠ 0 },      ρ(0) = +∞,
//! ```
//!
//! and `O^{≥c} = { g : ρ(g) ≥ c }` is a monomial ideal of the local ring.
//! `ρ(1) = Σ w_i` is the minimal exponent of the singularity.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{self, Solution};
use crate::poly::{Exponent, Polynomial, Rational};

/// A strictly positive weight vector together with its entry sum
/// `σ = Σ w_i`, the weight of the constant 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightData {
    weights: Vec<Rational>,
    sigma: Rational,
}

impl WeightData {
    pub fn new(weights: Vec<Rational>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::Invalid("weight vector must be non-empty".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::NotWeightedHomogeneous(format!(
                "weight {} is not strictly positive",
                crate::poly::render_rational(bad)
            )));
        }
        let mut sigma = Rational::zero();
        for w in &weights {
            sigma += w;
        }
        Ok(WeightData { weights, sigma })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, var: usize) -> &Rational {
        &self.weights[var]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `σ = Σ w_i`.
    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    /// `⟨A, w⟩` for an exponent vector `A`.
    pub fn weighted_degree(&self, exp: &Exponent) -> Rational {
        assert_eq!(exp.len(), self.len());
        let mut acc = Rational::zero();
        for (e, w) in exp.entries().iter().zip(&self.weights) {
            if *e > 0 {
                acc += w * Rational::from_integer((*e).into());
            }
        }
        acc
    }

    /// `ρ(x^A) = σ + ⟨A, w⟩`.
    pub fn rho_exponent(&self, exp: &Exponent) -> Rational {
        &self.sigma + self.weighted_degree(exp)
    }
}

/// Solves `⟨A, w⟩ = 1` over the support of `f` for the weights.
///
/// Errors: `NotWeightedHomogeneous` when the system is inconsistent or its
/// unique solution has a non-positive entry; `UnderdeterminedWeights` when
/// the support does not pin the weights down (the caller should then supply
/// them explicitly).
pub fn detect_weights(f: &Polynomial) -> Result<WeightData, Error> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot detect weights of the zero polynomial".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Invalid("f must vanish at the origin".into()));
    }
    let rows: Vec<Vec<Rational>> = f
        .terms()
        .map(|(exp, _)| {
            exp.entries()
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect()
        })
        .collect();
    let rhs = vec![Rational::one(); rows.len()];
    match linalg::solve(&rows, &rhs) {
        Solution::Unique(w) => WeightData::new(w),
        Solution::Inconsistent => Err(Error::NotWeightedHomogeneous(
            "no weight vector gives every exponent weighted degree 1".into(),
        )),
        Solution::Underdetermined => Err(Error::UnderdeterminedWeights),
    }
}

/// Checks that every exponent of `f` has weighted degree exactly 1 under
/// `w`, i.e. that `w` is a valid weight vector for `f`.
pub fn check_weighted_homogeneous(f: &Polynomial, w: &WeightData) -> Result<(), Error> {
    if f.vars() != w.len() {
        return Err(Error::Invalid(format!(
            "{} weights supplied for {} variables",
            w.len(),
            f.vars()
        )));
    }
    for (exp, _) in f.terms() {
        if !w.weighted_degree(exp).is_one() {
            return Err(Error::NotWeightedHomogeneous(format!(
                "exponent {:?} has weighted degree {} under the supplied weights",
                exp.entries(),
                crate::poly::render_rational(&w.weighted_degree(exp))
            )));
        }
    }
    Ok(())
}

/// The weight `ρ(p) = σ + min ⟨A, w⟩` over the support of `p`;
/// `None` encodes `ρ(0) = +∞`.
pub fn rho(p: &Polynomial, w: &WeightData) -> Option<Rational> {
    p.terms()
        .map(|(exp, _)| w.weighted_degree(exp))
        .min()
        .map(|m| w.sigma() + m)
}

/// Divisibility-minimal antichain of a set of exponents, i.e. the minimal
/// monomial generators of the ideal the set generates.  Output is sorted
/// ascending grevlex.
pub(crate) fn minimal_antichain(mut exps: Vec<Exponent>) -> Vec<Exponent> {
    exps.sort();
    exps.dedup();
    let mut kept: Vec<Exponent> = Vec::new();
    // Ascending grevlex is degree-compatible, so a divisor always precedes
    // its multiples and one forward pass suffices.
    for e in exps {
        if !kept.iter().any(|k| k.divides(&e)) {
            kept.push(e);
        }
    }
    kept
}

/// Minimal monomial generators of `O^{≥c}` for the weight vector `w`.
///
/// For `c ≤ σ` the filtration is the whole ring and the answer is `{1}`.
pub fn filtration_generators(c: &Rational, w: &WeightData) -> Vec<Exponent> {
    let need = c - w.sigma();
    if !need.is_positive() {
        return vec![Exponent::zero(w.len())];
    }
    // A minimal generator satisfies a_i ≤ ceil(need / w_i) in every slot.
    let caps: Vec<u32> = w
        .weights()
        .iter()
        .map(|wi| {
            let bound = (&need / wi).ceil();
            u32::try_from(bound.to_integer()).expect("filtration cap fits in u32")
        })
        .collect();
    let mut found = Vec::new();
    let mut current = vec![0u32; w.len()];
    enumerate_box(&caps, 0, &mut current, &mut |entries| {
        let exp = Exponent::new(entries.to_vec());
        if w.weighted_degree(&exp) >= need {
            found.push(exp);
        }
    });
    minimal_antichain(found)
}

/// Visits every integer point of the box `0..=caps` componentwise.
pub(crate) fn enumerate_box(
    caps: &[u32],
    slot: usize,
    current: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if slot == caps.len() {
        visit(current);
        return;
    }
    for v in 0..=caps[slot] {
        current[slot] = v;
        enumerate_box(caps, slot + 1, current, visit);
    }
    current[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rational, rational_int};
    use proptest::prelude::*;

    fn poly(terms: &[(&[u32], i64)]) -> Polynomial {
        let vars = terms[0].0.len();
        Polynomial::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.to_vec()), rational_int(*c))),
        )
    }

    #[test]
    fn detects_brieskorn_weights() {
        let f = poly(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let w = detect_weights(&f).unwrap();
        assert_eq!(w.weights(), &[rational(1, 2), rational(1, 3)]);
        assert_eq!(w.sigma(), &rational(5, 6));

        let g = poly(&[(&[2, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 5], 1)]);
        let w3 = detect_weights(&g).unwrap();
        assert_eq!(w3.sigma(), &rational(31, 30));
    }

    #[test]
    fn rejects_non_homogeneous_and_underdetermined() {
        // x^2 y^2 + x^5 + y^5: 5w1 = 1, 5w2 = 1 force 2w1+2w2 = 4/5 ≠ 1
        let f = poly(&[(&[2, 2], 1), (&[5, 0], 1), (&[0, 5], 1)]);
        assert!(matches!(
            detect_weights(&f),
            Err(Error::NotWeightedHomogeneous(_))
        ));

        // x*y pins only w1 + w2 = 1
        let g = poly(&[(&[1, 1], 1)]);
        assert!(matches!(detect_weights(&g), Err(Error::UnderdeterminedWeights)));

        // y + x^5 y^2 has the unique solution w = (-1/5, 1)
        let h = poly(&[(&[0, 1], 1), (&[5, 2], 1)]);
        assert!(matches!(
            detect_weights(&h),
            Err(Error::NotWeightedHomogeneous(_))
        ));
    }

    #[test]
    fn rho_examples() {
        let w = WeightData::new(vec![rational(1, 2), rational(1, 3)]).unwrap();
        // ρ(1) = σ = 5/6
        assert_eq!(rho(&Polynomial::one(2), &w), Some(rational(5, 6)));
        // ρ(y) = 5/6 + 1/3 = 7/6
        assert_eq!(rho(&Polynomial::variable(2, 1), &w), Some(rational(7, 6)));
        // ρ takes the min over the support: x^3 + y has weighted degrees 3/2, 1/3
        let p = poly(&[(&[3, 0], 1), (&[0, 1], 2)]);
        assert_eq!(rho(&p, &w), Some(rational(7, 6)));
        // ρ(0) = +∞
        assert_eq!(rho(&Polynomial::zero(2), &w), None);
    }

    #[test]
    fn filtration_generator_examples() {
        // w = (1/2, 1/5): O^{≥19/20} = (x, y^2)
        let w = WeightData::new(vec![rational(1, 2), rational(1, 5)]).unwrap();
        let gens = filtration_generators(&rational(19, 20), &w);
        assert_eq!(
            gens,
            vec![Exponent::new(vec![1, 0]), Exponent::new(vec![0, 2])]
        );

        // c below σ: whole ring
        let gens = filtration_generators(&rational(1, 10), &w);
        assert_eq!(gens, vec![Exponent::zero(2)]);

        // cusp weights, c = 2: ⟨A,w⟩ ≥ 7/6 needs x^a y^b with a/2 + b/3 ≥ 7/6
        let w = WeightData::new(vec![rational(1, 2), rational(1, 3)]).unwrap();
        let gens = filtration_generators(&rational_int(2), &w);
        for g in &gens {
            assert!(w.rho_exponent(g) >= rational_int(2));
        }
        // x^3, and every antichain member just over the threshold
        assert!(gens.contains(&Exponent::new(vec![3, 0])));
        assert!(gens.contains(&Exponent::new(vec![0, 4])));
        assert!(gens.contains(&Exponent::new(vec![1, 2])));
    }

    #[test]
    fn antichain_is_minimal() {
        let gens = minimal_antichain(vec![
            Exponent::new(vec![1, 0]),
            Exponent::new(vec![1, 1]),
            Exponent::new(vec![0, 2]),
            Exponent::new(vec![2, 0]),
        ]);
        assert_eq!(
            gens,
            vec![Exponent::new(vec![1, 0]), Exponent::new(vec![0, 2])]
        );
    }

    proptest! {
        /// Raising c shrinks the filtration ideal (every generator of the
        /// larger-c ideal is divisible by one of the smaller-c ideal).
        #[test]
        fn filtration_monotone(num in 1i64..40) {
            let w = WeightData::new(vec![rational(1, 2), rational(1, 3)]).unwrap();
            let lo = rational(num, 20);
            let hi = &lo + rational(1, 7);
            let big = filtration_generators(&lo, &w);
            let small = filtration_generators(&hi, &w);
            for s in &small {
                prop_assert!(big.iter().any(|b| b.divides(s)));
            }
        }

        /// For monomials, ρ(u·v) = ρ(u) + ρ(v) − σ.
        #[test]
        fn rho_additive_on_monomials(a in proptest::collection::vec(0u32..5, 2),
                                     b in proptest::collection::vec(0u32..5, 2)) {
            let w = WeightData::new(vec![rational(1, 2), rational(1, 3)]).unwrap();
            let (ea, eb) = (Exponent::new(a), Exponent::new(b));
            let sum = w.rho_exponent(&ea.add(&eb));
            prop_assert_eq!(sum, w.rho_exponent(&ea) + w.rho_exponent(&eb) - w.sigma());
        }
    }
}

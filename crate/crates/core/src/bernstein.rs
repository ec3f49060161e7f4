//! The Bernstein–Sato polynomial `b_f(s)` of a weighted homogeneous
//! isolated singularity, computed three ways that must coincide:
//!
//! 1. [`bs_polynomial`]: `b_f(s) = (s+1)·∏_{ρ∈E}(s+ρ)` over the set `E` of
//!    distinct weights `ρ(v_j)` of the Milnor-basis monomials.
//! 2. [`assemble_bs`] over [`jump_data`]: reassembly from the jumping
//!    numbers `E_k = {ρ − k} ∩ (0,1)` (levels `k ≤ ⌊n − σ⌋`) and the
//!    integer jumping coefficients `N = {r : r+1 ∈ E}`.
//! 3. [`microlocal_jumps_check`]: the sorted distinct values `c_1 < … < c_m`
//!    of `E`, with endpoints `c_1 = σ` and `c_m = n − σ`, reassembled as
//!    `(s+1)·∏(s+c_i)`.
//!
//! `E` enters every route as a *set*; the only root that can appear twice
//! is `1`, once from the standalone `(s+1)` factor and once more when some
//! basis monomial has weight exactly `1`.
//!
//! Interval-endpoint convention: the span `{v_j : ρ(v_j) ≥ k+c}` is constant
//! on intervals closed on the right at the points `c = ρ − k`, which the
//! jump sets record as `{ρ − k} ∩ (0,1)` — open interval on both sides; the
//! factor assembly `(s + ρ)` does not depend on that choice.

use num_traits::{One, Signed, ToPrimitive};

use crate::error::Error;
use crate::hodge::JACOBIAN_SWEEP_CAP;
use crate::localring::jacobian_data;
use crate::poly::{render_rational, Polynomial, Rational};
use crate::weights::WeightData;

/// A monic polynomial in `s` given by its factored form `∏(s + root)`.
/// Every instance contains the root `1`; all roots are positive rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BSPolynomial {
    roots: Vec<Rational>,
}

impl BSPolynomial {
    fn from_roots(mut roots: Vec<Rational>) -> Self {
        assert!(roots.iter().any(|r| r.is_one()), "missing the (s+1) factor");
        assert!(roots.iter().all(|r| r.is_positive()), "non-positive root");
        roots.sort();
        BSPolynomial { roots }
    }

    /// The negated roots, ascending, with multiplicity.
    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// `(root, multiplicity)` pairs: the root `1` first, the rest ascending.
    pub fn factors(&self) -> Vec<(Rational, u32)> {
        let one = Rational::one();
        let mut factors = vec![(one.clone(), 0)];
        for root in &self.roots {
            if root.is_one() {
                factors[0].1 += 1;
            } else if let Some(last) = factors.last_mut().filter(|(r, _)| r == root) {
                last.1 += 1;
            } else {
                factors.push((root.clone(), 1));
            }
        }
        debug_assert!(factors[0].1 >= 1);
        factors
    }

    /// Text form like `(s+1)(s+5/6)(s+7/6)`, with `^m` on repeated factors.
    pub fn render(&self) -> String {
        self.factors()
            .iter()
            .map(|(root, mult)| {
                let base = format!("(s+{})", render_rational(root));
                if *mult > 1 {
                    format!("{base}^{mult}")
                } else {
                    base
                }
            })
            .collect()
    }
}

impl std::fmt::Display for BSPolynomial {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        out.write_str(&self.render())
    }
}

/// The jump structure of the filtration on the Milnor algebra.
pub struct JumpData {
    /// Sorted distinct basis weights `ρ(v_j)`.
    pub distinct_weights: Vec<Rational>,
    /// `jumping_numbers[k] = {ρ − k : ρ distinct weight} ∩ (0,1)`, sorted,
    /// for `k = 0 ..= ⌊n − σ⌋`; empty beyond that bound.
    pub jumping_numbers: Vec<Vec<Rational>>,
    /// Integer levels `r` with `r + 1` a distinct weight.
    pub jumping_coefficients: Vec<u32>,
    /// The jump points of the microlocal filtration: equal to
    /// `distinct_weights`, endpoints `σ` and `n − σ`.
    pub microlocal_jumps: Vec<Rational>,
}

fn distinct_weights(f: &Polynomial, w: &WeightData) -> Result<Vec<Rational>, Error> {
    let data = jacobian_data(f, Some(w), JACOBIAN_SWEEP_CAP)?;
    let mut values = data
        .basis_rho
        .expect("weight data was supplied to jacobian_data");
    values.sort();
    values.dedup();
    Ok(values)
}

/// `b_f(s) = (s+1)·∏_{ρ∈E}(s+ρ)` over the distinct Milnor-basis weights.
pub fn bs_polynomial(f: &Polynomial, w: &WeightData) -> Result<BSPolynomial, Error> {
    let mut roots = vec![Rational::one()];
    roots.extend(distinct_weights(f, w)?);
    Ok(BSPolynomial::from_roots(roots))
}

/// Jumping numbers per level, jumping coefficients, and microlocal jumps,
/// all read off the distinct basis weights.
pub fn jump_data(f: &Polynomial, w: &WeightData) -> Result<JumpData, Error> {
    let weights = distinct_weights(f, w)?;
    let ambient = Rational::from_integer(w.len().into());
    let bound = (&ambient - w.sigma())
        .floor()
        .to_integer()
        .to_i64()
        .expect("level bound fits in i64")
        .max(0) as u32;

    let one = Rational::one();
    let mut jumping_numbers = Vec::with_capacity(bound as usize + 1);
    for k in 0..=bound {
        let shift = Rational::from_integer(k.into());
        let level: Vec<Rational> = weights
            .iter()
            .map(|rho| rho - &shift)
            .filter(|c| c.is_positive() && *c < one)
            .collect();
        jumping_numbers.push(level);
    }

    let jumping_coefficients = weights
        .iter()
        .filter(|rho| rho.is_integer())
        .map(|rho| {
            let value = rho.to_integer().to_u32().expect("weight fits in u32");
            value - 1
        })
        .collect();

    Ok(JumpData {
        microlocal_jumps: weights.clone(),
        distinct_weights: weights,
        jumping_numbers,
        jumping_coefficients,
    })
}

/// Reassembles `b_f` from the jump structure:
/// `(s+1)·∏_k∏_{c∈E_k}(s+c+k)·∏_{r∈N}(s+r+1)`.
pub fn assemble_bs(jd: &JumpData) -> BSPolynomial {
    let mut roots = vec![Rational::one()];
    for (k, level) in jd.jumping_numbers.iter().enumerate() {
        let shift = Rational::from_integer(k.into());
        roots.extend(level.iter().map(|c| c + &shift));
    }
    roots.extend(
        jd.jumping_coefficients
            .iter()
            .map(|r| Rational::from_integer((r + 1).into())),
    );
    BSPolynomial::from_roots(roots)
}

/// Third route: true iff the microlocal jumps run from `σ` to `n − σ` and
/// `(s+1)·∏(s+c_i)` reproduces `bs`.
pub fn microlocal_jumps_check(
    jd: &JumpData,
    w: &WeightData,
    n: usize,
    bs: &BSPolynomial,
) -> bool {
    let Some(first) = jd.microlocal_jumps.first() else {
        return false;
    };
    let last = jd.microlocal_jumps.last().expect("nonempty by the line above");
    if first != w.sigma() || *last != Rational::from_integer(n.into()) - w.sigma() {
        return false;
    }
    let mut roots = vec![Rational::one()];
    roots.extend(jd.microlocal_jumps.iter().cloned());
    BSPolynomial::from_roots(roots) == *bs
}

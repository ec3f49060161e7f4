//! Gröbner bases over Q by Buchberger's algorithm with the sugar selection
//! strategy, plus the torus-solvability test built on them.
//!
//! Reduced bases are computed for three order families: graded
//! reverse-lexicographic, weighted grevlex (exact rational weight vector,
//! grevlex tie-break), and block elimination orders that rank the first
//! `split` variables strictly above the rest.  A reduced basis is the unique
//! canonical form of an ideal for its order, so basis equality certifies
//! ideal equality.
//!
//! `torus_saturation_is_empty` decides whether a polynomial system has a
//! solution with all coordinates non-zero (over the complex numbers) by the
//! Rabinowitsch trick: adjoin `t` and test whether the ideal extended by
//! `t·x_1···x_n − 1` is the unit ideal.

use std::cmp::Ordering;

use num_traits::One;

use crate::poly::{Exponent, Polynomial, Rational};

/// A monomial order on exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse-lexicographic.
    Grevlex,
    /// Compare `⟨w, A⟩` first, grevlex on ties.  The weight vector must be
    /// strictly positive for termination.
    WeightedGrevlex(Vec<Rational>),
    /// Block order: grevlex on variables `0..split`, then grevlex on the
    /// rest.  Eliminates the first block.
    Elimination { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::WeightedGrevlex(w) => {
                let wa = weighted_degree(w, a);
                let wb = weighted_degree(w, b);
                wa.cmp(&wb).then_with(|| a.cmp(b))
            }
            MonomialOrder::Elimination { split } => {
                let block = |e: &Exponent, lo: usize, hi: usize| {
                    Exponent::new(e.entries()[lo..hi].to_vec())
                };
                let n = a.len();
                block(a, 0, *split)
                    .cmp(&block(b, 0, *split))
                    .then_with(|| block(a, *split, n).cmp(&block(b, *split, n)))
            }
        }
    }
}

fn weighted_degree(w: &[Rational], e: &Exponent) -> Rational {
    debug_assert_eq!(w.len(), e.len());
    let mut acc = Rational::from_integer(0.into());
    for (wi, &ei) in w.iter().zip(e.entries()) {
        if ei > 0 {
            acc += wi * Rational::from_integer(ei.into());
        }
    }
    acc
}

/// Leading exponent of a non-zero polynomial under `order`.
fn leading_exponent<'a>(p: &'a Polynomial, order: &MonomialOrder) -> Option<&'a Exponent> {
    match order {
        // The term map is already grevlex-sorted.
        MonomialOrder::Grevlex => p.leading_term().map(|(e, _)| e),
        _ => p
            .terms()
            .map(|(e, _)| e)
            .max_by(|a, b| order.cmp(a, b)),
    }
}

fn make_monic(p: &Polynomial, order: &MonomialOrder) -> Polynomial {
    match leading_exponent(p, order) {
        None => p.clone(),
        Some(lead) => {
            let lc = p.coeff(lead).expect("leading exponent has a coefficient").clone();
            p.scale(&lc.recip())
        }
    }
}

/// A reduced Gröbner basis: monic generators, no leading term divides
/// another, every tail term is irreducible, sorted ascending by leading
/// exponent.  Unique per (ideal, order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True when the basis presents the unit ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0] == Polynomial::one(self.generators[0].vars())
    }

    /// Remainder of full multivariate division by the basis.  Zero exactly
    /// for ideal members; Q-linear in `p` for a fixed basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        reduce(p, &self.generators, &self.order).0
    }
}

/// Divides `p` by `divisors`, reducing every term.  Returns the remainder
/// and the sugar degree accumulated from `start_sugar` through the steps.
fn reduce(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> (Polynomial, u32) {
    reduce_with_sugar(p, divisors, order, p.total_degree().unwrap_or(0), &[])
}

fn reduce_with_sugar(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
    start_sugar: u32,
    divisor_sugar: &[u32],
) -> (Polynomial, u32) {
    let vars = p.vars();
    let mut sugar = start_sugar;
    let mut work = p.clone();
    let mut remainder = Polynomial::zero(vars);
    let leads: Vec<Option<&Exponent>> =
        divisors.iter().map(|g| leading_exponent(g, order)).collect();
    'outer: while !work.is_zero() {
        let lead = leading_exponent(&work, order).expect("non-zero").clone();
        let coeff = work.coeff(&lead).expect("present").clone();
        for (idx, g) in divisors.iter().enumerate() {
            let Some(glead) = leads[idx] else { continue };
            if let Some(quot) = lead.checked_sub(glead) {
                let glc = g.coeff(glead).expect("present");
                let factor = &coeff / glc;
                work = &work - &g.mul_monomial(&quot, &factor);
                if let Some(gs) = divisor_sugar.get(idx) {
                    sugar = sugar.max(gs + quot.total_degree());
                }
                continue 'outer;
            }
        }
        // No divisor applies: the leading term joins the remainder.
        remainder = &remainder + &Polynomial::monomial(vars, lead.clone(), coeff.clone());
        work = &work - &Polynomial::monomial(vars, lead, coeff);
    }
    (remainder, sugar)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    sugar: u32,
}

/// Buchberger's algorithm with the sugar strategy and the coprime-lead
/// criterion, followed by full autoreduction.  Zero generators are ignored;
/// an empty input yields the empty basis of the zero ideal.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |p: Polynomial,
                   sugar: u32,
                   basis: &mut Vec<Polynomial>,
                   sugars: &mut Vec<u32>,
                   pairs: &mut Vec<Pair>| {
        let p = make_monic(&p, &order);
        let lead = leading_exponent(&p, &order).expect("non-zero generator").clone();
        for (i, g) in basis.iter().enumerate() {
            let glead = leading_exponent(g, &order).expect("non-zero");
            if glead.coprime(&lead) {
                continue; // S-pair of coprime leads reduces to zero
            }
            let lcm = glead.lcm(&lead);
            let s = (sugars[i] + (lcm.total_degree() - glead.total_degree()))
                .max(sugar + (lcm.total_degree() - lead.total_degree()));
            pairs.push(Pair { i, j: basis.len(), lcm, sugar: s });
        }
        basis.push(p);
        sugars.push(sugar);
    };

    for g in gens {
        if !g.is_zero() {
            add(g.clone(), g.total_degree().unwrap_or(0), &mut basis, &mut sugars, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        // Sugar selection: minimal sugar, then smallest lcm, then position.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(ai, a), (bi, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then(ai.cmp(bi))
            })
            .map(|(idx, _)| idx)
            .expect("non-empty");
        let Pair { i, j, lcm, sugar } = pairs.swap_remove(best);

        let (gi, gj) = (&basis[i], &basis[j]);
        let li = leading_exponent(gi, &order).expect("non-zero");
        let lj = leading_exponent(gj, &order).expect("non-zero");
        let one = Rational::one();
        let s = &gi.mul_monomial(&lcm.checked_sub(li).expect("lcm divisible"), &one)
            - &gj.mul_monomial(&lcm.checked_sub(lj).expect("lcm divisible"), &one);
        let (r, rsugar) = reduce_with_sugar(&s, &basis, &order, sugar, &sugars);
        if !r.is_zero() {
            add(r, rsugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    // Minimize: drop generators whose lead is divisible by another lead.
    let mut keep: Vec<Polynomial> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lead = leading_exponent(g, &order).expect("non-zero");
        let redundant = basis.iter().enumerate().any(|(jdx, h)| {
            if idx == jdx {
                return false;
            }
            let hlead = leading_exponent(h, &order).expect("non-zero");
            hlead.divides(lead) && (hlead != lead || jdx < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }

    // Tail-reduce each survivor against the others.
    let mut reduced: Vec<Polynomial> = Vec::new();
    for idx in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(jdx, _)| *jdx != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let (r, _) = reduce(&keep[idx], &others, &order);
        reduced.push(make_monic(&r, &order));
    }

    reduced.sort_by(|a, b| {
        let la = leading_exponent(a, &order).expect("non-zero");
        let lb = leading_exponent(b, &order).expect("non-zero");
        order.cmp(la, lb)
    });

    GroebnerBasis { order, generators: reduced }
}

/// Decides whether `V(gens) ∩ (C*)^n = ∅` for non-zero generators in `n`
/// variables: adjoin `t` as a last variable and test whether
/// `(gens, t·x_1···x_n − 1)` is the unit ideal.
pub fn torus_saturation_is_empty(gens: &[Polynomial], vars: usize) -> bool {
    let extended: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.extend_vars(vars + 1))
        .chain(std::iter::once({
            let all_ones = Exponent::new(vec![1; vars + 1]);
            &Polynomial::monomial(vars + 1, all_ones, Rational::one())
                - &Polynomial::one(vars + 1)
        }))
        .collect();
    buchberger(&extended, MonomialOrder::Grevlex).is_unit_ideal()
}

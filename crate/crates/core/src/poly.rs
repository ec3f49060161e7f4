//! Sparse multivariate polynomials over Q.
//!
//! Terms are held in a `BTreeMap` keyed by exponent vectors under the graded
//! reverse-lexicographic order, so every polynomial has one canonical
//! in-memory form and printing, hashing of renders, and iteration are all
//! deterministic.  Grevlex compares total degree first; on ties the exponent
//! whose last non-zero entry of the difference is negative is the larger.
//!
//! Besides ring arithmetic the module provides the two derivations the rest
//! of the crate is built on:
//!
//! * `partial_derivative(f, i) = ∂f/∂x_i`,
//! * `twisted_derivation(a, f, c, i) = f·∂_i a − c·a·∂_i f`,
//!
//! the latter being the numerator of `∂_i(a·f^{-c})` cleared of its pole.
//! It satisfies the product rule
//! `T_{i,c}(a·b) = a·T_{i,c}(b) + b·f·∂_i a`,
//! which is what lets ideal-level computations work from finite generator
//! lists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::weights::WeightData;

/// Arbitrary-precision rational number.  Always reduced, denominator > 0.
pub type Rational = BigRational;

/// Shorthand constructor for `numer/denom`.
pub fn rational(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor for an integer rational.
pub fn rational_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical text form: `p` when the denominator is 1, otherwise `p/q`.
pub fn render_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exponent vector of a monomial.  `Ord` is ascending grevlex, so the
/// maximum of a set of exponents is the grevlex-leading monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    /// The exponent of the constant monomial 1.
    pub fn zero(vars: usize) -> Self {
        Exponent(vec![0; vars])
    }

    /// The exponent of the single variable `x_var`.
    pub fn unit(vars: usize, var: usize) -> Self {
        assert!(var < vars, "variable index {var} out of range for {vars} variables");
        let mut e = vec![0; vars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` when any entry would go negative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Exponent)
    }

    /// Divisibility of monomials: `self | other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum, i.e. the exponent of lcm of the monomials.
    pub fn lcm(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Exponent) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len(), other.len(), "exponents from different rings");
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree: the exponent whose last non-zero entry of the
        // difference is negative is the grevlex-larger one.
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q in a fixed number of variables.
///
/// The zero polynomial has an empty term map; every stored coefficient is
/// non-zero.  Two polynomials are equal exactly when their term maps are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: usize, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Exponent::zero(vars), value);
        }
        Polynomial { vars, terms }
    }

    pub fn variable(vars: usize, var: usize) -> Self {
        Self::monomial(vars, Exponent::unit(vars, var), Rational::one())
    }

    pub fn monomial(vars: usize, exponent: Exponent, coeff: Rational) -> Self {
        assert_eq!(exponent.len(), vars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Polynomial { vars, terms }
    }

    /// Builds a polynomial from term pairs, merging duplicates and dropping
    /// zero coefficients.
    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (exp, coeff) in terms {
            assert_eq!(exp.len(), vars);
            p.add_term(exp, coeff);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> Option<&Rational> {
        self.terms.get(exp)
    }

    /// The grevlex-largest term, `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Constant coefficient, i.e. the value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Exponent::zero(self.vars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total_degree).max()
    }

    /// Lowest total degree among the terms, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total_degree).min()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `coeff * x^exp`.
    pub fn mul_monomial(&self, exp: &Exponent, coeff: &Rational) -> Polynomial {
        assert_eq!(exp.len(), self.vars);
        if coeff.is_zero() {
            return Polynomial::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            // Adding a fixed exponent preserves grevlex order, so the map
            // can be rebuilt in one ordered pass.
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(exp), v * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `∂self/∂x_var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.vars, "variable index {var} out of range");
        let mut out = Polynomial::zero(self.vars);
        for (exp, coeff) in &self.terms {
            let e = exp.get(var);
            if e == 0 {
                continue;
            }
            let mut entries = exp.entries().to_vec();
            entries[var] -= 1;
            out.add_term(Exponent::new(entries), coeff * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Re-embeds into a ring with `new_vars >= vars` variables; the new
    /// trailing variables do not occur.
    pub fn extend_vars(&self, new_vars: usize) -> Polynomial {
        assert!(new_vars >= self.vars);
        Polynomial {
            vars: new_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut entries = e.entries().to_vec();
                    entries.resize(new_vars, 0);
                    (Exponent::new(entries), v.clone())
                })
                .collect(),
        }
    }

    /// Canonical text form: terms in descending grevlex order, coefficients
    /// as `p` or `p/q`, explicit `*` and `^`, so the output re-parses under
    /// the crate grammar.
    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        assert_eq!(names.len(), self.vars, "one name per variable required");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || exp.total_degree() == 0 {
                factors.push(render_rational(&abs));
            }
            for (var, &e) in exp.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[var].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[var].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Displays with the default names `x1..xn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.vars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials from different rings");
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(exp.clone(), coeff.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials from different rings");
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(exp.clone(), -coeff.clone());
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), -v.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials from different rings");
        let mut out = Polynomial::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

/// `f − Σ_i w_i · x_i · ∂f/∂x_i`.
///
/// Identically zero exactly when `f` is weighted homogeneous of weighted
/// degree 1 for the weight vector `w`.
pub fn euler_defect(f: &Polynomial, w: &WeightData) -> Polynomial {
    assert_eq!(f.vars(), w.len(), "weight vector length must match ring");
    let mut out = f.clone();
    for var in 0..f.vars() {
        let term = f
            .partial_derivative(var)
            .mul_monomial(&Exponent::unit(f.vars(), var), &-w.weight(var).clone());
        out = &out + &term;
    }
    out
}

/// The twisted derivation `T_{i,c}(a) = f·∂_i a − c·a·∂_i f`.
pub fn twisted_derivation(a: &Polynomial, f: &Polynomial, c: &Rational, var: usize) -> Polynomial {
    assert_eq!(a.vars(), f.vars(), "polynomials from different rings");
    let left = f * &a.partial_derivative(var);
    let right = &a.scale(c) * &f.partial_derivative(var);
    &left - &right
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> (Polynomial, Polynomial) {
        (Polynomial::variable(2, 0), Polynomial::variable(2, 1))
    }

    /// x^2 + y^3, the cusp.
    fn cusp() -> Polynomial {
        let (x, y) = xy();
        &x.pow(2) + &y.pow(3)
    }

    #[test]
    fn grevlex_degree_dominates() {
        // deg 2 < deg 3 regardless of which variable carries it
        assert!(Exponent::new(vec![2, 0]) < Exponent::new(vec![0, 3]));
        // same degree: last non-zero entry of a-b negative => a larger
        assert!(Exponent::new(vec![3, 0]) > Exponent::new(vec![0, 3]));
        assert!(Exponent::new(vec![1, 0]) > Exponent::new(vec![0, 1]));
        assert!(Exponent::new(vec![2, 1]) > Exponent::new(vec![1, 2]));
        // three variables: x*z vs y^2
        assert!(Exponent::new(vec![1, 0, 1]) < Exponent::new(vec![0, 2, 0]));
    }

    #[test]
    fn arithmetic_merges_and_cancels() {
        let (x, y) = xy();
        let p = &x.pow(2) + &y.scale(&rational(2, 1));
        let q = &y.scale(&rational(-2, 1)) + &Polynomial::one(2);
        let sum = &p + &q;
        assert_eq!(sum.num_terms(), 2); // 2y cancels
        assert_eq!(sum.constant_term(), rational_int(1));
        let prod = &x * &x;
        assert_eq!(prod, x.pow(2));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn partial_derivative_examples() {
        let f = cusp();
        let fx = f.partial_derivative(0);
        let fy = f.partial_derivative(1);
        assert_eq!(fx, Polynomial::variable(2, 0).scale(&rational_int(2)));
        let y2 = Polynomial::monomial(2, Exponent::new(vec![0, 2]), rational_int(3));
        assert_eq!(fy, y2);
        assert!(Polynomial::one(2).partial_derivative(0).is_zero());
        // d/dx (x^2 y^2 + x^5 + y^5) = 2xy^2 + 5x^4
        let g = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 2]), rational_int(1)),
                (Exponent::new(vec![5, 0]), rational_int(1)),
                (Exponent::new(vec![0, 5]), rational_int(1)),
            ],
        );
        let gx = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![1, 2]), rational_int(2)),
                (Exponent::new(vec![4, 0]), rational_int(5)),
            ],
        );
        assert_eq!(g.partial_derivative(0), gx);
    }

    #[test]
    fn euler_defect_detects_weighted_homogeneity() {
        let f = cusp();
        let w = WeightData::new(vec![rational(1, 2), rational(1, 3)]).unwrap();
        assert!(euler_defect(&f, &w).is_zero());

        // wrong weights leave a remainder
        let bad = WeightData::new(vec![rational(1, 2), rational(1, 2)]).unwrap();
        assert!(!euler_defect(&f, &bad).is_zero());

        // x^2 y^2 + x^5 + y^5 with w = (1/5, 1/5): defect = (1/5) x^2 y^2
        let g = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 2]), rational_int(1)),
                (Exponent::new(vec![5, 0]), rational_int(1)),
                (Exponent::new(vec![0, 5]), rational_int(1)),
            ],
        );
        let w5 = WeightData::new(vec![rational(1, 5), rational(1, 5)]).unwrap();
        let defect = euler_defect(&g, &w5);
        assert_eq!(
            defect,
            Polynomial::monomial(2, Exponent::new(vec![2, 2]), rational(1, 5))
        );
    }

    #[test]
    fn twisted_derivation_examples() {
        let f = cusp();
        let one = Polynomial::one(2);
        let alpha = rational(1, 10);
        // T_{1,α}(1) = -α · 2x
        assert_eq!(
            twisted_derivation(&one, &f, &alpha, 0),
            Polynomial::variable(2, 0).scale(&rational(-1, 5))
        );

        // T_{1,α}(x) on x^2+y^5 gives (1-2α)x^2 + y^5
        let g = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 0]), rational_int(1)),
                (Exponent::new(vec![0, 5]), rational_int(1)),
            ],
        );
        let x = Polynomial::variable(2, 0);
        let a = rational(19, 20);
        let t = twisted_derivation(&x, &g, &a, 0);
        let expected = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 0]), rational(-9, 10)),
                (Exponent::new(vec![0, 5]), rational_int(1)),
            ],
        );
        assert_eq!(t, expected);

        // T_{i,c}(f) = (1-c) f ∂_i f
        let c = rational(2, 3);
        let lhs = twisted_derivation(&f, &f, &c, 1);
        let rhs = (&f * &f.partial_derivative(1)).scale(&rational(1, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_is_canonical() {
        let names = ["x", "y"];
        assert_eq!(Polynomial::zero(2).render(&names), "0");
        assert_eq!(cusp().render(&names), "y^3 + x^2");
        let p = Polynomial::from_terms(
            2,
            vec![
                (Exponent::new(vec![2, 0]), rational(-9, 10)),
                (Exponent::new(vec![0, 5]), rational_int(1)),
                (Exponent::new(vec![0, 0]), rational(1, 2)),
            ],
        );
        assert_eq!(p.render(&names), "y^5 - 9/10*x^2 + 1/2");
        let m = Polynomial::monomial(2, Exponent::new(vec![1, 1]), rational_int(-1));
        assert_eq!(m.render(&names), "-x*y");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rational(n, d))
    }

    fn small_poly(vars: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..4, vars), small_rational()),
            0..5,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(vars, terms.into_iter().map(|(e, c)| (Exponent::new(e), c)))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a - &a, Polynomial::zero(2));
        }

        #[test]
        fn leibniz_rule(a in small_poly(2), b in small_poly(2)) {
            for var in 0..2 {
                let lhs = (&a * &b).partial_derivative(var);
                let rhs = &(&a.partial_derivative(var) * &b) + &(&a * &b.partial_derivative(var));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn twisted_derivation_product_rule(
            a in small_poly(2),
            b in small_poly(2),
            c in small_rational(),
        ) {
            let f = cusp();
            for var in 0..2 {
                // T_{i,c}(a·b) = a·T_{i,c}(b) + b·f·∂_i a
                let lhs = twisted_derivation(&(&a * &b), &f, &c, var);
                let rhs = &(&a * &twisted_derivation(&b, &f, &c, var))
                    + &(&(&b * &f) * &a.partial_derivative(var));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn derivative_kills_degree(p in small_poly(3)) {
            for var in 0..3 {
                let d = p.partial_derivative(var);
                if let (Some(dp), Some(pp)) = (d.total_degree(), p.total_degree()) {
                    prop_assert!(dp < pp);
                }
            }
        }
    }
}

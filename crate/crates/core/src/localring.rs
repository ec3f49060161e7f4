//! Finite-dimensional models of ideals in the local ring at the origin.
//!
//! An ideal `I` with `m^M ⊆ I + m^M` trivially, is represented by the exact
//! row-reduced span of `(I + m^M)/m^M` inside `O/m^M`, whose monomial basis
//! is every exponent of total degree below the truncation degree `M`.
//! Columns are ordered by ascending grevlex, so a row's pivot is its lowest
//! monomial — the leading term of the local order.  The span is closed under
//! multiplication by each variable, which makes ideal comparisons, quotient
//! dimensions, and Nakayama-style minimal generators exact statements about
//! `I + m^M`.
//!
//! `jacobian_data` computes the Milnor algebra `O/(∂f)` by growing the
//! truncation degree until the quotient dimension repeats.  A repeat at
//! degree `s` forces `m^s ⊆ (∂f) + m^{s+1}`, hence `m^s ⊆ (∂f) + m^{s+j}`
//! for every `j`, hence `m^s ⊆ (∂f)` by Krull intersection — so the repeat
//! certifies both the Milnor number and the Jacobian exponent `s`.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::{render_rational, Exponent, Polynomial, Rational};
use crate::weights::WeightData;

/// The monomial basis of `O/m^M`: every exponent of total degree `< M`,
/// sorted ascending by grevlex, with index lookup.
#[derive(Debug)]
pub struct MonomialTable {
    vars: usize,
    max_degree: u32,
    monomials: Vec<Exponent>,
    index: BTreeMap<Exponent, usize>,
}

impl MonomialTable {
    pub fn new(vars: usize, max_degree: u32) -> Arc<Self> {
        assert!(vars > 0, "monomial table needs at least one variable");
        let mut monomials = Vec::new();
        let mut current = vec![0u32; vars];
        collect_below(&mut current, 0, max_degree, &mut monomials);
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Arc::new(MonomialTable { vars, max_degree, monomials, index })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, index: usize) -> &Exponent {
        &self.monomials[index]
    }

    /// `None` exactly when the exponent has total degree `≥ max_degree`.
    pub fn index_of(&self, e: &Exponent) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.vars == other.vars && self.max_degree == other.max_degree
    }
}

fn collect_below(current: &mut Vec<u32>, var: usize, budget: u32, out: &mut Vec<Exponent>) {
    if var == current.len() {
        out.push(Exponent::new(current.clone()));
        return;
    }
    for value in 0..budget {
        current[var] = value;
        collect_below(current, var + 1, budget - value, out);
    }
    current[var] = 0;
}

/// Sparse row over table columns, ascending by column index; the first entry
/// is the pivot after reduction.
type Row = Vec<(usize, Rational)>;

/// Accumulator for reduction: column → coefficient.
type Work = BTreeMap<usize, Rational>;

fn poly_to_work(p: &Polynomial, table: &MonomialTable) -> Work {
    p.terms()
        .filter_map(|(e, c)| table.index_of(e).map(|i| (i, c.clone())))
        .collect()
}

fn row_to_poly(row: &Row, table: &MonomialTable) -> Polynomial {
    Polynomial::from_terms(
        table.vars(),
        row.iter().map(|(i, c)| (table.monomial(*i).clone(), c.clone())),
    )
}

/// The row `x_var · row`, re-expressed in table columns; terms pushed past
/// the truncation degree vanish.
fn shift_row(row: &Row, var: usize, table: &MonomialTable) -> Work {
    let unit = Exponent::unit(table.vars(), var);
    row.iter()
        .filter_map(|(i, c)| {
            table
                .index_of(&table.monomial(*i).add(&unit))
                .map(|j| (j, c.clone()))
        })
        .collect()
}

/// Reduced row echelon form with pivot bookkeeping.  Pivot columns carry
/// coefficient one and appear in no other row.
struct Rref {
    rows: Vec<Row>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Rref {
    fn new(columns: usize) -> Self {
        Rref { rows: Vec::new(), pivot_of_col: vec![None; columns] }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `work` against the current rows.  Eliminating a pivot
    /// column only introduces higher columns, so one ascending sweep is a
    /// complete reduction.
    fn reduce(&self, mut work: Work) -> Row {
        let mut out: Row = Vec::new();
        while let Some((col, coeff)) = work.pop_first() {
            if coeff.is_zero() {
                continue;
            }
            match self.pivot_of_col[col] {
                Some(r) => {
                    for (c2, v2) in self.rows[r].iter().skip(1) {
                        let entry = work.entry(*c2).or_insert_with(Rational::zero);
                        *entry -= &coeff * v2;
                        if entry.is_zero() {
                            work.remove(c2);
                        }
                    }
                }
                None => out.push((col, coeff)),
            }
        }
        out
    }

    /// Inserts an already-reduced non-empty row: normalizes the pivot,
    /// eliminates its column from every other row, and registers it.
    /// Returns the pivot column.
    fn insert_reduced(&mut self, mut row: Row) -> usize {
        let (pivot, lead) = row[0].clone();
        if !lead.is_one() {
            for (_, c) in row.iter_mut() {
                *c /= &lead;
            }
        }
        for other in self.rows.iter_mut() {
            let Some(pos) = other.iter().position(|(c, _)| *c == pivot) else {
                continue;
            };
            let factor = other[pos].1.clone();
            *other = axpy(other, &row, &factor);
        }
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivot_of_col[pivot] = Some(idx);
        idx
    }

    /// Reduce-then-insert; `None` when the row lies in the current span.
    fn insert(&mut self, work: Work) -> Option<usize> {
        let reduced = self.reduce(work);
        if reduced.is_empty() {
            None
        } else {
            Some(self.insert_reduced(reduced))
        }
    }
}

/// `a − factor · b` for sorted sparse rows.
fn axpy(a: &Row, b: &Row, factor: &Rational) -> Row {
    let mut out = Row::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// How two ideals relate as subsets, both read modulo the shared `m^M`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Equal,
    /// Strict: left ⊊ right.
    LeftInRight,
    /// Strict: right ⊊ left.
    RightInLeft,
    Incomparable,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Equal => write!(f, "equal"),
            Relation::LeftInRight => write!(f, "strictly contained in"),
            Relation::RightInLeft => write!(f, "strictly contains"),
            Relation::Incomparable => write!(f, "incomparable with"),
        }
    }
}

/// The image of an ideal in `O/m^M`: a variable-multiplication-closed
/// row span in reduced echelon form.  Every query is exact for `I + m^M`.
pub struct TruncatedIdeal {
    table: Arc<MonomialTable>,
    rref: Rref,
}

impl TruncatedIdeal {
    /// Spans all truncated monomial multiples of the generators.  Each rank
    /// growth enqueues the new row's variable shifts; a queued row that dies
    /// against the span contributes nothing its parents' shifts don't cover,
    /// so the closure is complete when the queue drains.
    pub fn new(generators: &[Polynomial], table: Arc<MonomialTable>) -> Self {
        let mut rref = Rref::new(table.len());
        let mut queue: VecDeque<Work> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.vars(), table.vars(), "generator variable count");
                poly_to_work(g, &table)
            })
            .collect();
        while let Some(work) = queue.pop_front() {
            let reduced = rref.reduce(work);
            if reduced.is_empty() {
                continue;
            }
            let idx = rref.insert_reduced(reduced);
            let row = rref.rows[idx].clone();
            for var in 0..table.vars() {
                queue.push_back(shift_row(&row, var, &table));
            }
        }
        TruncatedIdeal { table, rref }
    }

    pub fn table(&self) -> &Arc<MonomialTable> {
        &self.table
    }

    /// Dimension of `(I + m^M)/m^M`.
    pub fn span_dimension(&self) -> usize {
        self.rref.rank()
    }

    /// Dimension of `O/(I + m^M)`.
    pub fn quotient_dimension(&self) -> usize {
        self.table.len() - self.rref.rank()
    }

    /// The non-pivot monomials, ascending: a basis of `O/(I + m^M)`.
    pub fn quotient_basis(&self) -> Vec<Exponent> {
        (0..self.table.len())
            .filter(|col| self.rref.pivot_of_col[*col].is_none())
            .map(|col| self.table.monomial(col).clone())
            .collect()
    }

    /// Membership of `p` in `I + m^M`.
    pub fn contains(&self, p: &Polynomial) -> bool {
        self.rref.reduce(poly_to_work(p, &self.table)).is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), Error> {
        if self.table.compatible(&other.table) {
            Ok(())
        } else {
            Err(Error::TruncationMismatch(format!(
                "cannot compare spans truncated at degrees {} and {}",
                self.table.max_degree(),
                other.table.max_degree()
            )))
        }
    }

    /// Whether `self + m^M ⊆ other + m^M`.
    pub fn subset_of(&self, other: &Self) -> Result<bool, Error> {
        self.check_compatible(other)?;
        Ok(self
            .rref
            .rows
            .iter()
            .all(|row| other.rref.reduce(row.iter().cloned().collect()).is_empty()))
    }

    pub fn compare(&self, other: &Self) -> Result<Relation, Error> {
        let forward = self.subset_of(other)?;
        let backward = other.subset_of(self)?;
        Ok(match (forward, backward) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::LeftInRight,
            (false, true) => Relation::RightInLeft,
            (false, false) => Relation::Incomparable,
        })
    }

    /// Minimal generators by Nakayama: the rows whose images form a basis of
    /// `I/(mI + m^M)`, chosen greedily in ascending pivot order.  Exact as
    /// ideal generators whenever `m^M ⊆ mI`.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut span = Rref::new(self.table.len());
        for row in &self.rref.rows {
            for var in 0..self.table.vars() {
                span.insert(shift_row(row, var, &self.table));
            }
        }
        let mut selected = Vec::new();
        let mut order: Vec<&Row> = self.rref.rows.iter().collect();
        order.sort_by_key(|row| row[0].0);
        for row in order {
            if span.insert(row.iter().cloned().collect()).is_some() {
                selected.push(row_to_poly(row, &self.table));
            }
        }
        selected
    }

    /// `Some(k)` when the ideal equals `m^k` modulo `m^M`.  The only
    /// candidate is the degree of the lowest pivot monomial.
    pub fn is_power_of_maximal(&self) -> Option<u32> {
        let first = self.rref.rows.iter().map(|row| row[0].0).min()?;
        let k = self.table.monomial(first).total_degree();
        if k == 0 {
            return Some(0);
        }
        let power = power_of_maximal(&self.table, k);
        match self.compare(&power) {
            Ok(Relation::Equal) => Some(k),
            _ => None,
        }
    }
}

/// The ideal `m^k` in the given truncation.
pub fn power_of_maximal(table: &Arc<MonomialTable>, k: u32) -> TruncatedIdeal {
    let generators: Vec<Polynomial> = (0..table.len())
        .map(|i| table.monomial(i))
        .filter(|e| e.total_degree() == k)
        .map(|e| Polynomial::monomial(table.vars(), e.clone(), Rational::from_integer(1.into())))
        .collect();
    TruncatedIdeal::new(&generators, Arc::clone(table))
}

/// Smallest `M ≥ 1` with `m^M ⊆ O^{≥c}`: every exponent of total degree `M`
/// has weight at least `c − σ`.
pub fn truncate_degree_for(c: &Rational, weights: &WeightData) -> u32 {
    let need = c - weights.sigma();
    if !need.is_positive() {
        return 1;
    }
    let min_weight = weights
        .weights()
        .iter()
        .min()
        .expect("weight vector is non-empty");
    let steps = (&need / min_weight).ceil().to_integer();
    u32::try_from(steps).expect("truncation degree fits in u32").max(1)
}

/// The Milnor algebra of an isolated singularity: dimension, monomial
/// basis, per-basis-element weights, and the Jacobian exponent.
#[derive(Clone, Debug)]
pub struct JacobianData {
    /// `dim_C O/(∂f)`.
    pub milnor_number: usize,
    /// Monomial basis of `O/(∂f)`, ascending grevlex.
    pub basis: Vec<Exponent>,
    /// `ρ` of each basis monomial, parallel to `basis`; present in weighted
    /// mode.  The largest value always equals `n − σ`.
    pub basis_rho: Option<Vec<Rational>>,
    /// Smallest `s` with `m^s ⊆ (∂f)`.
    pub exponent: u32,
}

/// Grows the truncation degree until the quotient dimension of `O/(∂f)`
/// repeats, certifying the Milnor number; `NotIsolated` past `cap`.
pub fn jacobian_data(
    f: &Polynomial,
    weights: Option<&WeightData>,
    cap: u32,
) -> Result<JacobianData, Error> {
    let partials: Vec<Polynomial> =
        (0..f.vars()).map(|i| f.partial_derivative(i)).collect();
    let mut previous: Option<(usize, TruncatedIdeal)> = None;
    for degree in 1..=cap {
        let table = MonomialTable::new(f.vars(), degree);
        let ideal = TruncatedIdeal::new(&partials, table);
        let dim = ideal.quotient_dimension();
        if let Some((prev_dim, prev_ideal)) = previous.take() {
            if prev_dim == dim {
                return finish_jacobian(prev_ideal, f.vars(), weights, degree - 1);
            }
        }
        previous = Some((dim, ideal));
    }
    Err(Error::NotIsolated { cap: cap as usize })
}

fn finish_jacobian(
    ideal: TruncatedIdeal,
    vars: usize,
    weights: Option<&WeightData>,
    exponent: u32,
) -> Result<JacobianData, Error> {
    let basis = ideal.quotient_basis();
    let milnor_number = basis.len();
    let basis_rho = match weights {
        None => None,
        Some(w) => {
            let rho: Vec<Rational> = basis.iter().map(|e| w.rho_exponent(e)).collect();
            if milnor_number > 0 {
                let top = rho.iter().max().expect("non-empty");
                let expected = Rational::from_integer(vars.into()) - w.sigma();
                if *top != expected {
                    return Err(Error::Assertion(format!(
                        "largest Jacobian-basis weight is {}, expected n - sigma = {}",
                        render_rational(top),
                        render_rational(&expected)
                    )));
                }
            }
            Some(rho)
        }
    };
    Ok(JacobianData { milnor_number, basis, basis_rho, exponent })
}

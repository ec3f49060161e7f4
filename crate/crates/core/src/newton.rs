//! Newton polyhedra of singularities at the origin: compact facets, the
//! full compact face lattice, non-degeneracy certificates, and the Newton
//! weight function ρ̃.
//!
//! A compact facet is a face of dimension `n − 1` whose inward normal `B`
//! is strictly positive, normalized so the facet lies on `⟨A, B⟩ = 1`.
//! Every compact facet is found by solving that equation on `n` linearly
//! independent support points and certifying `B > 0` and `⟨A, B⟩ ≥ 1`
//! across the whole support.  Sub-faces are enumerated recursively: inside
//! a face of affine dimension `d`, each `d`-subset of its support points
//! determines a candidate supporting functional from the null space of the
//! difference matrix, and the candidate's zero set is a face exactly when
//! the remaining points evaluate to one side.
//!
//! A polynomial is non-degenerate when, for every compact face `F`, the
//! system `{x_i ∂_i f_F}` has no common zero with all coordinates non-zero.
//! `ρ̃(x^A) = min_F (|B_F| + ⟨A, B_F⟩)` extends the weighted ρ to the
//! Newton setting; its filtration is meaningful for convenient supports,
//! where every coordinate axis carries a support point.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::groebner::torus_saturation_is_empty;
use crate::linalg::{affine_rank, dot, null_space, solve, Solution};
use crate::poly::{Exponent, Polynomial, Rational};
use crate::weights::{enumerate_box, minimal_antichain};

/// Dimension cap for polyhedron construction.
pub const MAX_VARS: usize = 4;
/// Support-size cap for polyhedron construction.
pub const MAX_SUPPORT: usize = 24;

/// A compact facet: strictly positive normal `B` with `⟨A, B⟩ = 1` exactly
/// on the listed support points and `⟨A, B⟩ ≥ 1` everywhere else.
#[derive(Clone, Debug)]
pub struct Facet {
    normal: Vec<Rational>,
    support: Vec<usize>,
}

impl Facet {
    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    /// Indices into the polyhedron's support points.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `|B_F|`: the sum of the normal's entries.
    pub fn normal_sum(&self) -> Rational {
        let mut acc = Rational::zero();
        for b in &self.normal {
            acc += b;
        }
        acc
    }
}

/// A compact face of the polyhedron, listed by support-point indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    points: Vec<usize>,
    dimension: usize,
}

impl Face {
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Affine dimension: facets have `n − 1`, vertices `0`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

/// Verdict of the torus-criticality test for one compact face.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FaceCheck {
    /// Index into `NewtonPolyhedron::faces`.
    pub face: usize,
    pub nondegenerate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NondegeneracyReport {
    pub checks: Vec<FaceCheck>,
    /// True when every compact face passes.
    pub nondegenerate: bool,
}

/// The Newton polyhedron of a polynomial with `f(0) = 0`, with its compact
/// face lattice.
pub struct NewtonPolyhedron {
    poly: Polynomial,
    points: Vec<Exponent>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    convenient: bool,
}

impl NewtonPolyhedron {
    pub fn build(f: &Polynomial) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::Invalid(
                "the Newton polyhedron of the zero polynomial is empty".into(),
            ));
        }
        let n = f.vars();
        if n > MAX_VARS {
            return Err(Error::DimensionCap { n, cap: MAX_VARS });
        }
        if f.coeff(&Exponent::zero(n)).is_some() {
            return Err(Error::Invalid(
                "the polynomial must vanish at the origin".into(),
            ));
        }
        let points: Vec<Exponent> = f.terms().map(|(e, _)| e.clone()).collect();
        if points.len() > MAX_SUPPORT {
            return Err(Error::SupportCap { size: points.len(), cap: MAX_SUPPORT });
        }

        let coords: Vec<Vec<Rational>> = points.iter().map(exponent_coords).collect();
        let facets = find_facets(&coords, n);
        let convenient = (0..n).all(|i| {
            points
                .iter()
                .any(|e| e.get(i) > 0 && e.get(i) == e.total_degree())
        });

        let mut face_map: std::collections::BTreeMap<Vec<usize>, usize> =
            std::collections::BTreeMap::new();
        for facet in &facets {
            let pts: Vec<Vec<Rational>> =
                facet.support.iter().map(|&i| coords[i].clone()).collect();
            let dim = affine_rank(&pts);
            if face_map.insert(facet.support.clone(), dim).is_none() {
                enumerate_subfaces(&facet.support, &coords, &mut face_map);
            }
        }
        let mut faces: Vec<Face> = face_map
            .into_iter()
            .map(|(points, dimension)| Face { points, dimension })
            .collect();
        faces.sort_by(|a, b| {
            b.dimension
                .cmp(&a.dimension)
                .then_with(|| a.points.cmp(&b.points))
        });

        Ok(NewtonPolyhedron { poly: f.clone(), points, facets, faces, convenient })
    }

    pub fn vars(&self) -> usize {
        self.poly.vars()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// Deduplicated support exponents, ascending grevlex.
    pub fn support_points(&self) -> &[Exponent] {
        &self.points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All compact faces, facets first, then descending dimension.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Every coordinate axis carries a support point.
    pub fn is_convenient(&self) -> bool {
        self.convenient
    }

    /// No compact facets at all — the support is too thin to cut the
    /// positive orthant.  A flag, not an error: callers that need the
    /// filtration reject it there.
    pub fn has_compact_facets(&self) -> bool {
        !self.facets.is_empty()
    }

    fn require_filtration_ready(&self) -> Result<(), Error> {
        if !self.convenient {
            return Err(Error::NotConvenient(
                "the Newton filtration needs a support point on every coordinate axis"
                    .into(),
            ));
        }
        if self.facets.is_empty() {
            return Err(Error::DegenerateNewton(
                "the Newton polyhedron has no compact facets".into(),
            ));
        }
        Ok(())
    }

    /// `ρ̂(x^A) = min_F ⟨A, B_F⟩`.
    pub fn rho_hat_exponent(&self, e: &Exponent) -> Result<Rational, Error> {
        self.require_filtration_ready()?;
        let coords = exponent_coords(e);
        Ok(self
            .facets
            .iter()
            .map(|f| dot(&f.normal, &coords))
            .min()
            .expect("at least one facet"))
    }

    /// `ρ̃(x^A) = min_F (|B_F| + ⟨A, B_F⟩)`, the Newton analogue of ρ.
    pub fn rho_tilde_exponent(&self, e: &Exponent) -> Result<Rational, Error> {
        self.require_filtration_ready()?;
        let coords = exponent_coords(e);
        Ok(self
            .facets
            .iter()
            .map(|f| f.normal_sum() + dot(&f.normal, &coords))
            .min()
            .expect("at least one facet"))
    }

    /// Minimum of `ρ̃` over the support; `None` for the zero polynomial.
    pub fn rho_tilde(&self, p: &Polynomial) -> Result<Option<Rational>, Error> {
        self.require_filtration_ready()?;
        let mut best: Option<Rational> = None;
        for (e, _) in p.terms() {
            let value = self.rho_tilde_exponent(e)?;
            best = Some(match best {
                None => value,
                Some(b) => b.min(value),
            });
        }
        Ok(best)
    }

    /// Minimal monomial generators of `Õ^{≥c} = {g : ρ̃(g) ≥ c}`.
    pub fn tilde_filtration_generators(&self, c: &Rational) -> Result<Vec<Exponent>, Error> {
        self.require_filtration_ready()?;
        let n = self.vars();
        let mut caps = vec![0u32; n];
        for facet in &self.facets {
            let slack = c - facet.normal_sum();
            if !slack.is_positive() {
                continue;
            }
            for (cap, normal) in caps.iter_mut().zip(&facet.normal) {
                let bound = (&slack / normal).floor().to_integer();
                let bound = u32::try_from(bound).expect("filtration cap fits in u32") + 1;
                *cap = (*cap).max(bound);
            }
        }
        let mut found = Vec::new();
        let mut current = vec![0u32; n];
        enumerate_box(&caps, 0, &mut current, &mut |entries| {
            let e = Exponent::new(entries.to_vec());
            let value = self
                .facets
                .iter()
                .map(|f| f.normal_sum() + dot(&f.normal, &exponent_coords(&e)))
                .min()
                .expect("at least one facet");
            if value >= *c {
                found.push(e);
            }
        });
        Ok(minimal_antichain(found))
    }

    /// The restriction of the polynomial to one compact face.
    pub fn face_polynomial(&self, face_index: usize) -> Polynomial {
        let face = &self.faces[face_index];
        let members: std::collections::BTreeSet<&Exponent> =
            face.points.iter().map(|&i| &self.points[i]).collect();
        Polynomial::from_terms(
            self.poly.vars(),
            self.poly
                .terms()
                .filter(|(e, _)| members.contains(e))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Tests every compact face for torus criticality of its face
    /// polynomial.
    pub fn nondegeneracy_report(&self) -> NondegeneracyReport {
        let n = self.vars();
        let one = Rational::one();
        let mut checks = Vec::with_capacity(self.faces.len());
        for idx in 0..self.faces.len() {
            let restricted = self.face_polynomial(idx);
            let system: Vec<Polynomial> = (0..n)
                .map(|i| {
                    restricted
                        .partial_derivative(i)
                        .mul_monomial(&Exponent::unit(n, i), &one)
                })
                .filter(|p| !p.is_zero())
                .collect();
            let nondegenerate = torus_saturation_is_empty(&system, n);
            checks.push(FaceCheck { face: idx, nondegenerate });
        }
        let nondegenerate = checks.iter().all(|c| c.nondegenerate);
        NondegeneracyReport { checks, nondegenerate }
    }
}

fn exponent_coords(e: &Exponent) -> Vec<Rational> {
    e.entries()
        .iter()
        .map(|&v| Rational::from_integer(v.into()))
        .collect()
}

/// All size-`k` index subsets of `0..n`, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=(n - remaining) {
            current.push(i);
            recurse(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        recurse(0, n, k, &mut current, &mut out);
    }
    out
}

fn find_facets(coords: &[Vec<Rational>], n: usize) -> Vec<Facet> {
    let one = Rational::one();
    let mut by_normal: std::collections::BTreeMap<Vec<Rational>, Vec<usize>> =
        std::collections::BTreeMap::new();
    for subset in combinations(coords.len(), n) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| coords[i].clone()).collect();
        let rhs = vec![one.clone(); n];
        let Solution::Unique(normal) = solve(&rows, &rhs) else {
            continue;
        };
        if !normal.iter().all(|b| b.is_positive()) {
            continue;
        }
        let mut support = Vec::new();
        let mut valid = true;
        for (i, point) in coords.iter().enumerate() {
            let value = dot(&normal, point);
            if value < one {
                valid = false;
                break;
            }
            if value == one {
                support.push(i);
            }
        }
        if valid {
            by_normal.entry(normal).or_insert(support);
        }
    }
    by_normal
        .into_iter()
        .map(|(normal, support)| Facet { normal, support })
        .collect()
}

/// Recursively records every proper face of the face spanned by `ids`.
fn enumerate_subfaces(
    ids: &[usize],
    coords: &[Vec<Rational>],
    out: &mut std::collections::BTreeMap<Vec<usize>, usize>,
) {
    let pts: Vec<Vec<Rational>> = ids.iter().map(|&i| coords[i].clone()).collect();
    let dim = affine_rank(&pts);
    if dim == 0 {
        return;
    }
    let n = coords[0].len();
    for subset in combinations(ids.len(), dim) {
        let base = &pts[subset[0]];
        let diffs: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&k| {
                pts[k]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<Rational>>()
            })
            .collect();
        let candidates: Vec<Vec<Rational>> = if diffs.is_empty() {
            (0..n)
                .map(|i| {
                    let mut v = vec![Rational::zero(); n];
                    v[i] = Rational::one();
                    v
                })
                .collect()
        } else {
            null_space(&diffs)
        };
        // A candidate functional must separate: zero on the subset's affine
        // hull, non-zero somewhere on the face.
        let evals: Option<Vec<Rational>> = candidates.iter().find_map(|phi| {
            let values: Vec<Rational> = pts
                .iter()
                .map(|p| {
                    let diff: Vec<Rational> =
                        p.iter().zip(base).map(|(a, b)| a - b).collect();
                    dot(phi, &diff)
                })
                .collect();
            if values.iter().any(|v| !v.is_zero()) {
                Some(values)
            } else {
                None
            }
        });
        let Some(values) = evals else { continue };
        let one_sided = values.iter().all(|v| !v.is_negative())
            || values.iter().all(|v| !v.is_positive());
        if !one_sided {
            continue;
        }
        let face_ids: Vec<usize> = ids
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.is_zero())
            .map(|(&id, _)| id)
            .collect();
        let face_pts: Vec<Vec<Rational>> =
            face_ids.iter().map(|&i| coords[i].clone()).collect();
        let face_dim = affine_rank(&face_pts);
        if out.insert(face_ids.clone(), face_dim).is_none() {
            enumerate_subfaces(&face_ids, coords, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, VariableContext};
    use crate::poly::{rational, rational_int};
    use crate::weights::detect_weights;

    fn p2(text: &str) -> Polynomial {
        let ctx = VariableContext::new(vec!["x", "y"]).unwrap();
        parse_polynomial(text, &ctx).unwrap()
    }

    fn p3(text: &str) -> Polynomial {
        let ctx = VariableContext::new(vec!["x", "y", "z"]).unwrap();
        parse_polynomial(text, &ctx).unwrap()
    }

    fn exps(np: &NewtonPolyhedron, face: &Face) -> Vec<Vec<u32>> {
        face.points()
            .iter()
            .map(|&i| np.support_points()[i].entries().to_vec())
            .collect()
    }

    #[test]
    fn two_facet_polyhedron() {
        let np = NewtonPolyhedron::build(&p2("x^2*y^2 + x^5 + y^5")).unwrap();
        assert!(np.is_convenient());
        assert!(np.has_compact_facets());
        let normals: Vec<Vec<Rational>> =
            np.facets().iter().map(|f| f.normal().to_vec()).collect();
        assert_eq!(
            normals,
            vec![
                vec![rational(1, 5), rational(3, 10)],
                vec![rational(3, 10), rational(1, 5)],
            ]
        );
        for f in np.facets() {
            assert_eq!(f.normal_sum(), rational(1, 2));
        }
        assert_eq!(
            np.rho_tilde_exponent(&Exponent::zero(2)).unwrap(),
            rational(1, 2)
        );
        // two edges and three vertices
        assert_eq!(np.faces().len(), 5);
        assert!(np.nondegeneracy_report().nondegenerate);
    }

    #[test]
    fn quasi_homogeneous_facet_matches_weights() {
        let np = NewtonPolyhedron::build(&p2("x^2 + y^3")).unwrap();
        assert_eq!(np.facets().len(), 1);
        assert_eq!(
            np.facets()[0].normal(),
            &[rational(1, 2), rational(1, 3)]
        );
        assert_eq!(np.faces().len(), 3);
        assert!(np.nondegeneracy_report().nondegenerate);
    }

    #[test]
    fn thin_supports_are_flagged_not_rejected() {
        let np = NewtonPolyhedron::build(&p2("x^2")).unwrap();
        assert!(!np.has_compact_facets());
        assert!(!np.is_convenient());
        let np = NewtonPolyhedron::build(&p2("x*y")).unwrap();
        assert!(!np.has_compact_facets());
        assert!(!np.is_convenient());
        assert!(matches!(
            np.rho_tilde(&p2("x*y")),
            Err(Error::NotConvenient(_))
        ));
        // facets exist but one axis is empty
        let np = NewtonPolyhedron::build(&p2("x^2 + x*y")).unwrap();
        assert!(np.has_compact_facets());
        assert!(!np.is_convenient());
    }

    #[test]
    fn degenerate_edge_is_identified() {
        let f = p3("x^2 + 2*x*y + y^2 + x*z + z^2");
        let np = NewtonPolyhedron::build(&f).unwrap();
        assert!(np.is_convenient());
        assert_eq!(np.facets().len(), 1);
        assert_eq!(
            np.facets()[0].normal(),
            &[rational(1, 2), rational(1, 2), rational(1, 2)]
        );
        // triangle, three edges, three vertices
        assert_eq!(np.faces().len(), 7);
        let report = np.nondegeneracy_report();
        assert!(!report.nondegenerate);
        let failing: Vec<usize> = report
            .checks
            .iter()
            .filter(|c| !c.nondegenerate)
            .map(|c| c.face)
            .collect();
        assert_eq!(failing.len(), 1);
        let mut edge = exps(&np, &np.faces()[failing[0]]);
        edge.sort();
        assert_eq!(edge, vec![vec![0, 2, 0], vec![1, 1, 0], vec![2, 0, 0]]);
        assert_eq!(np.faces()[failing[0]].dimension(), 1);
    }

    #[test]
    fn rho_tilde_matches_rho_on_quasi_homogeneous_support() {
        let f = p2("x^2 + y^5");
        let np = NewtonPolyhedron::build(&f).unwrap();
        let w = detect_weights(&f).unwrap();
        for a in 0..=8u32 {
            for b in 0..=8u32 {
                if a + b > 8 {
                    continue;
                }
                let e = Exponent::new(vec![a, b]);
                assert_eq!(np.rho_tilde_exponent(&e).unwrap(), w.rho_exponent(&e));
            }
        }
    }

    #[test]
    fn rho_tilde_is_shifted_rho_hat() {
        let np = NewtonPolyhedron::build(&p2("x^2*y^2 + x^5 + y^5")).unwrap();
        let shift = Exponent::new(vec![1, 1]);
        for a in 0..=5u32 {
            for b in 0..=5u32 {
                let e = Exponent::new(vec![a, b]);
                assert_eq!(
                    np.rho_tilde_exponent(&e).unwrap(),
                    np.rho_hat_exponent(&e.add(&shift)).unwrap()
                );
            }
        }
    }

    #[test]
    fn tilde_filtration_generators_examples() {
        let np = NewtonPolyhedron::build(&p2("x^2*y^2 + x^5 + y^5")).unwrap();
        let gens = np.tilde_filtration_generators(&rational_int(1)).unwrap();
        let expected: Vec<Exponent> = [vec![1, 1], vec![0, 3], vec![3, 0]]
            .into_iter()
            .map(Exponent::new)
            .collect();
        assert_eq!(gens, expected);
        // whole ring below the minimum of ρ̃
        let all = np.tilde_filtration_generators(&rational(1, 2)).unwrap();
        assert_eq!(all, vec![Exponent::zero(2)]);
    }

    #[test]
    fn construction_caps_and_validation() {
        let five = Polynomial::variable(5, 0);
        assert!(matches!(
            NewtonPolyhedron::build(&five),
            Err(Error::DimensionCap { n: 5, cap: 4 })
        ));
        let wide = Polynomial::from_terms(
            2,
            (0..5).flat_map(|a| {
                (1..6).map(move |b| (Exponent::new(vec![a, b]), rational_int(1)))
            }),
        );
        assert!(matches!(
            NewtonPolyhedron::build(&wide),
            Err(Error::SupportCap { size: 25, cap: 24 })
        ));
        assert!(matches!(
            NewtonPolyhedron::build(&p2("1 + x")),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            NewtonPolyhedron::build(&Polynomial::zero(2)),
            Err(Error::Invalid(_))
        ));
    }
}

//! Report types for every subcommand: one struct per command, serialized
//! verbatim for `--format json` and rendered line-by-line for
//! `--format text`.  Both carry the same fields; orderings are fixed so
//! JSON output is byte-stable across runs.

use serde::Serialize;

fn ideal(gens: &[String]) -> String {
    format!("({})", gens.join(", "))
}

fn list(values: &[String]) -> String {
    if values.is_empty() {
        "(none)".into()
    } else {
        values.join(", ")
    }
}

fn point(entries: &[u32]) -> String {
    let inner: Vec<String> = entries.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

fn points(list: &[Vec<u32>]) -> String {
    list.iter()
        .map(|p| point(p))
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes_no(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
pub struct BasisEntry {
    pub monomial: String,
    pub weight: String,
}

#[derive(Serialize)]
pub struct LevelInterval {
    pub interval: String,
    pub level: i64,
}

#[derive(Serialize)]
pub struct RegenerationStep {
    pub k: u32,
    pub regenerates: bool,
}

#[derive(Serialize)]
pub struct EmpiricalLevel {
    pub alpha: String,
    pub formula_level: i64,
    pub observed_level: u32,
    pub steps: Vec<RegenerationStep>,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub weights: Vec<String>,
    pub minimal_exponent: String,
    pub milnor_number: usize,
    pub jacobian_exponent: u32,
    pub basis: Vec<BasisEntry>,
    pub level_by_alpha: Vec<LevelInterval>,
    pub empirical: Option<EmpiricalLevel>,
}

impl AnalyzeReport {
    pub fn text(&self) -> String {
        let mut out = vec![
            format!("f = {}", self.f),
            format!("variables: {}", self.vars.join(", ")),
            format!(
                "weights: {}",
                self.vars
                    .iter()
                    .zip(&self.weights)
                    .map(|(v, w)| format!("{v} -> {w}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!("minimal exponent (sum of weights): {}", self.minimal_exponent),
            format!("Milnor number: {}", self.milnor_number),
            format!("Jacobian exponent: {}", self.jacobian_exponent),
            "Milnor basis (monomial : weight):".into(),
        ];
        for entry in &self.basis {
            out.push(format!("  {} : {}", entry.monomial, entry.weight));
        }
        out.push("generating level over alpha:".into());
        for row in &self.level_by_alpha {
            out.push(format!("  {} : level {}", row.interval, row.level));
        }
        if let Some(emp) = &self.empirical {
            out.push(format!("at alpha = {}:", emp.alpha));
            out.push(format!("  formula level: {}", emp.formula_level));
            out.push(format!("  observed level: {}", emp.observed_level));
            for step in &emp.steps {
                out.push(format!(
                    "  step k={}: previous level {}",
                    step.k,
                    if step.regenerates {
                        "regenerates the ideal"
                    } else {
                        "falls short"
                    }
                ));
            }
        }
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct ChainLevel {
    pub k: u32,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct HodgeReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub alpha: String,
    pub k: u32,
    pub mode: &'static str,
    pub truncation_degree: u32,
    pub levels: Vec<ChainLevel>,
    /// `None` in Newton mode, where only the direct construction exists.
    pub methods_agree: Option<bool>,
}

impl HodgeReport {
    pub fn text(&self) -> String {
        let mut out = vec![
            format!("D = ({}) * Z,  Z = {{ {} = 0 }}", self.alpha, self.f),
            format!("mode: {}", self.mode),
            format!(
                "truncation: modulo monomials of degree >= {}",
                self.truncation_degree
            ),
        ];
        for level in &self.levels {
            out.push(format!("I_{} = {}", level.k, ideal(&level.generators)));
        }
        out.push(match self.methods_agree {
            Some(true) => "recursive and direct constructions agree on every level".into(),
            Some(false) => "WARNING: the two constructions disagree".into(),
            None => "single construction (direct); the recursion needs weighted mode".into(),
        });
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct MicrolocalReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub alpha: String,
    pub k: u32,
    pub truncation_degree: u32,
    pub levels: Vec<ChainLevel>,
}

impl MicrolocalReport {
    pub fn text(&self) -> String {
        let mut out = vec![
            format!(
                "microlocal chain of D = ({}) * Z,  Z = {{ {} = 0 }}",
                self.alpha, self.f
            ),
            format!(
                "truncation: modulo monomials of degree >= {}",
                self.truncation_degree
            ),
        ];
        for level in &self.levels {
            out.push(format!("I~_{} = {}", level.k, ideal(&level.generators)));
        }
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct CompareLevel {
    pub k: u32,
    pub relation: &'static str,
    pub maximal_ideal_power: Option<u32>,
    pub mod_f_equal: bool,
    pub criterion_fired: bool,
    /// Verdict about level `k+1`; absent on the last level.
    pub next_level_verdict: Option<&'static str>,
    pub hodge_generators: Vec<String>,
    pub microlocal_generators: Vec<String>,
}

#[derive(Serialize)]
pub struct CompareReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub alpha: String,
    pub k: u32,
    pub levels: Vec<CompareLevel>,
    pub counterexample: bool,
}

impl CompareReport {
    pub fn text(&self) -> String {
        let mut out = vec![format!(
            "towers of D = ({}) * Z,  Z = {{ {} = 0 }}",
            self.alpha, self.f
        )];
        for level in &self.levels {
            out.push(format!("level {}:", level.k));
            out.push(format!("  relation: {}", level.relation));
            out.push(format!("  I_{}  = {}", level.k, ideal(&level.hodge_generators)));
            out.push(format!(
                "  I~_{} = {}",
                level.k,
                ideal(&level.microlocal_generators)
            ));
            out.push(format!(
                "  power of the maximal ideal: {}",
                level
                    .maximal_ideal_power
                    .map_or("none".into(), |p| format!("m^{p}"))
            ));
            out.push(format!("  equal modulo (f): {}", yes_no(level.mod_f_equal)));
            out.push(format!(
                "  criterion fired: {}",
                yes_no(level.criterion_fired)
            ));
            if let Some(verdict) = level.next_level_verdict {
                out.push(format!("  verdict for level {}: {}", level.k + 1, verdict));
            }
        }
        out.push(if self.counterexample {
            "COUNTEREXAMPLE: equality held without the criterion firing".into()
        } else {
            "no counterexample found".into()
        });
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct Factor {
    pub root: String,
    pub multiplicity: u32,
}

#[derive(Serialize)]
pub struct FactoredPolynomial {
    pub rendered: String,
    pub factors: Vec<Factor>,
}

#[derive(Serialize)]
pub struct JumpLevel {
    pub level: u32,
    pub values: Vec<String>,
}

#[derive(Serialize)]
pub struct BernsteinReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub weights: Vec<String>,
    pub minimal_exponent: String,
    pub bernstein_sato: FactoredPolynomial,
    pub distinct_weights: Vec<String>,
    pub jumping_numbers: Vec<JumpLevel>,
    pub jumping_coefficients: Vec<u32>,
    pub microlocal_jumps: Vec<String>,
    pub routes_agree: bool,
}

impl BernsteinReport {
    pub fn text(&self) -> String {
        let mut out = vec![
            format!("f = {}", self.f),
            format!(
                "weights: {}",
                self.vars
                    .iter()
                    .zip(&self.weights)
                    .map(|(v, w)| format!("{v} -> {w}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            format!("minimal exponent: {}", self.minimal_exponent),
            format!("b_f(s) = {}", self.bernstein_sato.rendered),
            format!("distinct basis weights: {}", list(&self.distinct_weights)),
            "jumping numbers:".into(),
        ];
        for jump in &self.jumping_numbers {
            out.push(format!("  level {}: {}", jump.level, list(&jump.values)));
        }
        out.push(format!(
            "jumping coefficients: {}",
            if self.jumping_coefficients.is_empty() {
                "(none)".into()
            } else {
                self.jumping_coefficients
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        ));
        out.push(format!("microlocal jumps: {}", list(&self.microlocal_jumps)));
        out.push(if self.routes_agree {
            "all three routes agree".into()
        } else {
            "WARNING: the routes disagree".into()
        });
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct FacetRow {
    pub normal: Vec<String>,
    pub weight_sum: String,
    pub support: Vec<Vec<u32>>,
}

#[derive(Serialize)]
pub struct FaceRow {
    pub dimension: usize,
    pub points: Vec<Vec<u32>>,
    pub face_polynomial: String,
    pub nondegenerate: bool,
}

#[derive(Serialize)]
pub struct NewtonReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub support: Vec<Vec<u32>>,
    pub convenient: bool,
    pub has_compact_facets: bool,
    pub facets: Vec<FacetRow>,
    pub faces: Vec<FaceRow>,
    pub nondegenerate: bool,
}

impl NewtonReport {
    pub fn text(&self) -> String {
        let mut out = vec![
            format!("f = {}", self.f),
            format!("support: {}", points(&self.support)),
            format!("convenient: {}", yes_no(self.convenient)),
            format!("compact facets: {}", self.facets.len()),
        ];
        for facet in &self.facets {
            out.push(format!(
                "  normal ({}), weight sum {}, support {}",
                facet.normal.join(", "),
                facet.weight_sum,
                points(&facet.support)
            ));
        }
        out.push(format!("compact faces: {}", self.faces.len()));
        for face in &self.faces {
            out.push(format!(
                "  dim {}, points {}: {} -- {}",
                face.dimension,
                points(&face.points),
                face.face_polynomial,
                if face.nondegenerate {
                    "nondegenerate"
                } else {
                    "DEGENERATE"
                }
            ));
        }
        out.push(format!(
            "Newton boundary: {}",
            if self.nondegenerate {
                "nondegenerate"
            } else {
                "degenerate"
            }
        ));
        out.join("\n")
    }
}

#[derive(Serialize)]
pub struct SweepRow {
    pub alpha: String,
    pub relations: Option<Vec<&'static str>>,
    pub counterexample: Option<bool>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct ConjectureReport {
    pub command: &'static str,
    pub f: String,
    pub vars: Vec<String>,
    pub k: u32,
    pub items: Vec<SweepRow>,
    pub counterexamples: usize,
}

impl ConjectureReport {
    pub fn text(&self) -> String {
        let mut out = vec![format!(
            "equality experiment for f = {}, levels 0..={}",
            self.f, self.k
        )];
        for item in &self.items {
            let line = match (&item.relations, &item.error) {
                (Some(relations), _) => format!(
                    "alpha = {}: relations {} -- {}",
                    item.alpha,
                    relations.join(", "),
                    if item.counterexample == Some(true) {
                        "COUNTEREXAMPLE"
                    } else {
                        "consistent"
                    }
                ),
                (None, Some(error)) => format!("alpha = {}: error: {}", item.alpha, error),
                (None, None) => unreachable!("sweep row with neither result nor error"),
            };
            out.push(line);
        }
        out.push(format!("counterexamples: {}", self.counterexamples));
        out.join("\n")
    }
}

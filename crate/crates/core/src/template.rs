//! Generator templates for the ideals of a cell and the sequential solver
//! that forces their dependent coefficients.
//!
//! Every ideal with valuation semimodule `Δ = d + Λ` has generators
//! `t^{bᵢ} + Σ λᵢ,ₖ t^{bᵢ+k}` with `bᵢ = d + aᵢ` and `bᵢ + k ∉ Δ`. Requiring
//! each generator to lie in `ℂ[[t^p, φ]]` pins the coefficients at exponents
//! outside `Γ`; subduction against `(t^p, φ)` exposes them one at a time as
//! affine-linear equations.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::PlaneBranch;
use crate::semimodule::EmbeddedSemimodule;
use crate::series::{parse_terms, write_power, TruncatedSeries};
use crate::stdbasis::{SagbiRing, DEFAULT_GUARD};

/// `c + Σ cᵥ·v` over named unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AffineExpr {
    constant: BigRational,
    terms: BTreeMap<String, BigRational>,
}

impl AffineExpr {
    pub fn constant(c: BigRational) -> Self {
        Self {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn variable(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), BigRational::one());
        Self {
            constant: BigRational::zero(),
            terms,
        }
    }

    pub fn constant_part(&self) -> &BigRational {
        &self.constant
    }

    pub fn coefficient(&self, var: &str) -> BigRational {
        self.terms.get(var).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (v, c) in &other.terms {
            let entry = out.terms.entry(v.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(v);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::default();
        }
        Self {
            constant: &self.constant * factor,
            terms: self
                .terms
                .iter()
                .map(|(v, c)| (v.clone(), c * factor))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: &str, value: &Self) -> Self {
        match self.terms.get(var) {
            None => self.clone(),
            Some(c) => {
                let mut rest = self.clone();
                rest.terms.remove(var);
                rest.add(&value.scale(c))
            }
        }
    }

    /// Solves `self = 0` for `var`.
    fn solve_for(&self, var: &str) -> Self {
        let c = self.coefficient(var);
        let mut rest = self.clone();
        rest.terms.remove(var);
        rest.scale(&(-BigRational::one() / c))
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.constant.is_zero() || self.terms.is_empty() {
            parts.push((self.constant.is_negative(), rational_string(&self.constant.abs())));
        }
        for (v, c) in &self.terms {
            let body = if c.abs().is_one() {
                v.clone()
            } else {
                format!("{}*{v}", rational_string(&c.abs()))
            };
            parts.push((c.is_negative(), body));
        }
        for (i, (negative, body)) in parts.iter().enumerate() {
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            f.write_str(body)?;
        }
        Ok(())
    }
}

fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A truncated series whose coefficients are affine expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSeries {
    coeffs: BTreeMap<u32, AffineExpr>,
    trunc: u32,
}

impl AffineSeries {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self {
            coeffs: s
                .terms()
                .map(|(e, c)| (e, AffineExpr::constant(c.clone())))
                .collect(),
            trunc: s.trunc(),
        }
    }

    /// Parses the series grammar with symbolic coefficients, as in `t^4 + l*t^5`.
    pub fn parse(input: &str, trunc: u32) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::HorizonExhausted(0));
        }
        let mut out = Self {
            coeffs: BTreeMap::new(),
            trunc,
        };
        for term in parse_terms(input)? {
            let expr = match &term.symbol {
                Some(v) => AffineExpr::variable(v).scale(&term.coeff),
                None => AffineExpr::constant(term.coeff.clone()),
            };
            out.add_term(term.exponent, &expr);
        }
        Ok(out)
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, e: u32) -> AffineExpr {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &AffineExpr)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .coeffs
            .values()
            .flat_map(|c| c.variables().map(str::to_string))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, e: u32, c: &AffineExpr) {
        if e >= self.trunc {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry = entry.add(c);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    fn leading(&self) -> Option<(u32, AffineExpr)> {
        self.coeffs.iter().next().map(|(&e, c)| (e, c.clone()))
    }

    /// `self − c·m`.
    fn sub_scaled(&mut self, c: &AffineExpr, m: &TruncatedSeries) {
        for (e, mc) in m.terms() {
            self.add_term(e, &c.scale(&-mc));
        }
    }

    pub fn substitute(&self, var: &str, value: &AffineExpr) -> Self {
        let mut out = Self {
            coeffs: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (&e, c) in &self.coeffs {
            out.add_term(e, &c.substitute(var, value));
        }
        out
    }

    /// The numeric series, if no unknown is left.
    pub fn to_numeric(&self) -> Option<TruncatedSeries> {
        if self.coeffs.values().any(|c| !c.is_constant()) {
            return None;
        }
        TruncatedSeries::from_terms(
            self.coeffs.iter().map(|(&e, c)| (e, c.constant.clone())),
            self.trunc,
        )
        .ok()
    }
}

impl fmt::Display for AffineSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        struct P(u32);
        impl fmt::Display for P {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_power(f, self.0)
            }
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let (negative, magnitude) = if c.is_constant() {
                (c.constant.is_negative(), AffineExpr::constant(c.constant.abs()))
            } else {
                (false, c.clone())
            };
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let single = magnitude.is_constant() || (magnitude.constant.is_zero() && magnitude.terms.len() == 1);
            let unit = magnitude.is_constant() && magnitude.constant.is_one();
            match (e, unit, single) {
                (0, _, true) => write!(f, "{magnitude}")?,
                (0, _, false) => write!(f, "({magnitude})")?,
                (_, true, _) => write!(f, "{}", P(e))?,
                (_, false, true) if magnitude.is_constant() => write!(f, "{magnitude} {}", P(e))?,
                (_, false, true) => write!(f, "{magnitude}*{}", P(e))?,
                (_, false, false) => write!(f, "({magnitude})*{}", P(e))?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SlotKind {
    /// `bᵢ + k ∈ Γ` with `k < q`: a cell coordinate.
    Free,
    /// `bᵢ + k ∉ Γ`: forced by membership in the ring.
    Dependent,
    /// `bᵢ + k ∈ Γ` with `k > q`: a function of the free coordinates, fixed
    /// through the syzygies rather than by subduction.
    Constrained,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub offset: u32,
    pub exponent: u32,
    pub kind: SlotKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateGenerator {
    pub lead: u32,
    pub slots: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTemplate {
    pub shift: u32,
    /// Non-leading exponents of `φ` above `q` that lie outside `Γ`.
    pub phi_tail: Vec<u32>,
    pub generators: Vec<TemplateGenerator>,
}

impl GeneratorTemplate {
    pub fn count(&self, kind: SlotKind) -> usize {
        self.generators
            .iter()
            .flat_map(|g| &g.slots)
            .filter(|s| s.kind == kind)
            .count()
    }

    pub fn free_slot_count(&self) -> usize {
        self.count(SlotKind::Free)
    }

    /// Name of the unknown at slot `(i, k)`.
    pub fn slot_name(i: usize, offset: u32) -> String {
        format!("l{i}_{offset}")
    }

    /// The generators as affine series, with given slot values substituted
    /// and every other slot left as its unknown.
    pub fn instantiate(&self, values: &SlotValues, trunc: u32) -> Result<Vec<AffineSeries>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut s = AffineSeries {
                    coeffs: BTreeMap::new(),
                    trunc,
                };
                if trunc == 0 {
                    return Err(Error::HorizonExhausted(0));
                }
                s.add_term(g.lead, &AffineExpr::constant(BigRational::one()));
                for slot in &g.slots {
                    let c = match values.get(&(i, slot.offset)) {
                        Some(v) => AffineExpr::constant(v.clone()),
                        None if slot.kind == SlotKind::Dependent => {
                            AffineExpr::variable(&Self::slot_name(i, slot.offset))
                        }
                        None => AffineExpr::default(),
                    };
                    s.add_term(slot.exponent, &c);
                }
                Ok(s)
            })
            .collect()
    }
}

impl fmt::Display for GeneratorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "t^{}", g.lead)?;
            for s in &g.slots {
                write!(f, " + {}*t^{}", Self::slot_name(i, s.offset), s.exponent)?;
            }
        }
        Ok(())
    }
}

/// Slot values keyed by `(generator index, offset k)`.
pub type SlotValues = BTreeMap<(usize, u32), BigRational>;

/// Template of the generators of the ideals in the cell of `Δ`, one per
/// p-basis element.
pub fn generator_template(
    branch: &PlaneBranch,
    delta: &EmbeddedSemimodule,
    phi: &TruncatedSeries,
) -> Result<GeneratorTemplate> {
    let q = branch.q();
    match phi.leading_term() {
        Ok((e, c)) if e == q && c.is_one() => {}
        _ => {
            return Err(Error::MalformedGenerator(format!(
                "phi = {phi} is not of the form t^{q} + higher order terms"
            )))
        }
    }
    let phi_tail = phi
        .support()
        .into_iter()
        .filter(|&b| b > q && !branch.contains(b as i64))
        .collect();
    let d = delta.shift();
    let top = delta.as_shifted().conductor() as u32;
    let generators = delta
        .lambda()
        .p_basis()
        .iter()
        .map(|&a| {
            let lead = d + a;
            let slots = (lead + 1..top)
                .filter(|&e| !delta.contains(e as i64))
                .map(|e| {
                    let offset = e - lead;
                    let kind = if !branch.contains(e as i64) {
                        SlotKind::Dependent
                    } else if offset < q {
                        SlotKind::Free
                    } else {
                        SlotKind::Constrained
                    };
                    Slot {
                        offset,
                        exponent: e,
                        kind,
                    }
                })
                .collect();
            TemplateGenerator { lead, slots }
        })
        .collect();
    Ok(GeneratorTemplate {
        shift: d,
        phi_tail,
        generators,
    })
}

/// A gap exponent whose coefficient was forced to be a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub generator: usize,
    pub exponent: u32,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Input generators with every solved unknown substituted.
    pub generators: Vec<AffineSeries>,
    /// Solved unknowns, in the order they were determined.
    pub assignments: Vec<(String, AffineExpr)>,
    pub unresolved: Vec<String>,
    pub inconsistency: Option<Inconsistency>,
}

impl SolveOutcome {
    pub fn consistent(&self) -> bool {
        self.inconsistency.is_none()
    }

    /// True when a consistent solution fixed every unknown.
    pub fn resolved(&self) -> bool {
        self.consistent() && self.unresolved.is_empty()
    }

    pub fn numeric_generators(&self) -> Option<Vec<TruncatedSeries>> {
        if !self.consistent() {
            return None;
        }
        self.generators.iter().map(AffineSeries::to_numeric).collect()
    }
}

/// Subducts each generator against `G` and solves the affine equations met at
/// exponents outside `Γ`, in order of increasing exponent.
pub fn subduce(ring: &SagbiRing, generators: &[AffineSeries]) -> Result<SolveOutcome> {
    let horizon = generators
        .iter()
        .map(AffineSeries::trunc)
        .chain([ring.trunc()])
        .min()
        .expect("ring horizon");
    let mut cache = ring.monomials();
    let semigroup = ring.semigroup();
    let mut gens: Vec<AffineSeries> = generators.to_vec();
    let mut assignments: Vec<(String, AffineExpr)> = Vec::new();
    let mut inconsistency = None;

    'outer: for idx in 0..gens.len() {
        let mut work = gens[idx].clone();
        work.trunc = horizon;
        work.coeffs.retain(|&e, _| e < horizon);
        while let Some((e, c)) = work.leading() {
            if semigroup.contains(e as i64) {
                let beta = ring.representation(e).expect("member below the horizon");
                let m = cache.get(&beta);
                let lc = m.leading_term()?.1.clone();
                work.sub_scaled(&c.scale(&(BigRational::one() / lc)), &m);
                continue;
            }
            if e + DEFAULT_GUARD >= horizon {
                return Err(Error::Precision {
                    exponent: e,
                    horizon,
                    guard: DEFAULT_GUARD,
                });
            }
            let Some(var) = c.variables().next().map(str::to_string) else {
                inconsistency = Some(Inconsistency {
                    generator: idx,
                    exponent: e,
                    value: c.constant.clone(),
                });
                break 'outer;
            };
            let value = c.solve_for(&var);
            work = work.substitute(&var, &value);
            for g in gens.iter_mut() {
                *g = g.substitute(&var, &value);
            }
            for (_, expr) in assignments.iter_mut() {
                *expr = expr.substitute(&var, &value);
            }
            assignments.push((var, value));
        }
    }
    let mut unresolved: Vec<String> = gens.iter().flat_map(AffineSeries::variables).collect();
    unresolved.sort();
    unresolved.dedup();
    Ok(SolveOutcome {
        generators: gens,
        assignments,
        unresolved,
        inconsistency,
    })
}

/// Instantiates the template with the given slot values and forces the
/// dependent coefficients so that every generator lies in `ℂ[[t^p, φ]]`.
pub fn solve_dependent_coefficients(
    branch: &PlaneBranch,
    template: &GeneratorTemplate,
    phi: &TruncatedSeries,
    values: &SlotValues,
    trunc: u32,
) -> Result<SolveOutcome> {
    let ring_gens = [TruncatedSeries::monomial(branch.p(), BigRational::one(), trunc)?, phi.truncate(trunc)?];
    let ring = SagbiRing::new(&ring_gens, trunc)?;
    subduce(&ring, &template.instantiate(values, trunc)?)
}

//! The Pfister–Steenbrink side: monomial semigroups, their dimension formula
//! for cells, and the E6 cell on which it disagrees with the actual dimension.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num::{BigRational, One};
use serde::{Deserialize, Serialize};

use crate::cells::cell_dimension;
use crate::error::{Error, Result};
use crate::semigroup::{NumericalSemigroup, PlaneBranch};
use crate::semimodule::{p_basis_of_set, EmbeddedSemimodule, ShiftedSemimodule};
use crate::series::TruncatedSeries;
use crate::stdbasis::{default_horizon, StdBasisProblem};
use crate::template::{generator_template, solve_dependent_coefficients, SlotKind, SlotValues};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MonomialClass {
    /// `{im : 0 ≤ i ≤ s} ∪ [sm + b, ∞)`, `1 ≤ b < m`, `s ≥ 1`.
    Type1 { m: u32, s: u32, b: u32 },
    /// `{0} ∪ [m, m + r − 1] ∪ [m + r + 1, ∞)`, `2 ≤ r ≤ m − 1`.
    Type2 { m: u32, r: u32 },
    /// `{0, m} ∪ [m + 2, 2m] ∪ [2m + 2, ∞)`, `m ≥ 3`.
    Type3 { m: u32 },
    NotMonomial,
}

impl fmt::Display for MonomialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Type1 { m, s, b } => write!(f, "TYPE1(m={m}, s={s}, b={b})"),
            Self::Type2 { m, r } => write!(f, "TYPE2(m={m}, r={r})"),
            Self::Type3 { m } => write!(f, "TYPE3(m={m})"),
            Self::NotMonomial => f.write_str("NOT_MONOMIAL"),
        }
    }
}

/// Non-members below `end` of the set described by `member`.
fn gaps_of(end: u32, member: impl Fn(u32) -> bool) -> Vec<u32> {
    (0..end).filter(|&n| !member(n)).collect()
}

/// Matches the gap set of `Γ` against the three closed forms, trying
/// parameters with `m ≤ c + 2` (larger `m` puts a gap above the conductor).
pub fn classify_monomial(gamma: &NumericalSemigroup) -> MonomialClass {
    let gaps = gamma.gaps();
    let m_max = gamma.conductor() + 2;
    for m in 2..=m_max {
        for s in 1..=m_max {
            for b in 1..m {
                let end = s * m + b;
                if end > m_max * 2 + 2 {
                    continue;
                }
                if gaps_of(end, |n| n % m == 0 && n / m <= s) == gaps {
                    return MonomialClass::Type1 { m, s, b };
                }
            }
        }
    }
    for m in 3..=m_max {
        for r in 2..m {
            if gaps_of(m + r + 1, |n| n == 0 || (m..m + r).contains(&n)) == gaps {
                return MonomialClass::Type2 { m, r };
            }
        }
    }
    for m in 3..=m_max {
        if gaps_of(2 * m + 2, |n| n == 0 || n == m || (m + 2..=2 * m).contains(&n)) == gaps {
            return MonomialClass::Type3 { m };
        }
    }
    MonomialClass::NotMonomial
}

/// Window rule used for the comparison dimension.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsFormula {
    /// `Σ_{γ ∈ S′} #J_γ`.
    #[default]
    PfisterSteenbrink,
    /// Replaces the sum by the cell dimension; agreement is then automatic.
    CellWindows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsDimensionReport {
    pub r: u32,
    pub delta_normal: ShiftedSemimodule,
    /// Minimal generators of `Δ⁽δ⁾` in `[0, 2δ − 1]`.
    pub s_prime: Vec<i64>,
    /// `J_γ = [γ + 1, 2δ − 1] \ Δ⁽δ⁾`.
    pub j_sets: BTreeMap<i64, Vec<i64>>,
    pub ps_dim: u32,
    pub eq2_dim: u32,
    pub agree: bool,
}

pub fn ps_dimension(branch: &PlaneBranch, delta: &EmbeddedSemimodule, r: u32) -> Result<PsDimensionReport> {
    ps_dimension_with(branch, delta, r, PsFormula::PfisterSteenbrink)
}

pub fn ps_dimension_with(
    branch: &PlaneBranch,
    delta: &EmbeddedSemimodule,
    r: u32,
    formula: PsFormula,
) -> Result<PsDimensionReport> {
    let delta_normal = delta.delta_normalize(branch, r)?;
    let top = 2 * branch.delta() as i64 - 1;
    let s_prime: Vec<i64> = delta_normal
        .minimal_generators()
        .into_iter()
        .filter(|&g| (0..=top).contains(&g))
        .collect();
    let j_sets: BTreeMap<i64, Vec<i64>> = s_prime
        .iter()
        .map(|&g| (g, (g + 1..=top).filter(|&j| !delta_normal.contains(j)).collect()))
        .collect();
    let eq2_dim = cell_dimension(branch, delta);
    let ps_dim = match formula {
        PsFormula::PfisterSteenbrink => j_sets.values().map(|j| j.len() as u32).sum(),
        PsFormula::CellWindows => eq2_dim,
    };
    Ok(PsDimensionReport {
        r,
        delta_normal,
        s_prime,
        j_sets,
        ps_dim,
        eq2_dim,
        agree: ps_dim == eq2_dim,
    })
}

/// Expected outcomes for the default E6 cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub r: u32,
    pub normalized_generators: Vec<i64>,
    pub eq2_dim: u32,
    pub ps_dim: u32,
    pub ideal: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub p: u32,
    pub q: u32,
    /// Generators of `Δ` as a `Γ`-semimodule.
    pub generators: Vec<i64>,
    pub formula: PsFormula,
    pub expect: Option<Expectations>,
}

impl ReportOptions {
    /// `Δ = ⟨4, 6, 7⟩_Γ` over `⟨3, 4⟩`.
    pub fn e6() -> Self {
        Self {
            p: 3,
            q: 4,
            generators: vec![4, 6, 7],
            formula: PsFormula::PfisterSteenbrink,
            expect: Some(Expectations {
                r: 2,
                normalized_generators: vec![2, 4, 5],
                eq2_dim: 0,
                ps_dim: 1,
                ideal: vec![4, 6, 7],
            }),
        }
    }

    pub fn force_eq2_windows(mut self) -> Self {
        self.formula = PsFormula::CellWindows;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub name: String,
    pub expected: Option<String>,
    pub observed: String,
    pub pass: bool,
}

impl Link {
    fn new(name: &str, expected: Option<String>, observed: String, ok: bool) -> Self {
        let pass = ok && expected.as_ref().is_none_or(|e| *e == observed);
        Self {
            name: name.to_string(),
            expected,
            observed,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReportStatus {
    Pass,
    Broken,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u32,
    pub q: u32,
    pub generators: Vec<i64>,
    pub r: u32,
    pub ps: PsDimensionReport,
    pub template: String,
    pub solved_generators: Vec<String>,
    pub links: Vec<Link>,
    pub status: ReportStatus,
}

fn set_string(xs: &[i64]) -> String {
    let inner: Vec<String> = xs.iter().map(i64::to_string).collect();
    format!("<{}>", inner.join(","))
}

/// Whether `Δ⁽δ⁾` is the semimodule generated by `gens`.
fn same_semimodule(branch: &PlaneBranch, a: &ShiftedSemimodule, gens: &[i64]) -> Result<bool> {
    let (lambda, min) = p_basis_of_set(branch, gens)?;
    Ok(*a == ShiftedSemimodule { lambda, shift: min })
}

/// Runs the chain: membership in `Mod_r` with its δ-normalization, the cell
/// dimension, the comparison dimension, the forced generators, and the
/// standard-basis check on them.
pub fn counterexample_report(opts: &ReportOptions) -> Result<CounterexampleReport> {
    let branch = PlaneBranch::new(opts.p, opts.q)?;
    let delta = EmbeddedSemimodule::generated_by(&branch, &opts.generators)?;
    let r = delta.codim();
    let ps = ps_dimension_with(&branch, &delta, r, opts.formula)?;
    let expect = opts.expect.as_ref();
    let mut links = Vec::new();

    let normalized_gens = ps.delta_normal.minimal_generators();
    let normal_ok = match expect {
        Some(e) => e.r == r && same_semimodule(&branch, &ps.delta_normal, &e.normalized_generators)?,
        None => true,
    };
    links.push(Link::new(
        "membership and normalization",
        expect.map(|e| format!("r={}, {}", e.r, set_string(&e.normalized_generators))),
        match expect {
            Some(e) if normal_ok => format!("r={r}, {}", set_string(&e.normalized_generators)),
            _ => format!("r={r}, {}", set_string(&normalized_gens)),
        },
        true,
    ));
    links.push(Link::new(
        "cell dimension",
        expect.map(|e| e.eq2_dim.to_string()),
        ps.eq2_dim.to_string(),
        true,
    ));
    links.push(Link::new(
        "Pfister-Steenbrink dimension",
        expect.map(|e| e.ps_dim.to_string()),
        ps.ps_dim.to_string(),
        true,
    ));

    let n = default_horizon(delta.shift(), branch.conductor(), branch.q());
    let phi = TruncatedSeries::monomial(branch.q(), BigRational::one(), n)?;
    let template = generator_template(&branch, &delta, &phi)?;
    let solved = solve_dependent_coefficients(&branch, &template, &phi, &SlotValues::new(), n)?;
    let gens = solved.numeric_generators().ok_or_else(|| {
        Error::ContractViolation("monomial generators admit no solution".into())
    })?;
    let solved_generators: Vec<String> = gens.iter().map(ToString::to_string).collect();
    let ring = [TruncatedSeries::monomial(branch.p(), BigRational::one(), n)?, phi.clone()];
    let problem = StdBasisProblem::new(&ring, &gens, n)?;
    let valuations = problem.gamma_of_module()?;
    // Pinning any dependent coefficient away from its forced value must fail.
    let mut pinned_fails = true;
    for (i, g) in template.generators.iter().enumerate() {
        for slot in g.slots.iter().filter(|s| s.kind == SlotKind::Dependent) {
            let forced = gens[i].coeff(slot.exponent);
            let mut values = SlotValues::new();
            values.insert((i, slot.offset), forced + BigRational::one());
            let pinned = solve_dependent_coefficients(&branch, &template, &phi, &values, n)?;
            pinned_fails &= !pinned.consistent();
        }
    }
    let unique = solved.resolved() && template.free_slot_count() == 0 && pinned_fails;
    let ideal_observed = match expect {
        Some(e) => {
            let listed: Vec<i64> = e.ideal.iter().map(|&x| x as i64).collect();
            let same = valuations.semimodule == delta.as_shifted()
                && same_semimodule(&branch, &valuations.semimodule, &listed)?;
            let kind = if unique { "unique ideal" } else { "ideal family" };
            if same {
                format!("{kind} {}", set_string(&listed))
            } else {
                format!("{kind} ({})", solved_generators.join(", "))
            }
        }
        None => format!("({})", solved_generators.join(", ")),
    };
    links.push(Link::new(
        "forced generators",
        expect.map(|e| {
            let listed: Vec<i64> = e.ideal.iter().map(|&x| x as i64).collect();
            format!("unique ideal {}", set_string(&listed))
        }),
        ideal_observed,
        solved.consistent(),
    ));
    let verdict = problem.is_standard_basis()?;
    links.push(Link::new(
        "standard basis",
        Some("PASS".into()),
        if verdict.standard { "PASS" } else { "FAIL" }.to_string(),
        true,
    ));

    let status = if links.iter().all(|l| l.pass) {
        ReportStatus::Pass
    } else {
        ReportStatus::Broken
    };
    Ok(CounterexampleReport {
        p: opts.p,
        q: opts.q,
        generators: opts.generators.clone(),
        r,
        ps,
        template: template.to_string(),
        solved_generators,
        links,
        status,
    })
}

impl CounterexampleReport {
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let gens: Vec<String> = self.generators.iter().map(i64::to_string).collect();
        writeln!(
            out,
            "# Cell of <{}>_G over G = <{},{}>\n",
            gens.join(","),
            self.p,
            self.q
        )
        .unwrap();
        writeln!(out, "- r = {}", self.r).unwrap();
        writeln!(out, "- normalized: {}", set_string(&self.ps.delta_normal.minimal_generators())).unwrap();
        let s: Vec<String> = self.ps.s_prime.iter().map(i64::to_string).collect();
        writeln!(out, "- S' = {{{}}}", s.join(", ")).unwrap();
        for (g, j) in &self.ps.j_sets {
            let j: Vec<String> = j.iter().map(i64::to_string).collect();
            writeln!(out, "- J_{g} = {{{}}}", j.join(", ")).unwrap();
        }
        writeln!(out, "- dimensions: cell {}, PS {}", self.ps.eq2_dim, self.ps.ps_dim).unwrap();
        writeln!(out, "- template: {}", self.template).unwrap();
        writeln!(out, "- generators: {}\n", self.solved_generators.join(", ")).unwrap();
        writeln!(out, "| link | expected | observed | status |").unwrap();
        writeln!(out, "|---|---|---|---|").unwrap();
        for l in &self.links {
            writeln!(
                out,
                "| {} | {} | {} | {} |",
                l.name,
                l.expected.as_deref().unwrap_or("-"),
                l.observed,
                if l.pass { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        let status = match self.status {
            ReportStatus::Pass => "PASS",
            ReportStatus::Broken => "BROKEN",
        };
        writeln!(out, "\nstatus: {status}").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::enumerate_mod_r;

    fn sg(gens: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(classify_monomial(&sg(&[3, 4])), MonomialClass::Type2 { m: 3, r: 2 });
        assert_eq!(classify_monomial(&sg(&[3, 5])), MonomialClass::Type3 { m: 3 });
        assert_eq!(classify_monomial(&sg(&[4, 5])), MonomialClass::NotMonomial);
        for l in 1..=6 {
            assert_eq!(
                classify_monomial(&sg(&[2, 2 * l + 1])),
                MonomialClass::Type1 { m: 2, s: l, b: 1 }
            );
        }
        assert_eq!(classify_monomial(&sg(&[3, 4, 5])), MonomialClass::Type1 { m: 3, s: 1, b: 1 });
        assert_eq!(classify_monomial(&sg(&[4, 5, 7])), MonomialClass::Type2 { m: 4, r: 2 });
        assert_eq!(classify_monomial(&sg(&[4, 6, 7])), MonomialClass::Type3 { m: 4 });
    }

    #[test]
    fn e6_ps_dimension() {
        let g = PlaneBranch::new(3, 4).unwrap();
        let delta = EmbeddedSemimodule::generated_by(&g, &[4, 6, 7]).unwrap();
        let rep = ps_dimension(&g, &delta, 2).unwrap();
        assert_eq!(rep.s_prime, vec![2, 4]);
        assert_eq!(rep.j_sets[&2], vec![3]);
        assert!(rep.j_sets[&4].is_empty());
        assert_eq!((rep.ps_dim, rep.eq2_dim, rep.agree), (1, 0, false));
        assert!(matches!(ps_dimension(&g, &delta, 3), Err(Error::CodimMismatch { .. })));
    }

    #[test]
    fn r_zero_ps_dimension_counts_gaps() {
        for (p, q) in [(2, 3), (3, 4), (3, 5)] {
            let g = PlaneBranch::new(p, q).unwrap();
            let gamma = EmbeddedSemimodule::generated_by(&g, &[0]).unwrap();
            let rep = ps_dimension(&g, &gamma, 0).unwrap();
            assert_eq!(rep.eq2_dim, 0);
            assert_eq!(rep.s_prime, vec![0]);
            assert_eq!(rep.ps_dim, g.delta());
        }
    }

    #[test]
    fn windows_stay_below_two_delta() {
        for (p, q) in [(2, 5), (3, 4), (3, 5)] {
            let g = PlaneBranch::new(p, q).unwrap();
            for r in g.conductor()..=g.conductor() + 2 {
                for delta in enumerate_mod_r(&g, r) {
                    let rep = ps_dimension(&g, &delta, r).unwrap();
                    let top = 2 * g.delta() as i64 - 1;
                    assert!(rep.j_sets.values().flatten().all(|&j| (0..=top).contains(&j)));
                }
            }
        }
    }

    #[test]
    fn e6_report_passes() {
        let rep = counterexample_report(&ReportOptions::e6()).unwrap();
        assert_eq!(rep.status, ReportStatus::Pass, "{}", rep.to_markdown());
        assert_eq!(rep.links.len(), 5);
        assert_eq!(rep.solved_generators, ["t^4", "t^8", "t^6"]);
        assert_eq!(rep, counterexample_report(&ReportOptions::e6()).unwrap());
        assert!(rep.to_markdown().contains("status: PASS"));
    }

    #[test]
    fn forced_windows_agree() {
        let rep = counterexample_report(&ReportOptions::e6().force_eq2_windows()).unwrap();
        assert!(rep.ps.agree);
        assert_eq!(rep.status, ReportStatus::Broken);
    }

    #[test]
    fn e8_analog_report() {
        let opts = ReportOptions {
            p: 3,
            q: 5,
            generators: vec![5, 9, 13],
            formula: PsFormula::PfisterSteenbrink,
            expect: None,
        };
        let rep = counterexample_report(&opts).unwrap();
        assert_eq!(rep.status, ReportStatus::Pass);
        assert!(rep.r > 0);
    }
}

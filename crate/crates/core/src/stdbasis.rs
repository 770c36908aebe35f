//! Standard bases of modules over subalgebras `ℂ[[g₁, …, g_m]] ⊆ ℂ[[t]]`
//! under the local order (lower `t`-order leads), with exact rational
//! coefficients and a finite horizon.
//!
//! The division algorithm is infinite in principle; here it runs until the
//! working series vanishes below the horizon. Remainder terms can only sit in
//! the finitely many gaps of `⟨ν(H)⟩_Γ`, so a remainder term that reaches the
//! guard band below the horizon means the horizon was too small.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{NumericalSemigroup, PlaneBranch};
use crate::semimodule::{p_basis_of_set, NormalizedSemimodule, ShiftedSemimodule};
use crate::series::TruncatedSeries;

/// Width of the band below the horizon in which remainder terms are refused.
pub const DEFAULT_GUARD: u32 = 4;

/// Horizon for working with a semimodule of minimum `d` over `⟨p, q⟩`.
pub fn default_horizon(d: u32, conductor: u32, q: u32) -> u32 {
    d + 2 * conductor + 2 * q + 8
}

/// Subalgebra generators `G` whose orders generate `Γ` (a SAGBI basis).
#[derive(Debug, Clone)]
pub struct SagbiRing {
    gens: Vec<TruncatedSeries>,
    orders: Vec<u32>,
    semigroup: NumericalSemigroup,
    /// `reach[k][n]`: `n` is a sum of the orders `k..`.
    reach: Vec<Vec<bool>>,
    trunc: u32,
}

impl SagbiRing {
    pub fn new(gens: &[TruncatedSeries], trunc: u32) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::MalformedGenerator("empty subalgebra basis".into()));
        }
        let mut truncated = Vec::with_capacity(gens.len());
        let mut orders = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            let g = g.truncate(trunc)?;
            let order = g.order().ok_or_else(|| {
                Error::MalformedGenerator(format!("subalgebra generator {k} vanishes below the horizon"))
            })?;
            if order == 0 {
                return Err(Error::MalformedGenerator(format!(
                    "subalgebra generator {k} is a unit"
                )));
            }
            orders.push(order);
            truncated.push(g);
        }
        let semigroup = NumericalSemigroup::new(&orders)?;
        let n = trunc as usize;
        let mut reach = vec![vec![false; n]; orders.len() + 1];
        if n > 0 {
            reach[orders.len()][0] = true;
        }
        for k in (0..orders.len()).rev() {
            let o = orders[k] as usize;
            for v in 0..n {
                reach[k][v] = reach[k + 1][v] || (v >= o && reach[k][v - o]);
            }
        }
        Ok(Self {
            gens: truncated,
            orders,
            semigroup,
            reach,
            trunc,
        })
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.gens
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Exponent vector `β` with `Σ βₖ ν(gₖ) = e`, lexicographically largest in
    /// the listing order of `G`.
    pub fn representation(&self, e: u32) -> Option<Vec<u32>> {
        if e >= self.trunc || !self.reach[0][e as usize] {
            return None;
        }
        let mut rest = e;
        let mut beta = Vec::with_capacity(self.orders.len());
        for (k, &o) in self.orders.iter().enumerate() {
            let b = (0..=rest / o)
                .rev()
                .find(|&b| self.reach[k + 1][(rest - b * o) as usize])
                .expect("reachable by table");
            beta.push(b);
            rest -= b * o;
        }
        Some(beta)
    }

    /// `(t^p, φ)` when `G` has that layout.
    pub fn plane_layout(&self) -> Option<(u32, &TruncatedSeries)> {
        if self.gens.len() != 2 {
            return None;
        }
        let first = &self.gens[0];
        let (p, lc) = first.leading_term().ok()?;
        (first.is_monomial() && lc.is_one() && p < self.orders[1]).then_some((p, &self.gens[1]))
    }

    pub fn plane_branch(&self) -> Result<PlaneBranch> {
        match self.semigroup.minimal_generators().as_slice() {
            &[p, q] => PlaneBranch::new(p, q),
            gens => Err(Error::MalformedGenerator(format!(
                "subalgebra orders {gens:?} do not give a two-generator semigroup"
            ))),
        }
    }

    pub fn monomials(&self) -> MonomialCache<'_> {
        MonomialCache {
            ring: self,
            powers: vec![Vec::new(); self.gens.len()],
        }
    }
}

/// Memoized products `g₁^β₁ ⋯ g_m^β_m`, truncated at the ring horizon.
pub struct MonomialCache<'a> {
    ring: &'a SagbiRing,
    powers: Vec<Vec<TruncatedSeries>>,
}

impl MonomialCache<'_> {
    fn power(&mut self, k: usize, e: u32) -> TruncatedSeries {
        let trunc = self.ring.trunc;
        let pw = &mut self.powers[k];
        if pw.is_empty() {
            pw.push(TruncatedSeries::one(trunc).expect("positive horizon"));
        }
        while pw.len() <= e as usize {
            let next = pw
                .last()
                .expect("non-empty")
                .mul(&self.ring.gens[k])
                .truncate(trunc)
                .expect("positive horizon");
            pw.push(next);
        }
        pw[e as usize].clone()
    }

    pub fn get(&mut self, beta: &[u32]) -> TruncatedSeries {
        let trunc = self.ring.trunc;
        let mut acc = TruncatedSeries::one(trunc).expect("positive horizon");
        for (k, &b) in beta.iter().enumerate() {
            if b > 0 {
                acc = acc.mul(&self.power(k, b)).truncate(trunc).expect("positive horizon");
            }
        }
        acc
    }
}

/// A quotient `q_j ∈ ℂ[[g₁, …, g_m]]`, keyed by exponent vectors of `G`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quotient(pub BTreeMap<Vec<u32>, BigRational>);

impl Quotient {
    fn add(&mut self, beta: Vec<u32>, c: BigRational) {
        let entry = self.0.entry(beta.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&beta);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, cache: &mut MonomialCache<'_>) -> TruncatedSeries {
        let trunc = cache.ring.trunc;
        self.0.iter().fold(
            TruncatedSeries::zero(trunc).expect("positive horizon"),
            |acc, (beta, c)| acc.add(&cache.get(beta).scale(c)),
        )
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (beta, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let factors: Vec<String> = beta
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(k, &b)| match b {
                    1 => format!("g{}", k + 1),
                    b => format!("g{}^{b}", k + 1),
                })
                .collect();
            let monomial = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            if c.is_one() {
                write!(f, "{monomial}")?;
            } else if c.is_integer() {
                write!(f, "({})*{monomial}", c.numer())?;
            } else {
                write!(f, "({}/{})*{monomial}", c.numer(), c.denom())?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub quotients: Vec<Quotient>,
    pub remainder: TruncatedSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SProcessResidue {
    pub i: usize,
    pub j: usize,
    /// The common leading exponent that was cancelled.
    pub exponent: u32,
    pub s_process: TruncatedSeries,
    pub remainder: TruncatedSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardBasisVerdict {
    pub standard: bool,
    pub residues: Vec<SProcessResidue>,
}

/// The pair `(G, H)` together with the horizon it is worked at.
#[derive(Debug, Clone)]
pub struct StdBasisProblem {
    ring: SagbiRing,
    module: Vec<TruncatedSeries>,
    module_orders: Vec<u32>,
    /// `⟨ν(H)⟩_Γ` below the horizon.
    module_set: Vec<bool>,
    trunc: u32,
    guard: u32,
}

impl StdBasisProblem {
    pub fn new(ring: &[TruncatedSeries], module: &[TruncatedSeries], trunc: u32) -> Result<Self> {
        let ring = SagbiRing::new(ring, trunc)?;
        if module.is_empty() {
            return Err(Error::MalformedGenerator("empty module basis".into()));
        }
        let mut hs = Vec::with_capacity(module.len());
        let mut module_orders = Vec::with_capacity(module.len());
        for (j, h) in module.iter().enumerate() {
            let h = h.truncate(trunc)?;
            let order = h.order().ok_or_else(|| {
                Error::MalformedGenerator(format!("module generator {j} vanishes below the horizon"))
            })?;
            module_orders.push(order);
            hs.push(h);
        }
        let module_set = (0..trunc as i64)
            .map(|n| {
                module_orders
                    .iter()
                    .any(|&a| ring.semigroup().contains(n - a as i64))
            })
            .collect();
        Ok(Self {
            ring,
            module: hs,
            module_orders,
            module_set,
            trunc,
            guard: DEFAULT_GUARD,
        })
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    pub fn ring(&self) -> &SagbiRing {
        &self.ring
    }

    pub fn module(&self) -> &[TruncatedSeries] {
        &self.module
    }

    pub fn module_orders(&self) -> &[u32] {
        &self.module_orders
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Membership in `⟨ν(h₁), …, ν(h_n)⟩_Γ`.
    pub fn module_contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        match self.module_set.get(n as usize) {
            Some(&b) => b,
            None => self
                .module_orders
                .iter()
                .any(|&a| self.ring.semigroup().contains(n - a as i64)),
        }
    }

    /// Division algorithm: `f = Σ q_j h_j + r` with `supp(r) ∩ ⟨ν(H)⟩_Γ = ∅`.
    ///
    /// When several `h_l` can absorb the leading term the smallest `l` wins.
    pub fn reduce(&self, f: &TruncatedSeries) -> Result<Reduction> {
        let horizon = f.trunc().min(self.trunc);
        let mut work = f.truncate(horizon)?;
        let mut remainder = TruncatedSeries::zero(horizon)?;
        let mut quotients = vec![Quotient::default(); self.module.len()];
        let mut cache = self.ring.monomials();
        let semigroup = self.ring.semigroup();

        while let Ok((e, c)) = work.leading_term() {
            let c = c.clone();
            if self.module_contains(e as i64) {
                let l = self
                    .module_orders
                    .iter()
                    .position(|&a| semigroup.contains(e as i64 - a as i64))
                    .expect("e lies in the module semigroup");
                let beta = self
                    .ring
                    .representation(e - self.module_orders[l])
                    .expect("difference lies in the semigroup");
                let m = cache.get(&beta).mul(&self.module[l]).truncate(horizon)?;
                let (me, mc) = m.leading_term()?;
                debug_assert_eq!(me, e);
                let factor = c / mc;
                work = work.sub(&m.scale(&factor));
                quotients[l].add(beta, factor);
            } else {
                if e + self.guard >= horizon {
                    return Err(Error::Precision {
                        exponent: e,
                        horizon,
                        guard: self.guard,
                    });
                }
                let term = TruncatedSeries::monomial(e, c, horizon)?;
                work = work.sub(&term);
                remainder = remainder.add(&term);
            }
        }
        Ok(Reduction {
            quotients,
            remainder,
        })
    }

    /// `Σ q_j h_j + r`, for checking a [`Reduction`].
    pub fn reconstruct(&self, reduction: &Reduction) -> TruncatedSeries {
        let mut cache = self.ring.monomials();
        reduction
            .quotients
            .iter()
            .zip(&self.module)
            .fold(reduction.remainder.clone(), |acc, (q, h)| {
                acc.add(&q.evaluate(&mut cache).mul(h))
            })
    }

    /// Every remainder exponent avoids `⟨ν(H)⟩_Γ`.
    pub fn remainder_avoids_module(&self, remainder: &TruncatedSeries) -> bool {
        remainder
            .terms()
            .all(|(e, _)| !self.module_contains(e as i64))
    }

    /// Minimal elements of `(ν(hᵢ) + Γ) ∩ (ν(hⱼ) + Γ)`.
    pub fn common_exponents(&self, i: usize, j: usize) -> Vec<u32> {
        let semigroup = self.ring.semigroup();
        let (a, b) = (self.module_orders[i] as i64, self.module_orders[j] as i64);
        let in_both = |x: i64| semigroup.contains(x - a) && semigroup.contains(x - b);
        let top = a.max(b) + semigroup.conductor() as i64 + *self.ring.orders().iter().max().unwrap() as i64;
        (a.max(b)..=top)
            .filter(|&x| in_both(x) && self.ring.orders().iter().all(|&o| !in_both(x - o as i64)))
            .map(|x| x as u32)
            .collect()
    }

    /// `u·hᵢ/LC − w·hⱼ/LC` with `G`-monomials `u, w` lifting both leading
    /// terms to `t^e`.
    pub fn s_process(&self, i: usize, j: usize, e: u32) -> Result<TruncatedSeries> {
        let (a, b) = (self.module_orders[i], self.module_orders[j]);
        let lift = |k: usize, own: u32| -> Result<TruncatedSeries> {
            let beta = e
                .checked_sub(own)
                .and_then(|d| self.ring.representation(d))
                .ok_or(Error::Precision {
                    exponent: e,
                    horizon: self.trunc,
                    guard: self.guard,
                })?;
            let mut cache = self.ring.monomials();
            cache.get(&beta).mul(&self.module[k]).truncate(self.trunc)?.monic()
        };
        let s = lift(i, a)?.sub(&lift(j, b)?);
        if s.order().is_some_and(|o| o <= e) {
            return Err(Error::MalformedGenerator(format!(
                "leading terms of h{i} and h{j} do not cancel at t^{e}"
            )));
        }
        Ok(s)
    }

    /// The minimal S-process for the layout `G = (t^p, φ)`:
    /// `φ·hᵢ − t^{kp}·hⱼ` with `kp = ν(hᵢ) + q − ν(hⱼ)` (monic generators).
    pub fn s_process_min(&self, i: usize, j: usize) -> Result<TruncatedSeries> {
        let (p, phi) = self.ring.plane_layout().ok_or_else(|| {
            Error::MalformedGenerator("subalgebra basis is not of the form (t^p, phi)".into())
        })?;
        let q = phi.leading_term()?.0;
        let (a, b) = (self.module_orders[i], self.module_orders[j]);
        let target = a + q;
        if target < b || (target - b) % p != 0 {
            return Err(Error::MalformedGenerator(format!(
                "t^{q}*h{i} and h{j} have no t^p-multiple cancelling leading terms \
                 (orders {a}, {b})"
            )));
        }
        let left = phi.monic()?.mul(&self.module[i].monic()?);
        let right = self.module[j].monic()?.shift(target - b);
        let s = left.sub(&right).truncate(self.trunc)?;
        if s.order().is_some_and(|o| o <= target) {
            return Err(Error::MalformedGenerator(format!(
                "leading terms of h{i} and h{j} do not cancel"
            )));
        }
        Ok(s)
    }

    /// Whether every S-process reduces to zero below the horizon.
    pub fn is_standard_basis(&self) -> Result<StandardBasisVerdict> {
        let mut residues = Vec::new();
        for i in 0..self.module.len() {
            for j in i + 1..self.module.len() {
                for e in self.common_exponents(i, j) {
                    if e + self.guard >= self.trunc {
                        return Err(Error::Precision {
                            exponent: e,
                            horizon: self.trunc,
                            guard: self.guard,
                        });
                    }
                    let s = self.s_process(i, j, e)?;
                    let remainder = self.reduce(&s)?.remainder;
                    residues.push(SProcessResidue {
                        i,
                        j,
                        exponent: e,
                        s_process: s,
                        remainder,
                    });
                }
            }
        }
        Ok(StandardBasisVerdict {
            standard: residues.iter().all(|r| r.remainder.is_zero()),
            residues,
        })
    }

    /// `⟨ν(h₁), …, ν(h_n)⟩_Γ` in p-basis form; needs `Γ = ⟨p, q⟩`.
    pub fn gamma_of_module(&self) -> Result<ModuleValuations> {
        let branch = self.ring.plane_branch()?;
        let orders: Vec<i64> = self.module_orders.iter().map(|&o| o as i64).collect();
        let (lambda, min) = p_basis_of_set(&branch, &orders)?;
        let semimodule = ShiftedSemimodule { lambda, shift: min };
        Ok(ModuleValuations {
            within_gamma: semimodule.is_within(&branch),
            gamma_complement: semimodule.gamma_complement_count(&branch),
            semimodule,
        })
    }
}

/// The semimodule `⟨ν(H)⟩_Γ` with its position relative to `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleValuations {
    pub semimodule: ShiftedSemimodule,
    pub within_gamma: bool,
    /// `#(Γ \ Δ)`.
    pub gamma_complement: u32,
}

/// Reduces `f` under random relistings of `G` and `H` and compares remainders.
pub fn reduction_invariance_check<R: Rng + ?Sized>(
    f: &TruncatedSeries,
    ring: &[TruncatedSeries],
    module: &[TruncatedSeries],
    trunc: u32,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let base = StdBasisProblem::new(ring, module, trunc)?.reduce(f)?.remainder;
    let mut g = ring.to_vec();
    let mut h = module.to_vec();
    for _ in 0..trials {
        g.shuffle(rng);
        h.shuffle(rng);
        let remainder = StdBasisProblem::new(&g, &h, trunc)?.reduce(f)?.remainder;
        if remainder != base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One entry `coeff · t^exponent` of a syzygy vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyEntry {
    pub index: usize,
    pub coeff: i64,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyVector {
    pub rank: usize,
    pub entries: Vec<SyzygyEntry>,
}

impl SyzygyVector {
    /// `Σ coeff · t^{exponent + a_index} = 0`.
    pub fn annihilates(&self, basis: &[u32]) -> bool {
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for entry in &self.entries {
            *acc.entry(entry.exponent + basis[entry.index]).or_default() += entry.coeff;
        }
        acc.values().all(|&c| c == 0)
    }
}

impl fmt::Display for SyzygyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut slots = vec!["0".to_string(); self.rank];
        for e in &self.entries {
            let sign = if e.coeff < 0 { "-" } else { "" };
            slots[e.index] = match e.exponent {
                0 => format!("{sign}1"),
                1 => format!("{sign}t"),
                k => format!("{sign}t^{k}"),
            };
        }
        write!(f, "({})", slots.join(", "))
    }
}

/// Generators of the syzygies of `(t^{a₀}, …, t^{a_{p−1}})` over `ℂ[Γ]`:
/// `vᵢ = t^q eᵢ − t^{(αᵢ₊₁−αᵢ)p} eᵢ₊₁` and the wrap-around
/// `v_{p−1} = −t^{(q−α_{p−1})p} e₀ + t^q e_{p−1}`.
pub fn syzygy_generators(branch: &PlaneBranch, lambda: &NormalizedSemimodule) -> Vec<SyzygyVector> {
    let (p, q) = (branch.p() as usize, branch.q());
    let alphas = lambda.alphas();
    let mut out = Vec::with_capacity(p);
    for i in 0..p - 1 {
        out.push(SyzygyVector {
            rank: p,
            entries: vec![
                SyzygyEntry { index: i, coeff: 1, exponent: q },
                SyzygyEntry {
                    index: i + 1,
                    coeff: -1,
                    exponent: (alphas[i + 1] - alphas[i]) * p as u32,
                },
            ],
        });
    }
    out.push(SyzygyVector {
        rank: p,
        entries: vec![
            SyzygyEntry {
                index: 0,
                coeff: -1,
                exponent: (q - alphas[p - 1]) * p as u32,
            },
            SyzygyEntry { index: p - 1, coeff: 1, exponent: q },
        ],
    });
    debug_assert!(out.iter().all(|v| v.annihilates(lambda.p_basis())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::all_normalized;
    use crate::series::{integer, rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(text: &str, n: u32) -> TruncatedSeries {
        TruncatedSeries::parse(text, n).unwrap()
    }

    fn list(text: &str, n: u32) -> Vec<TruncatedSeries> {
        crate::series::parse_series_list(text, n).unwrap()
    }

    fn problem(ring: &str, module: &str, n: u32) -> StdBasisProblem {
        StdBasisProblem::new(&list(ring, n), &list(module, n), n).unwrap()
    }

    #[test]
    fn representation_is_lex_largest() {
        let ring = SagbiRing::new(&list("t^3, t^4", 40), 40).unwrap();
        assert_eq!(ring.representation(12), Some(vec![4, 0]));
        assert_eq!(ring.representation(7), Some(vec![1, 1]));
        assert_eq!(ring.representation(5), None);
        let swapped = SagbiRing::new(&list("t^4, t^3", 40), 40).unwrap();
        assert_eq!(swapped.representation(12), Some(vec![3, 0]));
    }

    #[test]
    fn reduce_member_of_gamma() {
        let pb = problem("t^2, t^3", "1", 20);
        let red = pb.reduce(&s("t^5", 20)).unwrap();
        assert!(red.remainder.is_zero());
        assert_eq!(red.quotients[0].to_string(), "g1*g2");
        assert_eq!(pb.reconstruct(&red), s("t^5", 20));
    }

    #[test]
    fn reduce_keeps_gap_terms() {
        let pb = problem("t^2, t^3", "1", 20);
        let red = pb.reduce(&s("t + t^2", 20)).unwrap();
        assert_eq!(red.remainder.to_string(), "t");
        assert!(pb.remainder_avoids_module(&red.remainder));
    }

    #[test]
    fn reduce_by_module_generator() {
        let pb = problem("t^3, t^4", "t^4, t^6, t^7", 30);
        let red = pb.reduce(&s("t^7", 30)).unwrap();
        assert!(red.remainder.is_zero());
        // 7 ∈ 4 + Γ, so h₀ absorbs it before h₂ is consulted.
        assert_eq!(red.quotients[0].to_string(), "g1");
    }

    #[test]
    fn reduce_with_non_monomial_ring() {
        let pb = problem("t^3, t^4 + t^5", "1", 30);
        let f = s("t^4", 30);
        let red = pb.reduce(&f).unwrap();
        assert_eq!(red.remainder.to_string(), "-t^5");
        assert_eq!(pb.reconstruct(&red), f);
    }

    #[test]
    fn precision_error_in_guard_band() {
        // ⟨ν(H)⟩_Γ = 9 + Γ leaves gaps up to 14, inside the guard band of a
        // horizon-16 problem.
        let pb = problem("t^3, t^4", "t^9", 16);
        let err = pb.reduce(&s("t^14", 16)).unwrap_err();
        assert!(matches!(err, Error::Precision { exponent: 14, .. }));
        let ok = problem("t^3, t^4", "t^9", 24).reduce(&s("t^14", 24)).unwrap();
        assert_eq!(ok.remainder.to_string(), "t^14");
    }

    #[test]
    fn invariance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ring = list("t^3, t^4", 30);
        let module = list("t^4, t^6, t^7", 30);
        assert!(reduction_invariance_check(&s("t^7", 30), &ring, &module, 20, 20, &mut rng).unwrap());
        let f = s("t + 2 t^5 - t^9 + 1/2 t^11", 30);
        assert!(reduction_invariance_check(&f, &ring, &module, 30, 20, &mut rng).unwrap());
        let single = list("t^2 + t^3", 30);
        assert!(reduction_invariance_check(&f, &list("t^2, t^5", 30), &single, 30, 5, &mut rng).unwrap());
    }

    #[test]
    fn minimal_s_process_examples() {
        // ⟨2,3⟩ with Λ = ℕ: φ·1 − t²·t = 0.
        let pb = problem("t^2, t^3", "1, t", 20);
        assert!(pb.s_process_min(0, 1).unwrap().is_zero());
        // p-basis layout of α = (0,0,2) shifted by 4: (t⁴, t⁸, t⁶).
        let pb = problem("t^3, t^4", "t^4, t^8, t^6", 30);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            assert!(pb.s_process_min(i, j).unwrap().is_zero(), "({i},{j})");
        }
        // Same pair with the listing of the minimal generators: t⁴·t⁴ vs t⁶.
        let pb = problem("t^3, t^4", "t^4, t^6, t^7", 30);
        assert!(matches!(pb.s_process_min(0, 1), Err(Error::MalformedGenerator(_))));
        let pb = problem("t^3, t^4 + t^5", "t^4, t^8, t^6", 30);
        assert_eq!(pb.s_process_min(0, 1).unwrap().to_string(), "t^9");
        let pb = problem("t^2, t^5 + t^6", "1, t^2", 20);
        assert!(matches!(pb.s_process_min(0, 1), Err(Error::MalformedGenerator(_))));
    }

    #[test]
    fn explicit_and_generic_s_processes_agree_on_p_basis_layout() {
        let branch = PlaneBranch::new(3, 5).unwrap();
        for lambda in all_normalized(&branch) {
            let d = 2u32;
            let h: Vec<TruncatedSeries> = lambda
                .p_basis()
                .iter()
                .map(|&a| s(&format!("t^{} + 2 t^{}", a + d, a + d + 1), 50))
                .collect();
            let pb = StdBasisProblem::new(&list("t^3, t^5 + 3 t^7", 50), &h, 50).unwrap();
            for i in 0..3 {
                let j = (i + 1) % 3;
                let e = pb.module_orders()[i] + 5;
                let explicit = pb.s_process_min(i, j).unwrap();
                let generic = pb.s_process(i, j, e).unwrap();
                assert_eq!(explicit, generic, "{lambda} ({i},{j})");
            }
        }
    }

    #[test]
    fn standard_basis_examples() {
        assert!(problem("t^3, t^4", "t^4, t^6, t^7", 30).is_standard_basis().unwrap().standard);
        assert!(problem("t^2, t^3", "1", 20).is_standard_basis().unwrap().standard);
        // 7 = 4 + 3 already lies in ⟨4,6⟩_Γ, so this pair is standard too.
        assert!(problem("t^3, t^4", "t^4, t^6", 30).is_standard_basis().unwrap().standard);
        // t⁴·(t⁴ + t⁵) − t⁸ = t⁹ with 9 ∉ ⟨4,8⟩_Γ.
        let verdict = problem("t^3, t^4", "t^4 + t^5, t^8", 30).is_standard_basis().unwrap();
        assert!(!verdict.standard);
        assert_eq!(verdict.residues[0].remainder.to_string(), "t^9");
        // Two generators of equal order.
        assert!(!problem("t^3, t^4", "t^4, t^4 + t^5", 30).is_standard_basis().unwrap().standard);
    }

    #[test]
    fn gamma_of_module_examples() {
        let v = problem("t^3, t^4", "t^4, t^6, t^7", 30).gamma_of_module().unwrap();
        assert_eq!(v.semimodule.shift, 4);
        assert_eq!(v.semimodule.lambda.p_basis(), &[0, 4, 2]);
        assert!(v.within_gamma);
        assert_eq!(v.gamma_complement, 2);

        let v = problem("t^3, t^4", "1", 30).gamma_of_module().unwrap();
        assert_eq!(v.gamma_complement, 0);
        assert_eq!(v.semimodule.shift, 0);
        assert_eq!(v.semimodule.lambda.alphas(), &[0, 0, 0]);

        let v = problem("t^2, t^5", "t^2, t^3", 30).gamma_of_module().unwrap();
        assert!(!v.within_gamma);
        assert_eq!(v.gamma_complement, 1);
        assert_eq!(v.semimodule.elements_in(0, 6), vec![2, 3, 4, 5]);

        assert!(problem("t^2, t^3, t^7", "1", 30).gamma_of_module().is_ok());
        assert!(problem("t^4, t^6, t^9", "1", 40).gamma_of_module().is_err());
    }

    #[test]
    fn syzygy_examples() {
        let e6 = PlaneBranch::new(3, 4).unwrap();
        let lam = NormalizedSemimodule::from_alphas(&e6, &[0, 0, 2]).unwrap();
        let v = syzygy_generators(&e6, &lam);
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["(t^4, -1, 0)", "(0, t^4, -t^6)", "(-t^6, 0, t^4)"]);

        let a2 = PlaneBranch::new(2, 3).unwrap();
        let lam = NormalizedSemimodule::from_alphas(&a2, &[0, 1]).unwrap();
        let v = syzygy_generators(&a2, &lam);
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["(t^3, -t^2)", "(-t^4, t^3)"]);
    }

    #[test]
    fn syzygies_annihilate_every_basis() {
        for (p, q) in [(2, 3), (3, 4), (3, 5), (4, 7), (5, 6)] {
            let branch = PlaneBranch::new(p, q).unwrap();
            for lambda in all_normalized(&branch) {
                let v = syzygy_generators(&branch, &lambda);
                assert_eq!(v.len(), p as usize);
                assert!(v.iter().all(|x| x.annihilates(lambda.p_basis())));
            }
        }
    }

    #[test]
    fn quotient_display() {
        let mut q = Quotient::default();
        q.add(vec![2, 0], integer(1));
        q.add(vec![0, 1], rational(-3, 2));
        assert_eq!(q.to_string(), "(-3/2)*g2 + g1^2");
    }
}

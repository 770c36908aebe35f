//! Γ-semimodules over `Γ = ⟨p, q⟩` in p-basis normal form.
//!
//! A 0-normalized semimodule `Λ` (with `min Λ = 0`) is the union of the
//! arithmetic progressions `aᵢ + pℕ`, where `aᵢ ≡ i·q (mod p)`. Writing
//! `aᵢ = i·q − αᵢ·p`, closure under `+q` is exactly `α₀ ≤ α₁ ≤ … ≤ α_{p−1}`,
//! and `Λ ⊆ ℕ` with `0 ∈ Λ` is `α₀ = 0`, `aᵢ ≥ 0`. A semimodule inside `Γ`
//! is then a pair `(Λ, d)` with `Δ = d + Λ` and `d = min Δ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::PlaneBranch;

/// A 0-normalized Γ-semimodule stored by its α-vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalizedSemimodule {
    p: u32,
    q: u32,
    alphas: Vec<u32>,
    #[serde(rename = "p_basis")]
    basis: Vec<u32>,
}

impl NormalizedSemimodule {
    pub fn from_alphas(branch: &PlaneBranch, alphas: &[u32]) -> Result<Self> {
        let (p, q) = (branch.p(), branch.q());
        if alphas.len() != p as usize {
            return Err(Error::InvalidBasis(format!(
                "expected {p} alphas, got {}",
                alphas.len()
            )));
        }
        if alphas[0] != 0 {
            return Err(Error::InvalidBasis("alpha_0 must be 0".into()));
        }
        if let Some(i) = (1..alphas.len()).find(|&i| alphas[i] < alphas[i - 1]) {
            return Err(Error::InvalidBasis(format!(
                "alphas not monotone at index {i}: {alphas:?}"
            )));
        }
        if alphas[alphas.len() - 1] >= q {
            return Err(Error::InvalidBasis(format!("alpha_(p-1) must be < {q}")));
        }
        let mut basis = Vec::with_capacity(alphas.len());
        for (i, &alpha) in alphas.iter().enumerate() {
            let a = i as i64 * q as i64 - alpha as i64 * p as i64;
            if a < 0 {
                return Err(Error::InvalidBasis(format!("a_{i} = {a} is negative")));
            }
            basis.push(a as u32);
        }
        Ok(Self {
            p,
            q,
            alphas: alphas.to_vec(),
            basis,
        })
    }

    /// `Γ` itself (all `αᵢ = 0`).
    pub fn semigroup(branch: &PlaneBranch) -> Self {
        Self::from_alphas(branch, &vec![0; branch.p() as usize]).expect("zero alphas are valid")
    }

    /// `ℕ` (largest admissible `αᵢ = ⌊i·q/p⌋`).
    pub fn naturals(branch: &PlaneBranch) -> Self {
        let (p, q) = (branch.p(), branch.q());
        let alphas: Vec<u32> = (0..p).map(|i| i * q / p).collect();
        Self::from_alphas(branch, &alphas).expect("floor alphas are valid")
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    /// The p-basis `(a₀, …, a_{p−1})`.
    pub fn p_basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn index_of(&self, n: i64) -> usize {
        let p = self.p as i64;
        let q_inv = crate::semigroup::mod_inverse(self.q as i64, p);
        ((n.rem_euclid(p) * q_inv) % p) as usize
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && n >= self.basis[self.index_of(n)] as i64
    }

    /// `#(ℕ \ Λ) = Σ ⌊aᵢ / p⌋`.
    pub fn gap_count(&self) -> u32 {
        self.basis.iter().map(|a| a / self.p).sum()
    }

    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor())
            .filter(|&n| !self.contains(n as i64))
            .collect()
    }

    /// Smallest `c` with `[c, ∞) ⊆ Λ`.
    pub fn conductor(&self) -> u32 {
        self.basis
            .iter()
            .map(|&a| (a + 1).saturating_sub(self.p))
            .max()
            .unwrap_or(0)
    }

    /// `{x ∈ Λ : x − p ∉ Λ, x − q ∉ Λ}`, necessarily a subset of the p-basis.
    pub fn minimal_generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = self
            .basis
            .iter()
            .copied()
            .filter(|&a| !self.contains(a as i64 - self.q as i64))
            .collect();
        gens.sort_unstable();
        gens
    }
}

impl fmt::Display for NormalizedSemimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={:?} basis={:?}", self.alphas, self.basis)
    }
}

/// The semimodule generated by a finite set, returned as its 0-normalization
/// together with the minimum of the generated set.
pub fn p_basis_of_set(branch: &PlaneBranch, set: &[i64]) -> Result<(NormalizedSemimodule, i64)> {
    let min = *set
        .iter()
        .min()
        .ok_or_else(|| Error::InvalidBasis("empty generating set".into()))?;
    let (p, q) = (branch.p() as i64, branch.q() as i64);
    let mut basis = vec![i64::MAX; p as usize];
    for &s in set {
        for y in 0..p {
            let x = s - min + y * q;
            let slot = &mut basis[branch.residue_index(x)];
            *slot = (*slot).min(x);
        }
    }
    let alphas: Vec<u32> = basis
        .iter()
        .enumerate()
        .map(|(i, &a)| ((i as i64 * q - a) / p) as u32)
        .collect();
    Ok((NormalizedSemimodule::from_alphas(branch, &alphas)?, min))
}

/// Every 0-normalized semimodule of `branch`, in lexicographic α order.
///
/// These are the lattice paths under the diagonal of a `p × q` rectangle,
/// counted by `C(p+q, p) / (p+q)`.
pub fn all_normalized(branch: &PlaneBranch) -> Vec<NormalizedSemimodule> {
    fn extend(branch: &PlaneBranch, alphas: &mut Vec<u32>, out: &mut Vec<NormalizedSemimodule>) {
        let (p, q) = (branch.p(), branch.q());
        let i = alphas.len() as u32;
        if i == p {
            out.push(NormalizedSemimodule::from_alphas(branch, alphas).expect("valid by construction"));
            return;
        }
        let lo = *alphas.last().expect("alpha_0 pushed first");
        for alpha in lo..=i * q / p {
            alphas.push(alpha);
            extend(branch, alphas, out);
            alphas.pop();
        }
    }
    let mut out = Vec::new();
    extend(branch, &mut vec![0], &mut out);
    out
}

/// `Δ = shift + Λ` with an arbitrary integer shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedSemimodule {
    pub lambda: NormalizedSemimodule,
    pub shift: i64,
}

impl ShiftedSemimodule {
    pub fn contains(&self, n: i64) -> bool {
        self.lambda.contains(n - self.shift)
    }

    pub fn min(&self) -> i64 {
        self.shift
    }

    pub fn minimal_generators(&self) -> Vec<i64> {
        self.lambda
            .minimal_generators()
            .into_iter()
            .map(|g| g as i64 + self.shift)
            .collect()
    }

    /// Smallest `c` with `[c, ∞) ⊆ Δ`.
    pub fn conductor(&self) -> i64 {
        self.shift + self.lambda.conductor() as i64
    }

    /// Elements of `Δ` in `[lo, hi)`.
    pub fn elements_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..hi).filter(|&n| self.contains(n)).collect()
    }

    /// `#(Γ \ Δ)`, counted directly (valid whether or not `Δ ⊆ Γ`).
    pub fn gamma_complement_count(&self, branch: &PlaneBranch) -> u32 {
        let end = self.conductor().max(0);
        (0..end)
            .filter(|&n| branch.contains(n) && !self.contains(n))
            .count() as u32
    }

    pub fn is_within(&self, branch: &PlaneBranch) -> bool {
        self.shift >= 0
            && self
                .lambda
                .p_basis()
                .iter()
                .all(|&a| branch.contains(self.shift + a as i64))
    }
}

/// A semimodule `Δ ⊆ Γ`, i.e. an element of `Mod_r(Γ)` for `r = codim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EmbeddedSemimodule {
    lambda: NormalizedSemimodule,
    shift: u32,
    codim: u32,
}

impl EmbeddedSemimodule {
    /// Checks `d + Λ ⊆ Γ`; since `Γ + p ⊆ Γ` it suffices to test `d + aᵢ`.
    pub fn new(branch: &PlaneBranch, lambda: NormalizedSemimodule, shift: u32) -> Result<Self> {
        if lambda.p() != branch.p() || lambda.q() != branch.q() {
            return Err(Error::InvalidBasis("semimodule built over a different semigroup".into()));
        }
        if let Some(a) = lambda
            .p_basis()
            .iter()
            .find(|&&a| !branch.contains(shift as i64 + a as i64))
        {
            return Err(Error::NotInSemigroup(format!(
                "{shift} + {a} is a gap of <{}, {}>",
                branch.p(),
                branch.q()
            )));
        }
        let codim = (lambda.gap_count() + shift)
            .checked_sub(branch.delta())
            .ok_or_else(|| Error::ContractViolation("negative codimension".into()))?;
        Ok(Self {
            lambda,
            shift,
            codim,
        })
    }

    /// The semimodule generated by `set`, which must lie in `Γ`.
    pub fn generated_by(branch: &PlaneBranch, set: &[i64]) -> Result<Self> {
        let (lambda, min) = p_basis_of_set(branch, set)?;
        if min < 0 {
            return Err(Error::NotInSemigroup(format!("negative generator {min}")));
        }
        Self::new(branch, lambda, min as u32)
    }

    /// `Λ = Δ⁽⁰⁾`.
    pub fn lambda(&self) -> &NormalizedSemimodule {
        &self.lambda
    }

    /// `d = min Δ`.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// `r = #(Γ \ Δ)`.
    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lambda.contains(n - self.shift as i64)
    }

    pub fn as_shifted(&self) -> ShiftedSemimodule {
        ShiftedSemimodule {
            lambda: self.lambda.clone(),
            shift: self.shift as i64,
        }
    }

    pub fn minimal_generators(&self) -> Vec<u32> {
        self.lambda
            .minimal_generators()
            .into_iter()
            .map(|g| g + self.shift)
            .collect()
    }

    /// `bᵢ = d + aᵢ`.
    pub fn shifted_basis(&self) -> Vec<u32> {
        self.lambda.p_basis().iter().map(|a| a + self.shift).collect()
    }

    /// Elements below `bound`.
    pub fn elements_below(&self, bound: u32) -> Vec<u32> {
        (self.shift..bound)
            .filter(|&n| self.contains(n as i64))
            .collect()
    }

    /// The δ-normalization `−r + Δ`.
    ///
    /// Every element of `Mod_r(Γ)` contains `[r + c, ∞)`, so the result has
    /// exactly `δ` elements in `[0, 2δ − 1]`; this is checked.
    pub fn delta_normalize(&self, branch: &PlaneBranch, r: u32) -> Result<ShiftedSemimodule> {
        if r != self.codim {
            return Err(Error::CodimMismatch {
                expected: r,
                actual: self.codim,
            });
        }
        let normalized = ShiftedSemimodule {
            lambda: self.lambda.clone(),
            shift: self.shift as i64 - r as i64,
        };
        let delta = branch.delta() as i64;
        let inside = normalized.elements_in(0, 2 * delta).len() as i64;
        if normalized.min() < 0 || inside != delta {
            return Err(Error::ContractViolation(format!(
                "delta-normalization has {inside} elements in [0, {}], expected {delta}",
                2 * delta - 1
            )));
        }
        Ok(normalized)
    }
}

/// `Mod_r(Γ)`: every `Δ ⊆ Γ` with `#(Γ \ Δ) = r`, ordered by α-vector.
///
/// For each 0-normalized `Λ` the shift is forced, `d = r + δ − #(ℕ \ Λ)`;
/// the candidate is kept when `d ≥ 0` and `d + Λ ⊆ Γ`.
pub fn enumerate_mod_r(branch: &PlaneBranch, r: u32) -> Vec<EmbeddedSemimodule> {
    all_normalized(branch)
        .into_iter()
        .filter_map(|lambda| {
            let shift = (r + branch.delta()).checked_sub(lambda.gap_count())?;
            EmbeddedSemimodule::new(branch, lambda, shift).ok()
        })
        .collect()
}

/// Number of 0-normalized semimodules, `C(p+q, p) / (p+q)`.
pub fn rational_catalan(p: u32, q: u32) -> u64 {
    let n = (p + q) as u64;
    let mut binom = 1u64;
    for k in 0..p as u64 {
        binom = binom * (n - k) / (k + 1);
    }
    binom / n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> PlaneBranch {
        PlaneBranch::new(3, 4).unwrap()
    }

    fn union_of_progressions(basis: &[u32], p: u32, bound: u32) -> Vec<u32> {
        let mut v: Vec<u32> = basis
            .iter()
            .flat_map(|&a| (0..).map(move |k| a + k * p).take_while(move |&x| x < bound))
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn from_alphas_examples() {
        let g = e6();
        let gamma = NormalizedSemimodule::from_alphas(&g, &[0, 0, 0]).unwrap();
        assert_eq!(gamma.p_basis(), &[0, 4, 8]);
        let lam = NormalizedSemimodule::from_alphas(&g, &[0, 0, 2]).unwrap();
        assert_eq!(lam.p_basis(), &[0, 4, 2]);
        let direct = union_of_progressions(&[0, 4, 2], 3, 20);
        assert_eq!(direct, [0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19]);
        for n in 0..20 {
            assert_eq!(lam.contains(n), direct.contains(&(n as u32)));
        }
        assert!(matches!(
            NormalizedSemimodule::from_alphas(&g, &[0, 2, 2]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(NormalizedSemimodule::from_alphas(&g, &[0, 1, 0]).is_err());
        assert!(NormalizedSemimodule::from_alphas(&g, &[1, 1, 1]).is_err());
        assert!(NormalizedSemimodule::from_alphas(&g, &[0, 0]).is_err());
    }

    #[test]
    fn p_basis_of_set_examples() {
        let g = e6();
        let (lam, min) = p_basis_of_set(&g, &[4, 6, 7]).unwrap();
        assert_eq!(min, 4);
        assert_eq!(lam.p_basis(), &[0, 4, 2]);
        let (lam, min) = p_basis_of_set(&g, &[0]).unwrap();
        assert_eq!((lam, min), (NormalizedSemimodule::semigroup(&g), 0));

        let a4 = PlaneBranch::new(2, 5).unwrap();
        let (lam, min) = p_basis_of_set(&a4, &[1, 2]).unwrap();
        assert_eq!(min, 1);
        assert_eq!(lam.p_basis(), &[0, 1]);
        assert_eq!(lam, NormalizedSemimodule::naturals(&a4));
        assert!(p_basis_of_set(&a4, &[]).is_err());
    }

    #[test]
    fn gap_count_examples() {
        let g = e6();
        assert_eq!(NormalizedSemimodule::semigroup(&g).gap_count(), 3);
        assert_eq!(NormalizedSemimodule::naturals(&g).gap_count(), 0);
        let lam = NormalizedSemimodule::from_alphas(&g, &[0, 0, 1]).unwrap();
        assert_eq!(lam.p_basis(), &[0, 4, 5]);
        assert_eq!(lam.gap_count(), 2);
        assert_eq!(lam.gaps(), vec![1, 2]);
    }

    #[test]
    fn delta_normalize_examples() {
        let g = e6();
        let delta = EmbeddedSemimodule::generated_by(&g, &[4, 6, 7]).unwrap();
        assert_eq!(delta.codim(), 2);
        let dn = delta.delta_normalize(&g, 2).unwrap();
        assert_eq!(dn.elements_in(0, 8), vec![2, 4, 5, 6, 7]);
        // ⟨2,4,5⟩_Γ = ⟨2,4⟩_Γ since 5 = 2 + 3.
        let (listed, _) = p_basis_of_set(&g, &[2, 4, 5]).unwrap();
        assert_eq!(dn.lambda, listed);
        assert_eq!(dn.min(), 2);

        let gamma = EmbeddedSemimodule::generated_by(&g, &[0]).unwrap();
        let dn = gamma.delta_normalize(&g, 0).unwrap();
        assert_eq!(dn.elements_in(0, 10), g.semigroup().elements_below(10).iter().map(|&x| x as i64).collect::<Vec<_>>());

        let six = EmbeddedSemimodule::generated_by(&g, &[6]).unwrap();
        assert_eq!(six.codim(), 6);
        let dn = six.delta_normalize(&g, 6).unwrap();
        assert_eq!(dn.elements_in(0, 8), vec![0, 3, 4, 6, 7]);
        assert!(matches!(
            six.delta_normalize(&g, 5),
            Err(Error::CodimMismatch { expected: 5, actual: 6 })
        ));
    }

    #[test]
    fn minimal_generator_examples() {
        let g = e6();
        let dn = EmbeddedSemimodule::generated_by(&g, &[4, 6, 7])
            .unwrap()
            .delta_normalize(&g, 2)
            .unwrap();
        assert_eq!(dn.minimal_generators(), vec![2, 4]);
        let delta = EmbeddedSemimodule::generated_by(&g, &[4, 6, 7]).unwrap();
        assert_eq!(delta.minimal_generators(), vec![4, 6]);
        assert_eq!(NormalizedSemimodule::semigroup(&g).minimal_generators(), vec![0]);
        let six = EmbeddedSemimodule::generated_by(&g, &[6]).unwrap();
        assert_eq!(six.minimal_generators(), vec![6]);
    }

    #[test]
    fn embedding_rejects_sets_leaving_gamma() {
        let a4 = PlaneBranch::new(2, 5).unwrap();
        assert!(matches!(
            EmbeddedSemimodule::generated_by(&a4, &[2, 3]),
            Err(Error::NotInSemigroup(_))
        ));
    }

    #[test]
    fn enumerate_small_cases() {
        let g = e6();
        let m0 = enumerate_mod_r(&g, 0);
        assert_eq!(m0.len(), 1);
        assert_eq!(m0[0].lambda(), &NormalizedSemimodule::semigroup(&g));
        assert_eq!(m0[0].shift(), 0);

        let m2 = enumerate_mod_r(&g, 2);
        let summary: Vec<(Vec<u32>, u32)> = m2
            .iter()
            .map(|d| (d.lambda().alphas().to_vec(), d.shift()))
            .collect();
        assert_eq!(summary, vec![(vec![0, 0, 1], 3), (vec![0, 0, 2], 4)]);

        let m6 = enumerate_mod_r(&g, 6);
        let mut shifts: Vec<u32> = m6.iter().map(|d| d.shift()).collect();
        shifts.sort_unstable();
        assert_eq!(shifts, vec![6, 7, 8, 8, 9]);
        assert!(m6.iter().all(|d| d.codim() == 6));
    }

    #[test]
    fn catalan_counts() {
        for (p, q, expected) in [(2, 3, 2), (2, 5, 3), (2, 7, 4), (3, 4, 5), (3, 5, 7), (4, 5, 14)] {
            let branch = PlaneBranch::new(p, q).unwrap();
            assert_eq!(rational_catalan(p, q), expected);
            assert_eq!(all_normalized(&branch).len() as u64, expected);
            let c = branch.conductor();
            assert_eq!(enumerate_mod_r(&branch, c).len() as u64, expected);
            assert_eq!(enumerate_mod_r(&branch, c + 3).len() as u64, expected);
        }
    }

    #[test]
    fn monotone_alphas_are_exactly_q_closure() {
        // Every α-vector with aᵢ ≥ 0 in a box, monotone or not: the union of
        // progressions is closed under +q iff α is monotone.
        let branch = PlaneBranch::new(4, 7).unwrap();
        let (p, q) = (4i64, 7i64);
        let mut alphas = vec![0i64; 4];
        let mut seen = 0;
        for a1 in 0..=7 {
            for a2 in 0..=7 {
                for a3 in 0..=7 {
                    alphas[1] = a1;
                    alphas[2] = a2;
                    alphas[3] = a3;
                    let basis: Vec<i64> = (0..4).map(|i| i * q - alphas[i as usize] * p).collect();
                    if basis.iter().any(|&a| a < 0) {
                        continue;
                    }
                    let member = |n: i64| {
                        n >= 0 && basis.iter().any(|&a| n >= a && (n - a) % p == 0)
                    };
                    let closed = (0..60).all(|n| !member(n) || member(n + q));
                    let monotone = a1 <= a2 && a2 <= a3;
                    assert_eq!(closed, monotone, "{alphas:?}");
                    let built = NormalizedSemimodule::from_alphas(
                        &branch,
                        &alphas.iter().map(|&a| a as u32).collect::<Vec<_>>(),
                    );
                    assert_eq!(built.is_ok(), monotone);
                    seen += 1;
                }
            }
        }
        assert!(seen > 20);
    }
}

//! Numerical semigroups `Γ = ⟨a₁, …, aₙ⟩ ⊆ ℕ` with finite gap set.
//!
//! The general type exists for the monomial-semigroup classifier; everything
//! about semimodules and cells works over the two-generator [`PlaneBranch`].

use num::integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A numerical semigroup, stored through its gap set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    gaps: Vec<u32>,
    delta: u32,
    conductor: u32,
}

impl NumericalSemigroup {
    /// Builds `⟨generators⟩` by reachability: the scan stops once
    /// `min(generators)` consecutive members have been seen, after which
    /// every larger integer is a member.
    pub fn new(generators: &[u32]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGenerators("empty generator list".into()));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidGenerators("generators must be positive".into()));
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(Error::InvalidGenerators(format!(
                "gcd of {gens:?} is {g}, the gap set would be infinite"
            )));
        }

        let smallest = gens[0] as usize;
        let mut member: Vec<bool> = vec![true];
        let mut run = 1usize;
        let mut n = 0usize;
        while run < smallest {
            n += 1;
            let reachable = gens
                .iter()
                .any(|&a| (a as usize) <= n && member[n - a as usize]);
            member.push(reachable);
            run = if reachable { run + 1 } else { 0 };
        }
        let gaps: Vec<u32> = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i as u32)
            .collect();
        let conductor = gaps.last().map_or(0, |&f| f + 1);
        Ok(Self {
            delta: gaps.len() as u32,
            generators: gens,
            gaps,
            conductor,
        })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Generators that are not sums of two positive members.
    pub fn minimal_generators(&self) -> Vec<u32> {
        self.generators
            .iter()
            .copied()
            .filter(|&g| (1..g).all(|x| !(self.contains(x as i64) && self.contains((g - x) as i64))))
            .collect()
    }

    /// Gaps in increasing order.
    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Number of gaps.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Smallest `c` with `[c, ∞) ⊆ Γ`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n >= self.conductor as i64 {
            return true;
        }
        self.gaps.binary_search(&(n as u32)).is_err()
    }

    /// Elements of `Γ` in `[0, bound)`.
    pub fn elements_below(&self, bound: u32) -> Vec<u32> {
        (0..bound).filter(|&n| self.contains(n as i64)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.conductor == 2 * self.delta
    }
}

/// Membership in `⟨p, q⟩` for coprime `p, q` without a table: `n` is
/// representable iff `n ≥ b·q` where `b ≡ n·q⁻¹ (mod p)`.
pub fn in_two_generated(p: u32, q: u32, n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let (p, q) = (p as i64, q as i64);
    let b = (n.rem_euclid(p) * mod_inverse(q, p)).rem_euclid(p);
    b * q <= n
}

/// Inverse of `a` modulo `m` (`m ≥ 1`, `gcd(a, m) = 1`).
pub(crate) fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m)
}

/// The semigroup `⟨p, q⟩` of a plane branch with one Puiseux pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBranch {
    p: u32,
    q: u32,
    semigroup: NumericalSemigroup,
}

impl PlaneBranch {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 2 || q <= p || gcd(p, q) != 1 {
            return Err(Error::NotPlaneBranch { p, q });
        }
        let semigroup = NumericalSemigroup::new(&[p, q])?;
        Ok(Self { p, q, semigroup })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn delta(&self) -> u32 {
        self.semigroup.delta
    }

    pub fn conductor(&self) -> u32 {
        self.semigroup.conductor
    }

    pub fn contains(&self, n: i64) -> bool {
        self.semigroup.contains(n)
    }

    /// `q⁻¹ mod p`, used to locate the p-basis index of a residue class.
    pub(crate) fn q_inverse_mod_p(&self) -> u32 {
        mod_inverse(self.q as i64, self.p as i64) as u32
    }

    /// Index `i` with `n ≡ i·q (mod p)`.
    pub fn residue_index(&self, n: i64) -> usize {
        let p = self.p as i64;
        ((n.rem_euclid(p) * self.q_inverse_mod_p() as i64) % p) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(p: u32, q: u32, n: u32) -> bool {
        (0..=n / p).any(|a| (n - a * p).is_multiple_of(q))
    }

    #[test]
    fn smallest_branch() {
        let g = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!(g.gaps(), &[1]);
        assert_eq!(g.delta(), 1);
        assert_eq!(g.conductor(), 2);
    }

    #[test]
    fn e6_and_e8_invariants() {
        let e6 = NumericalSemigroup::new(&[3, 4]).unwrap();
        assert_eq!(e6.gaps(), &[1, 2, 5]);
        assert_eq!((e6.delta(), e6.conductor()), (3, 6));
        let e8 = NumericalSemigroup::new(&[5, 3]).unwrap();
        assert_eq!((e8.delta(), e8.conductor()), (4, 8));
        assert_eq!(e8.generators(), &[3, 5]);
    }

    #[test]
    fn membership_examples() {
        let e6 = NumericalSemigroup::new(&[3, 4]).unwrap();
        assert!(!e6.contains(5));
        assert!(e6.contains(0));
        assert!(!e6.contains(-3));
        let a6 = NumericalSemigroup::new(&[2, 7]).unwrap();
        assert!(!a6.contains(5));
        assert!(!brute_force(2, 7, 5));
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            NumericalSemigroup::new(&[4, 6]),
            Err(Error::InvalidGenerators(_))
        ));
        assert!(NumericalSemigroup::new(&[]).is_err());
        assert!(NumericalSemigroup::new(&[0, 3]).is_err());
        assert!(PlaneBranch::new(4, 6).is_err());
        assert!(PlaneBranch::new(5, 3).is_err());
        assert!(PlaneBranch::new(1, 3).is_err());
    }

    #[test]
    fn trivial_semigroup_has_no_gaps() {
        let n = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!(n.conductor(), 0);
        assert_eq!(n.delta(), 0);
        assert!(n.contains(0));
    }

    #[test]
    fn closed_form_agrees_with_table_and_brute_force() {
        for p in 2..9u32 {
            for q in p + 1..15 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let branch = PlaneBranch::new(p, q).unwrap();
                assert_eq!(branch.conductor(), (p - 1) * (q - 1));
                assert_eq!(branch.conductor(), 2 * branch.delta());
                for n in 0..branch.conductor() + 2 * q {
                    let expected = brute_force(p, q, n);
                    assert_eq!(branch.contains(n as i64), expected, "<{p},{q}> n={n}");
                    assert_eq!(in_two_generated(p, q, n as i64), expected);
                }
            }
        }
    }

    #[test]
    fn general_generators() {
        let g = NumericalSemigroup::new(&[4, 6, 9]).unwrap();
        for n in 0..40u32 {
            let brute = (0..=n / 4).any(|a| {
                (0..=(n - 4 * a) / 6).any(|b| (n - 4 * a - 6 * b) % 9 == 0)
            });
            assert_eq!(g.contains(n as i64), brute);
        }
        assert!(!g.is_symmetric() || g.conductor() == 2 * g.delta());
    }
}

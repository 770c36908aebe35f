//! Brute-force enumeration of `Mod_r(Γ)` as explicit element sets.
//!
//! Independent of the α-vector parametrization: `Δ = Γ \ T` is a semimodule
//! iff `T` is closed under the predecessors `x ↦ x − p`, `x ↦ x − q` that
//! stay in `Γ`. Since `min Δ ≤ r + δ` and `Δ ⊇ min Δ + Γ ⊇ [min Δ + c, ∞)`,
//! every such `T` lies below `B = r + δ + c`.

use crate::error::{Error, Result};
use crate::semigroup::PlaneBranch;

/// Refuse to search when `Γ ∩ [0, B)` has more elements than this.
pub const ORACLE_ELEMENT_LIMIT: usize = 64;

/// A family of semimodules, each given by its elements below `bound`
/// (everything at or above `bound` belongs to every member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFamily {
    pub bound: u32,
    pub sets: Vec<Vec<u32>>,
}

pub fn oracle_bound(branch: &PlaneBranch, r: u32) -> u32 {
    r + branch.delta() + branch.conductor()
}

pub fn oracle_enumerate_mod_r(branch: &PlaneBranch, r: u32) -> Result<OracleFamily> {
    let bound = oracle_bound(branch, r);
    let elements = branch.semigroup().elements_below(bound);
    if elements.len() > ORACLE_ELEMENT_LIMIT {
        return Err(Error::OracleBoundExceeded {
            elements: elements.len(),
            bound,
            limit: ORACLE_ELEMENT_LIMIT,
        });
    }
    let index_of = |x: i64| -> Option<usize> {
        if x < 0 {
            None
        } else {
            elements.binary_search(&(x as u32)).ok()
        }
    };
    // Bitmask of the Γ-predecessors of each element.
    let preds: Vec<u64> = elements
        .iter()
        .map(|&x| {
            [branch.p(), branch.q()]
                .iter()
                .filter_map(|&g| index_of(x as i64 - g as i64))
                .fold(0u64, |m, i| m | (1 << i))
        })
        .collect();

    let mut removed_sets = Vec::new();
    // Elements are added in increasing order, so each closed set is reached
    // along exactly one path.
    fn dfs(start: usize, taken: u64, size: u32, r: u32, preds: &[u64], out: &mut Vec<u64>) {
        if size == r {
            out.push(taken);
            return;
        }
        for i in start..preds.len() {
            if preds[i] & !taken == 0 {
                dfs(i + 1, taken | (1 << i), size + 1, r, preds, out);
            }
        }
    }
    dfs(0, 0, 0, r, &preds, &mut removed_sets);

    let mut sets: Vec<Vec<u32>> = removed_sets
        .into_iter()
        .map(|taken| {
            elements
                .iter()
                .enumerate()
                .filter(|(i, _)| taken & (1 << i) == 0)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    sets.sort();
    Ok(OracleFamily { bound, sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::enumerate_mod_r;

    fn family_from_enumeration(branch: &PlaneBranch, r: u32, bound: u32) -> Vec<Vec<u32>> {
        let mut sets: Vec<Vec<u32>> = enumerate_mod_r(branch, r)
            .iter()
            .map(|d| d.elements_below(bound))
            .collect();
        sets.sort();
        sets
    }

    #[test]
    fn e6_r1_removes_only_zero() {
        let g = PlaneBranch::new(3, 4).unwrap();
        let fam = oracle_enumerate_mod_r(&g, 1).unwrap();
        assert_eq!(fam.bound, 10);
        assert_eq!(fam.sets, vec![vec![3, 4, 6, 7, 8, 9]]);
    }

    #[test]
    fn e6_r2_matches_enumeration() {
        let g = PlaneBranch::new(3, 4).unwrap();
        let fam = oracle_enumerate_mod_r(&g, 2).unwrap();
        assert_eq!(fam.sets.len(), 2);
        assert_eq!(fam.sets, family_from_enumeration(&g, 2, fam.bound));
    }

    #[test]
    fn a2_r3_matches_enumeration() {
        let g = PlaneBranch::new(2, 3).unwrap();
        let fam = oracle_enumerate_mod_r(&g, 3).unwrap();
        assert_eq!(fam.sets, family_from_enumeration(&g, 3, fam.bound));
        assert_eq!(fam.sets.len(), 2);
    }

    #[test]
    fn refuses_large_bounds() {
        let g = PlaneBranch::new(7, 11).unwrap();
        assert!(matches!(
            oracle_enumerate_mod_r(&g, 40),
            Err(Error::OracleBoundExceeded { .. })
        ));
    }

    #[test]
    fn closure_of_every_oracle_set() {
        let g = PlaneBranch::new(3, 5).unwrap();
        for r in 0..10 {
            let fam = oracle_enumerate_mod_r(&g, r).unwrap();
            for set in &fam.sets {
                let member = |x: u32| x >= fam.bound || set.binary_search(&x).is_ok();
                for &x in set {
                    assert!(member(x + 3) && member(x + 5));
                }
                let removed = g.semigroup().elements_below(fam.bound).len() - set.len();
                assert_eq!(removed as u32, r);
            }
        }
    }
}

//! Cell dimensions, Euler numbers, Betti numbers and Poincaré polynomials of
//! `Hilb^r` for `Γ = ⟨p, q⟩`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::semigroup::{NumericalSemigroup, PlaneBranch};
use crate::semimodule::{enumerate_mod_r, EmbeddedSemimodule, NormalizedSemimodule};

/// First p-basis index included in the cell-dimension sum.
///
/// `Zero` is the formula that reproduces the known tables; `One` drops the
/// `a₀` window and exists only to demonstrate that it does not.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumStart {
    #[default]
    Zero,
    One,
}

/// Dimension of the cell `H(Δ)`:
/// `Σᵢ #[((−d + Γ) ∩ [aᵢ, aᵢ + q)) \ Λ]` with `d = min Δ`, `Λ = Δ⁽⁰⁾`.
pub fn cell_dimension(branch: &PlaneBranch, delta: &EmbeddedSemimodule) -> u32 {
    cell_dimension_with(branch, delta, SumStart::Zero)
}

pub fn cell_dimension_with(branch: &PlaneBranch, delta: &EmbeddedSemimodule, start: SumStart) -> u32 {
    let d = delta.shift() as i64;
    let lambda = delta.lambda();
    let q = branch.q() as i64;
    let first = match start {
        SumStart::Zero => 0,
        SumStart::One => 1,
    };
    lambda.p_basis()[first..]
        .iter()
        .map(|&a| {
            let a = a as i64;
            (a..a + q)
                .filter(|&n| branch.contains(n + d) && !lambda.contains(n))
                .count() as u32
        })
        .sum()
}

/// The `r ≥ c` formula `Σᵢ #([aᵢ, aᵢ + q] \ Λ)`.
pub fn cell_dimension_stable(lambda: &NormalizedSemimodule) -> u32 {
    let q = lambda.q() as i64;
    lambda
        .p_basis()
        .iter()
        .map(|&a| {
            let a = a as i64;
            (a..=a + q).filter(|&n| !lambda.contains(n)).count() as u32
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub semimodule: EmbeddedSemimodule,
    pub dim: u32,
    pub codim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub gamma: NumericalSemigroup,
    pub r: u32,
    pub dim_hilb: u32,
    pub euler: u64,
    /// `h₀, h₂, h₄, …`
    pub betti_hom: Vec<u64>,
    /// `h⁰, h², h⁴, …`
    pub betti_coh: Vec<u64>,
    pub cells: Vec<CellRecord>,
}

impl TopologyReport {
    /// `Σ_d h_{2d} T^{2d}`.
    pub fn poincare(&self) -> String {
        poincare_polynomial(&self.betti_hom)
    }

    pub fn dims(&self) -> Vec<u32> {
        let mut dims: Vec<u32> = self.cells.iter().map(|c| c.dim).collect();
        dims.sort_unstable();
        dims
    }
}

pub fn poincare_polynomial(betti: &[u64]) -> String {
    let mut out = String::new();
    for (d, &h) in betti.iter().enumerate() {
        if h == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match (d, h) {
            (0, h) => write!(out, "{h}").unwrap(),
            (d, 1) => write!(out, "T^{}", 2 * d).unwrap(),
            (d, h) => write!(out, "{h}*T^{}", 2 * d).unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn topology_report(branch: &PlaneBranch, r: u32) -> TopologyReport {
    topology_report_with(branch, r, SumStart::Zero)
}

pub fn topology_report_with(branch: &PlaneBranch, r: u32, start: SumStart) -> TopologyReport {
    let modules = enumerate_mod_r(branch, r);
    let dims: Vec<u32> = modules
        .iter()
        .map(|m| cell_dimension_with(branch, m, start))
        .collect();
    let dim_hilb = dims.iter().copied().max().unwrap_or(0);
    let mut betti_hom = vec![0u64; dim_hilb as usize + 1];
    let mut betti_coh = vec![0u64; dim_hilb as usize + 1];
    for &d in &dims {
        betti_hom[d as usize] += 1;
        betti_coh[(dim_hilb - d) as usize] += 1;
    }
    let cells = modules
        .into_iter()
        .zip(dims)
        .map(|(semimodule, dim)| CellRecord {
            semimodule,
            dim,
            codim: dim_hilb - dim,
        })
        .collect::<Vec<_>>();
    TopologyReport {
        gamma: branch.semigroup().clone(),
        r,
        dim_hilb,
        euler: cells.len() as u64,
        betti_hom,
        betti_coh,
        cells,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub stable: bool,
    pub reference_dims: Vec<u32>,
    /// `r` values whose dimension multiset differs from the one at `r = c`.
    pub mismatches: Vec<u32>,
}

/// Compares the multiset of cell dimensions for `c ≤ r ≤ r_max` with the one at `r = c`.
pub fn stabilization_check(branch: &PlaneBranch, r_max: u32) -> StabilizationReport {
    let c = branch.conductor();
    let reference_dims = topology_report(branch, c).dims();
    let mismatches: Vec<u32> = (c..=r_max.max(c))
        .filter(|&r| topology_report(branch, r).dims() != reference_dims)
        .collect();
    StabilizationReport {
        stable: mismatches.is_empty(),
        reference_dims,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::all_normalized;

    fn e6() -> PlaneBranch {
        PlaneBranch::new(3, 4).unwrap()
    }

    #[test]
    fn counterexample_cell_is_a_point() {
        let g = e6();
        let delta = EmbeddedSemimodule::generated_by(&g, &[4, 6, 7]).unwrap();
        assert_eq!(delta.shift(), 4);
        assert_eq!(delta.lambda().p_basis(), &[0, 4, 2]);
        assert_eq!(cell_dimension(&g, &delta), 0);
    }

    #[test]
    fn trivial_cell() {
        let g = e6();
        let gamma = EmbeddedSemimodule::generated_by(&g, &[0]).unwrap();
        assert_eq!(cell_dimension(&g, &gamma), 0);
    }

    #[test]
    fn shifted_gamma_in_e6() {
        let g = e6();
        let delta = EmbeddedSemimodule::generated_by(&g, &[6]).unwrap();
        assert_eq!(delta.lambda().p_basis(), &[0, 4, 8]);
        assert_eq!(cell_dimension(&g, &delta), 3);
        // The a₀ window carries two of the three dimensions.
        assert_eq!(cell_dimension_with(&g, &delta, SumStart::One), 1);
    }

    #[test]
    fn stable_formula_examples() {
        let g = e6();
        assert_eq!(cell_dimension_stable(&NormalizedSemimodule::naturals(&g)), 0);
        assert_eq!(cell_dimension_stable(&NormalizedSemimodule::semigroup(&g)), 3);
        let lam = NormalizedSemimodule::from_alphas(&g, &[0, 1, 1]).unwrap();
        assert_eq!(lam.p_basis(), &[0, 1, 5]);
        assert_eq!(cell_dimension_stable(&lam), 2);
    }

    #[test]
    fn report_examples() {
        let rep = topology_report(&e6(), 4);
        assert_eq!(rep.euler, 4);
        assert_eq!(rep.betti_hom, vec![1, 1, 2]);
        assert_eq!(rep.betti_coh, vec![2, 1, 1]);

        let rep = topology_report(&PlaneBranch::new(3, 5).unwrap(), 8);
        assert_eq!(rep.euler, 7);
        assert_eq!(rep.betti_hom, vec![1, 1, 2, 2, 1]);
        assert_eq!(rep.betti_coh, vec![1, 2, 2, 1, 1]);

        let rep = topology_report(&PlaneBranch::new(2, 5).unwrap(), 3);
        assert_eq!(rep.euler, 2);
        assert_eq!(rep.betti_hom, vec![1, 1]);
    }

    #[test]
    fn r_zero_is_a_single_point() {
        let rep = topology_report(&e6(), 0);
        assert_eq!(rep.euler, 1);
        assert_eq!(rep.dim_hilb, 0);
        assert_eq!(rep.betti_hom, vec![1]);
        assert_eq!(rep.betti_coh, vec![1]);
        assert_eq!(rep.poincare(), "1");
    }

    #[test]
    fn poincare_formatting() {
        assert_eq!(poincare_polynomial(&[1, 1, 2, 1]), "1 + T^2 + 2*T^4 + T^6");
        assert_eq!(poincare_polynomial(&[2, 0, 1]), "2 + T^4");
    }

    #[test]
    fn stabilization_examples() {
        assert!(stabilization_check(&e6(), 9).stable);
        let a2 = stabilization_check(&PlaneBranch::new(2, 3).unwrap(), 6);
        assert!(a2.stable);
        assert_eq!(a2.reference_dims, vec![0, 1]);
        assert!(stabilization_check(&PlaneBranch::new(3, 5).unwrap(), 10).stable);
    }

    #[test]
    fn report_invariants_on_grid() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (3, 7)] {
            let g = PlaneBranch::new(p, q).unwrap();
            for r in 0..=g.conductor() + 2 {
                let rep = topology_report(&g, r);
                assert_eq!(rep.betti_hom.iter().sum::<u64>(), rep.euler);
                assert_eq!(rep.betti_coh.iter().sum::<u64>(), rep.euler);
                let mut rev = rep.betti_hom.clone();
                rev.reverse();
                assert_eq!(rev, rep.betti_coh);
                for cell in &rep.cells {
                    assert_eq!(cell.dim + cell.codim, rep.dim_hilb);
                    assert!(cell.dim <= g.delta());
                    // Closed half-open window endpoint: aᵢ + q ∈ Λ always.
                    let lam = cell.semimodule.lambda();
                    assert!(lam.p_basis().iter().all(|&a| lam.contains((a + q) as i64)));
                }
                if r >= g.conductor() {
                    let top = rep.cells.iter().filter(|c| c.dim == g.delta()).count();
                    let bottom = rep.cells.iter().filter(|c| c.dim == 0).count();
                    assert_eq!((top, bottom), (1, 1));
                    for cell in &rep.cells {
                        assert_eq!(cell.dim, cell_dimension_stable(cell.semimodule.lambda()));
                    }
                }
            }
            // The δ-dimensional stable cell is Γ, the point is ℕ.
            assert_eq!(cell_dimension_stable(&NormalizedSemimodule::semigroup(&g)), g.delta());
            assert_eq!(all_normalized(&g).len(), crate::semimodule::rational_catalan(p, q) as usize);
        }
    }
}

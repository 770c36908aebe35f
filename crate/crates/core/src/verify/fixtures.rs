//! Published tables the acceptance runner compares against, transcribed as
//! printed.

/// `(r, Euler number)` rows for `⟨3, 4⟩`.
pub const E6_EULER: [u64; 7] = [1, 1, 2, 3, 4, 4, 5];

/// `h₀, h₂, …` for `⟨3, 4⟩`, `r = 0..=6`.
pub const E6_HOMOLOGY: [&[u64]; 7] = [
    &[1],
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 1, 2],
    &[1, 1, 2, 1],
];

/// `h⁰, h², …` for `⟨3, 4⟩`, `r = 0..=6`.
pub const E6_COHOMOLOGY: [&[u64]; 7] = [
    &[1],
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[2, 1, 1],
    &[2, 1, 1],
    &[1, 2, 1, 1],
];

pub const E8_EULER: [u64; 9] = [1, 1, 2, 3, 4, 5, 6, 6, 7];

/// `h₀, h₂, …` for `⟨3, 5⟩`, `r = 0..=8`.
pub const E8_HOMOLOGY: [&[u64]; 9] = [
    &[1],
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 1, 2, 1],
    &[1, 2, 1, 2],
    &[1, 1, 2, 2],
    &[1, 1, 2, 2, 1],
];

/// `h⁰, h², …` for `⟨3, 5⟩`, `r = 0..=8`.
pub const E8_COHOMOLOGY: [&[u64]; 9] = [
    &[1],
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[2, 1, 1],
    &[1, 2, 1, 1],
    &[2, 1, 2, 1],
    &[2, 2, 1, 1],
    &[1, 2, 2, 1, 1],
];

/// `e(Hilb^r)` for `⟨2, 2l+1⟩`.
pub fn a2l_euler(l: u32, r: u32) -> u64 {
    if r < 2 * l {
        (r / 2 + 1) as u64
    } else {
        (l + 1) as u64
    }
}

/// The `(p, q)` grid used by the structural criteria.
pub const GRID: [(u32, u32); 8] = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (4, 7), (5, 6)];

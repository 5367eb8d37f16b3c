//! Small combinatorial helpers: binomials and the colex order on r-sets.

/// Binomial coefficient as u64. Desk scale only; panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

/// Rank of a sorted r-set in colex order: `Σ C(v_i, i+1)`.
pub fn colex_rank(set: &[u32]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for r-sets.
pub fn colex_unrank(mut rank: u64, r: u32) -> Vec<u32> {
    let mut set = vec![0u32; r as usize];
    for i in (1..=r as u64).rev() {
        // Largest v with C(v, i) <= rank.
        let mut v = i - 1;
        while binomial(v + 1, i) <= rank {
            v += 1;
        }
        rank -= binomial(v, i);
        set[i as usize - 1] = v as u32;
    }
    set
}

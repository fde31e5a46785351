//! Comparator networks for order-statistic selection.
//!
//! This file has no dependencies so the build script can include it to
//! generate unrolled kernels from the same networks the library runs.

/// One step of a pruned network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Op {
    /// `lo = min(lo, hi); hi = max(lo, hi)`
    Sort(u16, u16),
    /// only the min side is consumed later
    MinInto(u16, u16),
    /// only the max side is consumed later
    MaxInto(u16, u16),
}

/// Batcher odd-even merge sort comparators for a power-of-two `n`.
pub(crate) fn batcher_comparators(n: usize) -> Vec<(usize, usize)> {
    debug_assert!(n.is_power_of_two());
    let mut out = Vec::new();
    let mut p = 1;
    while p < n {
        let mut k = p;
        while k >= 1 {
            let mut j = k % p;
            while j + k < n {
                for i in 0..k.min(n - j - k) {
                    if (i + j) / (2 * p) == (i + j + k) / (2 * p) {
                        out.push((i + j, i + j + k));
                    }
                }
                j += 2 * k;
            }
            k /= 2;
        }
        p *= 2;
    }
    out
}

/// Sorting network over the given wires.
///
/// Returns comparators `(lo, hi)` on the wires and, for each sorted
/// position, the wire that ends up holding it. Padding up to a power of two
/// acts as `+inf` and is folded away.
pub(crate) fn sort_wires(wires: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
    const INF: usize = usize::MAX;
    let padded = wires.len().next_power_of_two();
    let mut slot: Vec<usize> = (0..padded)
        .map(|i| wires.get(i).copied().unwrap_or(INF))
        .collect();
    let mut comps = Vec::new();
    for (a, b) in batcher_comparators(padded) {
        match (slot[a], slot[b]) {
            (_, INF) => {}
            (INF, _) => slot.swap(a, b),
            (sa, sb) => comps.push((sa, sb)),
        }
    }
    slot.truncate(wires.len());
    (comps, slot)
}

/// A pruned comparator network whose `output` wire ends up holding one
/// order statistic of its inputs.
#[derive(Debug, Clone)]
pub(crate) struct SelectionNetwork {
    pub(crate) inputs: usize,
    pub(crate) ops: Vec<Op>,
    pub(crate) output: usize,
}

impl SelectionNetwork {
    fn prune(inputs: usize, comps: &[(usize, usize)], output: usize) -> Self {
        assert!(inputs <= u16::MAX as usize);
        let mut live = vec![false; inputs];
        live[output] = true;
        let mut ops = Vec::new();
        for &(lo, hi) in comps.iter().rev() {
            let op = match (live[lo], live[hi]) {
                (false, false) => continue,
                (true, true) => Op::Sort(lo as u16, hi as u16),
                (true, false) => Op::MinInto(lo as u16, hi as u16),
                (false, true) => Op::MaxInto(lo as u16, hi as u16),
            };
            live[lo] = true;
            live[hi] = true;
            ops.push(op);
        }
        ops.reverse();
        SelectionNetwork {
            inputs,
            ops,
            output,
        }
    }

    /// Selects rank `rank` (0-based, ascending) of `inputs` arbitrary values.
    #[cfg(test)]
    pub(crate) fn rank(inputs: usize, rank: usize) -> Self {
        let wires: Vec<usize> = (0..inputs).collect();
        let (comps, sorted) = sort_wires(&wires);
        Self::prune(inputs, &comps, sorted[rank])
    }

    /// Median of an `s x s` window whose columns are already sorted.
    ///
    /// Input wire `r * s + c` holds rank `r` of column `c`. Sorting each
    /// rank across columns leaves the window sorted along both axes, so the
    /// element at `(i, j)` is at least `(i+1)(j+1)` window values and at
    /// most `(s-i)(s-j)`. Only a band around the anti-diagonal can be the
    /// median, and it is selected at a fixed rank among that band.
    pub(crate) fn window_median(s: usize) -> Self {
        let n = s * s;
        let half = n / 2;
        let mut comps = Vec::new();
        let mut at = vec![0usize; n];
        for r in 0..s {
            let wires: Vec<usize> = (0..s).map(|c| r * s + c).collect();
            let (c, sorted) = sort_wires(&wires);
            comps.extend(c);
            for (j, &w) in sorted.iter().enumerate() {
                at[r * s + j] = w;
            }
        }
        let mut candidates = Vec::new();
        let mut below = 0;
        for i in 0..s {
            for j in 0..s {
                // window values known to be <= and >= this one, excluding itself
                let under = (i + 1) * (j + 1) - 1;
                let over = (s - i) * (s - j) - 1;
                if over > half {
                    below += 1;
                } else if under <= half {
                    candidates.push(at[i * s + j]);
                }
            }
        }
        let (c, sorted) = sort_wires(&candidates);
        comps.extend(c);
        Self::prune(n, &comps, sorted[half - below])
    }
}

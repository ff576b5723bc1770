//! Set partitions of `0..n` as restricted-growth strings: `a[0] = 0` and
//! `a[i] <= 1 + max(a[..i])`. Each partition appears exactly once.

/// Depth-first search over partitions with at most `max_blocks` blocks.
///
/// `admissible(prefix, block)` is asked before element `prefix.len()` joins
/// `block`; returning `false` prunes the whole subtree. `accept` sees every
/// complete string that survived pruning; the first accepted one is returned.
pub fn find_partition<A, C>(
    n: usize,
    max_blocks: usize,
    mut admissible: A,
    mut accept: C,
) -> Option<Vec<usize>>
where
    A: FnMut(&[usize], usize) -> bool,
    C: FnMut(&[usize]) -> bool,
{
    if n == 0 {
        return accept(&[]).then(Vec::new);
    }
    if max_blocks == 0 {
        return None;
    }
    let mut rgs = Vec::with_capacity(n);
    if descend(n, max_blocks, 0, &mut rgs, &mut admissible, &mut accept) {
        Some(rgs)
    } else {
        None
    }
}

fn descend<A, C>(
    n: usize,
    max_blocks: usize,
    used: usize,
    rgs: &mut Vec<usize>,
    admissible: &mut A,
    accept: &mut C,
) -> bool
where
    A: FnMut(&[usize], usize) -> bool,
    C: FnMut(&[usize]) -> bool,
{
    if rgs.len() == n {
        return accept(rgs);
    }
    let limit = (used + 1).min(max_blocks);
    for block in 0..limit {
        if !admissible(rgs, block) {
            continue;
        }
        rgs.push(block);
        let now_used = used.max(block + 1);
        if descend(n, max_blocks, now_used, rgs, admissible, accept) {
            return true;
        }
        rgs.pop();
    }
    false
}

/// Smallest block count admitting an accepted partition, with a witness.
pub fn min_blocks<A, C>(
    n: usize,
    max_blocks: usize,
    mut admissible: A,
    mut accept: C,
) -> Option<(usize, Vec<usize>)>
where
    A: FnMut(&[usize], usize) -> bool,
    C: FnMut(&[usize]) -> bool,
{
    if n == 0 {
        return accept(&[]).then(|| (0, Vec::new()));
    }
    (1..=max_blocks.min(n)).find_map(|p| {
        find_partition(n, p, &mut admissible, &mut accept).map(|rgs| {
            let blocks = rgs.iter().max().map_or(0, |&b| b + 1);
            (blocks, rgs)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, max_blocks: usize) -> usize {
        let mut total = 0;
        find_partition(
            n,
            max_blocks,
            |_, _| true,
            |_| {
                total += 1;
                false
            },
        );
        total
    }

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(count(n, n.max(1)), b, "B({n})");
        }
    }

    #[test]
    fn stirling_prefix_sums() {
        // S(6,1) + S(6,2) + S(6,3) = 1 + 31 + 90
        assert_eq!(count(6, 3), 122);
    }

    #[test]
    fn strings_are_restricted_growth() {
        find_partition(
            7,
            7,
            |_, _| true,
            |rgs| {
                let mut max = 0;
                assert_eq!(rgs[0], 0);
                for &a in rgs {
                    assert!(a <= max + 1);
                    max = max.max(a);
                }
                false
            },
        );
    }

    #[test]
    fn min_blocks_finds_smallest() {
        // Elements i and i+1 must be apart: a path needs two blocks.
        let res = min_blocks(
            5,
            5,
            |prefix, b| prefix.last().is_none_or(|&last| last != b),
            |_| true,
        );
        assert_eq!(res.unwrap().0, 2);
    }
}

//! Maximum bipartite matching by augmenting paths.

/// Maximum matching between `0..left` and `0..right` where `adj[l]` lists the
/// right vertices compatible with `l`. Returns `mate[l]` for every left vertex.
pub fn max_matching(right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut mate_l: Vec<Option<usize>> = vec![None; adj.len()];
    let mut mate_r: Vec<Option<usize>> = vec![None; right];
    let mut stamp = vec![usize::MAX; right];
    for l in 0..adj.len() {
        augment(l, l, adj, &mut mate_l, &mut mate_r, &mut stamp);
    }
    mate_l
}

fn augment(
    l: usize,
    round: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
    stamp: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        if stamp[r] == round {
            continue;
        }
        stamp[r] = round;
        let free = match mate_r[r] {
            None => true,
            Some(other) => augment(other, round, adj, mate_l, mate_r, stamp),
        };
        if free {
            mate_l[l] = Some(r);
            mate_r[r] = Some(l);
            return true;
        }
    }
    false
}

/// Whether the `n x n` compatibility relation admits a perfect matching.
pub fn has_perfect_matching(n: usize, adj: &[Vec<usize>]) -> bool {
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    max_matching(n, adj).iter().all(Option::is_some)
}

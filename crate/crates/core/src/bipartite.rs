//! Hopcroft-Karp maximum bipartite matching.
//!
//! Deterministic given adjacency order: BFS layers and DFS augmentation
//! scan neighbors in list order, so callers control tie-breaking by
//! sorting their adjacency lists.

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;

/// Maximum matching on a bipartite graph given as left-side adjacency
/// lists. Returns `match_left` (per left vertex, the matched right vertex)
/// and the matching size.
pub fn max_bipartite_matching(
    n_left: usize,
    n_right: usize,
    adj: &[Vec<usize>],
) -> (Vec<Option<usize>>, usize) {
    assert_eq!(adj.len(), n_left);
    let mut match_l = vec![UNMATCHED; n_left];
    let mut match_r = vec![UNMATCHED; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // BFS from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if match_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = UNMATCHED;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let l2 = match_r[r];
                if l2 == UNMATCHED {
                    found = true;
                } else if dist[l2] == UNMATCHED {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        if !found {
            break;
        }
        // DFS augmentation along layered paths.
        fn try_augment(
            l: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for i in 0..adj[l].len() {
                let r = adj[l][i];
                let l2 = match_r[r];
                if l2 == UNMATCHED
                    || (dist[l2] == dist[l] + 1 && try_augment(l2, adj, match_l, match_r, dist))
                {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            dist[l] = UNMATCHED;
            false
        }
        for l in 0..n_left {
            if match_l[l] == UNMATCHED && dist[l] == 0 {
                try_augment(l, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }

    let size = match_l.iter().filter(|&&r| r != UNMATCHED).count();
    let out = match_l
        .into_iter()
        .map(|r| if r == UNMATCHED { None } else { Some(r) })
        .collect();
    (out, size)
}

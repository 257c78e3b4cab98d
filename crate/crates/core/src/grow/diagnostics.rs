//! Chordless paths and cycles of the underlying graph.

use crate::graphmat::HermitianMatrix;

/// Longest chordless path and cycle, in vertices; by depth-first search over
/// induced paths, exponential in the worst case.
pub struct ChordlessProfile {
    pub longest_path: usize,
    /// Zero when the graph has no cycle.
    pub longest_cycle: usize,
}

pub fn chordless_profile(a: &HermitianMatrix) -> ChordlessProfile {
    let n = a.n();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| u != v && a.is_edge(u, v)).collect()).collect();
    let mut best = ChordlessProfile { longest_path: usize::from(n > 0), longest_cycle: 0 };
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        path.push(s);
        extend(&adj, &mut path, &mut best);
        path.pop();
    }
    best
}

fn extend(adj: &[Vec<bool>], path: &mut Vec<usize>, best: &mut ChordlessProfile) {
    best.longest_path = best.longest_path.max(path.len());
    let last = *path.last().expect("nonempty path");
    let first = path[0];
    for w in 0..adj.len() {
        if !adj[last][w] || path.contains(&w) {
            continue;
        }
        // w may touch only the end of the path, or close a cycle through the start
        let inner = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
        if inner.iter().any(|&p| adj[p][w]) {
            continue;
        }
        if path.len() >= 2 && adj[first][w] {
            best.longest_cycle = best.longest_cycle.max(path.len() + 1);
            continue;
        }
        path.push(w);
        extend(adj, path, best);
        path.pop();
    }
}

/// Maximum vertex count of a chordless path or cycle.
pub fn path_rank(a: &HermitianMatrix) -> usize {
    let p = chordless_profile(a);
    p.longest_path.max(p.longest_cycle)
}

use std::collections::VecDeque;

use crate::{Graph, GraphError};

/// Hop distances from a source set. `None` marks unreachable vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distances {
    dist: Vec<Option<u32>>,
}

impl Distances {
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }

    /// Largest finite distance, if any vertex is reachable.
    pub fn eccentricity(&self) -> Option<u32> {
        self.dist.iter().flatten().copied().max()
    }

    pub fn all_within(&self, r: u32) -> bool {
        self.dist.iter().all(|d| matches!(d, Some(x) if *x <= r))
    }
}

/// Multi-source BFS. With a restriction, the search runs in the induced
/// subgraph on that vertex set and every other vertex stays unreachable.
pub fn bfs_distances(
    g: &Graph,
    sources: &[usize],
    restriction: Option<&[usize]>,
) -> Result<Distances, GraphError> {
    let n = g.n();
    let allowed = match restriction {
        None => vec![true; n],
        Some(set) => {
            let mut mask = vec![false; n];
            for &v in set {
                if v >= n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
                mask[v] = true;
            }
            mask
        }
    };
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if s >= n {
            return Err(GraphError::OutOfRange { vertex: s, n });
        }
        if !allowed[s] {
            return Err(GraphError::SourceOutsideRestriction(s));
        }
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap() + 1;
        for &w in g.neighbors(v) {
            if allowed[w] && dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    Ok(Distances { dist })
}

/// Distance matrix of the whole graph.
pub fn all_pairs_distances(g: &Graph) -> Vec<Distances> {
    (0..g.n())
        .map(|v| bfs_distances(g, &[v], None).expect("vertex in range"))
        .collect()
}

/// True iff `G[subset]` is connected. The empty set is not connected.
pub fn is_connected(g: &Graph, subset: &[usize]) -> bool {
    match subset.first() {
        None => false,
        Some(&s) => {
            let d = bfs_distances(g, &[s], Some(subset)).expect("subset in range");
            subset.iter().all(|&v| d.get(v).is_some())
        }
    }
}

/// Number of connected components of `G[subset]`.
pub fn component_count(g: &Graph, subset: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in subset {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    let mut stack = Vec::new();
    for &s in subset {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path};

    #[test]
    fn path_distance_from_endpoint() {
        let d = bfs_distances(&path(3), &[0], None).unwrap();
        assert_eq!(d.get(2), Some(2));
    }

    #[test]
    fn restriction_hides_outside_vertices() {
        let d = bfs_distances(&complete(3), &[0], Some(&[0, 1])).unwrap();
        assert_eq!(d.get(1), Some(1));
        assert_eq!(d.get(2), None);
    }

    #[test]
    fn multi_source_takes_minimum() {
        let d = bfs_distances(&path(3), &[0, 2], None).unwrap();
        assert_eq!(d.get(1), Some(1));
    }

    #[test]
    fn source_outside_restriction_is_rejected() {
        let err = bfs_distances(&path(3), &[2], Some(&[0, 1])).unwrap_err();
        assert_eq!(err, GraphError::SourceOutsideRestriction(2));
    }

    #[test]
    fn connectivity_of_subsets() {
        let g = path(3);
        assert!(!is_connected(&g, &[0, 2]));
        assert!(is_connected(&g, &[0, 1, 2]));
        assert!(!is_connected(&g, &[]));
        assert_eq!(component_count(&g, &[0, 2]), 2);
    }
}

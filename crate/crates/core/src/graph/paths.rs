use super::bfs::bfs;
use super::{Edge, Graph, OrientedCycle};
use crate::error::{Error, Result};

/// A shortest `s`-`t` path in `h` that uses as many edges of `sc` as possible.
///
/// Longest-path dynamic programming over the shortest-path DAG rooted at `s`,
/// where an arc weighs 1 if it lies on `sc` and 0 otherwise. Ties between equally
/// good predecessors go to the smaller vertex index. Returns the vertex sequence
/// from `s` to `t`.
pub fn max_cycle_overlap_path(
    h: &Graph,
    s: usize,
    t: usize,
    sc: &OrientedCycle,
) -> Result<Vec<usize>> {
    let view = bfs(h, s)?;
    if t >= h.n() {
        return Err(Error::input(format!("vertex {t} out of range")));
    }
    let target = view
        .to(t)
        .ok_or_else(|| Error::input(format!("{s} and {t} are disconnected")))?;

    let mut order: Vec<usize> = (0..h.n())
        .filter(|&v| view.to(v).is_some_and(|d| d <= target))
        .collect();
    order.sort_by_key(|&v| (view.to(v), v));

    let mut best = vec![0usize; h.n()];
    let mut pred = vec![usize::MAX; h.n()];
    for &v in &order {
        let Some(dv) = view.to(v) else { continue };
        if dv == 0 {
            continue;
        }
        for &w in h.neighbors(v) {
            if view.to(w) != Some(dv - 1) {
                continue;
            }
            let gain = best[w] + usize::from(sc.has_edge(Edge::new(v, w)));
            // Neighbours arrive in increasing order, so strict improvement keeps the smallest.
            if pred[v] == usize::MAX || gain > best[v] {
                best[v] = gain;
                pred[v] = w;
            }
        }
    }

    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = pred[cur];
        path.push(cur);
    }
    path.reverse();
    Ok(path)
}

/// Number of shortest `s`-`t` paths of `h` (length `dist_h(s, t)`) that avoid edge `e`.
///
/// Zero certifies that every shortest path between `s` and `t` uses `e`.
pub fn count_shortest_paths_avoiding(h: &Graph, s: usize, t: usize, e: Edge) -> Result<u128> {
    let full = bfs(h, s)?;
    if t >= h.n() {
        return Err(Error::input(format!("vertex {t} out of range")));
    }
    let target = full
        .to(t)
        .ok_or_else(|| Error::input(format!("{s} and {t} are disconnected")))?;

    let mut dist = vec![usize::MAX; h.n()];
    let mut count = vec![0u128; h.n()];
    dist[s] = 0;
    count[s] = 1;
    let mut frontier = vec![s];
    for d in 1..=target {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in h.neighbors(v) {
                if Edge::new(v, w) == e {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    next.push(w);
                }
                if dist[w] == d {
                    count[w] = count[w].saturating_add(count[v]);
                }
            }
        }
        frontier = next;
    }
    Ok(if dist[t] == target { count[t] } else { 0 })
}

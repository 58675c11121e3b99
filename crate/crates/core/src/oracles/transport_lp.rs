//! Exact solver for small transportation problems.
//!
//! Successive shortest paths with Bellman–Ford on the residual network.
//! Every augmentation saturates a supply, a demand or a reverse arc, and all
//! arithmetic stays in the field of the inputs, so rational inputs give the
//! exact optimum.

use crate::error::{Error, Result};
use crate::scalar::{pmin, Scalar};

pub const TRANSPORT_LP_CAP: usize = 64;

const MAX_AUGMENTATIONS: usize = 1 << 20;

struct Arc<T> {
    to: usize,
    cap: T,
    cost: T,
}

/// Minimum of `Σ c_ij π_ij` over couplings `π` of `a` and `b`.
pub fn small_transport_lp<T: Scalar>(a: &[T], b: &[T], cost: &[Vec<T>]) -> Result<T> {
    let (n, m) = (a.len(), b.len());
    for size in [n, m] {
        if size > TRANSPORT_LP_CAP {
            return Err(Error::TooLarge { what: "transport support", size, cap: TRANSPORT_LP_CAP });
        }
    }
    if n == 0 || m == 0 {
        return Err(Error::EmptyMeasure);
    }
    if cost.len() != n || cost.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidParameter(format!("cost matrix must be {n}x{m}")));
    }
    if a.iter().chain(b).any(|&w| w < T::zero()) {
        return Err(Error::InvalidParameter("negative weight".into()));
    }
    let sa = a.iter().fold(T::zero(), |s, &w| s + w);
    let sb = b.iter().fold(T::zero(), |s, &w| s + w);
    if (sa - sb).abs() > T::lit(1e-9) {
        return Err(Error::MassMismatch(sa.to_f64_lossy(), sb.to_f64_lossy()));
    }

    // Nodes: source 0, rows 1..=n, columns n+1..=n+m, sink n+m+1.
    let (s, t) = (0, n + m + 1);
    let mut arcs: Vec<Arc<T>> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m + 2];
    let mut add = |arcs: &mut Vec<Arc<T>>, u: usize, v: usize, cap: T, c: T| {
        adj[u].push(arcs.len());
        arcs.push(Arc { to: v, cap, cost: c });
        adj[v].push(arcs.len());
        arcs.push(Arc { to: u, cap: T::zero(), cost: T::zero() - c });
    };
    for (i, &w) in a.iter().enumerate() {
        add(&mut arcs, s, 1 + i, w, T::zero());
    }
    for (j, &w) in b.iter().enumerate() {
        add(&mut arcs, 1 + n + j, t, w, T::zero());
    }
    for i in 0..n {
        for j in 0..m {
            add(&mut arcs, 1 + i, 1 + n + j, pmin(a[i], b[j]), cost[i][j]);
        }
    }

    let tol = T::feasibility_tol();
    // Relaxations must beat the incumbent by more than rounding noise, or a
    // zero-cost residual cycle can enter the predecessor tree.
    let scale = cost.iter().flatten().fold(T::one(), |acc, &c| crate::scalar::pmax(acc, c.abs()));
    let cost_tol = tol * scale * T::from_count(n + m + 2);
    let target = pmin(sa, sb);
    let mut sent = T::zero();
    let mut total = T::zero();
    for _ in 0..MAX_AUGMENTATIONS {
        if target - sent <= tol {
            return Ok(total);
        }
        let Some(prev) = shortest_path(&arcs, &adj, s, t, tol, cost_tol) else {
            break;
        };
        let mut push = target - sent;
        let mut v = t;
        while v != s {
            let e = prev[v].expect("path reaches the sink");
            push = pmin(push, arcs[e].cap);
            v = arcs[e ^ 1].to;
        }
        let mut v = t;
        while v != s {
            let e = prev[v].expect("path reaches the sink");
            arcs[e].cap = arcs[e].cap - push;
            arcs[e ^ 1].cap = arcs[e ^ 1].cap + push;
            total = total + push * arcs[e].cost;
            v = arcs[e ^ 1].to;
        }
        sent = sent + push;
    }
    if target - sent <= tol {
        Ok(total)
    } else {
        Err(Error::Unsupported("transportation solve did not converge".into()))
    }
}

/// Bellman–Ford over arcs with residual capacity above `tol`; returns the
/// predecessor arc of each node on a cheapest `s`–`t` path, or `None` when
/// the sink is unreachable or the predecessor chain does not reach `s`.
fn shortest_path<T: Scalar>(
    arcs: &[Arc<T>],
    adj: &[Vec<usize>],
    s: usize,
    t: usize,
    tol: T,
    cost_tol: T,
) -> Option<Vec<Option<usize>>> {
    let nv = adj.len();
    let mut dist: Vec<Option<T>> = vec![None; nv];
    let mut prev: Vec<Option<usize>> = vec![None; nv];
    dist[s] = Some(T::zero());
    for _ in 0..nv {
        let mut changed = false;
        for u in 0..nv {
            let Some(du) = dist[u] else { continue };
            for &e in &adj[u] {
                let arc = &arcs[e];
                if arc.cap <= tol {
                    continue;
                }
                let cand = du + arc.cost;
                if arc.to != s && dist[arc.to].is_none_or(|dv| cand < dv - cost_tol) {
                    dist[arc.to] = Some(cand);
                    prev[arc.to] = Some(e);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist[t]?;
    let mut v = t;
    for _ in 0..nv {
        if v == s {
            return Some(prev);
        }
        v = arcs[prev[v]? ^ 1].to;
    }
    None
}

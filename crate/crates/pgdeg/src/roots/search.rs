use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::{in_cone, RootKind, RootSystem};

/// Outcome of a maximum search. `exact` is false when the node budget ran out, in which
/// case `value` is a verified lower bound and `upper` an upper bound.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub value: usize,
    pub upper: usize,
    pub exact: bool,
    pub witness: Vec<usize>,
}

/// Greedy colouring bound over `cands` (in order); returns colour classes per vertex.
fn colour_bound(adj: &[FixedBitSet], cands: &[usize]) -> Vec<usize> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut colour = vec![0; cands.len()];
    for (i, &v) in cands.iter().enumerate() {
        let slot = classes.iter().position(|cl| cl.iter().all(|&u| !adj[v].contains(u)));
        let c = match slot {
            Some(c) => c,
            None => {
                classes.push(Vec::new());
                classes.len() - 1
            }
        };
        classes[c].push(v);
        colour[i] = c + 1;
    }
    colour
}

struct Clique<'a> {
    adj: &'a [FixedBitSet],
    /// Extra acceptance test for a grown set; the set stays a clique regardless.
    accept: &'a (dyn Fn(&[usize], usize) -> bool + Sync),
    global: &'a AtomicUsize,
    nodes: AtomicUsize,
    budget: usize,
}

impl Clique<'_> {
    /// Branch and bound; candidates are kept sorted by index for determinism.
    fn grow(&self, cur: &mut Vec<usize>, cands: &[usize], best: &mut Vec<usize>) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) > self.budget {
            return false;
        }
        let colours = colour_bound(self.adj, cands);
        let max_colour = colours.iter().copied().max().unwrap_or(0);
        let floor = best.len().max(self.global.load(Ordering::Relaxed).saturating_sub(1));
        if cur.len() + max_colour <= floor {
            return true;
        }
        for (i, &v) in cands.iter().enumerate() {
            // colours of the remaining candidates bound what this branch can add
            let rest_colours = colours[i..].iter().copied().max().unwrap_or(0);
            let floor = best.len().max(self.global.load(Ordering::Relaxed).saturating_sub(1));
            if cur.len() + rest_colours <= floor {
                break;
            }
            if !(self.accept)(cur, v) {
                continue;
            }
            cur.push(v);
            if cur.len() > best.len() {
                *best = cur.clone();
                self.global.fetch_max(best.len(), Ordering::Relaxed);
            }
            let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&u| self.adj[v].contains(u)).collect();
            let ok = self.grow(cur, &next, best);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Maximum accepted clique; top-level branches run in parallel and the winner is the
/// largest, ties broken by lexicographic order.
fn max_clique(adj: &[FixedBitSet], accept: &(dyn Fn(&[usize], usize) -> bool + Sync), seed: Vec<usize>, upper: usize, budget: usize) -> SearchResult {
    let n = adj.len();
    let global = AtomicUsize::new(seed.len());
    let search = Clique { adj, accept, global: &global, nodes: AtomicUsize::new(0), budget };
    let results: Vec<(bool, Vec<usize>)> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut best = Vec::new();
            if seed.len() >= upper || !(accept)(&[], v) {
                return (true, best);
            }
            let mut cur = vec![v];
            if best.len() < 1 {
                best = cur.clone();
            }
            let next: Vec<usize> = (v + 1..n).filter(|&u| adj[v].contains(u)).collect();
            let ok = search.grow(&mut cur, &next, &mut best);
            (ok, best)
        })
        .collect();
    let complete = results.iter().all(|r| r.0);
    let mut best = seed;
    for (_, w) in results {
        if w.len() > best.len() || (w.len() == best.len() && !w.is_empty() && w < best) {
            best = w;
        }
    }
    SearchResult { value: best.len(), upper: if complete { best.len() } else { upper }, exact: complete || best.len() >= upper, witness: best }
}

fn sum_free_graph(rs: &RootSystem) -> Vec<FixedBitSet> {
    let n = rs.positive_count();
    (0..n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for b in 0..n {
                if a != b && rs.sum(a, b).is_none() {
                    row.insert(b);
                }
            }
            row
        })
        .collect()
}

/// Largest abelian set of positive roots: a clique in the graph of pairs whose sum is no root.
pub fn max_abelian(rs: &RootSystem, budget: usize) -> SearchResult {
    let adj = sum_free_graph(rs);
    let n = rs.positive_count();
    max_clique(&adj, &|_, _| true, Vec::new(), n, budget)
}

fn coeffs<'a>(rs: &'a RootSystem, set: &[usize]) -> Vec<&'a [i64]> {
    set.iter().map(|&r| rs.coeffs[r].as_slice()).collect()
}

/// Whether `cur + [v]` stays free, given that `cur` is free.
fn extends_free(rs: &RootSystem, cur: &[usize], v: usize) -> bool {
    let mut set = cur.to_vec();
    set.push(v);
    let gens = coeffs(rs, &set);
    if in_cone(&gens[..gens.len() - 1], &rs.coeffs[v]) {
        return false;
    }
    for i in 0..cur.len() {
        let rest: Vec<&[i64]> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| *g).collect();
        if in_cone(&rest, &rs.coeffs[set[i]]) {
            return false;
        }
    }
    (0..rs.positive_count()).filter(|b| !set.contains(b)).all(|b| !in_cone(&gens, &rs.coeffs[b]))
}

/// Largest free set of `(Φ⁺, cone_ℝ)`. Free sets are abelian, so the search runs over
/// cliques of pairwise-free roots; `seed` is a known free set and `upper` a known bound.
pub fn max_really_abelian(rs: &RootSystem, seed: Option<Vec<usize>>, upper: Option<usize>, budget: usize) -> SearchResult {
    let n = rs.positive_count();
    let mut adj = sum_free_graph(rs);
    for a in 0..n {
        for b in a + 1..n {
            if adj[a].contains(b) && !extends_free(rs, &[a], b) {
                adj[a].set(b, false);
                adj[b].set(a, false);
            }
        }
    }
    let seed = seed.filter(|s| rs.is_really_abelian(s)).unwrap_or_default();
    let upper = upper.unwrap_or(n);
    let accept = |cur: &[usize], v: usize| cur.len() < 2 || extends_free(rs, cur, v);
    max_clique(&adj, &accept, seed, upper, budget)
}

/// Named really-abelian candidates from the literature, built from their descriptions.
#[derive(Clone, Debug, Serialize)]
pub struct NamedSet {
    pub name: String,
    pub roots: Vec<usize>,
    pub labels: Vec<String>,
    pub free: bool,
    pub abelian: bool,
}

fn named(rs: &RootSystem, name: &str, roots: Vec<usize>) -> NamedSet {
    NamedSet {
        name: name.into(),
        labels: roots.iter().map(|&r| rs.label(r)).collect(),
        free: rs.is_really_abelian(&roots),
        abelian: rs.is_abelian(&roots),
        roots,
    }
}

/// The named set for `F4`, `E6`, `E7` or `E8`; `variant` selects between readings of the
/// `E7` description (`"c1"` or `"c7"`).
pub fn named_free_set(rs: &RootSystem, variant: Option<&str>) -> Option<NamedSet> {
    let n = rs.positive_count();
    let pos = 0..n;
    match (rs.kind, rs.rank) {
        (RootKind::F, 4) => {
            let vs: [[i64; 4]; 6] = [[2, 0, 0, 0], [2, 2, 0, 0], [2, 0, 2, 0], [2, 0, 0, 2], [1, 1, 1, -1], [1, 1, 1, 1]];
            let roots = vs.iter().map(|v| rs.root_by_ambient(v)).collect::<Option<Vec<_>>>()?;
            Some(named(rs, "F4 six-set", roots))
        }
        (RootKind::E, 6) => {
            let roots = pos.filter(|&r| rs.coeffs[r][0] <= 1 && rs.coeffs[r][5] == 1).collect();
            Some(named(rs, "Γ6", roots))
        }
        (RootKind::E, 7) => {
            let node = if variant == Some("c1") { 0 } else { 6 };
            let roots = pos.filter(|&r| rs.coeffs[r][node] == 1).collect();
            Some(named(rs, &format!("Γ7 (c{} = 1)", node + 1), roots))
        }
        (RootKind::E, 8) => {
            let roots = pos
                .filter(|&r| {
                    let v = &rs.ambient[r];
                    if v[0] == 2 {
                        // a1 ± ai
                        v[1..].iter().filter(|&&x| x != 0).count() == 1
                    } else if v[0] == 1 {
                        // a_{+ε2…ε8} with five or seven plus signs among ε2…ε8
                        let plus = v[1..].iter().filter(|&&x| x > 0).count();
                        plus == 5 || plus == 7
                    } else {
                        false
                    }
                })
                .collect();
            Some(named(rs, "Γ8", roots))
        }
        _ => None,
    }
}

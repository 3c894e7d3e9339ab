//! Finite closure spaces given by generating closed sets.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Subset = FixedBitSet;

/// A finite ground set `0..n` and a family of generating closed sets. The closed sets
/// are the intersections of generators, the whole ground set included.
#[derive(Clone, Debug)]
pub struct ClosureSpace {
    n: usize,
    gens: Vec<Subset>,
    /// `member[x]`: which generators contain `x`.
    member: Vec<FixedBitSet>,
}

/// Result of a Helly-number search with the independent set found.
#[derive(Clone, Debug, Serialize)]
pub struct HellyResult {
    pub helly_number: usize,
    pub independent: Vec<usize>,
    pub strategy: String,
}

pub fn subset(n: usize, items: &[usize]) -> Subset {
    let mut s = FixedBitSet::with_capacity(n);
    for &i in items {
        s.insert(i);
    }
    s
}

pub fn elements(s: &Subset) -> Vec<usize> {
    s.ones().collect()
}

fn full(n: usize) -> Subset {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

impl ClosureSpace {
    pub fn new(n: usize, generators: Vec<Vec<usize>>) -> Self {
        let gens: Vec<Subset> = generators.iter().map(|g| subset(n, g)).collect();
        Self::from_bitsets(n, gens)
    }

    pub fn from_bitsets(n: usize, gens: Vec<Subset>) -> Self {
        let mut member = vec![FixedBitSet::with_capacity(gens.len()); n];
        for (i, g) in gens.iter().enumerate() {
            for x in g.ones() {
                member[x].insert(i);
            }
        }
        Self { n, gens, member }
    }

    /// Order convexity on `n` points of a line: the closed sets are the intervals.
    pub fn order_convexity(n: usize) -> Self {
        let mut gens = Vec::new();
        for k in 0..n.saturating_sub(1) {
            gens.push((0..=k).collect());
            gens.push((k + 1..n).collect());
        }
        Self::new(n, gens)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Subset] {
        &self.gens
    }

    pub fn full(&self) -> Subset {
        full(self.n)
    }

    pub fn empty(&self) -> Subset {
        FixedBitSet::with_capacity(self.n)
    }

    /// Generators containing `a`, as a bitset over generator indices.
    fn gens_over(&self, a: &Subset) -> FixedBitSet {
        let mut g = full(self.gens.len());
        for x in a.ones() {
            g.intersect_with(&self.member[x]);
        }
        g
    }

    fn meet_of(&self, which: &FixedBitSet) -> Subset {
        let mut out = full(self.n);
        for i in which.ones() {
            out.intersect_with(&self.gens[i]);
        }
        out
    }

    pub fn closure(&self, a: &Subset) -> Subset {
        self.meet_of(&self.gens_over(a))
    }

    pub fn is_closed(&self, a: &Subset) -> bool {
        self.closure(a) == *a
    }

    pub fn empty_closed(&self) -> bool {
        self.closure(&self.empty()).count_ones(..) == 0
    }

    /// `⋂_i cl(⋃_{j≠i} A_j)`, and `cl(∅)` for the empty family.
    pub fn core(&self, fam: &[Subset]) -> Subset {
        if fam.is_empty() {
            return self.closure(&self.empty());
        }
        let mut out = self.full();
        for i in 0..fam.len() {
            let mut u = self.empty();
            for (j, a) in fam.iter().enumerate() {
                if j != i {
                    u.union_with(a);
                }
            }
            out.intersect_with(&self.closure(&u));
        }
        out
    }

    pub fn is_helly_independent(&self, fam: &[Subset]) -> bool {
        self.core(fam).count_ones(..) == 0
    }

    /// Whether the singleton family on `points` has empty core.
    pub fn points_independent(&self, points: &[usize]) -> bool {
        let k = points.len();
        if k == 0 {
            return self.empty_closed();
        }
        // prefix and suffix intersections of the membership sets
        let mut prefix = vec![full(self.gens.len())];
        for &p in points {
            let mut next = prefix.last().unwrap().clone();
            next.intersect_with(&self.member[p]);
            prefix.push(next);
        }
        let mut suffix = vec![full(self.gens.len()); k + 1];
        for i in (0..k).rev() {
            let mut next = suffix[i + 1].clone();
            next.intersect_with(&self.member[points[i]]);
            suffix[i] = next;
        }
        let mut core = self.full();
        for i in 0..k {
            let mut over = prefix[i].clone();
            over.intersect_with(&suffix[i + 1]);
            for g in over.ones() {
                core.intersect_with(&self.gens[g]);
            }
            if core.count_ones(..) == 0 {
                return true;
            }
        }
        core.count_ones(..) == 0
    }

    /// One representative per trace class: points in exactly the same generators.
    pub fn trace_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
        let mut order = Vec::new();
        for x in 0..self.n {
            let entry = classes.entry(&self.member[x]).or_default();
            if entry.is_empty() {
                order.push(&self.member[x]);
            }
            entry.push(x);
        }
        order.into_iter().map(|t| classes[t].clone()).collect()
    }

    fn require_empty_closed(&self) -> Result<()> {
        if self.n > 0 && !self.empty_closed() {
            return Err(Error::EmptyNotClosed);
        }
        Ok(())
    }

    /// Largest independent set of points, by DFS over trace representatives.
    pub fn helly_number_dfs(&self) -> Result<HellyResult> {
        self.require_empty_closed()?;
        let reps: Vec<usize> = self.trace_classes().iter().map(|c| c[0]).collect();
        let best = (0..reps.len())
            .into_par_iter()
            .map(|i| {
                let mut cur = vec![reps[i]];
                let mut best = cur.clone();
                self.extend_independent(&reps, i + 1, &mut cur, &mut best);
                best
            })
            .reduce(Vec::new, |a, b| if b.len() > a.len() { b } else { a });
        Ok(HellyResult { helly_number: best.len(), independent: best, strategy: "dfs".into() })
    }

    fn extend_independent(&self, reps: &[usize], from: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (reps.len() - from) <= best.len() {
            return;
        }
        for j in from..reps.len() {
            cur.push(reps[j]);
            if self.points_independent(cur) {
                if cur.len() > best.len() {
                    *best = cur.clone();
                }
                self.extend_independent(reps, j + 1, cur, best);
            }
            cur.pop();
        }
    }

    /// Every closed set, or a budget error.
    pub fn closed_sets(&self, budget: usize) -> Result<Vec<Subset>> {
        let mut seen: std::collections::HashSet<Subset> = std::collections::HashSet::new();
        let mut frontier = vec![self.full()];
        seen.insert(self.full());
        while let Some(c) = frontier.pop() {
            for g in &self.gens {
                let mut m = c.clone();
                m.intersect_with(g);
                if seen.insert(m.clone()) {
                    if seen.len() > budget {
                        return Err(Error::Budget(format!("more than {budget} closed sets")));
                    }
                    frontier.push(m);
                }
            }
        }
        let mut all: Vec<Subset> = seen.into_iter().collect();
        all.sort_by_key(|s| (s.count_ones(..), elements(s)));
        Ok(all)
    }

    /// Nonempty family, empty total meet, every meet of all but one member nonempty.
    pub fn is_helly_critical(&self, fam: &[Subset]) -> bool {
        if fam.is_empty() {
            return false;
        }
        let meet = |skip: Option<usize>| {
            let mut m = self.full();
            for (i, a) in fam.iter().enumerate() {
                if Some(i) != skip {
                    m.intersect_with(a);
                }
            }
            m
        };
        meet(None).count_ones(..) == 0 && (0..fam.len()).all(|i| meet(Some(i)).count_ones(..) > 0)
    }

    /// Size of the largest critical family, searched over the closed-set lattice.
    pub fn max_critical_size(&self, budget: usize) -> Result<(usize, Vec<Subset>)> {
        self.require_empty_closed()?;
        let closed = self.closed_sets(budget)?;
        let mut best = Vec::new();
        let mut cur = Vec::new();
        self.extend_critical(&closed, 0, &self.full(), &mut cur, &mut best);
        Ok((best.len(), best.into_iter().map(|i| closed[i].clone()).collect()))
    }

    fn extend_critical(&self, closed: &[Subset], from: usize, meet: &Subset, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        for j in from..closed.len() {
            let mut m = meet.clone();
            m.intersect_with(&closed[j]);
            cur.push(j);
            if m.count_ones(..) == 0 {
                if cur.len() > best.len() {
                    let fam: Vec<Subset> = cur.iter().map(|&i| closed[i].clone()).collect();
                    if self.is_helly_critical(&fam) {
                        *best = cur.clone();
                    }
                }
            } else {
                self.extend_critical(closed, j + 1, &m, cur, best);
            }
            cur.pop();
        }
    }

    /// `F(A)_i = cl(⋃_{j≠i} A_j)`.
    pub fn f_map(&self, fam: &[Subset]) -> Vec<Subset> {
        (0..fam.len())
            .map(|i| {
                let mut u = self.empty();
                for (j, a) in fam.iter().enumerate() {
                    if j != i {
                        u.union_with(a);
                    }
                }
                self.closure(&u)
            })
            .collect()
    }

    /// `G(A)_i = ⋂_{j≠i} A_j`.
    pub fn g_map(&self, fam: &[Subset]) -> Vec<Subset> {
        (0..fam.len())
            .map(|i| {
                let mut m = self.full();
                for (j, a) in fam.iter().enumerate() {
                    if j != i {
                        m.intersect_with(a);
                    }
                }
                m
            })
            .collect()
    }

    /// Antiexchange over all closed sets, with `cl(∅) = ∅`.
    pub fn is_convex_geometry(&self, budget: usize) -> Result<bool> {
        if !self.empty_closed() {
            return Ok(false);
        }
        for c in self.closed_sets(budget)? {
            let outside: Vec<usize> = (0..self.n).filter(|&x| !c.contains(x)).collect();
            let hulls: Vec<Subset> = outside
                .iter()
                .map(|&x| {
                    let mut a = c.clone();
                    a.insert(x);
                    self.closure(&a)
                })
                .collect();
            for (i, &x) in outside.iter().enumerate() {
                for (j, &y) in outside.iter().enumerate() {
                    if i != j && hulls[i].contains(y) && hulls[j].contains(x) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// A free set has every subset closed: it is closed and no member lies in the
    /// closure of the others.
    pub fn is_free(&self, a: &Subset) -> bool {
        self.is_closed(a)
            && a.ones().all(|x| {
                let mut rest = a.clone();
                rest.set(x, false);
                !self.closure(&rest).contains(x)
            })
    }

    pub fn max_free_set(&self) -> Vec<usize> {
        if !self.empty_closed() {
            return Vec::new();
        }
        let best = (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut cur = vec![i];
                let mut best = Vec::new();
                if self.is_free(&subset(self.n, &cur)) {
                    best = cur.clone();
                    self.extend_free(i + 1, &mut cur, &mut best);
                }
                best
            })
            .reduce(Vec::new, |a, b| if b.len() > a.len() { b } else { a });
        best
    }

    fn extend_free(&self, from: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (self.n - from) <= best.len() {
            return;
        }
        for j in from..self.n {
            cur.push(j);
            if self.is_free(&subset(self.n, cur)) {
                if cur.len() > best.len() {
                    *best = cur.clone();
                }
                self.extend_free(j + 1, cur, best);
            }
            cur.pop();
        }
    }

    /// Helly number through free sets; `None` unless the space is a convex geometry.
    pub fn helly_number_convex(&self, budget: usize) -> Result<Option<HellyResult>> {
        self.require_empty_closed()?;
        match self.is_convex_geometry(budget) {
            Ok(true) => {
                let free = self.max_free_set();
                Ok(Some(HellyResult { helly_number: free.len(), independent: free, strategy: "convex".into() }))
            }
            Ok(false) | Err(Error::Budget(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Convex-geometry path when it applies, otherwise the DFS.
    pub fn helly_number(&self) -> Result<HellyResult> {
        match self.helly_number_convex(20_000)? {
            Some(r) => Ok(r),
            None => self.helly_number_dfs(),
        }
    }

    /// Traces of the closed sets on `u`, reindexed to `0..|u|`.
    pub fn subspace(&self, u: &[usize]) -> ClosureSpace {
        let pos: HashMap<usize, usize> = u.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| g.ones().filter_map(|x| pos.get(&x).copied()).collect())
            .collect();
        ClosureSpace::new(u.len(), gens)
    }

    pub fn disjoint_union(&self, other: &ClosureSpace) -> ClosureSpace {
        let n = self.n + other.n;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.ones().chain(self.n..n).collect());
        }
        for g in &other.gens {
            gens.push((0..self.n).chain(g.ones().map(|x| x + self.n)).collect());
        }
        ClosureSpace::new(n, gens)
    }

    /// Refines the critical family `F(A)` of an independent point set to a critical
    /// family of generators, by greedily dropping generators while the meet stays empty.
    pub fn critical_generators(&self, independent: &[usize]) -> Vec<usize> {
        let mut chosen = FixedBitSet::with_capacity(self.gens.len());
        for i in 0..independent.len() {
            let rest: Vec<usize> = independent.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
            chosen.union_with(&self.gens_over(&subset(self.n, &rest)));
        }
        if self.meet_of(&chosen).count_ones(..) > 0 {
            return Vec::new();
        }
        for g in elements(&chosen) {
            chosen.set(g, false);
            if self.meet_of(&chosen).count_ones(..) > 0 {
                chosen.set(g, true);
            }
        }
        elements(&chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_core_and_helly() {
        let cs = ClosureSpace::order_convexity(3);
        let fam: Vec<Subset> = [0, 1, 2].iter().map(|&i| subset(3, &[i])).collect();
        assert_eq!(elements(&cs.core(&fam)), vec![1]);
        assert_eq!(cs.helly_number_dfs().unwrap().helly_number, 2);
        assert!(cs.is_convex_geometry(1000).unwrap());
        assert_eq!(cs.max_free_set().len(), 2);
    }

    #[test]
    fn edge_cases() {
        let empty = ClosureSpace::new(0, vec![]);
        assert_eq!(empty.helly_number().unwrap().helly_number, 0);
        let point = ClosureSpace::new(1, vec![vec![0]]);
        assert!(matches!(point.helly_number(), Err(Error::EmptyNotClosed)));
        let cs = ClosureSpace::order_convexity(4);
        let (size, fam) = cs.max_critical_size(1000).unwrap();
        assert_eq!(size, 2);
        assert!(cs.is_helly_critical(&fam));
        assert!(cs.is_helly_critical(&[cs.empty()]));
    }

    #[test]
    fn union_adds() {
        let a = ClosureSpace::order_convexity(3);
        let b = ClosureSpace::order_convexity(4);
        assert_eq!(a.disjoint_union(&b).helly_number_dfs().unwrap().helly_number, 4);
    }

    #[test]
    fn not_convex_but_computed() {
        let cs = ClosureSpace::new(3, vec![vec![0], vec![1], vec![2]]);
        assert!(!cs.is_convex_geometry(100).unwrap());
        assert_eq!(cs.helly_number().unwrap().helly_number, 2);
    }

    #[test]
    fn refinement_is_critical() {
        let cs = ClosureSpace::order_convexity(5);
        let r = cs.helly_number_dfs().unwrap();
        let gens = cs.critical_generators(&r.independent);
        let fam: Vec<Subset> = gens.iter().map(|&g| cs.generators()[g].clone()).collect();
        assert_eq!(fam.len(), r.helly_number);
        assert!(cs.is_helly_critical(&fam));
    }
}

//! Checks shared by the property suite and the acceptance runner.

#![allow(dead_code)]

use pgdeg::closure::{elements, subset, ClosureSpace, Subset};
use pgdeg::corpus::{self, Presentation};
use pgdeg::roots::{punctured_weyl, RootKind, RootSystem};
use pgdeg::segal::{check_segal_generic, SegalVariant};
use pgdeg::symcore::{compose_maps, SimplexRef, SymSet};
use pgdeg::Error;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// `X(α)X(β) = X(βα)` and `X(id) = id` for `β: [n] → [p]`, `α: [m] → [n]`.
pub fn functoriality(x_set: &dyn SymSet, x: &SimplexRef, beta: &[usize], alpha: &[usize]) -> Check {
    let lhs = x_set.act(alpha, &x_set.act(beta, x));
    let rhs = x_set.act(&compose_maps(beta, alpha), x);
    ensure!(lhs == rhs, "{}: composite action differs on {}", x_set.name(), x_set.render(x));
    let id: Vec<usize> = (0..=x_set.dim_of(x)).collect();
    ensure!(x_set.act(&id, x) == *x, "{}: identity moves {}", x_set.name(), x_set.render(x));
    Ok(())
}

/// `d_i d_j = d_{j-1} d_i` for `i < j`, and `d_j s_j = d_{j+1} s_j = id`.
pub fn simplicial_identities(x_set: &dyn SymSet, x: &SimplexRef, i: usize, j: usize) -> Check {
    let p = x_set.dim_of(x);
    if i >= j || j > p || p < 2 {
        return Ok(());
    }
    ensure!(x_set.face(i, &x_set.face(j, x)) == x_set.face(j - 1, &x_set.face(i, x)), "{}: face identity at ({i},{j})", x_set.name());
    let s = x_set.degeneracy(j, x);
    ensure!(x_set.face(j, &s) == *x && x_set.face(j + 1, &s) == *x, "{}: degeneracy identity at {j}", x_set.name());
    Ok(())
}

/// Closed sets are intersections of generators; the Helly number is the largest point set
/// whose singletons have empty core. Plain bitmask arithmetic throughout.
pub fn brute_helly(n: usize, gens: &[u32]) -> Option<usize> {
    let all = (1u32 << n) - 1;
    let closure = |a: u32| gens.iter().filter(|&&g| g & a == a).fold(all, |acc, &g| acc & g);
    if closure(0) != 0 {
        return None;
    }
    let mut best = 0;
    for set in 0..=all {
        let pts: Vec<u32> = (0..n as u32).filter(|i| set >> i & 1 == 1).collect();
        let core = pts.iter().fold(all, |acc, &p| acc & closure(set & !(1 << p)));
        if core == 0 {
            best = best.max(pts.len());
        }
    }
    Some(best)
}

pub fn bits(n: usize, fam: &[Vec<usize>]) -> Vec<Subset> {
    fam.iter().map(|a| subset(n, &a.iter().copied().filter(|&x| x < n).collect::<Vec<_>>())).collect()
}

/// Core monotonicity and closure invariance for a family and a pointwise larger one.
pub fn core_laws(cs: &ClosureSpace, small: &[Subset], extra: &[Subset]) -> Check {
    let mut big = small.to_vec();
    for (b, e) in big.iter_mut().zip(extra) {
        b.union_with(e);
    }
    ensure!(cs.core(small).is_subset(&cs.core(&big)), "core is not monotone");
    let closed: Vec<Subset> = small.iter().map(|a| cs.closure(a)).collect();
    ensure!(cs.core(&closed) == cs.core(small), "core changes under closure");
    Ok(())
}

/// Unit and counit of `F ⊣ G`, and the passage between independent and critical families.
pub fn adjunction_laws(cs: &ClosureSpace, a: &[Subset]) -> Check {
    let closed: Vec<Subset> = a.iter().map(|s| cs.closure(s)).collect();
    for (x, y) in a.iter().zip(cs.g_map(&cs.f_map(a))) {
        ensure!(x.is_subset(&y), "unit A ≤ GFA fails");
    }
    for (x, y) in cs.f_map(&cs.g_map(&closed)).iter().zip(&closed) {
        ensure!(x.is_subset(y), "counit FGB ≤ B fails");
    }
    if cs.is_helly_independent(a) && a.iter().all(|s| s.count_ones(..) > 0) {
        ensure!(cs.is_helly_critical(&cs.f_map(a)), "F of an independent family is not critical");
    }
    if cs.is_helly_critical(&closed) {
        let g = cs.g_map(&closed);
        ensure!(cs.is_helly_independent(&g) && g.iter().all(|s| s.count_ones(..) > 0), "G of a critical family is not independent");
    }
    Ok(())
}

/// Helly number against the bitmask oracle, the largest critical family and the other strategy.
pub fn helly_laws(cs: &ClosureSpace) -> Check {
    let n = cs.ground_size();
    let gens: Vec<u32> = cs.generators().iter().map(|g| elements(g).iter().fold(0u32, |m, &x| m | 1 << x)).collect();
    match (brute_helly(n, &gens), cs.helly_number()) {
        (None, Err(Error::EmptyNotClosed)) => Ok(()),
        (Some(h), Ok(r)) => {
            ensure!(r.helly_number == h, "Helly number {} but the oracle finds {h}", r.helly_number);
            ensure!(cs.points_independent(&r.independent), "reported independent set is not independent");
            let (crit, fam) = cs.max_critical_size(1_000_000).map_err(|e| e.to_string())?;
            ensure!(crit == h, "largest critical family has {crit} members, Helly number {h}");
            ensure!(h == 0 || cs.is_helly_critical(&fam), "reported critical family is not critical");
            let dfs = cs.helly_number_dfs().map_err(|e| e.to_string())?.helly_number;
            ensure!(dfs == h, "search strategies disagree: {dfs} vs {h}");
            Ok(())
        }
        (b, r) => Err(format!("oracle {b:?}, library {:?}", r.map(|r| r.helly_number))),
    }
}

pub const SEGAL_CORPUS: [&str; 8] = ["na", "skeleton:1,3", "boundary:3", "bcom:S3", "representable:2", "lsg:1", "weyl:A2", "sphere:1"];

/// The four variants agree at `k`, which also gives the hierarchy implications.
pub fn collapse_and_hierarchy(spec: &str, k: usize) -> Check {
    let p = corpus::make(spec).map_err(|e| e.to_string())?;
    let n_max = 2 * k + 3;
    let view = p.symset(n_max).map_err(|e| e.to_string())?;
    let variants = [SegalVariant::LowerOdd(k), SegalVariant::LowerEven(k), SegalVariant::UpperEven(k), SegalVariant::UpperOdd(k)];
    let mut verdicts = Vec::new();
    for v in variants {
        verdicts.push(check_segal_generic(view.as_ref(), v, n_max).map_err(|e| e.to_string())?.passed());
    }
    ensure!(!verdicts[0] || verdicts.iter().all(|&v| v), "{spec} k={k}: hierarchy broken {verdicts:?}");
    ensure!(verdicts.iter().all(|&v| v == verdicts[0]), "{spec} k={k}: variants differ {verdicts:?}");
    Ok(())
}

/// Partial groupoids of the corpus used by the whole-corpus properties.
pub fn corpus_groupoids() -> Vec<(String, Presentation)> {
    let mut specs: Vec<String> = ["na", "reduced-na", "bcom:S3", "bcom:D4", "bcom:Q8", "bcom:C4", "group:S3", "weyl:A2", "weyl:B2", "weyl:G2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    specs.extend((1..=4).flat_map(|n| (1..=n).map(move |m| format!("skeleton:{},{n}", m - 1))));
    specs.extend((2..=4).map(|n| format!("boundary:{n}")));
    specs.extend((1..=5).map(|s| format!("lsg:{s}")));
    specs.into_iter().map(|s| (s.clone(), corpus::make(&s).unwrap())).collect()
}

pub const SMALL_WEYL: [(RootKind, usize); 6] = [(RootKind::A, 2), (RootKind::B, 2), (RootKind::G, 2), (RootKind::A, 3), (RootKind::B, 3), (RootKind::C, 3)];

/// The closure of the Weyl action is `cone_ℝ` on every subset of positive roots.
pub fn closure_is_cone(kind: RootKind, rank: usize) -> Check {
    let rs = RootSystem::build(kind, rank).map_err(|e| e.to_string())?;
    let pw = punctured_weyl(&rs, 100_000).map_err(|e| e.to_string())?;
    let cs = pw.action.closure_space();
    let n = rs.positive_count();
    ensure!(cs.ground_size() == n, "{}: carrier is not the positive roots", rs.name());
    for mask in 0u32..1 << n {
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        ensure!(elements(&cs.closure(&subset(n, &a))) == rs.cone_r(&a), "{}: closures differ on {a:?}", rs.name());
    }
    Ok(())
}

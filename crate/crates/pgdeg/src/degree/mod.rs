//! Degrees of partial groupoids: Helly numbers of characteristic actions, checked against
//! bounded Segal searches.

mod lemma;
mod sphere;

use std::sync::Arc;

use serde::Serialize;

use crate::action::{self, CharacteristicAction};
use crate::closure::{elements, Subset};
use crate::corpus::Presentation;
use crate::error::{Error, Result};
use crate::registry::{degree_methods, helly_strategies, segal_checkers, HellyStrategy};
use crate::segal::{self, SegalOutcome, SegalVariant, SegalWitness};
use crate::symcore::{PartialGroupoid, SymSet};

pub use lemma::{function_lemma, FunctionLemmaReport};
pub use sphere::{sphere_degree_check, symmetric_sphere_witness, SphereOptions, SphereReport, SphereWitness};

#[derive(Clone, Debug)]
pub struct DegreeOptions {
    /// `helly`, `brute` or `both`.
    pub method: String,
    /// Segal checker for the brute search; by default `spiny` for partial groupoids and
    /// `generic` for function families.
    pub checker: Option<String>,
    pub helly_strategy: String,
    /// Largest simplex dimension examined by the brute search. Defaults to `dim + 1` for
    /// the spiny checker (hollow words are never longer), `dim + k + 2` for the others and
    /// `2k + 3` for families without a known dimension.
    pub n_max: Option<usize>,
    /// Largest `k` tried before giving up.
    pub k_max: Option<usize>,
    pub budget: usize,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        Self { method: "both".into(), checker: None, helly_strategy: "auto".into(), n_max: None, k_max: None, budget: 1_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    pub groupoid: bool,
    pub group: bool,
    /// No objects: every filler condition holds vacuously and the degree is reported as 1.
    pub empty: bool,
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub helly: Option<HellyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<BruteReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HellyReport {
    /// `supplied`, `compact`, or `none` for groupoids.
    pub action: String,
    pub carrier: usize,
    pub strategy: String,
    /// Supremum of the fiber Helly numbers.
    pub helly_number: usize,
    /// Helly number of the whole carrier; absent when the empty set is not closed.
    pub global_helly: Option<usize>,
    /// Degree through the compact action when a different action was supplied and the
    /// compact one fits the budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compact_helly: Option<usize>,
    pub fibers: Vec<FiberReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SegalWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub object: String,
    pub points: usize,
    pub helly_number: usize,
}

/// Edges out of `base` whose domains form a critical family.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalFamily {
    pub base: String,
    /// Generator indices, which are edge indices.
    pub generators: Vec<usize>,
    pub edges: Vec<String>,
    pub domains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteReport {
    pub checker: String,
    pub degree: usize,
    /// Failure of the lower `(2 degree - 3)`-Segal condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SegalWitness>,
    /// The lower `(2 degree - 1)`-Segal check passed for simplices up to this dimension.
    pub n_max: usize,
}

/// Degree by the method named in `opts`.
pub fn degree(p: &Presentation, opts: &DegreeOptions) -> Result<DegreeReport> {
    degree_methods().get(&opts.method)?.run(p, opts)
}

/// Degree of a partial groupoid with the compact action.
pub fn degree_of(pg: &Arc<PartialGroupoid>, opts: &DegreeOptions) -> Result<DegreeReport> {
    degree(&Presentation::Groupoid { pg: pg.clone(), action: None }, opts)
}

pub(crate) fn run(p: &Presentation, opts: &DegreeOptions, helly: bool, brute: bool) -> Result<DegreeReport> {
    let (pg, supplied) = match p {
        Presentation::Functions(f) => {
            // the default `both` falls back to the search alone
            if helly && !brute {
                return Err(Error::Unsupported("Helly numbers need a partial groupoid; use the brute method".into()));
            }
            let b = brute_degree(p, f.dimension(), opts)?;
            return Ok(DegreeReport {
                degree: b.degree,
                method: opts.method.clone(),
                agree: None,
                groupoid: false,
                group: false,
                empty: false,
                dimension: f.dimension(),
                helly: None,
                brute: Some(b),
            });
        }
        Presentation::Groupoid { pg, action } => (pg, action.clone()),
    };
    if pg.object_count() == 0 {
        return Ok(DegreeReport {
            degree: 1,
            method: opts.method.clone(),
            agree: None,
            groupoid: true,
            group: false,
            empty: true,
            dimension: None,
            helly: None,
            brute: None,
        });
    }
    let groupoid = pg.is_groupoid();
    let dim = pg.dimension()?;
    let h = if helly { Some(helly_degree(pg, supplied, groupoid, opts)?) } else { None };
    let b = if brute { Some(brute_degree(p, Some(dim), opts)?) } else { None };
    let from_helly = h.as_ref().map(|h| if groupoid { 1 } else { h.helly_number });
    let from_brute = b.as_ref().map(|b| b.degree);
    let agree = match (from_helly, from_brute) {
        (Some(x), Some(y)) if x != y => {
            return Err(Error::Disagreement(format!("Helly number gives degree {x}, the bounded search gives {y}")));
        }
        (Some(_), Some(_)) => Some(true),
        _ => None,
    };
    Ok(DegreeReport {
        degree: from_helly.or(from_brute).expect("some method ran"),
        method: opts.method.clone(),
        agree,
        groupoid,
        group: groupoid && pg.object_count() == 1,
        empty: false,
        dimension: Some(dim),
        helly: h,
        brute: b,
    })
}

fn helly_degree(pg: &Arc<PartialGroupoid>, supplied: Option<Arc<CharacteristicAction>>, groupoid: bool, opts: &DegreeOptions) -> Result<HellyReport> {
    let strategy = helly_strategies();
    let strategy = strategy.get(&opts.helly_strategy)?;
    if groupoid {
        // degree one; the Helly number says nothing here
        return Ok(HellyReport {
            action: "none".into(),
            carrier: 0,
            strategy: opts.helly_strategy.clone(),
            helly_number: 1,
            global_helly: None,
            compact_helly: None,
            fibers: Vec::new(),
            critical: None,
            witness: None,
        });
    }
    let (kind, act) = match supplied {
        Some(a) => ("supplied", a),
        None => ("compact", Arc::new(action::compact_action(pg, opts.budget)?)),
    };
    if act.base.edge_count() != pg.edge_count() || act.base.object_count() != pg.object_count() {
        return Err(Error::Invalid("the action is over a different partial groupoid".into()));
    }
    let global = act.closure_space();
    let global_helly = match strategy.helly(&global) {
        Ok(r) => Some(r.helly_number),
        Err(Error::EmptyNotClosed) => None,
        Err(e) => return Err(e),
    };
    let (fibers, best) = fiber_helly(pg, &act, strategy)?;
    let compact_helly = if kind == "supplied" {
        match action::compact_action(pg, opts.budget) {
            Ok(c) => Some(fiber_helly(pg, &c, strategy)?.1 .1),
            Err(Error::Budget(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if let Some(c) = compact_helly {
        if c != best.1 {
            return Err(Error::Disagreement(format!("the supplied action gives Helly number {}, the compact action {c}", best.1)));
        }
    }
    let (a, h, independent, fiber) = best;
    let space = global.subspace(&fiber);
    let gens = space.critical_generators(&independent);
    let family: Vec<Subset> = gens.iter().map(|&g| space.generators()[g].clone()).collect();
    if gens.len() != h || !space.is_helly_critical(&family) || gens.iter().any(|&g| pg.edge(g).src != a) {
        return Err(Error::Invalid(format!("refining the independent set gave no critical family of {h} edges; is the action characteristic?")));
    }
    let witness = segal::starry_word_witness(pg, a, &gens)
        .ok_or_else(|| Error::Invalid("the critical edges do not form a hollow starry word; is the action characteristic?".into()))?;
    let critical = CriticalFamily {
        base: pg.objects()[a].clone(),
        generators: gens.clone(),
        edges: gens.iter().map(|&g| pg.edge_name(g).to_string()).collect(),
        domains: family.iter().map(|d| elements(d).iter().map(|&i| act.points[fiber[i]].clone()).collect()).collect(),
    };
    Ok(HellyReport {
        action: kind.into(),
        carrier: act.carrier_size(),
        strategy: opts.helly_strategy.clone(),
        helly_number: h,
        global_helly,
        compact_helly,
        fibers,
        critical: Some(critical),
        witness: Some(witness),
    })
}

type Best = (usize, usize, Vec<usize>, Vec<usize>);

/// Helly number of each fiber `dom(id_a)`, as a trace of the whole carrier, and the first
/// fiber attaining the maximum with its independent set.
fn fiber_helly(pg: &PartialGroupoid, act: &CharacteristicAction, strategy: &dyn HellyStrategy) -> Result<(Vec<FiberReport>, Best)> {
    let global = act.closure_space();
    let mut fibers = Vec::new();
    let mut best: Option<Best> = None;
    for a in 0..pg.object_count() {
        let fiber = act.domain_of_edge(pg.identity(a));
        let r = strategy.helly(&global.subspace(&fiber))?;
        fibers.push(FiberReport { object: pg.objects()[a].clone(), points: fiber.len(), helly_number: r.helly_number });
        if best.as_ref().map_or(true, |b| r.helly_number > b.1) {
            best = Some((a, r.helly_number, r.independent, fiber));
        }
    }
    Ok((fibers, best.expect("at least one object")))
}

/// Least `k` at which the chosen checker passes, with the failure at `k - 1`.
fn brute_degree(p: &Presentation, dim: Option<usize>, opts: &DegreeOptions) -> Result<BruteReport> {
    let name = opts.checker.clone().unwrap_or_else(|| if p.partial_groupoid().is_some() { "spiny".into() } else { "generic".into() });
    let checkers = segal_checkers();
    let checker = checkers.get(&name)?;
    let n_max = |k: usize| {
        opts.n_max.unwrap_or(match dim {
            Some(d) if name == "spiny" => d + 1,
            Some(d) => d + k + 2,
            None => 2 * k + 3,
        })
    };
    let k_max = opts.k_max.unwrap_or(dim.map_or(8, |d| d + 1));
    let mut last = None;
    for k in 1..=k_max {
        match checker.check(p, SegalVariant::LowerOdd(k), n_max(k))? {
            SegalOutcome::Pass { n_max } => return Ok(BruteReport { checker: name, degree: k, witness: last, n_max }),
            SegalOutcome::Fail { witness } => last = Some(witness),
        }
    }
    Err(Error::Budget(format!("every lower (2k-1)-Segal check with k ≤ {k_max} failed")))
}

/// `deg ≤ dim + 1`.
pub fn degree_bound_check(pg: &Arc<PartialGroupoid>) -> Result<bool> {
    let opts = DegreeOptions { method: "helly".into(), ..Default::default() };
    let r = degree_of(pg, &opts)?;
    Ok(r.degree <= r.dimension.unwrap_or(0) + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub degree: usize,
    pub reduced_degree: usize,
    pub groupoid: bool,
    /// Objects with a nonidentity edge out of them.
    pub nontrivial_sources: usize,
    /// For non-groupoids, equal degrees; for groupoids, the reduction has degree 2 when at
    /// least two objects are nontrivial sources and 1 otherwise.
    pub holds: bool,
}

pub fn reduction_invariance_check(pg: &Arc<PartialGroupoid>) -> Result<ReductionReport> {
    let opts = DegreeOptions { method: "helly".into(), ..Default::default() };
    let degree = degree_of(pg, &opts)?.degree;
    let reduced = Arc::new(pg.reduction()?);
    let reduced_degree = degree_of(&reduced, &opts)?.degree;
    let groupoid = pg.is_groupoid();
    let nontrivial_sources = (0..pg.object_count())
        .filter(|&a| (0..pg.edge_count()).any(|e| pg.edge(e).src == a && !pg.is_identity(e)))
        .count();
    let holds = if groupoid { reduced_degree == if nontrivial_sources >= 2 { 2 } else { 1 } } else { reduced_degree == degree };
    Ok(ReductionReport { degree, reduced_degree, groupoid, nontrivial_sources, holds })
}

/// Degrees of `X`, `dec_⊥ X` and `dec_⊤ X` by the generic checker over starry face sets,
/// with `n ≤ k + slack`.
pub fn decalage_degrees(p: Arc<dyn SymSet>, k_max: usize, slack: usize) -> Result<[Option<usize>; 3]> {
    let deg = |x: &dyn SymSet| -> Result<Option<usize>> { Ok(segal::bounded_degree(x, k_max, slack)?.map(|d| d.0)) };
    Ok([deg(p.as_ref())?, deg(segal::dec_bot(p.clone()).as_ref())?, deg(segal::dec_top(p).as_ref())?])
}

//! Named strategies selected at run time: Segal checkers, Helly strategies and degree methods.

use crate::closure::{ClosureSpace, HellyResult};
use crate::corpus::Presentation;
use crate::degree::{self, DegreeOptions, DegreeReport};
use crate::error::{Error, Result};
use crate::segal::{self, GenericOptions, SegalOutcome, SegalVariant, SubsetMode};

/// Entries keyed by name, kept in registration order.
pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, entries: Vec::new() }
    }

    pub fn register(&mut self, name: &'static str, entry: Box<T>) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, entry));
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e.as_ref())
            .ok_or_else(|| Error::Format(format!("unknown {} {name:?}; known: {}", self.kind, self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

/// A decision procedure for the lower `(2k-1)`-Segal condition.
pub trait SegalChecker: Send + Sync {
    fn describe(&self) -> &'static str;
    fn check(&self, p: &Presentation, v: SegalVariant, n_max: usize) -> Result<SegalOutcome>;
}

struct Generic;
struct Spiny;
struct Words;

fn lower_odd_only(v: SegalVariant) -> Result<usize> {
    match v {
        SegalVariant::LowerOdd(k) => Ok(k),
        other => Err(Error::Unsupported(format!("this checker decides lower odd conditions only, not {other}"))),
    }
}

impl SegalChecker for Generic {
    fn describe(&self) -> &'static str {
        "unique fillers over gapped face sets, any presentation and variant"
    }

    fn check(&self, p: &Presentation, v: SegalVariant, n_max: usize) -> Result<SegalOutcome> {
        let view = p.symset(n_max)?;
        segal::check_segal_generic_with(view.as_ref(), v, n_max, GenericOptions { mode: SubsetMode::Gapped, ..Default::default() })
    }
}

impl SegalChecker for Spiny {
    fn describe(&self) -> &'static str {
        "hollow starry words, spiny presentations"
    }

    fn check(&self, p: &Presentation, v: SegalVariant, n_max: usize) -> Result<SegalOutcome> {
        let k = lower_odd_only(v)?;
        let pg = p.partial_groupoid().ok_or_else(|| Error::Unsupported("the spiny checker needs a partial groupoid".into()))?;
        Ok(segal::check_lower_segal_spiny(pg, k, n_max))
    }
}

impl SegalChecker for Words {
    fn describe(&self) -> &'static str {
        "spine words lifting on gapped face sets, spiny presentations"
    }

    fn check(&self, p: &Presentation, v: SegalVariant, n_max: usize) -> Result<SegalOutcome> {
        let k = lower_odd_only(v)?;
        let pg = p.partial_groupoid().ok_or_else(|| Error::Unsupported("the words checker needs a partial groupoid".into()))?;
        segal::check_lower_segal_words(pg, k, n_max)
    }
}

pub fn segal_checkers() -> Registry<dyn SegalChecker> {
    let mut r: Registry<dyn SegalChecker> = Registry::new("Segal checker");
    r.register("generic", Box::new(Generic));
    r.register("spiny", Box::new(Spiny));
    r.register("words", Box::new(Words));
    r
}

/// A way of computing the Helly number of a finite closure space.
pub trait HellyStrategy: Send + Sync {
    fn helly(&self, cs: &ClosureSpace) -> Result<HellyResult>;
}

struct Convex;
struct Dfs;
struct Auto;

impl HellyStrategy for Convex {
    fn helly(&self, cs: &ClosureSpace) -> Result<HellyResult> {
        cs.helly_number_convex(1_000_000)?
            .ok_or_else(|| Error::Unsupported("not a convex geometry; the free-set strategy does not apply".into()))
    }
}

impl HellyStrategy for Dfs {
    fn helly(&self, cs: &ClosureSpace) -> Result<HellyResult> {
        cs.helly_number_dfs()
    }
}

impl HellyStrategy for Auto {
    fn helly(&self, cs: &ClosureSpace) -> Result<HellyResult> {
        cs.helly_number()
    }
}

pub fn helly_strategies() -> Registry<dyn HellyStrategy> {
    let mut r: Registry<dyn HellyStrategy> = Registry::new("Helly strategy");
    r.register("auto", Box::new(Auto));
    r.register("convex", Box::new(Convex));
    r.register("dfs", Box::new(Dfs));
    r
}

/// A degree computation.
pub trait DegreeMethod: Send + Sync {
    fn run(&self, p: &Presentation, opts: &DegreeOptions) -> Result<DegreeReport>;
}

struct Helly;
struct Brute;
struct Both;

impl DegreeMethod for Helly {
    fn run(&self, p: &Presentation, opts: &DegreeOptions) -> Result<DegreeReport> {
        degree::run(p, opts, true, false)
    }
}

impl DegreeMethod for Brute {
    fn run(&self, p: &Presentation, opts: &DegreeOptions) -> Result<DegreeReport> {
        degree::run(p, opts, false, true)
    }
}

impl DegreeMethod for Both {
    fn run(&self, p: &Presentation, opts: &DegreeOptions) -> Result<DegreeReport> {
        degree::run(p, opts, true, true)
    }
}

pub fn degree_methods() -> Registry<dyn DegreeMethod> {
    let mut r: Registry<dyn DegreeMethod> = Registry::new("degree method");
    r.register("helly", Box::new(Helly));
    r.register("brute", Box::new(Brute));
    r.register("both", Box::new(Both));
    r
}

//! The symmetric spheres `Υⁿ/∂Υⁿ`: an explicit obstruction at `k = 2n - 1`, bounded
//! filler checks at `k = 2n`, and the function extension oracle behind the upper bound.

use serde::Serialize;

use super::lemma::{function_lemma, FunctionLemmaReport};
use crate::error::{Error, Result};
use crate::segal::{self, GenericOptions, SegalVariant, SegalWitness, SubsetMode};
use crate::symcore::{Family, FunctionFamily, SimplexRef, SymSet};

#[derive(Clone, Debug)]
pub struct SphereOptions {
    /// Largest dimension for the filler checks; at least `4n + 1`, default `4n + 3`.
    pub n_max: Option<usize>,
    /// `(|R|, |S|)` pairs for the function oracle.
    pub lemma_cases: Vec<(usize, usize)>,
    /// Also check the simplicial sphere `Δⁿ/∂Δⁿ`.
    pub simplicial: bool,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self { n_max: None, lemma_cases: vec![(3, 6), (3, 7)], simplicial: true }
    }
}

/// The pair `a ≠ b` in dimension `2n` sharing the faces `x_0 … x_{2n-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct SphereWitness {
    pub a: String,
    pub b: String,
    pub a_face: String,
    pub b_face: String,
    #[serde(rename = "I")]
    pub index_set: Vec<usize>,
    pub compatible: bool,
    pub fillers: Vec<String>,
    /// Compatible and without filler.
    pub replayed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FillerCheck {
    pub presentation: String,
    pub variant: SegalVariant,
    pub n_max: usize,
    pub mode: SubsetMode,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SegalWitness>,
    /// For failures: the witness family has no filler or several.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_replayed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereReport {
    pub n: usize,
    pub degree: usize,
    pub witness: SphereWitness,
    /// Lower `(4n-3)`-Segal fails.
    pub lower: FillerCheck,
    /// Lower `(4n-1)`-Segal holds up to `n_max`.
    pub upper: FillerCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicial: Option<FillerCheck>,
    pub lemma: Vec<FunctionLemmaReport>,
    pub holds: bool,
}

fn word(parts: &[&[usize]]) -> Vec<usize> {
    parts.concat()
}

/// Replays the obstruction. For `n = 1` the family has the filler `110`, so there the
/// lower bound rests on the generic search alone.
pub fn sphere_witness(sphere: &dyn SymSet, n: usize) -> Result<SphereWitness> {
    let up: Vec<usize> = (1..=n).collect();
    let a = word(&[&vec![0; n], &up, &[0]]);
    let b = word(&[&up, &vec![0; n + 1]]);
    let a_face = word(&[&vec![0; n - 1], &up, &[0]]);
    let b_face = word(&[&up, &vec![0; n]]);
    let family: Vec<(usize, SimplexRef)> = (0..2 * n)
        .map(|i| (i, SimplexRef::Map(if i < n { a_face.clone() } else { b_face.clone() })))
        .collect();
    let render = |v: &[usize]| sphere.render(&SimplexRef::Map(v.to_vec()));
    let (compatible, fillers) = match segal::fillers_of_family(sphere, 2 * n, &family) {
        Ok(f) => (true, f),
        Err(Error::Invalid(_)) => (false, Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(SphereWitness {
        a: render(&a),
        b: render(&b),
        a_face: render(&a_face),
        b_face: render(&b_face),
        index_set: (0..2 * n).collect(),
        compatible,
        replayed: compatible && fillers.is_empty(),
        fillers: fillers.iter().map(|x| sphere.render(x)).collect(),
    })
}

fn filler_check(p: &dyn SymSet, v: SegalVariant, n_max: usize, mode: SubsetMode) -> Result<FillerCheck> {
    let opts = GenericOptions { mode, budget: usize::MAX, ..Default::default() };
    let out = segal::check_segal_generic_with(p, v, n_max, opts)?;
    let witness_replayed = match out.witness() {
        Some(w) => Some(w.replay_family(p)?),
        None => None,
    };
    Ok(FillerCheck {
        presentation: p.name(),
        variant: v,
        n_max,
        mode,
        passed: out.passed(),
        witness: out.witness().cloned(),
        witness_replayed,
    })
}

/// The explicit witness for the symmetric sphere of dimension `n`.
pub fn symmetric_sphere_witness(n: usize) -> Result<SphereWitness> {
    let sphere = FunctionFamily::new(Family::Sphere(n))?;
    sphere_witness(&sphere, n)
}

pub fn sphere_degree_check(n: usize, opts: &SphereOptions) -> Result<SphereReport> {
    if n == 0 {
        return Err(Error::Invalid("sphere needs n ≥ 1".into()));
    }
    let n_max = opts.n_max.unwrap_or(4 * n + 3);
    if n_max < 4 * n + 1 {
        return Err(Error::Invalid(format!("n_max must be at least {}", 4 * n + 1)));
    }
    let sphere = FunctionFamily::new(Family::Sphere(n))?;
    let witness = sphere_witness(&sphere, n)?;
    let lower = filler_check(&sphere, SegalVariant::LowerOdd(2 * n - 1), 4 * n, SubsetMode::Gapped)?;
    // for lower odd conditions, face sets containing both endpoints suffice
    let upper = filler_check(&sphere, SegalVariant::LowerOdd(2 * n), n_max, SubsetMode::Endpoints)?;
    let simplicial = if opts.simplicial {
        let s = FunctionFamily::new(Family::SimplicialSphere(n))?;
        Some(filler_check(&s, SegalVariant::LowerOdd(2 * n), n_max, SubsetMode::Gapped)?)
    } else {
        None
    };
    let lemma = opts.lemma_cases.iter().map(|&(r, s)| function_lemma(r, s)).collect::<Result<Vec<_>>>()?;
    let lower_ok = !lower.passed && lower.witness_replayed == Some(true) && (n == 1 || witness.replayed);
    let holds = lower_ok && upper.passed && simplicial.as_ref().map_or(true, |s| s.passed) && lemma.iter().all(|l| l.holds);
    Ok(SphereReport { n, degree: 2 * n, witness, lower, upper, simplicial, lemma, holds })
}

//! Finite partial groupoids and finite-dimensional symmetric sets.

mod family;
mod group;
mod pg;
mod validate;

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

pub use family::{Family, FunctionFamily};
pub use group::FiniteGroup;
pub use pg::{Ambient, Edge, EdgeActions, PartialGroupoid, Spine, Store};
pub use validate::{validate, Violation};

use crate::error::Result;

/// A simplex of some presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SimplexRef {
    Spine(Spine),
    /// A function `[m] → [n]` listed by its values.
    Map(Vec<usize>),
    /// The collapsed basepoint in dimension `m`.
    Point(usize),
}

impl SimplexRef {
    pub fn dim(&self) -> usize {
        match self {
            SimplexRef::Spine(s) => s.dim(),
            SimplexRef::Map(f) => f.len() - 1,
            SimplexRef::Point(m) => *m,
        }
    }
}

/// A finite-dimensional symmetric (or merely simplicial) set.
pub trait SymSet: Send + Sync {
    fn name(&self) -> String;

    /// Whether all functions act, rather than only monotone ones.
    fn is_symmetric(&self) -> bool {
        true
    }

    /// Every n-simplex, degenerate ones included, in a deterministic order.
    fn simplices(&self, n: usize) -> Result<Vec<SimplexRef>>;

    /// `alpha^* x` for `alpha: [m] → [n]` and an n-simplex `x`.
    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef;

    /// Largest dimension of a nondegenerate simplex, when known.
    fn dimension(&self) -> Option<usize>;

    /// Dimension of `x` as a simplex of this presentation.
    fn dim_of(&self, x: &SimplexRef) -> usize {
        x.dim()
    }

    fn face(&self, i: usize, x: &SimplexRef) -> SimplexRef {
        self.act(&coface(self.dim_of(x), i), x)
    }

    fn degeneracy(&self, i: usize, x: &SimplexRef) -> SimplexRef {
        let n = self.dim_of(x);
        let alpha: Vec<usize> = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
        self.act(&alpha, x)
    }

    /// Stable text form of a simplex, used in witnesses.
    fn render(&self, x: &SimplexRef) -> String {
        render_plain(x)
    }
}

fn render_plain(x: &SimplexRef) -> String {
    match x {
        SimplexRef::Map(f) if f.iter().all(|&v| v < 10) => f.iter().map(|v| v.to_string()).collect(),
        SimplexRef::Map(f) => f.iter().join(","),
        SimplexRef::Point(_) => "*".into(),
        SimplexRef::Spine(s) => format!("{}:{}", s.base, s.word.iter().join(".")),
    }
}

/// The coface map `[n-1] → [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// Composite `alpha ∘ beta` of functions given by value lists.
pub fn compose_maps(alpha: &[usize], beta: &[usize]) -> Vec<usize> {
    beta.iter().map(|&b| alpha[b]).collect()
}

/// All surjections `[m] → [d]`.
pub fn surjections(m: usize, d: usize) -> Vec<Vec<usize>> {
    (0..=m)
        .map(|_| 0..=d)
        .multi_cartesian_product()
        .filter(|f| (0..=d).all(|v| f.contains(&v)))
        .collect()
}

/// A partial groupoid viewed as a symmetric set.
pub struct PgSymSet {
    pub pg: Arc<PartialGroupoid>,
    reps: Vec<Spine>,
    dim: usize,
}

impl PgSymSet {
    pub fn new(pg: Arc<PartialGroupoid>, max_dim: usize) -> Result<Self> {
        let sets = pg.nondegenerate_starry_sets(max_dim, 2_000_000)?;
        let reps: Vec<Spine> = sets
            .into_iter()
            .map(|(base, s)| Spine { base, word: pg.spine_of_starry(base, &s).expect("enumerated simplex") })
            .collect();
        let dim = reps.iter().map(|s| s.dim()).max().unwrap_or(0);
        Ok(Self { pg, reps, dim })
    }

    pub fn nondegenerate_reps(&self) -> &[Spine] {
        &self.reps
    }
}

impl SymSet for PgSymSet {
    fn name(&self) -> String {
        "partial-groupoid".into()
    }

    fn simplices(&self, n: usize) -> Result<Vec<SimplexRef>> {
        let mut seen = HashSet::new();
        for rep in &self.reps {
            let d = rep.dim();
            if d > n {
                continue;
            }
            for beta in surjections(n, d) {
                if let Some(s) = self.pg.act(&beta, rep) {
                    seen.insert(s);
                }
            }
        }
        Ok(seen.into_iter().sorted().map(SimplexRef::Spine).collect())
    }

    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef {
        match x {
            SimplexRef::Spine(s) => SimplexRef::Spine(self.pg.act(alpha, s).expect("action on a simplex")),
            _ => panic!("foreign simplex"),
        }
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.dim)
    }

    fn render(&self, x: &SimplexRef) -> String {
        match x {
            SimplexRef::Spine(s) if s.word.is_empty() => self.pg.objects()[s.base].clone(),
            SimplexRef::Spine(s) => s.word.iter().map(|&e| self.pg.edge_name(e)).join("|"),
            other => render_plain(other),
        }
    }
}

/// `X^op`: `alpha` acts as `tau ∘ alpha ∘ tau`.
pub struct Opposite(pub Arc<dyn SymSet>);

impl SymSet for Opposite {
    fn name(&self) -> String {
        format!("op({})", self.0.name())
    }
    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }
    fn simplices(&self, n: usize) -> Result<Vec<SimplexRef>> {
        self.0.simplices(n)
    }
    fn dim_of(&self, x: &SimplexRef) -> usize {
        self.0.dim_of(x)
    }
    fn render(&self, x: &SimplexRef) -> String {
        self.0.render(x)
    }
    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef {
        let n = self.0.dim_of(x);
        let m = alpha.len() - 1;
        let conj: Vec<usize> = (0..=m).map(|i| n - alpha[m - i]).collect();
        self.0.act(&conj, x)
    }
    fn dimension(&self) -> Option<usize> {
        self.0.dimension()
    }
}

/// Lower (`bottom = true`) or upper décalage: `(dec X)_n = X_{n+1}`.
pub struct Decalage {
    pub inner: Arc<dyn SymSet>,
    pub bottom: bool,
}

impl SymSet for Decalage {
    fn name(&self) -> String {
        format!("dec{}({})", if self.bottom { "_bot" } else { "_top" }, self.inner.name())
    }
    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }
    fn simplices(&self, n: usize) -> Result<Vec<SimplexRef>> {
        self.inner.simplices(n + 1)
    }
    fn dim_of(&self, x: &SimplexRef) -> usize {
        self.inner.dim_of(x) - 1
    }
    fn render(&self, x: &SimplexRef) -> String {
        self.inner.render(x)
    }
    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef {
        let n = self.dim_of(x);
        let ext: Vec<usize> = if self.bottom {
            std::iter::once(0).chain(alpha.iter().map(|&a| a + 1)).collect()
        } else {
            alpha.iter().copied().chain(std::iter::once(n + 1)).collect()
        };
        self.inner.act(&ext, x)
    }
    fn dimension(&self) -> Option<usize> {
        self.inner.dimension().map(|d| d.saturating_sub(1))
    }
}

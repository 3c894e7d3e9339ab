use itertools::Itertools;

use super::{compose_maps, SimplexRef, SymSet};
use crate::error::{Error, Result};

/// Named families whose simplices are functions into `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// All functions `[k] → [n]`.
    Representable(usize),
    /// Functions whose image has at most `m + 1` elements.
    Skeleton { m: usize, n: usize },
    /// Non-surjective functions.
    Boundary(usize),
    /// Functions with image inside some `{i, i+1}`.
    Spine(usize),
    /// Surjections `[k] ↠ [n]` plus a basepoint in each dimension.
    Sphere(usize),
    /// Monotone surjections plus a basepoint; simplicial only.
    SimplicialSphere(usize),
}

pub struct FunctionFamily {
    pub family: Family,
    /// Largest dimension `simplices` will enumerate.
    pub budget_dim: usize,
}

impl FunctionFamily {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::Skeleton { m, n } if m > n => Err(Error::Invalid("skeleton needs m ≤ n".into())),
            Family::Sphere(0) | Family::SimplicialSphere(0) => Err(Error::Invalid("sphere needs n ≥ 1".into())),
            _ => Ok(Self { family, budget_dim: 16 }),
        }
    }

    pub fn target(&self) -> usize {
        match self.family {
            Family::Representable(n)
            | Family::Boundary(n)
            | Family::Spine(n)
            | Family::Sphere(n)
            | Family::SimplicialSphere(n) => n,
            Family::Skeleton { n, .. } => n,
        }
    }

    fn quotient(&self) -> bool {
        matches!(self.family, Family::Sphere(_) | Family::SimplicialSphere(_))
    }

    fn contains(&self, f: &[usize]) -> bool {
        let n = self.target();
        let image = f.iter().unique().count();
        match self.family {
            Family::Representable(_) => true,
            Family::Skeleton { m, .. } => image <= m + 1,
            Family::Boundary(_) => image <= n,
            Family::Spine(_) => {
                let lo = *f.iter().min().unwrap();
                let hi = *f.iter().max().unwrap();
                hi - lo <= 1
            }
            Family::Sphere(_) => image == n + 1,
            Family::SimplicialSphere(_) => image == n + 1 && f.windows(2).all(|p| p[0] <= p[1]),
        }
    }
}

impl SymSet for FunctionFamily {
    fn name(&self) -> String {
        match self.family {
            Family::Representable(n) => format!("representable:{n}"),
            Family::Skeleton { m, n } => format!("skeleton:{m},{n}"),
            Family::Boundary(n) => format!("boundary:{n}"),
            Family::Spine(n) => format!("spine:{n}"),
            Family::Sphere(n) => format!("sphere:{n}"),
            Family::SimplicialSphere(n) => format!("simplicial-sphere:{n}"),
        }
    }

    fn is_symmetric(&self) -> bool {
        !matches!(self.family, Family::SimplicialSphere(_))
    }

    fn simplices(&self, k: usize) -> Result<Vec<SimplexRef>> {
        if k > self.budget_dim {
            return Err(Error::Budget(format!("dimension {k} above enumeration bound")));
        }
        let n = self.target();
        let mut out: Vec<SimplexRef> = if matches!(self.family, Family::SimplicialSphere(_)) {
            // monotone surjections [k] ↠ [n] correspond to n-subsets of the k gaps
            (1..=k)
                .combinations(n)
                .map(|cuts| (0..=k).map(|i| cuts.iter().filter(|&&c| c <= i).count()).collect())
                .map(SimplexRef::Map)
                .collect()
        } else {
            (0..=k)
                .map(|_| 0..=n)
                .multi_cartesian_product()
                .filter(|f| self.contains(f))
                .map(SimplexRef::Map)
                .collect()
        };
        if self.quotient() {
            out.push(SimplexRef::Point(k));
        }
        Ok(out)
    }

    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef {
        let m = alpha.len() - 1;
        match x {
            SimplexRef::Map(f) => {
                let g = compose_maps(f, alpha);
                if self.contains(&g) {
                    SimplexRef::Map(g)
                } else {
                    debug_assert!(self.quotient(), "family closed under the action");
                    SimplexRef::Point(m)
                }
            }
            SimplexRef::Point(_) => SimplexRef::Point(m),
            SimplexRef::Spine(_) => panic!("foreign simplex"),
        }
    }

    fn dimension(&self) -> Option<usize> {
        match self.family {
            Family::Representable(n) => Some(n),
            Family::Skeleton { m, .. } => Some(m),
            Family::Boundary(n) => Some(n.saturating_sub(1)),
            Family::Spine(n) => Some(if n == 0 { 0 } else { 1 }),
            Family::Sphere(n) | Family::SimplicialSphere(n) => Some(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_counts() {
        let s = FunctionFamily::new(Family::Sphere(2)).unwrap();
        // surjections [3] ↠ [2] number 36, plus the basepoint
        assert_eq!(s.simplices(3).unwrap().len(), 37);
        assert_eq!(s.simplices(1).unwrap().len(), 1);
        let t = FunctionFamily::new(Family::SimplicialSphere(1)).unwrap();
        assert_eq!(t.simplices(3).unwrap().len(), 4);
    }

    #[test]
    fn skeleton_counts() {
        let s = FunctionFamily::new(Family::Skeleton { m: 2, n: 4 }).unwrap();
        let x = s.simplices(3).unwrap();
        assert!(x.iter().all(|f| matches!(f, SimplexRef::Map(v) if v.iter().unique().count() <= 3)));
        // 5^4 minus the 120 injections
        assert_eq!(x.len(), 625 - 120);
    }
}

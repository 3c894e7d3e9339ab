//! Partial actions of partial groupoids on finite sets.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::ClosureSpace;
use crate::error::{Error, Result};
use crate::symcore::{EdgeActions, FiniteGroup, PartialGroupoid, PgSymSet, SimplexRef, Spine, Store, SymSet, Violation};

/// Edges of a partial groupoid acting by partial injections on a carrier over its objects.
#[derive(Clone)]
pub struct CharacteristicAction {
    pub base: Arc<PartialGroupoid>,
    pub points: Vec<String>,
    pub acts: Arc<EdgeActions>,
}

/// A finite group acting partially on a finite set.
#[derive(Clone)]
pub struct PartialGroupAction {
    pub group: Arc<FiniteGroup>,
    pub points: Vec<String>,
    /// `maps[g][x]`, when `g · x` is defined.
    pub maps: Vec<Vec<Option<usize>>>,
}

impl CharacteristicAction {
    pub fn new(base: Arc<PartialGroupoid>, points: Vec<String>, acts: EdgeActions) -> Result<Self> {
        if acts.maps.len() != base.edge_count() || acts.maps.iter().any(|m| m.len() != points.len()) {
            return Err(Error::Format("edge action table does not match the base".into()));
        }
        if acts.anchor.len() != points.len() || acts.anchor.iter().any(|&a| a >= base.object_count()) {
            return Err(Error::Format("anchor does not match the carrier".into()));
        }
        if acts.maps.iter().flatten().flatten().any(|&y| y as usize >= points.len()) {
            return Err(Error::Format("edge action leaves the carrier".into()));
        }
        Ok(Self { base, points, acts: Arc::new(acts) })
    }

    pub fn carrier_size(&self) -> usize {
        self.points.len()
    }

    pub fn domain_of_edge(&self, e: usize) -> Vec<usize> {
        self.acts.domain(e)
    }

    /// Points on which the spine word acts successively.
    pub fn domain(&self, word: &[usize]) -> Vec<usize> {
        if word.is_empty() {
            return (0..self.carrier_size()).collect();
        }
        (0..self.carrier_size()).filter(|&x| self.acts.run(word, x).is_some()).collect()
    }

    /// Domain of a simplex through its top row: the intersection of the entry domains.
    pub fn domain_of_simplex(&self, s: &Spine) -> Option<Vec<usize>> {
        let starry = self.base.starry_of(&s.word)?;
        let fiber = self.domain_of_edge(self.base.identity(s.base));
        Some(fiber.into_iter().filter(|&x| starry.iter().all(|&g| self.acts.apply(g, x).is_some())).collect())
    }

    /// Closure space on the carrier generated by the domains of the 1-simplices.
    pub fn closure_space(&self) -> ClosureSpace {
        let gens = (0..self.base.edge_count()).map(|e| self.domain_of_edge(e)).collect();
        ClosureSpace::new(self.carrier_size(), gens)
    }

    /// Per object: the subspace on `dom(id_a)`, generated by domains of edges out of `a`.
    pub fn fiber_spaces(&self) -> Vec<(usize, ClosureSpace, Vec<usize>)> {
        (0..self.base.object_count())
            .map(|a| {
                let fiber = self.domain_of_edge(self.base.identity(a));
                let pos: HashMap<usize, usize> = fiber.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                let gens = (0..self.base.edge_count())
                    .filter(|&e| self.base.edge(e).src == a)
                    .map(|e| self.domain_of_edge(e).iter().filter_map(|x| pos.get(x).copied()).collect())
                    .collect();
                (a, ClosureSpace::new(fiber.len(), gens), fiber)
            })
            .collect()
    }
}

fn violation(op: &str, simplex: Vec<String>, detail: String) -> Violation {
    Violation { operator: op.into(), simplex, detail }
}

/// Checks the action axioms and the characteristic property. Words that are not
/// simplices are sampled (`samples` random words per length) unless `exhaustive`.
pub fn validate_action(a: &CharacteristicAction, samples: usize, exhaustive: bool) -> Vec<Violation> {
    let pg = &a.base;
    let acts = &a.acts;
    let mut out = Vec::new();
    let name = |e: usize| pg.edge_name(e).to_string();
    for e in 0..pg.edge_count() {
        let edge = pg.edge(e);
        let mut images = HashMap::new();
        for x in 0..a.carrier_size() {
            let Some(y) = acts.apply(e, x) else { continue };
            if acts.anchor[x] != edge.src || acts.anchor[y] != edge.tgt {
                out.push(violation("anchor", vec![name(e)], format!("{} ↦ {} breaks the fibers", a.points[x], a.points[y])));
            }
            if let Some(prev) = images.insert(y, x) {
                out.push(violation("injective", vec![name(e)], format!("{} and {} share an image", a.points[prev], a.points[x])));
            }
            if acts.apply(edge.inv, y) != Some(x) {
                out.push(violation("inverse", vec![name(e)], format!("inverse does not return {}", a.points[x])));
            }
        }
    }
    for (obj, &id) in pg.identities().iter().enumerate() {
        for x in 0..a.carrier_size() {
            let expect = (acts.anchor[x] == obj).then_some(x);
            if acts.apply(id, x) != expect {
                out.push(violation("A1", vec![name(id)], format!("identity does not fix the fiber at {}", a.points[x])));
            }
        }
    }
    for (f, g, c) in pg.compositions().sorted() {
        for x in 0..a.carrier_size() {
            if let Some(y) = acts.run(&[f, g], x) {
                if acts.apply(c, x) != Some(y) {
                    out.push(violation("A3", vec![name(f), name(g)], format!("composite disagrees at {}", a.points[x])));
                }
            }
        }
    }
    // every simplex acts somewhere
    let dim = pg.dimension().unwrap_or(0);
    if let Ok(sets) = pg.nondegenerate_starry_sets(dim, 200_000) {
        for (base, set) in sets {
            for perm in set.iter().copied().permutations(set.len()) {
                let Some(word) = pg.spine_of_starry(base, &perm) else { continue };
                let acted = (0..a.carrier_size()).any(|x| acts.anchor[x] == base && acts.run(&word, x).is_some());
                if !acted {
                    out.push(violation("characteristic", word.iter().map(|&e| name(e)).collect(), "simplex acts on no point".into()));
                }
            }
        }
    }
    // every acting word is a simplex, and reversed inverses return home
    let check_word = |word: &[usize], out: &mut Vec<Violation>| {
        for x in 0..a.carrier_size() {
            if acts.run(word, x).is_some() {
                if !pg.is_simplex(word) {
                    out.push(violation("characteristic", word.iter().map(|&e| name(e)).collect(), format!("acts on {} but is no simplex", a.points[x])));
                }
                let back: Vec<usize> = word.iter().rev().map(|&e| pg.inv(e)).collect();
                let full: Vec<usize> = word.iter().copied().chain(back).collect();
                if acts.run(&full, x) != Some(x) {
                    out.push(violation("A6", word.iter().map(|&e| name(e)).collect(), "reversed inverses do not return".into()));
                }
                break;
            }
        }
    };
    let m = pg.edge_count();
    let max_len = (dim + 2).max(3);
    if exhaustive {
        for len in 2..=max_len {
            for word in (0..len).map(|_| 0..m).multi_cartesian_product() {
                if pg.is_composable_chain(&word) {
                    check_word(&word, &mut out);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for len in 2..=max_len {
            for _ in 0..samples {
                let mut word = vec![rng.gen_range(0..m)];
                while word.len() < len {
                    let obj = pg.edge(*word.last().unwrap()).tgt;
                    let next: Vec<usize> = (0..m).filter(|&e| pg.edge(e).src == obj).collect();
                    word.push(next[rng.gen_range(0..next.len())]);
                }
                check_word(&word, &mut out);
            }
        }
    }
    out
}

/// The canonical action: one copy of `[n]` per nondegenerate n-simplex, every ordering
/// included; edge `h` sends `(g, i)` to `(g, j)` when `h` is the `(i, j)` matrix entry.
pub fn canonical_action(pg: &Arc<PartialGroupoid>, budget: usize) -> Result<CharacteristicAction> {
    let dim = pg.dimension()?;
    let mut simplices = Vec::new();
    for (base, set) in pg.nondegenerate_starry_sets(dim, budget)? {
        for perm in set.iter().copied().permutations(set.len()) {
            simplices.push(Spine { base, word: pg.spine_of_starry(base, &perm).expect("simplex") });
            if simplices.len() > budget {
                return Err(Error::Budget("canonical action too large".into()));
            }
        }
    }
    action_on_simplices(pg, &simplices)
}

/// A smaller characteristic action: one copy of `[n]` per maximal simplex, up to reordering.
pub fn compact_action(pg: &Arc<PartialGroupoid>, budget: usize) -> Result<CharacteristicAction> {
    let dim = pg.dimension()?;
    let sets = pg.nondegenerate_starry_sets(dim, budget)?;
    let mut maximal = Vec::new();
    for (base, set) in &sets {
        let extendable = (0..pg.edge_count()).any(|e| {
            pg.edge(e).src == *base && !pg.is_identity(e) && !set.contains(&e) && {
                let mut bigger = set.clone();
                bigger.push(e);
                pg.starry_is_simplex(*base, &bigger)
            }
        });
        if !extendable {
            maximal.push(Spine { base: *base, word: pg.spine_of_starry(*base, set).expect("simplex") });
        }
    }
    action_on_simplices(pg, &maximal)
}

fn action_on_simplices(pg: &Arc<PartialGroupoid>, simplices: &[Spine]) -> Result<CharacteristicAction> {
    let mut points = Vec::new();
    let mut anchor = Vec::new();
    let mut maps = vec![vec![None; 0]; pg.edge_count()];
    let mut offset = Vec::new();
    for s in simplices {
        offset.push(points.len());
        for (i, &v) in pg.vertices(s).iter().enumerate() {
            let label = s.word.iter().map(|&e| pg.edge_name(e)).join("|");
            points.push(format!("[{label}]@{i}"));
            anchor.push(v);
        }
    }
    for m in maps.iter_mut() {
        *m = vec![None; points.len()];
    }
    for (s, &off) in simplices.iter().zip(&offset) {
        let matrix = pg.matrix_form(s).ok_or_else(|| Error::Invalid("simplex without matrix form".into()))?;
        for (i, row) in matrix.iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                maps[h][off + i] = Some((off + j) as u32);
            }
        }
    }
    CharacteristicAction::new(pg.clone(), points, EdgeActions { anchor, maps })
}

/// Restriction of a global action (`ambient[g][x]`) to a subset: `g · s` is defined iff it lands in the subset.
pub fn ambient_restriction(group: Arc<FiniteGroup>, ambient: &[Vec<usize>], subset: &[usize]) -> PartialGroupAction {
    let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let maps = (0..group.order())
        .map(|g| subset.iter().map(|&x| pos.get(&ambient[g][x]).copied()).collect())
        .collect();
    let points = subset.iter().map(|x| x.to_string()).collect();
    PartialGroupAction { group, points, maps }
}

impl PartialGroupAction {
    /// Exel's axioms for a partial action.
    pub fn validate(&self) -> Vec<Violation> {
        let g = &self.group;
        let mut out = Vec::new();
        let name = |a: usize| vec![g.names[a].clone()];
        for x in 0..self.points.len() {
            if self.maps[g.identity()][x] != Some(x) {
                out.push(violation("identity", name(g.identity()), format!("1 does not fix {}", self.points[x])));
            }
        }
        for a in 0..g.order() {
            for x in 0..self.points.len() {
                let Some(y) = self.maps[a][x] else { continue };
                if self.maps[g.inv(a)][y] != Some(x) {
                    out.push(violation("inverse", name(a), format!("inverse fails at {}", self.points[x])));
                }
                for b in 0..g.order() {
                    if let Some(z) = self.maps[b][y] {
                        if self.maps[g.mul(b, a)][x] != Some(z) {
                            out.push(violation("product", vec![g.names[a].clone(), g.names[b].clone()], format!("fails at {}", self.points[x])));
                        }
                    }
                }
            }
        }
        out
    }

    /// Morphisms `x → g·x` of the transporter groupoid.
    pub fn transporter_groupoid(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, m) in self.maps.iter().enumerate() {
            for (x, y) in m.iter().enumerate() {
                if let Some(y) = y {
                    out.push((a, x, *y));
                }
            }
        }
        out
    }
}

/// The image partial group `L_S(G)` with its characteristic action.
pub fn transporter(pa: &PartialGroupAction) -> Result<CharacteristicAction> {
    let maps = &pa.maps;
    let pg = PartialGroupoid::from_group_action(pa.group.clone(), pa.points.len(), &|g, x| maps[g][x])?;
    let Store::Acting(acts) = pg.store().clone() else { unreachable!("group action store") };
    Ok(CharacteristicAction { base: Arc::new(pg), points: pa.points.clone(), acts })
}

/// Commuting tuples act on the maximal abelian subgroups containing them.
pub fn commuting_action(group: Arc<FiniteGroup>) -> Result<CharacteristicAction> {
    let pg = Arc::new(PartialGroupoid::commuting(group.clone())?);
    let subgroups = group.maximal_abelian_subgroups();
    let amb = pg.ambient().expect("ambient group").clone();
    let maps = (0..pg.edge_count())
        .map(|e| {
            let g = amb.element_of_edge[e];
            subgroups.iter().enumerate().map(|(i, s)| s.binary_search(&g).is_ok().then_some(i as u32)).collect()
        })
        .collect();
    let points = subgroups.iter().map(|s| format!("<{}>", s.iter().map(|&g| group.names[g].clone()).join(","))).collect();
    CharacteristicAction::new(pg, points, EdgeActions { anchor: vec![0; subgroups.len()], maps })
}

/// Left multiplication: `g` sends `f` to `g ∘ f` when `[f|g]` is a 2-simplex.
pub fn multiplication_action(pg: &Arc<PartialGroupoid>) -> Result<CharacteristicAction> {
    let m = pg.edge_count();
    let maps = (0..m).map(|g| (0..m).map(|f| pg.compose(f, g).map(|c| c as u32)).collect()).collect();
    let anchor = (0..m).map(|f| pg.edge(f).tgt).collect();
    let points = (0..m).map(|f| pg.edge_name(f).to_string()).collect();
    CharacteristicAction::new(pg.clone(), points, EdgeActions { anchor, maps })
}

/// Conjugation on loops: `g` sends `f` to `g f g⁻¹` when `[g⁻¹|f|g]` is a simplex.
pub fn conjugation_action(pg: &Arc<PartialGroupoid>) -> Result<CharacteristicAction> {
    let loops: Vec<usize> = (0..pg.edge_count()).filter(|&f| pg.edge(f).src == pg.edge(f).tgt).collect();
    let pos: HashMap<usize, usize> = loops.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let maps = (0..pg.edge_count())
        .map(|g| {
            loops
                .iter()
                .map(|&f| {
                    let gi = pg.inv(g);
                    if !pg.is_simplex(&[gi, f, g]) {
                        return None;
                    }
                    let c = pg.compose(pg.compose(gi, f)?, g)?;
                    pos.get(&c).map(|&i| i as u32)
                })
                .collect()
        })
        .collect();
    let anchor = loops.iter().map(|&f| pg.edge(f).src).collect();
    let points = loops.iter().map(|&f| pg.edge_name(f).to_string()).collect();
    Ok(CharacteristicAction { base: pg.clone(), points, acts: Arc::new(EdgeActions { anchor, maps }) })
}

/// Edgewise subdivision: `tw(X)_n = X_{2n+1}`.
pub struct Subdivision(pub Arc<PgSymSet>);

impl SymSet for Subdivision {
    fn name(&self) -> String {
        "tw".into()
    }
    fn simplices(&self, n: usize) -> Result<Vec<SimplexRef>> {
        self.0.simplices(2 * n + 1)
    }
    fn dim_of(&self, x: &SimplexRef) -> usize {
        (x.dim() - 1) / 2
    }
    fn act(&self, alpha: &[usize], x: &SimplexRef) -> SimplexRef {
        let n = self.dim_of(x);
        let m = alpha.len() - 1;
        let ext: Vec<usize> = (0..=m).map(|i| n - alpha[m - i]).chain(alpha.iter().map(|&a| n + 1 + a)).collect();
        self.0.act(&ext, x)
    }
    fn dimension(&self) -> Option<usize> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn s3_on_12() -> PartialGroupAction {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let ambient: Vec<Vec<usize>> = (0..g.order())
            .map(|a| {
                let p = perm_of(&g, a);
                (0..3).map(|x| p[x]).collect()
            })
            .collect();
        ambient_restriction(g, &ambient, &[0, 1])
    }

    fn perm_of(g: &FiniteGroup, a: usize) -> Vec<usize> {
        // recover the permutation from the cycle name
        let mut p: Vec<usize> = (0..3).collect();
        let name = &g.names[a];
        for cyc in name.split(')').filter(|c| c.len() > 1) {
            let pts: Vec<usize> = cyc.trim_start_matches('(').split(' ').map(|s| s.parse::<usize>().unwrap() - 1).collect();
            for k in 0..pts.len() {
                p[pts[k]] = pts[(k + 1) % pts.len()];
            }
        }
        p
    }

    #[test]
    fn s3_partial_action() {
        let pa = s3_on_12();
        assert!(pa.validate().is_empty());
        let t = transporter(&pa).unwrap();
        assert!(validate_action(&t, 50, true).is_empty());
        let g = &pa.group;
        let dom = |name: &str| {
            let a = (0..g.order()).find(|&a| g.names[a] == name).unwrap();
            let e = t.base.edge_by_name(&g.names[a]).unwrap();
            t.domain_of_edge(e)
        };
        assert_eq!(dom("(1 3)"), vec![1]);
        assert_eq!(dom("(1 2)"), vec![0, 1]);
        assert_eq!(dom("(1 2 3)"), vec![0]);
    }

    #[test]
    fn bc2_canonical() {
        let pg = Arc::new(corpus::group_nerve(Arc::new(FiniteGroup::cyclic(2))).unwrap());
        let a = canonical_action(&pg, 1000).unwrap();
        assert_eq!(a.carrier_size(), 3);
        let t = pg.edge_by_name("r1").unwrap();
        assert_eq!(a.domain_of_edge(t).len(), 2);
        assert!(validate_action(&a, 20, true).is_empty());
        let mult = multiplication_action(&pg).unwrap();
        assert_eq!(mult.domain_of_edge(t).len(), 2);
    }

    #[test]
    fn na_canonical_valid() {
        let pg = Arc::new(corpus::na().unwrap());
        let a = canonical_action(&pg, 10_000).unwrap();
        assert!(validate_action(&a, 200, false).is_empty(), "{:?}", validate_action(&a, 200, false));
        let c = compact_action(&pg, 10_000).unwrap();
        assert!(validate_action(&c, 200, false).is_empty());
    }

    #[test]
    fn broken_identity_is_reported() {
        let pg = Arc::new(corpus::group_nerve(Arc::new(FiniteGroup::cyclic(2))).unwrap());
        let a = canonical_action(&pg, 1000).unwrap();
        let mut acts = (*a.acts).clone();
        let id = pg.identity(0);
        acts.maps[id][0] = None;
        let broken = CharacteristicAction::new(pg.clone(), a.points.clone(), acts).unwrap();
        assert!(validate_action(&broken, 10, true).iter().any(|v| v.operator == "A1"));
    }

    #[test]
    fn conjugation_total_on_group() {
        let pg = Arc::new(corpus::group_nerve(Arc::new(FiniteGroup::symmetric(3))).unwrap());
        let cj = conjugation_action(&pg).unwrap();
        assert_eq!(cj.carrier_size(), 6);
        assert!((0..pg.edge_count()).all(|e| cj.domain_of_edge(e).len() == 6));
        let tw = Subdivision(Arc::new(PgSymSet::new(Arc::new(corpus::group_nerve(Arc::new(FiniteGroup::cyclic(2))).unwrap()), 1).unwrap()));
        assert_eq!(tw.simplices(1).unwrap().len(), 8);
    }
}

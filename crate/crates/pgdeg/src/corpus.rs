//! Constructors for the standard examples.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{self, CharacteristicAction, PartialGroupAction};
use crate::error::{Error, Result};
use crate::roots::{self, RootKind};
use crate::symcore::{Edge, Family, FiniteGroup, FunctionFamily, PartialGroupoid, PgSymSet, SymSet};

/// A glued piece: the maximal vertex sets it allows, and the edge label used for a
/// pair of vertices inside it. Pieces sharing a label share that edge.
struct Chart<'a> {
    faces: Vec<Vec<usize>>,
    label: &'a dyn Fn(usize, usize) -> String,
}

/// Partial groupoid whose simplices are vertex sequences lying in a face of one chart.
fn from_charts(vertices: usize, charts: &[Chart]) -> Result<PartialGroupoid> {
    let objects: Vec<String> = (0..vertices).map(|v| v.to_string()).collect();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut endpoints: Vec<(usize, usize, String)> = Vec::new();
    for chart in charts {
        for face in &chart.faces {
            for (&a, &b) in face.iter().cartesian_product(face.iter()) {
                let name = (chart.label)(a, b);
                if !ids.contains_key(&name) {
                    ids.insert(name.clone(), edges.len());
                    edges.push(Edge { name: name.clone(), src: a, tgt: b, inv: usize::MAX });
                    endpoints.push((a, b, name));
                }
            }
        }
    }
    for chart in charts {
        for face in &chart.faces {
            for (&a, &b) in face.iter().cartesian_product(face.iter()) {
                let e = ids[&(chart.label)(a, b)];
                edges[e].inv = ids[&(chart.label)(b, a)];
            }
        }
    }
    let identities: Vec<usize> = (0..vertices)
        .map(|v| {
            charts
                .iter()
                .find_map(|c| c.faces.iter().any(|f| f.contains(&v)).then(|| ids[&(c.label)(v, v)]))
                .ok_or_else(|| Error::Invalid(format!("vertex {v} lies in no chart")))
        })
        .collect::<Result<_>>()?;
    let mut comps: HashMap<(usize, usize), usize> = HashMap::new();
    let mut simplices: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for chart in charts {
        let e = |a: usize, b: usize| ids[&(chart.label)(a, b)];
        for face in &chart.faces {
            for t in face.iter().copied().permutations(3.min(face.len())).filter(|t| t.len() == 3) {
                let key = (e(t[0], t[1]), e(t[1], t[2]));
                let c = e(t[0], t[2]);
                if let Some(&old) = comps.get(&key) {
                    if old != c {
                        return Err(Error::Invalid("charts disagree on a composite".into()));
                    }
                }
                comps.insert(key, c);
            }
            for k in 3..face.len() {
                for seq in face.iter().copied().permutations(k + 1) {
                    let word = seq.windows(2).map(|p| e(p[0], p[1])).collect();
                    simplices.entry(k).or_default().push(word);
                }
            }
        }
    }
    let comps = comps.into_iter().map(|((f, g), c)| (f, g, c)).collect();
    PartialGroupoid::from_words(objects, edges, identities, comps, simplices)
}

fn plain_label(a: usize, b: usize) -> String {
    format!("{a}{b}")
}

/// `sk_m Υ^n` as a word-presented partial groupoid.
pub fn skeleton(m: usize, n: usize) -> Result<PartialGroupoid> {
    if m > n {
        return Err(Error::Invalid("skeleton needs m ≤ n".into()));
    }
    let faces = (0..=n).combinations(m + 1).collect();
    from_charts(n + 1, &[Chart { faces, label: &plain_label }])
}

pub fn representable(n: usize) -> Result<PartialGroupoid> {
    skeleton(n, n)
}

/// `∂Υ^n`, the non-surjective functions.
pub fn boundary(n: usize) -> Result<PartialGroupoid> {
    if n == 0 {
        return Err(Error::Invalid("boundary needs n ≥ 1".into()));
    }
    skeleton(n - 1, n)
}

/// The spine `Sp^n`: consecutive edges only.
pub fn spine(n: usize) -> Result<PartialGroupoid> {
    let faces = (0..n).map(|i| vec![i, i + 1]).collect::<Vec<_>>();
    let faces = if n == 0 { vec![vec![0]] } else { faces };
    from_charts(n + 1, &[Chart { faces, label: &plain_label }])
}

/// The non-associative partial groupoid: two copies of `Υ^3` pieces glued along the
/// spine, with the `03` edge doubled.
pub fn na() -> Result<PartialGroupoid> {
    let front = |a: usize, b: usize| match (a, b) {
        (0, 3) => "03F".to_string(),
        (3, 0) => "30F".to_string(),
        _ => plain_label(a, b),
    };
    let back = |a: usize, b: usize| match (a, b) {
        (0, 3) => "03B".to_string(),
        (3, 0) => "30B".to_string(),
        _ => plain_label(a, b),
    };
    from_charts(
        4,
        &[
            Chart { faces: vec![vec![0, 1, 2], vec![0, 2, 3]], label: &front },
            Chart { faces: vec![vec![0, 1, 3], vec![1, 2, 3]], label: &back },
        ],
    )
}

/// The edges `(f, g, h)` of the non-associative triangle chain in `na()`.
pub fn na_word(pg: &PartialGroupoid) -> [usize; 3] {
    ["01", "12", "23"].map(|n| pg.edge_by_name(n).expect("NA edge"))
}

/// True iff `[f|g], [g|h], [g∘f|h], [f|h∘g]` are simplices and `h∘(g∘f) ≠ (h∘g)∘f`.
pub fn na_universal_check(pg: &PartialGroupoid, f: usize, g: usize, h: usize) -> bool {
    let (Some(gf), Some(hg)) = (pg.compose(f, g), pg.compose(g, h)) else { return false };
    match (pg.compose(gf, h), pg.compose(f, hg)) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

pub fn group_nerve(group: Arc<FiniteGroup>) -> Result<PartialGroupoid> {
    PartialGroupoid::from_group_action(group, 1, &|_, x| Some(x))
}

pub fn bcom(group: Arc<FiniteGroup>) -> Result<PartialGroupoid> {
    PartialGroupoid::commuting(group)
}

pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let (head, num) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
    let k: usize = num.parse().unwrap_or(0);
    match head {
        "S" if k >= 1 => Ok(FiniteGroup::symmetric(k)),
        "C" | "Z" if k >= 1 => Ok(FiniteGroup::cyclic(k)),
        "D" if k >= 3 => Ok(FiniteGroup::dihedral(k)),
        "Q" if k == 8 => Ok(FiniteGroup::quaternion()),
        "A" if k == 4 => {
            let a = vec![1, 2, 0, 3];
            let b = vec![1, 0, 3, 2];
            FiniteGroup::from_permutations(&[a, b])
        }
        "V" if k == 4 => FiniteGroup::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        _ => Err(Error::Format(format!("unknown group {name}"))),
    }
}

/// Left-multiplication action of `G` on itself restricted to a random subset.
pub fn random_lsg(seed: u64, max_order: usize, max_subset: usize) -> Result<PartialGroupAction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = ["S3", "S4", "D4", "D6", "Q8", "A4", "C6", "C12", "D5"];
    let candidates: Vec<FiniteGroup> =
        pool.iter().map(|n| group_by_name(n)).collect::<Result<Vec<_>>>()?.into_iter().filter(|g| g.order() <= max_order).collect();
    let group = candidates.choose(&mut rng).cloned().ok_or_else(|| Error::Invalid("no group small enough".into()))?;
    let n = group.order();
    let size = rng.gen_range(2..=max_subset.min(n));
    let mut elems: Vec<usize> = (0..n).collect();
    elems.shuffle(&mut rng);
    let mut subset: Vec<usize> = elems[..size].to_vec();
    subset.sort_unstable();
    let ambient: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|x| group.mul(g, x)).collect()).collect();
    Ok(action::ambient_restriction(Arc::new(group), &ambient, &subset))
}

/// A corpus entry: a spiny presentation (with an optional preferred action) or a
/// function family.
#[derive(Clone)]
pub enum Presentation {
    Groupoid { pg: Arc<PartialGroupoid>, action: Option<Arc<CharacteristicAction>> },
    Functions(Arc<FunctionFamily>),
}

impl Presentation {
    fn groupoid(pg: PartialGroupoid) -> Self {
        Presentation::Groupoid { pg: Arc::new(pg), action: None }
    }

    pub fn partial_groupoid(&self) -> Option<&Arc<PartialGroupoid>> {
        match self {
            Presentation::Groupoid { pg, .. } => Some(pg),
            _ => None,
        }
    }

    /// Symmetric-set view, enumerating simplices up to `max_dim` nondegenerate dimension.
    pub fn symset(&self, max_dim: usize) -> Result<Arc<dyn SymSet>> {
        Ok(match self {
            Presentation::Groupoid { pg, .. } => Arc::new(PgSymSet::new(pg.clone(), max_dim)?),
            Presentation::Functions(f) => f.clone(),
        })
    }
}

/// Builds a corpus entry from a spec string such as `na`, `sphere:2` or `skeleton:2,4`.
pub fn make(spec: &str) -> Result<Presentation> {
    let spec = spec.strip_prefix("corpus:").unwrap_or(spec);
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums = || -> Result<Vec<usize>> {
        args.split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse().map_err(|_| Error::Format(format!("bad parameter in {spec}"))))
            .collect()
    };
    let one = || -> Result<usize> {
        match nums()?.as_slice() {
            [n] => Ok(*n),
            _ => Err(Error::Format(format!("{kind} takes one parameter"))),
        }
    };
    Ok(match kind {
        "na" => Presentation::groupoid(na()?),
        "reduced-na" => Presentation::groupoid(Arc::new(na()?).reduction()?),
        "representable" => Presentation::groupoid(representable(one()?)?),
        "skeleton" => match nums()?.as_slice() {
            [m, n] => Presentation::groupoid(skeleton(*m, *n)?),
            _ => return Err(Error::Format("skeleton takes m,n".into())),
        },
        "boundary" => Presentation::groupoid(boundary(one()?)?),
        "spine" => Presentation::groupoid(spine(one()?)?),
        "sphere" => Presentation::Functions(Arc::new(FunctionFamily::new(Family::Sphere(one()?))?)),
        "simplicial-sphere" => Presentation::Functions(Arc::new(FunctionFamily::new(Family::SimplicialSphere(one()?))?)),
        "bcom" => {
            let g = Arc::new(group_by_name(args)?);
            let act = action::commuting_action(g.clone())?;
            Presentation::Groupoid { pg: act.base.clone(), action: Some(Arc::new(act)) }
        }
        "group" => Presentation::groupoid(group_nerve(Arc::new(group_by_name(args)?))?),
        "weyl" => {
            let (kind, rank) = RootKind::parse(args)?;
            let rs = roots::RootSystem::build(kind, rank)?;
            let pw = roots::punctured_weyl(&rs, 100_000)?;
            Presentation::Groupoid { pg: pw.action.base.clone(), action: Some(Arc::new(pw.action)) }
        }
        "lsg" => {
            let seed = one()? as u64;
            let pa = random_lsg(seed, 24, 8)?;
            let t = action::transporter(&pa)?;
            Presentation::Groupoid { pg: t.base.clone(), action: Some(Arc::new(t)) }
        }
        _ => return Err(Error::Format(format!("unknown corpus entry {spec}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::validate;

    #[test]
    fn na_is_valid_and_two_dimensional() {
        let pg = na().unwrap();
        assert!(validate(&pg).is_empty(), "{:?}", validate(&pg));
        assert_eq!(pg.dimension().unwrap(), 2);
        let [f, g, h] = na_word(&pg);
        assert!(na_universal_check(&pg, f, g, h));
        assert!(!pg.is_simplex(&[f, g, h]));
        assert!(!pg.is_groupoid());
    }

    #[test]
    fn skeleta_valid() {
        for n in 1..=4 {
            for m in 0..=n {
                let pg = skeleton(m, n).unwrap();
                assert!(validate(&pg).is_empty());
                assert_eq!(pg.dimension().unwrap(), m);
            }
        }
        assert!(representable(3).unwrap().is_groupoid());
        assert!(!boundary(3).unwrap().is_groupoid());
    }

    #[test]
    fn group_nerve_dimension() {
        let pg = group_nerve(Arc::new(FiniteGroup::symmetric(3))).unwrap();
        assert!(pg.is_group());
        assert_eq!(pg.dimension().unwrap(), 5);
    }

    #[test]
    fn group_nerves_have_no_na_word() {
        let pg = group_nerve(Arc::new(FiniteGroup::symmetric(3))).unwrap();
        let m = pg.edge_count();
        for f in 0..m {
            for g in 0..m {
                for h in 0..m {
                    assert!(!na_universal_check(&pg, f, g, h));
                }
            }
        }
    }
}

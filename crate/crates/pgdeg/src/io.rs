//! JSON documents: partial groupoids, group-embedded partial groups, actions and closure spaces.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::action::{self, CharacteristicAction, PartialGroupAction};
use crate::closure::{elements, ClosureSpace};
use crate::corpus::{self, Presentation};
use crate::error::{Error, Result};
use crate::symcore::{Edge, EdgeActions, FiniteGroup, PartialGroupoid, Store};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    PartialGroupoid(PgDoc),
    GroupEmbedded(GroupEmbeddedDoc),
    ClosureSpace(ClosureDoc),
    CharacteristicAction(ActionDoc),
    PartialGroupAction(PartialActionDoc),
    Ambient(AmbientDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub inv: String,
}

/// `compositions` entries `[f, g, c]` mean `c = g ∘ f`; `simplices` lists spine words by dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PgDoc {
    pub objects: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compositions: Vec<[String; 3]>,
    #[serde(default)]
    pub simplices: BTreeMap<String, Vec<Vec<String>>>,
}

/// A finite group by multiplication table (`table[a][b] = a·b`) or permutation generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation_generators: Option<Vec<Vec<usize>>>,
}

/// Partial maps as `element → [[x, y], …]`.
type Maps = BTreeMap<String, Vec<[String; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionBlock {
    pub carrier: Vec<String>,
    pub maps: Maps,
}

/// Word predicates: `all-acting` (a word is a simplex iff it acts on a point of `action`)
/// or `commuting` (pairwise commuting elements); otherwise an explicit `simplices` block
/// over `elements`, including the pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEmbeddedDoc {
    pub group: GroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_predicate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureDoc {
    pub ground: Vec<String>,
    pub generators: Vec<Vec<String>>,
}

/// The base is inline, a path relative to the document, or a corpus spec `corpus:…`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Inline(Box<Document>),
    Reference(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub base: BaseRef,
    pub carrier: Vec<String>,
    pub anchor: BTreeMap<String, String>,
    pub edge_action: Maps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialActionDoc {
    pub group: GroupDoc,
    pub carrier: Vec<String>,
    pub maps: Maps,
}

/// A total action restricted to `subset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientDoc {
    pub gset: PartialActionDoc,
    pub subset: Vec<String>,
}

/// A parsed document.
#[derive(Clone)]
pub enum Loaded {
    Groupoid { pg: Arc<PartialGroupoid>, action: Option<Arc<CharacteristicAction>> },
    Closure { space: ClosureSpace, ground: Vec<String> },
    PartialAction(PartialGroupAction),
}

impl Loaded {
    /// Degree input: partial actions become their image partial group.
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            Loaded::Groupoid { pg, action } => Ok(Presentation::Groupoid { pg: pg.clone(), action: action.clone() }),
            Loaded::PartialAction(pa) => {
                let t = action::transporter(pa)?;
                Ok(Presentation::Groupoid { pg: t.base.clone(), action: Some(Arc::new(t)) })
            }
            Loaded::Closure { .. } => Err(Error::Unsupported("a closure space has no degree".into())),
        }
    }
}

fn lookup(index: &HashMap<&str, usize>, id: &str, what: &str) -> Result<usize> {
    index.get(id).copied().ok_or_else(|| Error::Format(format!("unknown {what} {id:?}")))
}

fn index_of<'a>(ids: &'a [String], what: &str) -> Result<HashMap<&'a str, usize>> {
    let mut out = HashMap::new();
    for (i, id) in ids.iter().enumerate() {
        if out.insert(id.as_str(), i).is_some() {
            return Err(Error::Format(format!("duplicate {what} {id:?}")));
        }
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Document> {
    Ok(serde_json::from_str(text)?)
}

/// Reads and interprets a document; relative base references resolve against its folder.
pub fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    interpret(&parse(&text)?, path.parent())
}

pub fn interpret(doc: &Document, dir: Option<&Path>) -> Result<Loaded> {
    match doc {
        Document::PartialGroupoid(d) => Ok(Loaded::Groupoid { pg: Arc::new(pg_from_doc(d)?), action: None }),
        Document::GroupEmbedded(d) => group_embedded(d),
        Document::ClosureSpace(d) => {
            let idx = index_of(&d.ground, "point")?;
            let gens = d
                .generators
                .iter()
                .map(|g| g.iter().map(|x| lookup(&idx, x, "point")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Loaded::Closure { space: ClosureSpace::new(d.ground.len(), gens), ground: d.ground.clone() })
        }
        Document::CharacteristicAction(d) => {
            let base = match &d.base {
                BaseRef::Inline(inner) => interpret(inner, dir)?,
                BaseRef::Reference(r) if r.starts_with("corpus:") => match corpus::make(r)? {
                    Presentation::Groupoid { pg, action } => Loaded::Groupoid { pg, action },
                    Presentation::Functions(_) => return Err(Error::Unsupported("actions need a partial groupoid base".into())),
                },
                BaseRef::Reference(r) => load(&dir.map_or_else(|| Path::new(r).to_path_buf(), |d| d.join(r)))?,
            };
            let Loaded::Groupoid { pg, .. } = base else {
                return Err(Error::Format("the base of an action must be a partial groupoid".into()));
            };
            let act = action_from_doc(&pg, d)?;
            Ok(Loaded::Groupoid { pg, action: Some(Arc::new(act)) })
        }
        Document::PartialGroupAction(d) => Ok(Loaded::PartialAction(partial_action(d)?)),
        Document::Ambient(d) => {
            let total = partial_action(&d.gset)?;
            if total.maps.iter().flatten().any(|y| y.is_none()) {
                return Err(Error::Invalid("the ambient action must be total".into()));
            }
            let idx = index_of(&total.points, "point")?;
            let subset = d.subset.iter().map(|x| lookup(&idx, x, "point")).collect::<Result<Vec<_>>>()?;
            let ambient: Vec<Vec<usize>> = total.maps.iter().map(|m| m.iter().map(|y| y.expect("total")).collect()).collect();
            let mut pa = action::ambient_restriction(total.group.clone(), &ambient, &subset);
            pa.points = d.subset.clone();
            Ok(Loaded::PartialAction(pa))
        }
    }
}

fn pg_from_doc(d: &PgDoc) -> Result<PartialGroupoid> {
    let objs = index_of(&d.objects, "object")?;
    let ids: Vec<String> = d.edges.iter().map(|e| e.id.clone()).collect();
    let eidx = index_of(&ids, "edge")?;
    let edges = d
        .edges
        .iter()
        .map(|e| {
            Ok(Edge {
                name: e.id.clone(),
                src: lookup(&objs, &e.src, "object")?,
                tgt: lookup(&objs, &e.tgt, "object")?,
                inv: lookup(&eidx, &e.inv, "edge")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let identities = d
        .objects
        .iter()
        .map(|o| {
            let e = d.identities.get(o).ok_or_else(|| Error::Format(format!("object {o:?} has no identity")))?;
            lookup(&eidx, e, "edge")
        })
        .collect::<Result<Vec<_>>>()?;
    let comps = d
        .compositions
        .iter()
        .map(|[f, g, c]| Ok((lookup(&eidx, f, "edge")?, lookup(&eidx, g, "edge")?, lookup(&eidx, c, "edge")?)))
        .collect::<Result<Vec<_>>>()?;
    let simplices = words_block(&d.simplices, &eidx)?;
    PartialGroupoid::from_words(d.objects.clone(), edges, identities, comps, simplices)
}

fn words_block(block: &BTreeMap<String, Vec<Vec<String>>>, eidx: &HashMap<&str, usize>) -> Result<BTreeMap<usize, Vec<Vec<usize>>>> {
    block
        .iter()
        .map(|(n, ws)| {
            let n: usize = n.parse().map_err(|_| Error::Format(format!("bad dimension key {n:?}")))?;
            let ws = ws
                .iter()
                .map(|w| w.iter().map(|e| lookup(eidx, e, "edge")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok((n, ws))
        })
        .collect()
}

fn group_from_doc(d: &GroupDoc) -> Result<FiniteGroup> {
    match (&d.table, &d.permutation_generators) {
        (Some(t), None) => {
            let names = d.elements.clone().unwrap_or_else(|| (0..t.len()).map(|i| i.to_string()).collect());
            index_of(&names, "element")?;
            FiniteGroup::from_table(names, t.clone())
        }
        (None, Some(gens)) => {
            let (perms, _) = FiniteGroup::permutation_closure(gens, 10_000)?;
            let names = match &d.elements {
                Some(n) if n.len() == perms.len() => n.clone(),
                Some(_) => return Err(Error::Format("element names do not match the generated group".into())),
                None => perms.iter().map(|p| p.iter().join(" ")).collect(),
            };
            FiniteGroup::from_named_permutations(perms, names)
        }
        _ => Err(Error::Format("a group needs exactly one of table or permutation_generators".into())),
    }
}

fn maps_from_doc(group: &FiniteGroup, carrier: &[String], maps: &Maps) -> Result<Vec<Vec<Option<usize>>>> {
    let gidx = index_of(&group.names, "element")?;
    let pidx = index_of(carrier, "point")?;
    let mut out = vec![vec![None; carrier.len()]; group.order()];
    for (g, pairs) in maps {
        let g = lookup(&gidx, g, "element")?;
        for [x, y] in pairs {
            let (x, y) = (lookup(&pidx, x, "point")?, lookup(&pidx, y, "point")?);
            if out[g][x].replace(y).is_some() {
                return Err(Error::Format(format!("{} is mapped twice from {}", group.names[g], carrier[x])));
            }
        }
    }
    Ok(out)
}

fn partial_action(d: &PartialActionDoc) -> Result<PartialGroupAction> {
    let group = Arc::new(group_from_doc(&d.group)?);
    let maps = maps_from_doc(&group, &d.carrier, &d.maps)?;
    Ok(PartialGroupAction { group, points: d.carrier.clone(), maps })
}

fn group_embedded(d: &GroupEmbeddedDoc) -> Result<Loaded> {
    let group = Arc::new(group_from_doc(&d.group)?);
    match (d.word_predicate.as_deref(), &d.action, &d.simplices) {
        (Some("all-acting"), Some(block), None) => {
            let maps = maps_from_doc(&group, &block.carrier, &block.maps)?;
            let pa = PartialGroupAction { group, points: block.carrier.clone(), maps };
            let t = action::transporter(&pa)?;
            Ok(Loaded::Groupoid { pg: t.base.clone(), action: Some(Arc::new(t)) })
        }
        (Some("commuting"), None, None) => {
            let act = action::commuting_action(group)?;
            Ok(Loaded::Groupoid { pg: act.base.clone(), action: Some(Arc::new(act)) })
        }
        (None, None, Some(block)) => {
            let names = d.elements.clone().unwrap_or_else(|| group.names.clone());
            let gidx = index_of(&group.names, "element")?;
            let elems = names.iter().map(|n| lookup(&gidx, n, "element")).collect::<Result<Vec<_>>>()?;
            let eidx = index_of(&names, "element")?;
            let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
            let edges = elems
                .iter()
                .map(|&g| {
                    let inv = *pos.get(&group.inv(g)).ok_or_else(|| Error::Invalid(format!("inverse of {} missing", group.names[g])))?;
                    Ok(Edge { name: group.names[g].clone(), src: 0, tgt: 0, inv })
                })
                .collect::<Result<Vec<_>>>()?;
            let id = *pos.get(&group.identity()).ok_or_else(|| Error::Invalid("the identity must be an element".into()))?;
            let mut words = words_block(block, &eidx)?;
            let pairs = words.remove(&2).unwrap_or_default();
            let mut comps = Vec::new();
            for w in &pairs {
                let c = group.mul(elems[w[1]], elems[w[0]]);
                let c = *pos.get(&c).ok_or_else(|| Error::Invalid(format!("composite of {} and {} is not an element", names[w[0]], names[w[1]])))?;
                comps.push((w[0], w[1], c));
            }
            let pg = PartialGroupoid::from_words(vec!["*".into()], edges, vec![id], comps, words)?;
            Ok(Loaded::Groupoid { pg: Arc::new(pg), action: None })
        }
        _ => Err(Error::Format("group-embedded needs word_predicate all-acting with an action, commuting, or a simplices block".into())),
    }
}

fn action_from_doc(pg: &PartialGroupoid, d: &ActionDoc) -> Result<CharacteristicAction> {
    let pidx = index_of(&d.carrier, "point")?;
    let objs = index_of(pg.objects(), "object")?;
    let anchor = d
        .carrier
        .iter()
        .map(|x| {
            let o = d.anchor.get(x).ok_or_else(|| Error::Format(format!("point {x:?} has no anchor")))?;
            lookup(&objs, o, "object")
        })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = vec![vec![None; d.carrier.len()]; pg.edge_count()];
    for (e, pairs) in &d.edge_action {
        let e = pg.edge_by_name(e).ok_or_else(|| Error::Format(format!("unknown edge {e:?}")))?;
        for [x, y] in pairs {
            let (x, y) = (lookup(&pidx, x, "point")?, lookup(&pidx, y, "point")?);
            if maps[e][x].replace(y as u32).is_some() {
                return Err(Error::Format(format!("edge {} maps {} twice", pg.edge_name(e), d.carrier[x])));
            }
        }
    }
    CharacteristicAction::new(Arc::new(pg.clone()), d.carrier.clone(), EdgeActions { anchor, maps })
}

fn pairs_of(points: &[String], map: &[Option<u32>]) -> Vec<[String; 2]> {
    map.iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| [points[x].clone(), points[y as usize].clone()]))
        .collect()
}

fn group_doc(group: &FiniteGroup) -> GroupDoc {
    GroupDoc { elements: Some(group.names.clone()), table: Some(group.table()), permutation_generators: None }
}

/// Canonical document for a partial groupoid. Partial groups inside a group with an
/// acting or commuting rule keep that rule; everything else lists its nondegenerate
/// simplices of dimension at least 3 in every ordering.
pub fn pg_document(pg: &PartialGroupoid, budget: usize) -> Result<Document> {
    pg_document_on(pg, None, budget)
}

fn pg_document_on(pg: &PartialGroupoid, points: Option<&[String]>, budget: usize) -> Result<Document> {
    if let Some(amb) = pg.ambient() {
        let elements: Vec<String> = amb.element_of_edge.iter().map(|&g| amb.group.names[g].clone()).collect();
        match pg.store() {
            Store::Acting(a) if a.anchor.iter().all(|&o| o == 0) => {
                let carrier: Vec<String> = points.map_or_else(|| (0..a.points()).map(|x| x.to_string()).collect(), <[String]>::to_vec);
                let maps = (0..pg.edge_count()).map(|e| (elements[e].clone(), pairs_of(&carrier, &a.maps[e]))).collect();
                return Ok(Document::GroupEmbedded(GroupEmbeddedDoc {
                    group: group_doc(&amb.group),
                    word_predicate: Some("all-acting".into()),
                    action: Some(ActionBlock { carrier, maps }),
                    elements: None,
                    simplices: None,
                }));
            }
            Store::Commuting(_) if elements.len() == amb.group.order() => {
                return Ok(Document::GroupEmbedded(GroupEmbeddedDoc {
                    group: group_doc(&amb.group),
                    word_predicate: Some("commuting".into()),
                    action: None,
                    elements: None,
                    simplices: None,
                }));
            }
            _ => {}
        }
    }
    let name = |e: usize| pg.edge_name(e).to_string();
    let edges = pg
        .edges()
        .iter()
        .map(|e| EdgeDoc {
            id: e.name.clone(),
            src: pg.objects()[e.src].clone(),
            tgt: pg.objects()[e.tgt].clone(),
            inv: name(e.inv),
        })
        .collect();
    let identities = pg.identities().iter().enumerate().map(|(a, &e)| (pg.objects()[a].clone(), name(e))).collect();
    let mut compositions: Vec<[String; 3]> = pg.compositions().map(|(f, g, c)| [name(f), name(g), name(c)]).collect();
    compositions.sort();
    let dim = pg.dimension()?;
    let mut simplices: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for (base, set) in pg.nondegenerate_starry_sets(dim, budget)? {
        if set.len() < 3 {
            continue;
        }
        for perm in set.iter().copied().permutations(set.len()) {
            let word = pg.spine_of_starry(base, &perm).expect("simplex");
            simplices.entry(set.len().to_string()).or_default().push(word.into_iter().map(name).collect());
        }
    }
    for ws in simplices.values_mut() {
        ws.sort();
    }
    Ok(Document::PartialGroupoid(PgDoc { objects: pg.objects().to_vec(), edges, identities, compositions, simplices }))
}

pub fn action_document(act: &CharacteristicAction, budget: usize) -> Result<Document> {
    let base = pg_document(&act.base, budget)?;
    let anchor = act.points.iter().zip(&act.acts.anchor).map(|(x, &o)| (x.clone(), act.base.objects()[o].clone())).collect();
    let edge_action = (0..act.base.edge_count())
        .map(|e| (act.base.edge_name(e).to_string(), pairs_of(&act.points, &act.acts.maps[e])))
        .filter(|(_, p)| !p.is_empty())
        .collect();
    Ok(Document::CharacteristicAction(ActionDoc { base: BaseRef::Inline(Box::new(base)), carrier: act.points.clone(), anchor, edge_action }))
}

pub fn closure_document(cs: &ClosureSpace, ground: &[String]) -> Document {
    let generators = cs.generators().iter().map(|g| elements(g).into_iter().map(|x| ground[x].clone()).collect()).collect();
    Document::ClosureSpace(ClosureDoc { ground: ground.to_vec(), generators })
}

/// Document for a corpus presentation, with its preferred action when it has one.
pub fn presentation_document(p: &Presentation, budget: usize) -> Result<Document> {
    match p {
        // an acting store already carries its action
        Presentation::Groupoid { pg, action: Some(a) } if matches!(pg.store(), Store::Acting(s) if **s == *a.acts) => {
            pg_document_on(pg, Some(&a.points), budget)
        }
        Presentation::Groupoid { action: Some(a), .. } => action_document(a, budget),
        Presentation::Groupoid { pg, action: None } => pg_document(pg, budget),
        Presentation::Functions(_) => Err(Error::Unsupported("function families have no finite document".into())),
    }
}

pub fn to_json(doc: &Document) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)?)
}

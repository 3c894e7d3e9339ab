use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub inv: usize,
}

/// Per-edge partial maps on a finite carrier, anchored over objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeActions {
    pub anchor: Vec<usize>,
    /// `maps[e][x]` is the image of point `x` under edge `e`, when defined.
    pub maps: Vec<Vec<Option<u32>>>,
}

impl EdgeActions {
    pub fn points(&self) -> usize {
        self.anchor.len()
    }

    pub fn apply(&self, e: usize, x: usize) -> Option<usize> {
        self.maps[e][x].map(|y| y as usize)
    }

    /// Final point if the spine word acts successively starting from `x`.
    pub fn run(&self, word: &[usize], x: usize) -> Option<usize> {
        word.iter().try_fold(x, |p, &e| self.apply(e, p))
    }

    pub fn domain(&self, e: usize) -> Vec<usize> {
        (0..self.points()).filter(|&x| self.maps[e][x].is_some()).collect()
    }
}

/// How higher simplices are decided.
#[derive(Clone)]
pub enum Store {
    /// Explicit spine words of dimension ≥ 3.
    Words(BTreeMap<usize, HashSet<Vec<usize>>>),
    /// A word is a simplex iff it acts on some point.
    Acting(Arc<EdgeActions>),
    /// A word is a simplex iff its letters pairwise commute in the ambient group.
    Commuting(Arc<Vec<Vec<bool>>>),
    /// A word is a simplex iff it lifts to a simplex of `base` (the reduction).
    Lifted { base: Arc<PartialGroupoid>, lift: Vec<Option<usize>> },
}

#[derive(Clone)]
pub struct Ambient {
    pub group: Arc<FiniteGroup>,
    pub element_of_edge: Vec<usize>,
}

/// A finite partial groupoid: objects, edges with inverses and identities, a partial
/// composition (the 2-simplices) and a rule deciding the higher simplices.
#[derive(Clone)]
pub struct PartialGroupoid {
    objects: Vec<String>,
    edges: Vec<Edge>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    store: Store,
    ambient: Option<Ambient>,
    edge_index: HashMap<String, usize>,
    is_identity: Vec<bool>,
}

/// A simplex: base object (vertex 0) and spine word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Spine {
    pub base: usize,
    pub word: Vec<usize>,
}

impl Spine {
    pub fn dim(&self) -> usize {
        self.word.len()
    }
}

impl PartialGroupoid {
    /// Builds a word-presented partial groupoid. Degenerate compositions forced by the
    /// identity and inverse axioms are filled in when absent.
    pub fn from_words(
        objects: Vec<String>,
        edges: Vec<Edge>,
        identities: Vec<usize>,
        compositions: Vec<(usize, usize, usize)>,
        simplices: BTreeMap<usize, Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let words = simplices
            .into_iter()
            .map(|(n, ws)| {
                for w in &ws {
                    if w.len() != n || w.iter().any(|&e| e >= edges.len()) {
                        return Err(Error::Format(format!("bad {n}-simplex word {w:?}")));
                    }
                }
                Ok((n, ws.into_iter().collect::<HashSet<_>>()))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut pg = Self::skeleton(objects, edges, identities, Store::Words(words), None)?;
        for (f, g, c) in compositions {
            if f >= pg.edges.len() || g >= pg.edges.len() || c >= pg.edges.len() {
                return Err(Error::Format("composition references an unknown edge".into()));
            }
            pg.compose.insert((f, g), c);
        }
        pg.add_forced_compositions();
        Ok(pg)
    }

    fn skeleton(objects: Vec<String>, edges: Vec<Edge>, identities: Vec<usize>, store: Store, ambient: Option<Ambient>) -> Result<Self> {
        if identities.len() != objects.len() {
            return Err(Error::Format("one identity per object required".into()));
        }
        for e in &edges {
            if e.src >= objects.len() || e.tgt >= objects.len() || e.inv >= edges.len() {
                return Err(Error::Format(format!("edge {} has a dangling reference", e.name)));
            }
        }
        if identities.iter().any(|&i| i >= edges.len()) {
            return Err(Error::Format("identity references an unknown edge".into()));
        }
        let mut is_identity = vec![false; edges.len()];
        for &i in &identities {
            is_identity[i] = true;
        }
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.name.clone(), i)).collect();
        Ok(Self { objects, edges, identities, compose: HashMap::new(), store, ambient, edge_index, is_identity })
    }

    fn add_forced_compositions(&mut self) {
        for f in 0..self.edges.len() {
            let e = &self.edges[f];
            let (src, tgt, inv) = (e.src, e.tgt, e.inv);
            self.compose.entry((f, self.identities[tgt])).or_insert(f);
            self.compose.entry((self.identities[src], f)).or_insert(f);
            self.compose.entry((f, inv)).or_insert(self.identities[src]);
        }
    }

    /// Partial group embedded in a finite group: edges are the group elements acting on
    /// some point, and a word is a simplex iff it acts on some point.
    pub fn from_group_action(group: Arc<FiniteGroup>, carrier: usize, act: &dyn Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        let n = group.order();
        let acting: Vec<usize> = (0..n).filter(|&g| (0..carrier).any(|x| act(g, x).is_some())).collect();
        if acting.is_empty() {
            return Err(Error::EmptyPartialGroup);
        }
        let maps = acting
            .iter()
            .map(|&g| (0..carrier).map(|x| act(g, x).map(|y| y as u32)).collect())
            .collect();
        let actions = EdgeActions { anchor: vec![0; carrier], maps };
        Self::group_embedded(group, acting, Store::Acting(Arc::new(actions)))
    }

    /// The commuting-tuple partial group of a finite group.
    pub fn commuting(group: Arc<FiniteGroup>) -> Result<Self> {
        let elems: Vec<usize> = (0..group.order()).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| group.commute(a, b)).collect()).collect();
        Self::group_embedded(group, elems, Store::Commuting(Arc::new(table)))
    }

    /// Edges `elements` (must contain the identity and be closed under inverses).
    pub fn group_embedded(group: Arc<FiniteGroup>, elements: Vec<usize>, store: Store) -> Result<Self> {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let id = *pos.get(&group.identity()).ok_or(Error::EmptyPartialGroup)?;
        let mut edges = Vec::with_capacity(elements.len());
        for &g in &elements {
            let inv = *pos
                .get(&group.inv(g))
                .ok_or_else(|| Error::Invalid(format!("inverse of {} missing", group.names[g])))?;
            edges.push(Edge { name: group.names[g].clone(), src: 0, tgt: 0, inv });
        }
        let ambient = Ambient { group: group.clone(), element_of_edge: elements.clone() };
        let mut pg = Self::skeleton(vec!["*".into()], edges, vec![id], store, Some(ambient))?;
        for (i, &f) in elements.iter().enumerate() {
            for (j, &g) in elements.iter().enumerate() {
                if let Some(&c) = pos.get(&group.mul(g, f)) {
                    if pg.higher_is_simplex(&[i, j]) {
                        pg.compose.insert((i, j), c);
                    }
                }
            }
        }
        Ok(pg)
    }

    /// The reduction: one object, the nonidentity edges and a single identity.
    pub fn reduction(self: &Arc<Self>) -> Result<Self> {
        let mut lift = vec![None];
        let mut index = vec![0usize; self.edges.len()];
        let mut edges = vec![Edge { name: "1".into(), src: 0, tgt: 0, inv: 0 }];
        for (e, edge) in self.edges.iter().enumerate() {
            if !self.is_identity[e] {
                index[e] = edges.len();
                lift.push(Some(e));
                edges.push(Edge { name: edge.name.clone(), src: 0, tgt: 0, inv: 0 });
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if !self.is_identity[e] {
                edges[index[e]].inv = index[edge.inv];
            }
        }
        let store = Store::Lifted { base: self.clone(), lift };
        let mut pg = Self::skeleton(vec!["*".into()], edges, vec![0], store, None)?;
        let m = pg.edges.len();
        for f in 0..m {
            for g in 0..m {
                if let Some(word) = pg.lift_word(&[f, g]) {
                    if let Some(c) = self.compose(word[0], word[1]) {
                        pg.compose.insert((f, g), index[c]);
                    }
                }
            }
        }
        Ok(pg)
    }

    /// The opposite partial groupoid: edges reversed, spine words reversed.
    pub fn opposite(&self) -> Self {
        let mut op = self.clone();
        for e in op.edges.iter_mut() {
            std::mem::swap(&mut e.src, &mut e.tgt);
        }
        op.compose = self.compose.iter().map(|(&(f, g), &c)| ((g, f), c)).collect();
        op.store = match &self.store {
            Store::Words(words) => Store::Words(
                words
                    .iter()
                    .map(|(&n, ws)| (n, ws.iter().map(|w| w.iter().rev().copied().collect()).collect()))
                    .collect(),
            ),
            Store::Acting(a) => {
                // the inverse edge acts backwards along the reversed word
                let maps = (0..self.edges.len()).map(|e| a.maps[self.edges[e].inv].clone()).collect();
                Store::Acting(Arc::new(EdgeActions { anchor: a.anchor.clone(), maps }))
            }
            Store::Commuting(t) => Store::Commuting(t.clone()),
            Store::Lifted { base, lift } => Store::Lifted { base: Arc::new(base.opposite()), lift: lift.clone() },
        };
        op
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edge_index.get(name).copied()
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn identity(&self, obj: usize) -> usize {
        self.identities[obj]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, e: usize) -> bool {
        self.is_identity[e]
    }

    pub fn inv(&self, e: usize) -> usize {
        self.edges[e].inv
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn compositions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.compose.iter().map(|(&(f, g), &c)| (f, g, c))
    }

    /// `g ∘ f`, defined iff `[f|g]` is a 2-simplex.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn is_composable_chain(&self, word: &[usize]) -> bool {
        word.windows(2).all(|p| self.edges[p[0]].tgt == self.edges[p[1]].src)
    }

    /// Starry word (edges out of vertex 0) of a spine word, if the partial composites exist.
    pub fn starry_of(&self, word: &[usize]) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(word.len());
        for (i, &f) in word.iter().enumerate() {
            out.push(if i == 0 { f } else { self.compose(out[i - 1], f)? });
        }
        Some(out)
    }

    /// Spine word with the given starry word out of `base`.
    pub fn spine_of_starry(&self, base: usize, starry: &[usize]) -> Option<Vec<usize>> {
        let mut prev = self.identities[base];
        let mut out = Vec::with_capacity(starry.len());
        for &g in starry {
            if self.edges[g].src != base {
                return None;
            }
            out.push(self.compose(self.inv(prev), g)?);
            prev = g;
        }
        Some(out)
    }

    pub fn is_simplex(&self, word: &[usize]) -> bool {
        if word.is_empty() {
            return true;
        }
        if !self.is_composable_chain(word) {
            return false;
        }
        match word.len() {
            1 => true,
            2 => self.compose(word[0], word[1]).is_some(),
            _ => self.higher_is_simplex(word),
        }
    }

    pub fn starry_is_simplex(&self, base: usize, starry: &[usize]) -> bool {
        match self.spine_of_starry(base, starry) {
            Some(w) => self.is_simplex(&w),
            None => false,
        }
    }

    fn higher_is_simplex(&self, word: &[usize]) -> bool {
        match &self.store {
            Store::Words(words) => self.word_store_member(words, word),
            Store::Acting(a) => {
                let src = self.edges[word[0]].src;
                (0..a.points()).any(|x| a.anchor[x] == src && a.run(word, x).is_some())
            }
            Store::Commuting(table) => {
                let amb = self.ambient.as_ref().expect("commuting store has an ambient group");
                let elems: Vec<usize> = word.iter().map(|&e| amb.element_of_edge[e]).collect();
                elems.iter().enumerate().all(|(i, &a)| elems[i + 1..].iter().all(|&b| table[a][b]))
            }
            Store::Lifted { base, .. } => match self.lift_word(word) {
                Some(w) => base.is_simplex(&w),
                None => false,
            },
        }
    }

    fn lift_word(&self, word: &[usize]) -> Option<Vec<usize>> {
        let Store::Lifted { base, lift } = &self.store else { return None };
        let mut obj = match word.iter().find_map(|&e| lift[e]) {
            None => return Some(vec![base.identities[0]; word.len()]),
            Some(f) => base.edges[f].src,
        };
        let mut out = Vec::with_capacity(word.len());
        for &e in word {
            let f = match lift[e] {
                Some(f) if base.edges[f].src == obj => f,
                Some(_) => return None,
                None => base.identities[obj],
            };
            obj = base.edges[f].tgt;
            out.push(f);
        }
        Some(out)
    }

    fn word_store_member(&self, words: &BTreeMap<usize, HashSet<Vec<usize>>>, word: &[usize]) -> bool {
        let n = word.len();
        let Some(starry) = self.starry_of(word) else { return false };
        if n <= 2 {
            return true;
        }
        let base = self.edges[word[0]].src;
        if let Some((i, j)) = self.repeated_vertex(base, &starry) {
            let face = match self.face(&Spine { base, word: word.to_vec() }, j) {
                Some(f) => f,
                None => return false,
            };
            if !self.is_simplex(&face.word) {
                return false;
            }
            let alpha: Vec<usize> = (0..=n).map(|k| if k == j { i } else if k < j { k } else { k - 1 }).collect();
            return self.act(&alpha, &face).map_or(false, |s| s.word == word);
        }
        words.get(&n).map_or(false, |ws| ws.contains(word))
    }

    /// First pair `i < j` of vertices with equal top-row entries (vertex 0 counts as the identity).
    fn repeated_vertex(&self, base: usize, starry: &[usize]) -> Option<(usize, usize)> {
        let id = self.identities[base];
        for j in 1..=starry.len() {
            if starry[j - 1] == id {
                return Some((0, j));
            }
            for i in 1..j {
                if starry[i - 1] == starry[j - 1] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Objects at the vertices of a simplex.
    pub fn vertices(&self, s: &Spine) -> Vec<usize> {
        let mut v = vec![s.base];
        v.extend(s.word.iter().map(|&e| self.edges[e].tgt));
        v
    }

    /// The full matrix `(ε_ij)^*` of a simplex.
    pub fn matrix_form(&self, s: &Spine) -> Option<Vec<Vec<usize>>> {
        let mut top = vec![self.identities[s.base]];
        top.extend(self.starry_of(&s.word)?);
        let n = s.word.len();
        let mut m = vec![vec![0; n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                m[i][j] = if i == j {
                    self.identities[self.edges[top[i]].tgt]
                } else {
                    self.compose(self.inv(top[i]), top[j])?
                };
            }
        }
        Some(m)
    }

    pub fn is_nondegenerate(&self, s: &Spine) -> bool {
        match self.starry_of(&s.word) {
            Some(starry) => self.repeated_vertex(s.base, &starry).is_none(),
            None => false,
        }
    }

    /// Action of `alpha: [m] → [n]` on an n-simplex.
    pub fn act(&self, alpha: &[usize], s: &Spine) -> Option<Spine> {
        let m = self.matrix_form(s)?;
        let verts = self.vertices(s);
        let word = alpha.windows(2).map(|p| m[p[0]][p[1]]).collect();
        Some(Spine { base: verts[alpha[0]], word })
    }

    /// Face `d_i`, deleting vertex `i`.
    pub fn face(&self, s: &Spine, i: usize) -> Option<Spine> {
        let n = s.dim();
        let alpha: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        self.act(&alpha, s)
    }

    /// All nondegenerate simplices as sorted starry sets per base object, up to `max_dim`.
    /// Returns `(base, starry)` pairs; `budget` bounds the total count.
    pub fn nondegenerate_starry_sets(&self, max_dim: usize, budget: usize) -> Result<Vec<(usize, Vec<usize>)>> {
        let mut out = Vec::new();
        for base in 0..self.objects.len() {
            let out_edges: Vec<usize> =
                (0..self.edges.len()).filter(|&e| self.edges[e].src == base && !self.is_identity[e]).collect();
            let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
            while let Some((set, start)) = stack.pop() {
                if out.len() >= budget {
                    return Err(Error::Budget(format!("more than {budget} nondegenerate simplices")));
                }
                if set.len() < max_dim {
                    for k in start..out_edges.len() {
                        let mut next = set.clone();
                        next.push(out_edges[k]);
                        if self.starry_is_simplex(base, &next) {
                            stack.push((next, k + 1));
                        }
                    }
                }
                out.push((base, set));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Largest dimension of a nondegenerate simplex.
    pub fn dimension(&self) -> Result<usize> {
        if let Store::Acting(a) = &self.store {
            // a starry set is a simplex iff its entries share a point of their domains
            let mut best = 0;
            for x in 0..a.points() {
                let k = (0..self.edges.len()).filter(|&e| !self.is_identity[e] && a.maps[e][x].is_some()).count();
                best = best.max(k);
            }
            return Ok(best);
        }
        let sets = self.nondegenerate_starry_sets(self.edges.len(), 5_000_000)?;
        Ok(sets.iter().map(|(_, s)| s.len()).max().unwrap_or(0))
    }

    /// Nerve-of-groupoid test: composition total on composable pairs and every word
    /// whose two maximal proper consecutive subwords are simplices is a simplex.
    pub fn is_groupoid(&self) -> bool {
        self.groupoid_failure().is_none()
    }

    pub fn is_group(&self) -> bool {
        self.objects.len() == 1 && self.is_groupoid()
    }

    /// A composable word whose prefix and suffix are simplices but which is not one.
    /// Only words whose top rows are distinct nonidentities are explored; degenerate
    /// words lift exactly when their collapsed word does.
    pub fn groupoid_failure(&self) -> Option<Vec<usize>> {
        let m = self.edges.len();
        for f in 0..m {
            for g in 0..m {
                if self.edges[f].tgt == self.edges[g].src && self.compose(f, g).is_none() {
                    return Some(vec![f, g]);
                }
            }
        }
        // (word, starry word) pairs of nondegenerate simplices
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> =
            (0..m).filter(|&f| !self.is_identity[f]).map(|f| (vec![f], vec![f])).collect();
        while let Some((w, starry)) = stack.pop() {
            let base = self.edges[w[0]].src;
            let last = self.edges[*w.last().unwrap()].tgt;
            for h in 0..m {
                if self.edges[h].src != last {
                    continue;
                }
                let mut next = w.clone();
                next.push(h);
                let top = self.compose(*starry.last().unwrap(), h);
                if let Some(t) = top {
                    let mut s = starry.clone();
                    s.push(t);
                    if self.repeated_vertex(base, &s).is_some() {
                        continue;
                    }
                    if self.is_simplex(&next[1..]) {
                        if !self.is_simplex(&next) {
                            return Some(next);
                        }
                        stack.push((next, s));
                    }
                } else if self.is_simplex(&next[1..]) {
                    return Some(next);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc2() -> PartialGroupoid {
        PartialGroupoid::commuting(Arc::new(FiniteGroup::cyclic(2))).unwrap()
    }

    #[test]
    fn bc2_words() {
        let pg = bc2();
        let t = pg.edge_by_name("r1").unwrap();
        let id = pg.identity(0);
        assert!(pg.is_simplex(&[t, t, t]));
        assert!(!pg.is_nondegenerate(&Spine { base: 0, word: vec![t, t] }));
        assert!(pg.is_nondegenerate(&Spine { base: 0, word: vec![t] }));
        assert_eq!(pg.compose(t, t), Some(id));
        assert!(pg.is_group());
        assert_eq!(pg.dimension().unwrap(), 1);
    }

    #[test]
    fn s3_matrix_entry() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let pg = PartialGroupoid::commuting(g.clone()).unwrap();
        // a transposition and a 3-cycle do not commute
        let t = (0..g.order()).find(|&a| g.mul(a, a) == g.identity() && a != g.identity()).unwrap();
        let c = (0..g.order()).find(|&a| g.mul(a, g.mul(a, a)) == g.identity() && a != g.identity()).unwrap();
        assert!(!pg.is_simplex(&[t, c]));
        assert!(pg.is_simplex(&[c, c]));
        assert!(!pg.is_group());
    }
}

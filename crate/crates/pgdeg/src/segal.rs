//! Higher Segal conditions: gapped sets, unique-filler checks over arbitrary
//! presentations, and word-level checks for partial groupoids.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symcore::{Decalage, PartialGroupoid, PgSymSet, SimplexRef, Spine, SymSet};

/// A subset of `[n]` whose members are pairwise at least two apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GappedSet {
    pub ambient: usize,
    pub members: Vec<usize>,
}

impl GappedSet {
    pub fn new(ambient: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.iter().any(|&i| i > ambient) || members.windows(2).any(|p| p[1] < p[0] + 2) {
            return Err(Error::Invalid(format!("{members:?} is not gapped in [{ambient}]")));
        }
        Ok(Self { ambient, members })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "variant", content = "k")]
pub enum SegalVariant {
    LowerOdd(usize),
    LowerEven(usize),
    UpperEven(usize),
    UpperOdd(usize),
}

impl SegalVariant {
    pub fn parse(name: &str, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Format("k must be positive".into()));
        }
        Ok(match name {
            "lower-odd" => SegalVariant::LowerOdd(k),
            "lower-even" => SegalVariant::LowerEven(k),
            "upper-even" => SegalVariant::UpperEven(k),
            "upper-odd" => SegalVariant::UpperOdd(k),
            _ => return Err(Error::Format(format!("unknown variant {name}"))),
        })
    }

    pub fn k(self) -> usize {
        match self {
            SegalVariant::LowerOdd(k) | SegalVariant::LowerEven(k) | SegalVariant::UpperEven(k) | SegalVariant::UpperOdd(k) => k,
        }
    }

    /// The `d` in "d-Segal".
    pub fn level(self) -> usize {
        let k = self.k();
        match self {
            SegalVariant::LowerOdd(_) => 2 * k - 1,
            SegalVariant::LowerEven(_) | SegalVariant::UpperEven(_) => 2 * k,
            SegalVariant::UpperOdd(_) => 2 * k + 1,
        }
    }

    fn excludes_bottom(self) -> bool {
        matches!(self, SegalVariant::LowerEven(_) | SegalVariant::UpperOdd(_))
    }

    fn excludes_top(self) -> bool {
        matches!(self, SegalVariant::UpperEven(_) | SegalVariant::UpperOdd(_))
    }

    pub fn with_k(self, k: usize) -> Self {
        match self {
            SegalVariant::LowerOdd(_) => SegalVariant::LowerOdd(k),
            SegalVariant::LowerEven(_) => SegalVariant::LowerEven(k),
            SegalVariant::UpperEven(_) => SegalVariant::UpperEven(k),
            SegalVariant::UpperOdd(_) => SegalVariant::UpperOdd(k),
        }
    }
}

impl std::fmt::Display for SegalVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = match self {
            SegalVariant::LowerOdd(_) | SegalVariant::LowerEven(_) => "lower",
            _ => "upper",
        };
        write!(f, "{side} {}-Segal", self.level())
    }
}

/// Gapped subsets of `[n]` of the given size obeying the variant's endpoint exclusions.
pub fn gapped_subsets(n: usize, size: usize, variant: SegalVariant) -> Vec<GappedSet> {
    let lo = usize::from(variant.excludes_bottom());
    if variant.excludes_top() && n == 0 {
        return Vec::new();
    }
    let hi = if variant.excludes_top() { n - 1 } else { n };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(next: usize, hi: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        // the remaining members occupy at least 2(need - 1) + 1 positions
        for i in next..=hi {
            if i + 2 * (need - 1) > hi {
                break;
            }
            cur.push(i);
            rec(i + 2, hi, size, cur, out);
            cur.pop();
        }
    }
    if size == 0 || lo > hi {
        return out;
    }
    let mut raw = Vec::new();
    rec(lo, hi, size, &mut cur, &mut raw);
    out.extend(raw.into_iter().map(|members| GappedSet { ambient: n, members }));
    out
}

/// Which subsets `I ⊂ [n]` a check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetMode {
    /// Gapped sets subject to the variant's endpoint exclusions.
    Gapped,
    /// Gapped sets that contain both `0` and `n`.
    Endpoints,
    /// Every subset of `[n] ∖ 0` (symmetric inputs only).
    Starry,
}

fn subsets_for(n: usize, variant: SegalVariant, mode: SubsetMode) -> Vec<Vec<usize>> {
    let size = variant.k() + 1;
    match mode {
        SubsetMode::Gapped => gapped_subsets(n, size, variant).into_iter().map(|g| g.members).collect(),
        SubsetMode::Endpoints => gapped_subsets(n, size, variant)
            .into_iter()
            .filter(|g| g.members.first() == Some(&0) && g.members.last() == Some(&n))
            .map(|g| g.members)
            .collect(),
        SubsetMode::Starry => (1..=n).combinations(size).collect(),
    }
}

/// How the failing datum of a witness is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordForm {
    /// Spine word `(f_1, …, f_n)`, inner faces by composing neighbours.
    Spine,
    /// Starry word `(g_1, …, g_n)` out of `base`; face `i` deletes `g_i`.
    Starry,
    /// A compatible family of faces of an arbitrary presentation.
    Family,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLift {
    pub i: usize,
    pub lift: Vec<String>,
}

/// A failure of a unique-filler condition at `[n]` and the index set `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalWitness {
    pub n: usize,
    #[serde(rename = "I")]
    pub index_set: Vec<usize>,
    pub form: WordForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// The word that does not lift (empty for families).
    pub word: Vec<String>,
    pub faces: Vec<FaceLift>,
    /// Fillers found for the family: none, or at least two.
    #[serde(default)]
    pub fillers: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum SegalOutcome {
    Pass { n_max: usize },
    Fail { witness: SegalWitness },
}

impl SegalOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SegalOutcome::Pass { .. })
    }

    pub fn witness(&self) -> Option<&SegalWitness> {
        match self {
            SegalOutcome::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Simplices of one dimension, interned, with face ids into the dimension below.
struct Level {
    simplices: Vec<SimplexRef>,
    index: HashMap<SimplexRef, u32>,
    /// `faces[x * stride + i]` is the id of `d_i x`.
    faces: Vec<u32>,
    stride: usize,
}

impl Level {
    fn face(&self, x: u32, i: usize) -> u32 {
        self.faces[x as usize * self.stride + i]
    }
}

struct Levels<'a> {
    p: &'a dyn SymSet,
    cache: HashMap<usize, Arc<Level>>,
}

impl<'a> Levels<'a> {
    fn new(p: &'a dyn SymSet) -> Self {
        Self { p, cache: HashMap::new() }
    }

    fn get(&mut self, n: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.cache.get(&n) {
            return Ok(l.clone());
        }
        let below = if n > 0 { Some(self.get(n - 1)?) } else { None };
        let simplices = self.p.simplices(n)?;
        if simplices.len() >= u32::MAX as usize {
            return Err(Error::Budget(format!("too many {n}-simplices")));
        }
        let index: HashMap<SimplexRef, u32> = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let p = self.p;
        let (faces, stride) = match &below {
            None => (Vec::new(), 0),
            Some(b) => {
                let rows: Vec<Vec<u32>> = simplices
                    .par_iter()
                    .map(|x| {
                        (0..=n)
                            .map(|i| {
                                let f = p.face(i, x);
                                *b.index.get(&f).unwrap_or_else(|| panic!("face of {} missing from dimension {}", p.render(x), n - 1))
                            })
                            .collect()
                    })
                    .collect();
                (rows.concat(), n + 1)
            }
        };
        let level = Arc::new(Level { simplices, index, faces, stride });
        self.cache.insert(n, level.clone());
        // only two dimensions below the current one are ever needed
        self.cache.retain(|&d, _| d + 3 > n);
        Ok(level)
    }
}

struct CubeFailure {
    family: Vec<u32>,
    fillers: Vec<u32>,
}

/// Per face position, the simplices with a given face, in compressed rows.
struct FaceIndex {
    offsets: Vec<Vec<u32>>,
    items: Vec<Vec<u32>>,
}

impl FaceIndex {
    fn new(level: &Level, below: usize) -> Self {
        let count = level.simplices.len();
        let mut offsets = Vec::with_capacity(level.stride);
        let mut items = Vec::with_capacity(level.stride);
        for p in 0..level.stride {
            let mut off = vec![0u32; below + 1];
            for y in 0..count as u32 {
                off[level.face(y, p) as usize + 1] += 1;
            }
            for f in 0..below {
                off[f + 1] += off[f];
            }
            let mut fill = off.clone();
            let mut list = vec![0u32; count];
            for y in 0..count as u32 {
                let f = level.face(y, p) as usize;
                list[fill[f] as usize] = y;
                fill[f] += 1;
            }
            offsets.push(off);
            items.push(list);
        }
        Self { offsets, items }
    }

    fn with_face(&self, p: usize, f: u32) -> &[u32] {
        let off = &self.offsets[p];
        &self.items[p][off[f as usize] as usize..off[f as usize + 1] as usize]
    }
}

/// Packs a family of ids into one key.
#[derive(Clone, Copy)]
struct Packer {
    bits: u32,
}

impl Packer {
    fn new(max_id: usize, slots: usize) -> Result<Self> {
        let bits = usize::BITS - max_id.leading_zeros();
        if bits as usize * slots > 128 {
            return Err(Error::Budget("cube too large to index".into()));
        }
        Ok(Self { bits: bits.max(1) })
    }

    fn pack(self, ids: impl Iterator<Item = u32>) -> u128 {
        ids.fold(0u128, |acc, x| (acc << self.bits) | x as u128)
    }
}

/// Unique-filler check for one cube `X⟨I⟩`, `I ⊂ [n]` sorted.
fn check_cube(top: &Level, mid: &Level, index: &FaceIndex, set: &[usize], budget: usize) -> Result<Option<CubeFailure>> {
    let packer = Packer::new(mid.simplices.len(), set.len())?;
    // I-faces of each n-simplex, with the first simplex seen
    let mut image: HashMap<u128, u32> = HashMap::with_capacity(top.simplices.len());
    for x in 0..top.simplices.len() as u32 {
        let key = packer.pack(set.iter().map(|&i| top.face(x, i)));
        if let Some(&first) = image.get(&key) {
            let family = set.iter().map(|&i| top.face(x, i)).collect();
            return Ok(Some(CubeFailure { family, fillers: vec![first, x] }));
        }
        image.insert(key, x);
    }
    let nodes = AtomicUsize::new(0);
    let search = FamilySearch { mid, set, index, image: &image, packer, nodes: &nodes, budget };
    let found = (0..mid.simplices.len() as u32)
        .into_par_iter()
        .map(|y0| {
            let mut slots = vec![None; set.len()];
            slots[0] = Some(y0);
            search.extend(&mut slots)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(None),
        Some(r) => r.map(|f| f.map(|family| CubeFailure { family, fillers: Vec::new() })),
    }
}

struct FamilySearch<'a> {
    mid: &'a Level,
    set: &'a [usize],
    index: &'a FaceIndex,
    image: &'a HashMap<u128, u32>,
    packer: Packer,
    nodes: &'a AtomicUsize,
    budget: usize,
}

impl FamilySearch<'_> {
    /// Requirement `(position, face)` on slot `b` imposed by the filled slot `a`.
    fn requirement(&self, a: usize, ya: u32, b: usize) -> (usize, u32) {
        let (ia, ib) = (self.set[a], self.set[b]);
        if a < b {
            // d_{ia} x_b = d_{ib-1} x_a
            (ia, self.mid.face(ya, ib - 1))
        } else {
            // d_{ib} x_a = d_{ia-1} x_b
            (ia - 1, self.mid.face(ya, ib))
        }
    }

    /// Fills the remaining slots; returns a family with no filler, if any.
    fn extend(&self, slots: &mut Vec<Option<u32>>) -> Result<Option<Vec<u32>>> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) > self.budget {
            return Err(Error::Budget("filler search exceeded its node budget".into()));
        }
        // most constrained empty slot first
        let mut choice: Option<(usize, &[u32])> = None;
        for b in 0..slots.len() {
            if slots[b].is_some() {
                continue;
            }
            let mut best: Option<&[u32]> = None;
            for (a, ya) in slots.iter().enumerate() {
                if let Some(ya) = *ya {
                    let (p, f) = self.requirement(a, ya, b);
                    let list = self.index.with_face(p, f);
                    if best.map_or(true, |l| list.len() < l.len()) {
                        best = Some(list);
                    }
                }
            }
            let best = best.unwrap_or(&[]);
            if choice.map_or(true, |(_, l)| best.len() < l.len()) {
                choice = Some((b, best));
            }
        }
        let Some((b, cands)) = choice else {
            let key = self.packer.pack(slots.iter().map(|s| s.unwrap()));
            return Ok(if self.image.contains_key(&key) { None } else { Some(slots.iter().map(|s| s.unwrap()).collect()) });
        };
        for &y in cands {
            let fits = slots.iter().enumerate().all(|(a, ya)| match *ya {
                None => true,
                Some(ya) => {
                    let (p, f) = self.requirement(a, ya, b);
                    self.mid.face(y, p) == f
                }
            });
            if fits {
                slots[b] = Some(y);
                let r = self.extend(slots)?;
                slots[b] = None;
                if r.is_some() {
                    return Ok(r);
                }
            }
        }
        Ok(None)
    }
}

/// Options for [`check_segal_generic_with`].
#[derive(Clone, Copy, Debug)]
pub struct GenericOptions {
    pub mode: SubsetMode,
    /// Smallest `n` examined.
    pub n_min: usize,
    pub budget: usize,
}

impl Default for GenericOptions {
    fn default() -> Self {
        Self { mode: SubsetMode::Gapped, n_min: 0, budget: 50_000_000 }
    }
}

/// Unique fillers for every admissible `I ⊂ [n]`, `n ≤ n_max`.
pub fn check_segal_generic(p: &dyn SymSet, v: SegalVariant, n_max: usize) -> Result<SegalOutcome> {
    check_segal_generic_with(p, v, n_max, GenericOptions::default())
}

pub fn check_segal_generic_with(p: &dyn SymSet, v: SegalVariant, n_max: usize, opts: GenericOptions) -> Result<SegalOutcome> {
    if opts.mode == SubsetMode::Starry && !p.is_symmetric() {
        return Err(Error::Unsupported("starry subsets need a symmetric presentation".into()));
    }
    let mut levels = Levels::new(p);
    for n in opts.n_min.max(2)..=n_max {
        let sets = subsets_for(n, v, opts.mode);
        if sets.is_empty() {
            continue;
        }
        let top = levels.get(n)?;
        let mid = levels.get(n - 1)?;
        let index = FaceIndex::new(&mid, levels.get(n - 2)?.simplices.len());
        for set in sets {
            if let Some(fail) = check_cube(&top, &mid, &index, &set, opts.budget)? {
                let render = |x: u32| p.render(&mid.simplices[x as usize]);
                let witness = SegalWitness {
                    n,
                    index_set: set.clone(),
                    form: WordForm::Family,
                    base: None,
                    word: Vec::new(),
                    faces: set.iter().zip(&fail.family).map(|(&i, &x)| FaceLift { i, lift: vec![render(x)] }).collect(),
                    fillers: fail.fillers.iter().map(|&x| p.render(&top.simplices[x as usize])).collect(),
                };
                return Ok(SegalOutcome::Fail { witness });
            }
        }
    }
    Ok(SegalOutcome::Pass { n_max })
}

/// Checks one explicit compatible family: returns the fillers among `X_n`.
pub fn fillers_of_family(p: &dyn SymSet, n: usize, family: &[(usize, SimplexRef)]) -> Result<Vec<SimplexRef>> {
    for (a, (i, xi)) in family.iter().enumerate() {
        for (j, xj) in &family[a + 1..] {
            if p.face(*i, xj) != p.face(j - 1, xi) {
                return Err(Error::Invalid(format!("faces {i} and {j} are not compatible")));
            }
        }
    }
    Ok(p
        .simplices(n)?
        .into_iter()
        .filter(|x| family.iter().all(|(i, xi)| &p.face(*i, x) == xi))
        .collect())
}

impl SegalWitness {
    /// Replays a word witness: every listed face lifts and the word does not.
    pub fn replay(&self, pg: &PartialGroupoid) -> Result<bool> {
        let edge = |name: &String| pg.edge_by_name(name).ok_or_else(|| Error::Format(format!("unknown edge {name}")));
        let word: Vec<usize> = self.word.iter().map(edge).collect::<Result<_>>()?;
        match self.form {
            WordForm::Family => Err(Error::Unsupported("family witnesses replay against a presentation".into())),
            WordForm::Spine => {
                if pg.is_simplex(&word) || word.len() != self.n {
                    return Ok(false);
                }
                for f in &self.faces {
                    let lift: Vec<usize> = f.lift.iter().map(edge).collect::<Result<_>>()?;
                    if spine_face(pg, &word, f.i).as_deref() != Some(&lift[..]) || !pg.is_simplex(&lift) {
                        return Ok(false);
                    }
                }
                Ok(self.faces.len() == self.index_set.len())
            }
            WordForm::Starry => {
                let base_name = self.base.as_ref().ok_or_else(|| Error::Format("starry witness without base".into()))?;
                let base = pg
                    .objects()
                    .iter()
                    .position(|o| o == base_name)
                    .ok_or_else(|| Error::Format(format!("unknown object {base_name}")))?;
                if pg.starry_is_simplex(base, &word) || word.len() != self.n {
                    return Ok(false);
                }
                for f in &self.faces {
                    if f.i == 0 || f.i > word.len() {
                        return Ok(false);
                    }
                    let mut face = word.clone();
                    face.remove(f.i - 1);
                    let lift: Vec<usize> = f.lift.iter().map(edge).collect::<Result<_>>()?;
                    if pg.spine_of_starry(base, &face).as_deref() != Some(&lift[..]) || !pg.is_simplex(&lift) {
                        return Ok(false);
                    }
                }
                Ok(self.faces.len() == self.index_set.len())
            }
        }
    }

    /// Replays a family witness: the faces are compatible and the filler count is not one.
    pub fn replay_family(&self, p: &dyn SymSet) -> Result<bool> {
        let below: HashMap<String, SimplexRef> = p.simplices(self.n - 1)?.into_iter().map(|x| (p.render(&x), x)).collect();
        let family = self
            .faces
            .iter()
            .map(|f| {
                let key = f.lift.join("|");
                below.get(&key).cloned().map(|x| (f.i, x)).ok_or_else(|| Error::Format(format!("unknown simplex {key}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match fillers_of_family(p, self.n, &family) {
            Ok(fillers) => Ok(fillers.len() != 1),
            Err(Error::Invalid(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

/// Face `d_i` of a spine word; inner faces compose neighbours and may be undefined.
pub fn spine_face(pg: &PartialGroupoid, word: &[usize], i: usize) -> Option<Vec<usize>> {
    let n = word.len();
    if i > n || n == 0 {
        return None;
    }
    if i == 0 {
        return Some(word[1..].to_vec());
    }
    if i == n {
        return Some(word[..n - 1].to_vec());
    }
    let mut out = word[..i - 1].to_vec();
    out.push(pg.compose(word[i - 1], word[i])?);
    out.extend_from_slice(&word[i + 1..]);
    Some(out)
}

/// A starry word all of whose faces are simplices although it is not one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hollow {
    pub base: usize,
    pub word: Vec<usize>,
}

/// Searches duplicate-free nonidentity starry words of length `min_len..=max_len` for
/// hollow ones. Returns the shortest (or, with `longest`, the longest), ties broken by
/// `(base, word)` order.
pub fn find_hollow(pg: &PartialGroupoid, min_len: usize, max_len: usize, longest: bool) -> Option<Hollow> {
    let mut roots = Vec::new();
    for base in 0..pg.object_count() {
        let out: Vec<usize> = (0..pg.edge_count()).filter(|&e| pg.edge(e).src == base && !pg.is_identity(e)).collect();
        for i in 0..out.len() {
            roots.push((base, i, Arc::new(out.clone())));
        }
    }
    let better = |a: &Hollow, b: &Hollow| -> bool {
        let (la, lb) = (a.word.len(), b.word.len());
        if la != lb {
            return if longest { la > lb } else { la < lb };
        }
        a < b
    };
    let results: Vec<Option<Hollow>> = roots
        .par_iter()
        .map(|(base, i, out)| {
            let mut best: Option<Hollow> = None;
            let mut cur = vec![out[*i]];
            if pg.starry_is_simplex(*base, &cur) {
                hollow_dfs(pg, *base, out, *i + 1, &mut cur, min_len, max_len, &mut |h| {
                    if best.as_ref().map_or(true, |b| better(&h, b)) {
                        best = Some(h);
                    }
                });
            }
            best
        })
        .collect();
    results.into_iter().flatten().fold(None, |acc, h| match acc {
        Some(b) if !better(&h, &b) => Some(b),
        _ => Some(h),
    })
}

#[allow(clippy::too_many_arguments)]
fn hollow_dfs(
    pg: &PartialGroupoid,
    base: usize,
    out: &[usize],
    start: usize,
    cur: &mut Vec<usize>,
    min_len: usize,
    max_len: usize,
    found: &mut dyn FnMut(Hollow),
) {
    if cur.len() >= max_len {
        return;
    }
    for k in start..out.len() {
        cur.push(out[k]);
        if pg.starry_is_simplex(base, cur) {
            hollow_dfs(pg, base, out, k + 1, cur, min_len, max_len, found);
        } else if cur.len() >= min_len {
            let all_faces = (0..cur.len() - 1).all(|t| {
                let face: Vec<usize> = cur.iter().enumerate().filter(|&(j, _)| j != t).map(|(_, &e)| e).collect();
                pg.starry_is_simplex(base, &face)
            });
            if all_faces {
                found(Hollow { base, word: cur.clone() });
            }
        }
        cur.pop();
    }
}

fn starry_witness(pg: &PartialGroupoid, h: &Hollow, k: usize) -> SegalWitness {
    let names = |w: &[usize]| w.iter().map(|&e| pg.edge_name(e).to_string()).collect::<Vec<_>>();
    let index_set: Vec<usize> = (1..=k + 1).collect();
    let faces = index_set
        .iter()
        .map(|&i| {
            let mut face = h.word.clone();
            face.remove(i - 1);
            FaceLift { i, lift: names(&pg.spine_of_starry(h.base, &face).expect("face is a simplex")) }
        })
        .collect();
    SegalWitness {
        n: h.word.len(),
        index_set,
        form: WordForm::Starry,
        base: Some(pg.objects()[h.base].clone()),
        word: names(&h.word),
        faces,
        fillers: Vec::new(),
    }
}

/// Lower `(2k-1)`-Segal through starry words of length `k+1..=n_max`.
pub fn check_lower_segal_spiny(pg: &PartialGroupoid, k: usize, n_max: usize) -> SegalOutcome {
    match find_hollow(pg, k + 1, n_max, false) {
        None => SegalOutcome::Pass { n_max },
        Some(h) => SegalOutcome::Fail { witness: starry_witness(pg, &h, k) },
    }
}

/// Witness for the longest hollow starry word up to `n_max`, reported at `k = len - 1`.
pub fn longest_hollow_witness(pg: &PartialGroupoid, n_max: usize) -> Option<SegalWitness> {
    find_hollow(pg, 2, n_max, true).map(|h| {
        let k = h.word.len() - 1;
        starry_witness(pg, &h, k)
    })
}

/// Starry witness for a given hollow word, if it is one.
pub fn starry_word_witness(pg: &PartialGroupoid, base: usize, word: &[usize]) -> Option<SegalWitness> {
    if word.len() < 2 || pg.starry_is_simplex(base, word) {
        return None;
    }
    let faces_ok = (0..word.len()).all(|t| {
        let mut face = word.to_vec();
        face.remove(t);
        pg.starry_is_simplex(base, &face)
    });
    faces_ok.then(|| starry_witness(pg, &Hollow { base, word: word.to_vec() }, word.len() - 1))
}

/// Lower `(2k-1)`-Segal through spine words and gapped face sets, `2k ≤ n ≤ n_max`.
pub fn check_lower_segal_words(pg: &Arc<PartialGroupoid>, k: usize, n_max: usize) -> Result<SegalOutcome> {
    let dim = pg.dimension()?;
    let view = PgSymSet::new(pg.clone(), dim)?;
    for n in (2 * k).max(1)..=n_max {
        let sets: Vec<Vec<usize>> = gapped_subsets(n, k + 1, SegalVariant::LowerOdd(k)).into_iter().map(|g| g.members).collect();
        let below: Vec<Vec<usize>> = view
            .simplices(n - 1)?
            .into_iter()
            .map(|s| match s {
                SimplexRef::Spine(Spine { word, .. }) => word,
                _ => unreachable!(),
            })
            .collect();
        let mut factor: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (f, g, c) in pg.compositions() {
            factor.entry(c).or_default().push((f, g));
        }
        for set in &sets {
            let mut best: Option<Vec<usize>> = None;
            let mut consider = |w: Vec<usize>| {
                if best.as_ref().map_or(false, |b| &w >= b) || !pg.is_composable_chain(&w) {
                    return;
                }
                let faces_lift = set.iter().all(|&i| spine_face(pg, &w, i).map_or(false, |f| pg.is_simplex(&f)));
                if faces_lift && !pg.is_simplex(&w) {
                    best = Some(w);
                }
            };
            let i0 = set[0];
            for y in &below {
                if i0 == 0 {
                    for f in 0..pg.edge_count() {
                        let mut w = vec![f];
                        w.extend_from_slice(y);
                        consider(w);
                    }
                } else if i0 == n {
                    for f in 0..pg.edge_count() {
                        let mut w = y.clone();
                        w.push(f);
                        consider(w);
                    }
                } else if let Some(pairs) = y.get(i0 - 1).and_then(|c| factor.get(c)) {
                    for &(f, g) in pairs {
                        let mut w = y[..i0 - 1].to_vec();
                        w.push(f);
                        w.push(g);
                        w.extend_from_slice(&y[i0..]);
                        consider(w);
                    }
                }
            }
            if let Some(w) = best {
                let names = |w: &[usize]| w.iter().map(|&e| pg.edge_name(e).to_string()).collect::<Vec<_>>();
                let faces = set
                    .iter()
                    .map(|&i| FaceLift { i, lift: names(&spine_face(pg, &w, i).expect("face defined")) })
                    .collect();
                let witness = SegalWitness {
                    n,
                    index_set: set.clone(),
                    form: WordForm::Spine,
                    base: None,
                    word: names(&w),
                    faces,
                    fillers: Vec::new(),
                };
                return Ok(SegalOutcome::Fail { witness });
            }
        }
    }
    Ok(SegalOutcome::Pass { n_max })
}

/// Lower décalage `dec_⊥`.
pub fn dec_bot(p: Arc<dyn SymSet>) -> Arc<dyn SymSet> {
    Arc::new(Decalage { inner: p, bottom: true })
}

/// Upper décalage `dec_⊤`.
pub fn dec_top(p: Arc<dyn SymSet>) -> Arc<dyn SymSet> {
    Arc::new(Decalage { inner: p, bottom: false })
}

/// Smallest `n ≤ n_max` at which the variant fails, if any.
pub fn first_failure(p: &dyn SymSet, v: SegalVariant, n_max: usize, mode: SubsetMode) -> Result<Option<usize>> {
    let opts = GenericOptions { mode, ..GenericOptions::default() };
    Ok(check_segal_generic_with(p, v, n_max, opts)?.witness().map(|w| w.n))
}

/// Least `k ≤ k_max` whose lower `(2k-1)`-Segal check passes with `n ≤ k + slack`, by the
/// generic checker over starry subsets; `None` when every `k ≤ k_max` fails.
pub fn bounded_degree(p: &dyn SymSet, k_max: usize, slack: usize) -> Result<Option<(usize, Option<SegalWitness>)>> {
    let mut last = None;
    for k in 1..=k_max {
        let opts = GenericOptions { mode: SubsetMode::Starry, ..GenericOptions::default() };
        match check_segal_generic_with(p, SegalVariant::LowerOdd(k), k + slack, opts)? {
            SegalOutcome::Pass { .. } => return Ok(Some((k, last))),
            SegalOutcome::Fail { witness } => last = Some(witness),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gapped_enumeration() {
        let v = SegalVariant::LowerOdd(2);
        assert_eq!(gapped_subsets(4, 3, v), vec![GappedSet { ambient: 4, members: vec![0, 2, 4] }]);
        assert!(gapped_subsets(5, 3, SegalVariant::UpperOdd(2)).is_empty());
        // both endpoints excluded: {1,3,5} in [6]; {1,3,5}, {1,3,6}, {1,4,6}, {2,4,6} in [7]
        assert_eq!(gapped_subsets(6, 3, SegalVariant::UpperOdd(2)).len(), 1);
        assert_eq!(gapped_subsets(7, 3, SegalVariant::UpperOdd(2)).len(), 4);
        for k in 1..5 {
            assert_eq!(gapped_subsets(2 * k, k + 1, SegalVariant::LowerOdd(k)).len(), 1);
            assert!(gapped_subsets(2 * k - 1, k + 1, SegalVariant::LowerOdd(k)).is_empty());
        }
        assert!(GappedSet::new(5, vec![0, 1]).is_err());
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::RootSystem;
use crate::action::{self, CharacteristicAction, PartialGroupAction};
use crate::error::{Error, Result};
use crate::symcore::FiniteGroup;

/// Weyl group elements as permutations of all roots, identity first, in order of length.
pub struct WeylGroup {
    pub perms: Vec<Vec<usize>>,
    /// A reduced word for each element, as simple-reflection indices from the left.
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn name(&self, w: usize) -> String {
        if self.words[w].is_empty() {
            "e".into()
        } else {
            self.words[w].iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }

    /// `N(w)`: positive roots sent to negative roots.
    pub fn inversion_set(&self, rs: &RootSystem, w: usize) -> Vec<usize> {
        (0..rs.positive_count()).filter(|&a| !rs.is_positive(self.perms[w][a])).collect()
    }

    pub fn element(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn longest(&self) -> usize {
        self.order() - 1
    }

    /// Product `a · b` (apply `b` first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p: Vec<usize> = self.perms[b].iter().map(|&r| self.perms[a][r]).collect();
        self.index[&p]
    }
}

/// Breadth-first closure under the simple reflections.
pub fn weyl_enumerate(rs: &RootSystem, budget: usize) -> Result<WeylGroup> {
    let id: Vec<usize> = (0..rs.ambient.len()).collect();
    let mut perms = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < perms.len() {
        let p = perms[head].clone();
        let word = words[head].clone();
        head += 1;
        for (i, s) in rs.reflections.iter().enumerate() {
            let q: Vec<usize> = p.iter().map(|&r| s[r]).collect();
            if !index.contains_key(&q) {
                if perms.len() >= budget {
                    return Err(Error::Budget(format!("Weyl group of {} exceeds {budget} elements", rs.name())));
                }
                index.insert(q.clone(), perms.len());
                perms.push(q);
                let mut w = vec![i];
                w.extend(&word);
                words.push(w);
            }
        }
    }
    Ok(WeylGroup { perms, words, index })
}

/// The punctured Weyl group with its partial action on the positive roots.
pub struct PuncturedWeyl {
    pub weyl: WeylGroup,
    pub partial: PartialGroupAction,
    pub action: CharacteristicAction,
}

pub fn punctured_weyl(rs: &RootSystem, budget: usize) -> Result<PuncturedWeyl> {
    let weyl = weyl_enumerate(rs, budget)?;
    let names = (0..weyl.order()).map(|w| weyl.name(w)).collect();
    let group = Arc::new(FiniteGroup::from_named_permutations(weyl.perms.clone(), names)?);
    let positive: Vec<usize> = (0..rs.positive_count()).collect();
    let mut partial = action::ambient_restriction(group, &weyl.perms, &positive);
    partial.points = positive.iter().map(|&r| rs.label(r)).collect();
    let action = action::transporter(&partial)?;
    Ok(PuncturedWeyl { weyl, partial, action })
}

/// Domains of a word `(w_1, …, w_n)` in the nerve of `W` and of some of its faces.
#[derive(Clone, Debug, Serialize)]
pub struct C3Report {
    pub word: Vec<String>,
    pub word_domain: Vec<String>,
    pub faces: Vec<(usize, Vec<String>)>,
}

fn word_domain(rs: &RootSystem, weyl: &WeylGroup, word: &[usize]) -> Vec<usize> {
    (0..rs.positive_count())
        .filter(|&a| {
            let mut r = a;
            word.iter().all(|&w| {
                r = weyl.perms[w][r];
                rs.is_positive(r)
            })
        })
        .collect()
}

fn nerve_face(weyl: &WeylGroup, word: &[usize], i: usize) -> Vec<usize> {
    let n = word.len();
    let mut out = word.to_vec();
    if i == 0 {
        out.remove(0);
    } else if i == n {
        out.pop();
    } else {
        let c = weyl.mul(word[i], word[i - 1]);
        out.splice(i - 1..=i, [c]);
    }
    out
}

/// Replays the length-16 word in `C3` with its four acting faces.
pub fn verify_c3_word(rs: &RootSystem) -> Result<C3Report> {
    let weyl = weyl_enumerate(rs, 100_000)?;
    let letters = [3, 3, 2, 3, 2, 2, 3, 1, 3, 2, 2, 3, 2, 1, 3, 2];
    let word: Vec<usize> = letters
        .iter()
        .map(|&i| weyl.element(&rs.reflections[i - 1]).expect("simple reflection"))
        .collect();
    let labels = |d: Vec<usize>| d.into_iter().map(|a| rs.label(a)).collect::<Vec<_>>();
    let faces = [1, 5, 10, 16].iter().map(|&i| (i, labels(word_domain(rs, &weyl, &nerve_face(&weyl, &word, i))))).collect();
    Ok(C3Report {
        word: word.iter().map(|&w| weyl.name(w)).collect(),
        word_domain: labels(word_domain(rs, &weyl, &word)),
        faces,
    })
}

/// The rank-2 pair `(w₀s_β, w₀s_α(w₀s_β)⁻¹)` in `A2`: every entry acts, the pair does not.
#[derive(Clone, Debug, Serialize)]
pub struct A2Report {
    pub punctured_size: usize,
    pub pair: [String; 2],
    pub first_domain: Vec<String>,
    pub pair_is_simplex: bool,
    /// Whether the word `(w₀s_β, s_α s_β)`, products read right to left, is a simplex.
    pub literal_pair_is_simplex: bool,
}

pub fn verify_a2(rs: &RootSystem) -> Result<A2Report> {
    if (rs.kind, rs.rank) != (super::RootKind::A, 2) {
        return Err(Error::Unsupported(format!("the rank-2 pair check is for A2, not {}", rs.name())));
    }
    let pw = punctured_weyl(rs, 1000)?;
    let w = &pw.weyl;
    let simple = |i: usize| w.element(&rs.reflections[i]).expect("simple reflection");
    let inverse = |x: usize| (0..w.order()).find(|&y| w.mul(x, y) == 0).expect("group");
    let (sa, sb, w0) = (simple(0), simple(1), w.longest());
    let first = w.mul(w0, sb);
    let second = w.mul(w.mul(w0, sa), inverse(first));
    let literal = w.mul(sa, sb);
    let pg = &pw.action.base;
    let edge = |x: usize| pg.edge_by_name(&w.name(x)).ok_or_else(|| Error::Invalid(format!("{} is not in the punctured group", w.name(x))));
    let (e1, e2, e3) = (edge(first)?, edge(second)?, edge(literal)?);
    Ok(A2Report {
        punctured_size: pg.edge_count(),
        pair: [w.name(first), w.name(second)],
        first_domain: pw.action.domain_of_edge(e1).into_iter().map(|x| pw.action.points[x].clone()).collect(),
        pair_is_simplex: pg.is_simplex(&[e1, e2]),
        literal_pair_is_simplex: pg.is_simplex(&[e1, e3]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootKind;

    #[test]
    fn orders_and_inversions() {
        for (k, n, order) in [(RootKind::A, 2, 6), (RootKind::B, 3, 48), (RootKind::G, 2, 12), (RootKind::F, 4, 1152)] {
            let rs = RootSystem::build(k, n).unwrap();
            let w = weyl_enumerate(&rs, 100_000).unwrap();
            assert_eq!(w.order(), order);
            for e in 0..w.order() {
                assert_eq!(w.inversion_set(&rs, e).len(), w.words[e].len());
            }
            assert_eq!(w.inversion_set(&rs, w.longest()).len(), rs.positive_count());
        }
    }

    #[test]
    fn a2_punctured() {
        let rs = RootSystem::build(RootKind::A, 2).unwrap();
        let pw = punctured_weyl(&rs, 1000).unwrap();
        assert_eq!(pw.action.base.edge_count(), 5);
        let r = verify_a2(&rs).unwrap();
        assert!(!r.pair_is_simplex);
        assert_eq!(r.first_domain, vec!["α2".to_string()]);
    }

    #[test]
    fn c3_word_replays() {
        let rs = RootSystem::build(RootKind::C, 3).unwrap();
        let r = verify_c3_word(&rs).unwrap();
        assert!(r.word_domain.is_empty());
        let got: Vec<Vec<String>> = r.faces.iter().map(|f| f.1.clone()).collect();
        assert_eq!(got, vec![vec!["α3".to_string()], vec!["α2+α3".into()], vec!["α1+2α2+α3".into()], vec!["α1+α2+α3".into()]]);
    }
}

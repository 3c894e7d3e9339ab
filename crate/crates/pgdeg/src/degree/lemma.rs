//! Exhaustive check of the extension property for functions `S → R` up to triviality:
//! a coherent family of classes `[f_i]` on `S ∖ i`, for `i` in a `(2r-1)`-subset `I`,
//! comes from exactly one class `[f]`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Class of every non-surjective function.
const TRIVIAL: u64 = u64::MAX;

#[derive(Clone, Debug, Serialize)]
pub struct FunctionLemmaReport {
    pub r: usize,
    pub s: usize,
    pub index_set: Vec<usize>,
    pub functions: usize,
    pub coherent_families: usize,
    /// Coherent families that are the restrictions of some function.
    pub realized: usize,
    /// Pairs of functions in different classes with the same restrictions.
    pub ambiguous: usize,
    pub holds: bool,
}

/// A function on `domain` (ascending elements of `S`), values in `0..r`.
struct Codec {
    r: usize,
}

impl Codec {
    fn encode(&self, values: &[u8]) -> u64 {
        let mut seen = 0u32;
        for &v in values {
            seen |= 1 << v;
        }
        if seen.count_ones() as usize != self.r {
            return TRIVIAL;
        }
        values.iter().rev().fold(0u64, |acc, &v| acc * self.r as u64 + v as u64)
    }

    fn decode(&self, mut code: u64, len: usize) -> Vec<u8> {
        (0..len)
            .map(|_| {
                let v = (code % self.r as u64) as u8;
                code /= self.r as u64;
                v
            })
            .collect()
    }

    /// Class of the restriction of a class on `domain` to `domain ∖ drop`.
    fn restrict(&self, class: u64, domain: &[usize], drop: usize) -> u64 {
        if class == TRIVIAL {
            return TRIVIAL;
        }
        let values = self.decode(class, domain.len());
        let kept: Vec<u8> = domain.iter().zip(&values).filter(|(&x, _)| x != drop).map(|(_, &v)| v).collect();
        self.encode(&kept)
    }
}

/// `table[p][c]`: class of the restriction of the slot class `c` dropping position `p`.
struct Restrictions {
    table: Vec<Vec<u64>>,
}

impl Restrictions {
    fn new(codec: &Codec, len: usize) -> Self {
        let domain: Vec<usize> = (0..len).collect();
        let count = (codec.r as u64).pow(len as u32);
        let table = (0..len).map(|p| (0..count).map(|c| codec.restrict(c, &domain, p)).collect()).collect();
        Self { table }
    }

    fn get(&self, class: u64, domain: &[usize], drop: usize) -> u64 {
        if class == TRIVIAL {
            return TRIVIAL;
        }
        let p = domain.iter().position(|&x| x == drop).expect("dropped point in domain");
        self.table[p][class as usize]
    }
}

fn without(s: usize, i: usize) -> Vec<usize> {
    (0..s).filter(|&x| x != i).collect()
}

/// Runs the check with `I = {0, …, 2r-2}` inside `S = {0, …, s-1}`.
pub fn function_lemma(r: usize, s: usize) -> Result<FunctionLemmaReport> {
    if r < 1 || s <= 2 * r - 1 || r > 8 {
        return Err(Error::Invalid(format!("need 1 ≤ r ≤ 8 and |S| > 2r-1, got r={r}, |S|={s}")));
    }
    let total = (r as u64).checked_pow(s as u32).filter(|&t| t <= 50_000_000).ok_or_else(|| Error::Budget("too many functions".into()))?;
    let codec = Codec { r };
    let index: Vec<usize> = (0..2 * r - 1).collect();
    let domains: Vec<Vec<usize>> = index.iter().map(|&i| without(s, i)).collect();

    // every function, keyed by the classes of its restrictions
    let mut image: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut ambiguous = 0;
    for code in 0..total {
        let f = codec.decode(code, s);
        let class = codec.encode(&f);
        let key: Vec<u64> = index
            .iter()
            .map(|&i| codec.encode(&f.iter().enumerate().filter(|&(x, _)| x != i).map(|(_, &v)| v).collect::<Vec<_>>()))
            .collect();
        match image.get(&key) {
            Some(&c) if c != class => ambiguous += 1,
            Some(_) => {}
            None => {
                image.insert(key, class);
            }
        }
    }

    // coherent families, slot by slot
    let all_on_slot: Vec<u64> = {
        let mut v: Vec<u64> = (0..(r as u64).pow(s as u32 - 1)).map(|c| codec.encode(&codec.decode(c, s - 1))).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut families = 0usize;
    let mut realized = 0usize;
    let restrictions = Restrictions::new(&codec, s - 1);
    let mut cur: Vec<u64> = Vec::new();
    extend(&codec, &restrictions, &index, &domains, &all_on_slot, &mut cur, &mut |fam| {
        families += 1;
        if image.contains_key(fam) {
            realized += 1;
        }
    });
    Ok(FunctionLemmaReport {
        r,
        s,
        index_set: index,
        functions: total as usize,
        coherent_families: families,
        realized,
        ambiguous,
        holds: ambiguous == 0 && realized == families,
    })
}

fn extend(codec: &Codec, rs: &Restrictions, index: &[usize], domains: &[Vec<usize>], all: &[u64], cur: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
    let t = cur.len();
    if t == index.len() {
        emit(cur);
        return;
    }
    let it = index[t];
    // restrictions the new slot must match
    let wanted: Vec<u64> = (0..t).map(|u| rs.get(cur[u], &domains[u], it)).collect();
    let candidates: Vec<u64> = match (0..t).find(|&u| wanted[u] != TRIVIAL) {
        Some(u) => {
            // determined off the dropped point of slot u
            let iu = index[u];
            let known = codec.decode(wanted[u], domains[u].len() - 1);
            let rest: Vec<usize> = domains[u].iter().copied().filter(|&x| x != it).collect();
            let mut set = HashSet::new();
            for v in 0..codec.r as u8 {
                let values: Vec<u8> = domains[t]
                    .iter()
                    .map(|&x| if x == iu { v } else { known[rest.iter().position(|&y| y == x).expect("shared point")] })
                    .collect();
                set.insert(codec.encode(&values));
            }
            let mut c: Vec<u64> = set.into_iter().collect();
            c.sort_unstable();
            c
        }
        None => all.to_vec(),
    };
    for c in candidates {
        let fits = (0..t).all(|u| rs.get(c, &domains[t], index[u]) == wanted[u]);
        if fits {
            cur.push(c);
            extend(codec, rs, index, domains, all, cur, emit);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_hold() {
        let rep = function_lemma(3, 6).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(rep.coherent_families > 0);
    }

    #[test]
    fn codec_round_trip() {
        let c = Codec { r: 3 };
        let v = vec![0, 2, 1, 1];
        assert_eq!(c.decode(c.encode(&v), 4), v);
        assert_eq!(c.encode(&[0, 0, 1]), TRIVIAL);
        assert_eq!(c.restrict(c.encode(&v), &[0, 1, 2, 3], 0), TRIVIAL);
    }
}

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `table[a][b]` is the product `a * b` (apply `b` first, then `a`).
    table: Vec<Vec<u32>>,
    inverse: Vec<usize>,
    identity: usize,
}

const MAX_TABLE_ORDER: usize = 10_000;

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Format("group table must be square and match the element list".into()));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Format("group table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {} has no inverse", names[a])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("group table is not associative".into()));
                    }
                }
            }
        }
        let table = table.into_iter().map(|r| r.into_iter().map(|v| v as u32).collect()).collect();
        Ok(Self { names, table, inverse, identity })
    }

    /// Closes a set of permutations (images of `0..degree`) under composition.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let (perms, _) = Self::permutation_closure(generators, MAX_TABLE_ORDER)?;
        Self::from_permutation_list(perms)
    }

    pub fn permutation_closure(generators: &[Vec<usize>], budget: usize) -> Result<(Vec<Vec<usize>>, HashMap<Vec<usize>, usize>)> {
        let degree = generators.first().map_or(0, |g| g.len());
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&v| v >= degree || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::Format("generator is not a permutation of a common degree".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < perms.len() {
            let p = perms[head].clone();
            head += 1;
            for g in generators {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if !index.contains_key(&q) {
                    if perms.len() >= budget {
                        return Err(Error::Budget(format!("permutation group larger than {budget}")));
                    }
                    index.insert(q.clone(), perms.len());
                    perms.push(q);
                }
            }
        }
        Ok((perms, index))
    }

    fn from_permutation_list(perms: Vec<Vec<usize>>) -> Result<Self> {
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        Self::from_named_permutations(perms, names)
    }

    /// A group given by all of its elements as permutations, identity first.
    pub fn from_named_permutations(perms: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = perms.len();
        if n == 0 || names.len() != n || perms[0].iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Format("element list must start with the identity".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::Budget(format!("group of order {n} is too large for a table")));
        }
        let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![vec![0u32; n]; n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let ab: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
                let Some(&c) = index.get(&ab) else {
                    return Err(Error::Invalid("permutations are not closed under composition".into()));
                };
                table[a][b] = c as u32;
            }
        }
        let identity = 0;
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        Ok(Self { names, table, inverse, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("r{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, table).expect("cyclic table")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![(0..n).collect::<Vec<_>>()];
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens = vec![t, c];
        }
        Self::from_permutations(&gens).expect("symmetric group")
    }

    pub fn dihedral(n: usize) -> Self {
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[r, s]).expect("dihedral group")
    }

    /// Quaternion group as its regular permutation representation.
    pub fn quaternion() -> Self {
        // elements ±1, ±i, ±j, ±k encoded as (sign, unit) with unit in {1,i,j,k}
        let mul_unit = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let enc = |neg: bool, u: usize| u + if neg { 4 } else { 0 };
        let mul = |a: usize, b: usize| {
            let (na, ua) = (a >= 4, a % 4);
            let (nb, ub) = (b >= 4, b % 4);
            let (nu, u) = mul_unit(ua, ub);
            enc(na ^ nb ^ nu, u)
        };
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
        let table = (0..8).map(|a| (0..8).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(names, table).expect("quaternion table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.commute(a, b)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Maximal abelian subgroups, each as a sorted element list.
    pub fn maximal_abelian_subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|g| self.generated(&[g])).collect();
        let mut maximal = Vec::new();
        while let Some(sub) = stack.pop() {
            if !seen.insert(sub.clone()) {
                continue;
            }
            let mut grew = false;
            for c in 0..n {
                if sub.binary_search(&c).is_err() && sub.iter().all(|&s| self.commute(s, c)) {
                    grew = true;
                    let mut gens = sub.clone();
                    gens.push(c);
                    stack.push(self.generated(&gens));
                }
            }
            if !grew {
                maximal.push(sub);
            }
        }
        maximal.sort();
        maximal.dedup();
        maximal
    }

    /// Subgroup generated by a set of elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![self.identity];
        let mut head = 0;
        while head < set.len() {
            let a = set[head];
            head += 1;
            for &g in gens {
                let b = self.mul(g, a);
                if !set.contains(&b) {
                    set.push(b);
                }
            }
        }
        set.sort_unstable();
        set
    }
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert!(FiniteGroup::cyclic(5).is_abelian());
        assert!(!FiniteGroup::quaternion().is_abelian());
    }

    #[test]
    fn s3_maximal_abelian() {
        let g = FiniteGroup::symmetric(3);
        let m = g.maximal_abelian_subgroups();
        // three subgroups of order 2 and one of order 3
        let mut sizes: Vec<usize> = m.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3]);
    }
}

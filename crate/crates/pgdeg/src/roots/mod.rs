//! Crystallographic root systems with exact coordinates.

mod lp;
mod search;
mod table;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use lp::in_cone;
pub use search::{max_abelian, max_really_abelian, named_free_set, NamedSet, SearchResult};
pub use table::{formula, standard_systems, table, table_row, Provenance, Table, TableOptions, TableReport, TableRow};
pub use weyl::{punctured_weyl, verify_a2, verify_c3_word, A2Report, weyl_enumerate, C3Report, PuncturedWeyl, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootKind {
    /// Parses names like `C3` or `E6`.
    pub fn parse(s: &str) -> Result<(RootKind, usize)> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => RootKind::A,
            Some('B') => RootKind::B,
            Some('C') => RootKind::C,
            Some('D') => RootKind::D,
            Some('E') => RootKind::E,
            Some('F') => RootKind::F,
            Some('G') => RootKind::G,
            _ => return Err(Error::Format(format!("unknown root system {s}"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Format(format!("missing rank in {s}")))?;
        Ok((kind, rank))
    }

    /// Parses a product such as `A1xA1`.
    pub fn parse_product(s: &str) -> Result<Vec<(RootKind, usize)>> {
        s.split(['x', 'X', '*']).map(RootKind::parse).collect()
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A root system with positive roots indexed `0..N` and negatives `N..2N`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: RootKind,
    pub rank: usize,
    /// Ambient coordinates, doubled so that every entry is an integer.
    pub ambient: Vec<Vec<i64>>,
    /// Coefficients over the simple roots, in base order.
    pub coeffs: Vec<Vec<i64>>,
    /// Root indices of the simple roots, in base order.
    pub simple: Vec<usize>,
    by_coeffs: HashMap<Vec<i64>, usize>,
    /// `reflections[i][r]`: image of root `r` under the i-th simple reflection.
    pub reflections: Vec<Vec<usize>>,
}

fn unit(m: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `±a_i ± a_j` for `i < j`, doubled.
fn long_pairs(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for (s, t) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = unit(m, i, s);
                v[j] = t;
                out.push(v);
            }
        }
    }
    out
}

/// `a_ε` over all sign vectors, doubled; `parity` keeps only products equal to it.
fn half_spins(m: usize, parity: Option<i64>) -> Vec<Vec<i64>> {
    (0..1u32 << m)
        .map(|bits| (0..m).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect::<Vec<i64>>())
        .filter(|v| parity.map_or(true, |p| v.iter().product::<i64>() == p))
        .collect()
}

fn spin(signs: &str) -> Vec<i64> {
    signs.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
}

fn diff(m: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = unit(m, i, 2);
    v[j] = -2;
    v
}

fn realization(kind: RootKind, n: usize) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let bad = || Err(Error::Unsupported(format!("{kind}{n}")));
    Ok(match kind {
        RootKind::A if n >= 1 => {
            let m = n + 1;
            let roots = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| diff(m, i, j))).collect();
            (roots, (0..n).map(|i| diff(m, i, i + 1)).collect())
        }
        RootKind::B | RootKind::C if n >= 2 => {
            let short = if kind == RootKind::B { 2 } else { 4 };
            let mut roots = long_pairs(n);
            for i in 0..n {
                roots.push(unit(n, i, short));
                roots.push(unit(n, i, -short));
            }
            let mut base: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            base.push(unit(n, n - 1, short));
            (roots, base)
        }
        RootKind::D if n >= 3 => {
            let mut base: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 2, 2);
            last[n - 1] = 2;
            base.push(last);
            (long_pairs(n), base)
        }
        RootKind::G if n == 2 => {
            // sum-zero plane of ℚ³: short ±(a_i − a_j), long ±(2a_i − a_j − a_k)
            let mut roots = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        roots.push(diff(3, i, j));
                    }
                }
                let mut long = vec![-2; 3];
                long[i] = 4;
                roots.push(long.iter().map(|x| -x).collect());
                roots.push(long);
            }
            (roots, vec![diff(3, 0, 1), vec![-4, 2, 2]])
        }
        RootKind::F if n == 4 => {
            let mut roots = long_pairs(4);
            for i in 0..4 {
                roots.push(unit(4, i, 2));
                roots.push(unit(4, i, -2));
            }
            roots.extend(half_spins(4, None));
            (roots, vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3, 2), spin("+---")])
        }
        RootKind::E if (6..=8).contains(&n) => {
            let mut roots = long_pairs(8);
            roots.extend(half_spins(8, Some(1)));
            let mut seven_eight = unit(8, 6, 2);
            seven_eight[7] = 2;
            let base8 = vec![
                spin("+------+"),
                diff(8, 6, 7),
                diff(8, 5, 6),
                seven_eight,
                diff(8, 4, 5),
                diff(8, 3, 4),
                diff(8, 2, 3),
                diff(8, 1, 2),
            ];
            if n <= 7 {
                let mut perp = unit(8, 0, 1);
                perp[1] = 1;
                roots.retain(|r| dot(r, &perp) == 0);
            }
            if n == 6 {
                let perp = diff(8, 1, 2);
                roots.retain(|r| dot(r, &perp) == 0);
            }
            (roots, base8[..n].to_vec())
        }
        _ => return bad(),
    })
}

/// Exact solve of `Gram · c = rhs` by Gaussian elimination.
fn solve(gram: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = gram.len();
    let mut m: Vec<Vec<BigRational>> = gram.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &m[col][c] * &f;
                    m[r][c] = &m[r][c] - v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl RootSystem {
    pub fn build(kind: RootKind, rank: usize) -> Result<Self> {
        let (roots, base) = realization(kind, rank)?;
        let gram: Vec<Vec<BigRational>> = base.iter().map(|a| base.iter().map(|b| rat(dot(a, b))).collect()).collect();
        let mut pos = Vec::new();
        for r in &roots {
            let rhs: Vec<BigRational> = base.iter().map(|a| rat(dot(r, a))).collect();
            let c = solve(&gram, &rhs).ok_or_else(|| Error::Invalid("base is not linearly independent".into()))?;
            if c.iter().any(|x| !x.is_integer()) {
                return Err(Error::Invalid(format!("root {r:?} is not an integral combination of the base")));
            }
            let c: Vec<i64> = c.iter().map(|x| i64::try_from(x.to_integer()).expect("small coefficient")).collect();
            let back = base.iter().zip(&c).fold(vec![0; r.len()], |acc, (b, &k)| acc.iter().zip(b).map(|(x, y)| x + k * y).collect());
            if back != *r {
                return Err(Error::Invalid(format!("root {r:?} lies outside the span of the base")));
            }
            if c.iter().all(|&x| x >= 0) {
                pos.push((r.clone(), c));
            } else if !c.iter().all(|&x| x <= 0) {
                return Err(Error::Invalid(format!("root {r:?} is neither positive nor negative")));
            }
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.1.iter().sum();
            let hb: i64 = b.1.iter().sum();
            ha.cmp(&hb).then_with(|| b.1.cmp(&a.1))
        });
        let n = pos.len();
        if 2 * n != roots.len() {
            return Err(Error::Invalid("roots do not split into positive and negative halves".into()));
        }
        let mut ambient: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
        let mut coeffs: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
        for i in 0..n {
            ambient.push(ambient[i].iter().map(|x| -x).collect());
            coeffs.push(coeffs[i].iter().map(|x| -x).collect());
        }
        let by_coeffs: HashMap<Vec<i64>, usize> = coeffs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let by_ambient: HashMap<Vec<i64>, usize> = ambient.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let simple: Vec<usize> = base.iter().map(|b| by_ambient[b]).collect();
        let mut reflections = Vec::new();
        for &s in &simple {
            let a = &ambient[s];
            let aa = dot(a, a);
            let perm = ambient
                .iter()
                .map(|v| {
                    let num = 2 * dot(v, a);
                    if num % aa != 0 {
                        return Err(Error::Invalid("pairing is not integral".into()));
                    }
                    let k = num / aa;
                    let img: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - k * y).collect();
                    by_ambient.get(&img).copied().ok_or_else(|| Error::Invalid("reflection leaves the root set".into()))
                })
                .collect::<Result<Vec<usize>>>()?;
            reflections.push(perm);
        }
        let rs = RootSystem { kind, rank, ambient, coeffs, simple, by_coeffs, reflections };
        rs.check_lines()?;
        Ok(rs)
    }

    /// `ℝα ∩ Φ = {±α}`.
    fn check_lines(&self) -> Result<()> {
        let all = self.ambient.len();
        for i in 0..all {
            for j in i + 1..all {
                let (a, b) = (&self.ambient[i], &self.ambient[j]);
                let parallel = dot(a, b) * dot(a, b) == dot(a, a) * dot(b, b);
                if parallel && j != self.negate(i) {
                    return Err(Error::Invalid("two roots on one line".into()));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn positive_count(&self) -> usize {
        self.ambient.len() / 2
    }

    pub fn negate(&self, r: usize) -> usize {
        let n = self.positive_count();
        if r < n {
            r + n
        } else {
            r - n
        }
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.positive_count()
    }

    pub fn root_by_coeffs(&self, c: &[i64]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn root_by_ambient(&self, v: &[i64]) -> Option<usize> {
        self.ambient.iter().position(|a| a == v)
    }

    /// Index of `α + β` when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.root_by_coeffs(&add(&self.coeffs[a], &self.coeffs[b]))
    }

    pub fn height(&self, r: usize) -> i64 {
        self.coeffs[r].iter().sum()
    }

    /// Human-readable form over the simple roots, e.g. `α1+2α2`.
    pub fn label(&self, r: usize) -> String {
        let mut out = String::new();
        for (i, &c) in self.coeffs[r].iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("α{}", i + 1));
        }
        out
    }

    /// Ambient coordinates as exact rationals.
    pub fn ambient_rational(&self, r: usize) -> Vec<BigRational> {
        let two = rat(2);
        self.ambient[r].iter().map(|&x| rat(x) / &two).collect()
    }

    /// `cone_ℝ(A)`: positive roots that are nonnegative real combinations of `a`.
    pub fn cone_r(&self, a: &[usize]) -> Vec<usize> {
        let gens: Vec<&[i64]> = a.iter().map(|&r| self.coeffs[r].as_slice()).collect();
        (0..self.positive_count()).filter(|&b| a.contains(&b) || in_cone(&gens, &self.coeffs[b])).collect()
    }

    /// `cone_ℤ(A)`: closure of `a` under sums that are roots.
    pub fn cone_z(&self, a: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = a.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut i = 0;
        while i < set.len() {
            for j in 0..=i {
                if let Some(s) = self.sum(set[i], set[j]) {
                    if !set.contains(&s) {
                        set.push(s);
                    }
                }
            }
            i += 1;
        }
        set.sort_unstable();
        set
    }

    /// Free for `cone_ℝ`: closed, and no member in the cone of the others.
    pub fn is_really_abelian(&self, a: &[usize]) -> bool {
        if self.cone_r(a).len() != a.len() {
            return false;
        }
        (0..a.len()).all(|i| {
            let rest: Vec<&[i64]> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &r)| self.coeffs[r].as_slice()).collect();
            !in_cone(&rest, &self.coeffs[a[i]])
        })
    }

    pub fn is_abelian(&self, a: &[usize]) -> bool {
        a.iter().all(|&x| a.iter().all(|&y| self.sum(x, y).is_none()))
    }

    /// Pairing `2(β,α)/(α,α)` for the Cartan matrix.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| {
                self.simple
                    .iter()
                    .map(|&j| 2 * dot(&self.ambient[i], &self.ambient[j]) / dot(&self.ambient[j], &self.ambient[j]))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_counts() {
        let cases = [
            (RootKind::A, 3, 6),
            (RootKind::B, 3, 9),
            (RootKind::C, 3, 9),
            (RootKind::D, 4, 12),
            (RootKind::G, 2, 6),
            (RootKind::F, 4, 24),
            (RootKind::E, 6, 36),
            (RootKind::E, 7, 63),
            (RootKind::E, 8, 120),
        ];
        for (k, n, count) in cases {
            let rs = RootSystem::build(k, n).unwrap();
            assert_eq!(rs.positive_count(), count, "{k}{n}");
        }
    }

    #[test]
    fn a2_and_cones() {
        let rs = RootSystem::build(RootKind::A, 2).unwrap();
        assert_eq!(rs.cone_r(&[0, 1]), vec![0, 1, 2]);
        assert_eq!(rs.cone_z(&[0, 1]), vec![0, 1, 2]);
        let b3 = RootSystem::build(RootKind::B, 3).unwrap();
        let p = b3.root_by_ambient(&[2, 2, 0]).unwrap();
        let m = b3.root_by_ambient(&[2, -2, 0]).unwrap();
        let a1 = b3.root_by_ambient(&[2, 0, 0]).unwrap();
        assert!(b3.cone_r(&[p, m]).contains(&a1));
        assert!(!b3.cone_z(&[p, m]).contains(&a1));
    }

    #[test]
    fn cartan_g2() {
        let rs = RootSystem::build(RootKind::G, 2).unwrap();
        let c = rs.cartan();
        assert_eq!(c[0][0], 2);
        assert_eq!(c[0][1] * c[1][0], 3);
    }
}

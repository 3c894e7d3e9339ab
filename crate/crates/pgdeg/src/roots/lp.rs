use num::{BigInt, BigRational, Signed, Zero};

/// Whether `target` is a nonnegative real combination of `gens`. All vectors are
/// nonnegative integer coefficient vectors over a base, so only generators whose
/// support lies inside the target's support can take part.
pub fn in_cone(gens: &[&[i64]], target: &[i64]) -> bool {
    let support: Vec<usize> = (0..target.len()).filter(|&i| target[i] != 0).collect();
    if support.is_empty() {
        return true;
    }
    let usable: Vec<&[i64]> = gens
        .iter()
        .copied()
        .filter(|g| g.iter().enumerate().all(|(i, &x)| x == 0 || target[i] != 0) && g.iter().any(|&x| x != 0))
        .collect();
    if usable.iter().any(|g| *g == target) {
        return true;
    }
    // every target coordinate must be reachable
    if support.iter().any(|&i| usable.iter().all(|g| g[i] == 0)) {
        return false;
    }
    feasible(&usable, target, &support)
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Phase-one simplex with Bland's rule on `Σ c_j g_j = target`, `c ≥ 0`.
fn feasible(gens: &[&[i64]], target: &[i64], rows: &[usize]) -> bool {
    let m = rows.len();
    let k = gens.len();
    let cols = k + m;
    // tableau rows: constraint coefficients, artificial identity, right-hand side
    let mut t: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(r, &i)| {
            let mut row: Vec<BigRational> = gens.iter().map(|g| big(g[i])).collect();
            row.extend((0..m).map(|a| big(i64::from(a == r))));
            row.push(big(target[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| if j >= k && j < cols { BigRational::zero() } else { -t.iter().map(|row| row[j].clone()).sum::<BigRational>() })
        .collect();
    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cur = &t[l][cols] / &t[l][enter];
                        ratio < cur || (ratio == cur && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else { break };
        let p = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=cols {
                    if !t[r][j].is_zero() {
                        let v = &t[r][j] * &f;
                        t[i][j] = &t[i][j] - v;
                    }
                }
            }
        }
        let f = cost[enter].clone();
        for j in 0..=cols {
            if !t[r][j].is_zero() {
                let v = &t[r][j] * &f;
                cost[j] = &cost[j] - v;
            }
        }
        basis[r] = enter;
    }
    // the objective value is minus the last reduced cost entry
    cost[cols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cones() {
        let a: &[i64] = &[1, 0];
        let b: &[i64] = &[0, 1];
        assert!(in_cone(&[a, b], &[1, 1]));
        assert!(!in_cone(&[a], &[1, 1]));
        let c: &[i64] = &[1, 2];
        let d: &[i64] = &[1, 0];
        assert!(in_cone(&[c, d], &[1, 1]));
        assert!(!in_cone(&[c], &[1, 1]));
        let e: &[i64] = &[2, 1, 0];
        let f: &[i64] = &[0, 1, 2];
        assert!(in_cone(&[e, f], &[1, 1, 1]));
        assert!(!in_cone(&[e, f], &[1, 2, 1]));
    }
}

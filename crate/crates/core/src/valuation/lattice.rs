//! Finitely generated subgroups of `Q^r`: Hermite normal form, membership
//! with integer certificates, and subgroup indices.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ordgroup::{ExtValue, Rat};

/// Integer echelon basis of a subgroup, with the transform back to the
/// original generators.
#[derive(Clone, Debug)]
struct Hnf {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// `rows[i] = sum_j transform[i][j] * gens[j]`.
    transform: Vec<Vec<BigInt>>,
}

fn common_denominator(vals: &[&[Rat]]) -> BigInt {
    vals.iter().flat_map(|v| v.iter()).fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn scaled(v: &[Rat], d: &BigInt) -> Vec<BigInt> {
    v.iter().map(|q| (q * Rat::from_integer(d.clone())).to_integer()).collect()
}

fn hnf(gens: Vec<Vec<BigInt>>, width: usize) -> Hnf {
    let k = gens.len();
    let mut rows = gens;
    let mut tr: Vec<Vec<BigInt>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == k {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows r..
            let best =
                (r..k).filter(|&i| !rows[i][c].is_zero()).min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(b) = best else { break };
            rows.swap(r, b);
            tr.swap(r, b);
            let mut done = true;
            for i in r + 1..k {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for col in 0..width {
                    let t = &rows[r][col] * &q;
                    rows[i][col] -= t;
                }
                for col in 0..k {
                    let t = &tr[r][col] * &q;
                    tr[i][col] -= t;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < k && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                rows[r].iter_mut().for_each(|x| *x = -x.clone());
                tr[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    tr.truncate(r);
    Hnf { rows, pivots, transform: tr }
}

fn finite_coords(v: &ExtValue) -> &[Rat] {
    v.coords().expect("finite value in a lattice")
}

/// Integer coefficients `n` with `sum n_j gens[j] = target`, if any.
pub fn solve(gens: &[ExtValue], target: &ExtValue) -> Option<Vec<BigInt>> {
    let width = finite_coords(target).len();
    let mut all: Vec<&[Rat]> = gens.iter().map(finite_coords).collect();
    all.push(finite_coords(target));
    let d = common_denominator(&all);
    let h = hnf(gens.iter().map(|g| scaled(finite_coords(g), &d)).collect(), width);
    let mut t = scaled(finite_coords(target), &d);
    let mut coeffs = vec![BigInt::zero(); h.rows.len()];
    for (i, &c) in h.pivots.iter().enumerate() {
        let (q, rem) = t[c].div_rem(&h.rows[i][c]);
        if !rem.is_zero() {
            return None;
        }
        for col in 0..width {
            t[col] -= &h.rows[i][col] * &q;
        }
        coeffs[i] = q;
    }
    if t.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut n = vec![BigInt::zero(); gens.len()];
    for (i, c) in coeffs.iter().enumerate() {
        for (j, u) in h.transform[i].iter().enumerate() {
            n[j] += c * u;
        }
    }
    Some(n)
}

/// Index `[<sup> : <sub>]` when `sub` lies in `sup` with the same rational
/// span; `None` when the spans differ (infinite index).
pub fn index(sub: &[ExtValue], sup: &[ExtValue], width: usize) -> Option<BigInt> {
    let all: Vec<&[Rat]> = sub.iter().chain(sup).map(finite_coords).collect();
    let d = common_denominator(&all);
    let hs = hnf(sub.iter().map(|g| scaled(finite_coords(g), &d)).collect(), width);
    let hp = hnf(sup.iter().map(|g| scaled(finite_coords(g), &d)).collect(), width);
    if hs.pivots != hp.pivots {
        return None;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &c) in hs.pivots.iter().enumerate() {
        num *= &hs.rows[i][c];
        den *= &hp.rows[i][c];
    }
    Some(num / den)
}

/// Rank of the rational span.
pub fn rank(gens: &[ExtValue], width: usize) -> usize {
    let all: Vec<&[Rat]> = gens.iter().map(finite_coords).collect();
    let d = common_denominator(&all);
    hnf(gens.iter().map(|g| scaled(finite_coords(g), &d)).collect(), width).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::rat;

    fn v(c: &[(i64, i64)]) -> ExtValue {
        ExtValue::Finite(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn rank_one_indices() {
        let z = vec![v(&[(1, 1)])];
        let half = vec![v(&[(1, 1)]), v(&[(1, 2)])];
        assert_eq!(index(&z, &half, 1), Some(BigInt::from(2)));
        let three_halves = vec![v(&[(1, 1)]), v(&[(1, 2)]), v(&[(3, 2)])];
        assert_eq!(index(&half, &three_halves, 1), Some(BigInt::from(1)));
        assert_eq!(index(&[v(&[(2, 3)])], &[v(&[(1, 6)])], 1), Some(BigInt::from(4)));
    }

    #[test]
    fn rank_drop_is_infinite_index() {
        let sub = vec![v(&[(1, 1), (0, 1)])];
        let sup = vec![v(&[(1, 1), (0, 1)]), v(&[(0, 1), (1, 1)])];
        assert_eq!(index(&sub, &sup, 2), None);
        assert_eq!(index(&[], &[v(&[(1, 2)])], 1), None);
    }

    #[test]
    fn solve_gives_certificates() {
        let gens = vec![v(&[(1, 1)]), v(&[(1, 2)]), v(&[(3, 2)])];
        let target = v(&[(5, 2)]);
        let n = solve(&gens, &target).unwrap();
        let sum: Rat = n.iter().zip(&gens).map(|(c, g)| Rat::from_integer(c.clone()) * &g.coords().unwrap()[0]).sum();
        assert_eq!(sum, rat(5, 2));
        assert!(solve(&[v(&[(1, 1)])], &v(&[(1, 2)])).is_none());
        let gens2 = vec![v(&[(0, 1), (2, 1)]), v(&[(1, 1), (1, 1)])];
        assert!(solve(&gens2, &v(&[(1, 1), (3, 1)])).is_some());
        assert!(solve(&gens2, &v(&[(0, 1), (1, 1)])).is_none());
    }
}

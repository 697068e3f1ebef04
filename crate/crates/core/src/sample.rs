//! Seeded random and grid-enumerated polynomials over any base field with a
//! uniformizer. Coefficients are built from small integers and powers of the
//! uniformizer, so the same generators serve `Q` with `v_p` and `F_q(t)`.

use rand::Rng;

use crate::algebra::{BaseValuation, Field, Poly};
use crate::valuation::{Elem, P};

/// Small coefficients `0, 1, -1, 2, pi, pi + 1, pi^2, 1/pi`, deduplicated
/// (over `Q` with `v_2` the uniformizer is 2 itself).
pub fn coefficient_pool<V: BaseValuation>(base: &V) -> Vec<Elem<V>> {
    let k = base.field();
    let mut pool = vec![k.zero(), k.one(), k.from_i64(-1), k.from_i64(2)];
    if let Some(pi) = base.uniformizer() {
        pool.push(pi.clone());
        pool.push(k.add(&pi, &k.one()));
        pool.push(k.mul(&pi, &pi));
        if let Some(inv) = k.inv(&pi) {
            pool.push(inv);
        }
    }
    let mut out: Vec<Elem<V>> = Vec::with_capacity(pool.len());
    for c in pool {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Number of monic polynomials of degree `d` with coefficients in a pool of
/// size `n`, saturating.
pub fn grid_size(n: usize, d: usize) -> usize {
    (0..d).fold(1usize, |acc, _| acc.saturating_mul(n))
}

/// The `index`-th monic polynomial of degree `d` over the pool, with the
/// constant term varying fastest.
pub fn grid_poly<V: BaseValuation>(base: &V, pool: &[Elem<V>], d: usize, mut index: usize) -> P<V> {
    let k = base.field();
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(pool[index % pool.len()].clone());
        index /= pool.len();
    }
    coeffs.push(k.one());
    Poly::from_coeffs(k, coeffs)
}

/// Random field element `sum c_i pi^i` with `c_i` in `-3..=3`, sometimes
/// scaled by `pi^-1` or divided by `1 + pi`.
pub fn random_coeff<V: BaseValuation, R: Rng>(base: &V, rng: &mut R) -> Elem<V> {
    let k = base.field();
    let pi = base.uniformizer().unwrap_or_else(|| k.from_i64(2));
    let mut acc = k.zero();
    let mut pw = k.one();
    for _ in 0..3 {
        let c = k.from_i64(rng.gen_range(-3..=3));
        acc = k.add(&acc, &k.mul(&c, &pw));
        pw = k.mul(&pw, &pi);
    }
    match rng.gen_range(0..8) {
        0 => k.div(&acc, &pi).unwrap_or(acc),
        1 => {
            let d = k.add(&k.one(), &pi);
            k.div(&acc, &d).unwrap_or(acc)
        }
        _ => acc,
    }
}

/// Random polynomial of degree at most `max_deg`, possibly zero.
pub fn random_poly<V: BaseValuation, R: Rng>(base: &V, rng: &mut R, max_deg: usize) -> P<V> {
    let k = base.field();
    let d = rng.gen_range(0..=max_deg);
    let coeffs = (0..=d).map(|_| random_coeff(base, rng)).collect();
    Poly::from_coeffs(k, coeffs)
}

/// Random nonzero polynomial of degree at most `max_deg`.
pub fn random_nonzero<V: BaseValuation, R: Rng>(base: &V, rng: &mut R, max_deg: usize) -> P<V> {
    loop {
        let f = random_poly(base, rng, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random monic polynomial of degree exactly `d`.
pub fn random_monic<V: BaseValuation, R: Rng>(base: &V, rng: &mut R, d: usize) -> P<V> {
    let k = base.field();
    let mut coeffs: Vec<_> = (0..d).map(|_| random_coeff(base, rng)).collect();
    coeffs.push(k.one());
    Poly::from_coeffs(k, coeffs)
}

/// Random non-constant polynomial with degree in `1..=max_deg`.
pub fn random_nonconstant<V: BaseValuation, R: Rng>(base: &V, rng: &mut R, max_deg: usize) -> P<V> {
    let k = base.field();
    let d = rng.gen_range(1..=max_deg.max(1));
    let mut lead = random_coeff(base, rng);
    while k.is_zero(&lead) {
        lead = random_coeff(base, rng);
    }
    let mut coeffs: Vec<_> = (0..d).map(|_| random_coeff(base, rng)).collect();
    coeffs.push(lead);
    Poly::from_coeffs(k, coeffs)
}

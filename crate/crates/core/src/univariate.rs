//! Dense univariate polynomials as coefficient vectors, lowest degree first.

use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

pub fn trim<F: Scalar>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

/// Degree, `None` for zero.
pub fn degree<F: Scalar>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative<F: Scalar>(p: &[F]) -> Vec<F> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c.clone() * F::from_i64(i as i64)).collect())
}

pub fn monic<F: Scalar>(p: &[F]) -> Vec<F> {
    let p = trim(p.to_vec());
    match p.last() {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / lead.clone()).collect()
        }
        None => p,
    }
}

pub fn mul<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem<F: Scalar>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let mut q = vec![F::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone() / b[db].clone();
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] = r[dr - db + i].clone() - c.clone() * bi.clone();
        }
        r[dr] = F::zero();
        q[dr - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// True when `gcd(p, p')` is constant.
pub fn is_squarefree<F: Scalar>(p: &[F]) -> bool {
    degree(&gcd(p, &derivative(p))).is_none_or(|d| d == 0)
}

/// Coefficients of a one-variable polynomial.
pub fn from_poly<F: Scalar>(p: &Polynomial<F>) -> Vec<F> {
    assert_eq!(p.nvars(), 1, "expected a univariate polynomial");
    let mut v = vec![F::zero(); p.degree().map_or(0, |d| d as usize + 1)];
    for (m, c) in p.terms() {
        v[m.exponents()[0] as usize] = c.clone();
    }
    v
}

pub fn to_poly<F: Scalar>(v: &[F]) -> Polynomial<F> {
    Polynomial::from_terms(
        1,
        v.iter().enumerate().map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
    )
}

//! Degree bounds, Sylvester and Macaulay matrices, and the monomial basis of
//! the quotient algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{coeff_vector, mono_basis, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::system::PolySystem;

/// Degree parameters of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Degree bound for the basis monomials.
    pub k: u32,
    pub delta: u32,
    /// Column degree of the Macaulay matrix.
    pub big_delta: u32,
    /// Largest degree in the basis, known once the basis is extracted.
    pub d: Option<u32>,
}

/// User overrides of the default bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundOverrides {
    pub k: Option<u32>,
    pub delta: Option<u32>,
    pub big_delta: Option<u32>,
}

/// Default `k` and `delta` for the given sorted degrees.
///
/// The provisional column degree `max(delta-1, 2k+1)` is large enough for
/// every basis the bounds allow; it is tightened once the basis is known.
pub fn degree_bounds(degrees: &[u32], m: usize, at_infinity: bool) -> Result<Bounds> {
    let s = degrees.len();
    if s < m {
        return Err(Error::Precondition(format!(
            "{s} polynomials in {m} variables cannot define a zero-dimensional ideal"
        )));
    }
    if degrees.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("degrees must be sorted non-increasing".into()));
    }
    let k = if s == m {
        degrees.iter().map(|d| d.saturating_sub(1)).sum()
    } else {
        (degrees[..m + 1].iter().sum::<u32>()).saturating_sub(m as u32)
    };
    let delta = if at_infinity { k + 1 } else { k };
    Ok(Bounds { k, delta, big_delta: final_big_delta(delta, k), d: None })
}

/// `max(delta - 1, 2D + 1)`.
pub fn final_big_delta(delta: u32, d: u32) -> u32 {
    delta.saturating_sub(1).max(2 * d + 1)
}

/// Rows are `x^alpha * f_i` for every `deg(x^alpha) <= t - d_i`; columns are `mono_basis(m, t)`.
#[derive(Clone, Debug)]
pub struct Sylvester<F: Scalar> {
    pub matrix: Matrix<F>,
    /// `(i, alpha)` of each row, `i` indexing the sorted system.
    pub labels: Vec<(usize, Monomial)>,
    pub columns: Vec<Monomial>,
}

pub fn sylvester_matrix<F: Scalar>(sys: &PolySystem<F>, t: u32) -> Result<Sylvester<F>> {
    let d1 = sys.degrees()[0];
    if t < d1 {
        return Err(Error::Bounds(format!("Sylvester degree {t} is below the top input degree {d1}")));
    }
    let m = sys.nvars();
    let columns = mono_basis(m, t);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, (f, &d)) in sys.polys().iter().zip(sys.degrees()).enumerate() {
        for alpha in mono_basis(m, t - d) {
            rows.push(coeff_vector(&f.mul_monomial(&alpha), &columns)?);
            labels.push((i, alpha));
        }
    }
    let matrix = Matrix::from_rows_sized(rows, columns.len());
    Ok(Sylvester { matrix, labels, columns })
}

/// Macaulay matrix together with the quotient basis it determines.
#[derive(Clone, Debug)]
pub struct QuotientData<F: Scalar> {
    pub nvars: usize,
    /// Rows span the degree-`Delta` part of the ideal truncated at `Delta+1`.
    pub mac: Matrix<F>,
    /// `mono_basis(m, Delta)`.
    pub columns: Vec<Monomial>,
    /// Standard monomials `B`, lowest first.
    pub basis: Vec<Monomial>,
    /// Column positions of `basis`.
    pub basis_idx: Vec<usize>,
    /// Row `c` holds the coordinates in `B` of the normal form of `columns[c]`.
    /// Its columns span the kernel of `mac`.
    pub reducer: Matrix<F>,
    pub bounds: Bounds,
    index: HashMap<Monomial, usize>,
}

impl<F: Scalar> QuotientData<F> {
    /// Dimension of the quotient algebra.
    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn column_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates in `B` of the normal form of `p`.
    pub fn normal_form_coords(&self, p: &Polynomial<F>) -> Result<Vec<F>> {
        let mut out = vec![F::zero(); self.n()];
        for (m, c) in p.terms() {
            let row = self.column_of(m).ok_or(Error::DegreeOverflow {
                degree: m.degree(),
                bound: self.bounds.big_delta,
            })?;
            for (j, o) in out.iter_mut().enumerate() {
                let r = &self.reducer[(row, j)];
                if !r.is_zero() {
                    *o = o.clone() + c.clone() * r.clone();
                }
            }
        }
        Ok(out)
    }

    /// Representative of `p` modulo the ideal, supported on `B`.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let coords = self.normal_form_coords(p)?;
        Ok(self.from_basis_coords(&coords))
    }

    pub fn from_basis_coords(&self, coords: &[F]) -> Polynomial<F> {
        Polynomial::from_terms(self.nvars, self.basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Reads a row of `mac` as a polynomial.
    pub fn mac_row_poly(&self, r: usize) -> Polynomial<F> {
        Polynomial::from_terms(self.nvars, self.columns.iter().cloned().zip(self.mac.row(r).iter().cloned()))
    }
}

/// Eliminates the degree-`Delta+1` columns of the Sylvester matrix.
///
/// Columns are reduced from the high-degree end so that the non-pivot
/// columns, which form `B`, are the lowest-degree standard monomials.
/// The basis is not yet checked against `k`; see [`quotient_basis`].
pub fn macaulay_matrix<F: Scalar>(sys: &PolySystem<F>, big_delta: u32) -> Result<QuotientData<F>> {
    let syl = sylvester_matrix(sys, big_delta + 1)?;
    let m = sys.nvars();
    let columns = mono_basis(m, big_delta);
    let nlow = columns.len();
    let order: Vec<usize> = (0..syl.columns.len()).rev().collect();
    let rr = syl.matrix.rref_ordered(&order);
    let mut rows = Vec::new();
    let mut pivot = vec![false; nlow];
    for (i, &p) in rr.pivots.iter().enumerate() {
        if p < nlow {
            rows.push(rr.matrix.row(i)[..nlow].to_vec());
            pivot[p] = true;
        }
    }
    let mac = Matrix::from_rows_sized(rows, nlow);
    let basis_idx: Vec<usize> = (0..nlow).filter(|&c| !pivot[c]).collect();
    let basis: Vec<Monomial> = basis_idx.iter().map(|&c| columns[c].clone()).collect();
    let low_order: Vec<usize> = (0..nlow).rev().collect();
    let reducer = mac.nullspace_ordered(&low_order);
    let index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(QuotientData {
        nvars: m,
        mac,
        columns,
        basis,
        basis_idx,
        reducer,
        bounds: Bounds { k: 0, delta: 0, big_delta, d: None },
        index,
    })
}

/// Checks the basis against `k` and records `D`.
pub fn quotient_basis<F: Scalar>(qd: &mut QuotientData<F>, k: u32) -> Result<Vec<Monomial>> {
    if let Some(bad) = qd.basis.iter().find(|b| b.degree() > k) {
        return Err(Error::Bounds(format!(
            "standard monomial of degree {} exceeds k = {k}; raise delta",
            bad.degree()
        )));
    }
    qd.bounds.k = k;
    qd.bounds.d = Some(qd.basis.iter().map(Monomial::degree).max().unwrap_or(0));
    Ok(qd.basis.clone())
}

/// Full construction: default or overridden bounds, basis extraction, and
/// the final column degree `max(delta-1, 2D+1)`.
pub fn quotient_data<F: Scalar>(
    sys: &PolySystem<F>,
    at_infinity: bool,
    overrides: BoundOverrides,
) -> Result<QuotientData<F>> {
    let mut b = degree_bounds(sys.degrees(), sys.nvars(), at_infinity)?;
    if let Some(k) = overrides.k {
        b.k = k;
    }
    if let Some(delta) = overrides.delta {
        b.delta = delta;
    }
    if b.k > b.delta {
        return Err(Error::Bounds(format!("k = {} exceeds delta = {}", b.k, b.delta)));
    }
    let provisional = overrides.big_delta.unwrap_or_else(|| final_big_delta(b.delta, b.k));
    let mut qd = macaulay_matrix(sys, provisional)?;
    quotient_basis(&mut qd, b.k)?;
    if overrides.big_delta.is_none() {
        let d = qd.bounds.d.unwrap_or(0);
        let target = final_big_delta(b.delta, d);
        if target != provisional {
            qd = macaulay_matrix(sys, target)?;
            quotient_basis(&mut qd, b.k)?;
        }
    }
    qd.bounds.delta = b.delta;
    Ok(qd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    fn sys(vars: &[&str], polys: &[&str]) -> PolySystem<Q> {
        PolySystem::parse(vars, polys).unwrap()
    }

    #[test]
    fn bound_examples() {
        let b = degree_bounds(&[2, 2], 2, false).unwrap();
        assert_eq!((b.k, b.delta), (2, 2));
        let b = degree_bounds(&[1, 1], 1, true).unwrap();
        assert_eq!((b.k, b.delta), (1, 2));
        let b = degree_bounds(&[3], 1, false).unwrap();
        assert_eq!((b.k, b.delta), (2, 2));
        assert!(degree_bounds(&[2], 2, true).is_err());
    }

    #[test]
    fn sylvester_examples() {
        let s = sylvester_matrix(&sys(&["x"], &["x^2"]), 3).unwrap();
        assert_eq!(s.matrix, Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        let s = sylvester_matrix(&sys(&["x"], &["x+1", "x"]), 1).unwrap();
        assert_eq!(s.matrix, Matrix::from_i64(&[&[1, 1], &[0, 1]]));
        let s = sylvester_matrix(&sys(&["x1", "x2"], &["x1", "x2"]), 1).unwrap();
        assert_eq!(s.matrix.rows(), 2);
        for r in 0..2 {
            assert_eq!(s.matrix.row(r).iter().filter(|c| !Scalar::is_zero(*c)).count(), 1);
        }
    }

    #[test]
    fn macaulay_examples() {
        let qd = macaulay_matrix(&sys(&["x"], &["x^2"]), 2).unwrap();
        assert_eq!(qd.mac, Matrix::from_i64(&[&[0, 0, 1]]));
        let qd = macaulay_matrix(&sys(&["x"], &["x+1", "x"]), 2).unwrap();
        assert_eq!((qd.mac.rank(), qd.n()), (3, 0));
        let qd = macaulay_matrix(&sys(&["x1", "x2"], &["x1^2", "x2^2"]), 4).unwrap();
        assert_eq!(qd.n(), 4);
        assert!(qd.mac.mul(&qd.reducer).unwrap().is_zero());
    }

    #[test]
    fn basis_examples() {
        let mut qd = macaulay_matrix(&sys(&["x"], &["x^2"]), 3).unwrap();
        let b = quotient_basis(&mut qd, 1).unwrap();
        assert_eq!(b, mono_basis(1, 1));
        assert_eq!(qd.bounds.d, Some(1));
        let qd = quotient_data(&sys(&["x1", "x2"], &["x1^2", "x2^2"]), false, BoundOverrides::default()).unwrap();
        let names: Vec<String> = vec!["x1".into(), "x2".into()];
        let texts: Vec<String> = qd.basis.iter().map(|m| m.to_text(&names)).collect();
        assert_eq!(texts, vec!["1", "x1", "x2", "x1*x2"]);
        assert_eq!(qd.bounds.d, Some(2));
        assert_eq!(qd.bounds.big_delta, 5);
        let qd = quotient_data(&sys(&["x"], &["x+1", "x"]), true, BoundOverrides::default()).unwrap();
        assert_eq!((qd.n(), qd.bounds.k, qd.bounds.delta), (0, 1, 2));
    }

    #[test]
    fn normal_forms() {
        let qd = quotient_data(&sys(&["x"], &["x^2"]), true, BoundOverrides::default()).unwrap();
        let x2 = Polynomial::parse("x^2", &["x".to_string()]).unwrap();
        assert!(qd.normal_form(&x2).unwrap().is_zero());
        for b in &qd.basis {
            let p = Polynomial::term(b.clone(), q(1, 1));
            assert_eq!(qd.normal_form(&p).unwrap(), p);
        }
        let names: Vec<String> = vec!["x1".into(), "x2".into()];
        let qd = quotient_data(&sys(&["x1", "x2"], &["x1^2", "x2^2"]), false, BoundOverrides::default()).unwrap();
        let p = Polynomial::parse("x1^2*x2", &names).unwrap();
        assert!(qd.normal_form(&p).unwrap().is_zero());
        let high = Polynomial::parse("x1^9", &names).unwrap();
        assert!(matches!(qd.normal_form(&high), Err(Error::DegreeOverflow { .. })));
    }
}

//! Moment matrices, the generalized Jacobian, matrices of traces, and the
//! radical of the ideal read off from them.
//!
//! Conventions:
//! - `X = reducer * M` has one row per column monomial of the Macaulay matrix
//!   and satisfies `mac * X = 0`; its rows at `B` equal the moment matrix.
//! - A radical multiplication matrix `M_{x_k}` is the solution of
//!   `T~ M = T~_{x_k}`, so column `j` holds the coordinates of `x_k * b~_j`.
//! - [`multiplication_matrix`] uses the row convention: row `i` holds the
//!   coordinates of `p * b_i`, which makes `T = M_J * moment` literal.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::linalg::{eig_generalized, random_coefficients, Matrix};
use crate::macaulay::QuotientData;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{convert, Approx, Scalar};
use crate::system::{jacobian_det, PolySystem};

/// A sampled linear functional on the quotient algebra.
#[derive(Clone, Debug)]
pub struct MomentData<F: Scalar> {
    /// Values of the functional on the column monomials.
    pub y: Vec<F>,
    /// `moment[i][j] = y(b_i * b_j)`.
    pub moment: Matrix<F>,
    pub rank: usize,
    /// Indices into `B` of a maximal nonsingular principal minor of `moment`.
    pub alpha_idx: Vec<usize>,
    pub x: Matrix<F>,
    /// Seed of the retained draw and number of draws made.
    pub seed: u64,
    pub draws: usize,
}

/// Draws a functional from the kernel of the Macaulay matrix.
///
/// Retries use seeds `seed+1, seed+2, ...`; the first draw of maximal rank
/// is kept and sampling stops as soon as the rank reaches `N`.
pub fn sample_moment<F: Scalar>(qd: &QuotientData<F>, seed: u64, max_retries: usize) -> Result<MomentData<F>> {
    let n = qd.n();
    if n == 0 {
        return Err(Error::Precondition("the quotient is zero: the radical is the unit ideal".into()));
    }
    let mut best: Option<MomentData<F>> = None;
    let mut draws = 0;
    for attempt in 0..=max_retries as u64 {
        let s = seed.wrapping_add(attempt);
        let c = random_coefficients::<F>(n, s);
        draws += 1;
        let md = moment_from_coeffs(qd, &c, s)?;
        let better = best.as_ref().is_none_or(|b| md.rank > b.rank);
        if better {
            best = Some(md);
        }
        if best.as_ref().is_some_and(|b| b.rank == n) {
            break;
        }
    }
    let mut md = best.expect("at least one draw");
    md.draws = draws;
    Ok(md)
}

/// Moment data of the functional whose values on `B` are `c`.
pub fn moment_from_coeffs<F: Scalar>(qd: &QuotientData<F>, c: &[F], seed: u64) -> Result<MomentData<F>> {
    let n = qd.n();
    let y = qd.reducer.mul_vec(c);
    let mut moment = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let m = qd.basis[i].mul(&qd.basis[j]);
            let col = qd
                .column_of(&m)
                .ok_or(Error::DegreeOverflow { degree: m.degree(), bound: qd.bounds.big_delta })?;
            moment[(i, j)] = y[col].clone();
        }
    }
    let alpha_idx = moment.rref().pivots;
    let x = qd.reducer.mul(&moment)?;
    Ok(MomentData { y, rank: alpha_idx.len(), moment, alpha_idx, x, seed, draws: 1 })
}

/// True iff the sampled functional is nondegenerate, i.e. the algebra is Gorenstein.
pub fn gorenstein_test<F: Scalar>(md: &MomentData<F>, n: usize) -> bool {
    md.rank == n
}

/// Generalized Jacobian and the traces built on it.
#[derive(Clone, Debug)]
pub struct TraceData<F: Scalar> {
    /// `B_alpha`, the basis monomials indexing the trace matrices.
    pub basis: Vec<Monomial>,
    /// Dual basis elements of `basis` under the functional.
    pub duals: Vec<Polynomial<F>>,
    /// Normal form of the sum of `b_i * b_i^*`.
    pub j: Polynomial<F>,
    pub t: Matrix<F>,
    pub t_shift: Vec<Matrix<F>>,
    /// Indices into `basis` of the maximal nonsingular principal minor of `t`.
    pub tilde_idx: Vec<usize>,
}

impl<F: Scalar> TraceData<F> {
    /// Rank of the trace matrix, the number of distinct roots.
    pub fn rank(&self) -> usize {
        self.tilde_idx.len()
    }
}

/// Which basis indexes the trace matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TracePath {
    /// Full basis when the functional is nondegenerate, `B_alpha` otherwise.
    #[default]
    Auto,
    /// Always work through the `B_alpha` minor.
    Alpha,
}

/// Dual basis from the inverse moment minor, and `J` reduced into `span(B)`.
pub fn dual_basis_and_jacobian<F: Scalar>(
    md: &MomentData<F>,
    qd: &QuotientData<F>,
    path: TracePath,
) -> Result<TraceData<F>> {
    let n = qd.n();
    let (basis, inv) = if path == TracePath::Auto && md.rank == n {
        let inv = md.moment.inverse().map_err(|_| Error::Contract("moment matrix is singular".into()))?;
        (qd.basis.clone(), inv)
    } else {
        if md.alpha_idx.is_empty() {
            return Err(Error::Contract("moment matrix is zero".into()));
        }
        let minor = md.moment.submatrix(&md.alpha_idx, &md.alpha_idx);
        let inv = minor.inverse().map_err(|_| Error::Contract("moment minor is singular".into()))?;
        (md.alpha_idx.iter().map(|&i| qd.basis[i].clone()).collect::<Vec<_>>(), inv)
    };
    let r = basis.len();
    let nv = qd.nvars;
    let duals: Vec<Polynomial<F>> = (0..r)
        .map(|i| Polynomial::from_terms(nv, (0..r).map(|j| (basis[j].clone(), inv[(j, i)].clone()))))
        .collect();
    let mut raw = Polynomial::zero(nv);
    for (b, d) in basis.iter().zip(&duals) {
        raw = &raw + &d.mul_monomial(b);
    }
    let j = qd.normal_form(&raw)?;
    Ok(TraceData { basis, duals, j, t: Matrix::zeros(0, 0), t_shift: Vec::new(), tilde_idx: Vec::new() })
}

/// Normal form of `p` (re-exported here for the trace computations).
pub fn normal_form<F: Scalar>(p: &Polynomial<F>, qd: &QuotientData<F>) -> Result<Polynomial<F>> {
    qd.normal_form(p)
}

/// Rows are the coefficient vectors of `b * p` over the Macaulay columns.
pub fn syl_b<F: Scalar>(p: &Polynomial<F>, basis: &[Monomial], qd: &QuotientData<F>) -> Result<Matrix<F>> {
    let mut out = Matrix::zeros(basis.len(), qd.columns.len());
    for (i, b) in basis.iter().enumerate() {
        for (m, c) in p.terms() {
            let prod = m.mul(b);
            let col = qd
                .column_of(&prod)
                .ok_or(Error::DegreeOverflow { degree: prod.degree(), bound: qd.bounds.big_delta })?;
            out[(i, col)] = c.clone();
        }
    }
    Ok(out)
}

fn alpha_columns<F: Scalar>(td: &TraceData<F>, md: &MomentData<F>, qd: &QuotientData<F>) -> Matrix<F> {
    let idx: Vec<usize> = td
        .basis
        .iter()
        .map(|b| qd.basis.iter().position(|c| c == b).expect("basis monomial"))
        .collect();
    md.x.select_cols(&idx)
}

/// `T = Syl_B(J) X` and `T_{x_k} = Syl_B(x_k J) X`.
pub fn trace_matrices<F: Scalar>(mut td: TraceData<F>, md: &MomentData<F>, qd: &QuotientData<F>) -> Result<TraceData<F>> {
    let x = alpha_columns(&td, md, qd);
    td.t = syl_b(&td.j, &td.basis, qd)?.mul(&x)?;
    td.t_shift = (0..qd.nvars)
        .map(|k| {
            let xj = td.j.mul_monomial(&Monomial::var(qd.nvars, k));
            syl_b(&xj, &td.basis, qd)?.mul(&x)
        })
        .collect::<Result<_>>()?;
    td.tilde_idx = td.t.rref().pivots;
    Ok(td)
}

/// Shifted traces with `x_k J` reduced before the Sylvester product.
pub fn shifted_traces_reduced<F: Scalar>(td: &TraceData<F>, md: &MomentData<F>, qd: &QuotientData<F>) -> Result<Vec<Matrix<F>>> {
    let x = alpha_columns(td, md, qd);
    (0..qd.nvars)
        .map(|k| {
            let xj = qd.normal_form(&td.j.mul_monomial(&Monomial::var(qd.nvars, k)))?;
            syl_b(&xj, &td.basis, qd)?.mul(&x)
        })
        .collect()
}

/// Multiplication by `p` on the quotient, row `i` = coordinates of `p * b_i`.
pub fn multiplication_matrix<F: Scalar>(p: &Polynomial<F>, qd: &QuotientData<F>) -> Result<Matrix<F>> {
    let rows = qd
        .basis
        .iter()
        .map(|b| qd.normal_form_coords(&p.mul_monomial(b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows_sized(rows, qd.n()))
}

/// The trace matrix recomputed as `M_J * moment` (full basis only).
pub fn trace_by_multiplication<F: Scalar>(td: &TraceData<F>, md: &MomentData<F>, qd: &QuotientData<F>) -> Result<Matrix<F>> {
    multiplication_matrix(&td.j, qd)?.mul(&md.moment)
}

/// Multiplication matrices of the radical quotient and generators of the radical.
#[derive(Clone, Debug)]
pub struct RadicalResult<F: Scalar> {
    /// `B~`, a monomial basis of the quotient by the radical.
    pub basis: Vec<Monomial>,
    /// One matrix per variable, column `j` = coordinates of `x_k * b~_j`.
    pub mult: Vec<Matrix<F>>,
    pub generators: Vec<Polynomial<F>>,
    pub roots: Option<Vec<Vec<Complex<f64>>>>,
}

impl<F: Scalar> RadicalResult<F> {
    /// The unit ideal: empty basis, generator 1.
    pub fn unit(nvars: usize) -> Self {
        RadicalResult {
            basis: Vec::new(),
            mult: vec![Matrix::zeros(0, 0); nvars],
            generators: vec![Polynomial::one(nvars)],
            roots: Some(Vec::new()),
        }
    }
}

/// `x_k * b~_j - sum_l M[l][j] b~_l` for every variable and basis element.
pub fn multiplication_generators<F: Scalar>(basis: &[Monomial], mult: &[Matrix<F>], nvars: usize) -> Vec<Polynomial<F>> {
    let mut out = Vec::new();
    for (k, mk) in mult.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let mut g = Polynomial::term(bj.mul(&Monomial::var(nvars, k)), F::one());
            for (l, bl) in basis.iter().enumerate() {
                g.add_term(bl.clone(), -mk[(l, j)].clone());
            }
            out.push(g);
        }
    }
    out
}

/// Monic, nonzero, duplicate-free, first occurrence kept.
pub fn clean_generators<F: Scalar>(gens: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut out: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = g.monic();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Solves `T~ M = T~_{x_k}` on the maximal nonsingular minor of `T`.
pub fn radical_mult_matrices<F: Scalar>(td: &TraceData<F>) -> Result<RadicalResult<F>> {
    let idx = &td.tilde_idx;
    let nv = td.t_shift.len();
    if idx.is_empty() {
        return Err(Error::Contract("trace matrix vanishes on a nonzero quotient".into()));
    }
    let tt = td.t.submatrix(idx, idx);
    let mult = td
        .t_shift
        .iter()
        .map(|tx| tt.solve_right(&tx.submatrix(idx, idx)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Contract(format!("trace minor: {e}")))?;
    let basis: Vec<Monomial> = idx.iter().map(|&i| td.basis[i].clone()).collect();
    let mut generators = multiplication_generators(&basis, &mult, nv);
    let kernel = td.t.nullspace();
    for c in 0..kernel.cols() {
        generators.push(Polynomial::from_terms(
            nv,
            td.basis.iter().cloned().zip(kernel.column(c)),
        ));
    }
    Ok(RadicalResult { basis, mult, generators: clean_generators(generators), roots: None })
}

/// Roots from the generalized eigenproblem of a random combination of the
/// shifted traces against `T~`.
pub fn roots<F: Scalar>(rr: &RadicalResult<F>, td: &TraceData<F>, seed: u64) -> Result<Vec<Vec<Complex<f64>>>> {
    let idx = &td.tilde_idx;
    let tt: Matrix<Approx> = td.t.submatrix(idx, idx).map(convert::<F, Approx>);
    let shifts: Vec<Matrix<Approx>> = td.t_shift.iter().map(|m| m.submatrix(idx, idx).map(convert::<F, Approx>)).collect();
    roots_from_pencil(&rr.basis, &tt, &shifts, &rr.mult, seed)
}

/// Shared root extraction for any pencil `(sum c_k A_k, A)` whose
/// eigenvectors map through `A` to evaluation vectors of `basis`.
pub fn roots_from_pencil<F: Scalar>(
    basis: &[Monomial],
    a: &Matrix<Approx>,
    shifts: &[Matrix<Approx>],
    mult: &[Matrix<F>],
    seed: u64,
) -> Result<Vec<Vec<Complex<f64>>>> {
    let n = basis.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nv = shifts.len();
    let one = basis
        .iter()
        .position(Monomial::is_one)
        .ok_or_else(|| Error::Contract("the monomial 1 is not in the reduced basis".into()))?;
    let coeffs: Vec<f64> = random_coefficients::<Approx>(nv, seed)
        .into_iter()
        .map(|c| c.0 / crate::linalg::RANDOM_BOUND as f64)
        .collect();
    let mut comb = Matrix::<Approx>::zeros(n, n);
    for (c, s) in coeffs.iter().zip(shifts) {
        comb = comb.add(&s.scale(&Approx(*c)));
    }
    let pairs = eig_generalized(&comb, a)?;
    let mults: Vec<Matrix<Approx>> = mult.iter().map(|m| m.map(convert::<F, Approx>)).collect();
    let mut out = Vec::with_capacity(n);
    for p in pairs {
        let mut v: Vec<Complex<f64>> = (0..n)
            .map(|i| (0..n).map(|j| p.vector[j] * a[(i, j)].0).sum())
            .collect();
        let pivot = v[one];
        if pivot.norm() == 0.0 {
            return Err(Error::Contract("eigenvector vanishes at the monomial 1".into()));
        }
        for x in v.iter_mut() {
            *x /= pivot;
        }
        let point = (0..nv)
            .map(|k| match basis.iter().position(|b| *b == Monomial::var(nv, k)) {
                Some(i) => v[i],
                None => (0..n).map(|l| v[l] * mults[k][(l, one)].0).sum(),
            })
            .collect();
        out.push(point);
    }
    Ok(out)
}

/// Radical via the classical Jacobian for square systems.
///
/// `P` is the multiplication-by-`J` operator in column convention; its
/// maximal nonsingular minor plays the role of `T~`.
pub fn jacobian_shortcut<F: Scalar>(sys: &PolySystem<F>, qd: &QuotientData<F>) -> Result<RadicalResult<F>> {
    let jac = jacobian_det(sys)?;
    let nv = qd.nvars;
    if qd.n() == 0 {
        return Ok(RadicalResult::unit(nv));
    }
    let j = qd.normal_form(&jac)?;
    let p = syl_b(&j, &qd.basis, qd)?.mul(&qd.reducer)?.transpose();
    let (rows, cols) = p.max_nonsingular_submatrix();
    if cols.is_empty() {
        return Err(Error::Contract("Jacobian is zero on the quotient".into()));
    }
    let pt = p.submatrix(&rows, &cols);
    let mult = (0..nv)
        .map(|k| {
            let xj = j.mul_monomial(&Monomial::var(nv, k));
            let px = syl_b(&xj, &qd.basis, qd)?.mul(&qd.reducer)?.transpose();
            pt.solve_right(&px.submatrix(&rows, &cols))
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Contract(format!("Jacobian minor: {e}")))?;
    let basis: Vec<Monomial> = cols.iter().map(|&i| qd.basis[i].clone()).collect();
    let generators = clean_generators(multiplication_generators(&basis, &mult, nv));
    Ok(RadicalResult { basis, mult, generators, roots: None })
}

/// Options of the moment/trace pipeline.
#[derive(Clone, Copy, Debug)]
pub struct TraceOptions {
    pub seed: u64,
    pub retries: usize,
    pub path: TracePath,
    pub roots: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { seed: 0, retries: 5, path: TracePath::Auto, roots: false }
    }
}

/// Everything computed by one run of the moment/trace pipeline.
#[derive(Clone, Debug)]
pub struct TraceRun<F: Scalar> {
    /// Absent when the quotient is zero.
    pub moment: Option<MomentData<F>>,
    pub traces: Option<TraceData<F>>,
    pub radical: RadicalResult<F>,
    pub gorenstein: bool,
}

pub fn run_traces<F: Scalar>(qd: &QuotientData<F>, opts: TraceOptions) -> Result<TraceRun<F>> {
    if qd.n() == 0 {
        return Ok(TraceRun { moment: None, traces: None, radical: RadicalResult::unit(qd.nvars), gorenstein: true });
    }
    let md = sample_moment(qd, opts.seed, opts.retries)?;
    let gorenstein = gorenstein_test(&md, qd.n());
    let td = dual_basis_and_jacobian(&md, qd, opts.path)?;
    let td = trace_matrices(td, &md, qd)?;
    let mut radical = radical_mult_matrices(&td)?;
    if opts.roots {
        radical.roots = Some(roots(&radical, &td, opts.seed)?);
    }
    Ok(TraceRun { moment: Some(md), traces: Some(td), radical, gorenstein })
}

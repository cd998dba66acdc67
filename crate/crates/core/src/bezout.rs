//! Bezout matrices: univariate traces and square-free parts, multivariate
//! Bezoutians, and a radical computation for square systems that never
//! forms a Macaulay matrix.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::momtrace::{clean_generators, multiplication_generators};
use crate::poly::{poly_det, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::system::{jacobian_det, PolySystem};
use crate::univariate;

fn univariate_degree<F: Scalar>(f: &Polynomial<F>, what: &str) -> Result<usize> {
    if f.nvars() != 1 {
        return Err(Error::Precondition(format!("{what} must be univariate")));
    }
    Ok(f.degree().unwrap_or(0) as usize)
}

/// Coefficients `c[i][j]` of `x^i y^j` in `(f(x)g(y) - f(y)g(x)) / (x - y)`.
pub fn uni_bezout<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Matrix<F>> {
    let d = univariate_degree(f, "f")?;
    let dg = univariate_degree(g, "g")?;
    if d == 0 {
        return Err(Error::Precondition("f must have positive degree".into()));
    }
    if dg > d {
        return Err(Error::Precondition(format!("deg g = {dg} exceeds deg f = {d}")));
    }
    let (fx, fy) = (f.embed(2, &[0]), f.embed(2, &[1]));
    let (gx, gy) = (g.embed(2, &[0]), g.embed(2, &[1]));
    let num = &(&fx * &gy) - &(&fy * &gx);
    let quot = num.div_by_difference(0, 1)?;
    let mut c = Matrix::zeros(d, d);
    for (m, v) in quot.terms() {
        let e = m.exponents();
        c[(e[0] as usize, e[1] as usize)] = v.clone();
    }
    Ok(c)
}

/// `H_0, ..., H_{d-1}` with `H_i = a_{i+1} + a_{i+2} x + ... + a_d x^{d-i-1}`.
pub fn horner_basis<F: Scalar>(f: &Polynomial<F>) -> Result<Vec<Polynomial<F>>> {
    let d = univariate_degree(f, "f")?;
    if d == 0 {
        return Err(Error::Precondition("f must have positive degree".into()));
    }
    let a = univariate::from_poly(f);
    Ok((0..d).map(|i| univariate::to_poly(&a[i + 1..])).collect())
}

/// Bezout matrix of `f` and `f'`, which is the trace matrix in the Horner basis.
pub fn uni_trace_matrix<F: Scalar>(f: &Polynomial<F>) -> Result<Matrix<F>> {
    uni_bezout(f, &f.derivative(0))
}

/// Minimal-degree element of the Horner span of the kernel of the trace
/// matrix, made monic: the square-free part `f / gcd(f, f')`.
pub fn uni_squarefree<F: Scalar>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let b = uni_trace_matrix(f)?;
    let kernel = b.nullspace();
    if kernel.cols() == 0 {
        return Ok(f.monic());
    }
    // H_i has degree d-i-1, so the row with the largest pivot has least degree.
    let rr = kernel.transpose().rref();
    let last = rr.rank() - 1;
    let h = horner_basis(f)?;
    let mut p = Polynomial::zero(1);
    for (i, hi) in h.iter().enumerate() {
        let r = &rr.matrix[(last, i)];
        if !r.is_zero() {
            p = &p + &hi.scale(r);
        }
    }
    Ok(p.monic())
}

/// Bezoutian of `[f0, f_1..f_m]` in variables `x_1..x_m, y_1..y_m`.
#[derive(Clone, Debug)]
pub struct BezoutianMulti<F: Scalar> {
    pub nvars: usize,
    /// Polynomial in `2m` variables, the `x` block first.
    pub poly: Polynomial<F>,
    /// Occurring `x` and `y` exponents, graded order.
    pub e: Vec<Monomial>,
    pub e_prime: Vec<Monomial>,
}

impl<F: Scalar> BezoutianMulti<F> {
    /// `|E| x |E'|` matrix, entry `(alpha, beta)` = coefficient of `x^alpha y^beta`.
    pub fn matrix_over(&self, e: &[Monomial], e_prime: &[Monomial]) -> Matrix<F> {
        let row: BTreeMap<&Monomial, usize> = e.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let col: BTreeMap<&Monomial, usize> = e_prime.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(e.len(), e_prime.len());
        for (m, c) in self.poly.terms() {
            let (a, b) = split(m, self.nvars);
            out[(row[&a], col[&b])] = c.clone();
        }
        out
    }

    pub fn matrix(&self) -> Matrix<F> {
        self.matrix_over(&self.e, &self.e_prime)
    }
}

fn split(m: &Monomial, nvars: usize) -> (Monomial, Monomial) {
    let e = m.exponents();
    (Monomial::new(e[..nvars].to_vec()), Monomial::new(e[nvars..].to_vec()))
}

/// Determinant of the difference-quotient matrix; every row starts with `f_i(x)`.
pub fn bezoutian_multi<F: Scalar>(f0: &Polynomial<F>, sys: &PolySystem<F>) -> Result<BezoutianMulti<F>> {
    if !sys.is_square() {
        return Err(Error::Precondition(format!(
            "Bezoutian needs as many polynomials ({}) as variables ({})",
            sys.len(),
            sys.nvars()
        )));
    }
    let m = sys.nvars();
    if f0.nvars() != m {
        return Err(Error::VariableMismatch(f0.nvars(), m));
    }
    // X_j = (y_1..y_j, x_{j+1}..x_m)
    let at = |f: &Polynomial<F>, j: usize| -> Polynomial<F> {
        let map: Vec<usize> = (0..m).map(|l| if l < j { m + l } else { l }).collect();
        f.embed(2 * m, &map)
    };
    let mut rows = Vec::with_capacity(m + 1);
    for f in std::iter::once(f0).chain(sys.polys()) {
        let mut row = vec![at(f, 0)];
        for j in 1..=m {
            let diff = &at(f, j - 1) - &at(f, j);
            row.push(diff.div_by_difference(j - 1, m + j - 1)?);
        }
        rows.push(row);
    }
    let poly = poly_det(&rows, 2 * m);
    let mut e = BTreeSet::new();
    let mut e_prime = BTreeSet::new();
    for (mono, _) in poly.terms() {
        let (a, b) = split(mono, m);
        e.insert(a);
        e_prime.insert(b);
    }
    Ok(BezoutianMulti { nvars: m, poly, e: e.into_iter().collect(), e_prime: e_prime.into_iter().collect() })
}

fn union(sets: &[&[Monomial]]) -> Vec<Monomial> {
    sets.iter().flat_map(|s| s.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Basis of the intersection of two column spaces.
fn intersect_columns<F: Scalar>(u: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let n = u.rows();
    let mut joined = Matrix::zeros(n, u.cols() + w.cols());
    for i in 0..n {
        for j in 0..u.cols() {
            joined[(i, j)] = u[(i, j)].clone();
        }
        for j in 0..w.cols() {
            joined[(i, u.cols() + j)] = -w[(i, j)].clone();
        }
    }
    let k = joined.nullspace();
    let coeffs = k.select_rows(&(0..u.cols()).collect::<Vec<_>>());
    let span = u.mul(&coeffs).expect("conformable");
    let pivots = span.rref().pivots;
    span.select_cols(&pivots)
}

/// Radical generators `B_1^x(ker B_J^x)` together with the input polynomials.
///
/// With `restrict`, the kernel is first intersected with the row space of
/// the matrix of `B_1`.
pub fn radical_from_bezout<F: Scalar>(sys: &PolySystem<F>, restrict: bool) -> Result<Vec<Polynomial<F>>> {
    let jac = jacobian_det(sys)?;
    let bj = bezoutian_multi(&jac, sys)?;
    let b1 = bezoutian_multi(&Polynomial::one(sys.nvars()), sys)?;
    let ep = union(&[&bj.e_prime, &b1.e_prime]);
    let cj = bj.matrix_over(&bj.e, &ep);
    let c1 = b1.matrix_over(&b1.e, &ep);
    let mut kernel = cj.nullspace();
    if restrict {
        kernel = intersect_columns(&kernel, &c1.transpose());
    }
    let image = c1.mul(&kernel)?;
    let mut gens: Vec<Polynomial<F>> = (0..image.cols())
        .map(|c| Polynomial::from_terms(sys.nvars(), b1.e.iter().cloned().zip(image.column(c))))
        .collect();
    gens.extend(sys.polys().iter().cloned());
    Ok(clean_generators(gens))
}

/// Span of collected ideal elements, kept reduced with pivots at the
/// highest-degree coordinates.
#[derive(Clone, Debug)]
struct IdealSpan<F: Scalar> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> IdealSpan<F> {
    fn new() -> Self {
        IdealSpan { rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - c.clone() * r.clone();
                    }
                }
                v[p] = F::zero();
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    fn insert(&mut self, v: &[F]) -> bool {
        let mut v = self.reduce(v);
        let scale = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        let Some(p) = (0..v.len()).rev().find(|&i| !v[i].is_negligible(scale)) else {
            return false;
        };
        let inv = F::one() / v[p].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        v[p] = F::one();
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = x.clone() - c.clone() * r.clone();
                }
                row[p] = F::zero();
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Partial linear operator on the reduced space: `x_i v = w` modulo the radical.
struct Operator<F: Scalar> {
    domain: Vec<Vec<F>>,
    image: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Operator<F> {
    fn apply(&self, s: &[F]) -> Option<Vec<F>> {
        let n = s.len();
        let mut rest = s.to_vec();
        let mut out = vec![F::zero(); n];
        for ((v, w), &p) in self.domain.iter().zip(&self.image).zip(&self.pivots) {
            let a = rest[p].clone();
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                rest[j] = rest[j].clone() - a.clone() * v[j].clone();
                out[j] = out[j].clone() + a.clone() * w[j].clone();
            }
        }
        let scale = s.iter().map(Scalar::magnitude).fold(1.0, f64::max);
        rest.iter().all(|x| x.is_negligible(scale)).then_some(out)
    }
}

/// Inputs of one side of the reduction: a coordinate space labelled by
/// monomials and the Bezout matrices acting into it.
struct Side<'a, F: Scalar> {
    labels: Vec<Monomial>,
    /// `|labels| x |other|` matrices of `B_1`, `B_{x_i}`, `B_J`.
    c1: Matrix<F>,
    cx: Vec<Matrix<F>>,
    cj: Matrix<F>,
    polys: &'a [Polynomial<F>],
}

/// Outcome of the reduction on one side.
#[derive(Clone, Debug)]
pub struct SideResult<F: Scalar> {
    /// Monomial basis of the quotient by the radical.
    pub basis: Vec<Monomial>,
    pub mult: Vec<Matrix<F>>,
    /// Collected elements of the radical.
    pub ideal: Vec<Polynomial<F>>,
    pub iterations: usize,
}

fn to_vec<F: Scalar>(p: &Polynomial<F>, index: &BTreeMap<Monomial, usize>, n: usize) -> Option<Vec<F>> {
    let mut v = vec![F::zero(); n];
    for (m, c) in p.terms() {
        v[*index.get(m)?] = c.clone();
    }
    Some(v)
}

fn reduce_side<F: Scalar>(side: &Side<'_, F>, nvars: usize) -> Result<SideResult<F>> {
    let n = side.labels.len();
    let index: BTreeMap<Monomial, usize> = side.labels.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let one = index
        .get(&Monomial::one(nvars))
        .copied()
        .ok_or_else(|| Error::Contract("the space of the Bezout matrix is not connected to 1".into()))?;
    let mut k = IdealSpan::new();
    // Elements of the radical known from the start.
    let radbez = side.c1.mul(&side.cj.nullspace())?;
    for c in 0..radbez.cols() {
        k.insert(&radbez.column(c));
    }
    for f in side.polys {
        for lab in index.keys() {
            if let Some(v) = to_vec(&f.mul_monomial(lab), &index, n) {
                k.insert(&v);
            }
        }
    }
    // Pairs (v, w) with x_i v = w modulo the ideal.
    let pairs: Vec<Vec<(Vec<F>, Vec<F>)>> = (0..nvars)
        .map(|i| {
            let mut p: Vec<(Vec<F>, Vec<F>)> =
                (0..side.c1.cols()).map(|b| (side.c1.column(b), side.cx[i].column(b))).collect();
            for (lab, &a) in index.iter() {
                if let Some(&b) = index.get(&lab.mul(&Monomial::var(nvars, i))) {
                    let mut v = vec![F::zero(); n];
                    let mut w = vec![F::zero(); n];
                    v[a] = F::one();
                    w[b] = F::one();
                    p.push((v, w));
                }
            }
            p
        })
        .collect();
    let cap = n + side.c1.cols() + 1;
    for iteration in 1..=cap {
        let start = k.dim();
        let ops = build_operators(&pairs, &mut k, n);
        if k.dim() > start {
            continue;
        }
        let (basis_vecs, labels) = krylov(&ops, &k, one, n, nvars)?;
        // Commutation defects and images of known ideal elements.
        let mut extra = Vec::new();
        for s in &basis_vecs {
            for i in 0..nvars {
                for j in i + 1..nvars {
                    let a = apply_checked(&ops[i], &apply_checked(&ops[j], s, &k)?, &k)?;
                    let b = apply_checked(&ops[j], &apply_checked(&ops[i], s, &k)?, &k)?;
                    extra.push(a.iter().zip(&b).map(|(x, y)| x.clone() - y.clone()).collect::<Vec<F>>());
                }
            }
        }
        let mut unit = vec![F::zero(); n];
        unit[one] = F::one();
        let mut eval = Evaluator { ops: &ops, k: &k, cache: BTreeMap::new(), unit };
        for row in &k.rows {
            extra.push(eval.poly(row, &side.labels)?);
        }
        for f in side.polys {
            let v: Vec<F> = {
                let mut acc = vec![F::zero(); n];
                for (m, c) in f.terms() {
                    let img = eval.monomial(m)?;
                    for (a, b) in acc.iter_mut().zip(img) {
                        *a = a.clone() + c.clone() * b;
                    }
                }
                acc
            };
            extra.push(v);
        }
        for v in extra {
            k.insert(&v);
        }
        if k.dim() > start {
            continue;
        }
        let r = basis_vecs.len();
        let s_mat = Matrix::from_columns(&basis_vecs, n);
        let rows = s_mat.transpose().rref().pivots;
        let n1 = s_mat.select_rows(&rows);
        let mult = ops
            .iter()
            .map(|op| {
                let imgs: Vec<Vec<F>> =
                    basis_vecs.iter().map(|s| apply_checked(op, s, &k)).collect::<Result<_>>()?;
                let nx = Matrix::from_columns(&imgs, n).select_rows(&rows);
                n1.solve_right(&nx)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Contract(format!("final reduction matrix: {e}")))?;
        debug_assert!(mult.iter().all(|m| m.rows() == r));
        let ideal = k
            .rows
            .iter()
            .map(|row| Polynomial::from_terms(nvars, side.labels.iter().cloned().zip(row.iter().cloned())))
            .collect();
        return Ok(SideResult { basis: labels, mult, ideal, iterations: iteration });
    }
    Err(Error::Contract(format!("reduction did not stabilise within {cap} iterations")))
}

fn build_operators<F: Scalar>(pairs: &[Vec<(Vec<F>, Vec<F>)>], k: &mut IdealSpan<F>, n: usize) -> Vec<Operator<F>> {
    let mut ops = Vec::with_capacity(pairs.len());
    for p in pairs {
        let rows: Vec<Vec<F>> = p
            .iter()
            .map(|(v, w)| {
                let mut row = k.reduce(v);
                row.extend(k.reduce(w));
                row
            })
            .collect();
        let m = Matrix::from_rows_sized(rows, 2 * n);
        let order: Vec<usize> = (0..n).rev().chain((n..2 * n).rev()).collect();
        let rr = m.rref_ordered(&order);
        let mut op = Operator { domain: Vec::new(), image: Vec::new(), pivots: Vec::new() };
        for (i, &piv) in rr.pivots.iter().enumerate() {
            let row = rr.matrix.row(i);
            if piv < n {
                op.domain.push(row[..n].to_vec());
                op.image.push(row[n..].to_vec());
                op.pivots.push(piv);
            } else {
                k.insert(&row[n..]);
            }
        }
        ops.push(op);
    }
    ops
}

fn apply_checked<F: Scalar>(op: &Operator<F>, s: &[F], k: &IdealSpan<F>) -> Result<Vec<F>> {
    let s = k.reduce(s);
    op.apply(&s)
        .map(|w| k.reduce(&w))
        .ok_or_else(|| Error::Contract("a Krylov vector left the domain of the multiplication maps".into()))
}

/// Closure of `1` under the operators; vectors are labelled by the monomial of their path.
fn krylov<F: Scalar>(
    ops: &[Operator<F>],
    k: &IdealSpan<F>,
    one: usize,
    n: usize,
    nvars: usize,
) -> Result<(Vec<Vec<F>>, Vec<Monomial>)> {
    let mut span = IdealSpan::new();
    let mut vecs = Vec::new();
    let mut labels = Vec::new();
    let mut unit = vec![F::zero(); n];
    unit[one] = F::one();
    let unit = k.reduce(&unit);
    let mut queue = VecDeque::new();
    if span.insert(&unit) {
        vecs.push(unit.clone());
        labels.push(Monomial::one(nvars));
        queue.push_back(0);
    }
    while let Some(idx) = queue.pop_front() {
        for (i, op) in ops.iter().enumerate() {
            let img = apply_checked(op, &vecs[idx], k)?;
            if span.insert(&img) {
                let label = labels[idx].mul(&Monomial::var(nvars, i));
                vecs.push(img);
                labels.push(label);
                queue.push_back(vecs.len() - 1);
            }
        }
    }
    Ok((vecs, labels))
}

/// Evaluates polynomials at the operators, applied to `1`.
struct Evaluator<'a, F: Scalar> {
    ops: &'a [Operator<F>],
    k: &'a IdealSpan<F>,
    cache: BTreeMap<Monomial, Vec<F>>,
    unit: Vec<F>,
}

impl<F: Scalar> Evaluator<'_, F> {
    fn monomial(&mut self, m: &Monomial) -> Result<Vec<F>> {
        if let Some(v) = self.cache.get(m) {
            return Ok(v.clone());
        }
        let v = match m.exponents().iter().position(|&e| e > 0) {
            None => self.k.reduce(&self.unit),
            Some(i) => {
                let prev = m.div(&Monomial::var(m.nvars(), i)).expect("divisible");
                let base = self.monomial(&prev)?;
                apply_checked(&self.ops[i], &base, self.k)?
            }
        };
        self.cache.insert(m.clone(), v.clone());
        Ok(v)
    }

    fn poly(&mut self, coeffs: &[F], labels: &[Monomial]) -> Result<Vec<F>> {
        let mut acc = vec![F::zero(); coeffs.len()];
        for (c, m) in coeffs.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let img = self.monomial(m)?;
            for (a, b) in acc.iter_mut().zip(img) {
                *a = a.clone() + c.clone() * b;
            }
        }
        Ok(acc)
    }
}

/// Result of the Bezout-matrix reduction for a square system.
#[derive(Clone, Debug)]
pub struct ReductionResult<F: Scalar> {
    /// Monomial basis `A` of the quotient by the radical.
    pub basis: Vec<Monomial>,
    pub mult: Vec<Matrix<F>>,
    pub generators: Vec<Polynomial<F>>,
    /// Radical elements collected in the `x` space.
    pub k: Vec<Polynomial<F>>,
    /// Radical elements collected in the `y` space (as polynomials in `x`).
    pub h: Vec<Polynomial<F>>,
    /// The `y`-side reduction yields multiplication matrices with the same
    /// characteristic polynomials.
    pub row_side_agrees: bool,
    pub iterations: usize,
}

/// Radical of a square system from its Bezout matrices.
///
/// Both sides work in the span of the occurring monomials and collect
/// radical elements until the multiplication maps close up on the span of
/// `1` and commute.
pub fn reduction_loop<F: Scalar>(sys: &PolySystem<F>) -> Result<ReductionResult<F>> {
    let m = sys.nvars();
    let jac = jacobian_det(sys)?;
    let b1 = bezoutian_multi(&Polynomial::one(m), sys)?;
    let bx = (0..m)
        .map(|i| bezoutian_multi(&Polynomial::var(m, i), sys))
        .collect::<Result<Vec<_>>>()?;
    let bj = bezoutian_multi(&jac, sys)?;
    let mut es: Vec<&[Monomial]> = vec![&b1.e, &bj.e];
    let mut eps: Vec<&[Monomial]> = vec![&b1.e_prime, &bj.e_prime];
    for b in &bx {
        es.push(&b.e);
        eps.push(&b.e_prime);
    }
    let e = union(&es);
    let ep = union(&eps);
    let x_side = Side {
        labels: e.clone(),
        c1: b1.matrix_over(&e, &ep),
        cx: bx.iter().map(|b| b.matrix_over(&e, &ep)).collect(),
        cj: bj.matrix_over(&e, &ep),
        polys: sys.polys(),
    };
    let xr = reduce_side(&x_side, m)?;
    let y_side = Side {
        labels: ep.clone(),
        c1: x_side.c1.transpose(),
        cx: x_side.cx.iter().map(Matrix::transpose).collect(),
        cj: x_side.cj.transpose(),
        polys: sys.polys(),
    };
    let (h, row_side_agrees) = match reduce_side(&y_side, m) {
        Ok(yr) => {
            let agree = yr.mult.len() == xr.mult.len()
                && yr.mult.iter().zip(&xr.mult).all(|(a, b)| a.charpoly() == b.charpoly());
            (yr.ideal, agree)
        }
        Err(_) => (Vec::new(), false),
    };
    let generators = clean_generators(multiplication_generators(&xr.basis, &xr.mult, m));
    Ok(ReductionResult {
        basis: xr.basis,
        mult: xr.mult,
        generators,
        k: xr.ideal,
        h,
        row_side_agrees,
        iterations: xr.iterations,
    })
}

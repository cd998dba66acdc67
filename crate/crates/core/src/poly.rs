//! Sparse multivariate polynomials over a [`Scalar`] field.
//!
//! Monomials are ordered graded-lexicographically: lower total degree first,
//! and within one degree `x1` precedes `x2` (so `mono_basis(2, 1)` is
//! `[1, x1, x2]`). This order fixes the column layout of every coefficient
//! matrix in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector `x^alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of degree at most `d`, in graded-lex order.
pub fn mono_basis(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0u32; nvars];
        homogeneous(nvars, deg, 0, &mut cur, &mut out);
    }
    out
}

fn homogeneous(nvars: usize, remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos + 1 == nvars {
        cur[pos] = remaining;
        out.push(Monomial(cur.clone()));
        return;
    }
    if nvars == 0 {
        out.push(Monomial(Vec::new()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        homogeneous(nvars, remaining - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Sparse polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from (monomial, coefficient) pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Product; errors on differing variable counts.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut ex = m.0.clone();
                ex[var] -= 1;
                out.add_term(Monomial(ex), c.clone() * F::from_i64(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share one arity.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * img;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-indexes variables: variable `i` becomes variable `map[i]` of a ring with `nvars` variables.
    /// Variables mapped to the same target are identified, so terms may merge.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact division by `(x_a - x_b)`; errors if the remainder is nonzero.
    pub fn div_by_difference(&self, a: usize, b: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(m, _)| m.0[a] > 0)
                .max_by_key(|(m, _)| m.0[a])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let mut e = m.0.clone();
            e[a] -= 1;
            let q = Monomial(e);
            quot.add_term(q.clone(), c.clone());
            // rem -= c*q*(x_a - x_b)
            rem.add_term(q.mul(&Monomial::var(self.nvars, a)), -c.clone());
            rem.add_term(q.mul(&Monomial::var(self.nvars, b)), c);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::Contract(format!(
                "nonzero remainder dividing by (x{} - x{})",
                a + 1,
                b + 1
            )))
        }
    }

    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_text();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs == "1";
            if m.is_one() {
                out.push_str(&abs);
            } else if unit {
                out.push_str(&m.to_text(names));
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&m.to_text(names));
            }
        }
        out
    }

    /// Parses the text grammar, e.g. `3/2*x1^2*x2 - x2 + 1` or `(x-1)^2*(x-2)`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, names };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        f.write_str(&self.to_text(&names))
    }
}

/// `x` for one variable, `x1..xm` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["x".to_string()]
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<F: Scalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Scalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

/// Coefficients of `p` along `basis`; errors if `p` has a monomial outside it.
pub fn coeff_vector<F: Scalar>(p: &Polynomial<F>, basis: &[Monomial]) -> Result<Vec<F>> {
    let mut v = vec![F::zero(); basis.len()];
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    for (m, c) in p.terms() {
        let i = *index
            .get(m)
            .ok_or_else(|| Error::MissingMonomial(m.to_text(&default_names(m.nvars()))))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// Inverse of [`coeff_vector`].
pub fn from_coeff_vector<F: Scalar>(nvars: usize, v: &[F], basis: &[Monomial]) -> Polynomial<F> {
    Polynomial::from_terms(nvars, basis.iter().cloned().zip(v.iter().cloned()))
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det<F: Scalar>(rows: &[Vec<Polynomial<F>>], nvars: usize) -> Polynomial<F> {
    let n = rows.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(rows, 0, &cols, nvars)
}

fn det_rec<F: Scalar>(rows: &[Vec<Polynomial<F>>], r: usize, cols: &[usize], nvars: usize) -> Polynomial<F> {
    if cols.is_empty() {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(rows, r + 1, &rest, nvars);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<F: Scalar>(&mut self) -> Result<Polynomial<F>> {
        let n = self.names.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs: Polynomial<F> = self.power()?;
                    let c = match rhs.degree() {
                        Some(0) => rhs.coeff(&Monomial::one(rhs.nvars())),
                        _ => {
                            self.pos = at;
                            return Err(self.error("division only by a nonzero constant"));
                        }
                    };
                    acc = acc.scale(&(F::one() / c));
                }
                // implicit product: coefficient followed by a variable or parenthesis
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<F: Scalar>(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected exponent after '^'"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<F: Scalar>(&mut self) -> Result<Polynomial<F>> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let ch = self.src[self.pos];
                    let exp_sign = (ch == b'-' || ch == b'+')
                        && self.pos > start
                        && matches!(self.src[self.pos - 1], b'e' | b'E');
                    if ch.is_ascii_digit() || ch == b'.' || ch == b'e' || ch == b'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let lit = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match F::parse_literal(lit) {
                    Some(v) => Ok(Polynomial::constant(n, v)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("invalid number literal '{lit}'")))
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.names.iter().position(|v| v == ident) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{ident}'")))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

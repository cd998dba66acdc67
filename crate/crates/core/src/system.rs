//! Polynomial systems with degree metadata.

use crate::error::{Error, Result};
use crate::poly::{poly_det, Polynomial};
use crate::scalar::Scalar;

/// Input system `f_1..f_s`, stored with non-increasing degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<F> {
    vars: Vec<String>,
    polys: Vec<Polynomial<F>>,
    degrees: Vec<u32>,
}

impl<F: Scalar> PolySystem<F> {
    /// Validates and stably sorts by degree, highest first.
    pub fn new(vars: Vec<String>, polys: Vec<Polynomial<F>>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Precondition("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate variable '{v}'")));
            }
        }
        if polys.is_empty() {
            return Err(Error::Precondition("at least one polynomial is required".into()));
        }
        for (i, p) in polys.iter().enumerate() {
            if p.nvars() != vars.len() {
                return Err(Error::VariableMismatch(p.nvars(), vars.len()));
            }
            if p.is_zero() {
                return Err(Error::Precondition(format!("polynomial {} is zero", i + 1)));
            }
        }
        let mut polys = polys;
        polys.sort_by_key(|p| std::cmp::Reverse(p.degree().unwrap_or(0)));
        let degrees = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
        Ok(PolySystem { vars, polys, degrees })
    }

    /// Parses each string with the polynomial grammar; errors carry the 1-based polynomial index as line.
    pub fn parse(vars: &[&str], polys: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let parsed = polys
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Polynomial::parse(s, &vars).map_err(|e| match e {
                    Error::Parse { column, message, .. } => Error::Parse { line: i + 1, column, message },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, parsed)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.vars.len()
    }

    pub fn map_field<G: Scalar>(&self, f: impl Fn(&F) -> G) -> PolySystem<G> {
        PolySystem {
            vars: self.vars.clone(),
            polys: self.polys.iter().map(|p| p.map_coeffs(&f)).collect(),
            degrees: self.degrees.clone(),
        }
    }

    pub fn poly_texts(&self) -> Vec<String> {
        self.polys.iter().map(|p| p.to_text(&self.vars)).collect()
    }
}

/// Determinant of the Jacobian matrix of a square system.
pub fn jacobian_det<F: Scalar>(sys: &PolySystem<F>) -> Result<Polynomial<F>> {
    if !sys.is_square() {
        return Err(Error::Precondition(format!(
            "Jacobian needs as many polynomials ({}) as variables ({})",
            sys.len(),
            sys.nvars()
        )));
    }
    let m = sys.nvars();
    let rows: Vec<Vec<Polynomial<F>>> = sys
        .polys()
        .iter()
        .map(|f| (0..m).map(|j| f.derivative(j)).collect())
        .collect();
    Ok(poly_det(&rows, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn sys(vars: &[&str], polys: &[&str]) -> PolySystem<Q> {
        PolySystem::parse(vars, polys).unwrap()
    }

    #[test]
    fn sorted_by_degree() {
        let s = sys(&["x"], &["x+1", "x^2"]);
        assert_eq!(s.degrees(), &[2, 1]);
        let s = sys(&["x"], &["x+1", "x"]);
        assert_eq!(s.degrees(), &[1, 1]);
        assert_eq!(s.poly_texts(), vec!["x + 1", "x"]);
        assert!(PolySystem::<Q>::parse(&["x"], &["0"]).is_err());
        assert!(PolySystem::<Q>::parse(&["x", "x"], &["x"]).is_err());
        match PolySystem::<Q>::parse(&["x"], &["x", "x^"]) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobians() {
        let j = jacobian_det(&sys(&["x"], &["x^2"])).unwrap();
        assert_eq!(j.to_text(&["x".into()]), "2*x");
        let names = ["x1", "x2"];
        let j = jacobian_det(&sys(&names, &["x1^2", "x2^2"])).unwrap();
        assert_eq!(j.to_text(&["x1".into(), "x2".into()]), "4*x1*x2");
        let j = jacobian_det(&sys(&names, &["x1+x2", "x1-x2"])).unwrap();
        assert_eq!(j.to_text(&["x1".into(), "x2".into()]), "-2");
        assert!(jacobian_det(&sys(&["x"], &["x", "x+1"])).is_err());
    }
}

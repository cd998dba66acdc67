//! Input documents, command dispatch and JSON result documents.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::bezout::{radical_from_bezout, reduction_loop, uni_squarefree};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::macaulay::{degree_bounds, quotient_data, BoundOverrides, QuotientData};
use crate::momtrace::{jacobian_shortcut, run_traces, RadicalResult, TraceOptions, TracePath};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{set_tolerance, Approx, Scalar, Q};
use crate::system::PolySystem;
use crate::univariate;

/// The JSON input document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub vars: Vec<String>,
    #[serde(default = "default_field")]
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub polys: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_infinity: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rational,
    Approx,
}

fn default_field() -> Field {
    Field::Rational
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn system<F: Scalar>(&self) -> Result<PolySystem<F>> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let polys: Vec<&str> = self.polys.iter().map(String::as_str).collect();
        PolySystem::parse(&vars, &polys)
    }

    /// Rebuilds a document from a parsed system.
    pub fn from_system<F: Scalar>(sys: &PolySystem<F>, field: Field, at_infinity: Option<bool>) -> Self {
        SystemFile {
            vars: sys.vars().to_vec(),
            field,
            tolerance: None,
            polys: sys.poly_texts(),
            at_infinity,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Bounds,
    Basis,
    Traces,
    Radical,
    Roots,
    Squarefree,
    BezoutRadical,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Basis => "basis",
            Command::Traces => "traces",
            Command::Radical => "radical",
            Command::Roots => "roots",
            Command::Squarefree => "squarefree",
            Command::BezoutRadical => "bezout-radical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Pipeline {
    #[default]
    Macaulay,
    Bezout,
    Both,
}

/// Command-line options shared by every command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    pub overrides: BoundOverrides,
    pub tolerance: Option<f64>,
    pub pipeline: Pipeline,
    pub shortcut: bool,
    pub retries: usize,
    /// Force the reduced-basis trace path even for Gorenstein algebras.
    pub force_alpha: bool,
    /// Intersect the Bezout kernel with the row space of `B_1`.
    pub restrict_kernel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 1,
            overrides: BoundOverrides::default(),
            tolerance: None,
            pipeline: Pipeline::Macaulay,
            shortcut: false,
            retries: 5,
            force_alpha: false,
            restrict_kernel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn new<F: Scalar>(m: &Matrix<F>) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().iter().map(|r| r.iter().map(Scalar::to_text).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsDoc {
    pub k: u32,
    pub delta: u32,
    #[serde(rename = "Delta")]
    pub big_delta: u32,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Product of the degrees, the root count of a generic square system.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bezout_number: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracesDoc {
    pub basis: Vec<String>,
    pub moment: MatrixDoc,
    pub jacobian: String,
    pub t: MatrixDoc,
    pub t_shift: Vec<MatrixDoc>,
    pub reduced_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadicalDoc {
    pub pipeline: String,
    pub basis: Vec<String>,
    pub mult: Vec<MatrixDoc>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharpolyDoc {
    pub pipeline: String,
    pub charpolys: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckDoc {
    pub entries: Vec<CharpolyDoc>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BezoutDoc {
    pub kernel_generators: Vec<String>,
    pub row_side_agrees: bool,
    pub iterations: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retained_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moment_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_rank: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pipelines: Vec<String>,
}

/// Output of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub field: Field,
    pub seed: u64,
    pub vars: Vec<String>,
    pub system: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<TracesDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical: Option<RadicalDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squarefree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bezout: Option<BezoutDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheckDoc>,
    pub diagnostics: Diagnostics,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Runs `command` on the document.
pub fn run(command: Command, file: &SystemFile, opts: &RunOptions) -> Result<ResultDocument> {
    match file.field {
        Field::Rational => Runner::<Q>::new(command, file, opts)?.run(),
        Field::Approx => {
            if let Some(tol) = opts.tolerance.or(file.tolerance) {
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(Error::Precondition(format!("invalid tolerance {tol}")));
                }
                set_tolerance(tol);
            }
            Runner::<Approx>::new(command, file, opts)?.run()
        }
    }
}

struct Runner<'a, F: Scalar> {
    command: Command,
    file: &'a SystemFile,
    opts: &'a RunOptions,
    sys: PolySystem<F>,
    doc: ResultDocument,
}

fn complex_text(z: &Complex<f64>) -> String {
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.12}")
    } else {
        format!("{re:.12}{im:+.12}i")
    }
}

impl<'a, F: Scalar> Runner<'a, F> {
    fn new(command: Command, file: &'a SystemFile, opts: &'a RunOptions) -> Result<Self> {
        let sys = file.system::<F>()?;
        let doc = ResultDocument {
            command: command.name().to_string(),
            field: file.field,
            seed: opts.seed,
            vars: sys.vars().to_vec(),
            system: sys.poly_texts(),
            bounds: None,
            basis: None,
            traces: None,
            radical: None,
            roots: None,
            squarefree: None,
            bezout: None,
            cross_check: None,
            diagnostics: Diagnostics::default(),
        };
        Ok(Runner { command, file, opts, sys, doc })
    }

    fn at_infinity(&self) -> bool {
        self.file.at_infinity.unwrap_or(true)
    }

    fn mono_texts(&self, monos: &[Monomial]) -> Vec<String> {
        monos.iter().map(|m| m.to_text(self.sys.vars())).collect()
    }

    fn poly_texts(&self, polys: &[Polynomial<F>]) -> Vec<String> {
        polys.iter().map(|p| p.to_text(self.sys.vars())).collect()
    }

    fn quotient(&mut self) -> Result<QuotientData<F>> {
        let qd = quotient_data(&self.sys, self.at_infinity(), self.opts.overrides)?;
        let b = qd.bounds;
        self.doc.bounds = Some(BoundsDoc {
            k: b.k,
            delta: b.delta,
            big_delta: b.big_delta,
            d: b.d,
            n: Some(qd.n()),
            bezout_number: self.bezout_number(),
        });
        self.doc.basis = Some(self.mono_texts(&qd.basis));
        Ok(qd)
    }

    fn bezout_number(&self) -> Option<u64> {
        self.sys.is_square().then(|| self.sys.degrees().iter().map(|&d| d as u64).product())
    }

    fn trace_options(&self, roots: bool) -> TraceOptions {
        TraceOptions {
            seed: self.opts.seed,
            retries: self.opts.retries,
            path: if self.opts.force_alpha { TracePath::Alpha } else { TracePath::Auto },
            roots,
        }
    }

    fn radical_doc(&self, pipeline: &str, basis: &[Monomial], mult: &[Matrix<F>], gens: &[Polynomial<F>]) -> RadicalDoc {
        RadicalDoc {
            pipeline: pipeline.to_string(),
            basis: self.mono_texts(basis),
            mult: mult.iter().map(MatrixDoc::new).collect(),
            generators: self.poly_texts(gens),
        }
    }

    fn charpolys(&self, pipeline: &str, mult: &[Matrix<F>]) -> (CharpolyDoc, Vec<Vec<F>>) {
        let polys: Vec<Vec<F>> = mult.iter().map(Matrix::charpoly).collect();
        let z = vec!["z".to_string()];
        let doc = CharpolyDoc {
            pipeline: pipeline.to_string(),
            charpolys: polys.iter().map(|p| univariate::to_poly(p).to_text(&z)).collect(),
        };
        (doc, polys)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.sys.is_square() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs as many polynomials ({}) as variables ({})",
                self.sys.len(),
                self.sys.nvars()
            )))
        }
    }

    fn run(mut self) -> Result<ResultDocument> {
        match self.command {
            Command::Bounds => {
                let b = degree_bounds(self.sys.degrees(), self.sys.nvars(), self.at_infinity())?;
                let k = self.opts.overrides.k.unwrap_or(b.k);
                let delta = self.opts.overrides.delta.unwrap_or(b.delta);
                self.doc.bounds = Some(BoundsDoc {
                    k,
                    delta,
                    big_delta: self
                        .opts
                        .overrides
                        .big_delta
                        .unwrap_or_else(|| crate::macaulay::final_big_delta(delta, k)),
                    d: None,
                    n: None,
                    bezout_number: self.bezout_number(),
                });
            }
            Command::Basis => {
                self.quotient()?;
            }
            Command::Traces => {
                let qd = self.quotient()?;
                let run = run_traces(&qd, self.trace_options(false))?;
                self.record_trace_run(&run);
            }
            Command::Radical => self.radical()?,
            Command::Roots => {
                let qd = self.quotient()?;
                let run = run_traces(&qd, self.trace_options(true))?;
                self.record_trace_run(&run);
                let roots = run.radical.roots.clone().unwrap_or_default();
                self.doc.roots = Some(roots.iter().map(|p| p.iter().map(complex_text).collect()).collect());
                self.doc.radical = Some(self.radical_doc("macaulay", &run.radical.basis, &run.radical.mult, &run.radical.generators));
            }
            Command::Squarefree => {
                if self.sys.nvars() != 1 || self.sys.len() != 1 {
                    return Err(Error::Precondition("squarefree expects one univariate polynomial".into()));
                }
                let f = &self.sys.polys()[0];
                if f.degree() == Some(0) {
                    return Err(Error::Precondition("squarefree expects a polynomial of positive degree".into()));
                }
                let g = uni_squarefree(f)?;
                self.doc.squarefree = Some(g.to_text(self.sys.vars()));
            }
            Command::BezoutRadical => {
                self.require_square("the Bezout pipeline")?;
                let gens = radical_from_bezout(&self.sys, self.opts.restrict_kernel)?;
                let red = reduction_loop(&self.sys)?;
                self.doc.radical = Some(self.radical_doc("bezout", &red.basis, &red.mult, &red.generators));
                self.doc.bezout = Some(BezoutDoc {
                    kernel_generators: self.poly_texts(&gens),
                    row_side_agrees: red.row_side_agrees,
                    iterations: red.iterations,
                });
                self.doc.diagnostics.pipelines = vec!["bezout".into()];
            }
        }
        Ok(self.doc)
    }

    fn record_trace_run(&mut self, run: &crate::momtrace::TraceRun<F>) {
        let d = &mut self.doc.diagnostics;
        d.gorenstein = Some(run.gorenstein);
        d.pipelines = vec!["macaulay".into()];
        if let Some(md) = &run.moment {
            d.draws = Some(md.draws);
            d.retained_seed = Some(md.seed);
            d.moment_rank = Some(md.rank);
        }
        if let (Some(md), Some(td)) = (&run.moment, &run.traces) {
            d.trace_rank = Some(td.rank());
            let reduced: Vec<Monomial> = td.tilde_idx.iter().map(|&i| td.basis[i].clone()).collect();
            self.doc.traces = Some(TracesDoc {
                basis: self.mono_texts(&td.basis),
                moment: MatrixDoc::new(&md.moment),
                jacobian: td.j.to_text(self.sys.vars()),
                t: MatrixDoc::new(&td.t),
                t_shift: td.t_shift.iter().map(MatrixDoc::new).collect(),
                reduced_basis: self.mono_texts(&reduced),
            });
        }
    }

    fn radical(&mut self) -> Result<()> {
        let pipeline = self.opts.pipeline;
        if pipeline != Pipeline::Macaulay || self.opts.shortcut {
            if pipeline != Pipeline::Macaulay {
                self.require_square("the Bezout pipeline")?;
            } else {
                self.require_square("the Jacobian shortcut")?;
            }
        }
        let mut entries = Vec::new();
        let mut polys = Vec::new();
        let mut names = Vec::new();
        if pipeline != Pipeline::Bezout {
            let qd = self.quotient()?;
            let run = run_traces(&qd, self.trace_options(false))?;
            self.record_trace_run(&run);
            let primary: RadicalResult<F> = if self.opts.shortcut {
                jacobian_shortcut(&self.sys, &qd)?
            } else {
                run.radical.clone()
            };
            let label = if self.opts.shortcut { "shortcut" } else { "macaulay" };
            self.doc.radical = Some(self.radical_doc(label, &primary.basis, &primary.mult, &primary.generators));
            if pipeline == Pipeline::Both {
                let (doc, p) = self.charpolys("macaulay", &run.radical.mult);
                entries.push(doc);
                polys.push(p);
                let short = jacobian_shortcut(&self.sys, &qd)?;
                let (doc, p) = self.charpolys("shortcut", &short.mult);
                entries.push(doc);
                polys.push(p);
                names.extend(["macaulay", "shortcut"]);
            } else {
                names.push(label);
            }
        }
        if pipeline != Pipeline::Macaulay {
            let red = reduction_loop(&self.sys)?;
            let (doc, p) = self.charpolys("bezout", &red.mult);
            entries.push(doc);
            polys.push(p);
            names.push("bezout");
            if pipeline == Pipeline::Bezout {
                self.doc.radical = Some(self.radical_doc("bezout", &red.basis, &red.mult, &red.generators));
            }
            self.doc.bezout = Some(BezoutDoc {
                kernel_generators: self.poly_texts(&radical_from_bezout(&self.sys, self.opts.restrict_kernel)?),
                row_side_agrees: red.row_side_agrees,
                iterations: red.iterations,
            });
        }
        if pipeline == Pipeline::Both {
            let agree = polys.windows(2).all(|w| w[0] == w[1]);
            self.doc.cross_check = Some(CrossCheckDoc { entries, agree });
        }
        self.doc.diagnostics.pipelines = names.into_iter().map(String::from).collect();
        Ok(())
    }
}

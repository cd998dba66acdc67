//! Acceptance suite: one PASS/FAIL line per criterion.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radtrace::bezout::uni_bezout;
use radtrace::cli::{self, Command, Field, Pipeline, RunOptions, SystemFile};
use radtrace::macaulay::{quotient_data, BoundOverrides, QuotientData};
use radtrace::momtrace::{
    multiplication_matrix, run_traces, trace_by_multiplication, TraceOptions, TracePath, TraceRun,
};
use radtrace::scalar::q;
use radtrace::{bezout, univariate, Approx, Matrix, PolySystem, Polynomial, Scalar, Q};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

fn system(vars: &[&str], polys: &[String]) -> PolySystem<Q> {
    let polys: Vec<&str> = polys.iter().map(String::as_str).collect();
    PolySystem::parse(vars, &polys).unwrap()
}

fn qd(sys: &PolySystem<Q>, overrides: BoundOverrides) -> QuotientData<Q> {
    quotient_data(sys, true, overrides).unwrap()
}

fn traces(qd: &QuotientData<Q>, path: TracePath) -> TraceRun<Q> {
    run_traces(qd, TraceOptions { seed: 7, retries: 5, path, roots: false }).unwrap()
}

fn charpolys(mats: &[Matrix<Q>]) -> Vec<Vec<Q>> {
    mats.iter().map(Matrix::charpoly).collect()
}

fn quotient_charpolys(qd: &QuotientData<Q>) -> Vec<Vec<Q>> {
    (0..qd.nvars)
        .map(|k| multiplication_matrix(&Polynomial::var(qd.nvars, k), qd).unwrap().charpoly())
        .collect()
}

fn rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    q(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn linear_text(c: &Q) -> String {
    format!("(x - ({c}))")
}

/// Random monic polynomial with rational roots and quadratic factors, multiplicities up to 3.
fn random_multiple_root_poly(rng: &mut ChaCha8Rng, max_degree: u32) -> String {
    let target = rng.gen_range(1..=max_degree);
    let mut factors = Vec::new();
    let mut degree = 0;
    while degree < target {
        let room = target - degree;
        let quadratic = room >= 2 && rng.gen_bool(0.3);
        let base = if quadratic {
            format!("(x^2 + ({})*x + ({}))", rational(rng, 5, 3), rational(rng, 5, 3))
        } else {
            linear_text(&rational(rng, 6, 4))
        };
        let fdeg = if quadratic { 2 } else { 1 };
        let mult = rng.gen_range(1..=3).min(room / fdeg);
        factors.push(format!("{base}^{mult}"));
        degree += fdeg * mult;
    }
    factors.join("*")
}

fn univariate(text: &str) -> Polynomial<Q> {
    Polynomial::parse(text, &names(&["x"])).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut nontrivial = 0;
    let count = 250;
    for _ in 0..count {
        let text = random_multiple_root_poly(&mut rng, 8);
        let f = univariate(&text);
        let got = univariate::from_poly(&bezout::uni_squarefree(&f).map_err(|e| format!("{text}: {e}"))?);
        let a = univariate::from_poly(&f);
        let g = univariate::gcd(&a, &univariate::derivative(&a));
        let (quo, rem) = univariate::div_rem(&a, &g);
        ensure!(rem.iter().all(Scalar::is_zero), "{text}: gcd does not divide f");
        ensure!(univariate::monic(&got) == univariate::monic(&quo), "{text}: square-free part differs");
        if g.len() > 1 {
            nontrivial += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s");
    Ok(format!("{count} polynomials ({nontrivial} with repeated factors) in {secs:.2}s"))
}

/// Multiplication by `x` on `K[x]/(f)` in the basis `1, x, ..., x^(d-1)`, column convention.
fn companion(a: &[Q]) -> Matrix<Q> {
    let d = a.len() - 1;
    let mut m = Matrix::zeros(d, d);
    for i in 0..d - 1 {
        m[(i + 1, i)] = Q::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -(a[i].clone() / a[d].clone());
    }
    m
}

fn poly_of_matrix(p: &[Q], x: &Matrix<Q>) -> Matrix<Q> {
    let n = x.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(x).unwrap().add(&Matrix::identity(n).scale(c));
    }
    acc
}

fn trace(m: &Matrix<Q>) -> Q {
    (0..m.rows()).fold(Q::zero(), |acc, i| acc + m[(i, i)].clone())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let count = 60;
    for i in 0..count {
        let f = if i % 2 == 0 {
            univariate(&random_multiple_root_poly(&mut rng, 6))
                .scale(&q(rng.gen_range(1..=4), rng.gen_range(1..=3)))
        } else {
            let d = rng.gen_range(1..=6);
            let mut a: Vec<Q> = (0..=d).map(|_| q(rng.gen_range(-5..=5), 1)).collect();
            if a[d].is_zero() {
                a[d] = q(1, 1);
            }
            univariate::to_poly(&a)
        };
        let a = univariate::from_poly(&f);
        let d = a.len() - 1;
        let x = companion(&a);
        let h: Vec<Matrix<Q>> = (0..d).map(|i| poly_of_matrix(&a[i + 1..], &x)).collect();
        let mut t = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                t[(i, j)] = trace(&h[i].mul(&h[j]).unwrap());
            }
        }
        let b = uni_bezout(&f, &f.derivative(0)).unwrap();
        ensure!(b == t, "mismatch for {}", f.to_text(&names(&["x"])));
    }
    Ok(format!("{count} polynomials of degree <= 6, exact equality"))
}

fn criterion_3() -> Outcome {
    let fixtures: [(&[&str], &[&str]); 4] = [
        (&["x"], &["x^2"]),
        (&["x"], &["x^2-1"]),
        (&["x1", "x2"], &["x1^2", "x2^2"]),
        (&["x"], &["(x-1)^2*(x-2)"]),
    ];
    let mut ts = Vec::new();
    for (vars, polys) in fixtures {
        let polys: Vec<String> = polys.iter().map(|s| s.to_string()).collect();
        let qd = qd(&system(vars, &polys), BoundOverrides::default());
        let run = traces(&qd, TracePath::Auto);
        let (md, td) = (run.moment.unwrap(), run.traces.unwrap());
        let other = trace_by_multiplication(&td, &md, &qd).unwrap();
        ensure!(td.t == other, "{polys:?}: Syl_B(J)*X differs from M_J*moment");
        ts.push(td.t);
    }
    let expect = |rows: &[&[i64]]| Matrix::<Q>::from_i64(rows);
    ensure!(ts[0] == expect(&[&[2, 0], &[0, 0]]), "T(x^2) = {:?}", ts[0]);
    ensure!(ts[1] == expect(&[&[2, 0], &[0, 2]]), "T(x^2-1) = {:?}", ts[1]);
    Ok("4 fixtures agree exactly; worked values reproduced".into())
}

struct Fixture {
    vars: Vec<&'static str>,
    polys: Vec<String>,
    roots: Vec<Vec<Q>>,
}

fn fixture(vars: &[&'static str], polys: &[&str], roots: &[&[(i64, i64)]]) -> Fixture {
    Fixture {
        vars: vars.to_vec(),
        polys: polys.iter().map(|s| s.to_string()).collect(),
        roots: roots.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect(),
    }
}

/// Triangular products of linear forms: `f_1(x)`, `f_2(x, y)`, `f_3(x, y, z)`.
fn triangular_fixture(rng: &mut ChaCha8Rng, nvars: usize) -> Fixture {
    let all = ["x", "y", "z"];
    let vars = all[..nvars].to_vec();
    let budget = [6usize, 12, 12][nvars - 1];
    let mut polys = Vec::new();
    // Each level: list of (constant, coefficients on earlier vars, exponent).
    let mut levels: Vec<Vec<(Q, Vec<Q>)>> = Vec::new();
    let mut total = 1;
    for k in 0..nvars {
        let remaining = nvars - k - 1;
        let max_forms = (budget / total / (1 << remaining)).clamp(1, 3);
        let nforms = rng.gen_range(1..=max_forms);
        let mut forms: Vec<(Q, Vec<Q>, u32)> = Vec::new();
        let mut degree = 0;
        while forms.len() < nforms {
            let c = q(rng.gen_range(-3..=3), 1);
            let coeffs: Vec<Q> = (0..k).map(|_| q(rng.gen_range(-1..=1), 1)).collect();
            if forms.iter().any(|(c2, v2, _)| *c2 == c && *v2 == coeffs) {
                continue;
            }
            forms.push((c, coeffs, 1));
        }
        degree += nforms;
        // Raise some forms to a power while the degree product stays in budget.
        for f in forms.iter_mut() {
            if rng.gen_bool(0.5) && total * (degree + 1) * (1 << remaining) <= budget {
                f.2 += 1;
                degree += 1;
            }
        }
        total *= degree;
        let text: Vec<String> = forms
            .iter()
            .map(|(c, coeffs, e)| {
                let mut s = format!("({} - ({c})", all[k]);
                for (j, a) in coeffs.iter().enumerate() {
                    if !a.is_zero() {
                        s += &format!(" - ({a})*{}", all[j]);
                    }
                }
                format!("{s})^{e}")
            })
            .collect();
        polys.push(text.join("*"));
        levels.push(forms.into_iter().map(|(c, v, _)| (c, v)).collect());
    }
    let mut points: Vec<Vec<Q>> = vec![vec![]];
    for level in &levels {
        let mut next = Vec::new();
        for p in &points {
            for (c, coeffs) in level {
                let mut v = c.clone();
                for (a, x) in coeffs.iter().zip(p) {
                    v += a.clone() * x.clone();
                }
                let mut p2 = p.clone();
                p2.push(v);
                next.push(p2);
            }
        }
        points = next;
    }
    let roots: BTreeSet<Vec<Q>> = points.into_iter().collect();
    Fixture { vars, polys, roots: roots.into_iter().collect() }
}

fn radical_fixtures() -> Vec<Fixture> {
    let mut out = vec![
        fixture(&["x"], &["x^2"], &[&[(0, 1)]]),
        fixture(&["x"], &["(x-1)^2*(x-2)"], &[&[(1, 1)], &[(2, 1)]]),
        fixture(&["x"], &["x^2-1"], &[&[(1, 1)], &[(-1, 1)]]),
        fixture(&["x", "y"], &["x^2", "x*y", "y^2"], &[&[(0, 1), (0, 1)]]),
        fixture(&["x", "y"], &["(x-1)*(y-2)", "(x-2)*(y-1)"], &[&[(1, 1), (1, 1)], &[(2, 1), (2, 1)]]),
        fixture(&["x", "y"], &["x*y", "x+y"], &[&[(0, 1), (0, 1)]]),
        fixture(&["x", "y"], &["(x-1)^2", "(x-1)*(y-1)", "(y-1)^2"], &[&[(1, 1), (1, 1)]]),
        fixture(&["x", "y"], &["(x+y)^2", "(x-y)^2"], &[&[(0, 1), (0, 1)]]),
        fixture(&["x", "y", "z"], &["x^2", "y^2", "z"], &[&[(0, 1), (0, 1), (0, 1)]]),
        fixture(
            &["x", "y", "z"],
            &["(x-1)*(x+1)", "(y-x)^2", "z-x-y"],
            &[&[(1, 1), (1, 1), (2, 1)], &[(-1, 1), (-1, 1), (-2, 1)]],
        ),
    ];
    let cube: Vec<Vec<(i64, i64)>> = (0..8).map(|b| (0..3).map(|i| ((b >> i) & 1, 1)).collect()).collect();
    let cube: Vec<&[(i64, i64)]> = cube.iter().map(Vec::as_slice).collect();
    out.push(fixture(&["x", "y", "z"], &["x*(x-1)", "y*(y-1)", "z*(z-1)"], &cube));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..14 {
        out.push(triangular_fixture(&mut rng, 1 + i % 3));
    }
    out
}

fn is_squarefree(p: &[Q]) -> bool {
    univariate::is_squarefree(p)
}

fn criterion_4(fixtures: &[Fixture]) -> Outcome {
    let start = Instant::now();
    let mut max_n = 0;
    for fx in fixtures {
        let sys = system(&fx.vars, &fx.polys);
        let qd = qd(&sys, BoundOverrides::default());
        ensure!(qd.n() <= 12, "{:?}: N = {} exceeds 12", fx.polys, qd.n());
        max_n = max_n.max(qd.n());
        let run = traces(&qd, TracePath::Auto);
        let td = run.traces.as_ref().unwrap();
        ensure!(
            td.rank() == fx.roots.len(),
            "{:?}: rank T = {} but {} roots",
            fx.polys,
            td.rank(),
            fx.roots.len()
        );
        let names = names(&fx.vars);
        for g in &run.radical.generators {
            for r in &fx.roots {
                ensure!(g.eval(r).is_zero(), "{:?}: {} does not vanish", fx.polys, g.to_text(&names));
            }
        }
        // Each root must be cut out: the generators generate a radical ideal of the right size.
        ensure!(run.radical.basis.len() == fx.roots.len(), "{:?}: radical quotient size", fx.polys);
        let mult = &run.radical.mult;
        for a in mult {
            for b in mult {
                ensure!(a.mul(b).unwrap() == b.mul(a).unwrap(), "{:?}: M do not commute", fx.polys);
            }
            ensure!(is_squarefree(&a.minimal_polynomial()), "{:?}: minimal polynomial not square-free", fx.polys);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!("{} fixtures, N <= {max_n}, in {secs:.2}s", fixtures.len()))
}

fn criterion_5(fixtures: &[Fixture]) -> Outcome {
    for fx in fixtures {
        let sys = system(&fx.vars, &fx.polys);
        let base = qd(&sys, BoundOverrides::default());
        let wider = qd(&sys, BoundOverrides { big_delta: Some(base.bounds.big_delta + 1), ..Default::default() });
        ensure!(base.n() == wider.n(), "{:?}: N changed {} -> {}", fx.polys, base.n(), wider.n());
        ensure!(quotient_charpolys(&base) == quotient_charpolys(&wider), "{:?}: quotient charpolys changed", fx.polys);
        let (r1, r2) = (traces(&base, TracePath::Auto), traces(&wider, TracePath::Auto));
        ensure!(charpolys(&r1.radical.mult) == charpolys(&r2.radical.mult), "{:?}: radical charpolys changed", fx.polys);
    }
    Ok(format!("{} fixtures stable under Delta + 1", fixtures.len()))
}

fn criterion_6(fixtures: &[Fixture]) -> Outcome {
    let polys: Vec<String> = ["x^2", "x*y", "y^2"].iter().map(|s| s.to_string()).collect();
    let qd6 = qd(&system(&["x", "y"], &polys), BoundOverrides::default());
    let run = traces(&qd6, TracePath::Auto);
    let md = run.moment.as_ref().unwrap();
    let td = run.traces.as_ref().unwrap();
    ensure!(!run.gorenstein, "functional reported nondegenerate");
    ensure!(qd6.n() == 3 && md.rank == 2, "N = {}, r = {}", qd6.n(), md.rank);
    ensure!(md.alpha_idx.len() == 2 && td.basis.len() == 2, "B_alpha has size {}", td.basis.len());
    let names = names(&["x", "y"]);
    let gens: Vec<String> = run.radical.generators.iter().map(|g| g.to_text(&names)).collect();
    ensure!(gens == ["x", "y"], "generators {gens:?}");
    ensure!(run.radical.basis.len() == 1 && run.radical.basis[0].is_one(), "B~ is not [1]");
    let mut forced = 0;
    for fx in fixtures {
        let sys = system(&fx.vars, &fx.polys);
        let qd = qd(&sys, BoundOverrides::default());
        let auto = traces(&qd, TracePath::Auto);
        if !auto.gorenstein {
            continue;
        }
        let alpha = traces(&qd, TracePath::Alpha);
        ensure!(
            charpolys(&auto.radical.mult) == charpolys(&alpha.radical.mult)
                && auto.radical.generators == alpha.radical.generators,
            "{:?}: forced path differs",
            fx.polys
        );
        forced += 1;
    }
    Ok(format!("non-Gorenstein example reproduced; forced path matches on {forced} Gorenstein fixtures"))
}

fn criterion_7() -> Outcome {
    let polys = vec!["x+1".to_string(), "x".to_string()];
    let qd = qd(&system(&["x"], &polys), BoundOverrides::default());
    ensure!(qd.n() == 0, "N = {}", qd.n());
    ensure!(qd.bounds.k == 1 && qd.bounds.delta == 2, "k = {}, delta = {}", qd.bounds.k, qd.bounds.delta);
    let run = traces(&qd, TracePath::Auto);
    let gens = &run.radical.generators;
    ensure!(gens.len() == 1 && gens[0] == Polynomial::one(1), "radical is not <1>");
    Ok("N = 0, k = 1, delta = 2, radical <1>".into())
}

fn random_dense(rng: &mut ChaCha8Rng, vars: &[&str]) -> Vec<String> {
    let monos = |d: u32| -> Vec<String> {
        match vars.len() {
            1 => (0..=d).map(|i| format!("x^{i}")).collect(),
            _ => (0..=d).flat_map(|t| (0..=t).map(move |i| format!("x^{i}*y^{}", t - i))).collect(),
        }
    };
    vars.iter()
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let mut terms: Vec<String> = Vec::new();
            for m in monos(d) {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push(format!("({c})*{m}"));
                }
            }
            // Keep the degree: one top-degree term is always present.
            let top = monos(d).pop().unwrap();
            terms.push(format!("({})*{top}", rng.gen_range(1..=2)));
            terms.join(" + ")
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut files = Vec::new();
    for i in 0..12 {
        let vars: &[&str] = if i % 3 == 0 { &["x"] } else { &["x", "y"] };
        files.push((vars.to_vec(), random_dense(&mut rng, vars)));
    }
    for polys in [
        vec!["(x-1)^2*(x+1)", "(y-2)*(y+x)"],
        vec!["x^2-y", "y^2-x"],
        vec!["x*y", "x^2+y^2"],
        vec!["(x-1)^2", "(y-1)^2*(y+1)"],
    ] {
        files.push((vec!["x", "y"], polys.iter().map(|s| s.to_string()).collect()));
    }
    let opts = RunOptions { pipeline: Pipeline::Both, seed: 8, ..Default::default() };
    let mut checked = 0;
    for (vars, polys) in &files {
        let file = SystemFile {
            vars: names(vars),
            field: Field::Rational,
            tolerance: None,
            polys: polys.clone(),
            at_infinity: None,
        };
        let doc = match cli::run(Command::Radical, &file, &opts) {
            Ok(doc) => doc,
            // Positive-dimensional draws fail the bound check and are not part of the criterion.
            Err(radtrace::Error::Bounds(_)) => continue,
            Err(e) => return Err(format!("{polys:?}: {e}")),
        };
        let cc = doc.cross_check.ok_or("missing cross-check")?;
        ensure!(cc.entries.len() == 3, "{polys:?}: {} pipelines", cc.entries.len());
        ensure!(cc.agree, "{polys:?}: characteristic polynomials differ");
        checked += 1;
    }
    ensure!(checked >= 10, "only {checked} systems had finitely many roots");
    Ok(format!("{checked} square systems agree across three pipelines"))
}

fn approx_roots(vars: &[&str], polys: &[&str]) -> Vec<Vec<(f64, f64)>> {
    let sys = PolySystem::<Approx>::parse(vars, polys).unwrap();
    let qd = quotient_data(&sys, true, BoundOverrides::default()).unwrap();
    let run = run_traces(&qd, TraceOptions { seed: 9, retries: 5, path: TracePath::Auto, roots: true }).unwrap();
    run.radical.roots.unwrap().iter().map(|r| r.iter().map(|z| (z.re, z.im)).collect()).collect()
}

fn criterion_9() -> Outcome {
    let cases: [(&[&str], &[&str], Vec<Vec<f64>>); 2] = [
        (&["x"], &["x^2-1"], vec![vec![1.0], vec![-1.0]]),
        (
            &["x", "y"],
            &["x^2-1", "(y-2)*(y+x)"],
            vec![vec![1.0, 2.0], vec![1.0, -1.0], vec![-1.0, 2.0], vec![-1.0, 1.0]],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (vars, polys, known) in cases {
        let got = approx_roots(vars, polys);
        ensure!(got.len() == known.len(), "{polys:?}: {} roots found", got.len());
        for k in &known {
            let err = got
                .iter()
                .map(|g| g.iter().zip(k).map(|(&(re, im), &v)| (re - v).abs().max(im.abs())).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min);
            ensure!(err <= 1e-8, "{polys:?}: root {k:?} off by {err:e}");
            worst = worst.max(err);
        }
    }
    Ok(format!("largest coordinate error {worst:.1e}"))
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("radtrace-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cases = [
        (r#"{"vars":["x","y"],"polys":["(x-1)^2*(x+1)","(y-2)*(y+x)"]}"#, vec!["radical", "--pipeline", "both"]),
        (r#"{"vars":["x","y"],"polys":["x^2","x*y","y^2"]}"#, vec!["traces"]),
        (r#"{"vars":["x","y"],"polys":["x^2-1","y^2-4"]}"#, vec!["roots"]),
        (r#"{"vars":["x"],"polys":["(x-1)^3*(x+2)"]}"#, vec!["bezout-radical"]),
    ];
    for (i, (json, args)) in cases.iter().enumerate() {
        let path = dir.join(format!("system{i}.json"));
        std::fs::write(&path, json).map_err(|e| e.to_string())?;
        let once = || {
            std::process::Command::new(env!("CARGO_BIN_EXE_radtrace"))
                .arg(args[0])
                .arg(&path)
                .args(&args[1..])
                .args(["--seed", "42"])
                .output()
                .unwrap()
        };
        let (a, b) = (once(), once());
        ensure!(a.status.success(), "{json}: exit {:?}", a.status.code());
        ensure!(a.stdout == b.stdout, "{json}: outputs differ");
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} command runs byte-identical", cases.len()))
}

fn main() -> ExitCode {
    let fixtures = radical_fixtures();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("univariate square-free part", Box::new(criterion_1)),
        ("Bezout matrix equals trace matrix", Box::new(criterion_2)),
        ("trace matrix two ways", Box::new(criterion_3)),
        ("radical correctness", Box::new(|| criterion_4(&fixtures))),
        ("stability under larger Delta", Box::new(|| criterion_5(&fixtures))),
        ("degenerate functional path", Box::new(|| criterion_6(&fixtures))),
        ("roots at infinity", Box::new(criterion_7)),
        ("cross-pipeline agreement", Box::new(criterion_8)),
        ("approximate roots", Box::new(criterion_9)),
        ("determinism", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

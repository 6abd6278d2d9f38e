//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode, Output};

use composable_qm::gns::{cstar_identity_error, gns_construct, gns_report, State};
use composable_qm::report::CheckReport;
use composable_qm::sampling::Sampler;
use composable_qm::verify::{verify_class, VerifyOptions};
use composable_qm::{CompositionClass, Unit};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_composable-qm"))
        .args(args)
        .env_remove("COMPOSABLE_QM_SEED")
        .output()
        .expect("binary runs")
}

fn cli_json(args: &[&str]) -> Result<(Value, Output), String> {
    let out = cli(args);
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: no JSON on stdout ({e})"))?;
    Ok((v, out))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let (v, out) = cli_json(&["solve", "--system", "two-product"])?;
    ensure(out.status.success(), || "solve exited nonzero".into())?;
    let expected = json!({"a": 0, "b": 1, "c": 1, "d": 0, "y": 0, "z": 0, "w": 1, "x": "free"});
    ensure(v["solution"] == expected, || format!("solution {}", v["solution"]))?;
    Ok("a=0, b=c=w=1, d=y=z=0, x free".into())
}

fn criterion_2() -> Outcome {
    let (v, out) = cli_json(&["solve", "--system", "four-product", "--assume", "tau0"])?;
    ensure(out.status.success(), || "solve exited nonzero".into())?;
    // σ12, π12, α12, τ12 rows of the composition table, coefficients a1..a32
    let table: [[Value; 8]; 4] = [
        [json!(1), json!(0), json!(0), json!("x"), json!(1), json!(0), json!(0), json!("x")],
        [json!(1), json!(1), json!(0), json!(0), json!("x"), json!("x"), json!(0), json!(0)],
        [json!(0), json!(0), json!(1), json!(1), json!(0), json!(0), json!(1), json!(1)],
        [json!(0), json!(1), json!(1), json!(0), json!(0), json!(1), json!(1), json!(0)],
    ];
    for (k, expected) in table.iter().flatten().enumerate() {
        let name = format!("a{}", k + 1);
        ensure(&v["solution"][&name] == expected, || format!("{name} = {}, expected {expected}", v["solution"][&name]))?;
    }
    let reduction = &v["reduction"];
    ensure(reduction["residual"] == "pi1*alpha2 + alpha1*pi2", || format!("residual {}", reduction["residual"]))?;
    let branch = reduction["branches"]
        .as_array()
        .and_then(|b| b.iter().find(|b| b["vanishing"] == "pi"))
        .ok_or("no pi = 0 branch")?;
    let family = json!({"sigma12": "sigma1*sigma2 + x*alpha1*alpha2", "alpha12": "alpha1*sigma2 + sigma1*alpha2"});
    ensure(branch["relations"] == family, || format!("pi = 0 branch {}", branch["relations"]))?;
    Ok("32 coefficients, residual pi1*alpha2 + alpha1*pi2, alpha/sigma family".into())
}

struct Runs {
    reports: Vec<CheckReport>,
}

impl Runs {
    fn collect() -> Result<Runs, String> {
        let opts = VerifyOptions::default();
        let mut reports = Vec::new();
        for class in CompositionClass::ALL {
            reports.extend(verify_class(class, &opts).map_err(|e| e.to_string())?);
        }
        Ok(Runs { reports })
    }

    fn select(&self, keep: impl Fn(&CheckReport) -> bool) -> Vec<&CheckReport> {
        self.reports.iter().filter(|r| keep(r)).collect()
    }
}

fn all_exact_passes(reports: &[&CheckReport], samples: usize) -> Outcome {
    ensure(!reports.is_empty(), || "no checks selected".into())?;
    for r in reports {
        ensure(r.passed() && r.exact && r.samples >= samples, || r.summary())?;
    }
    let fewest = reports.iter().map(|r| r.samples).min().unwrap_or(0);
    Ok(format!("{} exact checks, at least {fewest} samples each", reports.len()))
}

const COMPOSITION_LAWS: [&str; 3] = ["sigma12", "alpha12", "tau12"];
const IDENTITY_LAWS: [&str; 9] = [
    "leibniz",
    "jacobi",
    "petersen",
    "flexible-jordan",
    "unit-laws",
    "beta-associativity",
    "monoid-associativity",
    "monoid-commutativity",
    "composed-leibniz",
];

fn is_moyal(r: &CheckReport) -> bool {
    r.realization.starts_with("Moyal")
}

fn criterion_3(runs: &Runs) -> Outcome {
    let selected = runs.select(|r| COMPOSITION_LAWS.contains(&r.law.as_str()));
    for needle in ["elliptic matrices", "Poisson", "hyperbolic matrices", "symmetric"] {
        ensure(selected.iter().any(|r| r.realization.contains(needle)), || format!("no composability run on {needle}"))?;
    }
    ensure(selected.iter().any(|r| r.law == "tau12"), || "no tau12 run".into())?;
    all_exact_passes(&selected, 200)
}

fn criterion_4(runs: &Runs) -> Outcome {
    let selected = runs.select(|r| IDENTITY_LAWS.contains(&r.law.as_str()));
    for law in IDENTITY_LAWS {
        ensure(selected.iter().any(|r| r.law == law), || format!("{law} never ran"))?;
    }
    all_exact_passes(&selected, 200)
}

fn criterion_5(runs: &Runs) -> Outcome {
    let selected = runs.select(|r| {
        r.law == "star-associativity" || r.law == "classical-limit" || (is_moyal(r) && COMPOSITION_LAWS.contains(&r.law.as_str()))
    });
    for law in ["star-associativity", "classical-limit", "sigma12", "alpha12"] {
        ensure(selected.iter().any(|r| r.law == law), || format!("Moyal {law} never ran"))?;
    }
    all_exact_passes(&selected, 100)
}

fn criterion_6() -> Outcome {
    let mut s = Sampler::new(2024);
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        for k in 0..20 {
            let state = State::new(s.density(n, 1 + k % n)).map_err(|e| e.to_string())?;
            let report = gns_report(&state, 30, k as u64);
            ensure(report.passed(), || format!("{report:?}"))?;
            worst = worst.max(report.phi_error).max(report.multiplicativity_error);
        }
    }
    let mut cstar: f64 = 0.0;
    for k in 0..200 {
        let a = s.matrix(1 + k % 5, Unit::Imaginary).to_dmatrix().ok_or("non-complex sample")?;
        cstar = cstar.max(cstar_identity_error(&a));
    }
    ensure(cstar < 1e-9, || format!("C* identity error {cstar:e}"))?;
    let pure = gns_construct(&State::pure(2, 0).map_err(|e| e.to_string())?).hilbert_dim;
    let mixed = gns_construct(&State::maximally_mixed(2).map_err(|e| e.to_string())?).hilbert_dim;
    ensure(pure == 2 && mixed == 4, || format!("pure -> {pure}, mixed -> {mixed}"))?;
    Ok(format!("40 states, representation error {worst:.1e}, C* error {cstar:.1e}, dims 2 and 4"))
}

fn criterion_7() -> Outcome {
    let (v, out) = cli_json(&["witness"])?;
    ensure(out.status.success(), || "witness exited nonzero".into())?;
    let w = &v["witness"];
    ensure(w["element"] == "1 + j", || format!("element {}", w["element"]))?;
    ensure(w["star_product"] == "0" && w["star_product_norm"] == 0.0, || format!("x*x = {}", w["star_product"]))?;
    ensure(w["norm_squared"] == 4.0 && w["cstar_holds"] == false, || format!("{w}"))?;
    Ok("x = 1 + j: ||x*x|| = 0, ||x||^2 = 4".into())
}

/// Failing checks, each required to carry a counterexample.
fn failures(v: &Value) -> Result<Vec<&Value>, String> {
    let failed: Vec<&Value> =
        v["checks"].as_array().ok_or("no checks")?.iter().filter(|c| c["status"] == "fail").collect();
    for c in &failed {
        ensure(c["counterexample"].is_object(), || format!("{} failed without a counterexample", c["law"]))?;
    }
    Ok(failed)
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for corruption in ["alpha-scale", "x"] {
        let (v, out) = cli_json(&["verify", "--class", "elliptic", "--samples", "40", "--corrupt", corruption])?;
        ensure(out.status.code() == Some(1), || format!("--corrupt {corruption}: exit {:?}", out.status.code()))?;
        ensure(String::from_utf8_lossy(&out.stderr).contains("counterexample"), || "no printed counterexample".into())?;
        let failed = failures(&v)?;
        let law = |c: &&Value| c["law"].as_str().unwrap_or_default().to_string();
        let moyal = |c: &&Value| c["realization"].as_str().unwrap_or_default().starts_with("Moyal");
        let c3 = failed.iter().any(|c| COMPOSITION_LAWS.contains(&law(c).as_str()) && !moyal(c));
        let c4 = failed.iter().any(|c| IDENTITY_LAWS.contains(&law(c).as_str()));
        let c5 = failed.iter().any(|c| moyal(c) || law(c) == "classical-limit");
        ensure(c3 && c4 && c5, || format!("--corrupt {corruption}: criteria 3/4/5 caught = {c3}/{c4}/{c5}"))?;
        lines.push(format!("{corruption}: {} failing checks", failed.len()));
    }
    for class in ["parabolic", "hyperbolic", "parabolic-symmetric"] {
        let args = ["verify", "--class", class, "--identity", "composability", "--samples", "40", "--corrupt", "x"];
        let (v, out) = cli_json(&args)?;
        ensure(out.status.code() == Some(1) && !failures(&v)?.is_empty(), || format!("{class}: x corruption passed"))?;
    }
    lines.push("x on parabolic/hyperbolic/symmetric: caught".into());
    Ok(lines.join("; "))
}

fn main() -> ExitCode {
    let runs = Runs::collect();
    let from_runs = |f: fn(&Runs) -> Outcome| match &runs {
        Ok(r) => f(r),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("two-product coefficient derivation", criterion_1()),
        ("four-product table and tau = 0 reduction", criterion_2()),
        ("composability laws exact", from_runs(criterion_3)),
        ("identity suite exact", from_runs(criterion_4)),
        ("Moyal star product", from_runs(criterion_5)),
        ("GNS construction and C* identity", criterion_6()),
        ("hyperbolic C* failure witness", criterion_7()),
        ("negative controls", criterion_8()),
    ];
    let mut all = true;
    for (k, (title, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title} ({detail})", k + 1),
            Err(reason) => {
                all = false;
                println!("criterion {}: FAIL  {title}: {reason}", k + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

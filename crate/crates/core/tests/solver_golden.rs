use composable_qm::solver::{
    derive_four_product_coefficients, derive_single_product, derive_two_product_coefficients,
    reduce_vanishing_cases, CoeffPoly, Value, Vanishing,
};
use serde_json::{json, Value as Json};

fn x() -> CoeffPoly {
    CoeffPoly::var("x")
}

#[test]
fn two_product_table() {
    let d = derive_two_product_coefficients().unwrap();
    assert_eq!(
        Json::Object(d.solution_json()),
        json!({"a": 0, "b": 1, "c": 1, "d": 0, "x": "free", "y": 0, "z": 0, "w": 1})
    );
    assert_eq!(d.solution.free().len(), 1);
    d.solution.verify(&d.equations).unwrap();
    let leibniz = d.trace.last().unwrap();
    assert!(leibniz.equations.iter().all(|e| e.contains("a^2")), "{:?}", leibniz.equations);
}

#[test]
fn single_product_forces_trivial_rho() {
    let r = derive_single_product();
    assert_eq!(r.ansatz, "a*rho1*rho2");
    assert!(r.rho_trivial);
}

/// The composition table for `σ12, π12, α12, τ12` in ansatz order `a1..a32`.
fn expected_four_product() -> Vec<(usize, CoeffPoly)> {
    let one = CoeffPoly::one;
    let zero = CoeffPoly::zero;
    let rows = [
        // σ12: σσ στ τσ ττ ππ πα απ αα
        [one(), zero(), zero(), x(), one(), zero(), zero(), x()],
        // π12: πσ σπ πτ τπ ατ τα ασ σα
        [one(), one(), zero(), zero(), x(), x(), zero(), zero()],
        // α12: πσ σπ πτ τπ ατ τα ασ σα
        [zero(), zero(), one(), one(), zero(), zero(), one(), one()],
        // τ12: σσ στ τσ ττ ππ πα απ αα
        [zero(), one(), one(), zero(), zero(), one(), one(), zero()],
    ];
    rows.into_iter().flatten().enumerate().map(|(k, c)| (k + 1, c)).collect()
}

#[test]
fn four_product_table() {
    let d = derive_four_product_coefficients().unwrap();
    for (k, expected) in expected_four_product() {
        assert_eq!(d.solution.get(&format!("a{k}")), Some(&Value::Fixed(expected.clone())), "a{k}");
    }
    assert_eq!(d.solution.get("x"), Some(&Value::Free));
    let laws = d.laws_json();
    assert_eq!(laws["sigma12"], "sigma1*sigma2 + x*tau1*tau2 + pi1*pi2 + x*alpha1*alpha2");
    assert_eq!(laws["alpha12"], "pi1*tau2 + tau1*pi2 + alpha1*sigma2 + sigma1*alpha2");
    assert_eq!(laws["tau12"], "sigma1*tau2 + tau1*sigma2 + pi1*alpha2 + alpha1*pi2");
    assert_eq!(laws["pi12"], "pi1*sigma2 + sigma1*pi2 + x*alpha1*tau2 + x*tau1*alpha2");
}

fn implied_by(d: &composable_qm::solver::Derivation, step: usize, values: &[(&str, Json)]) {
    let implies = &d.trace[step].implies;
    for (k, v) in values {
        assert_eq!(implies.get(*k), Some(v), "step {step} ({}) {k}", d.trace[step].step);
    }
}

#[test]
fn four_product_intermediate_steps() {
    let d = derive_four_product_coefficients().unwrap();
    let (zero, one, x) = (json!(0), json!(1), json!("x"));
    // unit arguments in the first slot, on ρ12 then θ12
    implied_by(&d, 0, &[("a18", zero.clone()), ("a25", zero.clone()), ("a24", one.clone()), ("a26", one.clone())]);
    implied_by(&d, 1, &[("a2", zero.clone()), ("a16", zero.clone()), ("a1", one.clone()), ("a10", one.clone())]);
    // unit arguments in the second slot
    implied_by(&d, 2, &[("a17", zero.clone()), ("a23", one.clone()), ("a27", one.clone())]);
    implied_by(&d, 3, &[("a9", one.clone()), ("a3", zero.clone()), ("a15", zero.clone())]);
    // consistency with ρ12 = ρ1θ2 + θ1ρ2, odd then even part
    for (k, v) in [("a23", &one), ("a20", &one), ("a24", &one), ("a19", &one), ("a21", &zero), ("a22", &zero)] {
        implied_by(&d, 4, &[(k, v.clone())]);
    }
    for (k, v) in [("a31", &one), ("a30", &one), ("a28", &zero), ("a32", &zero)] {
        implied_by(&d, 5, &[(k, v.clone())]);
    }
    // consistency with θ12 = θ1θ2 + x ρ1ρ2, even then odd part
    for (k, v) in [("a5", &one), ("a4", &x), ("a8", &x), ("a6", &zero), ("a7", &zero)] {
        implied_by(&d, 6, &[(k, v.clone())]);
    }
    for (k, v) in [("a13", &x), ("a14", &x), ("a11", &zero), ("a12", &zero)] {
        implied_by(&d, 7, &[(k, v.clone())]);
    }
}

#[test]
fn tau_vanishing_reduction() {
    let r = reduce_vanishing_cases(Some(Vanishing::Tau)).unwrap();
    assert_eq!(r.residual.as_deref(), Some("pi1*alpha2 + alpha1*pi2"));
    let pi = r.branches.iter().find(|b| b.vanishing == "pi").unwrap();
    assert_eq!(
        Json::Object(pi.relations.clone()),
        json!({"sigma12": "sigma1*sigma2 + x*alpha1*alpha2", "alpha12": "alpha1*sigma2 + sigma1*alpha2"})
    );
    assert!(!pi.rho_trivial);
    assert!(r.branches.iter().find(|b| b.vanishing == "alpha").unwrap().rho_trivial);
}

#[test]
fn alpha_vanishing_reduction() {
    let r = reduce_vanishing_cases(Some(Vanishing::Alpha)).unwrap();
    assert_eq!(r.residual.as_deref(), Some("pi1*tau2 + tau1*pi2"));
    let pi = r.branches.iter().find(|b| b.vanishing == "pi").unwrap();
    assert_eq!(
        Json::Object(pi.relations.clone()),
        json!({"sigma12": "sigma1*sigma2 + x*tau1*tau2", "tau12": "sigma1*tau2 + tau1*sigma2"})
    );
    assert!(r.branches.iter().find(|b| b.vanishing == "tau").unwrap().rho_trivial);
}

#[test]
fn derivation_json_is_stable() {
    let a = derive_four_product_coefficients().unwrap().to_json();
    let b = derive_four_product_coefficients().unwrap().to_json();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let keys: Vec<_> = a["solution"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys.first().map(String::as_str), Some("a1"));
    assert_eq!(keys.last().map(String::as_str), Some("x"));
}

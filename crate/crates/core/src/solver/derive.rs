use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::coeff::{CoeffPoly, Unknown};
use super::expr::{pure, tensor, BipartiteLaw, FormalExpr, ProductSym, Tree};
use super::linear::{solve, Equation, Solution, Value as SolvedValue};
use crate::error::{Error, Result};
use crate::scalar::Rational;

use ProductSym::*;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub substitution: String,
    pub equations: Vec<String>,
    /// Unknowns this step alone pins to a value.
    pub implies: Map<String, Value>,
}

/// A solved coefficient system with its derivation trace.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub system: &'static str,
    pub equations: Vec<Equation>,
    pub solution: Solution,
    pub trace: Vec<TraceStep>,
    /// Solved bipartite laws, e.g. `("sigma12", σ1σ2 + x α1α2)`.
    pub laws: Vec<(String, BipartiteLaw)>,
}

impl Derivation {
    pub fn solution_json(&self) -> Map<String, Value> {
        let mut out = Map::new();
        for u in &self.solution.order {
            let v = match &self.solution.values[u] {
                SolvedValue::Fixed(p) => p.to_json(),
                SolvedValue::Free => Value::from("free"),
            };
            out.insert(u.name().to_string(), v);
        }
        out
    }

    pub fn laws_json(&self) -> Map<String, Value> {
        self.laws.iter().map(|(name, law)| (name.clone(), Value::from(law.shorthand()))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "system": self.system,
            "solution": self.solution_json(),
            "free": self.solution.free().iter().map(|u| u.name()).collect::<Vec<_>>(),
            "relations": self.laws_json(),
            "trace": self.trace,
        })
    }

    pub fn law(&self, name: &str) -> Option<&BipartiteLaw> {
        self.laws.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    }
}

/// One equation per monomial of `expr`.
fn equations_of(expr: &FormalExpr, source: &str) -> Vec<Equation> {
    expr.terms().map(|(_, c)| Equation::new(c.clone(), source)).collect()
}

fn unknowns(names: &[&str]) -> Vec<Unknown> {
    names.iter().map(|n| Unknown::new(*n)).collect()
}

fn law(rows: &[(&str, ProductSym, ProductSym)]) -> BipartiteLaw {
    BipartiteLaw::new(rows.iter().map(|(c, p, q)| (CoeffPoly::var(c), *p, *q)).collect())
}

fn slot_product(p: ProductSym, slot: u8) -> Tree {
    Tree::prod(p, Tree::var('f', slot), Tree::var('g', slot))
}

/// `F = f1⊗f2`, `G = g1⊗g2` with the arguments of `slot` set to 1.
fn unit_arguments(slot: u8) -> (FormalExpr, FormalExpr) {
    (pure('f').set_unit(slot, &['f']), pure('g').set_unit(slot, &['g']))
}

/// The unit law `(1⊗f) P12 (1⊗g) = 1⊗(f P g)` (or the mirrored one for
/// slot 2), optionally with `ρ`, `θ` split into their symmetric parts.
fn unit_target(slot: u8, p: ProductSym, split: bool) -> FormalExpr {
    let other = 3 - slot;
    let t = match slot {
        1 => tensor(Tree::one(), slot_product(p, other)),
        _ => tensor(slot_product(p, other), Tree::one()),
    };
    if split {
        t.split_symmetric()
    } else {
        t
    }
}

fn slot_description(slot: u8) -> &'static str {
    match slot {
        1 => "f1 = g1 = 1",
        _ => "f2 = g2 = 1",
    }
}

/// Solves `equations` in isolation and reports constant values it fixes.
fn implied(equations: &[Equation], order: &[Unknown]) -> Map<String, Value> {
    let mut out = Map::new();
    if let Ok(sol) = solve(equations, order) {
        let mentioned: std::collections::BTreeSet<Unknown> =
            equations.iter().flat_map(|e| e.poly.unknowns()).collect();
        for u in order {
            if !mentioned.contains(u) {
                continue;
            }
            if let Some(SolvedValue::Fixed(p)) = sol.values.get(u) {
                out.insert(u.name().to_string(), p.to_json());
            }
        }
    }
    out
}

fn step(step: &str, substitution: &str, equations: &[Equation], order: &[Unknown]) -> TraceStep {
    TraceStep {
        step: step.to_string(),
        substitution: substitution.to_string(),
        equations: equations.iter().map(|e| e.to_string()).collect(),
        implies: implied(equations, order),
    }
}

fn finish(
    system: &'static str,
    order: Vec<Unknown>,
    steps: Vec<(TraceStep, Vec<Equation>)>,
    laws: Vec<(&str, &BipartiteLaw)>,
) -> Result<Derivation> {
    let equations: Vec<Equation> = steps.iter().flat_map(|(_, e)| e.iter().cloned()).collect();
    let solution = solve(&equations, &order)?;
    let sub = solution.substitution();
    let laws = laws
        .into_iter()
        .map(|(name, l)| (name.to_string(), l.map_coeffs(|c| c.substitute(&sub))))
        .collect();
    Ok(Derivation {
        system,
        equations,
        solution,
        trace: steps.into_iter().map(|(t, _)| t).collect(),
        laws,
    })
}

/// Left and right Leibniz relations among the degree-two `ρ`-trees in the
/// arguments `f, g, h` of one slot. Vectors are reduced to normal form modulo
/// their span.
struct LeibnizQuotient {
    index: BTreeMap<Tree, usize>,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl LeibnizQuotient {
    fn new(slot: u8) -> Self {
        let atoms: Vec<Tree> = ['f', 'g', 'h'].iter().map(|&n| Tree::var(n, slot)).collect();
        let rho = |a: &Tree, b: &Tree| Tree::prod(Rho, a.clone(), b.clone());
        let mut perms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if i != j && j != k && i != k {
                        perms.push((atoms[i].clone(), atoms[j].clone(), atoms[k].clone()));
                    }
                }
            }
        }
        let mut index = BTreeMap::new();
        for (x, y, z) in &perms {
            for t in [rho(x, &rho(y, z)), rho(&rho(x, y), z)] {
                let n = index.len();
                index.entry(t).or_insert(n);
            }
        }
        let n = index.len();
        let mut rows = Vec::new();
        for (x, y, z) in &perms {
            // x ρ (y ρ z) = (x ρ y) ρ z + y ρ (x ρ z)
            let left = [(1, rho(x, &rho(y, z))), (-1, rho(&rho(x, y), z)), (-1, rho(y, &rho(x, z)))];
            // (y ρ z) ρ x = (y ρ x) ρ z + y ρ (z ρ x)
            let right = [(1, rho(&rho(y, z), x)), (-1, rho(&rho(y, x), z)), (-1, rho(y, &rho(z, x)))];
            for relation in [left, right] {
                let mut row = vec![Rational::zero(); n];
                for (s, t) in relation {
                    row[index[&t]] += Rational::from_integer(s.into());
                }
                rows.push(row);
            }
        }
        let pivots = super::linear::rref(&mut rows, n);
        rows.truncate(pivots.len());
        LeibnizQuotient { index, rows, pivots }
    }

    fn normal_form(&self, t: &Tree) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.index.len()];
        v[*self.index.get(t)?] = Rational::from_integer(1.into());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        Some(v)
    }

    fn dimension(&self) -> usize {
        self.index.len() - self.pivots.len()
    }
}

/// Coefficients of `expr` (pure `ρ`, degree two per slot) in the tensor square
/// of the Leibniz quotient.
fn reduce_modulo_leibniz(expr: &FormalExpr) -> Result<Vec<CoeffPoly>> {
    let q1 = LeibnizQuotient::new(1);
    let q2 = LeibnizQuotient::new(2);
    let (n1, n2) = (q1.index.len(), q2.index.len());
    let mut coords = vec![CoeffPoly::zero(); n1 * n2];
    for (m, c) in expr.terms() {
        let (Some(v1), Some(v2)) = (q1.normal_form(&m.0[0]), q2.normal_form(&m.0[1])) else {
            return Err(Error::Unsupported(format!("term {m} is outside the degree-two rho sector")));
        };
        for (i, a) in v1.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v2.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                coords[i * n2 + j] = coords[i * n2 + j].add(&c.scale(&(a * b)));
            }
        }
    }
    debug_assert!(q1.dimension() > 0 && q2.dimension() > 0);
    Ok(coords.into_iter().filter(|c| !c.is_zero()).collect())
}

/// The two-product system: ansatz in `a, b, c, d` (for `ρ12`) and
/// `x, y, z, w` (for `θ12`), unit substitutions in each slot, then the
/// bipartite Leibniz identity restricted to its pure-`ρ` part.
pub fn derive_two_product_coefficients() -> Result<Derivation> {
    let rho12 = law(&[("a", Rho, Rho), ("b", Rho, Theta), ("c", Theta, Rho), ("d", Theta, Theta)]);
    let theta12 = law(&[("x", Rho, Rho), ("y", Rho, Theta), ("z", Theta, Rho), ("w", Theta, Theta)]);
    let order = unknowns(&["a", "b", "c", "d", "y", "z", "w", "x"]);
    let mut steps = Vec::new();

    for slot in [1u8, 2] {
        let (f, g) = unit_arguments(slot);
        for (name, l, p) in [("rho12", &rho12, Rho), ("theta12", &theta12, Theta)] {
            let residual = l.apply(&f, &g).sub(&unit_target(slot, p, false));
            let label = format!("unit law on {name}");
            let eqs = equations_of(&residual, &label);
            steps.push((step(&label, slot_description(slot), &eqs, &order), eqs));
        }
    }

    let (f, g, h) = (pure('f'), pure('g'), pure('h'));
    let leibniz = rho12
        .apply(&f, &rho12.apply(&g, &h))
        .sub(&rho12.apply(&rho12.apply(&f, &g), &h))
        .sub(&rho12.apply(&g, &rho12.apply(&f, &h)));
    let sector = leibniz.restrict_products(&[Rho]);
    let label = "Leibniz identity on rho12, pure-rho sector modulo single-system Leibniz";
    let eqs: Vec<Equation> = reduce_modulo_leibniz(&sector)?
        .into_iter()
        .map(|c| Equation::new(c, label))
        .collect();
    steps.push((step(label, "F = f1 (x) f2, G = g1 (x) g2, H = h1 (x) h2", &eqs, &order), eqs));

    let mut display_order = unknowns(&["a", "b", "c", "d", "x", "y", "z", "w"]);
    let mut d = finish("two-product", order, steps, vec![("rho12", &rho12), ("theta12", &theta12)])?;
    display_order.retain(|u| d.solution.values.contains_key(u));
    d.solution.order = display_order;
    Ok(d)
}

/// Outcome of composing with a single product `ρ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleProductResult {
    pub ansatz: String,
    pub substitution: String,
    /// `(f⊗1) ρ12 (g⊗1)` after canonicalization.
    pub lhs: String,
    /// What the unit law requires it to be.
    pub required: String,
    pub rho_trivial: bool,
}

/// With only `ρ` available, `(f⊗1) ρ12 (g⊗1) = a (fρg)⊗(1ρ1)` vanishes, so
/// the unit law `(f⊗1) ρ12 (g⊗1) = (fρg)⊗1` forces `ρ ≡ 0`.
pub fn derive_single_product() -> SingleProductResult {
    let rho12 = law(&[("a", Rho, Rho)]);
    let f = pure('f').set_unit(2, &['f']);
    let g = pure('g').set_unit(2, &['g']);
    let lhs = rho12.apply(&f, &g);
    let required = tensor(slot_product(Rho, 1), Tree::one());
    SingleProductResult {
        ansatz: rho12.shorthand(),
        substitution: "f2 = g2 = 1".into(),
        lhs: format!("{lhs:#}"),
        required: format!("{required:#}"),
        rho_trivial: lhs.is_zero() && !required.is_zero(),
    }
}

type AnsatzRow = (&'static str, ProductSym, ProductSym);

const FOUR_PRODUCT_ANSATZ: [(&str, [AnsatzRow; 8]); 4] = [
    (
        "sigma12",
        [
            ("a1", Sigma, Sigma),
            ("a2", Sigma, Tau),
            ("a3", Tau, Sigma),
            ("a4", Tau, Tau),
            ("a5", Pi, Pi),
            ("a6", Pi, Alpha),
            ("a7", Alpha, Pi),
            ("a8", Alpha, Alpha),
        ],
    ),
    (
        "pi12",
        [
            ("a9", Pi, Sigma),
            ("a10", Sigma, Pi),
            ("a11", Pi, Tau),
            ("a12", Tau, Pi),
            ("a13", Alpha, Tau),
            ("a14", Tau, Alpha),
            ("a15", Alpha, Sigma),
            ("a16", Sigma, Alpha),
        ],
    ),
    (
        "alpha12",
        [
            ("a17", Pi, Sigma),
            ("a18", Sigma, Pi),
            ("a19", Pi, Tau),
            ("a20", Tau, Pi),
            ("a21", Alpha, Tau),
            ("a22", Tau, Alpha),
            ("a23", Alpha, Sigma),
            ("a24", Sigma, Alpha),
        ],
    ),
    (
        "tau12",
        [
            ("a25", Sigma, Sigma),
            ("a26", Sigma, Tau),
            ("a27", Tau, Sigma),
            ("a28", Tau, Tau),
            ("a29", Pi, Pi),
            ("a30", Pi, Alpha),
            ("a31", Alpha, Pi),
            ("a32", Alpha, Alpha),
        ],
    ),
];

/// Rows of the four-product ansatz, keyed by product name.
pub fn four_product_ansatz() -> Vec<(String, BipartiteLaw)> {
    FOUR_PRODUCT_ANSATZ.iter().map(|(name, rows)| (name.to_string(), law(rows))).collect()
}

/// `+1` if the row is even under the argument swap, `-1` if odd.
pub fn row_parity(l: &BipartiteLaw) -> Option<i64> {
    let mut parities = l.rows.iter().map(|(_, p, q)| p.parity() * q.parity());
    let first = parities.next()?;
    parities.all(|s| s == first).then_some(first)
}

/// The four-product system: 32-coefficient ansatz for `σ12, π12, α12, τ12`,
/// unit substitutions applied to `ρ12 = α12 + τ12` and `θ12 = σ12 + π12`,
/// then consistency with the two-product laws split by swap parity.
pub fn derive_four_product_coefficients() -> Result<Derivation> {
    let ansatz = four_product_ansatz();
    let get = |n: &str| ansatz.iter().find(|(k, _)| k == n).map(|(_, l)| l.clone()).expect("row");
    let (sigma12, pi12, alpha12, tau12) = (get("sigma12"), get("pi12"), get("alpha12"), get("tau12"));
    for (name, l) in &ansatz {
        let expected = if name == "sigma12" || name == "tau12" { 1 } else { -1 };
        if row_parity(l) != Some(expected) {
            return Err(Error::Inconsistent(format!("ansatz row {name} has mixed parity")));
        }
    }
    let rho12 = alpha12.concat(&tau12);
    let theta12 = sigma12.concat(&pi12);

    let mut order: Vec<Unknown> = (1..=32).map(|k| Unknown::new(format!("a{k}"))).collect();
    order.push(Unknown::new("x"));
    let mut steps = Vec::new();

    for slot in [1u8, 2] {
        let (f, g) = unit_arguments(slot);
        for (name, l, p) in [("rho12", &rho12, Rho), ("theta12", &theta12, Theta)] {
            let residual = l.apply(&f, &g).sub(&unit_target(slot, p, true));
            let label = format!("unit law on {name}");
            let eqs = equations_of(&residual, &label);
            steps.push((step(&label, slot_description(slot), &eqs, &order), eqs));
        }
    }

    let (f, g) = (pure('f'), pure('g'));
    let rho_law = tensor(slot_product(Rho, 1), slot_product(Theta, 2))
        .add(&tensor(slot_product(Theta, 1), slot_product(Rho, 2)))
        .split_symmetric();
    let theta_law = tensor(slot_product(Theta, 1), slot_product(Theta, 2))
        .add(&tensor(slot_product(Rho, 1), slot_product(Rho, 2)).scale(&CoeffPoly::var("x")))
        .split_symmetric();
    let consistency = [
        ("alpha12", &alpha12, rho_law.swap_part(-1), "odd part of rho1 theta2 + theta1 rho2"),
        ("tau12", &tau12, rho_law.swap_part(1), "even part of rho1 theta2 + theta1 rho2"),
        ("sigma12", &sigma12, theta_law.swap_part(1), "even part of theta1 theta2 + x rho1 rho2"),
        ("pi12", &pi12, theta_law.swap_part(-1), "odd part of theta1 theta2 + x rho1 rho2"),
    ];
    for (name, l, target, what) in consistency {
        let label = format!("{name} = {what}");
        let eqs = equations_of(&l.apply(&f, &g).sub(&target), &label);
        steps.push((step(&label, "F = f1 (x) f2, G = g1 (x) g2", &eqs, &order), eqs));
    }

    finish(
        "four-product",
        order,
        steps,
        vec![("sigma12", &sigma12), ("alpha12", &alpha12), ("tau12", &tau12), ("pi12", &pi12)],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Vanishing {
    Tau,
    Alpha,
}

impl Vanishing {
    pub fn product(self) -> ProductSym {
        match self {
            Vanishing::Tau => Tau,
            Vanishing::Alpha => Alpha,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tau0" | "tau" => Ok(Vanishing::Tau),
            "alpha0" | "alpha" => Ok(Vanishing::Alpha),
            _ => Err(Error::Malformed(format!("unknown assumption {s:?}; expected tau0 or alpha0"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Branch {
    /// Product additionally taken to vanish.
    pub vanishing: String,
    pub relations: Map<String, Value>,
    /// `ρ = α + τ` vanishes identically on this branch.
    pub rho_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reduction {
    pub assumption: Option<Vanishing>,
    pub relations: Map<String, Value>,
    /// What is left of the vanishing product's own row; it must vanish too.
    pub residual: Option<String>,
    pub branches: Vec<Branch>,
}

fn product_of_row(name: &str) -> ProductSym {
    match name {
        "sigma12" => Sigma,
        "alpha12" => Alpha,
        "tau12" => Tau,
        _ => Pi,
    }
}

fn drop_rows(laws: &[(String, BipartiteLaw)], vanishing: &[ProductSym]) -> Vec<(String, BipartiteLaw)> {
    laws.iter()
        .map(|(name, l)| {
            let rows = l
                .rows
                .iter()
                .filter(|(_, p, q)| !vanishing.contains(p) && !vanishing.contains(q))
                .cloned()
                .collect();
            (name.clone(), BipartiteLaw::new(rows))
        })
        .collect()
}

fn relations_json(laws: &[(String, BipartiteLaw)], vanishing: &[ProductSym]) -> Map<String, Value> {
    laws.iter()
        .filter(|(name, _)| !vanishing.contains(&product_of_row(name)))
        .map(|(name, l)| (name.clone(), Value::from(l.shorthand())))
        .collect()
}

/// Substitutes a vanishing product into the four-product relations and
/// reports the residual constraint with the branches that satisfy it.
pub fn reduce_vanishing_cases(assumption: Option<Vanishing>) -> Result<Reduction> {
    let solved = derive_four_product_coefficients()?;
    let Some(assumption) = assumption else {
        return Ok(Reduction {
            assumption: None,
            relations: solved.laws_json(),
            residual: None,
            branches: Vec::new(),
        });
    };
    let gone = assumption.product();
    let reduced = drop_rows(&solved.laws, &[gone]);
    let own = &reduced.iter().find(|(n, _)| product_of_row(n) == gone).expect("row").1;
    let residual = own.shorthand();

    let mut culprits: Vec<ProductSym> = Vec::new();
    for (_, p, q) in &own.rows {
        for s in [*p, *q] {
            if s != Sigma && !culprits.contains(&s) {
                culprits.push(s);
            }
        }
    }
    let branches = culprits
        .into_iter()
        .map(|extra| {
            let vanishing = [gone, extra];
            let laws = drop_rows(&solved.laws, &vanishing);
            Branch {
                vanishing: extra.name().to_string(),
                relations: relations_json(&laws, &vanishing),
                rho_trivial: vanishing.contains(&Alpha) && vanishing.contains(&Tau),
            }
        })
        .collect();

    Ok(Reduction {
        assumption: Some(assumption),
        relations: relations_json(&reduced, &[gone]),
        residual: Some(residual),
        branches,
    })
}

//! Formal bipartite expressions: sums of tensor monomials of product trees
//! with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::coeff::CoeffPoly;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProductSym {
    Rho,
    Theta,
    Alpha,
    Tau,
    Sigma,
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    General,
    Symmetric,
    Antisymmetric,
}

impl ProductSym {
    pub fn name(self) -> &'static str {
        match self {
            ProductSym::Rho => "rho",
            ProductSym::Theta => "theta",
            ProductSym::Alpha => "alpha",
            ProductSym::Tau => "tau",
            ProductSym::Sigma => "sigma",
            ProductSym::Pi => "pi",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            ProductSym::Rho => 'ρ',
            ProductSym::Theta => 'θ',
            ProductSym::Alpha => 'α',
            ProductSym::Tau => 'τ',
            ProductSym::Sigma => 'σ',
            ProductSym::Pi => 'π',
        }
    }

    pub fn symmetry(self) -> Symmetry {
        match self {
            ProductSym::Rho | ProductSym::Theta => Symmetry::General,
            ProductSym::Sigma | ProductSym::Tau => Symmetry::Symmetric,
            ProductSym::Alpha | ProductSym::Pi => Symmetry::Antisymmetric,
        }
    }

    /// Unit-normalized products act as the identity when one argument is `1`;
    /// all others vanish.
    pub fn unital(self) -> bool {
        matches!(self, ProductSym::Theta | ProductSym::Sigma)
    }

    /// Swap parity: `-1` for antisymmetric products.
    pub fn parity(self) -> i64 {
        match self.symmetry() {
            Symmetry::Antisymmetric => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    One,
    /// Argument `name` (`'f'`, `'g'`, `'h'`) of tensor slot `slot` (1-based).
    Var { name: char, slot: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Atom(Atom),
    Prod(ProductSym, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn one() -> Tree {
        Tree::Atom(Atom::One)
    }

    pub fn var(name: char, slot: u8) -> Tree {
        Tree::Atom(Atom::Var { name, slot })
    }

    pub fn prod(p: ProductSym, l: Tree, r: Tree) -> Tree {
        Tree::Prod(p, Box::new(l), Box::new(r))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Tree::Atom(Atom::One))
    }

    /// Canonical form with its sign, or `None` when the tree vanishes.
    pub fn canonical(&self) -> Option<(i64, Tree)> {
        match self {
            Tree::Atom(_) => Some((1, self.clone())),
            Tree::Prod(p, l, r) => {
                let (sl, l) = l.canonical()?;
                let (sr, r) = r.canonical()?;
                let sign = sl * sr;
                if l.is_one() || r.is_one() {
                    if !p.unital() {
                        return None;
                    }
                    return Some((sign, if l.is_one() { r } else { l }));
                }
                match p.symmetry() {
                    Symmetry::General => Some((sign, Tree::prod(*p, l, r))),
                    Symmetry::Symmetric => {
                        let (a, b) = if l <= r { (l, r) } else { (r, l) };
                        Some((sign, Tree::prod(*p, a, b)))
                    }
                    Symmetry::Antisymmetric => match l.cmp(&r) {
                        std::cmp::Ordering::Equal => None,
                        std::cmp::Ordering::Less => Some((sign, Tree::prod(*p, l, r))),
                        std::cmp::Ordering::Greater => Some((-sign, Tree::prod(*p, r, l))),
                    },
                }
            }
        }
    }

    pub fn map_atoms(&self, f: &impl Fn(&Atom) -> Tree) -> Tree {
        match self {
            Tree::Atom(a) => f(a),
            Tree::Prod(p, l, r) => Tree::prod(*p, l.map_atoms(f), r.map_atoms(f)),
        }
    }

    pub fn products(&self) -> Vec<ProductSym> {
        match self {
            Tree::Atom(_) => Vec::new(),
            Tree::Prod(p, l, r) => {
                let mut v = l.products();
                v.push(*p);
                v.extend(r.products());
                v
            }
        }
    }

    /// Rewrites `ρ → α + τ` and `θ → σ + π`, returning signed terms.
    pub fn split_symmetric(&self) -> Vec<(i64, Tree)> {
        match self {
            Tree::Atom(_) => vec![(1, self.clone())],
            Tree::Prod(p, l, r) => {
                let targets: &[ProductSym] = match p {
                    ProductSym::Rho => &[ProductSym::Alpha, ProductSym::Tau],
                    ProductSym::Theta => &[ProductSym::Sigma, ProductSym::Pi],
                    other => std::slice::from_ref(other),
                };
                let mut out = Vec::new();
                for (sl, tl) in l.split_symmetric() {
                    for (sr, tr) in r.split_symmetric() {
                        for q in targets {
                            out.push((sl * sr, Tree::prod(*q, tl.clone(), tr.clone())));
                        }
                    }
                }
                out
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ascii: bool, top: bool) -> fmt::Result {
        match self {
            Tree::Atom(Atom::One) => f.write_str("1"),
            Tree::Atom(Atom::Var { name, slot }) => write!(f, "{name}{slot}"),
            Tree::Prod(p, l, r) => {
                if !top {
                    f.write_str("(")?;
                }
                l.write(f, ascii, false)?;
                if ascii {
                    write!(f, " {} ", p.name())?;
                } else {
                    write!(f, " {} ", p.symbol())?;
                }
                r.write(f, ascii, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, f.alternate(), true)
    }
}

/// One tree per tensor slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorMonomial(pub Vec<Tree>);

impl TensorMonomial {
    pub fn canonical(&self) -> Option<(i64, TensorMonomial)> {
        let mut sign = 1;
        let mut slots = Vec::with_capacity(self.0.len());
        for t in &self.0 {
            let (s, t) = t.canonical()?;
            sign *= s;
            slots.push(t);
        }
        Some((sign, TensorMonomial(slots)))
    }

    pub fn products(&self) -> Vec<ProductSym> {
        self.0.iter().flat_map(|t| t.products()).collect()
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(if f.alternate() { " (x) " } else { " ⊗ " })?;
            }
            let needs_parens = matches!(t, Tree::Prod(..));
            if needs_parens {
                f.write_str("(")?;
            }
            if f.alternate() {
                write!(f, "{t:#}")?;
            } else {
                write!(f, "{t}")?;
            }
            if needs_parens {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

/// `Σ coeff · monomial`. Values built through [`FormalExpr::term`] and the
/// arithmetic methods are always canonical.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalExpr {
    terms: BTreeMap<TensorMonomial, CoeffPoly>,
}

impl FormalExpr {
    pub fn zero() -> Self {
        FormalExpr::default()
    }

    /// Terms kept exactly as given, without canonicalization.
    pub fn raw(terms: Vec<(CoeffPoly, TensorMonomial)>) -> Self {
        let mut out = FormalExpr::zero();
        for (c, m) in terms {
            out.add_raw(m, c);
        }
        out
    }

    pub fn term(c: CoeffPoly, m: TensorMonomial) -> Self {
        let mut out = FormalExpr::zero();
        out.add_term(m, c);
        out
    }

    fn add_raw(&mut self, m: TensorMonomial, c: CoeffPoly) {
        let sum = self.terms.get(&m).map_or(c.clone(), |old| old.add(&c));
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn add_term(&mut self, m: TensorMonomial, c: CoeffPoly) {
        if let Some((sign, m)) = m.canonical() {
            self.add_raw(m, c.scale(&Rational::from_integer(sign.into())));
        }
    }

    pub fn canonicalize(&self) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &TensorMonomial) -> CoeffPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CoeffPoly::int(-1)))
    }

    pub fn scale(&self, c: &CoeffPoly) -> Self {
        let mut out = FormalExpr::zero();
        for (m, k) in &self.terms {
            out.add_raw(m.clone(), k.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&CoeffPoly::constant(q.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            out.add_raw(m.clone(), f(c));
        }
        out
    }

    /// Replaces atoms, then re-canonicalizes.
    pub fn substitute_atoms(&self, f: impl Fn(&Atom) -> Tree) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            let mapped = TensorMonomial(m.0.iter().map(|t| t.map_atoms(&f)).collect());
            out.add_term(mapped, c.clone());
        }
        out
    }

    /// Sets the named arguments of `slot` to the unit.
    pub fn set_unit(&self, slot: u8, names: &[char]) -> Self {
        self.substitute_atoms(|a| match a {
            Atom::Var { name, slot: s } if *s == slot && names.contains(name) => Tree::one(),
            _ => Tree::Atom(*a),
        })
    }

    /// Exchanges `f` and `g` in every slot.
    pub fn swap_fg(&self) -> Self {
        self.substitute_atoms(|a| match a {
            Atom::Var { name: 'f', slot } => Tree::var('g', *slot),
            Atom::Var { name: 'g', slot } => Tree::var('f', *slot),
            _ => Tree::Atom(*a),
        })
    }

    /// `(E ∓ swap(E)) / 2`: the part of `E` odd (`sign = -1`) or even
    /// (`sign = 1`) under `f ↔ g`.
    pub fn swap_part(&self, sign: i64) -> Self {
        let swapped = self.swap_fg().scale_rational(&Rational::from_integer(sign.into()));
        self.add(&swapped).scale_rational(&(Rational::one() / Rational::from_integer(2.into())))
    }

    /// Rewrites every `ρ`/`θ` into its symmetric and antisymmetric parts.
    pub fn split_symmetric(&self) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            let mut partial: Vec<(i64, Vec<Tree>)> = vec![(1, Vec::new())];
            for t in &m.0 {
                let pieces = t.split_symmetric();
                partial = partial
                    .into_iter()
                    .flat_map(|(s, v)| {
                        pieces.iter().map(move |(ps, pt)| {
                            let mut v = v.clone();
                            v.push(pt.clone());
                            (s * ps, v)
                        })
                    })
                    .collect();
            }
            for (s, slots) in partial {
                out.add_term(TensorMonomial(slots), c.scale(&Rational::from_integer(s.into())));
            }
        }
        out
    }

    /// Terms whose every product symbol is in `allowed`.
    pub fn restrict_products(&self, allowed: &[ProductSym]) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            if m.products().iter().all(|p| allowed.contains(p)) {
                out.add_raw(m.clone(), c.clone());
            }
        }
        out
    }

    /// Drops every term that uses one of `vanishing`.
    pub fn drop_products(&self, vanishing: &[ProductSym]) -> Self {
        let mut out = FormalExpr::zero();
        for (m, c) in &self.terms {
            if !m.products().iter().any(|p| vanishing.contains(p)) {
                out.add_raw(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let coeff = c.to_string();
            if coeff != "1" {
                if c.num_terms() > 1 {
                    write!(f, "({coeff}) ")?;
                } else {
                    write!(f, "{coeff} ")?;
                }
            }
            if f.alternate() {
                write!(f, "{m:#}")?;
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Bilinear bipartite product given by `Σ c (X1 P Y1) ⊗ (X2 Q Y2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteLaw {
    pub rows: Vec<(CoeffPoly, ProductSym, ProductSym)>,
}

impl BipartiteLaw {
    pub fn new(rows: Vec<(CoeffPoly, ProductSym, ProductSym)>) -> Self {
        BipartiteLaw { rows }
    }

    pub fn concat(&self, other: &BipartiteLaw) -> BipartiteLaw {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BipartiteLaw { rows }
    }

    pub fn apply(&self, lhs: &FormalExpr, rhs: &FormalExpr) -> FormalExpr {
        let mut out = FormalExpr::zero();
        for (m1, c1) in lhs.terms() {
            for (m2, c2) in rhs.terms() {
                let c = c1.mul(c2);
                for (k, p, q) in &self.rows {
                    let slots = vec![
                        Tree::prod(*p, m1.0[0].clone(), m2.0[0].clone()),
                        Tree::prod(*q, m1.0[1].clone(), m2.0[1].clone()),
                    ];
                    out.add_term(TensorMonomial(slots), c.mul(k));
                }
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> BipartiteLaw {
        BipartiteLaw { rows: self.rows.iter().map(|(c, p, q)| (f(c), *p, *q)).collect() }
    }

    /// Shorthand such as `sigma1*sigma2 + x*alpha1*alpha2`, in row order.
    pub fn shorthand(&self) -> String {
        let mut out = String::new();
        for (c, p, q) in &self.rows {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let coeff = c.to_string();
            if coeff != "1" {
                if c.num_terms() > 1 {
                    out.push_str(&format!("({coeff})*"));
                } else {
                    out.push_str(&format!("{coeff}*"));
                }
            }
            out.push_str(&format!("{}1*{}2", p.name(), q.name()));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `f1 ⊗ f2`, `g1 ⊗ g2`, ... as a single-term expression.
pub fn pure(name: char) -> FormalExpr {
    FormalExpr::term(CoeffPoly::one(), TensorMonomial(vec![Tree::var(name, 1), Tree::var(name, 2)]))
}

/// The two-slot expression `left ⊗ right`.
pub fn tensor(left: Tree, right: Tree) -> FormalExpr {
    FormalExpr::term(CoeffPoly::one(), TensorMonomial(vec![left, right]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ProductSym::*;

    fn f(slot: u8) -> Tree {
        Tree::var('f', slot)
    }
    fn g(slot: u8) -> Tree {
        Tree::var('g', slot)
    }

    #[test]
    fn unit_rules() {
        let e = tensor(Tree::prod(Rho, Tree::one(), g(1)), Tree::prod(Theta, f(2), g(2)));
        assert!(e.is_zero());
        let e = tensor(Tree::prod(Theta, f(1), Tree::one()), Tree::prod(Theta, Tree::one(), g(2)));
        assert_eq!(e, tensor(f(1), g(2)));
        assert_eq!(tensor(Tree::prod(Sigma, Tree::one(), Tree::one()), f(2)), tensor(Tree::one(), f(2)));
        assert!(tensor(Tree::prod(Pi, Tree::one(), Tree::one()), f(2)).is_zero());
    }

    #[test]
    fn antisymmetry() {
        let gf = tensor(Tree::prod(Pi, g(1), f(1)), Tree::one());
        let fg = tensor(Tree::prod(Pi, f(1), g(1)), Tree::one());
        assert_eq!(gf, fg.scale(&CoeffPoly::int(-1)));
        let sum = tensor(Tree::prod(Alpha, f(1), g(1)), Tree::one())
            .add(&tensor(Tree::prod(Alpha, g(1), f(1)), Tree::one()));
        assert!(sum.is_zero());
        assert!(tensor(Tree::prod(Alpha, f(1), f(1)), Tree::one()).is_zero());
        let sym = tensor(Tree::prod(Tau, g(1), f(1)), Tree::one());
        assert_eq!(sym, tensor(Tree::prod(Tau, f(1), g(1)), Tree::one()));
    }

    #[test]
    fn raw_then_canonical() {
        let raw = FormalExpr::raw(vec![
            (CoeffPoly::var("a"), TensorMonomial(vec![Tree::prod(Alpha, g(1), f(1)), Tree::one()])),
            (CoeffPoly::var("a"), TensorMonomial(vec![Tree::prod(Alpha, f(1), g(1)), Tree::one()])),
        ]);
        assert_eq!(raw.len(), 2);
        let c = raw.canonicalize();
        assert!(c.is_zero());
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn split_and_parts() {
        let e = tensor(Tree::prod(Rho, f(1), g(1)), Tree::prod(Theta, f(2), g(2))).split_symmetric();
        assert_eq!(e.len(), 4);
        let odd = e.swap_part(-1);
        // α σ and τ π are odd under f <-> g
        assert_eq!(odd.len(), 2);
        assert_eq!(odd.add(&e.swap_part(1)), e);
    }

    #[test]
    fn display() {
        let e = tensor(Tree::prod(Rho, f(1), Tree::prod(Rho, g(1), Tree::var('h', 1))), f(2));
        assert_eq!(format!("{e}"), "(f1 ρ (g1 ρ h1)) ⊗ f2");
        assert_eq!(format!("{e:#}"), "(f1 rho (g1 rho h1)) (x) f2");
    }
}

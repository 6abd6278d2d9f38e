//! Tensor composition and the bipartite product laws.
//!
//! For two systems of the same class the composite products are
//!
//! ```text
//! σ12 = σ1 σ2 + x α1 α2        α12 = α1 σ2 + σ1 α2
//! ```
//!
//! and, for the symmetric-bracket class, the same with `τ` in place of `α`.
//! The `*12` functions evaluate these right-hand sides on pure tensors; the
//! checks compare them against the native products of the composite algebra
//! (Kronecker matrices, or polynomials on the product phase space).

use crate::error::{Error, Result};
use crate::realization::{CompositionClass, Element, ProductPair, Realization};
use crate::report::{check_samples, CheckReport, Comparison};
use crate::scalar::Scalar;

/// A pure tensor `left ⊗ right` together with its composite representation.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteElement<E> {
    pub left: E,
    pub right: E,
    pub composed: E,
}

/// Only identical classes with identical `x` compose.
pub fn check_compatible(p1: &ProductPair, p2: &ProductPair) -> Result<()> {
    if p1.class != p2.class {
        return Err(Error::ClassMismatch(p1.class, p2.class));
    }
    if p1.x != p2.x {
        return Err(Error::Inconsistent(format!(
            "composability constants differ: {} vs {}",
            p1.x, p2.x
        )));
    }
    Ok(())
}

pub fn tensor<R: Realization>(
    r1: &R,
    e1: &R::Element,
    r2: &R,
    e2: &R::Element,
) -> Result<BipartiteElement<R::Element>> {
    check_compatible(r1.pair(), r2.pair())?;
    Ok(BipartiteElement { left: e1.clone(), right: e2.clone(), composed: e1.tensor(e2) })
}

/// `s1 ⊗ s2 + x b1 ⊗ b2`
pub fn sigma_law<E: Element>(x: &Scalar, s1: &E, s2: &E, b1: &E, b2: &E) -> Result<E> {
    let main = s1.tensor(s2);
    if x.is_zero() {
        return Ok(main);
    }
    main.try_add(&b1.tensor(b2).scale(x))
}

/// `b1 ⊗ s2 + s1 ⊗ b2`
pub fn bracket_law<E: Element>(s1: &E, s2: &E, b1: &E, b2: &E) -> Result<E> {
    b1.tensor(s2).try_add(&s1.tensor(b2))
}

struct Factors<E> {
    s1: E,
    s2: E,
    b1: E,
    b2: E,
}

fn factors<R: Realization>(
    r1: &R,
    r2: &R,
    f: &BipartiteElement<R::Element>,
    g: &BipartiteElement<R::Element>,
) -> Result<Factors<R::Element>> {
    check_compatible(r1.pair(), r2.pair())?;
    Ok(Factors {
        s1: r1.sigma(&f.left, &g.left)?,
        s2: r2.sigma(&f.right, &g.right)?,
        b1: r1.bracket(&f.left, &g.left)?,
        b2: r2.bracket(&f.right, &g.right)?,
    })
}

pub fn sigma12<R: Realization>(
    r1: &R,
    r2: &R,
    f: &BipartiteElement<R::Element>,
    g: &BipartiteElement<R::Element>,
) -> Result<R::Element> {
    let t = factors(r1, r2, f, g)?;
    sigma_law(&r1.pair().x, &t.s1, &t.s2, &t.b1, &t.b2)
}

pub fn alpha12<R: Realization>(
    r1: &R,
    r2: &R,
    f: &BipartiteElement<R::Element>,
    g: &BipartiteElement<R::Element>,
) -> Result<R::Element> {
    let class = r1.pair().class;
    if class == CompositionClass::ParabolicSymmetric {
        return Err(Error::WrongClass("alpha12 needs an antisymmetric bracket", class));
    }
    let t = factors(r1, r2, f, g)?;
    bracket_law(&t.s1, &t.s2, &t.b1, &t.b2)
}

pub fn tau12<R: Realization>(
    r1: &R,
    r2: &R,
    f: &BipartiteElement<R::Element>,
    g: &BipartiteElement<R::Element>,
) -> Result<R::Element> {
    let class = r1.pair().class;
    if class != CompositionClass::ParabolicSymmetric {
        return Err(Error::WrongClass("tau12 needs the symmetric bracket", class));
    }
    let t = factors(r1, r2, f, g)?;
    bracket_law(&t.s1, &t.s2, &t.b1, &t.b2)
}

fn bracket_name(r: &impl Realization) -> &'static str {
    match r.pair().class {
        CompositionClass::ParabolicSymmetric => "tau12",
        _ => "alpha12",
    }
}

/// Samples are `[f1, f2, g1, g2]`. Returns the `σ12` report and the bracket
/// report.
pub fn check_composability<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> Vec<CheckReport> {
    let names = ["f1", "f2", "g1", "g2"];
    let bipartite = |s: &[R::Element]| {
        let f = tensor(r, &s[0], r, &s[1])?;
        let g = tensor(r, &s[2], r, &s[3])?;
        Ok::<_, Error>((f, g))
    };
    let sigma = check_samples("sigma12", &r.name(), &names, samples, |s| {
        let (f, g) = bipartite(s)?;
        Ok(Comparison::new(sigma12(r, r, &f, &g)?, r.sigma(&f.composed, &g.composed)?))
    });
    let bracket = check_samples(bracket_name(r), &r.name(), &names, samples, |s| {
        let (f, g) = bipartite(s)?;
        let t = factors(r, r, &f, &g)?;
        Ok(Comparison::new(
            bracket_law(&t.s1, &t.s2, &t.b1, &t.b2)?,
            r.bracket(&f.composed, &g.composed)?,
        ))
    });
    vec![sigma, bracket]
}

/// Left Leibniz rule for the native composite products on pure tensors
/// `F = f1⊗f2`, `G = g1⊗g2`, `H = h1⊗h2`.
pub fn check_composed_leibniz<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> CheckReport {
    let names = ["f1", "f2", "g1", "g2", "h1", "h2"];
    check_samples("composed-leibniz", &r.name(), &names, samples, |s| {
        let f = s[0].tensor(&s[1]);
        let g = s[2].tensor(&s[3]);
        let h = s[4].tensor(&s[5]);
        let lhs = r.bracket(&f, &r.sigma(&g, &h)?)?;
        let rhs = r.sigma(&r.bracket(&f, &g)?, &h)?.try_add(&r.sigma(&g, &r.bracket(&f, &h)?)?)?;
        Ok(Comparison::new(lhs, rhs))
    })
}

/// Composite `(σ, bracket)` of `f1⊗f2` and `g1⊗g2` from the laws.
fn law_pair<R: Realization>(
    r: &R,
    f1: &R::Element,
    f2: &R::Element,
    g1: &R::Element,
    g2: &R::Element,
) -> Result<(R::Element, R::Element)> {
    let (s1, s2) = (r.sigma(f1, g1)?, r.sigma(f2, g2)?);
    let (b1, b2) = (r.bracket(f1, g1)?, r.bracket(f2, g2)?);
    Ok((sigma_law(&r.pair().x, &s1, &s2, &b1, &b2)?, bracket_law(&s1, &s2, &b1, &b2)?))
}

fn first_mismatch<E: Element>(pairs: Vec<(&'static str, E, E)>) -> Comparison<E> {
    let mut last = None;
    for (note, lhs, rhs) in pairs {
        if lhs != rhs {
            return Comparison::new(lhs, rhs).with_note(note);
        }
        last = Some((lhs, rhs));
    }
    let (lhs, rhs) = last.expect("at least one comparison");
    Comparison::new(lhs, rhs)
}

/// Associativity and commutativity of the composition. Samples are
/// `[f1, f2, f3, g1, g2, g3]`.
///
/// The laws are applied in both groupings `((12)3)` and `(1(23))` and compared
/// with each other and with the native products on `f1⊗f2⊗f3`; the swapped
/// composite `(21)`, mapped back by the swap isomorphism, is compared with the
/// law on `(12)`.
pub fn check_monoid<R: Realization>(r: &R, samples: &[Vec<R::Element>]) -> Vec<CheckReport> {
    let names = ["f1", "f2", "f3", "g1", "g2", "g3"];
    let x = r.pair().x.clone();

    let assoc = check_samples("monoid-associativity", &r.name(), &names, samples, |s| {
        let (f1, f2, f3, g1, g2, g3) = (&s[0], &s[1], &s[2], &s[3], &s[4], &s[5]);
        let (s3, b3) = (r.sigma(f3, g3)?, r.bracket(f3, g3)?);
        let (s1, b1) = (r.sigma(f1, g1)?, r.bracket(f1, g1)?);

        let (s12, b12) = law_pair(r, f1, f2, g1, g2)?;
        let left_sigma = sigma_law(&x, &s12, &s3, &b12, &b3)?;
        let left_bracket = bracket_law(&s12, &s3, &b12, &b3)?;

        let (s23, b23) = law_pair(r, f2, f3, g2, g3)?;
        let right_sigma = sigma_law(&x, &s1, &s23, &b1, &b23)?;
        let right_bracket = bracket_law(&s1, &s23, &b1, &b23)?;

        let f = f1.tensor(f2).tensor(f3);
        let g = g1.tensor(g2).tensor(g3);
        let native_sigma = r.sigma(&f, &g)?;
        let native_bracket = r.bracket(&f, &g)?;

        Ok(first_mismatch(vec![
            ("sigma: ((12)3) vs (1(23))", left_sigma.clone(), right_sigma),
            ("sigma: ((12)3) vs native", left_sigma, native_sigma),
            ("bracket: ((12)3) vs (1(23))", left_bracket.clone(), right_bracket),
            ("bracket: ((12)3) vs native", left_bracket, native_bracket),
        ]))
    });

    let comm = check_samples("monoid-commutativity", &r.name(), &names, samples, |s| {
        let (f1, f2, g1, g2) = (&s[0], &s[1], &s[3], &s[4]);
        let (s12, b12) = law_pair(r, f1, f2, g1, g2)?;
        let (s21, b21) = law_pair(r, f2, f1, g2, g1)?;
        let left = f2.size();
        let native_s21 = r.sigma(&f2.tensor(f1), &g2.tensor(g1))?;
        let native_b21 = r.bracket(&f2.tensor(f1), &g2.tensor(g1))?;
        Ok(first_mismatch(vec![
            ("sigma: (12) vs swapped (21)", s12.clone(), s21.swap_factors(left)?),
            ("sigma: (12) vs swapped native (21)", s12, native_s21.swap_factors(left)?),
            ("bracket: (12) vs swapped (21)", b12.clone(), b21.swap_factors(left)?),
            ("bracket: (12) vs swapped native (21)", b12, native_b21.swap_factors(left)?),
        ]))
    });

    vec![assoc, comm]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixElement;
    use crate::realization::{poisson_bracket, MatrixRealization, PhaseRealization};
    use crate::scalar::rat;
    use crate::text::parse_poly;

    fn elliptic() -> MatrixRealization {
        MatrixRealization::elliptic(rat(2, 1)).unwrap()
    }

    #[test]
    fn pauli_sigma12() {
        let r = elliptic();
        let one = MatrixElement::identity(2);
        let f = tensor(&r, &MatrixElement::pauli_x(), &r, &one).unwrap();
        assert_eq!(sigma12(&r, &r, &f, &f).unwrap(), MatrixElement::identity(4));
    }

    #[test]
    fn unit_slot_alpha12() {
        let r = elliptic();
        let one = MatrixElement::identity(2);
        let (x, y) = (MatrixElement::pauli_x(), MatrixElement::pauli_y());
        let f = tensor(&r, &x, &r, &one).unwrap();
        let g = tensor(&r, &y, &r, &one).unwrap();
        let expected = r.bracket(&x, &y).unwrap().kron(&one);
        assert_eq!(alpha12(&r, &r, &f, &g).unwrap(), expected);
    }

    #[test]
    fn poisson_alpha12_oracle() {
        let r = PhaseRealization::classical();
        let f1 = parse_poly("x1^2*p1").unwrap();
        let f2 = parse_poly("p1 + x1").unwrap();
        let g1 = parse_poly("p1^2").unwrap();
        let g2 = parse_poly("x1*p1").unwrap();
        let f = tensor(&r, &f1, &r, &f2).unwrap();
        let g = tensor(&r, &g1, &r, &g2).unwrap();
        // {f1,g1} f2 g2 + f1 g1 {f2,g2}, slot 2 relabelled to index 2
        let expected = parse_poly("4*x1*p1^2*(p2 + x2)*x2*p2 + x1^2*p1^3*(x2 - p2)").unwrap();
        assert_eq!(poisson_bracket(&f1, &g1).unwrap(), parse_poly("4*x1*p1^2").unwrap());
        assert_eq!(alpha12(&r, &r, &f, &g).unwrap(), expected);
        assert_eq!(r.bracket(&f.composed, &g.composed).unwrap(), expected);
    }

    #[test]
    fn tau12_examples() {
        let r = PhaseRealization::symmetric();
        let one = parse_poly("1").unwrap();
        let x = parse_poly("x1").unwrap();
        let p = parse_poly("p1").unwrap();
        let f = tensor(&r, &x, &r, &one).unwrap();
        let g = tensor(&r, &p, &r, &one).unwrap();
        assert_eq!(tau12(&r, &r, &f, &g).unwrap(), parse_poly("1").unwrap().embed(2, 0));
        let xp = tensor(&r, &parse_poly("x1*p1").unwrap(), &r, &one).unwrap();
        assert_eq!(tau12(&r, &r, &xp, &f).unwrap(), parse_poly("x1").unwrap().embed(2, 0));
        assert!(matches!(alpha12(&r, &r, &f, &g), Err(Error::WrongClass(..))));
    }

    #[test]
    fn class_mismatch_rejected() {
        let a = PhaseRealization::classical();
        let b = PhaseRealization::moyal();
        let one = parse_poly("1").unwrap();
        assert!(matches!(tensor(&a, &one, &b, &one), Err(Error::ClassMismatch(..))));
        let hbar1 = MatrixRealization::elliptic(rat(1, 1)).unwrap();
        let m = MatrixElement::identity(2);
        assert!(matches!(tensor(&elliptic(), &m, &hbar1, &m), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn pauli_monoid() {
        let r = elliptic();
        let (x, y, z) = (MatrixElement::pauli_x(), MatrixElement::pauli_y(), MatrixElement::pauli_z());
        let samples = vec![vec![x.clone(), y.clone(), z.clone(), z, x, y]];
        assert!(check_monoid(&r, &samples).iter().all(|rep| rep.passed()));
    }
}

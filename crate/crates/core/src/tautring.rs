//! The free bigraded commutative algebra on the generators `p_i` (bidegree
//! `(i, i-1)`) and `q_i` (bidegree `(i, i)`) over `Q[g]`, together with the
//! operators `e`, `h` and the second-order differential operator `D` that
//! realizes the lowering operator of the sl2 action.
//!
//! `q_0` is not a stored generator: it is the scalar `g`, which is what the
//! commutation relation `[e, D] = h` forces on the unit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::coeff::GenusPoly;

/// Which family a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    P,
    Q,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TautError {
    #[error("q0 is not a generator (it is the scalar g)")]
    QZero,
    #[error("p0 is not a generator")]
    PZero,
}

/// A monomial in the generators, stored as exponent maps keyed by index.
/// Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TautMonomial {
    p_exps: BTreeMap<u32, u32>,
    q_exps: BTreeMap<u32, u32>,
}

impl TautMonomial {
    pub fn unit() -> Self {
        TautMonomial::default()
    }

    pub fn generator(kind: GenKind, index: u32) -> Result<Self, TautError> {
        Self::from_exponents(
            match kind {
                GenKind::P => vec![(index, 1)],
                GenKind::Q => vec![],
            },
            match kind {
                GenKind::Q => vec![(index, 1)],
                GenKind::P => vec![],
            },
        )
    }

    /// Builds a monomial from `(index, exponent)` lists for the two families.
    pub fn from_exponents(
        p: impl IntoIterator<Item = (u32, u32)>,
        q: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, TautError> {
        let mut m = TautMonomial::default();
        for (i, e) in p {
            if i == 0 {
                return Err(TautError::PZero);
            }
            if e > 0 {
                *m.p_exps.entry(i).or_insert(0) += e;
            }
        }
        for (i, e) in q {
            if i == 0 {
                return Err(TautError::QZero);
            }
            if e > 0 {
                *m.q_exps.entry(i).or_insert(0) += e;
            }
        }
        Ok(m)
    }

    pub fn is_unit(&self) -> bool {
        self.p_exps.is_empty() && self.q_exps.is_empty()
    }

    pub fn p_exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.p_exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn q_exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.q_exps.iter().map(|(&i, &e)| (i, e))
    }

    /// Codimension: `sum i*e(p_i) + sum i*e(q_i)`.
    pub fn codim(&self) -> u32 {
        self.p_exps.iter().map(|(&i, &e)| i * e).sum::<u32>()
            + self.q_exps.iter().map(|(&i, &e)| i * e).sum::<u32>()
    }

    /// Beauville index: `sum (i-1)*e(p_i) + sum i*e(q_i)`.
    pub fn index(&self) -> u32 {
        self.p_exps.iter().map(|(&i, &e)| (i - 1) * e).sum::<u32>()
            + self.q_exps.iter().map(|(&i, &e)| i * e).sum::<u32>()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.codim(), self.index())
    }

    /// Product of monomials: exponents add.
    pub fn mul(&self, other: &TautMonomial) -> TautMonomial {
        let mut out = self.clone();
        for (&i, &e) in &other.p_exps {
            *out.p_exps.entry(i).or_insert(0) += e;
        }
        for (&i, &e) in &other.q_exps {
            *out.q_exps.entry(i).or_insert(0) += e;
        }
        out
    }

    fn with_p_shift(&self, remove: &[(u32, u32)], add: Option<u32>) -> TautMonomial {
        // remove: (index, multiplicity) pairs of p-exponents; add: one p-index
        let mut out = self.clone();
        for &(i, k) in remove {
            let e = out.p_exps.get_mut(&i).expect("exponent present");
            *e -= k;
            if *e == 0 {
                out.p_exps.remove(&i);
            }
        }
        if let Some(i) = add {
            *out.p_exps.entry(i).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for TautMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (prefix, exps) in [("p", &self.p_exps), ("q", &self.q_exps)] {
            for (&i, &e) in exps {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}{}", prefix, i)?;
                } else {
                    write!(f, "{}{}^{}", prefix, i, e)?;
                }
            }
        }
        Ok(())
    }
}

/// An exact linear combination of monomials with `Q[g]` coefficients.
/// Zero coefficients are never stored; equality is map equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TautElement {
    terms: BTreeMap<TautMonomial, GenusPoly>,
}

impl TautElement {
    pub fn zero() -> Self {
        TautElement::default()
    }

    pub fn one() -> Self {
        TautElement::scalar(GenusPoly::one())
    }

    pub fn scalar(c: GenusPoly) -> Self {
        let mut t = TautElement::default();
        t.add_term(TautMonomial::unit(), c);
        t
    }

    pub fn monomial(m: TautMonomial) -> Self {
        let mut t = TautElement::default();
        t.add_term(m, GenusPoly::one());
        t
    }

    pub fn generator(kind: GenKind, index: u32) -> Result<Self, TautError> {
        Ok(TautElement::monomial(TautMonomial::generator(kind, index)?))
    }

    /// Builds an element from `(monomial, coefficient)` pairs, canonicalizing
    /// along the way (like terms combined, zero coefficients dropped).
    pub fn make(pairs: impl IntoIterator<Item = (TautMonomial, GenusPoly)>) -> Self {
        let mut t = TautElement::default();
        for (m, c) in pairs {
            t.add_term(m, c);
        }
        t
    }

    pub fn add_term(&mut self, m: TautMonomial, c: GenusPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TautMonomial, &GenusPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &TautMonomial) -> GenusPoly {
        self.terms.get(m).cloned().unwrap_or_else(GenusPoly::zero)
    }

    /// The common bidegree when every monomial shares one; `None` for zero or
    /// inhomogeneous elements.
    pub fn homogeneous_bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys();
        let first = it.next()?.bidegree();
        it.all(|m| m.bidegree() == first).then_some(first)
    }

    /// Restriction to monomials of bidegree `(codim, index)`.
    pub fn bidegree_component(&self, codim: u32, index: u32) -> TautElement {
        TautElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (codim, index))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The set of bidegrees occurring in this element, sorted.
    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<_> = self.terms.keys().map(|m| m.bidegree()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn scale(&self, c: &GenusPoly) -> TautElement {
        if c.is_zero() {
            return TautElement::zero();
        }
        TautElement::make(self.terms.iter().map(|(m, k)| (m.clone(), k * c)))
    }

    pub fn pow(&self, n: u32) -> TautElement {
        let mut acc = TautElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplication by `p_1`: raises codimension by one, preserves the index.
    pub fn op_e(&self) -> TautElement {
        let p1 = TautMonomial::from_exponents([(1, 1)], []).expect("p1 is valid");
        TautElement::make(
            self.terms
                .iter()
                .map(|(m, c)| (m.mul(&p1), c.clone())),
        )
    }

    /// The weight operator: scales the bidegree-(i, j) component by
    /// `2i - j - g`, extended additively over components.
    pub fn op_h(&self) -> TautElement {
        TautElement::make(self.terms.iter().map(|(m, c)| {
            let (i, j) = m.bidegree();
            let weight = GenusPoly::linear(2 * i as i64 - j as i64, -1);
            (m.clone(), c * &weight)
        }))
    }

    /// The lowering operator, a second-order differential operator:
    ///
    /// ```text
    /// D = -1/2 sum_{i,j>=1} C(i+j, j)   p_{i+j-1} d/dp_i d/dp_j
    ///     -     sum_{i,j>=1} C(i+j-1, j) q_{i+j-1} d/dq_i d/dp_j
    ///     +     sum_{i>=1}                q_{i-1}  d/dp_i
    /// ```
    ///
    /// with `q_0` replaced by the scalar `g`. It lowers codimension by one and
    /// preserves the index on every monomial; it annihilates anything free of
    /// p-generators.
    pub fn op_d(&self) -> TautElement {
        let mut out = TautElement::zero();
        for (m, c) in &self.terms {
            apply_d_monomial(m, c, &mut out);
        }
        out
    }

    /// Exact evaluation of every coefficient at `g = g0`.
    pub fn substitute_genus(&self, g0: &BigRational) -> TautElement {
        TautElement::make(self.terms.iter().map(|(m, c)| {
            (m.clone(), GenusPoly::from_rational(c.eval(g0)))
        }))
    }

    /// Drops every monomial of codimension greater than `g0`
    /// (classes above the dimension vanish).
    pub fn truncate_dimension(&self, g0: u32) -> TautElement {
        TautElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.codim() <= g0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn big_binomial(n: u32, k: u32) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// One monomial pushed through the differential operator; accumulates into `out`.
fn apply_d_monomial(m: &TautMonomial, coeff: &GenusPoly, out: &mut TautElement) {
    let p: Vec<(u32, u32)> = m.p_exponents().collect();
    let q: Vec<(u32, u32)> = m.q_exponents().collect();

    // -1/2 C(i+j, j) p_{i+j-1} d/dp_i d/dp_j, summed over ordered pairs (i, j)
    for (ai, &(i, ei)) in p.iter().enumerate() {
        for &(j, ej) in &p[ai..] {
            let (factor, removed): (BigRational, Vec<(u32, u32)>) = if i == j {
                if ei < 2 {
                    continue;
                }
                // ordered pairs (i,i) contribute once; d^2/dp_i^2 gives e(e-1)
                (
                    BigRational::from_integer(BigInt::from(ei as i64 * (ei as i64 - 1))),
                    vec![(i, 2)],
                )
            } else {
                // (i,j) and (j,i) both appear and C(i+j,j) = C(i+j,i)
                (
                    BigRational::from_integer(BigInt::from(2 * ei as i64 * ej as i64)),
                    vec![(i, 1), (j, 1)],
                )
            };
            let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
            let scalar = half * big_binomial(i + j, j) * factor;
            let target = m.with_p_shift(&removed, Some(i + j - 1));
            out.add_term(target, coeff.scale(&scalar));
        }
    }

    // - C(i+j-1, j) q_{i+j-1} d/dq_i d/dp_j
    for &(i, bi) in &q {
        for &(j, aj) in &p {
            let scalar = -big_binomial(i + j - 1, j)
                * BigRational::from_integer(BigInt::from(bi as i64 * aj as i64));
            let mut target = m.with_p_shift(&[(j, 1)], None);
            let e = target.q_exps.get_mut(&i).expect("q exponent present");
            *e -= 1;
            if *e == 0 {
                target.q_exps.remove(&i);
            }
            *target.q_exps.entry(i + j - 1).or_insert(0) += 1;
            out.add_term(target, coeff.scale(&scalar));
        }
    }

    // + q_{i-1} d/dp_i, with q_0 = g
    for &(i, ei) in &p {
        let scalar = BigRational::from_integer(BigInt::from(ei as i64));
        let mut target = m.with_p_shift(&[(i, 1)], None);
        let mut c = coeff.scale(&scalar);
        if i == 1 {
            c *= GenusPoly::g();
        } else {
            *target.q_exps.entry(i - 1).or_insert(0) += 1;
        }
        out.add_term(target, c);
    }
}

impl Add for &TautElement {
    type Output = TautElement;
    fn add(self, rhs: &TautElement) -> TautElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for TautElement {
    type Output = TautElement;
    fn add(self, rhs: TautElement) -> TautElement {
        &self + &rhs
    }
}

impl Sub for &TautElement {
    type Output = TautElement;
    fn sub(self, rhs: &TautElement) -> TautElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for TautElement {
    type Output = TautElement;
    fn sub(self, rhs: TautElement) -> TautElement {
        &self - &rhs
    }
}

impl Neg for TautElement {
    type Output = TautElement;
    fn neg(self) -> TautElement {
        TautElement {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &TautElement {
    type Output = TautElement;
    fn mul(self, rhs: &TautElement) -> TautElement {
        let mut out = TautElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for TautElement {
    type Output = TautElement;
    fn mul(self, rhs: TautElement) -> TautElement {
        &self * &rhs
    }
}

impl fmt::Display for TautElement {
    /// Canonical rendering, e.g. `2*q1^2 - 8*q2` or `(4 - 4*g)*q2`.
    /// `crate::expr::parse` inverts this on canonical forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negate = c.is_single_term() && c.leading_sign_negative();
            if first {
                if negate {
                    write!(f, "-")?;
                }
                first = false;
            } else if negate {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let display_coeff = if negate { -c.clone() } else { c.clone() };
            write_term(f, m, &display_coeff)?;
        }
        Ok(())
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    m: &TautMonomial,
    c: &GenusPoly,
) -> fmt::Result {
    let coeff_is_one = c.as_rational().map(|r| r.is_one()).unwrap_or(false);
    if m.is_unit() {
        if c.is_single_term() {
            write!(f, "{}", c)
        } else {
            write!(f, "({})", c)
        }
    } else if coeff_is_one {
        write!(f, "{}", m)
    } else if c.is_single_term() {
        write!(f, "{}*{}", c, m)
    } else {
        write!(f, "({})*{}", c, m)
    }
}

/// The codimension-2 class `2*(q1^2 - (2g-2)*q2)` whose derivability the
/// relation engine decides per genus.
pub fn w_class() -> TautElement {
    let q1sq = TautMonomial::from_exponents([], [(1, 2)]).expect("valid");
    let q2 = TautMonomial::from_exponents([], [(2, 1)]).expect("valid");
    TautElement::make([
        (q1sq, GenusPoly::from_int(2)),
        (q2, GenusPoly::linear(4, -4)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: &[(u32, u32)], q: &[(u32, u32)]) -> TautMonomial {
        TautMonomial::from_exponents(p.iter().copied(), q.iter().copied()).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn make_canonicalizes() {
        // constructor identity
        let x = TautElement::monomial(pm(&[(2, 2)], &[]));
        assert_eq!(x.term_count(), 1);
        // cancellation
        let p1 = pm(&[(1, 1)], &[]);
        let y = TautElement::make([
            (p1.clone(), GenusPoly::one()),
            (p1, GenusPoly::from_int(-1)),
        ]);
        assert!(y.is_zero());
        // W
        let w = w_class();
        assert_eq!(w.homogeneous_bidegree(), Some((2, 2)));
        assert_eq!(w.to_string(), "2*q1^2 + (4 - 4*g)*q2");
    }

    #[test]
    fn index_zero_generators_rejected() {
        assert_eq!(
            TautMonomial::generator(GenKind::Q, 0).unwrap_err(),
            TautError::QZero
        );
        assert_eq!(
            TautMonomial::generator(GenKind::P, 0).unwrap_err(),
            TautError::PZero
        );
    }

    #[test]
    fn bidegrees_of_generators() {
        let p3 = pm(&[(3, 1)], &[]);
        assert_eq!(p3.bidegree(), (3, 2));
        let q2 = pm(&[], &[(2, 1)]);
        assert_eq!(q2.bidegree(), (2, 2));
        let mixed = pm(&[(2, 2)], &[(1, 1)]);
        assert_eq!(mixed.bidegree(), (5, 3));
    }

    #[test]
    fn bidegree_component_extraction() {
        let w = w_class();
        assert_eq!(w.bidegree_component(2, 2), w);
        let p1 = TautElement::monomial(pm(&[(1, 1)], &[]));
        let q2 = TautElement::monomial(pm(&[], &[(2, 1)]));
        let sum = &p1 + &q2;
        assert_eq!(sum.bidegree_component(1, 0), p1);
        assert!(sum.bidegree_component(3, 3).is_zero());
        // components reconstitute the element
        let mut back = TautElement::zero();
        for (i, j) in sum.bidegrees() {
            back = &back + &sum.bidegree_component(i, j);
        }
        assert_eq!(back, sum);
    }

    #[test]
    fn op_e_examples() {
        assert_eq!(
            TautElement::one().op_e(),
            TautElement::monomial(pm(&[(1, 1)], &[]))
        );
        assert_eq!(
            TautElement::monomial(pm(&[], &[(2, 1)])).op_e(),
            TautElement::monomial(pm(&[(1, 1)], &[(2, 1)]))
        );
        assert_eq!(
            TautElement::monomial(pm(&[(1, 1)], &[])).op_e(),
            TautElement::monomial(pm(&[(1, 2)], &[]))
        );
    }

    #[test]
    fn op_h_examples() {
        // h(1) = -g (i = j = 0)
        assert_eq!(
            TautElement::one().op_h(),
            TautElement::scalar(GenusPoly::linear(0, -1))
        );
        // h(p2^2) = (6 - g) p2^2
        let p2sq = TautElement::monomial(pm(&[(2, 2)], &[]));
        assert_eq!(p2sq.op_h(), p2sq.scale(&GenusPoly::linear(6, -1)));
        // h(q1) = (1 - g) q1
        let q1 = TautElement::monomial(pm(&[], &[(1, 1)]));
        assert_eq!(q1.op_h(), q1.scale(&GenusPoly::linear(1, -1)));
    }

    #[test]
    fn op_d_on_p1_gives_g() {
        // only the first-order term fires, with q_0 = g
        assert_eq!(
            TautElement::monomial(pm(&[(1, 1)], &[])).op_d(),
            TautElement::scalar(GenusPoly::g())
        );
    }

    #[test]
    fn op_d_on_p2_squared() {
        // -1/2 C(4,2) * 2 * p3 + 2 q1 p2 = -6 p3 + 2 p2 q1;
        // the second summand carries p2, as the bidegree (3,2) requires
        let d = TautElement::monomial(pm(&[(2, 2)], &[])).op_d();
        let expected = TautElement::make([
            (pm(&[(3, 1)], &[]), GenusPoly::from_int(-6)),
            (pm(&[(2, 1)], &[(1, 1)]), GenusPoly::from_int(2)),
        ]);
        assert_eq!(d, expected);
        assert_eq!(d.homogeneous_bidegree(), Some((3, 2)));
    }

    #[test]
    fn op_d_annihilates_q_polynomials() {
        let x = TautElement::monomial(pm(&[], &[(1, 2)]));
        assert!(x.op_d().is_zero());
        let y = TautElement::make([
            (pm(&[], &[(3, 1), (1, 1)]), GenusPoly::g()),
            (pm(&[], &[(2, 2)]), GenusPoly::from_int(5)),
        ]);
        assert!(y.op_d().is_zero());
    }

    #[test]
    fn op_d_squared_on_p2_squared() {
        // D^2(p2^2) = 2 (q1^2 - 4 q2), identically in g
        let d2 = TautElement::monomial(pm(&[(2, 2)], &[])).op_d().op_d();
        let expected = TautElement::make([
            (pm(&[], &[(1, 2)]), GenusPoly::from_int(2)),
            (pm(&[], &[(2, 1)]), GenusPoly::from_int(-8)),
        ]);
        assert_eq!(d2, expected);
        assert_eq!(d2.to_string(), "2*q1^2 - 8*q2");
    }

    #[test]
    fn substitute_genus_examples() {
        let w = w_class();
        let w3 = w.substitute_genus(&rat(3));
        assert_eq!(w3.to_string(), "2*q1^2 - 8*q2");
        let w4 = w.substitute_genus(&rat(4));
        assert_eq!(w4.to_string(), "2*q1^2 - 12*q2");
        let p1 = TautElement::monomial(pm(&[(1, 1)], &[]));
        assert_eq!(p1.substitute_genus(&rat(5)), p1);
    }

    #[test]
    fn truncate_dimension_examples() {
        let p2sq = TautElement::monomial(pm(&[(2, 2)], &[]));
        assert!(p2sq.truncate_dimension(3).is_zero());
        assert_eq!(p2sq.truncate_dimension(4), p2sq);
        let x = &TautElement::one() + &TautElement::monomial(pm(&[(3, 1)], &[]));
        assert_eq!(x.truncate_dimension(2), TautElement::one());
    }

    #[test]
    fn sl2_commutator_anchors() {
        // e(D(m)) - D(e(m)) = h(m), pinned on the unit and on p2
        let one = TautElement::one();
        let lhs = &one.op_d().op_e() - &one.op_e().op_d();
        assert_eq!(lhs, one.op_h());
        assert_eq!(lhs, TautElement::scalar(GenusPoly::linear(0, -1)));

        let p2 = TautElement::monomial(pm(&[(2, 1)], &[]));
        let lhs = &p2.op_d().op_e() - &p2.op_e().op_d();
        assert_eq!(lhs, p2.op_h());
        assert_eq!(lhs, p2.scale(&GenusPoly::linear(3, -1)));
    }

    #[test]
    fn display_roundtrip_shapes() {
        let x = TautElement::make([
            (pm(&[(3, 1)], &[]), GenusPoly::from_int(-6)),
            (pm(&[(2, 1)], &[(1, 1)]), GenusPoly::from_int(2)),
        ]);
        assert_eq!(x.to_string(), "2*p2*q1 - 6*p3");
        let half = GenusPoly::from_rational(BigRational::new(
            BigInt::from(1),
            BigInt::from(2),
        ));
        let y = TautElement::make([(pm(&[(1, 1)], &[]), half)]);
        assert_eq!(y.to_string(), "1/2*p1");
        assert_eq!(TautElement::zero().to_string(), "0");
        let c = TautElement::scalar(GenusPoly::linear(1, 1));
        assert_eq!(c.to_string(), "(1 + g)");
    }
}

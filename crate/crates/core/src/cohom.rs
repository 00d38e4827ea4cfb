//! Exact graded-commutative cohomology of products over `Q`.
//!
//! A factor is either a curve of genus `h` (cohomology spanned by `1`,
//! `a_1..a_h`, `b_1..b_h`, `pt` with `a_i b_j = delta_ij pt`) or an abelian
//! variety of dimension `h` (the exterior algebra on `al_1..al_h`,
//! `be_1..be_h`, all of degree 1). Classes are sparse rational combinations
//! of tensor monomials; cup products carry Koszul signs.
//!
//! On top of the algebra sit the Fourier transform on abelian factors and
//! the degeneration computation: cycle classes of two test families of
//! stable curves over a product of two curves, their Künneth components,
//! and the joint-kernel argument showing that no nontrivial combination of
//! `q1^2` and `q2` can vanish on both families.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::rational_to_string;
use crate::linalg::nullspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Curve { genus: u8 },
    Abelian { dim: u8 },
}

impl Factor {
    pub fn top_degree(self) -> u32 {
        match self {
            Factor::Curve { .. } => 2,
            Factor::Abelian { dim } => 2 * dim as u32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorSpec(pub Vec<Factor>);

impl FactorSpec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factor(&self, idx: usize) -> Factor {
        self.0[idx]
    }

    /// Indices of the curve factors, the base directions of the families.
    pub fn curve_slots(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| matches!(self.0[i], Factor::Curve { .. }))
            .collect()
    }

    pub fn abelian_slots(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| matches!(self.0[i], Factor::Abelian { .. }))
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomError {
    #[error("classes live on different factor specifications")]
    SpecMismatch,
    #[error("factor {0} is not abelian")]
    NotAbelian(usize),
    #[error("factor {0} is not a curve")]
    NotCurve(usize),
    #[error("abelian dimension and curve genus differ")]
    DimensionMismatch,
    #[error("coproduct requires a single abelian factor")]
    NotSingleAbelian,
}

/// Basis element of the cohomology of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveElem {
    One,
    A(u8),
    B(u8),
    Pt,
}

impl CurveElem {
    fn degree(self) -> u32 {
        match self {
            CurveElem::One => 0,
            CurveElem::A(_) | CurveElem::B(_) => 1,
            CurveElem::Pt => 2,
        }
    }
}

/// `a_i b_j = delta_ij pt`, `b_j a_i = -delta_ij pt`, degree overflow dies.
fn curve_mul(x: CurveElem, y: CurveElem) -> Option<(CurveElem, i32)> {
    use CurveElem::*;
    match (x, y) {
        (One, z) | (z, One) => Some((z, 1)),
        (A(i), B(j)) if i == j => Some((Pt, 1)),
        (B(i), A(j)) if i == j => Some((Pt, -1)),
        _ => None,
    }
}

/// Exterior monomial as a bitmask: bit `2k` is `al_{k+1}`, bit `2k+1` is
/// `be_{k+1}`.
fn ext_mul(x: u32, y: u32) -> Option<(u32, i32)> {
    if x & y != 0 {
        return None;
    }
    // inversions: pairs (i in x, j in y) with i > j
    let mut inversions = 0u32;
    let mut yy = y;
    while yy != 0 {
        let j = yy.trailing_zeros();
        inversions += (x >> (j + 1)).count_ones();
        yy &= yy - 1;
    }
    Some((x | y, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// The content of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorElem {
    Curve(CurveElem),
    Ext(u32),
}

impl FactorElem {
    fn unit(factor: Factor) -> FactorElem {
        match factor {
            Factor::Curve { .. } => FactorElem::Curve(CurveElem::One),
            Factor::Abelian { .. } => FactorElem::Ext(0),
        }
    }

    fn degree(self) -> u32 {
        match self {
            FactorElem::Curve(c) => c.degree(),
            FactorElem::Ext(mask) => mask.count_ones(),
        }
    }

    fn is_top(self, factor: Factor) -> bool {
        match (self, factor) {
            (FactorElem::Curve(c), Factor::Curve { .. }) => c == CurveElem::Pt,
            (FactorElem::Ext(mask), Factor::Abelian { dim }) => {
                mask == (1u32 << (2 * dim)) - 1
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorMono(pub Vec<FactorElem>);

impl TensorMono {
    pub fn degrees(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.degree()).collect()
    }
}

fn curve_elem_label(c: CurveElem) -> String {
    match c {
        CurveElem::One => "1".to_string(),
        CurveElem::A(i) => format!("a{}", i),
        CurveElem::B(i) => format!("b{}", i),
        CurveElem::Pt => "pt".to_string(),
    }
}

fn ext_label(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros();
        let idx = bit / 2 + 1;
        parts.push(if bit % 2 == 0 {
            format!("al{}", idx)
        } else {
            format!("be{}", idx)
        });
        m &= m - 1;
    }
    parts.join("*")
}

impl fmt::Display for TensorMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| match e {
                FactorElem::Curve(c) => curve_elem_label(*c),
                FactorElem::Ext(mask) => ext_label(*mask),
            })
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// A class in the Künneth algebra: a sparse rational combination of tensor
/// monomials over a fixed factor specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomClass {
    spec: FactorSpec,
    terms: BTreeMap<TensorMono, BigRational>,
}

impl CohomClass {
    pub fn zero(spec: FactorSpec) -> Self {
        CohomClass {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(spec: FactorSpec) -> Self {
        let mono = TensorMono(spec.0.iter().map(|&f| FactorElem::unit(f)).collect());
        let mut c = CohomClass::zero(spec);
        c.add_term(mono, BigRational::one());
        c
    }

    /// A single generator placed on one factor, units elsewhere.
    pub fn gen_class(spec: &FactorSpec, factor: usize, elem: FactorElem) -> Self {
        let mut mono: Vec<FactorElem> =
            spec.0.iter().map(|&f| FactorElem::unit(f)).collect();
        mono[factor] = elem;
        let mut c = CohomClass::zero(spec.clone());
        c.add_term(TensorMono(mono), BigRational::one());
        c
    }

    pub fn alpha(spec: &FactorSpec, factor: usize, i: u8) -> Self {
        CohomClass::gen_class(spec, factor, FactorElem::Ext(1 << (2 * (i - 1))))
    }

    pub fn beta(spec: &FactorSpec, factor: usize, i: u8) -> Self {
        CohomClass::gen_class(spec, factor, FactorElem::Ext(1 << (2 * (i - 1) + 1)))
    }

    pub fn curve_a(spec: &FactorSpec, factor: usize, i: u8) -> Self {
        CohomClass::gen_class(spec, factor, FactorElem::Curve(CurveElem::A(i)))
    }

    pub fn curve_b(spec: &FactorSpec, factor: usize, i: u8) -> Self {
        CohomClass::gen_class(spec, factor, FactorElem::Curve(CurveElem::B(i)))
    }

    pub fn curve_pt(spec: &FactorSpec, factor: usize) -> Self {
        CohomClass::gen_class(spec, factor, FactorElem::Curve(CurveElem::Pt))
    }

    /// The point class of an abelian factor, `al_1 be_1 ... al_h be_h`.
    pub fn abelian_point(spec: &FactorSpec, factor: usize) -> Self {
        let Factor::Abelian { dim } = spec.factor(factor) else {
            panic!("factor {factor} is not abelian");
        };
        CohomClass::gen_class(spec, factor, FactorElem::Ext((1u32 << (2 * dim)) - 1))
    }

    /// The principal polarization `sum_i al_i be_i` on an abelian factor.
    pub fn theta(spec: &FactorSpec, factor: usize) -> Self {
        let Factor::Abelian { dim } = spec.factor(factor) else {
            panic!("factor {factor} is not abelian");
        };
        let mut c = CohomClass::zero(spec.clone());
        for k in 0..dim {
            let mask = (1u32 << (2 * k)) | (1u32 << (2 * k + 1));
            let mut mono: Vec<FactorElem> =
                spec.0.iter().map(|&f| FactorElem::unit(f)).collect();
            mono[factor] = FactorElem::Ext(mask);
            c.add_term(TensorMono(mono), BigRational::one());
        }
        c
    }

    pub fn spec(&self) -> &FactorSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMono, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: TensorMono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn add(&self, other: &CohomClass) -> CohomClass {
        assert_eq!(self.spec, other.spec, "spec mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CohomClass) -> CohomClass {
        assert_eq!(self.spec, other.spec, "spec mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> CohomClass {
        CohomClass {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> CohomClass {
        if r.is_zero() {
            return CohomClass::zero(self.spec.clone());
        }
        CohomClass {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// Cup product with Koszul signs; errors on mismatched specs.
    pub fn cup(&self, other: &CohomClass) -> Result<CohomClass, CohomError> {
        if self.spec != other.spec {
            return Err(CohomError::SpecMismatch);
        }
        Ok(self.mul(other))
    }

    fn mul(&self, other: &CohomClass) -> CohomClass {
        assert_eq!(self.spec, other.spec, "spec mismatch in product");
        let n = self.spec.len();
        let mut out = CohomClass::zero(self.spec.clone());
        for (xm, xc) in &self.terms {
            for (ym, yc) in &other.terms {
                // Koszul sign: each y-factor crosses the x-factors after it
                let mut cross = 0u32;
                for k in 0..n {
                    let dy = ym.0[k].degree();
                    if dy % 2 == 1 {
                        for l in (k + 1)..n {
                            cross += xm.0[l].degree();
                        }
                    }
                }
                let mut sign = if cross % 2 == 0 { 1 } else { -1 };
                let mut mono = Vec::with_capacity(n);
                let mut dead = false;
                for k in 0..n {
                    let combined = match (xm.0[k], ym.0[k]) {
                        (FactorElem::Curve(a), FactorElem::Curve(b)) => {
                            curve_mul(a, b).map(|(e, s)| (FactorElem::Curve(e), s))
                        }
                        (FactorElem::Ext(a), FactorElem::Ext(b)) => {
                            ext_mul(a, b).map(|(e, s)| (FactorElem::Ext(e), s))
                        }
                        _ => unreachable!("factor content matches the spec"),
                    };
                    match combined {
                        Some((e, s)) => {
                            sign *= s;
                            mono.push(e);
                        }
                        None => {
                            dead = true;
                            break;
                        }
                    }
                }
                if dead {
                    continue;
                }
                let mut coeff = xc * yc;
                if sign < 0 {
                    coeff = -coeff;
                }
                out.add_term(TensorMono(mono), coeff);
            }
        }
        out
    }

    /// Pushforward to a point on one factor: extracts the top-degree
    /// coefficient and drops the factor. The top class is even, so no signs
    /// appear. Normalized so that the integral of the top class is 1.
    pub fn integrate(&self, factor: usize) -> CohomClass {
        let f = self.spec.factor(factor);
        let mut spec = self.spec.clone();
        spec.0.remove(factor);
        let mut out = CohomClass::zero(spec);
        for (m, c) in &self.terms {
            if m.0[factor].is_top(f) {
                let mut mono = m.0.clone();
                mono.remove(factor);
                out.add_term(TensorMono(mono), c.clone());
            }
        }
        out
    }

    /// Multiplies each term by `(-1)^(degree on the factor)`: the action of
    /// the inversion on an abelian factor.
    pub fn negation(&self, factor: usize) -> CohomClass {
        CohomClass {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.0[factor].degree() % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// The algebra homomorphism `al_i -> a_i`, `be_i -> b_i` identifying the
    /// degree-1 cohomology of an abelian factor with that of a curve of the
    /// same genus, extended multiplicatively and truncated at curve degree 2.
    /// The factor is retyped from abelian to curve in place.
    pub fn aj_transfer(&self, factor: usize) -> Result<CohomClass, CohomError> {
        let Factor::Abelian { dim } = self.spec.factor(factor) else {
            return Err(CohomError::NotAbelian(factor));
        };
        let mut spec = self.spec.clone();
        spec.0[factor] = Factor::Curve { genus: dim };
        let mut out = CohomClass::zero(spec);
        for (m, c) in &self.terms {
            let FactorElem::Ext(mask) = m.0[factor] else {
                unreachable!("factor content matches the spec")
            };
            let Some((elem, sign)) = ext_mask_to_curve(mask) else {
                continue;
            };
            let mut mono = m.0.clone();
            mono[factor] = FactorElem::Curve(elem);
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(TensorMono(mono), coeff);
        }
        Ok(out)
    }

    /// Restriction to terms with the given per-factor degrees.
    pub fn kunneth_component(&self, degrees: &[u32]) -> CohomClass {
        assert_eq!(degrees.len(), self.spec.len());
        CohomClass {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degrees() == degrees)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The multidegrees occurring in this class, sorted.
    pub fn multidegrees(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.terms.keys().map(|m| m.degrees()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Restriction to terms whose total degree on the curve factors is `d`.
    pub fn base_degree_component(&self, d: u32) -> CohomClass {
        let slots = self.spec.curve_slots();
        CohomClass {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    slots.iter().map(|&k| m.0[k].degree()).sum::<u32>() == d
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Embeds a class into a larger specification: factor `k` of `self` goes
    /// to slot `slots[k]` (strictly increasing, matching factor types), every
    /// other slot carries the unit. No signs: units are interleaved.
    pub fn promote(&self, big: &FactorSpec, slots: &[usize]) -> CohomClass {
        assert_eq!(slots.len(), self.spec.len());
        assert!(slots.windows(2).all(|w| w[0] < w[1]), "slots must increase");
        for (k, &s) in slots.iter().enumerate() {
            assert_eq!(self.spec.factor(k), big.factor(s), "factor type mismatch");
        }
        let mut out = CohomClass::zero(big.clone());
        for (m, c) in &self.terms {
            let mut mono: Vec<FactorElem> =
                big.0.iter().map(|&f| FactorElem::unit(f)).collect();
            for (k, &s) in slots.iter().enumerate() {
                mono[s] = m.0[k];
            }
            out.add_term(TensorMono(mono), c.clone());
        }
        out
    }

    /// Fourier transform on the given abelian factors: duplicates each fiber
    /// factor, multiplies by the exponential of the first Chern class of the
    /// Poincaré bundle `sum_i (al_i x be_i' - be_i x al_i')`, and integrates
    /// out the source copy. Maps fiber degree `a` to `2 dim - a`.
    pub fn fourier(&self, fibers: &[usize]) -> Result<CohomClass, CohomError> {
        let mut out = self.clone();
        for &f in fibers {
            out = out.fourier_single(f)?;
        }
        Ok(out)
    }

    fn fourier_single(&self, factor: usize) -> Result<CohomClass, CohomError> {
        let Factor::Abelian { dim } = self.spec.factor(factor) else {
            return Err(CohomError::NotAbelian(factor));
        };
        // extended spec with the hat copy right after the source
        let mut ext_spec = self.spec.clone();
        ext_spec.0.insert(factor + 1, Factor::Abelian { dim });

        let mut lifted = CohomClass::zero(ext_spec.clone());
        for (m, c) in &self.terms {
            let mut mono = m.0.clone();
            mono.insert(factor + 1, FactorElem::Ext(0));
            lifted.add_term(TensorMono(mono), c.clone());
        }

        // c1 of the Poincaré bundle on (source, hat)
        let mut poincare = CohomClass::zero(ext_spec.clone());
        for k in 0..dim {
            let al = 1u32 << (2 * k);
            let be = 1u32 << (2 * k + 1);
            let mut plus: Vec<FactorElem> =
                ext_spec.0.iter().map(|&f| FactorElem::unit(f)).collect();
            plus[factor] = FactorElem::Ext(al);
            plus[factor + 1] = FactorElem::Ext(be);
            poincare.add_term(TensorMono(plus), BigRational::one());
            let mut minus: Vec<FactorElem> =
                ext_spec.0.iter().map(|&f| FactorElem::unit(f)).collect();
            minus[factor] = FactorElem::Ext(be);
            minus[factor + 1] = FactorElem::Ext(al);
            poincare.add_term(TensorMono(minus), -BigRational::one());
        }

        // exp of a nilpotent even class
        let mut kernel = CohomClass::unit(ext_spec.clone());
        let mut power = CohomClass::unit(ext_spec);
        let mut factorial = BigRational::one();
        for k in 1..=(4 * dim as u64) {
            power = power.mul(&poincare);
            if power.is_zero() {
                break;
            }
            factorial *= BigRational::from_integer(BigInt::from(k));
            kernel = kernel.add(&power.scale(&(BigRational::one() / &factorial)));
        }

        Ok(lifted.mul(&kernel).integrate(factor))
    }

    /// Basis-coordinate rendering, `coeff * mono` per line.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({}) {}", rational_to_string(c), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON map from tensor-monomial strings to rational strings.
    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .terms
            .iter()
            .map(|(m, c)| (m.to_string(), Value::String(rational_to_string(c))))
            .collect();
        Value::Object(map)
    }
}

/// Maps an exterior monomial through `al_i -> a_i`, `be_i -> b_i` into the
/// truncated curve cohomology, multiplying left to right.
fn ext_mask_to_curve(mask: u32) -> Option<(CurveElem, i32)> {
    let mut acc = CurveElem::One;
    let mut sign = 1;
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros();
        let idx = (bit / 2 + 1) as u8;
        let gen = if bit % 2 == 0 {
            CurveElem::A(idx)
        } else {
            CurveElem::B(idx)
        };
        let (next, s) = curve_mul(acc, gen)?;
        acc = next;
        sign *= s;
        m &= m - 1;
    }
    Some((acc, sign))
}

/// Coproduct: the pullback along the group addition, an algebra homomorphism
/// determined by `al_i -> al_i x 1 + 1 x al_i` (and likewise `be_i`).
/// Requires a single abelian factor.
pub fn coproduct(x: &CohomClass) -> Result<CohomClass, CohomError> {
    let [Factor::Abelian { dim }] = x.spec().0[..] else {
        return Err(CohomError::NotSingleAbelian);
    };
    let double = FactorSpec(vec![
        Factor::Abelian { dim },
        Factor::Abelian { dim },
    ]);
    let mut out = CohomClass::zero(double.clone());
    for (m, c) in x.terms() {
        let FactorElem::Ext(mask) = m.0[0] else {
            unreachable!("factor content matches the spec")
        };
        let mut acc = CohomClass::unit(double.clone()).scale(c);
        let mut mm = mask;
        while mm != 0 {
            let bit = mm.trailing_zeros();
            let mut split = CohomClass::zero(double.clone());
            split.add_term(
                TensorMono(vec![FactorElem::Ext(1 << bit), FactorElem::Ext(0)]),
                BigRational::one(),
            );
            split.add_term(
                TensorMono(vec![FactorElem::Ext(0), FactorElem::Ext(1 << bit)]),
                BigRational::one(),
            );
            acc = acc.mul(&split);
            mm &= mm - 1;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// All basis elements of a single factor, in a fixed order.
pub fn factor_basis(factor: Factor) -> Vec<FactorElem> {
    match factor {
        Factor::Curve { genus } => {
            let mut out = vec![FactorElem::Curve(CurveElem::One)];
            for i in 1..=genus {
                out.push(FactorElem::Curve(CurveElem::A(i)));
            }
            for i in 1..=genus {
                out.push(FactorElem::Curve(CurveElem::B(i)));
            }
            out.push(FactorElem::Curve(CurveElem::Pt));
            out
        }
        Factor::Abelian { dim } => (0..(1u32 << (2 * dim)))
            .map(FactorElem::Ext)
            .collect(),
    }
}

/// The Poincaré pairing matrix `<x, y> = integral of x cup y` on the basis
/// of a single factor.
pub fn pairing_matrix(factor: Factor) -> Vec<Vec<BigRational>> {
    let spec = FactorSpec(vec![factor]);
    let basis = factor_basis(factor);
    basis
        .iter()
        .map(|&x| {
            basis
                .iter()
                .map(|&y| {
                    let cx = CohomClass::gen_class(&spec, 0, x);
                    let cy = CohomClass::gen_class(&spec, 0, y);
                    let prod = cx.mul(&cy).integrate(0);
                    let value = prod
                        .terms()
                        .next()
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(BigRational::zero);
                    value
                })
                .collect()
        })
        .collect()
}

/// Configuration of the test families: two genus-2 components, optionally a
/// constant curve attached through fixed points to raise the total genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyConfig {
    pub constant_curve_genus: Option<u8>,
}

impl FamilyConfig {
    pub fn genus(&self) -> u32 {
        4 + self.constant_curve_genus.unwrap_or(0) as u32
    }

    pub fn for_total_genus(genus: u32) -> Option<FamilyConfig> {
        match genus {
            4 => Some(FamilyConfig {
                constant_curve_genus: None,
            }),
            g if g > 4 && g <= 8 => Some(FamilyConfig {
                constant_curve_genus: Some((g - 4) as u8),
            }),
            _ => None,
        }
    }
}

/// The two families of stable curves over the product of two genus-2 curves:
/// the first joins a moving point of each component (marked point fixed on
/// the second), the second joins a moving point of the first component to a
/// fixed point of the second (moving marked point). Holds the cycle classes
/// of both embedded families inside the constant abelian scheme, sorted as
/// (J1, C1, J2, C2) with any constant abelian factor appended.
pub struct TestFamilies {
    spec: FactorSpec,
    theta: CohomClass,
    cl_family: CohomClass,
    cl_family_primed: CohomClass,
    abelian_slots: Vec<usize>,
    pub config: FamilyConfig,
}

impl TestFamilies {
    pub fn new(config: FamilyConfig) -> TestFamilies {
        let mut factors = vec![
            Factor::Abelian { dim: 2 },
            Factor::Curve { genus: 2 },
            Factor::Abelian { dim: 2 },
            Factor::Curve { genus: 2 },
        ];
        if let Some(h0) = config.constant_curve_genus {
            factors.push(Factor::Abelian { dim: h0 });
        }
        let spec = FactorSpec(factors);

        let pair = FactorSpec(vec![Factor::Abelian { dim: 2 }, Factor::Curve { genus: 2 }]);
        let single = FactorSpec(vec![Factor::Abelian { dim: 2 }]);

        // psi3 : (z, x) -> (O(z - x), x); its image is the preimage of the
        // embedded curve under (v, x) -> v + i(x), so its class is the
        // coproduct of theta transferred to the curve on the second leg
        let theta_single = CohomClass::theta(&single, 0);
        let psi3 = coproduct(&theta_single)
            .expect("single abelian factor")
            .aj_transfer(1)
            .expect("second leg is abelian");
        debug_assert_eq!(psi3.spec(), &pair);

        // psi4 : y -> (O(y - c), y) is the graph of the embedding; its image
        // is the vanishing locus of (u, y) -> u - i(y), the coproduct of the
        // point class with the second leg negated then transferred
        let point_single = CohomClass::abelian_point(&single, 0);
        let psi4 = coproduct(&point_single)
            .expect("single abelian factor")
            .negation(1)
            .aj_transfer(1)
            .expect("second leg is abelian");

        // psi2' : (w, x, y) -> (0, O(w - y), x, y); on (J2, C2) this is the
        // same difference construction as psi3
        let psi2p_pair = coproduct(&theta_single)
            .expect("single abelian factor")
            .aj_transfer(1)
            .expect("second leg is abelian");

        // assemble on the full specification
        let cl_psi1 = psi3
            .promote(&spec, &[0, 1])
            .mul(&psi4.promote(&spec, &[2, 3]));
        let cl_psi2 = CohomClass::abelian_point(&spec, 0).mul(&CohomClass::theta(&spec, 2));
        let cl_psi1_primed = cl_psi1.negation(2);
        let cl_psi2_primed =
            CohomClass::abelian_point(&spec, 0).mul(&psi2p_pair.promote(&spec, &[2, 3]));

        let (cl_family, cl_family_primed) = if let Some(h0) = config.constant_curve_genus {
            // the old components sit over the fixed point of the constant
            // Jacobian factor; the constant component contributes the class
            // of the embedded constant curve under both zero sections
            let extra = spec.len() - 1;
            let pt0 = CohomClass::abelian_point(&spec, extra);
            let curve0 = embedded_curve_class(&spec, extra, h0);
            let psi0 = CohomClass::abelian_point(&spec, 0)
                .mul(&CohomClass::abelian_point(&spec, 2))
                .mul(&curve0);
            (
                cl_psi1.add(&cl_psi2).mul(&pt0).add(&psi0),
                cl_psi1_primed.add(&cl_psi2_primed).mul(&pt0).add(&psi0),
            )
        } else {
            (
                cl_psi1.add(&cl_psi2),
                cl_psi1_primed.add(&cl_psi2_primed),
            )
        };

        let mut theta = CohomClass::theta(&spec, 0).add(&CohomClass::theta(&spec, 2));
        if config.constant_curve_genus.is_some() {
            let extra = spec.len() - 1;
            theta = theta.add(&CohomClass::theta(&spec, extra));
        }

        let abelian_slots = spec.abelian_slots();
        TestFamilies {
            spec,
            theta,
            cl_family,
            cl_family_primed,
            abelian_slots,
            config,
        }
    }

    pub fn spec(&self) -> &FactorSpec {
        &self.spec
    }

    pub fn family_class(&self, primed: bool) -> &CohomClass {
        if primed {
            &self.cl_family_primed
        } else {
            &self.cl_family
        }
    }

    /// `q_i` of a family: the total-base-degree-`i` component of the family
    /// class, cupped with theta, pushed through the fiberwise Fourier
    /// transform.
    pub fn q_bar(&self, i: u32, primed: bool) -> CohomClass {
        assert!((1..=2).contains(&i), "only q_1 and q_2 are needed");
        let graded = self.family_class(primed).base_degree_component(i);
        let cut = graded.mul(&self.theta);
        cut.fourier(&self.abelian_slots)
            .expect("fiber factors are abelian")
    }

    /// The Künneth index `[a1, b1, a2, b2]` padded with zeros on any
    /// constant factors.
    fn index(&self, base: [u32; 4]) -> Vec<u32> {
        let mut idx: Vec<u32> = base.to_vec();
        idx.resize(self.spec.len(), 0);
        idx
    }

    /// The key Künneth components of the two families.
    pub fn h_classes(&self) -> HClasses {
        let q2 = self.q_bar(2, false);
        let q2_primed = self.q_bar(2, true);
        let q1 = self.q_bar(1, false);
        let q1_primed = self.q_bar(1, true);
        let idx1111 = self.index([1, 1, 1, 1]);
        let idx0011 = self.index([0, 0, 1, 1]);
        let idx1100 = self.index([1, 1, 0, 0]);
        let h1 = q2.kunneth_component(&idx1111);
        let h2 = q1.kunneth_component(&idx0011);
        let h3 = q1.kunneth_component(&idx1100);
        let h4 = q1_primed.kunneth_component(&idx0011).add(&h2);
        HClasses {
            q2,
            q2_primed,
            q1,
            q1_primed,
            h1,
            h2,
            h3,
            h4,
        }
    }

    /// Verifies the four component identities and the three nonvanishing
    /// statements of the degeneration computation.
    pub fn prop_calcul_check(&self) -> PropCalculReport {
        let h = self.h_classes();
        let idx1111 = self.index([1, 1, 1, 1]);
        let h2h3 = h.h2.mul(&h.h3);
        let h3h4 = h.h3.mul(&h.h4);
        let two = BigRational::from_integer(BigInt::from(2));

        let mut identities = Vec::new();
        let mut check = |name: &str, lhs: &CohomClass, rhs: &CohomClass| {
            let pass = lhs == rhs;
            identities.push(IdentityCheck {
                name: name.to_string(),
                pass,
                lhs: lhs.describe(),
                rhs: rhs.describe(),
            });
        };
        check(
            "cl(q2)^[1,1,1,1] = h1",
            &h.q2.kunneth_component(&idx1111),
            &h.h1,
        );
        check(
            "cl(q2')^[1,1,1,1] = -h1",
            &h.q2_primed.kunneth_component(&idx1111),
            &h.h1.neg(),
        );
        check(
            "cl(q1^2)^[1,1,1,1] = 2 h2.h3",
            &h.q1.mul(&h.q1).kunneth_component(&idx1111),
            &h2h3.scale(&two),
        );
        check(
            "cl(q1'^2)^[1,1,1,1] = -2 h2.h3 + 2 h3.h4",
            &h.q1_primed.mul(&h.q1_primed).kunneth_component(&idx1111),
            &h2h3.scale(&two).neg().add(&h3h4.scale(&two)),
        );

        let nonvanishing = vec![
            NonzeroCheck {
                name: "h1 != 0".to_string(),
                pass: !h.h1.is_zero(),
                witness: h.h1.describe(),
            },
            NonzeroCheck {
                name: "h2.h3 != 0".to_string(),
                pass: !h2h3.is_zero(),
                witness: h2h3.describe(),
            },
            NonzeroCheck {
                name: "h3.h4 != 0".to_string(),
                pass: !h3h4.is_zero(),
                witness: h3h4.describe(),
            },
        ];

        let pass = identities.iter().all(|c| c.pass) && nonvanishing.iter().all(|c| c.pass);
        PropCalculReport {
            h,
            identities,
            nonvanishing,
            pass,
        }
    }

    /// Exact rank computation of the joint kernel: the pairs `(r, s)` for
    /// which both families' components of `r q1^2 + s q2` vanish. The
    /// argument succeeds exactly when the kernel is trivial.
    pub fn kernel_test(&self, prop: &PropCalculReport) -> KernelReport {
        let idx1111 = self.index([1, 1, 1, 1]);
        let h = &prop.h;
        let two = BigRational::from_integer(BigInt::from(2));
        // v1(r, s) = r * 2 h2.h3 + s * h1
        let v1_r = h.h2.mul(&h.h3).scale(&two);
        let v1_s = h.h1.clone();
        // v2(r, s) = r * (-2 h2.h3 + 2 h3.h4) + s * (-h1)
        let v2_r = h
            .h2
            .mul(&h.h3)
            .scale(&two)
            .neg()
            .add(&h.h3.mul(&h.h4).scale(&two));
        let v2_s = h.h1.neg();

        let mut rows = Vec::new();
        for (r_part, s_part) in [(&v1_r, &v1_s), (&v2_r, &v2_s)] {
            let mut monos: Vec<TensorMono> = r_part
                .terms()
                .map(|(m, _)| m.clone())
                .chain(s_part.terms().map(|(m, _)| m.clone()))
                .collect();
            monos.sort();
            monos.dedup();
            for m in monos {
                let cr = r_part
                    .terms
                    .get(&m)
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                let cs = s_part
                    .terms
                    .get(&m)
                    .cloned()
                    .unwrap_or_else(BigRational::zero);
                rows.push(vec![cr, cs]);
            }
        }
        let kernel = nullspace(&rows, 2);

        // the target combination: r = 1, s = -(2g - 2)
        let g = self.config.genus() as i64;
        let s_w = BigRational::from_integer(BigInt::from(-(2 * g - 2)));
        let v1_w = v1_r.add(&v1_s.scale(&s_w));
        let v2_w = v2_r.add(&v2_s.scale(&s_w));
        let w_witness = !v1_w.is_zero() || !v2_w.is_zero();

        // sanity on the zero combination
        let _ = idx1111;
        KernelReport {
            kernel_basis: kernel
                .iter()
                .map(|v| (rational_to_string(&v[0]), rational_to_string(&v[1])))
                .collect(),
            trivial: kernel.is_empty(),
            w_witness,
            pass: kernel.is_empty() && w_witness,
        }
    }
}

/// The class of the embedded constant curve inside its own Jacobian factor:
/// `theta^(h-1) / (h-1)!`.
fn embedded_curve_class(spec: &FactorSpec, factor: usize, h0: u8) -> CohomClass {
    let mut acc = CohomClass::unit(spec.clone());
    let theta = CohomClass::theta(spec, factor);
    let mut factorial = BigRational::one();
    for k in 1..h0 as u64 {
        acc = acc.mul(&theta);
        factorial *= BigRational::from_integer(BigInt::from(k));
    }
    acc.scale(&(BigRational::one() / factorial))
}

pub struct HClasses {
    pub q2: CohomClass,
    pub q2_primed: CohomClass,
    pub q1: CohomClass,
    pub q1_primed: CohomClass,
    pub h1: CohomClass,
    pub h2: CohomClass,
    pub h3: CohomClass,
    pub h4: CohomClass,
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct NonzeroCheck {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

pub struct PropCalculReport {
    pub h: HClasses,
    pub identities: Vec<IdentityCheck>,
    pub nonvanishing: Vec<NonzeroCheck>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub kernel_basis: Vec<(String, String)>,
    pub trivial: bool,
    pub w_witness: bool,
    pub pass: bool,
}

impl PropCalculReport {
    pub fn to_json(&self) -> Value {
        json!({
            "identities": self.identities.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "lhs": c.lhs,
                "rhs": c.rhs,
            })).collect::<Vec<_>>(),
            "nonvanishing": self.nonvanishing.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

impl KernelReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kernel_basis": self.kernel_basis.iter().map(|(r, s)| json!([r, s])).collect::<Vec<_>>(),
            "trivial": self.trivial,
            "w_combination_nonzero": self.w_witness,
            "pass": self.pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> FactorSpec {
        FactorSpec(vec![Factor::Abelian { dim: 2 }])
    }

    fn a1() -> FactorSpec {
        FactorSpec(vec![Factor::Abelian { dim: 1 }])
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn theta_squared_is_twice_point() {
        let spec = a2();
        let theta = CohomClass::theta(&spec, 0);
        let sq = theta.cup(&theta).unwrap();
        let expected = CohomClass::abelian_point(&spec, 0).scale(&rat(2));
        assert_eq!(sq, expected);
        // integral of theta^2 / 2 is 1
        let int = sq
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(2)))
            .integrate(0);
        assert_eq!(int, CohomClass::unit(FactorSpec(vec![])));
    }

    #[test]
    fn odd_squares_vanish() {
        let spec = FactorSpec(vec![Factor::Curve { genus: 2 }]);
        let a1c = CohomClass::curve_a(&spec, 0, 1);
        assert!(a1c.cup(&a1c).unwrap().is_zero());
        let spec = a2();
        let al = CohomClass::alpha(&spec, 0, 1);
        assert!(al.cup(&al).unwrap().is_zero());
    }

    #[test]
    fn koszul_cross_sign() {
        // (x (x) 1)(1 (x) y) = -(1 (x) y)(x (x) 1) for odd x, y
        let spec = FactorSpec(vec![
            Factor::Abelian { dim: 1 },
            Factor::Abelian { dim: 1 },
        ]);
        let x = CohomClass::alpha(&spec, 0, 1);
        let y = CohomClass::beta(&spec, 1, 1);
        let xy = x.cup(&y).unwrap();
        let yx = y.cup(&x).unwrap();
        assert_eq!(xy, yx.neg());
        assert!(!xy.is_zero());
    }

    #[test]
    fn graded_commutativity_exhaustive() {
        for factor in [
            Factor::Abelian { dim: 1 },
            Factor::Curve { genus: 2 },
        ] {
            let spec = FactorSpec(vec![factor, Factor::Abelian { dim: 1 }]);
            let mut basis_classes = Vec::new();
            for e0 in factor_basis(factor) {
                for e1 in factor_basis(Factor::Abelian { dim: 1 }) {
                    let mut c = CohomClass::zero(spec.clone());
                    c.add_term(TensorMono(vec![e0, e1]), BigRational::one());
                    basis_classes.push(c);
                }
            }
            for x in &basis_classes {
                let dx: u32 = x.terms().next().unwrap().0.degrees().iter().sum();
                for y in &basis_classes {
                    let dy: u32 = y.terms().next().unwrap().0.degrees().iter().sum();
                    let xy = x.cup(y).unwrap();
                    let yx = y.cup(x).unwrap();
                    let expected = if (dx * dy) % 2 == 1 { yx.neg() } else { yx };
                    assert_eq!(xy, expected);
                }
            }
        }
    }

    #[test]
    fn cup_spec_mismatch_errors() {
        let x = CohomClass::unit(a2());
        let y = CohomClass::unit(a1());
        assert_eq!(x.cup(&y).unwrap_err(), CohomError::SpecMismatch);
    }

    #[test]
    fn integrate_examples() {
        let spec = FactorSpec(vec![Factor::Curve { genus: 2 }]);
        // integral of 1 over the curve is 0
        assert!(CohomClass::unit(spec.clone()).integrate(0).is_zero());
        // integral of a1 b1 is 1
        let ab = CohomClass::curve_a(&spec, 0, 1)
            .cup(&CohomClass::curve_b(&spec, 0, 1))
            .unwrap();
        assert_eq!(ab.integrate(0), CohomClass::unit(FactorSpec(vec![])));
    }

    #[test]
    fn coproduct_of_theta() {
        let spec = a2();
        let theta = CohomClass::theta(&spec, 0);
        let cop = coproduct(&theta).unwrap();
        // theta (x) 1 + 1 (x) theta + sum_i (al_i (x) be_i - be_i (x) al_i)
        let double = FactorSpec(vec![
            Factor::Abelian { dim: 2 },
            Factor::Abelian { dim: 2 },
        ]);
        let mut expected = CohomClass::theta(&double, 0).add(&CohomClass::theta(&double, 1));
        for i in 1..=2 {
            expected = expected
                .add(
                    &CohomClass::alpha(&double, 0, i)
                        .cup(&CohomClass::beta(&double, 1, i))
                        .unwrap(),
                )
                .sub(
                    &CohomClass::beta(&double, 0, i)
                        .cup(&CohomClass::alpha(&double, 1, i))
                        .unwrap(),
                );
        }
        assert_eq!(cop, expected);

        // units and single generators
        let unit = CohomClass::unit(spec.clone());
        assert_eq!(coproduct(&unit).unwrap(), CohomClass::unit(double.clone()));
        let al = CohomClass::alpha(&spec, 0, 1);
        let expected = CohomClass::alpha(&double, 0, 1).add(&CohomClass::alpha(&double, 1, 1));
        assert_eq!(coproduct(&al).unwrap(), expected);
    }

    #[test]
    fn negation_examples() {
        let spec = a2();
        let al = CohomClass::alpha(&spec, 0, 1);
        assert_eq!(al.negation(0), al.neg());
        let theta = CohomClass::theta(&spec, 0);
        assert_eq!(theta.negation(0), theta);
        let albe2 = CohomClass::alpha(&spec, 0, 1)
            .cup(&CohomClass::beta(&spec, 0, 2))
            .unwrap();
        assert_eq!(albe2.negation(0), albe2);
    }

    #[test]
    fn aj_transfer_examples() {
        let spec = a2();
        let curve_spec = FactorSpec(vec![Factor::Curve { genus: 2 }]);
        let al = CohomClass::alpha(&spec, 0, 1);
        assert_eq!(
            al.aj_transfer(0).unwrap(),
            CohomClass::curve_a(&curve_spec, 0, 1)
        );
        // al1 be1 -> a1 b1 = pt
        let albe = CohomClass::alpha(&spec, 0, 1)
            .cup(&CohomClass::beta(&spec, 0, 1))
            .unwrap();
        assert_eq!(
            albe.aj_transfer(0).unwrap(),
            CohomClass::curve_pt(&curve_spec, 0)
        );
        // al1 al2 -> a1 a2 = 0
        let alal = CohomClass::alpha(&spec, 0, 1)
            .cup(&CohomClass::alpha(&spec, 0, 2))
            .unwrap();
        assert!(alal.aj_transfer(0).unwrap().is_zero());
        assert_eq!(
            CohomClass::unit(a2()).aj_transfer(0).unwrap(),
            CohomClass::unit(curve_spec)
        );
    }

    #[test]
    fn fourier_involution() {
        for dim in [1u8, 2] {
            let spec = FactorSpec(vec![Factor::Abelian { dim }]);
            let sign = if dim % 2 == 1 {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            for elem in factor_basis(Factor::Abelian { dim }) {
                let x = CohomClass::gen_class(&spec, 0, elem);
                let ffx = x.fourier(&[0]).unwrap().fourier(&[0]).unwrap();
                let expected = x.negation(0).scale(&sign);
                assert_eq!(ffx, expected, "involution fails on {:?}", elem);
            }
        }
    }

    #[test]
    fn fourier_frozen_values() {
        // on the surface: the point class maps to the unit, exactly
        let spec = a2();
        let pt = CohomClass::abelian_point(&spec, 0);
        assert_eq!(pt.fourier(&[0]).unwrap(), CohomClass::unit(spec.clone()));
        // on the elliptic factor: the unit maps to minus the point
        let spec1 = a1();
        let unit = CohomClass::unit(spec1.clone());
        assert_eq!(
            unit.fourier(&[0]).unwrap(),
            CohomClass::abelian_point(&spec1, 0).neg()
        );
        // degree bookkeeping: fiber degree 3 lands in degree 1 for dim 2
        let spec2 = a2();
        let deg3 = CohomClass::gen_class(&spec2, 0, FactorElem::Ext(0b0111));
        let f = deg3.fourier(&[0]).unwrap();
        assert!(!f.is_zero());
        assert!(f.terms().all(|(m, _)| m.degrees() == vec![1]));
    }

    #[test]
    fn pairing_nondegenerate() {
        for factor in [
            Factor::Curve { genus: 2 },
            Factor::Abelian { dim: 1 },
            Factor::Abelian { dim: 2 },
        ] {
            let m = pairing_matrix(factor);
            let n = m.len();
            assert!(nullspace(&m, n).is_empty(), "degenerate pairing on {factor:?}");
        }
    }

    #[test]
    fn component_completeness() {
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: None,
        });
        let q1 = fam.q_bar(1, false);
        let mut back = CohomClass::zero(q1.spec().clone());
        for idx in q1.multidegrees() {
            back = back.add(&q1.kunneth_component(&idx));
        }
        assert_eq!(back, q1);
    }

    #[test]
    fn psi3_components() {
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: None,
        });
        let spec = fam.spec().clone();
        // rebuild psi3 on (J1, C1) and inspect its components
        let single = FactorSpec(vec![Factor::Abelian { dim: 2 }]);
        let psi3 = coproduct(&CohomClass::theta(&single, 0))
            .unwrap()
            .aj_transfer(1)
            .unwrap();
        // base-degree-0 part is theta (x) 1
        let pair = psi3.spec().clone();
        assert_eq!(
            psi3.kunneth_component(&[2, 0]),
            CohomClass::theta(&pair, 0)
        );
        // the [1,1] part is sum_i (al_i (x) b_i - be_i (x) a_i)
        let mut expected = CohomClass::zero(pair.clone());
        for i in 1..=2 {
            expected = expected
                .add(
                    &CohomClass::alpha(&pair, 0, i)
                        .cup(&CohomClass::curve_b(&pair, 1, i))
                        .unwrap(),
                )
                .sub(
                    &CohomClass::beta(&pair, 0, i)
                        .cup(&CohomClass::curve_a(&pair, 1, i))
                        .unwrap(),
                );
        }
        assert_eq!(psi3.kunneth_component(&[1, 1]), expected);

        // the zero-section part of the second embedding carries the point
        // class of J1: the full-J1-degree part of the family class is
        // exactly pt_J1 (x) theta_2
        let pt = CohomClass::abelian_point(&spec, 0);
        let theta2 = CohomClass::theta(&spec, 2);
        let psi2 = pt.cup(&theta2).unwrap();
        let mut full_j1 = CohomClass::zero(spec.clone());
        for (m, c) in fam.family_class(false).terms() {
            if m.0[0] == FactorElem::Ext(0b1111) {
                full_j1.add_term(m.clone(), c.clone());
            }
        }
        assert_eq!(full_j1, psi2);
    }

    #[test]
    fn q_bar_components_match() {
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: None,
        });
        let q2 = fam.q_bar(2, false);
        let q2p = fam.q_bar(2, true);
        let h1 = q2.kunneth_component(&[1, 1, 1, 1]);
        let h1p = q2p.kunneth_component(&[1, 1, 1, 1]);
        assert!(!h1.is_zero());
        assert_eq!(h1p, h1.neg());

        let q1 = fam.q_bar(1, false);
        assert!(!q1.kunneth_component(&[0, 0, 1, 1]).is_zero());
        assert!(!q1.kunneth_component(&[1, 1, 0, 0]).is_zero());
    }

    #[test]
    fn prop_calcul_and_kernel_genus4() {
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: None,
        });
        let prop = fam.prop_calcul_check();
        for c in &prop.identities {
            assert!(c.pass, "{} failed: lhs {} vs rhs {}", c.name, c.lhs, c.rhs);
        }
        for c in &prop.nonvanishing {
            assert!(c.pass, "{} failed", c.name);
        }
        let kernel = fam.kernel_test(&prop);
        assert!(kernel.trivial);
        assert!(kernel.w_witness);
        assert!(kernel.pass);
    }

    #[test]
    fn prop_calcul_and_kernel_genus5() {
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: Some(1),
        });
        let prop = fam.prop_calcul_check();
        assert!(prop.pass, "genus 5 identities fail");
        let kernel = fam.kernel_test(&prop);
        assert!(kernel.pass, "genus 5 kernel fails");
    }

    #[test]
    fn linearity_of_family_vectors() {
        // v1 + v2 = 2 r h3.h4 for the combination r q1^2 + s q2
        let fam = TestFamilies::new(FamilyConfig {
            constant_curve_genus: None,
        });
        let prop = fam.prop_calcul_check();
        let h = &prop.h;
        let two = rat(2);
        let h2h3 = h.h2.mul(&h.h3).scale(&two);
        let h3h4 = h.h3.mul(&h.h4).scale(&two);
        for (r, s) in [(1i64, 1i64), (3, -5), (0, 7), (2, 0)] {
            let (r, s) = (rat(r), rat(s));
            let v1 = h2h3.scale(&r).add(&h.h1.scale(&s));
            let v2 = h2h3.neg().add(&h3h4).scale(&r).add(&h.h1.neg().scale(&s));
            assert_eq!(v1.add(&v2), h3h4.scale(&r));
        }
    }
}

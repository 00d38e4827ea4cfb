//! Derived tautological relations for a fixed numeric genus.
//!
//! Seeds are the monomials whose codimension exceeds the genus (they vanish
//! for dimension reasons). The span is closed under the lowering operator and
//! under multiplication by generators, within a codimension bound, with exact
//! rational row reduction per bidegree. Membership of a target element is
//! decided against the closed span and returns a re-checkable certificate.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::{rational_to_string, GenusPoly};
use crate::linalg::{RowSpace, SparseRow};
use crate::tautring::{GenKind, TautElement, TautMonomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub codim: u32,
    pub index: u32,
}

impl Bidegree {
    pub fn new(codim: u32, index: u32) -> Self {
        Bidegree { codim, index }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.codim, self.index)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("codimension bound {bound} is below the genus {genus}")]
    BoundBelowGenus { genus: u32, bound: u32 },
    #[error("target is not homogeneous; membership is decided per bidegree")]
    NotHomogeneous,
    #[error("target has coefficients involving g; substitute the genus first")]
    CoefficientsNotNumeric,
    #[error("target bidegree {bidegree} exceeds the span bound {bound}")]
    BidegreeOutOfBound { bidegree: Bidegree, bound: u32 },
}

/// All monomials of the given bidegree, in the canonical monomial order.
pub fn enumerate_monomials(b: Bidegree) -> Vec<TautMonomial> {
    if b.index > b.codim {
        return Vec::new();
    }
    // the number of p-factors (with multiplicity) is codim - index
    let p_count = b.codim - b.index;
    let mut out = Vec::new();
    for p_weight in p_count..=b.codim {
        let q_weight = b.codim - p_weight;
        for p_part in partitions_exact(p_weight, p_count) {
            for q_part in partitions_any(q_weight) {
                let m = TautMonomial::from_exponents(
                    multiset_to_exponents(&p_part),
                    multiset_to_exponents(&q_part),
                )
                .expect("indices are >= 1");
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Multisets of positive integers of size `parts` summing to `total`,
/// each listed in weakly decreasing order.
fn partitions_exact(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // each remaining part is at least 1 and at most `max`
        let hi = max.min(total.saturating_sub(parts - 1));
        for next in (1..=hi).rev() {
            prefix.push(next);
            rec(total - next, parts - 1, next, prefix, out);
            prefix.pop();
        }
    }
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `total` (any number of parts).
fn partitions_any(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for parts in 0..=total {
        out.extend(partitions_exact(total, parts));
    }
    out
}

fn multiset_to_exponents(parts: &[u32]) -> Vec<(u32, u32)> {
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in parts {
        *map.entry(p).or_insert(0) += 1;
    }
    map.into_iter().collect()
}

/// All monomials with `genus < codim <= max_codim`, the dimension-vanishing
/// seeds, ordered by descending codimension then monomial order.
pub fn dimension_seeds(genus: u32, max_codim: u32) -> Vec<TautMonomial> {
    let mut out = Vec::new();
    for codim in (genus + 1)..=max_codim {
        for index in 0..=codim {
            out.extend(enumerate_monomials(Bidegree::new(codim, index)));
        }
    }
    out.sort_by(|a, b| b.codim().cmp(&a.codim()).then_with(|| a.cmp(b)));
    out
}

/// How a relation entered the span: as a seed monomial, as the lowering
/// operator applied to an earlier relation, or as a generator multiple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationOrigin {
    Seed(TautMonomial),
    DiffOp(usize),
    MulGen(GenKind, u32, usize),
}

/// One relation that enlarged the span, with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub element: TautElement,
    pub origin: RelationOrigin,
}

/// Per-bidegree row-reduced span of derived relations at a fixed genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpan {
    genus: u32,
    max_codim: u32,
    spans: BTreeMap<Bidegree, RowSpace<TautMonomial>>,
    derivations: Vec<Derivation>,
}

fn to_sparse(x: &TautElement) -> SparseRow<TautMonomial> {
    x.terms()
        .map(|(m, c)| {
            let r = c
                .as_rational()
                .expect("numeric coefficients after genus substitution");
            (m.clone(), r)
        })
        .collect()
}

fn from_sparse(row: &SparseRow<TautMonomial>) -> TautElement {
    TautElement::make(
        row.iter()
            .map(|(m, r)| (m.clone(), GenusPoly::from_rational(r.clone()))),
    )
}

impl RelationSpan {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn max_codim(&self) -> u32 {
        self.max_codim
    }

    pub fn dimension(&self, b: Bidegree) -> usize {
        self.spans.get(&b).map(|s| s.dim()).unwrap_or(0)
    }

    /// Row-reduced basis at a bidegree, as elements.
    pub fn basis(&self, b: Bidegree) -> Vec<TautElement> {
        self.spans
            .get(&b)
            .map(|s| s.rows().iter().map(from_sparse).collect())
            .unwrap_or_default()
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.spans.iter().filter(|(_, s)| s.dim() > 0).map(|(&b, _)| b)
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    /// Replays every derivation step and checks that each span row lies in
    /// the raw derived relations of its bidegree. This is the soundness
    /// certificate: every row is a rational combination of dimension seeds
    /// closed under the lowering operator and generator multiplication.
    pub fn replay_derivations(&self) -> bool {
        let g0 = BigRational::from_integer(BigInt::from(self.genus as i64));
        for (k, d) in self.derivations.iter().enumerate() {
            let ok = match &d.origin {
                RelationOrigin::Seed(m) => {
                    d.element == TautElement::monomial(m.clone())
                }
                RelationOrigin::DiffOp(j) => {
                    *j < k
                        && d.element
                            == self.derivations[*j]
                                .element
                                .op_d()
                                .substitute_genus(&g0)
                }
                RelationOrigin::MulGen(kind, i, j) => {
                    *j < k
                        && d.element
                            == TautElement::generator(*kind, *i).expect("i >= 1")
                                * self.derivations[*j].element.clone()
                }
            };
            if !ok {
                return false;
            }
        }
        // every reduced row is spanned by raw derivations of its bidegree
        for (&b, space) in &self.spans {
            let mut raw = RowSpace::new();
            for d in &self.derivations {
                if d.element.homogeneous_bidegree()
                    == Some((b.codim, b.index))
                {
                    raw.insert(to_sparse(&d.element));
                }
            }
            for row in space.rows() {
                if !raw.contains(row.clone()) {
                    return false;
                }
            }
        }
        true
    }

    /// JSON with monomial column labels and rational entries as strings.
    pub fn to_json(&self) -> Value {
        let mut bidegrees = Vec::new();
        for (&b, space) in &self.spans {
            if space.dim() == 0 {
                continue;
            }
            let columns = enumerate_monomials(b);
            let rows: Vec<Value> = space
                .rows()
                .iter()
                .map(|row| {
                    Value::Array(
                        columns
                            .iter()
                            .map(|m| {
                                let v = row
                                    .get(m)
                                    .cloned()
                                    .unwrap_or_else(BigRational::zero);
                                Value::String(rational_to_string(&v))
                            })
                            .collect(),
                    )
                })
                .collect();
            bidegrees.push(json!({
                "codim": b.codim,
                "index": b.index,
                "columns": columns.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "dimension": space.dim(),
                "rows": rows,
            }));
        }
        json!({
            "genus": self.genus,
            "max_codim": self.max_codim,
            "bidegrees": bidegrees,
        })
    }
}

/// Least fixed point, within `codim <= max_codim`, of the dimension seeds
/// together with lowering-operator images and generator multiples, after
/// substituting the numeric genus. Deterministic worklist order.
pub fn close_relations(genus: u32, max_codim: u32) -> Result<RelationSpan, RelationError> {
    if max_codim < genus {
        return Err(RelationError::BoundBelowGenus {
            genus,
            bound: max_codim,
        });
    }
    let g0 = BigRational::from_integer(BigInt::from(genus as i64));
    let mut span = RelationSpan {
        genus,
        max_codim,
        spans: BTreeMap::new(),
        derivations: Vec::new(),
    };
    let mut queue: VecDeque<(TautElement, RelationOrigin)> = dimension_seeds(genus, max_codim)
        .into_iter()
        .map(|m| {
            (
                TautElement::monomial(m.clone()),
                RelationOrigin::Seed(m),
            )
        })
        .collect();

    while let Some((elem, origin)) = queue.pop_front() {
        if elem.is_zero() {
            continue;
        }
        let (codim, index) = elem
            .homogeneous_bidegree()
            .expect("closure elements are homogeneous");
        let b = Bidegree::new(codim, index);
        let grew = span.spans.entry(b).or_default().insert(to_sparse(&elem));
        if !grew {
            continue;
        }
        let k = span.derivations.len();
        span.derivations.push(Derivation {
            element: elem.clone(),
            origin,
        });
        if codim >= 1 {
            let lowered = elem.op_d().substitute_genus(&g0);
            queue.push_back((lowered, RelationOrigin::DiffOp(k)));
        }
        // generator multiples are only informative at or below the genus:
        // every bidegree above it is already fully spanned by seeds
        for i in 1..=genus.saturating_sub(codim) {
            for kind in [GenKind::P, GenKind::Q] {
                let gen = TautElement::generator(kind, i).expect("i >= 1");
                queue.push_back((&gen * &elem, RelationOrigin::MulGen(kind, i, k)));
            }
        }
    }
    Ok(span)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictFlag {
    DerivedZero,
    NotDerived,
}

impl fmt::Display for VerdictFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictFlag::DerivedZero => write!(f, "DERIVED_ZERO"),
            VerdictFlag::NotDerived => write!(f, "NOT_DERIVED"),
        }
    }
}

/// Outcome of a membership test, with an exactly re-checkable certificate:
/// `target = sum coeff_i * basis_row_i + residual`, and the flag is
/// `DerivedZero` precisely when the residual vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub target: TautElement,
    pub bidegree: Bidegree,
    pub flag: VerdictFlag,
    pub combination: Vec<(usize, BigRational)>,
    pub residual: TautElement,
}

impl Verdict {
    /// Re-checks the certificate against the span it was produced from.
    pub fn verify(&self, span: &RelationSpan) -> bool {
        let basis = span.basis(self.bidegree);
        let mut acc = TautElement::zero();
        for (idx, c) in &self.combination {
            let Some(row) = basis.get(*idx) else {
                return false;
            };
            acc = &acc + &row.scale(&GenusPoly::from_rational(c.clone()));
        }
        acc = &acc + &self.residual;
        acc == self.target
            && (self.flag == VerdictFlag::DerivedZero) == self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target.to_string(),
            "bidegree": [self.bidegree.codim, self.bidegree.index],
            "flag": self.flag.to_string(),
            "combination": self
                .combination
                .iter()
                .map(|(i, c)| json!([i, rational_to_string(c)]))
                .collect::<Vec<_>>(),
            "residual": self.residual.to_string(),
        })
    }
}

/// Decides whether `x` reduces to zero against the span.
///
/// `x` must be homogeneous with numeric coefficients and lie within the
/// span's codimension bound; out-of-bound targets are an explicit error,
/// never a silent `NOT_DERIVED`.
pub fn membership(x: &TautElement, span: &RelationSpan) -> Result<Verdict, RelationError> {
    if x.is_zero() {
        return Ok(Verdict {
            target: x.clone(),
            bidegree: Bidegree::new(0, 0),
            flag: VerdictFlag::DerivedZero,
            combination: Vec::new(),
            residual: TautElement::zero(),
        });
    }
    let (codim, index) = x
        .homogeneous_bidegree()
        .ok_or(RelationError::NotHomogeneous)?;
    if x.terms().any(|(_, c)| c.as_rational().is_none()) {
        return Err(RelationError::CoefficientsNotNumeric);
    }
    let b = Bidegree::new(codim, index);
    if codim > span.max_codim {
        return Err(RelationError::BidegreeOutOfBound {
            bidegree: b,
            bound: span.max_codim,
        });
    }
    let empty = RowSpace::new();
    let space = span.spans.get(&b).unwrap_or(&empty);
    let (residual, combination) = space.reduce(to_sparse(x));
    let residual = from_sparse(&residual);
    let flag = if residual.is_zero() {
        VerdictFlag::DerivedZero
    } else {
        VerdictFlag::NotDerived
    };
    Ok(Verdict {
        target: x.clone(),
        bidegree: b,
        flag,
        combination,
        residual,
    })
}

/// Default bound: reaches bidegree (2,2) from every seed chain.
pub fn default_bound(genus: u32) -> u32 {
    genus + 4
}

/// Decides derivability of `W = 2(q1^2 - (2g-2) q2)` at the given genus.
pub fn check_w(genus: u32, max_codim: u32) -> Result<(Verdict, RelationSpan), RelationError> {
    let span = close_relations(genus, max_codim)?;
    let g0 = BigRational::from_integer(BigInt::from(genus as i64));
    let w = crate::tautring::w_class().substitute_genus(&g0);
    let verdict = membership(&w, &span)?;
    Ok((verdict, span))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: &[(u32, u32)], q: &[(u32, u32)]) -> TautMonomial {
        TautMonomial::from_exponents(p.iter().copied(), q.iter().copied()).unwrap()
    }

    /// Independent oracle: enumerate all exponent vectors with indices up to
    /// the codimension bound and filter by bidegree.
    fn enumerate_bruteforce(b: Bidegree) -> Vec<TautMonomial> {
        let n = b.codim as usize;
        let mut out = Vec::new();
        // exponent vector over p_1..p_n, q_1..q_n with entries 0..=codim
        let slots = 2 * n;
        let mut exps = vec![0u32; slots];
        loop {
            let p: Vec<(u32, u32)> = (0..n)
                .filter(|&i| exps[i] > 0)
                .map(|i| (i as u32 + 1, exps[i]))
                .collect();
            let q: Vec<(u32, u32)> = (0..n)
                .filter(|&i| exps[n + i] > 0)
                .map(|i| (i as u32 + 1, exps[n + i]))
                .collect();
            let m = TautMonomial::from_exponents(p, q).unwrap();
            if m.bidegree() == (b.codim, b.index) {
                out.push(m);
            }
            // odometer increment, pruning exponents beyond the codim bound
            let mut carry = true;
            for slot in exps.iter_mut() {
                if carry {
                    *slot += 1;
                    if *slot > b.codim {
                        *slot = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn enumerate_examples() {
        let b22 = enumerate_monomials(Bidegree::new(2, 2));
        assert_eq!(b22, vec![pm(&[], &[(1, 2)]), pm(&[], &[(2, 1)])]);
        assert_eq!(
            enumerate_monomials(Bidegree::new(1, 0)),
            vec![pm(&[(1, 1)], &[])]
        );
        assert!(enumerate_monomials(Bidegree::new(0, 1)).is_empty());
        assert_eq!(
            enumerate_monomials(Bidegree::new(0, 0)),
            vec![TautMonomial::unit()]
        );
    }

    #[test]
    fn enumerate_matches_bruteforce_oracle() {
        // the odometer oracle is exponential in the codimension; 4 is plenty
        for codim in 0..=4 {
            for index in 0..=codim {
                let b = Bidegree::new(codim, index);
                assert_eq!(
                    enumerate_monomials(b),
                    enumerate_bruteforce(b),
                    "bidegree {b}"
                );
            }
        }
    }

    #[test]
    fn seeds_examples() {
        let seeds = dimension_seeds(3, 4);
        assert!(seeds.contains(&pm(&[(2, 2)], &[])));
        assert!(seeds.iter().all(|m| m.codim() == 4));

        let seeds = dimension_seeds(2, 3);
        // the ten distinct codimension-3 monomials
        assert_eq!(seeds.len(), 10);
        for m in [
            pm(&[(3, 1)], &[]),
            pm(&[(2, 1), (1, 1)], &[]),
            pm(&[(1, 3)], &[]),
            pm(&[(2, 1)], &[(1, 1)]),
            pm(&[(1, 1)], &[(2, 1)]),
            pm(&[(1, 1)], &[(1, 2)]),
            pm(&[], &[(3, 1)]),
            pm(&[], &[(2, 1), (1, 1)]),
            pm(&[], &[(1, 3)]),
            pm(&[(1, 2)], &[(1, 1)]),
        ] {
            assert!(seeds.contains(&m), "missing {m}");
        }

        assert!(dimension_seeds(5, 5).is_empty());
    }

    #[test]
    fn genus2_span_at_22_is_full() {
        let span = close_relations(2, 5).unwrap();
        let b = Bidegree::new(2, 2);
        assert_eq!(span.dimension(b), 2);
        // both q2 and q1^2 are derived
        let q2 = TautElement::monomial(pm(&[], &[(2, 1)]));
        let q1sq = TautElement::monomial(pm(&[], &[(1, 2)]));
        assert_eq!(membership(&q2, &span).unwrap().flag, VerdictFlag::DerivedZero);
        assert_eq!(membership(&q1sq, &span).unwrap().flag, VerdictFlag::DerivedZero);
    }

    #[test]
    fn genus3_span_contains_w_relation() {
        let span = close_relations(3, 7).unwrap();
        let rel = crate::expr::parse_element("q1^2 - 4*q2").unwrap();
        let v = membership(&rel, &span).unwrap();
        assert_eq!(v.flag, VerdictFlag::DerivedZero);
        assert!(v.verify(&span));
    }

    #[test]
    fn genus4_span_at_22_is_zero() {
        let span = close_relations(4, 8).unwrap();
        assert_eq!(span.dimension(Bidegree::new(2, 2)), 0);
    }

    #[test]
    fn check_w_ladder() {
        let (v2, _) = check_w(2, 5).unwrap();
        assert_eq!(v2.flag, VerdictFlag::DerivedZero);
        let (v3, s3) = check_w(3, 7).unwrap();
        assert_eq!(v3.flag, VerdictFlag::DerivedZero);
        assert!(v3.verify(&s3));
        let (v4, s4) = check_w(4, 8).unwrap();
        assert_eq!(v4.flag, VerdictFlag::NotDerived);
        assert!(v4.verify(&s4));
        // residual of a NOT_DERIVED against the zero span is the target itself
        assert_eq!(v4.residual, v4.target);
    }

    #[test]
    fn membership_edge_cases() {
        let span = close_relations(2, 4).unwrap();
        // zero target is derived
        let v = membership(&TautElement::zero(), &span).unwrap();
        assert_eq!(v.flag, VerdictFlag::DerivedZero);
        // out-of-bound bidegree is an explicit error
        let big = TautElement::monomial(pm(&[(5, 1)], &[]));
        assert_eq!(
            membership(&big, &span).unwrap_err(),
            RelationError::BidegreeOutOfBound {
                bidegree: Bidegree::new(5, 4),
                bound: 4
            }
        );
        // inhomogeneous target is an error
        let mixed = crate::expr::parse_element("p1 + q2").unwrap();
        assert_eq!(
            membership(&mixed, &span).unwrap_err(),
            RelationError::NotHomogeneous
        );
        // symbolic coefficients are an error
        let symbolic = crate::expr::parse_element("g*q2").unwrap();
        assert_eq!(
            membership(&symbolic, &span).unwrap_err(),
            RelationError::CoefficientsNotNumeric
        );
        // bound below genus is an error
        assert_eq!(
            close_relations(4, 3).unwrap_err(),
            RelationError::BoundBelowGenus { genus: 4, bound: 3 }
        );
    }

    #[test]
    fn derivations_replay() {
        let span = close_relations(3, 7).unwrap();
        assert!(span.replay_derivations());
    }
}

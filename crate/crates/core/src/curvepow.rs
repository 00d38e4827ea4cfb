//! Intersection calculus of decorated diagonal classes on C, C^2 and C^3.
//!
//! A class is a `Q[g]`-combination of decorated set partitions: each block is
//! a diagonal, decorated by nothing, by the canonical divisor `K`, or by the
//! base point. Products join partitions; every extra identification among
//! already-joined blocks contributes one factor `-K` on the merged block
//! (the normal bundle of the diagonal is the tangent bundle), and any block
//! whose decoration degree reaches 2 kills the term, since a block is a curve.
//!
//! The module replays the pullback of the classes `q_i` along the sum map
//! `C x C -> J`, `(x, y) -> O(x + y - 2x_0)`, and compares the pullback of
//! `W = 2(q_1^2 - (2g-2) q_2)` with the cycle `Z = K x K - (2g-2) K_Delta`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::GenusPoly;

pub const MAX_POWER: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Unit,
    K,
    Pt,
}

impl Decoration {
    fn degree(self) -> u32 {
        match self {
            Decoration::Unit => 0,
            Decoration::K | Decoration::Pt => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Decoration::Unit => "1",
            Decoration::K => "K",
            Decoration::Pt => "x0",
        }
    }
}

/// A set partition of `{1..n}` with one decoration per block, in canonical
/// form: blocks sorted by least element, members ascending, and base-point
/// decorations only on singletons (the base point on a diagonal block is the
/// same cycle as the base point placed on every factor of the block, so such
/// blocks are split).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedPartition {
    n: u8,
    blocks: Vec<(Vec<u8>, Decoration)>,
}

impl DecoratedPartition {
    pub fn new(n: u8, blocks: Vec<(Vec<u8>, Decoration)>) -> Self {
        assert!(n >= 1 && n <= MAX_POWER, "only powers up to {MAX_POWER}");
        let mut canonical: Vec<(Vec<u8>, Decoration)> = Vec::new();
        let mut seen = vec![false; n as usize];
        for (mut members, dec) in blocks {
            members.sort_unstable();
            members.dedup();
            assert!(!members.is_empty(), "empty block");
            for &m in &members {
                assert!(m >= 1 && m <= n, "member {m} outside 1..={n}");
                assert!(!seen[(m - 1) as usize], "member {m} repeated");
                seen[(m - 1) as usize] = true;
            }
            if dec == Decoration::Pt && members.len() > 1 {
                for m in members {
                    canonical.push((vec![m], Decoration::Pt));
                }
            } else {
                canonical.push((members, dec));
            }
        }
        assert!(seen.iter().all(|&s| s), "blocks must cover 1..={n}");
        canonical.sort();
        DecoratedPartition {
            n,
            blocks: canonical,
        }
    }

    /// All singletons, undecorated: the fundamental class.
    pub fn full(n: u8) -> Self {
        DecoratedPartition::new(n, (1..=n).map(|i| (vec![i], Decoration::Unit)).collect())
    }

    /// One distinguished block, the rest singletons.
    pub fn with_block(n: u8, members: &[u8], dec: Decoration) -> Self {
        let mut blocks = vec![(members.to_vec(), dec)];
        for i in 1..=n {
            if !members.contains(&i) {
                blocks.push((vec![i], Decoration::Unit));
            }
        }
        DecoratedPartition::new(n, blocks)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn blocks(&self) -> &[(Vec<u8>, Decoration)] {
        &self.blocks
    }

    pub fn codim(&self) -> u32 {
        self.blocks
            .iter()
            .map(|(b, d)| (b.len() as u32 - 1) + d.degree())
            .sum()
    }
}

impl fmt::Display for DecoratedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(b, d)| {
                let members: Vec<String> = b.iter().map(|m| m.to_string()).collect();
                format!("{{{}}}:{}", members.join(","), d.label())
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A tautological class on `C^n`: a `Q[g]`-combination of decorated
/// partitions, all sharing the same `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    n: u8,
    terms: BTreeMap<DecoratedPartition, GenusPoly>,
}

impl CurveClass {
    pub fn zero(n: u8) -> Self {
        CurveClass {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(n: u8) -> Self {
        CurveClass::from_partition(DecoratedPartition::full(n))
    }

    pub fn from_partition(p: DecoratedPartition) -> Self {
        let n = p.n();
        let mut c = CurveClass::zero(n);
        c.add_term(p, GenusPoly::one());
        c
    }

    /// `pr_i^* K`.
    pub fn canonical_div(n: u8, factor: u8) -> Self {
        CurveClass::from_partition(DecoratedPartition::with_block(
            n,
            &[factor],
            Decoration::K,
        ))
    }

    /// `pr_i^* [x0]`.
    pub fn base_point(n: u8, factor: u8) -> Self {
        CurveClass::from_partition(DecoratedPartition::with_block(
            n,
            &[factor],
            Decoration::Pt,
        ))
    }

    /// The diagonal where the given factors agree.
    pub fn diagonal(n: u8, members: &[u8]) -> Self {
        CurveClass::from_partition(DecoratedPartition::with_block(
            n,
            members,
            Decoration::Unit,
        ))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedPartition, &GenusPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, p: DecoratedPartition, c: GenusPoly) {
        assert_eq!(p.n(), self.n, "partition lives on a different power");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
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

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CurveClass) -> CurveClass {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GenusPoly) -> CurveClass {
        let mut out = CurveClass::zero(self.n);
        for (p, k) in &self.terms {
            out.add_term(p.clone(), k * c);
        }
        out
    }

    /// Restriction to terms of the given codimension.
    pub fn codim_component(&self, codim: u32) -> CurveClass {
        CurveClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.codim() == codim)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn codims(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.terms.keys().map(|p| p.codim()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Intersection product. Bilinear; partitions join, repeated merges
    /// contribute `-K` factors, decoration overflow kills the term.
    pub fn product(&self, other: &CurveClass) -> CurveClass {
        assert_eq!(self.n, other.n, "classes live on different powers");
        let mut out = CurveClass::zero(self.n);
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                if let Some((joined, sign)) = join_partitions(self.n, p1, p2) {
                    let mut coeff = c1 * c2;
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.add_term(joined, coeff);
                }
            }
        }
        out
    }

    /// Pullback along the projection-type map `C^n -> C^m` whose `j`-th
    /// coordinate is the `coords[j-1]`-th coordinate of the source. The
    /// coordinates must be pairwise distinct (the map drops and permutes
    /// factors); such pullbacks are flat and the operation is a ring
    /// homomorphism.
    pub fn pullback(&self, coords: &[u8], n_target: u8) -> CurveClass {
        assert_eq!(coords.len(), self.n as usize, "one coordinate per factor");
        assert!(coords.iter().all(|&c| c >= 1 && c <= n_target));
        let mut sorted = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), coords.len(), "coordinates must be distinct");
        let mut out = CurveClass::zero(n_target);
        for (p, c) in &self.terms {
            let blocks: Vec<(Vec<u8>, Decoration)> = p
                .blocks()
                .iter()
                .map(|(members, dec)| {
                    let image: Vec<u8> =
                        members.iter().map(|&b| coords[(b - 1) as usize]).collect();
                    (image, *dec)
                })
                .chain(
                    (1..=n_target)
                        .filter(|f| !coords.contains(f))
                        .map(|f| (vec![f], Decoration::Unit)),
                )
                .collect();
            out.add_term(DecoratedPartition::new(n_target, blocks), c.clone());
        }
        out
    }

    /// Pushforward along the projection dropping one factor. A decorated
    /// singleton integrates (`K` to `2g-2`, the base point to `1`, the unit
    /// to `0`); a dropped index inside a larger block is simply removed, the
    /// diagonal mapping isomorphically onto its image.
    pub fn pushforward(&self, drop: u8) -> CurveClass {
        assert!(drop >= 1 && drop <= self.n);
        assert!(self.n >= 2, "pushforward to C^0 is not modeled");
        let relabel = |i: u8| if i > drop { i - 1 } else { i };
        let mut out = CurveClass::zero(self.n - 1);
        'terms: for (p, c) in &self.terms {
            let mut coeff = c.clone();
            let mut blocks = Vec::new();
            for (members, dec) in p.blocks() {
                if members.contains(&drop) {
                    if members.len() == 1 {
                        match dec {
                            Decoration::Unit => continue 'terms,
                            Decoration::K => coeff *= GenusPoly::linear(-2, 2),
                            Decoration::Pt => {}
                        }
                    } else {
                        let rest: Vec<u8> = members
                            .iter()
                            .filter(|&&m| m != drop)
                            .map(|&m| relabel(m))
                            .collect();
                        blocks.push((rest, *dec));
                    }
                } else {
                    blocks.push((members.iter().map(|&m| relabel(m)).collect(), *dec));
                }
            }
            out.add_term(DecoratedPartition::new(self.n - 1, blocks), coeff);
        }
        out
    }

    /// `sum_{k <= max_codim} d^k / k!` for a class of pure codimension 1.
    pub fn exp_truncated(&self, max_codim: u32) -> CurveClass {
        assert!(
            self.is_zero() || self.codims() == vec![1],
            "exponent must be homogeneous of codimension 1"
        );
        let mut out = CurveClass::unit(self.n);
        let mut power = CurveClass::unit(self.n);
        let mut factorial = BigRational::from_integer(BigInt::from(1));
        for k in 1..=max_codim {
            power = power.product(self);
            factorial *= BigRational::from_integer(BigInt::from(k as i64));
            let inv = BigRational::from_integer(BigInt::from(1)) / &factorial;
            out = out.add(&power.scale(&GenusPoly::from_rational(inv)));
        }
        out
    }

    /// Total degree of the codimension-`n` part: every block of a
    /// zero-dimensional partition carries a decoration, `K` contributing
    /// `2g-2` and the base point `1`.
    pub fn degree(&self) -> GenusPoly {
        let mut out = GenusPoly::zero();
        for (p, c) in &self.terms {
            if p.codim() != self.n as u32 {
                continue;
            }
            let mut d = c.clone();
            for (_, dec) in p.blocks() {
                match dec {
                    Decoration::K => d *= GenusPoly::linear(-2, 2),
                    Decoration::Pt => {}
                    Decoration::Unit => unreachable!("top codim blocks are decorated"),
                }
            }
            out += d;
        }
        out
    }

    /// JSON with blocks as sorted integer lists and decoration labels.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(p, c)| {
                serde_json::json!({
                    "blocks": p.blocks().iter().map(|(members, dec)| {
                        serde_json::json!({
                            "factors": members,
                            "decoration": dec.label(),
                        })
                    }).collect::<Vec<_>>(),
                    "coefficient": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "power": self.n, "terms": terms })
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, p)?;
        }
        Ok(())
    }
}

/// Joins two decorated partitions. Returns the canonical joined partition and
/// the sign `(-1)^excess`, or `None` when a decoration degree reaches 2.
fn join_partitions(
    n: u8,
    x: &DecoratedPartition,
    y: &DecoratedPartition,
) -> Option<(DecoratedPartition, i32)> {
    // union-find over factors
    let mut parent: Vec<u8> = (0..n).collect();
    fn find(parent: &mut Vec<u8>, i: u8) -> u8 {
        let mut i = i;
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    for (members, _) in x.blocks().iter().chain(y.blocks()) {
        let root = find(&mut parent, members[0] - 1);
        for &m in &members[1..] {
            let r = find(&mut parent, m - 1);
            parent[r as usize] = root;
        }
    }

    // per joined block: element count, constituent block counts, decorations
    struct BlockInfo {
        elements: u32,
        from_x: u32,
        from_y: u32,
        dec_degree: u32,
        decoration: Decoration,
    }
    impl Default for BlockInfo {
        fn default() -> Self {
            BlockInfo {
                elements: 0,
                from_x: 0,
                from_y: 0,
                dec_degree: 0,
                decoration: Decoration::Unit,
            }
        }
    }
    let mut info: BTreeMap<u8, BlockInfo> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        info.entry(root).or_default().elements += 1;
    }
    for (which, part) in [(0, x), (1, y)] {
        for (members, dec) in part.blocks() {
            let root = find(&mut parent, members[0] - 1);
            let entry = info.entry(root).or_default();
            if which == 0 {
                entry.from_x += 1;
            } else {
                entry.from_y += 1;
            }
            entry.dec_degree += dec.degree();
            if dec.degree() > 0 {
                entry.decoration = *dec;
            }
        }
    }

    let mut sign = 1;
    let mut blocks = Vec::new();
    let mut grouped: BTreeMap<u8, Vec<u8>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        grouped.entry(root).or_default().push(i + 1);
    }
    for (root, members) in grouped {
        let b = &info[&root];
        let excess = b.elements + 1 - b.from_x - b.from_y;
        let total = b.dec_degree + excess;
        if total >= 2 {
            return None;
        }
        if excess % 2 == 1 {
            sign = -sign;
        }
        let dec = if total == 0 {
            Decoration::Unit
        } else if excess == 1 {
            Decoration::K
        } else {
            b.decoration
        };
        blocks.push((members, dec));
    }
    Some((DecoratedPartition::new(n, blocks), sign))
}

/// The record produced by the pullback pipeline: the classes `phi^*(q_1)`,
/// `phi^*(q_2)`, `phi^*(q_1^2)` and `phi^*(W)` on `C^2`, the target cycle
/// `Z`, and whether they agree identically in `g`.
#[derive(Debug, Clone)]
pub struct PhiPullbacks {
    pub q0_scalar: GenusPoly,
    pub q1: CurveClass,
    pub q2: CurveClass,
    pub q1_squared: CurveClass,
    pub w_pullback: CurveClass,
    pub z: CurveClass,
    pub verdict: bool,
    pub trace: Vec<String>,
}

/// `xi = 1/2 K + [x0]` on the curve.
pub fn xi_class() -> CurveClass {
    let half = GenusPoly::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
    CurveClass::canonical_div(1, 1)
        .scale(&half)
        .add(&CurveClass::base_point(1, 1))
}

/// `ell = [Delta_1] + [Delta_2] - 2 pr_1^*[x0] - pr_2^*([x0 x C] + [C x x0])`
/// on `C x (C x C)`.
pub fn ell_class() -> CurveClass {
    let two = GenusPoly::from_int(2);
    CurveClass::diagonal(3, &[1, 2])
        .add(&CurveClass::diagonal(3, &[1, 3]))
        .sub(&CurveClass::base_point(3, 1).scale(&two))
        .sub(&CurveClass::base_point(3, 2))
        .sub(&CurveClass::base_point(3, 3))
}

/// `Z = K x K - (2g-2) K_Delta` on `C x C`.
pub fn z_cycle() -> CurveClass {
    let kxk = CurveClass::canonical_div(2, 1).product(&CurveClass::canonical_div(2, 2));
    let k_delta = CurveClass::from_partition(DecoratedPartition::with_block(
        2,
        &[1, 2],
        Decoration::K,
    ));
    kxk.sub(&k_delta.scale(&GenusPoly::linear(-2, 2)))
}

/// Computes the pullbacks of `q_1`, `q_2`, `q_1^2` and `W` along the sum map
/// from `C x C`, entirely in formal `g`, and compares `phi^*(W)` with `Z`.
pub fn phi_pullbacks() -> PhiPullbacks {
    let mut trace = Vec::new();
    let xi = xi_class();
    trace.push(format!("xi = {}", xi));
    let pr1_xi = xi.pullback(&[1], 3);
    let ell = ell_class();
    trace.push(format!("ell = {}", ell));

    // the direct route: push the full exponential forward
    let integrand = pr1_xi.product(&ell.exp_truncated(3));
    let pushed = integrand.pushforward(1);
    trace.push(
        "pushed = pr_{2,*}(pr_1^*(xi) * exp(ell)), graded by codimension".to_string(),
    );

    // the factored route moves the pr_2^* part of exp(ell) across the
    // pushforward; the projection formula makes the two routes agree
    let inner = CurveClass::diagonal(3, &[1, 2])
        .add(&CurveClass::diagonal(3, &[1, 3]))
        .sub(&CurveClass::base_point(3, 1).scale(&GenusPoly::from_int(2)));
    let outer = CurveClass::base_point(2, 1)
        .add(&CurveClass::base_point(2, 2))
        .scale(&GenusPoly::from_int(-1));
    let factored = pr1_xi
        .product(&inner.exp_truncated(3))
        .pushforward(1)
        .product(&outer.exp_truncated(2));
    assert_eq!(
        pushed, factored,
        "projection formula: the factored route must agree"
    );
    trace.push(
        "projection formula verified: exp of the pr_2^* part commutes with pr_{2,*}"
            .to_string(),
    );

    let q0 = pushed.codim_component(0);
    let q0_scalar = q0
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(GenusPoly::zero);
    trace.push(format!("phi^*(q0) = ({})*[C^2], the scalar g", q0_scalar));

    let q1 = pushed.codim_component(1);
    let q2 = pushed.codim_component(2);
    trace.push(format!("phi^*(q1) = {}", q1));
    trace.push(format!("phi^*(q2) = {}", q2));

    let q1_squared = q1.product(&q1);
    trace.push(format!("phi^*(q1^2) = {}", q1_squared));

    let w_pullback = q1_squared
        .sub(&q2.scale(&GenusPoly::linear(-2, 2)))
        .scale(&GenusPoly::from_int(2));
    let z = z_cycle();
    let verdict = w_pullback == z;
    trace.push(format!("phi^*(W) = {}", w_pullback));
    trace.push(format!("Z = {}", z));
    trace.push(format!(
        "phi^*(W) == Z: {}",
        if verdict { "PASS" } else { "FAIL" }
    ));

    PhiPullbacks {
        q0_scalar,
        q1,
        q2,
        q1_squared,
        w_pullback,
        z,
        verdict,
        trace,
    }
}

/// All canonical decorated partitions on `C^n`, for exhaustive property tests.
pub fn enumerate_partitions(n: u8) -> Vec<DecoratedPartition> {
    fn set_partitions(elems: &[u8]) -> Vec<Vec<Vec<u8>>> {
        if elems.is_empty() {
            return vec![vec![]];
        }
        let first = elems[0];
        let rest = &elems[1..];
        let mut out = Vec::new();
        for sub in set_partitions(rest) {
            // first joins an existing block or starts its own
            for i in 0..sub.len() {
                let mut copy = sub.clone();
                copy[i].push(first);
                out.push(copy);
            }
            let mut copy = sub;
            copy.push(vec![first]);
            out.push(copy);
        }
        out
    }
    let elems: Vec<u8> = (1..=n).collect();
    let mut out = Vec::new();
    for partition in set_partitions(&elems) {
        // decorations: Pt is canonical only on singletons
        let choices: Vec<Vec<Decoration>> = partition
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    vec![Decoration::Unit, Decoration::K, Decoration::Pt]
                } else {
                    vec![Decoration::Unit, Decoration::K]
                }
            })
            .collect();
        let mut assignment = vec![0usize; partition.len()];
        loop {
            let blocks: Vec<(Vec<u8>, Decoration)> = partition
                .iter()
                .enumerate()
                .map(|(k, b)| (b.clone(), choices[k][assignment[k]]))
                .collect();
            out.push(DecoratedPartition::new(n, blocks));
            // odometer over decoration choices
            let mut pos = 0;
            loop {
                if pos == assignment.len() {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < choices[pos].len() {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == assignment.len() {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

//! Finite extended pseudo-metric spaces.
//!
//! Distances live in `[0, ∞]`, with `∞` a dedicated [`Distance::Infinite`]
//! variant rather than a float. Distinct points may be at distance 0.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use crate::error::{param, Error, Result};

/// A value in `[0, ∞]`. `Finite` values are ordered below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Distance {
    Finite(f64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }

    pub fn min(self, other: Distance) -> Distance {
        if other < self {
            other
        } else {
            self
        }
    }

    fn is_valid(self) -> bool {
        match self {
            Distance::Finite(x) => x.is_finite() && x >= 0.0,
            Distance::Infinite => true,
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl From<f64> for Distance {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            Distance::Infinite
        } else {
            Distance::Finite(x)
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => write!(f, "{x}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A finite point set with an extended distance matrix.
///
/// The constructor checks shape and that every entry lies in `[0, ∞]`; the
/// metric axioms are checked separately by [`validate_epmet`].
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteEPMet {
    points: Vec<String>,
    dist: Vec<Distance>,
}

impl FiniteEPMet {
    pub fn new(points: Vec<String>, dist: Vec<Vec<Distance>>) -> Result<Self> {
        let n = points.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!("distance matrix is not {n}x{n}")));
        }
        let mut seen = HashSet::with_capacity(n);
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        let dist: Vec<Distance> = dist.into_iter().flatten().collect();
        if let Some(bad) = dist.iter().find(|d| !d.is_valid()) {
            return Err(Error::Distance(bad.value().unwrap_or(f64::NAN)));
        }
        Ok(Self { points, dist })
    }

    /// Builds from a closure over index pairs.
    pub fn from_fn(points: Vec<String>, f: impl Fn(usize, usize) -> Distance) -> Result<Self> {
        let n = points.len();
        let dist = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(points, dist)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Distance {
        self.dist[i * self.points.len() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Distance]> {
        self.dist.chunks(self.points.len().max(1))
    }

    /// Same matrix under new labels.
    pub fn relabeled(&self, points: Vec<String>) -> Result<Self> {
        Self::new(points, self.rows().map(<[Distance]>::to_vec).collect())
    }
}

/// One failed metric axiom, with the labels of the witnessing points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricViolation {
    pub axiom: &'static str,
    pub witness: Vec<String>,
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.axiom, self.witness.join(","))
    }
}

/// Lists every violated axiom instance: `M1` zero diagonal, `M2` symmetry
/// (one entry per unordered pair), `M3` triangle inequality (one entry per
/// triple `(x, y, z)` with `x < z`).
pub fn validate_epmet(m: &FiniteEPMet) -> Vec<MetricViolation> {
    let n = m.len();
    let lbl = |ix: &[usize]| ix.iter().map(|&i| m.points[i].clone()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for x in 0..n {
        if m.d(x, x) != Distance::ZERO {
            out.push(MetricViolation { axiom: "M1", witness: lbl(&[x]) });
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if m.d(x, y) != m.d(y, x) {
                out.push(MetricViolation { axiom: "M2", witness: lbl(&[x, y]) });
            }
        }
    }
    for x in 0..n {
        for z in x + 1..n {
            for y in 0..n {
                if y == x || y == z {
                    continue;
                }
                if m.d(x, z) > m.d(x, y) + m.d(y, z) || m.d(z, x) > m.d(z, y) + m.d(y, x) {
                    out.push(MetricViolation { axiom: "M3", witness: lbl(&[x, y, z]) });
                }
            }
        }
    }
    out
}

/// A map between the point sets of two spaces, stored by index.
#[derive(Clone, Debug)]
pub struct PointMap<'a> {
    source: &'a FiniteEPMet,
    target: &'a FiniteEPMet,
    assignment: Vec<usize>,
}

impl<'a> PointMap<'a> {
    pub fn new(source: &'a FiniteEPMet, target: &'a FiniteEPMet, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::Structure(format!("map defined on {} of {} points", assignment.len(), source.len())));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::IndexOutOfRange { dim: target.len(), index: bad });
        }
        Ok(Self { source, target, assignment })
    }

    pub fn from_labels(source: &'a FiniteEPMet, target: &'a FiniteEPMet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let i = source.index_of(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let j = target.index_of(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Structure(format!("map undefined on `{}`", source.points[i])));
        }
        Self::new(source, target, assignment)
    }

    pub fn identity(space: &'a FiniteEPMet) -> Self {
        Self { source: space, target: space, assignment: (0..space.len()).collect() }
    }

    pub fn source(&self) -> &'a FiniteEPMet {
        self.source
    }

    pub fn target(&self) -> &'a FiniteEPMet {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }
}

/// Whether `d_Y(f(x), f(y)) ≤ d_X(x, y)` for all pairs.
pub fn is_nonexpansive(f: &PointMap<'_>) -> bool {
    let n = f.source.len();
    (0..n).all(|x| (x + 1..n).all(|y| f.target.d(f.apply(x), f.apply(y)) <= f.source.d(x, y)))
}

/// Best Lipschitz constant of a point map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lipschitz {
    Constant(f64),
    NotLipschitz,
}

/// Smallest `c ∈ [0, ∞)` with `d_Y(f(x), f(y)) ≤ c · d_X(x, y)`.
///
/// Pairs at source distance `∞` impose no constraint. A pair at source
/// distance 0 with positive image distance, or at finite source distance
/// with infinite image distance, admits no finite constant.
pub fn best_lipschitz(f: &PointMap<'_>) -> Lipschitz {
    let n = f.source.len();
    let mut best: f64 = 0.0;
    for x in 0..n {
        for y in x + 1..n {
            let Distance::Finite(dx) = f.source.d(x, y) else {
                continue;
            };
            match f.target.d(f.apply(x), f.apply(y)) {
                Distance::Infinite => return Lipschitz::NotLipschitz,
                Distance::Finite(dy) if dx == 0.0 => {
                    if dy > 0.0 {
                        return Lipschitz::NotLipschitz;
                    }
                }
                Distance::Finite(dy) => best = best.max(dy / dx),
            }
        }
    }
    Lipschitz::Constant(best)
}

/// Disjoint union; points are labeled `"{part}:{label}"` and points of
/// different parts are at distance `∞`.
pub fn coproduct(parts: &[FiniteEPMet]) -> FiniteEPMet {
    let mut points = Vec::new();
    let mut owner = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        for (i, p) in part.points.iter().enumerate() {
            points.push(format!("{k}:{p}"));
            owner.push((k, i));
        }
    }
    let n = points.len();
    let mut dist = Vec::with_capacity(n * n);
    for &(ka, ia) in &owner {
        for &(kb, ib) in &owner {
            dist.push(if ka == kb { parts[ka].d(ia, ib) } else { Distance::Infinite });
        }
    }
    FiniteEPMet { points, dist }
}

/// Index offsets of each part inside [`coproduct`]'s output; the injection
/// of part `k` sends point `i` to `offsets[k] + i`.
pub fn coproduct_offsets(parts: &[FiniteEPMet]) -> Vec<usize> {
    parts
        .iter()
        .scan(0, |acc, p| {
            let start = *acc;
            *acc += p.len();
            Some(start)
        })
        .collect()
}

/// An exact cover of `0..n` by non-empty disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Structure(format!("block {b} is empty")));
            }
            for &p in block {
                if p >= n {
                    return Err(Error::IndexOutOfRange { dim: n, index: p });
                }
                if block_of[p] != usize::MAX {
                    return Err(Error::Structure(format!("point {p} in two blocks")));
                }
                block_of[p] = b;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Structure(format!("point {p} not covered")));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn discrete(n: usize) -> Self {
        Self { blocks: (0..n).map(|i| vec![i]).collect(), block_of: (0..n).collect() }
    }

    /// Blocks from a label per point; blocks appear in order of first use.
    pub fn from_keys<K: Eq + std::hash::Hash + Clone>(keys: &[K]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let block_of = keys
            .iter()
            .enumerate()
            .map(|(p, k)| {
                let b = *ids.entry(k.clone()).or_insert_with(|| {
                    blocks.push(Vec::new());
                    blocks.len() - 1
                });
                blocks[b].push(p);
                b
            })
            .collect();
        Self { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.block_of[p]
    }

    pub fn point_count(&self) -> usize {
        self.block_of.len()
    }
}

/// Quotient by a partition with the path-infimum metric.
///
/// The hop cost between two blocks is the least distance between their
/// members; the quotient distance is the shortest block-graph walk, which
/// for finite spaces is attained by some `∼`-path. Blocks are labeled by
/// their members' labels joined with `~`.
pub fn quotient(m: &FiniteEPMet, p: &Partition) -> Result<FiniteEPMet> {
    if p.point_count() != m.len() {
        return Err(Error::Structure(format!("partition covers {} points, space has {}", p.point_count(), m.len())));
    }
    let b = p.blocks.len();
    let mut hop = vec![Distance::Infinite; b * b];
    for x in 0..m.len() {
        let bx = p.block_of[x];
        for y in 0..m.len() {
            let by = p.block_of[y];
            let cell = &mut hop[bx * b + by];
            *cell = cell.min(m.d(x, y));
        }
    }
    for i in 0..b {
        hop[i * b + i] = Distance::ZERO;
    }
    floyd_warshall(&mut hop, b);
    let points = p
        .blocks
        .iter()
        .map(|block| block.iter().map(|&i| m.points[i].as_str()).collect::<Vec<_>>().join("~"))
        .collect();
    Ok(FiniteEPMet { points, dist: hop })
}

fn floyd_warshall(d: &mut [Distance], n: usize) {
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let through = dik + d[k * n + j];
                if through < d[i * n + j] {
                    d[i * n + j] = through;
                }
            }
        }
    }
}

/// Result of [`coequalizer`]: the quotient space and the projection from
/// the common target onto it.
#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub space: FiniteEPMet,
    pub projection: Vec<usize>,
}

impl Coequalizer {
    pub fn projection_map<'a>(&'a self, target: &'a FiniteEPMet) -> PointMap<'a> {
        PointMap { source: target, target: &self.space, assignment: self.projection.clone() }
    }
}

/// Quotient of the common target by the equivalence generated by
/// `f(a) ∼ g(a)`.
pub fn coequalizer(f: &PointMap<'_>, g: &PointMap<'_>) -> Result<Coequalizer> {
    if !std::ptr::eq(f.source, g.source) && f.source != g.source {
        return Err(Error::Structure("maps have different sources".into()));
    }
    if !std::ptr::eq(f.target, g.target) && f.target != g.target {
        return Err(Error::Structure("maps have different targets".into()));
    }
    let mut uf = UnionFind::new(f.target.len());
    for a in 0..f.source.len() {
        uf.union(f.apply(a), g.apply(a));
    }
    let part = uf.partition();
    let space = quotient(f.target, &part)?;
    let projection = (0..f.target.len()).map(|p| part.block_of(p)).collect();
    Ok(Coequalizer { space, projection })
}

/// Disjoint-set forest over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so block order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_keys(&roots)
    }
}

/// `n + 1` points pairwise at distance `a`.
pub fn finite_metric_simplex(n: usize, a: f64) -> Result<FiniteEPMet> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(param("a", format!("scale {a} must be finite and non-negative")));
    }
    let points = (0..=n).map(|i| i.to_string()).collect();
    FiniteEPMet::from_fn(points, |i, j| if i == j { Distance::ZERO } else { Distance::Finite(a) })
}

const BARYCENTRIC_TOL: f64 = 1e-12;

fn check_barycentric(coords: &[f64], dim: usize) -> Result<()> {
    if coords.len() != dim + 1 {
        return Err(Error::DimensionMismatch(format!("{} coordinates for a {dim}-simplex", coords.len())));
    }
    if coords.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(Error::Structure(format!("negative or non-finite coordinate in {coords:?}")));
    }
    let sum: f64 = coords.iter().sum();
    if (sum - 1.0).abs() > BARYCENTRIC_TOL {
        return Err(Error::Structure(format!("coordinates sum to {sum}")));
    }
    Ok(())
}

/// The `n`-simplex of barycentric coordinates with the `ℓ1` metric scaled
/// by `scale`. Only evaluates distances; never materialized as a space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricSimplexL1 {
    dim: usize,
    scale: f64,
}

impl MetricSimplexL1 {
    pub fn new(dim: usize, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(param("scale", format!("{scale} must be finite and non-negative")));
        }
        Ok(Self { dim, scale })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn l1_distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_barycentric(x, self.dim)?;
        check_barycentric(y, self.dim)?;
        Ok(self.scale * x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }
}

/// Face map `Δ^{n−1} → Δ^n`: inserts a 0 at position `i`.
pub fn simplex_face(coords: &[f64], i: usize) -> Result<Vec<f64>> {
    let n = coords.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty coordinate vector".into()));
    }
    check_barycentric(coords, n - 1)?;
    if i > n {
        return Err(Error::IndexOutOfRange { dim: n, index: i });
    }
    let mut out = coords.to_vec();
    out.insert(i, 0.0);
    Ok(out)
}

/// Degeneracy map `Δ^{n+1} → Δ^n`: adds coordinates `i` and `i + 1`.
pub fn simplex_degeneracy(coords: &[f64], i: usize) -> Result<Vec<f64>> {
    if coords.len() < 2 {
        return Err(Error::DimensionMismatch(format!("{} coordinates cannot degenerate", coords.len())));
    }
    check_barycentric(coords, coords.len() - 1)?;
    let n = coords.len() - 2;
    if i > n {
        return Err(Error::IndexOutOfRange { dim: n, index: i });
    }
    let mut out = coords.to_vec();
    let merged = out.remove(i + 1);
    out[i] += merged;
    Ok(out)
}

pub fn lp_norm(v: &[f64], p: f64) -> f64 {
    v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Evaluates the `ℓp` witness `(½, ½)` and its degeneracy image `(1)`.
///
/// Returns `(‖x‖_p, ‖s_0(x)‖_p) = (2^{1/p − 1}, 1)`; the output exceeds
/// the input for every `p > 1`, so `ℓp` degeneracies are not non-expansive.
pub fn lp_counterexample(p: f64) -> Result<(f64, f64)> {
    if !(p.is_finite() && p > 1.0) {
        return Err(param("p", format!("{p} must lie in (1, inf)")));
    }
    let x = [0.5, 0.5];
    let sx = simplex_degeneracy(&x, 0)?;
    Ok((lp_norm(&x, p), lp_norm(&sx, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Distance::{Finite as F, Infinite as Inf};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    fn space(rows: &[&[Distance]]) -> FiniteEPMet {
        FiniteEPMet::new(labels(rows.len()), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn distance_arithmetic() {
        assert_eq!(F(1.0) + F(2.0), F(3.0));
        assert_eq!(F(1.0) + Inf, Inf);
        assert_eq!(Inf + Inf, Inf);
        assert!(F(1e300) < Inf);
        assert_eq!(Distance::from(f64::INFINITY), Inf);
        assert_eq!(F(2.0).min(Inf), F(2.0));
    }

    #[test]
    fn constructor_checks() {
        assert!(FiniteEPMet::new(labels(2), vec![vec![F(0.0)]]).is_err());
        assert!(FiniteEPMet::new(labels(1), vec![vec![F(-1.0)]]).is_err());
        assert!(FiniteEPMet::new(labels(1), vec![vec![F(f64::NAN)]]).is_err());
        assert!(FiniteEPMet::new(vec!["a".into(), "a".into()], vec![vec![F(0.0); 2]; 2]).is_err());
    }

    #[test]
    fn validation_examples() {
        assert!(validate_epmet(&space(&[&[F(0.0)]])).is_empty());
        let bad = space(&[&[F(0.0), F(1.0), F(3.0)], &[F(1.0), F(0.0), F(1.0)], &[F(3.0), F(1.0), F(0.0)]]);
        let v = validate_epmet(&bad);
        assert_eq!(v, vec![MetricViolation { axiom: "M3", witness: labels(3) }]);
        assert!(validate_epmet(&space(&[&[F(0.0), Inf], &[Inf, F(0.0)]])).is_empty());

        let m1 = space(&[&[F(1.0)]]);
        assert_eq!(validate_epmet(&m1)[0].axiom, "M1");
        let m2 = space(&[&[F(0.0), F(1.0)], &[F(2.0), F(0.0)]]);
        assert_eq!(validate_epmet(&m2)[0].axiom, "M2");
    }

    #[test]
    fn coproduct_examples() {
        let one = space(&[&[F(0.0), F(1.5)], &[F(1.5), F(0.0)]]);
        let c = coproduct(std::slice::from_ref(&one));
        assert_eq!(c.points(), ["0:a", "0:b"]);
        assert_eq!(c.d(0, 1), F(1.5));

        let pt = space(&[&[F(0.0)]]);
        let c = coproduct(&[pt.clone(), pt]);
        assert_eq!(c.d(0, 1), Inf);
        assert!(validate_epmet(&c).is_empty());

        let c = coproduct(&[one.clone(), one.clone(), one]);
        assert_eq!(c.len(), 6);
        let off_diag: Vec<Distance> =
            (0..6).flat_map(|i| (0..6).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| c.d(i, j)).collect();
        // ordered pairs: 3 finite unordered pairs appear twice
        assert_eq!(off_diag.iter().filter(|d| d.is_finite()).count(), 6);
        assert_eq!(off_diag.iter().filter(|d| !d.is_finite()).count(), 24);
        // unordered: 3 finite, 12 infinite
        let unordered: Vec<Distance> =
            (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).map(|(i, j)| c.d(i, j)).collect();
        assert_eq!(unordered.iter().filter(|d| d.is_finite()).count(), 3);
        assert_eq!(unordered.iter().filter(|d| !d.is_finite()).count(), 12);
        assert_eq!(coproduct_offsets(&[space(&[&[F(0.0)]]), space(&[&[F(0.0)]])]), vec![0, 1]);
    }

    fn path4() -> FiniteEPMet {
        // a–b 1, b–c 5, c–d 1, remaining entries by shortest path
        space(&[
            &[F(0.0), F(1.0), F(6.0), F(7.0)],
            &[F(1.0), F(0.0), F(5.0), F(6.0)],
            &[F(6.0), F(5.0), F(0.0), F(1.0)],
            &[F(7.0), F(6.0), F(1.0), F(0.0)],
        ])
    }

    #[test]
    fn quotient_examples() {
        let m = path4();
        assert!(validate_epmet(&m).is_empty());
        let q = quotient(&m, &Partition::discrete(4)).unwrap();
        assert_eq!(q, m);

        let p = Partition::new(4, vec![vec![0, 3], vec![1], vec![2]]).unwrap();
        let q = quotient(&m, &p).unwrap();
        assert_eq!(q.points(), ["a~d", "b", "c"]);
        assert_eq!(q.d(1, 2), F(2.0));
        assert_eq!(q.d(0, 1), F(1.0));
        assert!(validate_epmet(&q).is_empty());

        let q = quotient(&m, &Partition::new(4, vec![vec![0, 1, 2, 3]]).unwrap()).unwrap();
        assert_eq!((q.len(), q.d(0, 0)), (1, F(0.0)));

        assert!(quotient(&m, &Partition::discrete(3)).is_err());
    }

    #[test]
    fn partition_checks() {
        assert!(Partition::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 2]]).is_err());
        let p = Partition::from_keys(&["x", "y", "x"]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1]]);
    }

    #[test]
    fn coequalizer_examples() {
        let tgt = path4();
        let f = PointMap::identity(&tgt);
        let c = coequalizer(&f, &f).unwrap();
        assert_eq!(c.space, tgt);

        let pt = space(&[&[F(0.0)]]);
        let two = space(&[&[F(0.0), F(3.0)], &[F(3.0), F(0.0)]]);
        let f = PointMap::new(&pt, &two, vec![0]).unwrap();
        let g = PointMap::new(&pt, &two, vec![1]).unwrap();
        let c = coequalizer(&f, &g).unwrap();
        assert_eq!(c.space.len(), 1);
        assert!(is_nonexpansive(&c.projection_map(&two)));

        let pair = space(&[&[F(0.0), F(1.0)], &[F(1.0), F(0.0)]]);
        let three = space(&[&[F(0.0), F(1.0), F(2.0)], &[F(1.0), F(0.0), F(1.0)], &[F(2.0), F(1.0), F(0.0)]]);
        let f = PointMap::new(&pair, &three, vec![0, 1]).unwrap();
        let g = PointMap::new(&pair, &three, vec![1, 2]).unwrap();
        let c = coequalizer(&f, &g).unwrap();
        assert_eq!(c.space.points(), ["a~b~c"]);
        assert!(is_nonexpansive(&c.projection_map(&three)));

        let other = space(&[&[F(0.0)]]);
        let h = PointMap::new(&other, &three, vec![0]).unwrap();
        assert!(coequalizer(&f, &h).is_err());
    }

    #[test]
    fn nonexpansive_and_lipschitz() {
        let two1 = space(&[&[F(0.0), F(1.0)], &[F(1.0), F(0.0)]]);
        let two2 = space(&[&[F(0.0), F(2.0)], &[F(2.0), F(0.0)]]);
        let two3 = space(&[&[F(0.0), F(3.0)], &[F(3.0), F(0.0)]]);
        let two0 = space(&[&[F(0.0), F(0.0)], &[F(0.0), F(0.0)]]);
        let id = PointMap::identity(&two1);
        assert!(is_nonexpansive(&id));
        assert_eq!(best_lipschitz(&id), Lipschitz::Constant(1.0));
        let collapse = PointMap::new(&two3, &two1, vec![0, 0]).unwrap();
        assert!(is_nonexpansive(&collapse));
        let stretch = PointMap::new(&two1, &two2, vec![0, 1]).unwrap();
        assert!(!is_nonexpansive(&stretch));
        let f = PointMap::new(&two1, &two3, vec![0, 1]).unwrap();
        assert_eq!(best_lipschitz(&f), Lipschitz::Constant(3.0));
        let f = PointMap::new(&two0, &two1, vec![0, 1]).unwrap();
        assert_eq!(best_lipschitz(&f), Lipschitz::NotLipschitz);
        assert_eq!(best_lipschitz(&PointMap::identity(&two0)), Lipschitz::Constant(0.0));

        let far = space(&[&[F(0.0), Inf], &[Inf, F(0.0)]]);
        assert!(is_nonexpansive(&PointMap::new(&far, &two3, vec![0, 1]).unwrap()));
        assert_eq!(best_lipschitz(&PointMap::new(&far, &two3, vec![0, 1]).unwrap()), Lipschitz::Constant(0.0));
        assert_eq!(best_lipschitz(&PointMap::new(&two1, &far, vec![0, 1]).unwrap()), Lipschitz::NotLipschitz);
        assert_eq!(best_lipschitz(&PointMap::identity(&far)), Lipschitz::Constant(0.0));
    }

    #[test]
    fn point_map_checks() {
        let a = space(&[&[F(0.0)]]);
        assert!(PointMap::new(&a, &a, vec![]).is_err());
        assert!(PointMap::new(&a, &a, vec![1]).is_err());
        assert!(PointMap::from_labels(&a, &a, &[("a", "z")]).is_err());
        assert!(PointMap::from_labels(&a, &a, &[]).is_err());
        assert_eq!(PointMap::from_labels(&a, &a, &[("a", "a")]).unwrap().assignment(), &[0]);
    }

    #[test]
    fn finite_simplices() {
        assert_eq!(finite_metric_simplex(0, 5.0).unwrap().len(), 1);
        let s = finite_metric_simplex(1, 0.7).unwrap();
        assert_eq!((s.len(), s.d(0, 1)), (2, F(0.7)));
        let s = finite_metric_simplex(2, 0.0).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| s.d(i, j) == F(0.0))));
        assert!(validate_epmet(&s).is_empty());
        assert!(finite_metric_simplex(2, -1.0).is_err());
    }

    #[test]
    fn l1_simplices() {
        let s = MetricSimplexL1::new(1, 1.0).unwrap();
        assert_eq!(s.l1_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(s.l1_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 2.0);
        let h = MetricSimplexL1::new(1, 0.5).unwrap();
        assert_eq!(h.l1_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!(s.l1_distance(&[0.5, 0.6], &[0.0, 1.0]).is_err());
        assert!(s.l1_distance(&[1.0], &[0.0, 1.0]).is_err());
        assert!(s.l1_distance(&[1.5, -0.5], &[0.0, 1.0]).is_err());
        assert!(MetricSimplexL1::new(1, -1.0).is_err());
    }

    #[test]
    fn face_and_degeneracy_coordinates() {
        assert_eq!(simplex_face(&[0.5, 0.5], 1).unwrap(), [0.5, 0.0, 0.5]);
        assert_eq!(simplex_degeneracy(&[0.25, 0.25, 0.5], 0).unwrap(), [0.5, 0.5]);
        assert!(simplex_face(&[0.5, 0.5], 3).is_err());
        assert!(simplex_degeneracy(&[0.5, 0.5], 1).is_err());
        assert!(simplex_degeneracy(&[1.0], 0).is_err());
    }

    #[test]
    fn degeneracy_is_not_an_isometry_of_pairs() {
        // two distinct points of Δ^2 map to the same point of Δ^1
        let x = [0.5, 0.5, 0.0];
        let y = [0.4, 0.6, 0.0];
        let big = MetricSimplexL1::new(2, 1.0).unwrap();
        let small = MetricSimplexL1::new(1, 1.0).unwrap();
        let before = big.l1_distance(&x, &y).unwrap();
        let after =
            small.l1_distance(&simplex_degeneracy(&x, 0).unwrap(), &simplex_degeneracy(&y, 0).unwrap()).unwrap();
        assert!((before - 0.2).abs() < 1e-12);
        assert_eq!(after, 0.0);
    }

    #[test]
    fn lp_witness() {
        let (i, o) = lp_counterexample(2.0).unwrap();
        assert!((i - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(o, 1.0);
        let (i, _) = lp_counterexample(4.0).unwrap();
        assert!((i - 2f64.powf(-0.75)).abs() < 1e-15);
        assert!((i - 0.5946).abs() < 1e-4);
        let (i, o) = lp_counterexample(1.0 + 1e-9).unwrap();
        assert!((i - 1.0).abs() < 1e-8 && o == 1.0);
        for p in [1.5, 2.0, 3.0, 10.0] {
            let (i, o) = lp_counterexample(p).unwrap();
            assert!(o > i);
        }
        assert!(lp_counterexample(1.0).is_err());
        assert!(lp_counterexample(0.5).is_err());
        assert!(lp_counterexample(f64::INFINITY).is_err());
    }
}

//! Finite metric realization, finite singular nerve, 1-skeletons and a
//! hom-set check of the adjunction between them.
//!
//! The realization of `S` is the coproduct of one discrete metric simplex
//! of size `−log μ(s)` per simplex `s`, glued along face and degeneracy
//! generators. The nerve of `M` has as `n`-simplices all `(n+1)`-tuples of
//! mutually finitely distant points, with membership `exp(−L)` where `L` is
//! the best Lipschitz constant of the tuple viewed as a map out of the unit
//! discrete simplex.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::epmet::{
    best_lipschitz, coproduct, coproduct_offsets, finite_metric_simplex, is_nonexpansive, quotient, validate_epmet,
    Distance, FiniteEPMet, Lipschitz, PointMap, UnionFind,
};
use crate::error::{Error, Result};
use crate::fuzzy::neg_log;
use crate::graph::FuzzyGraph;
use crate::simplicial::{degeneracy, face, validate, TruncatedSimplicialFuzzySet};

/// Upper bound on enumerated candidate maps in [`adjunction_check`].
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Realized space plus the point each simplex vertex lands on.
#[derive(Clone, Debug)]
pub struct RealizationResult {
    pub space: FiniteEPMet,
    witness: Vec<Vec<Vec<usize>>>,
}

impl RealizationResult {
    /// Point index of vertex `i` of `s ∈ S_n`.
    pub fn witness(&self, n: usize, s: usize, i: usize) -> usize {
        self.witness[n][s][i]
    }

    /// `"n,s,i" → point label`, for serialization.
    pub fn witness_table(&self, s: &TruncatedSimplicialFuzzySet) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for (n, per_s) in self.witness.iter().enumerate() {
            for (x, verts) in per_s.iter().enumerate() {
                for (i, &p) in verts.iter().enumerate() {
                    out.insert(format!("{n},{},{i}", s.label(n, x)), self.space.points()[p].clone());
                }
            }
        }
        out
    }
}

fn ensure_valid(s: &TruncatedSimplicialFuzzySet) -> Result<()> {
    let v = validate(s);
    match v.first() {
        None => Ok(()),
        Some(first) => Err(Error::Invalid(v.len(), first.to_string())),
    }
}

fn ensure_valid_space(m: &FiniteEPMet) -> Result<()> {
    let v = validate_epmet(m);
    match v.first() {
        None => Ok(()),
        Some(first) => Err(Error::Invalid(v.len(), first.to_string())),
    }
}

/// Finite metric realization.
///
/// Points are labeled by the 0-simplex they are glued to and appear in
/// `S_0` order.
pub fn fin_metric_realize(s: &TruncatedSimplicialFuzzySet) -> Result<RealizationResult> {
    ensure_valid(s)?;
    let d = s.max_dim();

    let mut parts = Vec::with_capacity(s.total_len());
    let mut keys = Vec::with_capacity(s.total_len());
    for n in 0..=d {
        for x in 0..s.set(n).len() {
            parts.push(finite_metric_simplex(n, neg_log(s.membership(n, x))?)?);
            keys.push((n, x));
        }
    }
    let offsets = coproduct_offsets(&parts);
    let mut base: Vec<usize> = Vec::new();
    let mut start = vec![0usize; d + 1];
    for (k, &(n, x)) in keys.iter().enumerate() {
        if x == 0 {
            start[n] = k;
        }
        base.push(offsets[k]);
    }
    let point = |n: usize, x: usize, i: usize| base[start[n] + x] + i;
    let disjoint = coproduct(&parts);

    let mut uf = UnionFind::new(disjoint.len());
    for n in 1..=d {
        for i in 0..=n {
            let delta = face(n, i)?;
            for x in 0..s.set(n).len() {
                let y = s.face(n, i, x);
                for k in 0..n {
                    uf.union(point(n - 1, y, k), point(n, x, delta.apply(k)));
                }
            }
        }
    }
    for n in 0..d {
        for j in 0..=n {
            let sigma = degeneracy(n, j)?;
            for x in 0..s.set(n).len() {
                let y = s.degeneracy(n, j, x);
                for k in 0..=n + 1 {
                    uf.union(point(n + 1, y, k), point(n, x, sigma.apply(k)));
                }
            }
        }
    }
    let partition = uf.partition();
    let glued = quotient(&disjoint, &partition)?;

    // 0-simplex points come first and are the smallest roots, so block v
    // holds vertex v when every block holds exactly one vertex.
    let n0 = s.set(0).len();
    if partition.blocks().len() != n0 || (0..n0).any(|v| partition.block_of(point(0, v, 0)) != v) {
        return Err(Error::Structure("gluing did not identify every point with exactly one vertex".into()));
    }
    let space = glued.relabeled(s.set(0).elements().map(str::to_owned).collect())?;
    let witness = (0..=d)
        .map(|n| (0..s.set(n).len()).map(|x| (0..=n).map(|i| partition.block_of(point(n, x, i))).collect()).collect())
        .collect();
    Ok(RealizationResult { space, witness })
}

/// Truncated finite singular nerve with its tuples.
#[derive(Clone, Debug)]
pub struct NerveResult {
    pub set: TruncatedSimplicialFuzzySet,
    tuples: Vec<Vec<Vec<usize>>>,
}

impl NerveResult {
    /// Point indices of the `s`th `n`-simplex.
    pub fn tuple(&self, n: usize, s: usize) -> &[usize] {
        &self.tuples[n][s]
    }

    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        &self.tuples[n]
    }
}

/// Finite singular nerve of `m`, truncated at `max_dim`.
pub fn fin_singular_nerve(m: &FiniteEPMet, max_dim: usize) -> Result<NerveResult> {
    ensure_valid_space(m)?;
    singular_nerve(m, max_dim)
}

/// Nerve construction without the metric-axiom precondition; the local
/// metrics of the UMAP graph construction break the triangle inequality.
pub(crate) fn singular_nerve(m: &FiniteEPMet, max_dim: usize) -> Result<NerveResult> {
    let mut dims = Vec::with_capacity(max_dim + 1);
    let mut tuples = Vec::with_capacity(max_dim + 1);
    let mut cur: Vec<Vec<usize>> = vec![Vec::new()];
    for n in 0..=max_dim {
        // extend every surviving n-tuple by one point; a prefix is finite
        // whenever the whole tuple is
        cur = cur
            .iter()
            .flat_map(|t| (0..m.len()).map(move |p| t.iter().copied().chain([p]).collect::<Vec<_>>()))
            .filter(|t: &Vec<usize>| t.iter().all(|&p| m.d(p, *t.last().unwrap()).is_finite()))
            .collect();
        let unit = finite_metric_simplex(n, 1.0)?;
        let mut elems = Vec::with_capacity(cur.len());
        for t in &cur {
            let sigma = PointMap::new(&unit, m, t.clone())?;
            let Lipschitz::Constant(c) = best_lipschitz(&sigma) else {
                unreachable!("tuples are filtered to finite distances");
            };
            elems.push((t.iter().map(|&p| m.points()[p].clone()).collect(), (-c).exp()));
        }
        dims.push(elems);
        tuples.push(cur.clone());
    }
    let set = TruncatedSimplicialFuzzySet::from_tuples(max_dim, dims)?;
    Ok(NerveResult { set, tuples })
}

/// Weighted graph of all finite distances: edge `{x, y}` for `x ≠ y`,
/// weight `exp(−d(x, y))`.
pub fn one_skeleton(m: &FiniteEPMet) -> Result<FuzzyGraph> {
    let mut edges = Vec::new();
    for x in 0..m.len() {
        for y in x + 1..m.len() {
            if let Distance::Finite(d) = m.d(x, y) {
                edges.push((x, y, (-d).exp()));
            }
        }
    }
    FuzzyGraph::new(m.points().to_vec(), edges)
}

/// 1-skeleton of a simplicial fuzzy set: vertices `S_0`, one edge per pair
/// of distinct endpoints of a non-degenerate 1-simplex, weighted by the
/// largest such membership.
pub fn skeleton_graph(s: &TruncatedSimplicialFuzzySet) -> Result<FuzzyGraph> {
    if s.max_dim() < 1 {
        return Err(Error::DimensionMismatch("1-skeleton needs max_dim >= 1".into()));
    }
    let degenerate: HashSet<usize> = (0..s.set(0).len()).map(|v| s.degeneracy(0, 0, v)).collect();
    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for e in 0..s.set(1).len() {
        if degenerate.contains(&e) {
            continue;
        }
        let (u, v) = (s.face(1, 1, e), s.face(1, 0, e));
        if u == v {
            continue;
        }
        let w = edges.entry((u.min(v), u.max(v))).or_insert(0.0);
        *w = w.max(s.membership(1, e));
    }
    FuzzyGraph::new(s.set(0).elements().map(str::to_owned).collect(), edges.into_iter().map(|((u, v), w)| (u, v, w)))
}

/// Outcome of [`adjunction_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// Non-expansive maps from the realization to `M`.
    pub realization_maps: usize,
    /// Morphisms from `S` to the truncated nerve of `M`.
    pub simplicial_maps: usize,
    /// Whether the canonical translation between the two is a bijection.
    pub bijection: bool,
}

/// Enumerates both hom-sets of the realization/nerve adjunction on a small
/// instance and checks the canonical translation between them.
///
/// Refuses with [`Error::TooLarge`] when either search would exceed
/// [`ENUMERATION_LIMIT`] root candidates.
pub fn adjunction_check(s: &TruncatedSimplicialFuzzySet, m: &FiniteEPMet) -> Result<AdjunctionReport> {
    ensure_valid(s)?;
    ensure_valid_space(m)?;
    let real = fin_metric_realize(s)?;
    let nerve = fin_singular_nerve(m, s.max_dim())?;

    let pts = real.space.len();
    let left_size = (m.len() as u128).checked_pow(pts as u32).unwrap_or(u128::MAX);
    let right_size = (nerve.set.set(0).len() as u128).checked_pow(s.set(0).len() as u32).unwrap_or(u128::MAX);
    if left_size > ENUMERATION_LIMIT || right_size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge(format!(
            "{left_size} candidate point maps, {right_size} candidate vertex assignments (limit {ENUMERATION_LIMIT})"
        )));
    }

    let left = nonexpansive_maps(&real.space, m);
    let right = simplicial_maps(s, &nerve.set);
    let right_set: HashSet<&Vec<Vec<usize>>> = right.iter().collect();

    let index: Vec<HashMap<&[usize], usize>> =
        nerve.tuples.iter().map(|ts| ts.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect()).collect();
    let mut images = HashSet::with_capacity(left.len());
    let mut all_hit = true;
    for sigma in &left {
        let phi: Option<Vec<Vec<usize>>> = (0..=s.max_dim())
            .map(|n| {
                (0..s.set(n).len())
                    .map(|x| {
                        let t: Vec<usize> = (0..=n).map(|i| sigma[real.witness(n, x, i)]).collect();
                        index[n].get(t.as_slice()).copied()
                    })
                    .collect()
            })
            .collect();
        match phi {
            Some(phi) if right_set.contains(&phi) => {
                images.insert(phi);
            }
            _ => all_hit = false,
        }
    }
    let bijection = all_hit && images.len() == left.len() && left.len() == right.len();
    Ok(AdjunctionReport { realization_maps: left.len(), simplicial_maps: right.len(), bijection })
}

fn nonexpansive_maps(src: &FiniteEPMet, dst: &FiniteEPMet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dst.is_empty() && !src.is_empty() {
        return out;
    }
    let mut cur = vec![0usize; src.len()];
    loop {
        let f = PointMap::new(src, dst, cur.clone()).expect("indices in range");
        if is_nonexpansive(&f) {
            out.push(cur.clone());
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == cur.len() {
                return out;
            }
            cur[k] += 1;
            if cur[k] < dst.len() {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// All families `φ_n : S_n → T_n` commuting with every face and degeneracy
/// and never lowering membership, found by depth-first search over
/// elements in dimension order.
fn simplicial_maps(s: &TruncatedSimplicialFuzzySet, t: &TruncatedSimplicialFuzzySet) -> Vec<Vec<Vec<usize>>> {
    let d = s.max_dim();
    let order: Vec<(usize, usize)> = (0..=d).flat_map(|n| (0..s.set(n).len()).map(move |x| (n, x))).collect();
    // (r, j) with s^j(r) = x, per element x of S_n
    let mut deg_sources: Vec<Vec<Vec<(usize, usize)>>> = (0..=d).map(|n| vec![Vec::new(); s.set(n).len()]).collect();
    for n in 0..d {
        for j in 0..=n {
            for r in 0..s.set(n).len() {
                deg_sources[n + 1][s.degeneracy(n, j, r)].push((r, j));
            }
        }
    }

    struct Search<'a> {
        s: &'a TruncatedSimplicialFuzzySet,
        t: &'a TruncatedSimplicialFuzzySet,
        order: Vec<(usize, usize)>,
        deg_sources: Vec<Vec<Vec<(usize, usize)>>>,
        phi: Vec<Vec<usize>>,
        out: Vec<Vec<Vec<usize>>>,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize) {
            if k == self.order.len() {
                self.out.push(self.phi.clone());
                return;
            }
            let (n, x) = self.order[k];
            let mu = self.s.membership(n, x);
            for c in 0..self.t.set(n).len() {
                if self.t.membership(n, c) < mu {
                    continue;
                }
                let faces_ok = n == 0 || (0..=n).all(|i| self.t.face(n, i, c) == self.phi[n - 1][self.s.face(n, i, x)]);
                let degs_ok =
                    self.deg_sources[n][x].iter().all(|&(r, j)| self.t.degeneracy(n - 1, j, self.phi[n - 1][r]) == c);
                if faces_ok && degs_ok {
                    self.phi[n][x] = c;
                    self.run(k + 1);
                }
            }
        }
    }

    let mut search = Search {
        s,
        t,
        order,
        deg_sources,
        phi: (0..=d).map(|n| vec![usize::MAX; s.set(n).len()]).collect(),
        out: Vec::new(),
    };
    search.run(0);
    search.out
}

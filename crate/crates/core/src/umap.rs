//! Desk-scale UMAP: exact kNN, local fuzzy graphs, conorm union, spectral
//! initialization and a cross-entropy SGD layout.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::epmet::{Distance, FiniteEPMet};
use crate::error::{param, Error, Result};
use crate::fuzzy::{check_membership, TConorm};
use crate::graph::FuzzyGraph;
use crate::realization::{singular_nerve, skeleton_graph};

/// Degree assigned to isolated vertices in the normalized Laplacian.
pub const ISOLATED_DEGREE: f64 = 1e-12;
/// Bounds on the low-dimensional edge weight.
pub const NU_MIN: f64 = 1e-9;
pub const NU_MAX: f64 = 1.0 - 1e-9;
/// Per-coordinate bound on a single gradient step.
pub const GRADIENT_CLIP: f64 = 4.0;

/// `N ≥ 1` rows of equal length with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::DimensionMismatch("dataset has no rows".into()));
        };
        let dim = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {dim}", row.len())));
            }
            if let Some(x) = row.iter().find(|x| !x.is_finite()) {
                return Err(Error::DimensionMismatch(format!("row {i} has non-finite entry {x}")));
            }
        }
        Ok(Self { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Low-dimensional coordinates, one row per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    coords: Vec<Vec<f64>>,
}

impl Embedding {
    pub fn new(coords: Vec<Vec<f64>>) -> Result<Self> {
        let dim = coords.first().map_or(0, Vec::len);
        if coords.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch("embedding rows differ in length".into()));
        }
        if coords.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::DimensionMismatch("embedding has non-finite coordinates".into()));
        }
        Ok(Self { coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.coords.first().map_or(0, Vec::len)
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Vec<f64>> {
        self.coords
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: f64,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(param("k", format!("need 1 <= k < N = {n}, got {k}")));
    }
    Ok(())
}

fn neighbors_of(x: &Dataset, i: usize, k: usize) -> Vec<Neighbor> {
    let mut all: Vec<Neighbor> = (0..x.len())
        .filter(|&j| j != i)
        .map(|j| Neighbor { index: j, distance: euclidean(x.row(i), x.row(j)) })
        .collect();
    all.sort_by(|a, b| a.distance.total_cmp(&b.distance).then(a.index.cmp(&b.index)));
    all.truncate(k);
    all
}

/// Exact `k` nearest neighbors of every row, nearest first, ties broken by
/// smaller index.
pub fn knn(x: &Dataset, k: usize) -> Result<Vec<Vec<Neighbor>>> {
    check_k(x.len(), k)?;
    Ok((0..x.len()).map(|i| neighbors_of(x, i, k)).collect())
}

fn star(n: usize, i: usize, neighbors: &[Neighbor]) -> Result<FuzzyGraph> {
    let rho = neighbors[0].distance;
    FuzzyGraph::with_indexed_vertices(
        n,
        neighbors.iter().map(|nb| (i, nb.index, (-(nb.distance - rho).max(0.0)).exp())),
    )
}

/// Star graph from row `i` to its `k` nearest neighbors with weights
/// `exp(−max(0, d − ρ))`, `ρ` the nearest-neighbor distance.
pub fn local_fuzzy_graph(x: &Dataset, i: usize, k: usize) -> Result<FuzzyGraph> {
    check_k(x.len(), k)?;
    if i >= x.len() {
        return Err(Error::IndexOutOfRange { dim: x.len(), index: i });
    }
    star(x.len(), i, &neighbors_of(x, i, k))
}

/// Edge-wise left fold of `c` over the graphs, absent edges counting as 0.
pub fn fuzzy_union_graphs(graphs: &[FuzzyGraph], c: &TConorm) -> Result<FuzzyGraph> {
    let Some(first) = graphs.first() else {
        return Err(param("graphs", "need at least one graph"));
    };
    let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for g in graphs {
        if g.vertices() != first.vertices() {
            return Err(Error::DimensionMismatch("graphs have different vertex sets".into()));
        }
        for (&e, &w) in g.edge_map() {
            let cur = acc.entry(e).or_insert(0.0);
            *cur = c.apply(*cur, w);
        }
    }
    for &w in acc.values() {
        check_membership(w)?;
    }
    Ok(FuzzyGraph::from_parts(first.vertices().to_vec(), acc))
}

/// Spectral coordinates from the symmetric normalized Laplacian.
///
/// The trivial eigenvector `D^{1/2}·1` is deflated and the `d` eigenvectors
/// of smallest remaining eigenvalue are returned as columns, each signed so
/// its first non-negligible entry is positive.
pub fn spectral_embed(g: &FuzzyGraph, d: usize) -> Result<Embedding> {
    let n = g.vertex_count();
    if d == 0 || d >= n {
        return Err(param("d", format!("need 1 <= d < |V| = {n}, got {d}")));
    }
    let mut w = DMatrix::<f64>::zeros(n, n);
    for (u, v, x) in g.edges() {
        w[(u, v)] = x;
        w[(v, u)] = x;
    }
    let deg: Vec<f64> = (0..n)
        .map(|i| {
            let s = w.row(i).sum();
            if s > 0.0 {
                s
            } else {
                ISOLATED_DEGREE
            }
        })
        .collect();
    let inv_sqrt: Vec<f64> = deg.iter().map(|x| 1.0 / x.sqrt()).collect();
    let mut l = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            l[(i, j)] -= inv_sqrt[i] * w[(i, j)] * inv_sqrt[j];
        }
    }
    let v0 = DVector::from_iterator(n, deg.iter().map(|x| x.sqrt())).normalize();
    // spectrum of L lies in [0, 2]; move the trivial direction past it
    l += 3.0 * &v0 * v0.transpose();

    let eig = SymmetricEigen::new(l);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));

    let mut coords = vec![vec![0.0; d]; n];
    for (c, &k) in order.iter().take(d).enumerate() {
        let col = eig.eigenvectors.column(k);
        let sign = col.iter().find(|x| x.abs() > 1e-10).map_or(1.0, |x| x.signum());
        for i in 0..n {
            coords[i][c] = sign * col[i] + 0.0;
        }
    }
    Embedding::new(coords)
}

/// Low-dimensional weight `exp(−r)`, clamped.
pub fn low_dim_weight(r: f64) -> f64 {
    (-r).exp().clamp(NU_MIN, NU_MAX)
}

/// Cross-entropy contribution of one vertex pair with high-dimensional
/// weight `w ∈ [0, 1]`.
pub fn pair_loss(w: f64, yi: &[f64], yj: &[f64]) -> f64 {
    let nu = low_dim_weight(euclidean(yi, yj));
    let mut c = 0.0;
    if w > 0.0 {
        c += w * (w / nu).ln();
    }
    if w < 1.0 {
        c += (1.0 - w) * ((1.0 - w) / (1.0 - nu)).ln();
    }
    c
}

/// Gradient of [`pair_loss`] with respect to `yi`; the gradient with
/// respect to `yj` is its negation. `None` when the points coincide.
pub fn pair_gradient(w: f64, yi: &[f64], yj: &[f64]) -> Option<Vec<f64>> {
    let r = euclidean(yi, yj);
    if r < 1e-12 {
        return None;
    }
    let nu = low_dim_weight(r);
    let coef = (w - (1.0 - w) * nu / (1.0 - nu)) / r;
    Some(yi.iter().zip(yj).map(|(a, b)| coef * (a - b)).collect())
}

/// Total cross entropy between `g` and the embedding over all vertex pairs,
/// non-edges counting as weight 0.
pub fn cross_entropy(g: &FuzzyGraph, y: &Embedding) -> Result<f64> {
    check_shape(g, y)?;
    let n = y.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += pair_loss(g.weight(i, j).unwrap_or(0.0), y.point(i), y.point(j));
        }
    }
    Ok(total)
}

fn check_shape(g: &FuzzyGraph, y: &Embedding) -> Result<()> {
    if g.vertex_count() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} vertices, embedding has {} rows",
            g.vertex_count(),
            y.len()
        )));
    }
    Ok(())
}

fn step(y: &mut [f64], g: &[f64], alpha: f64) {
    for (a, b) in y.iter_mut().zip(g) {
        *a -= alpha * b.clamp(-GRADIENT_CLIP, GRADIENT_CLIP);
    }
}

/// Cross-entropy SGD layout with negative sampling.
///
/// Each epoch shuffles the edges, takes a gradient step on both endpoints
/// of every edge and then `neg` repulsive steps on its first endpoint
/// against vertices drawn uniformly from the rest. The learning rate decays
/// linearly from `lr` to 0.
pub fn sgd_layout(
    g: &FuzzyGraph,
    y0: &Embedding,
    n_epochs: usize,
    lr: f64,
    neg: usize,
    seed: u64,
) -> Result<Embedding> {
    check_shape(g, y0)?;
    if !(lr.is_finite() && lr > 0.0) {
        return Err(param("lr", format!("need a positive finite learning rate, got {lr}")));
    }
    let n = y0.len();
    let mut y = y0.coords().to_vec();
    let mut edges: Vec<(usize, usize, f64)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for epoch in 0..n_epochs {
        let alpha = lr * (1.0 - epoch as f64 / n_epochs as f64);
        edges.shuffle(&mut rng);
        for &(u, v, w) in &edges {
            if let Some(grad) = pair_gradient(w, &y[u], &y[v]) {
                step(&mut y[u], &grad, alpha);
                let back: Vec<f64> = grad.iter().map(|x| -x).collect();
                step(&mut y[v], &back, alpha);
            }
            if n <= 2 {
                continue;
            }
            for _ in 0..neg {
                let (lo, hi) = (u.min(v), u.max(v));
                let mut t = rng.random_range(0..n - 2);
                if t >= lo {
                    t += 1;
                }
                if t >= hi {
                    t += 1;
                }
                if let Some(grad) = pair_gradient(0.0, &y[u], &y[t]) {
                    step(&mut y[u], &grad, alpha);
                }
            }
        }
    }
    Embedding::new(y)
}

/// Pipeline parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UmapParams {
    pub d: usize,
    pub k: usize,
    pub n_epochs: usize,
    pub lr: f64,
    pub neg: usize,
    pub seed: u64,
}

impl Default for UmapParams {
    fn default() -> Self {
        Self { d: 2, k: 5, n_epochs: 200, lr: 1.0, neg: 5, seed: 0 }
    }
}

/// Probabilistic union of the local fuzzy graphs of all rows.
pub fn fuzzy_graph(x: &Dataset, k: usize) -> Result<FuzzyGraph> {
    let n = x.len();
    let locals = knn(x, k)?.iter().enumerate().map(|(i, nb)| star(n, i, nb)).collect::<Result<Vec<_>>>()?;
    fuzzy_union_graphs(&locals, &TConorm::Probabilistic)
}

/// Full pipeline: kNN, local graphs, probabilistic union, spectral
/// initialization, SGD layout.
pub fn umap(x: &Dataset, p: &UmapParams) -> Result<Embedding> {
    let n = x.len();
    check_k(n, p.k)?;
    if p.d == 0 || p.d >= n {
        return Err(param("d", format!("need 1 <= d < N = {n}, got {}", p.d)));
    }
    let g = fuzzy_graph(x, p.k)?;
    let y0 = spectral_embed(&g, p.d)?;
    sgd_layout(&g, &y0, p.n_epochs, p.lr, p.neg, p.seed)
}

/// The local extended metric around row `i`: `d − ρ` from `i` to each of
/// its `k` neighbors, 0 on the diagonal, ∞ elsewhere.
pub fn local_metric(x: &Dataset, i: usize, k: usize) -> Result<FiniteEPMet> {
    check_k(x.len(), k)?;
    if i >= x.len() {
        return Err(Error::IndexOutOfRange { dim: x.len(), index: i });
    }
    let nb = neighbors_of(x, i, k);
    let rho = nb[0].distance;
    let mut shifted = vec![None; x.len()];
    for v in &nb {
        shifted[v.index] = Some((v.distance - rho).max(0.0));
    }
    FiniteEPMet::from_fn((0..x.len()).map(|j| j.to_string()).collect(), |a, b| {
        if a == b {
            Distance::ZERO
        } else if a == i {
            shifted[b].map_or(Distance::Infinite, Distance::Finite)
        } else if b == i {
            shifted[a].map_or(Distance::Infinite, Distance::Finite)
        } else {
            Distance::Infinite
        }
    })
}

/// Compares the local fuzzy graph of row `i` with the 1-skeleton of the
/// finite singular nerve of its local metric, edge by edge within 1e-12.
pub fn nerve_bridge_check(x: &Dataset, i: usize, k: usize) -> Result<bool> {
    let local = local_fuzzy_graph(x, i, k)?;
    let nerve = singular_nerve(&local_metric(x, i, k)?, 1)?;
    let skeleton = skeleton_graph(&nerve.set)?;
    if skeleton.vertices() != local.vertices() || skeleton.edge_count() != local.edge_count() {
        return Ok(false);
    }
    let same = local.edges().all(|(u, v, w)| skeleton.weight(u, v).is_some_and(|s| (s - w).abs() <= 1e-12));
    Ok(same)
}

//! The simplex category and truncated simplicial classical fuzzy sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzy::{check_membership, ClassicalFuzzySet};

/// Separator used when a tuple of labels is rendered as one element label.
pub const TUPLE_SEP: char = '|';

/// A weakly monotone map `[source] → [target]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexMorphism {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl SimplexMorphism {
    pub fn new(source: usize, target: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != source + 1 {
            return Err(Error::DimensionMismatch(format!("{} values for a map out of [{source}]", values.len())));
        }
        if let Some(&v) = values.iter().find(|&&v| v > target) {
            return Err(Error::IndexOutOfRange { dim: target, index: v });
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Structure(format!("{values:?} is not weakly monotone")));
        }
        Ok(Self { source, target, values })
    }

    pub fn identity(n: usize) -> Self {
        Self { source: n, target: n, values: (0..=n).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.source] == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

impl fmt::Display for SimplexMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] {:?}", self.source, self.target, self.values)
    }
}

/// Face morphism `[n−1] → [n]` skipping `i`.
pub fn face(n: usize, i: usize) -> Result<SimplexMorphism> {
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange { dim: n, index: i });
    }
    let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
    Ok(SimplexMorphism { source: n - 1, target: n, values })
}

/// Degeneracy morphism `[n+1] → [n]` hitting `j` twice.
pub fn degeneracy(n: usize, j: usize) -> Result<SimplexMorphism> {
    if j > n {
        return Err(Error::IndexOutOfRange { dim: n, index: j });
    }
    let values = (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect();
    Ok(SimplexMorphism { source: n + 1, target: n, values })
}

/// The composite `g ∘ f`.
pub fn compose(g: &SimplexMorphism, f: &SimplexMorphism) -> Result<SimplexMorphism> {
    if f.target != g.source {
        return Err(Error::DimensionMismatch(format!("cannot compose {g} after {f}")));
    }
    Ok(SimplexMorphism { source: f.source, target: g.target, values: f.values.iter().map(|&k| g.values[k]).collect() })
}

/// All weakly monotone maps `[n] → [m]`, in lexicographic order.
pub fn hom_set(n: usize, m: usize) -> Vec<SimplexMorphism> {
    fn rec(n: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplexMorphism>) {
        if cur.len() == n + 1 {
            out.push(SimplexMorphism { source: n, target: m, values: cur.clone() });
            return;
        }
        for v in lo..=m {
            cur.push(v);
            rec(n, m, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, 0, &mut Vec::with_capacity(n + 1), &mut out);
    out
}

/// Canonical composite `δ_{i_1} ∘ … ∘ δ_{i_r} ∘ σ_{j_1} ∘ … ∘ σ_{j_s}` with
/// `i_1 > … > i_r` and `j_1 < … < j_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDegeneracyWord {
    source: usize,
    target: usize,
    faces: Vec<usize>,
    degeneracies: Vec<usize>,
}

impl FaceDegeneracyWord {
    pub fn new(source: usize, target: usize, faces: Vec<usize>, degeneracies: Vec<usize>) -> Result<Self> {
        if source + faces.len() != target + degeneracies.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} faces and {} degeneracies cannot map [{source}] to [{target}]",
                faces.len(),
                degeneracies.len()
            )));
        }
        if faces.windows(2).any(|w| w[0] <= w[1]) || faces.first().is_some_and(|&i| i > target) {
            return Err(Error::Structure(format!("face indices {faces:?} not strictly decreasing in [0, {target}]")));
        }
        if degeneracies.windows(2).any(|w| w[0] >= w[1]) || degeneracies.last().is_some_and(|&j| j >= source) {
            return Err(Error::Structure(format!(
                "degeneracy indices {degeneracies:?} not strictly increasing in [0, {source})"
            )));
        }
        Ok(Self { source, target, faces, degeneracies })
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty() && self.degeneracies.is_empty()
    }

    /// Composes the generators back into a single morphism.
    pub fn recompose(&self) -> SimplexMorphism {
        let mut acc = SimplexMorphism::identity(self.source);
        let mut dim = self.source;
        // rightmost generator acts first
        for &j in self.degeneracies.iter().rev() {
            dim -= 1;
            acc = compose(&degeneracy(dim, j).expect("valid word"), &acc).expect("valid word");
        }
        for &i in self.faces.iter().rev() {
            dim += 1;
            acc = compose(&face(dim, i).expect("valid word"), &acc).expect("valid word");
        }
        acc
    }
}

/// Unique face/degeneracy factorization of `f`.
pub fn factorize(f: &SimplexMorphism) -> FaceDegeneracyWord {
    let mut hit = vec![false; f.target + 1];
    for &v in &f.values {
        hit[v] = true;
    }
    let faces = (0..=f.target).rev().filter(|&i| !hit[i]).collect();
    let degeneracies = (0..f.source).filter(|&j| f.values[j] == f.values[j + 1]).collect();
    FaceDegeneracyWord { source: f.source, target: f.target, faces, degeneracies }
}

/// A simplicial classical fuzzy set truncated at dimension `max_dim`.
///
/// Elements are opaque labels; face and degeneracy actions are stored as
/// index tables. `faces[n][i][s]` is the index of `d^i_n(s)` in `S_{n−1}`;
/// `degeneracies[n][j][s]` is the index of `s^j_n(s)` in `S_{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSimplicialFuzzySet {
    max_dim: usize,
    sets: Vec<ClassicalFuzzySet>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Label-keyed action tables, keyed by `(n, index)`.
pub type ActionTables = BTreeMap<(usize, usize), BTreeMap<String, String>>;

impl TruncatedSimplicialFuzzySet {
    /// Builds from label tables. Every face `d^i_n` (`1 ≤ n ≤ D`, `i ≤ n`)
    /// and degeneracy `s^j_n` (`n < D`, `j ≤ n`) must be present and total.
    pub fn from_tables(
        max_dim: usize,
        sets: Vec<ClassicalFuzzySet>,
        faces: &ActionTables,
        degeneracies: &ActionTables,
    ) -> Result<Self> {
        if sets.len() != max_dim + 1 {
            return Err(Error::DimensionMismatch(format!("{} dimension sets for max_dim {max_dim}", sets.len())));
        }
        let table = |kind: &str,
                     n: usize,
                     k: usize,
                     from: &ClassicalFuzzySet,
                     to: &ClassicalFuzzySet,
                     tables: &ActionTables| {
            let t = tables.get(&(n, k)).ok_or_else(|| Error::Structure(format!("missing {kind} table {n},{k}")))?;
            if let Some(extra) = t.keys().find(|x| !from.contains(x)) {
                return Err(Error::Structure(format!("{kind} {n},{k} defined on unknown `{extra}`")));
            }
            from.elements()
                .map(|x| {
                    let image =
                        t.get(x).ok_or_else(|| Error::Structure(format!("{kind} {n},{k} undefined on `{x}`")))?;
                    to.index_of(image)
                        .ok_or_else(|| Error::Structure(format!("{kind} {n},{k} sends `{x}` to unknown `{image}`")))
                })
                .collect::<Result<Vec<usize>>>()
        };
        let mut face_idx = vec![Vec::new()];
        for n in 1..=max_dim {
            face_idx.push((0..=n).map(|i| table("face", n, i, &sets[n], &sets[n - 1], faces)).collect::<Result<_>>()?);
        }
        let mut deg_idx = Vec::new();
        for n in 0..max_dim {
            deg_idx.push(
                (0..=n)
                    .map(|j| table("degeneracy", n, j, &sets[n], &sets[n + 1], degeneracies))
                    .collect::<Result<_>>()?,
            );
        }
        deg_idx.push(Vec::new());
        for (key, _) in faces.iter().chain(degeneracies.iter()) {
            if key.0 > max_dim {
                return Err(Error::Structure(format!("action table {},{} above max_dim", key.0, key.1)));
            }
        }
        Ok(Self { max_dim, sets, faces: face_idx, degeneracies: deg_idx })
    }

    /// Builds from tuples of vertex labels: elements of `S_n` are
    /// `(n+1)`-tuples, faces drop an entry and degeneracies repeat one.
    /// Every face and degeneracy image must itself be listed.
    pub fn from_tuples(max_dim: usize, dims: Vec<Vec<(Vec<String>, f64)>>) -> Result<Self> {
        if dims.len() != max_dim + 1 {
            return Err(Error::DimensionMismatch(format!("{} dimensions for max_dim {max_dim}", dims.len())));
        }
        let mut index: Vec<HashMap<Vec<String>, usize>> = Vec::with_capacity(dims.len());
        let mut sets = Vec::with_capacity(dims.len());
        for (n, elems) in dims.iter().enumerate() {
            let mut idx = HashMap::with_capacity(elems.len());
            for (pos, (t, _)) in elems.iter().enumerate() {
                if t.len() != n + 1 {
                    return Err(Error::DimensionMismatch(format!("tuple {t:?} listed in dimension {n}")));
                }
                if t.iter().any(|v| v.contains(TUPLE_SEP)) {
                    return Err(Error::Structure(format!("vertex label in {t:?} contains `{TUPLE_SEP}`")));
                }
                idx.insert(t.clone(), pos);
            }
            sets.push(ClassicalFuzzySet::new(elems.iter().map(|(t, m)| (tuple_label(t), *m)))?);
            index.push(idx);
        }
        let lookup = |n: usize, t: Vec<String>| {
            index[n].get(&t).copied().ok_or_else(|| Error::Structure(format!("image {t:?} missing from dimension {n}")))
        };
        let mut faces = vec![Vec::new()];
        for (n, elems) in dims.iter().enumerate().skip(1) {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let col = elems
                    .iter()
                    .map(|(t, _)| {
                        let mut img = t.clone();
                        img.remove(i);
                        lookup(n - 1, img)
                    })
                    .collect::<Result<Vec<_>>>()?;
                per_i.push(col);
            }
            faces.push(per_i);
        }
        let mut degeneracies = Vec::with_capacity(max_dim + 1);
        for (n, elems) in dims.iter().enumerate().take(max_dim) {
            let mut per_j = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let col = elems
                    .iter()
                    .map(|(t, _)| {
                        let mut img = t.clone();
                        img.insert(j, t[j].clone());
                        lookup(n + 1, img)
                    })
                    .collect::<Result<Vec<_>>>()?;
                per_j.push(col);
            }
            degeneracies.push(per_j);
        }
        degeneracies.push(Vec::new());
        Ok(Self { max_dim, sets, faces, degeneracies })
    }

    /// Builds the smallest tuple-based set containing `generators`.
    ///
    /// Generators are vertex tuples with memberships. Missing faces are
    /// added with the largest membership among their cofaces; degenerate
    /// tuples up to `max_dim` are added with the membership of the tuple
    /// they degenerate from.
    pub fn from_generators<I>(max_dim: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<String>, f64)>,
    {
        // nondegenerate cores by dimension
        let mut cores: BTreeMap<Vec<String>, f64> = BTreeMap::new();
        for (t, m) in generators {
            check_membership(m)?;
            if t.is_empty() {
                return Err(Error::Structure("empty tuple".into()));
            }
            let core = reduce_tuple(&t);
            if core.len() > max_dim + 1 {
                return Err(Error::DimensionMismatch(format!("generator {t:?} above max_dim {max_dim}")));
            }
            let e = cores.entry(core).or_insert(m);
            *e = e.max(m);
        }
        for n in (1..=max_dim).rev() {
            let top: Vec<(Vec<String>, f64)> =
                cores.iter().filter(|(t, _)| t.len() == n + 1).map(|(t, &m)| (t.clone(), m)).collect();
            for (t, m) in top {
                for i in 0..=n {
                    let mut f = t.clone();
                    f.remove(i);
                    let e = cores.entry(reduce_tuple(&f)).or_insert(m);
                    *e = e.max(m);
                }
            }
        }
        let mut dims: Vec<Vec<(Vec<String>, f64)>> = vec![Vec::new(); max_dim + 1];
        for (core, &m) in &cores {
            let k = core.len() - 1;
            for (n, dim) in dims.iter_mut().enumerate().skip(k) {
                dim.extend(expansions(core, n + 1).into_iter().map(|t| (t, m)));
            }
        }
        for d in &mut dims {
            d.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Self::from_tuples(max_dim, dims)
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn set(&self, n: usize) -> &ClassicalFuzzySet {
        &self.sets[n]
    }

    pub fn sets(&self) -> &[ClassicalFuzzySet] {
        &self.sets
    }

    pub fn label(&self, n: usize, s: usize) -> &str {
        self.sets[n].label(s)
    }

    pub fn membership(&self, n: usize, s: usize) -> f64 {
        self.sets[n].membership_at(s)
    }

    /// Index of `d^i_n(s)` in `S_{n−1}`.
    pub fn face(&self, n: usize, i: usize, s: usize) -> usize {
        self.faces[n][i][s]
    }

    /// Index of `s^j_n(s)` in `S_{n+1}`.
    pub fn degeneracy(&self, n: usize, j: usize, s: usize) -> usize {
        self.degeneracies[n][j][s]
    }

    /// Total element count over all dimensions.
    pub fn total_len(&self) -> usize {
        self.sets.iter().map(ClassicalFuzzySet::len).sum()
    }

    /// Action `S(f)(s)` of an arbitrary morphism `f : [a] → [b]` on
    /// `s ∈ S_b`, via its canonical factorization. `None` if some
    /// intermediate dimension exceeds the truncation.
    pub fn act(&self, f: &SimplexMorphism, s: usize) -> Option<usize> {
        if f.source > self.max_dim || f.target > self.max_dim {
            return None;
        }
        let word = factorize(f);
        let mut dim = f.target;
        let mut cur = s;
        for &i in &word.faces {
            cur = self.faces[dim][i][cur];
            dim -= 1;
        }
        for &j in &word.degeneracies {
            cur = self.degeneracies[dim][j][cur];
            dim += 1;
        }
        Some(cur)
    }

    /// Index in `S_0` of vertex `k` of `s ∈ S_n`.
    pub fn vertex(&self, n: usize, s: usize, k: usize) -> usize {
        let f = SimplexMorphism { source: 0, target: n, values: vec![k] };
        self.act(&f, s).expect("vertex maps stay within the truncation")
    }

    /// Label-keyed face tables, for serialization.
    pub fn face_tables(&self) -> ActionTables {
        let mut out = ActionTables::new();
        for n in 1..=self.max_dim {
            for i in 0..=n {
                out.insert((n, i), self.label_table(n, &self.faces[n][i], n - 1));
            }
        }
        out
    }

    /// Label-keyed degeneracy tables, for serialization.
    pub fn degeneracy_tables(&self) -> ActionTables {
        let mut out = ActionTables::new();
        for n in 0..self.max_dim {
            for j in 0..=n {
                out.insert((n, j), self.label_table(n, &self.degeneracies[n][j], n + 1));
            }
        }
        out
    }

    fn label_table(&self, n: usize, col: &[usize], to: usize) -> BTreeMap<String, String> {
        col.iter().enumerate().map(|(s, &t)| (self.label(n, s).to_owned(), self.label(to, t).to_owned())).collect()
    }
}

/// Renders a tuple of vertex labels as a single element label.
pub fn tuple_label<S: AsRef<str>>(t: &[S]) -> String {
    let mut out = String::new();
    for (k, v) in t.iter().enumerate() {
        if k > 0 {
            out.push(TUPLE_SEP);
        }
        out.push_str(v.as_ref());
    }
    out
}

/// Splits a tuple label back into its entries.
pub fn parse_tuple_label(label: &str) -> Vec<String> {
    label.split(TUPLE_SEP).map(str::to_owned).collect()
}

/// Removes adjacent repetitions.
fn reduce_tuple(t: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(t.len());
    for v in t {
        if out.last() != Some(v) {
            out.push(v.clone());
        }
    }
    out
}

/// All tuples of length `len` whose adjacent-repetition reduction is `core`.
fn expansions(core: &[String], len: usize) -> Vec<Vec<String>> {
    // a surjective monotone map [len-1] -> [core.len()-1]
    hom_set(len - 1, core.len() - 1)
        .into_iter()
        .filter(SimplexMorphism::is_surjective)
        .map(|f| f.values.iter().map(|&k| core[k].clone()).collect())
        .collect()
}

/// `Hom_Δ([−], [m])` with constant membership `a`, truncated at `max_dim`.
pub fn standard_simplex(m: usize, a: f64, max_dim: usize) -> Result<TruncatedSimplicialFuzzySet> {
    check_membership(a)?;
    if max_dim < m {
        return Err(Error::DimensionMismatch(format!("truncation {max_dim} below simplex dimension {m}")));
    }
    let dims = (0..=max_dim)
        .map(|n| hom_set(n, m).into_iter().map(|f| (f.values.iter().map(usize::to_string).collect(), a)).collect())
        .collect();
    TruncatedSimplicialFuzzySet::from_tuples(max_dim, dims)
}

/// One failed simplicial identity or membership condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub dim: usize,
    pub element: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at dimension {} on `{}`: {}", self.relation, self.dim, self.element, self.detail)
    }
}

/// Checks all simplicial identities between generators within the
/// truncation, and that every action is membership non-decreasing.
pub fn validate(s: &TruncatedSimplicialFuzzySet) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = s.max_dim;
    let mut push = |relation: &str, dim: usize, x: usize, detail: String| {
        out.push(Violation { relation: relation.to_owned(), dim, element: s.label(dim, x).to_owned(), detail });
    };

    for n in 0..=d {
        for x in 0..s.sets[n].len() {
            let mu = s.membership(n, x);
            if n >= 1 {
                for i in 0..=n {
                    let y = s.face(n, i, x);
                    if s.membership(n - 1, y) < mu {
                        push("membership", n, x, format!("d{i} lowers membership {mu} to {}", s.membership(n - 1, y)));
                    }
                }
            }
            if n < d {
                for j in 0..=n {
                    let y = s.degeneracy(n, j, x);
                    if s.membership(n + 1, y) < mu {
                        push("membership", n, x, format!("s{j} lowers membership {mu} to {}", s.membership(n + 1, y)));
                    }
                }
            }

            // d_i d_j = d_{j-1} d_i, i < j
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = s.face(n - 1, i, s.face(n, j, x));
                        let rhs = s.face(n - 1, j - 1, s.face(n, i, x));
                        if lhs != rhs {
                            push("d i<j", n, x, format!("d{i}d{j} != d{}d{i}", j - 1));
                        }
                    }
                }
            }

            // s_i s_j = s_{j+1} s_i, i <= j
            if n + 2 <= d {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = s.degeneracy(n + 1, i, s.degeneracy(n, j, x));
                        let rhs = s.degeneracy(n + 1, j + 1, s.degeneracy(n, i, x));
                        if lhs != rhs {
                            push("s i<=j", n, x, format!("s{i}s{j} != s{}s{i}", j + 1));
                        }
                    }
                }
            }

            // d_i s_j
            if n < d {
                for j in 0..=n {
                    let up = s.degeneracy(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = s.face(n + 1, i, up);
                        let (name, rhs) = if i < j {
                            ("ds i<j", s.degeneracy(n - 1, j - 1, s.face(n, i, x)))
                        } else if i == j {
                            ("ds i=j", x)
                        } else if i == j + 1 {
                            ("ds i=j+1", x)
                        } else {
                            ("ds i>j+1", s.degeneracy(n - 1, j, s.face(n, i - 1, x)))
                        };
                        if lhs != rhs {
                            push(name, n, x, format!("d{i}s{j} mismatch"));
                        }
                    }
                }
            }
        }
    }
    out
}

//! Classical fuzzy and normed sets, their step-function (level set) form,
//! T-conorms and fuzzy unions.
//!
//! A classical fuzzy set is a finite carrier with membership in `(0, 1]`.
//! The level-set form stores, for each distinct membership value `a`, the
//! set `{x | μ(x) ≥ a}`. [`functor_m`] and [`functor_c`] convert between
//! the two and are mutually inverse on finite inputs.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{Error, Result};

/// Reparametrizes a membership in `(0, 1]` as a norm in `[0, ∞)`.
pub fn neg_log(m: f64) -> Result<f64> {
    check_membership(m)?;
    // -ln(1) is -0.0; normalize it to keep outputs sign-stable.
    Ok(-m.ln() + 0.0)
}

/// Inverse of [`neg_log`].
pub fn exp_neg(norm: f64) -> Result<f64> {
    if !(norm.is_finite() && norm >= 0.0) {
        return Err(Error::Norm(norm));
    }
    Ok((-norm).exp())
}

pub(crate) fn check_membership(m: f64) -> Result<()> {
    if m > 0.0 && m <= 1.0 {
        Ok(())
    } else {
        Err(Error::Membership(m))
    }
}

/// A finite set with a membership map into `(0, 1]`.
///
/// Iteration order is insertion order. Equality ignores order.
#[derive(Clone, Debug, Default)]
pub struct ClassicalFuzzySet {
    members: IndexMap<String, f64>,
}

impl PartialEq for ClassicalFuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.members.len() == other.members.len() && self.members.iter().all(|(k, v)| other.members.get(k) == Some(v))
    }
}

impl ClassicalFuzzySet {
    pub fn new<I, S>(members: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        for (label, m) in members {
            let label = label.into();
            check_membership(m)?;
            if map.insert(label.clone(), m).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
        }
        Ok(Self { members: map })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.members.contains_key(label)
    }

    pub fn membership(&self, label: &str) -> Option<f64> {
        self.members.get(label).copied()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.members.get_index_of(label)
    }

    pub fn label(&self, index: usize) -> &str {
        self.members.get_index(index).map(|(k, _)| k.as_str()).expect("index in range")
    }

    pub fn membership_at(&self, index: usize) -> f64 {
        self.members[index]
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.members.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.members.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The `−log` reparametrization.
    pub fn to_normed(&self) -> ClassicalNormedSet {
        ClassicalNormedSet { norms: self.members.iter().map(|(k, &m)| (k.clone(), -m.ln() + 0.0)).collect() }
    }
}

/// A finite set with a norm map into `[0, ∞)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClassicalNormedSet {
    norms: IndexMap<String, f64>,
}

impl ClassicalNormedSet {
    pub fn new<I, S>(norms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        for (label, v) in norms {
            let label = label.into();
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Norm(v));
            }
            if map.insert(label.clone(), v).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
        }
        Ok(Self { norms: map })
    }

    pub fn norm(&self, label: &str) -> Option<f64> {
        self.norms.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.norms.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn to_fuzzy(&self) -> ClassicalFuzzySet {
        ClassicalFuzzySet { members: self.norms.iter().map(|(k, &v)| (k.clone(), (-v).exp())).collect() }
    }
}

/// One breakpoint of a [`LevelFunction`]: the set of elements whose
/// membership is at least `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub a: f64,
    pub set: Vec<String>,
}

/// Step-function form of a finite fuzzy set.
///
/// Breakpoints are strictly decreasing, level sets are strictly nested, and
/// the set at any `a` in `(a_{k+1}, a_k]` is the `k`th level set. Below the
/// last breakpoint the set stays at its maximum size.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LevelFunction {
    levels: Vec<Level>,
}

impl LevelFunction {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        let mut prev: Option<&Level> = None;
        let mut seen: HashSet<&str> = HashSet::new();
        for level in &levels {
            check_membership(level.a)?;
            let mut here: HashSet<&str> = HashSet::new();
            for x in &level.set {
                if !here.insert(x.as_str()) {
                    return Err(Error::DuplicateLabel(x.clone()));
                }
            }
            if let Some(p) = prev {
                if level.a >= p.a {
                    return Err(Error::LevelFunction(format!(
                        "breakpoints not strictly decreasing: {} after {}",
                        level.a, p.a
                    )));
                }
            }
            if let Some(missing) = seen.iter().find(|x| !here.contains(*x)) {
                return Err(Error::LevelFunction(format!("level set at {} drops `{missing}`", level.a)));
            }
            if here.len() == seen.len() {
                return Err(Error::LevelFunction(format!("level set at {} adds no element", level.a)));
            }
            seen = here;
            prev = Some(level);
        }
        Ok(Self { levels })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The set `S^{≥a}`.
    pub fn at(&self, a: f64) -> &[String] {
        self.levels.iter().rev().find(|l| l.a >= a).map(|l| l.set.as_slice()).unwrap_or(&[])
    }

    /// Elements whose true level is exactly the `k`th breakpoint.
    pub fn exact_level(&self, k: usize) -> Vec<&str> {
        let below: HashSet<&str> = match k {
            0 => HashSet::new(),
            _ => self.levels[k - 1].set.iter().map(String::as_str).collect(),
        };
        self.levels[k].set.iter().map(String::as_str).filter(|x| !below.contains(x)).collect()
    }

    /// Highest breakpoint containing `x`.
    pub fn true_level(&self, x: &str) -> Option<f64> {
        self.levels.iter().find(|l| l.set.iter().any(|y| y == x)).map(|l| l.a)
    }

    /// Upper bound on the size of every level set.
    pub fn bound(&self) -> usize {
        self.levels.last().map_or(0, |l| l.set.len())
    }

    /// Level at and below which every set has maximum size.
    pub fn stabilization_level(&self) -> Option<f64> {
        self.levels.last().map(|l| l.a)
    }

    /// Gluing on a finite cover: the set at `sup(cover)` must equal the
    /// intersection of the sets over the cover.
    pub fn glues_on_cover(&self, cover: &[f64]) -> bool {
        let Some(sup) = cover.iter().copied().reduce(f64::max) else {
            return true;
        };
        let top: HashSet<&str> = self.at(sup).iter().map(String::as_str).collect();
        let meet = cover
            .iter()
            .map(|&a| self.at(a).iter().map(String::as_str).collect::<HashSet<_>>())
            .reduce(|acc, s| acc.intersection(&s).copied().collect())
            .unwrap_or_default();
        top == meet
    }
}

/// Level-set form of a classical fuzzy set.
pub fn functor_m(x: &ClassicalFuzzySet) -> LevelFunction {
    let mut values: Vec<f64> = x.members.values().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values.dedup();
    let mut levels = Vec::with_capacity(values.len());
    let mut set: Vec<String> = Vec::new();
    for a in values {
        set.extend(x.members.iter().filter(|(_, &m)| m == a).map(|(k, _)| k.clone()));
        levels.push(Level { a, set: set.clone() });
    }
    LevelFunction { levels }
}

/// Classical fuzzy set of a level function: each element gets its true level.
pub fn functor_c(s: &LevelFunction) -> ClassicalFuzzySet {
    let mut members = IndexMap::new();
    for (k, level) in s.levels.iter().enumerate() {
        for x in s.exact_level(k) {
            members.insert(x.to_owned(), level.a);
        }
    }
    ClassicalFuzzySet { members }
}

/// Whether `C(M(X)) = X` with exact membership equality.
pub fn round_trip_check(x: &ClassicalFuzzySet) -> bool {
    functor_c(&functor_m(x)) == *x
}

/// Whether `f` is a morphism of fuzzy sets, i.e. `μ_Y(f(x)) ≥ μ_X(x)`.
pub fn is_fuzzy_morphism(f: &BTreeMap<String, String>, x: &ClassicalFuzzySet, y: &ClassicalFuzzySet) -> Result<bool> {
    let mut ok = true;
    for (label, m) in x.iter() {
        let image = f.get(label).ok_or_else(|| Error::Structure(format!("map undefined on `{label}`")))?;
        let my = y.membership(image).ok_or_else(|| Error::UnknownLabel(image.clone()))?;
        ok &= my >= m;
    }
    Ok(ok)
}

/// Two-place function on `[0, 1]` used to form fuzzy unions.
#[derive(Clone)]
pub enum TConorm {
    Max,
    /// `x + y − xy`
    Probabilistic,
    Custom {
        name: String,
        f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for TConorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single failed axiom instance found by [`TConorm::check_axioms`].
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub at: Vec<f64>,
}

impl TConorm {
    pub fn custom(name: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        TConorm::Custom { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        match self {
            TConorm::Max => "max",
            TConorm::Probabilistic => "probabilistic",
            TConorm::Custom { name, .. } => name,
        }
    }

    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            TConorm::Max => x.max(y),
            TConorm::Probabilistic => x + y - x * y,
            TConorm::Custom { f, .. } => f(x, y),
        }
    }

    /// Samples symmetry, monotonicity, associativity and the boundary
    /// condition `c(x, 0) = x` on all pairs/triples drawn from `grid`.
    pub fn check_axioms(&self, grid: &[f64], tol: f64) -> Vec<AxiomViolation> {
        let c = |x, y| self.apply(x, y);
        let mut out = Vec::new();
        for &x in grid {
            if (c(x, 0.0) - x).abs() > tol {
                out.push(AxiomViolation { axiom: "boundary", at: vec![x] });
            }
            for &y in grid {
                if (c(x, y) - c(y, x)).abs() > tol {
                    out.push(AxiomViolation { axiom: "symmetry", at: vec![x, y] });
                }
                for &z in grid {
                    if (c(x, c(y, z)) - c(c(x, y), z)).abs() > tol {
                        out.push(AxiomViolation { axiom: "associativity", at: vec![x, y, z] });
                    }
                    if y <= z && c(x, y) > c(x, z) + tol {
                        out.push(AxiomViolation { axiom: "monotonicity", at: vec![x, y, z] });
                    }
                }
            }
        }
        out
    }
}

/// Union of two classical fuzzy sets. Elements missing from one side count
/// as membership 0 there.
pub fn fuzzy_union(a: &ClassicalFuzzySet, b: &ClassicalFuzzySet, c: &TConorm) -> Result<ClassicalFuzzySet> {
    let mut members = IndexMap::with_capacity(a.len() + b.len());
    let labels = a.members.keys().chain(b.members.keys().filter(|k| !a.members.contains_key(*k)));
    for label in labels {
        let ma = a.membership(label).unwrap_or(0.0);
        let mb = b.membership(label).unwrap_or(0.0);
        let m = c.apply(ma, mb);
        check_membership(m)?;
        members.insert(label.clone(), m);
    }
    Ok(ClassicalFuzzySet { members })
}

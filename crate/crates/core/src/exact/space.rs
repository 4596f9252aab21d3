use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::echelon::Echelon;
use super::{Matrix, Scalar, Vector};
use crate::error::{Error, Result};

/// Finite-dimensional space with a named, ordered basis of distinct labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Space {
    name: Arc<str>,
    labels: Arc<[String]>,
}

impl Space {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        let name: String = name.into();
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::rejected(format!("space {name}"), format!("duplicate basis label {l:?}")));
            }
        }
        Ok(Space { name: name.into(), labels: labels.into() })
    }

    /// Basis labelled `prefix0, prefix1, ...`.
    pub fn indexed(name: impl Into<String>, prefix: &str, dim: usize) -> Self {
        let labels: Vec<String> = (0..dim).map(|i| format!("{prefix}{i}")).collect();
        Space { name: name.into().into(), labels: labels.into() }
    }

    /// The ground field as a 1-dimensional space labelled `k`.
    pub fn scalars() -> Self {
        Space { name: "k".into(), labels: vec!["k".to_string()].into() }
    }

    pub fn zero(name: impl Into<String>) -> Self {
        Space { name: name.into().into(), labels: Vec::new().into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Space { name: name.into().into(), labels: self.labels.clone() }
    }

    /// Tensor product with lexicographic basis `a⊗b`.
    pub fn tensor(&self, other: &Space) -> Space {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in self.labels.iter() {
            for b in other.labels.iter() {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        Space { name: format!("{}⊗{}", self.name, other.name).into(), labels: labels.into() }
    }

    /// Same basis labels, ignoring the name.
    pub fn same_basis(&self, other: &Space) -> bool {
        self.labels == other.labels
    }

    pub(crate) fn describe(&self) -> String {
        self.name.to_string()
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({}, dim {})", self.name, self.dim())
    }
}

/// Subspace of `k^n` with a chosen basis and a coordinate solver for it.
///
/// The basis consists of the spanning vectors that were independent of
/// their predecessors, kept in insertion order.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    chosen: Vec<usize>,
    offered: usize,
    ech: Echelon,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), chosen: Vec::new(), offered: 0, ech: Echelon::tracked(ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(|i| Vector::basis(ambient, i)))
    }

    pub fn spanned_by<I: IntoIterator<Item = Vector>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.push(v);
        }
        s
    }

    /// Offers `v` as a further spanning vector; returns whether it enlarged the subspace.
    pub fn push(&mut self, v: Vector) -> bool {
        assert_eq!(v.dim(), self.ambient, "vector does not live in the ambient space");
        let idx = self.offered;
        self.offered += 1;
        if self.ech.insert_tracked(&v, self.basis.len()) {
            self.basis.push(v);
            self.chosen.push(idx);
            true
        } else {
            false
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Positions, among all vectors offered so far, of the ones kept as basis.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.ech.contains(v)
    }

    /// Coordinates of `v` in the chosen basis, `None` if `v` lies outside.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        self.ech.combination(v).map(|e| Vector::from_entries(self.dim(), e))
    }

    pub fn from_coords(&self, c: &Vector) -> Vector {
        assert_eq!(c.dim(), self.dim(), "coordinate vector has wrong length");
        Vector::linear_combination(self.ambient, c.iter().map(|(i, x)| (x.clone(), &self.basis[i])))
    }

    /// Ambient-by-dim matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.ambient, self.basis.clone())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Canonical basis: reduced row echelon rows.
    pub fn reduced_basis(&self) -> Vec<Vector> {
        self.ech.rref()
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.apply(v)))
    }

    /// Matrix of `m` restricted to this subspace, in basis coordinates, or `None` if not invariant.
    pub fn restrict(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = self.basis.iter().map(|v| self.coords(&m.apply(v))).collect();
        cols.map(|c| Matrix::from_columns(self.dim(), c))
    }

    /// Matrix of a map from this subspace into `target`, with columns in `target`-coordinates.
    pub fn corestrict(&self, target: &Subspace, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = self.basis.iter().map(|v| target.coords(&m.apply(v))).collect();
        cols.map(|c| Matrix::from_columns(target.dim(), c))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::spanned_by(self.ambient, self.basis.iter().chain(other.basis.iter()).cloned())
    }
}

/// Smallest subspace containing `seeds` and stable under every generator.
pub fn span_closure<I: IntoIterator<Item = Vector>>(ambient: usize, seeds: I, generators: &[Matrix]) -> Subspace {
    let mut sub = Subspace::zero(ambient);
    let mut frontier = 0;
    for s in seeds {
        sub.push(s);
    }
    while frontier < sub.dim() {
        let v = sub.basis()[frontier].clone();
        frontier += 1;
        for g in generators {
            sub.push(g.apply(&v));
        }
    }
    sub
}

/// Linear map determined by its values on spanning vectors.
///
/// `pairs` lists `(source, image)`; the map is defined on the span of the
/// sources. Fails with the index of the first pair whose image contradicts
/// the earlier ones.
#[derive(Clone, Debug)]
pub struct LinearExtension {
    pub domain: Subspace,
    /// Images of `domain.basis()`, one column each.
    pub images: Matrix,
}

impl LinearExtension {
    pub fn build(source_dim: usize, target_dim: usize, pairs: &[(Vector, Vector)]) -> std::result::Result<Self, usize> {
        let mut domain = Subspace::zero(source_dim);
        let mut images = Vec::new();
        let mut rest = Vec::new();
        for (k, (s, t)) in pairs.iter().enumerate() {
            assert_eq!(t.dim(), target_dim, "image has wrong dimension");
            if domain.push(s.clone()) {
                images.push(t.clone());
            } else {
                rest.push(k);
            }
        }
        let images = Matrix::from_columns(target_dim, images);
        for k in rest {
            let c = domain.coords(&pairs[k].0).expect("dependent source lies in span");
            if images.apply(&c) != pairs[k].1 {
                return Err(k);
            }
        }
        Ok(LinearExtension { domain, images })
    }

    pub fn apply(&self, v: &Vector) -> Option<Vector> {
        self.domain.coords(v).map(|c| self.images.apply(&c))
    }

    /// Full matrix when the sources span the whole source space.
    pub fn to_matrix(&self) -> Option<Matrix> {
        let n = self.domain.ambient_dim();
        if self.domain.dim() != n {
            return None;
        }
        let cols = (0..n).map(|i| self.apply(&Vector::basis(n, i)).expect("spanning")).collect();
        Some(Matrix::from_columns(self.images.nrows(), cols))
    }
}

/// Scalar helper for building coordinate vectors from `(index, i64)` pairs.
pub fn sparse(dim: usize, items: &[(usize, i64)]) -> Vector {
    Vector::from_entries(dim, items.iter().map(|&(i, v)| (i, Scalar::from_int(v))))
}

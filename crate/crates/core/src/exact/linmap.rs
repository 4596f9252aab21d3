use super::{Matrix, Space, Subspace, Vector};
use crate::error::{Error, Result};

/// Linear map between labelled spaces; column `j` is the image of domain basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: Space,
    codomain: Space,
    matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: Space, codomain: Space, matrix: Matrix) -> Result<Self> {
        if matrix.ncols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                left: format!("domain {}", domain.describe()),
                left_dim: domain.dim(),
                right: "matrix columns".into(),
                right_dim: matrix.ncols(),
            });
        }
        if matrix.nrows() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                left: format!("codomain {}", codomain.describe()),
                left_dim: codomain.dim(),
                right: "matrix rows".into(),
                right_dim: matrix.nrows(),
            });
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    pub fn identity(space: &Space) -> Self {
        LinMap { domain: space.clone(), codomain: space.clone(), matrix: Matrix::identity(space.dim()) }
    }

    pub fn zero(domain: &Space, codomain: &Space) -> Self {
        LinMap { domain: domain.clone(), codomain: codomain.clone(), matrix: Matrix::zeros(codomain.dim(), domain.dim()) }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.domain.dim() {
            return Err(Error::DimensionMismatch {
                left: format!("domain {}", self.domain.describe()),
                left_dim: self.domain.dim(),
                right: "argument".into(),
                right_dim: v.dim(),
            });
        }
        Ok(self.matrix.apply(v))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if !inner.codomain.same_basis(&self.domain) {
            return Err(Error::SpaceMismatch { codomain: inner.codomain.describe(), domain: self.domain.describe() });
        }
        Ok(LinMap { domain: inner.domain.clone(), codomain: self.codomain.clone(), matrix: self.matrix.mul(&inner.matrix) })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Some preimage of `target` under `map`, or `None` when `target` is not in the image.
pub fn solve(map: &LinMap, target: &Vector) -> Result<Option<Vector>> {
    if target.dim() != map.codomain().dim() {
        return Err(Error::DimensionMismatch {
            left: format!("codomain {}", map.codomain().describe()),
            left_dim: map.codomain().dim(),
            right: "target".into(),
            right_dim: target.dim(),
        });
    }
    Ok(solve_matrix(map.matrix(), target))
}

pub fn solve_matrix(m: &Matrix, target: &Vector) -> Option<Vector> {
    let image = Subspace::spanned_by(m.nrows(), m.columns().iter().cloned());
    let c = image.coords(target)?;
    let entries = c.iter().map(|(k, x)| (image.chosen()[k], x.clone()));
    Some(Vector::from_entries(m.ncols(), entries))
}

pub fn kernel_basis(map: &LinMap) -> Vec<Vector> {
    map.matrix().kernel()
}

pub fn tensor(a: &LinMap, b: &LinMap) -> LinMap {
    LinMap {
        domain: a.domain.tensor(&b.domain),
        codomain: a.codomain.tensor(&b.codomain),
        matrix: a.matrix.kron(&b.matrix),
    }
}

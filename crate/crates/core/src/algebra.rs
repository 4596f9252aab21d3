//! Finite-dimensional algebras by structure constants.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{LinMap, Matrix, Space, Subspace, Vector};
use crate::groupoid::{Component, Groupoid};

/// Products of basis pairs: entry `i * dim + j` is `x_i · x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    dim: usize,
    products: Vec<Vector>,
}

impl MulTable {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.dim(), dim, "product has wrong dimension");
                products.push(v);
            }
        }
        MulTable { dim, products }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim + j]
    }

    /// Overwrites one product; used to build deliberately broken tables.
    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.dim(), self.dim);
        self.products[i * self.dim + j] = v;
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut items = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let xy = x * y;
                items.extend(self.basis_product(i, j).iter().map(|(k, z)| (k, z * &xy)));
            }
        }
        Vector::from_entries(self.dim, items)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &Vector) -> Matrix {
        Matrix::from_columns(self.dim, (0..self.dim).map(|k| self.mul(a, &Vector::basis(self.dim, k))).collect())
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult(&self, a: &Vector) -> Matrix {
        Matrix::from_columns(self.dim, (0..self.dim).map(|k| self.mul(&Vector::basis(self.dim, k), a)).collect())
    }

    fn left_basis_mult(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.dim, (0..self.dim).map(|k| self.basis_product(i, k).clone()).collect())
    }
}

/// Basis triples `(i, j, k)` with `(x_i x_j) x_k ≠ x_i (x_j x_k)`.
pub fn check_associativity(table: &MulTable) -> Vec<(usize, usize, usize)> {
    let n = table.dim;
    let lefts: Vec<Matrix> = (0..n).into_par_iter().map(|i| table.left_basis_mult(i)).collect();
    let mut out: Vec<(usize, usize, usize)> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|ij| {
            let (i, j) = (ij / n, ij % n);
            let xy = table.basis_product(i, j);
            let mut bad = Vec::new();
            for k in 0..n {
                let lhs = Vector::linear_combination(n, xy.iter().map(|(l, c)| (c.clone(), table.basis_product(l, k))));
                let rhs = lefts[i].apply(table.basis_product(j, k));
                if lhs != rhs {
                    bad.push((i, j, k));
                }
            }
            bad
        })
        .collect();
    out.sort_unstable();
    out
}

/// Associative algebra without a required unit.
#[derive(Clone, Debug)]
pub struct NonUnitalAlgebra {
    space: Space,
    table: MulTable,
}

impl NonUnitalAlgebra {
    pub fn new(space: Space, table: MulTable) -> Result<Self> {
        check_dims(&space, &table)?;
        let bad = check_associativity(&table);
        if let Some(&(i, j, k)) = bad.first() {
            return Err(Error::rejected(
                format!("algebra {}", space.name()),
                format!("{} non-associative triples, first ({i}, {j}, {k})", bad.len()),
            ));
        }
        Ok(NonUnitalAlgebra { space, table })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.table.mul(a, b)
    }

    /// A two-sided unit, if one exists.
    pub fn find_unit(&self) -> Option<Vector> {
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        // unknown u: u·x_k = x_k and x_k·u = x_k, linear in u
        for k in 0..n {
            let l = Matrix::from_columns(n, (0..n).map(|i| self.table.basis_product(i, k).clone()).collect());
            let r = Matrix::from_columns(n, (0..n).map(|i| self.table.basis_product(k, i).clone()).collect());
            rows.push(l);
            rhs.push(Vector::basis(n, k));
            rows.push(r);
            rhs.push(Vector::basis(n, k));
        }
        let stacked = stack_rows(&rows);
        let target = Vector::from_entries(
            stacked.nrows(),
            rhs.iter().enumerate().flat_map(|(b, v)| v.iter().map(move |(i, x)| (b * n + i, x.clone()))),
        );
        crate::exact::solve_matrix(&stacked, &target)
    }

    pub fn into_unital(self) -> Result<Algebra> {
        let unit = self
            .find_unit()
            .ok_or_else(|| Error::rejected(format!("algebra {}", self.space.name()), "no two-sided unit"))?;
        Algebra::new(self.space, self.table, unit)
    }
}

fn stack_rows(blocks: &[Matrix]) -> Matrix {
    let ncols = blocks.first().map_or(0, Matrix::ncols);
    let nrows: usize = blocks.iter().map(Matrix::nrows).sum();
    let mut cols = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut items = Vec::new();
        let mut off = 0;
        for b in blocks {
            items.extend(b.col(j).iter().map(|(i, x)| (i + off, x.clone())));
            off += b.nrows();
        }
        cols.push(Vector::from_entries(nrows, items));
    }
    Matrix::from_columns(nrows, cols)
}

fn check_dims(space: &Space, table: &MulTable) -> Result<()> {
    if space.dim() != table.dim {
        return Err(Error::DimensionMismatch {
            left: format!("space {}", space.name()),
            left_dim: space.dim(),
            right: "structure constants".into(),
            right_dim: table.dim,
        });
    }
    Ok(())
}

/// Associative unital algebra, validated at construction.
#[derive(Clone, Debug)]
pub struct Algebra {
    space: Space,
    table: MulTable,
    unit: Vector,
    groupoid: Option<Arc<Groupoid>>,
}

impl Algebra {
    pub fn new(space: Space, table: MulTable, unit: Vector) -> Result<Self> {
        check_dims(&space, &table)?;
        let what = || format!("algebra {}", space.name());
        if unit.dim() != space.dim() {
            return Err(Error::rejected(what(), "unit has wrong dimension"));
        }
        let bad = check_associativity(&table);
        if let Some(&(i, j, k)) = bad.first() {
            return Err(Error::rejected(
                what(),
                format!(
                    "{} non-associative triples, first ({}, {}, {})",
                    bad.len(),
                    space.label(i),
                    space.label(j),
                    space.label(k)
                ),
            ));
        }
        for k in 0..space.dim() {
            let x = Vector::basis(space.dim(), k);
            if table.mul(&unit, &x) != x || table.mul(&x, &unit) != x {
                return Err(Error::rejected(what(), format!("unit law fails at {}", space.label(k))));
            }
        }
        Ok(Algebra { space, table, unit, groupoid: None })
    }

    pub fn from_fn(space: Space, unit: Vector, f: impl FnMut(usize, usize) -> Vector) -> Result<Self> {
        let table = MulTable::from_fn(space.dim(), f);
        Algebra::new(space, table, unit)
    }

    /// The ground field as an algebra.
    pub fn scalars() -> Self {
        Algebra::from_fn(Space::scalars(), Vector::basis(1, 0), |_, _| Vector::basis(1, 0)).expect("k is an algebra")
    }

    pub fn with_groupoid(mut self, g: Arc<Groupoid>) -> Self {
        self.groupoid = Some(g);
        self
    }

    pub fn groupoid(&self) -> Option<&Arc<Groupoid>> {
        self.groupoid.as_ref()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.table.mul(a, b)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        self.table.basis_product(i, j)
    }

    pub fn left_mult(&self, a: &Vector) -> Matrix {
        self.table.left_mult(a)
    }

    pub fn right_mult(&self, a: &Vector) -> Matrix {
        self.table.right_mult(a)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Same product with the factors swapped.
    pub fn opposite(&self) -> Algebra {
        let t = &self.table;
        Algebra {
            space: self.space.renamed(format!("{}^op", self.space.name())),
            table: MulTable::from_fn(self.dim(), |i, j| t.basis_product(j, i).clone()),
            unit: self.unit.clone(),
            groupoid: None,
        }
    }

    /// Tensor product algebra with lexicographic basis.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        Algebra {
            space: self.space.tensor(&other.space),
            table: MulTable::from_fn(n * m, |p, q| {
                self.basis_product(p / m, q / m).tensor(other.basis_product(p % m, q % m))
            }),
            unit: self.unit.tensor(&other.unit),
            groupoid: None,
        }
    }

    /// Left regular module.
    pub fn regular_module(&self) -> LeftModuleStr {
        let action = (0..self.dim()).map(|i| self.left_mult(&self.basis(i))).collect();
        LeftModuleStr { algebra: self.clone(), carrier: self.space.clone(), action }
    }
}

/// Pairs `(i, j)` with `f(x_i x_j) ≠ f(x_i) f(x_j)`, plus a unit flag.
pub fn algebra_hom_violations(f: &Matrix, a: &Algebra, b: &Algebra) -> (Vec<(usize, usize)>, bool) {
    assert_eq!((f.nrows(), f.ncols()), (b.dim(), a.dim()), "map does not match the algebras");
    let n = a.dim();
    let images: Vec<Vector> = (0..n).map(|i| f.col(i).clone()).collect();
    let mut bad: Vec<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .filter_map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let lhs = f.apply(a.basis_product(i, j));
            let rhs = b.mul(&images[i], &images[j]);
            (lhs != rhs).then_some((i, j))
        })
        .collect();
    bad.sort_unstable();
    let unit_ok = f.apply(a.unit()) == *b.unit();
    (bad, unit_ok)
}

pub fn is_algebra_hom(f: &Matrix, a: &Algebra, b: &Algebra) -> bool {
    let (bad, unit_ok) = algebra_hom_violations(f, a, b);
    bad.is_empty() && unit_ok
}

/// Verified unital algebra homomorphism.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    map: LinMap,
}

impl AlgebraHom {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        let map = LinMap::new(source.space().clone(), target.space().clone(), matrix)?;
        let (bad, unit_ok) = algebra_hom_violations(map.matrix(), &source, &target);
        if let Some(&(i, j)) = bad.first() {
            return Err(Error::rejected(
                "algebra homomorphism",
                format!("not multiplicative on ({}, {})", source.space().label(i), source.space().label(j)),
            ));
        }
        if !unit_ok {
            return Err(Error::rejected("algebra homomorphism", "unit not preserved"));
        }
        Ok(AlgebraHom { source, target, map })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }
}

pub fn is_idempotent_family_orthogonal(elems: &[Vector], a: &Algebra) -> bool {
    elems.iter().enumerate().all(|(i, x)| {
        elems.iter().enumerate().all(|(j, y)| {
            let p = a.mul(x, y);
            if i == j {
                p == *x
            } else {
                p.is_zero()
            }
        })
    })
}

pub fn two_sided_ideal_check(s: &Subspace, a: &Algebra) -> bool {
    assert_eq!(s.ambient_dim(), a.dim(), "subspace does not live in the algebra");
    (0..a.dim()).all(|i| {
        let x = a.basis(i);
        s.basis().iter().all(|v| s.contains(&a.mul(&x, v)) && s.contains(&a.mul(v, &x)))
    })
}

/// Connected components of the groupoid an algebra was built from.
pub fn component_decomposition(a: &Algebra) -> Result<Vec<Component>> {
    let g = a
        .groupoid()
        .ok_or_else(|| Error::Unsupported(format!("algebra {} has no groupoid provenance", a.space().name())))?;
    Ok(g.components())
}

/// Left module over an algebra; `action[i]` is the operator of basis element `i`.
#[derive(Clone, Debug)]
pub struct LeftModuleStr {
    algebra: Algebra,
    carrier: Space,
    action: Vec<Matrix>,
}

impl LeftModuleStr {
    pub fn new(algebra: Algebra, carrier: Space, action: Vec<Matrix>) -> Result<Self> {
        let what = || format!("module {}", carrier.name());
        let d = carrier.dim();
        if action.len() != algebra.dim() || action.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::rejected(what(), "action operators have the wrong shape"));
        }
        let n = algebra.dim();
        let op = |v: &Vector| Matrix::linear_combination(d, d, v.iter().map(|(i, c)| (c.clone(), &action[i])));
        for i in 0..n {
            for j in 0..n {
                if action[i].mul(&action[j]) != op(algebra.basis_product(i, j)) {
                    return Err(Error::rejected(
                        what(),
                        format!("action not associative at ({}, {})", algebra.space().label(i), algebra.space().label(j)),
                    ));
                }
            }
        }
        if !op(algebra.unit()).is_identity() {
            return Err(Error::rejected(what(), "unit does not act as identity"));
        }
        Ok(LeftModuleStr { algebra, carrier, action })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn operator(&self, a: &Vector) -> Matrix {
        let d = self.carrier.dim();
        Matrix::linear_combination(d, d, a.iter().map(|(i, c)| (c.clone(), &self.action[i])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    fn group_algebra_z2() -> Algebra {
        let space = Space::new("kZ2", vec!["e".into(), "g".into()]).unwrap();
        Algebra::from_fn(space, Vector::basis(2, 0), |i, j| Vector::basis(2, (i + j) % 2)).unwrap()
    }

    #[test]
    fn scalars_and_group_algebra_associative() {
        assert!(check_associativity(Algebra::scalars().table()).is_empty());
        assert!(check_associativity(group_algebra_z2().table()).is_empty());
    }

    /// Dense triple-loop recomputation used as an independent oracle.
    fn naive_violations(t: &MulTable) -> Vec<(usize, usize, usize)> {
        let n = t.dim();
        let c = |i: usize, j: usize, k: usize| t.basis_product(i, j).get(k);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ok = (0..n).all(|m| {
                        let lhs: Scalar = (0..n).map(|l| c(i, j, l) * c(l, k, m)).sum();
                        let rhs: Scalar = (0..n).map(|l| c(j, k, l) * c(i, l, m)).sum();
                        lhs == rhs
                    });
                    if !ok {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn perturbation_reported() {
        let space = Space::indexed("kZ3", "g", 3);
        let a = Algebra::from_fn(space, Vector::basis(3, 0), |i, j| Vector::basis(3, (i + j) % 3)).unwrap();
        let mut t = a.table().clone();
        t.set(1, 2, Vector::from_ints(&[1, 1, 0]));
        let bad = check_associativity(&t);
        assert!(!bad.is_empty());
        assert_eq!(bad, naive_violations(&t));
        assert!(Algebra::new(a.space().clone(), t, Vector::basis(3, 0)).is_err());
    }

    #[test]
    fn hom_examples() {
        let a = group_algebra_z2();
        let k = Algebra::scalars();
        assert!(is_algebra_hom(&Matrix::identity(2), &a, &a));
        assert!(is_algebra_hom(&Matrix::from_int_rows(&[&[1, 1]]), &a, &k));
        assert!(!is_algebra_hom(&Matrix::from_int_rows(&[&[1, 2]]), &a, &k));
    }

    #[test]
    fn idempotent_families() {
        let a = group_algebra_z2();
        let one = a.unit().clone();
        assert!(is_idempotent_family_orthogonal(&[one.clone()], &a));
        assert!(!is_idempotent_family_orthogonal(&[one.clone(), one], &a));
        let h = Scalar::new(1, 2);
        let p = Vector::from_dense(vec![h.clone(), h.clone()]);
        let q = Vector::from_dense(vec![h.clone(), -h]);
        assert!(is_idempotent_family_orthogonal(&[p, q], &a));
    }

    #[test]
    fn ideals() {
        let a = group_algebra_z2();
        assert!(two_sided_ideal_check(&Subspace::zero(2), &a));
        assert!(two_sided_ideal_check(&Subspace::full(2), &a));
        assert!(!two_sided_ideal_check(&Subspace::spanned_by(2, [Vector::basis(2, 0)]), &a));
        assert!(two_sided_ideal_check(&Subspace::spanned_by(2, [Vector::from_ints(&[1, 1])]), &a));
    }

    #[test]
    fn unit_recovery() {
        let a = group_algebra_z2();
        let nu = NonUnitalAlgebra::new(a.space().clone(), a.table().clone()).unwrap();
        assert_eq!(nu.find_unit(), Some(Vector::basis(2, 0)));
    }

    #[test]
    fn no_groupoid_is_unsupported() {
        assert!(matches!(component_decomposition(&group_algebra_z2()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn regular_module_valid() {
        let a = group_algebra_z2();
        let m = a.regular_module();
        assert!(LeftModuleStr::new(a, m.carrier().clone(), m.action().to_vec()).is_ok());
    }
}

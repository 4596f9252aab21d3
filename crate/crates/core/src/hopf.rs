//! Finite-dimensional Hopf algebras, global modules, module algebras and coactions.

use std::sync::Arc;

use crate::algebra::{check_associativity, Algebra, MulTable};
use crate::error::{Error, Result};
use crate::exact::{intertwiners, Matrix, Scalar, Space, Vector};
use crate::group::FiniteGroup;
use crate::report::CheckReport;

/// Unvalidated Hopf structure maps, as read from a file or built by hand.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: Algebra,
    /// `H → H⊗H`, index `(i, j) ↦ i·dim + j`.
    pub comul: Matrix,
    /// `H → k`.
    pub counit: Matrix,
    pub antipode: Matrix,
    pub antipode_inv: Option<Matrix>,
}

/// Validated Hopf algebra with invertible antipode.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    algebra: Algebra,
    comul: Matrix,
    counit: Matrix,
    antipode: Matrix,
    antipode_inv: Matrix,
    group: Option<Arc<FiniteGroup>>,
}

fn shape_ok(m: &Matrix, r: usize, c: usize) -> bool {
    m.nrows() == r && m.ncols() == c
}

/// Itemized Hopf axioms: coassociativity, counit, bialgebra compatibility, antipode, antipode inverse.
pub fn check_hopf_axioms(d: &HopfData) -> CheckReport {
    let a = &d.algebra;
    let n = a.dim();
    let mut r = CheckReport::new();
    let shapes = shape_ok(&d.comul, n * n, n)
        && shape_ok(&d.counit, 1, n)
        && shape_ok(&d.antipode, n, n)
        && d.antipode_inv.as_ref().is_none_or(|m| shape_ok(m, n, n));
    r.assert("shapes", shapes, || "structure maps have the wrong dimensions".into());
    if !shapes {
        return r;
    }
    let label = |i: usize| a.space().label(i).to_string();
    let id = Matrix::identity(n);
    let delta = |v: &Vector| d.comul.apply(v);
    let eps = |v: &Vector| d.counit.apply(v).get(0);

    let left = id.kron(&d.comul).mul(&d.comul);
    let right = d.comul.kron(&id).mul(&d.comul);
    let fails = (0..n).filter(|&i| left.col(i) != right.col(i)).map(label).collect();
    r.record("coassociativity", n, fails);

    let eps_id = d.counit.kron(&id).mul(&d.comul);
    let id_eps = id.kron(&d.counit).mul(&d.comul);
    let fails = (0..n).filter(|&i| !(eps_id.col(i) == id.col(i) && id_eps.col(i) == id.col(i))).map(label).collect();
    r.record("counit", n, fails);

    let hh = a.tensor(a);
    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis(i), a.basis(j));
            let xy = a.mul(&x, &y);
            if delta(&xy) != hh.mul(&delta(&x), &delta(&y)) {
                fails.push(format!("Δ({}·{})", label(i), label(j)));
            }
            if eps(&xy) != eps(&x) * eps(&y) {
                fails.push(format!("ε({}·{})", label(i), label(j)));
            }
        }
    }
    if delta(a.unit()) != a.unit().tensor(a.unit()) {
        fails.push("Δ(1) ≠ 1⊗1".into());
    }
    if !eps(a.unit()).is_one() {
        fails.push("ε(1) ≠ 1".into());
    }
    r.record("bialgebra-compatibility", n * n + 2, fails);

    let mut fails = Vec::new();
    for i in 0..n {
        let dx = delta(&a.basis(i));
        let target = a.unit().scale(&eps(&a.basis(i)));
        let mut sl = Vector::zeros(n);
        let mut sr = Vector::zeros(n);
        for (k, c) in dx.iter() {
            let (p, q) = (k / n, k % n);
            sl = sl.add_scaled(c, &a.mul(d.antipode.col(p), &a.basis(q)));
            sr = sr.add_scaled(c, &a.mul(&a.basis(p), d.antipode.col(q)));
        }
        if sl != target || sr != target {
            fails.push(label(i));
        }
    }
    r.record("antipode", n, fails);

    if let Some(inv) = &d.antipode_inv {
        let ok = inv.mul(&d.antipode).is_identity() && d.antipode.mul(inv).is_identity();
        r.assert("antipode-inverse", ok, || "supplied inverse does not invert the antipode".into());
    } else {
        let ok = d.antipode.inverse().is_some();
        r.assert("antipode-inverse", ok, || "antipode is not invertible".into());
    }
    r
}

impl HopfAlgebra {
    pub fn new(data: HopfData) -> Result<Self> {
        let rep = check_hopf_axioms(&data);
        if !rep.passed() {
            return Err(Error::rejected(format!("Hopf algebra {}", data.algebra.space().name()), rep.summary()));
        }
        let antipode_inv = match data.antipode_inv {
            Some(m) => m,
            None => data.antipode.inverse().expect("checked invertible"),
        };
        Ok(HopfAlgebra {
            algebra: data.algebra,
            comul: data.comul,
            counit: data.counit,
            antipode: data.antipode,
            antipode_inv,
            group: None,
        })
    }

    pub fn data(&self) -> HopfData {
        HopfData {
            algebra: self.algebra.clone(),
            comul: self.comul.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            antipode_inv: Some(self.antipode_inv.clone()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn space(&self) -> &Space {
        self.algebra.space()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.space().label(i)
    }

    pub fn basis(&self, i: usize) -> Vector {
        self.algebra.basis(i)
    }

    pub fn unit(&self) -> &Vector {
        self.algebra.unit()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.algebra.mul(a, b)
    }

    pub fn comul_matrix(&self) -> &Matrix {
        &self.comul
    }

    pub fn counit_matrix(&self) -> &Matrix {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inv_matrix(&self) -> &Matrix {
        &self.antipode_inv
    }

    pub fn comul(&self, h: &Vector) -> Vector {
        self.comul.apply(h)
    }

    pub fn counit(&self, h: &Vector) -> Scalar {
        self.counit.apply(h).get(0)
    }

    pub fn counit_basis(&self, i: usize) -> Scalar {
        self.counit.col(i).get(0)
    }

    pub fn antipode(&self, h: &Vector) -> Vector {
        self.antipode.apply(h)
    }

    pub fn antipode_inv(&self, h: &Vector) -> Vector {
        self.antipode_inv.apply(h)
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.group.as_ref()
    }

    /// Iterated coproduct of `h` into `parts` tensor factors, as basis-index tuples.
    pub fn sweedler(&self, h: &Vector, parts: usize) -> Vec<(Vec<usize>, Scalar)> {
        assert!(parts >= 1);
        let n = self.dim();
        let mut terms: Vec<(Vec<usize>, Scalar)> = h.iter().map(|(i, c)| (vec![i], c.clone())).collect();
        for _ in 1..parts {
            let mut next: Vec<(Vec<usize>, Scalar)> = Vec::with_capacity(terms.len());
            for (idx, c) in terms {
                let last = *idx.last().unwrap();
                for (k, x) in self.comul.col(last).iter() {
                    let mut t = idx.clone();
                    *t.last_mut().unwrap() = k / n;
                    t.push(k % n);
                    next.push((t, &c * x));
                }
            }
            terms = merge_terms(next);
        }
        terms
    }

    pub fn sweedler_basis(&self, i: usize, parts: usize) -> Vec<(Vec<usize>, Scalar)> {
        self.sweedler(&self.basis(i), parts)
    }

    /// Structural equality of the underlying tables.
    pub fn same_as(&self, other: &HopfAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.algebra.table() == other.algebra.table()
                && self.algebra.unit() == other.algebra.unit()
                && self.comul == other.comul
                && self.counit == other.counit
                && self.antipode == other.antipode)
    }
}

fn merge_terms(mut terms: Vec<(Vec<usize>, Scalar)>) -> Vec<(Vec<usize>, Scalar)> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Vec<usize>, Scalar)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == k => *acc += &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Group algebra `kG` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_hopf(g: &FiniteGroup) -> HopfAlgebra {
    let n = g.order();
    let space = Space::new(format!("k[{}]", g.name()), g.labels().to_vec()).expect("group labels are distinct");
    let algebra = Algebra::from_fn(space, Vector::basis(n, g.identity()), |a, b| Vector::basis(n, g.mul(a, b)))
        .expect("group algebra is associative");
    let comul = Matrix::from_basis_map(n * n, &(0..n).map(|a| Some(a * n + a)).collect::<Vec<_>>());
    let counit = Matrix::from_basis_map(1, &vec![Some(0); n]);
    let antipode = Matrix::from_basis_map(n, &(0..n).map(|a| Some(g.inv(a))).collect::<Vec<_>>());
    let data = HopfData { algebra, comul, counit, antipode: antipode.clone(), antipode_inv: Some(antipode) };
    let mut h = HopfAlgebra::new(data).expect("group algebra is a Hopf algebra");
    h.group = Some(Arc::new(g.clone()));
    h
}

/// `t = (1/n) Σ g`, checked to satisfy `h·t = ε(h) t`.
pub fn normalized_integral(h: &HopfAlgebra) -> Result<Vector> {
    let g = h.group().ok_or_else(|| Error::Unsupported("normalized integral needs a group algebra".into()))?;
    let n = g.order();
    let c = Scalar::new(1, n as i64);
    let t = Vector::from_entries(n, (0..n).map(|i| (i, c.clone())));
    for i in 0..n {
        let x = h.basis(i);
        if h.mul(&x, &t) != t.scale(&h.counit(&x)) {
            return Err(Error::rejected("integral", format!("h·t ≠ ε(h)t at {}", h.label(i))));
        }
    }
    Ok(t)
}

fn operator_of(action: &[Matrix], dim: usize, h: &Vector) -> Matrix {
    Matrix::linear_combination(dim, dim, h.iter().map(|(i, c)| (c.clone(), &action[i])))
}

/// Left `H`-module; `action[i]` is the operator `x ↦ h_i ▷ x`.
#[derive(Clone, Debug)]
pub struct HModule {
    hopf: Arc<HopfAlgebra>,
    carrier: Space,
    action: Vec<Matrix>,
}

impl HModule {
    pub fn new(hopf: Arc<HopfAlgebra>, carrier: Space, action: Vec<Matrix>) -> Result<Self> {
        let rep = check_module_axioms(&hopf, carrier.dim(), &action, false);
        if !rep.passed() {
            return Err(Error::rejected(format!("module {}", carrier.name()), rep.summary()));
        }
        Ok(HModule { hopf, carrier, action })
    }

    pub(crate) fn new_unchecked(hopf: Arc<HopfAlgebra>, carrier: Space, action: Vec<Matrix>) -> Self {
        HModule { hopf, carrier, action }
    }

    /// `k` with `h ▷ 1 = ε(h)`.
    pub fn trivial(hopf: Arc<HopfAlgebra>) -> Self {
        let action = (0..hopf.dim()).map(|i| Matrix::from_columns(1, vec![Vector::basis(1, 0).scale(&hopf.counit_basis(i))])).collect();
        HModule { hopf, carrier: Space::scalars(), action }
    }

    pub fn zero(hopf: Arc<HopfAlgebra>) -> Self {
        let action = vec![Matrix::zeros(0, 0); hopf.dim()];
        HModule { hopf, carrier: Space::zero("0"), action }
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(hopf: Arc<HopfAlgebra>) -> Self {
        let action = (0..hopf.dim()).map(|i| hopf.algebra().left_mult(&hopf.basis(i))).collect();
        let carrier = hopf.space().clone();
        HModule { hopf, carrier, action }
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn op(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn operator(&self, h: &Vector) -> Matrix {
        operator_of(&self.action, self.dim(), h)
    }

    pub fn direct_sum(&self, other: &HModule) -> Result<HModule> {
        if !self.hopf.same_as(&other.hopf) {
            return Err(Error::Precondition("modules over different Hopf algebras".into()));
        }
        let labels = self
            .carrier
            .labels()
            .iter()
            .map(|l| format!("{l}⊕0"))
            .chain(other.carrier.labels().iter().map(|l| format!("0⊕{l}")))
            .collect();
        let carrier = Space::new(format!("{}⊕{}", self.carrier.name(), other.carrier.name()), labels)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(HModule { hopf: self.hopf.clone(), carrier, action })
    }
}

/// Right `H`-module; `action[i]` is the operator `x ↦ x ◁ h_i`.
#[derive(Clone, Debug)]
pub struct RightHModule {
    hopf: Arc<HopfAlgebra>,
    carrier: Space,
    action: Vec<Matrix>,
}

impl RightHModule {
    pub fn new(hopf: Arc<HopfAlgebra>, carrier: Space, action: Vec<Matrix>) -> Result<Self> {
        let rep = check_module_axioms(&hopf, carrier.dim(), &action, true);
        if !rep.passed() {
            return Err(Error::rejected(format!("right module {}", carrier.name()), rep.summary()));
        }
        Ok(RightHModule { hopf, carrier, action })
    }

    pub fn regular(hopf: Arc<HopfAlgebra>) -> Self {
        let action = (0..hopf.dim()).map(|i| hopf.algebra().right_mult(&hopf.basis(i))).collect();
        let carrier = hopf.space().clone();
        RightHModule { hopf, carrier, action }
    }

    pub fn trivial(hopf: Arc<HopfAlgebra>) -> Self {
        let m = HModule::trivial(hopf);
        RightHModule { hopf: m.hopf, carrier: m.carrier, action: m.action }
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn op(&self, i: usize) -> &Matrix {
        &self.action[i]
    }
}

/// Associativity and unitality of an action given by basis operators.
pub fn check_module_axioms(hopf: &HopfAlgebra, dim: usize, action: &[Matrix], right: bool) -> CheckReport {
    let n = hopf.dim();
    let mut r = CheckReport::new();
    let shapes = action.len() == n && action.iter().all(|m| shape_ok(m, dim, dim));
    r.assert("shapes", shapes, || "action operators have the wrong shape".into());
    if !shapes {
        return r;
    }
    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let prod = operator_of(action, dim, hopf.algebra().basis_product(i, j));
            let comp = if right { action[j].mul(&action[i]) } else { action[i].mul(&action[j]) };
            if prod != comp {
                fails.push(format!("({}, {})", hopf.label(i), hopf.label(j)));
            }
        }
    }
    r.record("associativity", n * n, fails);
    let ok = operator_of(action, dim, hopf.unit()).is_identity();
    r.assert("unit", ok, || "1 does not act as the identity".into());
    r
}

/// Basis of `H`-linear maps `X → Y`, each a `dim Y × dim X` matrix.
pub fn module_hom_space(x: &HModule, y: &HModule) -> Result<Vec<Matrix>> {
    if !x.hopf.same_as(&y.hopf) {
        return Err(Error::Precondition("modules over different Hopf algebras".into()));
    }
    let pairs: Vec<(&Matrix, &Matrix)> = x.action.iter().zip(&y.action).collect();
    Ok(intertwiners(x.dim(), y.dim(), &pairs))
}

/// `Hom_k(X, V)` with `(h ⇀ f)(x) = f(x ◁ h)`; maps flattened column-major.
pub fn hom_module_structures(x: &RightHModule, v: &Space) -> Result<HModule> {
    let (dx, dv) = (x.dim(), v.dim());
    let mut labels = Vec::with_capacity(dx * dv);
    for a in x.carrier.labels() {
        for b in v.labels() {
            labels.push(format!("{a}*⊗{b}"));
        }
    }
    let carrier = Space::new(format!("Hom({}, {})", x.carrier.name(), v.name()), labels)?;
    let id = Matrix::identity(dv);
    let action = x.action.iter().map(|r| r.transpose().kron(&id)).collect();
    HModule::new(x.hopf.clone(), carrier, action)
}

/// Module algebra: module structure plus a product with `h ▷ (ab) = (h₁ ▷ a)(h₂ ▷ b)`.
#[derive(Clone, Debug)]
pub struct HModuleAlgebra {
    module: HModule,
    table: MulTable,
    unit: Option<Vector>,
}

impl HModuleAlgebra {
    pub fn new(module: HModule, table: MulTable, unit: Option<Vector>) -> Result<Self> {
        let rep = check_module_algebra(&module, &table, unit.as_ref());
        if !rep.passed() {
            return Err(Error::rejected(format!("module algebra {}", module.carrier.name()), rep.summary()));
        }
        Ok(HModuleAlgebra { module, table, unit })
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.table.mul(a, b)
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let unit = self.unit.clone().ok_or_else(|| Error::Precondition("module algebra has no unit".into()))?;
        Algebra::new(self.module.carrier.clone(), self.table.clone(), unit)
    }
}

pub fn check_module_algebra(m: &HModule, table: &MulTable, unit: Option<&Vector>) -> CheckReport {
    let hopf = &m.hopf;
    let d = m.dim();
    let mut r = CheckReport::new();
    let bad = check_associativity(table);
    r.record("associativity", d * d * d, bad.iter().map(|t| format!("{t:?}")).collect());
    let mut fails = Vec::new();
    for h in 0..hopf.dim() {
        let terms = hopf.sweedler_basis(h, 2);
        for a in 0..d {
            for b in 0..d {
                let lhs = m.action[h].apply(table.basis_product(a, b));
                let mut rhs = Vector::zeros(d);
                for (idx, c) in &terms {
                    let p = table.mul(m.action[idx[0]].col(a), m.action[idx[1]].col(b));
                    rhs = rhs.add_scaled(c, &p);
                }
                if lhs != rhs {
                    fails.push(format!("{} ▷ ({}·{})", hopf.label(h), m.carrier.label(a), m.carrier.label(b)));
                }
            }
        }
    }
    r.record("measuring", hopf.dim() * d * d, fails);
    if let Some(u) = unit {
        let fails = (0..hopf.dim())
            .filter(|&h| m.action[h].apply(u) != u.scale(&hopf.counit_basis(h)))
            .map(|h| hopf.label(h).to_string())
            .collect();
        r.record("unit", hopf.dim(), fails);
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Which multiplication of `H` a comodule algebra is compatible with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    Ordinary,
    /// `ρ(ab) = a₀b₀ ⊗ b₁a₁`, i.e. an `H^op`-comodule algebra.
    Reversed,
}

/// Coaction `C → C⊗H` (right) or `C → H⊗C` (left), lexicographic tensor indices.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub carrier: Space,
    pub side: Side,
    pub map: Matrix,
}

/// Counit and coassociativity of a coaction.
pub fn check_comodule(rho: &Coaction, hopf: &HopfAlgebra) -> CheckReport {
    let d = rho.carrier.dim();
    let n = hopf.dim();
    let mut r = CheckReport::new();
    let shapes = shape_ok(&rho.map, d * n, d);
    r.assert("shapes", shapes, || "coaction has the wrong shape".into());
    if !shapes {
        return r;
    }
    let id_c = Matrix::identity(d);
    let id_h = Matrix::identity(n);
    let (counit, lhs, rhs) = match rho.side {
        Side::Right => (
            id_c.kron(hopf.counit_matrix()).mul(&rho.map),
            rho.map.kron(&id_h).mul(&rho.map),
            id_c.kron(hopf.comul_matrix()).mul(&rho.map),
        ),
        Side::Left => (
            hopf.counit_matrix().kron(&id_c).mul(&rho.map),
            id_h.kron(&rho.map).mul(&rho.map),
            hopf.comul_matrix().kron(&id_c).mul(&rho.map),
        ),
    };
    let label = |i: usize| rho.carrier.label(i).to_string();
    r.record("counit", d, (0..d).filter(|&i| counit.col(i) != id_c.col(i)).map(label).collect());
    r.record("coassociativity", d, (0..d).filter(|&i| lhs.col(i) != rhs.col(i)).map(label).collect());
    r
}

/// Comodule axioms plus multiplicativity and `ρ(1) = 1⊗1`.
pub fn check_comodule_algebra(a: &Algebra, rho: &Coaction, hopf: &HopfAlgebra, order: ProductOrder) -> CheckReport {
    let mut r = check_comodule(rho, hopf);
    if !r.ok("shapes") {
        return r;
    }
    let h_alg = match order {
        ProductOrder::Ordinary => hopf.algebra().clone(),
        ProductOrder::Reversed => hopf.algebra().opposite(),
    };
    let target = match rho.side {
        Side::Right => a.tensor(&h_alg),
        Side::Left => h_alg.tensor(a),
    };
    let d = a.dim();
    let mut fails = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let lhs = rho.map.apply(a.basis_product(i, j));
            let rhs = target.mul(rho.map.col(i), rho.map.col(j));
            if lhs != rhs {
                fails.push(format!("ρ({}·{})", a.space().label(i), a.space().label(j)));
            }
        }
    }
    r.record("multiplicativity", d * d, fails);
    let one = match rho.side {
        Side::Right => a.unit().tensor(hopf.unit()),
        Side::Left => hopf.unit().tensor(a.unit()),
    };
    let ok = rho.map.apply(a.unit()) == one;
    r.assert("unit", ok, || "ρ(1) ≠ 1⊗1".into());
    r
}

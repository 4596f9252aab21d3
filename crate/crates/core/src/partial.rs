//! Partial modules, partial module algebras, hom objects and the enrichment over global modules.

use std::sync::Arc;

use crate::algebra::{check_associativity, Algebra, MulTable};
use crate::error::{Error, Result};
use crate::exact::{intertwiners, span_closure, LinearExtension, Matrix, Scalar, Space, Subspace, Vector};
use crate::hopf::{HModule, HopfAlgebra};
use crate::report::CheckReport;

type Terms = Vec<(Vec<usize>, Scalar)>;

fn same_hopf(a: &Arc<HopfAlgebra>, b: &Arc<HopfAlgebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.same_as(b) {
        Ok(())
    } else {
        Err(Error::Precondition("objects live over different Hopf algebras".into()))
    }
}

fn combine(dim: usize, action: &[Matrix], h: &Vector) -> Matrix {
    Matrix::linear_combination(dim, dim, h.iter().map(|(i, c)| (c.clone(), &action[i])))
}

/// Basis operators together with the operators of `S(h)` and `S⁻¹(h)`.
struct Ops<'a> {
    hopf: &'a HopfAlgebra,
    dim: usize,
    action: &'a [Matrix],
    s: Vec<Matrix>,
    s_inv: Vec<Matrix>,
    co: Vec<Terms>,
}

impl<'a> Ops<'a> {
    fn new(hopf: &'a HopfAlgebra, dim: usize, action: &'a [Matrix]) -> Self {
        let n = hopf.dim();
        let s = (0..n).map(|i| combine(dim, action, hopf.antipode_matrix().col(i))).collect();
        let s_inv = (0..n).map(|i| combine(dim, action, hopf.antipode_inv_matrix().col(i))).collect();
        let co = (0..n).map(|i| hopf.sweedler_basis(i, 2)).collect();
        Ops { hopf, dim, action, s, s_inv, co }
    }

    fn op(&self, h: &Vector) -> Matrix {
        combine(self.dim, self.action, h)
    }

    fn prod(&self, i: usize, j: usize) -> Matrix {
        self.op(self.hopf.algebra().basis_product(i, j))
    }

    fn sum<F: Fn(usize, usize) -> Matrix>(&self, k: usize, f: F) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (idx, c) in &self.co[k] {
            acc = acc.add_scaled(c, &f(idx[0], idx[1]));
        }
        acc
    }

    /// `ε_h·` on the carrier.
    fn left_eps(&self, k: usize) -> Matrix {
        self.sum(k, |a, b| self.action[a].mul(&self.s[b]))
    }

    /// `·ε_h` on the carrier.
    fn right_eps(&self, k: usize) -> Matrix {
        self.sum(k, |a, b| self.action[b].mul(&self.s_inv[a]))
    }
}

/// Evaluates all five partial representation axioms on every basis pair.
pub fn check_pr(hopf: &HopfAlgebra, dim: usize, action: &[Matrix]) -> CheckReport {
    let n = hopf.dim();
    let mut r = CheckReport::new();
    let shapes = action.len() == n && action.iter().all(|m| m.nrows() == dim && m.ncols() == dim);
    r.assert("shapes", shapes, || "action operators have the wrong shape".into());
    if !shapes {
        return r;
    }
    let o = Ops::new(hopf, dim, action);
    let label = |i: usize| hopf.label(i).to_string();
    r.assert("PR1", o.op(hopf.unit()).is_identity(), || "π(1) ≠ id".into());
    let (mut f2, mut f3, mut f4, mut f5) = (vec![], vec![], vec![], vec![]);
    for h in 0..n {
        for k in 0..n {
            let pair = || format!("({}, {})", label(h), label(k));
            // π(h)π(k1)π(S k2) = π(h k1)π(S k2)
            let l = o.sum(k, |a, b| action[h].mul(&action[a]).mul(&o.s[b]));
            let rr = o.sum(k, |a, b| o.prod(h, a).mul(&o.s[b]));
            if l != rr {
                f2.push(pair());
            }
            // π(h1)π(S h2)π(k) = π(h1)π(S(h2) k)
            let l = o.sum(h, |a, b| action[a].mul(&o.s[b]).mul(&action[k]));
            let rr = o.sum(h, |a, b| action[a].mul(&o.op(&hopf.mul(hopf.antipode_matrix().col(b), &hopf.basis(k)))));
            if l != rr {
                f3.push(pair());
            }
            // π(h)π(S k1)π(k2) = π(h S(k1))π(k2)
            let l = o.sum(k, |a, b| action[h].mul(&o.s[a]).mul(&action[b]));
            let rr = o.sum(k, |a, b| o.op(&hopf.mul(&hopf.basis(h), hopf.antipode_matrix().col(a))).mul(&action[b]));
            if l != rr {
                f4.push(pair());
            }
            // π(S h1)π(h2)π(k) = π(S h1)π(h2 k)
            let l = o.sum(h, |a, b| o.s[a].mul(&action[b]).mul(&action[k]));
            let rr = o.sum(h, |a, b| o.s[a].mul(&o.prod(b, k)));
            if l != rr {
                f5.push(pair());
            }
        }
    }
    r.record("PR2", n * n, f2);
    r.record("PR3", n * n, f3);
    r.record("PR4", n * n, f4);
    r.record("PR5", n * n, f5);
    r
}

/// Partial `H`-module; `action[i]` is the operator `m ↦ h_i • m`.
#[derive(Clone, Debug)]
pub struct PartialModule {
    hopf: Arc<HopfAlgebra>,
    carrier: Space,
    action: Vec<Matrix>,
}

impl PartialModule {
    pub fn new(hopf: Arc<HopfAlgebra>, carrier: Space, action: Vec<Matrix>) -> Result<Self> {
        let rep = check_pr(&hopf, carrier.dim(), &action);
        if !rep.passed() {
            return Err(Error::rejected(format!("partial module {}", carrier.name()), rep.summary()));
        }
        Ok(PartialModule { hopf, carrier, action })
    }

    pub(crate) fn new_unchecked(hopf: Arc<HopfAlgebra>, carrier: Space, action: Vec<Matrix>) -> Self {
        PartialModule { hopf, carrier, action }
    }

    pub fn from_global(m: &HModule) -> Self {
        PartialModule { hopf: m.hopf().clone(), carrier: m.carrier().clone(), action: m.action().to_vec() }
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
        combine(self.dim(), &self.action, h)
    }

    pub fn act(&self, h: usize, m: &Vector) -> Vector {
        self.action[h].apply(m)
    }

    pub fn check(&self) -> CheckReport {
        check_pr(&self.hopf, self.dim(), &self.action)
    }

    /// Whether `h•(k•m) = hk•m` for all basis `h, k`.
    pub fn is_global(&self) -> bool {
        let n = self.hopf.dim();
        (0..n).all(|h| {
            (0..n).all(|k| self.action[h].mul(&self.action[k]) == self.operator(self.hopf.algebra().basis_product(h, k)))
        })
    }

    pub fn as_global(&self) -> Option<HModule> {
        self.is_global().then(|| HModule::new_unchecked(self.hopf.clone(), self.carrier.clone(), self.action.clone()))
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.carrier = self.carrier.renamed(name);
        self
    }
}

/// `m ↦ ε_h·m = h₁•(S(h₂)•m)` for the basis element `h`.
pub fn apar_left_action(m: &PartialModule, h: usize) -> Matrix {
    Ops::new(&m.hopf, m.dim(), &m.action).left_eps(h)
}

/// `m ↦ m·ε_h = h₂•(S⁻¹(h₁)•m)` for the basis element `h`.
pub fn apar_right_action(m: &PartialModule, h: usize) -> Matrix {
    Ops::new(&m.hopf, m.dim(), &m.action).right_eps(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSide {
    /// `M⊗X`
    PartialFirst,
    /// `X⊗M`
    GlobalFirst,
}

/// Diagonal action on `M⊗X` or `X⊗M`.
pub fn tensor_partial_global(m: &PartialModule, x: &HModule, side: TensorSide) -> Result<PartialModule> {
    same_hopf(&m.hopf, x.hopf())?;
    let hopf = &m.hopf;
    let (carrier, d) = match side {
        TensorSide::PartialFirst => (m.carrier.tensor(x.carrier()), m.dim() * x.dim()),
        TensorSide::GlobalFirst => (x.carrier().tensor(&m.carrier), m.dim() * x.dim()),
    };
    let action = (0..hopf.dim())
        .map(|h| {
            let mut acc = Matrix::zeros(d, d);
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                let t = match side {
                    TensorSide::PartialFirst => m.action[idx[0]].kron(x.op(idx[1])),
                    TensorSide::GlobalFirst => x.op(idx[0]).kron(&m.action[idx[1]]),
                };
                acc = acc.add_scaled(&c, &t);
            }
            acc
        })
        .collect();
    Ok(PartialModule { hopf: hopf.clone(), carrier, action })
}

/// Morphism of partial modules.
#[derive(Clone, Debug)]
pub struct PartialHom {
    pub source: PartialModule,
    pub target: PartialModule,
    pub map: Matrix,
}

impl PartialHom {
    pub fn new(source: PartialModule, target: PartialModule, map: Matrix) -> Result<Self> {
        if !is_partial_hom(&map, &source, &target)? {
            return Err(Error::rejected("partial module morphism", "does not commute with the action"));
        }
        Ok(PartialHom { source, target, map })
    }
}

/// `f(h•m) = h•f(m)` for every basis `h`.
pub fn is_partial_hom(f: &Matrix, source: &PartialModule, target: &PartialModule) -> Result<bool> {
    same_hopf(&source.hopf, &target.hopf)?;
    if f.nrows() != target.dim() || f.ncols() != source.dim() {
        return Err(Error::DimensionMismatch {
            left: target.carrier.name().into(),
            left_dim: f.nrows(),
            right: source.carrier.name().into(),
            right_dim: f.ncols(),
        });
    }
    Ok(source.action.iter().zip(&target.action).all(|(a, b)| f.mul(a) == b.mul(f)))
}

/// Basis of partial module morphisms `M → N`.
pub fn partial_hom_space(m: &PartialModule, n: &PartialModule) -> Result<Vec<Matrix>> {
    same_hopf(&m.hopf, &n.hopf)?;
    let pairs: Vec<(&Matrix, &Matrix)> = m.action.iter().zip(&n.action).collect();
    Ok(intertwiners(m.dim(), n.dim(), &pairs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    /// `{M, N}`: morphisms `M⊗H → N`, with `(h' ⇀ f)(m⊗h) = f(m⊗hh')`.
    Right,
    /// `[M, N]`: morphisms `H⊗M → N`, with `(h' ⇀ f)(h⊗m) = f(hh'⊗m)`.
    Left,
}

/// Hom object between partial modules, a global `H`-module of partial morphisms.
#[derive(Clone, Debug)]
pub struct HomObject {
    kind: HomKind,
    source: PartialModule,
    target: PartialModule,
    domain: PartialModule,
    basis: Vec<Matrix>,
    span: Subspace,
    module: HModule,
}

impl HomObject {
    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn source(&self) -> &PartialModule {
        &self.source
    }

    pub fn target(&self) -> &PartialModule {
        &self.target
    }

    /// `M⊗H` or `H⊗M` with its diagonal partial structure.
    pub fn domain(&self) -> &PartialModule {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn module(&self) -> &HModule {
        &self.module
    }

    /// Coordinates of a morphism in the stored basis, `None` if it is not in the hom object.
    pub fn coords(&self, f: &Matrix) -> Option<Vector> {
        if f.nrows() != self.target.dim() || f.ncols() != self.domain.dim() {
            return None;
        }
        self.span.coords(&f.flatten())
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        self.coords(f).is_some()
    }

    pub fn element(&self, c: &Vector) -> Matrix {
        Matrix::linear_combination(self.target.dim(), self.domain.dim(), c.iter().map(|(i, x)| (x.clone(), &self.basis[i])))
    }

    /// The map precomposed by `h' ⇀` on the domain.
    fn shift(&self, h: usize) -> Matrix {
        shift_operator(&self.source, self.kind, h)
    }

    /// `h ⇀ f`.
    pub fn act(&self, h: usize, f: &Matrix) -> Matrix {
        f.mul(&self.shift(h))
    }

    /// `m⊗h ↦ ε(h)m`, the unit of `{M, M}`.
    pub fn enriched_unit(&self) -> Result<Matrix> {
        if self.kind != HomKind::Right {
            return Err(Error::Unsupported("enriched unit is provided for {M, M}".into()));
        }
        let hopf = self.source.hopf();
        let u = Matrix::identity(self.source.dim()).kron(hopf.counit_matrix());
        if !self.contains(&u) {
            return Err(Error::IllDefined("enriched unit is not a partial morphism".into()));
        }
        Ok(u)
    }
}

fn shift_operator(m: &PartialModule, kind: HomKind, h: usize) -> Matrix {
    let hopf = m.hopf();
    let r = hopf.algebra().right_mult(&hopf.basis(h));
    let id = Matrix::identity(m.dim());
    match kind {
        HomKind::Right => id.kron(&r),
        HomKind::Left => r.kron(&id),
    }
}

pub fn hom_object(m: &PartialModule, n: &PartialModule, kind: HomKind) -> Result<HomObject> {
    same_hopf(&m.hopf, &n.hopf)?;
    let hopf = m.hopf.clone();
    let reg = HModule::regular(hopf.clone());
    let domain = match kind {
        HomKind::Right => tensor_partial_global(m, &reg, TensorSide::PartialFirst)?,
        HomKind::Left => tensor_partial_global(m, &reg, TensorSide::GlobalFirst)?,
    };
    let basis = partial_hom_space(&domain, n)?;
    let span = Subspace::spanned_by(n.dim() * domain.dim(), basis.iter().map(Matrix::flatten));
    debug_assert_eq!(span.dim(), basis.len());
    let mut action = Vec::with_capacity(hopf.dim());
    for h in 0..hopf.dim() {
        let sh = shift_operator(m, kind, h);
        let cols = basis
            .iter()
            .map(|f| span.coords(&f.mul(&sh).flatten()).ok_or_else(|| Error::IllDefined("hom object is not closed under the action".into())))
            .collect::<Result<Vec<_>>>()?;
        action.push(Matrix::from_columns(basis.len(), cols));
    }
    let name = match kind {
        HomKind::Right => format!("{{{}, {}}}", m.carrier.name(), n.carrier.name()),
        HomKind::Left => format!("[{}, {}]", m.carrier.name(), n.carrier.name()),
    };
    let carrier = Space::indexed(name, "f", basis.len());
    let module = HModule::new(hopf, carrier, action)?;
    Ok(HomObject { kind, source: m.clone(), target: n.clone(), domain, basis, span, module })
}

/// `ψ(f)(x)(m⊗h) = f(m⊗h▷x)`, as a matrix `X → {M, N}` in hom-object coordinates.
pub fn psi(f: &Matrix, x: &HModule, hom: &HomObject) -> Result<Matrix> {
    if hom.kind != HomKind::Right {
        return Err(Error::Unsupported("ψ is defined on {M, N}".into()));
    }
    let m = &hom.source;
    let mx = tensor_partial_global(m, x, TensorSide::PartialFirst)?;
    if !is_partial_hom(f, &mx, &hom.target)? {
        return Err(Error::Precondition("ψ needs a partial morphism M⊗X → N".into()));
    }
    let hopf = m.hopf();
    let (dm, dx, n) = (m.dim(), x.dim(), hopf.dim());
    let mut cols = Vec::with_capacity(dx);
    for xi in 0..dx {
        let ex = Vector::basis(dx, xi);
        let mut img = Vec::with_capacity(dm * n);
        for mi in 0..dm {
            for h in 0..n {
                img.push(f.apply(&Vector::basis(dm, mi).tensor(&x.op(h).apply(&ex))));
            }
        }
        let g = Matrix::from_columns(hom.target.dim(), img);
        cols.push(hom.coords(&g).ok_or_else(|| Error::IllDefined("ψ(f)(x) is not a partial morphism".into()))?);
    }
    let out = Matrix::from_columns(hom.dim(), cols);
    for h in 0..n {
        if out.mul(x.op(h)) != hom.module.op(h).mul(&out) {
            return Err(Error::IllDefined("ψ(f) is not H-linear".into()));
        }
    }
    Ok(out)
}

/// `ψ⁻¹(g)(m⊗x) = g(x)(m⊗1)`.
pub fn psi_inverse(g: &Matrix, x: &HModule, hom: &HomObject) -> Matrix {
    let m = &hom.source;
    let hopf = m.hopf();
    let (dm, dx) = (m.dim(), x.dim());
    let one = hopf.unit();
    let mut cols = Vec::with_capacity(dm * dx);
    for mi in 0..dm {
        for xi in 0..dx {
            let phi = hom.element(g.col(xi));
            cols.push(phi.apply(&Vector::basis(dm, mi).tensor(one)));
        }
    }
    Matrix::from_columns(hom.target.dim(), cols)
}

/// `(φ∘χ)(m⊗h) = χ(φ(m⊗h₁)⊗h₂)` for `φ ∈ {M,N}`, `χ ∈ {N,P}`.
pub fn enriched_compose(phi: &Matrix, chi: &Matrix, hopf: &HopfAlgebra, dm: usize) -> Matrix {
    let n = hopf.dim();
    let dp = chi.nrows();
    let co: Vec<Terms> = (0..n).map(|h| hopf.sweedler_basis(h, 2)).collect();
    let mut cols = Vec::with_capacity(dm * n);
    for mi in 0..dm {
        for h in 0..n {
            let mut acc = Vector::zeros(dp);
            for (idx, c) in &co[h] {
                let v = phi.col(mi * n + idx[0]);
                acc = acc.add_scaled(c, &chi.apply(&v.tensor(&Vector::basis(n, idx[1]))));
            }
            cols.push(acc);
        }
    }
    Matrix::from_columns(dp, cols)
}

/// Composition checked to land in `{M, P}`.
pub fn enriched_compose_in(phi: &Matrix, chi: &Matrix, mn: &HomObject, np: &HomObject, mp: &HomObject) -> Result<Matrix> {
    if !mn.contains(phi) || !np.contains(chi) {
        return Err(Error::Precondition("operands are not in the given hom objects".into()));
    }
    let out = enriched_compose(phi, chi, mn.source.hopf(), mn.source.dim());
    if !mp.contains(&out) {
        return Err(Error::IllDefined("composite is not a partial morphism".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomSide {
    /// `(h·f)(x) = h₁•f(S(h₂)▷x)`
    Right,
    /// `(h·f)(x) = h₂•f(S⁻¹(h₁)▷x)`
    Left,
}

/// `Hom_k(X, M)` as a partial module; maps flattened column-major.
pub fn hom_r_hom_l(x: &HModule, m: &PartialModule, side: HomSide) -> Result<PartialModule> {
    same_hopf(&m.hopf, x.hopf())?;
    let hopf = &m.hopf;
    let (dx, dm) = (x.dim(), m.dim());
    let xs: Vec<Matrix> = (0..hopf.dim()).map(|i| x.operator(hopf.antipode_matrix().col(i))).collect();
    let xsi: Vec<Matrix> = (0..hopf.dim()).map(|i| x.operator(hopf.antipode_inv_matrix().col(i))).collect();
    let d = dx * dm;
    let action = (0..hopf.dim())
        .map(|h| {
            let mut acc = Matrix::zeros(d, d);
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                // vec(A f B) = (Bᵀ ⊗ A) vec(f)
                let t = match side {
                    HomSide::Right => xs[idx[1]].transpose().kron(&m.action[idx[0]]),
                    HomSide::Left => xsi[idx[0]].transpose().kron(&m.action[idx[1]]),
                };
                acc = acc.add_scaled(&c, &t);
            }
            acc
        })
        .collect();
    let mut labels = Vec::with_capacity(d);
    for a in x.carrier().labels() {
        for b in m.carrier.labels() {
            labels.push(format!("{a}*⊗{b}"));
        }
    }
    let tag = if side == HomSide::Right { "r" } else { "l" };
    let carrier = Space::new(format!("Hom{tag}({}, {})", x.carrier().name(), m.carrier.name()), labels)?;
    PartialModule::new(hopf.clone(), carrier, action)
}

/// Unit and counit of `X⊗- ⊣ Hom^ℓ(X,-)` (or `-⊗X ⊣ Hom^r(X,-)`) at `M`, checked to be partial morphisms.
pub fn adjunction_unit_counit(x: &HModule, m: &PartialModule, side: HomSide) -> Result<(Matrix, Matrix)> {
    let (dx, dm) = (x.dim(), m.dim());
    let tensor_side = match side {
        HomSide::Left => TensorSide::GlobalFirst,
        HomSide::Right => TensorSide::PartialFirst,
    };
    let xm = tensor_partial_global(m, x, tensor_side)?;
    let hom_xm = hom_r_hom_l(x, &xm, side)?;
    // η(m) = (x ↦ x⊗m) or (x ↦ m⊗x), flattened with x as the column index
    let d = dx * dm;
    let mut eta_cols = Vec::with_capacity(dm);
    for mi in 0..dm {
        let mut items = Vec::with_capacity(dx);
        for xi in 0..dx {
            let row = match side {
                HomSide::Left => xi * dm + mi,
                HomSide::Right => mi * dx + xi,
            };
            items.push((xi * d + row, Scalar::one()));
        }
        eta_cols.push(Vector::from_entries(d * dx, items));
    }
    let eta = Matrix::from_columns(d * dx, eta_cols);
    let hom_m = hom_r_hom_l(x, m, side)?;
    let src = tensor_partial_global(&hom_m, x, tensor_side)?;
    // counit: x⊗f ↦ f(x) or f⊗x ↦ f(x); f flattened as xi·dm + row
    let mut cnt_cols = Vec::with_capacity(dx * dx * dm);
    match side {
        HomSide::Left => {
            for xi in 0..dx {
                for f in 0..dx * dm {
                    let (fx, row) = (f / dm, f % dm);
                    cnt_cols.push(if fx == xi { Vector::basis(dm, row) } else { Vector::zeros(dm) });
                }
            }
        }
        HomSide::Right => {
            for f in 0..dx * dm {
                for xi in 0..dx {
                    let (fx, row) = (f / dm, f % dm);
                    cnt_cols.push(if fx == xi { Vector::basis(dm, row) } else { Vector::zeros(dm) });
                }
            }
        }
    }
    let counit = Matrix::from_columns(dm, cnt_cols);
    if !is_partial_hom(&eta, m, &hom_xm)? {
        return Err(Error::IllDefined("adjunction unit is not a partial morphism".into()));
    }
    if !is_partial_hom(&counit, &src, m)? {
        return Err(Error::IllDefined("adjunction counit is not a partial morphism".into()));
    }
    Ok((eta, counit))
}

/// Algebra map `H_par → End(M)` induced by the partial action, as a `dim M² × dim H_par` matrix.
///
/// `bracket` is the universal partial representation `h ↦ [h]`.
pub fn induced_representation(hpar: &Algebra, bracket: &Matrix, m: &PartialModule) -> Result<Matrix> {
    let hopf = m.hopf();
    let (dp, dm, n) = (hpar.dim(), m.dim(), hopf.dim());
    if bracket.nrows() != dp || bracket.ncols() != n {
        return Err(Error::Precondition("bracket map has the wrong shape".into()));
    }
    // Left multiplication by [h_i] on H_par ⊕ End(M), flattened column-major.
    let id_m = Matrix::identity(dm);
    let gens: Vec<Matrix> = (0..n)
        .map(|h| hpar.left_mult(bracket.col(h)).direct_sum(&id_m.kron(&m.action[h])))
        .collect();
    let seed = hpar.unit().concat(&Matrix::identity(dm).flatten());
    let closure = span_closure(dp + dm * dm, [seed], &gens);
    let pairs: Vec<(Vector, Vector)> = closure.basis().iter().map(|v| v.split_at(dp)).collect();
    let ext = LinearExtension::build(dp, dm * dm, &pairs)
        .map_err(|_| Error::IllDefined("partial action does not factor through H_par".into()))?;
    ext.to_matrix().ok_or_else(|| Error::IllDefined("[H] does not generate H_par".into()))
}

/// `λ_m : [h¹]⋯[hⁿ] ↦ h¹•(⋯(hⁿ•m))`, checked `H_par`-linear.
pub fn lambda_m(m: &PartialModule, v: &Vector, hpar: &Algebra, bracket: &Matrix) -> Result<Matrix> {
    let rho = induced_representation(hpar, bracket, m)?;
    Ok(lambda_from(&rho, m, v, hpar, bracket))
}

fn lambda_from(rho: &Matrix, m: &PartialModule, v: &Vector, hpar: &Algebra, bracket: &Matrix) -> Matrix {
    let dm = m.dim();
    let cols = (0..hpar.dim()).map(|i| Matrix::unflatten(rho.col(i), dm, dm).apply(v)).collect();
    let lam = Matrix::from_columns(dm, cols);
    debug_assert!((0..bracket.ncols()).all(|h| lam.mul(&hpar.left_mult(bracket.col(h))) == m.action[h].mul(&lam)));
    lam
}

/// Verifies `M ≅ Hom_par(H_par, M)` via `f ↦ f(1)` and `m ↦ λ_m`; returns the hom-space dimension.
pub fn check_lambda_iso(m: &PartialModule, hpar: &Algebra, bracket: &Matrix) -> Result<CheckReport> {
    let rho = induced_representation(hpar, bracket, m)?;
    let hopf = m.hopf().clone();
    let regular = PartialModule::new_unchecked(
        hopf.clone(),
        hpar.space().clone(),
        (0..hopf.dim()).map(|h| hpar.left_mult(bracket.col(h))).collect(),
    );
    let mut r = CheckReport::new();
    let homs = partial_hom_space(&regular, m)?;
    r.assert("dimension", homs.len() == m.dim(), || format!("dim Hom = {}, dim M = {}", homs.len(), m.dim()));
    let mut fails = Vec::new();
    for (i, f) in homs.iter().enumerate() {
        let v = f.apply(hpar.unit());
        if lambda_from(&rho, m, &v, hpar, bracket) != *f {
            fails.push(format!("hom basis {i}"));
        }
    }
    for i in 0..m.dim() {
        let lam = lambda_from(&rho, m, &Vector::basis(m.dim(), i), hpar, bracket);
        let linear = (0..hopf.dim()).all(|h| lam.mul(&regular.action[h]) == m.action[h].mul(&lam));
        if !linear || lam.apply(hpar.unit()) != Vector::basis(m.dim(), i) {
            fails.push(format!("λ for {}", m.carrier.label(i)));
        }
    }
    r.record("round-trip", homs.len() + m.dim(), fails);
    Ok(r)
}

/// Partial module together with a unital product, satisfying the partial action axioms.
#[derive(Clone, Debug)]
pub struct PartialModuleAlgebra {
    module: PartialModule,
    algebra: Algebra,
}

impl PartialModuleAlgebra {
    pub fn new(module: PartialModule, algebra: Algebra) -> Result<Self> {
        if !module.carrier.same_basis(algebra.space()) && module.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                left: module.carrier.name().into(),
                left_dim: module.dim(),
                right: algebra.space().name().into(),
                right_dim: algebra.dim(),
            });
        }
        let rep = check_pa(&module.hopf, &algebra, &module.action);
        if !rep.passed() {
            return Err(Error::rejected(format!("partial module algebra {}", algebra.space().name()), rep.summary()));
        }
        Ok(PartialModuleAlgebra { module, algebra })
    }

    /// Trivial action `h•a = ε(h)a`.
    pub fn trivial(hopf: Arc<HopfAlgebra>, algebra: Algebra) -> Self {
        let d = algebra.dim();
        let action = (0..hopf.dim()).map(|h| Matrix::identity(d).scale(&hopf.counit_basis(h))).collect();
        let module = PartialModule::new_unchecked(hopf, algebra.space().clone(), action);
        PartialModuleAlgebra { module, algebra }
    }

    pub fn module(&self) -> &PartialModule {
        &self.module
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.module.hopf()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn check(&self) -> CheckReport {
        check_pa(&self.module.hopf, &self.algebra, &self.module.action)
    }
}

/// Partial action axioms PA1–PA3 on basis elements.
pub fn check_pa(hopf: &HopfAlgebra, a: &Algebra, action: &[Matrix]) -> CheckReport {
    let n = hopf.dim();
    let d = a.dim();
    let mut r = CheckReport::new();
    let shapes = action.len() == n && action.iter().all(|m| m.nrows() == d && m.ncols() == d);
    r.assert("shapes", shapes, || "action operators have the wrong shape".into());
    if !shapes {
        return r;
    }
    let op = |h: &Vector| combine(d, action, h);
    let lab = |i: usize| a.space().label(i).to_string();
    r.assert("PA1", op(hopf.unit()).is_identity(), || "1 • a ≠ a".into());
    let co: Vec<Terms> = (0..n).map(|h| hopf.sweedler_basis(h, 2)).collect();
    let mut f2 = Vec::new();
    for h in 0..n {
        for x in 0..d {
            for y in 0..d {
                let lhs = action[h].apply(a.basis_product(x, y));
                let mut rhs = Vector::zeros(d);
                for (idx, c) in &co[h] {
                    rhs = rhs.add_scaled(c, &a.mul(action[idx[0]].col(x), action[idx[1]].col(y)));
                }
                if lhs != rhs {
                    f2.push(format!("{} • ({}·{})", hopf.label(h), lab(x), lab(y)));
                }
            }
        }
    }
    r.record("PA2", n * d * d, f2);
    let one_img: Vec<Vector> = (0..n).map(|h| action[h].apply(a.unit())).collect();
    let mut f3 = Vec::new();
    for h in 0..n {
        for k in 0..n {
            let hk_ops: Vec<Matrix> = co[h].iter().map(|(idx, _)| op(hopf.algebra().basis_product(idx[1], k))).collect();
            let kk_ops: Vec<Matrix> = co[h].iter().map(|(idx, _)| op(hopf.algebra().basis_product(idx[0], k))).collect();
            for x in 0..d {
                let lhs = action[h].apply(action[k].col(x));
                let mut mid = Vector::zeros(d);
                let mut right = Vector::zeros(d);
                for (t, (idx, c)) in co[h].iter().enumerate() {
                    mid = mid.add_scaled(c, &a.mul(&one_img[idx[0]], hk_ops[t].col(x)));
                    right = right.add_scaled(c, &a.mul(kk_ops[t].col(x), &one_img[idx[1]]));
                }
                if lhs != mid || lhs != right {
                    f3.push(format!("{} • ({} • {})", hopf.label(h), hopf.label(k), lab(x)));
                }
            }
        }
    }
    r.record("PA3", n * n * d, f3);
    r
}

/// Associativity of a raw product table, reported like the other checks.
pub fn check_product(table: &MulTable) -> CheckReport {
    let mut r = CheckReport::new();
    let bad = check_associativity(table);
    let d = table.dim();
    r.record("associativity", d * d * d, bad.iter().map(|t| format!("{t:?}")).collect());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::group_hopf;

    fn z(n: usize) -> Arc<HopfAlgebra> {
        Arc::new(group_hopf(&FiniteGroup::cyclic(n)))
    }

    fn line(_h: &Arc<HopfAlgebra>, lambda: i64) -> Vec<Matrix> {
        vec![Matrix::identity(1), Matrix::from_int_rows(&[&[lambda]])]
    }

    fn null_z2() -> PartialModule {
        let h = z(2);
        let a = line(&h, 0);
        PartialModule::new(h, Space::new("M0", vec!["x".into()]).unwrap(), a).unwrap()
    }

    #[test]
    fn scalar_partial_actions_of_z2() {
        let h = z(2);
        for lambda in [-1, 0, 1] {
            assert!(check_pr(&h, 1, &line(&h, lambda)).passed());
        }
        let r = check_pr(&h, 1, &line(&h, 2));
        assert!(!r.ok("PR2"));
        assert_eq!(r.ok("PR2") && r.ok("PR3"), r.ok("PR4") && r.ok("PR5"));
    }

    #[test]
    fn global_modules_are_partial() {
        let h = Arc::new(group_hopf(&FiniteGroup::symmetric(3).unwrap()));
        let reg = HModule::regular(h.clone());
        let p = PartialModule::from_global(&reg);
        assert!(p.check().passed());
        for g in 0..6 {
            let e = apar_left_action(&p, g);
            assert!(e.is_identity());
            assert!(apar_right_action(&p, g).is_identity());
        }
    }

    #[test]
    fn null_module_has_zero_eps() {
        let m = null_z2();
        assert!(apar_left_action(&m, 1).is_zero());
        assert!(apar_left_action(&m, 0).is_identity());
        assert!(!m.is_global());
    }

    #[test]
    fn tensor_with_global() {
        let m = null_z2();
        let h = m.hopf().clone();
        let t = tensor_partial_global(&m, &HModule::regular(h.clone()), TensorSide::PartialFirst).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.check().passed());
        let k = tensor_partial_global(&m, &HModule::trivial(h.clone()), TensorSide::GlobalFirst).unwrap();
        assert_eq!(k.action(), m.action());
    }

    #[test]
    fn hom_spaces() {
        let m = null_z2();
        let h = m.hopf().clone();
        assert_eq!(partial_hom_space(&m, &m).unwrap().len(), 1);
        let k = PartialModule::from_global(&HModule::trivial(h.clone()));
        assert_eq!(partial_hom_space(&m, &k).unwrap().len(), 0);
        let o = hom_object(&m, &m, HomKind::Right).unwrap();
        assert_eq!(o.dim(), 2);
        let kk = hom_object(&k, &k, HomKind::Left).unwrap();
        assert_eq!(kk.dim(), 1);
    }

    #[test]
    fn enriched_unit_laws_and_psi() {
        let h = z(2);
        let m = PartialModule::new(h.clone(), Space::new("M", vec!["x".into()]).unwrap(), line(&h, -1)).unwrap();
        let n = null_z2();
        let mn = hom_object(&m, &n, HomKind::Right).unwrap();
        let mm = hom_object(&m, &m, HomKind::Right).unwrap();
        let nn = hom_object(&n, &n, HomKind::Right).unwrap();
        let um = mm.enriched_unit().unwrap();
        let un = nn.enriched_unit().unwrap();
        for f in mn.basis() {
            assert_eq!(&enriched_compose_in(&um, f, &mm, &mn, &mn).unwrap(), f);
            assert_eq!(&enriched_compose_in(f, &un, &mn, &nn, &mn).unwrap(), f);
        }
        let x = HModule::regular(h.clone());
        let mx = tensor_partial_global(&m, &x, TensorSide::PartialFirst).unwrap();
        for f in partial_hom_space(&mx, &n).unwrap() {
            let g = psi(&f, &x, &mn).unwrap();
            assert_eq!(psi_inverse(&g, &x, &mn), f);
        }
    }

    #[test]
    fn hom_modules_and_adjunction() {
        let m = null_z2();
        let h = m.hopf().clone();
        let k = HModule::trivial(h.clone());
        let r = hom_r_hom_l(&k, &m, HomSide::Right).unwrap();
        assert_eq!(r.action(), m.action());
        let reg = HModule::regular(h.clone());
        for side in [HomSide::Left, HomSide::Right] {
            let p = hom_r_hom_l(&reg, &m, side).unwrap();
            assert_eq!(p.dim(), 2);
            adjunction_unit_counit(&reg, &m, side).unwrap();
        }
    }

    #[test]
    fn trivial_partial_action_on_algebra() {
        let h = z(3);
        let alg = h.algebra().clone();
        let t = PartialModuleAlgebra::trivial(h, alg);
        assert!(t.check().passed());
    }
}

//! Dilations of partial modules: the c-condition, the standard dilation, `{A_par, M}` as a
//! minimal dilation, the comparison map `Ξ`, partially linear maps and `Θ`.

use crate::error::{Error, Result};
use crate::exact::echelon::kernel_of_rows;
use crate::exact::{span_closure, LinearExtension, Matrix, Space, Subspace, Vector};
use crate::hopf::{hom_module_structures, HModule, HopfAlgebra, RightHModule};
use crate::pargroup::AparGroup;
use crate::partial::{
    apar_left_action, hom_object, is_partial_hom, partial_hom_space, tensor_partial_global, HomKind, HomObject,
    PartialModule, PartialModuleAlgebra, TensorSide,
};
use crate::report::CheckReport;

/// `T_h = h₁ ▷ T(S(h₂) ▷ −)` for the basis element `h`.
pub fn twisted_projection(n: &HModule, t: &Matrix, h: usize) -> Matrix {
    let hopf = n.hopf();
    let d = n.dim();
    let mut acc = Matrix::zeros(d, d);
    for (idx, c) in hopf.sweedler_basis(h, 2) {
        let s = n.operator(hopf.antipode_matrix().col(idx[1]));
        acc = acc.add_scaled(&c, &n.op(idx[0]).mul(t).mul(&s));
    }
    acc
}

/// `T ∘ T_h = T_h ∘ T` for every basis `h`; refuses non-idempotent `T` first.
pub fn check_c_condition(n: &HModule, t: &Matrix) -> Result<CheckReport> {
    if t.nrows() != n.dim() || t.ncols() != n.dim() {
        return Err(Error::DimensionMismatch {
            left: n.carrier().name().into(),
            left_dim: n.dim(),
            right: "projection".into(),
            right_dim: t.ncols(),
        });
    }
    if t.mul(t) != *t {
        return Err(Error::NotIdempotent(format!("projection on {}", n.carrier().name())));
    }
    let hopf = n.hopf();
    let fails = (0..hopf.dim())
        .filter(|&h| {
            let th = twisted_projection(n, t, h);
            t.mul(&th) != th.mul(t)
        })
        .map(|h| hopf.label(h).to_string())
        .collect();
    let mut r = CheckReport::new();
    r.record("c-condition", hopf.dim(), fails);
    Ok(r)
}

/// `T(N)` with `h • T(n) = T(h ▷ T(n))`, in coordinates of the image basis.
pub fn restricted_partial_module(n: &HModule, t: &Matrix) -> Result<(PartialModule, Subspace)> {
    let rep = check_c_condition(n, t)?;
    if !rep.passed() {
        return Err(Error::rejected("restriction", rep.summary()));
    }
    let image = Subspace::spanned_by(n.dim(), t.columns().iter().cloned());
    let action = (0..n.hopf().dim())
        .map(|h| image.restrict(&t.mul(n.op(h))).expect("T maps into its image"))
        .collect();
    let carrier = Space::indexed(format!("T({})", n.carrier().name()), "t", image.dim());
    let m = PartialModule::new(n.hopf().clone(), carrier, action)?;
    Ok((m, image))
}

/// `{x : T(h ▷ x) = 0 for all basis h}`, the largest submodule annihilated by `T`.
pub fn annihilated_submodule(n: &HModule, t: &Matrix) -> Subspace {
    let rows: Vec<Vector> = (0..n.hopf().dim()).flat_map(|h| t.mul(n.op(h)).rows()).collect();
    Subspace::spanned_by(n.dim(), kernel_of_rows(n.dim(), rows))
}

/// A dilation `(N, T, θ)` of a partial module, with its properness and minimality verdicts.
#[derive(Clone, Debug)]
pub struct Dilation {
    base: PartialModule,
    ambient: HModule,
    projection: Matrix,
    embed: Matrix,
    proper: bool,
    minimal: bool,
}

impl Dilation {
    /// Refuses data failing the projection, c-condition or isomorphism checks.
    pub fn new(base: PartialModule, ambient: HModule, projection: Matrix, embed: Matrix) -> Result<Self> {
        let rep = check_dilation_parts(&base, &ambient, &projection, &embed);
        let core = ["projection", "c-condition", "embedding-injective", "image", "partial-iso"];
        if let Some(bad) = core.iter().find(|c| !rep.ok(c)) {
            return Err(Error::rejected("dilation", format!("{bad} failed: {}", rep.summary())));
        }
        let proper = rep.ok("proper");
        let minimal = rep.ok("minimal");
        Ok(Dilation { base, ambient, projection, embed, proper, minimal })
    }

    pub fn base(&self) -> &PartialModule {
        &self.base
    }

    pub fn ambient(&self) -> &HModule {
        &self.ambient
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn embed(&self) -> &Matrix {
        &self.embed
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn check(&self) -> CheckReport {
        check_dilation_parts(&self.base, &self.ambient, &self.projection, &self.embed)
    }
}

/// Itemized verdicts: projection, c-condition, θ injective with image `T(N)`, θ partial iso, proper, minimal.
pub fn check_dilation_parts(m: &PartialModule, n: &HModule, t: &Matrix, theta: &Matrix) -> CheckReport {
    let mut r = CheckReport::new();
    let shapes = t.nrows() == n.dim() && t.ncols() == n.dim() && theta.nrows() == n.dim() && theta.ncols() == m.dim();
    r.assert("shapes", shapes, || "maps have the wrong shape".into());
    if !shapes {
        return r;
    }
    match check_c_condition(n, t) {
        Ok(c) => {
            r.assert("projection", true, String::new);
            r.checks.extend(c.checks);
        }
        Err(e) => {
            r.assert("projection", false, || e.to_string());
            return r;
        }
    }
    r.assert("embedding-injective", theta.rank() == m.dim(), || "θ is not injective".into());
    let img_t = Subspace::spanned_by(n.dim(), t.columns().iter().cloned());
    let img_theta = Subspace::spanned_by(n.dim(), theta.columns().iter().cloned());
    r.assert("image", img_t.same_as(&img_theta), || "θ(M) ≠ T(N)".into());
    let hopf = m.hopf();
    let fails = (0..hopf.dim())
        .filter(|&h| theta.mul(m.op(h)) != t.mul(n.op(h)).mul(theta))
        .map(|h| hopf.label(h).to_string())
        .collect();
    r.record("partial-iso", hopf.dim(), fails);
    let gen = span_closure(n.dim(), theta.columns().iter().cloned(), n.action());
    r.assert("proper", gen.dim() == n.dim(), || format!("θ(M) generates {} of {}", gen.dim(), n.dim()));
    let k = annihilated_submodule(n, t);
    r.assert("annihilated-is-submodule", n.action().iter().all(|a| k.is_invariant(a)), || "kernel set is not H-stable".into());
    r.assert("minimal", k.dim() == 0, || format!("a {}-dimensional submodule is annihilated by T", k.dim()));
    r
}

/// Standard dilation `M̄ = H ⇀ φ(M) ⊆ Hom_k(H, M)` with `T̄(f) = φ(f(1))`.
#[derive(Clone, Debug)]
pub struct StandardDilation {
    dilation: Dilation,
    /// `Hom_k(H, M)` with `(h ⇀ f)(k) = f(kh)`, maps flattened column-major.
    hom_h_m: HModule,
    inside: Subspace,
    /// `φ : M → Hom_k(H, M)`.
    phi_full: Matrix,
}

impl StandardDilation {
    pub fn dilation(&self) -> &Dilation {
        &self.dilation
    }

    pub fn dim(&self) -> usize {
        self.dilation.ambient.dim()
    }

    /// `M̄` inside `Hom_k(H, M)`.
    pub fn inside(&self) -> &Subspace {
        &self.inside
    }

    pub fn hom_h_m(&self) -> &HModule {
        &self.hom_h_m
    }

    /// `φ` in `M̄` coordinates.
    pub fn phi(&self) -> &Matrix {
        &self.dilation.embed
    }

    pub fn phi_full(&self) -> &Matrix {
        &self.phi_full
    }

    /// An element of `M̄` as a map `H → M` (`dim M × dim H`).
    pub fn as_map(&self, c: &Vector) -> Matrix {
        let m = self.dilation.base.dim();
        let n = self.dilation.base.hopf().dim();
        Matrix::unflatten(&self.inside.from_coords(c), m, n)
    }
}

pub fn standard_dilation(m: &PartialModule) -> Result<StandardDilation> {
    let hopf = m.hopf().clone();
    let (dm, n) = (m.dim(), hopf.dim());
    let hom_h_m = hom_module_structures(&RightHModule::regular(hopf.clone()), m.carrier())?;
    // φ(m) has column k equal to k • m
    let phi_cols: Vec<Vector> = (0..dm)
        .map(|i| {
            let f = Matrix::from_columns(dm, (0..n).map(|k| m.op(k).col(i).clone()).collect());
            f.flatten()
        })
        .collect();
    let phi_full = Matrix::from_columns(dm * n, phi_cols.clone());
    let inside = span_closure(dm * n, phi_cols.iter().cloned(), hom_h_m.action());
    let action = hom_h_m.action().iter().map(|a| inside.restrict(a).expect("closure is stable")).collect();
    let carrier = Space::indexed(format!("{}̄", m.carrier().name()), "d", inside.dim());
    let ambient = HModule::new(hopf.clone(), carrier, action)?;
    let phi = Matrix::from_columns(inside.dim(), phi_cols.iter().map(|v| inside.coords(v).expect("φ(M) ⊆ M̄")).collect());
    // T̄(f) = φ(f(1))
    let one = hopf.unit();
    let t_cols = inside
        .basis()
        .iter()
        .map(|v| {
            let f = Matrix::unflatten(v, dm, n);
            phi.apply(&f.apply(one))
        })
        .collect();
    let t = Matrix::from_columns(inside.dim(), t_cols);
    let dilation = Dilation::new(m.clone(), ambient, t, phi)?;
    if !dilation.proper || !dilation.minimal {
        return Err(Error::IllDefined("standard dilation is not proper and minimal".into()));
    }
    Ok(StandardDilation { dilation, hom_h_m, inside, phi_full })
}

/// `Φ : N → M̄` with `h ▷ θ(m) ↦ h ⇀ φ(m)`, for a proper dilation.
pub fn universal_to_standard(d: &Dilation, std: &StandardDilation) -> Result<Matrix> {
    if !d.proper {
        return Err(Error::Precondition("dilation is not proper".into()));
    }
    let pairs = generator_pairs(d, std, false);
    let ext = LinearExtension::build(d.ambient.dim(), std.dim(), &pairs)
        .map_err(|k| Error::IllDefined(format!("assignment Φ is inconsistent at generator {k}")))?;
    let phi_map = ext.to_matrix().ok_or_else(|| Error::IllDefined("θ(M) does not generate N".into()))?;
    let sd = &std.dilation;
    if phi_map.rank() != std.dim() {
        return Err(Error::IllDefined("Φ is not surjective".into()));
    }
    if sd.projection.mul(&phi_map) != phi_map.mul(&d.projection) || phi_map.mul(&d.embed) != sd.embed {
        return Err(Error::IllDefined("Φ does not intertwine the projections and embeddings".into()));
    }
    Ok(phi_map)
}

/// `Λ : M̄ → N` with `h ⇀ φ(m) ↦ h ▷ θ(m)`, for a minimal dilation.
pub fn universal_from_standard(d: &Dilation, std: &StandardDilation) -> Result<Matrix> {
    if !d.minimal {
        return Err(Error::Precondition("dilation is not minimal".into()));
    }
    let pairs = generator_pairs(d, std, true);
    let ext = LinearExtension::build(std.dim(), d.ambient.dim(), &pairs)
        .map_err(|k| Error::IllDefined(format!("assignment Λ is inconsistent at generator {k}")))?;
    let lam = ext.to_matrix().ok_or_else(|| Error::IllDefined("φ(M) does not generate M̄".into()))?;
    let sd = &std.dilation;
    if lam.rank() != std.dim() {
        return Err(Error::IllDefined("Λ is not injective".into()));
    }
    if d.projection.mul(&lam) != lam.mul(&sd.projection) || lam.mul(&sd.embed) != d.embed {
        return Err(Error::IllDefined("Λ does not intertwine the projections and embeddings".into()));
    }
    Ok(lam)
}

fn generator_pairs(d: &Dilation, std: &StandardDilation, from_standard: bool) -> Vec<(Vector, Vector)> {
    let hopf = d.base.hopf();
    let sd = &std.dilation;
    let mut pairs = Vec::new();
    for h in 0..hopf.dim() {
        for i in 0..d.base.dim() {
            let x = d.ambient.op(h).apply(d.embed.col(i));
            let y = sd.ambient.op(h).apply(sd.embed.col(i));
            pairs.push(if from_standard { (y, x) } else { (x, y) });
        }
    }
    pairs
}

/// Left `A_par` action on a partial module, one operator per atom `P_X`.
pub fn apar_atom_operators(ap: &AparGroup, m: &PartialModule) -> Vec<Matrix> {
    let g = ap.group();
    let d = m.dim();
    let eps: Vec<Matrix> = g.elements().map(|x| apar_left_action(m, x)).collect();
    ap.subsets()
        .iter()
        .map(|&mask| {
            let mut acc = Matrix::identity(d);
            for x in g.elements() {
                let f = if mask >> x & 1 == 1 { eps[x].clone() } else { Matrix::identity(d).sub(&eps[x]) };
                acc = acc.mul(&f);
            }
            acc
        })
        .collect()
}

/// `{A_par, M}` with `θ(m)(a⊗h) = a·(h•m)`, `κ(f) = f(1⊗1)` and `𝒯 = θκ`.
#[derive(Clone, Debug)]
pub struct AparHom {
    hom: HomObject,
    atom_ops: Vec<Matrix>,
    theta: Matrix,
    kappa: Matrix,
    calt: Matrix,
}

impl AparHom {
    pub fn hom(&self) -> &HomObject {
        &self.hom
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    pub fn kappa(&self) -> &Matrix {
        &self.kappa
    }

    pub fn projection(&self) -> &Matrix {
        &self.calt
    }

    pub fn atom_operators(&self) -> &[Matrix] {
        &self.atom_ops
    }

    /// `({A_par, M}, 𝒯, θ)` as a checked dilation.
    pub fn dilation(&self) -> Result<Dilation> {
        Dilation::new(self.hom.target().clone(), self.hom.module().clone(), self.calt.clone(), self.theta.clone())
    }
}

pub fn theta_kappa_t(ap: &AparGroup, m: &PartialModule) -> Result<AparHom> {
    let hom = hom_object(ap.module(), m, HomKind::Right)?;
    let hopf = m.hopf();
    let (da, dm, n) = (ap.dim(), m.dim(), hopf.dim());
    let atom_ops = apar_atom_operators(ap, m);
    let mut theta_cols = Vec::with_capacity(dm);
    for i in 0..dm {
        let e = Vector::basis(dm, i);
        let mut cols = Vec::with_capacity(da * n);
        for a in 0..da {
            for h in 0..n {
                cols.push(atom_ops[a].apply(&m.op(h).apply(&e)));
            }
        }
        let f = Matrix::from_columns(dm, cols);
        theta_cols.push(hom.coords(&f).ok_or_else(|| Error::IllDefined("θ(m) is not a partial morphism".into()))?);
    }
    let theta = Matrix::from_columns(hom.dim(), theta_cols);
    let one = ap.algebra().unit().tensor(hopf.unit());
    let kappa = Matrix::from_columns(dm, hom.basis().iter().map(|f| f.apply(&one)).collect());
    if !kappa.mul(&theta).is_identity() {
        return Err(Error::IllDefined("κ∘θ ≠ id".into()));
    }
    let calt = theta.mul(&kappa);
    Ok(AparHom { hom, atom_ops, theta, kappa, calt })
}

/// `Ξ : M̄ → {A_par, M}`, `Ξ(f)(a⊗k) = a·f(k)`, with its verdicts.
#[derive(Clone, Debug)]
pub struct XiMap {
    pub matrix: Matrix,
    pub report: CheckReport,
}

impl XiMap {
    pub fn is_bijective(&self) -> bool {
        self.report.ok("bijective")
    }
}

pub fn xi(std: &StandardDilation, ah: &AparHom) -> Result<XiMap> {
    let m = &std.dilation.base;
    let hopf = m.hopf();
    let (dm, n) = (m.dim(), hopf.dim());
    let da = ah.atom_ops.len();
    let mut cols = Vec::with_capacity(std.dim());
    for j in 0..std.dim() {
        let f = std.as_map(&Vector::basis(std.dim(), j));
        let mut img = Vec::with_capacity(da * n);
        for a in 0..da {
            for k in 0..n {
                img.push(ah.atom_ops[a].apply(f.col(k)));
            }
        }
        let g = Matrix::from_columns(dm, img);
        cols.push(ah.hom.coords(&g).ok_or_else(|| Error::IllDefined("Ξ(f) is not a partial morphism".into()))?);
    }
    let x = Matrix::from_columns(ah.dim(), cols);
    let mut r = CheckReport::new();
    let sd = &std.dilation;
    let linear = (0..n).all(|h| x.mul(sd.ambient.op(h)) == ah.hom.module().op(h).mul(&x));
    r.assert("h-linear", linear, || "Ξ is not H-linear".into());
    r.assert("projections", x.mul(&sd.projection) == ah.calt.mul(&x), || "Ξ T̄ ≠ 𝒯 Ξ".into());
    r.assert("embeddings", x.mul(&sd.embed) == ah.theta, || "Ξ φ ≠ θ".into());
    r.assert("injective", x.rank() == std.dim(), || "Ξ is not injective".into());
    r.assert("bijective", x.rank() == std.dim() && std.dim() == ah.dim(), || format!("dim M̄ = {}, dim {{A_par, M}} = {}", std.dim(), ah.dim()));
    Ok(XiMap { matrix: x, report: r })
}

/// Naturality square `Ξ_N ∘ D(f) = {A_par, f} ∘ Ξ_M` for a partial morphism `f : M → N`.
pub fn xi_naturality(f: &Matrix, sm: &StandardDilation, am: &AparHom, sn: &StandardDilation, an: &AparHom) -> Result<bool> {
    let (m, nn) = (&sm.dilation.base, &sn.dilation.base);
    if !is_partial_hom(f, m, nn)? {
        return Err(Error::Precondition("f is not a partial morphism".into()));
    }
    let xm = xi(sm, am)?.matrix;
    let xn = xi(sn, an)?.matrix;
    for j in 0..sm.dim() {
        let g = sm.as_map(&Vector::basis(sm.dim(), j));
        let df = sn.inside.coords(&f.mul(&g).flatten()).ok_or_else(|| Error::IllDefined("f∘− leaves N̄".into()))?;
        let lhs = xn.apply(&df);
        let phi = am.hom.element(xm.col(j));
        let rhs = an.hom.coords(&f.mul(&phi)).ok_or_else(|| Error::IllDefined("f∘− leaves {A_par, N}".into()))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partially linear maps `X → M` and the comparison with `Hom_par(A_par⊗X, M)`.
#[derive(Clone, Debug)]
pub struct PartiallyLinear {
    /// Basis maps, each `dim M × dim X`.
    pub basis: Vec<Matrix>,
    pub report: CheckReport,
}

pub fn partially_linear_space(ap: &AparGroup, x: &HModule, m: &PartialModule) -> Result<PartiallyLinear> {
    let hopf = m.hopf();
    let (dx, dm, n) = (x.dim(), m.dim(), hopf.dim());
    let d = dx * dm;
    // h₁ • g(S(h₂) ▷ x) − ε_h · g(x), vectorized column-major
    let mut rows = Vec::new();
    for h in 0..n {
        let mut op = Matrix::zeros(d, d);
        for (idx, c) in hopf.sweedler_basis(h, 2) {
            let s = x.operator(hopf.antipode_matrix().col(idx[1]));
            op = op.add_scaled(&c, &s.transpose().kron(m.op(idx[0])));
        }
        let eps = apar_left_action(m, h);
        op = op.sub(&Matrix::identity(dx).kron(&eps));
        rows.extend(op.rows());
    }
    let basis: Vec<Matrix> = kernel_of_rows(d, rows).iter().map(|v| Matrix::unflatten(v, dm, dx)).collect();
    let mut r = CheckReport::new();
    let ax = tensor_partial_global(ap.module(), x, TensorSide::PartialFirst)?;
    let homs = partial_hom_space(&ax, m)?;
    r.assert("dimension", homs.len() == basis.len(), || format!("dim Hom_par(A_par⊗X, M) = {}, partially linear = {}", homs.len(), basis.len()));
    // Ψ(f)(x) = f(1⊗x)
    let one = ap.algebra().unit();
    let psi: Vec<Matrix> = homs
        .iter()
        .map(|f| Matrix::from_columns(dm, (0..dx).map(|i| f.apply(&one.tensor(&Vector::basis(dx, i)))).collect()))
        .collect();
    let target = Subspace::spanned_by(d, basis.iter().map(Matrix::flatten));
    let image = Subspace::spanned_by(d, psi.iter().map(Matrix::flatten));
    r.assert("psi-image", image.same_as(&target), || "Ψ image differs from the partially linear maps".into());
    r.assert("psi-injective", image.dim() == homs.len(), || "Ψ is not injective".into());
    // inverse a⊗x ↦ a·g(x)
    let ops = apar_atom_operators(ap, m);
    let mut fails = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let mut cols = Vec::with_capacity(ap.dim() * dx);
        for a in 0..ap.dim() {
            for xi in 0..dx {
                cols.push(ops[a].apply(g.col(xi)));
            }
        }
        let f = Matrix::from_columns(dm, cols);
        let back = Matrix::from_columns(dm, (0..dx).map(|k| f.apply(&one.tensor(&Vector::basis(dx, k)))).collect());
        if !is_partial_hom(&f, &ax, m)? || back != *g {
            fails.push(format!("basis map {i}"));
        }
    }
    r.record("psi-inverse", basis.len(), fails);
    // S(h₁) • g(h₂ ▷ x) = S(h₁) • (h₂ • g(x))
    let mut fails = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        for h in 0..n {
            let mut lhs = Matrix::zeros(dm, dx);
            let mut rhs = Matrix::zeros(dm, dx);
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                let s = m.operator(hopf.antipode_matrix().col(idx[0]));
                lhs = lhs.add_scaled(&c, &s.mul(g).mul(x.op(idx[1])));
                rhs = rhs.add_scaled(&c, &s.mul(m.op(idx[1])).mul(g));
            }
            if lhs != rhs {
                fails.push(format!("basis map {i} at {}", hopf.label(h)));
            }
        }
    }
    r.record("second-identity", basis.len() * n, fails);
    Ok(PartiallyLinear { basis, report: r })
}

/// `Θ : {M,N}⊗X → {M, N⊗X}` and its dual-basis inverse.
#[derive(Clone, Debug)]
pub struct ThetaIso {
    pub forward: Matrix,
    pub inverse: Matrix,
    pub report: CheckReport,
}

pub fn theta_tensor_iso(m: &PartialModule, nmod: &PartialModule, x: &HModule) -> Result<ThetaIso> {
    let hopf = m.hopf().clone();
    let (dm, dn, dx, n) = (m.dim(), nmod.dim(), x.dim(), hopf.dim());
    let mn = hom_object(m, nmod, HomKind::Right)?;
    let nx = tensor_partial_global(nmod, x, TensorSide::PartialFirst)?;
    let mnx = hom_object(m, &nx, HomKind::Right)?;
    let co: Vec<_> = (0..n).map(|h| hopf.sweedler_basis(h, 2)).collect();
    let mut fwd = Vec::with_capacity(mn.dim() * dx);
    for gi in 0..mn.dim() {
        let g = &mn.basis()[gi];
        for xi in 0..dx {
            let mut cols = Vec::with_capacity(dm * n);
            for mi in 0..dm {
                for h in 0..n {
                    let mut acc = Vector::zeros(dn * dx);
                    for (idx, c) in &co[h] {
                        let left = g.col(mi * n + idx[0]);
                        acc = acc.add_scaled(c, &left.tensor(x.op(idx[1]).col(xi)));
                    }
                    cols.push(acc);
                }
            }
            let f = Matrix::from_columns(dn * dx, cols);
            fwd.push(mnx.coords(&f).ok_or_else(|| Error::IllDefined("Θ(z) is not a partial morphism".into()))?);
        }
    }
    let forward = Matrix::from_columns(mnx.dim(), fwd);
    // g_j(m⊗h) = (id ⊗ y_j* ∘ S⁻¹(h₂)▷) f(m⊗h₁)
    let sinv: Vec<Matrix> = (0..n).map(|h| x.operator(hopf.antipode_inv_matrix().col(h))).collect();
    let mut inv_cols = Vec::with_capacity(mnx.dim());
    for f in mnx.basis() {
        let mut z = Vector::zeros(mn.dim() * dx);
        for yj in 0..dx {
            let mut cols = Vec::with_capacity(dm * n);
            for mi in 0..dm {
                for h in 0..n {
                    let mut acc = Vector::zeros(dn);
                    for (idx, c) in &co[h] {
                        let v = f.col(mi * n + idx[0]);
                        for (k, coef) in v.iter() {
                            let (ni, xk) = (k / dx, k % dx);
                            let w = sinv[idx[1]].col(xk).get(yj);
                            if !w.is_zero() {
                                acc = acc.add_scaled(&(c * coef * w), &Vector::basis(dn, ni));
                            }
                        }
                    }
                    cols.push(acc);
                }
            }
            let gj = Matrix::from_columns(dn, cols);
            let cj = mn.coords(&gj).ok_or_else(|| Error::IllDefined("g_j is not a partial morphism".into()))?;
            z = z.add(&cj.tensor(&Vector::basis(dx, yj)));
        }
        inv_cols.push(z);
    }
    let inverse = Matrix::from_columns(mn.dim() * dx, inv_cols);
    let mut r = CheckReport::new();
    r.assert("dimension", forward.nrows() == forward.ncols(), || format!("{} vs {}", mn.dim() * dx, mnx.dim()));
    r.assert("round-trip", forward.mul(&inverse).is_identity() && inverse.mul(&forward).is_identity(), || "Θ Θ⁻¹ ≠ id".into());
    let fails = (0..n)
        .filter(|&h| {
            let mut src = Matrix::zeros(mn.dim() * dx, mn.dim() * dx);
            for (idx, c) in &co[h] {
                src = src.add_scaled(c, &mn.module().op(idx[0]).kron(x.op(idx[1])));
            }
            forward.mul(&src) != mnx.module().op(h).mul(&forward)
        })
        .map(|h| hopf.label(h).to_string())
        .collect();
    r.record("h-linear", n, fails);
    Ok(ThetaIso { forward, inverse, report: r })
}

/// Standard globalization of a partial module algebra and the left ideal property of `θ(A_par)`.
pub fn globalization_check(a: &PartialModuleAlgebra, ap: Option<&AparGroup>) -> Result<CheckReport> {
    let m = a.module();
    let hopf = m.hopf().clone();
    let alg = a.algebra();
    let (d, n) = (a.dim(), hopf.dim());
    let std = standard_dilation(m)?;
    let mut r = CheckReport::new();
    let basis: Vec<Matrix> = (0..std.dim()).map(|j| std.as_map(&Vector::basis(std.dim(), j))).collect();
    let conv = |f: &Matrix, g: &Matrix| convolution(&hopf, alg, f, g);
    let mut closed = true;
    let mut prods = vec![vec![None; basis.len()]; basis.len()];
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            match std.inside.coords(&conv(f, g).flatten()) {
                Some(c) => prods[i][j] = Some(c),
                None => closed = false,
            }
        }
    }
    r.assert("closed", closed, || "M̄ is not closed under convolution".into());
    if !closed {
        return Ok(r);
    }
    let prod = |x: &Vector, y: &Vector| {
        let mut acc = Vector::zeros(std.dim());
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                acc = acc.add_scaled(&(c * e), prods[i][j].as_ref().unwrap());
            }
        }
        acc
    };
    let amb = &std.dilation.ambient;
    let mut fails = Vec::new();
    for h in 0..n {
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let (x, y) = (Vector::basis(std.dim(), i), Vector::basis(std.dim(), j));
                let lhs = amb.op(h).apply(&prod(&x, &y));
                let mut rhs = Vector::zeros(std.dim());
                for (idx, c) in hopf.sweedler_basis(h, 2) {
                    rhs = rhs.add_scaled(&c, &prod(&amb.op(idx[0]).apply(&x), &amb.op(idx[1]).apply(&y)));
                }
                if lhs != rhs {
                    fails.push(format!("{} at ({i}, {j})", hopf.label(h)));
                }
            }
        }
    }
    r.record("module-algebra", n * basis.len() * basis.len(), fails);
    let phi = std.phi();
    let mut fails = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if phi.apply(alg.basis_product(i, j)) != prod(phi.col(i), phi.col(j)) {
                fails.push(format!("({i}, {j})"));
            }
        }
    }
    r.record("phi-multiplicative", d * d, fails);
    let img = Subspace::spanned_by(std.dim(), phi.columns().iter().cloned());
    let ok = (0..d).all(|i| (0..std.dim()).all(|j| img.contains(&prod(phi.col(i), &Vector::basis(std.dim(), j)))));
    r.assert("right-ideal", ok, || "φ(A) is not a right ideal".into());
    let one = phi.apply(alg.unit());
    let ok = (0..std.dim()).all(|j| prod(&one, &Vector::basis(std.dim(), j)) == std.dilation.projection.col(j).clone());
    r.assert("projection-from-unit", ok, || "φ(1)b ≠ T̄(b)".into());
    // (h⇀φ(a)) ∗ (k⇀φ(b)) = h₁⇀φ(a(S(h₂)k•b))
    let mut fails = Vec::new();
    let mut count = 0;
    for h in 0..n {
        for k in 0..n {
            for x in 0..d {
                for y in 0..d {
                    count += 1;
                    let lhs = prod(&amb.op(h).apply(phi.col(x)), &amb.op(k).apply(phi.col(y)));
                    let mut rhs = Vector::zeros(std.dim());
                    for (idx, c) in hopf.sweedler_basis(h, 2) {
                        let s = hopf.antipode(&hopf.basis(idx[1]));
                        let sk = hopf.mul(&s, &hopf.basis(k));
                        let inner = m.operator(&sk).col(y).clone();
                        let ab = alg.mul(&alg.basis(x), &inner);
                        rhs = rhs.add_scaled(&c, &amb.op(idx[0]).apply(&phi.apply(&ab)));
                    }
                    if lhs != rhs {
                        fails.push(format!("({}, {}, {x}, {y})", hopf.label(h), hopf.label(k)));
                    }
                }
            }
        }
    }
    r.record("product-formula", count, fails);
    if let Some(ap) = ap {
        let ah = theta_kappa_t(ap, ap.module())?;
        let hom = ah.hom();
        let one = ap.algebra().unit().tensor(hopf.unit());
        let mut fails = Vec::new();
        for (fi, f) in hom.basis().iter().enumerate() {
            for x in 0..ap.dim() {
                let th = hom.element(ah.theta.col(x));
                let lhs = apar_convolution(&hopf, ap.algebra(), f, &th);
                let fa = ap.algebra().mul(&f.apply(&one), &ap.algebra().basis(x));
                let rhs = hom.element(&ah.theta.apply(&fa));
                if lhs != rhs {
                    fails.push(format!("basis {fi} with {}", ap.algebra().space().label(x)));
                }
            }
        }
        r.record("theta-left-ideal", hom.dim() * ap.dim(), fails);
    }
    Ok(r)
}

/// `(f ∗ g)(k) = f(k₁) g(k₂)` on `Hom_k(H, A)`.
pub fn convolution(hopf: &HopfAlgebra, alg: &crate::algebra::Algebra, f: &Matrix, g: &Matrix) -> Matrix {
    let n = hopf.dim();
    let cols = (0..n)
        .map(|k| {
            let mut acc = Vector::zeros(alg.dim());
            for (idx, c) in hopf.sweedler_basis(k, 2) {
                acc = acc.add_scaled(&c, &alg.mul(f.col(idx[0]), g.col(idx[1])));
            }
            acc
        })
        .collect();
    Matrix::from_columns(alg.dim(), cols)
}

/// `(f ∗ g)(a⊗h) = f(a⊗h₁) g(1⊗h₂)` on `{A, A}`.
pub fn apar_convolution(hopf: &HopfAlgebra, alg: &crate::algebra::Algebra, f: &Matrix, g: &Matrix) -> Matrix {
    let (da, n) = (alg.dim(), hopf.dim());
    let unit = alg.unit();
    let mut cols = Vec::with_capacity(da * n);
    for a in 0..da {
        for h in 0..n {
            let mut acc = Vector::zeros(da);
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                let left = f.col(a * n + idx[0]);
                let right = g.apply(&unit.tensor(&hopf.basis(idx[1])));
                acc = acc.add_scaled(&c, &alg.mul(left, &right));
            }
            cols.push(acc);
        }
    }
    Matrix::from_columns(da, cols)
}

/// `M̄ ⊕ X` with `T` extended by zero on a global module `X`.
pub fn pad_with_global(d: &Dilation, x: &HModule) -> Result<(HModule, Matrix, Matrix)> {
    let n = d.ambient.direct_sum(x)?;
    let t = d.projection.direct_sum(&Matrix::zeros(x.dim(), x.dim()));
    let theta = Matrix::from_columns(n.dim(), d.embed.columns().iter().map(|c| c.concat(&Vector::zeros(x.dim()))).collect());
    Ok((n, t, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::group_hopf;
    use std::sync::Arc;

    fn z2() -> Arc<HopfAlgebra> {
        Arc::new(group_hopf(&FiniteGroup::cyclic(2)))
    }

    fn line(h: &Arc<HopfAlgebra>, lambda: i64, name: &str) -> PartialModule {
        let a = vec![Matrix::identity(1), Matrix::from_int_rows(&[&[lambda]])];
        PartialModule::new(h.clone(), Space::new(name, vec!["x".into()]).unwrap(), a).unwrap()
    }

    #[test]
    fn c_condition_examples() {
        let h = z2();
        let reg = HModule::regular(h.clone());
        assert!(check_c_condition(&reg, &Matrix::identity(2)).unwrap().passed());
        let onto_e = Matrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(check_c_condition(&reg, &onto_e).unwrap().passed());
        // T(e) = e, T(g) = e
        let skew = Matrix::from_int_rows(&[&[1, 1], &[0, 0]]);
        let r = check_c_condition(&reg, &skew).unwrap();
        assert_eq!(r.get("c-condition").unwrap().failures, vec!["g".to_string()]);
        assert!(restricted_partial_module(&reg, &skew).is_err());
        assert!(matches!(check_c_condition(&reg, &Matrix::from_int_rows(&[&[2, 0], &[0, 0]])), Err(Error::NotIdempotent(_))));
    }

    #[test]
    fn standard_dilation_of_null_module() {
        let h = z2();
        let m0 = line(&h, 0, "M0");
        let s = standard_dilation(&m0).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.dilation().check().passed());
        let (rest, _) = restricted_partial_module(s.dilation().ambient(), s.dilation().projection()).unwrap();
        assert_eq!(rest.dim(), 1);
        assert!(rest.op(1).is_zero());
    }

    #[test]
    fn global_module_dilates_to_itself() {
        let h = z2();
        let m = line(&h, -1, "sign");
        let s = standard_dilation(&m).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.dilation().projection().is_identity());
        let phi = universal_to_standard(s.dilation(), &s).unwrap();
        assert!(phi.is_identity());
        assert!(universal_from_standard(s.dilation(), &s).unwrap().is_identity());
    }

    #[test]
    fn padding_breaks_minimality() {
        let h = z2();
        let s = standard_dilation(&line(&h, 0, "M0")).unwrap();
        let (n, t, th) = pad_with_global(s.dilation(), &HModule::trivial(h.clone())).unwrap();
        let d = Dilation::new(s.dilation().base().clone(), n, t, th).unwrap();
        assert!(!d.is_minimal());
        assert!(!d.is_proper());
        assert!(universal_from_standard(&d, &s).is_err());
        assert!(universal_to_standard(&d, &s).is_err());
    }

    /// Non-proper dilation whose `T` also moves the extra summand: still not minimal.
    #[test]
    fn skewed_padding_is_not_minimal() {
        let h = z2();
        let s = standard_dilation(&line(&h, 0, "M0")).unwrap();
        let (n, mut t, th) = pad_with_global(s.dilation(), &HModule::trivial(h.clone())).unwrap();
        // T(c) = image of φ(x), which keeps T idempotent and the c-condition intact
        let img = th.col(0).clone();
        let mut cols = t.columns().to_vec();
        cols[2] = img;
        t = Matrix::from_columns(3, cols);
        let d = Dilation::new(s.dilation().base().clone(), n, t, th).unwrap();
        assert!(!d.is_minimal());
    }

    #[test]
    fn xi_and_theta_for_null_module() {
        let h = z2();
        let ap = AparGroup::with_hopf(h.clone()).unwrap();
        let m0 = line(&h, 0, "M0");
        let ah = theta_kappa_t(&ap, &m0).unwrap();
        assert_eq!(ah.dim(), 2);
        assert_eq!(ah.projection().rank(), 1);
        assert!(ah.dilation().unwrap().is_minimal());
        let s = standard_dilation(&m0).unwrap();
        let x = xi(&s, &ah).unwrap();
        assert!(x.report.passed(), "{}", x.report.summary());
        let lam = universal_from_standard(&ah.dilation().unwrap(), &s).unwrap();
        assert_eq!(lam, x.matrix);
    }

    #[test]
    fn partially_linear_examples() {
        let h = z2();
        let ap = AparGroup::with_hopf(h.clone()).unwrap();
        let m0 = line(&h, 0, "M0");
        let pl = partially_linear_space(&ap, &HModule::regular(h.clone()), &m0).unwrap();
        assert_eq!(pl.basis.len(), 2);
        assert!(pl.report.passed(), "{}", pl.report.summary());
        let sign = line(&h, -1, "sign");
        let pl = partially_linear_space(&ap, &HModule::regular(h.clone()), &sign).unwrap();
        let g = sign.as_global().unwrap();
        assert_eq!(pl.basis.len(), crate::hopf::module_hom_space(&HModule::regular(h.clone()), &g).unwrap().len());
    }

    #[test]
    fn theta_iso_small() {
        let h = z2();
        let ap = AparGroup::with_hopf(h.clone()).unwrap();
        let t = theta_tensor_iso(ap.module(), ap.module(), &HModule::regular(h.clone())).unwrap();
        assert_eq!(t.forward.ncols(), 6);
        assert!(t.report.passed(), "{}", t.report.summary());
        let k = theta_tensor_iso(ap.module(), ap.module(), &HModule::trivial(h.clone())).unwrap();
        assert!(k.forward.is_identity());
    }

    #[test]
    fn globalization_of_apar_z2() {
        let h = z2();
        let ap = AparGroup::with_hopf(h).unwrap();
        let r = globalization_check(ap.module_algebra(), Some(&ap)).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    fn apar(n: usize) -> AparGroup {
        AparGroup::new(&FiniteGroup::cyclic(n)).unwrap()
    }

    #[test]
    fn standard_dilation_of_apar_has_dim_two_pow_n_minus_one() {
        for n in 2..=4 {
            let ap = apar(n);
            let s = standard_dilation(ap.module()).unwrap();
            assert_eq!(s.dim(), (1 << n) - 1, "Z{n}");
        }
    }

    #[test]
    fn xi_is_bijective_for_apar_z3() {
        let ap = apar(3);
        let s = standard_dilation(ap.module()).unwrap();
        let ah = theta_kappa_t(&ap, ap.module()).unwrap();
        assert_eq!((s.dim(), ah.dim()), (7, 7));
        let x = xi(&s, &ah).unwrap();
        assert!(x.is_bijective(), "{}", x.report.summary());
        let d = ah.dilation().unwrap();
        assert!(d.is_proper() && d.is_minimal());
        let phi = universal_to_standard(&d, &s).unwrap();
        let lam = universal_from_standard(&d, &s).unwrap();
        assert!(phi.mul(&lam).is_identity());
    }

    #[test]
    fn xi_is_natural_on_endomorphisms() {
        let ap = apar(2);
        let m = ap.module();
        let (s, a) = (standard_dilation(m).unwrap(), theta_kappa_t(&ap, m).unwrap());
        for f in partial_hom_space(m, m).unwrap() {
            assert!(xi_naturality(&f, &s, &a, &s, &a).unwrap());
        }
    }

    #[test]
    fn apar_hom_into_tensor_with_regular() {
        let ap = apar(2);
        let x = HModule::regular(ap.hopf().clone());
        let ax = tensor_partial_global(ap.module(), &x, TensorSide::PartialFirst).unwrap();
        assert_eq!(hom_object(ap.module(), &ax, HomKind::Right).unwrap().dim(), 6);
    }

    #[test]
    fn partially_linear_for_apar_z3_regular() {
        let ap = AparGroup::new(&FiniteGroup::cyclic(3)).unwrap();
        let x = HModule::regular(ap.hopf().clone());
        let pl = partially_linear_space(&ap, &x, ap.module()).unwrap();
        assert!(pl.report.passed(), "{}", pl.report.summary());
    }
}

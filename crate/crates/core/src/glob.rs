//! The global side for finite groups: `ℬ(G)`, `ζ`, `{A_par, A_par}` as an algebra, `H_glob`,
//! the Yetter–Drinfeld coaction, the Morita context with `H_par` and `Θ̄`.

use std::sync::Arc;

use crate::algebra::{algebra_hom_violations, Algebra, MulTable};
use crate::dilation::{apar_convolution, convolution, standard_dilation, theta_kappa_t, xi, AparHom, StandardDilation};
use crate::error::{Error, Result};
use crate::exact::{span_closure, LinearExtension, Matrix, Scalar, Space, Subspace, Vector};
use crate::group::FiniteGroup;
use crate::groupoid::Groupoid;
use crate::hopf::{check_comodule, check_comodule_algebra, Coaction, HModule, HModuleAlgebra, HopfAlgebra, ProductOrder, Side};
use crate::pargroup::{arrows_over, groupoid_algebra, smash_mul, AparGroup, HparGroup, HARD_ORDER_LIMIT};
use crate::partial::{enriched_compose, hom_object, tensor_partial_global, HomKind, HomObject, TensorSide};
use crate::report::CheckReport;

fn group_of(hopf: &HopfAlgebra) -> Result<Arc<FiniteGroup>> {
    hopf.group().cloned().ok_or_else(|| Error::Unsupported("needs a group Hopf algebra".into()))
}

/// `ℬ(G)`: orthogonal idempotents `Q_X` for nonempty `X ⊆ G`, with `g ▷ Q_X = Q_{gX}`.
#[derive(Clone, Debug)]
pub struct SemilatticeAlgebra {
    group: Arc<FiniteGroup>,
    subsets: Vec<u64>,
    module_algebra: HModuleAlgebra,
    algebra: Algebra,
}

impl SemilatticeAlgebra {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn index(&self, mask: u64) -> Option<usize> {
        self.subsets.binary_search_by_key(&(mask.count_ones(), mask), |&m| (m.count_ones(), m)).ok()
    }

    pub fn module_algebra(&self) -> &HModuleAlgebra {
        &self.module_algebra
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
}

pub fn b_semilattice(hopf: &Arc<HopfAlgebra>) -> Result<SemilatticeAlgebra> {
    let g = group_of(hopf)?;
    crate::group::check_order(&g, HARD_ORDER_LIMIT)?;
    let subsets = g.nonempty_subsets();
    let d = subsets.len();
    let labels = subsets.iter().map(|&m| format!("Q{}", g.subset_label(m))).collect();
    let carrier = Space::new(format!("B({})", g.name()), labels)?;
    let index = |m: u64| subsets.binary_search_by_key(&(m.count_ones(), m), |&o| (o.count_ones(), o)).unwrap();
    let action = g
        .elements()
        .map(|x| Matrix::from_basis_map(d, &subsets.iter().map(|&m| Some(index(g.translate(x, m)))).collect::<Vec<_>>()))
        .collect();
    let module = HModule::new(hopf.clone(), carrier, action)?;
    let table = MulTable::from_fn(d, |i, j| if i == j { Vector::basis(d, i) } else { Vector::zeros(d) });
    let unit = Vector::from_entries(d, (0..d).map(|i| (i, Scalar::one())));
    let module_algebra = HModuleAlgebra::new(module, table, Some(unit))?;
    let algebra = module_algebra.to_algebra()?;
    Ok(SemilatticeAlgebra { group: g, subsets, module_algebra, algebra })
}

/// `Ā_par` with the convolution product, as a module algebra.
pub fn dilation_algebra(std: &StandardDilation, ap: &AparGroup) -> Result<HModuleAlgebra> {
    let hopf = ap.hopf();
    let d = std.dim();
    let maps: Vec<Matrix> = (0..d).map(|j| std.as_map(&Vector::basis(d, j))).collect();
    let mut products = Vec::with_capacity(d * d);
    for f in &maps {
        for g in &maps {
            let p = convolution(hopf, ap.algebra(), f, g);
            products.push(std.inside().coords(&p.flatten()).ok_or_else(|| Error::IllDefined("Ā_par is not closed under convolution".into()))?);
        }
    }
    let table = MulTable::from_fn(d, |i, j| products[i * d + j].clone());
    // k ↦ ε(k)1
    let one = Matrix::from_columns(ap.dim(), (0..hopf.dim()).map(|k| ap.algebra().unit().scale(&hopf.counit_basis(k))).collect());
    let unit = std.inside().coords(&one.flatten());
    HModuleAlgebra::new(std.dilation().ambient().clone(), table, unit)
}

/// `ζ : ℬ(G) → Ā_par`, `Q_X ↦ x ⇀ φ(P_{x⁻¹X})` for any `x ∈ X`.
#[derive(Clone, Debug)]
pub struct ZetaIso {
    pub matrix: Matrix,
    pub report: CheckReport,
}

pub fn zeta_iso(b: &SemilatticeAlgebra, ap: &AparGroup, std: &StandardDilation, abar: &HModuleAlgebra) -> Result<ZetaIso> {
    let g = b.group();
    let hom = std.hom_h_m();
    let image = |x: usize, mask: u64| -> Result<Vector> {
        let p = ap.atom_index(g.translate(g.inv(x), mask)).ok_or_else(|| Error::IllDefined("x⁻¹X does not contain e".into()))?;
        let full = hom.op(x).apply(std.phi_full().col(p));
        std.inside().coords(&full).ok_or_else(|| Error::IllDefined("x ⇀ φ(P) leaves Ā_par".into()))
    };
    let mut cols = Vec::with_capacity(b.dim());
    let mut fails = Vec::new();
    let mut count = 0;
    for &mask in b.subsets() {
        let members: Vec<usize> = crate::group::iter_mask(mask).collect();
        let first = image(members[0], mask)?;
        for &x in &members[1..] {
            count += 1;
            if image(x, mask)? != first {
                fails.push(format!("{} via {}", g.subset_label(mask), g.label(x)));
            }
        }
        cols.push(first);
    }
    let z = Matrix::from_columns(std.dim(), cols);
    let mut r = CheckReport::new();
    r.record("independent-of-x", count, fails);
    r.assert("bijective", z.nrows() == z.ncols() && z.rank() == b.dim(), || format!("rank {} of {}×{}", z.rank(), z.nrows(), z.ncols()));
    let bm = b.module_algebra().module();
    let fails = g.elements().filter(|&x| z.mul(bm.op(x)) != abar.module().op(x).mul(&z)).map(|x| g.label(x).to_string()).collect();
    r.record("h-linear", g.order(), fails);
    let d = b.dim();
    let mut fails = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if z.apply(b.module_algebra().table().basis_product(i, j)) != abar.mul(z.col(i), z.col(j)) {
                fails.push(format!("({}, {})", bm.carrier().label(i), bm.carrier().label(j)));
            }
        }
    }
    r.record("multiplicative", d * d, fails);
    Ok(ZetaIso { matrix: z, report: r })
}

/// Largest `dim {A_par, A_par}` for which products are also verified on full morphism matrices.
pub const FULL_PRODUCT_CHECK_DIM: usize = 16;

/// `{A_par, A_par}` with `(f ∗ g)(a⊗h) = f(a⊗h₁) g(1⊗h₂)`.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    apar_hom: AparHom,
    module_algebra: HModuleAlgebra,
    algebra: Algebra,
    report: CheckReport,
    unit_a: Vector,
    /// `Ψ`-images `f(1⊗−)` of the basis, flattened.
    psi_span: Subspace,
}

impl HomAlgebra {
    pub fn apar_hom(&self) -> &AparHom {
        &self.apar_hom
    }

    pub fn hom(&self) -> &HomObject {
        self.apar_hom.hom()
    }

    pub fn dim(&self) -> usize {
        self.apar_hom.dim()
    }

    pub fn module_algebra(&self) -> &HModuleAlgebra {
        &self.module_algebra
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Convolution agrees with enriched composition, `θ` multiplicative.
    pub fn report(&self) -> &CheckReport {
        &self.report
    }

    /// `f ↦ f(1⊗−)`, a map `H → A_par` (`dim A × dim H`).
    pub fn psi_map(&self, c: &Vector) -> Matrix {
        psi_of(&self.hom().element(c), &self.unit_a, self.hom().source().hopf().dim())
    }

    /// Inverse of [`HomAlgebra::psi_map`] on its image.
    pub fn from_psi(&self, g: &Matrix) -> Option<Vector> {
        self.psi_span.coords(&g.flatten())
    }
}

fn psi_of(f: &Matrix, unit_a: &Vector, n: usize) -> Matrix {
    Matrix::from_columns(unit_a.dim(), (0..n).map(|k| f.apply(&unit_a.tensor(&Vector::basis(n, k)))).collect())
}

pub fn hom_aa_algebra(ap: &AparGroup) -> Result<HomAlgebra> {
    let ah = theta_kappa_t(ap, ap.module())?;
    let hom = ah.hom().clone();
    let hopf = ap.hopf();
    let (d, da, n) = (hom.dim(), ap.dim(), hopf.dim());
    let unit_a = ap.algebra().unit().clone();
    let psis: Vec<Matrix> = hom.basis().iter().map(|f| psi_of(f, &unit_a, n)).collect();
    let psi_span = Subspace::spanned_by(da * n, psis.iter().map(Matrix::flatten));
    if psi_span.dim() != d {
        return Err(Error::IllDefined("f ↦ f(1⊗−) is not injective on {A_par, A_par}".into()));
    }
    let co: Vec<_> = (0..n).map(|h| hopf.sweedler_basis(h, 2)).collect();
    let full = d <= FULL_PRODUCT_CHECK_DIM;
    let mut products = Vec::with_capacity(d * d);
    let mut fails = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (f, g) = (&hom.basis()[i], &hom.basis()[j]);
            // (f∗g)(1⊗k) = f(1⊗k₁) g(1⊗k₂)
            let p = convolution(hopf, ap.algebra(), &psis[i], &psis[j]);
            // (f∘g)(1⊗k) = g(f(1⊗k₁)⊗k₂)
            let comp = Matrix::from_columns(
                da,
                (0..n)
                    .map(|k| {
                        co[k].iter().fold(Vector::zeros(da), |acc, (idx, c)| {
                            acc.add_scaled(c, &g.apply(&psis[i].col(idx[0]).tensor(&Vector::basis(n, idx[1]))))
                        })
                    })
                    .collect(),
            );
            let mut ok = p == comp;
            if full {
                let pf = apar_convolution(hopf, ap.algebra(), f, g);
                ok &= pf == enriched_compose(f, g, hopf, da) && hom.contains(&pf) && psi_of(&pf, &unit_a, n) == p;
            }
            if !ok {
                fails.push(format!("(f{i}, f{j})"));
            }
            products.push(psi_span.coords(&p.flatten()).ok_or_else(|| Error::IllDefined("{A_par, A_par} is not closed under convolution".into()))?);
        }
    }
    let mut r = CheckReport::new();
    r.record("convolution-is-composition", d * d, fails);
    let unit = hom.coords(&hom.enriched_unit()?).ok_or_else(|| Error::IllDefined("enriched unit missing".into()))?;
    let table = MulTable::from_fn(d, |i, j| products[i * d + j].clone());
    let module_algebra = HModuleAlgebra::new(hom.module().clone(), table, Some(unit))?;
    let algebra = module_algebra.to_algebra()?;
    let (bad, _) = algebra_hom_violations(ah.theta(), ap.algebra(), &algebra);
    r.record("theta-multiplicative", da * da, bad.iter().map(|p| format!("{p:?}")).collect());
    Ok(HomAlgebra { apar_hom: ah, module_algebra, algebra, report: r, unit_a, psi_span })
}

/// Global smash product `B#H`, `(φ#h)(ψ#l) = φ(h₁ ▷ ψ) # h₂l`, basis index `b·dim H + h`.
pub fn global_smash(b: &HModuleAlgebra) -> Result<Algebra> {
    let m = b.module();
    let hopf = m.hopf();
    let (db, n) = (b.dim(), hopf.dim());
    let d = db * n;
    let co: Vec<_> = (0..n).map(|h| hopf.sweedler_basis(h, 2)).collect();
    let table = MulTable::from_fn(d, |x, y| {
        let (bi, h) = (x / n, x % n);
        let (bj, l) = (y / n, y % n);
        let mut out = Vector::zeros(d);
        for (idx, c) in &co[h] {
            let left = b.mul(&Vector::basis(db, bi), m.op(idx[0]).col(bj));
            if left.is_zero() {
                continue;
            }
            out = out.add_scaled(c, &left.tensor(hopf.algebra().basis_product(idx[1], l)));
        }
        out
    });
    let unit = b.unit().ok_or_else(|| Error::Precondition("global smash needs a unit".into()))?.tensor(hopf.unit());
    let space = m.carrier().tensor(hopf.space()).renamed(format!("{}#{}", m.carrier().name(), hopf.space().name()));
    let labels = (0..d).map(|x| format!("{}#{}", m.carrier().label(x / n), hopf.label(x % n))).collect();
    let space = Space::new(space.name(), labels)?;
    Algebra::new(space, table, unit)
}

/// `Γ_glob(G)`: objects nonempty subsets, arrows `(g, A)` from `A` to `gA`.
pub fn gamma_glob(g: &FiniteGroup) -> Result<Groupoid> {
    crate::group::check_order(g, HARD_ORDER_LIMIT)?;
    Ok(arrows_over(g, &g.nonempty_subsets(), |_, _| true)?.0)
}

/// Everything on the global side for one group, with the verified isomorphism chain.
#[derive(Clone, Debug)]
pub struct GlobGroup {
    pub semilattice: SemilatticeAlgebra,
    pub standard: StandardDilation,
    pub dilation_algebra: HModuleAlgebra,
    pub zeta: ZetaIso,
    pub hom_aa: HomAlgebra,
    pub xi: Matrix,
    pub hglob: Algebra,
    pub gamma_glob: Arc<Groupoid>,
    pub kgamma_glob: Algebra,
}

pub fn build_glob(ap: &AparGroup) -> Result<GlobGroup> {
    let semilattice = b_semilattice(ap.hopf())?;
    let standard = standard_dilation(ap.module())?;
    let dilation_algebra = dilation_algebra(&standard, ap)?;
    let zeta = zeta_iso(&semilattice, ap, &standard, &dilation_algebra)?;
    let hom_aa = hom_aa_algebra(ap)?;
    let xm = xi(&standard, hom_aa.apar_hom())?;
    let hglob = global_smash(hom_aa.module_algebra())?;
    let gamma = Arc::new(gamma_glob(ap.group())?);
    let kgamma_glob = groupoid_algebra(&gamma, &format!("kΓglob({})", ap.group().name()))?;
    Ok(GlobGroup {
        semilattice,
        standard,
        dilation_algebra,
        zeta,
        hom_aa,
        xi: xm.matrix,
        hglob,
        gamma_glob: gamma,
        kgamma_glob,
    })
}

fn check_iso(r: &mut CheckReport, name: &str, f: &Matrix, a: &Algebra, b: &Algebra) {
    let (bad, unital) = algebra_hom_violations(f, a, b);
    let bij = f.nrows() == f.ncols() && f.rank() == f.ncols();
    r.assert(name, bad.is_empty() && unital && bij, || {
        format!("{} product violations, unital {unital}, bijective {bij}", bad.len())
    });
}

/// `kΓ_glob(G) ≅ ℬ(G)#kG ≅ Ā_par#kG ≅ {A_par, A_par}#kG` by explicit maps, plus the
/// module-level checks on `ζ`, `Ξ` and the unit of `{A_par, A_par}`.
pub fn hglob_vs_kglob(ap: &AparGroup, gg: &GlobGroup) -> Result<CheckReport> {
    let g = ap.group();
    let n = g.order();
    let mut r = CheckReport::new();
    r.extend_prefixed("zeta.", gg.zeta.report.clone());
    r.extend_prefixed("hom-algebra.", gg.hom_aa.report().clone());
    let b_smash = global_smash(gg.semilattice.module_algebra())?;
    let abar_smash = global_smash(&gg.dilation_algebra)?;
    // (g, A) ↦ Q_{gA}#g
    let (_, keys) = arrows_over(g, &g.nonempty_subsets(), |_, _| true)?;
    let subsets = g.nonempty_subsets();
    let images: Vec<Option<usize>> = keys
        .iter()
        .map(|&(x, a)| gg.semilattice.index(g.translate(x, subsets[a])).map(|q| q * n + x))
        .collect();
    let gamma_to_b = Matrix::from_basis_map(b_smash.dim(), &images);
    check_iso(&mut r, "kgamma-to-b-smash", &gamma_to_b, &gg.kgamma_glob, &b_smash);
    let id = Matrix::identity(n);
    check_iso(&mut r, "b-smash-to-abar-smash", &gg.zeta.matrix.kron(&id), &b_smash, &abar_smash);
    let xa = gg.xi.clone();
    let xi_alg = algebra_hom_violations(&xa, &gg.dilation_algebra.to_algebra()?, gg.hom_aa.algebra());
    r.assert("xi-multiplicative", xi_alg.0.is_empty() && xi_alg.1, || format!("{} violations", xi_alg.0.len()));
    check_iso(&mut r, "abar-smash-to-hglob", &xa.kron(&id), &abar_smash, &gg.hglob);
    let dims = [gg.kgamma_glob.dim(), b_smash.dim(), abar_smash.dim(), gg.hglob.dim()];
    let expected = n * ((1usize << n) - 1);
    r.assert("dims", dims.iter().all(|&d| d == expected), || format!("dims {dims:?}, expected {expected}"));
    Ok(r)
}

/// `ρ_R` on `A_par` from its values on `ε`-words.
pub fn apar_right_coaction(ap: &AparGroup) -> Result<Coaction> {
    let hopf = ap.hopf();
    let g = ap.group();
    let (d, n) = (ap.dim(), hopf.dim());
    let sinv = hopf.antipode_inv_matrix();
    let mut pairs = Vec::new();
    for mask in 0..(1u64 << g.order()) {
        let word: Vec<usize> = crate::group::iter_mask(mask).collect();
        // ε_{h¹₂}⋯ε_{hⁿ₂} ⊗ hⁿ₃S⁻¹(hⁿ₁)⋯h¹₃S⁻¹(h¹₁)
        let mut acc: Vec<(Vector, Vector)> = vec![(ap.algebra().unit().clone(), hopf.unit().clone())];
        for &h in &word {
            let mut next = Vec::new();
            for (idx, c) in hopf.sweedler_basis(h, 3) {
                let tail = hopf.mul(&hopf.basis(idx[2]), sinv.col(idx[0]));
                for (a, x) in &acc {
                    next.push((ap.algebra().mul(a, &ap.eps(idx[1])).scale(&c), hopf.mul(&tail, x)));
                }
            }
            acc = next;
        }
        let value = acc.iter().fold(Vector::zeros(d * n), |s, (a, x)| s.add(&a.tensor(x)));
        pairs.push((ap.eps_word(&word), value));
    }
    let ext = LinearExtension::build(d, d * n, &pairs).map_err(|k| Error::IllDefined(format!("ρ_R is ill-defined at word {k}")))?;
    let map = ext.to_matrix().ok_or_else(|| Error::IllDefined("ε-words do not span A_par".into()))?;
    Ok(Coaction { carrier: ap.algebra().space().clone(), side: Side::Right, map })
}

/// `β_X : X⊗A_par → A_par⊗X` and its inverse, from `ε`-words.
pub fn half_braiding(ap: &AparGroup, x: &HModule) -> Result<(Matrix, Matrix)> {
    let rho = apar_right_coaction(ap)?;
    let hopf = ap.hopf();
    let (d, n, dx) = (ap.dim(), hopf.dim(), x.dim());
    // β(x⊗a) = a⁽⁰⁾ ⊗ a⁽¹⁾ ▷ x
    let mut cols = Vec::with_capacity(dx * d);
    for xi in 0..dx {
        for a in 0..d {
            let mut acc = Vector::zeros(d * dx);
            for (k, c) in rho.map.col(a).iter() {
                acc = acc.add_scaled(c, &Vector::basis(d, k / n).tensor(x.op(k % n).col(xi)));
            }
            cols.push(acc);
        }
    }
    let beta = Matrix::from_columns(d * dx, cols);
    // ε_{h¹}⋯ ⊗ x ↦ h¹₁S(h¹₃)⋯ ▷ x ⊗ ε_{h¹₂}⋯
    let s = hopf.antipode_matrix();
    let g = ap.group();
    let mut pairs = Vec::new();
    for mask in 0..(1u64 << g.order()) {
        let word: Vec<usize> = crate::group::iter_mask(mask).collect();
        let mut acc: Vec<(Vector, Vector)> = vec![(hopf.unit().clone(), ap.algebra().unit().clone())];
        for &h in &word {
            let mut next = Vec::new();
            for (idx, c) in hopf.sweedler_basis(h, 3) {
                let head = hopf.mul(&hopf.basis(idx[0]), s.col(idx[2]));
                for (y, a) in &acc {
                    next.push((hopf.mul(y, &head), ap.algebra().mul(a, &ap.eps(idx[1])).scale(&c)));
                }
            }
            acc = next;
        }
        let w = ap.eps_word(&word);
        for xi in 0..dx {
            let ex = Vector::basis(dx, xi);
            let value = acc.iter().fold(Vector::zeros(dx * d), |s, (y, a)| s.add(&x.operator(y).apply(&ex).tensor(a)));
            pairs.push((w.tensor(&ex), value));
        }
    }
    let ext = LinearExtension::build(d * dx, dx * d, &pairs).map_err(|k| Error::IllDefined(format!("β⁻¹ is ill-defined at {k}")))?;
    let inv = ext.to_matrix().ok_or_else(|| Error::IllDefined("β⁻¹ generators do not span".into()))?;
    Ok((beta, inv))
}

/// Coaction on `{A_par, A_par}` and its Yetter–Drinfeld and braided-commutativity checks.
#[derive(Clone, Debug)]
pub struct YdStructure {
    pub coaction: Coaction,
    pub report: CheckReport,
}

pub fn yd_structure(ap: &AparGroup, haa: &HomAlgebra) -> Result<YdStructure> {
    let hopf = ap.hopf();
    let (da, n, d) = (ap.dim(), hopf.dim(), haa.dim());
    let rho_a = apar_right_coaction(ap)?;
    let mut r = CheckReport::new();
    let alg_a = ap.algebra();
    r.extend_prefixed("apar.", check_comodule_algebra(alg_a, &rho_a, hopf, ProductOrder::Reversed));
    // b⁽⁰⁾(b⁽¹⁾•a) = ab
    let m = ap.module();
    let mut fails = Vec::new();
    for a in 0..da {
        for b in 0..da {
            let mut lhs = Vector::zeros(da);
            for (k, c) in rho_a.map.col(b).iter() {
                lhs = lhs.add_scaled(c, &alg_a.mul(&alg_a.basis(k / n), m.op(k % n).col(a)));
            }
            if lhs != *alg_a.basis_product(a, b) {
                fails.push(format!("({}, {})", alg_a.space().label(a), alg_a.space().label(b)));
            }
        }
    }
    r.record("apar-commutation", da * da, fails);
    // a⁽⁰⁾(a⁽¹⁾•(S(a⁽²⁾)•b)) = ab
    let rho2 = rho_a.map.kron(&Matrix::identity(n)).mul(&rho_a.map);
    let mut fails = Vec::new();
    for a in 0..da {
        for b in 0..da {
            let mut lhs = Vector::zeros(da);
            for (k, c) in rho2.col(a).iter() {
                let (a0, h1, h2) = (k / (n * n), (k / n) % n, k % n);
                let inner = m.operator(hopf.antipode_matrix().col(h2)).col(b).clone();
                lhs = lhs.add_scaled(c, &alg_a.mul(&alg_a.basis(a0), &m.op(h1).apply(&inner)));
            }
            if lhs != *alg_a.basis_product(a, b) {
                fails.push(format!("({}, {})", alg_a.space().label(a), alg_a.space().label(b)));
            }
        }
    }
    r.record("apar-relation-ab", da * da, fails);
    let (beta, beta_inv) = half_braiding(ap, &HModule::regular(hopf.clone()))?;
    r.assert("half-braiding-inverse", beta.mul(&beta_inv).is_identity() && beta_inv.mul(&beta).is_identity(), || "β_H β_H⁻¹ ≠ id".into());
    let src = tensor_partial_global(m, &HModule::regular(hopf.clone()), TensorSide::GlobalFirst)?;
    let tgt = tensor_partial_global(m, &HModule::regular(hopf.clone()), TensorSide::PartialFirst)?;
    r.assert("half-braiding-partial", crate::partial::is_partial_hom(&beta, &src, &tgt)?, || "β_H is not a partial morphism".into());
    // f⁽⁰⁾(k) ⊗ f⁽¹⁾ = f(k₂)⁽⁰⁾ ⊗ S⁻¹(k₃) f(k₂)⁽¹⁾ k₁
    let sinv = hopf.antipode_inv_matrix();
    let mut cols = Vec::with_capacity(d);
    for fi in 0..d {
        let f = haa.psi_map(&Vector::basis(d, fi));
        let mut per_k = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = Vector::zeros(da * n);
            for (idx, c) in hopf.sweedler_basis(k, 3) {
                let v = rho_a.map.apply(f.col(idx[1]));
                for (t, e) in v.iter() {
                    let y = hopf.mul(&hopf.mul(sinv.col(idx[2]), &hopf.basis(t % n)), &hopf.basis(idx[0]));
                    acc = acc.add_scaled(&(&c * e), &Vector::basis(da, t / n).tensor(&y));
                }
            }
            per_k.push(acc);
        }
        let mut out = Vector::zeros(d * n);
        for j in 0..n {
            let gj = Matrix::from_columns(da, per_k.iter().map(|v| slice_right(v, da, n, j)).collect());
            out = out.add(&haa.from_psi(&gj).ok_or_else(|| Error::IllDefined("coaction component is not partially linear".into()))?.tensor(&Vector::basis(n, j)));
        }
        cols.push(out);
    }
    let coaction = Coaction { carrier: haa.module_algebra().module().carrier().clone(), side: Side::Right, map: Matrix::from_columns(d * n, cols) };
    r.extend_prefixed("hom.", check_comodule(&coaction, hopf));
    r.extend_prefixed("hom-algebra.", check_comodule_algebra(haa.algebra(), &coaction, hopf, ProductOrder::Reversed));
    // (l⇀f)⁽⁰⁾⊗(l⇀f)⁽¹⁾ = (l₂⇀f⁽⁰⁾) ⊗ l₃ f⁽¹⁾ S⁻¹(l₁)
    let md = haa.module_algebra().module();
    let mut fails = Vec::new();
    for l in 0..n {
        let lhs = coaction.map.mul(md.op(l));
        let mut rhs = Matrix::zeros(d * n, d);
        for (idx, c) in hopf.sweedler_basis(l, 3) {
            let right = Matrix::from_columns(
                n,
                (0..n).map(|y| hopf.mul(&hopf.mul(&hopf.basis(idx[2]), &hopf.basis(y)), sinv.col(idx[0]))).collect(),
            );
            rhs = rhs.add_scaled(&c, &md.op(idx[1]).kron(&right).mul(&coaction.map));
        }
        if lhs != rhs {
            fails.push(hopf.label(l).to_string());
        }
    }
    r.record("yd-compatibility", n, fails);
    // f⁽⁰⁾ ∗ (f⁽¹⁾ ⇀ f̃) = f̃ ∗ f
    let mut fails = Vec::new();
    for f in 0..d {
        for ft in 0..d {
            let mut lhs = Vector::zeros(d);
            for (k, c) in coaction.map.col(f).iter() {
                lhs = lhs.add_scaled(c, &haa.module_algebra().mul(&Vector::basis(d, k / n), md.op(k % n).col(ft)));
            }
            if lhs != *haa.module_algebra().table().basis_product(ft, f) {
                fails.push(format!("(f{f}, f{ft})"));
            }
        }
    }
    r.record("braided-commutative", d * d, fails);
    let u = haa.module_algebra().unit().expect("unital");
    r.assert("unit-coaction", coaction.map.apply(u) == u.tensor(hopf.unit()), || "ρ(1) ≠ 1⊗1".into());
    Ok(YdStructure { coaction, report: r })
}

fn slice_right(v: &Vector, da: usize, n: usize, j: usize) -> Vector {
    Vector::from_entries(da, v.iter().filter(|(k, _)| k % n == j).map(|(k, c)| (k / n, c.clone())))
}

/// Morita context between `A_par#̲H` and `B#H` for `B = {A_par, A_par}`.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    /// `Φ(a⊗h) = θ(a)⊗h`.
    pub phi: Matrix,
    pub m: Subspace,
    pub n: Subspace,
    /// `Φ(A#̲H)`.
    pub smash_image: Subspace,
    /// `span(M·N)` and `span(N·M)`.
    pub mn: Subspace,
    pub nm: Subspace,
    pub report: CheckReport,
}

fn span_of_products(alg: &Algebra, xs: &[Vector], ys: &[Vector]) -> Subspace {
    let mut s = Subspace::zero(alg.dim());
    for x in xs {
        for y in ys {
            s.push(alg.mul(x, y));
        }
    }
    s
}

fn closed_under(alg: &Algebra, s: &Subspace, left: &[Vector], right: &[Vector]) -> bool {
    s.basis().iter().all(|v| left.iter().all(|l| s.contains(&alg.mul(l, v))) && right.iter().all(|r| s.contains(&alg.mul(v, r))))
}

pub fn morita_context(hp: &HparGroup, haa: &HomAlgebra, hglob: &Algebra) -> Result<MoritaContext> {
    let ap = hp.apar();
    let hopf = ap.hopf();
    let (da, n) = (ap.dim(), hopf.dim());
    let theta = haa.apar_hom().theta();
    let md = haa.module_algebra().module();
    let proper = span_closure(haa.dim(), theta.columns().iter().cloned(), md.action());
    if proper.dim() != haa.dim() {
        return Err(Error::Precondition(format!("globalization is not proper: H ⇀ θ(A_par) has dim {} of {}", proper.dim(), haa.dim())));
    }
    let phi = theta.kron(&Matrix::identity(n));
    let mut r = CheckReport::new();
    let smash = hp.smash();
    let pma = ap.module_algebra();
    let sb: Vec<Vector> = smash.span().basis().to_vec();
    let mut fails = Vec::new();
    for (i, x) in sb.iter().enumerate() {
        for (j, y) in sb.iter().enumerate() {
            if phi.apply(&smash_mul(pma, x, y)) != hglob.mul(&phi.apply(x), &phi.apply(y)) {
                fails.push(format!("({i}, {j})"));
            }
        }
    }
    r.record("phi-multiplicative", sb.len() * sb.len(), fails);
    let smash_image = Subspace::spanned_by(hglob.dim(), sb.iter().map(|x| phi.apply(x)));
    r.assert("phi-injective", smash_image.dim() == sb.len(), || "Φ is not injective on A#̲H".into());
    let m = Subspace::spanned_by(hglob.dim(), phi.columns().iter().cloned());
    let mut ngens = Vec::with_capacity(da * n);
    for a in 0..da {
        for h in 0..n {
            let mut v = Vector::zeros(hglob.dim());
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                v = v.add_scaled(&c, &md.op(idx[0]).apply(theta.col(a)).tensor(&Vector::basis(n, idx[1])));
            }
            ngens.push(v);
        }
    }
    let nsp = Subspace::spanned_by(hglob.dim(), ngens);
    let small: Vec<Vector> = smash_image.basis().to_vec();
    let big: Vec<Vector> = (0..hglob.dim()).map(|i| hglob.basis(i)).collect();
    r.assert("m-bimodule", closed_under(hglob, &m, &small, &big), || "M is not an (A#̲H, B#H)-bimodule".into());
    r.assert("n-bimodule", closed_under(hglob, &nsp, &big, &small), || "N is not a (B#H, A#̲H)-bimodule".into());
    let mn = span_of_products(hglob, m.basis(), nsp.basis());
    let nm = span_of_products(hglob, nsp.basis(), m.basis());
    r.assert("mn-is-smash", mn.same_as(&smash_image), || format!("span(MN) has dim {}, Φ(A#̲H) has dim {}", mn.dim(), smash_image.dim()));
    r.assert("nm-is-everything", nm.dim() == hglob.dim(), || format!("span(NM) has dim {} of {}", nm.dim(), hglob.dim()));
    let (mb, nb) = (m.basis(), nsp.basis());
    let ok = mb.iter().take(3).all(|x| {
        nb.iter().take(3).all(|y| mb.iter().take(3).all(|z| hglob.mul(&hglob.mul(x, y), z) == hglob.mul(x, &hglob.mul(y, z))))
    });
    r.assert("pairing-associative", ok, || "(mn)m' ≠ m(nm')".into());
    Ok(MoritaContext { phi, m, n: nsp, smash_image, mn, nm, report: r })
}

/// `Θ̄ : N → {A_par, H_par}`, `Θ̄(h₁⇀θ(a)⊗h₂)(b⊗k) = b[kh]a`.
#[derive(Clone, Debug)]
pub struct ThetaBar {
    /// In `N`-basis coordinates to `{A_par, H_par}` coordinates.
    pub matrix: Matrix,
    pub hom: HomObject,
    pub report: CheckReport,
}

pub fn theta_bar_iso(hp: &HparGroup, haa: &HomAlgebra, hglob: &Algebra, mc: &MoritaContext) -> Result<ThetaBar> {
    let ap = hp.apar();
    let hopf = ap.hopf();
    let (da, n) = (ap.dim(), hopf.dim());
    let hpar = hp.algebra();
    let hom = hom_object(ap.module(), &hp.regular_partial(), HomKind::Right)?;
    let md = haa.module_algebra().module();
    let theta = haa.apar_hom().theta();
    let mut pairs = Vec::with_capacity(da * n);
    for a in 0..da {
        let av = hp.from_apar(&ap.algebra().basis(a));
        for h in 0..n {
            let mut nv = Vector::zeros(hglob.dim());
            for (idx, c) in hopf.sweedler_basis(h, 2) {
                nv = nv.add_scaled(&c, &md.op(idx[0]).apply(theta.col(a)).tensor(&Vector::basis(n, idx[1])));
            }
            let mut cols = Vec::with_capacity(da * n);
            for b in 0..da {
                let bv = hp.from_apar(&ap.algebra().basis(b));
                for k in 0..n {
                    let kh = hp.bracket().apply(&hopf.mul(&hopf.basis(k), &hopf.basis(h)));
                    cols.push(hpar.mul(&hpar.mul(&bv, &kh), &av));
                }
            }
            let f = Matrix::from_columns(hpar.dim(), cols);
            let fc = hom.coords(&f).ok_or_else(|| Error::IllDefined("Θ̄(n) is not a partial morphism".into()))?;
            pairs.push((nv, fc));
        }
    }
    let ext = LinearExtension::build(hglob.dim(), hom.dim(), &pairs).map_err(|k| Error::IllDefined(format!("Θ̄ is ill-defined at generator {k}")))?;
    let nb = mc.n.basis();
    let cols = nb.iter().map(|v| ext.apply(v).expect("N is spanned by its generators")).collect();
    let matrix = Matrix::from_columns(hom.dim(), cols);
    let mut r = CheckReport::new();
    r.assert("bijective", matrix.nrows() == matrix.ncols() && matrix.rank() == nb.len(), || {
        format!("dim N = {}, dim {{A_par, H_par}} = {}, rank {}", nb.len(), hom.dim(), matrix.rank())
    });
    let tb = |v: &Vector| -> Option<Matrix> { ext.apply(v).map(|c| hom.element(&c)) };
    // Θ̄((f#k)·n) = f ∘ (k ⇀ Θ̄(n))
    let mut fails = Vec::new();
    let mut count = 0;
    for fi in 0..haa.dim() {
        let f = &haa.hom().basis()[fi];
        for k in 0..n {
            let fk = Vector::basis(haa.dim(), fi).tensor(&Vector::basis(n, k));
            for (j, nv) in nb.iter().enumerate() {
                count += 1;
                let prod = hglob.mul(&fk, nv);
                let ok = match (tb(&prod), tb(nv)) {
                    (Some(lhs), Some(t)) => lhs == enriched_compose(f, &hom.act(k, &t), hopf, da),
                    _ => false,
                };
                if !ok {
                    fails.push(format!("(f{fi}#{}, n{j})", hopf.label(k)));
                }
            }
        }
    }
    r.record("hglob-linear", count, fails);
    // Θ̄(n ◁ y) = Θ̄(n)◁y with (F◁y)(a⊗h) = F(a⊗h)y
    let mut fails = Vec::new();
    let mut count = 0;
    for yi in 0..hpar.dim() {
        let y = hpar.basis(yi);
        let py = mc.phi.apply(&hp.smash().embed(&y));
        let ry = hpar.right_mult(&y);
        for (j, nv) in nb.iter().enumerate() {
            count += 1;
            let ok = match (tb(&hglob.mul(nv, &py)), tb(nv)) {
                (Some(lhs), Some(t)) => lhs == ry.mul(&t) && hom.contains(&lhs),
                _ => false,
            };
            if !ok {
                fails.push(format!("(n{j}, {})", hpar.space().label(yi)));
            }
        }
    }
    r.record("hpar-linear", count, fails);
    Ok(ThetaBar { matrix, hom, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{component_decomposition, is_idempotent_family_orthogonal};
    use crate::pargroup::build_hpar;

    fn ap(g: &FiniteGroup) -> AparGroup {
        AparGroup::new(g).unwrap()
    }

    #[test]
    fn semilattice_dims_and_action() {
        let t = ap(&FiniteGroup::trivial());
        assert_eq!(b_semilattice(t.hopf()).unwrap().dim(), 1);
        let z2 = ap(&FiniteGroup::cyclic(2));
        let b = b_semilattice(z2.hopf()).unwrap();
        assert_eq!(b.dim(), 3);
        let (qe, qg) = (b.index(0b01).unwrap(), b.index(0b10).unwrap());
        assert_eq!(b.module_algebra().module().op(1).col(qe), &Vector::basis(3, qg));
        let alg = b.algebra();
        assert!(is_idempotent_family_orthogonal(&(0..3).map(|i| alg.basis(i)).collect::<Vec<_>>(), &alg));
        let s3 = ap(&FiniteGroup::symmetric(3).unwrap());
        assert_eq!(b_semilattice(s3.hopf()).unwrap().dim(), 63);
    }

    #[test]
    fn zeta_values_match_translated_atoms() {
        let g = FiniteGroup::cyclic(3);
        let a = ap(&g);
        let gg = build_glob(&a).unwrap();
        assert!(gg.zeta.report.passed(), "{}", gg.zeta.report.summary());
        assert_eq!(gg.zeta.matrix.nrows(), 7);
        // ζ(Q_X)(h) = P_{hX} if h⁻¹ ∈ X, else 0
        for (qi, &mask) in gg.semilattice.subsets().iter().enumerate() {
            let f = gg.standard.as_map(gg.zeta.matrix.col(qi));
            for h in g.elements() {
                let expect = if mask >> g.inv(h) & 1 == 1 { a.atom(g.translate(h, mask)).unwrap() } else { Vector::zeros(a.dim()) };
                assert_eq!(f.col(h), &expect);
            }
        }
    }

    #[test]
    fn zeta_of_identity_singleton_is_phi_of_atom() {
        let a = ap(&FiniteGroup::cyclic(2));
        let gg = build_glob(&a).unwrap();
        let qe = gg.semilattice.index(0b01).unwrap();
        let pe = a.atom_index(0b01).unwrap();
        assert_eq!(gg.zeta.matrix.col(qe), gg.standard.phi().col(pe));
    }

    #[test]
    fn hom_algebra_unit_and_theta() {
        let a = ap(&FiniteGroup::cyclic(2));
        let h = hom_aa_algebra(&a).unwrap();
        assert!(h.report().passed(), "{}", h.report().summary());
        let alg = h.algebra();
        for i in 0..alg.dim() {
            assert_eq!(alg.mul(alg.unit(), &alg.basis(i)), alg.basis(i));
        }
        assert!(alg.is_commutative());
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn global_smash_of_trivial_algebra_is_h() {
        let a = ap(&FiniteGroup::cyclic(3));
        let hopf = a.hopf().clone();
        let one = HModuleAlgebra::new(HModule::trivial(hopf.clone()), MulTable::from_fn(1, |_, _| Vector::basis(1, 0)), Some(Vector::basis(1, 0))).unwrap();
        let s = global_smash(&one).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.basis_product(i, j), hopf.algebra().basis_product(i, j));
            }
        }
    }

    #[test]
    fn chain_of_isomorphisms() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let a = ap(&g);
            let gg = build_glob(&a).unwrap();
            let r = hglob_vs_kglob(&a, &gg).unwrap();
            assert!(r.passed(), "{}: {}", g.name(), r.summary());
            assert_eq!(gg.hglob.dim(), g.order() * ((1 << g.order()) - 1));
        }
    }

    #[test]
    fn gamma_glob_components_for_z2() {
        let a = ap(&FiniteGroup::cyclic(2));
        let gg = build_glob(&a).unwrap();
        let mut shape: Vec<(usize, usize)> =
            component_decomposition(&gg.kgamma_glob).unwrap().iter().map(|c| (c.matrix_size, c.isotropy_order)).collect();
        shape.sort();
        assert_eq!(shape, vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn yd_checks_pass() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let a = ap(&g);
            let h = hom_aa_algebra(&a).unwrap();
            let yd = yd_structure(&a, &h).unwrap();
            assert!(yd.report.passed(), "{}", yd.report.summary());
        }
    }

    #[test]
    fn morita_and_theta_bar_z2() {
        let hp = build_hpar(&FiniteGroup::cyclic(2)).unwrap();
        let gg = build_glob(hp.apar()).unwrap();
        let mc = morita_context(&hp, &gg.hom_aa, &gg.hglob).unwrap();
        assert!(mc.report.passed(), "{}", mc.report.summary());
        assert_eq!(mc.nm.dim(), 6);
        assert_eq!(mc.m.dim(), 4);
        let tb = theta_bar_iso(&hp, &gg.hom_aa, &gg.hglob, &mc).unwrap();
        assert!(tb.report.passed(), "{}", tb.report.summary());
        let hbar = standard_dilation(&hp.regular_partial()).unwrap();
        assert_eq!(mc.n.dim(), tb.hom.dim());
        assert_eq!(tb.hom.dim(), hbar.dim());
    }

    #[test]
    fn morita_z3_smash_image() {
        let hp = build_hpar(&FiniteGroup::cyclic(3)).unwrap();
        let gg = build_glob(hp.apar()).unwrap();
        let mc = morita_context(&hp, &gg.hom_aa, &gg.hglob).unwrap();
        assert!(mc.report.passed(), "{}", mc.report.summary());
        assert_eq!(mc.mn.dim(), 8);
    }

    #[test]
    fn trivial_group_collapses() {
        let hp = build_hpar(&FiniteGroup::trivial()).unwrap();
        let gg = build_glob(hp.apar()).unwrap();
        assert_eq!(gg.hglob.dim(), 1);
        let mc = morita_context(&hp, &gg.hom_aa, &gg.hglob).unwrap();
        assert_eq!((mc.m.dim(), mc.n.dim()), (1, 1));
        let tb = theta_bar_iso(&hp, &gg.hom_aa, &gg.hglob, &mc).unwrap();
        assert!(tb.matrix.is_identity() || tb.matrix.rank() == 1);
    }

    #[test]
    fn wrong_groupoid_map_is_caught() {
        let a = ap(&FiniteGroup::cyclic(2));
        let gg = build_glob(&a).unwrap();
        let g = a.group();
        let b_smash = global_smash(gg.semilattice.module_algebra()).unwrap();
        let subsets = g.nonempty_subsets();
        let (_, keys) = arrows_over(g, &subsets, |_, _| true).unwrap();
        // (g, A) ↦ Q_A#g instead of Q_{gA}#g
        let images: Vec<Option<usize>> = keys.iter().map(|&(x, o)| gg.semilattice.index(subsets[o]).map(|q| q * 2 + x)).collect();
        let mut r = CheckReport::new();
        check_iso(&mut r, "iso", &Matrix::from_basis_map(6, &images), &gg.kgamma_glob, &b_smash);
        assert!(!r.passed());
    }

    #[test]
    fn mutated_coaction_fails_counit() {
        let a = ap(&FiniteGroup::cyclic(2));
        let h = hom_aa_algebra(&a).unwrap();
        let yd = yd_structure(&a, &h).unwrap();
        let d = h.dim();
        // f ↦ 2 f⊗e; f ↦ f⊗g would still be counital since ε(g) = 1
        let two = Scalar::from_int(2);
        let map = Matrix::from_columns(d * 2, (0..d).map(|i| Vector::basis(d, i).tensor(&Vector::basis(2, 0)).scale(&two)).collect());
        let bad = Coaction { map, ..yd.coaction.clone() };
        assert!(!check_comodule(&bad, a.hopf()).ok("counit"));
    }
}

//! The finite group case: `Γ(G)`, `A_par(kG)` on its atom basis, the partial smash product and `k_par G`.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraHom};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, Space, Subspace, Vector};
use crate::group::{check_order, iter_mask, FiniteGroup};
use crate::groupoid::{Arrow, Groupoid};
use crate::hopf::{check_comodule_algebra, group_hopf, Coaction, HopfAlgebra, ProductOrder, Side};
use crate::partial::{check_pr, PartialModule, PartialModuleAlgebra};
use crate::report::CheckReport;

/// Largest group order for which subset lattices are ever enumerated.
pub const HARD_ORDER_LIMIT: usize = 16;

/// `Γ(G)`: arrows `(g, A)` with `e, g⁻¹ ∈ A`, from `A` to `gA`.
pub fn gamma_groupoid(g: &FiniteGroup) -> Result<Groupoid> {
    Ok(gamma_with_keys(g)?.0)
}

/// `Γ(G)` together with the `(g, object index)` pair behind each arrow.
pub(crate) fn gamma_with_keys(g: &FiniteGroup) -> Result<(Groupoid, Vec<(usize, usize)>)> {
    check_order(g, HARD_ORDER_LIMIT)?;
    let objects = g.subsets_with_identity();
    arrows_over(g, &objects, |x, a| a >> g.inv(x) & 1 == 1)
}

/// Arrows `(x, A)` for `A` among `objects` and `keep(x, A)`, with `(g,A)(h,B) = (gh,B)` iff `A = hB`.
pub(crate) fn arrows_over(
    g: &FiniteGroup,
    objects: &[u64],
    keep: impl Fn(usize, u64) -> bool,
) -> Result<(Groupoid, Vec<(usize, usize)>)> {
    let index = |m: u64| objects.binary_search_by_key(&(m.count_ones(), m), |&o| (o.count_ones(), o)).ok();
    let mut arrows = Vec::new();
    let mut keys = Vec::new();
    for (ai, &a) in objects.iter().enumerate() {
        for x in g.elements() {
            if !keep(x, a) {
                continue;
            }
            let target = index(g.translate(x, a)).ok_or_else(|| Error::IllDefined("translate leaves the object set".into()))?;
            arrows.push(Arrow { label: format!("({},{})", g.label(x), g.subset_label(a)), source: ai, target });
            keys.push((x, ai));
        }
    }
    let lookup: std::collections::HashMap<(usize, usize), usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let labels = objects.iter().map(|&m| g.subset_label(m)).collect();
    let gd = Groupoid::new(labels, arrows, |p, q| {
        let (x, a) = keys[p];
        let (y, b) = keys[q];
        (objects[a] == g.translate(y, objects[b])).then(|| lookup[&(g.mul(x, y), b)])
    })?;
    Ok((gd, keys))
}

/// Groupoid algebra: arrows as basis, composition where defined and zero otherwise.
pub fn groupoid_algebra(gd: &Arc<Groupoid>, name: &str) -> Result<Algebra> {
    let n = gd.num_arrows();
    let labels = gd.arrows().iter().map(|a| a.label.clone()).collect();
    let space = Space::new(name, labels)?;
    let unit = Vector::from_entries(n, (0..gd.objects().len()).map(|o| (gd.identity(o), Scalar::one())));
    let alg = Algebra::from_fn(space, unit, |a, b| match gd.compose(a, b) {
        Some(c) => Vector::basis(n, c),
        None => Vector::zeros(n),
    })?;
    Ok(alg.with_groupoid(gd.clone()))
}

/// `A_par(kG)` with atom basis `P_X` (`X ∋ e`) and `g • P_X = P_{gX}` when `g⁻¹ ∈ X`, else 0.
#[derive(Clone, Debug)]
pub struct AparGroup {
    group: Arc<FiniteGroup>,
    hopf: Arc<HopfAlgebra>,
    subsets: Vec<u64>,
    pma: PartialModuleAlgebra,
}

impl AparGroup {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        Self::with_hopf(Arc::new(group_hopf(g)))
    }

    pub fn with_hopf(hopf: Arc<HopfAlgebra>) -> Result<Self> {
        let group = hopf.group().cloned().ok_or_else(|| Error::Unsupported("A_par atoms need a group algebra".into()))?;
        check_order(&group, HARD_ORDER_LIMIT)?;
        let subsets = group.subsets_with_identity();
        let d = subsets.len();
        let labels = subsets.iter().map(|&m| format!("P{}", group.subset_label(m))).collect();
        let space = Space::new(format!("A_par({})", group.name()), labels)?;
        let unit = Vector::from_entries(d, (0..d).map(|i| (i, Scalar::one())));
        let algebra = Algebra::from_fn(space.clone(), unit, |a, b| if a == b { Vector::basis(d, a) } else { Vector::zeros(d) })?;
        let idx = |m: u64| subsets.binary_search_by_key(&(m.count_ones(), m), |&o| (o.count_ones(), o)).unwrap();
        let action = group
            .elements()
            .map(|x| {
                let imgs = subsets
                    .iter()
                    .map(|&s| (s >> group.inv(x) & 1 == 1).then(|| idx(group.translate(x, s))))
                    .collect::<Vec<_>>();
                Matrix::from_basis_map(d, &imgs)
            })
            .collect();
        let module = PartialModule::new(hopf.clone(), space, action)?;
        let pma = PartialModuleAlgebra::new(module, algebra)?;
        Ok(AparGroup { group, hopf, subsets, pma })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn algebra(&self) -> &Algebra {
        self.pma.algebra()
    }

    pub fn module(&self) -> &PartialModule {
        self.pma.module()
    }

    pub fn module_algebra(&self) -> &PartialModuleAlgebra {
        &self.pma
    }

    pub fn atom_index(&self, mask: u64) -> Option<usize> {
        self.subsets.binary_search_by_key(&(mask.count_ones(), mask), |&o| (o.count_ones(), o)).ok()
    }

    pub fn atom(&self, mask: u64) -> Option<Vector> {
        self.atom_index(mask).map(|i| Vector::basis(self.dim(), i))
    }

    /// `ε_g = Σ_{X∋g} P_X`.
    pub fn eps(&self, g: usize) -> Vector {
        let d = self.dim();
        Vector::from_entries(d, self.subsets.iter().enumerate().filter(|(_, &m)| m >> g & 1 == 1).map(|(i, _)| (i, Scalar::one())))
    }

    /// `Π_{g∈X} ε_g · Π_{g∉X} (1 − ε_g)`, computed with the algebra product.
    pub fn atom_from_eps(&self, mask: u64) -> Vector {
        let a = self.algebra();
        let mut acc = a.unit().clone();
        for g in self.group.elements() {
            let f = if mask >> g & 1 == 1 { self.eps(g) } else { a.unit().sub(&self.eps(g)) };
            acc = a.mul(&acc, &f);
        }
        acc
    }

    pub fn eps_word(&self, word: &[usize]) -> Vector {
        let a = self.algebra();
        word.iter().fold(a.unit().clone(), |acc, &g| a.mul(&acc, &self.eps(g)))
    }

    /// `ε_t = (1/n) Σ_g ε_g`.
    pub fn eps_t(&self) -> Vector {
        let n = self.group.order();
        let mut acc = Vector::zeros(self.dim());
        for g in self.group.elements() {
            acc = acc.add(&self.eps(g));
        }
        acc.scale(&Scalar::new(1, n as i64))
    }
}

/// Structural checks on `A_par(kG)` beyond the partial action axioms.
pub fn check_apar(ap: &AparGroup) -> CheckReport {
    let g = ap.group();
    let a = ap.algebra();
    let n = g.order();
    let mut r = CheckReport::new();
    r.assert("dimension", ap.dim() == 1 << (n - 1), || format!("dim {} ≠ 2^{}", ap.dim(), n - 1));
    let mut fails = Vec::new();
    for x in g.elements() {
        let e = ap.eps(x);
        if a.mul(&e, &e) != e {
            fails.push(format!("ε_{} not idempotent", g.label(x)));
        }
        for y in g.elements() {
            if a.mul(&e, &ap.eps(y)) != a.mul(&ap.eps(y), &e) {
                fails.push(format!("ε_{} ε_{} do not commute", g.label(x), g.label(y)));
            }
        }
    }
    if ap.eps(g.identity()) != *a.unit() {
        fails.push("ε_e ≠ 1".into());
    }
    r.record("eps-idempotents", n * n + 1, fails);
    let fails = ap
        .subsets()
        .iter()
        .enumerate()
        .filter(|(i, &m)| ap.atom_from_eps(m) != Vector::basis(ap.dim(), *i))
        .map(|(_, &m)| g.subset_label(m))
        .collect();
    r.record("atoms-from-eps", ap.dim(), fails);
    // h • ε_{k¹}⋯ε_{kᵐ} = ε_{hk¹}⋯ε_{hkᵐ} ε_h on words of length ≤ 2
    let m = ap.module();
    let mut fails = Vec::new();
    let mut count = 0;
    for h in g.elements() {
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        words.extend(g.elements().map(|k| vec![k]));
        for k in g.elements() {
            for l in g.elements() {
                words.push(vec![k, l]);
            }
        }
        for w in words {
            count += 1;
            let lhs = m.act(h, &ap.eps_word(&w));
            let mut shifted: Vec<usize> = w.iter().map(|&k| g.mul(h, k)).collect();
            shifted.push(h);
            if lhs != ap.eps_word(&shifted) {
                fails.push(format!("{} • ε-word {:?}", g.label(h), w));
            }
        }
    }
    r.record("action-on-eps-words", count, fails);
    r
}

/// Partial smash product `A#̲H = (A⊗H)(1⊗1)` with `(a⊗h)(b⊗k) = a(h₁•b)⊗h₂k`.
#[derive(Clone, Debug)]
pub struct PartialSmash {
    algebra: Algebra,
    span: Subspace,
    generators: Vec<(usize, usize)>,
    dim_a: usize,
    dim_h: usize,
}

impl PartialSmash {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Basis vectors inside `A⊗H`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// `(a, h)` basis indices of the generator `a#h` behind each basis element.
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn embed(&self, x: &Vector) -> Vector {
        self.span.from_coords(x)
    }

    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        self.span.coords(v)
    }

    pub fn ambient_dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_h)
    }
}

/// Smash multiplication on all of `A⊗H`.
pub fn smash_mul(a: &PartialModuleAlgebra, x: &Vector, y: &Vector) -> Vector {
    let hopf = a.hopf();
    let (da, n) = (a.dim(), hopf.dim());
    let alg = a.algebra();
    let m = a.module();
    let mut out = Vector::zeros(da * n);
    for (i, c) in x.iter() {
        let (ai, hi) = (i / n, i % n);
        let co = hopf.sweedler_basis(hi, 2);
        for (j, d) in y.iter() {
            let (bj, kj) = (j / n, j % n);
            let cd = c * d;
            for (idx, e) in &co {
                let left = alg.mul(&Vector::basis(da, ai), m.op(idx[0]).col(bj));
                if left.is_zero() {
                    continue;
                }
                let right = hopf.algebra().basis_product(idx[1], kj);
                out = out.add_scaled(&(&cd * e), &left.tensor(right));
            }
        }
    }
    out
}

/// `a#h = a(h₁•1)⊗h₂` inside `A⊗H`.
pub fn smash_generator(a: &PartialModuleAlgebra, ai: usize, h: usize) -> Vector {
    smash_element(a, &Vector::basis(a.dim(), ai), h)
}

/// `a#h` for an arbitrary `a ∈ A` and basis `h`.
pub fn smash_element(a: &PartialModuleAlgebra, av: &Vector, h: usize) -> Vector {
    let hopf = a.hopf();
    let alg = a.algebra();
    let mut out = Vector::zeros(a.dim() * hopf.dim());
    for (idx, c) in hopf.sweedler_basis(h, 2) {
        let v = alg.mul(av, &a.module().op(idx[0]).apply(alg.unit()));
        out = out.add_scaled(&c, &v.tensor(&hopf.basis(idx[1])));
    }
    out
}

pub fn partial_smash(a: &PartialModuleAlgebra) -> Result<PartialSmash> {
    let hopf = a.hopf().clone();
    let (da, n) = (a.dim(), hopf.dim());
    let mut gens = Vec::new();
    let mut vecs = Vec::new();
    for ai in 0..da {
        for h in 0..n {
            gens.push((ai, h));
            vecs.push(smash_generator(a, ai, h));
        }
    }
    let span = Subspace::spanned_by(da * n, vecs);
    let generators: Vec<(usize, usize)> = span.chosen().iter().map(|&i| gens[i]).collect();
    let labels: Vec<String> = generators
        .iter()
        .map(|&(ai, h)| format!("{}#{}", a.algebra().space().label(ai), hopf.label(h)))
        .collect();
    let d = span.dim();
    let basis = span.basis().to_vec();
    let mut products = Vec::with_capacity(d * d);
    for x in &basis {
        for y in &basis {
            let p = smash_mul(a, x, y);
            products.push(span.coords(&p).ok_or_else(|| Error::IllDefined("A#̲H is not closed under the product".into()))?);
        }
    }
    let one = a.algebra().unit().tensor(hopf.unit());
    let unit = span.coords(&one).ok_or_else(|| Error::IllDefined("1⊗1 is not in A#̲H".into()))?;
    let space = Space::new(format!("{}#{}", a.algebra().space().name(), hopf.space().name()), labels)?;
    let table = crate::algebra::MulTable::from_fn(d, |i, j| products[i * d + j].clone());
    let algebra = Algebra::new(space, table, unit)?;
    Ok(PartialSmash { algebra, span, generators, dim_a: da, dim_h: n })
}

/// `k_par G` realized as `A_par#̲kG`, with its groupoid model and the verified isomorphism.
#[derive(Clone, Debug)]
pub struct HparGroup {
    apar: AparGroup,
    smash: PartialSmash,
    bracket: Matrix,
    groupoid: Arc<Groupoid>,
    groupoid_algebra: Arc<Algebra>,
    iso: AlgebraHom,
}

impl HparGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.apar.group()
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.apar.hopf()
    }

    pub fn apar(&self) -> &AparGroup {
        &self.apar
    }

    pub fn smash(&self) -> &PartialSmash {
        &self.smash
    }

    pub fn algebra(&self) -> &Algebra {
        self.smash.algebra()
    }

    pub fn dim(&self) -> usize {
        self.smash.dim()
    }

    /// `g ↦ [g] = 1#g`, columns indexed by group elements.
    pub fn bracket(&self) -> &Matrix {
        &self.bracket
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn groupoid_algebra(&self) -> &Arc<Algebra> {
        &self.groupoid_algebra
    }

    /// `kΓ(G) → A_par#̲kG`, `(g, A) ↦ P_{gA}#g`.
    pub fn iso(&self) -> &AlgebraHom {
        &self.iso
    }

    /// Smash basis element `P_X#g`, when `g ∈ X`.
    pub fn element(&self, mask: u64, g: usize) -> Option<usize> {
        let ai = self.apar.atom_index(mask)?;
        self.smash.generators().iter().position(|&p| p == (ai, g))
    }

    /// `a#1` for `a ∈ A_par`.
    pub fn from_apar(&self, a: &Vector) -> Vector {
        let v = a.tensor(self.hopf().unit());
        self.smash.coords(&v).expect("A_par#1 lies in the smash product")
    }

    /// The regular partial module `[h] • x = [h]x`.
    pub fn regular_partial(&self) -> PartialModule {
        let alg = self.algebra();
        let action = (0..self.hopf().dim()).map(|h| alg.left_mult(self.bracket.col(h))).collect();
        PartialModule::new_unchecked(self.hopf().clone(), alg.space().clone(), action)
    }
}

pub fn build_hpar(g: &FiniteGroup) -> Result<HparGroup> {
    let apar = AparGroup::new(g)?;
    build_hpar_from(apar)
}

pub fn build_hpar_from(apar: AparGroup) -> Result<HparGroup> {
    let g = apar.group().clone();
    let smash = partial_smash(apar.module_algebra())?;
    let one = apar.algebra().unit().clone();
    let bracket = Matrix::from_columns(
        smash.dim(),
        g.elements()
            .map(|x| smash.coords(&smash_element(apar.module_algebra(), &one, x)).expect("1#g lies in the smash product"))
            .collect(),
    );
    let (gd, keys) = gamma_with_keys(&g)?;
    let gd = Arc::new(gd);
    let galg = Arc::new(groupoid_algebra(&gd, &format!("kΓ({})", g.name()))?);
    let subsets = apar.subsets().to_vec();
    let mut cols = Vec::with_capacity(gd.num_arrows());
    for &(x, src) in &keys {
        let a = subsets[src];
        let ga = g.translate(x, a);
        let ai = apar.atom_index(ga).expect("gA contains e");
        let pos = smash
            .generators()
            .iter()
            .position(|&p| p == (ai, x))
            .ok_or_else(|| Error::IllDefined(format!("P_{}#{} is not a basis element", g.subset_label(ga), g.label(x))))?;
        cols.push(Vector::basis(smash.dim(), pos));
    }
    let map = Matrix::from_columns(smash.dim(), cols);
    let smash_alg = Arc::new(smash.algebra().clone());
    let iso = AlgebraHom::new(galg.clone(), smash_alg, map)?;
    if !iso.is_bijective() {
        return Err(Error::IllDefined("kΓ(G) → A_par#̲kG is not bijective".into()));
    }
    let out = HparGroup { apar, smash, bracket, groupoid: gd, groupoid_algebra: galg, iso };
    let rep = check_hpar(&out);
    if !rep.passed() {
        return Err(Error::rejected("k_par G", rep.summary()));
    }
    Ok(out)
}

/// Partial representation axioms for `[−]`, `ε_g = [g][g⁻¹]`, and `[g]ε_k = ε_{gk}[g]`.
pub fn check_hpar(hp: &HparGroup) -> CheckReport {
    let g = hp.group();
    let alg = hp.algebra();
    let action: Vec<Matrix> = g.elements().map(|x| alg.left_mult(hp.bracket.col(x))).collect();
    let mut r = CheckReport::new();
    r.extend_prefixed("bracket.", check_pr(hp.hopf(), alg.dim(), &action));
    let br = |x: usize| hp.bracket.col(x).clone();
    let eps = |x: usize| hp.from_apar(&hp.apar.eps(x));
    let fails = g.elements().filter(|&x| alg.mul(&br(x), &br(g.inv(x))) != eps(x)).map(|x| g.label(x).to_string()).collect();
    r.record("eps-from-brackets", g.order(), fails);
    let mut fails = Vec::new();
    for x in g.elements() {
        for k in g.elements() {
            if alg.mul(&br(x), &eps(k)) != alg.mul(&eps(g.mul(x, k)), &br(x)) {
                fails.push(format!("({}, {})", g.label(x), g.label(k)));
            }
        }
    }
    r.record("bracket-eps-exchange", g.order() * g.order(), fails);
    r.assert("iso-bijective", hp.iso.is_bijective(), || "iso is not bijective".into());
    r
}

/// `ε_t⁻¹ = n Σ_i (−1)^i/(i+1) Σ_{|X|=i, X ⊆ G∖{e}} Π_{g∈X} ε_g`, checked against `ε_t b = 1` and `t • b = 1`.
pub fn eps_t_inverse(ap: &AparGroup) -> Result<Vector> {
    let g = ap.group();
    let a = ap.algebra();
    let n = g.order();
    let rest = g.full_mask() & !g.identity_mask();
    let mut b = Vector::zeros(ap.dim());
    for x in g.subsets_where(|m| m & !rest == 0) {
        let i = x.count_ones() as i64;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let word: Vec<usize> = iter_mask(x).collect();
        b = b.add_scaled(&Scalar::new(sign * n as i64, i + 1), &ap.eps_word(&word));
    }
    if a.mul(&ap.eps_t(), &b) != *a.unit() {
        return Err(Error::IllDefined("ε_t · b ≠ 1".into()));
    }
    let mut tb = Vector::zeros(ap.dim());
    for x in g.elements() {
        tb = tb.add(&ap.module().act(x, &b));
    }
    if tb.scale(&Scalar::new(1, n as i64)) != *a.unit() {
        return Err(Error::IllDefined("t • b ≠ 1".into()));
    }
    Ok(b)
}

/// Left `[h] ↦ h₁⊗[h₂]` and right `[h] ↦ [h₁]⊗h₂` coactions on the smash basis.
pub fn hpar_coactions(hp: &HparGroup) -> Result<(Coaction, Coaction)> {
    let hopf = hp.hopf();
    let sm = hp.smash();
    let (da, n) = sm.ambient_dims();
    let d = sm.dim();
    let mut right = Vec::with_capacity(d);
    let mut left = Vec::with_capacity(d);
    for v in sm.span().basis() {
        // a⊗h ↦ Σ (a⊗h₁)⊗h₂ split along the last factor
        let mut slices = vec![Vec::new(); n];
        for (i, c) in v.iter() {
            let (a, h) = (i / n, i % n);
            for (idx, x) in hopf.sweedler_basis(h, 2) {
                slices[idx[1]].push((a * n + idx[0], c * &x));
            }
        }
        let mut rv = Vec::new();
        let mut lv = Vec::new();
        for (k, items) in slices.into_iter().enumerate() {
            let piece = Vector::from_entries(da * n, items);
            let c = sm.coords(&piece).ok_or_else(|| Error::IllDefined("right coaction leaves A#̲H".into()))?;
            rv.extend(c.iter().map(|(j, x)| (j * n + k, x.clone())));
        }
        let mut slices = vec![Vec::new(); n];
        for (i, c) in v.iter() {
            let (a, h) = (i / n, i % n);
            for (idx, x) in hopf.sweedler_basis(h, 2) {
                slices[idx[0]].push((a * n + idx[1], c * &x));
            }
        }
        for (k, items) in slices.into_iter().enumerate() {
            let piece = Vector::from_entries(da * n, items);
            let c = sm.coords(&piece).ok_or_else(|| Error::IllDefined("left coaction leaves A#̲H".into()))?;
            lv.extend(c.iter().map(|(j, x)| (k * d + j, x.clone())));
        }
        right.push(Vector::from_entries(d * n, rv));
        left.push(Vector::from_entries(d * n, lv));
    }
    let carrier = sm.algebra().space().clone();
    let l = Coaction { carrier: carrier.clone(), side: Side::Left, map: Matrix::from_columns(n * d, left) };
    let r = Coaction { carrier, side: Side::Right, map: Matrix::from_columns(d * n, right) };
    Ok((l, r))
}

/// Comodule algebra axioms on both sides plus `(id⊗ρ_R)ρ_L = (ρ_L⊗id)ρ_R`.
pub fn check_bicomodule(hp: &HparGroup, left: &Coaction, right: &Coaction) -> CheckReport {
    let hopf = hp.hopf();
    let alg = hp.algebra();
    let mut r = CheckReport::new();
    r.extend_prefixed("left.", check_comodule_algebra(alg, left, hopf, ProductOrder::Ordinary));
    r.extend_prefixed("right.", check_comodule_algebra(alg, right, hopf, ProductOrder::Ordinary));
    let n = hopf.dim();
    let a = Matrix::identity(n).kron(&right.map).mul(&left.map);
    let b = left.map.kron(&Matrix::identity(n)).mul(&right.map);
    let fails = (0..alg.dim()).filter(|&i| a.col(i) != b.col(i)).map(|i| alg.space().label(i).to_string()).collect();
    r.record("bicomodule-compatibility", alg.dim(), fails);
    let fails = hp
        .group()
        .elements()
        .filter(|&x| right.map.apply(hp.bracket().col(x)) != hp.bracket().col(x).tensor(&hopf.basis(x)))
        .map(|x| hp.group().label(x).to_string())
        .collect();
    r.record("right-on-brackets", n, fails);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups() -> Vec<FiniteGroup> {
        vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3).unwrap()]
    }

    #[test]
    fn gamma_counts() {
        let t = gamma_groupoid(&FiniteGroup::trivial()).unwrap();
        assert_eq!((t.objects().len(), t.num_arrows()), (1, 1));
        let z2 = gamma_groupoid(&FiniteGroup::cyclic(2)).unwrap();
        let labels: Vec<&str> = z2.arrows().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["(e,{e})", "(e,{e,g})", "(g,{e,g})"]);
        for g in groups() {
            let n = g.order();
            let expect = (1usize << (n - 1)) + if n > 1 { (n - 1) << (n - 2) } else { 0 };
            assert_eq!(gamma_groupoid(&g).unwrap().num_arrows(), expect, "{}", g.name());
        }
        assert_eq!(gamma_groupoid(&FiniteGroup::cyclic(4)).unwrap().num_arrows(), 20);
        assert_eq!(gamma_groupoid(&FiniteGroup::symmetric(3).unwrap()).unwrap().num_arrows(), 112);
    }

    #[test]
    fn groupoid_algebra_z2() {
        let gd = Arc::new(gamma_groupoid(&FiniteGroup::cyclic(2)).unwrap());
        let a = groupoid_algebra(&gd, "kΓ").unwrap();
        // (g,{e,g})² = (e,{e,g})
        assert_eq!(a.mul(&a.basis(2), &a.basis(2)), a.basis(1));
        let gd3 = Arc::new(gamma_groupoid(&FiniteGroup::cyclic(3)).unwrap());
        assert_eq!(groupoid_algebra(&gd3, "kΓ").unwrap().dim(), 8);
    }

    #[test]
    fn apar_structure() {
        for g in groups() {
            let ap = AparGroup::new(&g).unwrap();
            assert!(check_apar(&ap).passed(), "{}", g.name());
        }
        let ap = AparGroup::new(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(ap.eps(1), ap.atom(0b11).unwrap());
        assert!(ap.module().act(1, &ap.atom(0b01).unwrap()).is_zero());
    }

    #[test]
    fn mutated_apar_action_fails_pa3() {
        let ap = AparGroup::new(&FiniteGroup::cyclic(2)).unwrap();
        let mut action = ap.module().action().to_vec();
        // g • P{e} := P{e,g}
        action[1] = Matrix::from_basis_map(2, &[Some(1), Some(1)]);
        let r = crate::partial::check_pa(ap.hopf(), ap.algebra(), &action);
        assert!(!r.ok("PA3"));
        // g • P{e} := P{e} turns g into the identity, the trivial global action
        action[1] = Matrix::from_basis_map(2, &[Some(0), Some(1)]);
        assert!(crate::partial::check_pa(ap.hopf(), ap.algebra(), &action).passed());
    }

    #[test]
    fn eps_t_three() {
        let ap = AparGroup::new(&FiniteGroup::cyclic(3)).unwrap();
        let expect = Vector::from_entries(ap.dim(), ap.subsets().iter().enumerate().map(|(i, m)| (i, Scalar::new(m.count_ones() as i64, 3))));
        assert_eq!(ap.eps_t(), expect);
    }

    /// Diagonal oracle: `ε_t` acts on `P_X` by `|X|/n`, so the inverse is `n/|X|`.
    #[test]
    fn eps_t_inverse_matches_diagonal() {
        for g in groups() {
            let ap = AparGroup::new(&g).unwrap();
            let n = g.order() as i64;
            let expect = Vector::from_entries(ap.dim(), ap.subsets().iter().enumerate().map(|(i, m)| (i, Scalar::new(n, m.count_ones() as i64))));
            assert_eq!(eps_t_inverse(&ap).unwrap(), expect, "{}", g.name());
        }
    }

    #[test]
    fn hpar_iso_and_dims() {
        for g in groups() {
            let hp = build_hpar(&g).unwrap();
            assert_eq!(hp.dim(), hp.groupoid().num_arrows());
        }
        let hp = build_hpar(&FiniteGroup::cyclic(2)).unwrap();
        let labels: Vec<&str> = hp.algebra().space().labels().iter().map(|s| s.as_str()).collect();
        assert_eq!(labels, ["P{e}#e", "P{e,g}#e", "P{e,g}#g"]);
    }

    #[test]
    fn coactions() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3).unwrap()] {
            let hp = build_hpar(&g).unwrap();
            let (l, r) = hpar_coactions(&hp).unwrap();
            let rep = check_bicomodule(&hp, &l, &r);
            assert!(rep.passed(), "{}", rep.summary());
            // ε_g ↦ ε_g⊗e
            for x in g.elements() {
                let e = hp.from_apar(&hp.apar().eps(x));
                assert_eq!(r.map.apply(&e), e.tensor(&hp.hopf().unit()));
            }
        }
    }

    /// Independent check of `A_par` inside `kΓ(G)`: `[g] = Σ (g, A)` gives `ε_g = Σ_{A∋g} (e, A)`.
    #[test]
    fn atoms_inside_groupoid_algebra() {
        let g = FiniteGroup::cyclic(3);
        let (gd, keys) = gamma_with_keys(&g).unwrap();
        let gd = Arc::new(gd);
        let alg = groupoid_algebra(&gd, "kΓ").unwrap();
        let objs = g.subsets_with_identity();
        let br = |x: usize| {
            Vector::from_entries(alg.dim(), keys.iter().enumerate().filter(|(_, k)| k.0 == x).map(|(i, _)| (i, Scalar::one())))
        };
        let hopf = group_hopf(&g);
        let action: Vec<Matrix> = g.elements().map(|x| alg.left_mult(&br(x))).collect();
        assert!(check_pr(&hopf, alg.dim(), &action).passed());
        let eps = |x: usize| alg.mul(&br(x), &br(g.inv(x)));
        for (oi, &m) in objs.iter().enumerate() {
            let mut p = alg.unit().clone();
            for x in g.elements() {
                let f = if m >> x & 1 == 1 { eps(x) } else { alg.unit().sub(&eps(x)) };
                p = alg.mul(&p, &f);
            }
            assert_eq!(p, alg.basis(gd.identity(oi)));
        }
    }
}

//! Verification suites over one group.

use std::sync::Arc;

use parrep_core::algebra::algebra_hom_violations;
use parrep_core::dilation::{
    check_c_condition, partially_linear_space, restricted_partial_module, standard_dilation, theta_kappa_t, xi, xi_naturality,
};
use parrep_core::exact::{Matrix, Scalar, Space, Vector};
use parrep_core::glob::{build_glob, hglob_vs_kglob, morita_context, theta_bar_iso, yd_structure, GlobGroup};
use parrep_core::group::FiniteGroup;
use parrep_core::hopf::HModule;
use parrep_core::io::RawPartialModule;
use parrep_core::pargroup::{build_hpar, check_apar, check_bicomodule, eps_t_inverse, hpar_coactions, HparGroup};
use parrep_core::partial::{check_pr, enriched_compose, partial_hom_space, PartialModule};
use parrep_core::report::CheckReport;

use crate::config::Suite;
use crate::report::SuiteReport;
use crate::CliError;

/// Morphisms per module used for the Ξ naturality spot-check.
const NATURALITY_SAMPLES: usize = 4;

#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub name: String,
    pub module: PartialModule,
}

/// The built objects shared by all suites.
pub struct Context {
    pub group: Arc<FiniteGroup>,
    pub hp: HparGroup,
    pub glob: Option<Result<GlobGroup, String>>,
    pub corpus: Vec<CorpusModule>,
    /// A user-supplied module, kept raw so broken files can still be reported on.
    pub extra: Option<RawPartialModule>,
}

/// `x ↦ λx` on a line; a partial `kZ2`-module for `λ ∈ {0, 1, −1}`.
pub fn line_module(hp: &HparGroup, lambda: i64) -> parrep_core::Result<PartialModule> {
    let hopf = hp.hopf().clone();
    let g = hp.group();
    let action = g.elements().map(|x| if x == g.identity() { Matrix::identity(1) } else { Matrix::from_int_rows(&[&[lambda]]) }).collect();
    PartialModule::new(hopf, Space::new(format!("line[{lambda}]"), vec!["x".into()])?, action)
}

/// A_par, the trivial module, regular H_par up to order 3 and the three lines for order 2.
pub fn corpus(hp: &HparGroup) -> Result<Vec<CorpusModule>, CliError> {
    let n = hp.group().order();
    let mut out = vec![CorpusModule { name: "A_par".into(), module: hp.apar().module().clone() }];
    if n == 2 {
        for lambda in [0, 1, -1] {
            out.push(CorpusModule { name: format!("line[{lambda}]"), module: line_module(hp, lambda)? });
        }
    } else {
        out.push(CorpusModule { name: "trivial".into(), module: PartialModule::from_global(&HModule::trivial(hp.hopf().clone())) });
    }
    if n <= 3 {
        out.push(CorpusModule { name: "H_par".into(), module: hp.regular_partial() });
    }
    Ok(out)
}

impl Context {
    pub fn new(group: FiniteGroup, extra: Option<RawPartialModule>, suites: &[Suite]) -> Result<Self, CliError> {
        let hp = build_hpar(&group)?;
        if let Some(raw) = &extra {
            if !raw.hopf.same_as(hp.hopf()) {
                return Err(CliError::Parse("module file is over a different Hopf algebra than --group".into()));
            }
        }
        let mut corpus = corpus(&hp)?;
        if let Some(raw) = &extra {
            if raw.check().passed() {
                let name = format!("file:{}", raw.carrier.name());
                corpus.push(CorpusModule { name, module: raw.clone().into_module()? });
            }
        }
        let glob = suites.iter().any(|s| s.needs_glob()).then(|| build_glob(hp.apar()).map_err(|e| e.to_string()));
        Ok(Context { group: hp.group().clone(), hp, glob, corpus, extra })
    }

    fn glob(&self) -> Result<&GlobGroup, String> {
        match &self.glob {
            Some(Ok(g)) => Ok(g),
            Some(Err(e)) => Err(e.clone()),
            None => Err("globalization objects were not built".into()),
        }
    }

    fn extra_rejected(&self, s: &mut SuiteReport) {
        if let Some(raw) = &self.extra {
            let rep = raw.check();
            if !rep.passed() {
                s.error("module-file.accepted", format!("not a partial module: {}", rep.summary()));
            }
        }
    }

    pub fn run(&self, suite: Suite) -> SuiteReport {
        let out = match suite {
            Suite::PrAxioms => self.pr_axioms(),
            Suite::Hpar => self.hpar(),
            Suite::Dilation => self.dilation(),
            Suite::HomObjects => self.hom_objects(),
            Suite::Xi => self.xi(),
            Suite::Yd => self.yd(),
            Suite::Morita => self.morita(),
            Suite::CorollaryChain => self.corollary_chain(),
        };
        out.finish()
    }

    fn pr_axioms(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::PrAxioms.name());
        let hopf = self.hp.hopf();
        let uni = self.hp.regular_partial();
        s.add("universal.", with_pr_equivalence(check_pr(hopf, uni.dim(), uni.action())));
        for c in &self.corpus {
            s.add(&format!("{}.", c.name), with_pr_equivalence(check_pr(hopf, c.module.dim(), c.module.action())));
        }
        if let Some(raw) = &self.extra {
            s.add("module-file.", with_pr_equivalence(raw.check()));
        }
        s.dim("apar", self.hp.apar().dim());
        s.dim("hpar", self.hp.dim());
        s
    }

    fn hpar(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::Hpar.name());
        let (hp, ap) = (&self.hp, self.hp.apar());
        let g = &self.group;
        let n = g.order();
        s.add("", parrep_core::pargroup::check_hpar(hp));
        s.add("apar.", check_apar(ap));
        let formula = (1usize << (n - 1)) + (n - 1) * ((1usize << n) >> 2);
        let arrows = hp.groupoid().num_arrows();
        let mut r = CheckReport::new();
        r.assert("gamma-count", arrows == formula && hp.dim() == formula, || {
            format!("|Γ| = {arrows}, dim A_par#kG = {}, 2^(n-1) + (n-1)2^(n-2) = {formula}", hp.dim())
        });
        let (bad, _) = algebra_hom_violations(hp.iso().map().matrix(), hp.groupoid_algebra(), hp.algebra());
        r.record("iso-structure-constants", hp.dim() * hp.dim(), bad.iter().map(|(i, j)| format!("({i}, {j})")).collect());
        s.add("", r);
        match eps_t_inverse(ap) {
            Ok(x) => s.add("eps-t-inverse.", eps_t_inverse_checks(hp, &x)),
            Err(e) => s.error("eps-t-inverse.exists", e),
        }
        match hpar_coactions(hp) {
            Ok((l, rr)) => s.add("coactions.", check_bicomodule(hp, &l, &rr)),
            Err(e) => s.error("coactions.exist", e),
        }
        s.dim("apar", ap.dim());
        s.dim("hpar", hp.dim());
        s.dim("gamma", arrows);
        s
    }

    fn dilation(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::Dilation.name());
        for c in &self.corpus {
            match standard_dilation(&c.module) {
                Ok(std) => {
                    s.dim(format!("Mbar[{}]", c.name), std.dim());
                    s.add(&format!("{}.", c.name), std.dilation().check());
                }
                Err(e) => s.error(&format!("{}.standard-dilation", c.name), e),
            }
        }
        if self.group.order() == 2 {
            s.add("skew-projection.", skew_projection_checks(&self.hp));
        }
        self.extra_rejected(&mut s);
        s
    }

    fn xi(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::Xi.name());
        let ap = self.hp.apar();
        for c in &self.corpus {
            let p = format!("{}.", c.name);
            let built = standard_dilation(&c.module).and_then(|std| Ok((theta_kappa_t(ap, &c.module)?, std)));
            let (ah, std) = match built {
                Ok(x) => x,
                Err(e) => {
                    s.error(&format!("{p}construction"), e);
                    continue;
                }
            };
            s.dim(format!("Mbar[{}]", c.name), std.dim());
            s.dim(format!("AparHom[{}]", c.name), ah.dim());
            match xi(&std, &ah) {
                Ok(x) => s.add(&p, x.report),
                Err(e) => s.error(&format!("{p}xi"), e),
            }
            let mut r = CheckReport::new();
            match partial_hom_space(&c.module, &c.module) {
                Ok(endos) => {
                    let mut fails = Vec::new();
                    let take = endos.len().min(NATURALITY_SAMPLES);
                    for (i, f) in endos.iter().take(take).enumerate() {
                        match xi_naturality(f, &std, &ah, &std, &ah) {
                            Ok(true) => {}
                            Ok(false) => fails.push(format!("endomorphism {i}")),
                            Err(e) => fails.push(format!("endomorphism {i}: {e}")),
                        }
                    }
                    r.record("naturality", take, fails);
                }
                Err(e) => r.assert("naturality", false, || e.to_string()),
            }
            s.add(&p, r);
        }
        self.extra_rejected(&mut s);
        s
    }

    fn hom_objects(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::HomObjects.name());
        let gg = match self.glob() {
            Ok(g) => g,
            Err(e) => {
                s.error("globalization", e);
                return s;
            }
        };
        let ap = self.hp.apar();
        let hopf = self.hp.hopf();
        let regular = HModule::regular(hopf.clone());
        for c in &self.corpus {
            match partially_linear_space(ap, &regular, &c.module) {
                Ok(pl) => {
                    s.dim(format!("partially-linear[{}]", c.name), pl.basis.len());
                    s.add(&format!("{}.psi.", c.name), pl.report);
                }
                Err(e) => s.error(&format!("{}.psi", c.name), e),
            }
        }
        let haa = &gg.hom_aa;
        s.add("hom-algebra.", haa.report().clone());
        s.dim("homAA", haa.dim());
        let others: Vec<_> = self
            .corpus
            .iter()
            .filter(|c| c.name != "A_par")
            .filter_map(|c| theta_kappa_t(ap, &c.module).ok().map(|ah| (c.name.clone(), ah)))
            .collect();
        s.add("enriched.", enriched_checks(haa.hom(), &others.iter().map(|(n, ah)| (n.as_str(), ah.hom())).collect::<Vec<_>>(), ap.dim()));
        for (name, ah) in &others {
            s.dim(format!("AparHom[{name}]"), ah.dim());
        }
        self.extra_rejected(&mut s);
        s
    }

    fn yd(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::Yd.name());
        match self.glob().map_err(|e| e.to_string()).and_then(|gg| yd_structure(self.hp.apar(), &gg.hom_aa).map_err(|e| e.to_string())) {
            Ok(y) => s.add("", y.report),
            Err(e) => s.error("yd-structure", e),
        }
        if let Ok(gg) = self.glob() {
            s.dim("homAA", gg.hom_aa.dim());
        }
        s
    }

    fn morita(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::Morita.name());
        let gg = match self.glob() {
            Ok(g) => g,
            Err(e) => {
                s.error("globalization", e);
                return s;
            }
        };
        let mc = match morita_context(&self.hp, &gg.hom_aa, &gg.hglob) {
            Ok(m) => m,
            Err(e) => {
                s.error("context", e);
                return s;
            }
        };
        s.add("context.", mc.report.clone());
        for (k, v) in [("M", mc.m.dim()), ("N", mc.n.dim()), ("MN", mc.mn.dim()), ("NM", mc.nm.dim()), ("smash-image", mc.smash_image.dim())] {
            s.dim(k, v);
        }
        s.dim("hglob", gg.hglob.dim());
        match theta_bar_iso(&self.hp, &gg.hom_aa, &gg.hglob, &mc) {
            Ok(tb) => {
                s.dim("AparHom[H_par]", tb.hom.dim());
                s.add("theta-bar.", tb.report);
            }
            Err(e) => s.error("theta-bar", e),
        }
        s
    }

    fn corollary_chain(&self) -> SuiteReport {
        let mut s = SuiteReport::new(Suite::CorollaryChain.name());
        let gg = match self.glob() {
            Ok(g) => g,
            Err(e) => {
                s.error("globalization", e);
                return s;
            }
        };
        match hglob_vs_kglob(self.hp.apar(), gg) {
            Ok(r) => s.add("", r),
            Err(e) => s.error("chain", e),
        }
        let n = self.group.order();
        let comps = gg.gamma_glob.components();
        let total: usize = comps.iter().map(|c| c.dim()).sum();
        let expect = n * ((1usize << n) - 1);
        let mut r = CheckReport::new();
        r.assert("component-total", total == expect && gg.hglob.dim() == expect, || {
            format!("components sum to {total}, dim H_glob = {}, |G|(2^|G| - 1) = {expect}", gg.hglob.dim())
        });
        s.add("", r);
        for c in &comps {
            s.notes.push(format!("component: {} objects, M_{}(k G_x) with |G_x| = {}", c.objects.len(), c.matrix_size, c.isotropy_order));
        }
        s.dim("B", gg.semilattice.dim());
        s.dim("homAA", gg.hom_aa.dim());
        s.dim("hglob", gg.hglob.dim());
        s.dim("gammaGlob", gg.gamma_glob.num_arrows());
        s.dim("components", comps.len());
        s
    }
}

/// Appends the report-level equivalence PR2∧PR3 ⟺ PR4∧PR5.
pub fn with_pr_equivalence(mut r: CheckReport) -> CheckReport {
    let left = r.ok("PR2") && r.ok("PR3");
    let right = r.ok("PR4") && r.ok("PR5");
    r.assert("PR23-iff-PR45", left == right, || format!("PR2∧PR3 = {left}, PR4∧PR5 = {right}"));
    r
}

/// `ε_t x = 1`, `t • x = 1` and `x = Σ_X (|G|/|X|) P_X`.
pub fn eps_t_inverse_checks(hp: &HparGroup, x: &Vector) -> CheckReport {
    let ap = hp.apar();
    let a = ap.algebra();
    let g = ap.group();
    let n = g.order();
    let mut r = CheckReport::new();
    r.assert("left-inverse", a.mul(&ap.eps_t(), x) == *a.unit(), || "ε_t x ≠ 1".into());
    let t_x = g.elements().fold(Vector::zeros(ap.dim()), |acc, h| acc.add(&ap.module().act(h, x))).scale(&Scalar::new(1, n as i64));
    r.assert("integral-action", t_x == *a.unit(), || "t • x ≠ 1".into());
    let oracle = ap.subsets().iter().fold(Vector::zeros(ap.dim()), |acc, &mask| {
        let size = mask.count_ones() as i64;
        acc.add_scaled(&Scalar::new(n as i64, size), &ap.atom(mask).expect("subset is an atom"))
    });
    r.assert("diagonal-oracle", &oracle == x, || format!("x = {x:?}, Σ (|G|/|X|) P_X = {oracle:?}"));
    r
}

/// On the regular `kZ2`-module, `T(e) = T(g) = e` fails the c-condition exactly at `g`.
pub fn skew_projection_checks(hp: &HparGroup) -> CheckReport {
    let reg = HModule::regular(hp.hopf().clone());
    let skew = Matrix::from_int_rows(&[&[1, 1], &[0, 0]]);
    let mut r = CheckReport::new();
    let fails_at_g = match check_c_condition(&reg, &skew) {
        Ok(c) => c.get("c-condition").is_some_and(|c| !c.passed && c.failures == vec![hp.hopf().label(1).to_string()]),
        Err(_) => false,
    };
    r.assert("c-condition-fails-at-g", fails_at_g, || "the skew projection was not rejected at g".into());
    r.assert("restriction-refused", restricted_partial_module(&reg, &skew).is_err(), || "restriction was accepted".into());
    r
}

/// Associativity and unit laws of enriched composition on `{A, A}` and `{A, A} × {A, M}`.
pub fn enriched_checks(
    aa: &parrep_core::partial::HomObject,
    others: &[(&str, &parrep_core::partial::HomObject)],
    da: usize,
) -> CheckReport {
    let hopf = aa.source().hopf();
    let b = aa.basis();
    let d = b.len();
    let comp = |f: &Matrix, g: &Matrix| enriched_compose(f, g, hopf, da);
    let mut r = CheckReport::new();
    let products: Vec<Vec<Matrix>> = (0..d).map(|i| (0..d).map(|j| comp(&b[i], &b[j])).collect()).collect();
    let closed = products.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, p)| (i, j, p)));
    r.record("closed", d * d, closed.filter(|(_, _, p)| !aa.contains(p)).map(|(i, j, _)| format!("(f{i}, f{j})")).collect());
    let mut fails = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if comp(&products[i][j], &b[k]) != comp(&b[i], &products[j][k]) {
                    fails.push(format!("(f{i}, f{j}, f{k})"));
                }
            }
        }
    }
    r.record("associative", d * d * d, fails);
    match aa.enriched_unit() {
        Ok(u) => {
            let fails = (0..d).filter(|&i| comp(&u, &b[i]) != b[i] || comp(&b[i], &u) != b[i]).map(|i| format!("f{i}")).collect();
            r.record("unital", d, fails);
            for (name, am) in others {
                let c = am.basis();
                let mut fails = Vec::new();
                for (k, phi) in c.iter().enumerate() {
                    if comp(&u, phi) != *phi {
                        fails.push(format!("unit∘φ{k}"));
                    }
                    for i in 0..d {
                        for j in 0..d {
                            let left = comp(&products[i][j], phi);
                            if !am.contains(&left) || left != comp(&b[i], &comp(&b[j], phi)) {
                                fails.push(format!("(f{i}, f{j}, φ{k})"));
                            }
                        }
                    }
                }
                r.record(format!("associative-with[{name}]"), c.len() * (d * d + 1), fails);
            }
        }
        Err(e) => r.assert("unital", false, || e.to_string()),
    }
    r
}

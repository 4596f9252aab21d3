use std::sync::Arc;

use proptest::prelude::*;

use parrep_core::algebra::component_decomposition;
use parrep_core::exact::{span_closure, solve_matrix, Matrix, Scalar, Space, Subspace, Vector};
use parrep_core::glob::gamma_glob;
use parrep_core::group::FiniteGroup;
use parrep_core::hopf::{group_hopf, HModule};
use parrep_core::io::{from_json, to_json, HopfFile, PartialModuleFile};
use parrep_core::pargroup::{build_hpar, eps_t_inverse, AparGroup};
use parrep_core::partial::{apar_left_action, check_pr, PartialModule};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Scalar::new(p, q))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(prop_oneof![3 => Just(Scalar::zero()), 2 => scalar()], dim).prop_map(Vector::from_dense)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(vector(rows), cols).prop_map(move |c| Matrix::from_columns(rows, c))
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn group(max_order: usize) -> impl Strategy<Value = FiniteGroup> {
    let specs: Vec<&'static str> = ["trivial", "cyclic:2", "cyclic:3", "cyclic:4", "klein4", "cyclic:5", "symmetric:3"]
        .into_iter()
        .filter(|s| FiniteGroup::builtin(s).unwrap().order() <= max_order)
        .collect();
    proptest::sample::select(specs).prop_map(|s| FiniteGroup::builtin(s).unwrap())
}

proptest! {
    #[test]
    fn scalars_stay_reduced(p in -50i64..50, q in 1i64..50, k in 1i64..7) {
        let a = Scalar::new(p, q);
        prop_assert_eq!(&Scalar::new(p * k, q * k), &a);
        prop_assert!(a.denom() > 0.into());
        prop_assert_eq!(num_integer::Integer::gcd(&a.numer(), &a.denom()), if p == 0 { a.denom() } else { 1.into() });
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn solved_systems_hit_the_target(m in any_matrix(), seed in vector(5)) {
        let x = Vector::from_entries(m.ncols(), seed.iter().filter(|(i, _)| *i < m.ncols()).map(|(i, c)| (i, c.clone())));
        let target = m.apply(&x);
        let y = solve_matrix(&m, &target).expect("target lies in the image");
        prop_assert_eq!(m.apply(&y), target);
    }

    #[test]
    fn kernel_is_independent_and_killed(m in any_matrix()) {
        let k = m.kernel();
        prop_assert!(k.iter().all(|v| m.apply(v).is_zero()));
        prop_assert_eq!(Subspace::spanned_by(m.ncols(), k.iter().cloned()).dim(), k.len());
        prop_assert_eq!(m.rank() + k.len(), m.ncols());
    }

    #[test]
    fn span_closure_is_a_fixed_point(gens in proptest::collection::vec(matrix(4, 4), 1..3), seed in vector(4)) {
        let s = span_closure(4, [seed], &gens);
        prop_assert!(gens.iter().all(|g| s.is_invariant(g)));
        let again = span_closure(4, s.basis().to_vec(), &gens);
        prop_assert!(again.same_as(&s));
    }

    #[test]
    fn kron_is_associative(a in matrix(2, 2), b in matrix(2, 3), c in matrix(3, 1)) {
        let left = a.kron(&b).kron(&c);
        prop_assert_eq!(left.nrows(), 2 * 2 * 3);
        prop_assert_eq!(left, a.kron(&b.kron(&c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_hopf_laws_on_random_elements(g in group(6), seed in vector(6), seed2 in vector(6)) {
        let h = group_hopf(&g);
        let n = h.dim();
        let cut = |v: &Vector| Vector::from_entries(n, v.iter().filter(|(i, _)| *i < n).map(|(i, c)| (i, c.clone())));
        let (a, b) = (cut(&seed), cut(&seed2));
        let hh = h.algebra().tensor(h.algebra());
        prop_assert_eq!(h.comul(&h.mul(&a, &b)), hh.mul(&h.comul(&a), &h.comul(&b)));
        prop_assert_eq!(h.antipode(&h.antipode(&a)), a.clone());
        // m(S ⊗ id)Δ(a) = ε(a)1
        let mut lhs = Vector::zeros(n);
        for (k, c) in h.comul(&a).iter() {
            let s = h.antipode(&h.basis(k / n));
            lhs = lhs.add_scaled(c, &h.mul(&s, &h.basis(k % n)));
        }
        prop_assert_eq!(lhs, h.unit().scale(&h.counit(&a)));
    }

    #[test]
    fn pr_pairs_agree_on_perturbed_actions(g in group(3), which in 0usize..3, col in 0usize..7, v in vector(7)) {
        let ap = AparGroup::new(&g).unwrap();
        let m = ap.module();
        let d = m.dim();
        let mut action = m.action().to_vec();
        let h = which % action.len();
        let mut cols = action[h].columns().to_vec();
        cols[col % d] = Vector::from_entries(d, v.iter().filter(|(i, _)| *i < d).map(|(i, c)| (i, c.clone())));
        action[h] = Matrix::from_columns(d, cols);
        let r = check_pr(m.hopf(), d, &action);
        prop_assert_eq!(r.ok("PR2") && r.ok("PR3"), r.ok("PR4") && r.ok("PR5"));
        prop_assert!(r.ok("PR1") == action[ap.hopf().group().unwrap().identity()].is_identity());
    }

    #[test]
    fn global_modules_see_trivial_eps(n in 2usize..5, shift in 0usize..5, copies in 1usize..3) {
        // permutation representation of Z_n on `copies` copies of k^n, rotating by `shift`
        let g = FiniteGroup::cyclic(n);
        let hopf = Arc::new(group_hopf(&g));
        let d = n * copies;
        let act = |k: usize| {
            let images: Vec<Option<usize>> = (0..d).map(|i| Some((i / n) * n + (i % n + k * shift) % n)).collect();
            Matrix::from_basis_map(d, &images)
        };
        let x = HModule::new(hopf.clone(), Space::indexed("X", "x", d), (0..n).map(act).collect()).unwrap();
        let m = PartialModule::from_global(&x);
        prop_assert!(m.check().passed());
        for h in 0..n {
            prop_assert_eq!(apar_left_action(&m, h), Matrix::identity(d).scale(&hopf.counit_basis(h)));
        }
    }

    #[test]
    fn partial_model_relations(g in group(4)) {
        let hp = build_hpar(&g).unwrap();
        let ap = hp.apar();
        let a = ap.algebra();
        for x in g.elements() {
            for y in g.elements() {
                prop_assert_eq!(a.mul(&ap.eps(x), &ap.eps(y)), a.mul(&ap.eps(y), &ap.eps(x)));
                // [x]ε_y = ε_{xy}[x]
                let bx = hp.bracket().col(x);
                let lhs = hp.algebra().mul(bx, &hp.from_apar(&ap.eps(y)));
                let rhs = hp.algebra().mul(&hp.from_apar(&ap.eps(g.mul(x, y))), bx);
                prop_assert_eq!(lhs, rhs);
            }
        }
        let inv = eps_t_inverse(ap).unwrap();
        let mut t_inv = Vector::zeros(ap.dim());
        for x in g.elements() {
            t_inv = t_inv.add(&ap.module().act(x, &inv));
        }
        let n = g.order();
        // t = (1/|G|) Σ g
        prop_assert_eq!(&t_inv.scale(&Scalar::new(1, n as i64)), a.unit());
        prop_assert_eq!(ap.dim(), 1 << (n - 1));
        prop_assert_eq!(hp.dim(), (1 << (n - 1)) + (n - 1) * (1 << n >> 2));
    }

    #[test]
    fn glob_groupoid_components_fill_the_algebra(g in group(4)) {
        let gd = Arc::new(gamma_glob(&g).unwrap());
        let n = g.order();
        let total: usize = gd.components().iter().map(|c| c.dim()).sum();
        prop_assert_eq!(total, n * ((1 << n) - 1));
        let alg = parrep_core::pargroup::groupoid_algebra(&gd, "kΓ").unwrap().with_groupoid(gd.clone());
        prop_assert_eq!(component_decomposition(&alg).unwrap().len(), gd.components().len());
    }

    #[test]
    fn files_round_trip(g in group(6), col in 0usize..4, v in vector(4)) {
        let h = group_hopf(&g);
        let back = from_json::<HopfFile>(&to_json(&HopfFile::from_hopf(&h))).unwrap().to_hopf().unwrap();
        prop_assert!(back.same_as(&h));

        let ap = AparGroup::new(&FiniteGroup::cyclic(3)).unwrap();
        let mut f = PartialModuleFile::from_module(ap.module(), "group:cyclic:3");
        let label = ap.module().carrier().label(col % ap.dim()).to_string();
        let labels = ap.module().carrier().labels().to_vec();
        f.action.push(("g".into(), label, v.iter().map(|(i, c)| (labels[i].clone(), c.clone())).collect()));
        let f2: PartialModuleFile = from_json(&to_json(&f)).unwrap();
        prop_assert_eq!(&f2, &f);
    }
}

use graphgeom::calculus::{tensor, OneForm, ScalarFunction, Tensor2};
use graphgeom::cayley::{
    cayley_graph, characters, circulant_eigenvectors, invariant_form_laplacian, maurer_cartan, CandidateKind,
    CayleyGraph, FiniteGroup, GeneratingSet,
};
use graphgeom::geometry::{check_braid, check_metric_compat, Metric};
use graphgeom::graph::named;
use graphgeom::laplacian::{apply_vertex_operator, vertex_laplacian};
use graphgeom::linalg::{rat, RatPolynomial};
use graphgeom::Error;

fn build(spec: &str, gens: &[&str]) -> CayleyGraph {
    let g = FiniteGroup::from_spec(spec).unwrap();
    let c = GeneratingSet::from_labels(&g, gens).unwrap();
    cayley_graph(&g, &c).unwrap()
}

fn valid_cases() -> Vec<CayleyGraph> {
    vec![
        build("sym:3", &["102", "210", "021"]),
        build("sym:3", &["102", "210", "021", "120", "201"]),
        build("cyclic:6", &["1", "3", "5"]),
        build("cyclic:7", &["1", "6", "2", "5"]),
        build("product:cyclic:2,cyclic:2", &["0:1", "1:0", "1:1"]),
        build("product:cyclic:2,cyclic:3", &["1:0", "0:1", "0:2"]),
        build("sym:4", &["1023", "0213", "0132", "2103", "3120", "0321"]),
    ]
}

#[test]
fn group_specs() {
    let z6 = FiniteGroup::from_spec("cyclic:6").unwrap();
    assert_eq!(z6.order(), 6);
    assert!(z6.is_abelian());
    assert_eq!(z6.element_order(z6.element("1").unwrap()), 6);
    let s3 = FiniteGroup::from_spec("sym:3").unwrap();
    assert_eq!(s3.order(), 6);
    assert!(!s3.is_abelian());
    let klein = FiniteGroup::from_spec("product:cyclic:2,cyclic:2").unwrap();
    assert_eq!(klein.order(), 4);
    assert!((0..4).filter(|&a| a != klein.identity()).all(|a| klein.element_order(a) == 2));
    assert!(FiniteGroup::from_spec("dihedral:4").is_err());
    assert!(FiniteGroup::from_csv("*,e,a\ne,e,a\na,a,a\n").is_err());
}

#[test]
fn cayley_graph_shapes() {
    let hex = build("cyclic:6", &["1", "5"]);
    assert_eq!(hex.graph(), &named::cycle(6).unwrap());
    for cg in [build("sym:3", &["102", "210", "021"]), build("cyclic:6", &["1", "3", "5"])] {
        let g = cg.graph();
        assert_eq!(g.n_arrows(), 18);
        assert!(g.is_bidirected());
        let side: Vec<usize> = (0..6).map(|x| usize::from(g.out_neighbors(0).contains(&x))).collect();
        for &(x, y) in g.arrows() {
            assert_ne!(side[x], side[y]);
        }
        assert_eq!(side.iter().sum::<usize>(), 3);
    }
    let z5 = FiniteGroup::cyclic(5).unwrap();
    let one = GeneratingSet::new(&z5, [1]).unwrap();
    assert!(!one.closed_under_inverse);
    assert!(matches!(cayley_graph(&z5, &one), Err(Error::InvalidGenerators(_))));
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let sub = GeneratingSet::new(&z6, [2, 4]).unwrap();
    assert!(!sub.generates);
    assert!(cayley_graph(&z6, &sub).is_err());
    assert!(GeneratingSet::new(&z6, [0, 1, 5]).is_err());
}

#[test]
fn maurer_cartan_on_z6() {
    let cg = build("cyclic:6", &["1", "3", "5"]);
    let mc = maurer_cartan(&cg).unwrap();
    let c = cg.generators().elements();
    for &a in c {
        assert!(mc.nabla(&cg.invariant_form(a)).is_zero());
        for &b in c {
            let ab: Tensor2 = tensor(&cg.invariant_form(a), &cg.invariant_form(b));
            let ba: Tensor2 = tensor(&cg.invariant_form(b), &cg.invariant_form(a));
            assert_eq!(mc.sigma(&ab), ba);
        }
    }
}

#[test]
fn maurer_cartan_on_s3() {
    let cg = build("sym:3", &["102", "210", "021"]);
    let mc = maurer_cartan(&cg).unwrap();
    let e = |l: &str| cg.invariant_form(cg.group().element(l).unwrap());
    let t = ["102", "210", "021"];
    for i in 0..3 {
        let (u, v, w) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
        let first: Tensor2 = tensor(&e(v), &e(u).sub(&e(w)));
        let second: Tensor2 = tensor(&e(w), &e(u).sub(&e(v)));
        assert_eq!(mc.nabla(&e(u)), first.add(&second));
    }
    let c = cg.generators().elements();
    for &a in c {
        for &b in c {
            let ab: Tensor2 = tensor(&cg.invariant_form(a), &cg.invariant_form(b));
            let want: Tensor2 = tensor(&cg.invariant_form(b), &cg.invariant_form(cg.group().conjugate(a, b)));
            assert_eq!(mc.sigma(&ab), want);
        }
    }
}

#[test]
fn maurer_cartan_on_cycles() {
    for m in 3..9usize {
        let cg = build(&format!("cyclic:{m}"), &["1", &(m - 1).to_string()]);
        let mc = maurer_cartan(&cg).unwrap();
        for &a in cg.generators().elements() {
            assert!(mc.nabla(&cg.invariant_form(a)).is_zero());
        }
        let plus = cg.invariant_form(1);
        let minus = cg.invariant_form(m - 1);
        let pm: Tensor2 = tensor(&plus, &minus);
        let mp: Tensor2 = tensor(&minus, &plus);
        assert_eq!(mc.sigma(&pm), mp);
    }
}

#[test]
fn maurer_cartan_needs_ad_stability() {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let c = GeneratingSet::from_labels(&s3, &["102", "120", "201"]).unwrap();
    assert!(c.closed_under_inverse && c.generates && !c.ad_stable);
    let cg = cayley_graph(&s3, &c).unwrap();
    assert!(maurer_cartan(&cg).is_err());
    assert!(invariant_form_laplacian(&cg).is_err());
}

#[test]
fn maurer_cartan_structure_on_valid_inputs() {
    for cg in valid_cases() {
        let mc = maurer_cartan(&cg).unwrap();
        let perm = mc.permutation().expect("permutation type");
        let grp = cg.group();
        for ([x, y, z], w) in perm {
            assert_eq!(w, grp.mul(grp.mul(x, grp.inv(y)), z));
        }
        assert!(check_braid(&mc).holds);
        assert!(check_metric_compat(&mc, &Metric::euclidean(cg.graph()).unwrap()).unwrap().compatible);
    }
}

#[test]
fn invariant_form_laplacian_examples() {
    let s3 = build("sym:3", &["102", "210", "021"]);
    let m = invariant_form_laplacian(&s3).unwrap();
    assert_eq!(m.charpoly().unwrap(), RatPolynomial::from_roots(&[rat(6), rat(6), rat(0)]));
    for cg in valid_cases().into_iter().filter(|cg| cg.group().is_abelian()) {
        assert!(invariant_form_laplacian(&cg).unwrap().is_zero());
    }
}

#[test]
fn characters_of_abelian_groups() {
    for spec in ["cyclic:5", "cyclic:6", "product:cyclic:2,cyclic:4", "product:cyclic:3,cyclic:3"] {
        let g = FiniteGroup::from_spec(spec).unwrap();
        let chars = characters(&g).unwrap();
        assert_eq!(chars.len(), g.order());
        for chi in &chars {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let lhs = chi.value(g.mul(a, b));
                    assert!((lhs - chi.value(a) * chi.value(b)).norm() < 1e-12);
                }
            }
        }
    }
    assert!(matches!(characters(&FiniteGroup::symmetric(3).unwrap()), Err(Error::NotAbelian)));
}

#[test]
fn circulant_candidates() {
    for m in 3..=8usize {
        let cg = build(&format!("cyclic:{m}"), &["1", &(m - 1).to_string()]);
        let r = circulant_eigenvectors(&cg, 1e-9).unwrap();
        let mut lifted: Vec<f64> = r
            .candidates
            .iter()
            .filter(|c| c.kind == CandidateKind::Lifted)
            .map(|c| c.eigenvalue.re)
            .collect();
        lifted.sort_by(f64::total_cmp);
        let mut want: Vec<f64> = (0..m)
            .map(|p| 8.0 * (std::f64::consts::PI * p as f64 / m as f64).sin().powi(2))
            .collect();
        want.sort_by(f64::total_cmp);
        assert!(lifted.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-9));
        assert!(r.residuals_ok);
        assert_eq!(r.exact_independent < 2 * m, m % 6 == 0, "m={m}");
    }

    let cg = build("cyclic:6", &["1", "3", "5"]);
    let r = circulant_eigenvectors(&cg, 1e-9).unwrap();
    let generator: Vec<_> = r.candidates.iter().filter(|c| c.kind == CandidateKind::Generator).collect();
    assert_eq!(generator.len(), 12);
    assert!(generator.iter().all(|c| (c.eigenvalue.re - 3.0).abs() < 1e-12 && c.eigenvalue.im == 0.0));

    for cg in valid_cases().into_iter().filter(|cg| cg.group().is_abelian()) {
        let chars = characters(cg.group()).unwrap();
        let r = circulant_eigenvectors(&cg, 1e-9).unwrap();
        for c in r.candidates.iter().filter(|c| c.kind == CandidateKind::Lifted) {
            assert!(c.eigenvalue.im.abs() < 1e-12);
            if chars[c.character].is_trivial() {
                assert!(c.eigenvalue.re.abs() < 1e-12);
            } else {
                assert!(c.eigenvalue.re > 1e-9);
            }
        }
    }
    assert!(circulant_eigenvectors(&build("sym:3", &["102", "210", "021"]), 1e-9).is_err());
}

#[test]
fn left_translation_commutes_with_vertex_laplacian() {
    for cg in valid_cases() {
        let grp = cg.group();
        let n = grp.order();
        let l = vertex_laplacian(cg.graph()).unwrap();
        let f = ScalarFunction::new((0..n).map(|x| rat((x * x % 7) as i64 - 3)).collect());
        for h in 0..n {
            let shift: Vec<usize> = (0..n).map(|x| grp.mul(h, x)).collect();
            let lhs = apply_vertex_operator(&l, &f).pullback(&shift);
            let rhs = apply_vertex_operator(&l, &f.pullback(&shift));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn invariant_forms_span_theta() {
    for cg in valid_cases() {
        let sum = cg
            .generators()
            .elements()
            .iter()
            .fold(OneForm::zero(), |acc, &a| acc.add(&cg.invariant_form(a)));
        assert_eq!(sum, graphgeom::calculus::theta(cg.graph()));
    }
}

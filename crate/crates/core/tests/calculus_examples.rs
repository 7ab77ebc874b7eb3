use graphgeom::calculus::extended::{Bracket, ExtendedCalculus, ExtendedOneForm, LeftModuleMap};
use graphgeom::calculus::{arrow_form, commutator, d, pushforward, tensor, theta, OneForm, ScalarFunction, Tensor2, Tensor3};
use graphgeom::geometry::{metric_pairing, ConnectionData, Metric};
use graphgeom::graph::{named, GraphMorphism};
use graphgeom::laplacian::edge_laplacian_canonical;
use graphgeom::linalg::{rat, ratio, Rational};

fn form(g: &graphgeom::graph::Digraph, terms: &[((usize, usize), i64)]) -> OneForm {
    OneForm::from_terms(g, terms.iter().map(|&((x, y), c)| ([x, y], rat(c)))).unwrap()
}

#[test]
fn d_examples() {
    let tri = named::cycle(3).unwrap();
    assert!(d(&tri, &ScalarFunction::constant(3, rat(7))).is_zero());
    let want = form(&tri, &[((1, 0), 1), ((2, 0), 1), ((0, 1), -1), ((0, 2), -1)]);
    assert_eq!(d(&tri, &ScalarFunction::delta(3, 0)), want);
    let p = named::path(3).unwrap();
    let want = form(&p, &[((0, 1), 1), ((1, 2), 1), ((1, 0), -1), ((2, 1), -1)]);
    assert_eq!(d(&p, &ScalarFunction::from_i64(&[0, 1, 2])), want);
}

#[test]
fn bimodule_actions() {
    let w = arrow_form(0, 1);
    assert_eq!(w.left_act(&ScalarFunction::delta(3, 0)), w);
    assert!(w.left_act(&ScalarFunction::delta(3, 1)).is_zero());
    assert_eq!(w.right_act(&ScalarFunction::delta(3, 1)), w);
    let g = named::paw().unwrap();
    for x in 0..4 {
        let f = ScalarFunction::delta(4, x);
        assert_eq!(commutator(&theta(&g), &f), d(&g, &f));
    }
}

#[test]
fn theta_examples() {
    let tri = named::cycle(3).unwrap();
    let th = theta(&tri);
    assert_eq!(th.len(), 6);
    assert!(th.terms().all(|(_, c)| *c == rat(1)));
    let f = ScalarFunction::from_i64(&[3, -2, 5]);
    assert_eq!(th.right_act(&f).sub(&th.left_act(&f)), d(&tri, &f));
    let g = named::star(3).unwrap();
    let met = Metric::euclidean(&g).unwrap();
    assert_eq!(metric_pairing(&met, &theta(&g), &theta(&g)), ScalarFunction::from_i64(&[3, 1, 1, 1]));
}

#[test]
fn pushforward_examples() {
    let c6 = named::cycle(6).unwrap();
    let c3 = named::cycle(3).unwrap();
    let m = GraphMorphism::new(c6.clone(), c3.clone(), (0..6).map(|i| i % 3).collect()).unwrap();
    assert_eq!(pushforward(&m, &theta(&c3)).unwrap(), theta(&c6));
    assert_eq!(pushforward(&m, &arrow_form(0, 1)).unwrap(), form(&c6, &[((0, 1), 1), ((3, 4), 1)]));
    let id = GraphMorphism::identity(&c3);
    let w = form(&c3, &[((0, 1), 2), ((2, 0), -3)]);
    assert_eq!(pushforward(&id, &w).unwrap(), w);
}

#[test]
fn tensor_builders() {
    let t: Tensor2 = tensor(&arrow_form(0, 1), &arrow_form(1, 2));
    assert_eq!(t.len(), 1);
    assert_eq!(t.get(&[0, 1, 2]), rat(1));
    let t: Tensor2 = tensor(&arrow_form(0, 1), &arrow_form(2, 0));
    assert!(t.is_zero());
    let tri = named::cycle(3).unwrap();
    let tt: Tensor2 = tensor(&theta(&tri), &theta(&tri));
    assert_eq!(tt.len(), 12);
    assert!(tt.terms().all(|(_, c)| *c == rat(1)));
    let ttt: Tensor3 = tensor(&tt, &theta(&tri));
    assert_eq!(ttt.len(), tri.three_paths().len());
}

fn triangle_calc(lambda: Rational) -> ExtendedCalculus {
    let g = named::cycle(3).unwrap();
    let met = Metric::euclidean(&g).unwrap();
    ExtendedCalculus::inner(&g, Bracket::from_pairing(&met), lambda).unwrap()
}

#[test]
fn extended_calculus_examples() {
    let zero = triangle_calc(rat(0));
    let f = ScalarFunction::from_i64(&[1, -2, 4]);
    let h = ScalarFunction::from_i64(&[3, 0, -1]);
    assert_eq!(zero.d_tilde(&f), ExtendedOneForm::from_form(&d(zero.graph(), &f), 3));
    let u = ExtendedOneForm::from_form(&arrow_form(0, 1), 3);
    assert_eq!(zero.right_act(&u, &h), ExtendedOneForm::from_form(&arrow_form(0, 1).right_act(&h), 3));

    let c = triangle_calc(rat(1));
    let lhs = c.d_tilde(&f.mul(&h));
    let rhs = c.right_act(&c.d_tilde(&f), &h).add(&c.d_tilde(&h).left_act(&f));
    assert_eq!(lhs, rhs);
    assert_eq!(c.commutator(&c.theta(), &f), c.d_tilde(&f));
    let tp = c.theta_prime();
    assert_eq!(c.right_act(&tp, &f), tp.left_act(&f));
}

#[test]
fn extended_connection_examples() {
    let g = named::cycle(3).unwrap();
    let conn = ConnectionData::canonical(&g);
    let lap = edge_laplacian_canonical(&g).unwrap().matrix;
    let f = ScalarFunction::from_i64(&[2, -1, 3]);
    let u = ExtendedOneForm::from_form(&form(&g, &[((0, 1), 1), ((1, 2), -2), ((2, 0), 5)]), 3);
    for lambda in [rat(0), rat(1), ratio(1, 2)] {
        let c = triangle_calc(lambda.clone());
        for k in [LeftModuleMap::zero(&g), LeftModuleMap::identity(&g)] {
            let nabla = c.extended_connection(&conn, lap.clone(), k).unwrap();
            assert!(nabla.leibniz_defect(&f, &u).is_zero());
            assert!(nabla.leibniz_defect(&f, &c.theta_prime()).is_zero());
        }
    }
    let c = triangle_calc(rat(0));
    let nabla = c.extended_connection(&conn, lap.clone(), LeftModuleMap::zero(&g)).unwrap();
    let w = arrow_form(0, 1);
    assert_eq!(nabla.apply(&ExtendedOneForm::from_form(&w, 3)), c.phi(&conn, &conn.nabla(&w)));
    let c = triangle_calc(rat(1));
    assert!(c.extended_connection(&conn, lap.scale(&rat(2)), LeftModuleMap::zero(&g)).is_err());
}

#[test]
fn kernel_of_d_detects_connectivity() {
    use graphgeom::calculus::ker_d_dimension;
    use graphgeom::graph::Digraph;
    assert_eq!(ker_d_dimension(&named::paw().unwrap()), 1);
    assert_eq!(ker_d_dimension(&Digraph::from_edges(5, [(0, 1), (2, 3)]).unwrap()), 3);
}

mod common;

use graphgeom::calculus::{arrow_form, d, ker_d_dimension, pushforward, surjectivity_rank, theta, Tensor2};
use graphgeom::cayley::{cayley_graph, maurer_cartan, FiniteGroup, GeneratingSet};
use graphgeom::geometry::{
    check_braid, curvature, pairing_invariance_by_permutation, pairing_invariance_by_weights, pairing_is_sigma_invariant,
    ConnectionData, Metric, TwoFormSpace,
};
use graphgeom::graph::{check_morphism, difactor_coloring, named, ColoringMode, Digraph, GraphMorphism};
use graphgeom::laplacian::{edge_laplacian_canonical, edge_laplacian_from_connection, vertex_laplacian};
use graphgeom::linalg::{poly_roots, rat, sym_eigensolve, RatMatrix, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let arrows: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arrows).unwrap()
}

fn int_matrix(rng: &mut ChaCha8Rng, n: usize, symmetric: bool) -> RatMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if !symmetric || j >= i {
                rows[i][j] = rng.gen_range(-4..=4);
            } else {
                rows[i][j] = rows[j][i];
            }
        }
    }
    RatMatrix::from_i64_rows(&rows).unwrap()
}

/// Random regular bidirected circulant: `x ~ x ± s` for `s` in a step set.
fn circulant(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let steps: Vec<usize> = (1..=n / 2).filter(|_| rng.gen_bool(0.5)).collect();
    let steps = if steps.is_empty() { vec![1] } else { steps };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| steps.iter().map(move |&s| (x.min((x + s) % n), x.max((x + s) % n))))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    Digraph::from_edges(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn arrow_counts_balance(seed in any::<u64>(), n in 1usize..9) {
        let mut r = rng(seed);
        let g = random_digraph(&mut r, n, 0.4);
        let outs: usize = g.out_degrees().iter().sum();
        let ins: usize = g.in_degrees().iter().sum();
        prop_assert_eq!(outs, g.n_arrows());
        prop_assert_eq!(ins, g.n_arrows());
        let b = common::random_connected(&mut r, n.max(2), 0.3);
        prop_assert_eq!(b.n_arrows() % 2, 0);
    }

    #[test]
    fn simultaneous_colorings_are_difactors(seed in any::<u64>(), n in 3usize..10) {
        let g = circulant(&mut rng(seed), n);
        let col = difactor_coloring(&g, ColoringMode::Simultaneous).unwrap();
        prop_assert!(col.is_valid(&g, ColoringMode::Simultaneous));
        for c in 0..col.k {
            let mut perm = col.permutation(&g, c).unwrap();
            perm.sort();
            prop_assert_eq!(perm, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn morphisms_compose_and_pushforward_is_functorial(seed in any::<u64>(), n in 2usize..8, k in 1usize..5, j in 1usize..4) {
        let mut r = rng(seed);
        let g = common::random_connected(&mut r, n, 0.3);
        let mid = if k == 1 { Digraph::new(1, []).unwrap() } else { named::complete(k).unwrap() };
        let end = if j == 1 { Digraph::new(1, []).unwrap() } else { named::complete(j).unwrap() };
        let psi1: Vec<usize> = (0..n).map(|_| r.gen_range(0..k)).collect();
        let psi2: Vec<usize> = (0..k).map(|_| r.gen_range(0..j)).collect();
        let m1 = GraphMorphism::new(g, mid.clone(), psi1).unwrap();
        let m2 = GraphMorphism::new(mid, end.clone(), psi2).unwrap();
        let m = m1.then(&m2).unwrap();
        prop_assert!(check_morphism(&m));
        for &(x, y) in end.arrows() {
            let w = arrow_form(x, y);
            prop_assert_eq!(pushforward(&m, &w).unwrap(), pushforward(&m1, &pushforward(&m2, &w).unwrap()).unwrap());
        }
    }

    #[test]
    fn charpoly_vanishes_at_exact_eigenvalues(seed in any::<u64>(), n in 1usize..6) {
        let m = int_matrix(&mut rng(seed), n, false);
        let cp = m.charpoly().unwrap();
        for lambda in -12i64..=12 {
            let singular = m.shift(&rat(lambda)).unwrap().rank() < n;
            prop_assert_eq!(singular, cp.eval(&rat(lambda)) == rat(0));
        }
    }

    #[test]
    fn block_triangular_charpoly_factors(seed in any::<u64>(), a in 1usize..4, c in 1usize..4) {
        let mut r = rng(seed);
        let top = int_matrix(&mut r, a, false);
        let bottom = int_matrix(&mut r, c, false);
        let corner = int_matrix(&mut r, a.max(c), false);
        let full = RatMatrix::from_fn(a + c, a + c, |i, j| match (i < a, j < a) {
            (true, true) => top[(i, j)].clone(),
            (false, false) => bottom[(i - a, j - a)].clone(),
            (true, false) => corner[(i, j - a)].clone(),
            (false, true) => Rational::from_integer(0.into()),
        });
        prop_assert_eq!(full.charpoly().unwrap(), top.charpoly().unwrap().mul(&bottom.charpoly().unwrap()));
    }

    #[test]
    fn jacobi_matches_charpoly_roots(seed in any::<u64>(), n in 1usize..6) {
        let m = int_matrix(&mut rng(seed), n, true);
        let pairs = sym_eigensolve(&m, 1e-13).unwrap();
        let mut jac: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        jac.sort_by(f64::total_cmp);
        let mut roots: Vec<f64> = poly_roots(&m.charpoly().unwrap(), 1e-12)
            .unwrap()
            .into_iter()
            .flat_map(|r| std::iter::repeat(r.value.re).take(r.multiplicity))
            .collect();
        roots.sort_by(f64::total_cmp);
        prop_assert_eq!(jac.len(), roots.len());
        for (a, b) in jac.iter().zip(&roots) {
            prop_assert!((a - b).abs() < 1e-5, "{:?} vs {:?}", jac, roots);
        }
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[i + 1..] {
                let dot: f64 = p.vector.iter().zip(&q.vector).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn leibniz_and_surjectivity_on_any_digraph(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let g = random_digraph(&mut r, n, 0.35);
        let f = common::random_function(&mut r, n);
        let h = common::random_function(&mut r, n);
        prop_assert_eq!(d(&g, &f.mul(&h)), d(&g, &f).right_act(&h).add(&d(&g, &h).left_act(&f)));
        prop_assert_eq!(surjectivity_rank(&g), g.n_arrows());
        let th = theta(&g);
        prop_assert_eq!(th.right_act(&f).sub(&th.left_act(&f)), d(&g, &f));
    }

    #[test]
    fn kernel_of_d_counts_components(seed in any::<u64>(), n in 1usize..9, p in 0.0f64..0.4) {
        let g = random_digraph(&mut rng(seed), n, p);
        let k = ker_d_dimension(&g);
        prop_assert_eq!(k, g.components().len());
        prop_assert_eq!(k == 1, g.is_weakly_connected());
    }

    #[test]
    fn connection_maps_are_bimodule_maps(seed in any::<u64>(), n in 3usize..7) {
        let mut r = rng(seed);
        let g = common::random_connected(&mut r, n, 0.5);
        let perm = common::random_permutation_connection(&mut r, &g);
        let keys: Vec<[usize; 3]> = g
            .arrows()
            .iter()
            .flat_map(|&(x, y)| g.out_neighbors(x).iter().map(move |&w| [x, y, w]))
            .filter(|&[_, y, w]| w != y && g.has_arrow(w, y))
            .collect();
        let alpha: Vec<([usize; 3], Rational)> = keys.into_iter().map(|k| (k, common::small_rational(&mut r))).collect();
        let conn = perm.with_alpha(alpha).unwrap();
        let f = common::random_function(&mut r, n);
        for [x, y, z] in g.two_paths() {
            let t = Tensor2::from_terms(&g, [([x, y, z], rat(1))]).unwrap();
            prop_assert_eq!(conn.sigma(&t.left_act(&f)), conn.sigma(&t).left_act(&f));
            prop_assert_eq!(conn.sigma(&t.right_act(&f)), conn.sigma(&t).right_act(&f));
        }
        for &(x, y) in g.arrows() {
            let w = arrow_form(x, y);
            prop_assert_eq!(conn.alpha(&w.left_act(&f)), conn.alpha(&w).left_act(&f));
            prop_assert_eq!(conn.alpha(&w.right_act(&f)), conn.alpha(&w).right_act(&f));
        }
    }

    #[test]
    fn flat_when_braided(seed in any::<u64>(), n in 3usize..7) {
        let mut r = rng(seed);
        let g = common::random_connected(&mut r, n, 0.5);
        let conn = common::random_permutation_connection(&mut r, &g);
        prop_assert!(conn.alpha_is_zero() && conn.preserves_theta_squared());
        if check_braid(&conn).holds {
            let space = TwoFormSpace::new(&conn).unwrap();
            for &(x, y) in g.arrows() {
                prop_assert!(curvature(&conn, &space, &arrow_form(x, y)).is_zero());
            }
        }
    }

    #[test]
    fn permutation_metric_criterion(seed in any::<u64>(), n in 3usize..7) {
        let mut r = rng(seed);
        let g = common::random_connected(&mut r, n, 0.5);
        let conn = common::random_permutation_connection(&mut r, &g);
        let met = if r.gen_bool(0.5) {
            Metric::euclidean(&g).unwrap()
        } else {
            Metric::from_fn(&g, |_, _| rat(r.gen_range(1..=2))).unwrap()
        };
        let by_weights = pairing_invariance_by_weights(&conn, &met);
        prop_assert_eq!(Some(by_weights), pairing_invariance_by_permutation(&conn, &met));
        prop_assert_eq!(by_weights, pairing_is_sigma_invariant(&conn, &met));
    }

    #[test]
    fn edge_laplacian_certificate_and_zero_mode(seed in any::<u64>(), n in 2usize..8) {
        let g = common::random_connected(&mut rng(seed), n, 0.35);
        let lap = edge_laplacian_canonical(&g).unwrap();
        let mut want = vertex_laplacian(&g).unwrap().scale(&rat(2)).charpoly().unwrap();
        for k in g.undirected_degrees().unwrap() {
            if k > 1 {
                want = want.mul(&graphgeom::linalg::RatPolynomial::linear_root(&rat(k as i64)).pow(k - 1));
            }
        }
        prop_assert_eq!(lap.charpoly(), want);
        prop_assert_eq!(lap.matrix.rank(), g.n_arrows() - 1);
    }

    #[test]
    fn permutation_connections_kill_theta(seed in any::<u64>(), n in 2usize..7) {
        let mut r = rng(seed);
        let g = common::random_connected(&mut r, n, 0.4);
        let conn = common::random_permutation_connection(&mut r, &g);
        let met = Metric::euclidean(&g).unwrap();
        prop_assert!(edge_laplacian_from_connection(&conn, &met, &theta(&g)).unwrap().is_zero());
    }

    #[test]
    fn abelian_maurer_cartan_is_involutive(m in 3usize..10, extra in 2usize..5) {
        let grp = FiniteGroup::cyclic(m).unwrap();
        let mut gens = vec![1, m - 1];
        if extra < m - 1 && extra != 1 {
            gens.extend([extra, m - extra]);
        }
        gens.sort();
        gens.dedup();
        let c = GeneratingSet::new(&grp, gens).unwrap();
        let cg = cayley_graph(&grp, &c).unwrap();
        let mc = maurer_cartan(&cg).unwrap();
        prop_assert!(mc.sigma_is_involution());
        prop_assert!(mc.is_permutation_type());
    }
}

#[test]
fn pushforward_identity_and_connection_library_exists() {
    let g = named::paw().unwrap();
    let id = GraphMorphism::identity(&g);
    for &(x, y) in g.arrows() {
        assert_eq!(pushforward(&id, &arrow_form(x, y)).unwrap(), arrow_form(x, y));
    }
    let canonical = ConnectionData::canonical(&g);
    assert!(canonical.is_permutation_type());
}

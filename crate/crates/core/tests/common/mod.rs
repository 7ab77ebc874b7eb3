#![allow(dead_code)]

use std::collections::BTreeMap;

use graphgeom::calculus::{OneForm, ScalarFunction};
use graphgeom::geometry::ConnectionData;
use graphgeom::graph::{named, Digraph};
use graphgeom::linalg::Rational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> ScalarFunction {
    ScalarFunction::new((0..n).map(|_| small_rational(rng)).collect())
}

pub fn random_form(rng: &mut ChaCha8Rng, g: &Digraph) -> OneForm {
    let terms: Vec<_> = g.arrows().iter().map(|&(x, y)| ([x, y], small_rational(rng))).collect();
    OneForm::from_terms(g, terms).unwrap()
}

/// Random spanning tree plus each remaining edge with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i].min(parent), order[i].max(parent)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Digraph::from_edges(n, edges).unwrap()
}

/// `count` connected bidirected graphs with 2..=max_n vertices.
pub fn corpus(rng: &mut ChaCha8Rng, count: usize, max_n: usize) -> Vec<Digraph> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let p = rng.gen_range(0.1..0.6);
            random_connected(rng, n, p)
        })
        .collect()
}

pub fn named_fixtures() -> Vec<(&'static str, Digraph)> {
    vec![
        ("triangle", named::cycle(3).unwrap()),
        ("square", named::cycle(4).unwrap()),
        ("hexagon", named::cycle(6).unwrap()),
        ("path4", named::path(4).unwrap()),
        ("star3", named::star(3).unwrap()),
        ("star5", named::star(5).unwrap()),
        ("paw", named::paw().unwrap()),
        ("prism", named::prism().unwrap()),
        ("k4", named::complete(4).unwrap()),
        ("k5", named::complete(5).unwrap()),
        ("k33", named::complete_bipartite(3, 3).unwrap()),
        ("k23", named::complete_bipartite(2, 3).unwrap()),
    ]
}

/// A permutation-type connection with an independent random permutation of
/// the middle vertices in every `(x, z)` block.
pub fn random_permutation_connection(rng: &mut ChaCha8Rng, g: &Digraph) -> ConnectionData {
    let blocks = ConnectionData::canonical(g).blocks();
    let mut perm: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for ((x, z), mids) in blocks {
        let mut image = mids.clone();
        image.shuffle(rng);
        for (y, w) in mids.iter().zip(image) {
            perm.insert([x, *y, z], w);
        }
    }
    ConnectionData::from_reroute(g, |k| perm[&k]).unwrap()
}

/// The symmetric connection on a 4-cycle:
/// `σ^{x,y,x}_w = s δ^y_w + t δ^*_w`, `σ^{x,y,z}_w = S δ^y_w + T δ^*_w` for
/// `z ≠ x`, where `*` is the neighbour of `x` other than `y`.
pub fn square_family(g: &Digraph, s: &Rational, t: &Rational, big_s: &Rational, big_t: &Rational) -> ConnectionData {
    let mut entries = Vec::new();
    for [x, y, z] in g.two_paths() {
        let other = *g.out_neighbors(x).iter().find(|&&v| v != y).unwrap();
        let (a, b) = if z == x { (s, t) } else { (big_s, big_t) };
        entries.push(([x, y, z, y], a.clone()));
        entries.push(([x, y, z, other], b.clone()));
    }
    ConnectionData::new(g, entries, []).unwrap()
}

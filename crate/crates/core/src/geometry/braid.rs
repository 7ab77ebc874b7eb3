use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use super::ConnectionData;
use crate::calculus::{tensor, theta, OneForm, Tensor2, Tensor3};
use crate::linalg::{format_rational, Rational};

/// A boundary `x→y→z→w` and target `x→t→p→w` where the two sides of the
/// braid relation disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BraidViolation {
    pub boundary: [usize; 4],
    pub target: [usize; 4],
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BraidReport {
    pub holds: bool,
    pub violations: Vec<BraidViolation>,
}

fn basis3(k: [usize; 4]) -> Tensor3 {
    let mut t = Tensor3::zero();
    t.add_term(k, Rational::one());
    t
}

/// `σ₂₃σ₁₂σ₂₃` and `σ₁₂σ₂₃σ₁₂` applied to `t`.
pub fn braid_sides(conn: &ConnectionData, t: &Tensor3) -> (Tensor3, Tensor3) {
    let lhs = conn.sigma_at(&conn.sigma_at(&conn.sigma_at(t, 1), 0), 1);
    let rhs = conn.sigma_at(&conn.sigma_at(&conn.sigma_at(t, 0), 1), 0);
    (lhs, rhs)
}

/// Operator form: compares both sides on every basis 3-path.
pub fn check_braid(conn: &ConnectionData) -> BraidReport {
    let mut violations = Vec::new();
    for k in conn.graph().three_paths() {
        let (lhs, rhs) = braid_sides(conn, &basis3(k));
        if lhs == rhs {
            continue;
        }
        let targets: BTreeSet<[usize; 4]> = lhs.terms().chain(rhs.terms()).map(|(k, _)| *k).collect();
        for tk in targets {
            let (a, b) = (lhs.get(&tk), rhs.get(&tk));
            if a != b {
                violations.push(BraidViolation {
                    boundary: k,
                    target: tk,
                    lhs: format_rational(&a),
                    rhs: format_rational(&b),
                });
            }
        }
    }
    BraidReport {
        holds: violations.is_empty(),
        violations,
    }
}

/// Index form: for every boundary `x→y→z→w` and every `x→t→p→w`,
/// `Σ_s σ^{y,z,w}_s σ^{x,y,s}_t σ^{t,s,w}_p = Σ_s σ^{x,y,z}_s σ^{s,z,w}_p σ^{x,s,p}_t`.
pub fn check_braid_indices(conn: &ConnectionData) -> BraidReport {
    let g = conn.graph();
    let n = g.n_vertices();
    let mut violations = Vec::new();
    for [x, y, z, w] in g.three_paths() {
        for &t in g.out_neighbors(x) {
            for &p in g.out_neighbors(t) {
                if !g.has_arrow(p, w) {
                    continue;
                }
                let mut lhs = Rational::zero();
                let mut rhs = Rational::zero();
                for s in 0..n {
                    lhs += conn.sigma_coeff(y, z, w, s) * conn.sigma_coeff(x, y, s, t) * conn.sigma_coeff(t, s, w, p);
                    rhs += conn.sigma_coeff(x, y, z, s) * conn.sigma_coeff(s, z, w, p) * conn.sigma_coeff(x, s, p, t);
                }
                if lhs != rhs {
                    violations.push(BraidViolation {
                        boundary: [x, y, z, w],
                        target: [x, t, p, w],
                        lhs: format_rational(&lhs),
                        rhs: format_rational(&rhs),
                    });
                }
            }
        }
    }
    BraidReport {
        holds: violations.is_empty(),
        violations,
    }
}

/// Braid relation restricted to `ω⊗θ⊗θ`.
pub fn braid_holds_on(conn: &ConnectionData, w: &OneForm) -> bool {
    let th = theta(conn.graph());
    let wt: Tensor2 = tensor(w, &th);
    let t: Tensor3 = tensor(&wt, &th);
    let (lhs, rhs) = braid_sides(conn, &t);
    lhs == rhs
}

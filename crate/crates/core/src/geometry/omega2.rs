use std::collections::BTreeMap;

use num_traits::Zero;

use super::ConnectionData;
use crate::calculus::{tensor, theta, Form, OneForm, Tensor2};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

/// Ω² as the quotient of Ω¹⊗Ω¹ by ker(id − σ).
///
/// id − σ preserves the endpoints of 2-paths, so the kernel splits into
/// blocks indexed by `(x, z)`. Each block kernel is kept as reduced row
/// echelon rows; reducing a vector clears its pivot coordinates, which
/// picks a unique representative of every coset.
#[derive(Debug, Clone)]
pub struct TwoFormSpace {
    blocks: BTreeMap<(usize, usize), Block>,
    dimension: usize,
    n_two_paths: usize,
}

#[derive(Debug, Clone)]
struct Block {
    mids: Vec<usize>,
    /// `(pivot index into mids, row over mids)`.
    rows: Vec<(usize, Vec<Rational>)>,
}

/// A 2-form, stored as the reduced representative in Ω¹⊗Ω¹.
pub type TwoForm = Tensor2;

impl TwoFormSpace {
    /// Requires `σ(θ⊗θ) = θ⊗θ`.
    pub fn new(conn: &ConnectionData) -> Result<Self> {
        if !conn.preserves_theta_squared() {
            return Err(Error::Precondition("sigma does not fix theta ⊗ theta".into()));
        }
        let mut blocks = BTreeMap::new();
        let mut kernel_dim = 0;
        let mut n_two_paths = 0;
        for ((x, z), mids) in conn.blocks() {
            let k = mids.len();
            n_two_paths += k;
            // column j is (id − σ) applied to [x, mids[j], z]
            let m = RatMatrix::from_fn(k, k, |i, j| {
                let delta = if i == j { Rational::from_integer(1.into()) } else { Rational::zero() };
                delta - conn.sigma_coeff(x, mids[j], z, mids[i])
            });
            let (_, kernel) = m.rank_and_kernel();
            let mut rows = Vec::new();
            if kernel.cols() > 0 {
                let (r, pivots) = kernel.transpose().rref();
                for (i, &p) in pivots.iter().enumerate() {
                    rows.push((p, r.row(i).to_vec()));
                }
            }
            kernel_dim += rows.len();
            blocks.insert((x, z), Block { mids, rows });
        }
        Ok(Self {
            blocks,
            dimension: n_two_paths - kernel_dim,
            n_two_paths,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn kernel_dimension(&self) -> usize {
        self.n_two_paths - self.dimension
    }

    /// Reduces the 2-path sitting at positions `pos..pos+3` of every key.
    pub fn reduce_at<const N: usize>(&self, t: &Form<N>, pos: usize) -> Form<N> {
        // group keys that differ only in the reduced middle vertex
        let mut groups: BTreeMap<[usize; N], BTreeMap<usize, Rational>> = BTreeMap::new();
        for (k, c) in t.terms() {
            let mut g = *k;
            g[pos + 1] = usize::MAX;
            groups.entry(g).or_default().insert(k[pos + 1], c.clone());
        }
        let mut out = Form::zero();
        for (g, entries) in groups {
            let block = &self.blocks[&(g[pos], g[pos + 2])];
            let mut v: Vec<Rational> = block
                .mids
                .iter()
                .map(|m| entries.get(m).cloned().unwrap_or_else(Rational::zero))
                .collect();
            for (p, row) in &block.rows {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &f * ri;
                }
            }
            for (m, c) in block.mids.iter().zip(v) {
                let mut key = g;
                key[pos + 1] = *m;
                out.add_term(key, c);
            }
        }
        out
    }

    /// The wedge product, i.e. the quotient map.
    pub fn wedge(&self, t: &Tensor2) -> TwoForm {
        self.reduce_at(t, 0)
    }

    /// `dω = θ∧ω + ω∧θ`.
    pub fn d1(&self, conn: &ConnectionData, w: &OneForm) -> TwoForm {
        let th = theta(conn.graph());
        let a: Tensor2 = tensor(&th, w);
        let b: Tensor2 = tensor(w, &th);
        self.wedge(&a.add(&b))
    }
}

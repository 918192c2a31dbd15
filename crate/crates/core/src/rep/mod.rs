//! Decorated representations: relation checks, the α/β/γ triangle at a
//! vertex, weight vectors, mutation, Jordan types and F-polynomials.

pub mod fpoly;
pub mod hmodule;
pub mod hom;
pub mod kernel;
pub mod mutate;
pub mod triangle;

use thiserror::Error;

use crate::arith::rat;
use crate::pathalg::{cyclic_derivative, Path, PathAlgError, PathElem, Qp, QuiverShape};
use crate::QMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("representation violates {0}")]
    Relation(Violation),
    #[error("subquotient {what} at vertex {vertex} is not free over H_{vertex}: dim {dim}, top rank {top}")]
    NotLocallyFreeWitness { vertex: usize, what: String, dim: usize, top: usize },
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error("QP is not reduced")]
    NotReduced,
    #[error("point counts are not a polynomial in q: {0}")]
    NonPolynomialCount(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("prime {0} divides a denominator of the representation")]
    BadReduction(u64),
    #[error("no generic representation found after {0} trials")]
    GenericityFailure(usize),
    #[error("Jacobian algebra does not stabilize at truncation {0}")]
    NotFiniteDimensional(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LoopNotNilpotent { vertex: usize },
    LoopNotSquare { vertex: usize },
    JacobianRelation { arrow: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::LoopNotNilpotent { vertex } => write!(f, "nilpotency of eps_{vertex}"),
            Violation::LoopNotSquare { vertex } => write!(f, "square loop matrix at {vertex}"),
            Violation::JacobianRelation { arrow } => write!(f, "the relation d_{arrow} S = 0"),
        }
    }
}

/// `(M, V)`: vector spaces with loop and arrow matrices, plus free
/// decoration ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoratedRep {
    dims: Vec<usize>,
    loops: Vec<QMatrix>,
    arrows: Vec<QMatrix>,
    decoration: Vec<usize>,
}

impl DecoratedRep {
    pub fn new(dims: Vec<usize>, loops: Vec<QMatrix>, arrows: Vec<QMatrix>, decoration: Vec<usize>) -> Result<Self, RepError> {
        let n = dims.len();
        if loops.len() != n || decoration.len() != n {
            return Err(RepError::Shape(format!("{n} vertices but {} loops and {} decorations", loops.len(), decoration.len())));
        }
        for (i, e) in loops.iter().enumerate() {
            if e.rows() != dims[i] || e.cols() != dims[i] {
                return Err(RepError::Shape(format!("loop at {} is {}x{}, expected {}", i + 1, e.rows(), e.cols(), dims[i])));
            }
        }
        Ok(DecoratedRep { dims, loops, arrows, decoration })
    }

    /// Checks arrow matrix shapes against a quiver.
    pub fn check_shape(&self, q: &impl QuiverShape, n_arrows: usize) -> Result<(), RepError> {
        if self.arrows.len() != n_arrows {
            return Err(RepError::Shape(format!("{} arrow matrices for {n_arrows} arrows", self.arrows.len())));
        }
        for (id, m) in self.arrows.iter().enumerate() {
            let a = q.arrow(id);
            if m.rows() != self.dims[a.head - 1] || m.cols() != self.dims[a.tail - 1] {
                return Err(RepError::Shape(format!("arrow {id} matrix is {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(())
    }

    pub fn zero(qp: &Qp) -> Self {
        let n = qp.quiver().n();
        let arrows = qp.quiver().arrows().iter().map(|_| QMatrix::zeros(0, 0)).collect();
        DecoratedRep { dims: vec![0; n], loops: vec![QMatrix::zeros(0, 0); n], arrows, decoration: vec![0; n] }
    }

    /// `(0, H_k)`: the negative simple at `k`.
    pub fn negative_simple(qp: &Qp, k: usize) -> Self {
        let mut r = Self::zero(qp);
        r.decoration[k - 1] = 1;
        r
    }

    /// `H_k` as a module at `k`, zero elsewhere.
    pub fn generalized_simple(qp: &Qp, k: usize) -> Self {
        let d = qp.quiver().datum().d()[k - 1] as usize;
        let mut r = Self::zero(qp);
        r.dims[k - 1] = d;
        r.loops[k - 1] = hmodule::shift_matrix(&[d]);
        r.arrows = qp.quiver().arrows().iter().map(|a| QMatrix::zeros(r.dims[a.head - 1], r.dims[a.tail - 1])).collect();
        r
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn loop_matrix(&self, v: usize) -> &QMatrix {
        &self.loops[v - 1]
    }

    pub fn loops(&self) -> &[QMatrix] {
        &self.loops
    }

    pub fn arrow_matrices(&self) -> &[QMatrix] {
        &self.arrows
    }

    pub fn arrow_matrix(&self, id: usize) -> &QMatrix {
        &self.arrows[id]
    }

    pub fn decoration(&self) -> &[usize] {
        &self.decoration
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `M(path)`: `E^{l_0} M(a_1) E^{l_1} ... M(a_m) E^{l_m}`.
    pub fn eval_path(&self, q: &impl QuiverShape, p: &Path) -> QMatrix {
        eval_path_with(q, p, &self.loops, &self.arrows)
    }

    /// `M(e)` for an element of paths from `start` to `end`.
    pub fn eval(&self, q: &impl QuiverShape, e: &PathElem, start: usize, end: usize) -> QMatrix {
        eval_elem_with(q, e, &self.loops, &self.arrows, self.dims[end - 1], self.dims[start - 1])
    }

    /// Direct sum, vertex by vertex.
    pub fn direct_sum(&self, o: &Self) -> Self {
        DecoratedRep {
            dims: self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect(),
            loops: self.loops.iter().zip(&o.loops).map(|(a, b)| a.block_diag(b)).collect(),
            arrows: self.arrows.iter().zip(&o.arrows).map(|(a, b)| a.block_diag(b)).collect(),
            decoration: self.decoration.iter().zip(&o.decoration).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, loops: Vec<QMatrix>, arrows: Vec<QMatrix>, decoration: Vec<usize>) -> Self {
        DecoratedRep { dims, loops, arrows, decoration }
    }
}

pub(crate) fn eval_path_with(q: &impl QuiverShape, p: &Path, loops: &[QMatrix], arrows: &[QMatrix]) -> QMatrix {
    let e = |v: usize, l: u32| loops[v - 1].pow(l);
    let mut acc = e(p.end(), p.loops()[0]);
    for (i, &a) in p.arrows().iter().enumerate() {
        acc = acc.dot(&arrows[a]);
        let v = if i + 1 < p.arrows().len() { q.arrow(p.arrows()[i + 1]).head } else { p.start() };
        let l = p.loops()[i + 1];
        if l > 0 {
            acc = acc.dot(&e(v, l));
        }
    }
    acc
}

pub(crate) fn eval_elem_with(q: &impl QuiverShape, e: &PathElem, loops: &[QMatrix], arrows: &[QMatrix], rows: usize, cols: usize) -> QMatrix {
    let mut acc = QMatrix::zeros(rows, cols);
    for (p, c) in e.terms() {
        acc = acc.add(&eval_path_with(q, p, loops, arrows).scale(c));
    }
    acc
}

/// `Ok(None)` if `rep` is a module over the Jacobian algebra, otherwise the
/// first violated condition.
pub fn check_rep(qp: &Qp, rep: &DecoratedRep) -> Result<Option<Violation>, RepError> {
    let q = qp.quiver();
    if rep.n() != q.n() {
        return Err(RepError::Shape(format!("rep has {} vertices, quiver {}", rep.n(), q.n())));
    }
    rep.check_shape(q, q.arrows().len())?;
    for v in 1..=q.n() {
        let d = q.datum().d()[v - 1];
        if !rep.loops[v - 1].pow(d).is_zero() {
            return Ok(Some(Violation::LoopNotNilpotent { vertex: v }));
        }
    }
    for a in 0..q.arrows().len() {
        let r = cyclic_derivative(q, qp.potential(), a);
        if r.is_zero() {
            continue;
        }
        let arr = q.arrows()[a];
        let m = eval_elem_with(q, &r, &rep.loops, &rep.arrows, rep.dim(arr.tail), rep.dim(arr.head));
        if !m.is_zero() {
            return Ok(Some(Violation::JacobianRelation { arrow: a }));
        }
    }
    Ok(None)
}

pub fn rat_matrix(rows: &[&[i64]]) -> QMatrix {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols).expect("rectangular rows")
}

pub use fpoly::{f_polynomial_oracle, f_recursion_poly, jordan_type_table};
pub use hom::hom_dim;
pub use kernel::{local_freeness, random_kernel_rep, LocalFreeness};
pub use mutate::{mutate_rep, RepMutation};
pub use triangle::{triangle, weight_vectors, TriangleMaps, WeightVectors};

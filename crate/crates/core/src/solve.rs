//! Linear solving over the engines: syzygies, membership in a column span,
//! and preimages of spans. Over Z/n everything lifts to the integers by
//! adjoining n*I columns, which keeps one exact code path underneath.

use crate::engine::{Elem, RingEngine};
use crate::error::{Error, Result};
use crate::howell::howell_form;
use crate::matrix::Matrix;
use crate::normal_form::{kernel_basis, smith_normal_form};
use num_bigint::BigInt;

/// Reinterpret a Z/n matrix over the integers with entries in [0, n).
fn lift_to_integers(a: &Matrix) -> Matrix {
    Matrix::from_fn(RingEngine::Integers, a.rows(), a.cols(), |i, j| {
        Elem::Int(a.get(i, j).as_int().clone())
    })
}

/// Reduce an integer matrix into Z/n.
fn reduce_mod(a: &Matrix, engine: &RingEngine) -> Matrix {
    Matrix::from_fn(engine.clone(), a.rows(), a.cols(), |i, j| {
        engine.from_bigint(a.get(i, j).as_int().clone())
    })
}

/// Columns that generate { x : A x = 0 } as a module.
///
/// Over the Euclidean-domain engines this is the free kernel basis. Over
/// Z/n the kernel is cut out by lifting to the integers and projecting, and
/// the generators are canonicalized through the Howell form.
pub fn syzygy_generators(a: &Matrix) -> Result<Matrix> {
    let engine = a.engine().clone();
    if engine.is_euclidean_domain() {
        return kernel_basis(a);
    }
    let n = BigInt::from(engine.modulus().unwrap().clone());
    let lifted = lift_to_integers(a);
    let mut n_block = Matrix::identity(RingEngine::Integers, a.rows());
    for i in 0..a.rows() {
        n_block.set(i, i, Elem::Int(n.clone()));
    }
    let aug = lifted.hstack(&n_block)?;
    let k = kernel_basis(&aug)?;
    let first = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    let gens = reduce_mod(&first, &engine).drop_zero_columns();
    // canonicalize the generating set via the Howell form of the transpose
    let h = howell_form(&gens.transpose())?;
    Ok(h.transpose())
}

/// Solve A x = b. Returns None when b is not in the column span of A.
pub fn solve_membership(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let engine = a.engine().clone();
    engine.require_same(b.engine())?;
    if b.rows() != a.rows() || b.cols() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "solve: A is {}x{}, b is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if engine.is_euclidean_domain() {
        return solve_euclidean(a, b);
    }
    // lift: A x + n I y = b over the integers
    let n = BigInt::from(engine.modulus().unwrap().clone());
    let lifted = lift_to_integers(a);
    let mut n_block = Matrix::identity(RingEngine::Integers, a.rows());
    for i in 0..a.rows() {
        n_block.set(i, i, Elem::Int(n.clone()));
    }
    let aug = lifted.hstack(&n_block)?;
    let lifted_b = lift_to_integers(b);
    match solve_euclidean(&aug, &lifted_b)? {
        None => Ok(None),
        Some(x) => {
            let first = x.select_rows(&(0..a.cols()).collect::<Vec<_>>());
            Ok(Some(reduce_mod(&first, &engine)))
        }
    }
}

fn solve_euclidean(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let engine = a.engine().clone();
    let dec = smith_normal_form(a)?;
    // S = U A V, so A x = b  <=>  S y = U b with x = V y
    let ub = dec.u.mul(b)?;
    let mut y = Matrix::zero(engine.clone(), a.cols(), 1);
    for i in 0..a.rows() {
        let rhs = ub.get(i, 0);
        if i < dec.rank() && i < a.cols() {
            match engine.exact_div(rhs, dec.s.get(i, i)) {
                Some(q) => y.set(i, 0, q),
                None => return Ok(None),
            }
        } else if !engine.is_zero(rhs) {
            return Ok(None);
        }
    }
    Ok(Some(dec.v.mul(&y)?))
}

/// Columns generating { x : A x lies in the column span of B }.
pub fn preimage_generators(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let aug = a.hstack(b)?;
    let k = syzygy_generators(&aug)?;
    let first = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    Ok(first.drop_zero_columns())
}

/// Solve A X = B columnwise; None if any column of B is outside the span.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let engine = a.engine().clone();
    let mut cols: Vec<Matrix> = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_membership(a, &b.column(j))? {
            None => return Ok(None),
            Some(x) => cols.push(x),
        }
    }
    let mut out = Matrix::zero(engine, a.cols(), b.cols());
    for (j, x) in cols.iter().enumerate() {
        for i in 0..a.cols() {
            out.set(i, j, x.get(i, 0).clone());
        }
    }
    Ok(Some(out))
}

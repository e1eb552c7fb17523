//! Canonical matrix forms over the Euclidean-domain engines.
//!
//! Pivot selection is smallest-Euclidean-measure with row-then-column
//! tie-break, so every run of every form is deterministic.

use crate::engine::Elem;
use crate::error::Result;
use crate::matrix::Matrix;

/// U * A * V = S with U, V unimodular and S a divisibility-chain diagonal.
///
/// `u_inv` is maintained alongside `u` (it certifies unimodularity and is
/// needed to pull diagonalized generators back to the original ones).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub invariant_factors: Vec<Elem>,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Check U*A*V = S, the divisibility chain, and unit determinants.
    pub fn verify(&self, a: &Matrix) -> Result<bool> {
        let engine = a.engine();
        let uav = self.u.mul(a)?.mul(&self.v)?;
        if uav != self.s {
            return Ok(false);
        }
        if self.u.mul(&self.u_inv)? != Matrix::identity(engine.clone(), a.rows()) {
            return Ok(false);
        }
        for w in self.invariant_factors.windows(2) {
            if engine.exact_div(&w[1], &w[0]).is_none() {
                return Ok(false);
            }
        }
        let du = self.u.determinant()?;
        let dv = self.v.determinant()?;
        Ok(engine.is_unit(&du) && engine.is_unit(&dv))
    }
}

/// Find the nonzero entry of smallest Euclidean measure in A[t.., t..],
/// scanning row-major so ties break to the smallest row then column.
fn min_pivot(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let engine = a.engine();
    let mut best: Option<(num_bigint::BigUint, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if let Some(m) = engine.measure(a.get(i, j)) {
                match &best {
                    Some((bm, _, _)) if *bm <= m => {}
                    _ => best = Some((m, i, j)),
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form of a matrix over Integers or PolyOverFp.
///
/// Invariant factors are sign-normalized (positive / monic) and form a
/// divisibility chain d1 | d2 | ... | dk with k = rank(A).
pub fn smith_normal_form(a: &Matrix) -> Result<SmithDecomposition> {
    let engine = a.engine().clone();
    engine.require_euclidean()?;
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = Matrix::identity(engine.clone(), m);
    let mut u_inv = Matrix::identity(engine.clone(), m);
    let mut v = Matrix::identity(engine.clone(), n);

    let mut t = 0;
    while let Some((pi, pj)) = min_pivot(&s, t) {
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // clear column t below the pivot
            for i in t + 1..m {
                if engine.is_zero(s.get(i, t)) {
                    continue;
                }
                let (q, _) = engine.divrem(s.get(i, t), s.get(t, t))?;
                let c = engine.neg(&q);
                s.row_add_multiple(i, t, &c);
                u.row_add_multiple(i, t, &c);
                u_inv.col_add_multiple(t, i, &q);
            }
            // clear row t to the right of the pivot
            for j in t + 1..n {
                if engine.is_zero(s.get(t, j)) {
                    continue;
                }
                let (q, _) = engine.divrem(s.get(t, j), s.get(t, t))?;
                let c = engine.neg(&q);
                s.col_add_multiple(j, t, &c);
                v.col_add_multiple(j, t, &c);
            }
            // a nonzero remainder anywhere in row/column t means a smaller
            // pivot is available there; move it in and go again
            let mut smaller: Option<(usize, usize)> = None;
            let pivot_measure = engine.measure(s.get(t, t)).expect("pivot nonzero");
            for i in t + 1..m {
                if let Some(mm) = engine.measure(s.get(i, t)) {
                    if mm < pivot_measure {
                        smaller = Some((i, t));
                        break;
                    }
                }
            }
            if smaller.is_none() {
                for j in t + 1..n {
                    if let Some(mm) = engine.measure(s.get(t, j)) {
                        if mm < pivot_measure {
                            smaller = Some((t, j));
                            break;
                        }
                    }
                }
            }
            match smaller {
                Some((i, _)) if i > t => {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    u_inv.swap_cols(t, i);
                }
                Some((_, j)) => {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                None => {
                    // row and column clean?
                    let col_clean = (t + 1..m).all(|i| engine.is_zero(s.get(i, t)));
                    let row_clean = (t + 1..n).all(|j| engine.is_zero(s.get(t, j)));
                    if col_clean && row_clean {
                        break 'reduce;
                    }
                }
            }
        }

        // enforce the divisibility chain: pivot must divide the remaining block
        let mut dirty = false;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if engine.is_zero(s.get(i, j)) {
                    continue;
                }
                let (_, r) = engine.divrem(s.get(i, j), s.get(t, t))?;
                if !engine.is_zero(&r) {
                    let one = engine.one();
                    s.row_add_multiple(t, i, &one);
                    u.row_add_multiple(t, i, &one);
                    let neg_one = engine.neg(&one);
                    u_inv.col_add_multiple(i, t, &neg_one);
                    dirty = true;
                    break 'scan;
                }
            }
        }
        if dirty {
            continue; // re-run pivot cleanup at the same t
        }

        // normalize the pivot to its canonical associate
        let (unit, canon) = engine.canonical_assoc(s.get(t, t));
        if !engine.is_one(&unit) {
            s.scale_row(t, &unit);
            u.scale_row(t, &unit);
            let unit_inv = engine.try_inverse(&unit).expect("unit");
            u_inv.scale_col(t, &unit_inv);
            debug_assert_eq!(s.get(t, t), &canon);
        }
        t += 1;
    }

    let invariant_factors: Vec<Elem> = (0..t).map(|i| s.get(i, i).clone()).collect();
    Ok(SmithDecomposition { u, u_inv, s, v, invariant_factors })
}

/// Column-style Hermite reduction: A * V = H with V unimodular, zero columns
/// of H trailing, and the nonzero columns of H linearly independent.
pub fn hermite_column_reduce(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let engine = a.engine().clone();
    engine.require_euclidean()?;
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut v = Matrix::identity(engine.clone(), n);

    let mut c = 0; // next pivot column
    for r in 0..m {
        if c == n {
            break;
        }
        // gcd-eliminate row r among columns c..n until one entry remains
        loop {
            let mut best: Option<(num_bigint::BigUint, usize)> = None;
            for j in c..n {
                if let Some(mm) = engine.measure(h.get(r, j)) {
                    match &best {
                        Some((bm, _)) if *bm <= mm => {}
                        _ => best = Some((mm, j)),
                    }
                }
            }
            let Some((_, pj)) = best else {
                break; // row r is zero on c..n
            };
            h.swap_cols(c, pj);
            v.swap_cols(c, pj);
            let mut again = false;
            for j in c + 1..n {
                if engine.is_zero(h.get(r, j)) {
                    continue;
                }
                let (q, rem) = engine.divrem(h.get(r, j), h.get(r, c))?;
                let neg_q = engine.neg(&q);
                h.col_add_multiple(j, c, &neg_q);
                v.col_add_multiple(j, c, &neg_q);
                if !engine.is_zero(&rem) {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if engine.is_zero(h.get(r, c)) {
            continue;
        }
        // normalize pivot and reduce earlier columns at this row
        let (unit, _) = engine.canonical_assoc(h.get(r, c));
        if !engine.is_one(&unit) {
            h.scale_col(c, &unit);
            v.scale_col(c, &unit);
        }
        for j in 0..c {
            if engine.is_zero(h.get(r, j)) {
                continue;
            }
            let (q, _) = engine.divrem(h.get(r, j), h.get(r, c))?;
            if engine.is_zero(&q) {
                continue;
            }
            let neg_q = engine.neg(&q);
            h.col_add_multiple(j, c, &neg_q);
            v.col_add_multiple(j, c, &neg_q);
        }
        c += 1;
    }
    Ok((h, v))
}

/// A free basis of { x : A x = 0 }, returned as the columns of the result.
pub fn kernel_basis(a: &Matrix) -> Result<Matrix> {
    let engine = a.engine().clone();
    engine.require_euclidean()?;
    let (h, v) = hermite_column_reduce(a)?;
    let rank = (0..h.cols()).take_while(|&j| !h.column_is_zero(j)).count();
    let idx: Vec<usize> = (rank..h.cols()).collect();
    debug_assert!(idx.iter().all(|&j| h.column_is_zero(j)));
    Ok(v.select_columns(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::RingEngine;
    use crate::matrix::int_matrix;
    use num_bigint::BigInt;
    use num_traits::Zero;

    /// Independent oracle: d1*...*dk = gcd of all k x k minors.
    fn invariant_factors_via_minors(a: &Matrix) -> Vec<BigInt> {
        fn minors_gcd(a: &Matrix, k: usize) -> BigInt {
            use num_integer::Integer as _;
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                if k > n {
                    return vec![];
                }
                let mut out = vec![];
                for rest in combos(n - 1, k - 1) {
                    let mut c = rest.clone();
                    c.push(n - 1);
                    out.push(c);
                }
                out.extend(combos(n - 1, k));
                out
            }
            let mut g = BigInt::zero();
            for ri in combos(a.rows(), k) {
                for ci in combos(a.cols(), k) {
                    let sub = a.select_rows(&ri).select_columns(&ci);
                    let d = sub.determinant().unwrap();
                    g = g.gcd(d.as_int());
                }
            }
            g
        }
        let mut out = vec![];
        let mut prev = BigInt::from(1);
        for k in 1..=a.rows().min(a.cols()) {
            let g = minors_gcd(a, k);
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn snf_spec_examples() {
        // frozen from the minor-gcd oracle: d1 = gcd = 2, d1*d2 = |det| = 8
        let a = int_matrix(&[&[2, 4], &[6, 8]]);
        let d = smith_normal_form(&a).unwrap();
        assert_eq!(d.invariant_factors, vec![Elem::int(2), Elem::int(4)]);
        assert!(d.verify(&a).unwrap());

        let id = Matrix::identity(RingEngine::Integers, 3);
        let d = smith_normal_form(&id).unwrap();
        assert_eq!(d.invariant_factors, vec![Elem::int(1); 3]);

        let z = Matrix::zero(RingEngine::Integers, 2, 3);
        let d = smith_normal_form(&z).unwrap();
        assert!(d.invariant_factors.is_empty());
        assert!(d.verify(&z).unwrap());
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let cases: Vec<Matrix> = vec![
            int_matrix(&[&[4, 6], &[2, 8]]),
            int_matrix(&[&[0, 0, 5], &[3, 0, 0]]),
            int_matrix(&[&[-2, 4, 1], &[6, -8, 0], &[3, 3, 3]]),
            int_matrix(&[&[12]]),
            int_matrix(&[&[2, 4, 8], &[4, 8, 16]]),
        ];
        for a in cases {
            let d = smith_normal_form(&a).unwrap();
            assert!(d.verify(&a).unwrap(), "verify failed for {a}");
            let got: Vec<BigInt> = d.invariant_factors.iter().map(|e| e.as_int().clone()).collect();
            assert_eq!(got, invariant_factors_via_minors(&a), "oracle mismatch for {a}");
        }
    }

    #[test]
    fn snf_over_polynomials() {
        use crate::engine::FpPoly;
        let fp = RingEngine::poly_over_fp(5).unwrap();
        let x = Elem::Poly(FpPoly::x(5));
        let x2 = fp.mul(&x, &x);
        // diag(x, x^2) with a twist
        let a = Matrix::from_rows(
            fp.clone(),
            vec![vec![x.clone(), fp.zero()], vec![x2.clone(), x2.clone()]],
        )
        .unwrap();
        let d = smith_normal_form(&a).unwrap();
        assert!(d.verify(&a).unwrap());
        assert_eq!(d.invariant_factors.len(), 2);
        for f in &d.invariant_factors {
            assert!(f.as_poly().is_monic());
        }
        // d1 | d2
        assert!(fp.exact_div(&d.invariant_factors[1], &d.invariant_factors[0]).is_some());
    }

    #[test]
    fn snf_rejects_residue_engine() {
        let a = crate::matrix::mod_matrix(4, &[&[2]]);
        assert!(smith_normal_form(&a).is_err());
    }

    #[test]
    fn hermite_spec_examples() {
        // [[2,4]] -> [[2,0]]  (gcd column elimination)
        let a = int_matrix(&[&[2, 4]]);
        let (h, v) = hermite_column_reduce(&a).unwrap();
        assert_eq!(h, int_matrix(&[&[2, 0]]));
        assert_eq!(a.mul(&v).unwrap(), h);
        assert!(RingEngine::Integers.is_unit(&v.determinant().unwrap()));

        let z = Matrix::zero(RingEngine::Integers, 2, 2);
        let (h, _) = hermite_column_reduce(&z).unwrap();
        assert!(h.is_zero());

        let id = int_matrix(&[&[1, 0], &[0, 1]]);
        let (h, v) = hermite_column_reduce(&id).unwrap();
        assert_eq!(h, id);
        assert_eq!(v, id);
    }

    #[test]
    fn hermite_zero_columns_trail_and_independent() {
        let a = int_matrix(&[&[2, 4, 6], &[1, 2, 3]]);
        let (h, v) = hermite_column_reduce(&a).unwrap();
        assert_eq!(a.mul(&v).unwrap(), h);
        let nonzero: Vec<usize> = (0..h.cols()).filter(|&j| !h.column_is_zero(j)).collect();
        assert_eq!(nonzero, vec![0]);
        // independence: SNF of the nonzero part has full rank
        let nz = h.select_columns(&nonzero);
        let d = smith_normal_form(&nz).unwrap();
        assert_eq!(d.rank(), nonzero.len());
    }

    #[test]
    fn kernel_spec_examples() {
        let a = int_matrix(&[&[2, -4]]);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
        // frozen by brute force over |x|,|y| <= 4: the minimal solution is +-(2,1)
        let x = k.get(0, 0).as_int().clone();
        let y = k.get(1, 0).as_int().clone();
        assert_eq!(x.magnitude(), &num_bigint::BigUint::from(2u32));
        assert_eq!(y.magnitude(), &num_bigint::BigUint::from(1u32));
        let id = Matrix::identity(RingEngine::Integers, 2);
        assert_eq!(kernel_basis(&id).unwrap().cols(), 0);
        let z = Matrix::zero(RingEngine::Integers, 1, 1);
        let k = kernel_basis(&z).unwrap();
        assert_eq!(k, int_matrix(&[&[1]]));
    }

    #[test]
    fn kernel_basis_is_primitive() {
        let cases = vec![
            int_matrix(&[&[2, -4]]),
            int_matrix(&[&[6, 10, 15]]),
            int_matrix(&[&[1, 2, 3], &[2, 4, 6]]),
        ];
        for a in cases {
            let k = kernel_basis(&a).unwrap();
            assert!(a.mul(&k).unwrap().is_zero());
            if k.cols() > 0 {
                let d = smith_normal_form(&k).unwrap();
                assert_eq!(d.rank(), k.cols());
                for f in &d.invariant_factors {
                    assert!(RingEngine::Integers.is_one(f), "non-primitive kernel basis");
                }
            }
        }
    }
}

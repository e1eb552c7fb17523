//! Howell form: the canonical row-span form over Z/n.
//!
//! Two matrices over Z/n have the same row span exactly when their Howell
//! forms are identical, which is what turns "same submodule of (Z/n)^k"
//! into a literal equality test.

use crate::engine::{Elem, RingEngine, xgcd};
use crate::error::Result;
use crate::matrix::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

fn leading_col(engine: &RingEngine, row: &[Elem]) -> Option<usize> {
    row.iter().position(|e| !engine.is_zero(e))
}

/// Row-echelonize `rows` in place over Z/n with unimodular 2x2 gcd
/// transforms, normalize pivots to canonical divisors of n, and reduce the
/// entries above each pivot. Returns the nonzero rows sorted by pivot column.
fn echelonize(engine: &RingEngine, rows: &mut Vec<Vec<Elem>>, width: usize) {
    let mut done: Vec<Vec<Elem>> = Vec::new();
    for col in 0..width {
        // collect rows whose leading column is `col`
        let mut batch: Vec<Vec<Elem>> = Vec::new();
        let mut rest: Vec<Vec<Elem>> = Vec::new();
        for r in rows.drain(..) {
            match leading_col(engine, &r) {
                Some(c) if c == col => batch.push(r),
                Some(_) => rest.push(r),
                None => {}
            }
        }
        *rows = rest;
        if batch.is_empty() {
            continue;
        }
        // fold the batch into a single pivot row with gcd transforms
        let mut pivot_row = batch.pop().unwrap();
        for row in batch {
            let a = pivot_row[col].as_int().clone();
            let b = row[col].as_int().clone();
            let (g, s, t) = xgcd(&a, &b);
            // [[s, t], [b/g, -(a/g)]] has determinant -1
            let bg = &b / &g;
            let ag = &a / &g;
            let mut new_pivot = vec![engine.zero(); width];
            let mut new_other = vec![engine.zero(); width];
            let (es, et) = (engine.from_bigint(s), engine.from_bigint(t));
            let (ebg, eag) = (engine.from_bigint(bg), engine.from_bigint(-ag));
            for j in 0..width {
                let p1 = engine.mul(&es, &pivot_row[j]);
                let p2 = engine.mul(&et, &row[j]);
                new_pivot[j] = engine.add(&p1, &p2);
                let q1 = engine.mul(&ebg, &pivot_row[j]);
                let q2 = engine.mul(&eag, &row[j]);
                new_other[j] = engine.add(&q1, &q2);
            }
            pivot_row = new_pivot;
            if leading_col(engine, &new_other).is_some() {
                rows.push(new_other);
            }
        }
        debug_assert_eq!(leading_col(engine, &pivot_row), Some(col));
        // canonical pivot: the divisor gcd(lift, n)
        let (unit, _) = engine.canonical_assoc(&pivot_row[col]);
        if !engine.is_one(&unit) {
            for e in pivot_row.iter_mut() {
                *e = engine.mul(e, &unit);
            }
        }
        // reduce entries above the pivot into [0, pivot)
        let pivot = pivot_row[col].as_int().clone();
        for prev in done.iter_mut() {
            let e = prev[col].as_int();
            if e.is_zero() {
                continue;
            }
            let q = e.div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let c = engine.from_bigint(-q);
            for j in 0..width {
                let t = engine.mul(&c, &pivot_row[j]);
                prev[j] = engine.add(&prev[j], &t);
            }
        }
        done.push(pivot_row);
    }
    debug_assert!(rows.is_empty());
    *rows = done;
}

/// The Howell form of a matrix over Z/n.
///
/// The result has one row per pivot (zero rows dropped), pivots are the
/// canonical divisors of n in strictly increasing columns, entries above a
/// pivot are reduced modulo it, and the span is saturated: for every row r
/// and every a in Z/n, a*r lies in the span of the rows at or below the
/// leading column of a*r.
pub fn howell_form(a: &Matrix) -> Result<Matrix> {
    let engine = a.engine().clone();
    engine.require_residue()?;
    let n = BigInt::from(engine.modulus().unwrap().clone());
    let width = a.cols();
    let mut rows: Vec<Vec<Elem>> = (0..a.rows())
        .map(|i| (0..width).map(|j| a.get(i, j).clone()).collect::<Vec<Elem>>())
        .filter(|r| leading_col(&engine, r).is_some())
        .collect();

    loop {
        echelonize(&engine, &mut rows, width);
        // saturate: the annihilator multiple of each pivot row must also be
        // spanned by rows with a later leading column
        let mut extra: Vec<Vec<Elem>> = Vec::new();
        for r in rows.iter() {
            let col = leading_col(&engine, r).unwrap();
            let pivot = r[col].as_int();
            let ann = &n / pivot.gcd(&n); // pivot is a divisor of n
            let c = engine.from_bigint(ann);
            let mult: Vec<Elem> = r.iter().map(|e| engine.mul(&c, e)).collect();
            if leading_col(&engine, &mult).is_some() {
                extra.push(mult);
            }
        }
        if extra.is_empty() {
            break;
        }
        let before = rows.clone();
        rows.extend(extra);
        echelonize(&engine, &mut rows, width);
        if rows == before {
            break;
        }
    }

    Ok(Matrix::from_fn(engine, rows.len(), width, |i, j| {
        rows[i][j].clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mod_matrix;

    /// Brute-force row span of `a` over Z/n as a sorted set of row vectors.
    fn row_span(a: &Matrix) -> Vec<Vec<u64>> {
        let engine = a.engine().clone();
        let mut span: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
        let zero = vec![0u64; a.cols()];
        span.insert(zero);
        // close under addition of rows and scalar multiples
        loop {
            let mut grew = false;
            let items: Vec<Vec<u64>> = span.iter().cloned().collect();
            for v in &items {
                for i in 0..a.rows() {
                    let mut w = v.clone();
                    for j in 0..a.cols() {
                        let s = engine.add(
                            &engine.from_i64(w[j] as i64),
                            a.get(i, j),
                        );
                        w[j] = digit(&s);
                    }
                    if span.insert(w) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        span.into_iter().collect()
    }

    fn digit(e: &Elem) -> u64 {
        let (_, d) = e.as_int().to_u64_digits();
        d.first().copied().unwrap_or(0)
    }

    #[test]
    fn howell_spec_examples() {
        let a = mod_matrix(4, &[&[2]]);
        assert_eq!(howell_form(&a).unwrap(), mod_matrix(4, &[&[2]]));
        let a = mod_matrix(6, &[&[3]]);
        assert_eq!(howell_form(&a).unwrap(), mod_matrix(6, &[&[3]]));
        let a = mod_matrix(4, &[&[2, 0], &[0, 0]]);
        let b = mod_matrix(4, &[&[2, 0], &[2, 0]]);
        assert_eq!(howell_form(&a).unwrap(), howell_form(&b).unwrap());
    }

    #[test]
    fn howell_canonical_for_equal_spans_exhaustive() {
        // all 1x2 and 2x2 matrices over Z/4: equal spans iff equal Howell forms
        let engine = RingEngine::integers_mod(4).unwrap();
        let mut by_span: std::collections::BTreeMap<Vec<Vec<u64>>, Matrix> =
            std::collections::BTreeMap::new();
        let mut count = 0;
        for a0 in 0..4i64 {
            for a1 in 0..4i64 {
                for b0 in 0..4i64 {
                    for b1 in 0..4i64 {
                        let a = mod_matrix(4, &[&[a0, a1], &[b0, b1]]);
                        let h = howell_form(&a).unwrap();
                        let span = row_span(&a);
                        match by_span.get(&span) {
                            None => {
                                by_span.insert(span, h);
                            }
                            Some(prev) => {
                                assert_eq!(prev, &h, "same span, different Howell form");
                                count += 1;
                            }
                        }
                        let _ = engine.clone();
                    }
                }
            }
        }
        assert!(count > 0);
    }

    #[test]
    fn howell_nontrivial_saturation() {
        // over Z/4 the row (2, 1) spans {(0,0),(2,1),(0,2),(2,3)}; the Howell
        // form must expose the hidden row (0, 2)
        let a = mod_matrix(4, &[&[2, 1]]);
        let h = howell_form(&a).unwrap();
        assert_eq!(h.rows(), 2);
        assert_eq!(row_span(&a), row_span(&h));
    }
}

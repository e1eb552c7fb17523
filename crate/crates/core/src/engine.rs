//! Ring engines: the three computable coefficient rings every other module
//! builds on.
//!
//! An engine is a value, not a type parameter, because two of the three rings
//! carry a runtime parameter (the modulus `n`, the characteristic `p`). All
//! element arithmetic goes through engine methods; elements themselves are
//! inert data with a canonical representation, so `==` on elements is
//! semantic equality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// A dense univariate polynomial over the prime field F_p.
///
/// Coefficients are stored low-to-high with no trailing zeros; every
/// coefficient lies in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with deg(0) = None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        FpPoly::new(p, out)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p as u128;
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + (a as u128) * (b as u128)) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        let c = c % p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % p as u128) as u64)
                .collect(),
        )
    }

    /// Division with remainder; the divisor must be nonzero.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = d.degree().unwrap();
        let lead_inv = mod_inverse_u64(d.leading_coeff(), p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let k = rem.len() - 1 - dd;
            let c = ((rem[rem.len() - 1] as u128 * lead_inv as u128) % p as u128) as u64;
            if c != 0 {
                quo[k] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    let sub = (dc as u128 * c as u128) % p as u128;
                    let idx = k + i;
                    rem[idx] = ((rem[idx] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
            debug_assert_eq!(rem[rem.len() - 1], 0);
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(mod_inverse_u64(self.leading_coeff(), self.p))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let d: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u128 % p as u128) * c as u128 % p as u128) as u64)
            .collect();
        FpPoly::new(p, d)
    }

    /// self^e mod m by square and multiply.
    pub fn pow_mod(&self, e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.divrem(m).1;
        let mut acc = FpPoly::constant(self.p, 1);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Inverse of `a` modulo prime `p`.
fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut result: u128 = 1;
    let mut base = (a % p) as u128;
    let mut e = p - 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u64
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 11u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of one of the three engines.
///
/// `Int` doubles as an arbitrary-precision integer and as a residue in
/// `[0, n)`; the engine decides which. Residues are always stored reduced, so
/// structural equality is element equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Poly(FpPoly),
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(BigInt::from(v))
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Elem::Int(v) => v,
            Elem::Poly(_) => panic!("expected an integer element"),
        }
    }

    pub fn as_poly(&self) -> &FpPoly {
        match self {
            Elem::Poly(q) => q,
            Elem::Int(_) => panic!("expected a polynomial element"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Poly(q) => write!(f, "{q}"),
        }
    }
}

/// One of the three coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingEngine {
    /// Arbitrary-precision integers.
    Integers,
    /// Residues modulo n, for n >= 2.
    IntegersMod(BigUint),
    /// Univariate polynomials over the prime field F_p.
    PolyOverFp(u64),
}

impl RingEngine {
    pub fn integers() -> RingEngine {
        RingEngine::Integers
    }

    pub fn integers_mod(n: u64) -> Result<RingEngine> {
        if n < 2 {
            return Err(Error::InvalidEngine(format!("modulus {n} must be >= 2")));
        }
        Ok(RingEngine::IntegersMod(BigUint::from(n)))
    }

    pub fn poly_over_fp(p: u64) -> Result<RingEngine> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidEngine(format!("{p} is not prime")));
        }
        if p >= (1u64 << 31) {
            return Err(Error::InvalidEngine(format!("characteristic {p} too large")));
        }
        Ok(RingEngine::PolyOverFp(p))
    }

    /// Euclidean domains support division with strictly decreasing remainder.
    pub fn is_euclidean_domain(&self) -> bool {
        !matches!(self, RingEngine::IntegersMod(_))
    }

    pub fn modulus(&self) -> Option<&BigUint> {
        match self {
            RingEngine::IntegersMod(n) => Some(n),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RingEngine::Integers => "int".to_string(),
            RingEngine::IntegersMod(n) => format!("mod {n}"),
            RingEngine::PolyOverFp(p) => format!("poly {p}"),
        }
    }

    pub fn require_same(&self, other: &RingEngine) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::EngineMismatch(self.describe(), other.describe()))
        }
    }

    pub fn require_euclidean(&self) -> Result<()> {
        if self.is_euclidean_domain() {
            Ok(())
        } else {
            Err(Error::NotEuclidean(self.describe()))
        }
    }

    pub fn require_residue(&self) -> Result<()> {
        if matches!(self, RingEngine::IntegersMod(_)) {
            Ok(())
        } else {
            Err(Error::NotResidue(self.describe()))
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            RingEngine::PolyOverFp(p) => Elem::Poly(FpPoly::zero(*p)),
            _ => Elem::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            RingEngine::PolyOverFp(p) => Elem::Poly(FpPoly::constant(*p, 1)),
            _ => Elem::Int(BigInt::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> Elem {
        match self {
            RingEngine::Integers => Elem::Int(v),
            RingEngine::IntegersMod(n) => {
                let n = BigInt::from(n.clone());
                Elem::Int(v.mod_floor(&n))
            }
            RingEngine::PolyOverFp(p) => {
                let c = v.mod_floor(&BigInt::from(*p));
                let (_, digits) = c.to_u64_digits();
                Elem::Poly(FpPoly::constant(*p, digits.first().copied().unwrap_or(0)))
            }
        }
    }

    /// Reduce an arbitrary representative into canonical form.
    pub fn canon(&self, e: Elem) -> Elem {
        match (self, e) {
            (RingEngine::IntegersMod(n), Elem::Int(v)) => {
                Elem::Int(v.mod_floor(&BigInt::from(n.clone())))
            }
            (_, e) => e,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => v.is_zero(),
            Elem::Poly(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => v.is_one(),
            Elem::Poly(q) => q.coeffs == [1],
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.canon(Elem::Int(x + y)),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.canon(Elem::Int(x - y)),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.sub(y)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => self.canon(Elem::Int(-x)),
            Elem::Poly(x) => Elem::Poly(x.neg()),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.canon(Elem::Int(x * y)),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.mul(y)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (self, a) {
            (RingEngine::Integers, Elem::Int(v)) => v.is_one() || (-v).is_one(),
            (RingEngine::IntegersMod(n), Elem::Int(v)) => {
                v.gcd(&BigInt::from(n.clone())).is_one()
            }
            (RingEngine::PolyOverFp(_), Elem::Poly(q)) => q.degree() == Some(0),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn try_inverse(&self, a: &Elem) -> Option<Elem> {
        match (self, a) {
            (RingEngine::Integers, Elem::Int(v)) => {
                if v.is_one() || (-v).is_one() {
                    Some(Elem::Int(v.clone()))
                } else {
                    None
                }
            }
            (RingEngine::IntegersMod(n), Elem::Int(v)) => {
                let n = BigInt::from(n.clone());
                let (g, x, _) = xgcd(v, &n);
                if g.is_one() {
                    Some(Elem::Int(x.mod_floor(&n)))
                } else {
                    None
                }
            }
            (RingEngine::PolyOverFp(p), Elem::Poly(q)) => {
                if q.degree() == Some(0) {
                    Some(Elem::Poly(FpPoly::constant(*p, mod_inverse_u64(q.coeffs[0], *p))))
                } else {
                    None
                }
            }
            _ => panic!("mixed element kinds"),
        }
    }

    /// Euclidean measure used for pivot selection; None for zero.
    ///
    /// |a| over the integers, degree over F_p[x]. Not defined for residues.
    pub fn measure(&self, a: &Elem) -> Option<BigUint> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Elem::Int(v) => Some(v.magnitude().clone()),
            Elem::Poly(q) => Some(BigUint::from(q.degree().unwrap())),
        }
    }

    /// Division with remainder over a Euclidean-domain engine.
    ///
    /// Over the integers the remainder is balanced (|r| <= |b|/2), which
    /// keeps elimination pivots small.
    pub fn divrem(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
        self.require_euclidean()?;
        assert!(!self.is_zero(b), "division by zero");
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => {
                let (mut q, mut r) = x.div_rem(y);
                // balance: force |r| <= |y|/2
                if r.magnitude() * 2u32 > y.magnitude().clone() {
                    if (&r < &BigInt::zero()) == (y < &BigInt::zero()) {
                        q += 1;
                        r -= y;
                    } else {
                        q -= 1;
                        r += y;
                    }
                }
                Ok((Elem::Int(q), Elem::Int(r)))
            }
            (Elem::Poly(x), Elem::Poly(y)) => {
                let (q, r) = x.divrem(y);
                Ok((Elem::Poly(q), Elem::Poly(r)))
            }
            _ => panic!("mixed element kinds"),
        }
    }

    /// Exact division; None when b does not divide a.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.is_zero(b) {
            return None;
        }
        match self {
            RingEngine::IntegersMod(n) => {
                // solve b*x = a in Z/n: solvable iff gcd(b, n) | a
                let n_int = BigInt::from(n.clone());
                let b_int = b.as_int();
                let (g, inv, _) = xgcd(b_int, &n_int);
                let (q, r) = a.as_int().div_rem(&g);
                if !r.is_zero() {
                    return None;
                }
                // b/g is invertible mod n/g; inv solves (b/g) * inv = 1 mod n/g
                let ng = &n_int / &g;
                let sol = (q * inv).mod_floor(&ng);
                Some(Elem::Int(sol.mod_floor(&n_int)))
            }
            _ => {
                let (q, r) = self.divrem(a, b).ok()?;
                if self.is_zero(&r) {
                    Some(q)
                } else {
                    None
                }
            }
        }
    }

    /// The canonical associate of `a`: a unit `u` with `u*a` in canonical
    /// form, returned as `(u, u*a)`.
    ///
    /// Integers: positive. Polynomials: monic. Residues mod n: the canonical
    /// divisor gcd(a, n) generating the same ideal.
    pub fn canonical_assoc(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.one(), self.zero());
        }
        match (self, a) {
            (RingEngine::Integers, Elem::Int(v)) => {
                if v.is_negative() {
                    (Elem::int(-1), Elem::Int(-v))
                } else {
                    (Elem::int(1), Elem::Int(v.clone()))
                }
            }
            (RingEngine::PolyOverFp(p), Elem::Poly(q)) => {
                let lc = q.leading_coeff();
                if lc == 1 {
                    (self.one(), a.clone())
                } else {
                    let inv = mod_inverse_u64(lc, *p);
                    (Elem::Poly(FpPoly::constant(*p, inv)), Elem::Poly(q.monic()))
                }
            }
            (RingEngine::IntegersMod(n), Elem::Int(v)) => {
                let n_int = BigInt::from(n.clone());
                let d = v.gcd(&n_int);
                let a_prime = v / &d;
                let m = &n_int / &d;
                // invert a' modulo m, then lift to a unit modulo n
                let (_, inv, _) = xgcd(&a_prime, &m);
                let mut u = inv.mod_floor(&m);
                while !u.gcd(&n_int).is_one() {
                    u += &m;
                }
                debug_assert!(u < n_int);
                debug_assert_eq!((&u * v).mod_floor(&n_int), d.mod_floor(&n_int));
                (Elem::Int(u), Elem::Int(d.mod_floor(&n_int)))
            }
            _ => panic!("mixed element kinds"),
        }
    }
}

/// Extended Euclid over the integers: returns (g, x, y) with a*x + b*y = g,
/// g = gcd(a, b) >= 0.
pub fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

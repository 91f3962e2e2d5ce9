//! Arithmetic in GF(p^m) for the Singer-type construction.
//!
//! An element is encoded as the integer `sum c_i p^i` of its coefficient
//! vector `(c_0, .., c_{m-1})` over the polynomial basis `1, x, .., x^{m-1}`.
//! Multiplication goes through precomputed exp/log tables.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the field size `p^m`.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);
}

pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Field context: modulus, primitive element and discrete-log tables.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, coefficients low to high (length `m + 1`).
    modulus: Vec<u64>,
    omega: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    powers_of_p: Vec<u64>,
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FieldCtx", 5)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("omega", &self.coeffs(self.omega))?;
        st.end()
    }
}

/// Builds GF(p^m) with the default size limit.
pub fn build_field(p: u64, m: u32) -> Result<FieldCtx> {
    FieldCtx::with_limit(p, m, DEFAULT_FIELD_LIMIT)
}

impl FieldCtx {
    pub fn with_limit(p: u64, m: u32, limit: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let too_large = Error::FieldTooLarge { p, m, limit };
        let q = p.checked_pow(m).ok_or(too_large.clone())?;
        if q > limit || q > u32::MAX as u64 {
            return Err(too_large);
        }
        let powers_of_p: Vec<u64> = (0..=m).map(|i| p.pow(i)).collect();
        let modulus = smallest_irreducible(p, m as usize);
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            omega: FieldElem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            powers_of_p,
        };
        ctx.omega = ctx.smallest_primitive();
        ctx.fill_tables();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn omega(&self) -> FieldElem {
        self.omega
    }

    /// Number of 1-dimensional subspaces, `(q - 1) / (p - 1)`.
    pub fn line_count(&self) -> u64 {
        (self.q - 1) / (self.p - 1)
    }

    pub fn coeffs(&self, v: FieldElem) -> Vec<u64> {
        let mut rest = v.0 as u64;
        (0..self.m)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "{coeffs:?} is not a coefficient vector over GF({}) of length <= {}",
                self.p, self.m
            )));
        }
        Ok(FieldElem(
            coeffs
                .iter()
                .zip(&self.powers_of_p)
                .map(|(c, pw)| c * pw)
                .sum::<u64>() as u32,
        ))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as u32).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0;
        for pw in &self.powers_of_p[..self.m as usize] {
            out += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let mut x = a.0 as u64;
        let mut out = 0;
        for pw in &self.powers_of_p[..self.m as usize] {
            out += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = self.q - 1;
        let e = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        FieldElem(self.exp[e as usize])
    }

    /// `omega^e`.
    pub fn exp(&self, e: u64) -> FieldElem {
        FieldElem(self.exp[(e % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { FieldElem::ONE } else { FieldElem::ZERO };
        }
        let n = self.q - 1;
        let l = (self.log[a.0 as usize] as u128 * e as u128 % n as u128) as u64;
        self.exp(l)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElem) -> Result<u64> {
        let l = self.dlog(a)?;
        let n = self.q - 1;
        Ok(n / gcd(l, n))
    }

    /// Discrete logarithm base `omega`, in `0..q-1`.
    pub fn dlog(&self, v: FieldElem) -> Result<u64> {
        if v.0 == 0 {
            return Err(Error::ZeroElement);
        }
        if v.0 as u64 >= self.q {
            return Err(Error::InvalidArgument(format!("{} is not a field element", v.0)));
        }
        Ok(self.log[v.0 as usize] as u64)
    }

    /// Index of the line `omega^t F_p` through `v`, i.e. `dlog(v) mod r`.
    /// Checks that every nonzero point of the line gives the same index.
    pub fn line_index(&self, v: FieldElem) -> Result<u64> {
        let r = self.line_count();
        let t = self.dlog(v)? % r;
        for c in 2..self.p {
            let w = self.mul(FieldElem(c as u32), v);
            if self.dlog(w)? % r != t {
                return Err(Error::VerificationFailed(format!(
                    "line through {:?} has no well-defined index",
                    self.coeffs(v)
                )));
            }
        }
        Ok(t)
    }

    // Slow multiplication used only while the tables are being built.
    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let m = self.m as usize;
        let ca = self.coeffs(FieldElem(a as u32));
        let cb = self.coeffs(FieldElem(b as u32));
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce(&mut prod, &self.modulus, self.p);
        prod[..m].iter().zip(&self.powers_of_p).map(|(c, pw)| c * pw).sum()
    }

    fn pow_poly(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn smallest_primitive(&self) -> FieldElem {
        let n = self.q - 1;
        let factors = prime_factors(n);
        (1..self.q)
            .find(|&g| factors.iter().all(|&l| self.pow_poly(g, n / l) != 1))
            .map(|g| FieldElem(g as u32))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn fill_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let omega = self.omega.0 as u64;
        let omega_is_x = self.m > 1 && omega == self.p;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = 1u64;
        for i in 0..n {
            exp.push(cur as u32);
            log[cur as usize] = i as u32;
            cur = if omega_is_x {
                self.mul_by_x(cur)
            } else {
                self.mul_poly(cur, omega)
            };
        }
        debug_assert_eq!(cur, 1);
        self.exp = exp;
        self.log = log;
    }

    fn mul_by_x(&self, a: u64) -> u64 {
        let m = self.m as usize;
        let top = a / self.powers_of_p[m - 1];
        let shifted = (a % self.powers_of_p[m - 1]) * self.p;
        if top == 0 {
            return shifted;
        }
        // x^m = -(f_0 + f_1 x + .. + f_{m-1} x^{m-1})
        let mut out = 0;
        let mut rest = shifted;
        for i in 0..m {
            let c = rest % self.p;
            rest /= self.p;
            let sub = (top * self.modulus[i]) % self.p;
            out += ((c + self.p - sub) % self.p) * self.powers_of_p[i];
        }
        out
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduces `poly` (low to high) in place modulo the monic `modulus`.
fn reduce(poly: &mut [u64], modulus: &[u64], p: u64) {
    let d = modulus.len() - 1;
    for i in (d..poly.len()).rev() {
        let c = poly[i] % p;
        if c == 0 {
            continue;
        }
        for j in 0..=d {
            let idx = i - d + j;
            poly[idx] = (poly[idx] + p - (c * modulus[j]) % p) % p;
        }
    }
}

fn monic_from_index(p: u64, degree: usize, mut idx: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        out.push(idx % p);
        idx /= p;
    }
    out.push(1);
    out
}

fn divides(g: &[u64], f: &[u64], p: u64) -> bool {
    let mut rem = f.to_vec();
    reduce(&mut rem, g, p);
    rem[..g.len() - 1].iter().all(|&c| c == 0)
}

/// Full irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| (0..p.pow(d as u32)).all(|i| !divides(&monic_from_index(p, d, i), f, p)))
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`,
/// ordering by coefficients from `x^{m-1}` down to the constant term.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    (0..p.pow(m as u32))
        .map(|i| monic_from_index(p, m, i))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// One representative per 1-dimensional subspace of the hyperplane of
/// elements whose `x^{m-1}` coefficient is zero. Representatives are
/// normalised so their highest nonzero coefficient is 1.
pub fn subspace_lines(ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
    if ctx.m < 2 {
        return Err(Error::DegreeTooSmall(ctx.m));
    }
    let bound = ctx.powers_of_p[ctx.m as usize - 1];
    Ok((1..bound)
        .filter(|&v| {
            let mut x = v;
            while x >= ctx.p {
                x /= ctx.p;
            }
            x == 1
        })
        .map(|v| FieldElem(v as u32))
        .collect())
}

/// Free-function form of [`FieldCtx::dlog`].
pub fn dlog(ctx: &FieldCtx, v: FieldElem) -> Result<u64> {
    ctx.dlog(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_matches_hand_computation() {
        let f = build_field(2, 3).unwrap();
        assert_eq!(f.q(), 8);
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.coeffs(f.omega()), vec![0, 1, 0]);
        assert_eq!(f.order_of(f.omega()).unwrap(), 7);
        // x^3 = x + 1
        assert_eq!(f.dlog(f.from_coeffs(&[1, 1]).unwrap()).unwrap(), 3);
        assert_eq!(f.dlog(FieldElem::ONE).unwrap(), 0);
        assert_eq!(f.dlog(f.omega()).unwrap(), 1);
        assert_eq!(f.dlog(FieldElem::ZERO), Err(Error::ZeroElement));
    }

    #[test]
    fn prime_fields() {
        let f = build_field(3, 1).unwrap();
        assert_eq!(f.omega(), FieldElem(2));
        let f = build_field(7, 1).unwrap();
        assert_eq!(f.omega(), FieldElem(3));
        assert_eq!(f.mul(FieldElem(3), FieldElem(5)), FieldElem(1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_field(4, 2).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(build_field(2, 25), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(build_field(65_537, 2), Err(Error::FieldTooLarge { .. })));
        let f = build_field(5, 1).unwrap();
        assert_eq!(subspace_lines(&f), Err(Error::DegreeTooSmall(1)));
    }

    #[test]
    fn exp_log_roundtrip() {
        for (p, m) in [(2, 5), (3, 3), (5, 2), (7, 2), (11, 3)] {
            let f = build_field(p, m).unwrap();
            for v in f.elements().skip(1) {
                assert_eq!(f.exp(f.dlog(v).unwrap()), v);
            }
            assert_eq!(f.order_of(f.omega()).unwrap(), f.q() - 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, m) in [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = build_field(p, m).unwrap();
            let all: Vec<FieldElem> = f.elements().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                for &b in &all {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn line_counts() {
        let f = build_field(2, 3).unwrap();
        let lines = subspace_lines(&f).unwrap();
        assert_eq!(lines, vec![FieldElem(1), FieldElem(2), FieldElem(3)]);
        assert_eq!(subspace_lines(&build_field(3, 2).unwrap()).unwrap().len(), 1);
        assert_eq!(subspace_lines(&build_field(3, 3).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn line_index_is_a_bijection() {
        for (p, m) in [(2, 3), (3, 3), (5, 3), (2, 4)] {
            let f = build_field(p, m).unwrap();
            let r = f.line_count();
            let mut seen = vec![0u32; r as usize];
            for v in f.elements().skip(1) {
                seen[f.line_index(v).unwrap() as usize] += 1;
            }
            // each line has p - 1 nonzero points
            assert!(seen.iter().all(|&c| c as u64 == p - 1));
        }
    }

    #[test]
    fn irreducibility_needs_more_than_roots() {
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1 has no roots over F_2 but factors.
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn prime_search() {
        assert_eq!(next_prime(10), 11);
        assert_eq!(next_prime(11), 11);
        assert_eq!(next_prime(0), 2);
        assert!(!is_prime(1));
    }
}

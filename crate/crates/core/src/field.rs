//! Arithmetic in GF(p^k).
//!
//! Elements are stored as integer codes `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of their coefficient vectors over the prime field (low degree first), so
//! that equality of elements is equality of codes and `0`, `1` are the codes
//! of the additive and multiplicative identities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer code of a field element.
pub type Elem = u32;

/// Largest field order accepted.
pub const MAX_ORDER: u64 = 1 << 16;
/// Default cap on `p^k` for [`Field::enumerate`].
pub const ENUMERATION_CAP: u64 = 1 << 20;
const TABLE_LIMIT: u32 = 256;

/// Description of a finite field: prime, degree and monic modulus
/// (coefficients low-degree first). Prime fields need no modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<u32>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            k: 1,
            modulus: Vec::new(),
        }
    }

    /// GF(p^k) with the built-in modulus (GF(4), GF(8), GF(9)) or the prime field.
    pub fn builtin(p: u32, k: u32) -> Result<Self> {
        let modulus = match (p, k) {
            (_, 1) => Vec::new(),
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 2) => vec![1, 0, 1],
            _ => return Err(Error::InvalidField(format!("GF({p}^{k}) needs an explicit modulus"))),
        };
        Ok(FieldSpec { p, k, modulus })
    }

    /// Fills in a missing built-in modulus.
    pub fn normalized(&self) -> Result<Self> {
        if self.k > 1 && self.modulus.is_empty() {
            FieldSpec::builtin(self.p, self.k)
        } else {
            Ok(self.clone())
        }
    }
}

/// Coefficient-vector view of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Clone, Debug)]
enum Kind {
    Prime,
    Table { add: Vec<Elem>, mul: Vec<Elem> },
    Poly,
}

/// A validated finite field with precomputed arithmetic.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    kind: Kind,
    inv: Vec<Elem>,
    neg: Vec<Elem>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let spec = spec.normalized()?;
        let FieldSpec { p, k, .. } = spec;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::InvalidField(format!("order {p}^{k} too large")));
        }
        let q = q64 as u32;
        if k > 1 {
            let m = &spec.modulus;
            if m.len() != k as usize + 1 {
                return Err(Error::InvalidField(format!("modulus must have {} coefficients", k + 1)));
            }
            if m.iter().any(|&c| c >= p) || m[k as usize] != 1 {
                return Err(Error::InvalidField("modulus must be monic and reduced".into()));
            }
            if !modulus_irreducible(p, m) {
                return Err(Error::InvalidField("modulus is reducible".into()));
            }
        }
        let mut field = Field {
            spec,
            q,
            kind: if k == 1 { Kind::Prime } else { Kind::Poly },
            inv: Vec::new(),
            neg: Vec::new(),
        };
        if k > 1 && q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = field.poly_add(a, b);
                    mul[a as usize * n + b as usize] = field.poly_mul(a, b);
                }
            }
            field.kind = Kind::Table { add, mul };
        }
        field.neg = (0..q).map(|a| field.neg_slow(a)).collect();
        field.inv = (0..q).map(|a| field.inv_slow(a)).collect();
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.spec.k == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::Prime => {
                let s = a + b;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            }
            _ if self.spec.p == 2 => a ^ b,
            Kind::Table { add, .. } => add[(a * self.q + b) as usize],
            Kind::Poly => self.poly_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::Prime => ((a as u64 * b as u64) % self.q as u64) as Elem,
            Kind::Table { mul, .. } => mul[(a * self.q + b) as usize],
            Kind::Poly => self.poly_mul(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b).ok_or(Error::InversionOfZero)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of a prime-field residue.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.spec.p as i64) as Elem
    }

    /// `dst += c * src`.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        if self.spec.p == 2 && c == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
            return;
        }
        match &self.kind {
            Kind::Prime => {
                let p = self.q as u64;
                let c = c as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = ((*d as u64 + c * s as u64) % p) as Elem;
                }
            }
            Kind::Table { add, mul } => {
                let q = self.q as usize;
                let row = &mul[c as usize * q..(c as usize + 1) * q];
                if self.spec.p == 2 {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d ^= row[s as usize];
                    }
                } else {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d = add[*d as usize * q + row[s as usize] as usize];
                    }
                }
            }
            Kind::Poly => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(c, s));
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        if c == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn to_elem(&self, code: Elem) -> FieldElem {
        let p = self.spec.p;
        let mut c = code;
        let coeffs = (0..self.spec.k)
            .map(|_| {
                let r = c % p;
                c /= p;
                r
            })
            .collect();
        FieldElem { coeffs }
    }

    pub fn from_elem(&self, e: &FieldElem) -> Result<Elem> {
        let p = self.spec.p;
        if e.coeffs.len() != self.spec.k as usize || e.coeffs.iter().any(|&c| c >= p) {
            return Err(Error::SpecMismatch(format!(
                "{:?} is not an element of GF({}^{})",
                e.coeffs, p, self.spec.k
            )));
        }
        Ok(e.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c))
    }

    /// Element-level arithmetic over coefficient vectors.
    pub fn apply(&self, op: ArithOp, a: &FieldElem, b: Option<&FieldElem>) -> Result<FieldElem> {
        let x = self.from_elem(a)?;
        let binary = |b: Option<&FieldElem>| -> Result<Elem> {
            let b = b.ok_or_else(|| Error::SpecMismatch("binary operation needs two operands".into()))?;
            self.from_elem(b)
        };
        let r = match op {
            ArithOp::Add => self.add(x, binary(b)?),
            ArithOp::Mul => self.mul(x, binary(b)?),
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x).ok_or(Error::InversionOfZero)?,
        };
        Ok(self.to_elem(r))
    }

    /// All elements in code order: `0, 1, ...`.
    pub fn enumerate(&self) -> Result<Vec<FieldElem>> {
        self.enumerate_capped(ENUMERATION_CAP)
    }

    pub fn enumerate_capped(&self, cap: u64) -> Result<Vec<FieldElem>> {
        if self.q as u64 > cap {
            return Err(Error::cap("field order", cap as usize));
        }
        Ok((0..self.q).map(|c| self.to_elem(c)).collect())
    }

    /// Display form: integers for prime fields, coefficient tuples otherwise.
    pub fn display(&self, a: Elem) -> serde_json::Value {
        if self.is_prime_field() {
            serde_json::Value::from(a)
        } else {
            serde_json::Value::from(self.to_elem(a).coeffs)
        }
    }

    fn poly_add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.spec.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p as u64;
        let k = self.spec.k as usize;
        let ca = self.to_elem(a).coeffs;
        let cb = self.to_elem(b).coeffs;
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        let m = &self.spec.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &mi) in m.iter().enumerate().take(k) {
                let t = prod[d - k + i] + (p - c) * mi as u64;
                prod[d - k + i] = t % p;
            }
            prod[d] = 0;
        }
        let coeffs = prod[..k].iter().map(|&c| c as u32).collect();
        self.from_elem(&FieldElem { coeffs }).expect("reduced product")
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        let p = self.spec.p;
        let coeffs = self.to_elem(a).coeffs.into_iter().map(|c| (p - c) % p).collect();
        self.from_elem(&FieldElem { coeffs }).expect("reduced negation")
    }

    fn inv_slow(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        // a^(q-2)
        self.pow(a, self.q as u64 - 2)
    }
}

/// Irreducibility of a monic modulus over GF(p): no monic factor of
/// degree at most half its degree, by exhaustive trial division.
fn modulus_irreducible(p: u32, m: &[u32]) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if prime_poly_rem(p, m, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            r[i - dd + j] = (r[i - dd + j] + (p64 - c) * den[j] as u64) % p64;
        }
    }
    r.truncate(dd);
    r.into_iter().map(|c| c as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32) -> Field {
        Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap()
    }

    #[test]
    fn small_examples() {
        let f2 = gf(2, 1);
        assert_eq!(f2.add(1, 1), 0);
        let f4 = gf(2, 2);
        // x = code 2, x + 1 = code 3
        assert_eq!(f4.mul(2, 2), 3);
        let f3 = gf(3, 1);
        assert_eq!(f3.inv(2), Some(2));
        assert_eq!(f3.inv(0), None);
    }

    #[test]
    fn element_level_ops() {
        let f4 = gf(2, 2);
        let x = FieldElem { coeffs: vec![0, 1] };
        let r = f4.apply(ArithOp::Mul, &x, Some(&x)).unwrap();
        assert_eq!(r.coeffs, vec![1, 1]);
        let zero = FieldElem { coeffs: vec![0, 0] };
        assert_eq!(f4.apply(ArithOp::Inv, &zero, None), Err(Error::InversionOfZero));
        let bad = FieldElem { coeffs: vec![0, 2] };
        assert!(matches!(
            f4.apply(ArithOp::Neg, &bad, None),
            Err(Error::SpecMismatch(_))
        ));
        let short = FieldElem { coeffs: vec![1] };
        assert!(f4.apply(ArithOp::Add, &x, Some(&short)).is_err());
    }

    #[test]
    fn enumeration_order() {
        let f2 = gf(2, 1);
        let e: Vec<_> = f2.enumerate().unwrap().into_iter().map(|e| e.coeffs).collect();
        assert_eq!(e, vec![vec![0], vec![1]]);
        let f3 = gf(3, 1);
        assert_eq!(f3.enumerate().unwrap().len(), 3);
        let f4 = gf(2, 2);
        let e4 = f4.enumerate().unwrap();
        assert_eq!(e4.len(), 4);
        assert_eq!(e4[0].coeffs, vec![0, 0]);
        assert_eq!(e4[1].coeffs, vec![1, 0]);
        assert!(matches!(f4.enumerate_capped(3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Field::prime(4).is_err());
        assert!(Field::new(FieldSpec {
            p: 2,
            k: 2,
            modulus: vec![1, 0, 1]
        })
        .is_err());
        assert!(Field::new(FieldSpec {
            p: 2,
            k: 4,
            modulus: vec![]
        })
        .is_err());
        assert!(Field::new(FieldSpec {
            p: 2,
            k: 4,
            modulus: vec![1, 1, 0, 0, 1]
        })
        .is_ok());
        // (x^2+x+1)^2 = x^4+x^2+1 has no root but is reducible
        assert!(Field::new(FieldSpec {
            p: 2,
            k: 4,
            modulus: vec![1, 0, 1, 0, 1]
        })
        .is_err());
    }

    fn all_fields_up_to_64() -> Vec<Field> {
        let mut out = vec![gf(2, 1), gf(3, 1), gf(5, 1), gf(7, 1), gf(2, 2), gf(2, 3), gf(3, 2)];
        out.push(
            Field::new(FieldSpec {
                p: 2,
                k: 4,
                modulus: vec![1, 1, 0, 0, 1],
            })
            .unwrap(),
        );
        out.push(
            Field::new(FieldSpec {
                p: 2,
                k: 5,
                modulus: vec![1, 0, 1, 0, 0, 1],
            })
            .unwrap(),
        );
        out.push(
            Field::new(FieldSpec {
                p: 2,
                k: 6,
                modulus: vec![1, 1, 0, 0, 0, 0, 1],
            })
            .unwrap(),
        );
        out.push(
            Field::new(FieldSpec {
                p: 3,
                k: 3,
                modulus: vec![1, 2, 0, 1],
            })
            .unwrap(),
        );
        out.push(
            Field::new(FieldSpec {
                p: 5,
                k: 2,
                modulus: vec![2, 0, 1],
            })
            .unwrap(),
        );
        out
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields_up_to_64() {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{:?} a={a}", f.spec());
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius
                    let p = f.characteristic() as u64;
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn axpy_matches_scalar_ops() {
        for f in all_fields_up_to_64() {
            let q = f.order();
            let src: Vec<Elem> = (0..q).collect();
            for c in 0..q {
                let mut dst: Vec<Elem> = (0..q).rev().collect();
                let expect: Vec<Elem> = dst.iter().zip(&src).map(|(&d, &s)| f.add(d, f.mul(c, s))).collect();
                f.axpy(&mut dst, c, &src);
                assert_eq!(dst, expect);
            }
        }
    }
}

//! Univariate polynomials over a [`Field`], coefficients low degree first,
//! with just enough machinery for the meataxe: characteristic polynomials,
//! evaluation at a matrix and factorization into distinct irreducibles.

use rand::Rng;

use crate::field::{Elem, Field};
use crate::linalg::{mat_add, mat_mul, Mat};

pub type Poly = Vec<Elem>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            f.axpy(&mut out[i..i + b.len()], x, b);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero lead");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        f.axpy(&mut r[dr - db..=dr], f.neg(c), &b[..=db]);
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &[Elem]) -> Poly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = f.inv(l).expect("nonzero");
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

fn mulmod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Field, a: &[Elem], mut e: u64, m: &[Elem]) -> Poly {
    let mut base = rem(f, a, m);
    let mut acc: Poly = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial `det(xI - A)` via Hessenberg reduction.
pub fn charpoly(f: &Field, a: &Mat) -> Poly {
    let n = a.rows();
    assert!(a.is_square());
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
            continue;
        };
        if i != m {
            h.swap_rows(i, m);
            for r in 0..n {
                let (x, y) = (h.get(r, i), h.get(r, m));
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let t_inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
        for i in m + 1..n {
            let u = f.mul(h.get(i, m - 1), t_inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.sub(h.get(i, c), f.mul(u, h.get(m, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, m), f.mul(u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // p_0 = 1; p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let mut pm = mul(f, &[f.neg(h.get(m, m)), 1], &ps[m]);
        let mut t: Elem = 1;
        for i in (0..m).rev() {
            t = f.mul(t, h.get(i + 1, i));
            let c = f.mul(h.get(i, m), t);
            if c != 0 {
                let scaled: Poly = ps[i].iter().map(|&x| f.mul(x, c)).collect();
                pm = sub(f, &pm, &scaled);
            }
        }
        ps.push(pm);
    }
    ps.pop().expect("nonempty")
}

/// `p(A)` by Horner's rule.
pub fn eval_mat(f: &Field, p: &[Elem], a: &Mat) -> Mat {
    let n = a.rows();
    let mut acc = Mat::zeros(n, n);
    for &c in p.iter().rev() {
        acc = mat_mul(f, &acc, a);
        if c != 0 {
            let mut ci = Mat::zeros(n, n);
            for i in 0..n {
                ci.set(i, i, c);
            }
            acc = mat_add(f, &acc, &ci);
        }
    }
    acc
}

/// Distinct monic irreducible factors, sorted by degree then coefficients.
pub fn irreducible_factors<R: Rng>(f: &Field, p: &[Elem], rng: &mut R) -> Vec<Poly> {
    let mut rest = monic(f, p);
    let mut out = Vec::new();
    let q = f.order() as u64;
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut i = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        i += 1;
        if degree(&rest).expect("positive") < 2 * i {
            out.push(rest.clone());
            break;
        }
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if degree(&g).unwrap_or(0) > 0 {
            loop {
                let c = gcd(f, &rest, &g);
                if degree(&c).unwrap_or(0) == 0 {
                    break;
                }
                rest = divrem(f, &rest, &c).0;
            }
            h = rem(f, &h, &rest);
            equal_degree_split(f, &g, i, rng, &mut out);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Splits a squarefree product of irreducibles of degree `d` (Cantor–Zassenhaus).
fn equal_degree_split<R: Rng>(f: &Field, g: &[Elem], d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let n = degree(g).expect("nonzero");
    if n == d {
        out.push(monic(f, g));
        return;
    }
    let q = f.order() as u64;
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..f.order())).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // trace map a + a^2 + ... + a^(2^(k d - 1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..(f.degree() as usize * d) {
                t = mulmod(f, &t, &t, g);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = powmod(f, &t, q, g);
                norm = mulmod(f, &norm, &t, g);
            }
            sub(f, &powmod(f, &norm, (q - 1) / 2, g), &[1])
        };
        let c = gcd(f, g, &b);
        let dc = degree(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            equal_degree_split(f, &c, d, rng, out);
            equal_degree_split(f, &divrem(f, g, &c).0, d, rng, out);
            return;
        }
    }
}

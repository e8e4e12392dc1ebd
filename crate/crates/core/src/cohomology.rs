//! Group cohomology in degrees 1 and 2.
//!
//! Modules carry a right action; cochains use the left action
//! `x·v = v·ρ(x⁻¹)`, so a 1-cocycle satisfies `d(xy) = d(x) + x·d(y)` and a
//! 2-cocycle satisfies `c(x,y) + c(xy,z) = x·c(y,z) + c(x,yz)`.
//!
//! A 1-cocycle is determined by its values on the generators. Writing
//! `u = (d(s_1), ..., d(s_k))`, every `d(z)` is `u·D_z` for a matrix `D_z`
//! built along the breadth-first tree of the group table; each non-tree edge
//! `(y, s)` contributes the linear condition `D_y + E_s ρ(y⁻¹) = D_{ys}`.
//!
//! Degree 2 is reduced to degree 1 through `0 → V → I → I/V → 0` where
//! `I = Ind_H^G Res_H V` for a p'-subgroup `H`. The middle term has no
//! cohomology in positive degree, so the connecting map gives
//! `H¹(G, I/V) ≅ H²(G, V)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{right_kernel, vec_mat, Echelon, Mat, Subspace};
use crate::module::RepModule;

pub const H1_CAP: usize = 200;
pub const H2_CAP: usize = 80;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleSpace {
    pub degree: u8,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_cohomology: usize,
    /// Cocycles whose classes form a basis of the cohomology group, as value
    /// tables: row `x` holds `d(x)` in degree 1, row `x·|G| + y` holds
    /// `c(x, y)` in degree 2.
    pub representatives: Vec<Mat>,
}

fn left_act(v: &RepModule, x: usize, w: &[Elem]) -> Vec<Elem> {
    vec_mat(v.field(), w, v.elem_mat(v.group().inv(x)))
}

impl CocycleSpace {
    /// Checks the cocycle identity for every representative over all pairs
    /// or triples of group elements.
    pub fn verify(&self, v: &RepModule) -> bool {
        self.representatives.iter().all(|r| match self.degree {
            1 => is_1_cocycle(v, r),
            2 => is_2_cocycle(v, r),
            _ => false,
        })
    }
}

pub fn is_1_cocycle(v: &RepModule, d: &Mat) -> bool {
    let g = v.group();
    let f = v.field();
    (0..g.order()).all(|x| {
        (0..g.order()).all(|y| {
            let mut rhs = left_act(v, x, d.row(y));
            f.axpy(&mut rhs, 1, d.row(x));
            rhs == d.row(g.mul(x, y))
        })
    })
}

pub fn is_2_cocycle(v: &RepModule, c: &Mat) -> bool {
    let g = v.group();
    let f = v.field();
    let n = g.order();
    let at = |x: usize, y: usize| c.row(x * n + y);
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = g.mul(x, y);
            (0..n).all(|z| {
                let mut lhs = at(x, y).to_vec();
                f.axpy(&mut lhs, 1, at(xy, z));
                let mut rhs = left_act(v, x, at(y, z));
                f.axpy(&mut rhs, 1, at(x, g.mul(y, z)));
                lhs == rhs
            })
        })
    })
}

/// Degree-1 data: the tree matrices `D_z`, the cocycles and coboundaries
/// in generator coordinates.
struct H1System {
    d: Vec<Mat>,
    z1: Subspace,
    b1: Subspace,
}

fn h1_system(v: &RepModule) -> H1System {
    let g = v.group();
    let f = v.field();
    let m = v.dim();
    let gens = g.generators();
    let k = gens.len();
    let n = k * m;
    let inv_mats: Vec<&Mat> = (0..g.order()).map(|x| v.elem_mat(g.inv(x))).collect();
    let add_block = |dst: &mut Mat, s: usize, y: usize, sign: Elem| {
        let r = inv_mats[y];
        for i in 0..m {
            let row = &mut dst.row_mut(s * m + i)[..];
            f.axpy(row, sign, r.row(i));
        }
    };

    let mut d: Vec<Mat> = Vec::with_capacity(g.order());
    d.push(Mat::zeros(n, m));
    for z in 1..g.order() {
        let (y, s) = g.parent(z).expect("non-identity");
        let mut dz = d[y].clone();
        add_block(&mut dz, s, y, 1);
        d.push(dz);
    }

    let mut eq = Echelon::new(n);
    'edges: for y in 0..g.order() {
        for (s, &gs) in gens.iter().enumerate() {
            let z = g.mul(y, gs);
            if g.parent(z) == Some((y, s)) {
                continue;
            }
            let mut c = d[y].clone();
            add_block(&mut c, s, y, 1);
            for i in 0..n {
                f.axpy(c.row_mut(i), f.neg(1), d[z].row(i));
            }
            for j in 0..m {
                let col: Vec<Elem> = (0..n).map(|i| c.get(i, j)).collect();
                eq.insert(f, col);
            }
            if eq.rank() == n {
                break 'edges;
            }
        }
    }
    let mut cons = Mat::zeros(0, n);
    for r in eq.rows() {
        cons.push_row(r);
    }
    let z1 = right_kernel(f, &cons);

    let mut b = Mat::zeros(0, n);
    for i in 0..m {
        let mut row = vec![0; n];
        for (s, &gs) in gens.iter().enumerate() {
            let block = &mut row[s * m..(s + 1) * m];
            block.copy_from_slice(inv_mats[gs].row(i));
            block[i] = f.sub(block[i], 1);
        }
        b.push_row(&row);
    }
    let b1 = Subspace::from_rows(f, &b);
    H1System { d, z1, b1 }
}

/// Vectors of `z` completing a basis of `b` to one of `z`.
fn complement_reps(f: &Field, b: &Subspace, z: &Subspace) -> Vec<Vec<Elem>> {
    let mut e = Echelon::new(z.ambient());
    for i in 0..b.dim() {
        e.insert(f, b.basis().row(i).to_vec());
    }
    let mut out = Vec::new();
    for i in 0..z.dim() {
        let r = z.basis().row(i).to_vec();
        if e.insert(f, r.clone()).is_some() {
            out.push(r);
        }
    }
    out
}

fn values(f: &Field, d: &[Mat], u: &[Elem], m: usize) -> Mat {
    let mut out = Mat::zeros(0, m);
    for dz in d {
        out.push_row(&vec_mat(f, u, dz));
    }
    out
}

fn check_cap(v: &RepModule, cap: usize) -> Result<()> {
    if v.group().order() > cap {
        return Err(Error::cap("group order for cohomology", cap));
    }
    Ok(())
}

/// `H¹(G, V)`.
pub fn h1(v: &RepModule) -> Result<CocycleSpace> {
    check_cap(v, H1_CAP)?;
    let f = v.field();
    let sys = h1_system(v);
    let reps = complement_reps(f, &sys.b1, &sys.z1);
    Ok(CocycleSpace {
        degree: 1,
        dim_cocycles: sys.z1.dim(),
        dim_coboundaries: sys.b1.dim(),
        dim_cohomology: reps.len(),
        representatives: reps.iter().map(|u| values(f, &sys.d, u, v.dim())).collect(),
    })
}

/// `dim H¹(G, V)` without building representatives.
pub fn h1_dim(v: &RepModule) -> Result<usize> {
    check_cap(v, H1_CAP)?;
    let sys = h1_system(v);
    Ok(sys.z1.dim() - sys.b1.dim())
}

/// The induced module `Ind_H^G Res_H V` for a p'-subgroup `H`, with the
/// embedding `v ↦ Σ_i v·t_i⁻¹ ⊗ t_i` of `V` as a subspace.
fn shifted(v: &RepModule) -> Result<(RepModule, Subspace)> {
    let g = v.group();
    let f = v.field();
    let m = v.dim();
    let h = g.p_prime_subgroup(f.characteristic());
    let reps = g.right_transversal(&h);
    let r = reps.len();
    let gens: Vec<Mat> = g
        .generators()
        .iter()
        .map(|&s| {
            let mut big = Mat::zeros(r * m, r * m);
            for i in 0..r {
                let (hx, j) = g.coset_action(&h, &reps, i, s);
                let blk = v.elem_mat(hx);
                for a in 0..m {
                    big.row_mut(i * m + a)[j * m..(j + 1) * m].copy_from_slice(blk.row(a));
                }
            }
            big
        })
        .collect();
    let ind = RepModule::new_unchecked(g.clone(), v.field_arc().clone(), r * m, gens);
    let mut emb = Mat::zeros(m, r * m);
    for (i, &t) in reps.iter().enumerate() {
        let ti = v.elem_mat(g.inv(t));
        for a in 0..m {
            emb.row_mut(a)[i * m..(i + 1) * m].copy_from_slice(ti.row(a));
        }
    }
    let s = Subspace::from_rows(f, &emb);
    debug_assert!(ind.is_invariant(&s));
    Ok((ind, s))
}

/// `H²(G, V)`, normalized cochains.
pub fn h2(v: &RepModule) -> Result<CocycleSpace> {
    check_cap(v, H2_CAP)?;
    let g = v.group();
    let f = v.field();
    let m = v.dim();
    let n = g.order();
    let (ind, emb) = shifted(v)?;
    let q = ind.quotient(&emb)?;
    let free = emb.non_pivots();
    let sys = h1_system(&q);
    let reps = complement_reps(f, &sys.b1, &sys.z1);

    let lift = |w: &[Elem]| {
        let mut out = vec![0; ind.dim()];
        for (j, &c) in free.iter().enumerate() {
            out[c] = w[j];
        }
        out
    };
    let mut representatives = Vec::with_capacity(reps.len());
    for u in &reps {
        let d = values(f, &sys.d, u, q.dim());
        let lifted: Vec<Vec<Elem>> = (0..n).map(|x| lift(d.row(x))).collect();
        let mut c = Mat::zeros(n * n, m);
        for x in 0..n {
            for y in 0..n {
                let mut w = left_act(&ind, x, &lifted[y]);
                f.axpy(&mut w, f.neg(1), &lifted[g.mul(x, y)]);
                f.axpy(&mut w, 1, &lifted[x]);
                debug_assert!(emb.contains_vec(f, &w));
                c.row_mut(x * n + y).copy_from_slice(&w[..m]);
            }
        }
        representatives.push(c);
    }
    let dim_z1_v = h1_system(v).z1.dim();
    let dim_b2 = (n - 1) * m - dim_z1_v;
    Ok(CocycleSpace {
        degree: 2,
        dim_cocycles: dim_b2 + reps.len(),
        dim_coboundaries: dim_b2,
        dim_cohomology: reps.len(),
        representatives,
    })
}

pub fn cohomology(v: &RepModule, degree: u8) -> Result<CocycleSpace> {
    match degree {
        1 => h1(v),
        2 => h2(v),
        d => Err(Error::PreconditionViolated(format!(
            "cohomology degree {d} is not supported"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::{Field, FieldSpec};
    use std::sync::Arc;

    fn gf(p: u32, k: u32) -> Arc<Field> {
        Arc::new(Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap())
    }

    #[test]
    fn small_examples() {
        let t = |g, p| RepModule::trivial(Arc::new(g), gf(p, 1), 1);
        assert_eq!(h1(&t(corpus::c3(), 2)).unwrap().dim_cohomology, 0);
        let s3 = h1(&t(corpus::s3(), 2)).unwrap();
        assert_eq!(s3.dim_cohomology, 1);
        assert!(s3.verify(&t(corpus::s3(), 2)));
        let c2 = t(corpus::c2(), 2);
        let h = h2(&c2).unwrap();
        assert_eq!(h.dim_cohomology, 1);
        assert!(h.verify(&c2));
    }

    #[test]
    fn dims_and_representatives() {
        for (g, p) in [
            (corpus::s3(), 3),
            (corpus::c6(), 2),
            (corpus::a4(), 2),
            (corpus::d4(), 2),
        ] {
            let v = RepModule::permutation(Arc::new(g), gf(p, 1)).unwrap();
            for deg in [1, 2] {
                let c = cohomology(&v, deg).unwrap();
                assert_eq!(c.dim_cocycles, c.dim_coboundaries + c.dim_cohomology);
                assert!(c.verify(&v));
            }
        }
    }

    #[test]
    fn elementary_abelian_cohomology() {
        // H^1 of (C2)^3 with GF(2) is Hom(X, GF(2)), dimension 3; H^2 has dimension 6.
        let spec = crate::groups::PermGroupSpec {
            degree: 6,
            generators: vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]],
        };
        let x = Arc::new(crate::groups::GroupTable::from_perms(&spec, 100).unwrap());
        let v = RepModule::trivial(x, gf(2, 1), 1);
        assert_eq!(h1(&v).unwrap().dim_cohomology, 3);
        assert_eq!(h2(&v).unwrap().dim_cohomology, 6);
    }

    #[test]
    fn caps_and_degrees() {
        let v = RepModule::trivial(Arc::new(corpus::c2()), gf(2, 1), 1);
        assert!(cohomology(&v, 3).is_err());
        let s4 = RepModule::trivial(Arc::new(corpus::s4()), gf(2, 1), 1);
        assert!(h2(&s4).is_ok());
        let g = RepModule::trivial(Arc::new(corpus::g72()), gf(2, 1), 1);
        assert!(h2(&g).is_ok());
    }
}

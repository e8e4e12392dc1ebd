//! Finite-dimensional FG-modules given by one matrix per group generator.
//!
//! Modules are right modules on row vectors: `v^g = v·ρ(g)` and
//! `ρ(xy) = ρ(x)ρ(y)`, matching the left-to-right composition of
//! permutations in [`crate::groups`].

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::groups::{GroupTable, Subgroup};
use crate::linalg::{inverse, kron, left_kernel, mat_mul, mat_sub, rank, solve_right, Mat, Subspace};

#[derive(Clone, Debug)]
pub struct RepModule {
    field: Arc<Field>,
    group: Arc<GroupTable>,
    dim: usize,
    gens: Vec<Mat>,
    elems: Arc<OnceLock<Vec<Mat>>>,
}

impl RepModule {
    /// Validates and builds a module from one matrix per generator. The
    /// representation property is checked on every element–generator pair,
    /// which by induction on word length covers every pair of elements.
    pub fn from_gen_mats(group: Arc<GroupTable>, field: Arc<Field>, gens: Vec<Mat>) -> Result<Self> {
        let dim = gens.first().map_or(0, Mat::rows);
        RepModule::from_gen_mats_dim(group, field, dim, gens)
    }

    /// As [`RepModule::from_gen_mats`], with the dimension given explicitly
    /// so that groups without generators are covered.
    pub fn from_gen_mats_dim(group: Arc<GroupTable>, field: Arc<Field>, dim: usize, gens: Vec<Mat>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::NotARepresentation(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for (i, m) in gens.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "generator matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.data().iter().any(|&x| x >= field.order()) {
                return Err(Error::SpecMismatch(format!(
                    "generator matrix {i} has entries outside the field"
                )));
            }
            if rank(&field, m) < dim {
                return Err(Error::SingularGenerator(i));
            }
        }
        let module = RepModule::new_unchecked(group, field, dim, gens);
        module.check_generator_edges()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(group: Arc<GroupTable>, field: Arc<Field>, dim: usize, gens: Vec<Mat>) -> Self {
        RepModule {
            field,
            group,
            dim,
            gens,
            elems: Arc::new(OnceLock::new()),
        }
    }

    /// Module of dimension `dim` for a group with no generators, or with
    /// identity matrices.
    pub fn trivial(group: Arc<GroupTable>, field: Arc<Field>, dim: usize) -> Self {
        let gens = vec![Mat::identity(dim); group.generators().len()];
        RepModule::new_unchecked(group, field, dim, gens)
    }

    /// Permutation module of a permutation group: `e_i^π = e_{i^π}`.
    pub fn permutation(group: Arc<GroupTable>, field: Arc<Field>) -> Result<Self> {
        let n = group
            .perm_degree()
            .ok_or_else(|| Error::PreconditionViolated("group carries no permutation images".into()))?;
        let gens = group
            .generators()
            .iter()
            .map(|&g| {
                let p = group.perm(g).expect("permutation group");
                let mut m = Mat::zeros(n, n);
                for (i, &j) in p.iter().enumerate() {
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        Ok(RepModule::new_unchecked(group, field, n, gens))
    }

    /// Right regular module: basis `e_x`, `e_x^g = e_{xg}`.
    pub fn regular(group: Arc<GroupTable>, field: Arc<Field>) -> Self {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|&g| {
                let mut m = Mat::zeros(n, n);
                for x in 0..n {
                    m.set(x, group.mul(x, g), 1);
                }
                m
            })
            .collect();
        RepModule::new_unchecked(group, field, n, gens)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen_mats(&self) -> &[Mat] {
        &self.gens
    }

    /// Matrices of every element, built along the breadth-first words.
    pub fn elem_mats(&self) -> &[Mat] {
        self.elems.get_or_init(|| {
            let g = &self.group;
            let mut out = Vec::with_capacity(g.order());
            out.push(Mat::identity(self.dim));
            for x in 1..g.order() {
                let (p, s) = g.parent(x).expect("non-identity");
                out.push(mat_mul(&self.field, &out[p], &self.gens[s]));
            }
            out
        })
    }

    pub fn elem_mat(&self, x: usize) -> &Mat {
        &self.elem_mats()[x]
    }

    fn check_generator_edges(&self) -> Result<()> {
        let g = &self.group;
        let mats = self.elem_mats();
        for x in 0..g.order() {
            for (s, &gen) in g.generators().iter().enumerate() {
                let y = g.mul(x, gen);
                if mat_mul(&self.field, &mats[x], &self.gens[s]) != mats[y] {
                    return Err(Error::NotARepresentation(format!(
                        "rho({x}) rho(gen {s}) differs from rho({y})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `ρ(x)ρ(y) = ρ(xy)` over all pairs.
    pub fn verify_all_pairs(&self) -> bool {
        let g = &self.group;
        let mats = self.elem_mats();
        mats[0] == Mat::identity(self.dim)
            && (0..g.order())
                .all(|x| (0..g.order()).all(|y| mat_mul(&self.field, &mats[x], &mats[y]) == mats[g.mul(x, y)]))
    }

    pub fn same_context(&self, other: &RepModule) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group) && self.field == other.field
    }

    fn require_same(&self, other: &RepModule) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// Kernel of the action, `C_G(V)`.
    pub fn action_kernel(&self) -> Subgroup {
        let id = Mat::identity(self.dim);
        let elems: Vec<usize> = (0..self.group.order()).filter(|&x| self.elem_mat(x) == &id).collect();
        let k = self.group.subgroup_generated(&elems);
        debug_assert!(self.group.is_normal(&k));
        k
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        s.ambient() == self.dim && s.is_invariant(&self.field, &self.gens)
    }

    fn require_invariant(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim {
            return Err(Error::AmbientMismatch(s.ambient(), self.dim));
        }
        if !self.is_invariant(s) {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }

    fn map_gens(&self, f: impl Fn(usize, &Mat) -> Mat) -> Vec<Mat> {
        self.gens.iter().enumerate().map(|(i, m)| f(i, m)).collect()
    }

    /// `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> RepModule {
        let gens = self.map_gens(|_, m| inverse(&self.field, m).expect("invertible").transpose());
        RepModule::new_unchecked(self.group.clone(), self.field.clone(), self.dim, gens)
    }

    pub fn tensor(&self, other: &RepModule) -> Result<RepModule> {
        self.require_same(other)?;
        let gens = self.map_gens(|i, m| kron(&self.field, m, &other.gens[i]));
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            self.field.clone(),
            self.dim * other.dim,
            gens,
        ))
    }

    /// `Hom(V, W) = V* ⊗ W`.
    pub fn hom(&self, other: &RepModule) -> Result<RepModule> {
        self.dual().tensor(other)
    }

    pub fn direct_sum(&self, other: &RepModule) -> Result<RepModule> {
        self.require_same(other)?;
        let (a, b) = (self.dim, other.dim);
        let gens = self.map_gens(|i, m| {
            let mut out = Mat::zeros(a + b, a + b);
            for r in 0..a {
                out.row_mut(r)[..a].copy_from_slice(m.row(r));
            }
            for r in 0..b {
                out.row_mut(a + r)[a..].copy_from_slice(other.gens[i].row(r));
            }
            out
        });
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            self.field.clone(),
            a + b,
            gens,
        ))
    }

    /// Direct sum of `m` copies.
    pub fn power(&self, m: usize) -> RepModule {
        let mut out = RepModule::trivial(self.group.clone(), self.field.clone(), 0);
        for _ in 0..m {
            out = out.direct_sum(self).expect("same context");
        }
        out
    }

    /// Action on an invariant subspace, in the coordinates of its RREF basis.
    pub fn sub(&self, s: &Subspace) -> Result<RepModule> {
        self.require_invariant(s)?;
        let f = &self.field;
        let gens = self.map_gens(|_, m| {
            let img = mat_mul(f, s.basis(), m);
            let rows: Vec<Vec<Elem>> = (0..img.rows())
                .map(|i| s.coords(f, img.row(i)).expect("invariant"))
                .collect();
            Mat::from_rows(s.dim(), &rows).expect("square")
        });
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            self.field.clone(),
            s.dim(),
            gens,
        ))
    }

    /// Action on `V/S` in the coordinates of the non-pivot columns of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<RepModule> {
        self.require_invariant(s)?;
        let f = &self.field;
        let free = s.non_pivots();
        let gens = self.map_gens(|_, m| {
            let rows: Vec<Vec<Elem>> = free
                .iter()
                .map(|&c| {
                    let mut v = m.row(c).to_vec();
                    s.reduce(f, &mut v);
                    free.iter().map(|&j| v[j]).collect()
                })
                .collect();
            Mat::from_rows(free.len(), &rows).expect("square")
        });
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            self.field.clone(),
            free.len(),
            gens,
        ))
    }

    /// Restriction to a subgroup, re-indexed to the subgroup's own table.
    /// Returns the module and the embedding of the subgroup's elements.
    pub fn restrict(&self, h: &Subgroup) -> Result<(RepModule, Vec<usize>)> {
        if !self.group.is_subgroup(h) {
            return Err(Error::PreconditionViolated("not a subgroup".into()));
        }
        let (t, embed) = self.group.subgroup_table(h);
        let gens = t
            .generators()
            .iter()
            .map(|&x| self.elem_mat(embed[x]).clone())
            .collect();
        let m = RepModule::from_gen_mats_dim(Arc::new(t), self.field.clone(), self.dim, gens)?;
        Ok((m, embed))
    }

    /// Pulls the module back along a homomorphism `X → G` given as an index map.
    pub fn inflate(&self, x: Arc<GroupTable>, proj: &[usize]) -> Result<RepModule> {
        let gens = x.generators().iter().map(|&s| self.elem_mat(proj[s]).clone()).collect();
        RepModule::from_gen_mats_dim(x, self.field.clone(), self.dim, gens)
    }

    /// Extension of scalars to a field of the same characteristic that
    /// contains the current one as its prime field.
    pub fn base_change(&self, to: Arc<Field>) -> Result<RepModule> {
        if !self.field.is_prime_field() || self.field.characteristic() != to.characteristic() {
            return Err(Error::Mismatch);
        }
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            to,
            self.dim,
            self.gens.clone(),
        ))
    }

    /// Restriction of scalars to the prime field, with `F` given the basis
    /// `1, x, ..., x^{k-1}`.
    pub fn restrict_scalars(&self) -> Result<RepModule> {
        if self.field.is_prime_field() {
            return Ok(self.clone());
        }
        let f = &self.field;
        let k = f.degree() as usize;
        let p = f.characteristic();
        let fp = Arc::new(Field::prime(p)?);
        let basis: Vec<Elem> = (0..k).map(|i| p.pow(i as u32)).collect();
        let block = |a: Elem| -> Mat {
            let mut m = Mat::zeros(k, k);
            for (i, &b) in basis.iter().enumerate() {
                let prod = f.to_elem(f.mul(b, a)).coeffs;
                m.row_mut(i).copy_from_slice(&prod);
            }
            m
        };
        let n = self.dim;
        let gens = self.map_gens(|_, m| {
            let mut out = Mat::zeros(n * k, n * k);
            for i in 0..n {
                for j in 0..n {
                    let b = block(m.get(i, j));
                    for r in 0..k {
                        out.row_mut(i * k + r)[j * k..(j + 1) * k].copy_from_slice(b.row(r));
                    }
                }
            }
            out
        });
        Ok(RepModule::new_unchecked(self.group.clone(), fp, n * k, gens))
    }

    /// Basis of `Hom_G(self, other)`: matrices `X` with `ρ_V(g) X = X ρ_W(g)`.
    pub fn hom_space(&self, other: &RepModule) -> Result<Vec<Mat>> {
        self.require_same(other)?;
        let f = &self.field;
        let (a, b) = (self.dim, other.dim);
        let n = a * b;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut sys = Mat::zeros(n * self.gens.len(), n);
        for (gi, (s, t)) in self.gens.iter().zip(&other.gens).enumerate() {
            for i in 0..a {
                for j in 0..b {
                    let row = sys.row_mut(gi * n + i * b + j);
                    // (S X)_{ij} = sum_l S_il X_lj
                    for l in 0..a {
                        let c = s.get(i, l);
                        row[l * b + j] = f.add(row[l * b + j], c);
                    }
                    // -(X T)_{ij} = -sum_l X_il T_lj
                    for l in 0..b {
                        let c = t.get(l, j);
                        row[i * b + l] = f.sub(row[i * b + l], c);
                    }
                }
            }
        }
        let ker = crate::linalg::right_kernel(f, &sys);
        Ok((0..ker.dim())
            .map(|r| Mat::from_vec(a, b, ker.basis().row(r).to_vec()).expect("shape"))
            .collect())
    }

    /// Whether `X` is a module homomorphism `self → other`.
    pub fn is_hom(&self, other: &RepModule, x: &Mat) -> bool {
        self.gens
            .iter()
            .zip(&other.gens)
            .all(|(s, t)| mat_mul(&self.field, s, x) == mat_mul(&self.field, x, t))
    }

    /// Invariant complement of an invariant subspace `a`, via an equivariant
    /// projection `π: V → a` that is the identity on `a`; free variables of
    /// the projection system are set to zero. `None` when `V` does not split
    /// over `a`.
    pub fn split_complement(&self, a: &Subspace) -> Result<Option<Subspace>> {
        self.require_invariant(a)?;
        let f = &self.field;
        let (n, r) = (self.dim, a.dim());
        if r == 0 {
            return Ok(Some(Subspace::full(n)));
        }
        if r == n {
            return Ok(Some(Subspace::zero(n)));
        }
        let sub = self.sub(a)?;
        // unknown X (n x r), row-major: x_{ij} at i*r + j
        let unknowns = n * r;
        let eqs = self.gens.len() * n * r + r * r;
        let mut sys = Mat::zeros(eqs, unknowns);
        let mut rhs = Mat::zeros(eqs, 1);
        let mut row = 0;
        for (g, ga) in self.gens.iter().zip(sub.gen_mats()) {
            // ρ(g) X - X ρ_A(g) = 0
            for i in 0..n {
                for j in 0..r {
                    let eq = sys.row_mut(row);
                    for l in 0..n {
                        let c = g.get(i, l);
                        eq[l * r + j] = f.add(eq[l * r + j], c);
                    }
                    for l in 0..r {
                        let c = ga.get(l, j);
                        eq[i * r + l] = f.sub(eq[i * r + l], c);
                    }
                    row += 1;
                }
            }
        }
        // B X = I_r
        let b = a.basis();
        for i in 0..r {
            for j in 0..r {
                let eq = sys.row_mut(row);
                for l in 0..n {
                    eq[l * r + j] = b.get(i, l);
                }
                rhs.set(row, 0, (i == j) as Elem);
                row += 1;
            }
        }
        let Some(sol) = solve_right(f, &sys, &rhs)? else {
            return Ok(None);
        };
        let x = Mat::from_vec(n, r, sol.transpose().data().to_vec()).expect("shape");
        let comp = left_kernel(f, &x);
        debug_assert!(self.is_invariant(&comp));
        Ok(Some(comp))
    }

    /// Whether two modules are isomorphic, given bases in which `iso` is an
    /// invertible homomorphism.
    pub fn is_isomorphism(&self, other: &RepModule, iso: &Mat) -> bool {
        iso.is_square() && inverse(&self.field, iso).is_some() && self.is_hom(other, iso)
    }

    /// Representation matrices after the change of basis `P`: `P ρ(g) P⁻¹`.
    pub fn conjugate_by(&self, p: &Mat) -> Result<RepModule> {
        let f = &self.field;
        let pinv = inverse(f, p).ok_or(Error::SingularGenerator(0))?;
        let gens = self.map_gens(|_, m| mat_mul(f, &mat_mul(f, p, m), &pinv));
        Ok(RepModule::new_unchecked(
            self.group.clone(),
            self.field.clone(),
            self.dim,
            gens,
        ))
    }

    /// `ρ(g) - I` for every generator; the fixed space is their common kernel.
    pub fn fixed_space(&self) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        let mut stacked = Mat::zeros(n, 0);
        for g in &self.gens {
            let d = mat_sub(f, g, &Mat::identity(n));
            let mut wide = Mat::zeros(n, stacked.cols() + n);
            for i in 0..n {
                wide.row_mut(i)[..stacked.cols()].copy_from_slice(stacked.row(i));
                wide.row_mut(i)[stacked.cols()..].copy_from_slice(d.row(i));
            }
            stacked = wide;
        }
        left_kernel(f, &stacked)
    }
}

/// The chief factor `A/B` of `G` as a module over GF(p) under conjugation
/// `a ↦ g⁻¹ a g`, in a basis of representatives chosen greedily.
pub fn chief_factor_module(g: &Arc<GroupTable>, a: &Subgroup, b: &Subgroup, p: u32) -> Result<RepModule> {
    let field = Arc::new(Field::prime(p)?);
    // coset id of each element of A modulo B
    let mut reps: Vec<usize> = Vec::new();
    let mut span = b.clone();
    while span.order() < a.order() {
        let x = *a
            .elements()
            .iter()
            .find(|&&x| !span.contains(x))
            .expect("A larger than span");
        reps.push(x);
        let mut gens = b.elements().to_vec();
        gens.extend_from_slice(&reps);
        span = g.subgroup_generated(&gens);
    }
    let r = reps.len();
    if (p as usize).pow(r as u32) * b.order() != a.order() {
        return Err(Error::PreconditionViolated("factor is not elementary abelian".into()));
    }
    // enumerate all products rep_0^{c_0} ... rep_{r-1}^{c_{r-1}} B
    let mut coords: Vec<Option<Vec<Elem>>> = vec![None; g.order()];
    let total = (p as usize).pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let mut x = 0;
        let mut v = vec![0; r];
        for (i, &rep) in reps.iter().enumerate() {
            let e = c % p as usize;
            c /= p as usize;
            v[i] = e as Elem;
            for _ in 0..e {
                x = g.mul(x, rep);
            }
        }
        for &y in b.elements() {
            coords[g.mul(x, y)] = Some(v.clone());
        }
    }
    let gens = g
        .generators()
        .iter()
        .map(|&s| {
            let rows: Vec<Vec<Elem>> = reps
                .iter()
                .map(|&x| coords[g.conj(x, s)].clone().expect("normal subgroup"))
                .collect();
            Mat::from_rows(r, &rows).expect("square")
        })
        .collect();
    RepModule::from_gen_mats_dim(g.clone(), field, r, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::FieldSpec;

    fn gf(p: u32, k: u32) -> Arc<Field> {
        Arc::new(Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap())
    }

    #[test]
    fn build_examples() {
        let u = Arc::new(corpus::c3_on_six());
        let v = RepModule::permutation(u.clone(), gf(2, 1)).unwrap();
        assert_eq!(v.dim(), 6);
        assert!(v.verify_all_pairs());
        let t = RepModule::trivial(u.clone(), gf(3, 1), 1);
        assert!(t.gen_mats().iter().all(|m| *m == Mat::identity(1)));
        // C2 generator sent to a matrix of order 3
        let c2 = Arc::new(corpus::c2());
        let bad = Mat::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(
            RepModule::from_gen_mats(c2.clone(), gf(2, 1), vec![bad]),
            Err(Error::NotARepresentation(_))
        ));
        assert!(matches!(
            RepModule::from_gen_mats(c2, gf(2, 1), vec![Mat::zeros(1, 1)]),
            Err(Error::SingularGenerator(0))
        ));
    }

    #[test]
    fn action_kernels() {
        let s3 = Arc::new(corpus::s3());
        let t = RepModule::trivial(s3.clone(), gf(2, 1), 1);
        assert_eq!(t.action_kernel().order(), 6);
        let p = RepModule::permutation(s3, gf(2, 1)).unwrap();
        assert!(p.action_kernel().is_trivial());
    }

    #[test]
    fn functors() {
        let s3 = Arc::new(corpus::s3());
        let f = gf(3, 1);
        let p = RepModule::permutation(s3.clone(), f.clone()).unwrap();
        let d = p.dual();
        assert_eq!(d.gen_mats(), p.gen_mats());
        let t = RepModule::trivial(s3.clone(), f.clone(), 1);
        let tp = t.tensor(&p).unwrap();
        assert_eq!(tp.gen_mats(), p.gen_mats());
        assert_eq!(d.dual().gen_mats(), p.gen_mats());
        let h = p.hom(&p).unwrap();
        assert_eq!(h.dim(), 9);
        assert!(h.verify_all_pairs());
        // the identity map is a fixed vector of Hom(V, V)
        let id: Vec<Elem> = Mat::identity(3).data().to_vec();
        assert!(h.fixed_space().contains_vec(h.field(), &id));
    }

    #[test]
    fn sub_and_quotient() {
        let f = gf(2, 1);
        let s3 = Arc::new(corpus::s3());
        let p = RepModule::permutation(s3, f.clone()).unwrap();
        let ones = Subspace::from_vecs(&f, 3, &[vec![1, 1, 1]]).unwrap();
        let s = p.sub(&ones).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.verify_all_pairs());
        let q = p.quotient(&ones).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.verify_all_pairs());
        let line = Subspace::from_vecs(&f, 3, &[vec![1, 0, 0]]).unwrap();
        assert!(matches!(p.sub(&line), Err(Error::NotInvariant)));
    }

    #[test]
    fn split_examples() {
        let f = gf(2, 1);
        let u = Arc::new(corpus::c3_on_six());
        let v = RepModule::permutation(u, f.clone()).unwrap();
        assert_eq!(v.split_complement(&Subspace::full(6)).unwrap(), Some(Subspace::zero(6)));
        let minus = Subspace::from_vecs(&f, 6, &[vec![1, 1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0, 0]]).unwrap();
        let plus = Subspace::from_vecs(
            &f,
            6,
            &[
                vec![1, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(v.split_complement(&minus).unwrap(), Some(plus));
        // non-split self-extension of the trivial GF(2)C2-module
        let c2 = Arc::new(corpus::c2());
        let j = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let e = RepModule::from_gen_mats(c2, f.clone(), vec![j]).unwrap();
        let fixed = Subspace::from_vecs(&f, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(e.split_complement(&fixed).unwrap(), None);
        let moved = Subspace::from_vecs(&f, 2, &[vec![1, 0]]).unwrap();
        assert!(matches!(e.split_complement(&moved), Err(Error::NotInvariant)));
    }

    #[test]
    fn restriction_and_scalars() {
        let g = Arc::new(corpus::g72());
        let v = RepModule::permutation(g.clone(), gf(2, 1)).unwrap();
        let n = corpus::block_stabilizer_in(&g);
        let (r, embed) = v.restrict(&n).unwrap();
        assert_eq!(r.group().order(), 36);
        assert_eq!(embed.len(), 36);
        let f4 = gf(2, 2);
        let c3 = Arc::new(corpus::c3());
        let omega = RepModule::from_gen_mats(c3, f4, vec![Mat::from_rows(1, &[vec![2]]).unwrap()]).unwrap();
        let rs = omega.restrict_scalars().unwrap();
        assert_eq!(rs.dim(), 2);
        assert!(rs.verify_all_pairs());
        assert!(rs.action_kernel().is_trivial());
    }

    #[test]
    fn chief_factor_modules() {
        let a4 = Arc::new(corpus::a4());
        let cs = a4.chief_series().unwrap();
        let m = chief_factor_module(&a4, &cs.terms[1], &cs.terms[0], 2).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.verify_all_pairs());
        assert_eq!(m.action_kernel().order(), 4);
    }
}

//! Composition series by the meataxe.
//!
//! Small modules (`|F|^dim` up to [`MeataxeConfig::exhaustive_cap`]) are
//! handled exhaustively: the spin of every projective point is computed, and
//! the module is irreducible exactly when every spin is the whole space.
//! Larger modules use the Holt–Rees variant: a random element θ of the
//! group algebra image, an irreducible factor `f` of its characteristic
//! polynomial, spins of null vectors of `f(θ)` and of `f(θ)ᵀ`, and Norton's
//! criterion when the nullity equals `deg f`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::groups::GroupTable;
use crate::linalg::{
    embed_sub, left_kernel, lift_quotient, mat_add, mat_mul, mat_scale, right_kernel, spin, Mat, Subspace,
};
use crate::module::RepModule;
use crate::par::Exec;
use crate::poly;

/// Default cap on group order for [`all_irreducibles`].
pub const REGULAR_CAP: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct MeataxeConfig {
    pub exhaustive_cap: u64,
    pub retries: usize,
    pub exec: Exec,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig {
            exhaustive_cap: 1 << 16,
            retries: 64,
            exec: Exec::default(),
        }
    }
}

/// `q^n` if it does not exceed `cap`.
pub(crate) fn space_size(q: u32, n: usize, cap: u64) -> Option<u64> {
    let mut s: u64 = 1;
    for _ in 0..n {
        s = s.checked_mul(q as u64)?;
        if s > cap {
            return None;
        }
    }
    Some(s)
}

/// Number of projective points of `F^n`.
pub(crate) fn projective_count(q: u32, n: usize) -> u64 {
    let q = q as u64;
    (0..n).fold(0u64, |acc, _| acc * q + 1)
}

/// The `i`-th projective point: first nonzero coordinate is one. Points
/// with a later leading position come first.
pub(crate) fn projective_point(q: u32, n: usize, mut i: u64) -> Vec<Elem> {
    let q64 = q as u64;
    let mut v = vec![0; n];
    for lead in (0..n).rev() {
        let tail = n - 1 - lead;
        let block = q64.pow(tail as u32);
        if i < block {
            v[lead] = 1;
            let mut c = i;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (c % q64) as Elem;
                c /= q64;
            }
            return v;
        }
        i -= block;
    }
    unreachable!("index within projective count")
}

fn exhaustive_submodule(m: &RepModule, exec: Exec) -> Option<Subspace> {
    let f = m.field();
    let n = m.dim();
    let count = projective_count(f.order(), n);
    exec.find_first(count as usize, |i| {
        let v = projective_point(f.order(), n, i as u64);
        let s = spin(f, &[v], m.gen_mats()).expect("shapes");
        (!s.is_full()).then_some(s)
    })
}

fn random_vector<R: Rng>(f: &Field, basis: &Subspace, rng: &mut R) -> Vec<Elem> {
    loop {
        let mut v = vec![0; basis.ambient()];
        for i in 0..basis.dim() {
            let c = rng.gen_range(0..f.order());
            f.axpy(&mut v, c, basis.basis().row(i));
        }
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn holt_rees<R: Rng>(m: &RepModule, rng: &mut R, cfg: &MeataxeConfig) -> Result<Option<Subspace>> {
    let f = m.field();
    let n = m.dim();
    let order = m.group().order();
    let mats = m.elem_mats();
    let transposed: Vec<Mat> = m.gen_mats().iter().map(Mat::transpose).collect();
    for _ in 0..cfg.retries {
        let mut theta = Mat::zeros(n, n);
        for _ in 0..3 {
            let x = rng.gen_range(0..order);
            let c = rng.gen_range(1..f.order().max(2));
            theta = mat_add(f, &theta, &mat_scale(f, &mats[x], c));
        }
        if rng.gen_bool(0.5) {
            let x = rng.gen_range(0..order);
            theta = mat_add(f, &theta, &mat_mul(f, &theta, &mats[x]));
        }
        let cp = poly::charpoly(f, &theta);
        let factors = poly::irreducible_factors(f, &cp, rng);
        for fac in factors.iter().take(3) {
            let deg = fac.len() - 1;
            let ft = poly::eval_mat(f, fac, &theta);
            let kernel = left_kernel(f, &ft);
            let v = random_vector(f, &kernel, rng);
            let s = spin(f, &[v], m.gen_mats())?;
            if !s.is_full() {
                return Ok(Some(s));
            }
            let kt = left_kernel(f, &ft.transpose());
            let w = random_vector(f, &kt, rng);
            let st = spin(f, &[w], &transposed)?;
            if !st.is_full() {
                let ann = right_kernel(f, st.basis());
                debug_assert!(m.is_invariant(&ann));
                return Ok(Some(ann));
            }
            if kernel.dim() == deg {
                return Ok(None);
            }
        }
    }
    Err(Error::MeataxeFailed(cfg.retries))
}

/// A proper nonzero submodule, or `None` if the module is irreducible.
pub fn find_submodule<R: Rng>(m: &RepModule, rng: &mut R, cfg: &MeataxeConfig) -> Result<Option<Subspace>> {
    if m.dim() <= 1 {
        return Ok(None);
    }
    if space_size(m.field().order(), m.dim(), cfg.exhaustive_cap).is_some() {
        Ok(exhaustive_submodule(m, cfg.exec))
    } else {
        holt_rees(m, rng, cfg)
    }
}

pub fn is_irreducible(m: &RepModule) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(m.dim() > 0 && find_submodule(m, &mut rng, &MeataxeConfig::default())?.is_none())
}

/// Hom-space test between modules assumed irreducible (Schur: a nonzero
/// homomorphism between irreducibles is an isomorphism).
pub fn isomorphic(s: &RepModule, t: &RepModule) -> Result<bool> {
    if s.dim() != t.dim() {
        return Ok(false);
    }
    Ok(!s.hom_space(t)?.is_empty())
}

/// Isomorphism test for irreducible modules.
pub fn iso_test(s: &RepModule, t: &RepModule) -> Result<bool> {
    if !s.same_context(t) {
        return Err(Error::Mismatch);
    }
    if !is_irreducible(s)? || !is_irreducible(t)? {
        return Err(Error::NotIrreducible);
    }
    isomorphic(s, t)
}

/// Pairwise non-isomorphic irreducible modules with ids in discovery order.
#[derive(Clone, Debug, Default)]
pub struct IsoClassTable {
    classes: Vec<RepModule>,
}

impl IsoClassTable {
    pub fn new() -> Self {
        IsoClassTable::default()
    }

    /// A table whose class 0 is the trivial module.
    pub fn with_trivial(group: Arc<GroupTable>, field: Arc<Field>) -> Self {
        IsoClassTable {
            classes: vec![RepModule::trivial(group, field, 1)],
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, id: usize) -> &RepModule {
        &self.classes[id]
    }

    pub fn modules(&self) -> &[RepModule] {
        &self.classes
    }

    /// Id of the class isomorphic to the irreducible `m`, if registered.
    pub fn find(&self, m: &RepModule) -> Result<Option<usize>> {
        for (i, c) in self.classes.iter().enumerate() {
            if isomorphic(c, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Registers an irreducible module, returning its class id.
    pub fn register(&mut self, m: &RepModule) -> Result<usize> {
        if let Some(i) = self.find(m)? {
            return Ok(i);
        }
        self.classes.push(m.clone());
        Ok(self.classes.len() - 1)
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub dim: usize,
    pub class: usize,
    pub module: RepModule,
}

/// `0 = V_0 ⊂ ... ⊂ V_n = V` with irreducible factors `V_i / V_{i-1}`.
#[derive(Clone, Debug)]
pub struct CompSeries {
    pub chain: Vec<Subspace>,
    pub factors: Vec<Factor>,
}

impl CompSeries {
    /// Multiset of `(dim, class)` pairs, sorted.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = self.factors.iter().map(|f| (f.dim, f.class)).collect();
        s.sort_unstable();
        s
    }
}

fn series_rec<R: Rng>(
    m: &RepModule,
    rng: &mut R,
    cfg: &MeataxeConfig,
    table: &mut IsoClassTable,
) -> Result<CompSeries> {
    let f = m.field();
    let n = m.dim();
    if n == 0 {
        return Ok(CompSeries {
            chain: vec![Subspace::zero(0)],
            factors: Vec::new(),
        });
    }
    let Some(u) = find_submodule(m, rng, cfg)? else {
        let class = table.register(m)?;
        return Ok(CompSeries {
            chain: vec![Subspace::zero(n), Subspace::full(n)],
            factors: vec![Factor {
                dim: n,
                class,
                module: m.clone(),
            }],
        });
    };
    let sub = m.sub(&u)?;
    let quo = m.quotient(&u)?;
    let lower = series_rec(&sub, rng, cfg, table)?;
    let upper = series_rec(&quo, rng, cfg, table)?;
    let mut chain: Vec<Subspace> = lower.chain.iter().map(|s| embed_sub(f, &u, s)).collect();
    chain.extend(upper.chain.iter().skip(1).map(|s| lift_quotient(f, &u, s)));
    let mut factors = lower.factors;
    factors.extend(upper.factors);
    Ok(CompSeries { chain, factors })
}

/// Composition series, registering factors in a fresh table.
pub fn composition_series(v: &RepModule, seed: u64) -> Result<(CompSeries, IsoClassTable)> {
    let mut table = IsoClassTable::new();
    let cs = composition_series_in(v, seed, &mut table)?;
    Ok((cs, table))
}

/// Composition series, registering factors in `table`.
pub fn composition_series_in(v: &RepModule, seed: u64, table: &mut IsoClassTable) -> Result<CompSeries> {
    composition_series_with(v, seed, table, &MeataxeConfig::default())
}

pub fn composition_series_with(
    v: &RepModule,
    seed: u64,
    table: &mut IsoClassTable,
    cfg: &MeataxeConfig,
) -> Result<CompSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    series_rec(v, &mut rng, cfg, table)
}

/// Irreducible modules of `group` over `field`: the composition factors of
/// the regular module, with the trivial module as class 0.
pub fn all_irreducibles(group: Arc<GroupTable>, field: Arc<Field>, seed: u64) -> Result<IsoClassTable> {
    all_irreducibles_with(group, field, seed, &MeataxeConfig::default())
}

pub fn all_irreducibles_with(
    group: Arc<GroupTable>,
    field: Arc<Field>,
    seed: u64,
    cfg: &MeataxeConfig,
) -> Result<IsoClassTable> {
    if group.order() > REGULAR_CAP {
        return Err(Error::cap("group order for the regular module", REGULAR_CAP));
    }
    let mut table = IsoClassTable::with_trivial(group.clone(), field.clone());
    let reg = RepModule::regular(group, field);
    composition_series_with(&reg, seed, &mut table, cfg)?;
    Ok(table)
}

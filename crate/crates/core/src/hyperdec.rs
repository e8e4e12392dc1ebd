//! Hypercentral and hypereccentric components of a module.
//!
//! For `G ∈ loc(f)` every module splits as `V = V⁺ ⊕ V⁻` with `V⁺` the
//! largest hypercentral and `V⁻` the largest hypereccentric submodule. Both
//! are found by socle climbing: repeatedly add the sum of all minimal
//! submodules of the current quotient that have the wanted centrality.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::formation::{central_unchecked, loc_contains, SaturatedFormation};
use crate::groups::Subgroup;
use crate::linalg::{embed_sub, lift_quotient, spin, Subspace};
use crate::meataxe::{self, composition_series_in, projective_count, projective_point, space_size, IsoClassTable};
use crate::module::RepModule;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Hypercentral,
    Hypereccentric,
    Mixed,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorInfo {
    pub dim: usize,
    pub class: usize,
    pub central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub v_plus: Subspace,
    pub v_minus: Subspace,
    pub plus_factors: Vec<FactorInfo>,
    pub minus_factors: Vec<FactorInfo>,
}

#[derive(Clone, Copy, Debug)]
pub struct HyperConfig {
    /// Largest `|F|^dim` for which minimal submodules are found by spinning
    /// every projective point.
    pub exhaustive_cap: u64,
    pub exec: Exec,
}

impl Default for HyperConfig {
    fn default() -> Self {
        HyperConfig {
            exhaustive_cap: 1 << 10,
            exec: Exec::default(),
        }
    }
}

/// Composition factors of `v` with their centrality.
pub fn factor_infos(
    v: &RepModule,
    sf: &SaturatedFormation,
    seed: u64,
    table: &mut IsoClassTable,
) -> Result<Vec<FactorInfo>> {
    if v.dim() == 0 {
        return Ok(Vec::new());
    }
    let cs = composition_series_in(v, seed, table)?;
    let mut by_class: HashMap<usize, bool> = HashMap::new();
    cs.factors
        .iter()
        .map(|f| {
            let central = match by_class.get(&f.class) {
                Some(&c) => c,
                None => {
                    let c = central_unchecked(&f.module, sf)?;
                    by_class.insert(f.class, c);
                    c
                }
            };
            Ok(FactorInfo {
                dim: f.dim,
                class: f.class,
                central,
            })
        })
        .collect()
}

fn verdict_of(infos: &[FactorInfo]) -> Verdict {
    if infos.is_empty() {
        Verdict::Zero
    } else if infos.iter().all(|i| i.central) {
        Verdict::Hypercentral
    } else if infos.iter().all(|i| !i.central) {
        Verdict::Hypereccentric
    } else {
        Verdict::Mixed
    }
}

pub fn classify(v: &RepModule, sf: &SaturatedFormation, seed: u64) -> Result<Verdict> {
    let mut table = IsoClassTable::new();
    Ok(verdict_of(&factor_infos(v, sf, seed, &mut table)?))
}

/// All minimal submodules, found by spinning every projective point.
pub fn minimal_submodules_exhaustive(q: &RepModule, exec: Exec) -> Vec<Subspace> {
    let f = q.field();
    let n = q.dim();
    let count = projective_count(f.order(), n) as usize;
    let spins = exec.map(count, |i| {
        spin(f, &[projective_point(f.order(), n, i as u64)], q.gen_mats()).expect("shapes")
    });
    let mut distinct: HashMap<Vec<Elem>, Subspace> = HashMap::new();
    for s in spins {
        distinct.entry(s.basis().data().to_vec()).or_insert(s);
    }
    let mut all: Vec<Subspace> = distinct.into_values().collect();
    all.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then_with(|| a.basis().data().cmp(b.basis().data()))
    });
    let mut minimal: Vec<Subspace> = Vec::new();
    for s in &all {
        if !minimal.iter().any(|t| t.dim() < s.dim() && s.contains(f, t)) {
            minimal.push(s.clone());
        }
    }
    minimal
}

/// Sum of the minimal submodules of `q` whose centrality is `central`,
/// found by exhaustive spinning.
fn socle_part_exhaustive(q: &RepModule, central: bool, sf: &SaturatedFormation, exec: Exec) -> Result<Subspace> {
    let f = q.field();
    let mut acc = Subspace::zero(q.dim());
    for s in minimal_submodules_exhaustive(q, exec) {
        if acc.contains(f, &s) {
            continue;
        }
        if central_unchecked(&q.sub(&s)?, sf)? == central {
            acc = acc.sum(f, &s)?;
        }
    }
    Ok(acc)
}

/// The same sum as images of homomorphisms from the irreducible
/// composition factors of `q` with the wanted centrality.
pub(crate) fn socle_part_hom(q: &RepModule, central: bool, sf: &SaturatedFormation, seed: u64) -> Result<Subspace> {
    let f = q.field();
    let mut table = IsoClassTable::new();
    composition_series_in(q, seed, &mut table)?;
    let mut acc = Subspace::zero(q.dim());
    for s in table.modules() {
        if central_unchecked(s, sf)? != central {
            continue;
        }
        for x in s.hom_space(q)? {
            acc = acc.sum(f, &Subspace::from_rows(f, &x))?;
        }
    }
    Ok(acc)
}

fn socle_part(q: &RepModule, central: bool, sf: &SaturatedFormation, seed: u64, cfg: &HyperConfig) -> Result<Subspace> {
    if space_size(q.field().order(), q.dim(), cfg.exhaustive_cap).is_some() {
        socle_part_exhaustive(q, central, sf, cfg.exec)
    } else {
        socle_part_hom(q, central, sf, seed)
    }
}

fn climb(v: &RepModule, central: bool, sf: &SaturatedFormation, seed: u64, cfg: &HyperConfig) -> Result<Subspace> {
    let f = v.field();
    let mut s = Subspace::zero(v.dim());
    while !s.is_full() {
        let q = v.quotient(&s)?;
        let part = socle_part(&q, central, sf, seed, cfg)?;
        if part.is_zero() {
            break;
        }
        s = lift_quotient(f, &s, &part);
    }
    Ok(s)
}

pub fn decompose(v: &RepModule, sf: &SaturatedFormation, seed: u64) -> Result<Decomposition> {
    decompose_with(v, sf, seed, &HyperConfig::default())
}

pub fn decompose_with(v: &RepModule, sf: &SaturatedFormation, seed: u64, cfg: &HyperConfig) -> Result<Decomposition> {
    if !loc_contains(sf, v.group())? {
        return Err(Error::GroupNotInFormation(sf.name.clone()));
    }
    let f = v.field();
    let v_plus = climb(v, true, sf, seed, cfg)?;
    let v_minus = climb(v, false, sf, seed, cfg)?;
    if v_plus.dim() + v_minus.dim() != v.dim() || !v_plus.is_direct_sum(f, &v_minus)? {
        return Err(Error::ClimbInconsistent("components do not form a direct sum".into()));
    }
    let mut table = IsoClassTable::new();
    let plus_factors = factor_infos(&v.sub(&v_plus)?, sf, seed, &mut table)?;
    let minus_factors = factor_infos(&v.sub(&v_minus)?, sf, seed, &mut table)?;
    let checks = [
        (
            verdict_of(&plus_factors),
            Verdict::Hypercentral,
            "V+ is not hypercentral",
        ),
        (
            verdict_of(&minus_factors),
            Verdict::Hypereccentric,
            "V- is not hypereccentric",
        ),
        (
            classify(&v.quotient(&v_plus)?, sf, seed)?,
            Verdict::Hypereccentric,
            "V/V+ is not hypereccentric",
        ),
        (
            classify(&v.quotient(&v_minus)?, sf, seed)?,
            Verdict::Hypercentral,
            "V/V- is not hypercentral",
        ),
    ];
    for (got, want, msg) in checks {
        if got != want && got != Verdict::Zero {
            return Err(Error::ClimbInconsistent(msg.into()));
        }
    }
    Ok(Decomposition {
        v_plus,
        v_minus,
        plus_factors,
        minus_factors,
    })
}

/// Components of `v` as a module for a subgroup `u`, with a report of which
/// generators of the full group preserve each component.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalComponents {
    pub decomposition: Decomposition,
    pub plus_invariant: Vec<bool>,
    pub minus_invariant: Vec<bool>,
    pub normal: bool,
    pub warnings: Vec<String>,
}

impl NormalComponents {
    pub fn all_invariant(&self) -> bool {
        self.plus_invariant.iter().chain(&self.minus_invariant).all(|&b| b)
    }
}

pub fn components_wrt_normal(
    v: &RepModule,
    u: &Subgroup,
    sf: &SaturatedFormation,
    seed: u64,
) -> Result<NormalComponents> {
    let g = v.group();
    if !g.is_subgroup(u) {
        return Err(Error::PreconditionViolated("not a subgroup".into()));
    }
    let normal = g.is_normal(u);
    let mut warnings = Vec::new();
    if !normal {
        warnings.push("subgroup is not normal; components need not be invariant".to_string());
    }
    let (res, _) = v.restrict(u)?;
    let decomposition = decompose(&res, sf, seed)?;
    let f = v.field();
    let report = |w: &Subspace| -> Vec<bool> {
        v.gen_mats()
            .iter()
            .map(|m| w.is_invariant(f, std::slice::from_ref(m)))
            .collect()
    };
    Ok(NormalComponents {
        plus_invariant: report(&decomposition.v_plus),
        minus_invariant: report(&decomposition.v_minus),
        decomposition,
        normal,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    TensorCentral,
    HomCentral,
    TensorMixed,
    HomMixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub kind: ClosureKind,
    pub expected: Verdict,
    pub actual: Verdict,
    pub pass: bool,
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.into()))
    }
}

/// Builds `v ⊗ w` or `Hom(v, w)` and compares its verdict with the one the
/// closure rules predict.
pub fn closure_check(
    kind: ClosureKind,
    v: &RepModule,
    w: &RepModule,
    sf: &SaturatedFormation,
    seed: u64,
) -> Result<ClosureVerdict> {
    if !v.same_context(w) {
        return Err(Error::Mismatch);
    }
    let expected = match kind {
        ClosureKind::TensorCentral | ClosureKind::HomCentral => {
            for m in [v, w] {
                require(meataxe::is_irreducible(m)?, "input is not irreducible")?;
                require(central_unchecked(m, sf)?, "input is not central")?;
            }
            Verdict::Hypercentral
        }
        ClosureKind::TensorMixed | ClosureKind::HomMixed => {
            require(
                classify(v, sf, seed)? == Verdict::Hypercentral,
                "first input is not hypercentral",
            )?;
            require(
                classify(w, sf, seed)? == Verdict::Hypereccentric,
                "second input is not hypereccentric",
            )?;
            require(loc_contains(sf, v.group())?, "group is not in the formation")?;
            Verdict::Hypereccentric
        }
    };
    let built = match kind {
        ClosureKind::TensorCentral | ClosureKind::TensorMixed => v.tensor(w)?,
        ClosureKind::HomCentral | ClosureKind::HomMixed => v.hom(w)?,
    };
    let actual = classify(&built, sf, seed)?;
    Ok(ClosureVerdict {
        kind,
        expected,
        actual,
        pass: actual == expected,
    })
}

/// Verdict on `v ⊗ w` for inputs outside the closure rules' hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureProbe {
    pub actual: Verdict,
    pub claim: String,
}

pub fn closure_probe(v: &RepModule, w: &RepModule, sf: &SaturatedFormation, seed: u64) -> Result<ClosureProbe> {
    let actual = classify(&v.tensor(w)?, sf, seed)?;
    Ok(ClosureProbe {
        actual,
        claim: "no claim".into(),
    })
}

/// A minimal submodule of `v` contained in the submodule `within`.
pub(crate) fn first_minimal_in(v: &RepModule, within: &Subspace, seed: u64) -> Result<Subspace> {
    let sub = v.sub(within)?;
    let f = v.field();
    let mut table = IsoClassTable::new();
    let cs = composition_series_in(&sub, seed, &mut table)?;
    Ok(embed_sub(f, within, &cs.chain[1]))
}

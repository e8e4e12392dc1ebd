//! Invariant suite over one (group, field, module, formation) input.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_partition, principal_block_fg};
use crate::cohomology::{h1_dim, h2, H2_CAP};
use crate::error::Result;
use crate::field::Field;
use crate::formation::{
    central_unchecked, formation_contains, formation_residual, loc_contains, minimal_formation_central, FormationId,
    SaturatedFormation,
};
use crate::groups::GroupTable;
use crate::hyperdec::{classify, closure_check, components_wrt_normal, decompose, ClosureKind, Verdict};
use crate::meataxe::{all_irreducibles, composition_series_in, REGULAR_CAP};
use crate::module::{chief_factor_module, RepModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

const SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

fn decomposition_checks(out: &mut Checks, v: &RepModule, sf: &SaturatedFormation, seed: u64) -> Result<()> {
    let d = decompose(v, sf, seed)?;
    let f = v.field();
    out.push(
        "decompose.direct_sum",
        d.v_plus.dim() + d.v_minus.dim() == v.dim() && d.v_plus.is_direct_sum(f, &d.v_minus)?,
        format!("dim V+ = {}, dim V- = {}", d.v_plus.dim(), d.v_minus.dim()),
    );
    let plus = classify(&v.sub(&d.v_plus)?, sf, seed)?;
    let top = classify(&v.quotient(&d.v_plus)?, sf, seed)?;
    out.push(
        "decompose.maximal",
        matches!(plus, Verdict::Hypercentral | Verdict::Zero) && matches!(top, Verdict::Hypereccentric | Verdict::Zero),
        format!("V+ {plus:?}, V/V+ {top:?}"),
    );
    let mut stable = true;
    for s in SEEDS {
        let e = decompose(v, sf, s)?;
        stable &= e.v_plus == d.v_plus && e.v_minus == d.v_minus;
    }
    out.push("decompose.seed_independent", stable, format!("seeds {SEEDS:?}"));
    let again = decompose(&v.sub(&d.v_plus)?, sf, seed)?;
    out.push("decompose.idempotent", again.v_minus.is_zero(), "");
    Ok(())
}

fn formation_checks(out: &mut Checks, g: &GroupTable) -> Result<()> {
    let ids = [
        FormationId::Trivial,
        FormationId::Abelian,
        FormationId::Nilpotent,
        FormationId::NilpotentLength(2),
        FormationId::AllSoluble,
    ];
    let mut ok = true;
    for id in ids {
        let k = formation_residual(id, g)?;
        let (q, _) = g.quotient(&k)?;
        ok &= formation_contains(id, &q);
    }
    out.push("formation.residual_quotient", ok, "");
    let nil = SaturatedFormation::nilpotent();
    out.push(
        "formation.local_nilpotent",
        loc_contains(&nil, g)? == formation_contains(FormationId::Nilpotent, g),
        "",
    );
    Ok(())
}

fn block_checks(
    out: &mut Checks,
    g: &Arc<GroupTable>,
    field: &Arc<Field>,
    sf: &SaturatedFormation,
    seed: u64,
) -> Result<()> {
    if g.order() > REGULAR_CAP {
        out.push("blocks.skipped", true, format!("group order above {REGULAR_CAP}"));
        return Ok(());
    }
    let p = field.characteristic();
    let mut classes = all_irreducibles(g.clone(), field.clone(), seed)?;
    let part = block_partition(&classes)?;
    let mut principal = part.principal_block().to_vec();
    principal.sort_unstable();
    let fg = principal_block_fg(&classes, p)?;
    out.push(
        "blocks.kernel_criterion",
        principal == fg,
        format!("linkage {principal:?}, O_p'p {fg:?}"),
    );

    let mut minimal_central_ok = true;
    let mut vanish = true;
    for i in 0..classes.len() {
        let s = classes.get(i);
        let inside = principal.contains(&i);
        minimal_central_ok &= minimal_formation_central(s)? == inside;
        if !inside {
            vanish &= h1_dim(s)? == 0;
            if g.order() <= H2_CAP {
                vanish &= h2(s)?.dim_cohomology == 0;
            }
        }
    }
    out.push("blocks.minimal_formation_central", minimal_central_ok, "");
    out.push("blocks.vanishing_outside_principal", vanish, "");

    let in_loc = loc_contains(sf, g)?;
    if in_loc {
        let mut union = true;
        for b in &part.blocks {
            let cs: Vec<bool> = b
                .iter()
                .map(|&i| central_unchecked(classes.get(i), sf))
                .collect::<Result<_>>()?;
            union &= cs.iter().all(|&c| c) || cs.iter().all(|&c| !c);
        }
        out.push("blocks.union_of_blocks", union, "");
    }

    let series = g.chief_series()?;
    let mut chief_ok = true;
    let mut chief_plus = true;
    for (i, fct) in series.factors.iter().enumerate() {
        if fct.prime != p {
            continue;
        }
        let m = chief_factor_module(g, &series.terms[i + 1], &series.terms[i], p)?;
        let m = if field.is_prime_field() {
            m
        } else {
            m.base_change(field.clone())?
        };
        let cs = composition_series_in(&m, seed, &mut classes)?;
        for fac in &cs.factors {
            chief_ok &= principal.contains(&fac.class) && fg.contains(&fac.class);
        }
        if in_loc {
            chief_plus &= classify(&m, sf, seed)? == Verdict::Hypercentral;
        }
    }
    out.push("blocks.chief_factors_principal", chief_ok, "");
    if in_loc {
        out.push("hyperdec.chief_factors_hypercentral", chief_plus, "");
    }

    let irr: Vec<&RepModule> = classes.modules().iter().collect();
    let central: Vec<bool> = irr.iter().map(|s| central_unchecked(s, sf)).collect::<Result<_>>()?;
    let mut closure = true;
    for (i, s) in irr.iter().enumerate() {
        for (j, t) in irr.iter().enumerate() {
            if central[i] && central[j] {
                for kind in [ClosureKind::TensorCentral, ClosureKind::HomCentral] {
                    closure &= closure_check(kind, s, t, sf, seed)?.pass;
                }
            }
            if in_loc && central[i] && !central[j] {
                for kind in [ClosureKind::TensorMixed, ClosureKind::HomMixed] {
                    closure &= closure_check(kind, s, t, sf, seed)?.pass;
                }
            }
        }
    }
    out.push("hyperdec.closure", closure, "");
    Ok(())
}

/// Runs every applicable invariant.
pub fn verify_input(
    group: &Arc<GroupTable>,
    field: &Arc<Field>,
    module: Option<&RepModule>,
    sf: &SaturatedFormation,
    seed: u64,
) -> Result<Vec<Check>> {
    let mut out = Checks::default();
    out.push(
        "groups.axioms",
        group.verify_axioms(),
        format!("order {}", group.order()),
    );
    let soluble = group.is_soluble();
    out.push("groups.soluble", soluble, "");
    if !soluble {
        return Ok(out.0);
    }
    formation_checks(&mut out, group)?;
    if let Some(v) = module {
        out.push(
            "module.representation",
            v.verify_all_pairs(),
            format!("dim {}", v.dim()),
        );
        if loc_contains(sf, group)? {
            decomposition_checks(&mut out, v, sf, seed)?;
        }
        let series = group.chief_series()?;
        let mut normal_ok = true;
        for n in &series.terms[1..] {
            let (nt, _) = group.subgroup_table(n);
            if loc_contains(sf, &nt)? {
                normal_ok &= components_wrt_normal(v, n, sf, seed)?.all_invariant();
            }
        }
        out.push("hyperdec.normal_components_invariant", normal_ok, "");
    }
    block_checks(&mut out, group, field, sf, seed)?;
    Ok(out.0)
}

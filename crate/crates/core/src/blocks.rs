//! Ext¹ between irreducibles, blocks of the group algebra and the split
//! extension witnesses for the cohomological centrality criterion.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cohomology::{h1_dim, h2};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::formation::{central_unchecked, loc_contains, SaturatedFormation};
use crate::groups::{semidirect_with_module, GroupTable};
use crate::hyperdec::{decompose, first_minimal_in};
use crate::meataxe::{all_irreducibles, is_irreducible, IsoClassTable};
use crate::module::RepModule;
use crate::par::Exec;

/// Default cap on the order of split extensions built for witnesses.
pub const SEMIDIRECT_CAP: usize = 200;

/// `dim Ext¹(s, t) = dim H¹(G, Hom(s, t))` for irreducibles.
pub fn ext1(s: &RepModule, t: &RepModule) -> Result<usize> {
    if !s.same_context(t) {
        return Err(Error::Mismatch);
    }
    if !is_irreducible(s)? || !is_irreducible(t)? {
        return Err(Error::NotIrreducible);
    }
    ext1_unchecked(s, t)
}

pub(crate) fn ext1_unchecked(s: &RepModule, t: &RepModule) -> Result<usize> {
    h1_dim(&s.hom(t)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    /// Blocks as sorted lists of class ids, ordered by least id.
    pub blocks: Vec<Vec<usize>>,
    /// Index into `blocks` of the block holding the trivial module.
    pub principal: usize,
    /// `ext[i][j] = dim Ext¹(S_i, S_j)`.
    pub ext: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn principal_block(&self) -> &[usize] {
        &self.blocks[self.principal]
    }

    pub fn block_of(&self, class: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&class)).expect("partition")
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn is_trivial_module(m: &RepModule) -> bool {
    m.dim() == 1 && m.gen_mats().iter().all(|g| g.get(0, 0) == 1)
}

/// Connected components of the graph with an edge where Ext¹ is nonzero in
/// either direction.
pub fn block_partition(classes: &IsoClassTable) -> Result<BlockPartition> {
    block_partition_with(classes, Exec::default())
}

pub fn block_partition_with(classes: &IsoClassTable, exec: Exec) -> Result<BlockPartition> {
    let n = classes.len();
    let trivial = (0..n)
        .find(|&i| is_trivial_module(classes.get(i)))
        .ok_or_else(|| Error::PreconditionViolated("no trivial module among the classes".into()))?;
    let dims = exec.map(n * n, |ij| ext1_unchecked(classes.get(ij / n), classes.get(ij % n)));
    let mut ext = vec![vec![0; n]; n];
    for (ij, d) in dims.into_iter().enumerate() {
        ext[ij / n][ij % n] = d?;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, row) in ext.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e > 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(i);
    }
    let principal = root_block[find(&mut parent, trivial)];
    Ok(BlockPartition { blocks, principal, ext })
}

/// Classes on which `O_{p'p}(G)` acts trivially.
pub fn principal_block_fg(classes: &IsoClassTable, p: u32) -> Result<Vec<usize>> {
    let Some(first) = classes.modules().first() else {
        return Ok(Vec::new());
    };
    let opp = first.group().o_pprime_p(p)?;
    Ok((0..classes.len())
        .filter(|&i| opp.is_subset(&classes.get(i).action_kernel()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSample {
    /// Dimension over GF(p) of the normal subgroup `A` of `X = A ⋊ G`.
    pub a_dim: usize,
    pub copies: usize,
    pub x_order: usize,
    pub h1_dim: usize,
    pub predicted_positive: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub vacuous: bool,
    pub v_plus_dim: usize,
    pub h2_dim: Option<usize>,
    pub samples: Vec<WitnessSample>,
}

impl WitnessReport {
    pub fn all_agree(&self) -> bool {
        self.samples.iter().all(|s| s.agrees)
    }
}

fn sample(v: &RepModule, a: &RepModule, copies: usize, predicted_positive: bool) -> Result<WitnessSample> {
    let (x, _, proj) = semidirect_with_module(a, SEMIDIRECT_CAP)?;
    let infl = v.inflate(x.clone(), &proj)?;
    let h1 = h1_dim(&infl)?;
    Ok(WitnessSample {
        a_dim: a.dim(),
        copies,
        x_order: x.order(),
        h1_dim: h1,
        predicted_positive,
        agrees: (h1 > 0) == predicted_positive,
    })
}

/// Builds split extensions `X = A ⋊ G` and reports `dim H¹(X, V)`.
///
/// With `V⁺ ≠ 0`, `A` is `m = dim H²(G,V) + 1` copies of a minimal
/// submodule `W` of `V⁺` (over the prime field), and `H¹(X, V)` is
/// predicted to be nonzero. With `V⁺ = 0`, `A` runs over the zero module
/// and the central irreducibles of `G` over the prime field, and `H¹(X, V)`
/// is predicted to vanish.
pub fn eccentric_witness(v: &RepModule, sf: &SaturatedFormation, seed: u64) -> Result<WitnessReport> {
    let g = v.group();
    if !loc_contains(sf, g)? {
        return Err(Error::GroupNotInFormation(sf.name.clone()));
    }
    if v.dim() == 0 {
        return Ok(WitnessReport {
            vacuous: true,
            v_plus_dim: 0,
            h2_dim: None,
            samples: Vec::new(),
        });
    }
    let prime = Arc::new(Field::prime(v.field().characteristic())?);
    let to_prime = |m: &RepModule| -> Result<RepModule> {
        if m.field().is_prime_field() {
            Ok(m.clone())
        } else {
            m.restrict_scalars()
        }
    };
    let d = decompose(v, sf, seed)?;
    let mut samples = Vec::new();
    let h2_dim = if !d.v_plus.is_zero() {
        let w = v.sub(&first_minimal_in(v, &d.v_plus, seed)?)?;
        let m = h2(v)?.dim_cohomology + 1;
        let a = to_prime(&w)?.power(m);
        samples.push(sample(v, &a, m, true)?);
        Some(m - 1)
    } else {
        samples.push(sample(v, &RepModule::trivial(g.clone(), prime.clone(), 0), 1, false)?);
        let irr = all_irreducibles(g.clone(), prime, seed)?;
        for s in irr.modules() {
            if central_unchecked(s, sf)? {
                let order = (s.field().order() as usize).checked_pow(s.dim() as u32);
                if order.is_some_and(|o| o * g.order() <= SEMIDIRECT_CAP) {
                    samples.push(sample(v, s, 1, false)?);
                }
            }
        }
        None
    };
    Ok(WitnessReport {
        vacuous: false,
        v_plus_dim: d.v_plus.dim(),
        h2_dim,
        samples,
    })
}

/// Irreducibles of `G` over `F` with their block partition.
pub fn blocks_of(group: Arc<GroupTable>, field: Arc<Field>, seed: u64) -> Result<(IsoClassTable, BlockPartition)> {
    let classes = all_irreducibles(group, field, seed)?;
    let part = block_partition(&classes)?;
    Ok((classes, part))
}

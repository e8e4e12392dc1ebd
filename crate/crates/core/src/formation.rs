//! Formations of soluble groups and local definitions `F = loc(f)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupTable, Subgroup};
use crate::meataxe;
use crate::module::RepModule;

/// A formation given by an intrinsic predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FormationId {
    Empty,
    Trivial,
    Abelian,
    Nilpotent,
    /// Groups of nilpotent length at most `r`.
    NilpotentLength(u32),
    AllSoluble,
}

impl fmt::Display for FormationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormationId::Empty => f.write_str("empty"),
            FormationId::Trivial => f.write_str("trivial"),
            FormationId::Abelian => f.write_str("abelian"),
            FormationId::Nilpotent => f.write_str("nilpotent"),
            FormationId::NilpotentLength(r) => write!(f, "nilpotent-length-{r}"),
            FormationId::AllSoluble => f.write_str("soluble"),
        }
    }
}

impl FromStr for FormationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "empty" => FormationId::Empty,
            "trivial" => FormationId::Trivial,
            "abelian" => FormationId::Abelian,
            "nilpotent" => FormationId::Nilpotent,
            "soluble" | "all-soluble" | "allsoluble" => FormationId::AllSoluble,
            other => {
                let r = other
                    .strip_prefix("nilpotent-length-")
                    .and_then(|r| r.parse::<u32>().ok())
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| Error::Parse {
                        at: "formation".into(),
                        msg: format!("unknown formation {other:?}"),
                    })?;
                FormationId::NilpotentLength(r)
            }
        })
    }
}

impl TryFrom<String> for FormationId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FormationId> for String {
    fn from(f: FormationId) -> String {
        f.to_string()
    }
}

/// Nilpotent residual of `h`: the last term of its lower central series.
fn nilpotent_residual(g: &GroupTable, h: &Subgroup) -> Subgroup {
    g.lower_central_series_of(h).pop().expect("nonempty series")
}

pub fn formation_contains(f: FormationId, g: &GroupTable) -> bool {
    match f {
        FormationId::Empty => false,
        _ => formation_residual(f, g).expect("nonempty formation").is_trivial(),
    }
}

/// The smallest normal subgroup `K` with `G/K` in `f`.
pub fn formation_residual(f: FormationId, g: &GroupTable) -> Result<Subgroup> {
    let whole = g.whole();
    Ok(match f {
        FormationId::Empty => return Err(Error::EmptyFormation),
        FormationId::Trivial => whole,
        FormationId::Abelian => g.commutator_subgroup(&whole, &whole),
        FormationId::Nilpotent => nilpotent_residual(g, &whole),
        FormationId::NilpotentLength(r) => {
            let mut k = whole;
            for _ in 0..r {
                k = nilpotent_residual(g, &k);
            }
            k
        }
        FormationId::AllSoluble => g.derived_series().pop().expect("nonempty series"),
    })
}

/// A saturated formation given by its local definition `f(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedFormation {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub local: BTreeMap<u32, FormationId>,
    #[serde(default = "empty_default")]
    pub default: FormationId,
}

fn empty_default() -> FormationId {
    FormationId::Empty
}

impl SaturatedFormation {
    pub fn uniform(name: &str, f: FormationId) -> Self {
        SaturatedFormation {
            name: name.into(),
            local: BTreeMap::new(),
            default: f,
        }
    }

    /// `f(p) = 1` for all `p`: the nilpotent groups.
    pub fn nilpotent() -> Self {
        Self::uniform("nilpotent", FormationId::Trivial)
    }

    /// `f(p) = abelian` for all `p`.
    pub fn abelian_local() -> Self {
        Self::uniform("abelian-local", FormationId::Abelian)
    }

    /// `f(p) = N^r` for all `p`.
    pub fn nilpotent_length_local(r: u32) -> Self {
        Self::uniform(&format!("nilpotent-length-{r}-local"), FormationId::NilpotentLength(r))
    }

    /// `f(p)` = all soluble groups: every soluble group.
    pub fn soluble() -> Self {
        Self::uniform("soluble", FormationId::AllSoluble)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        let n = name.trim().to_ascii_lowercase();
        match n.as_str() {
            "nilpotent" | "trivial-local" => Ok(Self::nilpotent()),
            "abelian-local" => Ok(Self::abelian_local()),
            "soluble" => Ok(Self::soluble()),
            _ => n
                .strip_prefix("nilpotent-length-")
                .and_then(|r| r.strip_suffix("-local"))
                .and_then(|r| r.parse::<u32>().ok())
                .filter(|&r| r >= 1)
                .map(Self::nilpotent_length_local)
                .ok_or_else(|| Error::Parse {
                    at: "formation.name".into(),
                    msg: format!("unknown formation {name:?}"),
                }),
        }
    }

    /// `f(p)`.
    pub fn at(&self, p: u32) -> FormationId {
        self.local.get(&p).copied().unwrap_or(self.default)
    }

    /// The formations used across the shipped corpus.
    pub fn corpus() -> Vec<SaturatedFormation> {
        vec![
            Self::nilpotent(),
            Self::abelian_local(),
            Self::nilpotent_length_local(2),
        ]
    }
}

/// Membership in `loc(f)` via a chief series.
pub fn loc_contains(sf: &SaturatedFormation, g: &GroupTable) -> Result<bool> {
    let series = g.chief_series()?;
    for factor in &series.factors {
        let (q, _) = g.quotient(&factor.centralizer)?;
        if !formation_contains(sf.at(factor.prime), &q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `G / C_G(V)` lies in `f(p)`, without checking irreducibility.
pub(crate) fn central_unchecked(v: &RepModule, sf: &SaturatedFormation) -> Result<bool> {
    let fp = sf.at(v.field().characteristic());
    if fp == FormationId::Empty {
        return Ok(false);
    }
    let (q, _) = v.group().quotient(&v.action_kernel())?;
    Ok(formation_contains(fp, &q))
}

pub fn is_f_central(v: &RepModule, sf: &SaturatedFormation) -> Result<bool> {
    if !meataxe::is_irreducible(v)? {
        return Err(Error::NotIrreducible);
    }
    central_unchecked(v, sf)
}

/// Centrality for the smallest saturated formation containing `G`:
/// `O_{p'p}(G)` acts trivially.
pub fn minimal_formation_central(v: &RepModule) -> Result<bool> {
    let opp = v.group().o_pprime_p(v.field().characteristic())?;
    Ok(opp.is_subset(&v.action_kernel()))
}

/// Checks `f(p) ⊆ loc(f)` on the given groups only: every soluble group
/// lying in some `f(p)` must lie in `loc(f)`.
pub fn integrated_on(sf: &SaturatedFormation, groups: &[&GroupTable], primes: &[u32]) -> Result<bool> {
    for g in groups {
        if !g.is_soluble() {
            continue;
        }
        let in_some = primes.iter().any(|&p| formation_contains(sf.at(p), g));
        if in_some && !loc_contains(sf, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Batch jobs: one input document, one command, one report.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::blocks::{block_partition, principal_block_fg};
use crate::cohomology::cohomology;
use crate::corpus;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::formation::{central_unchecked, minimal_formation_central, SaturatedFormation};
use crate::groups::GroupTable;
use crate::hyperdec::{classify, components_wrt_normal, decompose, factor_infos, Decomposition};
use crate::io::{self, JobDoc};
use crate::linalg::Subspace;
use crate::meataxe::{all_irreducibles, composition_series, IsoClassTable};
use crate::module::RepModule;
use crate::verify::verify_input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Decompose,
    Components,
    Blocks,
    PrincipalBlock,
    Cohomology,
    ChiefSeries,
    Verify,
    PaperExample,
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string())).map_err(|_| Error::Parse {
            at: "--command".into(),
            msg: format!("unknown command {s:?}"),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    /// Raw input document, if any.
    pub input: Option<String>,
    pub seed: u64,
    pub format: Format,
    pub prime: Option<u32>,
    pub field: Option<FieldSpec>,
    /// Normal subgroup generators, `"gen;gen"`.
    pub normal: Option<String>,
    pub degree: u8,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            input: None,
            seed: 0,
            format: Format::Text,
            prime: None,
            field: None,
            normal: None,
            degree: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    /// SHA-256 of the command, options and input document.
    pub digest: String,
    pub ok: bool,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "command: {}\ndigest: {}\nstatus: {}\n",
            serde_json::to_value(self.command)
                .expect("serializable")
                .as_str()
                .unwrap_or_default(),
            self.digest,
            if self.ok { "ok" } else { "FAILED" }
        );
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&format!("time: {:.1} ms\n", self.timing_ms));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn digest(job: &JobSpec) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "{:?}|{}|{:?}|{:?}|{:?}|{}|",
        job.command, job.seed, job.prime, job.field, job.normal, job.degree
    ));
    h.update(job.input.as_deref().unwrap_or(""));
    hex::encode(h.finalize())
}

/// Resolved inputs of a job.
struct Ctx {
    group: Arc<GroupTable>,
    degree: usize,
    field: Arc<Field>,
    module: Option<RepModule>,
    formation: SaturatedFormation,
    doc: JobDoc,
}

fn missing(what: &str) -> Error {
    Error::Parse {
        at: what.into(),
        msg: format!("{what} is required for this command"),
    }
}

fn context(job: &JobSpec) -> Result<Ctx> {
    let text = job.input.as_deref().ok_or_else(|| missing("--input"))?;
    let doc = io::parse_job(text)?;
    let spec = doc.group.spec()?;
    let group = Arc::new(GroupTable::from_perms(&spec, crate::groups::GROUP_CAP)?);
    let field_spec = job
        .field
        .clone()
        .or_else(|| doc.module.as_ref().and_then(|m| m.field.clone()))
        .or_else(|| doc.field.clone())
        .or_else(|| job.prime.map(FieldSpec::prime))
        .ok_or_else(|| missing("field"))?;
    let field = Arc::new(Field::new(field_spec)?);
    let module = doc
        .module
        .as_ref()
        .map(|m| m.build(group.clone(), field.clone()))
        .transpose()?;
    let formation = match &doc.formation {
        Some(v) => io::parse_formation(v)?,
        None => SaturatedFormation::nilpotent(),
    };
    Ok(Ctx {
        group,
        degree: spec.degree,
        field,
        module,
        formation,
        doc,
    })
}

fn need_module(ctx: &Ctx) -> Result<&RepModule> {
    ctx.module.as_ref().ok_or_else(|| missing("module"))
}

fn decomposition_json(f: &Field, d: &Decomposition) -> Value {
    json!({
        "v_plus": io::subspace_json(f, &d.v_plus),
        "v_minus": io::subspace_json(f, &d.v_minus),
        "dim_v_plus": d.v_plus.dim(),
        "dim_v_minus": d.v_minus.dim(),
        "plus_factors": d.plus_factors,
        "minus_factors": d.minus_factors,
    })
}

fn classes_json(classes: &IsoClassTable) -> Value {
    Value::Array(
        classes
            .modules()
            .iter()
            .enumerate()
            .map(|(i, m)| json!({"id": i, "dim": m.dim(), "kernel_order": m.action_kernel().order()}))
            .collect(),
    )
}

/// Runs a job. `ok` is false when a verification inside the job failed.
pub fn run(job: &JobSpec) -> Result<Report> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let (results, ok) = match job.command {
        Command::PaperExample => six_point_example(job.seed)?,
        cmd => {
            let ctx = context(job)?;
            dispatch(cmd, job, &ctx, &mut warnings)?
        }
    };
    Ok(Report {
        command: job.command,
        digest: digest(job),
        ok,
        results,
        warnings,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn dispatch(cmd: Command, job: &JobSpec, ctx: &Ctx, warnings: &mut Vec<String>) -> Result<(Value, bool)> {
    let f = &ctx.field;
    let sf = &ctx.formation;
    let seed = job.seed;
    Ok(match cmd {
        Command::Classify => {
            let v = need_module(ctx)?;
            let mut table = IsoClassTable::new();
            let factors = factor_infos(v, sf, seed, &mut table)?;
            let verdict = classify(v, sf, seed)?;
            (
                json!({"verdict": verdict, "dim": v.dim(), "factors": factors, "formation": sf.name}),
                true,
            )
        }
        Command::Decompose => {
            let v = need_module(ctx)?;
            let d = decompose(v, sf, seed)?;
            (decomposition_json(f, &d), true)
        }
        Command::Components => {
            let v = need_module(ctx)?;
            let gens = match (&job.normal, &ctx.doc.normal) {
                (Some(s), _) => io::parse_gen_list(s, ctx.degree)?,
                (None, Some(gs)) => gs.iter().map(|g| g.resolve(ctx.degree)).collect::<Result<_>>()?,
                (None, None) => return Err(missing("--normal")),
            };
            let u = io::subgroup_from_perms(&ctx.group, &gens)?;
            let r = components_wrt_normal(v, &u, sf, seed)?;
            warnings.extend(r.warnings.iter().cloned());
            (
                json!({
                    "subgroup_order": u.order(),
                    "normal": r.normal,
                    "components": decomposition_json(f, &r.decomposition),
                    "plus_invariant": r.plus_invariant,
                    "minus_invariant": r.minus_invariant,
                }),
                !r.normal || r.all_invariant(),
            )
        }
        Command::Blocks => {
            let p = f.characteristic();
            let classes = all_irreducibles(ctx.group.clone(), f.clone(), seed)?;
            let part = block_partition(&classes)?;
            let fg = principal_block_fg(&classes, p)?;
            let mut linkage = part.principal_block().to_vec();
            linkage.sort_unstable();
            let agree = linkage == fg;
            (
                json!({
                    "classes": classes_json(&classes),
                    "blocks": part.blocks,
                    "principal_block": linkage,
                    "principal_block_kernel_criterion": fg,
                    "criteria_agree": agree,
                    "ext1": part.ext,
                }),
                agree,
            )
        }
        Command::PrincipalBlock => {
            let p = job.prime.unwrap_or(f.characteristic());
            let classes = all_irreducibles(ctx.group.clone(), f.clone(), seed)?;
            let fg = principal_block_fg(&classes, p)?;
            let central: Vec<bool> = classes
                .modules()
                .iter()
                .map(minimal_formation_central)
                .collect::<Result<_>>()?;
            (
                json!({"classes": classes_json(&classes), "prime": p, "principal_block": fg, "minimal_formation_central": central}),
                true,
            )
        }
        Command::Cohomology => {
            let v = need_module(ctx)?;
            let c = cohomology(v, job.degree)?;
            let valid = c.verify(v);
            let reps: Vec<Value> = c.representatives.iter().map(|r| io::mat_json(f, r)).collect();
            (
                json!({
                    "degree": c.degree,
                    "dim_cocycles": c.dim_cocycles,
                    "dim_coboundaries": c.dim_coboundaries,
                    "dim_cohomology": c.dim_cohomology,
                    "representatives": reps,
                    "representatives_verified": valid,
                }),
                valid,
            )
        }
        Command::ChiefSeries => {
            let s = ctx.group.chief_series()?;
            let factors: Vec<Value> = s
                .factors
                .iter()
                .map(|c| json!({"prime": c.prime, "rank": c.rank, "centralizer_order": c.centralizer.order()}))
                .collect();
            let opp: Vec<Value> = [2u32, 3, 5, 7]
                .iter()
                .filter(|&&p| ctx.group.order().is_multiple_of(p as usize))
                .map(|&p| Ok(json!({"prime": p, "order": ctx.group.o_pprime_p(p)?.order()})))
                .collect::<Result<_>>()?;
            (
                json!({
                    "group_order": ctx.group.order(),
                    "term_orders": s.terms.iter().map(|t| t.order()).collect::<Vec<_>>(),
                    "factors": factors,
                    "o_pprime_p": opp,
                }),
                true,
            )
        }
        Command::Verify => {
            let checks = verify_input(&ctx.group, f, ctx.module.as_ref(), sf, seed)?;
            let ok = checks.iter().all(|c| c.pass);
            (
                json!({"checks": checks, "failures": checks.iter().filter(|c| !c.pass).count()}),
                ok,
            )
        }
        Command::PaperExample => unreachable!("handled in run"),
    })
}

/// The expected components of the six-point example over GF(2).
pub fn six_point_expected(f: &Field) -> (Subspace, Subspace) {
    let plus = Subspace::from_vecs(
        f,
        6,
        &[
            vec![1, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ],
    )
    .expect("shape");
    let minus = Subspace::from_vecs(f, 6, &[vec![1, 1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0, 0]]).expect("shape");
    (plus, minus)
}

/// `U = ⟨(1 2 3)⟩` permuting `e1..e6`, the ambient groups `N` and `G`, over
/// GF(2) and GF(4).
fn six_point_example(seed: u64) -> Result<(Value, bool)> {
    let nil = SaturatedFormation::nilpotent();
    let gf2 = Arc::new(Field::prime(2)?);
    let gf4 = Arc::new(Field::new(FieldSpec::builtin(2, 2)?)?);
    let u = Arc::new(corpus::c3_on_six());

    let v2 = RepModule::permutation(u.clone(), gf2.clone())?;
    let d2 = decompose(&v2, &nil, seed)?;
    let (plus, minus) = six_point_expected(&gf2);
    let gf2_ok = d2.v_plus == plus && d2.v_minus == minus;

    let v4 = RepModule::permutation(u, gf4.clone())?;
    let d4 = decompose(&v4, &nil, seed)?;
    let minus4 = v4.sub(&d4.v_minus)?;
    let (cs, _) = composition_series(&minus4, seed)?;
    let factors: Vec<Value> = cs
        .factors
        .iter()
        .map(|fac| {
            Ok(json!({
                "dim": fac.dim,
                "nontrivial": fac.module.action_kernel().order() < fac.module.group().order(),
                "central": central_unchecked(&fac.module, &nil)?,
                "action": io::mat_json(&gf4, &fac.module.gen_mats()[0]),
            }))
        })
        .collect::<Result<_>>()?;
    let gf4_ok = cs.factors.len() == 2
        && cs
            .factors
            .iter()
            .all(|x| x.dim == 1 && x.module.action_kernel().order() < x.module.group().order());

    let g = Arc::new(corpus::g72());
    let n = Arc::new(corpus::block_stabilizer());
    let vg = RepModule::permutation(g.clone(), gf2.clone())?;
    let vn = RepModule::permutation(n.clone(), gf2.clone())?;
    let rg = components_wrt_normal(&vg, &corpus::c3_on_six_in(&g), &nil, seed)?;
    let rn = components_wrt_normal(&vn, &corpus::c3_on_six_in(&n), &nil, seed)?;
    let swap = g.find_perm(&[3, 4, 5, 0, 1, 2]).expect("swap in G");
    let witness = (0..plus.dim()).find_map(|i| {
        let img = crate::linalg::vec_mat(&gf2, plus.basis().row(i), vg.elem_mat(swap));
        (!plus.contains_vec(&gf2, &img)).then(|| (plus.basis().row(i).to_vec(), img))
    });
    let invariance_ok = rn.all_invariant() && !rg.all_invariant() && witness.is_some();
    let witness_json = witness.map(|(v, img)| {
        json!({
            "vector": io::mat_json(&gf2, &crate::linalg::Mat::from_rows(6, &[v]).expect("row")),
            "image": io::mat_json(&gf2, &crate::linalg::Mat::from_rows(6, &[img]).expect("row")),
        })
    });

    let results = json!({
        "gf2": {
            "v_plus": io::subspace_json(&gf2, &d2.v_plus),
            "v_minus": io::subspace_json(&gf2, &d2.v_minus),
            "matches_expected": gf2_ok,
        },
        "gf4": {
            "v_plus": io::subspace_json(&gf4, &d4.v_plus),
            "v_minus": io::subspace_json(&gf4, &d4.v_minus),
            "v_minus_factors": factors,
            "two_nontrivial_lines": gf4_ok,
        },
        "invariance": {
            "ambient_n": {"plus": rn.plus_invariant, "minus": rn.minus_invariant},
            "ambient_g": {"plus": rg.plus_invariant, "minus": rg.minus_invariant},
            "g_moves_v_plus": witness_json,
            "as_expected": invariance_ok,
        },
    });
    Ok((results, gf2_ok && gf4_ok && invariance_ok))
}

/// Exit status for a finished job.
pub fn exit_code(r: &Result<Report>) -> i32 {
    match r {
        Ok(rep) if rep.ok => 0,
        Ok(_) => 2,
        Err(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_point_example_report() {
        let r = run(&JobSpec::new(Command::PaperExample)).unwrap();
        assert!(r.ok, "{}", r.to_json());
        assert_eq!(
            r.results["gf2"]["v_plus"],
            json!([
                [1, 1, 1, 0, 0, 0],
                [0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 1]
            ])
        );
        assert_eq!(
            r.results["gf2"]["v_minus"],
            json!([[1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0]])
        );
    }

    #[test]
    fn command_names() {
        assert_eq!("principal-block".parse::<Command>().unwrap(), Command::PrincipalBlock);
        assert!("nope".parse::<Command>().is_err());
    }

    #[test]
    fn blocks_on_s3() {
        let mut job = JobSpec::new(Command::Blocks);
        job.input = Some(r#"{"group":"S3"}"#.into());
        job.field = Some(FieldSpec::prime(2));
        let r = run(&job).unwrap();
        assert!(r.ok);
        assert_eq!(r.results["blocks"], json!([[0], [1]]));
        assert_eq!(r.results["principal_block"], json!([0]));
    }
}

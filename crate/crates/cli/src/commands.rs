use anyhow::{bail, Context, Result};
use cyclobrauer::acceptance::{acceptance_suite, AcceptanceReport, Profile};
use cyclobrauer::algebra::{verify_presentation, walled_basis, walled_closure_holds, AlgebraElement};
use cyclobrauer::coeff::DeltaPoly;
use cyclobrauer::diagram::{compose, count_diagrams, enumerate_diagrams, parse_diagram, LabeledDiagram};
use cyclobrauer::schur_weyl::{
    commutant_check, count_bipartitions, count_ktypes_report, decompose_sp_in, measure_deltas, phi_faithful,
    sector_identity, so_dimension_identity, stated_deltas, walled_centralizer_check, GroupContext, GroupSpec,
};
use serde_json::{json, Map, Value};

use crate::cli::{AlgebraCmd, Binary, Command, DiagramsCmd, GroupArg, GroupArgs, ProfileArg, RepCmd, KM};
use crate::report::{CommandEcho, Outcome};

/// Largest `dim(V)^k` accepted by the representation commands; the
/// commutant has `dim(V)^{2k}` unknowns.
const MAX_TENSOR_DIM: usize = 4096;
/// Largest listing produced by `diagrams enumerate`.
const MAX_ENUMERATION: u128 = 1_000_000;
/// Largest k for the integer identities (values must fit in 64 bits).
const MAX_IDENTITY_K: usize = 12;

/// A validated command, ready to run.
pub struct Plan {
    pub echo: CommandEcho,
    /// Cache key for expensive commands; `None` means never cached.
    pub cache_key: Option<String>,
    job: Job,
}

enum Job {
    Count(KM),
    Enumerate(KM),
    Compose(LabeledDiagram, LabeledDiagram),
    Verify(KM),
    Mul(LabeledDiagram, LabeledDiagram),
    Walled { s: usize, t: usize, n: Option<usize> },
    Context(GroupSpec),
    Deltas(GroupSpec),
    PhiRank(GroupSpec, usize),
    Commutant(GroupSpec, usize),
    Decompose(GroupSpec, usize),
    Ktypes(GroupSpec, usize),
    Identity(usize),
    Accept(Profile),
}

fn echo(verb: &str, args: Value) -> CommandEcho {
    let args = match args {
        Value::Object(map) => map.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Map::new(),
    };
    CommandEcho { verb: verb.to_string(), args }
}

fn group_spec(g: &GroupArgs) -> Result<GroupSpec> {
    let spec = match g.group {
        GroupArg::Sp => {
            if g.p.is_some() || g.q.is_some() {
                bail!("--p/--q apply to --group so only");
            }
            GroupSpec::sp(g.n.context("--group sp needs --n")?)?
        }
        GroupArg::So => {
            if g.n.is_some() {
                bail!("--n applies to --group sp only");
            }
            GroupSpec::so(g.p.context("--group so needs --p")?, g.q.context("--group so needs --q")?)?
        }
    };
    Ok(spec)
}

fn group_echo(g: &GroupArgs, k: Option<usize>) -> Value {
    let group = match g.group {
        GroupArg::Sp => "sp",
        GroupArg::So => "so",
    };
    json!({ "group": group, "n": g.n, "p": g.p, "q": g.q, "k": k })
}

fn check_size(spec: &GroupSpec, k: usize) -> Result<()> {
    let fits = spec.dim_v().checked_pow(k as u32).is_some_and(|d| d <= MAX_TENSOR_DIM);
    if !fits {
        bail!("dim(V)^k = {}^{k} exceeds the supported size {MAX_TENSOR_DIM}", spec.dim_v());
    }
    Ok(())
}

fn spec_key(spec: &GroupSpec) -> String {
    format!("{}-n{}-p{}-q{}", serde_json::to_value(spec.family).unwrap().as_str().unwrap(), spec.n, spec.p, spec.q)
}

fn diagram_arg(text: &str, km: KM, name: &str) -> Result<LabeledDiagram> {
    parse_diagram(text, km.k, km.m).with_context(|| format!("--{name} {text:?}"))
}

/// Validates flags and builds a plan. Every error here is a usage error.
pub fn plan(command: &Command) -> Result<Plan> {
    let (verb, args, job, cache_key) = match command {
        Command::Diagrams(DiagramsCmd::Count(km)) => {
            ("diagrams count", json!({"k": km.k, "m": km.m}), Job::Count(*km), None)
        }
        Command::Diagrams(DiagramsCmd::Enumerate(km)) => {
            if count_diagrams(km.k, km.m) > MAX_ENUMERATION {
                bail!("enumeration of Br_{{{},{}}} exceeds {MAX_ENUMERATION} diagrams", km.k, km.m);
            }
            ("diagrams enumerate", json!({"k": km.k, "m": km.m}), Job::Enumerate(*km), None)
        }
        Command::Diagrams(DiagramsCmd::Compose(b)) | Command::Algebra(AlgebraCmd::Mul(b)) => {
            let Binary { km, a, b: bb } = b;
            let (da, db) = (diagram_arg(a, *km, "a")?, diagram_arg(bb, *km, "b")?);
            let args = json!({"k": km.k, "m": km.m, "a": da.to_string(), "b": db.to_string()});
            if matches!(command, Command::Diagrams(_)) {
                ("diagrams compose", args, Job::Compose(da, db), None)
            } else {
                ("algebra mul", args, Job::Mul(da, db), None)
            }
        }
        Command::Algebra(AlgebraCmd::Verify(km)) => {
            if km.k > 5 {
                bail!("algebra verify supports k ≤ 5");
            }
            let key = format!("algebra-verify-k{}-m{}", km.k, km.m);
            ("algebra verify", json!({"k": km.k, "m": km.m}), Job::Verify(*km), Some(key))
        }
        Command::Algebra(AlgebraCmd::Walled(w)) => {
            if w.s + w.t > 6 {
                bail!("algebra walled supports s + t ≤ 6");
            }
            if let Some(n) = w.n {
                if n == 0 || n.checked_pow((w.s + w.t) as u32).is_none_or(|d| d > MAX_TENSOR_DIM) {
                    bail!("--n {n} with s + t = {} is outside the supported size", w.s + w.t);
                }
            }
            let key = format!("algebra-walled-s{}-t{}-n{}", w.s, w.t, w.n.unwrap_or(0));
            let job = Job::Walled { s: w.s, t: w.t, n: w.n };
            ("algebra walled", json!({"s": w.s, "t": w.t, "n": w.n}), job, Some(key))
        }
        Command::Rep(rep) => plan_rep(rep)?,
        Command::Accept(a) => {
            let p = a.profile.or(a.profile_flag).unwrap_or(ProfileArg::Small);
            let profile = match p {
                ProfileArg::Small => Profile::Small,
                ProfileArg::Full => Profile::Full,
            };
            let key = format!("accept-{profile}");
            ("accept", json!({"profile": profile.to_string()}), Job::Accept(profile), Some(key))
        }
    };
    Ok(Plan {
        echo: echo(verb, args),
        cache_key: cache_key.map(|k| format!("{k}-v{}", crate::cache::ARTIFACT_VERSION)),
        job,
    })
}

fn plan_rep(rep: &RepCmd) -> Result<(&'static str, Value, Job, Option<String>)> {
    Ok(match rep {
        RepCmd::Context(g) => {
            let spec = group_spec(g)?;
            ("rep context", group_echo(g, None), Job::Context(spec), None)
        }
        RepCmd::Deltas(g) => {
            let spec = group_spec(g)?;
            ("rep deltas", group_echo(g, None), Job::Deltas(spec), None)
        }
        RepCmd::PhiRank(gk) | RepCmd::Commutant(gk) | RepCmd::Ktypes(gk) => {
            let spec = group_spec(&gk.group)?;
            check_size(&spec, gk.k)?;
            let (verb, job, slug) = match rep {
                RepCmd::PhiRank(_) => ("rep phi-rank", Job::PhiRank(spec, gk.k), "phi-rank"),
                RepCmd::Commutant(_) => ("rep commutant", Job::Commutant(spec, gk.k), "commutant"),
                _ => ("rep ktypes", Job::Ktypes(spec, gk.k), "ktypes"),
            };
            let key = format!("rep-{slug}-{}-k{}", spec_key(&spec), gk.k);
            (verb, group_echo(&gk.group, Some(gk.k)), job, Some(key))
        }
        RepCmd::Decompose(d) => {
            let spec = GroupSpec::sp(d.n)?;
            check_size(&spec, d.k)?;
            let key = format!("rep-decompose-{}-k{}", spec_key(&spec), d.k);
            ("rep decompose", json!({"n": d.n, "k": d.k}), Job::Decompose(spec, d.k), Some(key))
        }
        RepCmd::Identity(k) => {
            if k.k > MAX_IDENTITY_K {
                bail!("rep identity supports k ≤ {MAX_IDENTITY_K}");
            }
            ("rep identity", json!({"k": k.k}), Job::Identity(k.k), None)
        }
    })
}

fn context(spec: GroupSpec) -> Result<GroupContext> {
    Ok(GroupContext::new(spec)?)
}

fn poly_json(p: &DeltaPoly) -> String {
    p.to_string()
}

fn element_json(x: &AlgebraElement) -> Value {
    let terms: Vec<Value> =
        x.terms().iter().map(|(d, c)| json!({"diagram": d.to_string(), "coeff": poly_json(c)})).collect();
    json!({"k": x.k(), "m": x.m(), "terms": terms, "text": x.to_string()})
}

/// Runs a plan. Errors here come from invalid input discovered during the
/// computation. The second value holds per-row timings for the acceptance
/// table.
pub fn execute(plan: &Plan) -> Result<(Outcome, Option<Value>)> {
    if let Job::Accept(profile) = &plan.job {
        let report = acceptance_suite(*profile);
        let rows: Map<String, Value> = report
            .rows
            .iter()
            .map(|r| (r.id.to_string(), json!({"elapsed_ms": r.elapsed_ms, "budget_ms": r.budget_ms})))
            .collect();
        return Ok((accept_outcome(&report)?, Some(Value::Object(rows))));
    }
    Ok((execute_job(&plan.job)?, None))
}

fn execute_job(job: &Job) -> Result<Outcome> {
    Ok(match job {
        Job::Count(km) => Outcome::computed(json!({"count": count_diagrams(km.k, km.m) as u64})),
        Job::Enumerate(km) => {
            let list: Vec<String> = enumerate_diagrams(km.k, km.m).iter().map(ToString::to_string).collect();
            Outcome::computed(json!({"count": list.len(), "diagrams": list}))
        }
        Job::Compose(a, b) => {
            let r = compose(a, b)?;
            Outcome::computed(json!({"diagram": r.diagram.to_string(), "loops": r.loops}))
        }
        Job::Mul(a, b) => {
            let product = AlgebraElement::from_diagram(a.clone()).mul(&AlgebraElement::from_diagram(b.clone()))?;
            Outcome::computed(json!({"product": element_json(&product)}))
        }
        Job::Verify(km) => {
            let reports = verify_presentation(km.k, km.m);
            let first = reports.iter().find(|r| !r.passed()).map(|r| r.relation_id.clone());
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "relation": r.relation_id,
                        "instances": r.instances_checked,
                        "failures": r.failures.len(),
                        "first_failing_instance": r.failures.first().map(|f| f.instance.clone()),
                    })
                })
                .collect();
            let total: usize = reports.iter().map(|r| r.instances_checked).sum();
            let payload = json!({"k": km.k, "m": km.m, "instances": total, "relations": rows});
            Outcome::check(first.is_none(), first.as_deref().unwrap_or(""), payload)
        }
        Job::Walled { s, t, n } => {
            let count = walled_basis(*s, *t).len();
            let expected: usize = (1..=s + t).product();
            let closed = walled_closure_holds(*s, *t);
            let mut payload = json!({"basis_size": count, "expected": expected, "closed": closed});
            let mut first = None;
            if count != expected {
                first = Some("basis_size");
            } else if !closed {
                first = Some("closed");
            }
            if let Some(n) = n {
                let rep = walled_centralizer_check(*n, *s, *t)?;
                payload["centralizer"] = serde_json::to_value(&rep)?;
                if !rep.equal && first.is_none() {
                    first = Some("centralizer");
                }
            }
            Outcome::check(first.is_none(), first.unwrap_or(""), payload)
        }
        Job::Context(spec) => {
            let ctx = context(*spec)?;
            Outcome::computed(json!({
                "group": spec.to_string(),
                "dim_v": ctx.dim_v(),
                "compact_dim": spec.k_dim(),
                "rank": spec.rank(),
                "invariants": "checked",
            }))
        }
        Job::Deltas(spec) => {
            let ctx = context(*spec)?;
            let d = measure_deltas(&ctx)?;
            let (s0, s1) = stated_deltas(spec);
            Outcome::computed(json!({
                "group": spec.to_string(),
                "measured": d.to_json(),
                "stated": {"delta0": s0.to_string(), "delta1": s1.to_string()},
            }))
        }
        Job::PhiRank(spec, k) => {
            let rep = phi_faithful(&context(*spec)?, *k)?;
            let payload = json!({"rank": rep.rank, "expected": rep.expected as u64, "injective": rep.injective});
            Outcome::check(rep.injective, "injective", payload)
        }
        Job::Commutant(spec, k) => {
            let rep = commutant_check(&context(*spec)?, *k)?;
            Outcome::check(rep.equal, "equal", serde_json::to_value(&rep)?)
        }
        Job::Decompose(spec, k) => {
            let rep = decompose_sp_in(&context(*spec)?, *k)?;
            let sectors: Vec<Value> = rep
                .sectors
                .iter()
                .map(|s| json!({"s": s.s, "block_dim": s.block_dim, "expected": s.expected as u64, "multiplicity": s.multiplicity as u64}))
                .collect();
            let first = if !rep.off_block_zero { "off_block_zero" } else { "sector_dims" };
            let payload = json!({
                "k": rep.k,
                "off_block_zero": rep.off_block_zero,
                "block_dims": rep.block_dims(),
                "sectors": sectors,
                "total_dim": rep.total_dim,
            });
            Outcome::check(rep.matches_expected(), first, payload)
        }
        Job::Ktypes(spec, k) => {
            let rep = count_ktypes_report(&context(*spec)?, *k)?;
            let bip = count_bipartitions(*k) as u64;
            let payload = json!({"ktypes": rep.count, "bipartitions": bip, "method": rep.method});
            Outcome::check(rep.count as u64 == bip, "ktypes_equal_bipartitions", payload)
        }
        Job::Identity(k) => {
            let so = so_dimension_identity(*k);
            let (lhs, rhs) = sector_identity(*k);
            let payload = json!({
                "so_dimension": {"lhs": so.lhs as u64, "rhs": so.rhs as u64, "equal": so.equal},
                "sp_sectors": {"lhs": lhs as u64, "rhs": rhs as u64, "equal": lhs == rhs},
            });
            let first = if !so.equal { "so_dimension" } else { "sp_sectors" };
            Outcome::check(so.equal && lhs == rhs, first, payload)
        }
        Job::Accept(_) => unreachable!("handled in execute"),
    })
}

fn accept_outcome(report: &AcceptanceReport) -> Result<Outcome> {
    let first = report
        .rows
        .iter()
        .find(|r| !r.passed())
        .map(|r| format!("criterion {}: {}", r.id, r.first_failure.clone().unwrap_or_default()));
    let payload = serde_json::to_value(report)?;
    Ok(Outcome::check(first.is_none(), first.as_deref().unwrap_or(""), payload))
}

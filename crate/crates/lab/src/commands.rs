//! Command implementations. Each returns an [`Outcome`] holding both
//! renderings; printing and timing belong to the binary.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use schanuel_core::extstruct::{ext_class_of, is_injective, is_split};
use schanuel_core::quivalg::simple_module;
use schanuel_core::repcat::Representation;
use schanuel_core::resolve::{
    global_dimension, injective_dimension, injective_envelope, verify_schanuel, CrossCheck, DimensionKind,
    DimensionVerdict,
};
use schanuel_core::suites::{run_trial, schanuel_case, Suite, SuiteConfig, SuiteSummary};
use schanuel_core::{Error, Report, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::instance::InstanceFile;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Pass = 0,
    Internal = 1,
    Hypothesis = 2,
    Inconclusive = 3,
    Parse = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// A failing check is a violated claim; inconclusive checks keep
    /// their own code.
    pub fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Exit::Pass,
            Verdict::Inconclusive => Exit::Inconclusive,
            Verdict::Fail => Exit::Hypothesis,
        }
    }

    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::HypothesisViolated(_) => Exit::Hypothesis,
            _ => Exit::Internal,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: Exit,
    pub human: String,
    pub json: Value,
}

impl Outcome {
    /// Failure before any report exists.
    pub fn error(exit: Exit, command: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        Outcome {
            exit,
            human: format!("error: {message}\n"),
            json: json!({"command": command, "exit": exit.code(), "error": message}),
        }
    }
}

fn dims(m: &Representation) -> String {
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

fn render_report(out: &mut String, r: &Report) {
    for c in &r.checks {
        let _ = write!(out, "  [{:<12}] {}", c.verdict.as_str(), c.name);
        if !c.detail.is_empty() {
            let _ = write!(out, ": {}", c.detail);
        }
        out.push('\n');
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn kind_json(k: DimensionKind) -> Value {
    match k {
        DimensionKind::Finite(n) => json!({"kind": "finite", "value": n}),
        DimensionKind::AtLeast(n) => json!({"kind": "at_least", "value": n}),
    }
}

fn kind_text(v: &DimensionVerdict) -> String {
    let mut s = match v.kind {
        DimensionKind::Finite(n) => format!("= {n}"),
        DimensionKind::AtLeast(n) => format!("≥ {n}"),
    };
    if let Some((i, j)) = v.periodic {
        let _ = write!(s, ", periodic-infinite: G{} ≅ G{}", superscript(i), superscript(j));
    }
    s
}

fn verdict_json(v: &DimensionVerdict) -> Value {
    json!({
        "verdict": kind_json(v.kind),
        "periodic": v.periodic.map(|(i, j)| vec![i, j]),
        "provably_infinite": v.is_provably_infinite(),
        "witness_dims": v.witness.dims(),
    })
}

/// Validates an instance and summarizes its contents.
pub fn cmd_check(inst: &InstanceFile) -> Outcome {
    let alg = &inst.algebra;
    let mut report = Report::new("check");
    report.check("instance valid", true, format!("algebra of dimension {}", alg.dim()));
    let mut human = String::new();
    let _ = writeln!(
        human,
        "instance {}\nalgebra over F_{}: {} vertices, {} arrows, dimension {}",
        &inst.hash()[..16],
        alg.prime(),
        alg.vertex_count(),
        alg.quiver().arrows().len(),
        alg.dim()
    );
    let _ = writeln!(human, "basis: {}", alg.basis_names().join(" "));
    let mut modules = Vec::new();
    for (name, m) in &inst.modules {
        let inj = is_injective(m);
        let _ = writeln!(human, "module {name}: dims {}{}", dims(m), if inj { ", injective" } else { "" });
        modules.push(json!({"name": name, "dims": m.dims(), "injective": inj}));
    }
    let mut conflations = Vec::new();
    for c in &inst.conflations {
        match ext_class_of(&c.conflation) {
            Ok(class) => {
                let split = is_split(&c.conflation).is_some();
                report.check(
                    &format!("conflation {} splits iff its class vanishes", c.name),
                    split == class.is_zero(),
                    "",
                );
                let _ = writeln!(
                    human,
                    "conflation {}: {} ↣ {} ↠ {}, class {:?} in E of dimension {}{}",
                    c.name,
                    c.a,
                    c.b,
                    c.c,
                    class.coords(),
                    class.space().dim(),
                    if split { ", split" } else { "" }
                );
                conflations.push(json!({
                    "name": c.name, "ext_dim": class.space().dim(), "class": class.coords(), "split": split,
                }));
            }
            Err(e) => {
                report.check(&format!("conflation {} has a class", c.name), false, e.to_string());
            }
        }
    }
    render_report(&mut human, &report);
    let exit = Exit::from_verdict(report.verdict());
    let json = json!({
        "command": "check",
        "instance_hash": inst.hash(),
        "algebra": {
            "field_p": alg.prime().get(),
            "vertices": alg.vertex_count(),
            "arrows": alg.quiver().arrows().len(),
            "dim": alg.dim(),
            "basis": alg.basis_names(),
        },
        "modules": modules,
        "conflations": conflations,
        "report": report,
        "exit": exit.code(),
    });
    Outcome { exit, human, json }
}

#[derive(Debug, Clone, Serialize)]
struct ResolutionRow {
    n: usize,
    cosyzygy: Vec<usize>,
    cosyzygy_injective: bool,
    injective: Vec<usize>,
}

/// The canonical resolution up to `depth`, stopping once a cosyzygy
/// vanishes.
pub fn cmd_resolve(inst: &InstanceFile, module: &str, depth: usize) -> Outcome {
    let Some(m) = inst.resolve_module(module) else {
        return Outcome::error(Exit::Parse, "resolve", format!("unknown module `{module}`"));
    };
    match resolve_table(inst, module, &m, depth) {
        Ok(o) => o,
        Err(e) => Outcome::error(Exit::from_error(&e), "resolve", e.to_string()),
    }
}

fn resolve_table(inst: &InstanceFile, module: &str, m: &Representation, depth: usize) -> Result<Outcome, Error> {
    let mut rows = Vec::new();
    let mut terminated_at = None;
    let mut g = m.clone();
    for n in 0..=depth {
        if g.is_zero() {
            terminated_at = Some(n);
            break;
        }
        let env = injective_envelope(&g)?;
        rows.push(ResolutionRow {
            n,
            cosyzygy: g.dims().to_vec(),
            cosyzygy_injective: is_injective(&g),
            injective: env.b().dims().to_vec(),
        });
        g = env.c().clone();
    }
    if terminated_at.is_none() && g.is_zero() {
        terminated_at = Some(depth + 1);
    }
    let idim = injective_dimension(m, depth)?;

    let mut human = String::new();
    let _ = writeln!(human, "injective resolution of {module} {} up to depth {depth}", dims(m));
    let _ = writeln!(human, "{:>3}  {:<16} {:<10} Iⁿ", "n", "Gⁿ", "injective");
    for r in &rows {
        let fmt = |d: &[usize]| format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let _ = writeln!(
            human,
            "{:>3}  {:<16} {:<10} I{}={}",
            r.n,
            fmt(&r.cosyzygy),
            if r.cosyzygy_injective { "yes" } else { "no" },
            superscript(r.n),
            fmt(&r.injective)
        );
    }
    if let Some(t) = terminated_at {
        let _ = writeln!(human, "     I{}=0: the resolution terminates", superscript(t));
    }
    if let Some((i, j)) = idim.periodic {
        let _ = writeln!(human, "     periodic: G{} ≅ G{}", superscript(i), superscript(j));
    }
    let _ = writeln!(human, "injective dimension {}", kind_text(&idim));
    let json = json!({
        "command": "resolve",
        "instance_hash": inst.hash(),
        "module": module,
        "depth": depth,
        "rows": rows,
        "terminated_at": terminated_at,
        "periodic": idim.periodic.map(|(i, j)| vec![i, j]),
        "injective_dimension": verdict_json(&idim),
        "exit": 0,
    });
    Ok(Outcome { exit: Exit::Pass, human, json })
}

/// Injective dimension of one module, or the global dimension when no
/// module is named.
pub fn cmd_idim(inst: &InstanceFile, module: Option<&str>, max_depth: usize) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let mut human = String::new();
        let json = match module {
            Some(name) => {
                let Some(m) = inst.resolve_module(name) else {
                    return Ok(Outcome::error(Exit::Parse, "idim", format!("unknown module `{name}`")));
                };
                let v = injective_dimension(&m, max_depth)?;
                let _ = writeln!(human, "idim {name} {}", kind_text(&v));
                let _ = writeln!(human, "witness cosyzygy dims {}", dims(&v.witness));
                json!({
                    "command": "idim",
                    "instance_hash": inst.hash(),
                    "module": name,
                    "max_depth": max_depth,
                    "result": verdict_json(&v),
                    "exit": 0,
                })
            }
            None => {
                let mut simples = Vec::new();
                for i in 0..inst.algebra.vertex_count() {
                    let v = injective_dimension(&simple_module(&inst.algebra, i)?, max_depth)?;
                    let _ = writeln!(human, "idim S{} {}", i + 1, kind_text(&v));
                    simples.push(json!({"module": format!("S{}", i + 1), "result": verdict_json(&v)}));
                }
                let g = global_dimension(&inst.algebra, max_depth)?;
                let _ = writeln!(human, "global dimension {}", kind_text(&g));
                json!({
                    "command": "idim",
                    "instance_hash": inst.hash(),
                    "module": null,
                    "max_depth": max_depth,
                    "simples": simples,
                    "result": verdict_json(&g),
                    "exit": 0,
                })
            }
        };
        Ok(Outcome { exit: Exit::Pass, human, json })
    };
    run().unwrap_or_else(|e| Outcome::error(Exit::from_error(&e), "idim", e.to_string()))
}

/// `I ⊕ F' ≅ I' ⊕ F` for two named conflations.
pub fn cmd_schanuel(inst: &InstanceFile, first: &str, second: &str, seed: u64, trials: usize) -> Outcome {
    let (Some(c1), Some(c2)) = (inst.conflation(first), inst.conflation(second)) else {
        let missing = if inst.conflation(first).is_none() { first } else { second };
        return Outcome::error(Exit::Parse, "schanuel", format!("unknown conflation `{missing}`"));
    };
    let w = match verify_schanuel(&c1.conflation, &c2.conflation, Some(CrossCheck { seed, trials })) {
        Ok(w) => w,
        Err(e) => return Outcome::error(Exit::from_error(&e), "schanuel", e.to_string()),
    };
    let mut human = String::new();
    let _ = writeln!(human, "{first}: {} ↣ {} ↠ {}\n{second}: {} ↣ {} ↠ {}", c1.a, c1.b, c1.c, c2.a, c2.b, c2.c);
    let _ = writeln!(human, "{} ⊕ {} {} ≅ {} ⊕ {} {}", c1.b, c2.c, dims(&w.lhs.total), c2.b, c1.c, dims(&w.rhs.total));
    render_report(&mut human, &w.report);
    if w.report.passed() {
        for (v, m) in w.iso.vertex_maps().iter().enumerate() {
            let _ = writeln!(human, "  iso at vertex {}: {m:?}", v + 1);
        }
    }
    let exit = Exit::from_verdict(w.report.verdict());
    let json = json!({
        "command": "schanuel",
        "instance_hash": inst.hash(),
        "first": first,
        "second": second,
        "seed": seed,
        "lhs_dims": w.lhs.total.dims(),
        "rhs_dims": w.rhs.total.dims(),
        "report": w.report,
        "exit": exit.code(),
    });
    Outcome { exit, human, json }
}

#[derive(Debug, Clone)]
pub struct PropArgs {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub max_inconclusive: usize,
}

/// Runs a randomized suite in parallel. On an instance the suite uses its
/// algebra, and the schanuel suite also checks every pair of instance
/// conflations with a common first object.
pub fn cmd_prop(inst: Option<&InstanceFile>, args: &PropArgs) -> Outcome {
    if args.trials == 0 {
        return Outcome::error(Exit::Parse, "prop", "trials must be at least 1");
    }
    let cfg =
        SuiteConfig { algebra: inst.map(|i| Arc::clone(&i.algebra)), max_dim: args.max_dim, ..SuiteConfig::default() };
    let outcomes = (0..args.trials).into_par_iter().map(|i| run_trial(args.suite, &cfg, args.seed, i)).collect();
    let summary = SuiteSummary::from_trials(args.suite, args.seed, outcomes);

    let mut fixed = Vec::new();
    if let (Some(inst), Suite::Schanuel) = (inst, args.suite) {
        for (k, c1) in inst.conflations.iter().enumerate() {
            for c2 in &inst.conflations[k..] {
                if c1.a == c2.a {
                    let r = schanuel_case(&c1.conflation, &c2.conflation, args.seed);
                    fixed.push((format!("{} / {}", c1.name, c2.name), r));
                }
            }
        }
    }

    let pass = summary.count(Verdict::Pass) + fixed.iter().filter(|(_, r)| r.passed()).count();
    let fail = summary.count(Verdict::Fail) + fixed.iter().filter(|(_, r)| r.verdict() == Verdict::Fail).count();
    let inconclusive = summary.count(Verdict::Inconclusive)
        + fixed.iter().filter(|(_, r)| r.verdict() == Verdict::Inconclusive).count();
    let exit = if fail > 0 {
        Exit::Hypothesis
    } else if inconclusive > args.max_inconclusive {
        Exit::Inconclusive
    } else {
        Exit::Pass
    };

    let hash = inst.map(|i| i.hash());
    let mut human = String::new();
    let _ = writeln!(
        human,
        "suite {} seed {} trials {} max-dim {}{}",
        args.suite.name(),
        args.seed,
        args.trials,
        args.max_dim,
        hash.as_deref().map(|h| format!(" instance {}", &h[..16])).unwrap_or_default()
    );
    for t in &summary.trials {
        if t.verdict != Verdict::Pass {
            let _ = writeln!(human, "trial {} (seed {}): {}: {}", t.index, t.seed, t.verdict.as_str(), t.summary);
            render_report(&mut human, &t.report);
        }
    }
    for (name, r) in &fixed {
        let _ = writeln!(human, "fixed case {name}: {}", r.verdict().as_str());
        if !r.passed() {
            render_report(&mut human, r);
        }
    }
    let _ =
        writeln!(human, "pass {pass}  fail {fail}  inconclusive {inconclusive} (ceiling {})", args.max_inconclusive);

    let trials: Vec<Value> = summary
        .trials
        .iter()
        .map(|t| {
            let mut v = json!({"index": t.index, "seed": t.seed, "verdict": t.verdict, "summary": t.summary});
            if t.verdict != Verdict::Pass {
                v["report"] = serde_json::to_value(&t.report).expect("report serializes");
            }
            v
        })
        .collect();
    let fixed_json: Vec<Value> =
        fixed.iter().map(|(name, r)| json!({"name": name, "verdict": r.verdict(), "report": r})).collect();
    let json = json!({
        "command": "prop",
        "suite": args.suite.name(),
        "seed": args.seed,
        "trials": args.trials,
        "max_dim": args.max_dim,
        "instance_hash": hash,
        "counts": {"pass": pass, "fail": fail, "inconclusive": inconclusive},
        "max_inconclusive": args.max_inconclusive,
        "results": trials,
        "fixed_cases": fixed_json,
        "exit": exit.code(),
    });
    Outcome { exit, human, json }
}

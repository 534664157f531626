use std::path::Path;

use heyting::coding::{godel_decode, godel_decode_term, tag_table, tag_table_text, Godel};
use heyting::kripke::{forces, model_from_toml, model_to_toml, validate_model, KripkeModel};
use heyting::machine::{assemble, execute_program, Execution, Program};
use heyting::proofkit::{
    check_proof, compose_mp, parse_proof, print_proof, proof_code, AxiomRecognizer, ProofObject,
    Theory,
};
use heyting::realize::{bounded_check_realizes, r_translate, Verdict};
use heyting::syntax::{classify, parse_formula, parse_term, Formula};
use heyting::transform::{
    binary_unravel, cone_check, glue_root, pad_leaves, unravel_to_tree, BinaryString, DirectForcing,
};
use heyting::BigUint;
use serde_json::{json, Value};

use crate::report::{bad, InputError, Report, RunManifest};
use crate::{
    Command, EncodeArgs, KripkeCommand, MachineCommand, ProofCommand, RealizeCommand,
    TransformCommand,
};

type Outcome = Result<Report, InputError>;

pub fn run(cmd: &Command, mf: &mut RunManifest) -> Outcome {
    match cmd {
        Command::Parse { text, term } => parse(text, *term, mf),
        Command::Classify { formula } => classify_cmd(formula, mf),
        Command::Encode(args) => encode(args, mf),
        Command::Machine(MachineCommand::Run {
            program,
            input,
            fuel,
            trace,
        }) => machine_run(program, *input, *fuel, *trace, mf),
        Command::Realize(RealizeCommand::Translate { formula, var }) => translate(formula, var, mf),
        Command::Realize(RealizeCommand::Check {
            realizer,
            program,
            formula,
            fuel,
            bound,
        }) => realize_check(
            realizer.as_deref(),
            program.as_deref(),
            formula,
            *fuel,
            *bound,
            mf,
        ),
        Command::Kripke(KripkeCommand::Validate { model }) => validate(model, mf),
        Command::Kripke(KripkeCommand::Force {
            model,
            node,
            formula,
        }) => force(model, node, formula, mf),
        Command::Transform(TransformCommand::Unravel { model }) => {
            let m = load(model, mf)?;
            let t = unravel_to_tree(&m).map_err(bad)?;
            Ok(model_report("unraveled", &t.model))
        }
        Command::Transform(TransformCommand::Pad { model }) => {
            let m = load(model, mf)?;
            if !m.is_tree() {
                return Err(InputError(format!(
                    "{}: padding needs a tree; run `transform unravel` first",
                    model.display()
                )));
            }
            Ok(model_report("padded", &pad_leaves(&m)))
        }
        Command::Transform(TransformCommand::Binary {
            model,
            eval,
            formula,
        }) => binary(model, eval, formula.as_deref(), mf),
        Command::Transform(TransformCommand::Cone { model, node, depth }) => {
            cone(model, node, *depth, mf)
        }
        Command::Transform(TransformCommand::Glue { roots, structure }) => {
            glue(roots, structure, mf)
        }
        Command::Proof(ProofCommand::Check {
            file,
            theory,
            extra,
        }) => proof_check(file, theory, extra.as_deref(), mf),
        Command::Proof(ProofCommand::Encode { file }) => {
            let p = load_proof(file, mf)?;
            let code = proof_code(&p);
            Ok(Report::ok(
                format!("code of {} lines", p.lines.len()),
                code.to_string(),
                json!({"lines": p.lines.len(), "code": code.to_string()}),
            ))
        }
        Command::Proof(ProofCommand::Compose { first, second }) => {
            let p = load_proof(first, mf)?;
            let q = load_proof(second, mf)?;
            let r = compose_mp(&p, &q).map_err(bad)?;
            let text = print_proof(&r);
            Ok(Report::ok(
                format!("composed proof of {} lines", r.lines.len()),
                text.clone(),
                json!({"lines": r.lines.len(), "proof": text}),
            ))
        }
    }
}

fn formula(text: &str) -> Result<Formula, InputError> {
    parse_formula(text).map_err(bad)
}

fn parse(text: &str, term: bool, mf: &mut RunManifest) -> Outcome {
    mf.param("text", text);
    mf.param("term", term);
    let printed = if term {
        parse_term(text).map_err(bad)?.to_string()
    } else {
        formula(text)?.to_string()
    };
    Ok(Report::ok(
        printed.clone(),
        printed.clone(),
        json!({"canonical": printed}),
    ))
}

fn classify_cmd(text: &str, mf: &mut RunManifest) -> Outcome {
    mf.param("formula", text);
    let phi = formula(text)?;
    let c = classify(&phi);
    let classes = [
        ("atomic", c.is_atomic),
        ("quantifier-free", c.is_quantifier_free),
        ("almost negative", c.is_almost_negative),
        ("sigma1", c.is_sigma1),
        ("pi1", c.is_pi1),
        ("pi2", c.is_pi2),
    ];
    let text: String = classes
        .iter()
        .map(|(name, v)| format!("{name}: {}\n", if *v { "yes" } else { "no" }))
        .collect();
    let member: Vec<&str> = classes
        .iter()
        .filter(|(_, v)| *v)
        .map(|(n, _)| *n)
        .collect();
    let summary = if member.is_empty() {
        "no listed class".to_string()
    } else {
        member.join(", ")
    };
    let data: serde_json::Map<String, Value> = classes
        .iter()
        .map(|(n, v)| (n.replace([' ', '-'], "_"), json!(v)))
        .collect();
    Ok(Report::ok(
        summary,
        text,
        json!({"formula": phi.to_string(), "classes": data}),
    ))
}

fn number(text: &str) -> Result<BigUint, InputError> {
    text.trim()
        .parse()
        .map_err(|_| InputError(format!("`{text}` is not a natural number")))
}

fn encode(args: &EncodeArgs, mf: &mut RunManifest) -> Outcome {
    if args.dump_tags {
        mf.param("dump_tags", true);
        let rows: Vec<Value> = tag_table()
            .iter()
            .map(|(tag, sym, meaning)| json!({"tag": tag, "symbol": sym, "meaning": meaning}))
            .collect();
        return Ok(Report::ok(
            "tag table",
            tag_table_text(),
            json!({"tags": rows}),
        ));
    }
    if let Some(text) = &args.formula {
        mf.param("formula", text);
        let phi = formula(text)?;
        let n = phi.godel_number();
        return Ok(Report::ok(
            format!("{}-digit code", n.to_string().len()),
            n.to_string(),
            json!({"formula": phi.to_string(), "code": n.to_string()}),
        ));
    }
    if let Some(text) = &args.term {
        mf.param("term", text);
        let t = parse_term(text).map_err(bad)?;
        let n = t.godel_number();
        return Ok(Report::ok(
            format!("{}-digit code", n.to_string().len()),
            n.to_string(),
            json!({"term": t.to_string(), "code": n.to_string()}),
        ));
    }
    if let Some(text) = &args.decode {
        mf.param("decode", text);
        let phi = godel_decode(&number(text)?).map_err(bad)?;
        return Ok(Report::ok(
            phi.to_string(),
            phi.to_string(),
            json!({"formula": phi.to_string()}),
        ));
    }
    if let Some(text) = &args.decode_term {
        mf.param("decode_term", text);
        let t = godel_decode_term(&number(text)?).map_err(bad)?;
        return Ok(Report::ok(
            t.to_string(),
            t.to_string(),
            json!({"term": t.to_string()}),
        ));
    }
    unreachable!("clap requires one of the encode options")
}

fn load_program(path: &Path, mf: &mut RunManifest) -> Result<Program, InputError> {
    let text = mf.read(path)?;
    text.parse::<Program>()
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn machine_run(path: &Path, input: u64, fuel: u64, trace: bool, mf: &mut RunManifest) -> Outcome {
    mf.param("input", input);
    mf.param("fuel", fuel);
    mf.param("trace", trace);
    let p = load_program(path, mf)?;
    let code = assemble(&p).map_err(bad)?;
    let mut trace_lines = Vec::new();
    if trace {
        trace_lines = configurations(&p, input, fuel)?;
    }
    match execute_program(&p, &code, &BigUint::from(input), fuel).map_err(bad)? {
        Execution::Halted(c) => {
            let mut text = trace_lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            text += &format!("halted after {} steps\noutput {}", c.steps, c.output);
            Ok(Report::ok(
                format!("output {}", c.output),
                text,
                json!({"halted": true, "steps": c.steps, "output": c.output, "trace": trace_lines}),
            ))
        }
        Execution::OutOfFuel => Ok(Report::verdict(
            false,
            format!("no halt within {fuel} steps"),
            format!("no halt within {fuel} steps"),
            json!({"halted": false, "fuel": fuel}),
        )),
    }
}

fn configurations(p: &Program, input: u64, fuel: u64) -> Result<Vec<String>, InputError> {
    use heyting::machine::Configuration;
    let mut c = Configuration::initial(input);
    let mut out = Vec::new();
    for _ in 0..=fuel {
        let regs: Vec<String> = (0..p.registers())
            .map(|r| c.register(r).to_string())
            .collect();
        out.push(format!("pc {} [{}]", c.pc, regs.join(", ")));
        match p.step(&c).map_err(bad)? {
            Some(next) => c = next,
            None => break,
        }
    }
    Ok(out)
}

fn translate(text: &str, var: &str, mf: &mut RunManifest) -> Outcome {
    mf.param("formula", text);
    mf.param("var", var);
    let phi = formula(text)?;
    let t = r_translate(var, &phi).map_err(bad)?;
    Ok(Report::ok(
        t.to_string(),
        t.to_string(),
        json!({"var": var, "formula": phi.to_string(), "translation": t.to_string()}),
    ))
}

fn realize_check(
    realizer: Option<&str>,
    program: Option<&Path>,
    text: &str,
    fuel: u64,
    bound: u64,
    mf: &mut RunManifest,
) -> Outcome {
    mf.param("formula", text);
    mf.param("fuel", fuel);
    mf.param("bound", bound);
    let n = match (realizer, program) {
        (Some(r), _) => {
            mf.param("realizer", r);
            number(r)?
        }
        (None, Some(path)) => assemble(&load_program(path, mf)?).map_err(bad)?,
        (None, None) => unreachable!("clap requires a realizer"),
    };
    let phi = formula(text)?;
    if !phi.free_vars().is_empty() {
        return Err(InputError(format!("`{phi}` has free variables")));
    }
    let verdict = bounded_check_realizes(&n, &phi, fuel, bound);
    let kind = match &verdict {
        Verdict::VerifiedBounded { .. } => "verified",
        Verdict::Refuted(_) => "refuted",
        Verdict::Unknown(_) => "unknown",
    };
    Ok(Report::verdict(
        verdict.is_verified(),
        kind,
        verdict.to_string(),
        json!({"verdict": kind, "detail": verdict.to_string(), "fuel": fuel, "bound": bound}),
    ))
}

fn load(path: &Path, mf: &mut RunManifest) -> Result<KripkeModel, InputError> {
    let text = mf.read(path)?;
    model_from_toml(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn node(m: &KripkeModel, name: &str) -> Result<usize, InputError> {
    m.index(name)
        .ok_or_else(|| InputError(format!("no node named `{name}`")))
}

fn validate(path: &Path, mf: &mut RunManifest) -> Outcome {
    let m = load(path, mf)?;
    let violations: Vec<String> = validate_model(&m).iter().map(|v| v.to_string()).collect();
    let ok = violations.is_empty();
    let summary = if ok {
        format!("valid model with {} nodes", m.len())
    } else {
        format!("{} violations", violations.len())
    };
    let text = if ok {
        summary.clone()
    } else {
        violations.join("\n")
    };
    Ok(Report::verdict(
        ok,
        summary,
        text,
        json!({"nodes": m.len(), "violations": violations}),
    ))
}

fn force(path: &Path, name: &str, text: &str, mf: &mut RunManifest) -> Outcome {
    mf.param("node", name);
    mf.param("formula", text);
    let m = load(path, mf)?;
    let k = node(&m, name)?;
    let phi = m.parse(text).map_err(bad)?;
    let holds = forces(&m, k, &phi).map_err(bad)?;
    let word = if holds { "forced" } else { "not forced" };
    Ok(Report::verdict(
        holds,
        word,
        format!("{name} {} {phi}: {word}", if holds { "⊩" } else { "⊮" }),
        json!({"node": name, "formula": phi.to_string(), "forced": holds}),
    ))
}

fn model_report(what: &str, m: &KripkeModel) -> Report {
    let toml = model_to_toml(m);
    Report::ok(
        format!("{what} model with {} nodes", m.len()),
        toml.clone(),
        json!({"nodes": m.len(), "model": toml}),
    )
}

fn binary_string(text: &str) -> Result<BinaryString, InputError> {
    text.parse().map_err(|e: String| InputError(e))
}

fn binary(path: &Path, eval: &str, text: Option<&str>, mf: &mut RunManifest) -> Outcome {
    mf.param("eval", eval);
    let m = load(path, mf)?;
    let u = binary_unravel(&m).map_err(bad)?;
    let x = binary_string(eval)?;
    let k = u.f_eval(&x);
    let mut out = format!("f({x}) = {}", m.name(k));
    let mut data = json!({"string": x.to_string(), "node": m.name(k)});
    let Some(text) = text else {
        return Ok(Report::ok(out.clone(), out, data));
    };
    mf.param("formula", text);
    let phi = m.parse(text).map_err(bad)?;
    let holds = DirectForcing::new(&u).forces(&x, &phi).map_err(bad)?;
    let word = if holds { "forced" } else { "not forced" };
    out += &format!("\n{x} {} {phi}: {word}", if holds { "⊩" } else { "⊮" });
    data["formula"] = json!(phi.to_string());
    data["forced"] = json!(holds);
    Ok(Report::verdict(holds, word, out, data))
}

fn cone(path: &Path, node: &str, depth: usize, mf: &mut RunManifest) -> Outcome {
    mf.param("node", node);
    mf.param("depth", depth);
    let m = load(path, mf)?;
    let u = binary_unravel(&m).map_err(bad)?;
    let x = binary_string(node)?;
    let r = cone_check(&u, &x, depth);
    let missing: Vec<&str> = r.missing.iter().map(|&k| m.name(k)).collect();
    let ok = r.cone_subset && r.cone_equal_at_depth;
    let summary = if ok {
        "cone covered".to_string()
    } else if !r.cone_subset {
        "image leaves the cone".to_string()
    } else {
        format!("{} cone nodes missing", missing.len())
    };
    let text = format!(
        "f({x}) = {}\nimages inside the cone: {}\ncone covered within depth {depth}: {}{}",
        m.name(u.f_eval(&x)),
        r.cone_subset,
        r.cone_equal_at_depth,
        if missing.is_empty() {
            String::new()
        } else {
            format!("\nmissing: {}", missing.join(", "))
        }
    );
    Ok(Report::verdict(
        ok,
        summary,
        text,
        json!({"string": x.to_string(), "node": m.name(u.f_eval(&x)), "cone_subset": r.cone_subset,
               "cone_equal_at_depth": r.cone_equal_at_depth, "missing": missing}),
    ))
}

fn glue(roots: &[std::path::PathBuf], structure: &Path, mf: &mut RunManifest) -> Outcome {
    let parts = roots
        .iter()
        .map(|p| load(p, mf))
        .collect::<Result<Vec<_>, _>>()?;
    let s = load(structure, mf)?;
    if s.len() != 1 {
        return Err(InputError(format!(
            "{}: the root structure file must have exactly one node, found {}",
            structure.display(),
            s.len()
        )));
    }
    let m = glue_root(&parts, s.structure(0).clone()).map_err(bad)?;
    Ok(model_report("glued", &m))
}

fn load_proof(path: &Path, mf: &mut RunManifest) -> Result<ProofObject, InputError> {
    let text = mf.read(path)?;
    parse_proof(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn proof_check(path: &Path, theory: &str, extra: Option<&Path>, mf: &mut RunManifest) -> Outcome {
    mf.param("theory", theory);
    let t: Theory = theory.parse().map_err(InputError)?;
    let p = load_proof(path, mf)?;
    let extra = match extra {
        Some(e) => mf
            .read(e)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(formula)
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let rec = match t {
        Theory::Custom => AxiomRecognizer::custom(extra),
        _ => AxiomRecognizer::new(t).with_extra(extra),
    };
    match check_proof(&p, &rec) {
        Ok(()) => {
            let last = p
                .lines
                .last()
                .map(|l| format!("proves {}", l.conclusion()))
                .unwrap_or_default();
            Ok(Report::verdict(
                true,
                "accepted",
                format!("accepted: {} lines\n{last}", p.lines.len()),
                json!({"accepted": true, "lines": p.lines.len(), "theory": theory, "conclusion": p.lines.last().map(|l| l.conclusion().to_string())}),
            ))
        }
        Err(f) => Ok(Report::verdict(
            false,
            f.to_string(),
            format!("rejected: {f}"),
            json!({"accepted": false, "line": f.line + 1, "reason": f.reason, "theory": theory}),
        )),
    }
}

use crate::{Cli, Command, DumpObject, HeckeCmd, Side, SoergelCheck};
use anyhow::{bail, Context};
use endohecke::acceptance::{self, component_types, Params};
use endohecke::blocks::enumerate_blocks;
use endohecke::endoscopy::Endoscopy;
use endohecke::fixtures;
use endohecke::gauge::{gauge_trials, CoverGraph};
use endohecke::hecke::{compare_neutral_block, rank_character, theta_vector, HeckeElt, HeckeH, MonoHecke, NeutralCanonical};
use endohecke::root_datum::{RootDatum, RootDatumJson, TorusCharacter};
use endohecke::soergel::{bott_samelson, extended_ring, split_bs_bs, unit_counit_check, Reflection};
use endohecke::Error;
use serde_json::{json, Value};
use std::sync::Arc;

pub struct Output {
    pub value: Value,
    pub code: u8,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output { value, code: 0 }
    }

    fn checked(value: Value, passed: bool) -> Self {
        Output { value, code: if passed { 0 } else { 2 } }
    }
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BoundExceeded { .. }) => 3,
        _ => 1,
    }
}

fn load_datum(name: &str) -> anyhow::Result<RootDatum> {
    let path = std::path::Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
        let json: RootDatumJson = serde_json::from_str(&text).map_err(Error::from)?;
        return Ok(RootDatum::from_json(&json)?);
    }
    fixtures::by_name(name).with_context(|| format!("{name} is neither a file nor a shipped fixture"))
}

fn endoscopy(cli: &Cli) -> anyhow::Result<Endoscopy> {
    let d = load_datum(cli.datum.as_deref().unwrap_or("sp4"))?;
    let l = match &cli.character {
        Some(s) => s.parse::<TorusCharacter>()?,
        None if cli.datum.is_none() => "1/2,1/2".parse()?,
        None => TorusCharacter::trivial(d.rank()),
    };
    if l.rank() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: l.rank() }.into());
    }
    Ok(Endoscopy::new(Arc::new(d), l)?)
}

fn word_of(e: &Endoscopy, word: &str) -> anyhow::Result<Vec<Reflection>> {
    let sys = e.system();
    Ok(sys.parse_word(word)?.into_iter().map(|i| Reflection::simple(sys, i)).collect())
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    if let Command::VerifyAll = cli.command {
        let report = match cli.datum {
            None => acceptance::run_pinned(cli.seed)?,
            Some(_) => acceptance::run(&[endoscopy(cli)?], &Params::from_bound(cli.bound, cli.seed)),
        };
        for r in &report.results {
            eprintln!("{}", r.line());
        }
        return Ok(Output::checked(serde_json::to_value(&report)?, report.passed()));
    }
    let e = endoscopy(cli)?;
    match &cli.command {
        Command::Endoscope => Ok(Output::ok(endoscope(&e))),
        Command::Blocks => {
            let b = enumerate_blocks(&e, e.character(), cli.bound)?;
            let sizes = b.sizes_by_length(e.ambient());
            let blocks: Vec<Value> = b
                .blocks
                .iter()
                .zip(&sizes)
                .map(|(blk, s)| json!({ "minimal": blk.minimal, "left_char": blk.left_char, "sizes_by_length": s }))
                .collect();
            Ok(Output::ok(json!({ "bound": cli.bound, "count": blocks.len(), "blocks": blocks })))
        }
        Command::Hecke(HeckeCmd::Verify) => {
            let r = compare_neutral_block(&e, cli.bound)?;
            Ok(Output::checked(json!({ "passed": r.passed(), "report": r }), r.passed()))
        }
        Command::Hecke(HeckeCmd::Kl { side }) => kl(&e, *side, cli.bound),
        Command::Hecke(HeckeCmd::Theta { n }) => Ok(Output::ok(thetas(&e, cli.bound, *n)?)),
        Command::Gauge { trials } => {
            let g = CoverGraph::new(e.system(), cli.bound)?;
            let t = gauge_trials(&g, *trials, cli.seed)?;
            let passed = t.passed == t.trials;
            Ok(Output::checked(json!({ "bound": cli.bound, "passed": passed, "trials": t }), passed))
        }
        Command::Soergel { word, check } => soergel(&e, word, *check),
        Command::Dump { object, n, word } => dump(&e, cli, *object, *n, word.as_deref()).map(Output::ok),
        Command::VerifyAll => unreachable!(),
    }
}

fn endoscope(e: &Endoscopy) -> Value {
    let gens: Vec<Value> = e
        .system()
        .generators()
        .iter()
        .map(|g| json!({ "name": g.name, "elem": g.elem, "root": &g.root.root[..e.datum().rank()], "level": g.root.level }))
        .collect();
    let mut warnings = Vec::new();
    if e.is_trivial_group() {
        warnings.push("W̃°_L trivial".to_string());
    }
    json!({
        "character": e.character(),
        "datum": e.h_datum().to_json(),
        "components": component_types(e),
        "simple_system": gens,
        "warnings": warnings,
    })
}

fn kl(e: &Endoscopy, side: Side, bound: usize) -> anyhow::Result<Output> {
    let elems = e.system().elements_up_to(bound);
    let out: Vec<Value> = match side {
        Side::H => {
            let mut h = HeckeH::new(e.system().clone());
            let mut rows = Vec::new();
            for w in &elems {
                let mut polys = Vec::new();
                for x in &elems {
                    if e.system().bruhat_leq(x, w) {
                        polys.push(json!({ "x": x, "p": h.kl_poly(x, w, bound)? }));
                    }
                }
                rows.push(json!({ "w": w, "polynomials": polys }));
            }
            rows
        }
        Side::Mono => {
            let mut nc = NeutralCanonical::new(e.clone());
            elems.iter().map(|w| Ok(json!({ "w": w, "b": nc.kl_basis(w, bound)? }))).collect::<anyhow::Result<_>>()?
        }
    };
    Ok(Output::ok(json!({ "bound": bound, "elements": out })))
}

fn thetas(e: &Endoscopy, bound: usize, n: usize) -> anyhow::Result<Value> {
    let b = enumerate_blocks(e, e.character(), bound.max(1))?;
    let mut out = Vec::new();
    for blk in &b.blocks {
        let Some(m) = blk.minimal else { bail!("block of {:?} has no minimal element within the bound", blk.representative) };
        out.push(theta_vector(e, &m, n)?);
    }
    Ok(serde_json::to_value(out)?)
}

fn b_product(e: &Endoscopy, word: &[usize]) -> anyhow::Result<HeckeElt> {
    let h = MonoHecke::from_endoscopy(e);
    let mut x = HeckeElt::unit(*e.character());
    for &i in word {
        x = h.t_mul(&x, &h.b_simple(e, i)?)?;
    }
    Ok(x)
}

fn soergel(e: &Endoscopy, word: &str, check: SoergelCheck) -> anyhow::Result<Output> {
    let d = e.datum();
    let ring = extended_ring(e);
    let refl = word_of(e, word)?;
    let mut out = serde_json::Map::new();
    let mut passed = true;
    if matches!(check, SoergelCheck::All | SoergelCheck::Ranks) {
        let bs = bott_samelson(d, &refl, ring)?;
        let expect = rank_character(e, &b_product(e, &e.system().parse_word(word)?)?)?;
        passed &= bs.graded_rank() == expect;
        out.insert("graded_rank".into(), json!(bs.graded_rank()));
        out.insert("hecke_rank".into(), json!(expect));
    }
    let mut letters: Vec<&Reflection> = Vec::new();
    for r in &refl {
        if !letters.iter().any(|l| l.name == r.name) {
            letters.push(r);
        }
    }
    if matches!(check, SoergelCheck::All | SoergelCheck::Split) {
        let mut v = Vec::new();
        for s in &letters {
            let sp = split_bs_bs(d, s, ring)?;
            let ok = sp.verify();
            passed &= ok;
            v.push(json!({
                "generator": s.name,
                "summand_ranks": [sp.summands[0].graded_rank(), sp.summands[1].graded_rank()],
                "verified": ok,
            }));
        }
        out.insert("splittings".into(), Value::Array(v));
    }
    if matches!(check, SoergelCheck::All | SoergelCheck::Adjunction) {
        let mut v = Vec::new();
        for s in &letters {
            let c = unit_counit_check(d, s, ring)?;
            passed &= c.passed();
            v.push(json!({ "generator": s.name, "passed": c.passed() }));
        }
        out.insert("triangle_identities".into(), Value::Array(v));
    }
    out.insert("passed".into(), json!(passed));
    Ok(Output::checked(Value::Object(out), passed))
}

fn dump(e: &Endoscopy, cli: &Cli, object: DumpObject, n: usize, word: Option<&str>) -> anyhow::Result<Value> {
    let word = word.unwrap_or("");
    Ok(match object {
        DumpObject::Blocks => serde_json::to_value(enumerate_blocks(e, e.character(), cli.bound)?)?,
        DumpObject::Theta => thetas(e, cli.bound, n)?,
        DumpObject::Hecke => serde_json::to_value(b_product(e, &e.system().parse_word(word)?)?)?,
        DumpObject::Bimodule => serde_json::to_value(bott_samelson(e.datum(), &word_of(e, word)?, extended_ring(e))?)?,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let bound: anyhow::Error = Error::BoundExceeded { what: "x".into(), bound: 3 }.into();
        assert_eq!(exit_code(&bound), 3);
        let parse: anyhow::Error = Error::Parse("x".into()).into();
        assert_eq!(exit_code(&parse), 1);
    }
}

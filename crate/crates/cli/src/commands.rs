use mubar_core::dd::{census_degree3, evaluate_w, relation_space_rank, DDDiagram, LinkingClass, OneTermMode, Relation};
use mubar_core::freeword::{decompose_iterated, decompose_to_simple, hall_collect, GroupWord, SimpleCommutatorSpec};
use mubar_core::parse::{parse_events, parse_word};
use mubar_core::singular::{
    clasp_labels, find_type_witness, sample_clasp, sample_dc, type_check_clasp, type_check_dc, ClaspBudget, Counterexample, DcBudget, PairStrands,
    TypeReport,
};
use mubar_core::stringlink::{EventList, MuIndex, StringLinkDiagram};
use serde_json::{json, Value};

use crate::report::{int, matrix, mu_bar, RunReport};
use crate::{Failure, IndexArgs, Output, Pairs};

fn index(a: &IndexArgs) -> Result<MuIndex, Failure> {
    MuIndex::new(a.indices.clone(), a.of).map_err(Failure::usage)
}

fn word(text: &str) -> Result<GroupWord, Failure> {
    Ok(parse_word(text).map_err(|e| Failure::usage(format!("word `{text}`: {e}")))?.eval())
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn events_json(l: &EventList) -> Value {
    Value::Array(l.events().iter().map(|e| json!([int(e.under), int(e.over), int(e.sign.value())])).collect())
}

pub fn mu(args: Vec<String>, text: &str, strands: usize, idx: &IndexArgs, raw: bool) -> Result<Output, Failure> {
    let idx = index(idx)?;
    let link = EventList::compile(&word(text)?, strands).map_err(Failure::usage)?;
    idx.check(strands).map_err(Failure::usage)?;
    let mut report = RunReport::new("mu", args);
    report.result("index", json!(idx.to_string()));
    let text = if raw {
        let v = link.mu(&idx).map_err(Failure::compute)?;
        report.result("mu", int(&v));
        vec![v.to_string()]
    } else {
        let v = link.mu_bar(&idx).map_err(Failure::compute)?;
        report.result("mu_bar", mu_bar(&v));
        vec![v.residue.to_string(), format!("delta {}", v.modulus)]
    };
    Ok(Output { text, report })
}

/// Distinct index sequences of length `2..=max_len` over `1..=k`.
fn sequences(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for s in 1..=k {
            if !cur.contains(&s) {
                cur.push(s);
                go(k, max_len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, max_len, &mut Vec::new(), &mut out);
    out.sort_by_key(Vec::len);
    out
}

pub fn events(args: Vec<String>, path: &str, only: Option<(Vec<usize>, usize)>, max_len: usize) -> Result<Output, Failure> {
    let contents = read(path)?;
    let link = parse_events(&contents).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let mut report = RunReport::new("events", args);
    report.input(path, &contents);
    let lk = link.linking_matrix().map_err(Failure::compute)?;
    let mut text = vec![format!("strands {}  events {}", link.num_strands(), link.len()), "linking matrix".to_string()];
    text.extend(lk.iter().map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")));
    report.result("strands", int(link.num_strands()));
    report.result("events", int(link.len()));
    report.result("linking_matrix", matrix(&lk));
    let indices = match only {
        Some((prefix, target)) => vec![MuIndex::new(prefix, target).map_err(Failure::usage)?],
        None => {
            report.budget("max_len", int(max_len));
            sequences(link.num_strands(), max_len)
                .into_iter()
                .map(|s| MuIndex::from_sequence(&s).expect("distinct by construction"))
                .collect()
        }
    };
    let mut values = Vec::new();
    for idx in indices {
        idx.check(link.num_strands()).map_err(Failure::usage)?;
        let v = link.mu_bar(&idx).map_err(Failure::compute)?;
        text.push(format!("mu_bar({idx}) = {v}"));
        values.push(json!({ "index": idx.to_string(), "mu_bar": mu_bar(&v) }));
    }
    report.result("mu_bar", Value::Array(values));
    Ok(Output { text, report })
}

pub struct TypecheckBudget {
    pub strands: Option<usize>,
    pub max_base_len: usize,
    pub max_unmarked: usize,
    pub pairs: Pairs,
    pub samples: Option<u64>,
    pub seed: u64,
    pub max_counterexamples: usize,
}

enum Theory {
    Clasp(usize),
    Dc,
}

fn theory(s: &str) -> Result<Theory, Failure> {
    match s.split_once(':') {
        None if s == "dc" => Ok(Theory::Dc),
        Some(("clasp", n)) => match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Theory::Clasp(n)),
            _ => Err(Failure::usage(format!("bad clasp level `{n}`"))),
        },
        _ => Err(Failure::usage(format!("unknown theory `{s}` (want clasp:<n> or dc)"))),
    }
}

/// Simple n-commutator labels on every (n+1)-subset of the index components.
fn labels_for(idx: &MuIndex, n: usize) -> Result<Vec<SimpleCommutatorSpec>, Failure> {
    let mut comps = idx.sequence();
    comps.sort();
    if n + 1 > comps.len() {
        return Err(Failure::usage(format!("clasp:{n} needs at least {} components in the index", n + 1)));
    }
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..1 << comps.len() {
        if mask.count_ones() as usize != n + 1 {
            continue;
        }
        let subset: Vec<usize> = (0..comps.len()).filter(|&t| mask & (1 << t) != 0).map(|t| comps[t]).collect();
        for l in clasp_labels(&subset) {
            if seen.insert(l.to_string()) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

fn counterexample_json(c: &Counterexample) -> Value {
    match c {
        Counterexample::Clasp { base, slots, value } => json!({
            "base": base,
            "slots": slots.iter().map(|(p, l)| json!({ "position": int(p), "label": l })).collect::<Vec<_>>(),
            "value": value,
        }),
        Counterexample::Dc { events, pairs, value } => json!({
            "events": events.iter().map(|&(u, o, s)| json!([int(u), int(o), int(s)])).collect::<Vec<_>>(),
            "pairs": pairs.iter().map(|&(a, b)| json!([int(a), int(b)])).collect::<Vec<_>>(),
            "value": value,
        }),
    }
}

fn counterexample_text(c: &Counterexample) -> String {
    match c {
        Counterexample::Clasp { base, slots, value } => {
            let s: Vec<String> = slots.iter().map(|(p, l)| format!("{l}@{p}")).collect();
            format!("  base `{base}` slots {} -> {value}", s.join(" "))
        }
        Counterexample::Dc { events, pairs, value } => {
            let e: Vec<String> = events.iter().map(|(u, o, s)| format!("{u}{o}{}", if *s > 0 { '+' } else { '-' })).collect();
            format!("  events [{}] pairs {pairs:?} -> {value}", e.join(" "))
        }
    }
}

fn type_report(r: &TypeReport, report: &mut RunReport) -> Vec<String> {
    report.result("theory", json!(r.theory));
    report.result("index", json!(r.index));
    report.result("degree", int(r.degree));
    report.result("checked", int(r.checked));
    report.result("all_zero", json!(r.all_zero));
    report.result("counterexamples", Value::Array(r.counterexamples.iter().map(counterexample_json).collect()));
    let mut text = vec![
        format!("theory {}  index {}  degree {}", r.theory, r.index, r.degree),
        format!("checked {}", r.checked),
        format!("all_zero {}", r.all_zero),
    ];
    text.extend(r.counterexamples.iter().map(counterexample_text));
    text
}

fn pair_strands(p: Pairs) -> PairStrands {
    match p {
        Pairs::Any => PairStrands::Any,
        Pairs::Same => PairStrands::SameComponents,
    }
}

pub fn typecheck(args: Vec<String>, theory_text: &str, idx: &IndexArgs, degree: usize, b: &TypecheckBudget) -> Result<Output, Failure> {
    let th = theory(theory_text)?;
    let idx = index(idx)?;
    let k = b.strands.unwrap_or_else(|| idx.sequence().into_iter().max().unwrap_or(0));
    idx.check(k).map_err(Failure::usage)?;
    let mut report = RunReport::new("typecheck", args);
    report.budget("strands", int(k));
    report.budget("max_counterexamples", int(b.max_counterexamples));
    if let Some(s) = b.samples {
        report.budget("samples", int(s));
        report.seed(b.seed);
    }
    let r = match th {
        Theory::Clasp(n) => {
            let labels = labels_for(&idx, n)?;
            report.budget("max_base_len", int(b.max_base_len));
            report.budget("labels", int(labels.len()));
            let budget = ClaspBudget { num_strands: k, max_base_len: b.max_base_len, labels, max_counterexamples: b.max_counterexamples };
            match b.samples {
                Some(s) => sample_clasp(&idx, degree, &budget, s, b.seed),
                None => type_check_clasp(&idx, degree, &budget),
            }
        }
        Theory::Dc => {
            report.budget("max_unmarked", int(b.max_unmarked));
            report.budget("pairs", json!(format!("{:?}", b.pairs).to_lowercase()));
            let budget = DcBudget { num_strands: k, max_unmarked: b.max_unmarked, pair_strands: pair_strands(b.pairs), max_counterexamples: b.max_counterexamples };
            match b.samples {
                Some(s) => sample_dc(&idx, degree, &budget, s, b.seed),
                None => type_check_dc(&idx, degree, &budget),
            }
        }
    }
    .map_err(Failure::compute)?;
    let text = type_report(&r, &mut report);
    Ok(Output { text, report })
}

pub fn witness(args: Vec<String>, theory_text: &str, degree: usize, idx: &IndexArgs, strands: Option<usize>, budget: usize, pairs: Pairs) -> Result<Output, Failure> {
    if !matches!(theory(theory_text)?, Theory::Dc) {
        return Err(Failure::usage("witness search is only implemented for the dc theory"));
    }
    let idx = index(idx)?;
    let k = strands.unwrap_or_else(|| idx.sequence().into_iter().max().unwrap_or(0));
    idx.check(k).map_err(Failure::usage)?;
    let mut report = RunReport::new("witness", args);
    report.budget("strands", int(k));
    report.budget("max_unmarked", int(budget));
    report.budget("pairs", json!(format!("{pairs:?}").to_lowercase()));
    let b = DcBudget { num_strands: k, max_unmarked: budget, pair_strands: pair_strands(pairs), max_counterexamples: 1 };
    let found = find_type_witness(&idx, degree, &b).map_err(Failure::compute)?;
    let text = match found {
        None => {
            report.result("witness", Value::Null);
            vec!["none".to_string()]
        }
        Some((link, value)) => {
            report.result(
                "witness",
                json!({
                    "events": events_json(link.base()),
                    "pairs": link.pairs().iter().map(|&(a, b)| json!([int(a), int(b)])).collect::<Vec<_>>(),
                    "value": mu_bar(&value),
                }),
            );
            let ev: Vec<String> = link.base().events().iter().map(|e| format!("{}{}{}", e.under, e.over, e.sign)).collect();
            vec![format!("events [{}]", ev.join(" ")), format!("pairs {:?}", link.pairs()), format!("value {value}")]
        }
    };
    Ok(Output { text, report })
}

pub fn census(args: Vec<String>, degree: usize, strands: usize) -> Result<Output, Failure> {
    if (degree, strands) != (3, 3) {
        return Err(Failure::usage("only the degree 3 census on 3 strands is available"));
    }
    let c = census_degree3();
    let reps: Vec<DDDiagram> = c.orbits.keys().cloned().collect();
    let quotient = |mode| relation_space_rank(&reps, &[Relation::OneTerm(mode)]).quotient;
    let (qm, qa) = (quotient(OneTermMode::Matching), quotient(OneTermMode::Adjacent));
    let mut report = RunReport::new("census", args);
    report.result("labeled", int(c.labeled.len()));
    report.result("naive", int(c.naive));
    report.result("canonical", int(c.orbits.len()));
    report.result("quotient_matching", int(qm));
    report.result("quotient_adjacent", int(qa));
    let mut text = vec![format!("labeled={} naive={} canonical={}", c.labeled.len(), c.naive, c.orbits.len())];
    let mut listing = Vec::new();
    for (n, (rep, members)) in c.orbits.iter().enumerate() {
        let (m, a) = (rep.one_term_test(OneTermMode::Matching), rep.one_term_test(OneTermMode::Adjacent));
        text.push(format!("# {}  orbit {}  one-term matching={m} adjacent={a}", n + 1, members.len()));
        text.push(rep.to_text().trim_end().to_string());
        listing.push(json!({
            "diagram": rep.to_text(),
            "orbit_size": int(members.len()),
            "one_term_matching": m,
            "one_term_adjacent": a,
        }));
    }
    text.push(format!("one-term quotient: matching {qm}, adjacent {qa}"));
    report.result("diagrams", Value::Array(listing));
    Ok(Output { text, report })
}

pub fn ddeval(args: Vec<String>, path: &str, class: &str, idx: &IndexArgs, samples: usize, seed: u64) -> Result<Output, Failure> {
    let contents = read(path)?;
    let d: DDDiagram = contents.parse().map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    let class = LinkingClass::parse(class, d.num_circles()).map_err(Failure::usage)?;
    let idx = index(idx)?;
    idx.check(d.num_circles()).map_err(Failure::usage)?;
    let mut report = RunReport::new("ddeval", args);
    report.input(path, &contents);
    report.budget("samples", int(samples));
    report.seed(seed);
    let v = evaluate_w(&d, &idx, &class, samples, seed).map_err(Failure::compute)?;
    report.result("index", json!(idx.to_string()));
    report.result("class", json!(class.to_string()));
    report.result("w", mu_bar(&v));
    Ok(Output { text: vec![format!("W = {v}")], report })
}

pub fn collect(args: Vec<String>, text: &str, class: usize) -> Result<Output, Failure> {
    let w = word(text)?;
    let h = hall_collect(&w, class).map_err(Failure::compute)?;
    let mut report = RunReport::new("collect", args);
    report.result("alphabet", json!(h.alphabet.iter().map(ToString::to_string).collect::<Vec<_>>()));
    report.result(
        "factors",
        Value::Array(h.factors.iter().map(|f| json!({ "bracket": f.bracket, "weight": int(f.weight()), "exponent": int(f.exponent) })).collect()),
    );
    let mut lines = vec![format!("class {class}, {} factors", h.factors.len())];
    lines.extend(h.factors.iter().map(|f| format!("{}^{}", f.bracket, f.exponent)));
    Ok(Output { text: lines, report })
}

pub fn decompose(args: Vec<String>, text: &str, level: usize, max_level: Option<usize>) -> Result<Output, Failure> {
    let w = word(text)?;
    let levels = match max_level {
        Some(m) => decompose_iterated(&w, level, m),
        None => decompose_to_simple(&w, level).map(|s| vec![(level, s)]),
    }
    .map_err(Failure::compute)?;
    let mut report = RunReport::new("decompose", args);
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for (n, specs) in &levels {
        let names: Vec<String> = specs.iter().map(ToString::to_string).collect();
        lines.push(format!("level {n}: {}", if names.is_empty() { "1".to_string() } else { names.join(" ") }));
        out.push(json!({ "level": int(n), "commutators": names }));
    }
    report.result("levels", Value::Array(out));
    Ok(Output { text: lines, report })
}

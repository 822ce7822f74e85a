use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use tfa_core::bases::{b_representation, is_basis, minimal_multiplier, pure_hull_sum};
use tfa_core::corpus::{generate_with, CorpusConfig, CorpusGroup, Profile};
use tfa_core::decomp::{
    automorphism_check, automorphism_from_summand_isos, check_splitting_partition, complete_decomposition_search,
    decompositions_isomorphic, set_partitions, DecompositionRecord, IsoVerdict, PartitionRecord,
};
use tfa_core::group::GroupRep;
use tfa_core::jonsson::{
    induced_quotient_map, jonsson_basis_from_summands, kernel_check, lift_blocks, regulating_search,
    splitting_decompositions_of, unrefinable_quotient_decompositions, JonssonBasis, LiftOutcome, LiftReport,
};
use tfa_core::oracle::{brute_force_member, brute_force_purify};
use tfa_core::quasi::{quasi_automorphism_check, quasi_equal_strict, quasi_split_check, QuasiSplit};
use tfa_core::strong::{property_si_check, SiFailure, SiVerdict, strong_decomposability_witness_search, typeset_obstruction_certificate, WitnessSearch};
use tfa_core::suite::{run_suite, SuiteConfig};
use tfa_core::text::{format_partition, format_vectors};

use crate::input::{self, CliResult};
use crate::report::{Report, Status};
use crate::Options;

fn err(e: tfa_core::Error) -> String {
    e.to_string()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summand_lines(rep: &mut Report, d: &DecompositionRecord, indent: &str) {
    for (s, f) in d.summands().iter().zip(d.flags()) {
        rep.line(format!("{indent}{s}  [{}]", serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()));
    }
}

fn jonsson_lines(rep: &mut Report, a: &JonssonBasis) {
    for (s, f) in a.summands().iter().zip(a.flags()) {
        rep.line(format!("  {s}  [{}]", serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()));
    }
    rep.line(format!("G/A: {}", a.quotient()));
    rep.line(format!("index: {}", a.index()));
}

pub fn member(o: &Options, group: &str, vector: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let x = input::vector(&g, vector)?;
    let m = g.member(&x).map_err(err)?;
    let mut rep = Report::new("member");
    rep.input("group", group).input("vector", &x);
    rep.line(format!("member: {}", yes_no(m)));
    if o.oracle {
        let b = brute_force_member(&g, &x, o.bound);
        rep.line(format!("oracle (bound {}): {}", o.bound, yes_no(b)));
        rep.input("bound", o.bound);
        rep.result(json!({ "member": m, "oracle": b, "agree": m == b }));
        if m != b {
            rep.line("oracle disagrees");
            rep.status(Status::Failed);
        }
    } else {
        rep.result(json!({ "member": m }));
    }
    Ok(rep)
}

pub fn element_type(group: &str, vector: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let x = input::vector(&g, vector)?;
    let t = g.element_type(&x).map_err(err)?;
    let mut rep = Report::new("type");
    rep.input("group", group).input("vector", &x);
    rep.line(format!("type: {t}"));
    let mut heights = serde_json::Map::new();
    for p in g.active_primes() {
        let h = g.height(&x, p).map_err(err)?;
        let text = h.map_or_else(|| "inf".to_string(), |h| h.to_string());
        rep.line(format!("height at {p}: {text}"));
        heights.insert(p.to_string(), json!(text));
    }
    rep.result(json!({ "type": t, "heights": heights }));
    Ok(rep)
}

pub fn purify(o: &Options, group: &str, vectors: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let vs = input::vectors(&g, vectors)?;
    let h = g.purify_vectors(&vs).map_err(err)?;
    let mut rep = Report::new("purify");
    rep.input("group", group).input("vectors", format_vectors(&vs));
    rep.line(format!("pure subgroup: {h}"));
    rep.line(format!("rank: {}", h.rank()));
    let mut result = json!({ "pure": h, "rank": h.rank() });
    if o.oracle {
        rep.input("bound", o.bound);
        if vs.len() != 1 {
            return Err("the purification oracle takes exactly one vector".into());
        }
        let bound = (o.bound / 2).max(1);
        match brute_force_purify(&g, &vs[0], bound) {
            Some(gens) => {
                let b = GroupRep::new(g.ambient_dim(), gens).map_err(err)?;
                let agree = b.equals(&h);
                rep.line(format!("oracle (bound {bound}): {b}"));
                result["oracle"] = json!(b);
                result["agree"] = json!(agree);
                if !agree {
                    rep.line("oracle disagrees");
                    rep.status(Status::Failed);
                }
            }
            None => {
                rep.line(format!("oracle (bound {bound}): bound too small"));
                result["oracle"] = json!(null);
                rep.status(Status::ScopeLimited);
            }
        }
    }
    rep.result(result);
    Ok(rep)
}

pub fn basis_check(group: &str, basis: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let vs = input::vectors(&g, basis)?;
    let ok = is_basis(&g, &vs);
    let mut rep = Report::new("basis-check");
    rep.input("group", group).input("basis", format_vectors(&vs));
    rep.line(format!("basis: {}", yes_no(ok)));
    if ok {
        let free = GroupRep::free(g.ambient_dim(), &vs).map_err(err)?;
        let q = g.index_and_quotient(&free).map_err(err)?;
        rep.line(format!("G/<B>: {q}"));
        rep.result(json!({ "basis": true, "quotient": q }));
    } else {
        rep.result(json!({ "basis": false }));
    }
    Ok(rep)
}

pub fn minmul(group: &str, vectors: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let vs = input::vectors(&g, vectors)?;
    let m = minimal_multiplier(&g, &vs).map_err(err)?;
    let mut rep = Report::new("minmul");
    rep.input("group", group).input("vectors", format_vectors(&vs));
    rep.line(format!("minimal multiplier: {m}"));
    rep.result(json!({ "multiplier": m.to_string() }));
    Ok(rep)
}

pub fn brep(group: &str, basis: &str, vector: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let b = input::basis(&g, basis)?;
    let x = input::vector(&g, vector)?;
    let r = b_representation(&b, &x).map_err(err)?;
    let mut rep = Report::new("brep");
    rep.input("group", group).input("basis", format_vectors(b.elements())).input("vector", &x);
    let terms: Vec<String> = r.coefficients.iter().enumerate().map(|(i, c)| format!("{c}*b{}", i + 1)).collect();
    rep.line(format!("{}*a = {}", r.k, terms.join(" + ")));
    rep.result(&r);
    Ok(rep)
}

fn split_outcome_lines(rep: &mut Report, s: &QuasiSplit) {
    match s {
        QuasiSplit::ExactSplit { decomposition } => {
            rep.line("outcome: ExactSplit");
            summand_lines(rep, decomposition, "  ");
        }
        QuasiSplit::QuasiSplit { decomposition, quotient } => {
            rep.line(format!("outcome: QuasiSplit (quotient {quotient})"));
            summand_lines(rep, decomposition, "  ");
        }
        QuasiSplit::NoSplit { witness } => {
            rep.line("outcome: NoSplit");
            rep.line(format!("  defect quotient: infinite: {witness}"));
        }
    }
}

pub fn split(o: &Options, group: &str, basis: &str, partition: Option<&str>) -> CliResult<Report> {
    let g = input::group(group)?;
    let b = input::basis(&g, basis)?;
    let mut rep = Report::new("split");
    rep.input("group", group).input("basis", format_vectors(b.elements()));
    if let Some(p) = partition {
        let p = input::partition(&b, p)?;
        rep.input("partition", format_partition(p.blocks()));
        let s = quasi_split_check(&p).map_err(err)?;
        rep.line(format!("partition: {}", format_partition(p.blocks())));
        split_outcome_lines(&mut rep, &s);
        rep.result(json!({ "partition": format_partition(p.blocks()), "split": s }));
        return Ok(rep);
    }
    let max_blocks = o.max_blocks.unwrap_or(b.len());
    rep.input("max_blocks", max_blocks);
    let mut entries = Vec::new();
    let mut splitting = 0;
    for blocks in set_partitions(b.len(), max_blocks).into_iter().filter(|x| x.len() >= 2) {
        let p = PartitionRecord::new(b.clone(), blocks).map_err(err)?;
        let s = quasi_split_check(&p).map_err(err)?;
        if matches!(s, QuasiSplit::ExactSplit { .. }) {
            splitting += 1;
        }
        rep.line(format!("partition: {}", format_partition(p.blocks())));
        split_outcome_lines(&mut rep, &s);
        entries.push(json!({ "partition": format_partition(p.blocks()), "split": s }));
    }
    let defect = g.index_and_quotient(&pure_hull_sum(&b).sum()).map_err(err)?;
    if splitting == 0 {
        rep.line("no splitting partition");
    } else {
        rep.line(format!("splitting partitions: {splitting}"));
    }
    rep.line(format!("defect quotient G/(sum of pure hulls): {defect}"));
    rep.result(json!({ "partitions": entries, "splitting": splitting, "defect": defect }));
    Ok(rep)
}

pub fn decompose(o: &Options, group: &str, basis: Option<&str>) -> CliResult<Report> {
    let g = input::group(group)?;
    let given = match basis {
        Some(b) => vec![input::basis(&g, b)?],
        None => Vec::new(),
    };
    let s = complete_decomposition_search(&g, &given, o.height, o.max_bases).map_err(err)?;
    let mut rep = Report::new("decompose");
    rep.input("group", group).input("height", o.height).input("max_bases", o.max_bases);
    if let Some(b) = basis {
        rep.input("basis", b);
    }
    for (i, d) in s.decompositions.iter().enumerate() {
        rep.line(format!("decomposition {}:", i + 1));
        summand_lines(&mut rep, d, "  ");
    }
    let certified_indecomposable = g.rank() <= 1 || (g.rank() == 2 && typeset_obstruction_certificate(&g).is_some());
    if s.decompositions.is_empty() {
        if certified_indecomposable {
            rep.line("indecomposable (certified)");
        } else {
            rep.line("no decomposition found");
            rep.status(Status::ScopeLimited);
        }
    } else if !s.decompositions.iter().any(DecompositionRecord::is_complete) {
        rep.status(Status::ScopeLimited);
    }
    rep.line(format!(
        "searched: height {}, {} candidate lines, {} bases, exhaustive: {}",
        s.height,
        s.candidate_lines,
        s.bases_examined,
        yes_no(s.exhaustive)
    ));
    rep.result(json!({ "search": s, "certified_indecomposable": certified_indecomposable && s.decompositions.is_empty() }));
    Ok(rep)
}

fn decomposition_of(g: &GroupRep, basis: &str, partition: &str) -> CliResult<DecompositionRecord> {
    let b = input::basis(g, basis)?;
    let p = input::partition(&b, partition)?;
    match check_splitting_partition(&p) {
        (true, Some(d)) => Ok(d),
        _ => Err(format!("partition {partition} of {basis} does not split the group")),
    }
}

pub fn iso(group: &str, first: [&String; 2], second: [&String; 2]) -> CliResult<Report> {
    let g = input::group(group)?;
    let d1 = decomposition_of(&g, first[0], first[1])?;
    let d2 = decomposition_of(&g, second[0], second[1])?;
    let v = decompositions_isomorphic(&d1, &d2).map_err(err)?;
    let mut rep = Report::new("iso");
    rep.input("group", group)
        .input("basis", first[0])
        .input("partition", first[1])
        .input("other_basis", second[0])
        .input("other_partition", second[1]);
    let mut result = json!({ "verdict": v });
    match &v {
        IsoVerdict::Yes { pairing } => {
            let alpha = automorphism_from_summand_isos(&d1, &d2, pairing).map_err(err)?;
            rep.line("isomorphic: yes");
            let pairs: Vec<String> = pairing.iter().enumerate().map(|(i, j)| format!("{}->{}", i + 1, j + 1)).collect();
            rep.line(format!("pairing: {}", pairs.join(" ")));
            rep.line(format!("automorphism: {alpha}"));
            result["automorphism"] = json!(alpha);
        }
        IsoVerdict::No { reason } => {
            rep.line(format!("isomorphic: no ({reason})"));
        }
        IsoVerdict::Unknown { reason } => {
            rep.line(format!("isomorphic: unknown ({reason})"));
            rep.status(Status::ScopeLimited);
        }
    }
    rep.result(result);
    Ok(rep)
}

pub fn aut_check(group: &str, matrix: &str, summands: Option<&str>) -> CliResult<Report> {
    let g = input::group(group)?;
    let m = input::matrix(&g, matrix)?;
    let aut = automorphism_check(&g, &m).map_err(err)?;
    let mut rep = Report::new("aut-check");
    rep.input("group", group).input("matrix", &m);
    rep.line(format!("automorphism: {}", yes_no(aut)));
    let mut result = json!({ "automorphism": aut });
    if !aut {
        let q = quasi_automorphism_check(&g, &m).map_err(err)?;
        match &q {
            Some(q) => rep.line(format!("quasi-automorphism: yes, r = {}", q.r)),
            None => rep.line("quasi-automorphism: no"),
        };
        result["quasi_automorphism"] = json!(q);
    }
    if let Some(s) = summands {
        rep.input("summands", s);
        let a = jonsson_basis_from_summands(&g, &input::summands(s)?).map_err(err)?;
        if aut {
            let map = induced_quotient_map(&a, &m).map_err(err)?;
            let k = kernel_check(&a, &m).map_err(err)?;
            let rows: Vec<String> =
                map.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
            rep.line(format!("G/A: {}", a.quotient()));
            rep.line(format!("induced map on G/A: [{}]", rows.join("; ")));
            rep.line(format!("acts trivially on G/A: {}", yes_no(map.acts_trivially)));
            rep.line(format!("(alpha - 1)/exp(G/A) preserves G: {}", yes_no(k)));
            result["induced"] = json!({ "matrix": map.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(), "acts_trivially": map.acts_trivially, "kernel_check": k });
        }
    }
    rep.result(result);
    Ok(rep)
}

pub fn quasi_eq(first: &str, second: &str) -> CliResult<Report> {
    let h = input::group(first)?;
    let g = input::group(second)?;
    let w = quasi_equal_strict(&h, &g);
    let mut rep = Report::new("quasi-eq");
    rep.input("first", first).input("second", second);
    match &w {
        Some(w) => rep.line(format!("quasi-equal: yes, {w}")),
        None => rep.line("quasi-equal: no"),
    };
    rep.result(json!({ "witness": w }));
    Ok(rep)
}

pub fn commensurable(first: &str, second: &str) -> CliResult<Report> {
    let h = input::group(first)?;
    let g = input::group(second)?;
    let w = tfa_core::quasi::commensurable(&h, &g);
    let mut rep = Report::new("commensurable");
    rep.input("first", first).input("second", second);
    match &w {
        Some(w) => rep.line(format!("commensurable: yes, {w}")),
        None => rep.line("commensurable: no"),
    };
    rep.result(json!({ "witness": w }));
    Ok(rep)
}

pub fn jonsson(o: &Options, group: &str, summands: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let a = jonsson_basis_from_summands(&g, &input::summands(summands)?).map_err(err)?;
    let mut rep = Report::new("jonsson");
    rep.input("group", group).input("summands", summands);
    rep.line("Jonsson basis:");
    jonsson_lines(&mut rep, &a);
    let max_blocks = o.max_blocks.unwrap_or(a.summands().len());
    let splittings = splitting_decompositions_of(&a, max_blocks).map_err(err)?;
    for s in &splittings {
        rep.line(format!("splitting grouping: {}", format_partition(&s.grouping)));
    }
    if splittings.is_empty() {
        rep.line("no splitting grouping");
    }
    rep.result(json!({ "basis": a, "splittings": splittings, "invariants": a.invariants() }));
    Ok(rep)
}

pub fn regulating(o: &Options, group: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let s = regulating_search(&g, o.height, o.max_bases).map_err(err)?;
    let mut rep = Report::new("regulating");
    rep.input("group", group).input("height", o.height).input("max_bases", o.max_bases);
    rep.line(format!("least index found: {}", s.index));
    jonsson_lines(&mut rep, &s.best);
    rep.line(format!("searched: height {}, {} bases, exhaustive: {}", s.height, s.bases_examined, yes_no(s.exhaustive)));
    if s.index != num_bigint::BigInt::from(1) {
        rep.status(Status::ScopeLimited);
    }
    rep.result(&s);
    Ok(rep)
}

fn lift_lines(rep: &mut Report, r: &LiftReport) {
    let blocks: Vec<String> = r
        .blocks
        .iter()
        .map(|b| b.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";"))
        .collect();
    rep.line(format!("quotient blocks: {}", blocks.join(" | ")));
    match &r.outcome {
        LiftOutcome::Lifted { grouping, decomposition } => {
            rep.line(format!("  lifted: grouping {}", format_partition(grouping)));
            summand_lines(rep, decomposition, "    ");
        }
        LiftOutcome::Refused { groupings_examined } => {
            rep.line(format!("  refused: no grouping of the summands induces it ({groupings_examined} examined)"));
        }
    }
}

pub fn lift(group: &str, summands: &str, blocks: Option<&str>) -> CliResult<Report> {
    let g = input::group(group)?;
    let a = jonsson_basis_from_summands(&g, &input::summands(summands)?).map_err(err)?;
    let mut rep = Report::new("lift");
    rep.input("group", group).input("summands", summands);
    rep.line(format!("G/A: {}", a.quotient()));
    let reports = match blocks {
        Some(b) => {
            rep.input("blocks", b);
            vec![lift_blocks(&g, &a, &input::int_blocks(b)?).map_err(err)?]
        }
        None => unrefinable_quotient_decompositions(&a).map_err(err)?,
    };
    for r in &reports {
        lift_lines(&mut rep, r);
    }
    rep.result(json!({ "quotient": a.quotient(), "lifts": reports }));
    Ok(rep)
}

pub fn quotient(group: &str, subgroup: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let a = input::group(subgroup)?;
    let q = g.index_and_quotient(&a).map_err(err)?;
    let mut rep = Report::new("quotient");
    rep.input("group", group).input("subgroup", subgroup);
    rep.line(q.to_string());
    let index = q.finite().map(|f| f.order().to_string());
    rep.result(json!({ "quotient": q, "index": index }));
    Ok(rep)
}

pub fn si_check(group: &str, basis: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let b = input::basis(&g, basis)?;
    let r = property_si_check(&b).map_err(err)?;
    let mut rep = Report::new("si-check");
    rep.input("group", group).input("basis", format_vectors(b.elements()));
    rep.line(format!("G/(B)_*: {}", r.quotient));
    rep.line(match &r.verdict {
        SiVerdict::HoldsForThisBasis => "property SI: holds for this basis".to_string(),
        SiVerdict::Fails(SiFailure::SplittingPartition { blocks }) => {
            format!("property SI: fails, partition {} splits the group", format_partition(blocks))
        }
        SiVerdict::Fails(SiFailure::FiniteQuotient { .. }) => "property SI: fails, G/(B)_* is finite".to_string(),
    });
    rep.result(&r);
    Ok(rep)
}

pub fn si_search(o: &Options, group: &str) -> CliResult<Report> {
    let g = input::group(group)?;
    let s = strong_decomposability_witness_search(&g, o.height, o.max_bases).map_err(err)?;
    let cert = typeset_obstruction_certificate(&g);
    let mut rep = Report::new("si-search");
    rep.input("group", group).input("height", o.height).input("max_bases", o.max_bases);
    match &s {
        WitnessSearch::QuasiDecomposition { basis, blocks, index, summands } => {
            rep.line(format!("QuasiDecomposition: basis {}, partition {}, index {index}", format_vectors(basis), format_partition(blocks)));
            summand_lines(&mut rep, summands, "  ");
            rep.line("certified: not strongly indecomposable");
        }
        WitnessSearch::NoWitnessFound { height, bases_examined, exhaustive } => {
            rep.line(format!(
                "NoWitnessFound: height {height}, {bases_examined} bases, exhaustive: {}",
                yes_no(*exhaustive)
            ));
            match &cert {
                Some(c) => {
                    let types: Vec<String> = c.types.iter().map(ToString::to_string).collect();
                    rep.line(format!("typeset certificate: {}", types.join(", ")));
                    rep.line("certified: strongly indecomposable");
                }
                None => {
                    rep.line("not certified");
                    rep.status(Status::ScopeLimited);
                }
            }
        }
    }
    rep.result(json!({ "search": s, "certificate": cert }));
    Ok(rep)
}

pub fn verify(o: &Options, file: Option<&str>, count: usize) -> CliResult<Report> {
    let mut rep = Report::new("verify");
    let groups: Vec<(String, GroupRep)> = match file {
        Some(f) => {
            rep.input("file", f);
            input::groups_in(f)?.into_iter().map(|n| (n.name, n.group)).collect()
        }
        None => {
            rep.input("count", count).input("seed", o.seed);
            if let Some(p) = o.profile {
                rep.input("profile", p);
            }
            let config = CorpusConfig::default();
            (0..count)
                .map(|i| {
                    let p = o.profile.unwrap_or(Profile::ALL[i % Profile::ALL.len()]);
                    let cg: CorpusGroup = generate_with(p, o.seed + i as u64, &config);
                    (format!("{} seed {}", cg.profile, cg.seed), cg.group)
                })
                .collect()
        }
    };
    let cfg = SuiteConfig { height: o.height.min(2), oracle_bound: o.bound, ..SuiteConfig::default() };
    let results: Vec<_> = groups
        .par_iter()
        .enumerate()
        .map(|(i, (_, g))| {
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
            run_suite(g, &cfg, &mut rng)
        })
        .collect();
    let mut failures = 0;
    let mut entries = Vec::new();
    for ((name, g), checks) in groups.iter().zip(&results) {
        let passed = checks.iter().filter(|c| c.passed).count();
        rep.line(format!("{name}: {g}: {passed}/{} checks passed", checks.len()));
        for c in checks.iter().filter(|c| !c.passed) {
            failures += 1;
            rep.line(format!("  FAIL {}: {}", c.name, c.detail));
        }
        entries.push(json!({ "name": name, "group": g, "checks": checks }));
    }
    if failures == 0 {
        rep.line(format!("groups: {}, all checks passed", groups.len()));
    } else {
        rep.line(format!("{failures} failed checks"));
        rep.status(Status::Failed);
    }
    rep.result(json!({ "groups": entries, "failures": failures }));
    Ok(rep)
}

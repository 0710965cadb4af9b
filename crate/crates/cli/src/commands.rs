use serde::Serialize;
use spw_core::chains::{
    chain_balanced, chain_large_with, chain_small_with, chain_unbalanced_with, energy_bound_audit,
    prop51_audit_with, ChainOptions, ChainReport,
};
use spw_core::lemmas::{
    chang_decompose, gk_witness_guarded, greedy_cover, katz_shen_subset_guarded, xi_search,
    BucketDecomposition, CoverResult, GkWitness, SubsetResult, WitnessVariant, XiResult,
};
use spw_core::search::{
    anneal_extremal, exhaustive_extremal_with, ratio_threshold_scan, AnnealSchedule, Exhaustive,
    ExhaustiveOptions, SearchRecord,
};
use spw_core::{
    additive_energy, dilate, make_field, multiplicative_energy, product_set, ratio_set, rep_fn,
    signed_combination, sumset, EnergyMethod, EnergyReport, FSet, Field, Guards, Sign,
};

use crate::args::*;
use crate::error::{usage, CliError};
use crate::input::{parse_ratio, parse_set};
use crate::render::Outcome;

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

/// Serialized scalar as plain text, without JSON quoting.
fn cell(x: &impl Serialize) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(_) => String::new(),
    }
}

fn required<'a>(b: &'a Option<String>, what: &str) -> Result<&'a str, CliError> {
    b.as_deref()
        .ok_or_else(|| usage(format!("--b is required for {what}")))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let guards = Guards::from_env();
    match &cli.command {
        Command::Set(a) => set(a),
        Command::Energy(a) => energy(a),
        Command::Lemma(l) => lemma(l, &guards),
        Command::Chain(a) => chain(a, &guards),
        Command::Extremal(a) => extremal(a, cli.seed, &guards),
        Command::ScanRatio(a) => scan(a, &guards),
    }
}

#[derive(Serialize)]
struct SetOut<'a> {
    p: u32,
    op: &'static str,
    a: &'a FSet,
    b: Option<&'a FSet>,
    result: FSet,
    card: usize,
}

#[derive(Serialize)]
struct RepOut<'a> {
    p: u32,
    op: &'static str,
    sign: Sign,
    a: &'a FSet,
    b: &'a FSet,
    /// `(d, r(d))` over the support.
    counts: Vec<(u32, u64)>,
    total: u64,
}

fn combo(pattern: &str, a: &FSet, b: Option<&FSet>) -> Result<FSet, CliError> {
    let chars: Vec<char> = pattern.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() || !chars.len().is_multiple_of(2) {
        return Err(usage(format!(
            "pattern {pattern:?} must be sign/set pairs such as +a-b"
        )));
    }
    let mut terms = Vec::new();
    for pair in chars.chunks(2) {
        let s = match pair[0] {
            '+' => Sign::Plus,
            '-' => Sign::Minus,
            c => return Err(usage(format!("expected + or - in pattern, got {c:?}"))),
        };
        let set = match pair[1] {
            'a' | 'A' => a,
            'b' | 'B' => b.ok_or_else(|| usage("pattern uses b but --b is missing"))?,
            c => return Err(usage(format!("expected a or b in pattern, got {c:?}"))),
        };
        terms.push((set, s));
    }
    Ok(signed_combination(&terms)?)
}

fn set(args: &SetArgs) -> Result<Outcome, CliError> {
    let f = make_field(args.sets.p)?;
    let a = parse_set(&f, &args.sets.a)?;
    let b = args
        .sets
        .b
        .as_deref()
        .map(|s| parse_set(&f, s))
        .transpose()?;
    let need_b = |what| -> Result<&FSet, CliError> {
        b.as_ref()
            .ok_or_else(|| usage(format!("--b is required for --op {what}")))
    };
    let (op, result) = match args.op {
        SetOp::Sum => ("sum", sumset(&a, need_b("sum")?, Sign::Plus)?),
        SetOp::Diff => ("diff", sumset(&a, need_b("diff")?, Sign::Minus)?),
        SetOp::Prod => ("prod", product_set(&a, need_b("prod")?)?),
        SetOp::Ratio => ("ratio", ratio_set(&a)?),
        SetOp::Dilate => {
            let u = args
                .u
                .ok_or_else(|| usage("--u is required for --op dilate"))?;
            ("dilate", dilate(&a, f.check(u)?)?)
        }
        SetOp::Combo => {
            let pat = args
                .pattern
                .as_deref()
                .ok_or_else(|| usage("--pattern is required for --op combo"))?;
            ("combo", combo(pat, &a, b.as_ref())?)
        }
        SetOp::Rep => {
            let b = need_b("rep")?;
            let r = rep_fn(&a, b, sign(args.sign))?;
            let counts: Vec<(u32, u64)> = r.support().map(|d| (d, r.at(d))).collect();
            let report = RepOut {
                p: f.p(),
                op: "rep",
                sign: r.sign,
                a: &a,
                b,
                counts,
                total: r.total,
            };
            let mut out = Outcome::new(&report, vec!["d", "count"])?;
            for &(d, c) in &report.counts {
                out.row(vec![d.to_string(), c.to_string()]);
            }
            return Ok(out);
        }
    };
    let report = SetOut {
        p: f.p(),
        op,
        a: &a,
        b: b.as_ref(),
        card: result.len(),
        result,
    };
    let mut out = Outcome::new(&report, vec!["element"])?;
    for x in report.result.iter() {
        out.row(vec![x.to_string()]);
    }
    Ok(out)
}

#[derive(Serialize)]
struct EnergyOut {
    p: u32,
    method: &'static str,
    #[serde(flatten)]
    report: EnergyReport,
    floor_holds: bool,
    ceiling_holds: bool,
}

fn energy(args: &EnergyArgs) -> Result<Outcome, CliError> {
    let f = make_field(args.p)?;
    let (y, z) = (parse_set(&f, &args.y)?, parse_set(&f, &args.z)?);
    let (method, name) = match args.method {
        MethodArg::Naive => (EnergyMethod::Naive, "naive"),
        MethodArg::Convolution => (EnergyMethod::Convolution, "convolution"),
    };
    let report = match args.kind {
        EnergyKindArg::Add => additive_energy(&y, &z, method)?,
        EnergyKindArg::Mul => multiplicative_energy(&y, &z, method)?,
    };
    let res = EnergyOut {
        p: f.p(),
        method: name,
        floor_holds: report.floor_holds(),
        ceiling_holds: report.ceiling_holds(),
        report,
    };
    let mut out = Outcome::new(
        &res,
        vec![
            "kind",
            "method",
            "value",
            "floor",
            "ceiling",
            "floor_holds",
            "ceiling_holds",
        ],
    )?;
    let r = &res.report;
    out.row(vec![
        cell(&r.kind),
        name.to_string(),
        r.value.to_string(),
        format!("{}/{}", r.floor_num, r.floor_den),
        r.ceiling.to_string(),
        res.floor_holds.to_string(),
        res.ceiling_holds.to_string(),
    ]);
    out.violation = !(res.floor_holds && res.ceiling_holds);
    Ok(out)
}

fn pair(f: &Field, a: &PairArgs) -> Result<(FSet, FSet), CliError> {
    Ok((parse_set(f, &a.a)?, parse_set(f, &a.b)?))
}

#[derive(Serialize)]
struct CoverOut {
    #[serde(flatten)]
    cover: CoverResult,
    coverage_holds: bool,
    budget_holds: bool,
}

#[derive(Serialize)]
struct XiOut {
    #[serde(flatten)]
    xi: XiResult,
    bound_holds: bool,
}

#[derive(Serialize)]
struct GkOut {
    #[serde(flatten)]
    witness: GkWitness,
    meets_target: bool,
}

#[derive(Serialize)]
struct ChangOut {
    #[serde(flatten)]
    d: BucketDecomposition,
    partition_holds: bool,
    pigeonhole_holds: bool,
    general_constant_holds: bool,
    chang_constant_holds: bool,
}

fn lemma(cmd: &LemmaCommand, guards: &Guards) -> Result<Outcome, CliError> {
    match cmd {
        LemmaCommand::Cover(args) => {
            let f = make_field(args.sets.p)?;
            let (b1, b2) = pair(&f, &args.sets)?;
            let cover = greedy_cover(&b1, &b2, sign(args.mode))?;
            let res = CoverOut {
                coverage_holds: cover.coverage_holds(),
                budget_holds: cover.budget_holds(),
                cover,
            };
            let mut out = Outcome::new(&res, vec!["step", "translate"])?;
            for (i, c) in res.cover.translates.iter().enumerate() {
                out.row(vec![(i + 1).to_string(), c.to_string()]);
            }
            out.violation = !(res.coverage_holds && res.budget_holds);
            Ok(out)
        }
        LemmaCommand::Katzshen(args) => {
            let f = make_field(args.p)?;
            let b0 = parse_set(&f, &args.a)?;
            let bs = args
                .b
                .iter()
                .map(|s| parse_set(&f, s))
                .collect::<Result<Vec<_>, _>>()?;
            let res: SubsetResult =
                katz_shen_subset_guarded(&b0, &bs, parse_ratio(&args.eps)?, guards)?;
            let mut out = Outcome::new(
                &res,
                vec!["subset", "card", "min_card", "sumset_card", "ratio"],
            )?;
            out.row(vec![
                res.subset.to_string(),
                res.subset.len().to_string(),
                res.min_card.to_string(),
                res.sumset_card.to_string(),
                res.ratio.reduced().to_string(),
            ]);
            out.violation = res.subset.len() < res.min_card || !res.subset.is_subset(&b0);
            Ok(out)
        }
        LemmaCommand::Gk(args) => {
            let f = make_field(args.p)?;
            let a = parse_set(&f, &args.a)?;
            let probes = args
                .probe
                .iter()
                .map(|s| parse_set(&f, s))
                .collect::<Result<Vec<_>, _>>()?;
            let variant = match args.variant {
                VariantArg::PlusPlus => WitnessVariant::PlusPlus,
                VariantArg::PlusMinus => WitnessVariant::PlusMinus,
                VariantArg::Xi => WitnessVariant::Xi,
            };
            let w = gk_witness_guarded(&a, variant, &probes, guards)?;
            let res = GkOut {
                meets_target: w.meets_target(),
                witness: w,
            };
            let mut out = Outcome::new(&res, vec!["a", "b", "c", "d", "expr_card", "target"])?;
            let [qa, qb, qc, qd] = res.witness.quadruple;
            out.row(vec![
                qa.to_string(),
                qb.to_string(),
                qc.to_string(),
                qd.to_string(),
                res.witness.expr_card.to_string(),
                format!("{}/{}", res.witness.target_num, res.witness.target_den),
            ]);
            Ok(out)
        }
        LemmaCommand::Xi(args) => {
            let f = make_field(args.p)?;
            let xi = xi_search(&parse_set(&f, &args.a)?)?;
            let res = XiOut {
                bound_holds: xi.bound_holds(),
                xi,
            };
            let mut out = Outcome::new(&res, vec!["xi", "energy", "bound", "bound_holds"])?;
            out.row(vec![
                res.xi.xi.to_string(),
                res.xi.energy.to_string(),
                format!("{}/{}", res.xi.bound_num, res.xi.bound_den),
                res.bound_holds.to_string(),
            ]);
            out.violation = !res.bound_holds;
            Ok(out)
        }
        LemmaCommand::Chang(args) => {
            let f = make_field(args.p)?;
            let (y, z) = pair(&f, args)?;
            let d = chang_decompose(&y, &z)?;
            let res = ChangOut {
                partition_holds: d.partition_holds(),
                pigeonhole_holds: d.pigeonhole_holds(),
                general_constant_holds: d.general_constant_holds(),
                chang_constant_holds: d.chang_constant_holds(),
                d,
            };
            let mut out = Outcome::new(&res, vec!["j", "card", "elements"])?;
            for (j, b) in &res.d.buckets {
                out.row(vec![j.to_string(), b.len().to_string(), b.to_string()]);
            }
            out.violation =
                !(res.partition_holds && res.pigeonhole_holds && res.general_constant_holds);
            Ok(out)
        }
    }
}

fn chain(args: &ChainArgs, guards: &Guards) -> Result<Outcome, CliError> {
    let f = make_field(args.sets.p)?;
    let a = parse_set(&f, &args.sets.a)?;
    let b = || -> Result<FSet, CliError> { parse_set(&f, required(&args.sets.b, "this theorem")?) };
    let opts = ChainOptions {
        retention: parse_ratio(&args.retention)?,
        guards: *guards,
    };
    let s = sign(args.sign);
    let report: ChainReport = match args.theorem {
        TheoremArg::Small => chain_small_with(&a, s, &opts)?,
        TheoremArg::Large => chain_large_with(&a, s, &opts)?,
        TheoremArg::UnbalancedSmall | TheoremArg::Unbalanced => {
            chain_unbalanced_with(&a, &b()?, &opts)?
        }
        TheoremArg::Balanced => chain_balanced(&a, &b()?)?,
        TheoremArg::Covering => prop51_audit_with(&a, &b()?, &opts)?,
        TheoremArg::Energy => energy_bound_audit(&a)?,
    };
    let mut out = Outcome::new(
        &report,
        vec!["name", "kind", "relation", "lhs", "rhs", "pass", "ratio"],
    )?;
    for st in &report.steps {
        out.row(vec![
            st.name.clone(),
            cell(&st.kind),
            cell(&st.relation),
            st.lhs.reduced().to_string(),
            st.rhs.reduced().to_string(),
            st.pass.map(|b| b.to_string()).unwrap_or_default(),
            st.ratio().to_sci(),
        ]);
    }
    out.violation = report.violation;
    Ok(out)
}

fn extremal(args: &ExtremalArgs, seed: u64, guards: &Guards) -> Result<Outcome, CliError> {
    let record: SearchRecord = match args.mode {
        ModeArg::Exhaustive => {
            let opts = ExhaustiveOptions {
                cache: args.cache.clone(),
                threads: args.threads,
                guards: *guards,
                ..ExhaustiveOptions::default()
            };
            match exhaustive_extremal_with(args.p, args.n, &opts)? {
                Exhaustive::Done(r) => r,
                Exhaustive::Suspended { cursor } => {
                    return Err(usage(format!("search suspended at candidate {cursor}")))
                }
            }
        }
        ModeArg::Anneal => {
            let schedule = AnnealSchedule {
                t0: args.t0,
                cooling: args.cooling,
                chains: args.chains,
            };
            anneal_extremal(args.p, args.n, seed, args.iters, &schedule)?
        }
    };
    let mut out = Outcome::new(&record, vec!["best_value", "witness"])?;
    for w in &record.witnesses {
        out.row(vec![record.best_value.to_string(), w.to_string()]);
    }
    Ok(out)
}

fn scan(args: &ScanArgs, guards: &Guards) -> Result<Outcome, CliError> {
    let s = ratio_threshold_scan(args.p, guards)?;
    let mut out = Outcome::new(&s, vec!["n", "status", "witness", "candidates_checked"])?;
    for r in &s.rows {
        out.row(vec![
            r.n.to_string(),
            cell(&r.status),
            r.witness.as_ref().map(FSet::to_string).unwrap_or_default(),
            r.candidates_checked.to_string(),
        ]);
    }
    Ok(out)
}

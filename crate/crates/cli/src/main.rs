//! `kacd`: command-line front end for the decision procedures.
//!
//! Every command prints one JSON record per line. Exit codes: 0 holds or
//! equal, 1 refuted or not equal, 2 unsupported or out of budget, 3 bad
//! input, 4 a `--verify` replay disagreed.

use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kacd_core::decide::{AutoOutcome, CheckResult, InclusionCheck, Procedure};
use kacd_core::hierarchy::{
    check_membership_side, sample_valuations, separation_counterexample, separation_terms, separation_var,
};
use kacd_core::semantics::{
    decode_word, std_lang_equiv_with_sentinels, words_to_letters, EqVerdict, ValuationFile,
};
use kacd_core::word_theory::{decide_word_theory, WordVerdict};
use kacd_core::{
    evaluate, oracle_refute, parse_ext_word, parse_term, render_term, Decider, DecideConfig, EnumerationMode,
    Error, FragmentClass, OracleBudget, Refutation, Relation, Side, Status, Term, Verdict, WordTheoryLevel,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "kacd", version, about = "Decide Kleene algebra inclusions over language models")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Replay every counterexample through the evaluator before exiting.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Le,
    Eq,
}

#[derive(Clone, Copy, ValueEnum)]
enum FragmentArg {
    Auto,
    Identity,
    Variable,
    Word,
    Starfree,
    Universality,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fullword,
    Inclusion,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `LHS ≤ RHS` or `LHS = RHS` over all language models.
    Check {
        lhs: String,
        relation: Rel,
        rhs: String,
        #[arg(long, value_enum, default_value = "auto")]
        fragment: FragmentArg,
        #[arg(long, value_enum, default_value = "fullword")]
        mode: ModeArg,
        /// Largest number of fresh letters to enumerate.
        #[arg(long, default_value_t = 8)]
        max_blocks: usize,
        #[arg(long)]
        parallel: bool,
    },
    /// Compare two terms under the standard regular-expression semantics.
    LangEquiv {
        t1: String,
        t2: String,
        /// Letters standing for unmentioned variables.
        #[arg(long, default_value_t = 1)]
        sentinels: usize,
    },
    /// Decide an equation between extended words at one alphabet size.
    WordTheory {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        level: u8,
        u: String,
        w: String,
    },
    /// Evaluate a term under a valuation file.
    Eval {
        #[arg(long)]
        valuation: std::path::PathBuf,
        #[arg(long)]
        term: String,
        /// Report membership of this word instead of a summary.
        #[arg(long)]
        member: Option<String>,
    },
    /// Apply the words-to-letters transformation to a valuation file.
    W2l {
        #[arg(long)]
        valuation: std::path::PathBuf,
        /// Comma-separated words over the file's alphabet.
        #[arg(long, value_delimiter = ',')]
        words: Vec<String>,
        #[arg(long)]
        allow_empty: bool,
    },
    /// Separation of `n` from `n + 1` letters with full complement.
    Hierarchy {
        #[arg(long)]
        n: usize,
        /// Random valuations checked on `n` letters.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Bounded search for a counterexample to `T1 ≤ T2`.
    OracleRefute {
        t1: String,
        t2: String,
        #[arg(long, default_value_t = 2)]
        max_alphabet: usize,
        #[arg(long, default_value_t = 2)]
        max_value_len: usize,
        #[arg(long, default_value_t = 2)]
        max_values: usize,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        no_cofinite: bool,
    },
}

struct Out {
    pretty: bool,
}

impl Out {
    fn emit(&self, v: &Value) {
        let s = if self.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
        println!("{}", s.expect("serializable"));
    }
}

fn seed() -> u64 {
    std::env::var("KACD_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn counterexample(r: &Refutation) -> Result<Value, Error> {
    let file = ValuationFile::from_valuation(&r.valuation)?;
    let side = match r.side {
        Side::LeftNotInRight => "left-not-in-right",
        Side::RightNotInLeft => "right-not-in-left",
    };
    Ok(json!({
        "valuation": serde_json::to_value(&file).expect("serializable"),
        "witness": r.witness,
        "side": side,
    }))
}

fn procedure_name(p: Procedure) -> &'static str {
    match p {
        Procedure::Identity => "identity",
        Procedure::Variable => "variable",
        Procedure::Word => "word",
        Procedure::StarFree => "starfree",
        Procedure::Universality => "universality",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Refuted => "refuted",
        Status::Unsupported => "unsupported",
        Status::BudgetExceeded => "budget-exceeded",
    }
}

fn status_exit(s: Status) -> u8 {
    match s {
        Status::Holds => EXIT_HOLDS,
        Status::Refuted => EXIT_REFUTED,
        Status::Unsupported | Status::BudgetExceeded => EXIT_UNDECIDED,
    }
}

fn check_record(c: &InclusionCheck) -> Result<Value, Error> {
    let mut rec = json!({
        "lhs": render_term(&c.lhs),
        "rhs": render_term(&c.rhs),
        "procedure": c.procedure.map(procedure_name),
    });
    match &c.result {
        CheckResult::Decided(Verdict::Holds) => rec["result"] = json!("holds"),
        CheckResult::Decided(Verdict::Refuted(r)) => {
            rec["result"] = json!("refuted");
            rec["counterexample"] = counterexample(r)?;
        }
        CheckResult::Unsupported(why) => {
            rec["result"] = json!("unsupported");
            rec["reason"] = json!(why);
        }
        CheckResult::BudgetExceeded(why) => {
            rec["result"] = json!("budget-exceeded");
            rec["reason"] = json!(why);
        }
    }
    Ok(rec)
}

/// One inclusion with a fixed procedure; shapes the procedure cannot take
/// are reported as unsupported.
fn forced_check(d: &mut Decider, p: FragmentArg, lhs: &Term, rhs: &Term) -> InclusionCheck {
    let (procedure, r) = match p {
        FragmentArg::Identity if *lhs == Term::One => (Procedure::Identity, d.identity_inclusion(rhs)),
        FragmentArg::Variable => match lhs {
            Term::Var(x) => (Procedure::Variable, d.variable_inclusion(x, rhs)),
            _ => return unsupported(lhs, rhs, "left side is not a variable"),
        },
        FragmentArg::Word => match kacd_core::ExtWord::from_term(lhs) {
            Some(u) => (Procedure::Word, d.word_inclusion(&u, rhs)),
            None if *lhs == Term::One => (Procedure::Word, d.word_inclusion(&Default::default(), rhs)),
            None => return unsupported(lhs, rhs, "left side is not an extended word"),
        },
        FragmentArg::Starfree => (Procedure::StarFree, d.starfree_inclusion(lhs, rhs)),
        FragmentArg::Universality if lhs.is_top_pattern() => (Procedure::Universality, d.universality(rhs)),
        FragmentArg::Identity => return unsupported(lhs, rhs, "left side is not 1"),
        FragmentArg::Universality => return unsupported(lhs, rhs, "left side is not 1 + !1"),
        FragmentArg::Auto => unreachable!("handled by auto routing"),
    };
    let result = match r {
        Ok(v) => CheckResult::Decided(v),
        Err(Error::BudgetExceeded { needed, limit }) => {
            CheckResult::BudgetExceeded(format!("needs {needed}, limit {limit}"))
        }
        Err(e) => CheckResult::Unsupported(e.to_string()),
    };
    InclusionCheck { lhs: lhs.clone(), rhs: rhs.clone(), procedure: Some(procedure), result }
}

fn unsupported(lhs: &Term, rhs: &Term, why: &str) -> InclusionCheck {
    InclusionCheck {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        procedure: None,
        result: CheckResult::Unsupported(why.to_string()),
    }
}

fn replays(r: &Refutation, lhs: &Term, rhs: &Term) -> Result<bool, Error> {
    r.verify(lhs, rhs)
}

fn read_valuation(path: &std::path::Path) -> Result<ValuationFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ValuationFormat(format!("{}: {e}", path.display())))?;
    ValuationFile::parse(&text)
}

fn eq_record(e: &EqVerdict) -> Result<Value, Error> {
    let one = |v: &Verdict| -> Result<Value, Error> {
        Ok(match v {
            Verdict::Holds => json!({"result": "holds"}),
            Verdict::Refuted(r) => json!({"result": "refuted", "counterexample": counterexample(r)?}),
        })
    };
    Ok(json!({
        "left_in_right": one(&e.left_in_right)?,
        "right_in_left": one(&e.right_in_left)?,
    }))
}

fn run(cli: &Cli, out: &Out) -> Result<u8, Error> {
    match &cli.command {
        Command::Check { lhs, relation, rhs, fragment, mode, max_blocks, parallel } => {
            let (l, r) = (parse_term(lhs, FragmentClass::KaFull)?, parse_term(rhs, FragmentClass::KaFull)?);
            let config = DecideConfig {
                max_block_count: *max_blocks,
                enumeration_mode: match mode {
                    ModeArg::Fullword => EnumerationMode::FullWordWitness,
                    ModeArg::Inclusion => EnumerationMode::FullInclusion,
                },
                parallel: *parallel,
                ..Default::default()
            };
            let rel = match relation {
                Rel::Le => Relation::Le,
                Rel::Eq => Relation::Eq,
            };
            let mut d = Decider::new(config);
            let outcome = match fragment {
                FragmentArg::Auto => d.auto(&l, rel, &r),
                p => {
                    let mut checks = vec![forced_check(&mut d, *p, &l, &r)];
                    if rel == Relation::Eq {
                        checks.push(forced_check(&mut d, *p, &r, &l));
                    }
                    AutoOutcome { checks }
                }
            };
            let status = outcome.status();
            let checks = outcome.checks.iter().map(check_record).collect::<Result<Vec<_>, _>>()?;
            out.emit(&json!({
                "command": "check",
                "lhs": render_term(&l),
                "relation": match rel { Relation::Le => "le", Relation::Eq => "eq" },
                "rhs": render_term(&r),
                "status": status_name(status),
                "checks": checks,
            }));
            if cli.verify {
                for c in &outcome.checks {
                    if let CheckResult::Decided(Verdict::Refuted(x)) = &c.result {
                        if !replays(x, &c.lhs, &c.rhs)? {
                            return Ok(EXIT_VERIFY);
                        }
                    }
                }
            }
            Ok(status_exit(status))
        }
        Command::LangEquiv { t1, t2, sentinels } => {
            let (a, b) = (parse_term(t1, FragmentClass::KaFull)?, parse_term(t2, FragmentClass::KaFull)?);
            let e = std_lang_equiv_with_sentinels(&a, &b, (*sentinels).max(1));
            let mut rec = eq_record(&e)?;
            rec["command"] = json!("lang-equiv");
            rec["t1"] = json!(render_term(&a));
            rec["t2"] = json!(render_term(&b));
            rec["status"] = json!(if e.holds() { "equal" } else { "not-equal" });
            out.emit(&rec);
            if cli.verify {
                for (v, l, r) in [(&e.left_in_right, &a, &b), (&e.right_in_left, &b, &a)] {
                    if let Verdict::Refuted(x) = v {
                        if !replays(x, l, r)? {
                            return Ok(EXIT_VERIFY);
                        }
                    }
                }
            }
            Ok(if e.holds() { EXIT_HOLDS } else { EXIT_REFUTED })
        }
        Command::WordTheory { level, u, w } => {
            let (uu, ww) = (parse_ext_word(u)?, parse_ext_word(w)?);
            let lv = [WordTheoryLevel::L0, WordTheoryLevel::L1, WordTheoryLevel::L2][*level as usize];
            let v = decide_word_theory(&uu, &ww, lv)?;
            let mut rec = json!({"command": "word-theory", "level": level, "u": uu.to_string(), "w": ww.to_string()});
            let code = match &v {
                WordVerdict::Equal(j) => {
                    rec["verdict"] = json!("equal");
                    rec["justification"] = serde_json::to_value(j).expect("serializable");
                    EXIT_HOLDS
                }
                WordVerdict::NotEqual(r) => {
                    rec["verdict"] = json!("not-equal");
                    rec["counterexample"] = counterexample(r)?;
                    if cli.verify && !replays(r, &uu.to_term(), &ww.to_term())? {
                        out.emit(&rec);
                        return Ok(EXIT_VERIFY);
                    }
                    EXIT_REFUTED
                }
            };
            out.emit(&rec);
            Ok(code)
        }
        Command::Eval { valuation, term, member } => {
            let file = read_valuation(valuation)?;
            let v = file.to_valuation()?;
            let t = parse_term(term, FragmentClass::KaFull)?;
            let value = evaluate(&t, &v);
            let mut rec = json!({"command": "eval", "term": render_term(&t)});
            match member {
                Some(text) => {
                    let w = decode_word(v.alphabet(), text)?;
                    let inside = value.accepts(&w);
                    rec["word"] = json!(v.alphabet().spell(&w));
                    rec["member"] = json!(inside);
                    if cli.verify {
                        let dp = kacd_core::semantics::membership_dp(&w, &t, &v);
                        if matches!(dp, Ok(b) if b != inside) {
                            out.emit(&rec);
                            return Ok(EXIT_VERIFY);
                        }
                    }
                }
                None => {
                    let m = value.minimize();
                    let shortest = m.shortest_word().map(|w| v.alphabet().spell(&w));
                    rec["states"] = json!(m.states());
                    rec["empty"] = json!(m.is_empty());
                    rec["accepts_empty_word"] = json!(m.accepts(&[]));
                    rec["finite"] = json!(m.finite_words().is_some());
                    rec["shortest"] = json!(shortest);
                    let value_only = kacd_core::Valuation::new(v.alphabet().clone()).with("value", m)?;
                    if let Ok(f) = ValuationFile::from_valuation(&value_only) {
                        rec["value"] = serde_json::to_value(&f.vars["value"]).expect("serializable");
                    }
                }
            }
            out.emit(&rec);
            Ok(EXIT_HOLDS)
        }
        Command::W2l { valuation, words, allow_empty } => {
            let v = read_valuation(valuation)?.to_valuation()?;
            let ws = words.iter().map(|w| decode_word(v.alphabet(), w)).collect::<Result<Vec<_>, _>>()?;
            let t = words_to_letters(&v, &ws, *allow_empty)?;
            let file = ValuationFile::from_valuation(&t)?;
            out.emit(&serde_json::to_value(&file).expect("serializable"));
            Ok(EXIT_HOLDS)
        }
        Command::Hierarchy { n, samples } => {
            if *n == 0 {
                return Err(Error::ValuationFormat("--n must be at least 1".into()));
            }
            let (t1, t2) = separation_terms(*n);
            let (v, w) = separation_counterexample(*n);
            let a = evaluate(&t1, &v).membership(&w)?;
            let b = evaluate(&t2, &v).membership(&w)?;
            let vars: Vec<String> = (0..=*n).map(separation_var).collect();
            let seed = seed();
            let report = check_membership_side(*n, &sample_valuations(&vars, *n, *samples, seed));
            out.emit(&json!({
                "command": "hierarchy",
                "n": n,
                "t1": render_term(&t1),
                "t2": render_term(&t2),
                "counterexample": counterexample(&Refutation {
                    valuation: v,
                    witness: w,
                    side: Side::LeftNotInRight,
                })?,
                "witness_in_t1": a,
                "witness_in_t2": b,
                "small_alphabet_check": {
                    "letters": n,
                    "seed": seed,
                    "checked": report.checked,
                    "violations": report.violations.len(),
                },
            }));
            let ok = a && !b && report.violations.is_empty();
            Ok(if ok { EXIT_HOLDS } else { EXIT_VERIFY })
        }
        Command::OracleRefute { t1, t2, max_alphabet, max_value_len, max_values, budget_ms, no_cofinite } => {
            let (a, b) = (parse_term(t1, FragmentClass::KaFull)?, parse_term(t2, FragmentClass::KaFull)?);
            let budget = OracleBudget {
                max_alphabet: *max_alphabet,
                max_value_len: *max_value_len,
                max_values_per_var: *max_values,
                time: budget_ms.map(Duration::from_millis),
                include_cofinite: !no_cofinite,
            };
            let mut rec = json!({"command": "oracle-refute", "t1": render_term(&a), "t2": render_term(&b)});
            match oracle_refute(&a, &b, &budget) {
                Some(r) => {
                    rec["result"] = json!("refuted");
                    rec["counterexample"] = counterexample(&r)?;
                    out.emit(&rec);
                    if cli.verify && !replays(&r, &a, &b)? {
                        return Ok(EXIT_VERIFY);
                    }
                    Ok(EXIT_REFUTED)
                }
                None => {
                    rec["result"] = json!("none-within-budget");
                    out.emit(&rec);
                    Ok(EXIT_UNDECIDED)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { pretty: cli.pretty };
    match run(&cli, &out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            out.emit(&json!({"error": e.to_string()}));
            ExitCode::from(EXIT_INPUT)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use levels_core::chfset::{universe_chf, CHFSet};
use levels_core::hfset::HFSet;
use levels_core::logic::translate;
use levels_core::logic::{Evaluator, Formula, Structure};
use levels_core::models::{self, AxiomSuite, CheckOptions, Kind, Language, SecondOrder};
use levels_core::{games, interp, Caps, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "levels",
    version,
    about = "Finite models of level theories, complemented sets and games"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// List a universe, or every small model of a suite with --enumerate.
    Enum {
        #[arg(long, default_value = "lt")]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        height: u32,
        /// Enumerate the `∈`-structures on this many elements instead.
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long, default_value = "LT")]
        suite: AxiomSuite,
    },
    /// Check an axiom suite on a universe or a JSON structure.
    Check {
        #[arg(long, default_value = "lt")]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        height: u32,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value = "LT")]
        suite: AxiomSuite,
        #[arg(long, value_enum, default_value_t = SecondOrderArg::Auto)]
        second_order: SecondOrderArg,
    },
    /// Universe size from the closed form.
    Count {
        #[arg(long, default_value = "lt")]
        kind: Kind,
        n: u32,
        /// Also build the universe and compare.
        #[arg(long)]
        materialize: bool,
    },
    /// Translate a set or a formula.
    Translate {
        #[arg(long, value_enum)]
        dir: Dir,
        input: String,
        /// Level variable for `levelling`.
        #[arg(long, default_value = "s")]
        level: String,
    },
    /// Conway game arithmetic on complemented sets
    #[command(subcommand)]
    Game(GameOp),
    /// Surreal-number tests and products
    #[command(subcommand)]
    Surreal(SurrealOp),
    /// Potentialize a universe and optionally check a modal suite.
    Kripke {
        #[arg(long, default_value_t = 3)]
        height: u32,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "LPST")]
        suite: AxiomSuite,
    },
    /// Evaluate a sentence in a structure.
    Eval {
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, default_value = "lt")]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        height: u32,
        /// Evaluate at this world only (Kripke structures).
        #[arg(long)]
        world: Option<String>,
        formula: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SecondOrderArg {
    Full,
    Instances,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    /// `h`: complemented set to the plain mirror of its helow image.
    Chf2hf,
    /// Inverse of `h`.
    Hf2chf,
    /// Plain set to the helow set it mirrors.
    Helow,
    /// Complemented set to its `∅`-flag code.
    Star,
    /// `∅`-flag code back to the complemented set.
    Unstar,
    StarSt,
    StarBst,
    Modalize,
    Levelling,
    Bullet,
    Dual,
    HelowRelativize,
}

#[derive(Subcommand)]
enum GameOp {
    /// a ≤ b
    Leq { a: String, b: String },
    /// a ≤ b and b ≤ a
    Eq { a: String, b: String },
    /// a + b
    Sum { a: String, b: String },
    /// a - b
    Sub { a: String, b: String },
    /// -a
    Neg { a: String },
    /// Low and high options
    Options { a: String },
    /// Dyadic value if a equals a number born by --days
    Value {
        a: String,
        #[arg(long, default_value_t = 3)]
        days: u32,
    },
    /// Least-height equal game
    Canon {
        a: String,
        #[arg(long, default_value_t = 3)]
        height: u32,
    },
    /// Group laws on every triple at depth ≤ 1 and on seeded samples.
    Laws {
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SurrealOp {
    /// Product of two surreal numbers
    Mul { a: String, b: String },
    /// Whether a is a surreal number
    Is { a: String },
    /// Whether a is a surreal ordinal
    Ordinal { a: String },
}

enum Outcome {
    Ok(Value, String),
    Fail(Value, String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let (v, text, code) = match out {
                Outcome::Ok(v, t) => (v, t, 0),
                Outcome::Fail(v, t) => (v, t, 1),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("json")),
                Format::Text => print!("{}{}", text, if text.ends_with('\n') { "" } else { "\n" }),
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn chf(s: &str) -> Result<CHFSet, Error> {
    CHFSet::parse(s)
}

fn universe(kind: Kind, height: u32, lang: Language, caps: &Caps) -> Result<Structure, Error> {
    Ok(match (kind, lang) {
        (Kind::Lt, Language::OneSorted) => models::lt_universe(height, caps)?.1.into(),
        (Kind::Lt, Language::Ranked) => models::lt_universe_ranked(height, caps)?.1.into(),
        (Kind::Lt, Language::TwoSorted) => {
            models::st_structure_from_lt(&models::lt_universe(height, caps)?.1)?.into()
        }
        (Kind::Lt, Language::Modal) => {
            models::potentialize(&models::lt_universe(height, caps)?.1)?.into()
        }
        (Kind::Blt, Language::OneSorted) => models::blt_universe(height, caps)?.1.into(),
        (Kind::Blt, Language::TwoSorted) => {
            models::bst_structure_from_blt(&models::blt_universe(height, caps)?.1)?.into()
        }
        (Kind::Blt, l) => {
            return Err(Error::Unsupported(format!(
                "no {l:?} structure is built from blt universes"
            )))
        }
    })
}

fn load(path: &PathBuf) -> Result<Structure, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    Structure::from_json(&v)
}

fn verdict(report: models::CheckReport) -> Outcome {
    let v = serde_json::to_value(&report).expect("report serializes");
    let t = report.to_text();
    if report.passed() {
        Outcome::Ok(v, t)
    } else {
        Outcome::Fail(v, t)
    }
}

fn boolean(b: bool) -> Outcome {
    let v = json!({ "result": b });
    if b {
        Outcome::Ok(v, "true".into())
    } else {
        Outcome::Fail(v, "false".into())
    }
}

fn set_out<S: std::fmt::Display>(s: S) -> Outcome {
    Outcome::Ok(json!({ "result": s.to_string() }), s.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let caps = Caps::default();
    match &cli.cmd {
        Cmd::Enum {
            kind,
            height,
            enumerate: Some(k),
            suite,
        } => {
            let _ = (kind, height);
            let found = models::enumerate_structures(*k, *suite, &CheckOptions::default())?;
            let rows: Vec<Value> = found
                .iter()
                .map(|m| Structure::from(m.clone()).to_json())
                .collect();
            let mut t = format!("{} model(s) of {suite} on {k} elements\n", found.len());
            for m in &found {
                let pairs: Vec<String> = m
                    .mem_pairs()
                    .iter()
                    .map(|(a, b)| format!("e{a}∈e{b}"))
                    .collect();
                t.push_str(&format!("  {{{}}}\n", pairs.join(", ")));
            }
            Ok(Outcome::Ok(
                json!({ "suite": suite.to_string(), "k": k, "models": rows }),
                t,
            ))
        }
        Cmd::Enum { kind, height, .. } => {
            let sets: Vec<String> = match kind {
                Kind::Lt => models::lt_sets(*height, &caps)?
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                Kind::Blt => universe_chf(*height, &caps)?
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            };
            let t = sets.join("\n");
            Ok(Outcome::Ok(
                json!({ "kind": kind, "height": height, "sets": sets }),
                t,
            ))
        }
        Cmd::Check {
            kind,
            height,
            model,
            suite,
            second_order,
        } => {
            let s = match model {
                Some(p) => load(p)?,
                None => universe(*kind, *height, suite.language(), &caps)?,
            };
            let opts = CheckOptions {
                caps,
                second_order: match second_order {
                    SecondOrderArg::Full => SecondOrder::Full,
                    SecondOrderArg::Instances => SecondOrder::Instances,
                    SecondOrderArg::Auto => SecondOrder::Auto,
                },
            };
            Ok(verdict(models::check_axioms(&s, *suite, &opts)?))
        }
        Cmd::Count {
            kind,
            n,
            materialize,
        } => {
            let c = models::closed_form_count(*kind, *n)?;
            if !materialize {
                return Ok(Outcome::Ok(
                    json!({ "count": c.to_string() }),
                    c.to_string(),
                ));
            }
            let built = match kind {
                Kind::Lt => models::lt_sets(*n, &caps)?.len(),
                Kind::Blt => universe_chf(*n, &caps)?.len(),
            };
            let v = json!({ "count": c.to_string(), "materialized": built });
            let t = format!("{c} (materialized {built})");
            Ok(if c == built.into() {
                Outcome::Ok(v, t)
            } else {
                Outcome::Fail(v, t)
            })
        }
        Cmd::Translate { dir, input, level } => translate_cmd(*dir, input, level),
        Cmd::Game(op) => game_cmd(op, cli.seed, &caps),
        Cmd::Surreal(op) => match op {
            SurrealOp::Mul { a, b } => Ok(set_out(games::surreal_mul(chf(a)?, chf(b)?)?)),
            SurrealOp::Is { a } => Ok(boolean(games::is_surreal(chf(a)?))),
            SurrealOp::Ordinal { a } => Ok(boolean(games::is_surreal_ordinal(chf(a)?))),
        },
        Cmd::Kripke {
            height,
            check,
            suite,
        } => {
            let (_, a) = models::lt_universe(*height, &caps)?;
            let p = models::potentialize(&a)?;
            if *check {
                return Ok(verdict(models::check_axioms(
                    &p.into(),
                    *suite,
                    &CheckOptions::default(),
                )?));
            }
            let s = Structure::from(p.clone());
            let mut t = format!("{} worlds\n", p.worlds());
            for (w, l) in p.world_labels.iter().enumerate() {
                t.push_str(&format!("  {l}: {} sets\n", p.dom[w].count_ones(..)));
            }
            Ok(Outcome::Ok(s.to_json(), t))
        }
        Cmd::Eval {
            structure,
            kind,
            height,
            world,
            formula,
        } => {
            let f = Formula::parse(formula)?;
            let s = match structure {
                Some(p) => load(p)?,
                None => {
                    let lang = if f.has_modal() {
                        Language::Modal
                    } else {
                        Language::OneSorted
                    };
                    universe(*kind, *height, lang, &caps)?
                }
            };
            let ev = Evaluator::new(&s, caps);
            let b = match (world, &s) {
                (Some(w), Structure::Kripke(k)) => {
                    let i = k
                        .world_index(w)
                        .ok_or_else(|| Error::Precondition(format!("no world `{w}`")))?;
                    ev.eval(&f, &vec![], Some(i))?
                }
                (Some(_), _) => return Err(Error::Sort("--world needs a Kripke structure".into())),
                (None, _) => ev.holds(&f, &vec![])?,
            };
            Ok(boolean(b))
        }
    }
}

fn translate_cmd(dir: Dir, input: &str, level: &str) -> Result<Outcome, Error> {
    let formula = || Formula::parse(input);
    Ok(match dir {
        Dir::Chf2hf => set_out(interp::h_bij(chf(input)?)),
        Dir::Hf2chf => set_out(interp::h_inv(HFSet::parse(input)?)),
        Dir::Helow => set_out(levels_core::chfset::helow_of_hf(HFSet::parse(input)?)),
        Dir::Star => set_out(interp::encode_star(chf(input)?)),
        Dir::Unstar => set_out(interp::decode_star(HFSet::parse(input)?)),
        Dir::StarSt => set_out(translate::translate_star_st(&formula()?)?),
        Dir::StarBst => set_out(translate::translate_star_bst(&formula()?)?),
        Dir::Modalize => set_out(translate::modalize(&formula()?)?),
        Dir::Levelling => set_out(translate::levelling(&formula()?, level)?),
        Dir::Bullet => set_out(translate::mlt_bullet(&formula()?)?),
        Dir::Dual => set_out(translate::dual_swap(&formula()?)),
        Dir::HelowRelativize => set_out(translate::helow_relativize(&formula()?)),
    })
}

fn game_cmd(op: &GameOp, seed: u64, caps: &Caps) -> Result<Outcome, Error> {
    Ok(match op {
        GameOp::Leq { a, b } => boolean(games::game_leq(chf(a)?, chf(b)?)),
        GameOp::Eq { a, b } => boolean(games::game_eq(chf(a)?, chf(b)?)),
        GameOp::Sum { a, b } => set_out(games::game_sum(chf(a)?, chf(b)?)),
        GameOp::Sub { a, b } => set_out(games::game_sub(chf(a)?, chf(b)?)),
        GameOp::Neg { a } => set_out(games::game_neg(chf(a)?)),
        GameOp::Options { a } => {
            let v = games::options(chf(a)?);
            let show = |xs: &[CHFSet]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let t = format!("{{{} | {}}}", show(&v.low_options), show(&v.high_options));
            Outcome::Ok(serde_json::to_value(&v).expect("options serialize"), t)
        }
        GameOp::Value { a, days } => match games::dyadic_value(chf(a)?, *days) {
            Some(q) => Outcome::Ok(json!({ "value": q.to_string() }), q.to_string()),
            None => Outcome::Ok(json!({ "value": null }), "not a number".into()),
        },
        GameOp::Canon { a, height } => set_out(games::canonical_rep(chf(a)?, *height, caps)?),
        GameOp::Laws { depth, samples } => {
            let small = universe_chf(2, caps)?;
            let exhaustive = games::check_group_laws(games::triples(&small));
            let pool = games::sample_games(*depth, 3 * samples, seed, caps)?;
            let sampled = games::check_group_laws(pool.chunks_exact(3).map(|c| (c[0], c[1], c[2])));
            let v = json!({ "exhaustive": exhaustive, "sampled": sampled, "seed": seed });
            let line = |name: &str, r: &games::LawReport| match (&r.law, &r.counterexample) {
                (Some(l), Some([a, b, c])) => format!("{name}: {l} fails on {a}, {b}, {c}\n"),
                _ => format!("{name}: {} cases pass\n", r.cases),
            };
            let t =
                line("depth ≤ 1", &exhaustive) + &line(&format!("sampled depth {depth}"), &sampled);
            if exhaustive.passed() && sampled.passed() {
                Outcome::Ok(v, t)
            } else {
                Outcome::Fail(v, t)
            }
        }
    })
}

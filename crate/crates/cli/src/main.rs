//! Command-line front end.
//!
//! Exit codes: 0 on success (for `verify`, every cell verified or weak),
//! 1 on a failed verification or a computational error, 2 on usage errors
//! (bad type, malformed or non-reduced words, composite `p`, `p` not above
//! the Coxeter number).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tiltval_core::affine::AffineElement;
use tiltval_core::engine::{Engine, Status};
use tiltval_core::hecke::Hecke;
use tiltval_core::rootsys::Mat;
use tiltval_core::{cache::CacheFile, Caps, Error};

#[derive(Parser)]
#[command(name = "tiltval", version, about = "Tilting dimension valuations for affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Root system type: A1, A2, A3, B2, B3 or G2
    #[arg(long = "type", value_name = "TYPE")]
    label: String,
    /// Cache file for canonical basis elements; the TILTVAL_CACHE
    /// environment variable overrides this flag
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Output format (default: text, except `verify` which defaults to json)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basic facts about a root system and its affine Weyl group
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Two-sided cells of the standard parabolic subgroups, with a-values
    Cells {
        #[command(flatten)]
        common: Common,
        /// Only the parabolic omitting this generator (0 is the affine one)
        #[arg(long)]
        omit: Option<usize>,
    },
    /// Kazhdan-Lusztig polynomial P_{x,w} (words over generators, 0 = affine)
    Kl {
        #[command(flatten)]
        common: Common,
        /// Reduced word for x, comma-separated ("e" for the identity)
        #[arg(long)]
        x: String,
        /// Reduced word for w
        #[arg(long)]
        w: String,
    },
    /// Symbolic Delta-sum for w in variables m1.. (mu) and l1.. (lambda)
    Delta {
        #[command(flatten)]
        common: Common,
        /// Reduced word for w
        #[arg(long)]
        w: String,
        /// Optional reduced word for y; its finite part conjugates the sum
        #[arg(long)]
        y: Option<String>,
    },
    /// Verify tilting-dimension valuations across all parabolics and cells
    Verify {
        #[command(flatten)]
        common: Common,
        /// The prime; must exceed the Coxeter number
        #[arg(long)]
        p: u64,
        /// Cap on the length of the y-search
        #[arg(long)]
        max_y_length: Option<u32>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnsupportedType(_)
        | Error::BadGenerator(_)
        | Error::NotReduced(_)
        | Error::NotPrime(_)
        | Error::PTooSmall { .. } => 2,
        _ => 1,
    }
}

fn parse_word(s: &str) -> Result<Vec<usize>, Error> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::NotReduced(Vec::new()))
        })
        .collect()
}

/// Parse a word and insist it is reduced.
fn element_from_reduced(engine: &Engine, s: &str) -> Result<(Vec<usize>, AffineElement), Error> {
    let word = parse_word(s)?;
    let x = engine.weyl().element_from_word(&word)?;
    if engine.weyl().length(&x) as usize != word.len() {
        return Err(Error::NotReduced(word));
    }
    Ok((word, x))
}

fn fmt_word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Word form safe inside a csv field: letters joined by dashes.
fn dash_word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

fn status_str(s: Status) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn cache_path(common: &Common) -> Option<PathBuf> {
    std::env::var_os("TILTVAL_CACHE")
        .map(PathBuf::from)
        .or_else(|| common.cache.clone())
}

fn load_cache(engine: &mut Engine, path: &Option<PathBuf>) -> Result<(), Error> {
    if let Some(p) = path {
        if p.exists() {
            let file = CacheFile::load(p)?;
            engine.import_cache(&file)?;
        }
    }
    Ok(())
}

fn save_cache(engine: &mut Engine, path: &Option<PathBuf>) -> Result<(), Error> {
    if let Some(p) = path {
        engine.export_cache().save(p)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Info { common } => {
            let engine = Engine::new(&common.label, Caps::default())?;
            let rs = engine.rs();
            let caps = Caps::default();
            // (omitted, gens, order, invariant point)
            let mut parabolics = Vec::new();
            for i in 0..engine.weyl().num_gens() {
                let par = engine.weyl().parabolic(i, &caps)?;
                let mu = engine.weyl().invariant_point(&par).coords_string();
                parabolics.push((i, par.gens.clone(), par.elements.len(), mu));
            }
            match common.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let doc = json!({
                        "label": rs.label,
                        "rank": rs.rank,
                        "positive_roots": rs.num_positive_roots(),
                        "coxeter_number": rs.coxeter_number,
                        "cartan": rs.cartan,
                        "generators": engine.weyl().num_gens(),
                        "parabolics": parabolics
                            .iter()
                            .map(|(i, gens, order, mu)| {
                                json!({
                                    "omitted": i,
                                    "gens": gens,
                                    "order": order,
                                    "mu": mu,
                                })
                            })
                            .collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    println!("label,rank,positive_roots,coxeter_number,generators");
                    println!(
                        "{},{},{},{},{}",
                        rs.label,
                        rs.rank,
                        rs.num_positive_roots(),
                        rs.coxeter_number,
                        engine.weyl().num_gens()
                    );
                    println!("omitted,gens,order,mu");
                    for (i, gens, order, mu) in &parabolics {
                        println!("{},{},{},{}", i, dash_word(gens), order, mu.join(" "));
                    }
                }
                Format::Text => {
                    println!("type {}", rs.label);
                    println!("rank {}", rs.rank);
                    println!("positive roots {}", rs.num_positive_roots());
                    println!("coxeter number {}", rs.coxeter_number);
                    for row in &rs.cartan {
                        println!(
                            "cartan {}",
                            row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
                        );
                    }
                    println!(
                        "generators {} (0 = affine reflection)",
                        engine.weyl().num_gens()
                    );
                    for (i, gens, order, mu) in &parabolics {
                        println!(
                            "parabolic omit {i}: order {order} (gens {}), mu = ({})",
                            fmt_word(gens),
                            mu.join(", ")
                        );
                    }
                }
            }
            Ok(0)
        }
        Cmd::Cells { common, omit } => {
            let mut engine = Engine::new(&common.label, Caps::default())?;
            let path = cache_path(&common);
            load_cache(&mut engine, &path)?;
            let caps = Caps::default();
            let omits: Vec<usize> = match omit {
                Some(i) => {
                    if i >= engine.weyl().num_gens() {
                        return Err(Error::BadGenerator(i));
                    }
                    vec![i]
                }
                None => (0..engine.weyl().num_gens()).collect(),
            };
            let mut parabolics = Vec::new();
            for omitted in &omits {
                let par = engine.weyl().parabolic(*omitted, &caps)?;
                let cells = engine.anti.hecke.two_sided_cells(&par)?;
                parabolics.push((par, cells));
            }
            match common.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let doc = json!({
                        "label": engine.rs().label,
                        "parabolics": parabolics
                            .iter()
                            .map(|(par, cells)| {
                                json!({
                                    "omitted": par.omitted,
                                    "gens": par.gens,
                                    "order": par.elements.len(),
                                    "cells": cells
                                        .iter()
                                        .map(|c| {
                                            json!({
                                                "a": c.a,
                                                "size": c.elements.len(),
                                                "elements": c
                                                    .elements
                                                    .iter()
                                                    .map(|x| engine.weyl().reduced_word(x))
                                                    .collect::<Vec<_>>(),
                                            })
                                        })
                                        .collect::<Vec<_>>(),
                                })
                            })
                            .collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    println!("omitted,gens,cell,a,size,elements");
                    for (par, cells) in &parabolics {
                        for (i, c) in cells.iter().enumerate() {
                            let words: Vec<String> = c
                                .elements
                                .iter()
                                .map(|x| dash_word(&engine.weyl().reduced_word(x)))
                                .collect();
                            println!(
                                "{},{},{},{},{},{}",
                                par.omitted,
                                dash_word(&par.gens),
                                i,
                                c.a,
                                c.elements.len(),
                                words.join(" ")
                            );
                        }
                    }
                }
                Format::Text => {
                    for (par, cells) in &parabolics {
                        println!(
                            "parabolic omit {} (gens {}): order {}",
                            par.omitted,
                            fmt_word(&par.gens),
                            par.elements.len()
                        );
                        for (i, c) in cells.iter().enumerate() {
                            let words: Vec<String> = c
                                .elements
                                .iter()
                                .map(|x| fmt_word(&engine.weyl().reduced_word(x)))
                                .collect();
                            println!(
                                "  cell {i}: a={} size={} [{}]",
                                c.a,
                                c.elements.len(),
                                words.join(" ")
                            );
                        }
                    }
                }
            }
            save_cache(&mut engine, &path)?;
            Ok(0)
        }
        Cmd::Kl { common, x, w } => {
            let mut engine = Engine::new(&common.label, Caps::default())?;
            let path = cache_path(&common);
            load_cache(&mut engine, &path)?;
            let (x_word, xe) = element_from_reduced(&engine, &x)?;
            let (w_word, we) = element_from_reduced(&engine, &w)?;
            let coeffs = engine.anti.hecke.kl_q_coeffs(&xe, &we);
            let poly = Hecke::format_q_poly(&coeffs);
            match common.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let doc = json!({
                        "label": engine.rs().label,
                        "x": x_word,
                        "w": w_word,
                        "coeffs": coeffs,
                        "poly": poly,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    println!("x,w,poly");
                    println!("{},{},{}", dash_word(&x_word), dash_word(&w_word), poly);
                }
                Format::Text => {
                    println!("P[{} ; {}] = {}", fmt_word(&x_word), fmt_word(&w_word), poly);
                }
            }
            save_cache(&mut engine, &path)?;
            Ok(0)
        }
        Cmd::Delta { common, w, y } => {
            let mut engine = Engine::new(&common.label, Caps::default())?;
            let path = cache_path(&common);
            load_cache(&mut engine, &path)?;
            let (w_word, we) = element_from_reduced(&engine, &w)?;
            let (y_word, ybar) = match y {
                Some(s) => {
                    let (word, ye) = element_from_reduced(&engine, &s)?;
                    (word, ye.mat)
                }
                None => (Vec::new(), Mat::identity(engine.rs().rank)),
            };
            let poly = engine.delta_sum_formatted(&ybar, &we);
            match common.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let doc = json!({
                        "label": engine.rs().label,
                        "w": w_word,
                        "y": y_word,
                        "poly": poly,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    println!("w,y,poly");
                    println!("{},{},{poly}", dash_word(&w_word), dash_word(&y_word));
                }
                Format::Text => {
                    println!("{poly}");
                }
            }
            save_cache(&mut engine, &path)?;
            Ok(0)
        }
        Cmd::Verify {
            common,
            p,
            max_y_length,
        } => {
            let mut caps = Caps::default();
            if let Some(m) = max_y_length {
                caps.max_y_length = m;
            }
            let mut engine = Engine::new(&common.label, caps)?;
            // both preconditions are usage errors, caught before any work
            if !tiltval_core::engine::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let h = engine.rs().coxeter_number;
            if p <= h as u64 {
                return Err(Error::PTooSmall { p, h });
            }
            let path = cache_path(&common);
            load_cache(&mut engine, &path)?;
            let report = engine.verify(p)?;
            match common.format.unwrap_or(Format::Json) {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap());
                }
                Format::Csv => {
                    println!(
                        "label,p,omitted,cell,a,size,status,min_valuation,\
                         lambdas_scanned,w,y,lambda,dimension,valuation"
                    );
                    for r in &report.reports {
                        let min_nu = r
                            .min_valuation
                            .map(|v| v.to_string())
                            .unwrap_or_default();
                        let (w, y, lam, dim, nu) = match &r.witness {
                            Some(wit) => (
                                dash_word(&wit.w),
                                dash_word(&wit.y),
                                wit.lambda
                                    .iter()
                                    .map(|c| c.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" "),
                                wit.dimension.clone(),
                                wit.valuation.to_string(),
                            ),
                            None => Default::default(),
                        };
                        println!(
                            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                            report.label,
                            report.p,
                            r.omitted,
                            r.cell_index,
                            r.a,
                            r.cell_size,
                            status_str(r.status),
                            min_nu,
                            r.lambdas_scanned,
                            w,
                            y,
                            lam,
                            dim,
                            nu
                        );
                    }
                }
                Format::Text => {
                    println!("type {} p={}", report.label, report.p);
                    for r in &report.reports {
                        let detail = match &r.witness {
                            Some(wit) => format!(
                                "min_nu={} w={} y={} lambda={:?} dim={}",
                                r.min_valuation.unwrap_or(0),
                                fmt_word(&wit.w),
                                fmt_word(&wit.y),
                                wit.lambda,
                                wit.dimension
                            ),
                            None => "no witness".to_string(),
                        };
                        println!(
                            "omit {} cell {} (a={}, size {}): {} {}",
                            r.omitted, r.cell_index, r.a, r.cell_size,
                            status_str(r.status), detail
                        );
                    }
                    println!(
                        "{}",
                        if report.all_verified {
                            "all verified"
                        } else {
                            "NOT all verified"
                        }
                    );
                }
            }
            save_cache(&mut engine, &path)?;
            let acceptable = report
                .reports
                .iter()
                .all(|r| matches!(r.status, Status::Verified | Status::Weak));
            Ok(if acceptable { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

//! The `treeseries` command line.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::hopf::{Antipode, Coproduct, Gen, Morphism, Tensor};
use crate::io::{format_series, read_series, series_to_json, tensor_to_json, Shape};
use crate::operad::{Instance, MonoidElement};
use crate::series::GradedSeries;
use crate::tree::{enumerate_trees, Graft, Tree};
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "treeseries", version, about = "Series over planar binary trees, their groups and Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the result to this file instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Invertible series over a monoid.
    Inv,
    /// Diffeomorphisms over an operad.
    Dif,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Over,
    Under,
}

impl Side {
    fn graft(self) -> Graft {
        match self {
            Side::Over => Graft::Over,
            Side::Under => Graft::Under,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Map {
    /// The order map on series.
    Order,
    /// `s/vtx ↦ s` from the operadic to the rho algebra.
    P,
    /// Over-factorization from the rho to the alpha algebra.
    R,
}

#[derive(Debug, Args)]
pub struct Truncation {
    /// Truncation order; defaults to the largest grading in the input.
    #[arg(short = 'N', long = "max-order")]
    pub max_order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Binary {
    /// Left operand: a file path or an inline expression.
    #[arg(long)]
    pub lhs: String,
    /// Right operand: a file path or an inline expression.
    #[arg(long)]
    pub rhs: String,
    #[command(flatten)]
    pub n: Truncation,
}

#[derive(Debug, Args)]
pub struct Unary {
    /// A file path or an inline expression.
    #[arg(long)]
    pub input: String,
    #[command(flatten)]
    pub n: Truncation,
}

#[derive(Debug, Args)]
pub struct Generator {
    /// Coproduct or coaction, e.g. inv-over, dif, rho, alpha, fdb, coact-rho.
    #[arg(long)]
    pub algebra: String,
    /// A tree generator (bitstring or expression).
    #[arg(long, conflicts_with = "input")]
    pub tree: Option<String>,
    /// A generator code such as a3 or b2.
    #[arg(long)]
    pub input: Option<String>,
    /// Use the commutative algebra.
    #[arg(long)]
    pub commutative: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the trees of one order in canonical order.
    Trees {
        #[arg(long)]
        order: usize,
    },
    /// Operadic composition of two series.
    Compose(Binary),
    /// Monoid product of two series.
    Multiply {
        #[command(flatten)]
        args: Binary,
        /// Product on trees: inv-over or inv-under.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Inverse for the monoid product.
    Invert {
        #[command(flatten)]
        args: Unary,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Compositional inverse.
    CompInvert(Unary),
    /// Right action `f^ψ` of the diffeomorphism `--rhs` on `--lhs`.
    Act {
        #[command(flatten)]
        args: Binary,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// The alpha series built from a tree series.
    Alpha(Unary),
    /// Split a diffeomorphism as an under-comb series composed with a rho series.
    Factor(Unary),
    /// Coproduct or coaction of a generator.
    Coproduct(Generator),
    /// Antipode of a generator.
    Antipode(Generator),
    /// Order map on a series, or a Hopf projection of a tree generator.
    Project {
        #[arg(long, value_enum, default_value_t = Map::Order)]
        map: Map,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        commutative: bool,
    },
    /// Comb section of an integer-indexed series.
    Section {
        #[command(flatten)]
        args: Unary,
        #[arg(long, value_enum, default_value_t = Side::Over)]
        side: Side,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        n: Truncation,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Outcome of a command: the rendered output and the exit status.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type R<T> = Result<T, Failure>;

fn source(arg: &str) -> R<String> {
    let p = Path::new(arg);
    if p.is_file() {
        return std::fs::read_to_string(p).map_err(|e| Failure(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn monoid_shape(algebra: &Option<String>) -> R<Shape> {
    match algebra.as_deref() {
        None => Ok(Shape::Monoid(None)),
        Some("inv-over") => Ok(Shape::Monoid(Some("over".into()))),
        Some("inv-under") => Ok(Shape::Monoid(Some("under".into()))),
        Some(other) => Err(Failure(format!("unknown monoid product {other}; use inv-over or inv-under"))),
    }
}

fn operad(arg: &str, n: Option<usize>) -> R<GradedSeries> {
    Ok(read_series(&source(arg)?, &Shape::Operad, Instance::Dup, n)?)
}

fn monoid(arg: &str, shape: &Shape, n: Option<usize>) -> R<GradedSeries> {
    Ok(read_series(&source(arg)?, shape, Instance::Dup, n)?)
}

/// Read as a monoid series when asked or when a unit term is present,
/// otherwise as an operad series.
fn either(arg: &str, kind: Option<Kind>, n: Option<usize>) -> R<GradedSeries> {
    let text = source(arg)?;
    match kind {
        Some(Kind::Inv) => Ok(read_series(&text, &Shape::Monoid(None), Instance::Dup, n)?),
        Some(Kind::Dif) => Ok(read_series(&text, &Shape::Operad, Instance::Dup, n)?),
        None => {
            let m = read_series(&text, &Shape::Monoid(None), Instance::Dup, n)?;
            if m.carrier().is_monoid() && m.coeff_ref(&MonoidElement::Unit).is_none() {
                return Ok(read_series(&text, &Shape::Operad, Instance::Dup, n)?);
            }
            Ok(m)
        }
    }
}

fn tree_arg(s: &str) -> R<Tree> {
    Ok(Tree::parse(s)?)
}

fn generator(g: &Generator) -> R<Gen> {
    match (&g.tree, &g.input) {
        (Some(t), _) => Ok(Gen::Tree(tree_arg(t)?)),
        (None, Some(code)) => Ok(Gen::parse(code)?),
        (None, None) => Err(Failure("give --tree or --input".into())),
    }
}

fn coproduct(name: &str) -> R<Coproduct> {
    Coproduct::from_name(name).ok_or_else(|| {
        let names: Vec<String> = Coproduct::ALL.iter().map(|c| c.name()).collect();
        Failure(format!("unknown algebra {name}; expected one of {}", names.join(", ")))
    })
}

fn render_series(s: &GradedSeries, format: Format) -> String {
    match format {
        Format::Text => format_series(s),
        Format::Json => pretty(&series_to_json(s)),
    }
}

fn render_tensor(t: &Tensor, format: Format) -> String {
    match format {
        Format::Text => t.to_string(),
        Format::Json => pretty(&tensor_to_json(t)),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn execute(cli: &Cli) -> R<Outcome> {
    let f = cli.format;
    let ok = |text: String| Ok(Outcome { text, status: 0 });
    match &cli.command {
        Command::Trees { order } => {
            let trees = enumerate_trees(*order);
            match f {
                Format::Text => ok(trees.iter().map(|t| t.code().to_string()).collect::<Vec<_>>().join("\n")),
                Format::Json => ok(pretty(&json!(trees.iter().map(Tree::code).collect::<Vec<_>>()))),
            }
        }
        Command::Compose(b) => {
            let (phi, psi) = (operad(&b.lhs, b.n.max_order)?, operad(&b.rhs, b.n.max_order)?);
            ok(render_series(&phi.compose(&psi)?, f))
        }
        Command::Multiply { args, algebra } => {
            let shape = monoid_shape(algebra)?;
            let (a, b) = (monoid(&args.lhs, &shape, args.n.max_order)?, monoid(&args.rhs, &shape, args.n.max_order)?);
            ok(render_series(&a.mul(&b)?, f))
        }
        Command::Invert { args, algebra } => {
            let a = monoid(&args.input, &monoid_shape(algebra)?, args.n.max_order)?;
            ok(render_series(&a.inverse()?, f))
        }
        Command::CompInvert(u) => ok(render_series(&operad(&u.input, u.n.max_order)?.comp_inverse()?, f)),
        Command::Act { args, algebra } => {
            let a = monoid(&args.lhs, &monoid_shape(algebra)?, args.n.max_order)?;
            let psi = operad(&args.rhs, args.n.max_order)?;
            ok(render_series(&a.act(&psi)?, f))
        }
        Command::Alpha(u) => {
            let a = monoid(&u.input, &Shape::Monoid(Some("over".into())), u.n.max_order)?;
            ok(render_series(&GradedSeries::alpha_from(&a)?, f))
        }
        Command::Factor(u) => {
            let (psi, g) = operad(&u.input, u.n.max_order)?.factor_under_rho()?;
            match f {
                Format::Text => ok(format!("psi = {}\ng = {}", format_series(&psi), format_series(&g))),
                Format::Json => ok(pretty(&json!({"psi": series_to_json(&psi), "g": series_to_json(&g)}))),
            }
        }
        Command::Coproduct(g) => {
            let cop = coproduct(&g.algebra)?;
            ok(render_tensor(&cop.generator(&generator(g)?, g.commutative)?, f))
        }
        Command::Antipode(g) => {
            let cop = coproduct(&g.algebra)?;
            if cop.is_coaction() {
                return Err(Failure(format!("{} is a coaction and has no antipode", cop.name())));
            }
            let mut s = Antipode::new(cop, cop.source(g.commutative))?;
            ok(render_tensor(&s.generator(&generator(g)?)?, f))
        }
        Command::Project {
            map,
            input,
            tree,
            kind,
            commutative,
        } => match map {
            Map::Order => {
                let input = input.as_deref().ok_or_else(|| Failure("project needs --input".into()))?;
                ok(render_series(&either(input, *kind, None)?.project_order(), f))
            }
            Map::P | Map::R => {
                let t = tree.as_deref().ok_or_else(|| Failure("--map p and r need --tree".into()))?;
                let m = if *map == Map::P { Morphism::ProjectP } else { Morphism::ProjectR };
                ok(render_tensor(&m.generator(&Gen::Tree(tree_arg(t)?), *commutative)?, f))
            }
        },
        Command::Section { args, side, kind } => {
            let s = either(&args.input, *kind, args.n.max_order)?;
            ok(render_series(&s.section_comb(side.graft())?, f))
        }
        Command::Verify { suite, n, seed } => {
            let s = Suite::from_name(suite).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Failure(format!("unknown suite {suite}; expected one of {}", names.join(", ")))
            })?;
            let report = verify::run(s, n.max_order, *seed);
            let status = if report.passed() { 0 } else { 1 };
            let text = match f {
                Format::Text => report.to_string(),
                Format::Json => pretty(&report.to_json()),
            };
            Ok(Outcome { text, status })
        }
    }
}

/// Run the command line; usage and input errors give status 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                text: e.render().to_string(),
                status,
            };
        }
    };
    let format = cli.format;
    let mut outcome = match execute(&cli) {
        Ok(o) => o,
        Err(Failure(msg)) => Outcome {
            text: match format {
                Format::Text => format!("error: {msg}"),
                Format::Json => pretty(&json!({"error": msg})),
            },
            status: 2,
        },
    };
    if let (Some(path), 0 | 1) = (&cli.output, outcome.status) {
        let written = std::fs::File::create(path).and_then(|mut file| writeln!(file, "{}", outcome.text));
        if let Err(e) = written {
            outcome = Outcome {
                text: format!("error: {path}: {e}"),
                status: 2,
            };
        } else {
            outcome.text.clear();
        }
    }
    outcome
}

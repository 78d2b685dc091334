//! The `entropic` command line.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when a checked property fails (a witness is printed), 2 for bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extension::{
    build_extension, coboundary, cocycle_witness, extensions_equivalent, second_cohomology, AffineAction,
};
use crate::format::{
    parse_chain, parse_cochain1, parse_cochain2, parse_graph, parse_link, parse_magma, parse_plane_graph,
    write_cochain1, write_cochain2, write_magma, MagmaFile,
};
use crate::graph::{all_ordering_values, make_graph_fixture, quotient_invariant, tutte_value_with_order, GraphFixture};
use crate::homology::{class_order_in_homology, hat_homology, homology, Coefficients, NuSequence, TupleChain};
use crate::intlin::HomologyResult;
use crate::link::{
    bracket_with_order, example_two_crossing_diagram, make_move_fixture, order_invariance_check, LinkDiagram, MoveKind,
};
use crate::magma::{
    enumerate_magmas, BracketVariant, EnumerationFilter, EventualSequence, FiniteMagma, MagmaFamily, Sign,
};
use crate::tait::{cross_check, medial_link};

#[derive(Parser, Debug)]
#[command(name = "entropic", version, about = "Invariants, homology and extensions of finite entropic magmas")]
pub struct Cli {
    /// Emit one JSON object instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every sampled computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a property of a magma file.
    Check {
        property: Property,
        /// Magma files; `compatible` takes one per family member.
        #[arg(required = true)]
        magmas: Vec<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Bracket value of a link diagram.
    Bracket {
        magma: PathBuf,
        link: PathBuf,
        #[arg(long)]
        order: Option<String>,
        /// Also compare against this many random crossing orders.
        #[arg(long, default_value_t = 0)]
        verify_orders: usize,
    },
    /// Value of a signed graph.
    Tutte {
        magma: PathBuf,
        graph: PathBuf,
        #[arg(long)]
        order: Option<String>,
        /// Report the set of values over edge orders.
        #[arg(long)]
        all_orders: bool,
        /// Orders sampled when there are too many to try them all.
        #[arg(long, default_value_t = 100)]
        verify_orders: usize,
    },
    /// Emit the medial link diagram of a plane graph.
    Tait { plane: PathBuf },
    /// Compare a plane graph's value with the bracket of its medial diagram.
    Crosscheck { magma: PathBuf, plane: PathBuf },
    /// Quotient of the magma by the congruence generated by the graph's values.
    Quotient {
        magma: PathBuf,
        graph: PathBuf,
        #[arg(long, default_value_t = 100)]
        verify_orders: usize,
        /// Accept a sampled value set.
        #[arg(long)]
        force: bool,
    },
    /// Entropic homology H_n.
    Homology {
        magma: PathBuf,
        #[arg(short = 'n', long = "level")]
        n: usize,
        /// ν at level n, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// ν at level n + 1.
        #[arg(long = "nu-next", visible_alias = "nu3", allow_hyphen_values = true)]
        nu_next: Option<String>,
        #[arg(long, default_value = "z")]
        coeff: String,
        /// Build bases beyond the size guard.
        #[arg(long)]
        force: bool,
        /// A cycle whose class order to report: a chain, or `@file`.
        #[arg(long, allow_hyphen_values = true)]
        cycle: Option<String>,
        /// Recompute H_n for every ν at levels n and n + 1 with entries in -R..=R.
        #[arg(long, value_name = "R")]
        sweep: Option<i64>,
    },
    /// Homology of a compatible family with the hat boundary.
    Hhat {
        /// Family members; none with `--census`.
        magmas: Vec<PathBuf>,
        #[arg(short = 'n', long = "level")]
        n: usize,
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the sign (-1)^j at level j.
        #[arg(long)]
        alt: bool,
        #[arg(long = "nu-next", visible_alias = "nu", allow_hyphen_values = true)]
        nu_next: Option<String>,
        #[arg(long)]
        force: bool,
        /// Survey every entropic magma up to this order, extended by the projections.
        #[arg(long, value_name = "MAX_ORDER")]
        census: Option<usize>,
    },
    /// Check the entropic 2-cocycle condition.
    CocycleCheck {
        magma: PathBuf,
        cochain: PathBuf,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Emit the coboundary of a 1-cochain.
    Coboundary {
        magma: PathBuf,
        cochain: PathBuf,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Emit the extension magma on Z_m x X.
    Extension {
        magma: PathBuf,
        cochain: PathBuf,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Decide whether two 2-cochains give equivalent extensions.
    Equivalent {
        magma: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// Second cohomology with coefficients in Z_m.
    H2 {
        magma: PathBuf,
        #[command(flatten)]
        action: ActionArgs,
    },
    /// List the entropic magmas of an order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Filter::Entropic)]
        filter: Filter,
        /// Sequence for the bracket filters, e.g. "repeat 1 2 4".
        #[arg(long)]
        seq: Option<String>,
        /// Only print the count.
        #[arg(long)]
        count: bool,
    },
    /// Emit fixture files.
    Fixture {
        #[command(subcommand)]
        kind: FixtureKind,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureKind {
    /// A graph family member: line, cycle, cycle-doubled, path:+-+, double-pos, double-neg.
    Graph { family: String, n: usize },
    /// A pair of diagrams related by a move: r2-denominator, r2-numerator, r3, fourmove.
    Move {
        kind: String,
        /// Diagram to apply the move to (default: one circle).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Write `before.lnk` and `after.lnk` here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The two-crossing diagram with leaves (3,4,2,3).
    TwoCrossing,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Entropic,
    Bracket,
    Fourmove,
    Compatible,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filter {
    Entropic,
    Bracket,
    Denominator,
    Numerator,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Signs of the members, e.g. +,-,-.
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Append the left and right projections, signs (+,-,-).
    #[arg(long)]
    with_projections: bool,
}

#[derive(Args, Debug)]
struct ActionArgs {
    /// Modulus of the coefficient group; 0 means Z.
    #[arg(long = "mod")]
    modulus: u64,
    #[arg(long, allow_hyphen_values = true)]
    t: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    a0: i64,
}

impl ActionArgs {
    fn action(&self) -> AffineAction {
        AffineAction::new(self.modulus, self.t, self.s, self.a0)
    }
}

/// A text report with its JSON counterpart and exit code.
#[derive(Default)]
struct Report {
    text: String,
    json: Map<String, Value>,
    code: i32,
}

impl Report {
    fn put(&mut self, key: &str, shown: impl Display, value: Value) {
        self.text.push_str(&format!("{key}: {shown}\n"));
        self.json.insert(key.replace(' ', "_"), value);
    }

    /// `key = group`, the customary way to print a homology group.
    fn group(&mut self, key: &str, h: &HomologyResult) {
        self.text.push_str(&format!("{key} = {h}\n"));
        self.json.insert(key.into(), json!(h));
    }

    fn show(&mut self, key: &str, shown: impl Display) {
        let s = shown.to_string();
        self.put(key, &s, Value::String(s.clone()));
    }

    fn raw(&mut self, key: &str, body: String) {
        self.text.push_str(&body);
        self.json.insert(key.into(), Value::String(body));
    }

    fn fail(&mut self) {
        self.code = 1;
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses the arguments, runs the command and writes the report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(report.json)).unwrap_or_default())
            } else {
                write!(out, "{}", report.text)
            };
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotEntropic { .. }
                | Error::NotAChainComplex(_)
                | Error::IncompatibleFamily(_)
                | Error::ImageNotInKernel(_) => 1,
                _ => 2,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_magma(path: &Path) -> Result<MagmaFile> {
    parse_magma(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

fn with_sequence(file: &MagmaFile, path: &Path) -> Result<EventualSequence> {
    file.sequence.clone().ok_or_else(|| Error::InvalidArgument(format!("{} has no `seq` line", path.display())))
}

fn comma_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| w.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad {what} {w:?}"))))
        .collect()
}

/// A 1-based order on the command line, 0-based in the library.
fn order_arg(text: &Option<String>, default: Vec<usize>) -> Result<Vec<usize>> {
    match text {
        None => Ok(default),
        Some(t) => comma_list::<usize>(t, "index")?
            .into_iter()
            .map(|i| i.checked_sub(1).ok_or_else(|| Error::InvalidArgument("orders are 1-based".into())))
            .collect(),
    }
}

fn family(paths: &[PathBuf], args: &FamilyArgs) -> Result<MagmaFamily> {
    let members = paths.iter().map(|p| load_magma(p).map(|f| f.magma)).collect::<Result<Vec<_>>>()?;
    let mut fam = if args.with_projections {
        if members.len() != 1 {
            return Err(Error::InvalidArgument("--with-projections takes exactly one magma".into()));
        }
        MagmaFamily::with_projections(members[0].clone())
    } else {
        let signs = vec![Sign::Plus; members.len()];
        MagmaFamily::new(members, signs)?
    };
    if let Some(s) = &args.signs {
        fam = fam.with_signs(comma_list(s, "sign")?)?;
    }
    Ok(fam)
}

fn list(v: &[impl Display]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn nus_for(n: usize, nu: &Option<String>, nu_next: &Option<String>) -> Result<NuSequence> {
    let mut nus = NuSequence::new();
    if let Some(t) = nu {
        nus = nus.with(n, comma_list(t, "coefficient")?);
    }
    if let Some(t) = nu_next {
        nus = nus.with(n + 1, comma_list(t, "coefficient")?);
    }
    Ok(nus)
}

fn execute(cli: &Cli) -> Result<Report> {
    let mut r = Report::default();
    match &cli.command {
        Command::Check { property, magmas, family: fam_args } => check(&mut r, *property, magmas, fam_args)?,
        Command::Bracket { magma, link, order, verify_orders } => {
            let file = load_magma(magma)?;
            let seq = with_sequence(&file, magma)?;
            let d = parse_link(&read(link)?).map_err(|e| in_file(link, e))?;
            let order = order_arg(order, d.identity_order())?;
            let value = bracket_with_order(&file.magma, &seq, &d, &order)?;
            r.put("bracket", value, json!(value));
            if *verify_orders > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let same = order_invariance_check(&file.magma, &seq, &d, *verify_orders, &mut rng)?;
                r.put("random orders", verify_orders, json!(verify_orders));
                r.put("order independent", yes_no(same), json!(same));
                if !same {
                    r.fail();
                }
            }
        }
        Command::Tutte { magma, graph, order, all_orders, verify_orders } => {
            let file = load_magma(magma)?;
            let seq = with_sequence(&file, magma)?;
            let g = parse_graph(&read(graph)?).map_err(|e| in_file(graph, e))?;
            let order = order_arg(order, g.identity_order())?;
            let value = tutte_value_with_order(&file.magma, &seq, &g, &order)?;
            r.put("tutte", value, json!(value));
            if *all_orders {
                let vals = all_ordering_values(&file.magma, &seq, &g, *verify_orders, cli.seed)?;
                let v: Vec<usize> = vals.values.iter().copied().collect();
                r.put("values", format!("{{{}}}", list(&v)), json!(v));
                r.put("orders tried", vals.orders_tried, json!(vals.orders_tried));
                r.put("exact", yes_no(vals.exact), json!(vals.exact));
            }
        }
        Command::Tait { plane } => {
            let pg = parse_plane_graph(&read(plane)?).map_err(|e| in_file(plane, e))?;
            if let Some(w) = pg.euler_warning() {
                r.text.push_str(&format!("# warning: {w}\n"));
                r.json.insert("warning".into(), json!(w));
            }
            r.raw("link", medial_link(&pg)?.to_string());
        }
        Command::Crosscheck { magma, plane } => {
            let file = load_magma(magma)?;
            let seq = with_sequence(&file, magma)?;
            let pg = parse_plane_graph(&read(plane)?).map_err(|e| in_file(plane, e))?;
            if let Some(w) = pg.euler_warning() {
                r.show("warning", w);
            }
            let c = cross_check(&file.magma, &seq, &pg)?;
            r.put("tutte", c.tutte, json!(c.tutte));
            r.put("bracket", c.bracket, json!(c.bracket));
            match &c.mismatch {
                None => r.put("states", "consistent", json!("consistent")),
                Some(m) => {
                    let state: Vec<&str> = m.contracted.iter().map(|&b| if b { "c" } else { "d" }).collect();
                    r.put(
                        "states",
                        format!("mismatch at {} ({} vertices, {} circles)", state.join(""), m.vertices, m.circles),
                        json!({"state": state.join(""), "vertices": m.vertices, "circles": m.circles}),
                    );
                }
            }
            r.put("agree", yes_no(c.passed()), json!(c.passed()));
            if !c.passed() {
                r.fail();
            }
        }
        Command::Quotient { magma, graph, verify_orders, force } => {
            let file = load_magma(magma)?;
            let seq = with_sequence(&file, magma)?;
            let g = parse_graph(&read(graph)?).map_err(|e| in_file(graph, e))?;
            let q = quotient_invariant(&file.magma, &seq, &g, *verify_orders, cli.seed, *force)?;
            let v: Vec<usize> = q.values.values.iter().copied().collect();
            r.put("values", format!("{{{}}}", list(&v)), json!(v));
            r.put("exact", yes_no(q.values.exact), json!(q.values.exact));
            let classes = q.partition.classes();
            let shown: Vec<String> = classes.iter().map(|c| format!("{{{}}}", list(c))).collect();
            r.put("classes", shown.join(" "), json!(classes));
            r.put("class", q.class, json!(q.class));
            r.raw("quotient", write_magma(&q.quotient, None));
        }
        Command::Homology { magma, n, nu, nu_next, coeff, force, cycle, sweep } => {
            let m = load_magma(magma)?.magma;
            let coeff: Coefficients = coeff.parse()?;
            if let Some(range) = sweep {
                homology_sweep(&mut r, &m, *n, *range, coeff, *force)?;
                return Ok(r);
            }
            let nus = nus_for(*n, nu, nu_next)?;
            let h = homology(&m, *n, &nus, coeff, *force)?;
            r.group(&format!("H_{n}"), &h);
            r.show("coefficients", coeff);
            if let Some(c) = cycle {
                let chain = load_chain(c)?;
                if chain.level() != *n {
                    return Err(Error::LevelMismatch { expected: *n, found: chain.level() });
                }
                let order = class_order_in_homology(&m, &chain, &nus, *force)?;
                r.show("cycle", &chain);
                r.show("class order", order);
            }
        }
        Command::Hhat { magmas, n, family: fam_args, alt, nu_next, force, census } => {
            let nus = nus_for(*n, &None, nu_next)?;
            if let Some(max) = census {
                hhat_census(&mut r, *max, *n, &nus, *alt, *force)?;
                return Ok(r);
            }
            if magmas.is_empty() {
                return Err(Error::InvalidArgument("hhat needs magma files or --census".into()));
            }
            let f = family(magmas, fam_args)?;
            let h = hat_homology(&f, *n, &nus, *alt, *force)?;
            r.show("signs", list(f.signs()));
            r.group(&format!("Hhat_{n}"), &h);
        }
        Command::CocycleCheck { magma, cochain, action } => {
            let m = load_magma(magma)?.magma;
            let act = action.action();
            let f = parse_cochain2(&read(cochain)?, m.order()).map_err(|e| in_file(cochain, e))?;
            let w = cocycle_witness(&f, &act, &m)?;
            r.show("action", act);
            r.put("cocycle", yes_no(w.is_none()), json!(w.is_none()));
            if let Some(x) = w {
                r.put("witness", format!("({})", list(&x)), json!(x));
                r.fail();
            }
        }
        Command::Coboundary { magma, cochain, action } => {
            let m = load_magma(magma)?.magma;
            let c = parse_cochain1(&read(cochain)?, m.order()).map_err(|e| in_file(cochain, e))?;
            r.raw("cochain", write_cochain2(&coboundary(&c, &action.action(), &m)?));
        }
        Command::Extension { magma, cochain, action } => {
            let m = load_magma(magma)?.magma;
            let act = action.action();
            let f = parse_cochain2(&read(cochain)?, m.order()).map_err(|e| in_file(cochain, e))?;
            let e = build_extension(&m, &act, &f)?;
            let entropic = e.is_entropic();
            r.text.push_str(&format!("# extension by {act}; (a, x) is element a*{} + x\n", m.order()));
            r.text.push_str(&format!("# entropic: {}\n", yes_no(entropic)));
            r.json.insert("entropic".into(), json!(entropic));
            r.raw("magma", write_magma(&e, None));
        }
        Command::Equivalent { magma, first, second, action } => {
            let m = load_magma(magma)?.magma;
            let act = action.action();
            let f1 = parse_cochain2(&read(first)?, m.order()).map_err(|e| in_file(first, e))?;
            let f2 = parse_cochain2(&read(second)?, m.order()).map_err(|e| in_file(second, e))?;
            let w = extensions_equivalent(&f1, &f2, &act, &m)?;
            r.put("equivalent", yes_no(w.is_some()), json!(w.is_some()));
            match w {
                Some(c) => r.raw("witness", write_cochain1(&c)),
                None => r.fail(),
            }
        }
        Command::H2 { magma, action } => {
            let m = load_magma(magma)?.magma;
            let act = action.action();
            let h = second_cohomology(&m, &act)?;
            r.show("action", act);
            r.group("H^2", &h);
        }
        Command::Enumerate { order, filter, seq, count } => {
            let seq = seq.as_deref().map(parse_sequence).transpose()?;
            let need = || seq.clone().ok_or_else(|| Error::InvalidArgument("this filter needs --seq".into()));
            let filter = match filter {
                Filter::Entropic => EnumerationFilter::Entropic,
                Filter::Bracket => EnumerationFilter::Bracket(need()?),
                Filter::Denominator => EnumerationFilter::Denominator(need()?),
                Filter::Numerator => EnumerationFilter::Numerator(need()?),
            };
            let found = enumerate_magmas(*order, &filter)?;
            r.put("count", found.len(), json!(found.len()));
            if !count {
                let tables: Vec<String> = found.iter().map(|m| write_magma(m, seq.as_ref())).collect();
                r.text.push_str(&tables.join("\n"));
                r.json.insert("magmas".into(), json!(tables));
            }
        }
        Command::Fixture { kind } => fixture(&mut r, kind)?,
    }
    Ok(r)
}

fn parse_sequence(text: &str) -> Result<EventualSequence> {
    let words: Vec<&str> = text.split_whitespace().filter(|w| *w != "seq").collect();
    let split = words
        .iter()
        .position(|w| *w == "repeat")
        .ok_or_else(|| Error::InvalidArgument("a sequence needs `repeat`".into()))?;
    let values = |ws: &[&str]| {
        ws.iter()
            .map(|w| w.parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad value {w:?}"))))
            .collect::<Result<Vec<_>>>()
    };
    EventualSequence::new(values(&words[..split])?, values(&words[split + 1..])?)
}

fn load_chain(text: &str) -> Result<TupleChain> {
    match text.strip_prefix('@') {
        Some(path) => parse_chain(&read(Path::new(path))?),
        None => text.parse(),
    }
}

fn check(r: &mut Report, property: Property, magmas: &[PathBuf], fam_args: &FamilyArgs) -> Result<()> {
    if !matches!(property, Property::Compatible) && magmas.len() != 1 {
        return Err(Error::InvalidArgument("this check takes one magma file".into()));
    }
    match property {
        Property::Entropic => {
            let m = load_magma(&magmas[0])?.magma;
            let w = m.entropic_witness();
            r.put("entropic", yes_no(w.is_none()), json!(w.is_none()));
            if let Some(w) = w {
                r.put(
                    "witness",
                    format!(
                        "({a}*{b})*({c}*{d}) = {} but ({a}*{c})*({b}*{d}) = {}",
                        w.lhs,
                        w.rhs,
                        a = w.a,
                        b = w.b,
                        c = w.c,
                        d = w.d
                    ),
                    json!([w.a, w.b, w.c, w.d]),
                );
                r.fail();
            }
        }
        Property::Bracket => {
            let file = load_magma(&magmas[0])?;
            let seq = with_sequence(&file, &magmas[0])?;
            let m = &file.magma;
            let entropic = m.is_entropic();
            r.put("entropic", yes_no(entropic), json!(entropic));
            let mut ok = entropic;
            for (name, variant) in
                [("denominator", BracketVariant::Denominator), ("numerator", BracketVariant::Numerator)]
            {
                let v = m.bracket_condition_violation(&seq, variant);
                r.put(name, yes_no(v.is_none()), json!(v.is_none()));
                if let Some(v) = v {
                    r.show(&format!("{name} witness"), v);
                    ok = false;
                }
            }
            r.put("bracket magma", yes_no(ok), json!(ok));
            if !ok {
                r.fail();
            }
        }
        Property::Fourmove => {
            let file = load_magma(&magmas[0])?;
            let seq = with_sequence(&file, &magmas[0])?;
            let v = file.magma.fourmove_violation(&seq);
            r.put("fourmove", yes_no(v.is_none()), json!(v.is_none()));
            if let Some(v) = v {
                r.show("witness", v);
                r.fail();
            }
        }
        Property::Compatible => {
            let f = family(magmas, fam_args)?;
            let w = f.compatibility_witness();
            r.put("compatible", yes_no(w.is_none()), json!(w.is_none()));
            if let Some(w) = w {
                r.put(
                    "witness",
                    format!("members {} and {} on ({},{},{},{})", w.i, w.j, w.a, w.b, w.c, w.d),
                    json!({"members": [w.i, w.j], "elements": [w.a, w.b, w.c, w.d]}),
                );
                r.fail();
            }
        }
    }
    Ok(())
}

/// Every integer vector of length `len` with entries in `-range..=range`, except zero.
fn nonzero_vectors(len: usize, range: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (-range..=range).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

fn homology_sweep(
    r: &mut Report,
    m: &FiniteMagma,
    n: usize,
    range: i64,
    coeff: Coefficients,
    force: bool,
) -> Result<()> {
    let here = if n >= 2 { nonzero_vectors(n - 1, range) } else { vec![vec![]] };
    let next = if n >= 1 { nonzero_vectors(n, range) } else { vec![vec![]] };
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for a in &here {
        for b in &next {
            let nus = NuSequence::new().with(n, a.clone()).with(n + 1, b.clone());
            let h = homology(m, n, &nus, coeff, force)?;
            r.text.push_str(&format!("nu_{n} = ({}), nu_{} = ({}): H_{n} = {h}\n", list(a), n + 1, list(b)));
            rows.push(json!({"nu": a, "nu_next": b, "group": h}));
            *seen.entry(h.to_string()).or_default() += 1;
        }
    }
    r.json.insert("sweep".into(), Value::Array(rows));
    let summary: Vec<String> = seen.iter().map(|(g, k)| format!("{g} x{k}")).collect();
    r.put("distinct groups", seen.len(), json!(seen.len()));
    r.put("groups", summary.join(", "), json!(seen));
    Ok(())
}

fn hhat_census(r: &mut Report, max: usize, n: usize, nus: &NuSequence, alt: bool, force: bool) -> Result<()> {
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let mut families = 0;
    for order in 1..=max {
        for m in enumerate_magmas(order, &EnumerationFilter::Entropic)? {
            for f in [MagmaFamily::singleton(m.clone()), MagmaFamily::with_projections(m)] {
                let h = hat_homology(&f, n, nus, alt, force)?;
                families += 1;
                for t in &h.torsion {
                    *tally.entry(format!("Z_{t}")).or_default() += 1;
                }
                if h.torsion.is_empty() {
                    *tally.entry("torsion-free".into()).or_default() += 1;
                }
            }
        }
    }
    r.put("families", families, json!(families));
    let summary: Vec<String> = tally.iter().map(|(g, k)| format!("{g} x{k}")).collect();
    r.put(&format!("Hhat_{n} torsion"), summary.join(", "), json!(tally));
    Ok(())
}

fn fixture(r: &mut Report, kind: &FixtureKind) -> Result<()> {
    match kind {
        FixtureKind::Graph { family, n } => {
            let kind: GraphFixture = family.parse()?;
            r.raw("graph", make_graph_fixture(&kind, *n)?.to_string());
        }
        FixtureKind::Move { kind, base, out_dir } => {
            let kind: MoveKind = kind.parse()?;
            let base = match base {
                Some(p) => parse_link(&read(p)?).map_err(|e| in_file(p, e))?,
                None => LinkDiagram::trivial(1),
            };
            let (before, after) = make_move_fixture(kind, &base)?;
            match out_dir {
                Some(dir) => {
                    for (name, d) in [("before.lnk", &before), ("after.lnk", &after)] {
                        let path = dir.join(name);
                        std::fs::write(&path, d.to_string())
                            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
                        r.show(name, path.display());
                    }
                }
                None => {
                    r.raw("before", format!("# before\n{before}"));
                    r.raw("after", format!("# after\n{after}"));
                }
            }
        }
        FixtureKind::TwoCrossing => r.raw("link", example_two_crossing_diagram().to_string()),
    }
    Ok(())
}

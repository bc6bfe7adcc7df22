//! Command-line front end: argument parsing, dispatch and JSON/CSV output.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::charbound::{
    character_bound_check, character_bound_survey, fixed_subspace_bound_check,
    fixed_subspace_count_bruteforce, gaussian_binomial,
};
use crate::chartab::{rep_zeta, CharacterTable};
use crate::error::{Error, Result};
use crate::ff::{field_make, field_of_order, Field};
use crate::homcount::{
    commutator_count, fs_squares_count, hom_count_bruteforce_with, quad_class_count,
    quad_class_oracle, surface_hom_count, OracleOptions, Strategy, DEFAULT_TUPLE_BUDGET,
};
use crate::matgrp::{ClassId, GroupContext, GroupKind, DEFAULT_MAX_ORDER};
use crate::torsion::{
    a_n, b_k, class_multiplicity_check, decomposition_witness, mu3, torsion_classes,
    TorsionGroupKind, WitnessMode,
};
use crate::verify::sweep;
use crate::word::{Presentation, Word};
use crate::wordmap::{
    commutative_transitivity_check, dimension_estimate, double_word_stats, fiber_count_with,
};

pub const TOOL: &str = "repvar";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "repvar",
    version,
    about = "Point counts, word maps and character bounds over finite matrix groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every randomized step; recorded in the output.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,
    /// Tuple budget for enumeration oracles.
    #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET, global = true)]
    pub budget: u128,
    /// Largest group order that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, global = true)]
    pub max_order: u64,
    /// Cache directory (overrides REPVAR_CACHE_DIR).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupArgs {
    /// Group spec such as `SL2,q=3` or `GL2,p=2,m=2`.
    #[arg(long)]
    pub group: Option<String>,
    /// SL or GL.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Order and conjugacy classes.
    Group(GroupArgs),
    /// Certified character table.
    Chartable {
        #[command(flatten)]
        group: GroupArgs,
        /// Exponent for the representation zeta function.
        #[arg(long, default_value_t = 2.0)]
        zeta_s: f64,
    },
    /// Character-sum counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Word-map fibers, dimension fits and double words.
    #[command(subcommand)]
    Wordmap(WordmapCmd),
    /// Torsion-class combinatorics over F_l.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Subspace counts and character bounds.
    #[command(subcommand)]
    Charbound(CharboundCmd),
    /// Compare every formula with its oracle on all small groups.
    Verify {
        /// Largest group order included in the sweep.
        #[arg(long, default_value_t = 200)]
        up_to: u64,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountCmd {
    /// Pairs with [x, y] = h.
    Commutator {
        #[command(flatten)]
        group: GroupArgs,
        /// Class index or `identity`.
        #[arg(long, default_value = "identity")]
        class: String,
        /// Also run the enumeration oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Homomorphisms from a closed surface group.
    Surface {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Tuples with x_1^2 .. x_m^2 = h.
    Squares {
        #[command(flatten)]
        group: GroupArgs,
        /// Number of squares m.
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value = "identity")]
        class: String,
        #[arg(long)]
        oracle: bool,
    },
    /// (X, Y, Z, T) in four classes with XYZT = 1.
    Quad {
        #[command(flatten)]
        group: GroupArgs,
        /// Four class indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<String>,
        #[arg(long)]
        oracle: bool,
    },
    /// Enumeration count for an arbitrary presentation.
    Brute {
        #[command(flatten)]
        group: GroupArgs,
        /// Relators separated by `;`.
        #[arg(long)]
        relators: String,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Auto,
    Full,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordmapCmd {
    /// Size of the fiber over the representative of a class.
    Fiber {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "identity")]
        class: String,
        /// Number of generators (default: largest index in the word).
        #[arg(long)]
        gens: Option<usize>,
    },
    /// Log-log growth of |Hom| over a family of fields.
    Dimension {
        #[arg(long)]
        relators: String,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        qs: Vec<u64>,
    },
    /// Image size of t -> (w1(t), w2(t)).
    Double {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Commutative transitivity away from the center.
    Transitivity {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionCmd {
    Mu3 {
        #[arg(long)]
        l: u64,
    },
    Bk {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: usize,
    },
    An {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u64,
    },
    /// Decomposition witnesses for one or all f in A_n.
    Witness {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Index into A_n (default: all).
        #[arg(long)]
        index: Option<usize>,
    },
    /// Nontrivial torsion class representatives.
    Classes {
        /// free-product or quadrilateral.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        l: u64,
    },
    /// Multiplicity bounds for every f in A_n.
    Multiplicity {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Cond2,
    Cond3,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharboundCmd {
    Gaussian {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        q: u64,
    },
    /// Invariant subspaces of a semisimple class representative.
    Fixed {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        class: String,
        #[arg(long)]
        s: usize,
        /// Also enumerate subspaces directly.
        #[arg(long)]
        oracle: bool,
    },
    /// |chi(x)| <= chi(1)^beta with the alpha gate.
    Check {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// The same scan with an explicit multiplicity cap.
    Survey {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        beta: f64,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(&cli),
    };
    match result.and_then(|(value, ok)| Ok((render(&cli, value)?, ok))) {
        Ok((stdout, ok)) => Outcome {
            code: if ok { 0 } else { 4 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{}\n", json!({"tool": TOOL, "error": e.to_string()})),
        },
    }
}

fn render(cli: &Cli, result: Value) -> Result<String> {
    match cli.format {
        Format::Json => {
            let env = json!({
                "tool": TOOL,
                "version": env!("CARGO_PKG_VERSION"),
                "seed": cli.seed,
                "config": serde_json::to_value(cli)?,
                "result": result,
            });
            Ok(serde_json::to_string_pretty(&env)? + "\n")
        }
        Format::Csv => to_csv(&result),
    }
}

/// Rows of `result.rows` when present, otherwise the scalar fields of
/// `result` as a single row. Nested values are written as JSON text.
fn to_csv(result: &Value) -> Result<String> {
    let rows: Vec<Map<String, Value>> = match result.get("rows").and_then(Value::as_array) {
        Some(rows) => rows
            .iter()
            .map(|r| match r {
                Value::Object(m) => m.clone(),
                other => Map::from_iter([("value".to_string(), other.clone())]),
            })
            .collect(),
        None => vec![result
            .as_object()
            .map(|m| {
                m.iter()
                    .filter(|(_, v)| !v.is_array() && !v.is_object())
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect()
            })
            .unwrap_or_default()],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        for k in r.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for r in &rows {
        let cells: Vec<String> = header
            .iter()
            .map(|k| match r.get(k) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            })
            .collect();
        w.write_record(&cells).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// Interprets `SL2,q=3`-style specs and the separate flags.
pub fn parse_group(args: &GroupArgs) -> Result<(GroupKind, usize, Field)> {
    let (mut kind, mut n, mut q, mut p, mut m) = (
        args.kind.as_deref().map(str::parse).transpose()?,
        args.n,
        args.q,
        args.p,
        args.m,
    );
    if let Some(spec) = &args.group {
        let mut parts = spec.split(',').map(str::trim);
        let head = parts.next().unwrap_or_default();
        if head.len() < 3 {
            return Err(Error::Parse(format!("bad group spec {spec:?}")));
        }
        let (k, dim) = head.split_at(2);
        kind = Some(k.parse()?);
        n = Some(
            dim.parse()
                .map_err(|_| Error::Parse(format!("bad dimension in {spec:?}")))?,
        );
        for part in parts {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {spec:?}")))?;
            let v: u64 = val
                .parse()
                .map_err(|_| Error::Parse(format!("bad number in {spec:?}")))?;
            match key {
                "q" => q = Some(v),
                "p" => p = Some(v),
                "m" => m = Some(v as u32),
                _ => return Err(Error::Parse(format!("unknown key {key:?} in {spec:?}"))),
            }
        }
    }
    let kind = kind.ok_or_else(|| Error::InvalidArgument("group kind missing".into()))?;
    let n = n.ok_or_else(|| Error::InvalidArgument("matrix dimension missing".into()))?;
    let field = match (q, p) {
        (Some(q), None) => field_of_order(q)?,
        (None, Some(p)) => field_make(p, m.unwrap_or(1))?,
        (Some(q), Some(p)) => {
            let f = field_make(p, m.unwrap_or(1))?;
            if f.order() as u64 != q {
                return Err(Error::InvalidArgument(format!("q = {q} differs from p^m")));
            }
            f
        }
        (None, None) => return Err(Error::InvalidArgument("field order missing".into())),
    };
    Ok((kind, n, field))
}

fn parse_class(g: &GroupContext, s: &str) -> Result<ClassId> {
    if s == "identity" || s == "id" {
        return Ok(g.identity_class());
    }
    let c: ClassId = s
        .parse()
        .map_err(|_| Error::Parse(format!("class must be an index or `identity`, got {s:?}")))?;
    if c >= g.class_count() {
        return Err(Error::NoSuchClass);
    }
    Ok(c)
}

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Cache,
}

impl Ctx<'_> {
    fn group(&self, args: &GroupArgs) -> Result<Arc<GroupContext>> {
        let (kind, n, field) = parse_group(args)?;
        self.cache.group(kind, n, &field, self.cli.max_order)
    }

    fn table(&self, g: &Arc<GroupContext>) -> Result<CharacterTable> {
        self.cache.table(g, self.cli.seed)
    }

    fn opts(&self) -> OracleOptions {
        OracleOptions {
            budget: self.cli.budget,
            ..Default::default()
        }
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn table_json(t: &CharacterTable) -> Value {
    json!({
        "certificate": t.certificate(),
        "attempts": t.attempts(),
    })
}

fn with_oracle(value: &mut Value, formula: u128, oracle: Option<u128>) -> bool {
    if let Some(o) = oracle {
        value["oracle_count"] = json!(o);
        value["agrees"] = json!(o == formula);
        return o == formula;
    }
    true
}

/// Runs the parsed command; the flag is false when a check failed.
fn execute(cli: &Cli) -> Result<(Value, bool)> {
    if cli.budget == 0 || cli.max_order == 0 {
        return Err(Error::InvalidArgument("budgets must be positive".into()));
    }
    let ctx = Ctx {
        cli,
        cache: Cache::from_env(cli.cache_dir.clone()),
    };
    match &cli.command {
        Command::Group(args) => {
            let g = ctx.group(args)?;
            let rows: Vec<Value> = g
                .classes()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    json!({
                        "class": i,
                        "size": c.size,
                        "centralizer_order": c.centralizer_order,
                        "element_order": c.element_order,
                        "char_poly": c.char_poly,
                        "semisimple": c.is_semisimple,
                        "max_multiplicity": c.max_eigenvalue_multiplicity(),
                        "inverse_class": c.inverse_class,
                        "square_class": c.square_class,
                        "representative": g.element_codes(c.representative),
                    })
                })
                .collect();
            Ok((
                json!({
                    "group": g.label(),
                    "descriptor": g.descriptor(),
                    "order": g.order(),
                    "classes": g.class_count(),
                    "rows": rows,
                }),
                true,
            ))
        }
        Command::Chartable { group, zeta_s } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let rows: Vec<Value> = (0..t.class_count())
                .map(|i| {
                    let values: Vec<[f64; 2]> = t.values()[i]
                        .iter()
                        .map(|z| [round12(z.re), round12(z.im)])
                        .collect();
                    json!({
                        "character": i,
                        "degree": t.degree(i),
                        "indicator": t.indicators()[i],
                        "values": values,
                    })
                })
                .collect();
            Ok((
                json!({
                    "group": g.label(),
                    "order": g.order(),
                    "classes": g.class_count(),
                    "degrees": t.degrees(),
                    "indicators": t.indicators(),
                    "zeta": {"s": zeta_s, "value": rep_zeta(&t, *zeta_s)},
                    "table": table_json(&t),
                    "rows": rows,
                }),
                true,
            ))
        }
        Command::Count(cmd) => count(&ctx, cmd),
        Command::Wordmap(cmd) => wordmap(&ctx, cmd),
        Command::Torsion(cmd) => torsion(cmd),
        Command::Charbound(cmd) => charbound(&ctx, cmd),
        Command::Verify { up_to } => {
            let r = sweep(*up_to, cli.seed)?;
            let ok = r.passed();
            let mut v = serde_json::to_value(&r)?;
            v["passed"] = json!(ok);
            v["rows"] = v["groups"].clone();
            Ok((v, ok))
        }
    }
}

fn count(ctx: &Ctx, cmd: &CountCmd) -> Result<(Value, bool)> {
    match cmd {
        CountCmd::Commutator {
            group,
            class,
            oracle,
        } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let h = parse_class(&g, class)?;
            let c = commutator_count(&t, h)?;
            let o = oracle
                .then(|| {
                    let w = Word::parse("[x1,x2]")?;
                    fiber_count_with(
                        &w,
                        2,
                        &g,
                        &g.element(g.classes()[h].representative),
                        ctx.cli.budget,
                    )
                })
                .transpose()?;
            let mut v =
                json!({"group": g.label(), "class": h, "count": c, "table": table_json(&t)});
            let ok = with_oracle(&mut v, c, o);
            Ok((v, ok))
        }
        CountCmd::Surface {
            group,
            genus,
            oracle,
        } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let c = surface_hom_count(&t, *genus)?;
            let o = oracle
                .then(|| hom_count_bruteforce_with(&Presentation::surface(*genus), &g, ctx.opts()))
                .transpose()?;
            let mut v =
                json!({"group": g.label(), "genus": genus, "count": c, "table": table_json(&t)});
            let ok = with_oracle(&mut v, c, o);
            Ok((v, ok))
        }
        CountCmd::Squares {
            group,
            terms,
            class,
            oracle,
        } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let h = parse_class(&g, class)?;
            let c = fs_squares_count(&t, *terms, h)?;
            let o = oracle
                .then(|| {
                    let w = Presentation::squares(*terms).relators()[0].clone();
                    fiber_count_with(
                        &w,
                        *terms,
                        &g,
                        &g.element(g.classes()[h].representative),
                        ctx.cli.budget,
                    )
                })
                .transpose()?;
            let mut v = json!({
                "group": g.label(), "terms": terms, "class": h, "count": c, "table": table_json(&t),
            });
            let ok = with_oracle(&mut v, c, o);
            Ok((v, ok))
        }
        CountCmd::Quad {
            group,
            classes,
            oracle,
        } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let cs: Vec<ClassId> = classes
                .iter()
                .map(|s| parse_class(&g, s))
                .collect::<Result<_>>()?;
            let cs: [ClassId; 4] = cs
                .try_into()
                .map_err(|_| Error::InvalidArgument("quad needs four classes".into()))?;
            let c = quad_class_count(&t, cs)?;
            let o = oracle
                .then(|| {
                    quad_class_oracle(&g, [cs[0], cs[1], cs[2]], ctx.cli.budget).map(|h| h[cs[3]])
                })
                .transpose()?;
            let mut v =
                json!({"group": g.label(), "classes": cs, "count": c, "table": table_json(&t)});
            let ok = with_oracle(&mut v, c, o);
            Ok((v, ok))
        }
        CountCmd::Brute {
            group,
            relators,
            gens,
            strategy,
        } => {
            let g = ctx.group(group)?;
            let pres = Presentation::parse(*gens, relators)?;
            let opts = OracleOptions {
                strategy: match strategy {
                    StrategyArg::Auto => Strategy::Auto,
                    StrategyArg::Full => Strategy::FullScan,
                },
                budget: ctx.cli.budget,
            };
            let c = hom_count_bruteforce_with(&pres, &g, opts)?;
            Ok((
                json!({"group": g.label(), "presentation": pres.to_string(), "count": c}),
                true,
            ))
        }
    }
}

fn wordmap(ctx: &Ctx, cmd: &WordmapCmd) -> Result<(Value, bool)> {
    match cmd {
        WordmapCmd::Fiber {
            group,
            word,
            class,
            gens,
        } => {
            let g = ctx.group(group)?;
            let w = Word::parse(word)?;
            let h = parse_class(&g, class)?;
            let d = gens.unwrap_or(w.max_generator());
            let target = g.element(g.classes()[h].representative);
            let c = fiber_count_with(&w, d, &g, &target, ctx.cli.budget)?;
            Ok((
                json!({"group": g.label(), "word": w, "generators": d, "class": h, "count": c}),
                true,
            ))
        }
        WordmapCmd::Dimension {
            relators,
            gens,
            kind,
            n,
            qs,
        } => {
            let pres = Presentation::parse(*gens, relators)?;
            let p = dimension_estimate(&pres, kind.parse()?, *n, qs, ctx.cli.seed, ctx.cli.budget)?;
            let mut v = serde_json::to_value(&p)?;
            v["rows"] = v["samples"].clone();
            Ok((v, true))
        }
        WordmapCmd::Double { group, w1, w2 } => {
            let g = ctx.group(group)?;
            let (a, b) = (Word::parse(w1)?, Word::parse(w2)?);
            let s = double_word_stats(&a, &b, &g, ctx.cli.budget)?;
            let mut v = serde_json::to_value(&s)?;
            v["group"] = json!(g.label());
            v["w1"] = json!(a);
            v["w2"] = json!(b);
            Ok((v, true))
        }
        WordmapCmd::Transitivity { group } => {
            let g = ctx.group(group)?;
            let r = commutative_transitivity_check(&g, ctx.cli.budget)?;
            let mut v = serde_json::to_value(&r)?;
            v["group"] = json!(g.label());
            Ok((v, true))
        }
    }
}

fn torsion(cmd: &TorsionCmd) -> Result<(Value, bool)> {
    match cmd {
        TorsionCmd::Mu3 { l } => Ok((json!({"l": l, "mu3": mu3(*l)?}), true)),
        TorsionCmd::Bk { l, k } => {
            let sets = b_k(*l, *k)?;
            let rows: Vec<Value> = sets.iter().map(|s| json!({"set": s})).collect();
            Ok((
                json!({"l": l, "k": k, "count": sets.len(), "sets": sets, "rows": rows}),
                true,
            ))
        }
        TorsionCmd::An { l, n } => {
            let fs = a_n(*l, *n)?;
            let rows: Vec<Value> = fs
                .iter()
                .enumerate()
                .map(|(i, f)| json!({"index": i, "values": f.values, "excess": f.excess_set()}))
                .collect();
            Ok((
                json!({"l": l, "n": n, "count": fs.len(), "rows": rows}),
                true,
            ))
        }
        TorsionCmd::Witness { l, n, mode, index } => {
            let mode = match mode {
                ModeArg::Cond2 => WitnessMode::Cond2,
                ModeArg::Cond3 => WitnessMode::Cond3,
            };
            let fs = a_n(*l, *n)?;
            let picked: Vec<usize> = match index {
                Some(i) if *i < fs.len() => vec![*i],
                Some(i) => return Err(Error::BadRange(format!("index {i} outside A_n"))),
                None => (0..fs.len()).collect(),
            };
            let mut rows = Vec::new();
            for i in picked {
                let w = decomposition_witness(*l, *n, &fs[i], mode)?;
                rows.push(json!({
                    "index": i,
                    "f": fs[i].values,
                    "verified": w.verify(&fs[i])?,
                    "witness": w,
                }));
            }
            let ok = rows.iter().all(|r| r["verified"] == json!(true));
            Ok((json!({"l": l, "n": n, "mode": mode, "rows": rows}), ok))
        }
        TorsionCmd::Classes { kind, l } => {
            let kind: TorsionGroupKind = kind.parse()?;
            let list = torsion_classes(kind, *l)?;
            let mut v = serde_json::to_value(&list)?;
            v["count"] = json!(list.representatives.len());
            v["rows"] = v["representatives"].clone();
            Ok((v, true))
        }
        TorsionCmd::Multiplicity { l, n } => {
            let fs = a_n(*l, *n)?;
            let rows: Vec<Value> = fs
                .iter()
                .map(|f| {
                    class_multiplicity_check(*l, *n, f).and_then(|r| Ok(serde_json::to_value(r)?))
                })
                .collect::<Result<_>>()?;
            Ok((json!({"l": l, "n": n, "rows": rows}), true))
        }
    }
}

fn charbound(ctx: &Ctx, cmd: &CharboundCmd) -> Result<(Value, bool)> {
    match cmd {
        CharboundCmd::Gaussian { a, w, q } => Ok((
            json!({"a": a, "w": w, "q": q, "value": gaussian_binomial(*a, *w, *q)?}),
            true,
        )),
        CharboundCmd::Fixed {
            group,
            class,
            s,
            oracle,
        } => {
            let g = ctx.group(group)?;
            let c = parse_class(&g, class)?;
            let t = g.element(g.classes()[c].representative);
            let b = fixed_subspace_bound_check(&t, *s)?;
            let mut v = serde_json::to_value(&b)?;
            v["group"] = json!(g.label());
            v["class"] = json!(c);
            let ok = if *oracle {
                let o = fixed_subspace_count_bruteforce(&t, *s)?;
                with_oracle(&mut v, b.count, Some(o))
            } else {
                true
            };
            Ok((v, ok))
        }
        CharboundCmd::Check { group, alpha, beta } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let r = character_bound_check(&t, *alpha, *beta)?;
            Ok((serde_json::to_value(&r)?, true))
        }
        CharboundCmd::Survey { group, cap, beta } => {
            let g = ctx.group(group)?;
            let t = ctx.table(&g)?;
            let r = character_bound_survey(&t, *cap, *beta)?;
            Ok((serde_json::to_value(&r)?, true))
        }
    }
}

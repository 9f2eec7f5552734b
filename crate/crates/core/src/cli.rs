//! The `dowling` command line: JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::GroupAction;
use crate::bijection::{chain_elements, chain_indices, chain_labels, psi, psi_inv};
use crate::dowling::{build_dowling, build_subposet, DowlingPoset, PosetKind, DEFAULT_MAX_ELEMENTS};
use crate::el::{count_decreasing_chains, decreasing_chains, verify_el};
use crate::io::{self, bigint_json};
use crate::labeling::{EdgeLabels, Labeling};
use crate::moebius::{characteristic_polynomial, closed_form_charpoly, moebius, sphere_count_product};
use crate::presets;
use crate::reduction::{reduce_poset, verify_closure, OrbitReductionSpec};
use crate::suite;
use crate::topology::{certify_wedge, predict, proper_part_homology, HomologyProfile, DEFAULT_MAX_FACES};
use crate::trees::{count_blooming, enumerate_blooming, BloomingTree, DEFAULT_MAX_TREES};

#[derive(Debug, Parser)]
#[command(name = "dowling", about = "Generalized Dowling posets: construction, EL labelings, chains, trees and homology")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeedOrder {
    Index,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Fwd,
    Inv,
}

#[derive(Debug, Args)]
struct Global {
    /// Group action JSON file {"order", "mult", "set_size", "act"}
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    group: Option<PathBuf>,
    /// Named action, e.g. z2-swap, z4-swap, z3-free, klein-trivial-2
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Number of points
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Invariant color subset T (0-based indices); selects P_n(G,S,T)
    #[arg(long = "T", global = true, value_name = "i,j,...", num_args = 0..=1,
          default_missing_value = "", value_parser = color_list)]
    t: Option<ColorList>,
    /// Edge labeling; defaults to lambda for D_n and mu for P_n
    #[arg(long, global = true)]
    labeling: Option<Labeling>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS, value_parser = positive)]
    max_elements: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FACES, value_parser = positive)]
    max_faces: usize,
    /// Worker threads (0 picks the number of CPUs)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Order on S and G \ {e}; only index order is supported
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Index)]
    seed_order: SeedOrder,
    /// Indented JSON, or a text table where one exists
    #[arg(long, global = true)]
    pretty: bool,
    /// ASCII bracket notation (`||`, `{}`)
    #[arg(long, global = true)]
    ascii: bool,
}

/// Comma-separated color indices; empty for `T = ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ColorList(Vec<usize>);

fn color_list(s: &str) -> Result<ColorList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(ColorList)
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the poset as JSON, or as a DOT Hasse diagram
    Build {
        #[arg(long)]
        dot: bool,
        /// Adjoin a top element
        #[arg(long)]
        bounded: bool,
    },
    /// Check the EL property of the bounded poset
    VerifyEl {
        /// Include failing chains in bracket notation
        #[arg(long)]
        witnesses: bool,
    },
    /// Count decreasing maximal chains and compare with the product formula
    CountChains,
    /// Characteristic polynomial from the Möbius function
    Charpoly,
    /// Möbius value of the bounded poset, by default between bottom and top
    Moebius {
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
    },
    /// Enumerate or count (q,r)-blooming trees on labels 0..K
    Trees {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Map decreasing chains to blooming trees (fwd) or back (inv)
    Bijection {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Chain (fwd) or tree (inv) JSON; all of them when omitted
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Reduced integer homology of the proper part
    Homology,
    /// Compare the homology of the proper part with the predicted wedge of spheres
    Certify {
        /// Run the full verification battery instead
        #[arg(long)]
        paper_suite: bool,
    },
    /// Orbit reduction of P_n(G,S,T) along the free orbit of a color
    Reduce {
        /// A color of the orbit; its base point
        #[arg(long, value_name = "COLOR")]
        orbit: usize,
    },
}

/// A usage or input error, reported with exit status 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

/// Output of a subcommand: JSON, or preformatted text for `--dot` and tables.
enum Output {
    Json(Value),
    Text(String),
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    fn action(&self) -> Result<Arc<GroupAction>, Failure> {
        let a = match (&self.g.group, &self.g.preset) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                io::parse_action(&text).map_err(|e| format!("{}: {e}", path.display()))?
            }
            (None, Some(name)) => presets::by_name(name).ok_or_else(|| format!("unknown preset {name:?}"))?,
            (None, None) => return Err(Failure("one of --group or --preset is required".into())),
        };
        Ok(Arc::new(a))
    }

    fn n(&self) -> Result<usize, Failure> {
        self.g.n.ok_or_else(|| Failure("--n is required".into()))
    }

    fn poset(&self) -> Result<DowlingPoset, Failure> {
        let (a, n) = (self.action()?, self.n()?);
        Ok(match &self.g.t {
            Some(ColorList(t)) => {
                if let Some(s) = t.iter().find(|&&s| s >= a.set_size()) {
                    return Err(Failure(format!("--T: color {s} out of range")));
                }
                build_subposet(n, a, t, self.g.max_elements)?
            }
            None => build_dowling(n, a, self.g.max_elements)?,
        })
    }

    fn bounded(&self) -> Result<DowlingPoset, Failure> {
        Ok(self.poset()?.adjoin_top()?)
    }

    fn labeling(&self, p: &DowlingPoset) -> Labeling {
        self.g.labeling.unwrap_or(match p.kind {
            PosetKind::Dowling => Labeling::Lambda,
            PosetKind::Subposet { .. } => Labeling::Mu,
        })
    }

    fn render_chain(&self, p: &DowlingPoset, chain: &[usize]) -> Vec<String> {
        chain.iter().map(|&i| p.render(i, self.g.ascii)).collect()
    }
}

fn labeling_name(l: Labeling) -> &'static str {
    match l {
        Labeling::Lambda => "lambda",
        Labeling::Mu => "mu",
    }
}

fn cmd_verify_el(c: &Ctx, witnesses: bool) -> Outcome {
    let p = c.bounded()?;
    let labeling = c.labeling(&p);
    let labels = EdgeLabels::for_poset(&p, labeling)?;
    let r = verify_el(p.poset(), &labels)?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            let mut v = json!({
                "bottom": p.render(f.bottom, c.g.ascii),
                "top": p.render(f.top, c.g.ascii),
                "reason": format!("{:?}", f.reason),
            });
            if witnesses {
                let show = |w: &Vec<usize>| {
                    json!({
                        "chain": c.render_chain(&p, w),
                        "labels": labels.word(p.poset(), w).iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                };
                v["lex_first"] = f.witnesses.first().map(show).unwrap_or(Value::Null);
                v["increasing"] = f.witnesses.iter().skip(1).map(show).collect();
            }
            v
        })
        .collect();
    Ok((
        json!({
            "labeling": labeling_name(labeling),
            "passed": r.passed,
            "intervals_checked": r.intervals_checked,
            "decreasing_chain_count": r.decreasing_chain_count,
            "failures": failures,
        }),
        r.passed,
    ))
}

fn cmd_count_chains(c: &Ctx) -> Outcome {
    let p = c.bounded()?;
    let labeling = c.labeling(&p);
    let labels = EdgeLabels::for_poset(&p, labeling)?;
    let count = count_decreasing_chains(p.poset(), &labels)?;
    let formula = match p.kind {
        PosetKind::Dowling => Some(sphere_count_product(p.n, p.action.group().order(), p.action.set_size())),
        PosetKind::Subposet { .. } => predict(&p).count,
    };
    let matched = formula.as_ref().map(|f| *f == count.into());
    Ok((
        json!({
            "labeling": labeling_name(labeling),
            "decreasing": count,
            "formula": formula.as_ref().map(bigint_json),
            "match": matched,
        }),
        matched != Some(false),
    ))
}

fn cmd_charpoly(c: &Ctx) -> Outcome {
    let p = c.poset()?;
    let chi = characteristic_polynomial(p.poset())?;
    let mut out = json!({
        "coefficients": chi.coefficients().iter().map(bigint_json).collect::<Vec<_>>(),
        "polynomial": chi.to_string(),
    });
    let mut ok = true;
    if p.kind == PosetKind::Dowling {
        let closed = closed_form_charpoly(p.n, p.action.group().order(), p.action.set_size());
        ok = closed == chi;
        out["closed_form"] = json!(closed.to_string());
        out["match"] = json!(ok);
    }
    Ok((out, ok))
}

fn cmd_moebius(c: &Ctx, x: Option<usize>, y: Option<usize>) -> Outcome {
    let p = c.bounded()?;
    let q = p.poset();
    let (x, y) = (x.unwrap_or(q.bottom()), y.unwrap_or(q.len() - 1));
    if x >= q.len() || y >= q.len() {
        return Err(Failure(format!("element index out of range 0..{}", q.len())));
    }
    let v = moebius(q, x, y)?;
    Ok((
        json!({
            "x": p.render(x, c.g.ascii),
            "y": p.render(y, c.g.ascii),
            "value": bigint_json(&v),
        }),
        true,
    ))
}

fn cmd_trees(nodes: usize, q: usize, r: usize, count_only: bool) -> Outcome {
    let count = count_blooming(nodes, q, r);
    let mut out = json!({
        "nodes": nodes,
        "q": q,
        "r": r,
        "count": bigint_json(&count.clone().into()),
    });
    if !count_only {
        let trees = enumerate_blooming(nodes, q, r, DEFAULT_MAX_TREES)?;
        out["enumerated"] = json!(trees.len());
        out["trees"] = trees.iter().map(|t| json!(t.to_string())).collect();
    }
    Ok((out, true))
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {}", path.display(), io::IoError::from(e))))
}

/// Tree shape parameters for `psi`: node count, root and other bloom counts, label shift.
fn tree_shape(a: &GroupAction, n: usize) -> (usize, usize, usize, usize) {
    let (k, m) = (a.group().order().saturating_sub(1), a.set_size());
    if m == 0 {
        (n, k.saturating_sub(1), k.saturating_sub(1), 1)
    } else {
        (n + 1, m.saturating_sub(2), k.saturating_sub(1), 0)
    }
}

fn pair_json(c: &Ctx, a: &GroupAction, chain: &[crate::DowlingElement], tree: &BloomingTree) -> Result<Value, Failure> {
    Ok(json!({
        "chain": io::chain_json(chain, a, c.g.ascii),
        "labels": chain_labels(chain, a)?.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "tree": tree.to_json(),
        "tree_text": tree.to_string(),
    }))
}

fn cmd_bijection(c: &Ctx, direction: Direction, input: Option<&PathBuf>) -> Outcome {
    let a = c.action()?;
    let n = c.n()?;
    if c.g.t.is_some() {
        return Err(Failure("bijection works on D_n(G,S); drop --T".into()));
    }
    let mut pairs = Vec::new();
    match (direction, input) {
        (Direction::Fwd, Some(path)) => {
            let chain = io::chain_from_json(&read_json(path)?, n, &a)?;
            let t = psi(&chain, &a)?;
            pairs.push(pair_json(c, &a, &chain, &t)?);
        }
        (Direction::Inv, Some(path)) => {
            let t = BloomingTree::from_json(&read_json(path)?)?;
            let chain = psi_inv(&t, n, &a)?;
            pairs.push(pair_json(c, &a, &chain, &t)?);
        }
        (Direction::Fwd, None) => {
            let p = c.bounded()?;
            let labels = EdgeLabels::for_poset(&p, Labeling::Lambda)?;
            for ch in decreasing_chains(p.poset(), &labels)? {
                let chain = chain_elements(&p, &ch);
                let t = psi(&chain, &a)?;
                pairs.push(pair_json(c, &a, &chain, &t)?);
            }
        }
        (Direction::Inv, None) => {
            let p = c.bounded()?;
            let (nodes, q, r, shift) = tree_shape(&a, n);
            for t in enumerate_blooming(nodes, q, r, DEFAULT_MAX_TREES)? {
                let t = t.shifted(shift);
                let chain = psi_inv(&t, n, &a)?;
                if chain_indices(&p, &chain).is_none() {
                    return Err(Failure(format!("tree {t} maps outside the poset")));
                }
                pairs.push(pair_json(c, &a, &chain, &t)?);
            }
        }
    }
    Ok((json!({ "count": pairs.len(), "pairs": pairs }), true))
}

fn homology_json(h: &HomologyProfile) -> Value {
    json!({
        "betti": h.reduced_betti,
        "betti_minus_one": h.betti_minus_one,
        "torsion": h.torsion.iter().map(|t| t.iter().map(bigint_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "faceCounts": h.face_counts,
        "euler_consistent": h.euler_consistent(),
    })
}

fn cmd_homology(c: &Ctx) -> Outcome {
    let p = c.bounded()?;
    let h = proper_part_homology(p.poset(), c.g.max_faces)?;
    Ok((homology_json(&h), true))
}

fn cmd_certify(c: &Ctx) -> Outcome {
    let p = c.bounded()?;
    let r = certify_wedge(&p, c.g.max_faces)?;
    let mut out = homology_json(&r.profile);
    out["verdict"] = json!(r.verdict);
    out["passed"] = json!(r.passed);
    out["wedge_shape"] = json!(r.wedge_shape);
    out["prediction"] = json!({
        "dimension": r.prediction.dimension,
        "count": r.prediction.count.as_ref().map(bigint_json),
        "basis": r.prediction.basis,
    });
    Ok((out, r.passed))
}

fn cmd_reduce(c: &Ctx, base: usize) -> Outcome {
    let p = c.poset()?;
    let t = match &p.kind {
        PosetKind::Subposet { t } => t.clone(),
        PosetKind::Dowling => return Err(Failure("reduce needs --T".into())),
    };
    if base >= p.action.set_size() {
        return Err(Failure(format!("--orbit: color {base} out of range")));
    }
    let spec = OrbitReductionSpec::new(&p.action, &t, base)?;
    let report = verify_closure(&p, &spec)?;
    let reduced = reduce_poset(&p, &spec, c.g.max_elements)?;
    let ok = report.passed() && reduced.bijective && reduced.isomorphic;
    Ok((
        json!({
            "orbit": spec.orbit(),
            "closure": {
                "decreasing": report.decreasing,
                "order_preserving": report.order_preserving,
                "idempotent": report.idempotent,
                "bottom_fiber": report.bottom_fiber,
                "surjective": report.surjective,
                "edge_cases": report.edge_cases,
                "passed": report.passed(),
                "violations": report.violations,
            },
            "bijective": reduced.bijective,
            "isomorphic": reduced.isomorphic,
            "embedding": reduced.embedding.iter().map(|&i| p.render(i, c.g.ascii)).collect::<Vec<_>>(),
            "reduced": io::poset_json(&reduced.poset, c.g.ascii),
        }),
        ok,
    ))
}

fn dispatch(cli: &Cli) -> Result<(Output, bool), Failure> {
    let c = Ctx { g: &cli.global };
    let json = |o: Outcome| o.map(|(v, ok)| (Output::Json(v), ok));
    match &cli.command {
        Command::Build { dot, bounded } => {
            let p = if *bounded { c.bounded()? } else { c.poset()? };
            Ok(if *dot {
                (Output::Text(io::poset_dot(&p, c.g.ascii)), true)
            } else {
                (Output::Json(io::poset_json(&p, c.g.ascii)), true)
            })
        }
        Command::VerifyEl { witnesses } => json(cmd_verify_el(&c, *witnesses)),
        Command::CountChains => json(cmd_count_chains(&c)),
        Command::Charpoly => json(cmd_charpoly(&c)),
        Command::Moebius { x, y } => json(cmd_moebius(&c, *x, *y)),
        Command::Trees { nodes, q, r, count_only } => json(cmd_trees(*nodes, *q, *r, *count_only)),
        Command::Bijection { direction, input } => json(cmd_bijection(&c, *direction, input.as_ref())),
        Command::Homology => json(cmd_homology(&c)),
        Command::Certify { paper_suite: true } => {
            let report = suite::run_suite();
            let ok = report.passed();
            Ok(if c.g.pretty {
                (Output::Text(report.table()), ok)
            } else {
                (Output::Json(report.to_json()), ok)
            })
        }
        Command::Certify { paper_suite: false } => json(cmd_certify(&c)),
        Command::Reduce { orbit } => json(cmd_reduce(&c, *orbit)),
    }
}

/// Runs the command line `argv` (program name first), writing to the given streams.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok((output, ok)) => {
            let text = match output {
                Output::Text(t) => t,
                Output::Json(v) => {
                    let s = if cli.global.pretty {
                        serde_json::to_string_pretty(&v)
                    } else {
                        serde_json::to_string(&v)
                    };
                    s.expect("JSON values serialize") + "\n"
                }
            };
            if write!(out, "{text}").is_err() {
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Runs the command line on the process streams and returns the exit status.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

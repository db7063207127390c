use std::path::Path;
use std::time::Instant;

use codesparse::graphs::{
    count_thin, cut_space, disjoint_hitting_sets, edge_connectivity, find_thin, is_hitting_set,
    is_thin, proper_sparsifier_search, Graph,
};
use codesparse::io::{parse_code, parse_graph, parse_subset, parse_subset_lines};
use codesparse::sparsify::bounds::small_budget;
use codesparse::sparsify::{
    bounds_for, coset_maximize, count_sparsifiers, iterated_sparsifier, min_sparsifier,
    monte_carlo_density, small_sparsifier_search, verify, Alpha, CensusOptions, SearchMode,
    SearchOptions,
};
use codesparse::{BitVector, Error, LinearCode};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::{Command, Format, Mode, Opts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

/// One JSON document per run. Field order is fixed; nested maps are sorted.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub alpha: Option<String>,
    pub result: Value,
    pub seed: u64,
    pub elapsed_ms: u128,
    pub version: &'static str,
}

pub struct Outcome {
    pub exit: i32,
    /// Text for standard output (JSON report or CSV).
    pub output: Option<String>,
    /// Diagnostic for standard error.
    pub diagnostic: Option<String>,
}

enum Input {
    Code(LinearCode),
    Graph(Graph),
    None,
}

struct Ctx<'a> {
    opts: &'a Opts,
    input: Input,
    digest: Option<String>,
    alpha: Alpha,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DimensionTooLarge { .. } | Error::LengthTooLarge { .. } => EXIT_CAP,
        Error::NotFound(_) => EXIT_NOT_FOUND,
        Error::TheoremViolation { .. } => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn one_indexed(s: &BitVector) -> Vec<usize> {
    s.ones_iter().map(|i| i + 1).collect()
}

fn read_input(path: &Path) -> Result<(String, String), Error> {
    let bytes = std::fs::read(path)?;
    let hex: String = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let digest = format!("sha256:{hex}");
    let text = String::from_utf8(bytes)
        .map_err(|e| Error::Domain(format!("{} is not UTF-8: {e}", path.display())))?;
    Ok((text, digest))
}

impl Ctx<'_> {
    fn code(&self) -> Result<LinearCode, Error> {
        match &self.input {
            Input::Code(c) => Ok(c.clone()),
            Input::Graph(g) => Ok(cut_space(g).with_enumeration_cap(self.opts.max_k)),
            Input::None => Err(Error::Domain("this command needs --code or --graph".into())),
        }
    }

    fn graph(&self) -> Result<&Graph, Error> {
        match &self.input {
            Input::Graph(g) => Ok(g),
            _ => Err(Error::Domain("this command needs --graph".into())),
        }
    }

    fn subset(&self, n: usize) -> Result<Option<BitVector>, Error> {
        match self.opts.set.as_deref() {
            None => Ok(None),
            Some(spec) => match spec.strip_prefix('@') {
                Some(path) => Ok(Some(parse_subset_lines(
                    &std::fs::read_to_string(path)?,
                    n,
                )?)),
                None => Ok(Some(parse_subset(spec, n)?)),
            },
        }
    }

    fn required_subset(&self, n: usize) -> Result<BitVector, Error> {
        self.subset(n)?
            .ok_or_else(|| Error::Domain("this command needs --set".into()))
    }

    fn census_opts(&self) -> CensusOptions {
        CensusOptions {
            max_n: self.opts.max_n,
            threads: self.opts.threads,
            chunks: None,
        }
    }

    fn search_opts(&self) -> SearchOptions {
        SearchOptions {
            mode: match self.opts.mode {
                Mode::Exact => SearchMode::Exact,
                Mode::Heuristic => SearchMode::Heuristic,
            },
            restarts: self.opts.restarts,
            seed: self.opts.seed,
            max_n: self.opts.max_n,
        }
    }
}

/// What a command produced: a result document, an optional CSV rendering,
/// and the exit code it maps to.
struct Computed {
    result: Value,
    csv: Option<String>,
    exit: i32,
}

impl Computed {
    fn ok(result: Value) -> Self {
        Self {
            result,
            csv: None,
            exit: EXIT_OK,
        }
    }
}

fn compute(cmd: Command, ctx: &Ctx) -> Result<Computed, Error> {
    let alpha = ctx.alpha;
    match cmd {
        Command::Verify => {
            let code = ctx.code()?;
            let s = ctx.required_subset(code.len())?;
            let v = verify(&code, &s, alpha)?;
            Ok(Computed::ok(
                json!({ "set": one_indexed(&s), "pass": v.pass, "violation": v.violation }),
            ))
        }
        Command::Maximize => {
            let code = ctx.code()?;
            let start = ctx
                .subset(code.len())?
                .unwrap_or_else(|| BitVector::zeros(code.len()));
            let out = coset_maximize(&code, &start)?;
            let pass = verify(&code, &out, Alpha::HALF)?.pass;
            Ok(Computed::ok(json!({
                "start": one_indexed(&start),
                "start_size": start.weight(),
                "set": one_indexed(&out),
                "size": out.weight(),
                "half_sparsifier": pass,
            })))
        }
        Command::Census => {
            let code = ctx.code()?;
            let r = count_sparsifiers(&code, alpha, &ctx.census_opts())?;
            Ok(Computed {
                csv: Some(r.histogram_csv()),
                result: to_value(&r),
                exit: EXIT_OK,
            })
        }
        Command::MinSize => {
            let code = ctx.code()?;
            let (s, size) = min_sparsifier(&code, alpha, ctx.opts.max_n)?;
            Ok(Computed::ok(
                json!({ "set": one_indexed(&s), "size": size }),
            ))
        }
        Command::Small => {
            let code = ctx.code()?;
            let budget = small_budget(code.len(), code.dimension());
            let found = small_sparsifier_search(&code, &ctx.search_opts())?;
            let exit = if found.is_some() {
                EXIT_OK
            } else {
                EXIT_NOT_FOUND
            };
            Ok(Computed {
                result: json!({
                    "found": found.is_some(),
                    "set": found.as_ref().map(one_indexed),
                    "size": found.as_ref().map(BitVector::weight),
                    "budget": budget,
                    "mode": ctx.search_opts().mode,
                }),
                csv: None,
                exit,
            })
        }
        Command::Iterate => {
            let code = ctx.code()?;
            let t = iterated_sparsifier(&code, ctx.opts.ell, &ctx.search_opts())?;
            Ok(Computed::ok(to_value(&t)))
        }
        Command::Montecarlo => {
            let code = ctx.code()?;
            let r = monte_carlo_density(
                &code,
                ctx.opts.trials,
                alpha,
                ctx.opts.seed,
                ctx.opts.threads,
            )?;
            Ok(Computed::ok(to_value(&r)))
        }
        Command::Bounds => {
            let (n, k) = match (&ctx.input, ctx.opts.n, ctx.opts.k) {
                (_, Some(n), Some(k)) => (n, k),
                (Input::Code(_) | Input::Graph(_), _, _) => {
                    let code = ctx.code()?;
                    (code.len(), code.dimension())
                }
                _ => {
                    return Err(Error::Domain(
                        "bounds needs --n and --k, or an input file".into(),
                    ))
                }
            };
            let b = bounds_for(n, k)?;
            let mut v = to_value(&b);
            let big: serde_json::Map<String, Value> = (1..=ctx.opts.ell.max(1))
                .map(|l| (l.to_string(), json!(b.budget_big_alpha(l))))
                .collect();
            v["budget_big_alpha"] = Value::Object(big);
            Ok(Computed::ok(v))
        }
        Command::CutSpace => {
            let g = ctx.graph()?;
            let code = ctx.code()?;
            Ok(Computed::ok(json!({
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
                "components": g.component_count(),
                "dimension": code.dimension(),
                "basis": code.basis().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            })))
        }
        Command::Thin => {
            let g = ctx.graph()?;
            let t = ctx.required_subset(g.num_edges())?;
            Ok(Computed::ok(to_value(&is_thin(g, &t, alpha)?)))
        }
        Command::CountThin => {
            let g = ctx.graph()?;
            let r = count_thin(g, alpha, &ctx.census_opts())?;
            Ok(Computed {
                csv: Some(r.histogram_csv()),
                result: to_value(&r),
                exit: EXIT_OK,
            })
        }
        Command::FindThin => {
            let g = ctx.graph()?;
            Ok(Computed::ok(to_value(&find_thin(
                g,
                ctx.opts.ell,
                &ctx.search_opts(),
            )?)))
        }
        Command::Hitting => {
            let code = ctx.code()?;
            match ctx.subset(code.len())? {
                Some(s) => Ok(Computed::ok(json!({
                    "set": one_indexed(&s),
                    "hitting": is_hitting_set(&code, &s)?,
                }))),
                None => Ok(Computed::ok(to_value(&disjoint_hitting_sets(
                    &code,
                    ctx.opts.seed,
                )?))),
            }
        }
        Command::Conjecture => {
            let code = ctx.code()?;
            let r = proper_sparsifier_search(
                &code,
                alpha,
                ctx.opts.trials,
                ctx.opts.seed,
                ctx.opts.max_n,
            )?;
            let exit = if r.witness.is_none() && !r.exhaustive {
                EXIT_NOT_FOUND
            } else {
                EXIT_OK
            };
            Ok(Computed {
                result: to_value(&r),
                csv: None,
                exit,
            })
        }
        Command::Connectivity => {
            let g = ctx.graph()?;
            Ok(Computed::ok(
                json!({ "edge_connectivity": edge_connectivity(g)? }),
            ))
        }
    }
}

fn load(opts: &Opts) -> Result<(Input, Option<String>), Error> {
    if let Some(path) = &opts.code {
        let (text, digest) = read_input(path)?;
        let code = parse_code(&text)?.with_enumeration_cap(opts.max_k);
        return Ok((Input::Code(code), Some(digest)));
    }
    if let Some(path) = &opts.graph {
        let (text, digest) = read_input(path)?;
        return Ok((Input::Graph(parse_graph(&text)?), Some(digest)));
    }
    Ok((Input::None, None))
}

fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Executes one command end to end.
pub fn run(cmd: Command, opts: &Opts) -> Outcome {
    let started = Instant::now();
    let alpha = match opts.alpha.parse::<Alpha>() {
        Ok(a) => a,
        Err(e) => return usage(e),
    };
    let (input, digest) = match load(opts) {
        Ok(x) => x,
        Err(e) => return usage(e),
    };
    let ctx = Ctx {
        opts,
        input,
        digest,
        alpha,
    };
    let (n, k) = match ctx.code() {
        Ok(c) => (Some(c.len()), Some(c.dimension())),
        Err(_) => (opts.n, opts.k),
    };
    let uses_alpha = matches!(
        cmd,
        Command::Verify
            | Command::Census
            | Command::MinSize
            | Command::Montecarlo
            | Command::Thin
            | Command::CountThin
            | Command::Conjecture
    );
    let mut report = Report {
        command: cmd.name(),
        input_digest: ctx.digest.clone(),
        n,
        k,
        alpha: uses_alpha.then(|| alpha.to_string()),
        result: Value::Null,
        seed: opts.seed,
        elapsed_ms: 0,
        version: env!("CARGO_PKG_VERSION"),
    };

    let computed = compute(cmd, &ctx);
    report.elapsed_ms = started.elapsed().as_millis();
    match computed {
        Ok(c) => {
            if opts.format == Format::Csv {
                return match c.csv {
                    Some(csv) => Outcome {
                        exit: c.exit,
                        output: Some(csv),
                        diagnostic: None,
                    },
                    None => usage(Error::Domain(format!(
                        "--format csv is only available for census and count-thin, not {}",
                        cmd.name()
                    ))),
                };
            }
            report.result = c.result;
            let diagnostic = (c.exit == EXIT_NOT_FOUND).then(|| "no set found".to_string());
            Outcome {
                exit: c.exit,
                output: Some(render(&report)),
                diagnostic,
            }
        }
        Err(e) => {
            let exit = exit_code(&e);
            if exit == EXIT_USAGE {
                return usage(e);
            }
            report.result = match &e {
                Error::TheoremViolation { statement, witness } => json!({
                    "error": "theorem_violation",
                    "statement": statement,
                    "witness": serde_json::from_str::<Value>(witness).unwrap_or_else(|_| json!(witness)),
                }),
                Error::NotFound(msg) => json!({ "error": "not_found", "message": msg }),
                other => json!({ "error": "cap_exceeded", "message": other.to_string() }),
            };
            Outcome {
                exit,
                output: Some(render(&report)),
                diagnostic: Some(format!("error: {e}")),
            }
        }
    }
}

fn usage(e: Error) -> Outcome {
    Outcome {
        exit: exit_code(&e).max(EXIT_USAGE),
        output: None,
        diagnostic: Some(format!("error: {e}")),
    }
}

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use sawlang::decomposition::{
    block_cut_tree, tutte_decomposition, MultiGraph, QuotientDecomposition, QuotientOptions,
};
use sawlang::grammar::{build_saw_grammar, ContextFreeGrammar};
use sawlang::input::{parse_input, GraphInput};
use sawlang::oracle::{count_saws_parallel, probe_family, SlotRanges, WordTemplate};
use sawlang::series::{connective_constant, grammar_to_system, minimal_polynomial};
use sawlang::{count_saws, saw_words, validate, BallView, LabelledGraph};

use super::{CliError, Command, GlobalOpts, Outcome, ProbeArgs};

/// Everything a subcommand needs: the options and the parsed input.
pub struct Context {
    pub opts: GlobalOpts,
    pub input: GraphInput,
}

impl Context {
    pub fn load(opts: &GlobalOpts) -> Result<Self, CliError> {
        let path = opts
            .input
            .as_ref()
            .ok_or_else(|| CliError::Invalid("--input is required".to_string()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Ok(Context {
            opts: opts.clone(),
            input: parse_input(&text)?,
        })
    }

    fn log(&self, level: u8, msg: impl FnOnce() -> String) {
        if self.opts.verbose >= level {
            eprintln!("{}", msg());
        }
    }

    fn maxlen(&self) -> Result<usize, CliError> {
        self.opts
            .maxlen
            .ok_or_else(|| CliError::Invalid("--maxlen is required".to_string()))
    }

    /// Oracle ball; the radius defaults to `default`.
    fn ball(&self, default: Option<usize>) -> Result<BallView, CliError> {
        let r = match &self.input {
            GraphInput::Finite { .. } => 0,
            _ => self.opts.radius.or(default).ok_or_else(|| {
                CliError::Invalid("--radius (or --maxlen) is required".to_string())
            })?,
        };
        self.log(1, || format!("expanding ball of radius {r}"));
        Ok(self.input.ball(r)?)
    }

    fn counts(&self, view: &BallView, n: usize) -> Result<Vec<String>, CliError> {
        let c = if self.opts.parallel > 1 {
            count_saws_parallel(view, n)?
        } else {
            count_saws(view, n)?
        };
        Ok(c.counts.iter().map(|x| x.to_string()).collect())
    }

    fn quotient(&self, radius: Option<usize>) -> Result<QuotientDecomposition, CliError> {
        let q = self
            .input
            .quotient(radius, self.opts.max_radius, &QuotientOptions::default())?;
        self.log(1, || {
            format!(
                "quotient: {} 3-block orbits, {} pair orbits, {} level-2 edges",
                q.blocks3.len(),
                q.pairs.len(),
                q.y_edges.len()
            )
        });
        Ok(q)
    }

    fn grammar(&self, radius: Option<usize>) -> Result<ContextFreeGrammar, CliError> {
        let g = build_saw_grammar(&self.quotient(radius)?)?;
        self.log(1, || {
            format!(
                "grammar: {} variables, {} productions",
                g.variables().len(),
                g.productions().len()
            )
        });
        Ok(g)
    }
}

fn ok(r: Result<String, CliError>) -> Outcome {
    r.map_err(|e| (None, e))
}

pub fn dispatch(ctx: &Context, cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate => ok(validate_cmd(ctx)),
        Command::Count => ok(count(ctx)),
        Command::Words => ok(words(ctx)),
        Command::Probe(a) => ok(probe(ctx, a)),
        Command::Blocks => ok(blocks(ctx)),
        Command::Tutte => ok(tutte(ctx)),
        Command::Quotient => ok(ctx.quotient(ctx.opts.radius).map(|q| q.to_json())),
        Command::Grammar => ok(ctx.grammar(ctx.opts.radius).map(|g| g.to_text())),
        Command::Census => ok(census(ctx)),
        Command::Series => ok(series(ctx)),
        Command::Minpoly => ok(minpoly(ctx)),
        Command::Mu => ok(mu(ctx)),
        Command::Verify => verify(ctx),
    }
}

fn validate_cmd(ctx: &Context) -> Result<String, CliError> {
    let mut s = String::new();
    match &ctx.input {
        GraphInput::Finite { graph, .. } => {
            let report = validate(graph);
            writeln!(s, "mode\tfinite").unwrap();
            writeln!(s, "vertices\t{}", graph.vertex_count()).unwrap();
            writeln!(s, "edges\t{}", graph.darts().len() / 2).unwrap();
            if !report.is_valid() {
                return Err(CliError::Invalid(format!("invalid graph:\n{report}")));
            }
        }
        GraphInput::Cayley(spec) => {
            let r = ctx.opts.radius.unwrap_or(2);
            let ball = ctx.input.ball(r)?;
            let report = validate(&ball.graph);
            writeln!(s, "mode\tcayley").unwrap();
            writeln!(s, "generators\t{}", spec.alphabet().len()).unwrap();
            writeln!(s, "confluent\ttrue").unwrap();
            writeln!(s, "ball_radius\t{r}").unwrap();
            writeln!(s, "ball_vertices\t{}", ball.graph.vertex_count()).unwrap();
            if !report.is_valid() {
                return Err(CliError::Invalid(format!("invalid ball:\n{report}")));
            }
        }
        GraphInput::Quotient(q) => {
            writeln!(s, "mode\tquotient").unwrap();
            writeln!(s, "blocks3\t{}", q.blocks3.len()).unwrap();
            writeln!(s, "edge_orbits\t{}", q.pairs.len()).unwrap();
            writeln!(s, "y_edges\t{}", q.y_edges.len()).unwrap();
        }
    }
    writeln!(s, "valid\ttrue").unwrap();
    Ok(s)
}

fn tsv_counts(header: &str, counts: &[String]) -> String {
    let mut s = format!("n\t{header}\n");
    for (n, c) in counts.iter().enumerate() {
        writeln!(s, "{n}\t{c}").unwrap();
    }
    s
}

fn count(ctx: &Context) -> Result<String, CliError> {
    let n = ctx.maxlen()?;
    let view = ctx.ball(Some(n))?;
    Ok(tsv_counts("c_n", &ctx.counts(&view, n)?))
}

fn words(ctx: &Context) -> Result<String, CliError> {
    let n = ctx.maxlen()?;
    let view = ctx.ball(Some(n))?;
    let al = ctx.input.alphabet();
    let mut s = String::new();
    for w in saw_words(&view, n)? {
        writeln!(s, "{}", al.tokens_of(&w).join(" ")).unwrap();
    }
    Ok(s)
}

fn range(name: &str, text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Invalid(format!("--{name}: expected N or LO..HI, got {text:?}"));
    let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let a = parse(text)?;
            Ok(a..=a)
        }
    }
}

fn probe(ctx: &Context, a: &ProbeArgs) -> Result<String, CliError> {
    let t = WordTemplate::parse(ctx.input.alphabet(), &a.template)?;
    let ranges = SlotRanges {
        k: range("k", &a.k)?,
        l: range("l", &a.l)?,
        m: range("m", &a.m)?,
    };
    let longest = t
        .instantiate(*ranges.k.end(), *ranges.l.end(), *ranges.m.end())
        .len();
    let view = ctx.ball(Some(longest))?;
    let table = probe_family(&view, &t, &ranges)?;
    let mut s = "k\tl\tm\tmember\n".to_string();
    for ((k, l, m), member) in table {
        writeln!(s, "{k}\t{l}\t{m}\t{member}").unwrap();
    }
    Ok(s)
}

fn dart_json(g: &LabelledGraph, d: usize) -> Value {
    let dart = g.dart(d);
    json!({
        "tail": g.name(dart.tail),
        "head": g.name(dart.head),
        "label": g.alphabet().token(dart.label),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn decomposition_ball(ctx: &Context) -> Result<BallView, CliError> {
    ctx.ball(ctx.opts.maxlen.or(Some(2)))
}

fn blocks(ctx: &Context) -> Result<String, CliError> {
    let view = decomposition_ball(ctx)?;
    let g = &view.graph;
    let tree = block_cut_tree(g)?;
    let doc = json!({
        "root": g.name(view.root),
        "blocks": tree.blocks.iter().map(|b| json!({
            "vertices": b.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
            "edges": b.edges.iter().map(|&d| dart_json(g, d)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "cutvertices": tree.cutvertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
        "incidences": tree.incidences.iter().map(|&(b, v)| json!([b, g.name(v)])).collect::<Vec<_>>(),
    });
    Ok(pretty(&doc))
}

fn tutte(ctx: &Context) -> Result<String, CliError> {
    let view = decomposition_ball(ctx)?;
    let g = &view.graph;
    let tree = block_cut_tree(g)?;
    let mut out = Vec::new();
    for (i, b) in tree.blocks.iter().enumerate() {
        if b.edges.len() < 3 {
            continue;
        }
        let t = tutte_decomposition(&MultiGraph::from_darts(g, b.edges.iter().copied()))?;
        let nodes: Vec<Value> = t
            .nodes
            .iter()
            .map(|n| {
                json!({
                    "kind": n.kind,
                    "vertices": n.graph.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
                    "edges": n.graph.edges.iter().map(|e| {
                        let ends = [g.name(e.ends[0]), g.name(e.ends[1])];
                        match e.label {
                            Some(l) if !e.is_virtual => json!({"ends": ends, "label": g.alphabet().token(l)}),
                            _ => json!({"ends": ends, "virtual": e.tag}),
                        }
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        let edges: Vec<Value> = t
            .edges
            .iter()
            .map(|e| json!({"virtual": e.virtual_tag, "nodes": e.nodes}))
            .collect();
        out.push(json!({"block": i, "nodes": nodes, "tree_edges": edges}));
    }
    Ok(pretty(&json!({ "root": g.name(view.root), "blocks": out })))
}

fn census(ctx: &Context) -> Result<String, CliError> {
    let n = ctx.maxlen()?;
    let g = ctx.grammar(ctx.opts.radius)?;
    let mut s = "n\tcount\tmax_multiplicity\n".to_string();
    for row in g.census(n)? {
        writeln!(s, "{}\t{}\t{}", row.length, row.words, row.max_multiplicity).unwrap();
    }
    Ok(s)
}

fn series(ctx: &Context) -> Result<String, CliError> {
    let n = ctx.maxlen()?;
    let g = ctx.grammar(ctx.opts.radius)?;
    let sys = grammar_to_system(&g)?;
    let f = sys.solve_integer(n)?.swap_remove(sys.start);
    let counts: Vec<String> = f.iter().map(|c| c.to_string()).collect();
    Ok(tsv_counts("c_n", &counts))
}

fn minpoly(ctx: &Context) -> Result<String, CliError> {
    let g = ctx.grammar(ctx.opts.radius)?;
    let sys = grammar_to_system(&g)?;
    let (eq, f) = minimal_polynomial(&sys, sys.start)?;
    ctx.log(1, || format!("verified on {} coefficients", f.order() + 1));
    let mut s = format!("# P(t, y) = {eq}\ndeg_t\tdeg_y\tcoefficient\n");
    for (dt, dy, c) in eq.rows() {
        writeln!(s, "{dt}\t{dy}\t{c}").unwrap();
    }
    Ok(s)
}

fn mu(ctx: &Context) -> Result<String, CliError> {
    let g = ctx.grammar(ctx.opts.radius)?;
    let sys = grammar_to_system(&g)?;
    let (eq, f) = minimal_polynomial(&sys, sys.start)?;
    let counts = f
        .integers()
        .ok_or_else(|| CliError::Invalid("series has non-integer coefficients".to_string()))?;
    let cc = connective_constant(&eq, &counts, ctx.opts.tol)?;
    ctx.log(1, || format!("ratio estimate {}", cc.estimate));
    let (rl, rh) = cc.rho.to_decimal(cc.digits + 2);
    let (ml, mh) = cc.mu.to_decimal(cc.digits);
    Ok(format!("quantity\tlo\thi\nrho\t{rl}\t{rh}\nmu\t{ml}\t{mh}\n"))
}

fn verify(ctx: &Context) -> Outcome {
    let run = || -> Result<(String, bool), CliError> {
        let n = ctx.maxlen()?;
        let g = ctx.grammar(None)?;
        let grammar: Vec<String> = g.count_by_length(n)?.iter().map(|c| c.to_string()).collect();
        let view = ctx.ball(Some(n))?;
        let oracle = ctx.counts(&view, n)?;
        let mut s = "n\tgrammar\toracle\tmatch\n".to_string();
        let mut all = true;
        for (i, (a, b)) in grammar.iter().zip(&oracle).enumerate() {
            all &= a == b;
            writeln!(s, "{i}\t{a}\t{b}\t{}", a == b).unwrap();
        }
        Ok((s, all))
    };
    match run() {
        Ok((s, true)) => Ok(s),
        Ok((s, false)) => Err((
            Some(s),
            CliError::Mismatch("grammar counts differ from the oracle".to_string()),
        )),
        Err(e) => Err((None, e)),
    }
}

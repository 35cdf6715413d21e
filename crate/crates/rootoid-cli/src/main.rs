use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootoid::aop::{AopError, LocalEmbedding};
use rootoid::braid::braid_data;
use rootoid::completion::{rootoid_ortho_embed, CompletionError, IDEAL_BOUND};
use rootoid::corpus::{ladder, parse_input, pin_results, CorpusEntry, InputError};
use rootoid::coxeter::CoxeterError;
use rootoid::functor::{
    functor_report, normalizer_component, square_component, stable_sets, FunctorError, FunctorObj,
    NormalizerObject, PresentedH, COMPONENT_BOUND,
};
use rootoid::groupoid::{GroupoidError, Mor, Obj, DEFAULT_MORPHISM_BOUND};
use rootoid::order::{WeakOrder, DEFAULT_JOP_WIDTH};
use rootoid::squares::{enumerate_squares, max_nontrivial_cube};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "rootoid",
    version,
    about = "Verdicts and constructions for finite protorootoids"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit DOT where a diagram exists.
    #[arg(long, global = true)]
    dot: bool,
    #[command(flatten)]
    gates: Gates,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Gates {
    /// Largest groupoid accepted.
    #[arg(long = "gate-morphisms", global = true, default_value_t = DEFAULT_MORPHISM_BOUND)]
    morphisms: usize,
    /// Largest family width tried by the join test.
    #[arg(long = "gate-jop-width", global = true, default_value_t = DEFAULT_JOP_WIDTH)]
    jop_width: usize,
    /// Largest number of morphisms in a normalizer or functor component.
    #[arg(long = "gate-component", global = true, default_value_t = COMPONENT_BOUND)]
    component: usize,
    /// Largest number of ideals in a completion.
    #[arg(long = "gate-ideals", global = true, default_value_t = IDEAL_BOUND)]
    ideals: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full verdict ladder with pinned expectations.
    Verify { input: String },
    /// Braid presentation: matrices, relations and the pi table.
    Present { input: String },
    /// Hasse diagrams of the weak orders.
    Hasse {
        input: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Oriented squares.
    Squares { input: String },
    /// Dimension of the largest nontrivial cube.
    Maxcube {
        input: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Component of the normalizer groupoid, seeded as `OBJ:{a,b}`.
    Normalizer {
        input: String,
        #[arg(long)]
        seed: String,
    },
    /// Component of a functor groupoid.
    Functor {
        input: String,
        #[arg(long, value_enum, default_value_t = Datum::Point)]
        datum: Datum,
        /// Morphism the datum is evaluated at.
        #[arg(long)]
        at: Option<String>,
    },
    /// Stable sets at an object.
    Stable {
        input: String,
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Ortholattice completion of a weak order.
    Complete {
        input: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// Adjoint orthogonality for a generated subgroupoid or a diagram fold.
    Aop {
        input: String,
        /// Comma-separated morphisms generating the source.
        #[arg(long, conflicts_with = "fold")]
        gens: Option<String>,
        /// Comma-separated permutation of the simple generators.
        #[arg(long)]
        fold: Option<String>,
    },
    /// Protorootoid as JSON.
    Dump { input: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Datum {
    Point,
    Loop,
    Arrow,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Gate(String),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Groupoid(GroupoidError::SizeBound { .. })
            | InputError::Coxeter(CoxeterError::Groupoid(GroupoidError::SizeBound { .. })) => {
                CliError::Gate(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FunctorError> for CliError {
    fn from(e: FunctorError) -> Self {
        match e {
            FunctorError::Bound(_) => CliError::Gate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CompletionError> for CliError {
    fn from(e: CompletionError) -> Self {
        match e {
            CompletionError::Bound(_) => CliError::Gate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<AopError> for CliError {
    fn from(e: AopError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Rendered output and whether the verdict holds.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    pass: bool,
}

impl Report {
    fn new(text: String, json: Value, pass: bool) -> Self {
        Report {
            text,
            json,
            dot: None,
            pass,
        }
    }
}

fn load(input: &str, gates: Gates) -> Result<CorpusEntry, CliError> {
    let text = if input.starts_with("corpus:") || input.trim_start().starts_with('{') {
        input.to_string()
    } else if let Ok(body) = fs::read_to_string(input) {
        body
    } else {
        input.to_string()
    };
    let entry = parse_input(&text)?;
    let n = entry.pr().groupoid().morphism_count();
    if n > gates.morphisms {
        return Err(CliError::Gate(format!(
            "{n} morphisms exceed the gate of {}",
            gates.morphisms
        )));
    }
    Ok(entry)
}

fn resolve(entry: &CorpusEntry, name: &str) -> Result<Mor, CliError> {
    let g = entry.pr().groupoid();
    let name = name.trim();
    g.morphism_by_name(name)
        .or_else(|| entry.coxeter().and_then(|cg| cg.element(name)))
        .ok_or_else(|| CliError::Input(format!("unknown morphism `{name}`")))
}

fn resolve_object(entry: &CorpusEntry, name: Option<&str>) -> Result<Obj, CliError> {
    let g = entry.pr().groupoid();
    match name {
        None | Some("1W") => Ok(Obj(0)),
        Some(n) => g
            .object_by_name(n)
            .ok_or_else(|| CliError::Input(format!("unknown object `{n}`"))),
    }
}

fn names(entry: &CorpusEntry, ms: &[Mor]) -> Vec<String> {
    let g = entry.pr().groupoid();
    ms.iter().map(|&m| g.name(m).to_string()).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("n/a", yes)
}

fn verify(entry: &CorpusEntry, gates: Gates) -> Report {
    let lad = ladder(entry, gates.jop_width);
    let pins = pin_results(entry, &lad);
    let mut text = format!("{}: {}\n", entry.name, entry.recipe);
    let rows = [
        ("faithful", opt(Some(lad.faithful))),
        ("WEC (C1)", opt(lad.wec)),
        ("meet semilattice", yes(lad.meet_semilattice)),
        ("JOP", yes(lad.jop)),
        ("rootoid (C2)", yes(lad.rootoid)),
        ("complete", yes(lad.complete)),
        ("preprincipal", yes(lad.preprincipal)),
        ("2-complete", yes(lad.two_complete)),
        ("even", opt(lad.even)),
        ("principal", opt(lad.principal)),
    ];
    for (k, v) in rows {
        text.push_str(&format!("  {k:<18}{v}\n"));
    }
    if let Some(w) = &lad.report.jop_witness {
        text.push_str(&format!(
            "  JOP witness at {}: {} <= join({}) = {}\n",
            w.object,
            w.x,
            w.family.join(", "),
            w.join
        ));
    }
    if let Some((x, y)) = &lad.report.meet_witness {
        text.push_str(&format!("  no meet of {x} and {y}\n"));
    }
    if lad.report.jop_bounded {
        text.push_str("  JOP search was bounded by the width gate\n");
    }
    let mut pins_ok = true;
    let mut pin_json = Vec::new();
    for (p, got) in &pins {
        let ok = *got == Some(p.expected);
        pins_ok &= ok;
        text.push_str(&format!(
            "  pin {:<18}{} (expected {})\n",
            p.key,
            if ok { "ok" } else { "MISMATCH" },
            p.expected
        ));
        pin_json.push(json!({"key": p.key, "expected": p.expected, "got": got, "ok": ok}));
    }
    let pass = lad.rootoid && pins_ok;
    let json = json!({"name": entry.name, "recipe": entry.recipe, "ladder": lad, "pins": pin_json, "pass": pass});
    Report::new(text, json, pass)
}

fn present(entry: &CorpusEntry) -> Result<Report, CliError> {
    let sys = entry
        .system()
        .ok_or_else(|| CliError::Input("input has no generating set".into()))?;
    let bd = braid_data(sys, entry.pr()).map_err(|e| CliError::Input(e.to_string()))?;
    let json = bd.to_json(sys);
    let g = sys.groupoid();
    let mut text = String::new();
    for a in g.objects() {
        let gens: Vec<Mor> = sys.gens_at(a).collect();
        text.push_str(&format!(
            "object {}: generators {}\n",
            g.obj_name(a),
            names(entry, &gens).join(" ")
        ));
        for &r in &gens {
            let row: Vec<String> = gens
                .iter()
                .map(|&s| {
                    bd.entry(sys, r, s)
                        .map_or("-".to_string(), |m| m.to_string())
                })
                .collect();
            text.push_str(&format!("  {:<8}{}\n", g.name(r), row.join(" ")));
        }
        let edges: Vec<String> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| gens[i + 1..].iter().map(move |&s| (r, s)))
            .filter(|&(r, s)| bd.entry(sys, r, s).is_none_or(|m| m > 2))
            .map(|(r, s)| format!("{}-{}", g.name(r), g.name(s)))
            .collect();
        text.push_str(&format!(
            "  graph edges: {}\n",
            if edges.is_empty() {
                "none".into()
            } else {
                edges.join(", ")
            }
        ));
    }
    let rels = bd.relation_strings(sys);
    text.push_str(&format!("braid relations ({}):\n", rels.len()));
    for r in &rels {
        text.push_str(&format!("  {r}\n"));
    }
    text.push_str("pi:\n");
    for (r, pairs) in bd.pi_table(sys) {
        let p: Vec<String> = pairs.iter().map(|(t, s)| format!("{t}->{s}")).collect();
        text.push_str(&format!("  pi_{r}: {}\n", p.join(", ")));
    }
    Ok(Report::new(text, json, true))
}

fn hasse(entry: &CorpusEntry, object: Option<&str>) -> Result<Report, CliError> {
    let pr = entry.pr();
    let objs: Vec<Obj> = match object {
        Some(_) => vec![resolve_object(entry, object)?],
        None => pr.groupoid().objects().collect(),
    };
    let mut text = String::new();
    let mut dot = String::new();
    let mut js = Vec::new();
    for a in objs {
        let wo = WeakOrder::new(pr, a);
        let labels = names(entry, &wo.elems);
        let covers: Vec<(String, String)> = wo
            .poset
            .covers()
            .into_iter()
            .map(|(i, j)| (labels[i].clone(), labels[j].clone()))
            .collect();
        text.push_str(&format!(
            "object {} ({} elements)\n",
            pr.groupoid().obj_name(a),
            labels.len()
        ));
        for (x, y) in &covers {
            text.push_str(&format!("  {x} < {y}\n"));
        }
        dot.push_str(&wo.dot(pr));
        js.push(json!({"object": pr.groupoid().obj_name(a), "elements": labels, "covers": covers}));
    }
    let mut r = Report::new(text, Value::Array(js), true);
    r.dot = Some(dot);
    Ok(r)
}

fn squares(entry: &CorpusEntry) -> Report {
    let all = enumerate_squares(entry.pr());
    let rows: Vec<Vec<String>> = all.iter().map(|q| names(entry, q)).collect();
    let mut text = format!("{} oriented squares\n", rows.len());
    for r in &rows {
        text.push_str(&format!("  ({})\n", r.join(", ")));
    }
    Report::new(text, json!({"count": rows.len(), "squares": rows}), true)
}

fn parse_seed(entry: &CorpusEntry, seed: &str) -> Result<NormalizerObject, CliError> {
    let (obj, set) = seed
        .split_once(':')
        .ok_or_else(|| CliError::Input("seed must look like OBJ:{a,b}".into()))?;
    let base = resolve_object(entry, Some(obj.trim()))?;
    let inner = set
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'));
    let inner = inner.ok_or_else(|| CliError::Input("seed set must be braced".into()))?;
    let set = inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| resolve(entry, s))
        .collect::<Result<_, _>>()?;
    Ok(NormalizerObject { base, set })
}

fn normalizer(entry: &CorpusEntry, seed: &str, gates: Gates) -> Result<Report, CliError> {
    let seed = parse_seed(entry, seed)?;
    let comp = normalizer_component(entry.pr(), seed, gates.component)?;
    let st = comp.stats();
    let objs = comp.groupoid.obj_names().to_vec();
    let mut text = format!("{} objects\n", st.objects);
    for (i, name) in objs.iter().enumerate() {
        text.push_str(&format!(
            "  {name}: star {}, atoms {}, longest {} (|N| {})\n",
            st.star_sizes[i], st.atoms[i], st.longest_length[i], st.longest_rank[i]
        ));
    }
    Ok(Report::new(
        text,
        json!({"objects": objs, "stats": st}),
        true,
    ))
}

fn functor(
    entry: &CorpusEntry,
    datum: Datum,
    at: Option<&str>,
    gates: Gates,
) -> Result<Report, CliError> {
    let pr = entry.pr();
    let g = pr.groupoid();
    let pick = || -> Result<Mor, CliError> {
        at.map(|n| resolve(entry, n))
            .ok_or_else(|| CliError::Input("--at is required for this datum".into()))?
    };
    let (h, f) = match datum {
        Datum::Point => (
            PresentedH::point(),
            FunctorObj {
                objects: vec![resolve_object(entry, at)?],
                images: vec![],
            },
        ),
        Datum::Loop => (PresentedH::loop_datum(), FunctorObj::loop_at(pick()?, g)),
        Datum::Arrow => (PresentedH::arrow_datum(), FunctorObj::arrow_at(pick()?, g)),
    };
    let comp = square_component(pr, &h, &f, gates.component)?;
    let rep = functor_report(pr, &comp)?;
    let (vertex, star) = comp.chi().names(g);
    let pass =
        rep.rootoid && rep.preprincipal && rep.star_injective && rep.aop && rep.basepoint_invariant;
    let text = format!(
        "{} objects, {} morphisms\n  rootoid {}\n  preprincipal {}\n  star injective {}\n  AOP {}\n  basepoint invariant {}\n  chi: vertex {{{}}} star {{{}}}\n",
        rep.objects,
        rep.morphisms,
        yes(rep.rootoid),
        yes(rep.preprincipal),
        yes(rep.star_injective),
        yes(rep.aop),
        yes(rep.basepoint_invariant),
        vertex.join(","),
        star.join(",")
    );
    Ok(Report::new(
        text,
        json!({"report": rep, "chi": {"vertex": vertex, "star": star}}),
        pass,
    ))
}

fn stable(entry: &CorpusEntry, object: Option<&str>, list: bool) -> Result<Report, CliError> {
    let a = resolve_object(entry, object)?;
    let fam = stable_sets(entry.pr(), a)?;
    let g = entry.pr().groupoid();
    let mut members: Vec<(Vec<String>, Vec<String>)> =
        fam.members.iter().map(|m| fam.to_chi(m).names(g)).collect();
    members.sort();
    let mut text = format!(
        "{} stable sets on a ground set of {}\n",
        fam.len(),
        fam.ground_len()
    );
    if list {
        for (v, s) in &members {
            text.push_str(&format!(
                "  vertex {{{}}} star {{{}}}\n",
                v.join(","),
                s.join(",")
            ));
        }
    }
    let js: Vec<Value> = members
        .iter()
        .map(|(v, s)| json!({"vertex": v, "star": s}))
        .collect();
    Ok(Report::new(
        text,
        json!({"count": fam.len(), "ground": fam.ground_len(), "members": js}),
        true,
    ))
}

fn complete(entry: &CorpusEntry, object: Option<&str>, gates: Gates) -> Result<Report, CliError> {
    let a = resolve_object(entry, object)?;
    let r = rootoid_ortho_embed(entry.pr(), a, gates.ideals)?;
    let e = &r.embedding;
    let pass = e.report.holds() && e.ideal_embedding;
    let text = format!(
        "weak order {} elements, {} join-closed ideals, ortholattice {} elements\n  Galois facts {}\n  ortholattice {}\n  order-ideal embedding {}\n  JOP {}\n",
        r.weak.elems.len(),
        e.completion.ideals.len(),
        e.glued.poset.len(),
        yes(e.facts.all()),
        yes(e.report.holds()),
        yes(e.ideal_embedding),
        yes(r.jop)
    );
    let json = json!({
        "weak_order": r.weak.elems.len(),
        "ideals": e.completion.ideals.len(),
        "ortholattice": e.glued.poset.len(),
        "facts": e.facts,
        "report": e.report,
        "ideal_embedding": e.ideal_embedding,
        "jop": r.jop,
        "embedding": e.embedding,
    });
    let mut rep = Report::new(text, json, pass);
    rep.dot = Some(e.glued.poset.dot("ortholattice", &e.glued.labels()));
    Ok(rep)
}

fn aop(entry: &CorpusEntry, gens: Option<&str>, fold: Option<&str>) -> Result<Report, CliError> {
    let pr = entry.pr();
    let le = match (gens, fold) {
        (Some(list), _) => {
            let ms: Vec<Mor> = list
                .split(',')
                .map(|s| resolve(entry, s))
                .collect::<Result<_, _>>()?;
            LocalEmbedding::generated(pr, &ms)?
        }
        (None, Some(perm)) => {
            let cg = entry
                .coxeter()
                .ok_or_else(|| CliError::Input("--fold needs a Coxeter input".into()))?;
            let p: Vec<usize> = perm
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| CliError::Input(format!("bad index `{s}`")))
                })
                .collect::<Result<_, _>>()?;
            let f = cg
                .fold_fixed_subgroup(&[p])
                .map_err(|e| CliError::Input(e.to_string()))?;
            LocalEmbedding::new(pr, f.sub, f.hom)?
        }
        (None, None) => return Err(CliError::Input("give --gens or --fold".into())),
    };
    let rep = le.aop_check()?;
    let atoms: Vec<String> = le
        .perp_of_atoms()?
        .iter()
        .map(|&m| pr.groupoid().name(m).to_string())
        .collect();
    let mut text = format!(
        "source {} morphisms\n  AOP {}\n  Galois {}\n  join closed {}\n  atoms {{{}}}\n",
        le.source().morphism_count(),
        yes(rep.holds),
        yes(rep.galois),
        yes(rep.join_closed),
        atoms.join(",")
    );
    if let Some((w1, w)) = &rep.witness {
        text.push_str(&format!("  witness w' = {w1}, w = {w}\n"));
    }
    let pass = rep.holds;
    Ok(Report::new(
        text,
        json!({"source": le.source().morphism_count(), "report": rep, "atoms": atoms}),
        pass,
    ))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = cli.gates;
    match &cli.command {
        Command::Verify { input } => Ok(verify(&load(input, g)?, g)),
        Command::Present { input } => present(&load(input, g)?),
        Command::Hasse { input, object } => hasse(&load(input, g)?, object.as_deref()),
        Command::Squares { input } => Ok(squares(&load(input, g)?)),
        Command::Maxcube { input, cap } => {
            let n = max_nontrivial_cube(load(input, g)?.pr(), *cap);
            Ok(Report::new(
                format!("{n}\n"),
                json!({"max_cube": n, "cap": cap}),
                true,
            ))
        }
        Command::Normalizer { input, seed } => normalizer(&load(input, g)?, seed, g),
        Command::Functor { input, datum, at } => {
            functor(&load(input, g)?, *datum, at.as_deref(), g)
        }
        Command::Stable {
            input,
            object,
            list,
        } => stable(&load(input, g)?, object.as_deref(), *list),
        Command::Complete { input, object } => complete(&load(input, g)?, object.as_deref(), g),
        Command::Aop { input, gens, fold } => {
            aop(&load(input, g)?, gens.as_deref(), fold.as_deref())
        }
        Command::Dump { input } => {
            let d = load(input, g)?.pr().dump();
            let json = serde_json::to_value(&d).map_err(|e| CliError::Input(e.to_string()))?;
            let text = serde_json::to_string_pretty(&json)
                .map_err(|e| CliError::Input(e.to_string()))?
                + "\n";
            Ok(Report::new(text, json, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            if cli.dot {
                match &rep.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("no diagram for this command");
                        return ExitCode::from(2);
                    }
                }
            } else if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rep.json).expect("serializable")
                );
            } else {
                print!("{}", rep.text);
            }
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Gate(msg)) => {
            eprintln!("gate exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}

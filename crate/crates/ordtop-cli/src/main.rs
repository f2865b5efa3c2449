use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordtop::classify::space_profile;
use ordtop::completion::{metrics, rounded_ideal_completion};
use ordtop::explorer::{self, AuditSpec, ExplorerError, GoldenStatus, Instance, StructureKind, WitnessQuery};
use ordtop::finstruct::{parse_any, FinLattice, FinPoset, FinQoset, FinTopology, OrderedSpace, Relation, Structure};
use ordtop::laws::law_profile;
use ordtop::patchwork::{ordered_space_profile, patch, CoselectionKind};
use ordtop::powerdomain::{free_c_semilattice, hoare, plotkin};
use ordtop::speclat::{
    generalized_scott, generalized_scott_raw, interior_relation, validate_c_relation, CRelation, IdealExtension,
};

#[derive(Parser)]
#[command(
    name = "ordtop",
    version,
    about = "Audits, witness search and examples for finite order-topological structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered audit over every structure of one size.
    Audit {
        /// Registry key, e.g. T10.3 or L4.1-3.
        id: Option<String>,
        /// Structures with exactly this many points.
        #[arg(long = "n", default_value_t = 3)]
        n: usize,
        /// One structure per isomorphism class.
        #[arg(long)]
        iso: bool,
        #[arg(long)]
        json: bool,
        /// List the registry instead of running an audit.
        #[arg(long)]
        list: bool,
    },
    /// Profile a structure file: space, ordered-space, lattice or relation checks.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print the order diagram in DOT.
        #[arg(long)]
        dot: bool,
        /// For orders, also list the unrestricted generalized Scott family.
        #[arg(long)]
        raw_sigma_z: bool,
    },
    /// Patch topology of a space as an ordered space, with its profile.
    Patch {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Zeta::Upsilon)]
        zeta: Zeta,
        #[arg(long)]
        json: bool,
    },
    /// Rounded-ideal completion of a relation, order, or a space's interior relation.
    Complete {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Power constructions over a structure.
    Powerdomain {
        file: PathBuf,
        #[arg(long, value_enum)]
        theory: Theory,
        #[arg(long)]
        json: bool,
    },
    /// Weight, density and cofinality of a space.
    Metrics {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Smallest structure with the required predicates true and the forbidden ones false.
    Search {
        #[arg(long, value_delimiter = ',')]
        require: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<String>,
        #[arg(long, default_value = "ordered_space")]
        kind: String,
        #[arg(long = "n", default_value_t = 4)]
        n: usize,
        /// Exit 1 unless the outcome is the expected one.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Print the predicate names for the kind.
        #[arg(long)]
        list_flags: bool,
        #[arg(long)]
        json: bool,
    },
    /// Named examples with golden profiles.
    Gallery {
        /// Entry name, or `all`.
        name: Option<String>,
        /// Compare with the committed golden file.
        #[arg(long)]
        check: bool,
        /// Rewrite the golden file.
        #[arg(long, conflicts_with = "check")]
        bless: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Zeta {
    Upsilon,
    Alpha,
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theory {
    Hoare,
    Plotkin,
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Witness,
    None,
}

/// Usage or input error; reported with exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("ORDTOP_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("ORDTOP_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    let _ = ctrlc::set_handler(explorer::request_cancel);
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Audit { id, n, iso, json, list } => audit(id, n, iso, json, list),
        Command::Classify {
            file,
            json,
            dot,
            raw_sigma_z,
        } => classify(&read(&file)?, json, dot, raw_sigma_z),
        Command::Patch { file, zeta, json } => patch_cmd(&read(&file)?, zeta, json),
        Command::Complete { file, json, dot } => complete(&read(&file)?, json, dot),
        Command::Powerdomain { file, theory, json } => powerdomain(&read(&file)?, theory, json),
        Command::Metrics { file, json } => {
            let t = need_topology(&read(&file)?)?;
            emit(json!({ "metrics": metrics(&t)? }), json);
            Ok(0)
        }
        Command::Search {
            require,
            forbid,
            kind,
            n,
            expect,
            list_flags,
            json,
        } => search(require, forbid, &kind, n, expect, list_flags, json),
        Command::Gallery {
            name,
            check,
            bless,
            golden_dir,
            json,
            list,
        } => gallery(name, check, bless, golden_dir, json, list),
    }
}

fn read(path: &PathBuf) -> Result<Structure, Fail> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?
    };
    parse_any(&text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn need_topology(s: &Structure) -> Result<FinTopology, Fail> {
    s.topology
        .clone()
        .ok_or_else(|| Fail("input has no `opens` section".into()))
}

/// Plain-text view of a JSON report: booleans and scalars one per line, nested
/// objects indented, everything else compact.
fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(inner) if !inner.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, indent + 2, out);
                    }
                    Value::String(s) if s.contains('\n') => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for line in s.lines() {
                            out.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    _ => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn emit(v: Value, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
    } else {
        let mut out = String::new();
        render(&v, 0, &mut out);
        print!("{out}");
    }
}

/// Covering pairs of a quasi-order as a DOT digraph, lower elements at the bottom.
fn dot(q: &FinQoset) -> String {
    let c = q.carrier();
    let n = q.n();
    let mut out = String::from("digraph order {\n  rankdir=BT;\n");
    for x in 0..n {
        out += &format!("  \"{}\";\n", c.name(x));
    }
    for x in 0..n {
        for y in 0..n {
            let strict = |a: usize, b: usize| q.leq(a, b) && !q.leq(b, a);
            if strict(x, y) && !(0..n).any(|z| strict(x, z) && strict(z, y)) {
                out += &format!("  \"{}\" -> \"{}\";\n", c.name(x), c.name(y));
            }
        }
    }
    out + "}\n"
}

fn audit(id: Option<String>, n: usize, iso: bool, json: bool, list: bool) -> Outcome {
    if list {
        for t in explorer::registry() {
            println!("{:<18} {:<14} n<={}  {}", t.id, t.domain().name(), t.max_size, t.claim);
        }
        return Ok(0);
    }
    let id = id.ok_or_else(|| Fail("missing theorem id (see --list)".into()))?;
    let report = explorer::run_audit(&AuditSpec {
        theorem_id: id,
        size: n,
        upto_iso: iso,
    })?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code() as u8)
}

fn classify(s: &Structure, as_json: bool, want_dot: bool, raw_sigma_z: bool) -> Outcome {
    let mut out = serde_json::Map::new();
    match (&s.topology, &s.order) {
        (Some(t), Some(q)) => {
            let space = OrderedSpace::new(q.clone(), t.clone())?;
            out.insert(
                "ordered_space_profile".into(),
                serde_json::to_value(ordered_space_profile(&space))?,
            );
            out.insert("space_profile".into(), serde_json::to_value(space_profile(t))?);
        }
        (Some(t), None) => {
            out.insert("space_profile".into(), serde_json::to_value(space_profile(t))?);
        }
        (None, Some(q)) => {
            if let Ok(p) = FinPoset::new(q.clone()) {
                let flags = explorer::instance_flags(&Instance::Poset(p.clone()));
                out.insert("poset".into(), serde_json::to_value(&flags)?);
                if let Ok(l) = FinLattice::from_poset(p.clone()) {
                    out.insert("law_profile".into(), serde_json::to_value(law_profile(&l))?);
                }
                let z = IdealExtension::all_ideals(p);
                let sigma = generalized_scott(&z);
                let render = |f: &ordtop::finstruct::SetFamily| -> Vec<String> {
                    f.iter().map(|u| s.carrier.render(u)).collect()
                };
                out.insert("scott_opens".into(), json!(render(sigma.opens())));
                if raw_sigma_z {
                    out.insert("raw_sigma_z".into(), json!(render(&generalized_scott_raw(&z))));
                }
            } else {
                let t = FinTopology::alexandroff(q);
                out.insert(
                    "upper_set_space_profile".into(),
                    serde_json::to_value(space_profile(&t))?,
                );
            }
        }
        (None, None) => {}
    }
    if let Some(r) = &s.relation {
        out.insert(
            "certificate".into(),
            serde_json::to_value(validate_c_relation(&s.carrier, r))?,
        );
    }
    if out.is_empty() {
        return Err(Fail("input declares points only".into()));
    }
    if want_dot {
        let q = match (&s.order, &s.topology) {
            (Some(q), _) => q.clone(),
            (None, Some(t)) => ordtop::speclat::specialization_order(t),
            _ => return Err(Fail("--dot needs an order or a topology".into())),
        };
        print!("{}", dot(&q));
        return Ok(0);
    }
    emit(Value::Object(out), as_json);
    Ok(0)
}

fn patch_cmd(s: &Structure, zeta: Zeta, as_json: bool) -> Outcome {
    let t = need_topology(s)?;
    let kind = match zeta {
        Zeta::Upsilon => CoselectionKind::Upsilon,
        Zeta::Alpha => CoselectionKind::Alpha,
        Zeta::Sigma => CoselectionKind::Sigma,
    };
    let p = patch(&t, kind);
    emit(
        json!({
            "patch": p.structure().to_text(),
            "ordered_space_profile": serde_json::to_value(ordered_space_profile(&p))?,
        }),
        as_json,
    );
    Ok(0)
}

fn relation_of(s: &Structure) -> Result<CRelation, Fail> {
    let rel: Relation = match (&s.relation, &s.order, &s.topology) {
        (Some(r), _, _) => r.clone(),
        (None, Some(q), _) => q.rel().clone(),
        (None, None, Some(t)) => interior_relation(t),
        _ => return Err(Fail("input needs a relation, an order or a topology".into())),
    };
    CRelation::certify(&s.carrier, &rel).map_err(|r| Fail(format!("not a C-quasi-order: {}", r.detail)))
}

fn complete(s: &Structure, as_json: bool, want_dot: bool) -> Outcome {
    let rho = relation_of(s)?;
    let done = rounded_ideal_completion(&rho);
    if want_dot {
        print!("{}", dot(done.poset.qoset()));
        return Ok(0);
    }
    let ideals: Vec<String> = (0..done.n()).map(|i| done.render(i)).collect();
    let order: Vec<String> = done
        .poset
        .rel()
        .pairs()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| format!("{} <= {}", ideals[a], ideals[b]))
        .collect();
    let embedding: serde_json::Map<String, Value> = (0..rho.n())
        .map(|x| (rho.carrier().name(x).to_string(), json!(ideals[done.embedding[x]])))
        .collect();
    emit(
        json!({ "rounded_ideals": ideals, "order": order, "embedding": embedding }),
        as_json,
    );
    Ok(0)
}

fn powerdomain(s: &Structure, theory: Theory, as_json: bool) -> Outcome {
    match theory {
        Theory::Hoare => {
            let t = need_topology(s)?;
            let h = hoare(&t)?;
            let closed: Vec<String> = h.closed.iter().map(|a| t.carrier().render(a)).collect();
            let eta: serde_json::Map<String, Value> = (0..t.n())
                .map(|x| (t.carrier().name(x).to_string(), json!(closed[h.eta[x]])))
                .collect();
            let order: Vec<String> = h
                .lattice
                .poset()
                .rel()
                .pairs()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| format!("{} <= {}", closed[a], closed[b]))
                .collect();
            emit(json!({ "closed_sets": closed, "order": order, "eta": eta }), as_json);
        }
        Theory::Plotkin => {
            let q = s
                .order
                .clone()
                .ok_or_else(|| Fail("the convex construction needs an `order` section".into()))?;
            let out = plotkin(&FinPoset::new(q)?)?.output();
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                print!("{}", out.to_text());
            }
        }
        Theory::Free => {
            let rho = relation_of(s)?;
            let free = free_c_semilattice(&rho)?;
            let c = free.power.rho_bar.carrier();
            let elements: Vec<String> = (0..c.len()).map(|i| c.name(i).to_string()).collect();
            let rel: Vec<String> = free
                .power
                .rho_bar
                .rel()
                .pairs()
                .map(|(a, b)| format!("{} -> {}", elements[a], elements[b]))
                .collect();
            emit(
                json!({ "elements": elements, "rho_bar": rel, "c_order": free.power.rho_bar.is_c_order() }),
                as_json,
            );
        }
    }
    Ok(0)
}

fn search(
    require: Vec<String>,
    forbid: Vec<String>,
    kind: &str,
    n: usize,
    expect: Option<Expect>,
    list_flags: bool,
    as_json: bool,
) -> Outcome {
    let kind: StructureKind = kind.parse()?;
    if list_flags {
        println!("{}", explorer::flag_names(kind).join("\n"));
        return Ok(0);
    }
    let q = WitnessQuery {
        kind,
        required: require,
        forbidden: forbid,
        size_bound: n,
    };
    let report = explorer::witness_search(&q)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    let found = report.witness.is_some();
    Ok(match expect {
        _ if !report.complete && !found => 1,
        Some(Expect::Witness) if !found => 1,
        Some(Expect::None) if found => 1,
        _ => 0,
    })
}

fn gallery(
    name: Option<String>,
    check: bool,
    bless: bool,
    golden_dir: Option<PathBuf>,
    as_json: bool,
    list: bool,
) -> Outcome {
    if list {
        println!("{}", explorer::GALLERY.join("\n"));
        return Ok(0);
    }
    let name = name.ok_or_else(|| Fail("missing gallery name (see --list)".into()))?;
    let names: Vec<&str> = if name == "all" {
        explorer::GALLERY.to_vec()
    } else {
        vec![name.as_str()]
    };
    let dir = golden_dir.unwrap_or_else(explorer::default_golden_dir);
    let mut code = 0;
    for n in names {
        let item = explorer::gallery(n).map_err(|e: ExplorerError| Fail(e.to_string()))?;
        if bless {
            let path = explorer::bless(&item, &dir)?;
            println!("{}: wrote {}", item.name, path.display());
        } else if check {
            match explorer::check_golden(&item, &dir)? {
                GoldenStatus::Match => println!("{}: matches golden", item.name),
                GoldenStatus::Missing => {
                    println!("{}: no golden file in {}", item.name, dir.display());
                    code = 1;
                }
                GoldenStatus::Differs { line, expected, actual } => {
                    println!(
                        "{}: differs at line {line}\n  expected: {expected}\n  actual:   {actual}",
                        item.name
                    );
                    code = 1;
                }
            }
        } else if as_json {
            let v = json!({ "name": item.name, "structure": item.structure.to_text(), "profile": item.profile });
            println!("{}", serde_json::to_string_pretty(&v)?);
        } else {
            print!("{}", item.render());
        }
    }
    Ok(code)
}

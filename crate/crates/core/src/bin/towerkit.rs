//! Command-line front end.
//!
//! Every command prints one JSON certificate (or writes it to `--out`).
//! Exit codes: 0 success or true, 1 false or refuted, 2 undecided,
//! 3 invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use towerkit::actions::collapses_to_point;
use towerkit::checkers::{
    check_negative_curvature, dr_certify, is_flag, is_k_large, is_locally_k_large, AngleAssignment, CurvatureViolation,
    DrVerdict, Rational,
};
use towerkit::cover::{intermediate_lift, lifted_group, universal_cover_finite};
use towerkit::diagrams::{dehn_estimate, fine_inequality_check, sphere_search, FineVerdict};
use towerkit::fixtures::{self, Fixture};
use towerkit::io::{read_json, to_json, ActionDoc, ActionRef, ComplexDoc, EqMapDoc, MapDoc, SimpDoc, TowerDoc};
use towerkit::oracle::Budgets;
use towerkit::pi1::Presentation;
use towerkit::tower::{max_f_tower_lift, max_tower_lift, subgroup_core, validate_tower, Mode};
use towerkit::{Complex2, Error, FinAction, SimpComplex, Subcomplex};

#[derive(Parser, Debug)]
#[command(name = "towerkit", version, about = "Combinatorial 2-complexes, covers and equivariant towers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Coset table size limit for Todd-Coxeter.
    #[arg(long, global = true, default_value_t = Budgets::default().coset_limit as u64, value_parser = clap::value_parser!(u64).range(1..))]
    coset_limit: u64,
    /// Largest van Kampen diagram searched.
    #[arg(long, global = true, default_value_t = Budgets::default().area_limit as u64, value_parser = clap::value_parser!(u64).range(1..))]
    area_limit: u64,
    /// Largest sphere diagram searched.
    #[arg(long, global = true, default_value_t = Budgets::default().sphere_limit as u64, value_parser = clap::value_parser!(u64).range(1..))]
    sphere_limit: u64,
    /// Recorded in the certificate; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the certificate here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print diagnostics on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
}

impl Global {
    fn budgets(&self) -> Budgets {
        Budgets {
            coset_limit: self.coset_limit as usize,
            area_limit: self.area_limit as usize,
            sphere_limit: self.sphere_limit as usize,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a complex, simplicial complex, map or action.
    Validate {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        simplicial: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        action: Option<String>,
    },
    /// Smallest full subcomplex containing the named cells.
    Span {
        #[arg(long)]
        space: String,
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
    },
    /// Link graph of a vertex.
    Link {
        #[arg(long)]
        space: String,
        #[arg(long)]
        vertex: String,
    },
    /// Barycentric subdivision.
    Subdivide {
        #[arg(long)]
        space: String,
    },
    /// Curvature, largeness, reducibility and fineness checks.
    #[command(subcommand)]
    Check(Check),
    /// Universal cover, or the cover for a subgroup of the lifted action.
    Cover {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        action: Option<String>,
        #[arg(long)]
        universal: bool,
        /// Loops at vertex 0 as dot-separated dart names (`a.b.-a`).
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
    /// Lift an action to the universal cover.
    LiftAction {
        #[arg(long)]
        action: String,
        #[arg(long)]
        space: Option<String>,
    },
    /// Maximal tower or F-tower lifting of an equivariant map.
    TowerLift {
        #[arg(long)]
        map: String,
        #[arg(long, value_enum, default_value_t = ModeArg::FTower)]
        mode: ModeArg,
    },
    /// One-connected core of a subgroup action, with its F-tower.
    SubgroupCore {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        action: String,
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
    },
    /// Dehn function estimate from exhaustive filling.
    Dehn {
        #[arg(long)]
        space: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_area: Option<usize>,
    },
    /// Search for a near-immersed sphere.
    SphereSearch {
        #[arg(long)]
        space: String,
        #[arg(long)]
        max_faces: usize,
    },
    /// Fixed subcomplex of a subgroup, and whether it collapses.
    FixedPoints {
        #[arg(long)]
        action: String,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
    },
    /// Collapse a complex, equivariantly when an action is given.
    Collapse {
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        action: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Whether every clique spans a simplex.
    Flag {
        #[arg(long)]
        simplicial: String,
    },
    /// Flag with no full cycle shorter than k.
    KLarge {
        #[arg(long)]
        simplicial: String,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// k-largeness of every link.
    LocallyKLarge {
        #[arg(long)]
        simplicial: String,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Face sums and the link condition for an angle assignment.
    Curvature {
        #[arg(long)]
        space: String,
        /// One angle for every corner, in units of pi (`1/3`).
        #[arg(long)]
        uniform: Option<String>,
        /// JSON object mapping face names to lists of corner angles.
        #[arg(long)]
        angles: Option<PathBuf>,
    },
    /// Diagrammatic reducibility: certified, refuted or unknown.
    Dr {
        #[arg(long)]
        space: String,
    },
    /// The fine-graph inequality at `x0` for the neighbours in `set`.
    Fine {
        #[arg(long)]
        map: String,
        #[arg(long)]
        x0: String,
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Tower,
    FTower,
}

/// Outcome of a command before it is wrapped in the certificate.
enum Status {
    Success,
    False,
    Undecided,
}

type Outcome = std::result::Result<(Status, Value), Error>;

fn is_file(arg: &str) -> bool {
    Path::new(arg).is_file()
}

fn load_space(arg: &str) -> Result<Complex2, Error> {
    if is_file(arg) {
        read_json::<ComplexDoc>(Path::new(arg))?.to_complex()
    } else {
        fixtures::complex(arg)
    }
}

fn load_simplicial(arg: &str) -> Result<SimpComplex, Error> {
    if is_file(arg) {
        return read_json::<SimpDoc>(Path::new(arg))?.to_simp();
    }
    match fixtures::by_name(arg)? {
        Fixture::Simplicial(s) => Ok(s),
        Fixture::Complex(c) => SimpComplex::from_complex(&c),
        Fixture::Action(_) => Err(Error::UnknownFixture(format!("{arg} is an action"))),
    }
}

fn load_action(arg: &str, space: Option<&str>) -> Result<Arc<FinAction>, Error> {
    let space = space.map(load_space).transpose()?.map(Arc::new);
    let r = if is_file(arg) { read_json::<ActionRef>(Path::new(arg))? } else { ActionRef::Fixture(arg.to_string()) };
    Ok(Arc::new(r.resolve(space.as_ref())?))
}

fn load_map(arg: &str) -> Result<towerkit::EqMap, Error> {
    read_json::<EqMapDoc>(Path::new(arg))?.to_eq_map()
}

fn names(c: &Complex2, z: &Subcomplex) -> Value {
    json!({
        "vertices": z.vertices.iter().map(|&v| c.vertex_name(v)).collect::<Vec<_>>(),
        "edges": z.edges.iter().map(|&e| c.edge_name(e)).collect::<Vec<_>>(),
        "faces": z.faces.iter().map(|&f| c.face_name(f)).collect::<Vec<_>>(),
    })
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn group_elements(a: &FinAction, list: &[String]) -> Result<Vec<usize>, Error> {
    list.iter()
        .map(|n| a.group().index_of(n).ok_or_else(|| Error::InvalidGroup(format!("unknown element {n}"))))
        .collect()
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Success
    } else {
        Status::False
    }
}

fn validate(space: Option<String>, simplicial: Option<String>, map: Option<String>, action: Option<String>) -> Outcome {
    let mut violations = Vec::new();
    let mut checked = Vec::new();
    if let Some(s) = &simplicial {
        violations.extend(load_simplicial(s)?.validate());
        checked.push("simplicial");
    }
    if let Some(m) = &map {
        let doc = read_json::<EqMapDoc>(Path::new(m))?;
        match doc.to_eq_map() {
            Ok(_) => {}
            Err(e @ (Error::InvalidMap(_) | Error::InvalidAction(_) | Error::InvalidGroup(_))) => violations.push(e.to_string()),
            Err(e) => return Err(e),
        }
        checked.push("map");
    }
    if let Some(a) = &action {
        load_action(a, space.as_deref())?;
        checked.push("action");
    } else if let Some(s) = &space {
        violations.extend(load_space(s)?.validate().violations);
        checked.push("complex");
    }
    if checked.is_empty() {
        return Err(Error::InvalidInput("nothing to validate".into()));
    }
    Ok((verdict(violations.is_empty()), json!({"checked": checked, "violations": violations})))
}

fn span(space: &str, cells: &[String]) -> Outcome {
    let c = load_space(space)?;
    let mut z = Subcomplex::default();
    for n in cells {
        if let Some(v) = c.vertex_index(n) {
            z.vertices.insert(v);
        } else if let Some(e) = c.edge_index(n) {
            z.edges.insert(e);
        } else {
            z.faces.insert(c.face_id(n)?);
        }
    }
    let s = z.span(&c);
    Ok((Status::Success, json!({"span": names(&c, &s), "complex": value(&ComplexDoc::from_complex(&s.to_complex(&c)))})))
}

fn link(space: &str, vertex: &str) -> Outcome {
    let c = load_space(space)?;
    let l = c.link(c.vertex(vertex)?)?;
    let arcs: Vec<Value> = l
        .arcs
        .iter()
        .map(|a| json!({"face": c.face_name(a.face), "corner": a.position, "from": c.dart_name(a.from), "to": c.dart_name(a.to)}))
        .collect();
    let nodes: Vec<String> = l.nodes.iter().map(|&d| c.dart_name(d)).collect();
    Ok((Status::Success, json!({"vertex": vertex, "nodes": nodes, "arcs": arcs, "is_cycle": l.is_cycle()})))
}

fn curvature(space: &str, uniform: Option<String>, angles: Option<PathBuf>) -> Outcome {
    let c = load_space(space)?;
    let parse = |s: &str| s.trim().parse::<Rational>().map_err(|_| Error::InvalidInput(format!("bad angle {s}")));
    let a = match (uniform, angles) {
        (Some(u), None) => AngleAssignment::uniform(&c, parse(&u)?)?,
        (None, Some(p)) => {
            let table: std::collections::BTreeMap<String, Vec<String>> = read_json(&p)?;
            let mut rows = Vec::new();
            for f in 0..c.face_count() {
                let row = table.get(c.face_name(f)).ok_or_else(|| Error::InvalidInput(format!("no angles for {}", c.face_name(f))))?;
                rows.push(row.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?);
            }
            AngleAssignment::new(&c, rows)?
        }
        _ => return Err(Error::InvalidInput("give exactly one of --uniform and --angles".into())),
    };
    let out = match check_negative_curvature(&c, &a) {
        None => json!({"negatively_curved": true}),
        Some(CurvatureViolation::Face { face, sum }) => {
            json!({"negatively_curved": false, "face": c.face_name(face), "angle_sum": sum.to_string()})
        }
        Some(CurvatureViolation::Circuit { vertex, corners, measure }) => json!({
            "negatively_curved": false,
            "vertex": c.vertex_name(vertex),
            "circuit": corners.iter().map(|&(f, i)| json!([c.face_name(f), i])).collect::<Vec<_>>(),
            "measure": measure.to_string(),
        }),
    };
    let ok = out["negatively_curved"] == json!(true);
    Ok((verdict(ok), out))
}

fn check(cmd: Check, budgets: &Budgets) -> Outcome {
    match cmd {
        Check::Flag { simplicial } => {
            let r = is_flag(&load_simplicial(&simplicial)?);
            Ok((verdict(r.flag), value(&r)))
        }
        Check::KLarge { simplicial, k } => {
            let cert = is_k_large(&load_simplicial(&simplicial)?, k)?;
            Ok((verdict(cert.is_none()), json!({"k": k, "large": cert.is_none(), "certificate": cert})))
        }
        Check::LocallyKLarge { simplicial, k } => {
            let s = load_simplicial(&simplicial)?;
            let found = is_locally_k_large(&s, k)?;
            let out = match &found {
                None => json!({"k": k, "locally_large": true}),
                Some((sigma, cert)) => json!({
                    "k": k,
                    "locally_large": false,
                    "simplex": sigma.iter().map(|&v| s.vertex_name(v)).collect::<Vec<_>>(),
                    "certificate": cert,
                }),
            };
            Ok((verdict(found.is_none()), out))
        }
        Check::Curvature { space, uniform, angles } => curvature(&space, uniform, angles),
        Check::Dr { space } => {
            let c = load_space(&space)?;
            let r = dr_certify(&c, budgets);
            let sphere = r.sphere.as_ref().map(|s| {
                json!({"complex": value(&ComplexDoc::from_complex(&s.complex)), "map": value(&MapDoc::from_map(&s.map))})
            });
            let out = json!({
                "verdict": r.verdict,
                "simply_connected": r.simply_connected,
                "core_empty": r.core_empty,
                "sphere": sphere,
            });
            let status = match r.verdict {
                DrVerdict::Certified => Status::Success,
                DrVerdict::Refuted => Status::False,
                DrVerdict::Unknown => Status::Undecided,
            };
            Ok((status, out))
        }
        Check::Fine { map, x0, set } => {
            let m = load_map(&map)?;
            let s = &m.map.source;
            let a = set.iter().map(|n| s.vertex(n)).collect::<Result<Vec<_>, _>>()?;
            let r = fine_inequality_check(&m.map, s.vertex(&x0)?, &a, budgets)?;
            let status = match r.verdict {
                FineVerdict::Holds => Status::Success,
                FineVerdict::Violated => Status::False,
                FineVerdict::Undecided => Status::Undecided,
            };
            Ok((status, value(&r)))
        }
    }
}

fn cover(space: Option<String>, action: Option<String>, universal: bool, subgroup: Vec<String>, budgets: &Budgets) -> Outcome {
    if universal == !subgroup.is_empty() {
        return Err(Error::InvalidInput("give either --universal or --subgroup".into()));
    }
    if universal {
        let c = match (&space, &action) {
            (Some(s), None) => load_space(s)?,
            (_, Some(a)) => (**load_action(a, space.as_deref())?.space()).clone(),
            (None, None) => return Err(Error::InvalidInput("--space is required".into())),
        };
        let u = universal_cover_finite(&c, budgets)?;
        return Ok((
            Status::Success,
            json!({
                "order": u.order(),
                "cover": value(&ComplexDoc::from_complex(&u.cover)),
                "projection": value(&MapDoc::from_map(&u.projection)),
                "deck": value(&ActionDoc::from_action(&u.deck)),
            }),
        ));
    }
    let a = match (&action, &space) {
        (Some(a), s) => load_action(a, s.as_deref())?,
        (None, Some(s)) => Arc::new(FinAction::trivial(load_space(s)?)),
        (None, None) => return Err(Error::InvalidInput("--space or --action is required".into())),
    };
    let c = a.space().clone();
    let p = Presentation::new(&c, 0)?;
    let mut words = Vec::new();
    for w in &subgroup {
        let path = w.split('.').filter(|s| !s.is_empty()).map(|d| c.dart(d)).collect::<Result<Vec<_>, _>>()?;
        words.push(p.loop_word(&path)?);
    }
    let lift = intermediate_lift(&words, &a, budgets)?;
    Ok((
        Status::Success,
        json!({
            "cover": value(&ComplexDoc::from_complex(&lift.complex)),
            "action": value(&ActionDoc::from_action(&lift.action)),
            "projection": value(&EqMapDoc::from_eq_map(&lift.projection)),
        }),
    ))
}

fn lift_action(action: &str, space: Option<&str>, budgets: &Budgets) -> Outcome {
    let a = load_action(action, space)?;
    let lg = lifted_group(&a, budgets)?;
    let report = lg.check();
    let g = lg.action.group();
    let out = json!({
        "order": lg.order(),
        "cover_order": lg.cover.order(),
        "base_order": a.group().order(),
        "kernel": lg.kernel().iter().map(|&k| g.name(k)).collect::<Vec<_>>(),
        "violations": report.violations,
        "action": value(&ActionDoc::from_action(&lg.action)),
        "projection": value(&EqMapDoc::from_eq_map(&lg.projection())),
    });
    Ok((verdict(report.is_valid()), out))
}

fn tower_lift(map: &str, mode: ModeArg, budgets: &Budgets) -> Outcome {
    let m = load_map(map)?;
    let (mode, r) = match mode {
        ModeArg::Tower => (Mode::Tower, max_tower_lift(&m, budgets)?),
        ModeArg::FTower => (Mode::FTower, max_f_tower_lift(&m, budgets)?),
    };
    let rep = validate_tower(&r.cert);
    let out = json!({
        "valid": rep.is_valid(),
        "f_tower": rep.f_tower,
        "immersion": rep.immersion,
        "near_immersion": rep.near_immersion,
        "tower": value(&TowerDoc::new(mode, &r)),
    });
    Ok((verdict(rep.is_valid()), out))
}

fn core(space: Option<String>, action: &str, gens: &[String], budgets: &Budgets) -> Outcome {
    let a = load_action(action, space.as_deref())?;
    let g = group_elements(&a, gens)?;
    let r = subgroup_core(&a, &g, budgets)?;
    let rep = validate_tower(&r.lift.cert);
    let out = json!({
        "valid": rep.is_valid(),
        "f_tower": rep.f_tower,
        "immersion": rep.immersion,
        "space": value(&ComplexDoc::from_complex(r.action.space())),
        "action": value(&ActionDoc::from_action(&r.action)),
        "map": value(&EqMapDoc::from_eq_map(&r.map)),
        "tower": value(&TowerDoc::new(Mode::FTower, &r.lift)),
    });
    Ok((verdict(rep.is_valid() && rep.f_tower), out))
}

fn fixed_points(action: &str, space: Option<&str>, subgroup: &[String]) -> Outcome {
    let a = load_action(action, space)?;
    let sub = group_elements(&a, subgroup)?;
    let z = a.fixed_subcomplex(&sub)?;
    let c = a.space();
    let contractible = !z.is_empty() && collapses_to_point(&z.to_complex(c));
    let out = json!({"fixed": names(c, &z), "nonempty": !z.is_empty(), "collapses_to_point": contractible});
    Ok((verdict(contractible), out))
}

fn collapse(space: Option<String>, action: Option<String>) -> Outcome {
    let a = match (&action, &space) {
        (Some(a), s) => load_action(a, s.as_deref())?,
        (None, Some(s)) => Arc::new(FinAction::trivial(load_space(s)?)),
        (None, None) => return Err(Error::InvalidInput("--space or --action is required".into())),
    };
    let c = a.space();
    let rest = a.equivariant_collapse(&Subcomplex::whole(c))?;
    // face collapses leave a graph; it collapses further iff it is a tree
    let point = collapses_to_point(&rest.to_complex(c));
    Ok((verdict(point), json!({"remaining": names(c, &rest), "collapses_to_point": point})))
}

fn run(cli: Cli) -> Outcome {
    let budgets = cli.global.budgets();
    match cli.command {
        Command::Validate { space, simplicial, map, action } => validate(space, simplicial, map, action),
        Command::Span { space, cells } => span(&space, &cells),
        Command::Link { space, vertex } => link(&space, &vertex),
        Command::Subdivide { space } => {
            let s = load_space(&space)?.barycentric_subdivision();
            Ok((Status::Success, value(&ComplexDoc::from_complex(&s))))
        }
        Command::Check(c) => check(c, &budgets),
        Command::Cover { space, action, universal, subgroup } => cover(space, action, universal, subgroup, &budgets),
        Command::LiftAction { action, space } => lift_action(&action, space.as_deref(), &budgets),
        Command::TowerLift { map, mode } => tower_lift(&map, mode, &budgets),
        Command::SubgroupCore { space, action, gens } => core(space, &action, &gens, &budgets),
        Command::Dehn { space, n, max_area } => {
            let c = load_space(&space)?;
            let b = Budgets { area_limit: max_area.unwrap_or(budgets.area_limit), ..budgets };
            let table = dehn_estimate(&c, n, &b)?;
            Ok((Status::Success, json!({"n": n, "dehn": table})))
        }
        Command::SphereSearch { space, max_faces } => {
            let c = Arc::new(load_space(&space)?);
            Ok(match sphere_search(&c, max_faces) {
                Some(s) => (
                    Status::Success,
                    json!({"found": true, "complex": value(&ComplexDoc::from_complex(&s.complex)), "map": value(&MapDoc::from_map(&s.map))}),
                ),
                None => (Status::Undecided, json!({"found": false, "max_faces": max_faces})),
            })
        }
        Command::FixedPoints { action, space, subgroup } => fixed_points(&action, space.as_deref(), &subgroup),
        Command::Collapse { space, action } => collapse(space, action),
    }
}

fn command_name(c: &Command) -> String {
    let s = format!("{c:?}");
    let head: String = s.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let global = cli.global.clone();
    let command = command_name(&cli.command);
    let (status, code, result) = match run(cli) {
        Ok((Status::Success, v)) => ("success", 0, v),
        Ok((Status::False, v)) => ("false", 1, v),
        Ok((Status::Undecided, v)) => ("undecided", 2, v),
        Err(e) if e.is_undecided() => ("undecided", 2, json!({"reason": e.to_string()})),
        Err(e @ Error::Internal(_)) => {
            eprintln!("towerkit: {e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            eprintln!("towerkit: {e}");
            return ExitCode::from(3);
        }
    };
    let cert = json!({
        "tool": "towerkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "budgets": value(&global.budgets()),
        "seed": global.seed,
        "status": status,
        "result": result,
    });
    let text = match to_json(&cert) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("towerkit: {e}");
            return ExitCode::from(1);
        }
    };
    if global.verbose {
        eprintln!("towerkit: {command} finished with status {status}");
    }
    match &global.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("towerkit: {e}");
                return ExitCode::from(3);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

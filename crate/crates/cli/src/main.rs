use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tropgon::dot::to_dot;
use tropgon::format::{Loaded, Meta, TowerFile};
use tropgon::graph::{genus, Point};
use tropgon::iso::{covers_isomorphic_over_base, towers_isomorphic};
use tropgon::jacprym::{check_bigonal_duality, check_trigonal_prym, jacobian, tower_prym};
use tropgon::metric::induce_metric;
use tropgon::ngonal::{
    bigonal, classify_points, classify_tetragonal, ngonal_construct, recillas, restrict_source,
    tetragonal_split, trigonal, NGonal, Restriction,
};
use tropgon::random::{random_tower, TowerParams};
use tropgon::tori::TorusHom;

#[derive(Parser)]
#[command(
    name = "tropgon",
    version,
    about = "Tropical n-gonal constructions and Prym varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Bigonal,
    Trigonal,
    Recillas,
    TetragonalSplit,
    Ngonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Bigonal,
    Trigonal,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tower file and list every violation.
    Validate { path: PathBuf },
    /// Run a construction and write the resulting tower file.
    Construct {
        #[arg(value_enum)]
        op: Op,
        path: PathBuf,
        /// Degree for `ngonal`.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the type of every base point.
    Classify { path: PathBuf },
    /// Print the Jacobian Gram matrix of every level.
    Jacobian { path: PathBuf },
    /// Print the Prym variety of a tower's double cover.
    Prym { path: PathBuf },
    /// Verify a Prym isomorphism theorem on a tower.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
    },
    /// Generate a random tower.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        tree_size: usize,
        #[arg(long, default_value_t = 0.3)]
        dilation: f64,
        #[arg(long, default_value_t = 5)]
        max_length: i64,
        /// Allow a disconnected top graph.
        #[arg(long)]
        allow_disconnected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the file as Graphviz text.
    ExportDot {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two files describe isomorphic towers over the same base.
    Compare { first: PathBuf, second: PathBuf },
}

fn read(path: &Path) -> Result<TowerFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TowerFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load(path: &Path) -> Result<Loaded> {
    read(path)?
        .load()
        .with_context(|| format!("validating {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn labels(construction: &str) -> Meta {
    let mut meta = Meta::default();
    meta.labels
        .insert("construction".into(), construction.into());
    meta
}

/// Multisection of every kept point, under its renumbered id.
fn provenance(meta: &mut Meta, level: usize, c: &NGonal, kept: Option<&Restriction>) {
    let g = c.ptilde.source();
    let renumber = |p: Point| match (p, kept) {
        (_, None) => Some(p),
        (Point::Vertex(v), Some(r)) => r.vertices[v].map(Point::Vertex),
        (Point::HalfEdge(h), Some(r)) => r.half_edges[h].map(Point::HalfEdge),
    };
    for p in g.points() {
        let Some(id) = renumber(p) else { continue };
        let key = match id {
            Point::Vertex(v) => format!("level{level}.v{v:04}"),
            Point::HalfEdge(h) => format!("level{level}.h{h:04}"),
        };
        meta.provenance.insert(key, c.provenance(p));
    }
}

fn construct(op: Op, path: &Path, n: Option<u64>, out: Option<&Path>) -> Result<()> {
    let l = load(path)?;
    let base = &l.base;
    match op {
        Op::Bigonal => {
            let b = bigonal(&l.tower()?)?;
            let mut meta = labels("bigonal");
            provenance(&mut meta, 1, &b.construction, None);
            emit(&TowerFile::from_tower(&b.tower, base, meta).to_json(), out)
        }
        Op::Trigonal => {
            let t = trigonal(&l.tower()?)?;
            let r = restrict_source(&t.construction.ptilde, &t.kept)?;
            let mut meta = labels("trigonal");
            provenance(&mut meta, 0, &t.construction, Some(&r));
            emit(&TowerFile::from_cover(&t.map, base, meta).to_json(), out)
        }
        Op::Recillas => {
            let t = recillas(l.cover()?)?;
            emit(
                &TowerFile::from_tower(&t, base, labels("recillas")).to_json(),
                out,
            )
        }
        Op::TetragonalSplit => {
            let towers = tetragonal_split(&l.tower()?)?;
            for (i, t) in towers.iter().enumerate() {
                let text = TowerFile::from_tower(t, base, labels("tetragonal-split")).to_json();
                match out {
                    Some(p) => {
                        let stem = p.with_extension("");
                        let file = PathBuf::from(format!("{}-{}.json", stem.display(), i + 1));
                        emit(&text, Some(&file))?;
                    }
                    None => emit(&text, None)?,
                }
            }
            Ok(())
        }
        Op::Ngonal => {
            let t = l.tower()?;
            let n = match n.or(t.f.global_degree()) {
                Some(n) => n,
                None => bail!("--n is required when the tower has no global degree"),
            };
            let c = ngonal_construct(&t, n)?;
            let mut meta = labels(&format!("ngonal {n}"));
            provenance(&mut meta, 0, &c, None);
            emit(&TowerFile::from_cover(&c.ptilde, base, meta).to_json(), out)
        }
    }
}

fn classify(path: &Path) -> Result<()> {
    let l = load(path)?;
    let base = l.base.graph.clone();
    let types: Vec<String> = match l.levels.len() {
        2 => classify_points(&l.tower()?)?
            .iter()
            .map(|t| t.to_string())
            .collect(),
        1 => base
            .points()
            .map(|x| classify_tetragonal(&l.cover()?.profile(x)).map(|t| t.to_string()))
            .collect::<tropgon::Result<_>>()?,
        k => bail!("cannot classify a file with {k} levels"),
    };
    for (x, t) in base.points().zip(types) {
        match x {
            Point::Vertex(v) => println!("v{v}\t{t}"),
            Point::HalfEdge(h) => {
                let e = base.edge_of(h);
                if base.edge_tail_half(e) == h {
                    println!("e{e}\t{t}");
                }
            }
        }
    }
    Ok(())
}

fn print_jacobians(path: &Path) -> Result<()> {
    let l = load(path)?;
    let mut metric = l.base.clone();
    for (i, f) in l.levels.iter().enumerate() {
        metric = induce_metric(f, &metric)?;
        let g = genus(&metric.graph)?;
        if !metric.graph.is_connected() {
            println!("level {i}: disconnected");
            continue;
        }
        let j = jacobian(&metric)?;
        println!("level {i}: genus {g}");
        println!("  gram {}", j.gram());
        for (k, z) in j.basis.cycles.iter().enumerate() {
            println!("  cycle {k} {z:?}");
        }
    }
    Ok(())
}

fn print_prym(path: &Path) -> Result<()> {
    let l = load(path)?;
    let p = tower_prym(&l.tower()?, &l.base)?;
    let d = &p.dilation;
    println!("rank {}", p.rank());
    println!("dilation A = {}, B = {}, C = {}", d.a, d.b, d.c);
    println!("polarization type {}", join(&p.polarization_type));
    println!("pairing {}", p.polarized.torus.pairing());
    println!("polarization {}", p.polarized.xi.x);
    println!("principal pairing {}", p.principal.torus.pairing());
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn print_witness(w: &Option<TorusHom>) {
    if let Some(h) = w {
        println!("witness A {}", h.a);
        println!("witness B {}", h.b);
    }
}

fn check(path: &Path, theorem: Theorem) -> Result<bool> {
    let l = load(path)?;
    let t = l.tower()?;
    match theorem {
        Theorem::Bigonal => {
            let d = check_bigonal_duality(&t, &l.base)?;
            println!("{}", if d.pass() { "PASS" } else { "FAIL" });
            println!("input type {}", join(&d.input.polarization_type));
            println!("output type {}", join(&d.output.polarization_type));
            println!("input pairing {}", d.input.polarized.torus.pairing());
            println!("output pairing {}", d.output.polarized.torus.pairing());
            println!("dual polarization {}", d.dual.xi.x);
            print_witness(&d.witness);
            Ok(d.pass())
        }
        Theorem::Trigonal => {
            let r = check_trigonal_prym(&t, &l.base)?;
            println!("{}", if r.pass() { "PASS" } else { "FAIL" });
            println!("prym gram {}", r.prym.principal.torus.pairing());
            println!("jacobian gram {}", r.jacobian.gram());
            print_witness(&r.witness);
            Ok(r.pass())
        }
    }
}

fn compare(a: &Path, b: &Path) -> Result<bool> {
    let (x, y) = (load(a)?, load(b)?);
    if x.base != y.base {
        println!("different bases");
        return Ok(false);
    }
    let same = match (x.levels.len(), y.levels.len()) {
        (2, 2) => towers_isomorphic(&x.tower()?, &y.tower()?)?.is_some(),
        (1, 1) => covers_isomorphic_over_base(x.cover()?, y.cover()?)?.is_some(),
        (i, j) => bail!("cannot compare files with {i} and {j} levels"),
    };
    println!("{}", if same { "isomorphic" } else { "not isomorphic" });
    Ok(same)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { path } => {
            let r = read(&path)?.validate();
            if r.is_valid() {
                println!("valid");
            } else {
                for e in &r.entries {
                    println!("{e}");
                }
            }
            Ok(r.is_valid())
        }
        Command::Construct { op, path, n, out } => {
            construct(op, &path, n, out.as_deref())?;
            Ok(true)
        }
        Command::Classify { path } => classify(&path).map(|_| true),
        Command::Jacobian { path } => print_jacobians(&path).map(|_| true),
        Command::Prym { path } => print_prym(&path).map(|_| true),
        Command::Check { path, theorem } => check(&path, theorem),
        Command::Random {
            seed,
            n,
            tree_size,
            dilation,
            max_length,
            allow_disconnected,
            out,
        } => {
            let p = TowerParams {
                n,
                tree_size,
                dilation,
                max_length,
                connected_top: !allow_disconnected,
                ..TowerParams::default()
            };
            let r = random_tower(seed, &p)?;
            let mut meta = labels("random");
            meta.labels.insert("seed".into(), seed.to_string());
            emit(
                &TowerFile::from_tower(&r.tower, &r.base, meta).to_json(),
                out.as_deref(),
            )?;
            Ok(true)
        }
        Command::ExportDot { path, out } => {
            emit(&to_dot(&load(&path)?), out.as_deref())?;
            Ok(true)
        }
        Command::Compare { first, second } => compare(&first, &second),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

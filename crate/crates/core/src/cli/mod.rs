//! Command-line front end. `run` returns the process exit code: 0 when every
//! check passes, 1 when a check fails, 2 for usage or input errors.

mod certificate;
mod replay;

pub use certificate::{Certificate, CheckResult, Status};
pub use replay::{induction_replay, ReplayError};

use crate::braid_cover::{
    arc_complement, genus_rh, lift_arc_system, parse_poly, select_spanning_order, tacnode_arc,
    tacnode_arcs, versal_span_check, BranchData, Germ, Poly,
};
use crate::configurations::{assemblage_check, build_induction_config, CoreKind, RibbonConfig};
use crate::numerology::{enumerate_reduced, table_tsv, Multidegree};
use crate::orbit_engine::{enumerate_orbits, relations_self_test};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "rspin",
    version,
    about = "Spin structures, curve configurations and branched covers"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of multidegrees.
    #[command(subcommand)]
    Numerology(NumerologyCmd),
    /// Orbits of spin structures under the Humphries twists.
    #[command(subcommand)]
    Orbits(OrbitsCmd),
    /// Curve configurations.
    #[command(subcommand)]
    Config(ConfigCmd),
    /// Branched covers of the sphere and their arc systems.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// The tacnode versal algebra.
    #[command(subcommand)]
    Tacnode(TacnodeCmd),
    /// Replay one induction step and emit a certificate.
    Replay(ReplayArgs),
}

#[derive(Subcommand, Debug)]
enum NumerologyCmd {
    /// Reduced multidegrees with genus or r-index under the bounds.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        max_genus: i64,
        #[arg(long, allow_hyphen_values = true)]
        max_r: i64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Genus, r-index and induction data of one multidegree.
    Show {
        /// Multidegree as comma-separated degrees, e.g. 3,2
        #[arg(long)]
        bd: Multidegree,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum OrbitsCmd {
    /// Enumerate all orbits on chain-value tuples.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        r: i64,
    },
    /// Check the braid and commutation relations on every tuple.
    Relations {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    /// JSON input file.
    file: Option<PathBuf>,
    /// JSON input file (alternative to the positional argument).
    #[arg(long)]
    input: Option<PathBuf>,
}

impl FileArg {
    fn read(&self) -> Result<String, String> {
        let path = self
            .input
            .as_ref()
            .or(self.file.as_ref())
            .ok_or("an input file is required")?;
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[derive(Subcommand, Debug)]
enum ConfigCmd {
    /// Graph tests, neighborhood invariants, boundary windings and assemblage stages.
    Check(FileArg),
    /// The configuration extending an assemblage over the surface of `d`.
    BuildInduction {
        /// Multidegree as comma-separated degrees, e.g. 3,2
        #[arg(long)]
        bd: Multidegree,
        /// Core configuration type, A or B (B needs genus at least 4)
        #[arg(long = "type", default_value = "A")]
        kind: CoreKind,
    },
}

#[derive(Subcommand, Debug)]
enum CoverCmd {
    /// Spanning order, lifted arcs and stage bookkeeping.
    Plan(FileArg),
    /// Descriptor of the tacnode arc at one branch point.
    Tacnode {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        branch: usize,
    },
    /// Run the cover pipeline on random closed transitive data.
    Sample {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_sheets: usize,
        #[arg(long, default_value_t = 14)]
        max_points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TacnodeCmd {
    /// Whether f h1, h2, h3 span the quotient by the Jacobian ideal.
    Span {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        h1: String,
        #[arg(long, allow_hyphen_values = true)]
        h2: String,
        #[arg(long, allow_hyphen_values = true)]
        h3: String,
    },
    /// Random germs meeting the sufficient conditions, and with h3 vanishing.
    Sample {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Multidegree as comma-separated degrees, e.g. 3,2
    #[arg(long)]
    bd: Multidegree,
    /// Core configuration type, A or B (B needs genus at least 4)
    #[arg(long = "type", default_value = "A")]
    kind: CoreKind,
    /// Branch data for the cover; a synthesized witness is used otherwise.
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Outcome of a command: text for the terminal, JSON, and a pass flag.
struct Output {
    text: String,
    json: String,
    ok: bool,
}

impl Output {
    fn cert(cert: Certificate) -> Self {
        Output {
            text: cert.to_text(),
            json: cert.to_json(),
            ok: cert.passed(),
        }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let body = if cli.json { output.json } else { output.text };
            let _ = write!(out, "{body}");
            if !body.ends_with('\n') {
                let _ = writeln!(out);
            }
            if output.ok {
                0
            } else {
                1
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializes")
}

fn dispatch(command: Command) -> Result<Output, String> {
    match command {
        Command::Numerology(cmd) => numerology(cmd),
        Command::Orbits(cmd) => orbits(cmd),
        Command::Config(cmd) => config(cmd),
        Command::Cover(cmd) => cover(cmd),
        Command::Tacnode(cmd) => tacnode(cmd),
        Command::Replay(args) => {
            let branch = match &args.input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    Some(BranchData::from_json(&text)?)
                }
                None => None,
            };
            let cert = induction_replay(&args.bd, branch, args.kind).map_err(|e| e.to_string())?;
            Ok(Output::cert(cert))
        }
    }
}

fn numerology(cmd: NumerologyCmd) -> Result<Output, String> {
    match cmd {
        NumerologyCmd::Table {
            max_genus,
            max_r,
            format,
        } => {
            let rows = enumerate_reduced(max_genus, max_r).map_err(|e| e.to_string())?;
            let json = pretty(&rows);
            let text = match format {
                Format::Tsv => table_tsv(&rows),
                Format::Json => json.clone(),
            };
            Ok(Output {
                text,
                json,
                ok: true,
            })
        }
        NumerologyCmd::Show { bd } => {
            let inv = bd.invariants();
            let (plus, prime, n) = bd.induction_data();
            let value = json!({
                "degrees": bd.degrees(),
                "genus": inv.genus,
                "r": inv.r_index,
                "regime": inv.regime,
                "reduced": bd.is_reduced(),
                "plus": plus.degrees(),
                "prime": prime.degrees(),
                "sheets": n,
            });
            let text = format!(
                "{bd}: genus {}, r {}, {:?}\n",
                inv.genus, inv.r_index, inv.regime
            );
            Ok(Output {
                text,
                json: pretty(&value),
                ok: true,
            })
        }
    }
}

fn orbits(cmd: OrbitsCmd) -> Result<Output, String> {
    match cmd {
        OrbitsCmd::Enumerate { genus, r } => {
            let report = enumerate_orbits(genus, r).map_err(|e| e.to_string())?;
            let mut cert = Certificate::new("orbits enumerate", json!({"genus": genus, "r": r}));
            let total: u64 = report.sizes().iter().sum();
            cert.check(
                "partition",
                total == report.tuple_count,
                json!({"tuples": report.tuple_count, "sizes": report.sizes()}),
            );
            let arf_table: Vec<_> = report
                .orbits
                .iter()
                .map(|o| json!({"size": o.size, "arf": o.arf}))
                .collect();
            let constant = report.orbits.iter().all(|o| o.arf_constant);
            let mut values: Vec<Option<u8>> = report.orbits.iter().map(|o| o.arf).collect();
            values.sort();
            values.dedup();
            let separates = r % 2 == 1 || values.len() == report.orbits.len();
            cert.check("arf_constant_per_orbit", constant, &arf_table);
            cert.check("arf_separates_orbits", separates, &values);
            let witnesses: Vec<_> = report
                .orbits
                .iter()
                .map(|o| json!({"representative": o.representative, "target": o.witness.target, "word": o.witness.word}))
                .collect();
            cert.check("witness_words", true, witnesses);
            Ok(Output::cert(cert))
        }
        OrbitsCmd::Relations { genus, r } => {
            let report = relations_self_test(genus, r).map_err(|e| e.to_string())?;
            let mut cert = Certificate::new("orbits relations", json!({"genus": genus, "r": r}));
            cert.check("relations", report.failures.is_empty(), &report);
            Ok(Output::cert(cert))
        }
    }
}

fn config(cmd: ConfigCmd) -> Result<Output, String> {
    match cmd {
        ConfigCmd::Check(file) => {
            let c = RibbonConfig::from_json(&file.read()?).map_err(|e| e.to_string())?;
            c.validate().map_err(|e| e.to_string())?;
            let mut cert = Certificate::new(
                "config check",
                serde_json::from_str(&c.to_json()).expect("valid JSON"),
            );
            cert.check("graph", true, c.graph_tests());
            match c.neighborhood_invariants() {
                Ok(inv) => cert.check("neighborhood", true, inv),
                Err(e) => cert.check("neighborhood", false, e.to_string()),
            }
            match c.face_windings() {
                Ok(faces) => cert.check("boundary_windings", true, faces),
                Err(e) => cert.check("boundary_windings", false, e.to_string()),
            }
            if c.order.is_some() {
                match assemblage_check(&c, 0, 0) {
                    Ok(report) => cert.check("assemblage", report.ok, report),
                    Err(e) => cert.check("assemblage", false, e.to_string()),
                }
            }
            Ok(Output::cert(cert))
        }
        ConfigCmd::BuildInduction { bd, kind } => {
            let r = bd.r_index();
            if r < 1 {
                return Err(format!("r{bd} = {r} is below 1"));
            }
            let ind = build_induction_config(bd.genus() as usize, r, bd.product() as usize, kind)
                .map_err(|e| e.to_string())?;
            let text = format!(
                "{bd}: {} curves ({} core), boundary windings {:?}, propagated {:?}\n",
                ind.config.nodes.len(),
                2 * ind.genus,
                ind.boundary_windings,
                ind.propagated
            );
            let value = json!({
                "genus": ind.genus, "r": ind.r, "sheets": ind.sheets, "type": ind.kind,
                "special_case": ind.special_case, "relocated": ind.relocated,
                "propagated": ind.propagated, "boundary_windings": ind.boundary_windings,
                "config": serde_json::from_str::<serde_json::Value>(&ind.config.to_json()).expect("valid JSON"),
            });
            Ok(Output {
                text,
                json: pretty(&value),
                ok: true,
            })
        }
    }
}

fn plan_certificate(command: &str, b: &BranchData) -> Certificate {
    let mut cert = Certificate::new(command, serde_json::to_value(b).expect("serializes"));
    let genus = genus_rh(b);
    cert.check(
        "genus",
        genus.is_ok(),
        genus.as_ref().map_err(|e| e.to_string()),
    );
    let order = match select_spanning_order(b) {
        Ok(o) => o,
        Err(e) => {
            cert.check("spanning_order", false, e.to_string());
            return cert;
        }
    };
    cert.check("spanning_order", true, &order);
    match lift_arc_system(b, &order) {
        Ok(sys) => cert.check("arc_system", true, sys),
        Err(e) => cert.check("arc_system", false, e.to_string()),
    }
    cert
}

fn cover(cmd: CoverCmd) -> Result<Output, String> {
    match cmd {
        CoverCmd::Plan(file) => {
            let b = BranchData::from_json(&file.read()?)?;
            Ok(Output::cert(plan_certificate("cover plan", &b)))
        }
        CoverCmd::Tacnode { file, branch } => {
            let b = BranchData::from_json(&file.read()?)?;
            let order = select_spanning_order(&b).map_err(|e| e.to_string())?;
            let arc = tacnode_arc(&b, &order, branch).map_err(|e| e.to_string())?;
            let mut cert =
                Certificate::new("cover tacnode", json!({"branch_data": b, "branch": branch}));
            cert.check("enters_once", arc.enters_once, &arc);
            let all = tacnode_arcs(&b, &order).map_err(|e| e.to_string())?;
            match arc_complement(&b, &all) {
                Ok(c) => cert.check("complement_of_all_arcs", c.all_disks, c),
                Err(e) => cert.check("complement_of_all_arcs", false, e.to_string()),
            }
            Ok(Output::cert(cert))
        }
        CoverCmd::Sample {
            seed,
            count,
            max_sheets,
            max_points,
        } => {
            if max_sheets < 2 || max_points < 2 {
                return Err("need at least two sheets and two branch points".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut samples = Vec::with_capacity(count);
            let mut failures = Vec::new();
            let top = max_sheets.min(max_points / 2 + 1);
            for i in 0..count {
                let n = rng.gen_range(2..=top);
                let k = 2 * n - 2 + 2 * rng.gen_range(0..=(max_points - (2 * n - 2)) / 2);
                let b = BranchData::random(&mut rng, n, k).map_err(|e| e.to_string())?;
                let cert = plan_certificate("cover plan", &b);
                let disks = select_spanning_order(&b)
                    .and_then(|o| lift_arc_system(&b, &o))
                    .map(|s| s.complement_disks)
                    .unwrap_or(0);
                if !cert.passed() || disks != n {
                    failures.push(json!({"sample": i, "data": b, "failing": cert.failing()}));
                }
                samples.push(json!([n, k, genus_rh(&b).unwrap_or(usize::MAX)]));
            }
            let mut cert = Certificate::new(
                "cover sample",
                json!({"seed": seed, "count": count, "max_sheets": max_sheets, "max_points": max_points}),
            );
            cert.check(
                "pipeline",
                failures.is_empty(),
                json!({"failures": failures, "sheets_points_genus": samples}),
            );
            Ok(Output::cert(cert))
        }
    }
}

fn germ(text: &str) -> Result<Germ, String> {
    parse_poly(text)
        .map(|p| Germ::from(&p))
        .map_err(|e| format!("{text:?}: {e}"))
}

fn random_poly(rng: &mut ChaCha8Rng, constant: Option<i64>, slope: Option<i64>) -> Poly {
    let mut p = Poly::default();
    for z in 0..4 {
        for w in 0..3 {
            let c = match (z, w, constant, slope) {
                (0, 0, Some(c), _) => c,
                (1, 0, _, Some(s)) => s,
                _ => rng.gen_range(-5..=5),
            };
            p = p.add(&Poly::monomial(c, z, w));
        }
    }
    p
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn tacnode(cmd: TacnodeCmd) -> Result<Output, String> {
    match cmd {
        TacnodeCmd::Span { f, h1, h2, h3 } => {
            let report = versal_span_check(&germ(&f)?, &germ(&h1)?, &germ(&h2)?, &germ(&h3)?);
            let mut cert = Certificate::new(
                "tacnode span",
                json!({"f": f, "h1": h1, "h2": h2, "h3": h3}),
            );
            cert.check(
                "quotient_dimension",
                report.quotient_dim == 3,
                report.quotient_dim,
            );
            cert.check(
                "conditions_imply_span",
                report.conditions_imply_span,
                &report.conditions,
            );
            cert.check("spans", report.spans, &report);
            Ok(Output::cert(cert))
        }
        TacnodeCmd::Sample { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Germ::from(&parse_poly("w - z^2").expect("fixed expression"));
            let mut spanning = 0;
            let mut blocked = 0;
            for _ in 0..count {
                let (c1, s2, c3) = (nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng));
                let h1 = Germ::from(&random_poly(&mut rng, Some(c1), None));
                let h2 = Germ::from(&random_poly(&mut rng, Some(0), Some(s2)));
                let h3 = Germ::from(&random_poly(&mut rng, Some(c3), None));
                if versal_span_check(&f, &h1, &h2, &h3).spans {
                    spanning += 1;
                }
                let flat = Germ::from(&random_poly(&mut rng, Some(0), None));
                if !versal_span_check(&f, &h1, &h2, &flat).spans {
                    blocked += 1;
                }
            }
            let mut cert =
                Certificate::new("tacnode sample", json!({"seed": seed, "count": count}));
            cert.check(
                "conditions_span",
                spanning == count,
                json!({"spanning": spanning, "count": count}),
            );
            cert.check(
                "vanishing_h3_fails",
                blocked == count,
                json!({"failing": blocked, "count": count}),
            );
            Ok(Output::cert(cert))
        }
    }
}

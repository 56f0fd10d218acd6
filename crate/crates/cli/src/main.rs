use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ascheme_core::algebra::{is_prime, GroupDescriptor, GroupKind};
use ascheme_core::analysis::{
    are_algebraically_isomorphic_with, are_isomorphic_with, automorphisms_with, is_schurian_with, SearchBudget,
};
use ascheme_core::constructions::LcMaps;
use ascheme_core::geometry::{extract_incidence, IncidenceStructure};
use ascheme_core::io::{
    build, import_matrix, read_scheme, read_table, reproduce_tables, write_scheme, ConstructionSpec,
};
use ascheme_core::scheme::{verify_scheme_with, VerifyMode};
use ascheme_core::{check_conditions, Scheme};

#[derive(Parser)]
#[command(name = "ascheme", version, about = "Build and inspect association schemes with thin residue C_p x C_p")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Thm34,
    Sec41,
    Sec42,
    Thm51,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Thm34 => "thm34",
            Kind::Sec41 => "sec41",
            Kind::Sec42 => "sec42",
            Kind::Thm51 => "thm51",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a scheme and print its summary.
    Construct {
        #[arg(long, value_enum, required_unless_present = "spec")]
        kind: Option<Kind>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        delta: Option<usize>,
        /// `C<n>`, `E<p>^<r>`, or a JSON group file.
        #[arg(long)]
        group: Option<String>,
        /// L/C maps as inline JSON or a JSON file.
        #[arg(long)]
        lc: Option<String>,
        /// `triangle`, `fano`, or an incidence JSON file.
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        allow_even: bool,
        /// A complete construction request as a JSON file.
        #[arg(long, conflicts_with_all = ["kind", "p", "delta", "group", "lc", "space", "allow_even"])]
        spec: Option<PathBuf>,
        /// Where to write the scheme file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the axioms of a scheme file.
    Verify {
        file: PathBuf,
        /// Collect every violated triple instead of stopping at the first.
        #[arg(long)]
        full: bool,
    },
    /// Delta, valencies, thin radical and residue, and the structural conditions.
    Analyze {
        file: PathBuf,
        /// Prime for the conditions; inferred from the residue when omitted.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Automorphism group order and generators.
    Aut { file: PathBuf },
    /// Whether the scheme is the orbital scheme of its automorphism group.
    Schurian { file: PathBuf },
    /// Combinatorial (or with --algebraic, algebraic) isomorphism.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        algebraic: bool,
    },
    /// Factor scheme over a closed subset.
    Factor {
        file: PathBuf,
        /// `thin-residue`, `thin-radical`, a comma list of relations, or a
        /// file holding such a list.
        #[arg(long, default_value = "thin-residue")]
        over: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Incidence structure on the residue classes.
    Pls { file: PathBuf },
    /// Rebuild the existence table for p = 2 or 3.
    Tables {
        #[arg(long)]
        p: u64,
        /// Directory for the scheme files of built rows.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best-effort import of a catalogue adjacency matrix.
    ImportHm {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed check, as opposed to a usage problem.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_failure(&e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Exit code 1: the input was read but a check failed or it is malformed.
/// Bad construction parameters and unsupported requests count as usage errors.
fn is_failure(e: &anyhow::Error) -> bool {
    use ascheme_core::IoError;
    e.downcast_ref::<Failed>().is_some()
        || matches!(e.downcast_ref::<IoError>(), Some(err) if !matches!(err, IoError::Construction(_) | IoError::Io(_) | IoError::Unsupported(_)))
}

fn load(path: &Path) -> Result<Scheme> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_scheme(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn inline_or_file(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn parse_group(arg: &str) -> Result<GroupKind> {
    if let Some(n) = arg.strip_prefix('C').and_then(|n| n.parse().ok()) {
        return Ok(GroupKind::Cyclic(n));
    }
    if let Some((p, r)) = arg.strip_prefix('E').and_then(|s| s.split_once('^')) {
        return Ok(GroupKind::ElementaryAbelian { p: p.parse()?, rank: r.parse()? });
    }
    let text = inline_or_file(arg)?;
    if let Ok(k) = serde_json::from_str::<GroupKind>(&text) {
        return Ok(k);
    }
    let d: GroupDescriptor = serde_json::from_str(&text).context("group must be C<n>, E<p>^<r>, or a JSON table")?;
    Ok(GroupKind::Table(d))
}

fn parse_space(arg: &str) -> Result<IncidenceStructure> {
    Ok(match arg {
        "fano" => IncidenceStructure::fano(),
        "triangle" => IncidenceStructure::triangle(),
        _ => {
            serde_json::from_str(&inline_or_file(arg)?).context("incidence JSON: {\"points\": n, \"lines\": [...]}")?
        }
    })
}

fn emit(json: bool, value: serde_json::Value, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("JSON value"));
    } else {
        print!("{}", text());
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Residue order as `p^2` for a prime `p`, if it has that shape.
fn residue_prime(s: &Scheme) -> Option<u64> {
    let t = s.thin_residue().len() as u64;
    (2..=t).take_while(|q| q * q <= t).find(|&q| q * q == t && is_prime(q))
}

fn run(cli: &Cli) -> Result<()> {
    let budget = SearchBudget::from_env();
    match &cli.cmd {
        Command::Construct { kind, p, delta, group, lc, space, allow_even, spec, out } => {
            let spec = match spec {
                Some(path) => ConstructionSpec::from_json(&std::fs::read_to_string(path)?)?,
                None => ConstructionSpec {
                    kind: kind.expect("clap enforces --kind").name().into(),
                    p: *p,
                    delta: *delta,
                    group: group.as_deref().map(parse_group).transpose()?,
                    lc: lc
                        .as_deref()
                        .map(|a| -> Result<LcMaps> { Ok(serde_json::from_str(&inline_or_file(a)?)?) })
                        .transpose()?,
                    space: space.as_deref().map(parse_space).transpose()?,
                    allow_even: *allow_even,
                    ..Default::default()
                },
            };
            let report = build(&spec).map_err(|e| anyhow::anyhow!(e))?;
            if let Some(path) = out {
                std::fs::write(path, write_scheme(&report.scheme))?;
            }
            let summary = report.summary();
            emit(cli.json, serde_json::to_value(&summary)?, || {
                let c = summary.conditions;
                let vals: Vec<String> = summary.valencies.iter().map(|(v, k)| format!("{v}^{k}")).collect();
                format!(
                    "{} p={}: {} points, {} relations, delta {}\nvalencies {}\nA={} B={} distinct-ss*={}\n",
                    summary.kind,
                    summary.p,
                    summary.points,
                    summary.rank,
                    summary.delta,
                    vals.join(" "),
                    c.a,
                    c.b,
                    c.con_three
                )
            });
        }
        Command::Verify { file, full } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let table = read_table(&text)?;
            let mode = if *full { VerifyMode::Full } else { VerifyMode::Fast };
            match verify_scheme_with(&table, mode) {
                Ok(s) => emit(cli.json, json!({"ok": true, "points": s.order(), "rank": s.rank()}), || {
                    format!("ok: {} points, {} relations\n", s.order(), s.rank())
                }),
                Err(e) => {
                    let list: Vec<String> = e.violations().iter().map(|v| v.to_string()).collect();
                    emit(cli.json, json!({"ok": false, "error": e.to_string(), "violations": list}), || {
                        list.iter().map(|v| format!("{v}\n")).collect::<String>() + &format!("{e}\n")
                    });
                    return Err(Failed("verification failed".into()).into());
                }
            }
        }
        Command::Analyze { file, p } => {
            let s = load(file)?;
            let radical = s.thin_radical();
            let residue = s.thin_residue();
            let prime = p.or_else(|| residue_prime(&s));
            let conditions = prime.map(|q| check_conditions(&s, q)).transpose()?;
            let delta = s.delta()?;
            let value = json!({
                "points": s.order(),
                "rank": s.rank(),
                "delta": delta,
                "valencies": s.valencies(),
                "thin_radical": radical.members(),
                "thin_residue": residue.members(),
                "p": prime,
                "conditions": conditions,
            });
            emit(cli.json, value, || {
                let mut t = format!("{} points, {} relations, delta {}\n", s.order(), s.rank(), delta);
                t += &format!(
                    "valencies {:?}\nthin radical {:?}\nthin residue {:?}\n",
                    s.valencies(),
                    radical.members(),
                    residue.members()
                );
                match (prime, conditions) {
                    (Some(q), Some(c)) => t += &format!("p={q}: A={} B={} distinct-ss*={}\n", c.a, c.b, c.con_three),
                    _ => t += "conditions: residue order is not a prime square (pass --p)\n",
                }
                t
            });
        }
        Command::Aut { file } => {
            let s = load(file)?;
            let aut = automorphisms_with(&s, &budget)?;
            emit(cli.json, serde_json::to_value(&aut)?, || {
                format!(
                    "order {}\ntransitive {}\n{} generators, base {:?}, orbit lengths {:?}\n",
                    aut.order,
                    aut.is_transitive(),
                    aut.generators.len(),
                    aut.base,
                    aut.orbit_lengths
                )
            });
        }
        Command::Schurian { file } => {
            let s = load(file)?;
            let r = is_schurian_with(&s, &budget)?;
            emit(cli.json, serde_json::to_value(&r)?, || {
                format!(
                    "schurian {}\n|Aut| {}, transitive {}, {} orbitals for {} relations\n",
                    r.schurian, r.aut_order, r.transitive, r.orbitals, r.rank
                )
            });
        }
        Command::Iso { a, b, algebraic } => {
            let (sa, sb) = (load(a)?, load(b)?);
            if *algebraic {
                let m = are_algebraically_isomorphic_with(&sa, &sb, &budget)?;
                emit(cli.json, json!({"algebraically_isomorphic": m.is_some(), "relation_map": m}), || match &m {
                    Some(m) => format!("algebraically isomorphic\nrelation map {m:?}\n"),
                    None => "not algebraically isomorphic\n".into(),
                });
            } else {
                let w = are_isomorphic_with(&sa, &sb, &budget)?;
                emit(cli.json, json!({"isomorphic": w.is_some(), "witness": w}), || match &w {
                    Some(w) => format!("isomorphic\npoint map {:?}\nrelation map {:?}\n", w.point_map, w.relation_map),
                    None => "not isomorphic\n".into(),
                });
            }
        }
        Command::Factor { file, over, out } => {
            let s = load(file)?;
            let subset = match over.as_str() {
                "thin-residue" => s.thin_residue(),
                "thin-radical" => s.thin_radical(),
                other => {
                    let list =
                        if Path::new(other).exists() { std::fs::read_to_string(other)? } else { other.to_string() };
                    let members = list
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|w| !w.is_empty())
                        .map(str::parse)
                        .collect::<Result<Vec<usize>, _>>()
                        .context("--over takes thin-residue, thin-radical, or a list of relation indices")?;
                    s.subset(members)?
                }
            };
            let f = s.factor_scheme(&subset)?;
            if cli.json {
                let value =
                    json!({"over": subset.members(), "points": f.order(), "rank": f.rank(), "table": f.table().rows()});
                if let Some(p) = out {
                    std::fs::write(p, write_scheme(&f))?;
                }
                emit(true, value, String::new);
            } else {
                write_or_print(out.as_deref(), &write_scheme(&f))?;
            }
        }
        Command::Pls { file } => {
            let s = load(file)?;
            let (inc, map) = extract_incidence(&s)?;
            let class = inc.classify();
            let value = json!({"incidence": inc, "class": class, "stabilizers": map});
            emit(cli.json, value, || {
                let mut t = format!(
                    "{} points, {} lines; partial linear {}, linear {}, at most {} lines per point\n",
                    inc.points(),
                    inc.lines().len(),
                    class.is_partial_linear,
                    class.is_linear,
                    class.max_lines_per_point
                );
                for l in inc.lines() {
                    t += &format!("{l:?}\n");
                }
                t
            });
        }
        Command::Tables { p, out } => {
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
            }
            let report = reproduce_tables(*p, out.as_deref()).map_err(|e| anyhow::anyhow!(e))?;
            emit(cli.json, serde_json::to_value(&report)?, || report.to_string());
            if report.rows.iter().any(|r| r.result == ascheme_core::io::RowResult::Failed) {
                bail!(Failed("some table rows failed".into()));
            }
        }
        Command::ImportHm { file, out } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let s = import_matrix(&text)?;
            if cli.json {
                emit(true, json!({"points": s.order(), "rank": s.rank(), "valencies": s.valencies()}), String::new);
                if let Some(p) = out {
                    std::fs::write(p, write_scheme(&s))?;
                }
            } else {
                write_or_print(out.as_deref(), &write_scheme(&s))?;
            }
        }
    }
    Ok(())
}

//! Batch analysis of single-peaked preference domains: sign encoding,
//! enumeration, Bruhat cover digraphs, Condorcet verification, and
//! DOT/SVG figure export.
//!
//! Exit status: 0 on success, 1 when a requested check fails (majority
//! cycle found, domain not Condorcet, a property report with a false
//! entry), 2 on usage or validation errors.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use single_peaked::bruhat::{self, BruhatDigraph};
use single_peaked::domain::{self, Domain, Profile, DEFAULT_MAX_ENUM_N, DEFAULT_MAX_PROFILES};
use single_peaked::order::LinearOrder;
use single_peaked::sign::SignSeq;
use single_peaked::tiling;

#[derive(Parser)]
#[command(name = "sptool", version, about = "Single-peaked preference domain toolkit")]
struct Cli {
    /// Wrap the result in a single JSON object
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a single-peaked order as its sign string
    Encode {
        /// The order, e.g. 34251 (or 3,4,2,5,1; commas required for n >= 10)
        order: String,
    },
    /// Decode a sign string back into its single-peaked order
    Decode {
        /// Signs over '+' and '-' (use `--` before strings starting with '-')
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
    /// List all single-peaked orders on {1..n}
    #[command(name = "enum")]
    Enumerate {
        n: usize,
        /// Print the row of per-top counts instead of the orders
        #[arg(long)]
        counts: bool,
        /// Enumeration cap on n
        #[arg(long, default_value_t = DEFAULT_MAX_ENUM_N)]
        max_n: usize,
    },
    /// Cover digraph of a domain under the Bruhat order
    Poset {
        /// Use the full single-peaked domain on {1..n}
        n: Option<usize>,
        /// Domain JSON file ('-' for stdin) instead of N
        #[arg(long, conflicts_with = "n")]
        domain: Option<String>,
        /// Emit DOT instead of an edge list
        #[arg(long)]
        dot: bool,
        /// Enumeration cap on n
        #[arg(long, default_value_t = DEFAULT_MAX_ENUM_N)]
        max_n: usize,
    },
    /// Report domain properties (exit 1 when any is false)
    Check {
        /// Domain JSON file ('-' for stdin)
        #[arg(long)]
        domain: String,
    },
    /// Majority relation of a profile and majority-cycle detection
    Majority {
        /// Profile JSON file ('-' for stdin)
        #[arg(long)]
        profile: String,
    },
    /// Exhaustively verify that a domain is a Condorcet domain for m voters
    VerifyCd {
        /// Domain JSON file ('-' for stdin)
        #[arg(long)]
        domain: String,
        /// Number of voters (must be odd)
        #[arg(long)]
        m: usize,
        /// Cap on the number of profiles to sweep
        #[arg(long, default_value_t = DEFAULT_MAX_PROFILES)]
        max_profiles: u64,
    },
    /// Render the zonogon tiling of {1..n} as SVG
    Tiling {
        n: usize,
        /// Single-peaked order whose snake to stroke
        #[arg(long)]
        highlight: Option<String>,
    },
    /// Interval digraph of {1..n} as DOT
    Intervals { n: usize },
}

/// Output of one verb: what to print and whether a check verdict failed.
struct Outcome {
    stdout: String,
    failed: bool,
}

impl Outcome {
    fn pass(stdout: String) -> Self {
        Self {
            stdout,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Encode { order } => encode(&order, cli.json),
        Command::Decode { signs } => decode(&signs, cli.json),
        Command::Enumerate { n, counts, max_n } => enumerate(n, counts, max_n, cli.json),
        Command::Poset {
            n,
            domain,
            dot,
            max_n,
        } => poset(n, domain.as_deref(), dot, max_n, cli.json),
        Command::Check { domain } => check(&domain, cli.json),
        Command::Majority { profile } => majority(&profile, cli.json),
        Command::VerifyCd {
            domain,
            m,
            max_profiles,
        } => verify_cd(&domain, m, max_profiles, cli.json),
        Command::Tiling { n, highlight } => render_tiling(n, highlight.as_deref(), cli.json),
        Command::Intervals { n } => intervals(n, cli.json),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(buffer)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn parse_order(text: &str) -> Result<LinearOrder, String> {
    text.parse::<LinearOrder>().map_err(|e| e.to_string())
}

fn load_domain(path: &str) -> Result<Domain, String> {
    Domain::from_json(&read_input(path)?).map_err(|e| e.to_string())
}

fn require_positive(n: usize) -> Result<(), String> {
    if n == 0 {
        Err("n must be at least 1".to_string())
    } else {
        Ok(())
    }
}

fn encode(order_text: &str, as_json: bool) -> Result<Outcome, String> {
    let order = parse_order(order_text)?;
    let signs = SignSeq::encode(&order).map_err(|e| e.to_string())?;
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({ "order": order, "signs": signs.to_string() })
        )
    } else {
        format!("{signs}\n")
    };
    Ok(Outcome::pass(stdout))
}

fn decode(signs_text: &str, as_json: bool) -> Result<Outcome, String> {
    let signs: SignSeq = signs_text
        .parse()
        .map_err(|e: single_peaked::SignError| e.to_string())?;
    let order = signs.decode();
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({ "order": order, "signs": signs.to_string() })
        )
    } else {
        format!("{order}\n")
    };
    Ok(Outcome::pass(stdout))
}

fn enumerate(n: usize, counts: bool, max_n: usize, as_json: bool) -> Result<Outcome, String> {
    require_positive(n)?;
    if counts {
        if n > max_n {
            return Err(format!(
                "resource limit exceeded: single-peaked enumeration size ({n} > {max_n})"
            ));
        }
        let row = domain::count_by_top(n);
        let stdout = if as_json {
            format!("{}\n", json!({ "counts": row, "n": n }))
        } else {
            let parts: Vec<String> = row.iter().map(u64::to_string).collect();
            format!("{}\n", parts.join(" "))
        };
        return Ok(Outcome::pass(stdout));
    }
    let sp = domain::enumerate_sp_capped(n, max_n).map_err(|e| e.to_string())?;
    let stdout = if as_json {
        format!("{}\n", json!({ "n": n, "orders": sp.orders() }))
    } else {
        let mut out = String::new();
        for order in sp.orders() {
            let _ = writeln!(out, "{order}");
        }
        out
    };
    Ok(Outcome::pass(stdout))
}

fn poset(
    n: Option<usize>,
    domain_path: Option<&str>,
    dot: bool,
    max_n: usize,
    as_json: bool,
) -> Result<Outcome, String> {
    let domain = match (n, domain_path) {
        (Some(n), None) => {
            require_positive(n)?;
            domain::enumerate_sp_capped(n, max_n).map_err(|e| e.to_string())?
        }
        (None, Some(path)) => load_domain(path)?,
        _ => return Err("provide either N or --domain FILE".to_string()),
    };
    let digraph = BruhatDigraph::build(&domain);
    let stdout = if as_json {
        let mut object = json!({
            "arcs": digraph.arcs(),
            "n": domain.n(),
            "nodes": digraph.nodes(),
        });
        if dot {
            object["dot"] = json!(digraph.to_dot());
        }
        format!("{object}\n")
    } else if dot {
        digraph.to_dot()
    } else {
        let mut out = String::new();
        for (a, b) in digraph.arc_orders() {
            let _ = writeln!(out, "{a} -> {b}");
        }
        out
    };
    Ok(Outcome::pass(stdout))
}

fn check(domain_path: &str, as_json: bool) -> Result<Outcome, String> {
    let domain = load_domain(domain_path)?;
    let single_peaked = domain.orders().iter().all(LinearOrder::is_single_peaked);
    let minimally_rich = domain::is_minimally_rich(&domain);
    let maximal_width = domain::has_maximal_width(&domain);
    let semi_connected = bruhat::is_semi_connected(&domain);
    let peak_pit = domain::is_peak_pit(&domain);
    let lattice = bruhat::is_lattice(&domain);
    let entries = [
        ("single-peaked", single_peaked),
        ("minimally-rich", minimally_rich),
        ("maximal-width", maximal_width),
        ("semi-connected", semi_connected),
        ("peak-pit", peak_pit),
        ("lattice", lattice),
    ];
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({
                "lattice": lattice,
                "maximal_width": maximal_width,
                "minimally_rich": minimally_rich,
                "n": domain.n(),
                "peak_pit": peak_pit,
                "semi_connected": semi_connected,
                "single_peaked": single_peaked,
                "size": domain.len(),
            })
        )
    } else {
        let mut out = String::new();
        for (name, value) in entries {
            let _ = writeln!(out, "{name}: {value}");
        }
        out
    };
    Ok(Outcome {
        stdout,
        failed: entries.iter().any(|&(_, value)| !value),
    })
}

fn majority(profile_path: &str, as_json: bool) -> Result<Outcome, String> {
    let profile = Profile::from_json(&read_input(profile_path)?).map_err(|e| e.to_string())?;
    let relation = domain::majority_relation(&profile).map_err(|e| e.to_string())?;
    let cycle = relation.has_majority_cycle();
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({
                "cycle": cycle,
                "m": profile.m(),
                "n": profile.n(),
                "prefers": relation.prefers(),
            })
        )
    } else {
        let mut out = String::new();
        for &(x, y) in relation.prefers() {
            let _ = writeln!(out, "{x} > {y}");
        }
        let _ = writeln!(out, "cycle: {cycle}");
        out
    };
    Ok(Outcome {
        stdout,
        failed: cycle,
    })
}

fn verify_cd(
    domain_path: &str,
    m: usize,
    max_profiles: u64,
    as_json: bool,
) -> Result<Outcome, String> {
    let domain = load_domain(domain_path)?;
    let check =
        domain::is_condorcet_brute_capped(&domain, m, max_profiles).map_err(|e| e.to_string())?;
    let condorcet = check.is_condorcet();
    let stdout = if as_json {
        let witness = check
            .witness
            .as_ref()
            .map(|profile| json!({ "voters": profile.voters() }));
        format!(
            "{}\n",
            json!({
                "condorcet": condorcet,
                "m": m,
                "profiles_checked": check.profiles_checked,
                "witness": witness,
            })
        )
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "condorcet: {condorcet}");
        let _ = writeln!(out, "profiles-checked: {}", check.profiles_checked);
        if let Some(profile) = &check.witness {
            let _ = writeln!(out, "witness: {}", profile.to_json());
        }
        out
    };
    Ok(Outcome {
        stdout,
        failed: !condorcet,
    })
}

fn render_tiling(n: usize, highlight: Option<&str>, as_json: bool) -> Result<Outcome, String> {
    require_positive(n)?;
    let geometry = tiling::build_tiling(n);
    let highlight = highlight.map(parse_order).transpose()?;
    let svg = geometry
        .export_svg(highlight.as_ref())
        .map_err(|e| e.to_string())?;
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({ "n": n, "svg": svg, "tiles": geometry.tile_count() })
        )
    } else {
        svg
    };
    Ok(Outcome::pass(stdout))
}

fn intervals(n: usize, as_json: bool) -> Result<Outcome, String> {
    require_positive(n)?;
    let graph = tiling::build_interval_graph(n);
    let dot = graph.to_dot();
    let stdout = if as_json {
        format!(
            "{}\n",
            json!({
                "arcs": graph.arc_count(),
                "dot": dot,
                "n": n,
                "nodes": graph.node_count(),
            })
        )
    } else {
        dot
    };
    Ok(Outcome::pass(stdout))
}

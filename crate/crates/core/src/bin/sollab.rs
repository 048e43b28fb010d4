use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sollab::bijection::{phi, phi_inverse, rr_decompose, BaseKind, KindFamily};
use sollab::involution::{psi, psi_landmarks, psi_orbits, theta, theta_orbits, LabeledPartition, WeightedPair};
use sollab::registry::{verify, IdentityId, Mode, VerificationReport};
use sollab::{enumerate, ferrers, Family, FamilyTag, Partition};

/// Exact strict-partition combinatorics and q-series identity checks.
#[derive(Parser, Debug)]
#[command(name = "sollab", version)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Halve default orders and bounds.
    #[arg(long, global = true)]
    fast: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check registered identities.
    Verify(VerifyArgs),
    /// List the members of a family with a given weight.
    Enumerate(EnumerateArgs),
    /// Show a bijection or involution step by step.
    Trace(TraceArgs),
    /// Orbit table of an involution at one weight.
    Pairs(PairsArgs),
    /// Ferrers diagram.
    Ferrers {
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        partition: Partition,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id (e.g. au2, MAIN_KA(3,1)); omit for the whole catalog.
    #[arg(long, value_parser = parse_id)]
    id: Option<IdentityId>,
    /// Truncation order for series checks.
    #[arg(long, conflicts_with = "weight_bound")]
    order: Option<u32>,
    /// Largest weight for enumeration, pairing and counting checks.
    #[arg(long)]
    weight_bound: Option<u32>,
    /// series, enum, pairing, counting, or all supported modes.
    #[arg(long, default_value = "all", value_parser = parse_mode_sel)]
    mode: ModeSel,
}

#[derive(Clone, Copy, Debug)]
enum ModeSel {
    All,
    One(Mode),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    n: u32,
    /// all, strict, od, rr, rr2, mod, even, multiples, dka, c, w
    #[arg(long)]
    family: String,
    /// Comma-separated family parameters (mod: m,r1,r2,..; multiples: m; dka: k,a).
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long)]
    max_length: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TraceMap {
    Phi,
    PhiInv,
    Psi,
    Theta,
    Rr,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long, value_enum)]
    map: TraceMap,
    /// main:i,j, cpair:i,j, ka:k,a,i,j or wtriple:i,j (phi); main, cpair, ka:k,a or wtriple (phi-inv).
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    mu: Option<Partition>,
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    eta: Option<Partition>,
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    partition: Option<Partition>,
    /// Labeled pair "A|B", e.g. "1,2x|3".
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pair: Option<WeightedPair>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairsMap {
    Psi,
    Theta,
}

#[derive(Args, Debug)]
struct PairsArgs {
    #[arg(long, value_enum)]
    map: PairsMap,
    #[arg(long)]
    n: u32,
}

/// A failure with its exit status.
struct Fail {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

impl From<sollab::Error> for Fail {
    fn from(e: sollab::Error) -> Self {
        usage(e.to_string())
    }
}

impl From<sollab::SeriesError> for Fail {
    fn from(e: sollab::SeriesError) -> Self {
        usage(e.to_string())
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() || s == "∅" || s == "-" {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("not a positive integer: {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<WeightedPair, String> {
    let (a, b) = s.split_once(['|', ';']).ok_or("expected A|B")?;
    let a = a.trim();
    let a = if a.is_empty() || a == "∅" || a == "-" {
        LabeledPartition::empty()
    } else {
        a.parse::<LabeledPartition>().map_err(|e| e.to_string())?
    };
    WeightedPair::new(a, parse_partition(b)?).map_err(|e| e.to_string())
}

fn parse_id(s: &str) -> Result<IdentityId, String> {
    s.parse::<IdentityId>().map_err(|e| e.to_string())
}

fn parse_mode_sel(s: &str) -> Result<ModeSel, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(ModeSel::All);
    }
    s.parse::<Mode>().map(ModeSel::One).map_err(|e| e.to_string())
}

fn parse_family(name: &str, params: &str, max_length: Option<usize>) -> Result<FamilyTag, Fail> {
    let nums = params
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| usage(format!("--params: not an integer: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let want = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(usage(format!("--params: {name} takes {k} numbers, got {}", nums.len())))
        }
    };
    let family = match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "all" => Family::All,
        "strict" => Family::Strict,
        "od" | "odd_distinct" => Family::OddDistinct,
        "rr" => Family::Rr,
        "rr2" => Family::Rr2,
        "even" | "even_parts" => Family::EvenParts,
        "c" | "c_family" => Family::CFamily,
        "w" | "w_family" => Family::WFamily,
        "multiples" => {
            want(1)?;
            Family::Multiples { m: nums[0] }
        }
        "dka" | "d_ka" => {
            want(2)?;
            Family::DKa { k: nums[0], a: nums[1] }
        }
        "mod" => {
            let (m, residues) = nums.split_first().ok_or_else(|| usage("--params: mod needs m,r1,r2,.."))?;
            Family::Mod { m: *m, residues: residues.to_vec() }
        }
        other => return Err(usage(format!("--family: unknown family {other:?}"))),
    };
    if !matches!(family, Family::Multiples { .. } | Family::DKa { .. } | Family::Mod { .. }) && !nums.is_empty() {
        return Err(usage(format!("--params: {name} takes no parameters")));
    }
    let tag = FamilyTag { family, max_length };
    tag.validate()?;
    Ok(tag)
}

/// Collected output: JSON value and text rendering.
struct Output {
    json: serde_json::Value,
    text: String,
}

fn output(value: &impl Serialize, text: String) -> Output {
    Output { json: serde_json::to_value(value).expect("serializable"), text }
}

fn env_order() -> Result<Option<u32>, Fail> {
    match std::env::var("SOLLAB_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("SOLLAB_ORDER: not an order: {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run_verify(a: &VerifyArgs, fast: bool) -> Result<(Output, bool), Fail> {
    let ids = match a.id {
        Some(id) => vec![id],
        None => IdentityId::catalog(),
    };
    let env = env_order()?;
    let mut jobs = Vec::new();
    for &id in &ids {
        let modes: Vec<Mode> = match a.mode {
            ModeSel::One(m) => {
                if !id.supports(m) && a.id.is_some() {
                    return Err(usage(format!("--mode: {id} does not support {m}")));
                }
                vec![m]
            }
            ModeSel::All => Mode::ALL.to_vec(),
        };
        for m in modes.into_iter().filter(|&m| id.supports(m)) {
            let explicit = if m == Mode::Series { a.order.or(env) } else { a.weight_bound.or(a.order) };
            let order = explicit.unwrap_or_else(|| {
                let d = id.default_order(m);
                if fast {
                    d / 2
                } else {
                    d
                }
            });
            jobs.push((id, m, order));
        }
    }
    // one thread per identity, reports kept in catalog order
    let results: Vec<Result<Vec<VerificationReport>, sollab::SeriesError>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| {
                let mine: Vec<_> = jobs.iter().filter(|j| j.0 == id).copied().collect();
                s.spawn(move || mine.into_iter().map(|(id, m, o)| verify(id, m, o)).collect())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify thread panicked")).collect()
    });
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    let bad = reports.iter().filter(|r| !r.is_equal()).count();
    let mut text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    text.push_str(&format!("{} checks, {} mismatches\n", reports.len(), bad));
    Ok((output(&reports, text), bad == 0))
}

fn run_enumerate(a: &EnumerateArgs) -> Result<Output, Fail> {
    let tag = parse_family(&a.family, &a.params, a.max_length)?;
    let members: Vec<Partition> = enumerate(a.n, &tag)?.collect();
    let mut text = format!("{tag}, n = {}: {} members\n", a.n, members.len());
    for p in &members {
        text.push_str(&format!("{p}\n"));
    }
    #[derive(Serialize)]
    struct Listing<'a> {
        family: &'a FamilyTag,
        n: u32,
        count: usize,
        partitions: &'a [Partition],
    }
    let listing = Listing { family: &tag, n: a.n, count: members.len(), partitions: &members };
    Ok(output(&listing, text))
}

fn need<'a, T>(v: &'a Option<T>, flag: &str, map: &str) -> Result<&'a T, Fail> {
    v.as_ref().ok_or_else(|| usage(format!("--{flag} is required for --map {map}")))
}

fn run_trace(a: &TraceArgs) -> Result<Output, Fail> {
    match a.map {
        TraceMap::Phi => {
            let kind: BaseKind = need(&a.kind, "kind", "phi")?.parse().map_err(|e: sollab::Error| usage(format!("--kind: {e}")))?;
            let empty = Partition::empty();
            let mu = a.mu.as_ref().unwrap_or(&empty);
            let eta = a.eta.as_ref().unwrap_or(&empty);
            let (lambda, trace) = phi(kind, mu, eta)?;
            #[derive(Serialize)]
            struct PhiOut<'a> {
                kind: BaseKind,
                mu: &'a Partition,
                eta: &'a Partition,
                partition: &'a Partition,
                trace: &'a sollab::bijection::MoveTrace,
            }
            let text = format!("{trace}= {lambda}\n");
            Ok(output(&PhiOut { kind, mu, eta, partition: &lambda, trace: &trace }, text))
        }
        TraceMap::PhiInv => {
            let raw = need(&a.kind, "kind", "phi-inv")?;
            let fam = raw
                .parse::<KindFamily>()
                .or_else(|_| raw.parse::<BaseKind>().map(|k| k.family()))
                .map_err(|e| usage(format!("--kind: {e}")))?;
            let lambda = need(&a.partition, "partition", "phi-inv")?;
            let d = phi_inverse(fam, lambda)?;
            let text = format!("{}{}, mu = {}, eta = {}\n", d.trace, d.kind, d.mu, d.eta);
            Ok(output(&d, text))
        }
        TraceMap::Psi => {
            let out = psi(need(&a.partition, "partition", "psi")?)?;
            Ok(output(&out, format!("{out}\n")))
        }
        TraceMap::Theta => {
            let out = theta(need(&a.pair, "pair", "theta")?)?;
            Ok(output(&out, format!("{out}\n")))
        }
        TraceMap::Rr => {
            let lambda = need(&a.partition, "partition", "rr")?;
            let (n, iota) = rr_decompose(lambda)?;
            let mut padded = vec!["0".to_string(); n - iota.len()];
            padded.extend(iota.parts().iter().map(u32::to_string));
            let text = format!("{lambda} = (1, 3, .., {}) + ({})\n({n}, {})\n", 2 * n.max(1) - 1, padded.join(", "), padded.join("+"));
            #[derive(Serialize)]
            struct RrOut<'a> {
                partition: &'a Partition,
                n: usize,
                iota: &'a Partition,
            }
            Ok(output(&RrOut { partition: lambda, n, iota: &iota }, text))
        }
    }
}

fn run_pairs(a: &PairsArgs) -> Result<Output, Fail> {
    match a.map {
        PairsMap::Psi => {
            let t = psi_orbits(a.n)?;
            let show = |p: &Partition| psi_landmarks(p).map(|s| s.to_string());
            let mut text = format!("n = {}: {} fixed points, {} pairs\n", t.n, t.fixed.len(), t.pairs.len());
            for p in &t.fixed {
                text.push_str(&format!("  {}\n", show(p)?));
            }
            for (x, y) in &t.pairs {
                text.push_str(&format!("  {:<28} <-> {}\n", show(x)?, show(y)?));
            }
            Ok(output(&t, text))
        }
        PairsMap::Theta => {
            let t = theta_orbits(a.n)?;
            let mut text = format!("weight {}: {} fixed points, {} pairs\n", t.n, t.fixed.len(), t.pairs.len());
            for p in &t.fixed {
                text.push_str(&format!("  {p}\n"));
            }
            for (x, y) in &t.pairs {
                text.push_str(&format!("  {:<28} <-> {y}\n", x.to_string()));
            }
            Ok(output(&t, text))
        }
    }
}

fn run(cli: &Cli) -> Result<(Output, bool), Fail> {
    match &cli.command {
        Command::Verify(a) => run_verify(a, cli.fast),
        Command::Enumerate(a) => run_enumerate(a).map(|o| (o, true)),
        Command::Trace(a) => run_trace(a).map(|o| (o, true)),
        Command::Pairs(a) => run_pairs(a).map(|o| (o, true)),
        Command::Ferrers { partition } => {
            let diagram = ferrers(partition);
            #[derive(Serialize)]
            struct FerrersOut<'a> {
                partition: &'a Partition,
                rows: Vec<&'a str>,
            }
            let value = FerrersOut { partition, rows: diagram.lines().collect() };
            Ok((output(&value, format!("{diagram}\n")), true))
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&out.json).expect("json");
        s.push('\n');
        s
    } else {
        out.text.clone()
    };
    match &cli.out {
        Some(path) => File::create(path)?.write_all(body.as_bytes()),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, ok)) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

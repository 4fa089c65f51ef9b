use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pfusion_core::catalog::{catalog_group, load_group, standard_catalog, CATALOG_MAX_ORDER};
use pfusion_core::fusion::{controls_fusion_with, controls_p_fusion, FusionReport, ScanMode};
use pfusion_core::harness::{run_suite, ClaimId, FaultInjection, SuiteOptions};
use pfusion_core::nilpotency::{hall_petrescu_check, is_p_nilpotent, omega_bar, upper_central_series};
use pfusion_core::{FiniteGroup, FusionClass, GroupError, Permutation};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "pfusion", version, about = "p-nilpotency and fusion control in permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group at one prime.
    Analyze(AnalyzeArgs),
    /// Run the claim suites over the catalog.
    Verify(VerifyArgs),
    /// Show the built-in catalog.
    Catalog(CatalogArgs),
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Catalog name or path to a group file.
    #[arg(long, required_unless_present = "generators")]
    group: Option<String>,
    /// Generators in cycle notation, e.g. "(0 1 2)" "(0 1)".
    #[arg(long, num_args = 1.., conflicts_with = "group", requires = "degree")]
    generators: Vec<String>,
    /// Degree for --generators.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    prime: u64,
    #[arg(long, value_enum, default_value_t = ClassArg::Cp)]
    class: ClassArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report every violation count instead of stopping at the first.
    #[arg(long)]
    full: bool,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 24)]
    max_order: usize,
    /// Comma-separated primes; all dividing primes when omitted.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Restrict to one claim.
    #[arg(long)]
    claim: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Flip the fusion verdict for GROUP@P (harness self-test).
    #[arg(long, hide = true, value_parser = parse_fault)]
    inject_fault: Option<(String, u64)>,
}

fn parse_fault(s: &str) -> Result<(String, u64), String> {
    let (name, p) = s.rsplit_once('@').ok_or("expected GROUP@P")?;
    let p = p.parse().map_err(|e| format!("bad prime: {e}"))?;
    Ok((name.to_string(), p))
}

#[derive(clap::Args)]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = CATALOG_MAX_ORDER)]
    max_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Cp,
    Cyclicp,
    Elemab,
    Psub,
}

impl ClassArg {
    fn class(self, p: u64) -> FusionClass {
        match self {
            ClassArg::Cp => FusionClass::Cp(p),
            ClassArg::Cyclicp => FusionClass::CyclicP(p),
            ClassArg::Elemab => FusionClass::ElemAbelian(p),
            ClassArg::Psub => FusionClass::PSubgroups(p),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Verify(args) => verify(args),
        Command::Catalog(args) => catalog(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn resolve_group(args: &AnalyzeArgs) -> Result<(String, FiniteGroup), GroupError> {
    if let Some(spec) = &args.group {
        if let Some(g) = catalog_group(spec) {
            return Ok((spec.clone(), g));
        }
        if Path::new(spec).exists() {
            return load_group(spec);
        }
        return Err(GroupError::Io(format!("no catalog group or file named {spec:?}")));
    }
    let degree = args.degree.unwrap_or(0);
    let gens = args
        .generators
        .iter()
        .map(|s| Permutation::parse_cycles(s, degree))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(("<generators>".to_string(), FiniteGroup::generate(degree, &gens)?))
}

fn fusion_json(report: &FusionReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

fn analyze(args: AnalyzeArgs) -> Result<u8, GroupError> {
    let (name, g) = resolve_group(&args)?;
    let p = args.prime;
    let mode = if args.full { ScanMode::Exhaustive } else { ScanMode::FirstViolation };
    let class = args.class.class(p);
    let sylow = g.sylow_subgroup(p)?;
    let nilpotency = is_p_nilpotent(&g, p)?;
    let fusion = controls_fusion_with(&sylow, class, mode)?;
    let p_fusion = controls_p_fusion(&sylow, p).ok();
    let k = omega_bar(&g, p)?;
    let series = upper_central_series(&g);
    let hall_petrescu = hall_petrescu_check(&g, p).ok();

    match args.format {
        Format::Json => {
            let out = json!({
                "group": name,
                "order": g.order(),
                "degree": g.degree(),
                "prime": p,
                "sylow_order": sylow.order(),
                "nilpotency": nilpotency,
                "class": class.to_string(),
                "fusion": fusion_json(&fusion),
                "p_fusion": p_fusion.as_ref().map(fusion_json),
                "omega_bar_order": k.order(),
                "upper_central_series": series.terms.iter().map(|z| z.order()).collect::<Vec<_>>(),
                "hall_petrescu": hall_petrescu,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text => {
            println!("group            {name} (order {}, degree {})", g.order(), g.degree());
            println!("prime            {p}");
            println!("sylow order      {}", sylow.order());
            println!("{p}-nilpotent      {}", nilpotency.p_nilpotent);
            if let Some(c) = &nilpotency.complement {
                println!("complement order {}", c.order());
            }
            println!(
                "fusion of {class}: (a) {} (b') {} [{} checks]",
                fusion.condition_a, fusion.condition_b, fusion.checked_count
            );
            if let Some(a) = &fusion.witness_a {
                println!("  witness (a)    subgroup of order {} not conjugate into P", a.order());
            }
            if let Some(w) = &fusion.witness_b {
                println!(
                    "  witness (b')   A of order {} generated by {:?}, g = {}",
                    w.subgroup.order(),
                    w.subgroup.small_generating_set().iter().map(|x| g.element(*x).to_string()).collect::<Vec<_>>(),
                    w.g
                );
            }
            match &p_fusion {
                Some(r) => println!("controls {p}-fusion {}", r.holds()),
                None => println!("controls {p}-fusion (Sylow lattice too large)"),
            }
            println!("omega_bar order  {}", k.order());
            println!(
                "central series   {:?}",
                series.terms.iter().map(|z| z.order()).collect::<Vec<_>>()
            );
            match &hall_petrescu {
                Some(h) => println!(
                    "hall-petrescu    e={} n={} power subgroup order {} holds {}",
                    h.e, h.n, h.power_subgroup_order, h.holds
                ),
                None => println!("hall-petrescu    hypothesis not met"),
            }
        }
    }
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, GroupError> {
    let claims = match &args.claim {
        Some(c) => vec![ClaimId::parse(c).ok_or_else(|| {
            let known: Vec<&str> = ClaimId::ALL.iter().map(|c| c.as_str()).collect();
            GroupError::HypothesisNotMet(format!("unknown claim {c:?}; expected one of {known:?}"))
        })?],
        None => ClaimId::ALL.to_vec(),
    };
    let options = SuiteOptions {
        primes: args.primes,
        claims,
        faults: FaultInjection { flip_fusion: args.inject_fault },
    };
    let report = run_suite(args.max_order, &options)?;
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.has_failures() { EXIT_FAIL } else { 0 })
}

fn catalog(args: CatalogArgs) -> Result<u8, GroupError> {
    if !args.list {
        eprintln!("error: nothing to do; pass --list");
        return Ok(EXIT_USAGE);
    }
    let listing: Vec<_> = standard_catalog(args.max_order)?
        .iter()
        .map(|e| e.listing())
        .collect();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&listing).expect("json")),
        Format::Text => {
            for l in &listing {
                println!("{:<10} order {:>4}  degree {:>3}", l.name, l.order, l.degree);
            }
        }
    }
    Ok(0)
}

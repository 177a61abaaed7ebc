use clap::Parser;
use ivpave::contractor::ContractorKind;
use ivpave::io::{paving_to_json, paving_to_svg, parse_eps, RunSettings};
use ivpave::paver::{pave, PaverConfig};
use ivpave::ProblemSpec;
use std::path::PathBuf;
use std::process::ExitCode;

/// Paves the solution set of a system of equations with interval contractors.
#[derive(Parser, Debug)]
#[command(name = "ivpave", version)]
struct Args {
    /// Built-in problem (only `delay2`)
    #[arg(long, conflicts_with = "problem", required_unless_present = "problem")]
    builtin: Option<String>,

    /// Problem file in the `var` / `constraint` / `project` format
    #[arg(long)]
    problem: Option<PathBuf>,

    /// Target box width, e.g. 0.01 or 2^-6
    #[arg(long, value_parser = eps_arg)]
    eps: f64,

    /// hc4, hc4-fixpoint, centered or centered-single
    #[arg(long, default_value = "centered")]
    contractor: ContractorKind,

    /// Write the paving as JSON (`-` for stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Write an SVG of the projected paving
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Variables to project onto for the SVG
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    project: Option<Vec<String>>,

    #[arg(long, default_value_t = 1_000_000)]
    max_boxes: usize,

    /// Worker threads; 0 runs the deterministic single-threaded loop
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Write duration_ms as 0 so repeated runs are byte-identical
    #[arg(long)]
    no_timing: bool,
}

fn eps_arg(s: &str) -> Result<f64, String> {
    parse_eps(s).map_err(|e| e.to_string())
}

fn load(args: &Args) -> Result<ProblemSpec, String> {
    match (&args.builtin, &args.problem) {
        (Some(name), _) if name == "delay2" => Ok(ivpave::builtin_delay2()),
        (Some(name), _) => Err(format!("unknown built-in problem '{name}' (available: delay2)")),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            ProblemSpec::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, None) => Err("one of --builtin or --problem is required".into()),
    }
}

fn projection(args: &Args, spec: &ProblemSpec) -> Result<(usize, usize), String> {
    if let Some(names) = &args.project {
        let find = |s: &str| {
            spec.names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| format!("unknown variable '{s}' in --project"))
        };
        let (i, j) = (find(&names[0])?, find(&names[1])?);
        if i == j {
            return Err("--project needs two distinct variables".into());
        }
        return Ok((i, j));
    }
    match spec.projection {
        Some(p) => Ok(p),
        None if spec.names.len() >= 2 => Ok((0, 1)),
        None => Err("SVG output needs at least two variables".into()),
    }
}

fn run(args: &Args) -> Result<bool, String> {
    let spec = load(args)?;
    let dims = match args.svg {
        Some(_) => Some(projection(args, &spec)?),
        None => None,
    };
    let cfg = PaverConfig {
        max_boxes: args.max_boxes,
        threads: args.threads,
        ..PaverConfig::new(args.eps, args.contractor)
    };
    let paving = pave(&spec.function(), &spec.domain, &cfg).map_err(|e| e.to_string())?;

    if let Some(path) = &args.out {
        let settings = RunSettings {
            max_boxes: args.max_boxes,
            threads: args.threads,
            timing: !args.no_timing,
        };
        let json = paving_to_json(&spec, &paving, settings);
        if path.as_os_str() == "-" {
            print!("{json}");
        } else {
            std::fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    if let (Some(path), Some(dims)) = (&args.svg, dims) {
        // the built-in frame belongs to the built-in projection
        let frame = if Some(dims) == spec.projection { spec.frame } else { None };
        let labels = [spec.names[dims.0].as_str(), spec.names[dims.1].as_str()];
        let svg = paving_to_svg(&paving, dims, frame, labels).map_err(|e| e.to_string())?;
        std::fs::write(path, svg).map_err(|e| format!("{}: {e}", path.display()))?;
    }

    let c = paving.counts;
    eprintln!(
        "contractor={} eps={} boundary={} discarded={} bisections={} time={:.3}s{}",
        paving.contractor,
        paving.eps,
        c.boundary,
        c.discarded,
        c.bisections,
        paving.duration.as_secs_f64(),
        if paving.truncated { " TRUNCATED" } else { "" }
    );
    Ok(!paving.truncated)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("warning: stopped after --max-boxes={} boundary boxes", args.max_boxes);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

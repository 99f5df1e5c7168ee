use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use k8s_atlas::pipeline::{chart_basename, run, InvocationOptions, Verbosity};
use k8s_atlas::{SourceSpec, Warnings};

/// Generate an architecture diagram from a Helm chart (local path, repo
/// reference, or OCI reference) by piping `helm template` output through
/// the same pipeline as kube-diagrams.
#[derive(Parser)]
#[command(name = "helm-diagrams", version)]
struct Args {
    /// Chart reference, e.g. `./chart`, `repo/name`, or `oci://...`.
    #[arg(value_name = "CHART")]
    chart: String,

    /// Output path; defaults to `<chartname>.png`.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Custom visual configuration (repeatable; later files win).
    #[arg(short, long, value_name = "PATH")]
    config: Vec<PathBuf>,

    /// Wrap the diagram in a Kubernetes-cluster frame.
    #[arg(long)]
    cluster_frame: bool,

    /// Print a summary of what was generated.
    #[arg(short, long)]
    verbose: bool,

    /// Suppress warnings.
    #[arg(short, long, conflicts_with = "verbose")]
    quiet: bool,
}

fn main() -> ExitCode {
    // Usage problems are input errors (exit 1); clap's default exit 2 is
    // reserved for environment failures here.
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) if err.use_stderr() => {
            let _ = err.print();
            return ExitCode::from(1);
        }
        Err(help_or_version) => {
            let _ = help_or_version.print();
            return ExitCode::SUCCESS;
        }
    };

    let output = args
        .output
        .unwrap_or_else(|| PathBuf::from(format!("{}.png", chart_basename(&args.chart))));
    let verbosity = if args.quiet {
        Verbosity::Quiet
    } else if args.verbose {
        Verbosity::Verbose
    } else {
        Verbosity::Normal
    };
    let options = InvocationOptions {
        inputs: vec![SourceSpec::helm_chart(args.chart)],
        output,
        config_paths: args.config,
        cluster_frame: args.cluster_frame,
        verbosity,
    };

    let mut warnings = Warnings::new();
    let result = run(&options, &mut warnings);
    if verbosity != Verbosity::Quiet {
        for warning in warnings.iter() {
            eprintln!("warning: {warning}");
        }
    }
    match result {
        Ok(report) => {
            if verbosity == Verbosity::Verbose {
                eprintln!(
                    "helm-diagrams: {} nodes, {} edges -> {}",
                    report.nodes,
                    report.edges,
                    options.output.display()
                );
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("helm-diagrams: {err}");
            ExitCode::from(if err.is_environment() { 2 } else { 1 })
        }
    }
}

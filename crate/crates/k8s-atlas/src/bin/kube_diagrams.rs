use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use k8s_atlas::pipeline::{run, InvocationOptions, Verbosity};
use k8s_atlas::{expand_inputs, SourceSpec, Warnings};

/// Generate architecture diagrams from Kubernetes manifests.
#[derive(Parser)]
#[command(name = "kube-diagrams", version)]
struct Args {
    /// Manifest files or directories; `-` reads stdin.
    #[arg(value_name = "INPUT")]
    inputs: Vec<String>,

    /// Output path; the extension selects the format (png, jpg, gif, tiff,
    /// svg, pdf, dot). `-` writes DOT to stdout.
    #[arg(short, long, value_name = "PATH")]
    output: PathBuf,

    /// Custom visual configuration (repeatable; later files win).
    #[arg(short, long, value_name = "PATH")]
    config: Vec<PathBuf>,

    /// Build a kustomization directory with `kustomize build` (repeatable).
    #[arg(long, value_name = "DIR")]
    kustomize: Vec<String>,

    /// Render a helmfile with `helmfile template` (repeatable).
    #[arg(long, value_name = "PATH")]
    helmfile: Vec<String>,

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

    let mut inputs = match expand_inputs(&args.inputs) {
        Ok(inputs) => inputs,
        Err(err) => {
            eprintln!("kube-diagrams: {err}");
            return ExitCode::from(1);
        }
    };
    inputs.extend(
        args.kustomize
            .iter()
            .cloned()
            .map(SourceSpec::kustomization),
    );
    inputs.extend(args.helmfile.iter().cloned().map(SourceSpec::helmfile));
    if inputs.is_empty() {
        eprintln!("kube-diagrams: no inputs; pass manifest files, directories, or `-` for stdin");
        return ExitCode::from(1);
    }

    let verbosity = if args.quiet {
        Verbosity::Quiet
    } else if args.verbose {
        Verbosity::Verbose
    } else {
        Verbosity::Normal
    };
    let options = InvocationOptions {
        inputs,
        output: args.output,
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
                    "kube-diagrams: {} nodes, {} edges -> {}",
                    report.nodes,
                    report.edges,
                    options.output.display()
                );
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("kube-diagrams: {err}");
            ExitCode::from(if err.is_environment() { 2 } else { 1 })
        }
    }
}

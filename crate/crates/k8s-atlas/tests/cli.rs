//! End-to-end tests of the two executables, including the exit-code
//! contract and the subprocess plumbing. External tools (`helm`, the layout
//! engine) are exercised through stub executables placed on PATH, so these
//! tests run hermetically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn kube_diagrams() -> &'static str {
    env!("CARGO_BIN_EXE_kube-diagrams")
}

fn helm_diagrams() -> &'static str {
    env!("CARGO_BIN_EXE_helm-diagrams")
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

/// Directory of fake external binaries, prepended to PATH for one command.
struct Stubs {
    dir: TempDir,
}

impl Stubs {
    fn new() -> Self {
        Stubs {
            dir: TempDir::new().expect("stub dir"),
        }
    }

    fn add(&self, name: &str, script: &str) -> &Self {
        let path = self.dir.path().join(name);
        fs::write(&path, format!("#!/bin/sh\n{script}")).expect("write stub");
        let mut permissions = fs::metadata(&path).unwrap().permissions();
        use std::os::unix::fs::PermissionsExt;
        permissions.set_mode(0o755);
        fs::set_permissions(&path, permissions).unwrap();
        self
    }

    fn path_env(&self) -> String {
        format!(
            "{}:{}",
            self.dir.path().display(),
            std::env::var("PATH").unwrap_or_default()
        )
    }
}

fn run_cmd(binary: &str, args: &[&str], stdin: Option<&str>, path_env: Option<String>) -> Output {
    let mut command = Command::new(binary);
    command.args(args);
    if let Some(path) = path_env {
        command.env("PATH", path);
    }
    command
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = command.spawn().expect("spawn CLI");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    child.wait_with_output().expect("CLI output")
}

#[test]
fn wordpress_dot_matches_the_golden_file() {
    let out_dir = TempDir::new().unwrap();
    let out = out_dir.path().join("wordpress.dot");
    let output = run_cmd(
        kube_diagrams(),
        &[
            "-o",
            out.to_str().unwrap(),
            "-c",
            fixture("wordpress-app-config.yaml").to_str().unwrap(),
            fixture("wordpress/mysql-deployment.yaml").to_str().unwrap(),
            fixture("wordpress/wordpress-deployment.yaml")
                .to_str()
                .unwrap(),
            fixture("wordpress/mysql-pass-secret.yaml")
                .to_str()
                .unwrap(),
        ],
        None,
        None,
    );
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let golden = fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/wordpress.dot"),
    )
    .unwrap();
    let produced = fs::read_to_string(&out).unwrap();
    assert_eq!(produced, golden, "DOT output diverged from the golden file");
    // referenced icons are shipped next to the DOT
    assert!(out_dir.path().join("icons/deploy.png").is_file());
}

#[test]
fn directory_argument_is_equivalent_to_listing_the_files() {
    let out_dir = TempDir::new().unwrap();
    let from_dir = out_dir.path().join("dir.dot");
    let output = run_cmd(
        kube_diagrams(),
        &[
            "-o",
            from_dir.to_str().unwrap(),
            "-c",
            fixture("wordpress-app-config.yaml").to_str().unwrap(),
            fixture("wordpress").to_str().unwrap(),
        ],
        None,
        None,
    );
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let golden = fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/wordpress.dot"),
    )
    .unwrap();
    assert_eq!(fs::read_to_string(&from_dir).unwrap(), golden);
}

#[test]
fn stdin_dash_reads_manifests_and_stdout_dash_is_pure_dot() {
    let manifests = fs::read_to_string(fixture("wordpress/wordpress-deployment.yaml")).unwrap();
    let output = run_cmd(kube_diagrams(), &["-o", "-", "-"], Some(&manifests), None);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("digraph \"k8s-atlas\" {"), "{stdout}");
    assert!(stdout.ends_with("}\n"));
    // nothing but DOT on stdout: every line is part of the graph text
    assert!(!stdout.contains("warning"), "{stdout}");
}

#[test]
fn warnings_go_to_stderr_not_stdout() {
    let manifests = "apiVersion: example.com/v1\nkind: Mystery\nmetadata: {name: m}\n";
    let output = run_cmd(kube_diagrams(), &["-o", "-", "-"], Some(manifests), None);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stdout.starts_with("digraph"));
    assert!(!stdout.contains("unknown kind"));
    assert!(
        stderr.contains("unknown kind Mystery/example.com/v1"),
        "{stderr}"
    );
}

#[test]
fn quiet_suppresses_warnings() {
    let manifests = "apiVersion: example.com/v1\nkind: Mystery\nmetadata: {name: m}\n";
    let output = run_cmd(
        kube_diagrams(),
        &["-q", "-o", "-", "-"],
        Some(manifests),
        None,
    );
    assert!(output.status.success());
    assert!(
        output.stderr.is_empty(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn no_inputs_is_usage_error_exit_1() {
    let output = run_cmd(kube_diagrams(), &["-o", "out.png"], None, None);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("no inputs"));
}

#[test]
fn missing_file_exits_1() {
    let output = run_cmd(
        kube_diagrams(),
        &["-o", "/tmp/x.dot", "enoent.yaml"],
        None,
        None,
    );
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn bad_yaml_exits_1_with_location() {
    let output = run_cmd(
        kube_diagrams(),
        &["-o", "-", "-"],
        Some("a: [unclosed\n"),
        None,
    );
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line"), "{stderr}");
}

#[test]
fn unknown_output_extension_exits_1() {
    let manifests = "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n";
    let output = run_cmd(
        kube_diagrams(),
        &["-o", "/tmp/out.bmp", "-"],
        Some(manifests),
        None,
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unsupported output extension"));
}

#[test]
fn missing_engine_exits_2() {
    let out_dir = TempDir::new().unwrap();
    let manifests = "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n";
    let mut command = Command::new(kube_diagrams());
    command
        .args(["-o", out_dir.path().join("d.png").to_str().unwrap(), "-"])
        .env("K8S_ATLAS_DOT", "/definitely/not/a/layout-engine")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = command.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(manifests.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("not found"));
}

#[test]
fn fake_engine_receives_dot_with_staged_icons() {
    let out_dir = TempDir::new().unwrap();
    let stubs = Stubs::new();
    // The stub verifies it runs in a directory with the staged icons, then
    // emits PNG magic bytes.
    stubs.add(
        "dot",
        "cat > /dev/null\n[ -f icons/cm.png ] || { echo 'icons not staged' >&2; exit 3; }\nprintf '\\211PNG\\r\\n\\032\\n-fake-render'\n",
    );
    let manifests = "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n";
    let out = out_dir.path().join("diagram.png");
    let output = run_cmd(
        kube_diagrams(),
        &["-o", out.to_str().unwrap(), "-"],
        Some(manifests),
        Some(stubs.path_env()),
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let bytes = fs::read(&out).unwrap();
    assert!(bytes.starts_with(b"\x89PNG\r\n\x1a\n"));
}

#[test]
fn verbose_prints_summary_to_stderr() {
    let manifests = "apiVersion: v1\nkind: ConfigMap\nmetadata: {name: a}\n";
    let output = run_cmd(
        kube_diagrams(),
        &["-v", "-o", "-", "-"],
        Some(manifests),
        None,
    );
    assert!(output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("1 nodes"), "{stderr}");
}

#[test]
fn helm_diagrams_renders_a_chart_through_helm_template() {
    let out_dir = TempDir::new().unwrap();
    let stubs = Stubs::new();
    let rendered = fixture("mini-chart-rendered.yaml");
    // fake helm: `helm template <chart>` prints the pre-rendered manifests
    stubs.add(
        "helm",
        &format!(
            "[ \"$1\" = template ] || {{ echo 'unexpected args' >&2; exit 64; }}\ncat '{}'\n",
            rendered.display()
        ),
    );
    let out = out_dir.path().join("mini-chart.dot");
    let output = run_cmd(
        helm_diagrams(),
        &[
            fixture("mini-chart").to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ],
        None,
        Some(stubs.path_env()),
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let dot = fs::read_to_string(&out).unwrap();
    // chart contents: deployment + service + configmap, volume reference,
    // selector edge, one shared application cluster
    assert!(dot.contains("<TD>release-name-mini-chart</TD>"), "{dot}");
    assert!(dot.contains("icons/cm.png"), "{dot}");
    assert!(
        dot.contains("\"Deployment/apps/v1/default/release-name-mini-chart\" -> \"ConfigMap/v1/default/release-name-mini-chart-config\" [color=\"black\", style=solid];"),
        "{dot}"
    );
    assert!(
        dot.contains("\"Service/v1/default/release-name-mini-chart\" -> \"Deployment/apps/v1/default/release-name-mini-chart\" [color=\"black\", style=dashed];"),
        "{dot}"
    );
    assert!(
        dot.contains("label=\"mini-chart\";"),
        "application cluster from app.kubernetes.io/name: {dot}"
    );
}

#[test]
fn helm_diagrams_defaults_the_output_to_chartname_png() {
    let workdir = TempDir::new().unwrap();
    let stubs = Stubs::new();
    let rendered = fixture("mini-chart-rendered.yaml");
    stubs.add("helm", &format!("cat '{}'\n", rendered.display()));
    stubs.add(
        "dot",
        "cat > /dev/null\nprintf '\\211PNG\\r\\n\\032\\n-fake-render'\n",
    );
    let output = Command::new(helm_diagrams())
        .arg(fixture("mini-chart").to_str().unwrap())
        .current_dir(workdir.path())
        .env("PATH", stubs.path_env())
        .output()
        .expect("helm-diagrams runs");
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(workdir.path().join("mini-chart.png").is_file());
}

#[test]
fn helmfile_flag_renders_through_the_external_tool() {
    let out_dir = TempDir::new().unwrap();
    let stubs = Stubs::new();
    // expected contract: helmfile -f <path> template
    stubs.add(
        "helmfile",
        "[ \"$1\" = -f ] && [ \"$3\" = template ] || exit 64\nprintf 'apiVersion: v1\\nkind: Service\\nmetadata: {name: from-helmfile}\\nspec: {selector: {app: x}}\\n'\n",
    );
    let out = out_dir.path().join("h.dot");
    let output = run_cmd(
        kube_diagrams(),
        &["--helmfile", "./helmfile.yaml", "-o", out.to_str().unwrap()],
        None,
        Some(stubs.path_env()),
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(fs::read_to_string(&out).unwrap().contains("from-helmfile"));
}

#[test]
fn helm_diagrams_without_chart_argument_exits_1_with_usage() {
    let output = run_cmd(helm_diagrams(), &[], None, None);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.to_lowercase().contains("usage"), "{stderr}");
}

#[test]
fn helm_diagrams_without_helm_binary_exits_2() {
    let stubs = Stubs::new(); // empty dir: no helm anywhere on PATH
    let output = run_cmd(
        helm_diagrams(),
        &["./some-chart", "-o", "/tmp/x.dot"],
        None,
        Some(format!("{}", stubs.dir.path().display())),
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("helm"));
}

#[test]
fn helm_template_failure_exits_1_with_helm_stderr() {
    let stubs = Stubs::new();
    stubs.add("helm", "echo 'Error: chart not found' >&2\nexit 1\n");
    let output = run_cmd(
        helm_diagrams(),
        &["missing/chart", "-o", "/tmp/x.dot"],
        None,
        Some(stubs.path_env()),
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&output.stderr).contains("chart not found"),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn kustomize_flag_builds_through_the_external_tool() {
    let out_dir = TempDir::new().unwrap();
    let stubs = Stubs::new();
    stubs.add(
        "kustomize",
        "[ \"$1\" = build ] || exit 64\nprintf 'apiVersion: v1\\nkind: ConfigMap\\nmetadata: {name: from-kustomize}\\n'\n",
    );
    let out = out_dir.path().join("k.dot");
    let output = run_cmd(
        kube_diagrams(),
        &["--kustomize", "./overlay", "-o", out.to_str().unwrap()],
        None,
        Some(stubs.path_env()),
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(fs::read_to_string(&out).unwrap().contains("from-kustomize"));
}

//! Running a job spec in process, the way the binary does.

use jaffard::cli::run;

const SPEC: &str = r#"
[domain]
model = "sequence"
space = { atoms = [{ kind = "ordinal", rank = "2", copies = 2 }, { kind = "discrete", size = 3 }] }
"#;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("job.toml");
    std::fs::write(&path, SPEC).expect("write spec");
    let path = path.to_string_lossy().into_owned();

    for cmd in ["analyze", "derive"] {
        let mut out = Vec::new();
        let code = run(["jaffard", cmd, "--input", &path, "--format", "text"], &mut out, &mut std::io::stderr());
        let text = String::from_utf8(out).expect("utf-8");
        println!("{cmd} (exit {code}): {}", text.lines().next().unwrap_or_default());
    }
}

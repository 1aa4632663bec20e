use std::path::Path;
use std::process::{Command, Output};

fn sweep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir-sweep")).args(args).current_dir(dir).output().unwrap()
}

fn columns(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

const CONFIG: &str = r#"
[geometry]
a_min_um = 0.3
a_max_um = 1.2
points = 3
temperatures_K = [300.0, 150.0]

[materials]
plate1 = "drude:9.0,0.035"
plate2 = { model = "eps", eps = 100.0 }

[output]
normalize = "force_norm"
asymptotics = true
"#;

#[test]
fn config_run_writes_ordered_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), CONFIG).unwrap();
    let out = sweep(&["--config", "run.toml", "--out", "a.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("a_um,T_K,pw_s,pw_p,ew_s,ew_p,pw_total,ew_total,total,err_total,asym_pw_s"));
    assert!(header.ends_with("asym_valid,status"));
    assert_eq!(csv.lines().count(), 7);
    assert_eq!(columns(&csv, "T_K"), vec![300.0, 300.0, 300.0, 150.0, 150.0, 150.0]);
    assert_eq!(columns(&csv, "a_um")[..3], [0.3, 6.0e-1, 1.2]);
    assert!(!csv.contains('\r'));
    // Nine significant digits.
    assert!(csv.lines().nth(1).unwrap().starts_with("3.00000000e-1,3.00000000e2,"));
}

#[test]
fn flags_override_config_and_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), CONFIG).unwrap();
    let args = ["--config", "run.toml", "--T", "200", "--points", "2", "--material2", "ideal"];
    let a = sweep(&args, dir.path());
    let b = sweep(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = String::from_utf8(a.stdout).unwrap();
    assert_eq!(columns(&csv, "T_K"), vec![200.0, 200.0]);
}

#[test]
fn normalizations_are_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--a-min", "0.4", "--a-max", "2", "--points", "3", "--T", "300"];
    let run = |norm: &str| {
        let mut args = base.to_vec();
        args.extend(["--normalize", norm]);
        let out = sweep(&args, dir.path());
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let (pa, fnorm, ratio) = (run("pascal"), run("force_norm"), run("ratio_T0"));
    let a = columns(&pa, "a_um");
    let lambda_t = thermal_casimir::quantities::thermal_wavelength(300.0).unwrap();
    for col in ["pw_s", "ew_p", "total"] {
        let (p, f, r) = (columns(&pa, col), columns(&fnorm, col), columns(&ratio, col));
        for i in 0..a.len() {
            let norm = thermal_casimir::quantities::force_norm(a[i], 300.0).unwrap();
            assert!((p[i] / norm / f[i] - 1.0).abs() < 1e-8, "{col} {i}");
            assert!((r[i] / (f[i] * 1.163 * a[i] / lambda_t) - 1.0).abs() < 1e-3, "{col} {i}");
        }
    }
}

#[test]
fn oracle_column_tracks_total() {
    let dir = tempfile::tempdir().unwrap();
    let out = sweep(&["--a-min", "0.5", "--a-max", "1", "--points", "2", "--oracle"], dir.path());
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    for (t, o) in columns(&csv, "total").iter().zip(columns(&csv, "oracle_total")) {
        assert!((t - o).abs() < 1e-6, "{t} {o}");
    }
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = [
        (CONFIG.replace("a_min_um = 0.3", "a_min_um = 0.0"), "a_min must be positive"),
        (CONFIG.replace("\"drude:9.0,0.035\"", "{ model = \"drude\", omega_p_eV = 9.0, omega_tau_eV = 0.0 }"), "omega_tau"),
        (CONFIG.replace("points = 3", "points = 3\nspacing = \"log\""), "unknown field"),
        (CONFIG.replace("points = 3", "points = = 3"), "line 5"),
    ];
    for (text, expect) in bad {
        std::fs::write(dir.path().join("bad.toml"), &text).unwrap();
        let out = sweep(&["--config", "bad.toml"], dir.path());
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "{err}");
        assert!(err.contains(expect), "{expect}: {err}");
    }
    let out = sweep(&["--material1", "copper"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = sweep(&["--config", "missing.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = sweep(&["--a-min", "0.3", "--a-max", "0.4", "--points", "2", "--out", "no/such/dir/x.csv"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn lorentz_file_from_command_line() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let out = sweep(&["--a-min", "0.5", "--a-max", "1", "--points", "2", "--material2", "lorentz:lorentz_high_eps_320.toml"], &data);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut n = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = thermal_casimir::sweep::parse_config_in(&text, &dir);
        assert!(spec.is_ok(), "{}: {}", path.display(), spec.unwrap_err());
        n += 1;
    }
    assert_eq!(n, 3);
}

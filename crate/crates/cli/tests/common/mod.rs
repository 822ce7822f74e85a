use std::path::PathBuf;
use std::process::Command;

/// A documented invocation and the golden file holding its output.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "split_g1_b1", args: &["split", "G1.grp", "--basis", "(1,0);(0,1)", "--partition", "1|2"], exit: 0 },
    Case { name: "split_g1_b2", args: &["split", "G1.grp", "--basis", "(1,0);(1,1)"], exit: 0 },
    Case { name: "si_search_g2", args: &["si-search", "G2.grp", "--height", "3"], exit: 0 },
    Case { name: "quotient_g3_a3", args: &["quotient", "G3.grp", "A3.grp"], exit: 0 },
    Case { name: "quasi_eq_divergence", args: &["quasi-eq", "Z2.grp#Z2", "Z2.grp#Zhalf"], exit: 0 },
    Case { name: "commensurable_divergence", args: &["commensurable", "Z2.grp#Z2", "Z2.grp#Zhalf"], exit: 0 },
    Case { name: "regulating_g3", args: &["regulating", "G3.grp", "--height", "4"], exit: 2 },
    Case { name: "jonsson_g3", args: &["jonsson", "G3.grp", "A3_summands.grp"], exit: 0 },
    Case { name: "member_g3", args: &["member", "G3.grp", "(1/27,2/25)", "--oracle"], exit: 0 },
    Case { name: "decompose_g2", args: &["decompose", "G2.grp"], exit: 0 },
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn golden_path(name: &str, json: bool) -> PathBuf {
    let ext = if json { "json" } else { "txt" };
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(format!("{name}.{ext}"))
}

/// Runs `tfa` in the data directory; returns stdout and the exit code.
pub fn run_tfa(args: &[&str], json: bool, threads: usize) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tfa"));
    cmd.current_dir(data_dir()).args(args).arg("--threads").arg(threads.to_string());
    if json {
        cmd.arg("--json");
    }
    let out = cmd.output().expect("tfa runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

/// Compares one case against its golden files, writing them instead when
/// `TFA_UPDATE_GOLDEN` is set.
pub fn check_case(case: &Case, threads: usize) -> Result<(), String> {
    for json in [false, true] {
        let (out, code) = run_tfa(case.args, json, threads);
        if code != case.exit {
            return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        let path = golden_path(case.name, json);
        if std::env::var_os("TFA_UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &out).map_err(|e| e.to_string())?;
            continue;
        }
        let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if want != out {
            return Err(format!(
                "{} ({}): output differs from golden\n--- golden\n{}\n--- actual\n{}",
                case.name,
                if json { "json" } else { "text" },
                String::from_utf8_lossy(&want),
                String::from_utf8_lossy(&out)
            ));
        }
    }
    Ok(())
}

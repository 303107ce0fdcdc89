use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamfvs"))
}

fn dir(name: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const C4: &str = "c four-cycle\np fvs 4 4\nk 1\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

#[test]
fn reduce_then_verify() {
    let d = dir("reduce_then_verify");
    let input = d.join("c4.txt");
    fs::write(&input, C4).unwrap();
    for target in ["4reg-planar", "4reg-planar-ham", "5reg-planar-ham", "preg-ham:6", "ham-ordered:4"] {
        let (out, trace, wit) = (d.join("out.txt"), d.join("trace.json"), d.join("w.txt"));
        let o = run(bin().arg("reduce").arg(&input).args(["--target", target, "-o"]).arg(&out).arg("--trace").arg(&trace));
        assert!(o.status.success(), "{target}: {}", String::from_utf8_lossy(&o.stderr));
        let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(summary["target"], target);

        let v = run(bin().arg("verify").arg(&out).arg("--trace").arg(&trace).arg("--input").arg(&input));
        assert!(v.status.success(), "{target}: {}", String::from_utf8_lossy(&v.stderr));
        let rep: serde_json::Value = serde_json::from_str(stdout(&v).trim()).unwrap();
        assert_eq!(rep["k"], summary["k"]);

        if target != "4reg-planar" {
            let o = run(bin().arg("reduce").arg(&input).args(["--target", target, "-o"]).arg(&out).arg("--witness-out").arg(&wit));
            assert!(o.status.success());
            assert!(fs::read_to_string(&wit).unwrap().starts_with('h'));
        }
    }
}

#[test]
fn output_is_deterministic() {
    let d = dir("deterministic");
    let input = d.join("c4.txt");
    fs::write(&input, C4).unwrap();
    let mut seen = Vec::new();
    for i in 0..2 {
        let (out, trace) = (d.join(format!("o{i}")), d.join(format!("t{i}")));
        let o = run(bin().arg("reduce").arg(&input).args(["--target", "4reg-planar-ham", "-o"]).arg(&out).arg("--trace").arg(&trace));
        assert!(o.status.success());
        seen.push((fs::read(&out).unwrap(), fs::read(&trace).unwrap(), o.stdout));
    }
    assert!(seen[0] == seen[1]);
}

#[test]
fn tampered_output_is_rejected() {
    let d = dir("tampered");
    let input = d.join("c4.txt");
    fs::write(&input, C4).unwrap();
    let (out, trace) = (d.join("out.txt"), d.join("trace.json"));
    assert!(run(bin().arg("reduce").arg(&input).args(["--target", "4reg-planar", "-o"]).arg(&out).arg("--trace").arg(&trace)).status.success());
    let text = fs::read_to_string(&out).unwrap();
    let bad: String = text
        .lines()
        .map(|l| match l.strip_prefix("k ") {
            Some(k) => format!("k {}\n", k.parse::<u64>().unwrap() + 1),
            None => format!("{l}\n"),
        })
        .collect();
    fs::write(&out, bad).unwrap();
    let v = run(bin().arg("verify").arg(&out).arg("--trace").arg(&trace));
    assert_eq!(v.status.code(), Some(4));

    fs::write(&out, text).unwrap();
    let other = d.join("other.txt");
    fs::write(&other, "p fvs 3 3\nk 1\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
    let v = run(bin().arg("verify").arg(&out).arg("--trace").arg(&trace).arg("--input").arg(&other));
    assert_eq!(v.status.code(), Some(4));
}

#[test]
fn solve_prints_optimum() {
    let d = dir("solve");
    let input = d.join("k4.txt");
    fs::write(&input, "p fvs 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
    let o = run(bin().arg("solve").arg(&input));
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("opt 2\ns "), "{s}");
    assert_eq!(s.lines().nth(1).unwrap().split_whitespace().count(), 3);
}

#[test]
fn gadget_check_reports() {
    let o = run(bin().args(["gadget-check", "R"]));
    assert!(o.status.success());
    let rep: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.is_object());
    assert_eq!(run(bin().args(["gadget-check", "Y"])).status.code(), Some(3));
    assert!(run(bin().args(["gadget-check", "Y", "--p", "3"])).status.success());
}

#[test]
fn exit_codes() {
    let d = dir("exit_codes");
    let bad = d.join("loop.txt");
    fs::write(&bad, "p fvs 2 1\ne 1 1\n").unwrap();
    let o = run(bin().arg("solve").arg(&bad));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let k5 = d.join("k5.txt");
    let mut text = String::from("p fvs 5 10\n");
    for i in 1..=5 {
        for j in i + 1..=5 {
            text += &format!("e {i} {j}\n");
        }
    }
    fs::write(&k5, text).unwrap();
    let o = run(bin().arg("reduce").arg(&k5).args(["--target", "4reg-planar", "-o"]).arg(d.join("x")));
    assert_eq!(o.status.code(), Some(3));

    let c4 = d.join("c4.txt");
    fs::write(&c4, C4).unwrap();
    let o = run(bin().arg("reduce").arg(&c4).args(["--target", "nonsense", "-o"]).arg(d.join("x")));
    assert_ne!(o.status.code(), Some(0));
}

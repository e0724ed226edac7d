//! End-to-end runs of the `singosc` binary.

use std::process::{Command, Output};

use singular_oscillator::spectrum::{spectrum_table, Domain};
use singular_oscillator::BetaBranch;

fn singosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singosc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_examples() {
    let o = singosc(&["spectrum", "--alpha", "2", "--n-max", "2", "--domain", "half"]);
    assert_eq!(o.status.code(), Some(0));
    let eps: Vec<f64> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[5].parse().unwrap())
        .collect();
    assert_eq!(eps, [2.5, 4.5, 6.5]);

    let o = singosc(&["spectrum", "--alpha", "0", "--domain", "full", "--n-max", "1"]);
    let rows: Vec<(f64, String)> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[5].parse().unwrap(), r[3].to_string())
        })
        .collect();
    assert_eq!(
        rows,
        [(0.5, "even"), (1.5, "odd"), (2.5, "even"), (3.5, "odd")].map(|(e, p)| (e, p.to_string()))
    );
}

#[test]
fn csv_round_trips_to_full_precision() {
    for (alpha, domain, branch) in [
        (-0.24, "half", None),
        (1.0 / 3.0, "full", None),
        (0.0, "half", Some("minus1")),
        (7.25, "half", None),
    ] {
        let a = alpha.to_string();
        let mut args = vec!["spectrum", "--alpha", &a, "--n-max", "5", "--domain", domain];
        if let Some(b) = branch {
            args.extend(["--beta-branch", b]);
        }
        let o = singosc(&args);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(!text.contains('\r'));
        let d = if domain == "half" { Domain::HalfLine } else { Domain::FullLine };
        let br = branch.map(|_| BetaBranch::MinusOne);
        let table = spectrum_table(alpha, 5, d, br).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(
            reader.headers().unwrap().iter().collect::<Vec<_>>(),
            ["alpha", "domain", "n", "parity", "beta", "eps", "degeneracy"]
        );
        let parsed: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
        let rows = table.rows();
        assert_eq!(parsed.len(), rows.len());
        for (p, r) in parsed.iter().zip(&rows) {
            assert_eq!(p[0].parse::<f64>().unwrap(), r.alpha);
            assert_eq!(&p[1], r.domain.to_string());
            assert_eq!(p[2].parse::<usize>().unwrap(), r.n);
            assert_eq!(&p[3], r.parity.to_string());
            assert_eq!(p[4].parse::<f64>().unwrap(), r.beta);
            assert_eq!(p[5].parse::<f64>().unwrap(), r.eps);
            assert_eq!(p[6].parse::<usize>().unwrap(), r.degeneracy);
        }
    }
}

#[test]
fn json_uses_the_csv_field_names() {
    let o = singosc(&["spectrum", "--alpha", "0.5", "--n-max", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let obj = v[0].as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["alpha", "beta", "degeneracy", "domain", "eps", "n", "parity"]);
    assert_eq!(v[1]["n"], 1);
}

#[test]
fn exit_codes() {
    for alpha in ["-0.3", "-0.25", "-1e3"] {
        let o = singosc(&["spectrum", "--alpha", alpha]);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("alpha <= -1/4"));
    }
    assert_eq!(singosc(&["spectrum", "--alpha"]).status.code(), Some(1));
    assert_eq!(singosc(&["spectrum", "--alpha", "1", "--n-max", "-2"]).status.code(), Some(1));
    assert_eq!(singosc(&["spectrum", "--alpha", "1", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(singosc(&["figure", "7"]).status.code(), Some(1));
    assert_eq!(singosc(&["radial", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(singosc(&["spectrum", "--alpha", "1", "--mass", "-1"]).status.code(), Some(1));
    assert_eq!(singosc(&["--version"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wf.csv");
    let p = path.to_str().unwrap();
    let o = singosc(&["wavefunction", "--alpha", "3", "--n", "0", "--xi-points", "101", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<f64>> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0][1], 0.0);
    // one interior maximum
    let psi: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let peaks = psi.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
    assert_eq!(peaks, 1);
    for r in &rows {
        assert_eq!(r[2], r[1] * r[1]);
    }
}

#[test]
fn wavefunction_examples() {
    let read = |args: &[&str]| -> Vec<Vec<f64>> {
        let o = singosc(args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        csv::Reader::from_reader(o.stdout.as_slice())
            .records()
            .map(|r| r.unwrap().iter().map(|c| c.parse().unwrap()).collect())
            .collect()
    };
    // steep rise: the slope between the first samples exceeds any later one
    let steep = read(&["wavefunction", "--alpha", "-0.249", "--xi-max", "0.01", "--xi-points", "11"]);
    let slopes: Vec<f64> = steep.windows(2).map(|w| (w[1][1] - w[0][1]) / (w[1][0] - w[0][0])).collect();
    assert!(slopes[0] > 5.0 * slopes[9]);

    let gauss = read(&["wavefunction", "--alpha", "0", "--beta-branch", "minus1", "--xi-points", "51"]);
    assert!(gauss[0][1] > 0.0);
    let c = gauss[0][1];
    for r in &gauss {
        assert!((r[1] - c * (-0.5 * r[0] * r[0]).exp()).abs() < 1e-14);
    }
}

#[test]
fn radial_and_verify() {
    let o = singosc(&["radial", "--alpha", "0.5", "--l", "0", "--n-max", "3"]);
    let radial: Vec<f64> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[7].parse().unwrap())
        .collect();
    let o = singosc(&["spectrum", "--alpha", "0.5", "--n-max", "3"]);
    let plain: Vec<f64> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[5].parse().unwrap())
        .collect();
    assert_eq!(radial, plain);

    let o = singosc(&["verify", "--suite", "oracle", "--alpha", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let shooting = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "shooting alpha = 2").unwrap();
    assert!(shooting["value"].as_f64().unwrap() <= 1e-4);

    let o = singosc(&["verify", "--suite", "oracle", "--alpha", "2", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_all_is_quick() {
    let start = std::time::Instant::now();
    let o = singosc(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn figures_emit_csv() {
    let o = singosc(&["figure", "1"]);
    let text = stdout(&o);
    assert!(text.starts_with("alpha,x,v\n"));
    assert!(text.contains("\n0,1,0.5\n"));
    let o = singosc(&["figure", "2", "--alpha-points", "11", "--n-max", "1"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 11 * 2 + 2);
    let o = singosc(&["figure", "3", "--hbar", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    approx::assert_relative_eq!(v[1]["x"].as_f64().unwrap(), v[1]["xi"].as_f64().unwrap() * 2f64.sqrt(), max_relative = 1e-15);
}

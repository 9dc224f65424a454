use std::fs;
use std::process::{Command, Output};

fn tridiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tridiag"))
        .args(args)
        .env_remove("TRIDIAG_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn charpoly_rendering() {
    let o = tridiag(&["charpoly", "7", "--unicode"]);
    assert_eq!(stdout(&o), "-λ^7 + 6λ^5 - 10λ^3 + 4λ\n");
    assert_eq!(stdout(&tridiag(&["charpoly", "1"])), "-x\n");
    for method in ["recurrence", "closed", "oracle"] {
        let o = tridiag(&["charpoly", "4", "--method", method]);
        assert_eq!(stdout(&o), "x^4 - 3x^2 + 1\n", "{method}");
    }
}

#[test]
fn charpoly_argument_errors() {
    assert_eq!(tridiag(&["charpoly", "0"]).status.code(), Some(2));
    let o = tridiag(&["charpoly", "33", "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("32"));
    assert_eq!(tridiag(&["charpoly", "-3"]).status.code(), Some(2));
    assert_eq!(tridiag(&["charpoly"]).status.code(), Some(2));
    assert_eq!(tridiag(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn help_and_version_everywhere() {
    for sub in [
        "charpoly",
        "verify",
        "eigs",
        "contain",
        "fib-roots",
        "scan",
        "extrema",
    ] {
        let o = tridiag(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        let o = tridiag(&[sub, "--version"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains(env!("CARGO_PKG_VERSION")), "{sub}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = tridiag(&["verify", "--max-n", "200", "--oracle-max", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("200/200"));
    assert_eq!(tridiag(&["verify", "--max-n", "1"]).status.code(), Some(0));
    assert_eq!(tridiag(&["verify", "--max-n", "0"]).status.code(), Some(2));

    let o = tridiag(&["verify", "--max-n", "20", "--inject-fault", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(
        msg.contains("n=9") && msg.contains("coefficient 9"),
        "{msg}"
    );
}

#[test]
fn eigs_tables() {
    let o = tridiag(&["eigs", "4", "--digits", "5"]);
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().last().unwrap().to_string())
        .collect();
    assert_eq!(values, ["1.61803", "0.61803", "-0.61803", "-1.61803"]);

    let o = tridiag(&["eigs", "1"]);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("0.00000"));

    let o = tridiag(&["eigs", "5", "--digits", "5"]);
    let text = stdout(&o);
    for v in ["1.73205", "-1.73205", " 1.00000", "-1.00000", " 0.00000"] {
        assert!(text.contains(v), "{v} missing from {text}");
    }
    assert!(!text.contains("-0.00000"));

    let o = tridiag(&["eigs", "3", "--csv"]);
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s,angle_num,angle_den,value"));
    assert_eq!(lines.nth(1), Some("2,1,2,0.0"));
    assert_eq!(
        tridiag(&["eigs", "3", "--digits", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn contain_exit_codes() {
    let o = tridiag(&["contain", "4", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("k=1") && text.contains("map 1->2 2->4 3->6 4->8"),
        "{text}"
    );

    let o = tridiag(&["contain", "4", "44"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k=8"));

    let o = tridiag(&["contain", "4", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("condition not met: (n-m) mod (m+1) = 1"));
    assert_eq!(tridiag(&["contain", "6", "3"]).status.code(), Some(3));
    assert_eq!(tridiag(&["contain", "0", "3"]).status.code(), Some(2));
}

#[test]
fn fib_roots_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("roots.csv");
    let svg = dir.path().join("roots.svg");
    let o = tridiag(&[
        "fib-roots",
        "12",
        "--ellipse",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let disc: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("discriminant="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(disc < 0.0);

    let data = fs::read_to_string(&csv).unwrap();
    assert!(data.starts_with("re,im,residual\n"));
    assert_eq!(data.lines().count(), 13);
    assert!(!data.contains('\r'));

    let doc = fs::read_to_string(&svg).unwrap();
    let xml = roxmltree::Document::parse(&doc).expect("well-formed SVG");
    let markers = xml
        .descendants()
        .filter(|n| n.has_tag_name("circle"))
        .count();
    assert_eq!(markers, 12);
}

#[test]
fn fib_roots_precision_and_errors() {
    let o = tridiag(&["fib-roots", "29", "--precision", "256", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let reals: Vec<f64> = csv
        .lines()
        .skip(1)
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let im: f64 = f[1].parse().unwrap();
            (im.abs() < 1e-20).then(|| f[0].parse().unwrap())
        })
        .collect();
    assert_eq!(reals.len(), 1);
    assert!((reals[0] + 2.20796).abs() < 5e-6);

    assert_eq!(
        tridiag(&["fib-roots", "12", "--precision", "40"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tridiag(&["fib-roots", "12", "--perturbed"]).status.code(),
        Some(2)
    );
    assert_eq!(tridiag(&["fib-roots", "0"]).status.code(), Some(2));

    let o = tridiag(&["fib-roots", "29", "--perturbed", "--ellipse"]);
    assert!(stdout(&o).contains("classification=not ellipse"));
}

#[test]
fn precision_from_environment() {
    let run = |bits: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tridiag"));
        cmd.args(["extrema", "3", "--csv"]);
        match bits {
            Some(b) => cmd.env("TRIDIAG_PRECISION_BITS", b),
            None => cmd.env_remove("TRIDIAG_PRECISION_BITS"),
        };
        stdout(&cmd.output().unwrap())
    };
    let short = run(Some("64"));
    let long = run(None);
    let width = |s: &str| s.lines().nth(1).unwrap().len();
    assert!(width(&short) < width(&long), "{short}\n{long}");
    assert_eq!(run(Some("256")), long);
}

#[test]
fn scan_reports() {
    let o = tridiag(&["scan", "--from", "12", "--to", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row[0], "12");
    assert_eq!(row[1], "2");

    let o = tridiag(&["scan", "--from", "29", "--to", "29", "--csv"]);
    let csv = stdout(&o);
    let f: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(f[1], "1");
    assert!((f[2].parse::<f64>().unwrap() + 2.20796).abs() < 5e-6);

    let o = tridiag(&["scan", "--from", "4", "--to", "40"]);
    assert!(stdout(&o).contains("violations: none"));
    assert_eq!(
        tridiag(&["scan", "--from", "9", "--to", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn extrema_rows() {
    let o = tridiag(&["extrema", "2", "--csv"]);
    assert_eq!(stdout(&o), "lambda,f_value\n0,-1e0\n");

    let o = tridiag(&["extrema", "4", "--csv"]);
    let rows: Vec<(f64, f64)> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let r = 1.5f64.sqrt();
    assert_eq!(rows.len(), 3);
    assert!((rows[0].0 + r).abs() < 1e-15 && rows[1].0 == 0.0 && (rows[2].0 - r).abs() < 1e-15);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = tridiag(&["extrema", "20", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 20);
    assert_eq!(tridiag(&["extrema", "1"]).status.code(), Some(2));
}

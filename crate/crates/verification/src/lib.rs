//! Helpers for the acceptance suite in `tests/acceptance.rs`.

use std::collections::BTreeMap;
use std::io::Write;

/// Exit code and captured output of one in-process `tridiag` invocation.
pub struct CliRun {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl CliRun {
    pub fn stdout_text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }
}

/// Runs the command line with `args` (without the program name).
pub fn tridiag(args: &[&str]) -> CliRun {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("tridiag").chain(args.iter().copied());
    let code = tridiag_cli::run(argv, &mut stdout, &mut stderr);
    CliRun {
        code,
        stdout,
        stderr,
    }
}

/// Prints a `[PASS]`/`[FAIL]` line with notes and failures straight to the
/// stderr handle, which the test harness does not capture, then asserts.
pub fn verdict(id: u32, title: &str, notes: &[String], failures: &[String]) {
    let tag = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "[{tag}] criterion {id:>2}: {title}");
    for n in notes {
        let _ = writeln!(err, "         {n}");
    }
    for f in failures.iter().take(12) {
        let _ = writeln!(err, "         failure: {f}");
    }
    if failures.len() > 12 {
        let _ = writeln!(err, "         ... {} more", failures.len() - 12);
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

/// Parses `-x^7 + 6x^5 - 10x^3 + 4x` into power -> coefficient.
pub fn parse_rendered(text: &str) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    let text = text.trim();
    let (mut sign, mut rest) = match text.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, text),
    };
    loop {
        let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
            (None, None) => (rest, None),
            (a, b) => {
                let at = a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX));
                let s = if rest[at..].starts_with(" + ") { 1 } else { -1 };
                (&rest[..at], Some((s, &rest[at + 3..])))
            }
        };
        let (coef, power) = match term.split_once('x') {
            None => (term.parse::<i64>().unwrap(), 0),
            Some((c, p)) => {
                let c = if c.is_empty() { 1 } else { c.parse().unwrap() };
                let p = if p.is_empty() {
                    1
                } else {
                    p.trim_start_matches('^').parse().unwrap()
                };
                (c, p)
            }
        };
        out.insert(power, sign * coef);
        match next {
            Some((s, r)) => {
                sign = s;
                rest = r;
            }
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_polynomials() {
        let got = parse_rendered("-x^7 + 6x^5 - 10x^3 + 4x\n");
        let want: BTreeMap<usize, i64> = [(7, -1), (5, 6), (3, -10), (1, 4)].into_iter().collect();
        assert_eq!(got, want);
        let got = parse_rendered("x^2 - 1");
        assert_eq!(got, [(2, 1), (0, -1)].into_iter().collect());
        assert_eq!(parse_rendered("-x"), [(1, -1)].into_iter().collect());
    }

    #[test]
    fn in_process_run() {
        let r = tridiag(&["charpoly", "2"]);
        assert_eq!((r.code, r.stdout_text()), (0, "x^2 - 1\n".to_string()));
        assert_eq!(tridiag(&["charpoly", "0"]).code, 2);
        assert!(!tridiag(&["contain", "4", "10"]).stderr.is_empty());
    }
}

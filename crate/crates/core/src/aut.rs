//! Plain-text automaton format.
//!
//! ```text
//! # optional comment lines
//! 3 2
//! 1 0 1
//! 2 2 1
//! ```
//!
//! The header gives the state count `n` and letter count `k`; each following
//! line is the image row of one letter. Letters take default names `a`,
//! `b`, ... in order. Blank lines and lines starting with `#` are ignored.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| {
                parse_err(
                    line,
                    format!("expected a non-negative integer, found {tok:?}"),
                )
            })
        })
        .collect()
}

pub fn parse_aut(text: &str) -> Result<Automaton> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let (hline, header) = data
        .next()
        .ok_or_else(|| parse_err(last_line, "missing header `n k`"))?;
    let (n, k) = match numbers(hline, header)?.as_slice() {
        &[n, k] => (n, k),
        _ => return Err(parse_err(hline, "header must be two integers `n k`")),
    };
    if n == 0 {
        return Err(parse_err(hline, "state count must be positive"));
    }
    if k == 0 {
        return Err(parse_err(hline, "letter count must be positive"));
    }

    let mut letters = Vec::with_capacity(k);
    for i in 0..k {
        let (line, row) = data
            .next()
            .ok_or_else(|| parse_err(last_line, format!("expected {k} letter rows, found {i}")))?;
        let row = numbers(line, row)?;
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        if let Some(&bad) = row.iter().find(|&&q| q >= n) {
            return Err(parse_err(
                line,
                format!("entry {bad} is not a state in 0..{n}"),
            ));
        }
        letters.push(Transformation::new(row).map_err(|e| parse_err(line, e.to_string()))?);
    }
    if let Some((line, _)) = data.next() {
        return Err(parse_err(
            line,
            format!("unexpected data after {k} letter rows"),
        ));
    }
    Automaton::new(letters)
}

pub fn render_aut(automaton: &Automaton) -> String {
    let mut out = format!("{} {}\n", automaton.n(), automaton.letter_count());
    for f in automaton.letters() {
        let row: Vec<String> = f.image().iter().map(|q| q.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_fixture_automata() {
        assert_eq!(
            parse_aut("3 2\n1 0 1\n2 2 1\n").unwrap(),
            fixtures::nonprimitive_sync_3()
        );
        assert_eq!(
            parse_aut("# primitive, not synchronizing\n5 3\n3 0 3 4 0\n2 4 0 3 1\n0 2 1 3 4\n")
                .unwrap(),
            fixtures::primitive_nonsync_5b()
        );
        let single = parse_aut("1 1\n0\n").unwrap();
        assert_eq!(single.n(), 1);
        assert!(single.letters()[0].is_identity());
    }

    #[test]
    fn round_trips() {
        for a in [
            fixtures::almost_group_5(),
            fixtures::primitive_nonsync_5a(),
            fixtures::cerny(7),
        ] {
            assert_eq!(parse_aut(&render_aut(&a)).unwrap(), a);
        }
    }

    fn error_line(text: &str) -> usize {
        match parse_aut(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(error_line(""), 1);
        assert_eq!(error_line("3\n"), 1);
        assert_eq!(error_line("# c\n3 0\n"), 2);
        assert_eq!(error_line("3 2\n1 0 1\n2 2\n"), 3);
        assert_eq!(error_line("3 2\n1 0 3\n2 2 1\n"), 2);
        assert_eq!(error_line("3 1\n1 0 x\n"), 2);
        assert_eq!(error_line("3 2\n1 0 1\n"), 2);
        assert_eq!(error_line("2 1\n0 1\n1 0\n"), 3);
    }
}

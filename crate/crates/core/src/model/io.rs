//! Text formats.
//!
//! Point file: `d U n`, then `n` lines of `d` integers.
//! Sequence file: `n c`, then `n` integers (whitespace separated).
//! String file: `n alphabet`, then the string of digits on one line.

use super::PointSet;
use crate::error::{Error, Result};
use std::fmt::Write as _;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn numbers<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| parse_err(line, format!("bad integer {t:?}"))))
        .collect()
}

fn header<'a, const K: usize>(it: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<[u64; K]> {
    let (ln, h) = it.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let v: Vec<u64> = numbers(ln, h)?;
    v.try_into().map_err(|_| parse_err(ln, format!("header needs {K} integers")))
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut it = lines(text);
    let [d, u, n] = header::<3>(&mut it)?;
    if d == 0 {
        return Err(parse_err(1, "dimension must be at least 1"));
    }
    let mut coords = Vec::with_capacity((n * d) as usize);
    let mut last = 1;
    for _ in 0..n {
        let (ln, l) = it.next().ok_or_else(|| parse_err(last + 1, format!("expected {n} points")))?;
        let p: Vec<u64> = numbers(ln, l)?;
        if p.len() as u64 != d {
            return Err(parse_err(ln, format!("expected {d} coordinates, found {}", p.len())));
        }
        if let Some(&x) = p.iter().find(|&&x| x >= u) {
            return Err(parse_err(ln, format!("coordinate {x} outside universe {u}")));
        }
        coords.extend(p);
        last = ln;
    }
    if let Some((ln, _)) = it.next() {
        return Err(parse_err(ln, "trailing data after last point"));
    }
    PointSet::from_flat(d as usize, u, coords)
}

pub fn format_points(s: &PointSet) -> String {
    let mut out = format!("{} {} {}\n", s.dim(), s.universe(), s.len());
    for p in s.iter() {
        let row: Vec<String> = p.iter().map(u64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_sequence(text: &str) -> Result<(Vec<i64>, u64)> {
    let mut it = lines(text);
    let [n, c] = header::<2>(&mut it)?;
    let mut vals = Vec::with_capacity(n as usize);
    for (ln, l) in it {
        vals.extend(numbers::<i64>(ln, l)?);
    }
    if vals.len() as u64 != n {
        return Err(parse_err(1, format!("header announces {n} values, found {}", vals.len())));
    }
    Ok((vals, c))
}

pub fn format_sequence(vals: &[i64], c: u64) -> String {
    let mut out = format!("{} {}\n", vals.len(), c);
    for v in vals {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn parse_string(text: &str) -> Result<(Vec<u8>, usize)> {
    let mut it = lines(text);
    let [n, alphabet] = header::<2>(&mut it)?;
    if !(1..=10).contains(&alphabet) {
        return Err(parse_err(1, "alphabet must be between 1 and 10"));
    }
    let body = match it.next() {
        Some((ln, l)) => (ln, l),
        None if n == 0 => (2, ""),
        None => return Err(parse_err(2, "missing string line")),
    };
    let mut s = Vec::with_capacity(n as usize);
    for ch in body.1.chars() {
        match ch.to_digit(10) {
            Some(v) if (v as u64) < alphabet => s.push(v as u8),
            _ => return Err(Error::InvalidSymbol { symbol: ch, alphabet: alphabet as usize }),
        }
    }
    if s.len() as u64 != n {
        return Err(parse_err(body.0, format!("header announces length {n}, found {}", s.len())));
    }
    Ok((s, alphabet as usize))
}

pub fn format_string(s: &[u8], alphabet: usize) -> String {
    let body: String = s.iter().map(|&c| char::from(b'0' + c)).collect();
    format!("{} {}\n{}\n", s.len(), alphabet, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let s = PointSet::new(2, 10, [[1, 2], [3, 4]]).unwrap();
        let text = format_points(&s);
        assert_eq!(text, "2 10 2\n1 2\n3 4\n");
        assert_eq!(parse_points(&text).unwrap(), s);
    }

    #[test]
    fn points_errors() {
        assert!(matches!(parse_points("2 10 1\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_points("1 4 1\n9\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_points("1 4 2\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_points("x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn sequence_and_string_round_trip() {
        let t = format_sequence(&[0, -1, 4], 2);
        assert_eq!(parse_sequence(&t).unwrap(), (vec![0, -1, 4], 2));
        let t = format_string(&[0, 1, 1, 0], 2);
        assert_eq!(t, "4 2\n0110\n");
        assert_eq!(parse_string(&t).unwrap(), (vec![0, 1, 1, 0], 2));
        assert!(matches!(parse_string("2 2\n02\n"), Err(Error::InvalidSymbol { symbol: '2', .. })));
    }
}

//! Lattice description files.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! name MO2
//! elements 0 a a' b b' 1
//! leq 0 a
//! leq a 1
//! perp a a'
//! ```
//!
//! `leq` lines give a generating relation whose reflexive-transitive closure is
//! taken; `perp` lines are symmetric. Bottom and top are inferred from the
//! order. Files ending in `.json` use the mirror
//! `{"name": .., "elements": [..], "leq": [[a, b], ..], "perp": {a: b, ..}}`.

use super::{transitive_closure, Elem, LatticeError, Oml, DEFAULT_MAX_ELEMENTS, HARD_MAX_ELEMENTS};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("line {line}: undeclared element `{label}`")]
    Undeclared { line: usize, label: String },
    #[error("line {line}: element `{label}` declared twice")]
    Duplicate { line: usize, label: String },
    #[error("perp is not a total map: `{0}` has no orthocomplement")]
    PerpNotTotal(String),
    #[error("line {line}: conflicting perp for `{label}`: `{first}` and `{second}`")]
    PerpConflict {
        line: usize,
        label: String,
        first: String,
        second: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("invalid JSON lattice: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_elements: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

/// Collected declarations before the order is closed.
#[derive(Default)]
struct Decl {
    name: Option<String>,
    labels: Vec<String>,
    leq: Vec<(usize, usize, usize)>,
    perp: Vec<(usize, usize, usize)>,
}

impl Decl {
    fn index(&self, line: usize, label: &str) -> Result<Elem, ParseError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ParseError::Undeclared {
                line,
                label: label.to_string(),
            })
    }

    fn build(self, opts: ParseOptions) -> Result<Oml, ParseError> {
        let n = self.labels.len();
        if n == 0 {
            return Err(LatticeError::Empty.into());
        }
        let max = opts.max_elements.min(HARD_MAX_ELEMENTS);
        if n > max {
            return Err(LatticeError::TooLarge { n, max }.into());
        }
        let mut rel = vec![vec![false; n]; n];
        for &(_, a, b) in &self.leq {
            rel[a][b] = true;
        }
        transitive_closure(&mut rel);

        let mut perp: Vec<Option<Elem>> = vec![None; n];
        for &(line, a, b) in &self.perp {
            for (x, y) in [(a, b), (b, a)] {
                match perp[x] {
                    Some(prev) if prev != y => {
                        return Err(ParseError::PerpConflict {
                            line,
                            label: self.labels[x].clone(),
                            first: self.labels[prev].clone(),
                            second: self.labels[y].clone(),
                        })
                    }
                    _ => perp[x] = Some(y),
                }
            }
        }
        let perp = perp
            .iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| ParseError::PerpNotTotal(self.labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let name = self.name.unwrap_or_else(|| "unnamed".to_string());
        Ok(Oml::from_order(name, self.labels, &rel, perp)?)
    }
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && c != '#'
}

/// Parse the line-oriented text format with default options.
pub fn parse_lattice(text: &str) -> Result<Oml, ParseError> {
    parse_lattice_with(text, ParseOptions::default())
}

pub fn parse_lattice_with(text: &str, opts: ParseOptions) -> Result<Oml, ParseError> {
    let mut decl = Decl::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = Vec::new();
        let mut chars = content.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !is_label_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            words.push((start + 1, &content[start..end]));
        }
        let Some(&(col, keyword)) = words.first() else {
            continue;
        };
        let args = &words[1..];
        let arity = |want: usize| -> Result<(), ParseError> {
            if args.len() == want {
                Ok(())
            } else {
                let col = args.get(want).map_or(content.trim_end().len() + 1, |a| a.0);
                Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("`{keyword}` takes {want} argument(s), found {}", args.len()),
                })
            }
        };
        match keyword {
            "name" => {
                if args.is_empty() {
                    return Err(ParseError::Syntax {
                        line,
                        col: content.trim_end().len() + 1,
                        msg: "`name` needs a value".into(),
                    });
                }
                let start = args[0].0 - 1;
                decl.name = Some(content[start..].trim().to_string());
            }
            "elements" => {
                if args.is_empty() {
                    return Err(ParseError::Syntax {
                        line,
                        col: content.trim_end().len() + 1,
                        msg: "`elements` needs at least one label".into(),
                    });
                }
                for &(_, label) in args {
                    if decl.labels.iter().any(|l| l == label) {
                        return Err(ParseError::Duplicate {
                            line,
                            label: label.to_string(),
                        });
                    }
                    decl.labels.push(label.to_string());
                }
            }
            "leq" => {
                arity(2)?;
                let a = decl.index(line, args[0].1)?;
                let b = decl.index(line, args[1].1)?;
                decl.leq.push((line, a, b));
            }
            "perp" => {
                arity(2)?;
                let a = decl.index(line, args[0].1)?;
                let b = decl.index(line, args[1].1)?;
                decl.perp.push((line, a, b));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    decl.build(opts)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonLattice {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
    perp: BTreeMap<String, String>,
}

/// Parse the JSON mirror of the text format.
pub fn parse_lattice_json(text: &str, opts: ParseOptions) -> Result<Oml, ParseError> {
    let doc: JsonLattice = serde_json::from_str(text)?;
    let mut decl = Decl {
        name: doc.name,
        ..Decl::default()
    };
    for label in doc.elements {
        if decl.labels.contains(&label) {
            return Err(ParseError::Duplicate { line: 0, label });
        }
        decl.labels.push(label);
    }
    for (a, b) in &doc.leq {
        let (a, b) = (decl.index(0, a)?, decl.index(0, b)?);
        decl.leq.push((0, a, b));
    }
    for (a, b) in &doc.perp {
        let (a, b) = (decl.index(0, a)?, decl.index(0, b)?);
        decl.perp.push((0, a, b));
    }
    decl.build(opts)
}

/// Read a lattice file, choosing the format from the extension.
pub fn parse_lattice_file(path: &Path, opts: ParseOptions) -> Result<Oml, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_lattice_json(&text, opts)
    } else {
        parse_lattice_with(&text, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MO2: &str = "\
# the smallest non-Boolean orthomodular lattice
name MO2
elements 0 a a' b b' 1
leq 0 a
leq 0 a'
leq 0 b
leq 0 b'
leq a 1
leq a' 1
leq b 1
leq b' 1
perp a a'
perp b b'
perp 0 1
";

    #[test]
    fn parses_mo2() {
        let l = parse_lattice(MO2).unwrap();
        assert_eq!(l.name(), "MO2");
        assert_eq!(l.len(), 6);
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(a, b), l.bot());
        assert_eq!(l.label(l.bot()), "0");
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn two_chain() {
        let l = parse_lattice("elements 0 1\nleq 0 1\nperp 0 1\n").unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.leq(0, 1) && !l.leq(1, 0));
        assert_eq!(l.perp(0), 1);
    }

    #[test]
    fn relabeled_square_is_a_lattice() {
        let l = parse_lattice(
            "elements 0 a b 1\nleq 0 a\nleq 0 b\nleq a 1\nleq b 1\nperp a b\nperp 0 1",
        )
        .unwrap();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        assert_eq!(l.meet(a, b), l.bot());
        assert_eq!(l.join(a, b), l.top());
        assert!(super::super::validate_oml(&l).all_pass());
    }

    #[test]
    fn bottom_and_top_are_inferred() {
        let l = parse_lattice("elements 1 x 0\nleq 0 x\nleq x 1\nperp 0 1\nperp x x").unwrap();
        assert_eq!(l.label(l.bot()), "0");
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_lattice("elements 0 1\nleq 0\n").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e}"),
        }
        let err = parse_lattice("elements 0 1\n  bogus 0 1\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Syntax {
                line: 2,
                col: 3,
                ..
            }
        ));
    }

    #[test]
    fn undeclared_and_duplicate() {
        assert!(matches!(
            parse_lattice("elements 0 1\nleq 0 z\n"),
            Err(ParseError::Undeclared { line: 2, .. })
        ));
        assert!(matches!(
            parse_lattice("elements 0 1 0\n"),
            Err(ParseError::Duplicate { .. })
        ));
    }

    #[test]
    fn perp_must_be_total_and_consistent() {
        assert!(matches!(
            parse_lattice("elements 0 a 1\nleq 0 a\nleq a 1\nperp 0 1\n"),
            Err(ParseError::PerpNotTotal(l)) if l == "a"
        ));
        assert!(matches!(
            parse_lattice("elements 0 a 1\nperp 0 1\nperp a 1\n"),
            Err(ParseError::PerpConflict { .. })
        ));
    }

    #[test]
    fn cycles_are_not_partial_orders() {
        let err =
            parse_lattice("elements 0 a b 1\nleq a b\nleq b a\nperp 0 1\nperp a b").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Lattice(LatticeError::NotAntisymmetric(_, _))
        ));
    }

    #[test]
    fn non_lattice_reports_two_maximal_lower_bounds() {
        // a, b both below c and d, nothing between: c ∧ d is ambiguous
        let text = "elements 0 a b c d 1\nleq 0 a\nleq 0 b\nleq a c\nleq a d\nleq b c\nleq b d\nleq c 1\nleq d 1\nperp 0 1\nperp a d\nperp b c";
        match parse_lattice(text).unwrap_err() {
            ParseError::Lattice(LatticeError::NotLattice { kind, x, y, .. }) => {
                assert_eq!(kind, "meet");
                let mut w = [x, y];
                w.sort();
                assert_eq!(w, ["a".to_string(), "b".to_string()]);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn size_limit() {
        let labels: Vec<String> = (0..70).map(|i| format!("e{i}")).collect();
        let text = format!("elements {}\n", labels.join(" "));
        let err = parse_lattice(&text).unwrap_err();
        assert!(matches!(
            err,
            ParseError::Lattice(LatticeError::TooLarge { n: 70, max: 64 })
        ));
    }

    #[test]
    fn json_mirror_matches_text() {
        let json = r#"{"name":"MO2","elements":["0","a","a'","b","b'","1"],
            "leq":[["0","a"],["0","a'"],["0","b"],["0","b'"],["a","1"],["a'","1"],["b","1"],["b'","1"]],
            "perp":{"a":"a'","b":"b'","0":"1"}}"#;
        let from_json = parse_lattice_json(json, ParseOptions::default()).unwrap();
        let from_text = parse_lattice(MO2).unwrap();
        assert_eq!(from_json, from_text);
    }
}

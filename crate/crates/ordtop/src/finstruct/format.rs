//! Canonical text and JSON encodings of finite structures.
//!
//! ```text
//! # Sierpinski space with its specialization order
//! points: a b
//! opens: {}, {b}, {a b}
//! order: a<=b
//! relation: a->a, a->b, b->b
//! ```
//!
//! `order` lists generating pairs and is closed reflexively and transitively;
//! `relation` is taken verbatim.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::topology::{validate_topology, TopologyError};
use super::{Carrier, FinQoset, FinTopology, PointSet, Relation, SetFamily, MAX_POINTS};

/// Parsed structure: a carrier with whatever components the input declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub carrier: Carrier,
    pub topology: Option<FinTopology>,
    pub order: Option<FinQoset>,
    pub relation: Option<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn at(pos: &Option<Pos>) -> String {
    pos.map(|p| format!("{p}: ")).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{}unknown label `{label}`", at(.pos))]
    UnknownLabel { pos: Option<Pos>, label: String },
    #[error("{}duplicate label `{label}`", at(.pos))]
    DuplicateLabel { pos: Option<Pos>, label: String },
    #[error("{}invalid label `{label}`", at(.pos))]
    BadLabel { pos: Option<Pos>, label: String },
    #[error("{}section `{section}` given twice", at(.pos))]
    DuplicateSection { pos: Option<Pos>, section: String },
    #[error("no `points` declaration")]
    MissingPoints,
    #[error("{n} points exceed the limit of {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("{}family is not a topology: {source}", at(.pos))]
    NotATopology { pos: Option<Pos>, source: TopologyError },
    #[error("invalid JSON: {0}")]
    Json(String),
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: src.chars().enumerate().map(|(k, c)| (col0 + k, c)).collect(),
            i: 0,
            line,
            _src: src,
        }
    }

    fn pos(&self) -> Pos {
        let column = self
            .chars
            .get(self.i)
            .map(|&(c, _)| c)
            .unwrap_or_else(|| self.chars.last().map(|&(c, _)| c + 1).unwrap_or(1));
        Pos {
            line: self.line,
            column,
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.i), Some((_, c)) if c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.i >= self.chars.len()
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let pos = self.pos();
        for want in s.chars() {
            if self.peek() != Some(want) {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("expected `{s}`"),
                });
            }
            self.i += 1;
        }
        Ok(())
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> Result<(String, Pos), ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.i;
        while matches!(self.peek(), Some(c) if super::carrier::is_label(&c.to_string())) {
            self.i += 1;
        }
        if start == self.i {
            let message = match self.peek() {
                Some(c) => format!("expected a label, found `{c}`"),
                None => "expected a label".to_string(),
            };
            return Err(ParseError::Syntax { pos, message });
        }
        Ok((self.chars[start..self.i].iter().map(|&(_, c)| c).collect(), pos))
    }
}

fn resolve(carrier: &Carrier, label: &str, pos: Pos) -> Result<usize, ParseError> {
    carrier.index_of(label).ok_or(ParseError::UnknownLabel {
        pos: Some(pos),
        label: label.to_string(),
    })
}

fn parse_pairs(cur: &mut Cursor, carrier: &Carrier, arrow: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        let (l, lp) = cur.label()?;
        cur.expect(arrow)?;
        let (r, rp) = cur.label()?;
        out.push((resolve(carrier, &l, lp)?, resolve(carrier, &r, rp)?));
        if cur.at_end() {
            return Ok(out);
        }
        cur.expect(",")?;
    }
}

fn parse_sets(cur: &mut Cursor, carrier: &Carrier) -> Result<Vec<PointSet>, ParseError> {
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        cur.expect("{")?;
        let mut s = PointSet::EMPTY;
        while !cur.eat('}') {
            if cur.at_end() {
                return Err(ParseError::Syntax {
                    pos: cur.pos(),
                    message: "unclosed `{`".into(),
                });
            }
            let (l, lp) = cur.label()?;
            s.insert(resolve(carrier, &l, lp)?);
        }
        out.push(s);
        if cur.at_end() {
            return Ok(out);
        }
        cur.expect(",")?;
    }
}

/// Parse the canonical text format.
pub fn parse_structure(text: &str) -> Result<Structure, ParseError> {
    let mut carrier: Option<Carrier> = None;
    let mut opens: Option<(Vec<PointSet>, Pos)> = None;
    let mut order: Option<Vec<(usize, usize)>> = None;
    let mut relation: Option<Vec<(usize, usize)>> = None;
    let mut seen: Vec<&str> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let column = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(ParseError::Syntax {
                pos: Pos { line, column },
                message: "expected `key: value`".into(),
            });
        };
        let key = body[..colon].trim();
        let key_col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let key_pos = Pos { line, column: key_col };
        let rest = &body[colon + 1..];
        let col0 = body[..colon + 1].chars().count() + 1;
        let mut cur = Cursor::new(rest, line, col0);
        let section = match key {
            "points" | "opens" | "order" | "relation" => key,
            _ => {
                return Err(ParseError::Syntax {
                    pos: key_pos,
                    message: format!("unknown section `{key}`"),
                })
            }
        };
        if seen.contains(&section) {
            return Err(ParseError::DuplicateSection {
                pos: Some(key_pos),
                section: section.to_string(),
            });
        }
        seen.push(section);
        if section == "points" {
            let mut names = Vec::new();
            while !cur.at_end() {
                let (l, p) = cur.label()?;
                if names.contains(&l) {
                    return Err(ParseError::DuplicateLabel { pos: Some(p), label: l });
                }
                names.push(l);
            }
            if names.is_empty() {
                return Err(ParseError::Syntax {
                    pos: cur.pos(),
                    message: "no points declared".into(),
                });
            }
            if names.len() > MAX_POINTS {
                return Err(ParseError::TooManyPoints {
                    n: names.len(),
                    max: MAX_POINTS,
                });
            }
            carrier = Some(Carrier::new(names).expect("labels checked by the tokenizer"));
            continue;
        }
        let Some(c) = carrier.as_ref() else {
            return Err(ParseError::Syntax {
                pos: key_pos,
                message: "`points` must come first".into(),
            });
        };
        match section {
            "opens" => opens = Some((parse_sets(&mut cur, c)?, key_pos)),
            "order" => order = Some(parse_pairs(&mut cur, c, "<=")?),
            _ => relation = Some(parse_pairs(&mut cur, c, "->")?),
        }
    }
    let carrier = carrier.ok_or(ParseError::MissingPoints)?;
    assemble(carrier, opens.map(|(o, p)| (o, Some(p))), order, relation)
}

fn assemble(
    carrier: Carrier,
    opens: Option<(Vec<PointSet>, Option<Pos>)>,
    order: Option<Vec<(usize, usize)>>,
    relation: Option<Vec<(usize, usize)>>,
) -> Result<Structure, ParseError> {
    let topology = match opens {
        None => None,
        Some((sets, pos)) => Some(
            validate_topology(&carrier, SetFamily::new(sets))
                .map_err(|source| ParseError::NotATopology { pos, source })?,
        ),
    };
    let order = order.map(|pairs| FinQoset::generated(carrier.clone(), pairs));
    let relation = relation.map(|pairs| Relation::from_pairs(carrier.len(), pairs));
    Ok(Structure {
        carrier,
        topology,
        order,
        relation,
    })
}

impl Structure {
    pub fn of_topology(t: &FinTopology) -> Self {
        Structure {
            carrier: t.carrier().clone(),
            topology: Some(t.clone()),
            order: None,
            relation: None,
        }
    }

    pub fn of_order(q: &FinQoset) -> Self {
        Structure {
            carrier: q.carrier().clone(),
            topology: None,
            order: Some(q.clone()),
            relation: None,
        }
    }

    pub fn of_relation(carrier: &Carrier, r: &Relation) -> Self {
        Structure {
            carrier: carrier.clone(),
            topology: None,
            order: None,
            relation: Some(r.clone()),
        }
    }

    /// Canonical text rendering; `parse_structure` inverts it.
    pub fn to_text(&self) -> String {
        let c = &self.carrier;
        let mut out = format!("points: {}\n", c.names().join(" "));
        if let Some(t) = &self.topology {
            let sets: Vec<String> = t.opens().iter().map(|s| c.render(s)).collect();
            out += &format!("opens: {}\n", sets.join(", "));
        }
        if let Some(q) = &self.order {
            let pairs: Vec<String> = q
                .rel()
                .pairs()
                .filter(|(x, y)| x != y)
                .map(|(x, y)| format!("{}<={}", c.name(x), c.name(y)))
                .collect();
            out += &line("order", &pairs);
        }
        if let Some(r) = &self.relation {
            let pairs: Vec<String> = r
                .pairs()
                .map(|(x, y)| format!("{}->{}", c.name(x), c.name(y)))
                .collect();
            out += &line("relation", &pairs);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let c = &self.carrier;
        let names = |s: PointSet| s.iter().map(|i| c.name(i).to_string()).collect::<Vec<_>>();
        let pair = |(x, y): (usize, usize)| (c.name(x).to_string(), c.name(y).to_string());
        let js = JsonStructure {
            points: c.names().to_vec(),
            opens: self.topology.as_ref().map(|t| t.opens().iter().map(names).collect()),
            order: self
                .order
                .as_ref()
                .map(|q| q.rel().pairs().filter(|(x, y)| x != y).map(pair).collect()),
            relation: self.relation.as_ref().map(|r| r.pairs().map(pair).collect()),
        };
        serde_json::to_string(&js).expect("plain data serializes")
    }
}

fn line(key: &str, items: &[String]) -> String {
    if items.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {}\n", items.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonStructure {
    points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relation: Option<Vec<(String, String)>>,
}

/// Parse the JSON encoding.
pub fn parse_json(text: &str) -> Result<Structure, ParseError> {
    let js: JsonStructure = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if js.points.is_empty() {
        return Err(ParseError::MissingPoints);
    }
    if js.points.len() > MAX_POINTS {
        return Err(ParseError::TooManyPoints {
            n: js.points.len(),
            max: MAX_POINTS,
        });
    }
    for (i, p) in js.points.iter().enumerate() {
        if !super::carrier::is_label(p) {
            return Err(ParseError::BadLabel {
                pos: None,
                label: p.clone(),
            });
        }
        if js.points[..i].contains(p) {
            return Err(ParseError::DuplicateLabel {
                pos: None,
                label: p.clone(),
            });
        }
    }
    let carrier = Carrier::new(js.points.clone()).expect("labels checked above");
    let idx = |l: &String| {
        carrier.index_of(l).ok_or(ParseError::UnknownLabel {
            pos: None,
            label: l.clone(),
        })
    };
    let pairs = |ps: Option<Vec<(String, String)>>| -> Result<Option<Vec<(usize, usize)>>, ParseError> {
        ps.map(|ps| ps.iter().map(|(l, r)| Ok((idx(l)?, idx(r)?))).collect())
            .transpose()
    };
    let opens = js
        .opens
        .map(|sets| {
            sets.iter()
                .map(|s| {
                    s.iter()
                        .map(idx)
                        .collect::<Result<Vec<_>, _>>()
                        .map(PointSet::from_indices)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let order = pairs(js.order)?;
    let relation = pairs(js.relation)?;
    assemble(carrier, opens.map(|o| (o, None)), order, relation)
}

/// Dispatch on the first non-blank character: `{` means JSON.
pub fn parse_any(text: &str) -> Result<Structure, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_structure(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_text() {
        let s = parse_structure("points: a b\nopens: {}, {b}, {a b}\n").unwrap();
        let t = s.topology.unwrap();
        assert_eq!(t.opens().len(), 3);
        assert!(t.is_open(PointSet::singleton(1)));
    }

    #[test]
    fn one_point() {
        let s = parse_structure("points: a\nopens: {}, {a}").unwrap();
        assert_eq!(s.carrier.len(), 1);
    }

    #[test]
    fn missing_union_is_reported() {
        let err = parse_structure("points: a b\nopens: {}, {a}, {b}\n").unwrap_err();
        match err {
            ParseError::NotATopology {
                source: TopologyError::MissingWhole(w),
                ..
            } => assert_eq!(w, "{a b}"),
            other => panic!("{other}"),
        }
        let err = parse_structure("points: a b c\nopens: {}, {a}, {b}, {a b c}\n").unwrap_err();
        assert!(err.to_string().contains("union {a b} of {a} and {b} missing"), "{err}");
    }

    #[test]
    fn positions() {
        let err = parse_structure("points: a b\n\norder: a<=c\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownLabel {
                pos: Some(Pos { line: 3, column: 11 }),
                label: "c".into()
            }
        );
        let err = parse_structure("points: a a").unwrap_err();
        assert!(matches!(
            err,
            ParseError::DuplicateLabel {
                pos: Some(Pos { line: 1, column: 11 }),
                ..
            }
        ));
        let err = parse_structure("points: a b\nopens: {a b\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }), "{err}");
        let err = parse_structure("points: a\nfoo: x").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Syntax {
                pos: Pos { line: 2, column: 1 },
                ..
            }
        ));
    }

    #[test]
    fn order_is_closed() {
        let s = parse_structure("points: a b c # chain\norder: a<=b, b<=c\n").unwrap();
        assert!(s.order.unwrap().leq(0, 2));
    }

    #[test]
    fn text_and_json_round_trip() {
        let src = "points: a b c\nopens: {}, {c}, {b c}, {a b c}\norder: a<=b\nrelation: a->a, c->b\n";
        let s = parse_structure(src).unwrap();
        assert_eq!(s.to_text(), src);
        let j = s.to_json();
        assert_eq!(parse_json(&j).unwrap(), s);
        assert_eq!(parse_any(&j).unwrap().to_text(), src);
    }
}

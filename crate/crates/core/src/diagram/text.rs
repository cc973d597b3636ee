//! Text format.
//!
//! ```text
//! file      := header? block
//! header    := "@" NAME
//! block     := ("twin" | "knot") "{" component* "}"
//! component := ("arc" | "loop") LABEL ":" passage* surgery? ";"
//! passage   := ("O" | "U") INT ("+" | "-")
//! surgery   := "(" INT "," INT "/" INT ")"
//! ```
//!
//! `#` starts a comment running to the end of the line. A document may
//! hold several named blocks (the bundled knot table does).

use std::collections::BTreeMap;

use thiserror::Error;

use super::{
    validate, Component, ComponentKind, CrossingId, CrossingSign, Diagram, Location, Mode, Passage,
    Role, Surgery, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
}

/// One block of a document together with its optional `@name` header and
/// any sign disagreements found while reading it.
#[derive(Clone, Debug)]
pub struct NamedBlock {
    pub name: Option<String>,
    pub diagram: Diagram,
    pub sign_violations: Vec<Violation>,
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<String, ParseError> {
        self.skip_trivia();
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' || c == '.' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            Err(match self.peek() {
                Some(c) => self.error(format!("expected a name, found '{c}'")),
                None => self.error("expected a name, found end of input"),
            })
        } else {
            Ok(out)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_trivia();
        let mut text = String::new();
        if let Some(c @ ('-' | '+')) = self.peek() {
            text.push(c);
            self.bump();
            self.skip_trivia();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        text.parse()
            .map_err(|_| self.error(format!("expected an integer, found {text:?}")))
    }
}

struct RawPassage {
    passage: Passage,
    sign: CrossingSign,
    component: String,
    index: usize,
}

fn parse_block(cur: &mut Cursor<'_>) -> Result<(Diagram, Vec<Violation>), ParseError> {
    let keyword = cur.word()?;
    let mode = match keyword.as_str() {
        "twin" => Mode::Twin,
        "knot" => Mode::TwoKnot,
        other => return Err(cur.error(format!("expected 'twin' or 'knot', found {other:?}"))),
    };
    cur.expect('{')?;
    let mut components = Vec::new();
    let mut raw: Vec<RawPassage> = Vec::new();
    loop {
        cur.skip_trivia();
        if cur.peek() == Some('}') {
            cur.bump();
            break;
        }
        let kind_word = cur.word()?;
        let kind = match kind_word.as_str() {
            "arc" => mode.arc_kind(),
            "loop" => ComponentKind::Loop,
            other => return Err(cur.error(format!("expected 'arc' or 'loop', found {other:?}"))),
        };
        let label = cur.word()?;
        cur.expect(':')?;
        let mut passages = Vec::new();
        let mut surgery = None;
        loop {
            cur.skip_trivia();
            match cur.peek() {
                Some(';') => {
                    cur.bump();
                    break;
                }
                Some(c @ ('O' | 'U')) => {
                    cur.bump();
                    let role = if c == 'O' { Role::Over } else { Role::Under };
                    let id = cur.integer()?;
                    if id <= 0 || id > u32::MAX as i64 {
                        return Err(
                            cur.error(format!("crossing ids are positive integers, got {id}"))
                        );
                    }
                    cur.skip_trivia();
                    let sign = match cur.bump() {
                        Some('+') => CrossingSign::Positive,
                        Some('-') => CrossingSign::Negative,
                        _ => return Err(cur.error("expected '+' or '-' after crossing id")),
                    };
                    let passage = Passage {
                        crossing: CrossingId(id as u32),
                        role,
                    };
                    raw.push(RawPassage {
                        passage,
                        sign,
                        component: label.clone(),
                        index: passages.len(),
                    });
                    passages.push(passage);
                }
                Some('(') if surgery.is_none() => {
                    cur.bump();
                    let gamma = cur.integer()?;
                    cur.expect(',')?;
                    let num = cur.integer()?;
                    cur.expect('/')?;
                    let den = cur.integer()?;
                    cur.expect(')')?;
                    surgery = Some(Surgery {
                        gamma,
                        slope: (num, den),
                    });
                }
                Some(c) => return Err(cur.error(format!("unexpected '{c}' in component {label}"))),
                None => return Err(cur.error("unterminated component")),
            }
        }
        components.push(Component {
            kind,
            label,
            passages,
            surgery,
        });
    }

    let mut crossings: BTreeMap<CrossingId, CrossingSign> = BTreeMap::new();
    let mut violations = Vec::new();
    for r in &raw {
        match crossings.get(&r.passage.crossing) {
            None => {
                crossings.insert(r.passage.crossing, r.sign);
            }
            Some(s) if *s != r.sign => violations.push(Violation {
                code: "sign-mismatch".into(),
                message: format!(
                    "crossing {} is marked {} and {}",
                    r.passage.crossing,
                    s.symbol(),
                    r.sign.symbol()
                ),
                location: Some(Location {
                    label: r.component.clone(),
                    index: r.index,
                }),
            }),
            Some(_) => {}
        }
    }
    Ok((Diagram::new(mode, components, crossings), violations))
}

/// Reads every block of a document.
pub fn parse_document(text: &str) -> Result<Vec<NamedBlock>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    while !cur.at_end() {
        let name = if cur.peek() == Some('@') {
            cur.bump();
            Some(cur.word()?)
        } else {
            None
        };
        let (diagram, sign_violations) = parse_block(&mut cur)?;
        out.push(NamedBlock {
            name,
            diagram,
            sign_violations,
        });
    }
    Ok(out)
}

/// Syntax-only read of a single block: the diagram may violate the
/// crossing invariants, which are returned alongside (sign disagreements
/// cannot be represented in a [`Diagram`] and appear only here).
pub fn parse_lenient(text: &str) -> Result<(Diagram, Vec<Violation>), ParseError> {
    let mut blocks = parse_document(text)?;
    match blocks.len() {
        1 => {
            let b = blocks.remove(0);
            Ok((b.diagram, b.sign_violations))
        }
        0 => Err(ParseError::Syntax {
            line: 1,
            column: 1,
            message: "expected a 'twin' or 'knot' block".into(),
        }),
        n => Err(ParseError::Semantic(format!(
            "expected one block, found {n}"
        ))),
    }
}

/// Reads a single block and rejects crossings that are not used exactly
/// once over and once under with agreeing signs.
pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let (diagram, sign_violations) = parse_lenient(text)?;
    check_crossings(&diagram, sign_violations)?;
    Ok(diagram)
}

pub(crate) fn check_crossings(
    diagram: &Diagram,
    mut found: Vec<Violation>,
) -> Result<(), ParseError> {
    found.extend(
        validate(diagram)
            .violations
            .into_iter()
            .filter(|v| v.code == "role-pairing" || v.code == "unknown-crossing"),
    );
    match found.first() {
        None => Ok(()),
        Some(v) => Err(ParseError::Semantic(v.message.clone())),
    }
}

fn render_component(d: &Diagram, c: &Component) -> String {
    let keyword = if c.is_loop() { "loop" } else { "arc" };
    let mut out = format!("{keyword} {}:", c.label);
    for p in &c.passages {
        let sign = d.sign(p.crossing).unwrap_or(CrossingSign::Positive);
        out.push_str(&format!(
            " {}{}{}",
            p.role.symbol(),
            p.crossing,
            sign.symbol()
        ));
    }
    if let Some(s) = c.surgery {
        out.push_str(&format!(" {s}"));
    }
    out.push_str(" ;");
    out
}

/// Single-line text of the normal form of `d`.
pub fn serialize(d: &Diagram) -> String {
    let n = d.normalized();
    render_as_is(&n)
}

/// Single-line text of `d` without normalizing it first.
pub(crate) fn render_as_is(d: &Diagram) -> String {
    let body: String = d
        .components()
        .iter()
        .map(|c| format!("{} ", render_component(d, c)))
        .collect();
    format!("{} {{ {body}}}", d.mode().keyword())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_twin_round_trip() {
        let d = parse("twin { arc A: ; arc B: ; }").unwrap();
        assert_eq!(d, Diagram::standard_twin());
        assert_eq!(serialize(&d), "twin { arc A: ; arc B: ; }");
    }

    #[test]
    fn kink_parses() {
        let d = parse("twin { arc A: O1+ U1+ ; arc B: ; }").unwrap();
        assert_eq!(d.component("A").unwrap().passages.len(), 2);
        assert_eq!(d.sign(CrossingId(1)), Some(CrossingSign::Positive));
    }

    #[test]
    fn missing_under_is_semantic_error() {
        let err = parse("twin { arc A: O1+ ; arc B: ; }").unwrap_err();
        assert!(
            matches!(err, ParseError::Semantic(ref m) if m.contains("crossing 1")),
            "{err}"
        );
    }

    #[test]
    fn sign_disagreement_rejected() {
        let err = parse("twin { arc A: O1+ U1- ; arc B: ; }").unwrap_err();
        assert!(matches!(err, ParseError::Semantic(_)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("twin {\n  arc A: O1+ X1+ ;\n}").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 14);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("twin { arc A: O1 ; }").is_err());
        assert!(parse("braid { }").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn surgery_label_round_trip() {
        let d = parse("twin { arc A: O1+ ; arc B: ; loop T: U1+ (0, 0/1) ; }").unwrap();
        let text = serialize(&d);
        assert!(text.contains("(0, 0/1)"), "{text}");
        assert_eq!(parse(&text).unwrap(), d);

        let odd = parse("twin { arc A: ; arc B: ; loop T: ( -2 , 3/ 5 ) ; }").unwrap();
        assert_eq!(
            odd.component("T").unwrap().surgery,
            Some(Surgery {
                gamma: -2,
                slope: (3, 5)
            })
        );
    }

    #[test]
    fn comments_and_whitespace_ignored() {
        let d = parse("# a comment\ntwin {\n arc A : O 1 + U1+ ; # kink\n arc B: ;\n}\n").unwrap();
        assert_eq!(serialize(&d), "twin { arc A: O1+ U1+ ; arc B: ; }");
    }

    #[test]
    fn named_document() {
        let blocks = parse_document(
            "@3_1\nknot { loop K: O1+ U2+ O3+ U1+ O2+ U3+ ; }\n@unknot knot { loop K: ; }",
        )
        .unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].name.as_deref(), Some("3_1"));
        assert_eq!(blocks[1].name.as_deref(), Some("unknot"));
    }
}

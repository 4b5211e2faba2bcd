use std::fmt;

use super::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Keyword {
    Group,
    Groupoid,
    Builtin,
    Functor,
    Elements,
    Table,
    Objects,
    Mor,
    Comp,
    Obj,
}

pub(crate) const KEYWORDS: [(&str, Keyword); 10] = [
    ("group", Keyword::Group),
    ("groupoid", Keyword::Groupoid),
    ("builtin", Keyword::Builtin),
    ("functor", Keyword::Functor),
    ("elements", Keyword::Elements),
    ("table", Keyword::Table),
    ("objects", Keyword::Objects),
    ("mor", Keyword::Mor),
    ("comp", Keyword::Comp),
    ("obj", Keyword::Obj),
];

impl Keyword {
    fn lookup(word: &str) -> Option<Keyword> {
        KEYWORDS.iter().find(|(w, _)| *w == word).map(|&(_, k)| k)
    }

    pub(crate) fn as_str(self) -> &'static str {
        KEYWORDS.iter().find(|(_, k)| *k == self).map(|(w, _)| *w).unwrap_or("?")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Name(String),
    Kw(Keyword),
    LBrace,
    RBrace,
    Colon,
    Arrow,
    Dot,
    Equals,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Kw(k) => write!(f, "`{}`", k.as_str()),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `text` into tokens. Columns count characters, starting at 1.
/// The end-of-input token sits on the last non-whitespace character so that
/// errors about a truncated document still point inside it.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let mut last_visible = (1usize, 1usize);

    while let Some(c) = chars.next() {
        let start = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            continue;
        }
        col += 1;
        if c.is_whitespace() {
            continue;
        }
        last_visible = start;
        let simple = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Equals),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            tokens.push(Token { tok, line: start.0, col: start.1 });
            continue;
        }
        match c {
            '#' => {
                while let Some(&next) = chars.peek() {
                    if next == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                    if !next.is_whitespace() {
                        last_visible = (line, col - 1);
                    }
                }
            }
            '-' => {
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    last_visible = (line, col - 1);
                    tokens.push(Token { tok: Tok::Arrow, line: start.0, col: start.1 });
                } else {
                    return Err(ParseError::Syntax {
                        line: start.0,
                        col: start.1,
                        expected: "`->`".into(),
                        found: "`-`".into(),
                    });
                }
            }
            c if is_name_char(c) => {
                let mut word = String::from(c);
                while let Some(&next) = chars.peek() {
                    if !is_name_char(next) {
                        break;
                    }
                    word.push(next);
                    chars.next();
                    col += 1;
                }
                last_visible = (line, col - 1);
                let tok = match Keyword::lookup(&word) {
                    Some(k) => Tok::Kw(k),
                    None => Tok::Name(word),
                };
                tokens.push(Token { tok, line: start.0, col: start.1 });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: start.0,
                    col: start.1,
                    expected: "a name or punctuation".into(),
                    found: format!("{other:?}"),
                });
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, line: last_visible.0, col: last_visible.1 });
    Ok(tokens)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub(crate) fn is_keyword(word: &str) -> bool {
    Keyword::lookup(word).is_some()
}

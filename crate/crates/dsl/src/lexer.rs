//! Tokens of the `.ivdl` surface syntax.

use std::fmt;

use crate::error::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    NegInf,
    PosInf,
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::NegInf => write!(f, "`-inf`"),
            Tok::PosInf => write!(f, "`+inf`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of file"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

// longest first
const SYMBOLS: &[&str] = &[
    "<=>", "|~|", ":=", "&&", "||", "=>", "->", "!=", "<=", ">=", "..", "{", "}", "(", ")", "[",
    "]", ",", ":", ";", ".", "=", "<", ">", "!", "^",
];

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for k in 0..n {
            if chars[*i + k] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
        *i += n;
    };
    let rest_is = |i: usize, s: &str| {
        let s: Vec<char> = s.chars().collect();
        chars.len() >= i + s.len() && chars[i..i + s.len()] == s[..]
    };
    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if rest_is(i, "//") {
            while i < chars.len() && chars[i] != '\n' {
                bump(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        if (c == '-' || c == '+')
            && rest_is(i + 1, "inf")
            && !chars.get(i + 4).is_some_and(|&c| ident_char(c))
        {
            let tok = if c == '-' { Tok::NegInf } else { Tok::PosInf };
            out.push(Token { tok, pos });
            bump(&mut i, &mut line, &mut col, 4);
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())) {
            let start = i;
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[start..j].iter().collect();
            let n = text
                .parse()
                .map_err(|_| DslError::syntax(pos, format!("integer `{text}` out of range"), vec![]))?;
            out.push(Token {
                tok: Tok::Int(n),
                pos,
            });
            bump(&mut i, &mut line, &mut col, j - start);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len()
                && (ident_char(chars[j])
                    || (chars[j] == '-' && chars.get(j + 1).is_some_and(|c| c.is_ascii_alphabetic())))
            {
                j += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..j].iter().collect()),
                pos,
            });
            bump(&mut i, &mut line, &mut col, j - start);
            continue;
        }
        match SYMBOLS.iter().find(|s| rest_is(i, s)) {
            Some(s) => {
                out.push(Token {
                    tok: Tok::Sym(s),
                    pos,
                });
                bump(&mut i, &mut line, &mut col, s.chars().count());
            }
            None => {
                return Err(DslError::syntax(
                    pos,
                    format!("unexpected character `{c}`"),
                    vec![],
                ))
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn infinities_and_negative_numbers() {
        assert_eq!(
            toks("v := -inf; x = -2 -> +inf"),
            vec![
                Tok::Ident("v".into()),
                Tok::Sym(":="),
                Tok::NegInf,
                Tok::Sym(";"),
                Tok::Ident("x".into()),
                Tok::Sym("="),
                Tok::Int(-2),
                Tok::Sym("->"),
                Tok::PosInf,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let t = lex("// note\n  carrier 3").unwrap();
        assert_eq!(t[0].pos, Pos { line: 2, col: 3 });
        assert_eq!(t[1].pos, Pos { line: 2, col: 11 });
    }

    #[test]
    fn longest_symbol_wins() {
        assert_eq!(
            toks("a <=> b |~| c <= d"),
            vec![
                Tok::Ident("a".into()),
                Tok::Sym("<=>"),
                Tok::Ident("b".into()),
                Tok::Sym("|~|"),
                Tok::Ident("c".into()),
                Tok::Sym("<="),
                Tok::Ident("d".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn hyphenated_names() {
        assert_eq!(
            toks("forward-sim Abs->Conc"),
            vec![
                Tok::Ident("forward-sim".into()),
                Tok::Ident("Abs".into()),
                Tok::Sym("->"),
                Tok::Ident("Conc".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn stray_character() {
        let e = lex("carrier 3 @").unwrap_err();
        assert_eq!(e.pos, Some(Pos { line: 1, col: 11 }));
    }
}

//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := imp
//! imp     := or ( "->" imp )? | or "<->" or
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | postfix
//! postfix := atom ( "^o" | "^" NAT | "^(" NAT ")" )*
//! atom    := IDENT | "0" | "1" | "(" formula ")"
//! ```
//!
//! Schema text additionally accepts `^n` and `^(n)` for the open parameter.

use super::formula::Formula;
use super::pattern::{is_metavar_name, Pattern, Substitution};
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Circ,
    Pow(usize),
    CPow(usize),
    PowParam,
    CPowParam,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Circ => "`^o`".into(),
            Tok::Pow(k) => format!("`^{k}`"),
            Tok::CPow(k) => format!("`^({k})`"),
            Tok::PowParam => "`^n`".into(),
            Tok::CPowParam => "`^(n)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    start: usize,
    end: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str, allow_param: bool) -> Result<Vec<Spanned>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let push = |out: &mut Vec<Spanned>, tok, start, end| out.push(Spanned { tok, start, end });
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'~' => {
                i += 1;
                push(&mut out, Tok::Not, start, i);
            }
            b'&' => {
                i += 1;
                push(&mut out, Tok::And, start, i);
            }
            b'|' => {
                i += 1;
                push(&mut out, Tok::Or, start, i);
            }
            b'(' => {
                i += 1;
                push(&mut out, Tok::LParen, start, i);
            }
            b')' => {
                i += 1;
                push(&mut out, Tok::RParen, start, i);
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    push(&mut out, Tok::Imp, start, i);
                } else {
                    return Err(syntax(start, "expected `->`"));
                }
            }
            b'<' => {
                if text[i..].starts_with("<->") {
                    i += 3;
                    push(&mut out, Tok::Iff, start, i);
                } else {
                    return Err(syntax(start, "expected `<->`"));
                }
            }
            b'^' => {
                let (tok, end) = lex_suffix(text, i, allow_param)?;
                i = end;
                push(&mut out, tok, start, i);
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let tok = match &text[start..i] {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    other => return Err(syntax(start, format!("unknown constant `{other}`"))),
                };
                push(&mut out, tok, start, i);
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                push(&mut out, Tok::Ident(text[start..i].to_string()), start, i);
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

fn lex_nat(text: &str, from: usize) -> Option<(usize, usize)> {
    let digits: String = text[from..].chars().take_while(char::is_ascii_digit).collect();
    if digits.is_empty() {
        return None;
    }
    digits.parse().ok().map(|k| (k, from + digits.len()))
}

fn lex_suffix(text: &str, at: usize, allow_param: bool) -> Result<(Tok, usize), SyntaxError> {
    let rest = &text[at + 1..];
    let zero = |pos| SyntaxError::Parameter(format!("exponent at offset {pos} must be at least 1"));
    if rest.starts_with('o') {
        return Ok((Tok::Circ, at + 2));
    }
    if rest.starts_with('n') && allow_param {
        return Ok((Tok::PowParam, at + 2));
    }
    if rest.starts_with("(n)") && allow_param {
        return Ok((Tok::CPowParam, at + 4));
    }
    if let Some((k, end)) = lex_nat(text, at + 1) {
        if k == 0 {
            return Err(zero(at));
        }
        return Ok((Tok::Pow(k), end));
    }
    if rest.starts_with('(') {
        if let Some((k, end)) = lex_nat(text, at + 2) {
            if text[end..].starts_with(')') {
                if k == 0 {
                    return Err(zero(at));
                }
                return Ok((Tok::CPow(k), end + 1));
            }
        }
    }
    Err(syntax(at, "malformed suffix after `^`"))
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    len: usize,
    schematic: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |s| s.start)
    }

    fn prev_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .and_then(|i| self.toks.get(i))
            .map_or(0, |s| s.end)
    }

    fn starts_operand(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::Zero | Tok::One | Tok::Not | Tok::LParen)
        )
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.toks.get(self.pos) {
            Some(s) => syntax(s.start, format!("expected {wanted}, found {}", s.tok.describe())),
            None => syntax(self.len, format!("expected {wanted}, found end of input")),
        }
    }

    /// Consumes a binary operator and checks an operand follows; a dangling
    /// operator is reported at the end of its left operand.
    fn operator(&mut self, left_end: usize, name: &str) -> Result<(), SyntaxError> {
        self.pos += 1;
        if self.starts_operand() {
            Ok(())
        } else {
            Err(syntax(left_end, format!("operator `{name}` has no right operand")))
        }
    }

    fn formula(&mut self) -> Result<Pattern, SyntaxError> {
        let left = self.or()?;
        let left_end = self.prev_end();
        match self.peek() {
            Some(Tok::Imp) => {
                self.operator(left_end, "->")?;
                let right = self.formula()?;
                Ok(Pattern::imp(left, right))
            }
            Some(Tok::Iff) => {
                self.operator(left_end, "<->")?;
                let right = self.or()?;
                Ok(Pattern::and(
                    Pattern::imp(left.clone(), right.clone()),
                    Pattern::imp(right, left),
                ))
            }
            _ => Ok(left),
        }
    }

    fn or(&mut self) -> Result<Pattern, SyntaxError> {
        let mut acc = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.operator(self.prev_end(), "|")?;
            acc = Pattern::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Pattern, SyntaxError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.operator(self.prev_end(), "&")?;
            acc = Pattern::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Pattern, SyntaxError> {
        if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Pattern::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Pattern, SyntaxError> {
        let mut acc = self.atom()?;
        while let Some(tok) = self.peek() {
            acc = match tok {
                Tok::Circ => Pattern::neg(Pattern::and(acc.clone(), Pattern::neg(acc))),
                Tok::Pow(k) => {
                    let k = *k;
                    (0..k).fold(acc, |a, _| Pattern::neg(Pattern::and(a.clone(), Pattern::neg(a))))
                }
                Tok::CPow(k) => expand_cpow(acc, *k),
                Tok::PowParam => Pattern::PowN(Box::new(acc)),
                Tok::CPowParam => Pattern::CPowN(Box::new(acc)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Pattern, SyntaxError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("a formula"));
        };
        match tok {
            Tok::Ident(name) => {
                self.pos += 1;
                if self.schematic && is_metavar_name(&name) {
                    Ok(Pattern::Var(name))
                } else {
                    Ok(Pattern::Atom(name))
                }
            }
            Tok::Zero => {
                self.pos += 1;
                Ok(Pattern::Bot)
            }
            Tok::One => {
                self.pos += 1;
                Ok(Pattern::Top)
            }
            Tok::LParen => {
                let open = self.here();
                self.pos += 1;
                let inner = self.formula()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    Ok(inner)
                } else if self.peek().is_none() {
                    Err(syntax(self.len, format!("unclosed `(` opened at offset {open}")))
                } else {
                    Err(self.unexpected("`)`"))
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

fn expand_cpow(base: Pattern, k: usize) -> Pattern {
    let circ = |a: Pattern| Pattern::neg(Pattern::and(a.clone(), Pattern::neg(a)));
    let mut level = circ(base);
    let mut acc = level.clone();
    for _ in 2..=k {
        level = circ(level);
        acc = Pattern::and(acc, level.clone());
    }
    acc
}

fn parse_with(text: &str, schematic: bool) -> Result<Pattern, SyntaxError> {
    let toks = lex(text, schematic)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        len: text.len(),
        schematic,
    };
    let f = p.formula()?;
    if p.pos != toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a concrete formula; every identifier is an atom.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let pat = parse_with(text, false)?;
    Ok(pat
        .to_formula()
        .expect("formula mode produces neither metavariables nor parameters"))
}

/// Parses schema text: single uppercase letters are metavariables and
/// `^n`, `^(n)` refer to the open parameter.
pub fn parse_pattern(text: &str) -> Result<Pattern, SyntaxError> {
    parse_with(text, true)
}

/// Parses formula text that may use `^n` / `^(n)`, fixing the parameter
/// to `n`. Metavariable letters come back as ordinary atoms.
pub fn parse_fixed(text: &str, n: Option<usize>) -> Result<Formula, SyntaxError> {
    let mut pat = parse_with(text, true)?;
    if pat.has_param() {
        let n = n.ok_or_else(|| {
            SyntaxError::Parameter("formula uses n but no value for n is set".into())
        })?;
        pat = pat.fix_param(n)?;
    }
    let identity: Substitution = pat
        .metavars()
        .into_iter()
        .map(|v| (v.to_string(), Formula::atom(v)))
        .collect();
    Ok(pat.apply(&identity).expect("all metavariables bound, parameter fixed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn fixed_parameter() {
        assert_eq!(parse_fixed("A^(n)", Some(2)).unwrap(), atom("A").cpow(2));
        assert_eq!(parse_fixed("p -> A", None).unwrap(), parse("p -> A").unwrap());
        assert!(matches!(parse_fixed("A^n", None), Err(SyntaxError::Parameter(_))));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            Formula::imp(atom("p"), Formula::imp(atom("q"), atom("p")))
        );
    }

    #[test]
    fn circ_suffix_desugars() {
        assert_eq!(
            parse("p^o").unwrap(),
            Formula::neg(Formula::and(atom("p"), Formula::neg(atom("p"))))
        );
    }

    #[test]
    fn equivalence_desugars() {
        assert_eq!(
            parse("p <-> q").unwrap(),
            Formula::and(
                Formula::imp(atom("p"), atom("q")),
                Formula::imp(atom("q"), atom("p"))
            )
        );
    }

    #[test]
    fn dangling_operator_offset() {
        match parse("p -> (q &") {
            Err(SyntaxError::Syntax { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn zero_exponent_is_parameter_error() {
        assert!(matches!(parse("p^0"), Err(SyntaxError::Parameter(_))));
        assert!(matches!(parse("p^(0)"), Err(SyntaxError::Parameter(_))));
    }

    #[test]
    fn suffixes_bind_tighter_than_negation() {
        assert_eq!(parse("~p^o").unwrap(), Formula::neg(atom("p").circ()));
        assert_eq!(parse("p^2").unwrap(), atom("p").circ().circ());
        assert_eq!(parse("p^(2)").unwrap(), atom("p").cpow(2));
        assert_eq!(parse("p^o^o").unwrap(), parse("p^2").unwrap());
    }

    #[test]
    fn precedence_levels() {
        assert_eq!(
            parse("~p & q | r -> s").unwrap(),
            Formula::imp(
                Formula::or(Formula::and(Formula::neg(atom("p")), atom("q")), atom("r")),
                atom("s")
            )
        );
        assert_eq!(
            parse("p | q | r").unwrap(),
            Formula::or(Formula::or(atom("p"), atom("q")), atom("r"))
        );
    }

    #[test]
    fn constants_and_whitespace() {
        assert_eq!(
            parse(" ~1->0 ").unwrap(),
            Formula::imp(Formula::neg(Formula::Top), Formula::Bot)
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let off = |s: &str| match parse(s) {
            Err(SyntaxError::Syntax { offset, .. }) => offset,
            other => panic!("expected error for {s:?}, got {other:?}"),
        };
        assert_eq!(off("p q"), 2);
        assert_eq!(off("(p"), 2);
        assert_eq!(off("p $ q"), 2);
        assert_eq!(off(""), 0);
        assert_eq!(off("p <-> q <-> r"), 8);
        assert_eq!(off("p^n"), 1);
    }

    #[test]
    fn schema_mode() {
        let p = parse_pattern("B^(n) -> (A -> B)").unwrap();
        assert!(p.has_param());
        assert_eq!(
            p.metavars().into_iter().collect::<Vec<_>>(),
            vec!["A", "B"]
        );
        // multi-letter or lowercase identifiers stay atoms
        let q = parse_pattern("Ab -> p").unwrap();
        assert!(q.metavars().is_empty());
    }
}

use std::fmt::Write as _;

use crate::syntax::{parse_fixed, render_sugared, Formula, Substitution};

use super::{CalculusError, SystemDef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Instance of a schema; `n` overrides the system's parameter (it must
    /// agree with it).
    Axiom {
        name: String,
        subst: Substitution,
        n: Option<usize>,
    },
    /// Modus Ponens from the minor premise `i` and the implication `j`.
    Mp(usize, usize),
    /// Instance of a registered theorem.
    Thm { name: String, subst: Substitution },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub index: usize,
    pub formula: Formula,
    pub just: Justification,
}

/// A named derivation of `goal` in `system`.
///
/// Single uppercase letters in the goal act as metavariables once the
/// theorem is registered; inside the proof they are ordinary atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub system: SystemDef,
    pub goal: Formula,
    pub lines: Vec<Line>,
}

impl ProofScript {
    pub fn new(name: impl Into<String>, system: SystemDef, goal: Formula) -> Self {
        ProofScript {
            name: name.into(),
            system,
            goal,
            lines: Vec::new(),
        }
    }

    /// Names of the theorems cited by `thm` lines, deduplicated, in order of
    /// first use.
    pub fn cited_theorems(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for line in &self.lines {
            if let Justification::Thm { name, .. } = &line.just {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
        }
        out
    }

    /// Same script checked under another system.
    pub fn with_system(&self, system: SystemDef) -> ProofScript {
        ProofScript {
            system,
            ..self.clone()
        }
    }
}

fn render_subst(s: &Substitution) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|(k, v)| format!("{k}:={}", render_sugared(v)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Renders the line-oriented text format read by [`parse_script`].
pub fn render_script(script: &ProofScript) -> String {
    let mut out = String::new();
    let sys = &script.system;
    match sys.n() {
        Some(n) => writeln!(out, "system {} n={n}", sys.name()),
        None => writeln!(out, "system {}", sys.name()),
    }
    .unwrap();
    writeln!(out, "theorem {}: {}", script.name, render_sugared(&script.goal)).unwrap();
    out.push('\n');
    for line in &script.lines {
        let just = match &line.just {
            Justification::Axiom { name, subst, n } => {
                let mut j = format!("axiom {name}");
                if !subst.is_empty() {
                    j.push(' ');
                    j.push_str(&render_subst(subst));
                }
                if let Some(n) = n {
                    write!(j, " n={n}").unwrap();
                }
                j
            }
            Justification::Mp(i, j) => format!("mp {i} {j}"),
            Justification::Thm { name, subst } => {
                if subst.is_empty() {
                    format!("thm {name}")
                } else {
                    format!("thm {name} {}", render_subst(subst))
                }
            }
        };
        writeln!(out, "{}. {} | {just}", line.index, render_sugared(&line.formula)).unwrap();
    }
    out
}

fn script_err(line: usize, message: impl Into<String>) -> CalculusError {
    CalculusError::Script {
        line,
        message: message.into(),
    }
}

fn parse_n(tok: &str) -> Option<usize> {
    tok.strip_prefix("n=")?.parse().ok()
}

fn parse_subst(text: &str, n: Option<usize>) -> Result<Substitution, String> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or("substitution must be enclosed in braces")?;
    let mut s = Substitution::new();
    if inner.trim().is_empty() {
        return Ok(s);
    }
    for binding in inner.split(',') {
        let (var, value) = binding
            .split_once(":=")
            .ok_or_else(|| format!("binding `{}` lacks `:=`", binding.trim()))?;
        let value = parse_fixed(value, n).map_err(|e| e.to_string())?;
        if s.insert(var.trim(), value).is_some() {
            return Err(format!("metavariable {} bound twice", var.trim()));
        }
    }
    Ok(s)
}

fn parse_justification(text: &str, n: Option<usize>) -> Result<Justification, String> {
    let text = text.trim();
    let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    match kw {
        "mp" => {
            let nums: Vec<&str> = rest.split_whitespace().collect();
            match nums.as_slice() {
                [i, j] => Ok(Justification::Mp(
                    i.parse().map_err(|_| format!("bad line reference {i}"))?,
                    j.parse().map_err(|_| format!("bad line reference {j}"))?,
                )),
                _ => Err("mp takes exactly two line numbers".into()),
            }
        }
        "axiom" | "thm" => {
            let (name, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            if name.is_empty() {
                return Err(format!("{kw} needs a name"));
            }
            let mut rest = rest.trim();
            let mut explicit_n = None;
            if kw == "axiom" {
                let (head, last) = rest.rsplit_once(char::is_whitespace).unwrap_or(("", rest));
                if let Some(k) = parse_n(last) {
                    explicit_n = Some(k);
                    rest = head.trim();
                }
            }
            let subst = if rest.is_empty() {
                Substitution::new()
            } else {
                parse_subst(rest, explicit_n.or(n))?
            };
            Ok(if kw == "axiom" {
                Justification::Axiom {
                    name: name.to_string(),
                    subst,
                    n: explicit_n,
                }
            } else {
                Justification::Thm {
                    name: name.to_string(),
                    subst,
                }
            })
        }
        _ => Err(format!("unknown justification `{kw}`")),
    }
}

/// Splits `<formula> | <justification>` at the first bar whose two sides
/// both parse; formulas may themselves contain `|`.
fn parse_body(text: &str, n: Option<usize>) -> Result<(Formula, Justification), String> {
    let mut last_err = "missing `| <justification>`".to_string();
    for (pos, _) in text.match_indices('|') {
        let (left, right) = (&text[..pos], &text[pos + 1..]);
        let Ok(formula) = parse_fixed(left, n) else {
            continue;
        };
        match parse_justification(right, n) {
            Ok(just) => return Ok((formula, just)),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Parses the proof-script text format. `#` starts a comment.
pub fn parse_script(text: &str) -> Result<ProofScript, CalculusError> {
    let mut system: Option<SystemDef> = None;
    let mut header: Option<(String, Formula)> = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("system ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let (name, n) = match toks.as_slice() {
                [name] => (*name, None),
                [name, n] => (
                    *name,
                    Some(parse_n(n).ok_or_else(|| script_err(no, format!("bad parameter `{n}`")))?),
                ),
                _ => return Err(script_err(no, "expected `system <name> [n=<int>]`")),
            };
            system = Some(SystemDef::builtin(name, n).map_err(|e| script_err(no, e.to_string()))?);
        } else if let Some(rest) = content.strip_prefix("theorem ") {
            let sys = system
                .as_ref()
                .ok_or_else(|| script_err(no, "`theorem` before `system`"))?;
            let (name, goal) = rest
                .split_once(':')
                .ok_or_else(|| script_err(no, "expected `theorem <NAME>: <formula>`"))?;
            let goal = parse_fixed(goal, sys.n()).map_err(|e| script_err(no, e.to_string()))?;
            header = Some((name.trim().to_string(), goal));
        } else {
            let sys = system
                .as_ref()
                .ok_or_else(|| script_err(no, "proof line before `system`"))?;
            let (idx, body) = content
                .split_once('.')
                .ok_or_else(|| script_err(no, "expected `<index>. <formula> | <justification>`"))?;
            let index: usize = idx
                .trim()
                .parse()
                .map_err(|_| script_err(no, format!("bad line index `{}`", idx.trim())))?;
            let (formula, just) = parse_body(body, sys.n()).map_err(|e| script_err(no, e))?;
            lines.push(Line {
                index,
                formula,
                just,
            });
        }
    }
    let system = system.ok_or_else(|| script_err(0, "missing `system` header"))?;
    let (name, goal) = header.ok_or_else(|| script_err(0, "missing `theorem` header"))?;
    Ok(ProofScript {
        name,
        system,
        goal,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    const NEFQ: &str = "\
system mZn n=1
theorem NEFQ: A & ~A -> ~B

1. A -> B -> A | axiom 1 {A:=A, B:=B}
2. (B -> A) -> ~A -> ~B | axiom 9b {A:=B, B:=A}
3. (A -> B -> A) -> ((B -> A) -> ~A -> ~B) -> A -> ~A -> ~B | thm T2 {A:=A, B:=B -> A, C:=~A -> ~B}
4. ((B -> A) -> ~A -> ~B) -> A -> ~A -> ~B | mp 1 3
";

    #[test]
    fn parses_header_and_lines() {
        let s = parse_script(NEFQ).unwrap();
        assert_eq!(s.name, "NEFQ");
        assert_eq!(s.system.label(), "mZn(n=1)");
        assert_eq!(s.goal, parse("A & ~A -> ~B").unwrap());
        assert_eq!(s.lines.len(), 4);
        assert_eq!(s.lines[3].just, Justification::Mp(1, 3));
        assert_eq!(s.cited_theorems(), vec!["T2"]);
    }

    #[test]
    fn render_round_trip() {
        let s = parse_script(NEFQ).unwrap();
        assert_eq!(parse_script(&render_script(&s)).unwrap(), s);
    }

    #[test]
    fn bar_inside_formula() {
        let text = "system CPL\ntheorem X: p | ~p\n1. p | ~p | axiom 9 {A:=p}\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.lines[0].formula, parse("p | ~p").unwrap());
    }

    #[test]
    fn explicit_parameter_and_param_formulas() {
        let text = "system Cn n=2\ntheorem X: B^(n) -> B^o\n1. B^(2) -> (A -> B) -> (A -> ~B) -> ~A | axiom 11 {A:=A, B:=B} n=2\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.goal, parse("B^(2) -> B^o").unwrap());
        assert!(matches!(
            &s.lines[0].just,
            Justification::Axiom { n: Some(2), .. }
        ));
    }

    #[test]
    fn reports_file_line() {
        let err = parse_script("system mZn\ntheorem X: p\n1. p | frobnicate\n").unwrap_err();
        assert!(matches!(err, CalculusError::Script { line: 3, .. }));
        let err = parse_script("system Nope\n").unwrap_err();
        assert!(matches!(err, CalculusError::Script { line: 1, .. }));
    }
}

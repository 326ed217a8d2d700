use std::collections::HashMap;

use crate::syntax::{Formula, Substitution};

use super::{CalculusError, Justification, Line, ProofScript, Registry};

fn splice_err(msg: impl Into<String>) -> CalculusError {
    CalculusError::Splice(msg.into())
}

/// Replaces the theorem citation at line `index` by the cited theorem's own
/// proof, instantiated. Lines are renumbered from 1.
pub fn splice_line(
    script: &ProofScript,
    index: usize,
    registry: &Registry,
) -> Result<ProofScript, CalculusError> {
    let pos = script
        .lines
        .iter()
        .position(|l| l.index == index)
        .ok_or_else(|| splice_err(format!("no line {index}")))?;
    let line = &script.lines[pos];
    let Justification::Thm { name, subst } = &line.just else {
        return Err(splice_err(format!("line {index} does not cite a theorem")));
    };
    let thm = registry
        .lookup(name, &script.system)
        .map_err(|k| splice_err(format!("line {index}: {k} ({name})")))?;
    let sigma = thm
        .statement
        .match_with(&line.formula, subst)
        .ok_or_else(|| splice_err(format!("line {index} is not an instance of {name}")))?;
    let rename = |atom: &str| sigma.get(atom).cloned();
    let inst = |f: &Formula| f.replace_atoms(&rename);
    let inst_subst = |s: &Substitution| s.compose_atoms(&rename);

    let mut out = Vec::with_capacity(script.lines.len() + thm.script.lines.len());
    let mut old_to_new: HashMap<usize, usize> = HashMap::new();
    let push = |out: &mut Vec<Line>, formula: Formula, just: Justification| {
        let idx = out.len() + 1;
        out.push(Line {
            index: idx,
            formula,
            just,
        });
        idx
    };

    for l in &script.lines[..pos] {
        let just = remap(&l.just, &old_to_new);
        old_to_new.insert(l.index, push(&mut out, l.formula.clone(), just));
    }
    let mut inner: HashMap<usize, usize> = HashMap::new();
    let mut last = 0;
    for l in &thm.script.lines {
        let just = match &l.just {
            Justification::Axiom { name, subst, n } => Justification::Axiom {
                name: name.clone(),
                subst: inst_subst(subst),
                n: *n,
            },
            Justification::Thm { name, subst } => Justification::Thm {
                name: name.clone(),
                subst: inst_subst(subst),
            },
            Justification::Mp(..) => remap(&l.just, &inner),
        };
        last = push(&mut out, inst(&l.formula), just);
        inner.insert(l.index, last);
    }
    old_to_new.insert(line.index, last);
    for l in &script.lines[pos + 1..] {
        let just = remap(&l.just, &old_to_new);
        old_to_new.insert(l.index, push(&mut out, l.formula.clone(), just));
    }
    Ok(ProofScript {
        lines: out,
        ..script.clone()
    })
}

fn remap(just: &Justification, map: &HashMap<usize, usize>) -> Justification {
    match just {
        // Dangling references stay dangling (0 is never a valid index), so
        // a broken script stays broken.
        Justification::Mp(i, j) => Justification::Mp(
            map.get(i).copied().unwrap_or(0),
            map.get(j).copied().unwrap_or(0),
        ),
        other => other.clone(),
    }
}

/// Inlines every theorem citation, recursively, leaving only axiom and MP
/// lines.
pub fn splice_all(script: &ProofScript, registry: &Registry) -> Result<ProofScript, CalculusError> {
    let mut cur = script.clone();
    while let Some(l) = cur
        .lines
        .iter()
        .find(|l| matches!(l.just, Justification::Thm { .. }))
    {
        cur = splice_line(&cur, l.index, registry)?;
    }
    Ok(cur)
}

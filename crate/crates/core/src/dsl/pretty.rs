//! Canonical text rendering. `parse(pretty_print(m)) == m` for valid models.

use std::fmt::Write;

use super::ast::*;

pub fn pretty_print(model: &PedalModel) -> String {
    let mut out = String::new();
    let list = |names: &[Name]| {
        names
            .iter()
            .map(|n| n.text.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let section = |out: &mut String, kw: &str, body: String| {
        if body.is_empty() {
            out.push_str(kw);
        } else {
            let _ = write!(out, "{kw} {body}");
        }
        out.push('\n');
    };
    section(&mut out, "InActions", list(&model.input_actions));
    section(&mut out, "BoolVars", list(&model.bool_vars));
    section(&mut out, "PlaneVars", list(&model.plane_vars));
    let inits = model
        .init
        .iter()
        .map(|e| format!("{} = {}", target(&e.target), e.value))
        .collect::<Vec<_>>()
        .join(", ");
    section(&mut out, "Init", inits);

    for rule in &model.rules {
        let _ = writeln!(out, "\nRule {}:", rule.action.text);
        let _ = writeln!(out, "  guard {}", guard(&rule.guard));
        out.push_str("  do\n");
        statements(&mut out, &rule.body, 2);
        out.push_str("  end\n");
    }
    out
}

fn target(t: &Target) -> &str {
    match t {
        Target::Var(n) => &n.text,
        Target::OutputType(_) => "OutputType",
        Target::OutputPlane(_) => "OutputPlane",
    }
}

fn operand(op: &Operand) -> String {
    match op {
        Operand::Var(n) => n.text.clone(),
        Operand::OutputType(_) => "OutputType".into(),
        Operand::OutputPlane(_) => "OutputPlane".into(),
        Operand::Lit(v, _) => v.to_string(),
    }
}

fn statements(out: &mut String, body: &[Statement], depth: usize) {
    let indent = "  ".repeat(depth);
    for (i, stmt) in body.iter().enumerate() {
        let sep = if i + 1 < body.len() { ";" } else { "" };
        match stmt {
            Statement::Assign { target: t, value } => {
                let _ = writeln!(out, "{indent}{} := {}{sep}", target(t), operand(value));
            }
            Statement::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let _ = writeln!(out, "{indent}if {} then", guard(cond));
                statements(out, then_branch, depth + 1);
                if !else_branch.is_empty() {
                    let _ = writeln!(out, "{indent}else");
                    statements(out, else_branch, depth + 1);
                }
                let _ = writeln!(out, "{indent}fi{sep}");
            }
        }
    }
}

// Binding strength: disjunction 1, conjunction 2, everything else 3.
fn prec(g: &GuardExpr) -> u8 {
    match g {
        GuardExpr::Or(..) => 1,
        GuardExpr::And(..) => 2,
        _ => 3,
    }
}

/// Renders a guard with the minimal parentheses needed to re-parse it to the
/// same tree (both binary operators parse left-associatively).
pub fn guard(g: &GuardExpr) -> String {
    fn wrap(g: &GuardExpr, min: u8) -> String {
        let s = guard(g);
        if prec(g) < min {
            format!("({s})")
        } else {
            s
        }
    }
    match g {
        GuardExpr::Lit(b, _) => b.to_string(),
        GuardExpr::Var(n) => n.text.clone(),
        GuardExpr::Eq(l, r) => format!("{} == {}", operand(l), operand(r)),
        GuardExpr::Not(inner) => match **inner {
            GuardExpr::Lit(..) | GuardExpr::Var(_) | GuardExpr::Not(_) => {
                format!("!{}", guard(inner))
            }
            _ => format!("!({})", guard(inner)),
        },
        GuardExpr::And(a, b) => format!("{} && {}", wrap(a, 2), wrap(b, 3)),
        GuardExpr::Or(a, b) => format!("{} || {}", wrap(a, 1), wrap(b, 2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse_guard;

    #[test]
    fn guard_parentheses_are_minimal_but_sufficient() {
        for src in [
            "a && (b || c)",
            "(a || b) && c",
            "a || b && c",
            "a && (b && c)",
            "!(a == FR) || !!b",
            "!(a && b)",
        ] {
            let g = parse_guard(src).unwrap();
            let printed = guard(&g);
            assert_eq!(parse_guard(&printed).unwrap(), g, "{src} -> {printed}");
        }
        assert_eq!(guard(&parse_guard("a || (b && c)").unwrap()), "a || b && c");
    }
}

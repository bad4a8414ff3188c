//! Text output in the input syntax, so printed objects parse back.

use std::fmt;

use crate::program::{Program, Rule};
use crate::syntax::{Atom, Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Variable(v) => write!(f, "{v}"),
            Term::Constant(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred(p, args) => {
                write!(f, "{p}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, t) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{t}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            Atom::Eq(l, r) => write!(f, "{l} = {r}"),
        }
    }
}

// Binding strength, loosest first: -> | & unary.
const PREC_IMPL: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    // sugar first
    if f.is_top() {
        return write!(out, "true");
    }
    if let Formula::Implies(l, r) = f {
        if **r == Formula::Bottom {
            if let Formula::Atom(Atom::Eq(a, b)) = &**l {
                return write!(out, "{a} != {b}");
            }
            write!(out, "-")?;
            return write_formula(l, out, PREC_UNARY);
        }
    }
    match f {
        Formula::Bottom => write!(out, "false"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::And(l, r) => {
            let parens = min > PREC_AND;
            if parens {
                write!(out, "(")?;
            }
            write_formula(l, out, PREC_AND)?;
            write!(out, " & ")?;
            write_formula(r, out, PREC_AND + 1)?;
            if parens {
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Or(l, r) => {
            let parens = min > PREC_OR;
            if parens {
                write!(out, "(")?;
            }
            write_formula(l, out, PREC_OR)?;
            write!(out, " | ")?;
            write_formula(r, out, PREC_OR + 1)?;
            if parens {
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Implies(l, r) => {
            let parens = min > PREC_IMPL;
            if parens {
                write!(out, "(")?;
            }
            write_formula(l, out, PREC_IMPL + 1)?;
            write!(out, " -> ")?;
            write_formula(r, out, PREC_IMPL)?;
            if parens {
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            // collapse runs of the same quantifier: forall X Y (...)
            let existential = matches!(f, Formula::Exists(..));
            let word = if existential { "exists" } else { "forall" };
            write!(out, "{word}")?;
            let mut cur = f;
            loop {
                match cur {
                    Formula::Forall(v, g) if !existential => {
                        write!(out, " {v}")?;
                        cur = g;
                    }
                    Formula::Exists(v, g) if existential => {
                        write!(out, " {v}")?;
                        cur = g;
                    }
                    _ => break,
                }
            }
            write!(out, " ")?;
            if formula_prec(cur) >= PREC_UNARY {
                write_formula(cur, out, PREC_UNARY)
            } else {
                write!(out, "(")?;
                write_formula(cur, out, 0)?;
                write!(out, ")")
            }
        }
    }
}

fn formula_prec(f: &Formula) -> u8 {
    if f.is_top() {
        return PREC_UNARY + 1;
    }
    match f {
        Formula::Bottom | Formula::Atom(_) => PREC_UNARY + 1,
        Formula::Implies(_, r) if **r == Formula::Bottom => PREC_UNARY,
        Formula::Forall(..) | Formula::Exists(..) => PREC_UNARY,
        Formula::And(..) => PREC_AND,
        Formula::Or(..) => PREC_OR,
        Formula::Implies(..) => PREC_IMPL,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, 0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.head() == Formula::Bottom && !self.body_is_top() {
            write!(f, "false")?;
        } else {
            write_head(self.head(), f)?;
        }
        if !self.body_is_top() {
            write!(f, " :- ")?;
            let conjuncts = self.body().conjuncts();
            for (i, c) in conjuncts.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_body_item(c, f)?;
            }
        }
        write!(f, ".")
    }
}

impl Rule {
    fn head(&self) -> &Formula {
        &self.head
    }
    fn body(&self) -> &Formula {
        &self.body
    }
    fn body_is_top(&self) -> bool {
        self.body.is_top()
    }
}

fn write_head(head: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let disjuncts = head.disjuncts();
    if disjuncts.len() > 1
        && disjuncts
            .iter()
            .all(|d| matches!(d, Formula::Atom(Atom::Pred(..))))
    {
        for (i, d) in disjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write_formula(d, f, PREC_UNARY)?;
        }
        Ok(())
    } else {
        write_formula(head, f, PREC_UNARY)
    }
}

fn write_body_item(item: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Formula::Implies(l, r) = item {
        if **r == Formula::Bottom && !matches!(&**l, Formula::Atom(Atom::Eq(..))) {
            write!(f, "not ")?;
            return write_body_item(l, f);
        }
    }
    write_formula(item, f, PREC_UNARY)
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{Formula, Term};

    #[test]
    fn sugar_forms() {
        assert_eq!(Formula::top().to_string(), "true");
        assert_eq!(Formula::Bottom.to_string(), "false");
        assert_eq!(
            Formula::neq(Term::var("X"), Term::con("a")).to_string(),
            "X != a"
        );
        assert_eq!(
            Formula::not(Formula::pred("p", vec![Term::var("X")])).to_string(),
            "-p(X)"
        );
    }

    #[test]
    fn precedence_and_quantifiers() {
        let f = Formula::forall(
            "X",
            Formula::forall(
                "Y",
                Formula::implies(
                    Formula::and(
                        Formula::pred("p", vec![Term::var("X")]),
                        Formula::not(Formula::pred("q", vec![Term::var("Y")])),
                    ),
                    Formula::or(
                        Formula::pred("r", vec![Term::var("X")]),
                        Formula::Bottom,
                    ),
                ),
            ),
        );
        assert_eq!(f.to_string(), "forall X Y (p(X) & -q(Y) -> r(X) | false)");
    }
}

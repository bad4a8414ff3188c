//! Rules and programs. A program is alternative notation for a first-order
//! sentence: each rule `Head <- Body` stands for the universal closure of
//! `Body -> Head`, and the program for the conjunction of its rules.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::syntax::{Atom, Formula, Signature, Symbol, Term};
use crate::transform::fresh_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleKind {
    /// Head is one non-equality atom; body is a conjunction of atoms and
    /// negative formulas.
    Nondisjunctive,
    /// Head is a (possibly empty) disjunction of non-equality atoms.
    Disjunctive,
    /// Head and body are formulas whose implications all sit inside
    /// negative subformulas.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub head: Formula,
    pub body: Formula,
    pub kind: RuleKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("implication outside a negative formula in an extended rule")]
    BadImplication,
    #[error("equality atom cannot appear in a rule head disjunct")]
    EqualityHead,
}

/// Whether every implication occurrence lies inside a negative formula.
fn implications_negative(f: &Formula) -> bool {
    fn go(f: &Formula, in_neg: bool) -> bool {
        if in_neg {
            return true;
        }
        match f {
            Formula::Bottom | Formula::Atom(_) => true,
            Formula::And(l, r) | Formula::Or(l, r) => go(l, false) && go(r, false),
            Formula::Implies(..) => f.is_negative(),
            Formula::Forall(_, g) | Formula::Exists(_, g) => go(g, false),
        }
    }
    go(f, false)
}

/// Splits a rule body into its positive atoms and its negative conjuncts.
/// Returns `None` when some conjunct is neither.
fn split_program_body(body: &Formula) -> Option<(Vec<Atom>, Vec<Formula>)> {
    if body.is_top() {
        return Some((Vec::new(), Vec::new()));
    }
    let mut atoms = Vec::new();
    let mut negatives = Vec::new();
    for c in body.conjuncts() {
        match c {
            Formula::Atom(a) => atoms.push(a.clone()),
            f if f.is_negative() => negatives.push(f.clone()),
            _ => return None,
        }
    }
    Some((atoms, negatives))
}

impl Rule {
    /// Builds a rule, inferring the most restrictive kind that fits.
    pub fn new(head: Formula, body: Formula) -> Result<Rule, RuleError> {
        let body_splits = split_program_body(&body).is_some();
        let kind = if body_splits && matches!(&head, Formula::Atom(Atom::Pred(..))) {
            RuleKind::Nondisjunctive
        } else if body_splits && Rule::disjunctive_head(&head).is_some() {
            RuleKind::Disjunctive
        } else {
            for f in [&head, &body] {
                if !implications_negative(f) {
                    return Err(RuleError::BadImplication);
                }
            }
            RuleKind::Extended
        };
        Ok(Rule { head, body, kind })
    }

    fn disjunctive_head(head: &Formula) -> Option<Vec<Atom>> {
        if *head == Formula::Bottom {
            return Some(Vec::new());
        }
        let mut atoms = Vec::new();
        for d in head.disjuncts() {
            match d {
                Formula::Atom(a @ Atom::Pred(..)) => atoms.push(a.clone()),
                _ => return None,
            }
        }
        Some(atoms)
    }

    /// Head atoms for nondisjunctive/disjunctive rules (empty for a
    /// constraint); `None` for extended rules.
    pub fn head_atoms(&self) -> Option<Vec<Atom>> {
        match self.kind {
            RuleKind::Extended => None,
            _ => Rule::disjunctive_head(&self.head),
        }
    }

    /// `(B, N)`: positive body atoms and the conjunction of negative parts.
    /// `None` for extended rules.
    pub fn body_parts(&self) -> Option<(Vec<Atom>, Vec<Formula>)> {
        match self.kind {
            RuleKind::Extended => None,
            _ => split_program_body(&self.body),
        }
    }

    /// The sentence this rule denotes.
    pub fn to_formula(&self) -> Formula {
        let open = if self.body.is_top() {
            self.head.clone()
        } else {
            Formula::implies(self.body.clone(), self.head.clone())
        };
        open.universal_closure()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut vs = self.head.all_variables();
        vs.extend(self.body.all_variables());
        vs
    }

    pub fn free_variables(&self) -> BTreeSet<Symbol> {
        let mut vs = self.head.free_variables();
        vs.extend(self.body.free_variables());
        vs
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Program {
        Program { rules }
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for r in &self.rules {
            sig.extend_with(&r.head);
            sig.extend_with(&r.body);
        }
        sig
    }

    /// The strictest kind covering every rule.
    pub fn kind(&self) -> RuleKind {
        self.rules
            .iter()
            .map(|r| r.kind)
            .max()
            .unwrap_or(RuleKind::Nondisjunctive)
    }

    /// FOL-representation: the conjunction of the rules' sentences in
    /// source order. The empty program denotes `true`.
    pub fn fol_representation(&self) -> Formula {
        Formula::and_all(self.rules.iter().map(Rule::to_formula))
    }

    /// Normal form: no object constants in (strictly positive) head atoms.
    /// An offending head occurrence `p(..,c,..)` gets a fresh variable and
    /// the guard `X = c` is prepended to the body.
    pub fn to_normal_form(&self) -> Program {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let mut used: BTreeSet<Symbol> = r.variables();
                let mut guards: Vec<Formula> = Vec::new();
                let head = rewrite_head(&r.head, 0, &mut used, &mut guards);
                if guards.is_empty() {
                    return r.clone();
                }
                let mut conjuncts = guards;
                if !r.body.is_top() {
                    conjuncts.push(r.body.clone());
                }
                let body = Formula::and_all(conjuncts);
                Rule::new(head, body).expect("normal form preserves rule syntax")
            })
            .collect();
        Program { rules }
    }

    pub fn is_normal_form(&self) -> bool {
        self.rules.iter().all(|r| {
            r.head.atom_occurrences().iter().all(|occ| {
                !occ.strictly_positive || occ.atom.terms().iter().all(|t| t.is_variable())
            })
        })
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(|r| r.variables().is_empty())
    }
}

/// Replaces constants in strictly positive atoms of a head formula by
/// fresh variables, accumulating the equality guards.
fn rewrite_head(
    f: &Formula,
    antecedents: usize,
    used: &mut BTreeSet<Symbol>,
    guards: &mut Vec<Formula>,
) -> Formula {
    match f {
        Formula::Atom(Atom::Pred(p, args))
            if antecedents == 0 && args.iter().any(|t| !t.is_variable()) =>
        {
            let mut new_args = Vec::new();
            for t in args {
                match t {
                    Term::Constant(c) => {
                        let v = fresh_name("X", used);
                        used.insert(v.clone());
                        guards.push(Formula::eq(Term::var(v.clone()), Term::con(c.clone())));
                        new_args.push(Term::var(v));
                    }
                    Term::Variable(_) => new_args.push(t.clone()),
                }
            }
            Formula::pred(p.clone(), new_args)
        }
        Formula::Bottom | Formula::Atom(_) => f.clone(),
        Formula::And(l, r) => Formula::and(
            rewrite_head(l, antecedents, used, guards),
            rewrite_head(r, antecedents, used, guards),
        ),
        Formula::Or(l, r) => Formula::or(
            rewrite_head(l, antecedents, used, guards),
            rewrite_head(r, antecedents, used, guards),
        ),
        Formula::Implies(l, r) => Formula::implies(
            rewrite_head(l, antecedents + 1, used, guards),
            rewrite_head(r, antecedents, used, guards),
        ),
        Formula::Forall(v, g) => {
            Formula::forall(v.clone(), rewrite_head(g, antecedents, used, guards))
        }
        Formula::Exists(v, g) => {
            Formula::exists(v.clone(), rewrite_head(g, antecedents, used, guards))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: &str, ts: Vec<Term>) -> Formula {
        Formula::pred(p, ts)
    }

    #[test]
    fn kind_inference_picks_most_restrictive() {
        let nd = Rule::new(
            atom("r", vec![Term::var("X")]),
            Formula::and(
                atom("p", vec![Term::var("X")]),
                Formula::not(atom("q", vec![Term::var("X")])),
            ),
        )
        .unwrap();
        assert_eq!(nd.kind, RuleKind::Nondisjunctive);

        let d = Rule::new(
            Formula::or(
                atom("p", vec![Term::var("X"), Term::var("Y")]),
                atom("p", vec![Term::var("Y"), Term::var("Z")]),
            ),
            atom("q", vec![Term::var("X")]),
        )
        .unwrap();
        assert_eq!(d.kind, RuleKind::Disjunctive);

        let e = Rule::new(
            Formula::exists("W", atom("discount", vec![Term::var("X"), Term::var("W")])),
            Formula::and(
                atom("spouse", vec![Term::var("X"), Term::var("Y")]),
                Formula::not(Formula::exists(
                    "Z",
                    atom("accident", vec![Term::var("X"), Term::var("Z")]),
                )),
            ),
        )
        .unwrap();
        assert_eq!(e.kind, RuleKind::Extended);
    }

    #[test]
    fn constraint_is_disjunctive_with_empty_head() {
        let c = Rule::new(Formula::Bottom, atom("p", vec![Term::con("a")])).unwrap();
        assert_eq!(c.kind, RuleKind::Disjunctive);
        assert_eq!(c.head_atoms().unwrap(), Vec::<Atom>::new());
    }

    #[test]
    fn bad_implication_in_extended_rule_is_rejected() {
        let r = Rule::new(
            atom("p", vec![Term::var("X")]),
            Formula::implies(atom("q", vec![Term::var("X")]), atom("r", vec![Term::var("X")])),
        );
        assert_eq!(r, Err(RuleError::BadImplication));
    }

    #[test]
    fn one_rule_fol_representation_is_closed_implication() {
        let r = Rule::new(
            atom("p", vec![Term::var("X")]),
            atom("q", vec![Term::var("X")]),
        )
        .unwrap();
        let p = Program::new(vec![r]);
        let expected = Formula::forall(
            "X",
            Formula::implies(atom("q", vec![Term::var("X")]), atom("p", vec![Term::var("X")])),
        );
        assert_eq!(p.fol_representation(), expected);
    }

    #[test]
    fn empty_program_denotes_top() {
        assert!(Program::default().fol_representation().is_top());
    }

    #[test]
    fn facts_contribute_bare_heads() {
        let f = Rule::new(atom("p", vec![Term::con("a")]), Formula::top()).unwrap();
        let p = Program::new(vec![f]);
        assert_eq!(p.fol_representation(), atom("p", vec![Term::con("a")]));
    }

    #[test]
    fn normal_form_moves_head_constants_to_body_guards() {
        // p(a) <- p(b)  becomes  p(X) <- X = a, p(b)
        let r = Rule::new(atom("p", vec![Term::con("a")]), atom("p", vec![Term::con("b")])).unwrap();
        let p = Program::new(vec![r]).to_normal_form();
        let expected = Rule::new(
            atom("p", vec![Term::var("X")]),
            Formula::and(
                Formula::eq(Term::var("X"), Term::con("a")),
                atom("p", vec![Term::con("b")]),
            ),
        )
        .unwrap();
        assert_eq!(p.rules[0], expected);
        assert!(p.is_normal_form());

        // a fact normalizes to a guarded rule
        let f = Rule::new(atom("q", vec![Term::con("b")]), Formula::top()).unwrap();
        let pf = Program::new(vec![f]).to_normal_form();
        let expected = Rule::new(
            atom("q", vec![Term::var("X")]),
            Formula::eq(Term::var("X"), Term::con("b")),
        )
        .unwrap();
        assert_eq!(pf.rules[0], expected);

        // variable-headed rules stay put
        let r = Rule::new(atom("p", vec![Term::var("X")]), atom("q", vec![Term::var("X")])).unwrap();
        let pr = Program::new(vec![r.clone()]).to_normal_form();
        assert_eq!(pr.rules[0], r);
    }
}

//! Terms, atoms, first-order formulas and signatures.
//!
//! The formula language is function-free: terms are object variables or
//! object constants. Negation and truth are sugar: `-F` is stored as
//! `F -> false` and `true` as `false -> false`. The printer re-sugars both.

use std::collections::BTreeSet;

/// Interned-by-convention symbol name. Variables start with an uppercase
/// letter, constants and predicates with a lowercase letter.
pub type Symbol = String;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Variable(Symbol),
    Constant(Symbol),
}

impl Term {
    pub fn var(name: impl Into<Symbol>) -> Term {
        Term::Variable(name.into())
    }

    pub fn con(name: impl Into<Symbol>) -> Term {
        Term::Constant(name.into())
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `p(t1, ..., tn)`; a zero-ary predicate is just `p`.
    Pred(Symbol, Vec<Term>),
    /// `t1 = t2`
    Eq(Term, Term),
}

impl Atom {
    pub fn pred(name: impl Into<Symbol>, args: Vec<Term>) -> Atom {
        Atom::Pred(name.into(), args)
    }

    pub fn is_equality(&self) -> bool {
        matches!(self, Atom::Eq(_, _))
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Pred(_, args) => args.iter().collect(),
            Atom::Eq(l, r) => vec![l, r],
        }
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            if let Term::Variable(v) = t {
                out.insert(v.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    Atom(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Symbol, Box<Formula>),
    Exists(Symbol, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn pred(name: impl Into<Symbol>, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::pred(name, args))
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Atom(Atom::Eq(l, r))
    }

    /// `t1 != t2`, i.e. `(t1 = t2) -> false`.
    pub fn neq(l: Term, r: Term) -> Formula {
        Formula::not(Formula::eq(l, r))
    }

    /// `-F` as `F -> false`.
    pub fn not(f: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(Formula::Bottom))
    }

    /// `true` as `false -> false`.
    pub fn top() -> Formula {
        Formula::not(Formula::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self,
            Formula::Implies(a, b) if **a == Formula::Bottom && **b == Formula::Bottom)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<Symbol>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<Symbol>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    /// Left-associated conjunction; the empty conjunction is `true`.
    pub fn and_all(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = fs.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-associated disjunction; the empty disjunction is `false`.
    pub fn or_all(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = fs.into_iter();
        match it.next() {
            None => Formula::Bottom,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Conjunction that drops literal `true` conjuncts as it builds.
    pub fn and_all_pruned(fs: impl IntoIterator<Item = Formula>) -> Formula {
        Formula::and_all(fs.into_iter().filter(|f| !f.is_top()))
    }

    /// Free variables; quantifiers bind.
    pub fn free_variables(&self) -> BTreeSet<Symbol> {
        fn go(f: &Formula, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
            match f {
                Formula::Bottom => {}
                Formula::Atom(a) => {
                    for v in a.variables() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    go(l, bound, out);
                    go(r, bound, out);
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    bound.push(v.clone());
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_variables(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| out.extend(a.variables()));
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    out.insert(v.clone());
                    stack.push(g);
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                _ => {}
            }
        }
        out
    }

    pub fn visit_atoms(&self, visit: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Bottom => {}
            Formula::Atom(a) => visit(a),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.visit_atoms(visit);
                r.visit_atoms(visit);
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_atoms(visit),
        }
    }

    /// The conjuncts of a left- or right-nested conjunction, in order.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::And(l, r) = f {
                go(l, out);
                go(r, out);
            } else {
                out.push(f);
            }
        }
        go(self, &mut out);
        out
    }

    /// The disjuncts of a nested disjunction, in order.
    pub fn disjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::Or(l, r) = f {
                go(l, out);
                go(r, out);
            } else {
                out.push(f);
            }
        }
        go(self, &mut out);
        out
    }
}

/// The constants and predicates (with arities) occurring in a formula or
/// program. Both maps are sorted, which fixes the enumeration order used
/// everywhere else (predicate variables, grounding, oracle sweeps).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub constants: BTreeSet<Symbol>,
    pub predicates: std::collections::BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn of_formula(f: &Formula) -> Signature {
        let mut sig = Signature::default();
        sig.extend_with(f);
        sig
    }

    pub fn extend_with(&mut self, f: &Formula) {
        f.visit_atoms(&mut |a| {
            if let Atom::Pred(p, args) = a {
                self.predicates.insert(p.clone(), args.len());
            }
            for t in a.terms() {
                if let Term::Constant(c) = t {
                    self.constants.insert(c.clone());
                }
            }
        });
    }

    pub fn union(&self, other: &Signature) -> Signature {
        let mut out = self.clone();
        out.constants.extend(other.constants.iter().cloned());
        for (p, a) in &other.predicates {
            out.predicates.insert(p.clone(), *a);
        }
        out
    }

    /// Every ground atom formable from the signature, in sorted order.
    pub fn ground_atoms(&self) -> Vec<Atom> {
        let consts: Vec<&Symbol> = self.constants.iter().collect();
        let mut out = Vec::new();
        for (p, &arity) in &self.predicates {
            let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
            for _ in 0..arity {
                let mut next = Vec::new();
                for t in &tuples {
                    for c in &consts {
                        let mut t2 = t.clone();
                        t2.push(Term::con((*c).clone()));
                        next.push(t2);
                    }
                }
                tuples = next;
            }
            for t in tuples {
                out.push(Atom::pred(p.clone(), t));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px() -> Formula {
        Formula::pred("p", vec![Term::var("X")])
    }

    #[test]
    fn free_variables_respect_binding() {
        // p(X) & exists Y q(Y)  has only X free
        let f = Formula::and(
            px(),
            Formula::exists("Y", Formula::pred("q", vec![Term::var("Y")])),
        );
        assert_eq!(
            f.free_variables(),
            BTreeSet::from(["X".to_string()])
        );
    }

    #[test]
    fn bottom_has_no_free_variables() {
        assert!(Formula::Bottom.free_variables().is_empty());
    }

    #[test]
    fn quantified_formula_frees_only_unbound() {
        // forall X (q(X) & p(Y) -> p(X))  has only Y free
        let body = Formula::implies(
            Formula::and(
                Formula::pred("q", vec![Term::var("X")]),
                Formula::pred("p", vec![Term::var("Y")]),
            ),
            px(),
        );
        let f = Formula::forall("X", body);
        assert_eq!(f.free_variables(), BTreeSet::from(["Y".to_string()]));
    }

    #[test]
    fn empty_connective_chains() {
        assert!(Formula::and_all([]).is_top());
        assert_eq!(Formula::or_all([]), Formula::Bottom);
    }

    #[test]
    fn signature_collects_exactly_occurring_symbols() {
        let f = Formula::and(
            Formula::pred("p", vec![Term::con("a")]),
            Formula::eq(Term::var("X"), Term::con("b")),
        );
        let sig = Signature::of_formula(&f);
        assert_eq!(sig.constants, BTreeSet::from(["a".into(), "b".into()]));
        assert_eq!(sig.predicates.len(), 1);
        assert_eq!(sig.predicates["p"], 1);
    }
}

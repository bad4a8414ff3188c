//! Syntactic normalizations: rectified form, universal closure, polarity
//! analysis, the negative-formula test, and normal form (no constants in
//! strictly positive atoms).

use std::collections::BTreeSet;

use crate::syntax::{Atom, Formula, Symbol, Term};

/// First name from `base, base1, base2, ...` not in `used`. `base` keeps
/// any digit suffix stripped before numbering so renames of `X1` produce
/// `X2`, not `X11`.
pub fn fresh_name(base: &str, used: &BTreeSet<Symbol>) -> Symbol {
    if !used.contains(base) {
        return base.to_string();
    }
    let stem: &str = {
        let trimmed = base.trim_end_matches(|c: char| c.is_ascii_digit());
        if trimmed.is_empty() {
            base
        } else {
            trimmed
        }
    };
    let mut k: u64 = 1;
    loop {
        let cand = format!("{stem}{k}");
        if !used.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

impl Formula {
    /// Rectified form: no variable both bound and free, all binders
    /// pairwise distinct. Only bound variables are renamed; fresh names
    /// come from `fresh_name`, so the result is deterministic.
    pub fn rectify(&self) -> Formula {
        let mut used = self.free_variables();
        let mut env: Vec<(Symbol, Symbol)> = Vec::new();
        fn go(
            f: &Formula,
            env: &mut Vec<(Symbol, Symbol)>,
            used: &mut BTreeSet<Symbol>,
        ) -> Formula {
            match f {
                Formula::Bottom => Formula::Bottom,
                Formula::Atom(a) => {
                    let rename = |t: &Term| match t {
                        Term::Variable(v) => {
                            for (old, new) in env.iter().rev() {
                                if old == v {
                                    return Term::var(new.clone());
                                }
                            }
                            t.clone()
                        }
                        Term::Constant(_) => t.clone(),
                    };
                    Formula::Atom(match a {
                        Atom::Pred(p, args) => {
                            Atom::Pred(p.clone(), args.iter().map(rename).collect())
                        }
                        Atom::Eq(l, r) => Atom::Eq(rename(l), rename(r)),
                    })
                }
                Formula::And(l, r) => Formula::and(go(l, env, used), go(r, env, used)),
                Formula::Or(l, r) => Formula::or(go(l, env, used), go(r, env, used)),
                Formula::Implies(l, r) => {
                    Formula::implies(go(l, env, used), go(r, env, used))
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    let name = fresh_name(v, used);
                    used.insert(name.clone());
                    env.push((v.clone(), name.clone()));
                    let inner = go(g, env, used);
                    env.pop();
                    match f {
                        Formula::Forall(..) => Formula::forall(name, inner),
                        _ => Formula::exists(name, inner),
                    }
                }
            }
        }
        go(self, &mut env, &mut used)
    }

    /// Whether every binder is distinct and disjoint from the free variables.
    pub fn is_rectified(&self) -> bool {
        fn binders(f: &Formula, out: &mut Vec<Symbol>) {
            match f {
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    out.push(v.clone());
                    binders(g, out);
                }
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    binders(l, out);
                    binders(r, out);
                }
                _ => {}
            }
        }
        let mut bs = Vec::new();
        binders(self, &mut bs);
        let free = self.free_variables();
        let mut seen = BTreeSet::new();
        bs.iter().all(|b| !free.contains(b) && seen.insert(b.clone()))
    }

    /// Universally quantify all free variables, outermost binder first in
    /// lexicographic order.
    pub fn universal_closure(&self) -> Formula {
        let mut out = self.clone();
        for v in self.free_variables().into_iter().rev() {
            out = Formula::forall(v, out);
        }
        out
    }

    /// A formula is negative when every predicate occurrence lies in the
    /// antecedent of some implication.
    pub fn is_negative(&self) -> bool {
        fn go(f: &Formula, protected: bool) -> bool {
            match f {
                Formula::Bottom => true,
                Formula::Atom(Atom::Pred(..)) => protected,
                Formula::Atom(Atom::Eq(..)) => true,
                Formula::And(l, r) | Formula::Or(l, r) => {
                    go(l, protected) && go(r, protected)
                }
                Formula::Implies(l, r) => go(l, true) && go(r, protected),
                Formula::Forall(_, g) | Formula::Exists(_, g) => go(g, protected),
            }
        }
        go(self, false)
    }
}

/// One predicate-atom occurrence together with its polarity flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomOccurrence {
    pub atom: Atom,
    /// Even number of antecedents on the path from the root.
    pub positive: bool,
    /// Zero antecedents on the path from the root.
    pub strictly_positive: bool,
    /// The occurrence lies inside some negative subformula.
    pub in_negative: bool,
}

impl Formula {
    /// Every non-equality atom occurrence, in traversal order, annotated
    /// with polarity information. Expects a rectified input when the flags
    /// are used for dependency analysis.
    pub fn atom_occurrences(&self) -> Vec<AtomOccurrence> {
        fn go(f: &Formula, antecedents: usize, in_neg: bool, out: &mut Vec<AtomOccurrence>) {
            let in_neg = in_neg || f.is_negative();
            match f {
                Formula::Bottom => {}
                Formula::Atom(Atom::Eq(..)) => {}
                Formula::Atom(a @ Atom::Pred(..)) => out.push(AtomOccurrence {
                    atom: a.clone(),
                    positive: antecedents % 2 == 0,
                    strictly_positive: antecedents == 0,
                    in_negative: in_neg,
                }),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    go(l, antecedents, in_neg, out);
                    go(r, antecedents, in_neg, out);
                }
                Formula::Implies(l, r) => {
                    go(l, antecedents + 1, in_neg, out);
                    go(r, antecedents, in_neg, out);
                }
                Formula::Forall(_, g) | Formula::Exists(_, g) => {
                    go(g, antecedents, in_neg, out)
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, false, &mut out);
        out
    }

    /// Normal form for sentences: strictly positive predicate atoms keep no
    /// object constants. Each offending occurrence `p(..,c,..)` becomes
    /// `forall X (X = c -> p(..,X,..))` with a fresh variable, which is
    /// strongly equivalent to the original atom.
    pub fn to_normal_form(&self) -> Formula {
        let mut used = self.all_variables();
        fn go(f: &Formula, antecedents: usize, used: &mut BTreeSet<Symbol>) -> Formula {
            match f {
                Formula::Atom(Atom::Pred(p, args))
                    if antecedents == 0 && args.iter().any(|t| !t.is_variable()) =>
                {
                    let mut fresh_vars = Vec::new();
                    let mut guards = Vec::new();
                    let mut new_args = Vec::new();
                    for t in args {
                        match t {
                            Term::Constant(c) => {
                                let v = fresh_name("X", used);
                                used.insert(v.clone());
                                guards.push(Formula::eq(Term::var(v.clone()), Term::con(c.clone())));
                                fresh_vars.push(v.clone());
                                new_args.push(Term::var(v));
                            }
                            Term::Variable(_) => new_args.push(t.clone()),
                        }
                    }
                    let mut out = Formula::implies(
                        Formula::and_all(guards),
                        Formula::pred(p.clone(), new_args),
                    );
                    for v in fresh_vars.into_iter().rev() {
                        out = Formula::forall(v, out);
                    }
                    out
                }
                Formula::Bottom | Formula::Atom(_) => f.clone(),
                Formula::And(l, r) => {
                    Formula::and(go(l, antecedents, used), go(r, antecedents, used))
                }
                Formula::Or(l, r) => {
                    Formula::or(go(l, antecedents, used), go(r, antecedents, used))
                }
                Formula::Implies(l, r) => Formula::implies(
                    go(l, antecedents + 1, used),
                    go(r, antecedents, used),
                ),
                Formula::Forall(v, g) => Formula::forall(v.clone(), go(g, antecedents, used)),
                Formula::Exists(v, g) => Formula::exists(v.clone(), go(g, antecedents, used)),
            }
        }
        go(self, 0, &mut used)
    }

    /// Whether no strictly positive predicate atom carries an object constant.
    pub fn is_normal_form(&self) -> bool {
        self.atom_occurrences().iter().all(|occ| {
            !occ.strictly_positive
                || occ.atom.terms().iter().all(|t| t.is_variable())
        })
    }
}

/// Structural comparison form: binders renamed to `V1, V2, ...` in
/// traversal order and equality operands sorted. Two formulas that differ
/// only in bound-variable names or equality orientation canonicalize to
/// the same tree.
pub fn canonical_form(f: &Formula) -> Formula {
    fn go(f: &Formula, env: &mut Vec<(Symbol, Symbol)>, counter: &mut usize) -> Formula {
        match f {
            Formula::Bottom => Formula::Bottom,
            Formula::Atom(a) => {
                let rename = |t: &Term| match t {
                    Term::Variable(v) => {
                        for (old, new) in env.iter().rev() {
                            if old == v {
                                return Term::var(new.clone());
                            }
                        }
                        t.clone()
                    }
                    Term::Constant(_) => t.clone(),
                };
                Formula::Atom(match a {
                    Atom::Pred(p, args) => Atom::Pred(p.clone(), args.iter().map(rename).collect()),
                    Atom::Eq(l, r) => {
                        let (l, r) = (rename(l), rename(r));
                        if r < l {
                            Atom::Eq(r, l)
                        } else {
                            Atom::Eq(l, r)
                        }
                    }
                })
            }
            Formula::And(l, r) => Formula::and(go(l, env, counter), go(r, env, counter)),
            Formula::Or(l, r) => Formula::or(go(l, env, counter), go(r, env, counter)),
            Formula::Implies(l, r) => Formula::implies(go(l, env, counter), go(r, env, counter)),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                *counter += 1;
                let name = format!("V{counter}");
                env.push((v.clone(), name.clone()));
                let inner = go(g, env, counter);
                env.pop();
                match f {
                    Formula::Forall(..) => Formula::forall(name, inner),
                    _ => Formula::exists(name, inner),
                }
            }
        }
    }
    go(f, &mut Vec::new(), &mut 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: Term) -> Formula {
        Formula::pred("p", vec![t])
    }
    fn q(t: Term) -> Formula {
        Formula::pred("q", vec![t])
    }

    #[test]
    fn rectify_renames_second_binder() {
        // forall X p(X) & forall X q(X)
        let f = Formula::and(
            Formula::forall("X", p(Term::var("X"))),
            Formula::forall("X", q(Term::var("X"))),
        );
        let expected = Formula::and(
            Formula::forall("X", p(Term::var("X"))),
            Formula::forall("X1", q(Term::var("X1"))),
        );
        assert_eq!(f.rectify(), expected);
        assert!(expected.is_rectified());
    }

    #[test]
    fn rectify_fixpoint_on_rectified_input() {
        let f = p(Term::var("X"));
        assert_eq!(f.rectify(), f);
        let g = Formula::and(
            Formula::forall("X", p(Term::var("X"))),
            Formula::forall("X1", q(Term::var("X1"))),
        );
        assert_eq!(g.rectify(), g);
    }

    #[test]
    fn rectify_moves_bound_occurrence_away_from_free_variable() {
        // exists X p(X) & q(X), with the second X free
        let f = Formula::and(
            Formula::exists("X", p(Term::var("X"))),
            q(Term::var("X")),
        );
        let expected = Formula::and(
            Formula::exists("X1", p(Term::var("X1"))),
            q(Term::var("X")),
        );
        assert_eq!(f.rectify(), expected);
    }

    #[test]
    fn universal_closure_orders_variables() {
        let f = Formula::and(p(Term::var("X")), q(Term::var("Y")));
        assert_eq!(
            f.universal_closure(),
            Formula::forall("X", Formula::forall("Y", f.clone()))
        );
        // a sentence closes to itself
        let g = Formula::forall("X", p(Term::var("X")));
        assert_eq!(g.universal_closure(), g);
    }

    #[test]
    fn negation_is_negative() {
        assert!(Formula::not(p(Term::var("X"))).is_negative());
        assert!(!p(Term::var("X")).is_negative());
        // -exists Z a(X,Z)
        let f = Formula::not(Formula::exists(
            "Z",
            Formula::pred("a", vec![Term::var("X"), Term::var("Z")]),
        ));
        assert!(f.is_negative());
    }

    #[test]
    fn occurrence_polarities() {
        // q(X) -> p(X): p strictly positive; q sits under one antecedent,
        // so by the even-count rule it is not positive
        let f = Formula::implies(q(Term::var("X")), p(Term::var("X")));
        let occs = f.atom_occurrences();
        assert_eq!(occs.len(), 2);
        assert!(!occs[0].positive && !occs[0].strictly_positive);
        assert!(occs[1].positive && occs[1].strictly_positive);

        // (p(X) -> false) -> false: p positive (two antecedents), inside a
        // negative subformula
        let g = Formula::not(Formula::not(p(Term::var("X"))));
        let occs = g.atom_occurrences();
        assert_eq!(occs.len(), 1);
        assert!(occs[0].positive && !occs[0].strictly_positive && occs[0].in_negative);

        // -r(X) -> p(X): the r occurrence sits inside the negative -r(X)
        let h = Formula::implies(
            Formula::not(Formula::pred("r", vec![Term::var("X")])),
            p(Term::var("X")),
        );
        let occs = h.atom_occurrences();
        let r_occ = occs.iter().find(|o| matches!(&o.atom, Atom::Pred(p, _) if p == "r"));
        assert!(r_occ.unwrap().in_negative);
        assert!(!occs.last().unwrap().in_negative);
    }

    #[test]
    fn negative_formula_has_no_strictly_positive_atoms() {
        let f = Formula::not(Formula::and(p(Term::var("X")), q(Term::con("a"))));
        assert!(f.is_negative());
        assert!(f.atom_occurrences().iter().all(|o| !o.strictly_positive));
    }

    #[test]
    fn normal_form_guards_strictly_positive_constants() {
        // p(a) becomes forall X (X = a -> p(X))
        let f = p(Term::con("a"));
        let expected = Formula::forall(
            "X",
            Formula::implies(
                Formula::eq(Term::var("X"), Term::con("a")),
                p(Term::var("X")),
            ),
        );
        assert_eq!(f.to_normal_form(), expected);
        assert!(expected.is_normal_form());
        // constants under an antecedent stay put
        let g = Formula::implies(p(Term::con("b")), p(Term::var("X")));
        assert_eq!(g.to_normal_form(), g);
        assert!(g.is_normal_form());
    }

    #[test]
    fn canonical_form_identifies_alpha_variants() {
        let f = Formula::forall("X", p(Term::var("X")));
        let g = Formula::forall("Z", p(Term::var("Z")));
        assert_eq!(canonical_form(&f), canonical_form(&g));
        let e1 = Formula::eq(Term::var("X"), Term::con("a"));
        let e2 = Formula::eq(Term::con("a"), Term::var("X"));
        assert_eq!(canonical_form(&e1), canonical_form(&e2));
    }
}

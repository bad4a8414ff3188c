//! Substitutions mapping object variables to terms.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::{Atom, Formula, Symbol, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Symbol, Term>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstError {
    /// A binder in the target formula would capture a variable introduced
    /// by the substitution.
    #[error("substitution capture: binder for {0} captures a substituted term")]
    Capture(Symbol),
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn bind(&mut self, var: impl Into<Symbol>, term: Term) {
        self.map.insert(var.into(), term);
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.map.iter()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Variable(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Constant(_) => t.clone(),
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        match a {
            Atom::Pred(p, args) => {
                Atom::Pred(p.clone(), args.iter().map(|t| self.apply_term(t)).collect())
            }
            Atom::Eq(l, r) => Atom::Eq(self.apply_term(l), self.apply_term(r)),
        }
    }
}

impl FromIterator<(Symbol, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Symbol, Term)>>(iter: I) -> Substitution {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

impl Formula {
    /// Simultaneous replacement of free variables. Bindings for variables
    /// shadowed by a quantifier are suspended under that quantifier; a
    /// binder whose variable occurs in a substituted term is a capture
    /// error.
    pub fn apply_substitution(&self, theta: &Substitution) -> Result<Formula, SubstError> {
        fn go(
            f: &Formula,
            theta: &Substitution,
            shadowed: &mut Vec<Symbol>,
        ) -> Result<Formula, SubstError> {
            Ok(match f {
                Formula::Bottom => Formula::Bottom,
                Formula::Atom(a) => {
                    let restricted: Substitution = theta
                        .iter()
                        .filter(|(v, _)| !shadowed.contains(v))
                        .map(|(v, t)| (v.clone(), t.clone()))
                        .collect();
                    Formula::Atom(restricted.apply_atom(a))
                }
                Formula::And(l, r) => {
                    Formula::and(go(l, theta, shadowed)?, go(r, theta, shadowed)?)
                }
                Formula::Or(l, r) => {
                    Formula::or(go(l, theta, shadowed)?, go(r, theta, shadowed)?)
                }
                Formula::Implies(l, r) => {
                    Formula::implies(go(l, theta, shadowed)?, go(r, theta, shadowed)?)
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    // A binder captures if some live binding sends a free
                    // variable of g to a term mentioning v.
                    let free = g.free_variables();
                    for (from, to) in theta.iter() {
                        if shadowed.contains(from) || from == v || !free.contains(from) {
                            continue;
                        }
                        if matches!(to, Term::Variable(w) if w == v) {
                            return Err(SubstError::Capture(v.clone()));
                        }
                    }
                    shadowed.push(v.clone());
                    let inner = go(g, theta, shadowed);
                    shadowed.pop();
                    match f {
                        Formula::Forall(..) => Formula::forall(v.clone(), inner?),
                        _ => Formula::exists(v.clone(), inner?),
                    }
                }
            })
        }
        go(self, theta, &mut Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    #[test]
    fn replaces_free_variable() {
        let f = Formula::pred("p", vec![Term::var("X"), Term::var("Y")]);
        let theta: Substitution = [("X".to_string(), Term::con("a"))].into_iter().collect();
        assert_eq!(
            f.apply_substitution(&theta).unwrap(),
            Formula::pred("p", vec![Term::con("a"), Term::var("Y")])
        );
    }

    #[test]
    fn identity_substitution_is_noop() {
        let f = Formula::pred("p", vec![Term::var("X")]);
        assert_eq!(f.apply_substitution(&Substitution::new()).unwrap(), f);
    }

    #[test]
    fn bound_variable_is_untouched() {
        // exists Z q(Z, X) with X -> Zp
        let f = Formula::exists("Z", Formula::pred("q", vec![Term::var("Z"), Term::var("X")]));
        let theta: Substitution = [("X".to_string(), Term::var("Zp"))].into_iter().collect();
        assert_eq!(
            f.apply_substitution(&theta).unwrap(),
            Formula::exists("Z", Formula::pred("q", vec![Term::var("Z"), Term::var("Zp")]))
        );
    }

    #[test]
    fn capture_is_detected() {
        // exists Z q(Z, X) with X -> Z would capture
        let f = Formula::exists("Z", Formula::pred("q", vec![Term::var("Z"), Term::var("X")]));
        let theta: Substitution = [("X".to_string(), Term::var("Z"))].into_iter().collect();
        assert_eq!(
            f.apply_substitution(&theta),
            Err(SubstError::Capture("Z".to_string()))
        );
    }

    #[test]
    fn shadowed_binding_is_suspended() {
        // forall X p(X) with X -> a stays put
        let f = Formula::forall("X", Formula::pred("p", vec![Term::var("X")]));
        let theta: Substitution = [("X".to_string(), Term::con("a"))].into_iter().collect();
        assert_eq!(f.apply_substitution(&theta).unwrap(), f);
    }
}

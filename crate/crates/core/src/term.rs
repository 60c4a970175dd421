//! Terms over a signature, their evaluation, and exhaustive identity checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Element, FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A term built from variables, element literals and operation symbols.
///
/// `Const` is an element literal: it lets polynomials such as `x ∨ 0` be
/// written without adding a nullary symbol to the signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(Element),
    App { symbol: String, args: Vec<Term> },
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App {
            symbol: symbol.into(),
            args,
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Const(_) => {}
            Term::App { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Replaces each variable `i` by `f(i)`.
    pub fn substitute(&self, f: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(i) => f(*i),
            Term::Const(c) => Term::Const(*c),
            Term::App { symbol, args } => Term::App {
                symbol: symbol.clone(),
                args: args.iter().map(|a| a.substitute(f)).collect(),
            },
        }
    }

    /// Checks symbol names and arities against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) | Term::Const(_) => Ok(()),
            Term::App { symbol, args } => {
                let arity = sig
                    .arity_of(symbol)
                    .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }
}

pub(crate) fn var_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        _ => format!("x{i}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => f.write_str(&var_name(*i)),
            Term::Const(c) => write!(f, "{c}"),
            Term::App { symbol, args } if args.is_empty() => f.write_str(symbol),
            Term::App { symbol, args } => {
                write!(f, "{symbol}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A term with symbols resolved to operation indices.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Var(usize),
    Const(Element),
    App(usize, Vec<Compiled>),
}

impl Compiled {
    pub(crate) fn new(alg: &FiniteAlgebra, t: &Term) -> Result<Compiled> {
        t.check(alg.signature())?;
        Self::resolve(alg, t)
    }

    fn resolve(alg: &FiniteAlgebra, t: &Term) -> Result<Compiled> {
        Ok(match t {
            Term::Var(i) => Compiled::Var(*i),
            Term::Const(c) => {
                alg.check_element(*c)?;
                Compiled::Const(*c)
            }
            Term::App { symbol, args } => Compiled::App(
                alg.signature().index_of(symbol).expect("checked"),
                args.iter()
                    .map(|a| Self::resolve(alg, a))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// `asg` must bind every variable of the term.
    pub(crate) fn eval(&self, alg: &FiniteAlgebra, asg: &[Element]) -> Element {
        match self {
            Compiled::Var(i) => asg[*i],
            Compiled::Const(c) => *c,
            Compiled::App(op, args) => {
                let mut buf = [0usize; 8];
                if args.len() <= buf.len() {
                    for (slot, a) in buf.iter_mut().zip(args) {
                        *slot = a.eval(alg, asg);
                    }
                    alg.apply(*op, &buf[..args.len()])
                } else {
                    let vals: Vec<Element> = args.iter().map(|a| a.eval(alg, asg)).collect();
                    alg.apply(*op, &vals)
                }
            }
        }
    }
}

/// Evaluates `t` with variable `i` bound to `asg[i]`.
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, asg: &[Element]) -> Result<Element> {
    let compiled = Compiled::new(alg, t)?;
    if let Some(&unbound) = t.variables().iter().find(|&&v| v >= asg.len()) {
        return Err(Error::UnboundVariable(unbound));
    }
    if let Some(&bad) = asg.iter().find(|&&e| e >= alg.size()) {
        return Err(Error::OutOfRange {
            element: bad,
            size: alg.size(),
        });
    }
    Ok(compiled.eval(alg, asg))
}

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    /// First failing assignment, as `(variable, value)` pairs in variable order.
    Fails(Vec<(usize, Element)>),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

pub fn satisfies_identity(alg: &FiniteAlgebra, lhs: &Term, rhs: &Term) -> Result<IdentityCheck> {
    satisfies_identity_with(alg, lhs, rhs, &Limits::default())
}

/// Checks `lhs ≈ rhs` over all `n^k` assignments to the `k` variables that
/// occur in either side, in lexicographic order of the assignment.
pub fn satisfies_identity_with(
    alg: &FiniteAlgebra,
    lhs: &Term,
    rhs: &Term,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let l = Compiled::new(alg, lhs)?;
    let r = Compiled::new(alg, rhs)?;
    let vars: Vec<usize> = lhs.variables().union(&rhs.variables()).copied().collect();
    let n = alg.size();
    let total = (n as u64)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u64::MAX);
    Limits::check("identity assignments", total, limits.identity_assignments)?;

    let width = vars.last().map_or(0, |&v| v + 1);
    let mut asg = vec![0; width];
    let mut counter = vec![0; vars.len()];
    loop {
        for (&v, &c) in vars.iter().zip(&counter) {
            asg[v] = c;
        }
        if l.eval(alg, &asg) != r.eval(alg, &asg) {
            return Ok(IdentityCheck::Fails(
                vars.iter().map(|&v| (v, asg[v])).collect(),
            ));
        }
        // odometer, last variable fastest
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return Ok(IdentityCheck::Holds);
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < n {
                break;
            }
            counter[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::diamond_semilattice;

    fn join(a: Term, b: Term) -> Term {
        Term::app("join", vec![a, b])
    }

    #[test]
    fn evaluation() {
        let a = diamond_semilattice();
        assert_eq!(eval_term(&a, &Term::Var(0), &[2]).unwrap(), 2);
        let t = join(Term::Var(0), join(Term::Var(1), Term::Var(0)));
        // 1 ∨ (2 ∨ 1) = 1 ∨ 3 = 3
        assert_eq!(eval_term(&a, &t, &[1, 2]).unwrap(), 3);
        assert_eq!(eval_term(&a, &t, &[1]), Err(Error::UnboundVariable(1)));
        let c = a.with_constant("c", 1).unwrap();
        assert_eq!(eval_term(&c, &Term::app("c", vec![]), &[]).unwrap(), 1);
        assert!(matches!(
            eval_term(&a, &Term::app("join", vec![Term::Var(0)]), &[0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn identities_on_diamond() {
        let a = diamond_semilattice();
        let (x, y) = (Term::Var(0), Term::Var(1));
        assert!(satisfies_identity(&a, &join(x.clone(), y.clone()), &join(y.clone(), x.clone()))
            .unwrap()
            .holds());
        assert_eq!(
            satisfies_identity(&a, &join(x.clone(), y.clone()), &x).unwrap(),
            IdentityCheck::Fails(vec![(0, 0), (1, 1)])
        );
        assert!(satisfies_identity(&a, &x, &x).unwrap().holds());
    }

    #[test]
    fn guard_rejects_huge_checks() {
        let a = diamond_semilattice();
        let lhs = (0..12).fold(Term::Var(0), |t, i| join(t, Term::Var(i)));
        assert!(satisfies_identity(&a, &lhs, &lhs)
            .unwrap_err()
            .is_resource_limit());
    }

    #[test]
    fn display_round() {
        let t = join(Term::Var(0), join(Term::Var(4), Term::Const(2)));
        assert_eq!(t.to_string(), "join(x,join(x4,2))");
    }
}

//! A small DPLL engine over CNF, plus a Tseitin encoder for [`Formula`].

use std::collections::HashMap;

use crate::atoms::Atom;
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    fn negated(self) -> Lit {
        Lit { var: self.var, positive: !self.positive }
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

enum Encoded {
    Const(bool),
    Lit(Lit),
}

/// Tseitin encoding. Atom `a` is variable `a.index()`; auxiliary variables
/// are allocated above `first_aux`.
pub(crate) struct Encoder {
    pub cnf: Cnf,
    memo: HashMap<Formula, Lit>,
}

impl Encoder {
    pub fn new(first_aux: usize) -> Self {
        Encoder { cnf: Cnf { num_vars: first_aux, clauses: Vec::new() }, memo: HashMap::new() }
    }

    fn fresh(&mut self) -> Lit {
        let var = self.cnf.num_vars as u32;
        self.cnf.num_vars += 1;
        Lit { var, positive: true }
    }

    fn atom(&mut self, a: Atom) -> Lit {
        if a.index() >= self.cnf.num_vars {
            self.cnf.num_vars = a.index() + 1;
        }
        Lit { var: a.index() as u32, positive: true }
    }

    fn encode(&mut self, f: &Formula) -> Encoded {
        match f {
            Formula::True => Encoded::Const(true),
            Formula::False => Encoded::Const(false),
            Formula::Atom(a) => Encoded::Lit(self.atom(*a)),
            Formula::Not(inner) => match self.encode(inner) {
                Encoded::Const(b) => Encoded::Const(!b),
                Encoded::Lit(l) => Encoded::Lit(l.negated()),
            },
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                if let Some(&lit) = self.memo.get(f) {
                    return Encoded::Lit(lit);
                }
                let (el, er) = (self.encode(l), self.encode(r));
                // Fold constants; after this both sides are literals.
                let (x, y) = match (f, el, er) {
                    (Formula::And(..), Encoded::Const(false), _) | (Formula::And(..), _, Encoded::Const(false)) => {
                        return Encoded::Const(false)
                    }
                    (Formula::And(..), Encoded::Const(true), e) | (Formula::And(..), e, Encoded::Const(true)) => {
                        return e
                    }
                    (Formula::Or(..), Encoded::Const(true), _) | (Formula::Or(..), _, Encoded::Const(true)) => {
                        return Encoded::Const(true)
                    }
                    (Formula::Or(..), Encoded::Const(false), e) | (Formula::Or(..), e, Encoded::Const(false)) => {
                        return e
                    }
                    (Formula::Implies(..), Encoded::Const(false), _)
                    | (Formula::Implies(..), _, Encoded::Const(true)) => return Encoded::Const(true),
                    (Formula::Implies(..), Encoded::Const(true), e) => return e,
                    (Formula::Implies(..), Encoded::Lit(x), Encoded::Const(false)) => return Encoded::Lit(x.negated()),
                    (_, Encoded::Lit(x), Encoded::Lit(y)) => (x, y),
                    _ => unreachable!(),
                };
                let v = self.fresh();
                let n = v.negated();
                match f {
                    Formula::And(..) => {
                        self.cnf.clauses.push(vec![n, x]);
                        self.cnf.clauses.push(vec![n, y]);
                        self.cnf.clauses.push(vec![v, x.negated(), y.negated()]);
                    }
                    Formula::Or(..) => {
                        self.cnf.clauses.push(vec![n, x, y]);
                        self.cnf.clauses.push(vec![v, x.negated()]);
                        self.cnf.clauses.push(vec![v, y.negated()]);
                    }
                    _ => {
                        self.cnf.clauses.push(vec![n, x.negated(), y]);
                        self.cnf.clauses.push(vec![v, x]);
                        self.cnf.clauses.push(vec![v, y.negated()]);
                    }
                }
                self.memo.insert(f.clone(), v);
                Encoded::Lit(v)
            }
        }
    }

    /// Adds `f` as a hard constraint.
    pub fn assert(&mut self, f: &Formula) {
        if let Formula::And(l, r) = f {
            self.assert(l);
            self.assert(r);
            return;
        }
        match self.encode(f) {
            Encoded::Const(true) => {}
            Encoded::Const(false) => self.cnf.clauses.push(Vec::new()),
            Encoded::Lit(l) => self.cnf.clauses.push(vec![l]),
        }
    }
}

/// Complete DPLL search: unit propagation to fixpoint, then branch on the
/// lowest unassigned variable of some open clause.
pub(crate) fn satisfiable(cnf: &Cnf, assumptions: &[Lit]) -> bool {
    let mut num_vars = cnf.num_vars;
    for l in assumptions {
        num_vars = num_vars.max(l.var as usize + 1);
    }
    let mut assign: Vec<Option<bool>> = vec![None; num_vars];
    for l in assumptions {
        match assign[l.var as usize] {
            Some(v) if v != l.positive => return false,
            _ => assign[l.var as usize] = Some(l.positive),
        }
    }
    search(&cnf.clauses, &mut assign)
}

fn value(assign: &[Option<bool>], l: Lit) -> Option<bool> {
    assign[l.var as usize].map(|v| v == l.positive)
}

/// Returns false on conflict. Newly assigned variables are pushed on `trail`.
fn propagate(clauses: &[Vec<Lit>], assign: &mut [Option<bool>], trail: &mut Vec<u32>) -> bool {
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &l in clause {
                match value(assign, l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => return false,
                (1, Some(l)) => {
                    assign[l.var as usize] = Some(l.positive);
                    trail.push(l.var);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(clauses: &[Vec<Lit>], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    let undo = |assign: &mut Vec<Option<bool>>, trail: &[u32]| {
        for &v in trail {
            assign[v as usize] = None;
        }
    };
    if !propagate(clauses, assign, &mut trail) {
        undo(assign, &trail);
        return false;
    }
    let branch = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| value(assign, l) == Some(true)))
        .flat_map(|c| c.iter())
        .filter(|l| assign[l.var as usize].is_none())
        .map(|l| l.var)
        .min();
    let Some(var) = branch else {
        undo(assign, &trail);
        return true;
    };
    for polarity in [true, false] {
        assign[var as usize] = Some(polarity);
        if search(clauses, assign) {
            assign[var as usize] = None;
            undo(assign, &trail);
            return true;
        }
        assign[var as usize] = None;
    }
    undo(assign, &trail);
    false
}

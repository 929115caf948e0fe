//! Interned atoms and dense atom sets.
//!
//! Every atom of a knowledge base (ontology and rule atoms share one
//! namespace) gets a stable integer id in first-occurrence order. K-atom
//! sets, partitions and operator iterates are all [`AtomSet`]s over those
//! ids.

use std::collections::HashMap;
use std::fmt;

/// An interned ground atom. Equal names map to the same id within one
/// [`Symbols`] table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub fn from_index(index: usize) -> Self {
        Atom(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Returns true if `name` is a valid atom identifier: `[a-z][A-Za-z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Name table. Ids are assigned in first-occurrence order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    names: Vec<String>,
    ids: HashMap<String, Atom>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(&atom) = self.ids.get(name) {
            return atom;
        }
        let atom = Atom::from_index(self.names.len());
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), atom);
        atom
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        (0..self.names.len()).map(Atom::from_index)
    }
}

/// A set of atoms, stored as a bitset over atom ids.
///
/// The word vector never has trailing zero words, so derived equality,
/// ordering and hashing are set semantics.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    words: Vec<u64>,
}

impl AtomSet {
    pub fn new() -> Self {
        Self::default()
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        let (w, b) = (atom.index() / 64, atom.index() % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, atom: Atom) -> bool {
        let (w, b) = (atom.index() / 64, atom.index() % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.normalize();
        present
    }

    pub fn contains(&self, atom: Atom) -> bool {
        let (w, b) = (atom.index() / 64, atom.index() % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut out = AtomSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() };
        out.normalize();
        out
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut out = AtomSet {
            words: self.words.iter().enumerate().map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0)).collect(),
        };
        out.normalize();
        out
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words.iter().enumerate().all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Atoms in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(Atom::from_index(w * 64 + b))
            })
        })
    }

    pub fn first(&self) -> Option<Atom> {
        self.iter().next()
    }

    /// All subsets of `self`, in binary-counter order. Only meant for the
    /// small universes the brute-force checkers work on.
    pub fn subsets(&self) -> impl Iterator<Item = AtomSet> {
        let members: Vec<Atom> = self.iter().collect();
        assert!(members.len() < 32, "subset enumeration over {} atoms", members.len());
        (0u64..1 << members.len()).map(move |mask| {
            members.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &a)| a).collect()
        })
    }

    pub fn names<'a>(&'a self, symbols: &'a Symbols) -> impl Iterator<Item = &'a str> + 'a {
        self.iter().map(|a| symbols.name(a))
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut set = AtomSet::new();
        for atom in iter {
            set.insert(atom);
        }
        set
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        for atom in iter {
            self.insert(atom);
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.index())).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[usize]) -> AtomSet {
        ids.iter().map(|&i| Atom::from_index(i)).collect()
    }

    #[test]
    fn atom_names() {
        assert!(is_atom_name("a"));
        assert!(is_atom_name("volunteer_2X"));
        assert!(!is_atom_name("A"));
        assert!(!is_atom_name("_a"));
        assert!(!is_atom_name(""));
        assert!(!is_atom_name("a-b"));
    }

    #[test]
    fn interning_is_stable() {
        let mut s = Symbols::new();
        let a = s.intern("a");
        let b = s.intern("b");
        assert_eq!(s.intern("a"), a);
        assert_eq!(a.index(), 0);
        assert_eq!(b.index(), 1);
        assert_eq!(s.name(b), "b");
    }

    #[test]
    fn remove_keeps_normal_form() {
        let mut x = set(&[3, 70]);
        x.remove(Atom::from_index(70));
        assert_eq!(x, set(&[3]));
        x.remove(Atom::from_index(3));
        assert_eq!(x, AtomSet::new());
        assert!(x.is_empty());
    }

    #[test]
    fn subsets_of_three() {
        let all: Vec<AtomSet> = set(&[0, 2, 5]).subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.contains(&set(&[0, 5])));
    }

    proptest! {
        #[test]
        fn bitset_matches_btreeset(
            a in proptest::collection::btree_set(0usize..150, 0..20),
            b in proptest::collection::btree_set(0usize..150, 0..20),
        ) {
            let (x, y) = (set(&a.iter().copied().collect::<Vec<_>>()), set(&b.iter().copied().collect::<Vec<_>>()));
            let ids = |s: &AtomSet| s.iter().map(|a| a.index()).collect::<std::collections::BTreeSet<_>>();
            prop_assert_eq!(ids(&x.union(&y)), a.union(&b).copied().collect());
            prop_assert_eq!(ids(&x.intersection(&y)), a.intersection(&b).copied().collect());
            prop_assert_eq!(ids(&x.difference(&y)), a.difference(&b).copied().collect());
            prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
            prop_assert_eq!(x.is_disjoint(&y), a.is_disjoint(&b));
            prop_assert_eq!(x.len(), a.len());
            prop_assert_eq!(x.union(&y), y.union(&x));
        }
    }
}

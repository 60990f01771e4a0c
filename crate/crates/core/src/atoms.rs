use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A ground propositional atom, identified by its name.
///
/// Names start with a lowercase letter, continue with letters, digits or
/// underscores, and may carry one parenthesized nonnegative integer
/// argument, as in `d(120)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom after checking the name syntax.
    pub fn new(name: &str) -> Option<Self> {
        Self::is_valid_name(name).then(|| Atom(Arc::from(name)))
    }

    /// Builds an atom without validating the name. Used for names the
    /// library generates itself.
    pub(crate) fn new_unchecked(name: &str) -> Self {
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_valid_name(name: &str) -> bool {
        let (stem, arg) = match name.find('(') {
            Some(open) => {
                let Some(arg) = name[open + 1..].strip_suffix(')') else {
                    return false;
                };
                (&name[..open], Some(arg))
            }
            None => (name, None),
        };
        let mut chars = stem.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        let arg_ok = arg.is_none_or(|a| !a.is_empty() && a.bytes().all(|b| b.is_ascii_digit()));
        head_ok && tail_ok && arg_ok
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Shorthand for tests and examples; panics on an invalid name.
pub fn atom(name: &str) -> Atom {
    Atom::new(name).unwrap_or_else(|| panic!("invalid atom name `{name}`"))
}

/// A finite set of atoms, iterated in name order.
///
/// Sets are ordered canonically: first by cardinality, then
/// lexicographically on their sorted members. Model lists are reported in
/// this order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AtomSet(BTreeSet<Atom>);

impl AtomSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.0.contains(name)
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: &Atom) -> bool {
        self.0.remove(a)
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Atom> {
        self.0.iter()
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        AtomSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn extend_from(&mut self, other: &AtomSet) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_superset(&self, other: &AtomSet) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn as_btree(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<Atom> {
        self.0.iter().cloned().collect()
    }

    /// All subsets of this set, in canonical order.
    ///
    /// Panics if the set has 64 or more members.
    pub fn subsets(&self) -> Vec<AtomSet> {
        let members = self.to_vec();
        assert!(members.len() < 64, "subset enumeration over {} atoms", members.len());
        let mut out: Vec<AtomSet> = (0..1u64 << members.len())
            .map(|mask| select(&members, mask))
            .collect();
        out.sort();
        out
    }
}

/// Picks `members[i]` for every set bit `i` of `mask`.
pub(crate) fn select(members: &[Atom], mask: u64) -> AtomSet {
    members
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a.clone())
        .collect()
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        AtomSet(iter.into_iter().collect())
    }
}

impl Extend<Atom> for AtomSet {
    fn extend<I: IntoIterator<Item = Atom>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for AtomSet {
    type Item = Atom;
    type IntoIter = btree_set::IntoIter<Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = &'a Atom;
    type IntoIter = btree_set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints `{a,b,c}`, the same form the program syntax uses.
impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Builds an [`AtomSet`] from names; panics on an invalid name.
#[macro_export]
macro_rules! atoms {
    () => { $crate::AtomSet::new() };
    ($($name:expr),+ $(,)?) => {
        [$($name),+].into_iter().map($crate::atoms::atom).collect::<$crate::AtomSet>()
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_names() {
        for ok in ["a", "j1", "d(120)", "nCal_2", "x(0)"] {
            assert!(Atom::is_valid_name(ok), "{ok}");
        }
        for bad in ["", "A", "1a", "d()", "d(x)", "d(1", "a-b", "_a", "d(1)(2)"] {
            assert!(!Atom::is_valid_name(bad), "{bad}");
        }
    }

    #[test]
    fn canonical_order_is_cardinality_then_lexicographic() {
        let mut sets = [atoms!["b"], atoms!["a", "c"], atoms![], atoms!["a"], atoms!["a", "b"]];
        sets.sort();
        let shown: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{a}", "{b}", "{a,b}", "{a,c}"]);
    }

    #[test]
    fn subsets_of_three() {
        let all = atoms!["a", "b", "c"].subsets();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], AtomSet::new());
        assert_eq!(all[7], atoms!["a", "b", "c"]);
    }
}

//! Finite invertible Mealy transducers acting on the rooted `d`-ary tree.
//!
//! A [`TreeAutomorphism`] is an initial machine: a finite set of states,
//! each with a transition row and an output permutation, plus a start
//! state. Canonical representatives (reachable, behaviorally reduced,
//! renumbered breadth-first from the start) are unique per automorphism, so
//! the word problem reduces to structural equality.
//!
//! Composition follows the right-action convention: in the product `gh` the
//! automorphism `g` acts first, and `(gh)(w) = h(g(w))`.

mod analysis;
mod parse;

pub use analysis::{OrderBound, PermSeq, Portrait, ShVerdict};
pub use parse::{parse_wreath, Definitions};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// Default guard against runaway state growth in machine constructions.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

/// A permutation of the alphabet `{0, …, d−1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<Letter>,
}

impl Permutation {
    pub fn new(images: Vec<Letter>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &y in &images {
            if (y as usize) >= d || seen[y as usize] {
                return Err(Error::NonPermutation { state: format!("{images:?}") });
            }
            seen[y as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d as u8).collect() }
    }

    /// The long cycle `(0, 1, …, d−1)`, sending `x` to `x + 1 mod d`.
    pub fn long_cycle(d: usize) -> Self {
        Permutation { images: (0..d).map(|x| ((x + 1) % d) as u8).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: Letter) -> Letter {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// Composition with `self` acting first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&y| other.apply(y)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Permutation { images }
    }

    /// Whether this is a power of the long cycle, i.e. `x ↦ x + k mod d`.
    pub fn is_cycle_power(&self) -> bool {
        let d = self.images.len();
        let k = self.images[0] as usize;
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| y as usize == (x + k) % d)
    }

    /// Cycle notation, fixed points omitted; the identity prints as `()`.
    /// Letters above 9 are comma-separated inside each cycle.
    pub fn to_cycles(&self) -> String {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut out = String::new();
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur] as usize;
            }
            out.push('(');
            if d <= 10 {
                for v in &cycle {
                    out.push_str(&v.to_string());
                }
            } else {
                out.push_str(&cycle.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Parses cycle notation such as `(01)`, `(012)(34)` or `()`.
    pub fn parse_cycles(text: &str, d: usize) -> Result<Permutation> {
        let err = |msg: String| Error::Parse { line: 1, col: 1, msg };
        let mut images: Vec<Letter> = (0..d as u8).collect();
        let mut touched = vec![false; d];
        let text = text.trim();
        let mut rest = text;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err(format!("expected `(` in `{text}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| err(format!("unbalanced cycle notation `{text}`")))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            let letters: Vec<usize> = if body.contains(',') {
                body.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| err(format!("bad letter `{t}`"))))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|v| v as usize)
                            .ok_or_else(|| err(format!("bad letter `{c}`")))
                    })
                    .collect::<Result<_>>()?
            };
            if letters.is_empty() {
                continue;
            }
            for &l in &letters {
                if l >= d {
                    return Err(err(format!("letter {l} out of range for alphabet size {d}")));
                }
                if touched[l] {
                    return Err(err(format!("letter {l} appears twice in cycle notation")));
                }
                touched[l] = true;
            }
            for w in letters.windows(2) {
                images[w[0]] = w[1] as u8;
            }
            images[*letters.last().unwrap()] = letters[0] as u8;
        }
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_cycles())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    next: Vec<u32>,
    out: Permutation,
}

/// An automorphism of the rooted `d`-ary tree, given as a pointed invertible
/// Mealy machine. The `canonical` flag records that the machine has been
/// reachable-restricted, behaviorally reduced and BFS-renumbered; canonical
/// machines are equal as automorphisms iff they are structurally equal.
#[derive(Debug, Clone)]
pub struct TreeAutomorphism {
    d: usize,
    states: Vec<State>,
    start: u32,
    canonical: bool,
}

impl PartialEq for TreeAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.start == other.start && self.states == other.states
    }
}

impl Eq for TreeAutomorphism {}

impl std::hash::Hash for TreeAutomorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.start.hash(state);
        self.states.hash(state);
    }
}

impl TreeAutomorphism {
    /// The identity automorphism.
    pub fn identity(d: usize) -> Self {
        TreeAutomorphism {
            d,
            states: vec![State { next: vec![0; d], out: Permutation::identity(d) }],
            start: 0,
            canonical: true,
        }
    }

    /// Builds a machine from explicit state data: `rows[q] = (next, out)`.
    pub fn from_parts(d: usize, rows: Vec<(Vec<u32>, Permutation)>, start: u32) -> Result<Self> {
        for (i, (next, out)) in rows.iter().enumerate() {
            if next.len() != d || out.degree() != d {
                return Err(Error::InvalidArgument(format!("state {i} has wrong arity")));
            }
            if next.iter().any(|&q| q as usize >= rows.len()) {
                return Err(Error::InvalidArgument(format!("state {i} has a dangling transition")));
            }
        }
        if start as usize >= rows.len() {
            return Err(Error::InvalidArgument("start state out of range".into()));
        }
        let states = rows.into_iter().map(|(next, out)| State { next, out }).collect();
        Ok(TreeAutomorphism { d, states, start, canonical: false }.minimize())
    }

    /// The wreath element with the given first-level sections and root
    /// permutation: acts on the first letter by `perm` and below vertex `x`
    /// by `sections[x]`.
    pub fn wreath(sections: &[TreeAutomorphism], perm: &Permutation) -> Result<Self> {
        let d = perm.degree();
        if sections.len() != d {
            return Err(Error::InvalidArgument("wreath arity mismatch".into()));
        }
        for s in sections {
            if s.d != d {
                return Err(Error::AlphabetMismatch { left: s.d, right: d });
            }
        }
        let mut states = vec![State { next: vec![0; d], out: perm.clone() }];
        let mut next_row = Vec::with_capacity(d);
        for s in sections {
            let offset = states.len() as u32;
            next_row.push(offset + s.start);
            states.extend(s.states.iter().map(|st| State {
                next: st.next.iter().map(|&q| q + offset).collect(),
                out: st.out.clone(),
            }));
        }
        states[0].next = next_row;
        Ok(TreeAutomorphism { d, states, start: 0, canonical: false }.minimize())
    }

    /// `g^{(1)} = (g, g, …, g)`: trivial on the first level, `g` below.
    pub fn level_lift(&self) -> TreeAutomorphism {
        let sections: Vec<_> = (0..self.d).map(|_| self.clone()).collect();
        TreeAutomorphism::wreath(&sections, &Permutation::identity(self.d)).expect("same alphabet")
    }

    pub fn alphabet_size(&self) -> usize {
        self.d
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Root permutation: the action on the first letter.
    pub fn root_permutation(&self) -> &Permutation {
        &self.states[self.start as usize].out
    }

    pub(crate) fn state_output(&self, q: u32) -> &Permutation {
        &self.states[q as usize].out
    }

    pub(crate) fn state_next(&self, q: u32, x: Letter) -> u32 {
        self.states[q as usize].next[x as usize]
    }

    pub(crate) fn start_state(&self) -> u32 {
        self.start
    }

    fn check_letter(&self, x: Letter) -> Result<()> {
        if (x as usize) < self.d {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange { letter: x, d: self.d })
        }
    }

    /// The image of a finite word.
    pub fn act(&self, word: &[Letter]) -> Result<Word> {
        let mut state = self.start;
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            self.check_letter(x)?;
            let st = &self.states[state as usize];
            out.push(st.out.apply(x));
            state = st.next[x as usize];
        }
        Ok(out)
    }

    /// The section (state) at vertex `v`, canonicalized.
    pub fn section(&self, v: &[Letter]) -> Result<TreeAutomorphism> {
        let mut state = self.start;
        for &x in v {
            self.check_letter(x)?;
            state = self.states[state as usize].next[x as usize];
        }
        Ok(TreeAutomorphism {
            d: self.d,
            states: self.states.clone(),
            start: state,
            canonical: false,
        }
        .minimize())
    }

    /// The product `self · other`, with `self` acting first, minimized.
    pub fn compose(&self, other: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        self.compose_budget(other, DEFAULT_STATE_BUDGET)
    }

    pub fn compose_budget(
        &self,
        other: &TreeAutomorphism,
        budget: usize,
    ) -> Result<TreeAutomorphism> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        let d = self.d;
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut queue = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut states = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let (p, q) = queue[head];
            head += 1;
            let mut next = Vec::with_capacity(d);
            let mut images = Vec::with_capacity(d);
            for x in 0..d as u8 {
                let y = self.states[p as usize].out.apply(x);
                images.push(other.states[q as usize].out.apply(y));
                let pair = (
                    self.states[p as usize].next[x as usize],
                    other.states[q as usize].next[y as usize],
                );
                let id = *ids.entry(pair).or_insert_with(|| {
                    queue.push(pair);
                    (queue.len() - 1) as u32
                });
                next.push(id);
            }
            if queue.len() > budget {
                return Err(Error::StateBudget { budget });
            }
            states.push(State { next, out: Permutation::new(images)? });
        }
        Ok(TreeAutomorphism { d, states, start: 0, canonical: false }.minimize())
    }

    /// The inverse automorphism: letter roles are swapped per state.
    pub fn inverse(&self) -> TreeAutomorphism {
        let d = self.d;
        let states = self
            .states
            .iter()
            .map(|st| {
                let inv = st.out.inverse();
                let next = (0..d as u8)
                    .map(|y| st.next[inv.apply(y) as usize])
                    .collect();
                State { next, out: inv }
            })
            .collect();
        TreeAutomorphism { d, states, start: self.start, canonical: false }.minimize()
    }

    /// The conjugate `self^g = g^{-1} · self · g`.
    pub fn conjugate_by(&self, g: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        g.inverse().compose(self)?.compose(g)
    }

    /// Reachable restriction, behavioral reduction and BFS renumbering.
    /// Idempotent; the action on every word is unchanged.
    pub fn minimize(&self) -> TreeAutomorphism {
        if self.canonical {
            return self.clone();
        }
        let d = self.d;
        // Reachable restriction.
        let mut order: Vec<u32> = vec![self.start];
        let mut index_of: HashMap<u32, usize> = HashMap::from([(self.start, 0)]);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for x in 0..d {
                let r = self.states[q as usize].next[x];
                if !index_of.contains_key(&r) {
                    index_of.insert(r, order.len());
                    order.push(r);
                }
            }
        }
        // Partition refinement on behavior: initially by output row, then by
        // successor blocks until stable.
        let n = order.len();
        let mut block: Vec<usize> = {
            let mut key: HashMap<&Permutation, usize> = HashMap::new();
            order
                .iter()
                .map(|&q| {
                    let len = key.len();
                    *key.entry(&self.states[q as usize].out).or_insert(len)
                })
                .collect()
        };
        loop {
            let mut key: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_block = vec![0usize; n];
            for (i, &q) in order.iter().enumerate() {
                let succ: Vec<usize> = (0..d)
                    .map(|x| block[index_of[&self.states[q as usize].next[x]]])
                    .collect();
                let len = key.len();
                next_block[i] = *key.entry((block[i], succ)).or_insert(len);
            }
            let stable = next_block == block;
            block = next_block;
            if stable {
                break;
            }
        }
        // BFS renumbering of blocks from the start block, in letter order.
        let rep_of_block: HashMap<usize, u32> = order
            .iter()
            .enumerate()
            .map(|(i, &q)| (block[i], q))
            .collect();
        let start_block = block[0];
        let mut new_id: HashMap<usize, u32> = HashMap::from([(start_block, 0)]);
        let mut bfs = vec![start_block];
        let mut head = 0;
        let mut states: Vec<State> = Vec::new();
        while head < bfs.len() {
            let b = bfs[head];
            head += 1;
            let rep = rep_of_block[&b] as usize;
            let mut next = Vec::with_capacity(d);
            for x in 0..d {
                let succ_block = block[index_of[&self.states[rep].next[x]]];
                let id = *new_id.entry(succ_block).or_insert_with(|| {
                    bfs.push(succ_block);
                    (bfs.len() - 1) as u32
                });
                next.push(id);
            }
            states.push(State { next, out: self.states[rep].out.clone() });
        }
        TreeAutomorphism { d, states, start: 0, canonical: true }
    }

    /// Whether the automorphism is the identity: every reachable state must
    /// output the identity permutation.
    pub fn is_identity(&self) -> bool {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            let st = &self.states[q as usize];
            if !st.out.is_identity() {
                return false;
            }
            for &r in &st.next {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        true
    }

    /// Word-problem equality, via `g · h^{-1} = 1`.
    pub fn equal(&self, other: &TreeAutomorphism) -> Result<bool> {
        Ok(self.compose(&other.inverse())?.is_identity())
    }
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    out: String,
    to: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct MachineRepr {
    d: usize,
    start: u32,
    states: Vec<StateRepr>,
}

impl Serialize for TreeAutomorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MachineRepr {
            d: self.d,
            start: self.start,
            states: self
                .states
                .iter()
                .map(|st| StateRepr { out: st.out.to_cycles(), to: st.next.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreeAutomorphism {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MachineRepr::deserialize(deserializer)?;
        let rows = repr
            .states
            .into_iter()
            .map(|st| {
                Permutation::parse_cycles(&st.out, repr.d)
                    .map(|perm| (st.to, perm))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        TreeAutomorphism::from_parts(repr.d, rows, repr.start).map_err(serde::de::Error::custom)
    }
}

/// Parses a word given as a digit string over the machine alphabet.
pub fn parse_word(text: &str, d: usize) -> Result<Word> {
    text.trim()
        .chars()
        .map(|c| {
            let v = c
                .to_digit(10)
                .ok_or_else(|| Error::InvalidArgument(format!("bad letter `{c}` in word")))?;
            if (v as usize) < d {
                Ok(v as u8)
            } else {
                Err(Error::LetterOutOfRange { letter: v as u8, d })
            }
        })
        .collect()
}

pub fn format_word(word: &[Letter]) -> String {
    word.iter().map(|l| l.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_basics() {
        let id = Permutation::identity(3);
        assert!(id.is_identity());
        assert_eq!(id.to_cycles(), "()");
        let c = Permutation::long_cycle(3);
        assert_eq!(c.to_cycles(), "(012)");
        assert_eq!(c.then(&c).to_cycles(), "(021)");
        assert!(c.then(&c).is_cycle_power());
        assert_eq!(c.inverse().then(&c), id);
        let swap = Permutation::parse_cycles("(01)", 2).unwrap();
        assert_eq!(swap, Permutation::long_cycle(2));
        let two = Permutation::parse_cycles("(02)(13)", 4).unwrap();
        assert_eq!(two.apply(1), 3);
        assert!(!two.is_cycle_power());
        assert!(Permutation::parse_cycles("(00)", 2).is_err());
        assert!(Permutation::parse_cycles("(03)", 2).is_err());
    }

    #[test]
    fn identity_machine_acts_trivially() {
        let e = TreeAutomorphism::identity(2);
        assert!(e.is_identity());
        assert_eq!(e.act(&[0, 1, 1, 0]).unwrap(), vec![0, 1, 1, 0]);
        assert!(e.equal(&e.inverse()).unwrap());
    }

    #[test]
    fn wreath_and_sections() {
        // the sigma-layer on the binary tree: (1,1)(01)
        let e = TreeAutomorphism::identity(2);
        let s = TreeAutomorphism::wreath(&[e.clone(), e.clone()], &Permutation::long_cycle(2))
            .unwrap();
        assert_eq!(s.act(&[0, 0]).unwrap(), vec![1, 0]);
        assert_eq!(s.section(&[0]).unwrap(), e);
        assert_eq!(s.section(&[]).unwrap(), s);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn minimize_trivial_machine() {
        // two states both acting trivially collapse to one
        let rows = vec![
            (vec![1, 1], Permutation::identity(2)),
            (vec![0, 0], Permutation::identity(2)),
        ];
        let g = TreeAutomorphism::from_parts(2, rows, 0).unwrap();
        assert_eq!(g.state_count(), 1);
        assert!(g.is_identity());
    }

    #[test]
    fn letter_out_of_range() {
        let e = TreeAutomorphism::identity(2);
        assert!(matches!(e.act(&[2]), Err(Error::LetterOutOfRange { .. })));
        assert!(e.section(&[3]).is_err());
    }

    #[test]
    fn alphabet_mismatch() {
        let a = TreeAutomorphism::identity(2);
        let b = TreeAutomorphism::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn machine_json_round_trip() {
        let e = TreeAutomorphism::identity(2);
        let s = TreeAutomorphism::wreath(&[e.clone(), e], &Permutation::long_cycle(2)).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: TreeAutomorphism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("0110", 2).unwrap(), vec![0, 1, 1, 0]);
        assert!(parse_word("012", 2).is_err());
        assert_eq!(format_word(&[1, 0, 1]), "101");
    }
}

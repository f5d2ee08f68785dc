//! Analyses of single automorphisms: spherical homogeneity, level
//! signatures, portraits, bounded order and the action on eventually
//! periodic boundary points.

use std::collections::HashMap;

use serde::Serialize;

use super::{format_word, Letter, Permutation, TreeAutomorphism, Word};
use crate::error::{Error, Result};
use crate::zd::EpSeq;

/// Verdict of the spherical-homogeneity test. On failure carries the
/// length-lex least pair of same-length words with distinct sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShVerdict {
    Homogeneous,
    Witness { left: Word, right: Word },
}

impl ShVerdict {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, ShVerdict::Homogeneous)
    }
}

/// Eventually periodic sequence of level permutations, canonicalized the
/// same way as [`EpSeq`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSeq {
    pre: Vec<Permutation>,
    per: Vec<Permutation>,
}

impl PermSeq {
    pub fn new(pre: Vec<Permutation>, per: Vec<Permutation>) -> Self {
        assert!(!per.is_empty());
        let mut pre = pre;
        let mut per = per;
        crate::zd::canonicalize_parts(&mut pre, &mut per);
        PermSeq { pre, per }
    }

    pub fn preperiod(&self) -> &[Permutation] {
        &self.pre
    }

    pub fn period(&self) -> &[Permutation] {
        &self.per
    }

    /// Level permutation at 1-indexed level `i`.
    pub fn entry(&self, i: usize) -> &Permutation {
        assert!(i >= 1);
        if i <= self.pre.len() {
            &self.pre[i - 1]
        } else {
            &self.per[(i - self.pre.len() - 1) % self.per.len()]
        }
    }
}

/// Finite truncation of an automorphism: the first-level permutation of the
/// section at every word of length `< depth`, stored level by level in
/// lexicographic word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Portrait {
    d: usize,
    levels: Vec<Vec<Permutation>>,
}

impl Portrait {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<Permutation>] {
        &self.levels
    }

    /// The permutation attached to the given word (`|word| < depth`).
    pub fn at(&self, word: &[Letter]) -> &Permutation {
        let mut rank = 0usize;
        for &x in word {
            rank = rank * self.d + x as usize;
        }
        &self.levels[word.len()][rank]
    }

    /// Whether every level is constant (the portrait of a spherically
    /// homogeneous automorphism truncated at this depth).
    pub fn is_level_constant(&self) -> bool {
        self.levels
            .iter()
            .all(|level| level.iter().all(|p| p == &level[0]))
    }
}

/// Result of a bounded order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderBound {
    /// The least `n` with `g^n = 1`.
    Finite(u64),
    /// No power up to the bound is trivial (or the state budget was hit).
    ExceedsBound,
}

impl TreeAutomorphism {
    /// Decides spherical homogeneity by the section walk: all first-level
    /// sections of the current machine must agree, then the unique section
    /// is followed; the walk terminates within one pass over the states.
    pub fn sh_verdict(&self) -> ShVerdict {
        let g = self.minimize();
        let mut visited = vec![false; g.state_count()];
        let mut state = g.start_state();
        let mut depth = 0usize;
        loop {
            if visited[state as usize] {
                return ShVerdict::Homogeneous;
            }
            visited[state as usize] = true;
            let succ = g.state_next(state, 0);
            for x in 1..g.alphabet_size() as u8 {
                if g.state_next(state, x) != succ {
                    let mut left = vec![0u8; depth + 1];
                    let mut right = vec![0u8; depth];
                    left[depth] = 0;
                    right.push(x);
                    return ShVerdict::Witness { left, right };
                }
            }
            state = succ;
            depth += 1;
        }
    }

    pub fn is_spherically_homogeneous(&self) -> bool {
        self.sh_verdict().is_homogeneous()
    }

    /// The sequence of level permutations `[σ_1, σ_2, …]` of a spherically
    /// homogeneous automorphism; eventually periodic because the section
    /// walk moves in a finite machine.
    pub fn sh_signature(&self) -> Result<PermSeq> {
        let g = self.minimize();
        if !g.is_spherically_homogeneous() {
            return Err(Error::NotSphericallyHomogeneous);
        }
        let mut seen: HashMap<u32, usize> = HashMap::new();
        let mut perms: Vec<Permutation> = Vec::new();
        let mut state = g.start_state();
        loop {
            if let Some(&j) = seen.get(&state) {
                return Ok(PermSeq::new(perms[..j].to_vec(), perms[j..].to_vec()));
            }
            seen.insert(state, perms.len());
            perms.push(g.state_output(state).clone());
            state = g.state_next(state, 0);
        }
    }

    /// The depth-`k` portrait.
    pub fn portrait(&self, depth: usize) -> Portrait {
        let d = self.alphabet_size();
        let mut levels = Vec::with_capacity(depth);
        let mut frontier = vec![self.start_state()];
        for _ in 0..depth {
            levels.push(frontier.iter().map(|&q| self.state_output(q).clone()).collect());
            let mut next = Vec::with_capacity(frontier.len() * d);
            for &q in &frontier {
                for x in 0..d as u8 {
                    next.push(self.state_next(q, x));
                }
            }
            frontier = next;
        }
        Portrait { d, levels }
    }

    /// Least `n ≤ max_n` with `g^n = 1`, computed by incremental powers of
    /// the canonical form; aborts into `ExceedsBound` if an intermediate
    /// machine exceeds the state budget.
    pub fn order_bounded(&self, max_n: u64, budget: usize) -> OrderBound {
        let g = self.minimize();
        let mut power = g.clone();
        for n in 1..=max_n {
            if power.is_identity() {
                return OrderBound::Finite(n);
            }
            match power.compose_budget(&g, budget) {
                Ok(p) => power = p,
                Err(_) => return OrderBound::ExceedsBound,
            }
        }
        OrderBound::ExceedsBound
    }

    /// Exact image of an eventually periodic boundary point. The pair
    /// (machine state, phase within the input period) cycles after at most
    /// `states · period` steps past the preperiod.
    pub fn apply_boundary(&self, w: &EpSeq) -> Result<EpSeq> {
        let d = self.alphabet_size();
        crate::zd::check_modulus(w.modulus(), d as u64)?;
        let mut outputs: Vec<u64> = Vec::new();
        let mut state = self.start_state();
        for &x in w.preperiod() {
            let x = x as Letter;
            outputs.push(self.state_output(state).apply(x) as u64);
            state = self.state_next(state, x);
        }
        let c = w.period().len();
        let mut seen: HashMap<(u32, usize), usize> = HashMap::new();
        let mut phase = 0usize;
        loop {
            if let Some(&j) = seen.get(&(state, phase)) {
                return Ok(EpSeq::new(outputs[..j].to_vec(), outputs[j..].to_vec(), d as u64));
            }
            seen.insert((state, phase), outputs.len());
            let x = w.period()[phase] as Letter;
            outputs.push(self.state_output(state).apply(x) as u64);
            state = self.state_next(state, x);
            phase = (phase + 1) % c;
        }
    }

    /// Shortest word on which the two automorphisms disagree, or `None` if
    /// they are equal. Used to extract witnesses for reports.
    pub fn distinguishing_word(&self, other: &TreeAutomorphism) -> Result<Option<Word>> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet_size(),
                right: other.alphabet_size(),
            });
        }
        let d = self.alphabet_size();
        let start = (self.start_state(), other.start_state());
        let mut parent: HashMap<(u32, u32), ((u32, u32), Letter)> = HashMap::new();
        let mut queue = vec![start];
        let mut head = 0;
        let mut seen = std::collections::HashSet::from([start]);
        while head < queue.len() {
            let (p, q) = queue[head];
            head += 1;
            for x in 0..d as u8 {
                if self.state_output(p).apply(x) != other.state_output(q).apply(x) {
                    // reconstruct the path to (p, q) and append x
                    let mut word = vec![x];
                    let mut cur = (p, q);
                    while cur != start {
                        let (prev, letter) = parent[&cur];
                        word.push(letter);
                        cur = prev;
                    }
                    word.reverse();
                    return Ok(Some(word));
                }
                let succ = (self.state_next(p, x), other.state_next(q, x));
                if seen.insert(succ) {
                    parent.insert(succ, ((p, q), x));
                    queue.push(succ);
                }
            }
        }
        Ok(None)
    }

    /// Length of the shortest directed cycle in the transition graph of the
    /// canonical machine, together with whether some state has a loop of
    /// length one.
    pub fn shortest_cycle(&self) -> (usize, bool) {
        let g = self.minimize();
        let n = g.state_count();
        let d = g.alphabet_size();
        let mut has_loop = false;
        let mut best = usize::MAX;
        for q in 0..n as u32 {
            // BFS from q; a cycle through q closes via an edge back into q.
            let mut dist = vec![usize::MAX; n];
            dist[q as usize] = 0;
            let mut queue = vec![q];
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for x in 0..d as u8 {
                    let v = g.state_next(u, x);
                    if v == q {
                        best = best.min(dist[u as usize] + 1);
                        if dist[u as usize] == 0 {
                            has_loop = true;
                        }
                    }
                    if dist[v as usize] == usize::MAX {
                        dist[v as usize] = dist[u as usize] + 1;
                        queue.push(v);
                    }
                }
            }
        }
        (best, has_loop)
    }
}

/// Formats an SH witness pair for reports.
pub fn format_witness(verdict: &ShVerdict) -> Option<(String, String)> {
    match verdict {
        ShVerdict::Homogeneous => None,
        ShVerdict::Witness { left, right } => Some((format_word(left), format_word(right))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::parse_wreath;

    fn lamplighter_pair() -> (TreeAutomorphism, TreeAutomorphism) {
        // b = (b, c), c = (b, c)(01) is the standard 2-state lamplighter
        // machine written with the product state named explicitly.
        let defs = parse_wreath("b = (b, c)\nc = (b, c) (01)").unwrap();
        (defs.get("b").unwrap(), defs.get("c").unwrap())
    }

    #[test]
    fn identity_is_homogeneous() {
        let e = TreeAutomorphism::identity(2);
        assert!(e.is_spherically_homogeneous());
        let sig = e.sh_signature().unwrap();
        assert!(sig.preperiod().is_empty());
        assert_eq!(sig.period(), &[Permutation::identity(2)]);
    }

    #[test]
    fn sigma_layer_signature() {
        let e = TreeAutomorphism::identity(2);
        let s = TreeAutomorphism::wreath(&[e.clone(), e], &Permutation::long_cycle(2)).unwrap();
        let sig = s.sh_signature().unwrap();
        assert_eq!(sig.preperiod(), &[Permutation::long_cycle(2)]);
        assert_eq!(sig.period(), &[Permutation::identity(2)]);
    }

    #[test]
    fn lamplighter_not_homogeneous() {
        let (b, _) = lamplighter_pair();
        let verdict = b.sh_verdict();
        assert!(!verdict.is_homogeneous());
        if let ShVerdict::Witness { left, right } = verdict {
            assert_eq!(left.len(), right.len());
            assert!(!b.section(&left).unwrap().equal(&b.section(&right).unwrap()).unwrap());
        }
    }

    #[test]
    fn portrait_identity() {
        let e = TreeAutomorphism::identity(2);
        let p = e.portrait(3);
        assert_eq!(p.depth(), 3);
        assert!(p.is_level_constant());
        assert!(p.at(&[0, 1]).is_identity());
    }

    #[test]
    fn order_of_sigma_layer() {
        let e = TreeAutomorphism::identity(2);
        let s = TreeAutomorphism::wreath(&[e.clone(), e.clone()], &Permutation::long_cycle(2))
            .unwrap();
        assert_eq!(s.order_bounded(4, 1000), OrderBound::Finite(2));
        assert_eq!(e.order_bounded(4, 1000), OrderBound::Finite(1));
    }

    #[test]
    fn lamplighter_has_infinite_order_generator() {
        let (b, _) = lamplighter_pair();
        assert_eq!(b.order_bounded(16, 100_000), OrderBound::ExceedsBound);
    }

    #[test]
    fn boundary_action_matches_word_action() {
        let (b, _) = lamplighter_pair();
        let w = EpSeq::new(vec![1, 0], vec![1, 1, 0], 2);
        let img = b.apply_boundary(&w).unwrap();
        let prefix: Vec<u8> = w.prefix(64).iter().map(|&v| v as u8).collect();
        let expect = b.act(&prefix).unwrap();
        for (i, &y) in expect.iter().enumerate() {
            assert_eq!(img.entry(i + 1), y as u64);
        }
    }

    #[test]
    fn boundary_of_identity() {
        let e = TreeAutomorphism::identity(3);
        let w = EpSeq::new(vec![2], vec![0, 1], 3);
        assert_eq!(e.apply_boundary(&w).unwrap(), w);
    }

    #[test]
    fn distinguishing_word_finds_difference() {
        let (b, c) = lamplighter_pair();
        assert_eq!(b.distinguishing_word(&b).unwrap(), None);
        let w = b.distinguishing_word(&c).unwrap().unwrap();
        assert_ne!(b.act(&w).unwrap(), c.act(&w).unwrap());
        // shortest: no strictly shorter prefix separates them
        assert_eq!(b.act(&w[..w.len() - 1]).unwrap(), c.act(&w[..w.len() - 1]).unwrap());
    }

    #[test]
    fn shortest_cycle_of_lamplighter() {
        let (b, _) = lamplighter_pair();
        let (len, has_loop) = b.shortest_cycle();
        assert_eq!(len, 1);
        assert!(has_loop);
    }
}

//! Aho–Corasick automaton over a set of leading words.
//!
//! Used for leftmost occurrence search during rewriting, for counting normal
//! words without listing them, and for enumerating normal words lazily.

use crate::word::Word;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct TipAutomaton {
    n: usize,
    next: Vec<u32>,
    /// Longest pattern that is a suffix of the state's string.
    hit: Vec<u32>,
    patterns: Vec<Word>,
}

impl TipAutomaton {
    /// Builds the automaton for `patterns` over an alphabet of `n` letters.
    /// Duplicate patterns keep the first index. Empty patterns are ignored.
    pub fn new(n: usize, patterns: &[Word]) -> Self {
        let mut children: Vec<Vec<u32>> = vec![vec![NONE; n]];
        let mut term: Vec<u32> = vec![NONE];
        for (pi, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let mut s = 0usize;
            for &l in p.letters() {
                let l = l as usize;
                if children[s][l] == NONE {
                    children.push(vec![NONE; n]);
                    term.push(NONE);
                    children[s][l] = (children.len() - 1) as u32;
                }
                s = children[s][l] as usize;
            }
            if term[s] == NONE {
                term[s] = pi as u32;
            }
        }
        let ns = children.len();
        let mut next = vec![0u32; ns * n];
        let mut fail = vec![0u32; ns];
        let mut hit = term.clone();
        let mut queue = std::collections::VecDeque::new();
        for l in 0..n {
            let c = children[0][l];
            if c == NONE {
                next[l] = 0;
            } else {
                next[l] = c;
                fail[c as usize] = 0;
                queue.push_back(c as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            if hit[s] == NONE {
                hit[s] = hit[fail[s] as usize];
            }
            for l in 0..n {
                let c = children[s][l];
                let via_fail = next[fail[s] as usize * n + l];
                if c == NONE {
                    next[s * n + l] = via_fail;
                } else {
                    next[s * n + l] = c;
                    fail[c as usize] = via_fail;
                    queue.push_back(c as usize);
                }
            }
        }
        TipAutomaton { n, next, hit, patterns: patterns.to_vec() }
    }

    pub fn patterns(&self) -> &[Word] {
        &self.patterns
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        self.hit.len()
    }

    #[inline]
    pub fn step(&self, state: u32, letter: u8) -> u32 {
        self.next[state as usize * self.n + letter as usize]
    }

    /// Index of the longest pattern ending at this state.
    #[inline]
    pub fn hit(&self, state: u32) -> Option<usize> {
        let h = self.hit[state as usize];
        (h != NONE).then_some(h as usize)
    }

    /// The earliest end position of any occurrence, with the longest pattern
    /// ending there. Returns `(end, pattern_index)`; the occurrence is
    /// `letters[end - len .. end]`.
    pub fn first_match(&self, letters: &[u8]) -> Option<(usize, usize)> {
        let mut s = 0u32;
        for (i, &l) in letters.iter().enumerate() {
            s = self.step(s, l);
            if let Some(p) = self.hit(s) {
                return Some((i + 1, p));
            }
        }
        None
    }

    pub fn is_normal(&self, letters: &[u8]) -> bool {
        self.first_match(letters).is_none()
    }

    /// Number of normal words of each length `0..=max_len`.
    pub fn count_normal(&self, max_len: usize) -> Vec<u128> {
        let ns = self.num_states();
        let mut cur = vec![0u128; ns];
        cur[0] = 1;
        let mut out = vec![1u128];
        for _ in 0..max_len {
            let mut nxt = vec![0u128; ns];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for l in 0..self.n {
                    let t = self.next[s * self.n + l] as usize;
                    if self.hit[t] == NONE {
                        nxt[t] += c;
                    }
                }
            }
            out.push(nxt.iter().sum());
            cur = nxt;
        }
        out
    }

    /// Normal words of length `len` in ascending order. Returns `None` if
    /// more than `budget` words would be produced.
    pub fn normal_words(&self, len: usize, budget: usize) -> Option<Vec<Word>> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(len);
        if self.dfs(0, len, &mut buf, &mut out, budget) {
            Some(out)
        } else {
            None
        }
    }

    fn dfs(&self, s: u32, len: usize, buf: &mut Vec<u8>, out: &mut Vec<Word>, budget: usize) -> bool {
        if buf.len() == len {
            if out.len() >= budget {
                return false;
            }
            out.push(Word(buf.clone()));
            return true;
        }
        for l in 0..self.n as u8 {
            let t = self.step(s, l);
            if self.hit(t).is_some() {
                continue;
            }
            buf.push(l);
            let ok = self.dfs(t, len, buf, out, budget);
            buf.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

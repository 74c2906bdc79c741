//! Suffix automaton over a fixed binary word.
//!
//! Each state is an end-position equivalence class; the factors it accepts
//! are exactly the suffixes of its longest member with length in
//! `(len(link), len]`. All of them share the same right extensions, which is
//! what makes per-length right-special counts a single pass over states.

use crate::word::Word;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct State {
    len: u32,
    link: u32,
    next: [u32; 2],
    /// End position (inclusive) of the first occurrence.
    first_end: u32,
}

#[derive(Clone, Debug)]
pub struct FactorIndex {
    text: Word,
    states: Vec<State>,
}

impl FactorIndex {
    pub fn build(text: &Word) -> Self {
        assert!(
            text.len() < (u32::MAX / 2) as usize,
            "word too long for a 32-bit index"
        );
        let mut states = Vec::with_capacity(2 * text.len() + 1);
        states.push(State {
            len: 0,
            link: NONE,
            next: [NONE; 2],
            first_end: 0,
        });
        let mut last = 0u32;
        for (pos, c) in text.symbols().enumerate() {
            let c = c as usize;
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: NONE,
                next: [NONE; 2],
                first_end: pos as u32,
            });
            let mut p = last;
            while p != NONE && states[p as usize].next[c] == NONE {
                states[p as usize].next[c] = cur;
                p = states[p as usize].link;
            }
            if p == NONE {
                states[cur as usize].link = 0;
            } else {
                let q = states[p as usize].next[c];
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let mut cloned = states[q as usize];
                    cloned.len = states[p as usize].len + 1;
                    states.push(cloned);
                    while p != NONE && states[p as usize].next[c] == q {
                        states[p as usize].next[c] = clone;
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            last = cur;
        }
        FactorIndex {
            text: text.clone(),
            states,
        }
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn walk(&self, w: &Word) -> Option<usize> {
        let mut s = 0usize;
        for c in w.symbols() {
            let nx = self.states[s].next[c as usize];
            if nx == NONE {
                return None;
            }
            s = nx as usize;
        }
        Some(s)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.walk(w).is_some()
    }

    /// Which of `w0`, `w1` are factors. Both false when `w` itself is absent.
    pub fn right_extensions(&self, w: &Word) -> [bool; 2] {
        match self.walk(w) {
            Some(s) => {
                let next = self.states[s].next;
                [next[0] != NONE, next[1] != NONE]
            }
            None => [false, false],
        }
    }

    /// Adds `weight(state)` over the length interval of every state, for
    /// lengths `1..=max_len`. Entry `q - 1` holds the total at length `q`.
    fn per_length(&self, max_len: usize, mut weight: impl FnMut(&State) -> u64) -> Vec<u64> {
        let mut diff = vec![0i64; max_len + 2];
        for st in &self.states[1..] {
            let w = weight(st);
            if w == 0 {
                continue;
            }
            let lo = self.states[st.link as usize].len as usize + 1;
            let hi = (st.len as usize).min(max_len);
            if lo > hi {
                continue;
            }
            diff[lo] += w as i64;
            diff[hi + 1] -= w as i64;
        }
        let mut out = Vec::with_capacity(max_len);
        let mut acc = 0i64;
        for d in &diff[1..=max_len] {
            acc += d;
            out.push(acc as u64);
        }
        out
    }

    /// Number of distinct factors of each length `1..=max_len`.
    pub fn counts_per_length(&self, max_len: usize) -> Vec<u64> {
        self.per_length(max_len, |_| 1)
    }

    /// Number of factors `w` of each length `1..=max_len` with both `w0` and
    /// `w1` factors.
    pub fn right_special_counts(&self, max_len: usize) -> Vec<u64> {
        self.per_length(max_len, |st| u64::from(st.next[0] != NONE && st.next[1] != NONE))
    }

    /// Total number of distinct nonempty factors.
    pub fn distinct_factors(&self) -> u64 {
        self.states[1..]
            .iter()
            .map(|st| u64::from(st.len - self.states[st.link as usize].len))
            .sum()
    }

    /// The right-special factors of length `q`, sorted.
    pub fn right_special_words(&self, q: usize) -> Vec<Word> {
        let mut words: Vec<Word> = self.states[1..]
            .iter()
            .filter(|st| {
                st.next[0] != NONE
                    && st.next[1] != NONE
                    && (self.states[st.link as usize].len as usize) < q
                    && q <= st.len as usize
            })
            .map(|st| self.text.slice(st.first_end as usize + 1 - q, q))
            .collect();
        words.sort_by_key(|w| w.to_string());
        words
    }

    /// Distinct factors of length exactly `q`, sorted.
    pub fn factors_of_length(&self, q: usize) -> Vec<Word> {
        let mut words: Vec<Word> = self.states[1..]
            .iter()
            .filter(|st| (self.states[st.link as usize].len as usize) < q && q <= st.len as usize)
            .map(|st| self.text.slice(st.first_end as usize + 1 - q, q))
            .collect();
        words.sort_by_key(|w| w.to_string());
        words
    }

    /// For each end position `i` of `other`, the length of the longest suffix
    /// of `other[..=i]` that is a factor of the indexed word. Streaming
    /// matching statistics, linear in `other.len()`.
    pub fn matching_lengths(&self, other: &Word) -> Vec<u32> {
        let mut out = Vec::with_capacity(other.len());
        let (mut s, mut l) = (0usize, 0u32);
        for c in other.symbols() {
            let c = c as usize;
            while s != 0 && self.states[s].next[c] == NONE {
                s = self.states[s].link as usize;
                l = self.states[s].len;
            }
            if self.states[s].next[c] != NONE {
                s = self.states[s].next[c] as usize;
                l += 1;
            } else {
                l = 0;
            }
            out.push(l);
        }
        out
    }
}

//! Streaming lexicographic arrangements with O(ground set) working state.

use crate::perm::PermError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Fresh,
    Live,
    Done,
}

/// Every arrangement of a set of distinct integers, in lexicographic order.
///
/// The empty ground set yields exactly one (empty) arrangement.
#[derive(Debug, Clone)]
pub struct LexStream {
    items: Vec<usize>,
    phase: Phase,
}

impl LexStream {
    pub fn new(ground: impl Into<Vec<usize>>) -> Result<Self, PermError> {
        let mut items = ground.into();
        items.sort_unstable();
        if let Some(w) = items.windows(2).find(|w| w[0] == w[1]) {
            return Err(PermError::Duplicate { value: w[0] });
        }
        Ok(Self {
            items,
            phase: Phase::Fresh,
        })
    }

    /// Arrangements of the contiguous range `lo..hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self {
            items: (lo..hi).collect(),
            phase: Phase::Fresh,
        }
    }

    /// Moves to the next arrangement and returns it.
    pub fn advance(&mut self) -> Option<&[usize]> {
        match self.phase {
            Phase::Fresh => self.phase = Phase::Live,
            Phase::Live => {
                if !next_permutation(&mut self.items) {
                    self.phase = Phase::Done;
                }
            }
            Phase::Done => {}
        }
        match self.phase {
            Phase::Done => None,
            _ => Some(&self.items),
        }
    }

    /// The arrangement most recently returned by [`advance`](Self::advance).
    pub fn current(&self) -> Option<&[usize]> {
        (self.phase == Phase::Live).then_some(&self.items[..])
    }

    pub fn reset(&mut self) {
        self.items.sort_unstable();
        self.phase = Phase::Fresh;
    }

    /// Positions the stream so the next `advance` returns the arrangement of
    /// lexicographic rank `rank` (0-based). Ranks past the end exhaust it.
    pub fn seek(&mut self, rank: u128) {
        self.items.sort_unstable();
        let len = self.items.len();
        let mut fact: Vec<u128> = Vec::with_capacity(len + 1);
        fact.push(1);
        let mut overflow = false;
        for i in 1..=len {
            match fact[i - 1].checked_mul(i as u128) {
                Some(f) => fact.push(f),
                None => {
                    overflow = true;
                    fact.push(u128::MAX);
                }
            }
        }
        if !overflow && rank >= fact[len] {
            self.phase = Phase::Done;
            return;
        }
        // Factorial number system; unranking in place keeps state at O(len).
        let mut rem = rank;
        for i in 0..len {
            let block = fact[len - 1 - i];
            let idx = (rem / block) as usize;
            rem %= block;
            self.items[i..=i + idx].rotate_right(1);
        }
        self.phase = Phase::Fresh;
    }

    pub fn ground_len(&self) -> usize {
        self.items.len()
    }
}

impl Iterator for LexStream {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

/// Standard next-permutation step; returns false (leaving the slice sorted
/// descending) when `v` is the last arrangement.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Injective `k`-tuples drawn from `0..n`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct KTuples {
    n: usize,
    tuple: Vec<usize>,
    used: Vec<bool>,
    phase: Phase,
}

impl KTuples {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k <= n, "tuple length {k} exceeds ground size {n}");
        let mut used = vec![false; n];
        used[..k].iter_mut().for_each(|u| *u = true);
        Self {
            n,
            tuple: (0..k).collect(),
            used,
            phase: Phase::Fresh,
        }
    }

    pub fn advance(&mut self) -> Option<&[usize]> {
        match self.phase {
            Phase::Fresh => self.phase = Phase::Live,
            Phase::Live => {
                if !self.step() {
                    self.phase = Phase::Done;
                }
            }
            Phase::Done => {}
        }
        match self.phase {
            Phase::Done => None,
            _ => Some(&self.tuple),
        }
    }

    fn step(&mut self) -> bool {
        let k = self.tuple.len();
        for i in (0..k).rev() {
            let old = self.tuple[i];
            self.used[old] = false;
            if let Some(next) = (old + 1..self.n).find(|&v| !self.used[v]) {
                self.tuple[i] = next;
                self.used[next] = true;
                let mut cand = 0;
                for slot in i + 1..k {
                    while self.used[cand] {
                        cand += 1;
                    }
                    self.tuple[slot] = cand;
                    self.used[cand] = true;
                }
                return true;
            }
        }
        false
    }

    pub fn state_len(&self) -> usize {
        self.tuple.len() + self.used.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_s3_in_order() {
        let all: Vec<_> = LexStream::new(vec![1, 2, 3]).unwrap().collect();
        assert_eq!(
            all,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
    }

    #[test]
    fn empty_and_pair() {
        let empty: Vec<_> = LexStream::new(vec![]).unwrap().collect();
        assert_eq!(empty, vec![Vec::<usize>::new()]);
        let pair: Vec<_> = LexStream::new(vec![4, 3]).unwrap().collect();
        assert_eq!(pair, vec![vec![3, 4], vec![4, 3]]);
        assert!(LexStream::new(vec![2, 2]).is_err());
    }

    #[test]
    fn seek_matches_sequential() {
        let all: Vec<_> = LexStream::range(0, 5).collect();
        for (rank, want) in all.iter().enumerate() {
            let mut s = LexStream::range(0, 5);
            s.seek(rank as u128);
            assert_eq!(s.advance().unwrap(), &want[..]);
        }
        let mut s = LexStream::range(0, 5);
        s.seek(120);
        assert!(s.advance().is_none());
    }

    #[test]
    fn ktuples_count_and_order() {
        let mut t = KTuples::new(5, 3);
        let mut prev: Option<Vec<usize>> = None;
        let mut count = 0;
        while let Some(x) = t.advance() {
            if let Some(p) = &prev {
                assert!(p.as_slice() < x);
            }
            prev = Some(x.to_vec());
            count += 1;
        }
        assert_eq!(count, 60);
        let mut z = KTuples::new(4, 0);
        assert_eq!(z.advance(), Some(&[][..]));
        assert!(z.advance().is_none());
    }
}

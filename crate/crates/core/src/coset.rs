//! Subgroup index in SL2(Z) by Todd-Coxeter coset enumeration.
//!
//! SL2(Z) is presented as `<a, b | a^4, a^2 b^-3>` with `a = S` and `b = ST`,
//! so `T = a^-1 b`. Subgroup generators are converted to words in `S, T`
//! by [`matrix_to_word`] and then rewritten over `a, b`. The enumeration is
//! HLT style: relators are scanned at every live coset, undefined entries
//! are filled by new definitions, and coincidences are processed with a
//! union-find queue.

use crate::error::{Error, Result};
use crate::sl2::{matrix_to_word, Generator, Mat2};

/// Column index of a letter in the coset table.
pub type Letter = usize;

pub const A: Letter = 0;
pub const A_INV: Letter = 1;
pub const B: Letter = 2;
pub const B_INV: Letter = 3;

const LETTERS: usize = 4;
const UNDEF: usize = usize::MAX;

#[inline]
fn inv(x: Letter) -> Letter {
    x ^ 1
}

/// Default bound on live cosets.
pub const DEFAULT_CAP: usize = 10_000;

pub fn relators() -> Vec<Vec<Letter>> {
    vec![vec![A, A, A, A], vec![A, A, B_INV, B_INV, B_INV]]
}

/// Rewrites an `S`/`T` word over the letters `a`, `b`.
pub fn rewrite(word: &[Generator]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for g in word {
        match g {
            Generator::S => out.push(A),
            Generator::SInv => out.push(A_INV),
            Generator::T => out.extend([A_INV, B]),
            Generator::TInv => out.extend([B_INV, A]),
        }
    }
    out
}

/// A closed coset table: row 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rows: Vec<[usize; LETTERS]>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[[usize; LETTERS]] {
        &self.rows
    }

    pub fn act(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, &x| self.rows[c][x])
    }

    /// Image of a coset under an `S`/`T` word.
    pub fn act_word(&self, coset: usize, word: &[Generator]) -> usize {
        self.act(coset, &rewrite(word))
    }

    /// Checks that the table is a transitive permutation action of the
    /// presented group: every column is a permutation inverse to its partner
    /// column, every relator fixes every coset and every coset is reachable
    /// from coset 0.
    pub fn verify(&self) -> bool {
        let n = self.rows.len();
        for c in 0..n {
            for x in 0..LETTERS {
                let d = self.rows[c][x];
                if d >= n || self.rows[d][inv(x)] != c {
                    return false;
                }
            }
            for r in relators() {
                if self.act(c, &r) != c {
                    return false;
                }
            }
        }
        self.is_transitive()
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.rows.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for x in 0..LETTERS {
                let d = self.rows[c][x];
                if !seen[d] {
                    seen[d] = true;
                    count += 1;
                    stack.push(d);
                }
            }
        }
        count == n
    }
}

struct Enumerator {
    table: Vec<[usize; LETTERS]>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    live: usize,
    cap: usize,
}

impl Enumerator {
    fn new(cap: usize) -> Self {
        Enumerator { table: vec![[UNDEF; LETTERS]], parent: vec![0], queue: Vec::new(), live: 1, cap }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: Letter) -> Result<()> {
        if self.live >= self.cap {
            return Err(Error::IndexExceedsCap { cap: self.cap });
        }
        let n = self.table.len();
        self.table.push([UNDEF; LETTERS]);
        self.parent.push(n);
        self.live += 1;
        self.table[c][x] = n;
        self.table[n][inv(x)] = c;
        Ok(())
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inv(w[j])] != UNDEF {
                b = self.table[b][inv(w[j])];
                if j == 0 {
                    // whole word scanned backwards
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                self.table[f][w[i]] = b;
                self.table[b][inv(w[i])] = f;
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut idx = 0;
        while idx < self.queue.len() {
            let e = self.queue[idx];
            idx += 1;
            for x in 0..LETTERS {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][inv(x)] = UNDEF;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][inv(x)] != UNDEF {
                    let t = self.table[f1][inv(x)];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][inv(x)] = e1;
                }
            }
        }
    }

    fn run(mut self, subgroup: &[Vec<Letter>]) -> Result<CosetTable> {
        let rels = relators();
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0;
        while c < self.table.len() {
            if self.is_live(c) {
                for r in &rels {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for x in 0..LETTERS {
                        if self.table[c][x] == UNDEF {
                            self.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(self.compact())
    }

    fn compact(mut self) -> CosetTable {
        let n = self.table.len();
        let mut new_id = vec![UNDEF; n];
        let mut next = 0;
        for (c, id) in new_id.iter_mut().enumerate() {
            if self.parent[c] == c {
                *id = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next);
        for c in 0..n {
            if new_id[c] == UNDEF {
                continue;
            }
            let mut row = [UNDEF; LETTERS];
            for (x, slot) in row.iter_mut().enumerate() {
                *slot = new_id[self.rep(self.table[c][x])];
            }
            rows.push(row);
        }
        CosetTable { rows }
    }
}

/// Enumerates the cosets of the subgroup generated by `gens`.
pub fn coset_table(gens: &[Mat2], cap: usize) -> Result<CosetTable> {
    let words: Vec<Vec<Letter>> = gens.iter().map(|m| rewrite(matrix_to_word(m).letters())).collect();
    Enumerator::new(cap).run(&words)
}

/// Index of the subgroup generated by `gens` in SL2(Z).
///
/// Infinite index is never reported as such; an enumeration that needs more
/// than `cap` live cosets fails with [`Error::IndexExceedsCap`].
pub fn index_in_sl2(gens: &[Mat2], cap: usize) -> Result<usize> {
    Ok(coset_table(gens, cap)?.index())
}

/// Whether `-I = S^2` lies in the subgroup generated by `gens`.
pub fn contains_minus_identity(gens: &[Mat2], cap: usize) -> Result<bool> {
    let table = coset_table(gens, cap)?;
    Ok(table.act(0, &[A, A]) == 0)
}

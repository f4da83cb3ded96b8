use std::sync::OnceLock;

/// A finite Coxeter system presented by its left and right multiplication
/// tables against the simple generators.
///
/// Elements are `0..size`, ordered by length, with `0` the identity. Both the
/// Weyl group and every reflection subgroup `W_λ` are exposed through this
/// type so that Bruhat order and Kazhdan–Lusztig code only see one interface.
#[derive(Debug)]
pub struct CoxeterSystem {
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    length: Vec<u32>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

impl CoxeterSystem {
    /// `left[g][x]` is `s_g x` and `right[g][x]` is `x s_g`.
    pub fn new(left: Vec<Vec<u32>>, right: Vec<Vec<u32>>, length: Vec<u32>) -> Self {
        debug_assert!(length.windows(2).all(|w| w[0] <= w[1]), "elements must be sorted by length");
        debug_assert_eq!(length.first(), Some(&0));
        Self { left, right, length, bruhat: OnceLock::new() }
    }

    pub fn size(&self) -> usize {
        self.length.len()
    }

    pub fn n_gens(&self) -> usize {
        self.left.len()
    }

    pub fn length(&self, x: usize) -> u32 {
        self.length[x]
    }

    pub fn lengths(&self) -> &[u32] {
        &self.length
    }

    pub fn lmul(&self, g: usize, x: usize) -> usize {
        self.left[g][x] as usize
    }

    pub fn rmul(&self, x: usize, g: usize) -> usize {
        self.right[g][x] as usize
    }

    /// Element index of the simple generator `g`.
    pub fn generator(&self, g: usize) -> usize {
        self.left[g][0] as usize
    }

    pub fn is_left_descent(&self, g: usize, x: usize) -> bool {
        self.length[self.left[g][x] as usize] < self.length[x]
    }

    pub fn is_right_descent(&self, x: usize, g: usize) -> bool {
        self.length[self.right[g][x] as usize] < self.length[x]
    }

    pub fn first_left_descent(&self, x: usize) -> Option<usize> {
        (0..self.n_gens()).find(|&g| self.is_left_descent(g, x))
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self, mut x: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length[x] as usize);
        while let Some(g) = self.first_left_descent(x) {
            word.push(g);
            x = self.lmul(g, x);
        }
        word
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().rev().fold(0, |x, &g| self.lmul(g, x))
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.reduced_word(x).iter().fold(0, |acc, &g| self.lmul(g, acc))
    }

    pub fn longest(&self) -> usize {
        self.size() - 1
    }

    /// Full Bruhat order as bitsets: bit `y` of row `w` is set iff `y <= w`.
    ///
    /// Uses the descent recursion: if `s w < w` then `y <= w` iff
    /// `min(y, s y) <= s w`.
    pub fn bruhat_table(&self) -> &[Vec<u64>] {
        self.bruhat.get_or_init(|| {
            let n = self.size();
            let words = n.div_ceil(64);
            let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
            for w in 0..n {
                let mut row = vec![0u64; words];
                match self.first_left_descent(w) {
                    None => row[0] |= 1,
                    Some(g) => {
                        let sw = self.lmul(g, w);
                        let below = &rows[sw];
                        for u in 0..n {
                            if below[u / 64] >> (u % 64) & 1 == 1 {
                                let su = self.lmul(g, u);
                                row[u / 64] |= 1 << (u % 64);
                                row[su / 64] |= 1 << (su % 64);
                            }
                        }
                    }
                }
                rows.push(row);
            }
            rows
        })
    }

    pub fn bruhat_leq(&self, y: usize, w: usize) -> bool {
        let row = &self.bruhat_table()[w];
        row[y / 64] >> (y % 64) & 1 == 1
    }

    /// Elements of the Bruhat interval `[e, w]` in increasing index order.
    pub fn lower_interval(&self, w: usize) -> Vec<usize> {
        let row = &self.bruhat_table()[w];
        (0..self.size()).filter(|&y| row[y / 64] >> (y % 64) & 1 == 1).collect()
    }

    /// Poincaré polynomial coefficients: entry `k` counts elements of length `k`.
    pub fn poincare(&self) -> Vec<i64> {
        let top = *self.length.last().unwrap_or(&0) as usize;
        let mut p = vec![0i64; top + 1];
        for &l in &self.length {
            p[l as usize] += 1;
        }
        p
    }
}

/// Relabels a Coxeter system given in arbitrary element order so that
/// elements are sorted by length and then by lexicographically least reduced
/// word. Returns the system and `order`, where `order[new] = old`.
pub fn sort_canonically(left: Vec<Vec<u32>>, right: Vec<Vec<u32>>, length: Vec<u32>) -> (CoxeterSystem, Vec<usize>) {
    let size = length.len();
    let word = |mut x: usize| {
        let mut w = Vec::new();
        while let Some(g) = (0..left.len()).find(|&g| length[left[g][x] as usize] < length[x]) {
            w.push(g);
            x = left[g][x] as usize;
        }
        w
    };
    let words: Vec<Vec<usize>> = (0..size).map(word).collect();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| length[a].cmp(&length[b]).then_with(|| words[a].cmp(&words[b])));
    let mut new_of = vec![0u32; size];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new as u32;
    }
    let relabel = |t: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
        t.iter().map(|row| order.iter().map(|&old| new_of[row[old] as usize]).collect()).collect()
    };
    let sys = CoxeterSystem::new(relabel(&left), relabel(&right), order.iter().map(|&o| length[o]).collect());
    (sys, order)
}

/// Recovers the degrees `d_j` from a Poincaré polynomial
/// `prod_j (1 + q + ... + q^{d_j - 1})` with `rank` factors.
pub fn degrees_from_poincare(poincare: &[i64], rank: usize) -> Option<Vec<u32>> {
    // prod_j (1 - q^{d_j}) = P(q) (1 - q)^rank
    let mut q: Vec<i64> = poincare.to_vec();
    for _ in 0..rank {
        let mut next = vec![0i64; q.len() + 1];
        for (k, &c) in q.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        q = next;
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    let mut degrees = Vec::with_capacity(rank);
    for _ in 0..rank {
        let d = (1..q.len()).find(|&k| q[k] != 0)?;
        if q[d] >= 0 {
            return None;
        }
        // divide by (1 - q^d)
        let mut quot = vec![0i64; q.len()];
        for k in 0..q.len() {
            let carry = if k >= d { quot[k - d] } else { 0 };
            quot[k] = q[k] + carry;
        }
        let deg = q.len() - 1;
        if quot[deg + 1 - d..].iter().any(|&c| c != 0) {
            return None;
        }
        quot.truncate(deg + 1 - d);
        q = quot;
        degrees.push(d as u32);
    }
    if q != [1] {
        return None;
    }
    Some(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_of_small_poincare_polys() {
        assert_eq!(degrees_from_poincare(&[1, 1], 1), Some(vec![2]));
        // A2: 1 + 2q + 2q^2 + q^3
        assert_eq!(degrees_from_poincare(&[1, 2, 2, 1], 2), Some(vec![2, 3]));
        // B2: 1 + 2q + 2q^2 + 2q^3 + q^4
        assert_eq!(degrees_from_poincare(&[1, 2, 2, 2, 1], 2), Some(vec![2, 4]));
        assert_eq!(degrees_from_poincare(&[1, 3, 1], 2), None);
    }
}

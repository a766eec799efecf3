//! Small enumeration helpers: k-subsets and weak compositions.

/// k-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        // advance: find rightmost slot that can still move
        match (0..k).rev().find(|&i| self.current[i] < self.n - k + i) {
            Some(i) => {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Weak compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order (first part smallest first).
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Vec<usize>,
    done: bool,
}

impl Compositions {
    pub fn new(total: usize, parts: usize) -> Self {
        assert!(parts > 0, "need at least one part");
        let mut current = vec![0; parts];
        current[parts - 1] = total;
        Compositions { current, done: false }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let last = self.current.len() - 1;
        // Rightmost position before the tail that can take one more unit.
        // The tail (positions after it) is then reset so that everything
        // left over sits in the final part.
        let tail_sum = |c: &[usize], from: usize| c[from..].iter().sum::<usize>();
        match (0..last).rev().find(|&i| tail_sum(&self.current, i + 1) > 0) {
            Some(i) => {
                let rest = tail_sum(&self.current, i + 1) - 1;
                self.current[i] += 1;
                for slot in &mut self.current[i + 1..] {
                    *slot = 0;
                }
                self.current[last] = rest;
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// `C(n, k)` without overflow for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_small() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count() as u64, binomial(10, 4));
    }

    #[test]
    fn compositions_ordered_and_complete() {
        let all: Vec<_> = Compositions::new(2, 3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(Compositions::new(0, 4).count(), 1);
    }

    fn count_recursive(total: usize, parts: usize) -> u64 {
        if parts == 1 {
            return 1;
        }
        (0..=total).map(|first| count_recursive(total - first, parts - 1)).sum()
    }

    #[test]
    fn composition_counts_match_recursion() {
        for n in 0..=5 {
            assert_eq!(Compositions::new(n, 10).count() as u64, count_recursive(n, 10));
            assert_eq!(count_recursive(n, 10), binomial(n + 9, 9));
        }
    }
}

//! Small exact integer linear algebra: Hermite forms of planar lattices and
//! solutions of two-row linear systems over the integers.

use num_integer::Integer;

use crate::Int;

pub(crate) fn gcd(a: Int, b: Int) -> Int {
    a.gcd(&b)
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a x + b y = g`.
pub(crate) fn ext_gcd(a: Int, b: Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in Z^2.
///
/// Returns the basis `[(a, b), (0, d)]` with `a > 0`, `d > 0` and
/// `0 <= b < d`, or `None` when the rows span a lattice of rank below two.
pub(crate) fn hnf2(rows: &[[Int; 2]]) -> Option<[[Int; 2]; 2]> {
    let mut pivot: Option<[Int; 2]> = None;
    let mut d: Int = 0;
    for &v in rows {
        if v[0] == 0 {
            d = gcd(d, v[1]);
            continue;
        }
        match pivot {
            None => pivot = Some(v),
            Some(p) => {
                let (g, x, y) = ext_gcd(p[0], v[0]);
                let new_p = [x * p[0] + y * v[0], x * p[1] + y * v[1]];
                debug_assert_eq!(new_p[0], g);
                // Second row of the unimodular change of basis kills column 0.
                let left = (v[0] / g) * p[1] - (p[0] / g) * v[1];
                d = gcd(d, left);
                pivot = Some(new_p);
            }
        }
    }
    let mut p = pivot?;
    if d == 0 {
        return None;
    }
    if p[0] < 0 {
        p = [-p[0], -p[1]];
    }
    Some([[p[0], p[1].rem_euclid(d)], [0, d]])
}

/// Integer solutions of a 2 x n system `A x = rhs`.
#[derive(Debug, Clone)]
pub(crate) struct IntSolution {
    pub particular: Vec<Int>,
    pub kernel: Vec<Vec<Int>>,
}

/// Solves `A x = rhs` over the integers by unimodular column reduction.
pub(crate) fn solve_2xn(a: &[Vec<Int>; 2], rhs: [Int; 2]) -> Option<IntSolution> {
    let n = a[0].len();
    let mut m = [a[0].clone(), a[1].clone()];
    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from(i == j)).collect())
        .collect();

    // Column operation on columns (i, j): [ci, cj] <- [ci, cj] * [[x, -b/g], [y, a/g]].
    let combine = |m: &mut [Vec<Int>; 2], u: &mut Vec<Vec<Int>>, row: usize, i: usize, j: usize| {
        let (ai, aj) = (m[row][i], m[row][j]);
        if aj == 0 {
            return;
        }
        let (g, x, y) = ext_gcd(ai, aj);
        let (p, q) = (ai / g, aj / g);
        for r in m.iter_mut().chain(u.iter_mut()) {
            let (ci, cj) = (r[i], r[j]);
            r[i] = x * ci + y * cj;
            r[j] = -q * ci + p * cj;
        }
    };

    for j in 1..n {
        combine(&mut m, &mut u, 0, 0, j);
    }
    let mut next_free = 1;
    if n > 1 {
        for j in 2..n {
            combine(&mut m, &mut u, 1, 1, j);
        }
        next_free = 2;
    }

    let g0 = m[0][0];
    let mut y = vec![0; n];
    if g0 == 0 {
        if rhs[0] != 0 {
            return None;
        }
    } else {
        if rhs[0] % g0 != 0 {
            return None;
        }
        y[0] = rhs[0] / g0;
    }
    let rest = rhs[1] - m[1][0] * y[0];
    let mut kernel_cols: Vec<usize> = (next_free..n).collect();
    if g0 == 0 {
        kernel_cols.insert(0, 0);
    }
    if n > 1 {
        let g1 = m[1][1];
        if g1 == 0 {
            if rest != 0 {
                return None;
            }
            kernel_cols.insert(0, 1);
        } else {
            if rest % g1 != 0 {
                return None;
            }
            y[1] = rest / g1;
        }
    } else if rest != 0 {
        return None;
    }

    let particular = (0..n)
        .map(|r| (0..n).map(|c| u[r][c] * y[c]).sum())
        .collect();
    let kernel = kernel_cols
        .into_iter()
        .map(|c| (0..n).map(|r| u[r][c]).collect())
        .collect();
    Some(IntSolution { particular, kernel })
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(x: &[Int], k: Int, v: &[Int]) -> Vec<Int> {
    x.iter().zip(v).map(|(a, b)| a - k * b).collect()
}

fn round_div(num: Int, den: Int) -> Int {
    // nearest integer to num/den, ties toward -infinity
    Integer::div_ceil(&(2 * num - den), &(2 * den))
}

/// Pairwise size reduction of a (at most two-vector) kernel basis.
fn reduce_pair(mut b: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if b.len() != 2 {
        return b;
    }
    loop {
        if dot(&b[0], &b[0]) > dot(&b[1], &b[1]) {
            b.swap(0, 1);
        }
        let n0 = dot(&b[0], &b[0]);
        if n0 == 0 {
            return b;
        }
        let k = round_div(dot(&b[0], &b[1]), n0);
        if k == 0 {
            return b;
        }
        b[1] = axpy(&b[1], k, &b[0]);
        if dot(&b[1], &b[1]) >= n0 {
            return b;
        }
    }
}

impl IntSolution {
    /// Deterministic short solution: the particular solution is reduced
    /// against a size-reduced kernel basis, then the best of the nearby
    /// candidates is picked by squared length, ties broken lexicographically.
    pub(crate) fn shortest(&self) -> Vec<Int> {
        let basis = reduce_pair(self.kernel.clone());
        let mut x = self.particular.clone();
        for _ in 0..4 {
            for v in &basis {
                let nv = dot(v, v);
                if nv != 0 {
                    let k = round_div(dot(&x, v), nv);
                    x = axpy(&x, k, v);
                }
            }
        }
        let mut best = x.clone();
        let key = |v: &Vec<Int>| (dot(v, v), v.clone());
        let shifts: Vec<Vec<Int>> = match basis.len() {
            0 => vec![vec![]],
            1 => (-1..=1).map(|i| vec![i]).collect(),
            _ => (-1..=1)
                .flat_map(|i| (-1..=1).map(move |j| vec![i, j]))
                .collect(),
        };
        for s in shifts {
            let mut cand = x.clone();
            for (coef, v) in s.iter().zip(&basis) {
                cand = axpy(&cand, -coef, v);
            }
            if key(&cand) < key(&best) {
                best = cand;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_redundant_generators() {
        assert_eq!(hnf2(&[[2, 0], [0, 2], [0, 1]]), Some([[2, 0], [0, 1]]));
        assert_eq!(hnf2(&[[0, 1], [1, 0]]), Some([[1, 0], [0, 1]]));
        assert_eq!(hnf2(&[[3, 5], [6, 10]]), None);
        assert_eq!(hnf2(&[[0, 0]]), None);
    }

    #[test]
    fn hnf_is_canonical_under_permutation() {
        let a = hnf2(&[[4, 1], [2, 3], [6, 6]]);
        let b = hnf2(&[[6, 6], [4, 1], [2, 3]]);
        assert_eq!(a, b);
        let [[x, _], [_, d]] = a.unwrap();
        // index = gcd of the 2x2 minors 10, 18, -6
        assert_eq!(x * d, 2);
    }

    #[test]
    fn solve_small_system() {
        let a = [vec![3, 0, 0, 4], vec![0, 3, -1, -1]];
        let sol = solve_2xn(&a, [1, 0]).unwrap();
        let x = sol.shortest();
        assert_eq!(dot(&a[0], &x), 1);
        assert_eq!(dot(&a[1], &x), 0);
        assert_eq!(sol.kernel.len(), 2);
        for k in &sol.kernel {
            assert_eq!(dot(&a[0], k), 0);
            assert_eq!(dot(&a[1], k), 0);
        }
    }

    #[test]
    fn unsolvable_system() {
        let a = [vec![2, 4], vec![0, 2]];
        assert!(solve_2xn(&a, [1, 0]).is_none());
    }
}

//! Simply laced Dynkin diagrams as symmetric multigraph adjacency matrices.

use super::Family;

pub type Adjacency = Vec<Vec<i64>>;

fn empty(n: usize) -> Adjacency {
    vec![vec![0; n]; n]
}

fn link(a: &mut Adjacency, i: usize, j: usize) {
    a[i][j] += 1;
    a[j][i] += 1;
}

/// Star with a centre and three arms of the given lengths.
fn star(arms: [usize; 3]) -> Adjacency {
    let n = 1 + arms.iter().sum::<usize>();
    let mut a = empty(n);
    let mut next = 1;
    for len in arms {
        let mut prev = 0;
        for _ in 0..len {
            link(&mut a, prev, next);
            prev = next;
            next += 1;
        }
    }
    a
}

fn path(n: usize) -> Adjacency {
    let mut a = empty(n);
    for i in 1..n {
        link(&mut a, i - 1, i);
    }
    a
}

/// Finite diagram with `rank` nodes.
pub fn finite(f: Family) -> Adjacency {
    match f {
        Family::A(n) => path(n as usize),
        Family::D(n) => star([n as usize - 3, 1, 1]),
        Family::E6 => star([2, 2, 1]),
        Family::E7 => star([3, 2, 1]),
        Family::E8 => star([4, 2, 1]),
    }
}

/// Affine diagram with `rank + 1` nodes. Affine A1 is a double edge.
pub fn affine(f: Family) -> Adjacency {
    match f {
        Family::A(1) => {
            let mut a = empty(2);
            link(&mut a, 0, 1);
            link(&mut a, 0, 1);
            a
        }
        Family::A(n) => {
            let n = n as usize + 1;
            let mut a = path(n);
            link(&mut a, 0, n - 1);
            a
        }
        Family::D(n) => {
            let n = n as usize;
            // Path 2..=n-2 with two leaves at each end; for n = 4 a star.
            let mut a = empty(n + 1);
            for i in 2..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 2);
            link(&mut a, n - 1, n - 2);
            link(&mut a, n, n - 2);
            a
        }
        Family::E6 => star([2, 2, 2]),
        Family::E7 => star([3, 3, 1]),
        Family::E8 => star([5, 2, 1]),
    }
}

/// `2I - A`.
pub fn cartan(a: &Adjacency) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 - a[i][j] } else { -a[i][j] }).collect())
        .collect()
}

/// Whether two multigraphs are isomorphic. Backtracking, fine for the sizes here.
pub fn isomorphic(a: &Adjacency, b: &Adjacency) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    let deg = |m: &Adjacency, i: usize| -> i64 { m[i].iter().sum() };
    let mut da: Vec<i64> = (0..n).map(|i| deg(a, i)).collect();
    let mut db: Vec<i64> = (0..n).map(|i| deg(b, i)).collect();
    let (ra, rb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &Adjacency,
        b: &Adjacency,
        ra: &[i64],
        rb: &[i64],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || ra[i] != rb[c] || a[i][i] != b[c][c] {
                continue;
            }
            if (0..i).any(|j| a[i][j] != b[c][map[j]]) {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if go(i + 1, a, b, ra, rb, map, used) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    go(0, a, b, &ra, &rb, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts() {
        assert_eq!(affine(Family::E8).len(), 9);
        assert_eq!(affine(Family::D(4)).len(), 5);
        assert_eq!(affine(Family::D(7)).len(), 8);
        assert_eq!(finite(Family::E6).len(), 6);
    }

    #[test]
    fn affine_d4_is_a_star() {
        let a = affine(Family::D(4));
        assert_eq!(a[2].iter().sum::<i64>(), 4);
    }

    #[test]
    fn isomorphism_distinguishes_e7_from_d7_affine() {
        assert!(!isomorphic(&affine(Family::E7), &affine(Family::D(7))));
        let mut p = path(4);
        p.reverse();
        for row in p.iter_mut() {
            row.reverse();
        }
        assert!(isomorphic(&p, &path(4)));
    }
}

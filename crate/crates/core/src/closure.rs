use std::collections::BTreeSet;

/// All nonempty intersections of subfamilies of `sets` (each set sorted),
/// plus the empty set when some intersection is empty.
pub(crate) fn intersection_closure(sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut closed: BTreeSet<Vec<usize>> = sets.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = closed.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for g in sets {
            let meet = intersect(&s, g);
            if closed.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    closed
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

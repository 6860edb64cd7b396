use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::FiniteSemigroup;

/// Partitions of the element indices by Green's relations.
///
/// `L` and `R` compare the ideals `S¹a` and `aS¹`; the identity is adjoined so
/// that both relations are reflexive on non-regular semigroups too. `D` is the
/// join of `L` and `R`. Classes are sorted internally and ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenStructure {
    pub l_classes: Vec<Vec<usize>>,
    pub r_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub d_classes: Vec<Vec<usize>>,
}

fn partition_by<K, F>(n: usize, mut key: F) -> Vec<Vec<usize>>
where
    K: std::hash::Hash + Eq,
    F: FnMut(usize) -> K,
{
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        let next = classes.len();
        let id = *ids.entry(key(a)).or_insert(next);
        if id == next {
            classes.push(Vec::new());
        }
        classes[id].push(a);
    }
    classes
}

/// Class index of every element.
pub fn class_ids(n: usize, classes: &[Vec<usize>]) -> Vec<usize> {
    let mut ids = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        for &a in class {
            ids[a] = c;
        }
    }
    ids
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

pub fn green_relations(s: &FiniteSemigroup) -> GreenStructure {
    let n = s.order();
    let left: Vec<BTreeSet<usize>> = (0..n).map(|a| s.left_ideal_s1(a)).collect();
    let right: Vec<BTreeSet<usize>> = (0..n).map(|a| s.right_ideal_s1(a)).collect();
    let l_classes = partition_by(n, |a| left[a].clone());
    let r_classes = partition_by(n, |a| right[a].clone());
    let l_id = class_ids(n, &l_classes);
    let r_id = class_ids(n, &r_classes);
    let h_classes = partition_by(n, |a| (l_id[a], r_id[a]));

    let mut uf = UnionFind((0..n).collect());
    for class in l_classes.iter().chain(&r_classes) {
        for w in class.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let d_classes = partition_by(n, |a| uf.find(a));

    GreenStructure {
        l_classes,
        r_classes,
        h_classes,
        d_classes,
    }
}

impl GreenStructure {
    /// Sorts each class and orders classes by smallest element.
    pub fn normalized(mut self) -> Self {
        for parts in [
            &mut self.l_classes,
            &mut self.r_classes,
            &mut self.h_classes,
            &mut self.d_classes,
        ] {
            for c in parts.iter_mut() {
                c.sort_unstable();
            }
            parts.sort();
        }
        self
    }

    /// Multiset of (D-class size, #R-classes, #L-classes), sorted.
    pub fn shape(&self) -> Vec<(usize, usize, usize)> {
        let n = self.d_classes.iter().map(Vec::len).sum();
        let l_id = class_ids(n, &self.l_classes);
        let r_id = class_ids(n, &self.r_classes);
        let mut out: Vec<_> = self
            .d_classes
            .iter()
            .map(|d| {
                let rows: BTreeSet<_> = d.iter().map(|&a| r_id[a]).collect();
                let cols: BTreeSet<_> = d.iter().map(|&a| l_id[a]).collect();
                (d.len(), rows.len(), cols.len())
            })
            .collect();
        out.sort_unstable();
        out
    }
}

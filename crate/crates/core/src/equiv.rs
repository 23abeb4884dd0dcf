//! Operation (A), equivalence classes, and property (P).
//!
//! Operation (A) at a painted weight-zero node `j` is the simple reflection
//! `s_j`: a neighbor `i` of `j` changes colour when the coefficient of `α_j` in
//! `s_j(α_i)`, that is `|a[j][i]|`, is odd. For double bonds this skips the long
//! neighbor of a short node, which gives the listed `B_n`, `C_n` and `F_4`
//! exceptions under the fixed numbering. Neighbors moved by θ are never
//! painted and are left alone.
//!
//! Painted sets are handled as `u64` bitmasks internally, so diagrams in this
//! module are limited to rank 64.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::classify::noticed_report;
use crate::diagram::WeightedVoganDiagram;
use crate::error::{Error, Result};
use crate::rootsys::diagram_automorphisms;

pub(crate) type Mask = u64;

pub(crate) fn mask_of(set: &BTreeSet<usize>) -> Mask {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

pub(crate) fn set_of(mask: Mask) -> BTreeSet<usize> {
    (0..Mask::BITS as usize).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Precomputed move data for one `(D, θ, ω)`.
#[derive(Debug, Clone)]
pub(crate) struct MoveTable {
    /// Nodes with `ω_j = 0` that are θ-fixed.
    pub zero_fixed: Mask,
    /// For each node `j`, the nodes whose colour flips under (A) at `j`.
    pub toggles: Vec<Mask>,
}

impl MoveTable {
    pub fn new(d: &WeightedVoganDiagram) -> Self {
        let n = d.rank();
        assert!(n <= Mask::BITS as usize, "rank {n} exceeds the supported 64 nodes");
        let dyn_d = d.diagram();
        let theta = d.theta();
        let mut zero_fixed = 0;
        let mut toggles = vec![0; n];
        for (j, toggled) in toggles.iter_mut().enumerate() {
            if d.weight(j) == 0 && theta.is_fixed(j) {
                zero_fixed |= 1 << j;
            }
            for i in dyn_d.neighbors(j) {
                if theta.is_fixed(i) && dyn_d.cartan(j, i) % 2 != 0 {
                    *toggled |= 1 << i;
                }
            }
        }
        MoveTable { zero_fixed, toggles }
    }

    #[inline]
    pub fn applicable(&self, painted: Mask) -> Mask {
        painted & self.zero_fixed
    }

    #[inline]
    pub fn apply(&self, painted: Mask, j: usize) -> Mask {
        painted ^ self.toggles[j]
    }

    /// Every painted set reachable from `start`, in BFS order.
    pub fn closure(&self, start: Mask) -> Vec<Mask> {
        let mut seen = vec![start];
        let mut index: HashMap<Mask, ()> = HashMap::from([(start, ())]);
        let mut at = 0;
        while at < seen.len() {
            let cur = seen[at];
            at += 1;
            let mut moves = self.applicable(cur);
            while moves != 0 {
                let j = moves.trailing_zeros() as usize;
                moves &= moves - 1;
                let next = self.apply(cur, j);
                if index.insert(next, ()).is_none() {
                    seen.push(next);
                }
            }
        }
        seen
    }
}

/// Painted nodes of weight zero, where (A) may be applied.
pub fn applicable_nodes(d: &WeightedVoganDiagram) -> Vec<usize> {
    d.painted().iter().copied().filter(|&j| d.weight(j) == 0).collect()
}

/// Nodes whose colour (A) at `j` would flip, whether or not `j` is applicable.
pub fn toggled_by(d: &WeightedVoganDiagram, j: usize) -> Vec<usize> {
    set_of(MoveTable::new(d).toggles[j]).into_iter().collect()
}

/// Applies (A) at the 0-based node `j`.
pub fn operation_a(d: &WeightedVoganDiagram, j: usize) -> Result<WeightedVoganDiagram> {
    if j >= d.rank() {
        return Err(Error::NoSuchNode { node: j + 1, rank: d.rank() });
    }
    if !d.is_painted(j) {
        return Err(Error::NotApplicable { node: j + 1, reason: "the node is not painted" });
    }
    if d.weight(j) != 0 {
        return Err(Error::NotApplicable { node: j + 1, reason: "the node has nonzero weight" });
    }
    let table = MoveTable::new(d);
    Ok(d.with_painted(set_of(table.apply(mask_of(d.painted()), j))))
}

/// A class under (A): all members share `D`, `θ` and `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub canonical: WeightedVoganDiagram,
    /// Sorted by painted set.
    pub members: Vec<WeightedVoganDiagram>,
    pub noticed: bool,
    pub property_p_members: Vec<WeightedVoganDiagram>,
}

impl EquivalenceClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: &WeightedVoganDiagram) -> bool {
        self.members.binary_search(d).is_ok()
    }
}

pub fn equivalence_class(d: &WeightedVoganDiagram) -> EquivalenceClass {
    let table = MoveTable::new(d);
    let mut masks = table.closure(mask_of(d.painted()));
    masks.sort_by_key(|&m| set_of(m));
    let members: Vec<_> = masks.into_iter().map(|m| d.with_painted(set_of(m))).collect();
    let canonical = members[0].clone();
    let noticed = noticed_report(&canonical).noticed;
    let property_p_members = members.iter().filter(|m| has_property_p(m)).cloned().collect();
    EquivalenceClass { canonical, members, noticed, property_p_members }
}

pub fn equivalent(d1: &WeightedVoganDiagram, d2: &WeightedVoganDiagram) -> bool {
    move_sequence(d1, d2).is_some()
}

/// The shortest sequence of 0-based nodes at which (A) carries `from` to `to`.
/// Among shortest sequences the one with the smallest nodes, compared move by
/// move, is returned.
pub fn move_sequence(from: &WeightedVoganDiagram, to: &WeightedVoganDiagram) -> Option<Vec<usize>> {
    if from.diagram() != to.diagram() || from.theta() != to.theta() || from.weights() != to.weights() {
        return None;
    }
    let table = MoveTable::new(from);
    let start = mask_of(from.painted());
    let goal = mask_of(to.painted());
    // Backward distances from the goal; (A) is an involution, so the move graph
    // is undirected and a greedy walk on smallest nodes gives the lexicographic
    // least shortest path.
    let mut dist: HashMap<Mask, usize> = HashMap::from([(goal, 0)]);
    let mut queue = VecDeque::from([goal]);
    while let Some(cur) = queue.pop_front() {
        if cur == start {
            break;
        }
        let mut moves = table.applicable(cur);
        while moves != 0 {
            let j = moves.trailing_zeros() as usize;
            moves &= moves - 1;
            let next = table.apply(cur, j);
            if !dist.contains_key(&next) {
                dist.insert(next, dist[&cur] + 1);
                queue.push_back(next);
            }
        }
    }
    let mut remaining = *dist.get(&start)?;
    let mut path = Vec::with_capacity(remaining);
    let mut cur = start;
    while remaining > 0 {
        let mut moves = table.applicable(cur);
        loop {
            let j = moves.trailing_zeros() as usize;
            moves &= moves - 1;
            let next = table.apply(cur, j);
            if dist.get(&next) == Some(&(remaining - 1)) {
                path.push(j);
                cur = next;
                remaining -= 1;
                break;
            }
        }
    }
    Some(path)
}

/// Equivalence after relabeling `d2` by some diagram automorphism.
pub fn equivalent_up_to_iso(d1: &WeightedVoganDiagram, d2: &WeightedVoganDiagram) -> bool {
    if d1.diagram() != d2.diagram() {
        return false;
    }
    diagram_automorphisms(d2.diagram())
        .iter()
        .filter_map(|sigma| d2.relabel(sigma).ok())
        .any(|r| equivalent(d1, &r))
}

/// Connected components of the subgraph induced on weight-zero nodes.
pub fn zero_weight_components(d: &WeightedVoganDiagram) -> Vec<Vec<usize>> {
    let n = d.rank();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || d.weight(s) != 0 {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut at = 0;
        while at < comp.len() {
            let v = comp[at];
            at += 1;
            for u in d.diagram().neighbors(v) {
                if !seen[u] && d.weight(u) == 0 {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Each weight-zero component carries at most one painted node.
pub fn has_property_p(d: &WeightedVoganDiagram) -> bool {
    zero_weight_components(d)
        .iter()
        .all(|comp| comp.iter().filter(|&&i| d.is_painted(i)).count() <= 1)
}

/// The least member of the class with property (P).
pub fn normalize_p(d: &WeightedVoganDiagram) -> Result<WeightedVoganDiagram> {
    let table = MoveTable::new(d);
    let mut masks = table.closure(mask_of(d.painted()));
    masks.sort_by_key(|&m| set_of(m));
    masks
        .into_iter()
        .map(|m| d.with_painted(set_of(m)))
        .find(has_property_p)
        .ok_or(Error::PropertyPAnomaly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    const B3_LEFT: &str = "B3 theta=id J=1,2 w=1,0,1";
    const B5_NOTICED: &str = "B5 theta=id J=2,4,5 w=2,0,0,2,0";

    fn painted(d: &WeightedVoganDiagram) -> Vec<usize> {
        d.painted().iter().map(|p| p + 1).collect()
    }

    fn with_j(base: &str, j: &[usize]) -> WeightedVoganDiagram {
        let d = parse(base).unwrap();
        d.with_painted(j.iter().map(|x| x - 1).collect())
    }

    #[test]
    fn applicable() {
        assert_eq!(applicable_nodes(&parse(B3_LEFT).unwrap()), vec![1]);
        assert_eq!(applicable_nodes(&parse(B5_NOTICED).unwrap()), vec![1, 4]);
        assert!(applicable_nodes(&parse("C4 theta=id J= w=0,0,0,0").unwrap()).is_empty());
    }

    #[test]
    fn b3_move_at_node_2() {
        let d = parse(B3_LEFT).unwrap();
        let e = operation_a(&d, 1).unwrap();
        assert_eq!(painted(&e), vec![2, 3]);
        assert_eq!(operation_a(&e, 1).unwrap(), d);
    }

    #[test]
    fn b5_moves() {
        let d = parse(B5_NOTICED).unwrap();
        assert_eq!(painted(&operation_a(&d, 1).unwrap()), vec![1, 2, 3, 4, 5]);
        assert_eq!(operation_a(&d, 4).unwrap(), d);
    }

    #[test]
    fn not_applicable() {
        let d = parse(B5_NOTICED).unwrap();
        assert!(matches!(operation_a(&d, 0), Err(Error::NotApplicable { node: 1, .. })));
        assert!(matches!(operation_a(&d, 3), Err(Error::NotApplicable { node: 4, .. })));
        assert!(matches!(operation_a(&d, 9), Err(Error::NoSuchNode { .. })));
    }

    #[test]
    fn two_orbit_neighbors_are_not_toggled() {
        let d = parse("D6 theta=1,2,3,4,6,5 J=4 w=0,0,0,0,0,0").unwrap();
        let e = operation_a(&d, 3).unwrap();
        assert_eq!(painted(&e), vec![3, 4]);
    }

    #[test]
    fn g2_short_node_toggles_long_neighbor() {
        let d = parse("G2 theta=id J=1 w=0,1").unwrap();
        assert_eq!(painted(&operation_a(&d, 0).unwrap()), vec![1, 2]);
        let d = parse("G2 theta=id J=2 w=1,0").unwrap();
        assert_eq!(painted(&operation_a(&d, 1).unwrap()), vec![1, 2]);
    }

    #[test]
    fn b5_class_members() {
        let class = equivalence_class(&parse(B5_NOTICED).unwrap());
        let sets: Vec<Vec<usize>> = class.members.iter().map(painted).collect();
        assert!(sets.contains(&vec![2, 4, 5]));
        assert!(sets.contains(&vec![1, 2, 3, 4, 5]));
        assert!(sets.contains(&vec![1, 3, 5]));
        assert!(class.noticed);
        assert_eq!(class.canonical, class.members[0]);
        assert!(class.members.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn singleton_class() {
        let d = parse("B3 theta=id J= w=0,1,0").unwrap();
        let class = equivalence_class(&d);
        assert_eq!(class.members, vec![d]);
    }

    #[test]
    fn equivalence_and_moves() {
        let a = parse(B3_LEFT).unwrap();
        let b = parse("B3 theta=id J=2,3 w=1,0,1").unwrap();
        assert!(equivalent(&a, &b));
        assert_eq!(move_sequence(&a, &b), Some(vec![1]));
        assert_eq!(move_sequence(&a, &a), Some(vec![]));

        let d = parse(B5_NOTICED).unwrap();
        assert!(equivalent(&d, &with_j(B5_NOTICED, &[1, 3, 5])));
        assert_eq!(move_sequence(&d, &with_j(B5_NOTICED, &[1, 3, 5])), Some(vec![1, 2]));
        assert!(!equivalent(&d, &with_j(B5_NOTICED, &[])));
        assert!(!equivalent(&d, &parse("B5 theta=id J=2,4,5 w=2,0,0,2,2").unwrap()));
    }

    #[test]
    fn property_p() {
        assert!(has_property_p(&parse(B5_NOTICED).unwrap()));
        assert!(!has_property_p(&with_j(B5_NOTICED, &[1, 2, 3, 4, 5])));
        let n = normalize_p(&with_j(B5_NOTICED, &[1, 2, 3, 4, 5])).unwrap();
        assert!(has_property_p(&n));
        assert_eq!(painted(&n), vec![1, 3, 5]);
        let blank = parse("A4 theta=id J= w=0,0,0,0").unwrap();
        assert!(has_property_p(&blank));
        assert_eq!(normalize_p(&blank).unwrap(), blank);
    }

    #[test]
    fn components_of_branched_diagram() {
        let d = parse("D5 theta=id J= w=0,0,1,0,0").unwrap();
        assert_eq!(zero_weight_components(&d), vec![vec![0, 1], vec![3], vec![4]]);
    }

    #[test]
    fn up_to_iso() {
        let a = parse("D4 theta=id J=1 w=0,1,0,0").unwrap();
        let b = parse("D4 theta=id J=3 w=0,1,0,0").unwrap();
        assert!(!equivalent(&a, &b));
        assert!(equivalent_up_to_iso(&a, &b));
        let c = parse("D4 theta=id J=3 w=0,1,1,0").unwrap();
        assert!(!equivalent_up_to_iso(&a, &c));
    }
}

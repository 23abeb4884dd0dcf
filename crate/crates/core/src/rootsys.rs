//! Finite-type Dynkin diagrams, their Cartan matrices, positive roots and
//! diagram involutions.
//!
//! Node numbering is fixed per family:
//!
//! * `A_n`: the path `1 - 2 - ... - n`.
//! * `B_n`: path, double bond `n-1 => n`, node `n` short.
//! * `C_n`: path, double bond `n-1 <= n`, nodes `1..n-1` short, node `n` long.
//! * `D_n`: path `1 - ... - n-2`, with `n-1` and `n` both attached to `n-2`.
//! * `E_n`: path `1 - 3 - 4 - ... - n`, node `2` attached to `4`.
//! * `F_4`: `1 - 2 => 3 - 4`, nodes `1, 2` short and `3, 4` long.
//! * `G_2`: triple bond, node `1` short and node `2` long.
//!
//! Cartan entries follow `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`, so the row of a
//! short node carries the `-2` or `-3` across a multiple bond.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple type such as `B5`, with its rank bounds checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bound = match family {
            Family::A if rank < 1 => Some("A requires rank >= 1"),
            Family::B if rank < 2 => Some("B requires rank >= 2"),
            Family::C if rank < 3 => Some("C requires rank >= 3"),
            Family::D if rank < 4 => Some("D requires rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E requires rank in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F requires rank = 4"),
            Family::G if rank != 2 => Some("G requires rank = 2"),
            _ => None,
        };
        match bound {
            Some(bound) => Err(Error::InvalidRank { family, rank, bound }),
            None => Ok(SimpleType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every constructible type with `rank <= max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_char).ok_or_else(|| Error::Syntax {
            position: 0,
            message: format!("expected a type such as `B5`, found `{s}`"),
        })?;
        let digits = chars.as_str();
        let rank = digits.parse::<usize>().map_err(|_| Error::Syntax {
            position: 1,
            message: format!("expected a rank after `{family}`, found `{digits}`"),
        })?;
        SimpleType::new(family, rank)
    }
}

/// A bond between two adjacent nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond {
    /// 1, 2 or 3.
    pub multiplicity: u8,
    /// The longer endpoint, if the bond is multiple.
    pub long: Option<usize>,
}

/// A connected Dynkin diagram of finite type under the fixed numbering.
///
/// Nodes are 0-based in the API of this crate; text and JSON interfaces are 1-based.
#[derive(Debug, Clone)]
pub struct DynkinDiagram {
    ty: SimpleType,
    cartan: Arc<[i32]>,
}

impl PartialEq for DynkinDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for DynkinDiagram {}

impl std::hash::Hash for DynkinDiagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ty.hash(state);
    }
}

impl DynkinDiagram {
    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`.
    #[inline]
    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i * self.ty.rank + j]
    }

    pub fn cartan_rows(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.cartan(i, j)).collect()).collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan(i, j) != 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| self.adjacent(i, j))
    }

    pub fn bond(&self, i: usize, j: usize) -> Option<Bond> {
        if !self.adjacent(i, j) {
            return None;
        }
        let (aij, aji) = (self.cartan(i, j), self.cartan(j, i));
        let long = match aij.abs().cmp(&aji.abs()) {
            Ordering::Less => Some(i),
            Ordering::Greater => Some(j),
            Ordering::Equal => None,
        };
        Some(Bond { multiplicity: (aij * aji) as u8, long })
    }

    /// Unordered adjacent pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Does the permutation `perm` (0-based images) preserve the Cartan matrix?
    pub fn preserved_by(&self, perm: &[usize]) -> bool {
        let n = self.rank();
        perm.len() == n
            && (0..n).all(|i| (0..n).all(|j| self.cartan(perm[i], perm[j]) == self.cartan(i, j)))
    }
}

/// Builds the diagram of `ty` under the fixed numbering convention.
pub fn cartan_matrix(ty: SimpleType) -> DynkinDiagram {
    let n = ty.rank;
    let mut a = vec![0i32; n * n];
    let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
        a[i * n + j] = aij;
        a[j * n + i] = aji;
    };
    match ty.family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -3, -1),
    }
    for i in 0..n {
        a[i * n + i] = 2;
    }
    DynkinDiagram { ty, cartan: a.into() }
}

/// A positive root as its vector of simple-root coefficients.
///
/// Roots are ordered by height, then by coefficient vector with earlier nodes
/// first, so `α_1 < α_2 < α_1 + α_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root(Vec<u32>);

impl Root {
    pub fn new(coeffs: Vec<u32>) -> Self {
        Root(coeffs)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// The height `Σ n_i`.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Node indices with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i)
    }

    pub fn checked_add(&self, other: &Root) -> Option<Root> {
        (self.rank() == other.rank())
            .then(|| Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length().cmp(&other.length()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl serde::Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c > 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `l_α = Σ n_i`.
pub fn root_length(root: &Root) -> u32 {
    root.length()
}

/// Generates `Δ⁺` by upward closure along simple-root strings.
///
/// For a root `β` and a simple root `α_i`, the `α_i`-string through `β` runs
/// from `β - pα_i` to `β + qα_i` with `p - q = <β, α_i^∨>`; `β + α_i` is a root
/// exactly when `q > 0`. All lower members of a string have smaller height, so
/// processing by height sees them first.
pub fn positive_roots(diagram: &DynkinDiagram) -> Vec<Root> {
    let n = diagram.rank();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut all = Vec::new();
    let mut layer: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    while !layer.is_empty() {
        for r in &layer {
            seen.insert(r.0.clone());
        }
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut lowered = beta.0.clone();
                let mut p = 0i32;
                while lowered[i] > 0 {
                    lowered[i] -= 1;
                    if !seen.contains(&lowered) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i32 =
                    (0..n).map(|k| beta.0[k] as i32 * diagram.cartan(i, k)).sum();
                if p - pairing > 0 {
                    let mut raised = beta.0.clone();
                    raised[i] += 1;
                    next.insert(Root(raised));
                }
            }
        }
        all.extend(std::mem::take(&mut layer));
        layer = next;
    }
    all
}

/// A diagram together with its positive roots and a lookup index.
#[derive(Debug, Clone)]
pub struct RootSystem {
    diagram: DynkinDiagram,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(diagram: &DynkinDiagram) -> Self {
        let roots = positive_roots(diagram);
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        RootSystem { diagram: diagram.clone(), roots, index }
    }

    pub fn of_type(ty: SimpleType) -> Self {
        Self::new(&cartan_matrix(ty))
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.index.contains_key(root)
    }

    pub fn highest_root(&self) -> &Root {
        self.roots.last().expect("a root system has at least one root")
    }
}

/// All node permutations of order at most two that preserve the Cartan
/// matrix, identity first and the rest ordered by image vector.
pub fn diagram_involutions(diagram: &DynkinDiagram) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<Option<usize>>, at: usize, d: &DynkinDiagram, out: &mut Vec<Vec<usize>>) {
        let n = perm.len();
        if at == n {
            out.push(perm.iter().map(|p| p.unwrap()).collect());
            return;
        }
        if perm[at].is_some() {
            return extend(perm, at + 1, d, out);
        }
        for target in at..n {
            if perm[target].is_some() || d.cartan(at, at) != d.cartan(target, target) {
                continue;
            }
            perm[at] = Some(target);
            perm[target] = Some(at);
            let consistent = (0..n).all(|k| match perm[k] {
                Some(pk) => {
                    d.cartan(pk, target) == d.cartan(k, at) && d.cartan(target, pk) == d.cartan(at, k)
                }
                None => true,
            });
            if consistent {
                extend(perm, at + 1, d, out);
            }
            perm[target] = None;
            perm[at] = None;
        }
    }

    let n = diagram.rank();
    let mut out = Vec::new();
    extend(&mut vec![None; n], 0, diagram, &mut out);
    out.retain(|p| diagram.preserved_by(p));
    out.sort_by(|a, b| {
        let ida = a.iter().enumerate().all(|(i, &x)| i == x);
        let idb = b.iter().enumerate().all(|(i, &x)| i == x);
        idb.cmp(&ida).then_with(|| a.cmp(b))
    });
    out
}

/// Every automorphism of the diagram (not only involutions), found by
/// backtracking over partial assignments.
pub fn diagram_automorphisms(diagram: &DynkinDiagram) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<usize>, used: &mut Vec<bool>, d: &DynkinDiagram, out: &mut Vec<Vec<usize>>) {
        let n = d.rank();
        let at = perm.len();
        if at == n {
            out.push(perm.clone());
            return;
        }
        for target in 0..n {
            if used[target] {
                continue;
            }
            let ok = (0..at).all(|k| {
                d.cartan(perm[k], target) == d.cartan(k, at) && d.cartan(target, perm[k]) == d.cartan(at, k)
            });
            if ok {
                used[target] = true;
                perm.push(target);
                extend(perm, used, d, out);
                perm.pop();
                used[target] = false;
            }
        }
    }

    let n = diagram.rank();
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], diagram, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn rank_bounds_are_enforced() {
        for bad in ["B1", "C2", "D3", "E5", "E9", "F3", "G3", "A0"] {
            let err = bad.parse::<SimpleType>().unwrap_err();
            assert!(matches!(err, Error::InvalidRank { .. }), "{bad}: {err}");
        }
        assert!("X3".parse::<SimpleType>().is_err());
        assert!("B".parse::<SimpleType>().is_err());
        assert_eq!(ty("e7").to_string(), "E7");
    }

    #[test]
    fn invalid_rank_message_names_bound() {
        let err = SimpleType::new(Family::D, 3).unwrap_err().to_string();
        assert!(err.contains("rank >= 4"), "{err}");
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(ty("A1")).cartan_rows(), vec![vec![2]]);
        assert_eq!(
            cartan_matrix(ty("B3")).cartan_rows(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );
        let g2 = cartan_matrix(ty("G2")).cartan_rows();
        assert_eq!(g2[0][1] * g2[1][0], 3);
        assert_eq!(g2[0][1], -3);
    }

    #[test]
    fn bond_direction() {
        let b3 = cartan_matrix(ty("B3"));
        assert_eq!(b3.bond(1, 2), Some(Bond { multiplicity: 2, long: Some(1) }));
        let c4 = cartan_matrix(ty("C4"));
        assert_eq!(c4.bond(2, 3), Some(Bond { multiplicity: 2, long: Some(3) }));
        let f4 = cartan_matrix(ty("F4"));
        assert_eq!(f4.bond(1, 2), Some(Bond { multiplicity: 2, long: Some(2) }));
        assert_eq!(f4.bond(0, 1), Some(Bond { multiplicity: 1, long: None }));
        let g2 = cartan_matrix(ty("G2"));
        assert_eq!(g2.bond(0, 1), Some(Bond { multiplicity: 3, long: Some(1) }));
        assert_eq!(b3.bond(0, 2), None);
    }

    #[test]
    fn e6_shape() {
        let e6 = cartan_matrix(ty("E6"));
        let deg: Vec<usize> = (0..6).map(|i| e6.neighbors(i).count()).collect();
        assert_eq!(deg, vec![1, 1, 2, 3, 2, 1]);
        assert!(e6.adjacent(1, 3));
    }

    #[test]
    fn a2_roots() {
        let roots = positive_roots(&cartan_matrix(ty("A2")));
        let coeffs: Vec<&[u32]> = roots.iter().map(|r| r.coeffs()).collect();
        assert_eq!(coeffs, vec![&[1, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn b3_roots() {
        let rs = RootSystem::of_type(ty("B3"));
        assert_eq!(rs.len(), 9);
        assert!(rs.contains(&Root::new(vec![0, 1, 2])));
        assert_eq!(rs.highest_root().coeffs(), &[1, 2, 2]);
    }

    #[test]
    fn g2_roots() {
        let rs = RootSystem::of_type(ty("G2"));
        assert_eq!(rs.len(), 6);
        assert_eq!(rs.highest_root().coeffs(), &[3, 2]);
    }

    #[test]
    fn root_length_examples() {
        assert_eq!(root_length(&Root::new(vec![1, 0, 0])), 1);
        assert_eq!(root_length(&Root::new(vec![0, 1, 2])), 3);
        assert_eq!(root_length(&Root::new(vec![0, 1, 1, 1, 1])), 4);
    }

    #[test]
    fn root_display() {
        assert_eq!(Root::new(vec![0, 1, 2]).to_string(), "a2+2a3");
    }

    #[test]
    fn involution_counts() {
        let count = |s: &str| diagram_involutions(&cartan_matrix(ty(s))).len();
        assert_eq!(count("B3"), 1);
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A4"), 2);
        assert_eq!(count("D4"), 4);
        assert_eq!(count("D6"), 2);
        assert_eq!(count("E6"), 2);
        for s in ["B5", "C4", "F4", "G2", "E7", "E8"] {
            assert_eq!(count(s), 1, "{s}");
        }
        let d6 = diagram_involutions(&cartan_matrix(ty("D6")));
        assert_eq!(d6[0], vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d6[1], vec![0, 1, 2, 3, 5, 4]);
    }

    #[test]
    fn automorphism_group_orders() {
        let count = |s: &str| diagram_automorphisms(&cartan_matrix(ty(s))).len();
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("A5"), 2);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("B4"), 1);
    }
}

//! Per-root data of a weighted Vogan diagram and the quantities built from it:
//! weight and painted length of each root, the sets `P_np^(j)`, `P_p^(j)`,
//! `K^(j)`, the noticed equality and the per-node minimality test.

use serde::Serialize;

use crate::diagram::{Involution, WeightedVoganDiagram};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};

/// `θ(Σ n_i α_i) = Σ n_i α_{θ(i)}`.
pub fn theta_on_root(theta: &Involution, root: &Root) -> Result<Root> {
    if theta.len() != root.rank() {
        return Err(Error::RankMismatch { expected: theta.len(), found: root.rank() });
    }
    let mut out = vec![0; root.rank()];
    for (i, &c) in root.coeffs().iter().enumerate() {
        out[theta.apply(i)] = c;
    }
    Ok(Root::new(out))
}

/// `ω_α = Σ n_i ω_i`.
pub fn root_weight(d: &WeightedVoganDiagram, root: &Root) -> u32 {
    root.coeffs().iter().zip(d.weights()).map(|(&c, &w)| c * w as u32).sum()
}

/// `p_α = Σ_{i ∈ J} n_i`.
pub fn painted_length(d: &WeightedVoganDiagram, root: &Root) -> u32 {
    d.painted().iter().map(|&i| root.coeffs()[i]).sum()
}

fn is_theta_fixed(theta: &Involution, root: &Root) -> bool {
    root.coeffs().iter().enumerate().all(|(i, &c)| root.coeffs()[theta.apply(i)] == c)
}

/// The least `γ ∈ Δ⁺` (in root order) with `γ + θγ = α`, if any.
pub fn gamma_sum_witness(rs: &RootSystem, theta: &Involution, root: &Root) -> Option<Root> {
    rs.roots().iter().find_map(|gamma| {
        let image = theta_on_root(theta, gamma).ok()?;
        (gamma.checked_add(&image).as_ref() == Some(root)).then(|| gamma.clone())
    })
}

/// Everything the partitions need to know about one positive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClass {
    pub root: Root,
    pub weight: u32,
    pub painted_length: u32,
    pub fixed: bool,
    pub gamma_sum: Option<Root>,
    /// Index of `θα` in the root system.
    pub theta_index: usize,
}

impl RootClass {
    /// The root spans a non-compact line: `θα = α` and either `p_α` is odd or
    /// `α = γ + θγ`.
    pub fn is_noncompact_imaginary(&self) -> bool {
        self.fixed && (self.painted_length % 2 == 1 || self.gamma_sum.is_some())
    }
}

/// For weight `j`: `P_np^(j)`, `P_p^(j)` and `K^(j)`, each in root order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightPartition {
    pub j: u32,
    #[serde(rename = "P_np")]
    pub p_np: Vec<Root>,
    #[serde(rename = "P_p")]
    pub p_p: Vec<Root>,
    /// Unordered pairs `{α, θα}`, stored with the lesser root first.
    #[serde(rename = "K")]
    pub k: Vec<(Root, Root)>,
}

/// The two sides of the noticed equality with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoticedReport {
    pub n_theta: usize,
    pub n_theta_2: usize,
    /// `N^θ + N^θ_2 + 2|P_np^(0)| + 2|K^(0)|`.
    pub lhs: usize,
    /// `|P_p^(2)| + |K^(2)|`.
    pub rhs: usize,
    pub noticed: bool,
    pub p_np_0: Vec<Root>,
    pub k_0: Vec<(Root, Root)>,
    pub p_p_2: Vec<Root>,
    pub k_2: Vec<(Root, Root)>,
}

/// The two necessary conditions for a noticed diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem55 {
    /// `|P_np^(1)| = |P_p^(1)|`.
    pub cardinality: bool,
    /// Every node supports a weight-2 non-compact root.
    pub minimality: bool,
}

/// A diagram classified against its root system; built once, queried many times.
#[derive(Debug, Clone)]
pub struct Analysis<'a> {
    rs: &'a RootSystem,
    diagram: &'a WeightedVoganDiagram,
    classes: Vec<RootClass>,
}

impl<'a> Analysis<'a> {
    /// # Panics
    ///
    /// If `rs` is not the root system of `d`'s Dynkin diagram.
    pub fn new(rs: &'a RootSystem, d: &'a WeightedVoganDiagram) -> Self {
        assert_eq!(rs.diagram(), d.diagram(), "root system does not match diagram");
        let theta = d.theta();
        let mut gamma: Vec<Option<Root>> = vec![None; rs.len()];
        for g in rs.roots() {
            let image = theta_on_root(theta, g).expect("ranks agree");
            if let Some(idx) = g.checked_add(&image).and_then(|s| rs.index_of(&s)) {
                if gamma[idx].is_none() {
                    gamma[idx] = Some(g.clone());
                }
            }
        }
        let classes = rs
            .roots()
            .iter()
            .zip(gamma)
            .map(|(root, gamma_sum)| {
                let image = theta_on_root(theta, root).expect("ranks agree");
                RootClass {
                    weight: root_weight(d, root),
                    painted_length: painted_length(d, root),
                    fixed: is_theta_fixed(theta, root),
                    theta_index: rs.index_of(&image).expect("θ permutes positive roots"),
                    gamma_sum,
                    root: root.clone(),
                }
            })
            .collect();
        Analysis { rs, diagram: d, classes }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn diagram(&self) -> &WeightedVoganDiagram {
        self.diagram
    }

    pub fn classes(&self) -> &[RootClass] {
        &self.classes
    }

    /// `|{α ∈ Δ⁺ : ω_α = j}|`.
    pub fn weight_count(&self, j: u32) -> usize {
        self.classes.iter().filter(|c| c.weight == j).count()
    }

    pub fn partition(&self, j: u32) -> WeightPartition {
        let mut p_np = Vec::new();
        let mut p_p = Vec::new();
        let mut k = Vec::new();
        for (idx, c) in self.classes.iter().enumerate() {
            if c.weight != j {
                continue;
            }
            if !c.fixed {
                if idx < c.theta_index {
                    k.push((c.root.clone(), self.classes[c.theta_index].root.clone()));
                }
            } else if c.is_noncompact_imaginary() {
                p_p.push(c.root.clone());
            } else {
                p_np.push(c.root.clone());
            }
        }
        WeightPartition { j, p_np, p_p, k }
    }

    pub fn noticed_report(&self) -> NoticedReport {
        let theta = self.diagram.theta();
        let zero = self.partition(0);
        let two = self.partition(2);
        let n_theta = theta.fixed_count();
        let n_theta_2 = theta.two_orbit_count();
        let lhs = n_theta + n_theta_2 + 2 * zero.p_np.len() + 2 * zero.k.len();
        let rhs = two.p_p.len() + two.k.len();
        NoticedReport {
            n_theta,
            n_theta_2,
            lhs,
            rhs,
            noticed: lhs == rhs,
            p_np_0: zero.p_np,
            k_0: zero.k,
            p_p_2: two.p_p,
            k_2: two.k,
        }
    }

    /// The least root `α` with `n_node > 0`, `ω_α = 2` that is complex or
    /// non-compact imaginary; `None` if there is none.
    pub fn node_supports_g2p(&self, node: usize) -> Option<&Root> {
        self.classes
            .iter()
            .find(|c| {
                c.root.coeffs()[node] > 0 && c.weight == 2 && (!c.fixed || c.is_noncompact_imaginary())
            })
            .map(|c| &c.root)
    }

    pub fn minimality_check(&self) -> bool {
        (0..self.diagram.rank()).all(|j| self.node_supports_g2p(j).is_some())
    }

    pub fn theorem55_check(&self) -> Theorem55 {
        let one = self.partition(1);
        Theorem55 { cardinality: one.p_np.len() == one.p_p.len(), minimality: self.minimality_check() }
    }
}

fn checked_node(d: &WeightedVoganDiagram, node: usize) -> Result<usize> {
    if node < d.rank() {
        Ok(node)
    } else {
        Err(Error::NoSuchNode { node: node + 1, rank: d.rank() })
    }
}

pub fn partition(d: &WeightedVoganDiagram, j: u32) -> WeightPartition {
    let rs = RootSystem::new(d.diagram());
    Analysis::new(&rs, d).partition(j)
}

pub fn noticed_report(d: &WeightedVoganDiagram) -> NoticedReport {
    let rs = RootSystem::new(d.diagram());
    Analysis::new(&rs, d).noticed_report()
}

/// 0-based `node`; `Ok(None)` when the node has no supporting root.
pub fn node_supports_g2p(d: &WeightedVoganDiagram, node: usize) -> Result<Option<Root>> {
    let node = checked_node(d, node)?;
    let rs = RootSystem::new(d.diagram());
    Ok(Analysis::new(&rs, d).node_supports_g2p(node).cloned())
}

pub fn minimality_check(d: &WeightedVoganDiagram) -> bool {
    let rs = RootSystem::new(d.diagram());
    Analysis::new(&rs, d).minimality_check()
}

pub fn theorem55_check(d: &WeightedVoganDiagram) -> Theorem55 {
    let rs = RootSystem::new(d.diagram());
    Analysis::new(&rs, d).theorem55_check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    const D6_FLIP: &str = "D6 theta=1,2,3,4,6,5 J=1,4 w=2,0,0,0,1,1";
    const B3_LEFT: &str = "B3 theta=id J=1,2 w=1,0,1";
    const B5_NOTICED: &str = "B5 theta=id J=2,4,5 w=2,0,0,2,0";

    fn r(c: &[u32]) -> Root {
        Root::new(c.to_vec())
    }

    #[test]
    fn theta_on_root_examples() {
        let id = Involution::identity(6);
        let swap = parse(D6_FLIP).unwrap().theta().clone();
        assert_eq!(theta_on_root(&id, &r(&[0, 1, 1, 0, 0, 0])).unwrap(), r(&[0, 1, 1, 0, 0, 0]));
        assert_eq!(theta_on_root(&swap, &r(&[0, 0, 0, 0, 1, 0])).unwrap(), r(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(theta_on_root(&swap, &r(&[0, 0, 0, 1, 1, 1])).unwrap(), r(&[0, 0, 0, 1, 1, 1]));
        assert!(matches!(theta_on_root(&swap, &r(&[1, 0])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn weight_and_painted_length() {
        let b5 = parse(B5_NOTICED).unwrap();
        assert_eq!(root_weight(&b5, &r(&[0, 0, 0, 1, 2])), 2);
        assert_eq!(painted_length(&b5, &r(&[0, 0, 0, 1, 2])), 3);
        let d6 = parse(D6_FLIP).unwrap();
        assert_eq!(root_weight(&d6, &r(&[0, 0, 0, 1, 1, 1])), 2);
        assert_eq!(painted_length(&d6, &r(&[0, 0, 0, 1, 1, 1])), 1);
        let blank = parse("B3 theta=id J= w=0,0,0").unwrap();
        assert_eq!(root_weight(&blank, &r(&[1, 2, 2])), 0);
        assert_eq!(painted_length(&blank, &r(&[1, 2, 2])), 0);
    }

    #[test]
    fn gamma_sums_only_in_even_rank_a_with_flip() {
        let b5 = RootSystem::of_type("B5".parse().unwrap());
        let id = Involution::identity(5);
        assert!(b5.roots().iter().all(|a| gamma_sum_witness(&b5, &id, a).is_none()));

        let d6 = parse(D6_FLIP).unwrap();
        let rs = RootSystem::new(d6.diagram());
        assert!(rs.roots().iter().all(|a| gamma_sum_witness(&rs, d6.theta(), a).is_none()));

        // A3's flip fixes node 2; no γ + θγ is a root.
        let a3 = parse("A3 theta=3,2,1 J= w=0,0,0").unwrap();
        let rs = RootSystem::new(a3.diagram());
        assert!(rs.roots().iter().all(|a| gamma_sum_witness(&rs, a3.theta(), a).is_none()));

        let a4 = parse("A4 theta=4,3,2,1 J= w=0,0,0,0").unwrap();
        let rs = RootSystem::new(a4.diagram());
        assert_eq!(gamma_sum_witness(&rs, a4.theta(), &r(&[1, 1, 1, 1])), Some(r(&[1, 1, 0, 0])));
        assert_eq!(gamma_sum_witness(&rs, a4.theta(), &r(&[0, 1, 1, 0])), Some(r(&[0, 1, 0, 0])));
        assert_eq!(gamma_sum_witness(&rs, a4.theta(), &r(&[1, 1, 1, 0])), None);
    }

    #[test]
    fn b5_partitions() {
        let d = parse(B5_NOTICED).unwrap();
        let p = partition(&d, 2);
        let expected: Vec<Root> = [
            [1, 1, 0, 0, 0],
            [1, 1, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 1, 2],
            [0, 0, 1, 1, 0],
            [0, 1, 1, 1, 1],
            [0, 0, 1, 1, 2],
        ]
        .iter()
        .map(|c| r(c))
        .collect();
        let mut got = p.p_p.clone();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want);
        assert!(p.k.is_empty());
    }

    #[test]
    fn d6_partitions() {
        let d = parse(D6_FLIP).unwrap();
        let p0 = partition(&d, 0);
        assert_eq!(p0.p_np, vec![r(&[0, 1, 0, 0, 0, 0]), r(&[0, 0, 1, 0, 0, 0]), r(&[0, 1, 1, 0, 0, 0])]);
        assert!(p0.k.is_empty());
        let p2 = partition(&d, 2);
        assert_eq!(p2.p_p.len(), 6);
    }

    #[test]
    fn noticed_reports() {
        let a = noticed_report(&parse(B3_LEFT).unwrap());
        assert_eq!((a.lhs, a.rhs, a.noticed), (3, 1, false));
        assert_eq!(a.p_p_2, vec![r(&[0, 1, 2])]);
        let b = noticed_report(&parse(D6_FLIP).unwrap());
        assert_eq!((b.n_theta, b.n_theta_2, b.lhs, b.rhs, b.noticed), (4, 1, 11, 6, false));
        let c = noticed_report(&parse(B5_NOTICED).unwrap());
        assert_eq!((c.lhs, c.rhs, c.noticed), (7, 7, true));
        assert_eq!(c.p_np_0, vec![r(&[0, 0, 1, 0, 0])]);
    }

    #[test]
    fn node_support() {
        let a = parse(B3_LEFT).unwrap();
        assert_eq!(node_supports_g2p(&a, 0).unwrap(), None);
        let c = parse(B5_NOTICED).unwrap();
        assert_eq!(node_supports_g2p(&c, 4).unwrap(), Some(r(&[0, 0, 0, 1, 2])));
        let b = parse(D6_FLIP).unwrap();
        for j in 0..6 {
            assert!(node_supports_g2p(&b, j).unwrap().is_some(), "node {}", j + 1);
        }
        assert!(matches!(node_supports_g2p(&b, 6), Err(Error::NoSuchNode { node: 7, rank: 6 })));
    }

    #[test]
    fn minimality_and_theorem55() {
        assert!(!minimality_check(&parse(B3_LEFT).unwrap()));
        assert!(minimality_check(&parse(D6_FLIP).unwrap()));
        assert!(minimality_check(&parse(B5_NOTICED).unwrap()));
        let t = theorem55_check(&parse(D6_FLIP).unwrap());
        assert_eq!(t, Theorem55 { cardinality: true, minimality: true });
        let t = theorem55_check(&parse(B5_NOTICED).unwrap());
        assert_eq!(t, Theorem55 { cardinality: true, minimality: true });
        assert!(!theorem55_check(&parse(B3_LEFT).unwrap()).minimality);
    }

    #[test]
    fn report_json_shape() {
        let rep = noticed_report(&parse(B3_LEFT).unwrap());
        let v: serde_json::Value = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["lhs"], 3);
        assert_eq!(v["rhs"], 1);
        assert_eq!(v["noticed"], false);
        assert_eq!(v["p_p_2"], serde_json::json!([[0, 1, 2]]));
        assert_eq!(v["k_0"], serde_json::json!([]));
    }
}

//! Exhaustive enumeration of weighted Vogan diagrams for one `(D, θ)`, grouped
//! into equivalence classes with their noticed verdicts.
//!
//! Operation (A) never changes ω, so each weight vector is an independent
//! slice: classes are found by union-find over the painted subsets of the
//! θ-fixed nodes, slices run in parallel, and the results are merged in weight
//! order.

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{Involution, WeightedVoganDiagram};
use crate::equiv::{has_property_p, set_of, Mask, MoveTable};
use crate::error::{Error, Result};
use crate::rootsys::{cartan_matrix, diagram_automorphisms, RootSystem, SimpleType};

/// Default upper bound on the rank of a sweep.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Keep every member of every class, not only the canonical one.
    pub full: bool,
    /// Also merge classes related by a diagram automorphism commuting with θ.
    pub up_to_iso: bool,
    /// Recompute the verdict on every member and panic if it differs from
    /// the canonical member's.
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub canonical: WeightedVoganDiagram,
    pub size: usize,
    pub noticed: bool,
    pub lhs: usize,
    pub rhs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<WeightedVoganDiagram>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property_p_members: Option<Vec<WeightedVoganDiagram>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub total_diagrams: usize,
    pub total_classes: usize,
    pub noticed_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub ty: SimpleType,
    pub theta: Involution,
    pub classes: Vec<ClassEntry>,
    pub stats: Stats,
}

#[derive(Serialize, Deserialize)]
struct CatalogJson {
    #[serde(rename = "type")]
    ty: String,
    theta: Vec<usize>,
    stats: Stats,
    classes: Vec<ClassEntry>,
}

impl Catalog {
    pub fn to_json(&self) -> String {
        let json = CatalogJson {
            ty: self.ty.to_string(),
            theta: self.theta.image().iter().map(|t| t + 1).collect(),
            stats: self.stats,
            classes: self.classes.clone(),
        };
        serde_json::to_string(&json).expect("catalog JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: CatalogJson = serde_json::from_str(text)?;
        let ty: SimpleType = json.ty.parse()?;
        let diagram = cartan_matrix(ty);
        let theta = Involution::new(&diagram, json.theta.iter().map(|t| t.wrapping_sub(1)).collect())?;
        Ok(Catalog { ty, theta, classes: json.classes, stats: json.stats })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            out.push_str(&format!(
                "{} | size={} | noticed={} | lhs={} rhs={}\n",
                c.canonical, c.size, c.noticed, c.lhs, c.rhs
            ));
        }
        out
    }

    pub fn noticed(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.iter().filter(|c| c.noticed)
    }
}

/// `json` or `text`.
pub fn export_catalog(catalog: &Catalog, format: &str) -> Result<String> {
    match format {
        "json" => Ok(catalog.to_json()),
        "text" => Ok(catalog.to_text()),
        other => Err(Error::UnsupportedFormat(other.to_string())),
    }
}

/// The sweep rank cap, overridable through `VOGAN_MAX_RANK`.
pub fn max_rank() -> usize {
    std::env::var("VOGAN_MAX_RANK")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

fn check_theta(ty: SimpleType, theta: &Involution) -> Result<()> {
    let diagram = cartan_matrix(ty);
    Involution::new(&diagram, theta.image().to_vec()).map(|_| ())
}

/// All θ-symmetric weight vectors in `{0,1,2}^n`, lexicographically.
fn weight_vectors(theta: &Involution) -> Vec<Vec<u8>> {
    let n = theta.len();
    let reps: Vec<usize> = (0..n).filter(|&i| theta.apply(i) >= i).collect();
    let count = 3usize.pow(reps.len() as u32);
    let mut out = Vec::with_capacity(count);
    for code in 0..count {
        let mut w = vec![0u8; n];
        let mut c = code;
        for &i in reps.iter().rev() {
            w[i] = (c % 3) as u8;
            w[theta.apply(i)] = w[i];
            c /= 3;
        }
        out.push(w);
    }
    out
}

/// Painted subsets of the θ-fixed nodes, in ascending bitmask order.
fn painted_masks(theta: &Involution) -> Vec<Mask> {
    let fixed: Vec<usize> = theta.fixed_nodes().collect();
    (0..1u64 << fixed.len())
        .map(|code| {
            fixed.iter().enumerate().filter(|(b, _)| code >> b & 1 == 1).fold(0, |m, (_, &i)| m | 1 << i)
        })
        .collect()
}

/// Every valid `(J, ω)` for `(D, θ)`: weights in lexicographic order, and for
/// each weight vector the painted subsets in ascending bitmask order. There are
/// `2^N^θ · 3^(N^θ + N^θ_2)` of them.
pub fn enumerate_diagrams(
    ty: SimpleType,
    theta: &Involution,
) -> Result<impl Iterator<Item = WeightedVoganDiagram>> {
    check_theta(ty, theta)?;
    let diagram = cartan_matrix(ty);
    let masks = painted_masks(theta);
    let theta = theta.clone();
    Ok(weight_vectors(&theta).into_iter().flat_map(move |w| {
        let diagram = diagram.clone();
        let theta = theta.clone();
        masks.clone().into_iter().map(move |m| {
            WeightedVoganDiagram::from_parts_unchecked(diagram.clone(), theta.clone(), set_of(m), w.clone())
        })
    }))
}

/// Allocation-free noticed counts for one `(D, θ)`.
struct RootTable {
    odd_masks: Vec<Mask>,
    fixed: Vec<bool>,
    gamma: Vec<bool>,
    coeffs: Vec<Vec<u32>>,
    n_theta: usize,
    n_theta_2: usize,
}

impl RootTable {
    fn new(rs: &RootSystem, theta: &Involution) -> Self {
        let coeffs: Vec<Vec<u32>> = rs.roots().iter().map(|r| r.coeffs().to_vec()).collect();
        let odd_masks =
            coeffs.iter().map(|c| c.iter().enumerate().fold(0, |m, (i, &x)| m | ((x as Mask & 1) << i))).collect();
        let fixed: Vec<bool> = coeffs
            .iter()
            .map(|c| (0..c.len()).all(|i| c[theta.apply(i)] == c[i]))
            .collect();
        let mut gamma = vec![false; coeffs.len()];
        for c in &coeffs {
            let sum: Vec<u32> = (0..c.len()).map(|i| c[i] + c[theta.apply(i)]).collect();
            if let Some(idx) = rs.index_of(&crate::rootsys::Root::new(sum)) {
                gamma[idx] = true;
            }
        }
        RootTable { odd_masks, fixed, gamma, coeffs, n_theta: theta.fixed_count(), n_theta_2: theta.two_orbit_count() }
    }

    fn weights(&self, w: &[u8]) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.iter().zip(w).map(|(&a, &b)| a * b as u32).sum()).collect()
    }

    fn lhs_rhs(&self, root_weights: &[u32], painted: Mask) -> (usize, usize) {
        let (mut np0, mut complex0, mut p2, mut complex2) = (0, 0, 0, 0);
        for (k, &w) in root_weights.iter().enumerate() {
            if w != 0 && w != 2 {
                continue;
            }
            if !self.fixed[k] {
                if w == 0 { complex0 += 1 } else { complex2 += 1 }
                continue;
            }
            let noncompact = self.gamma[k] || (self.odd_masks[k] & painted).count_ones() % 2 == 1;
            match (w, noncompact) {
                (0, false) => np0 += 1,
                (2, true) => p2 += 1,
                _ => {}
            }
        }
        (self.n_theta + self.n_theta_2 + 2 * np0 + complex0, p2 + complex2 / 2)
    }
}

struct SliceClass {
    canonical: Mask,
    members: Vec<Mask>,
    lhs: usize,
    rhs: usize,
}

fn sort_masks(masks: &mut [Mask]) {
    masks.sort_by_cached_key(|&m| set_of(m));
}

fn classify_slice(
    table: &RootTable,
    proto: &WeightedVoganDiagram,
    masks: &[Mask],
    verify: bool,
) -> Vec<SliceClass> {
    let moves = MoveTable::new(proto);
    let index: HashMap<Mask, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut uf = UnionFind::<usize>::new(masks.len());
    for (i, &m) in masks.iter().enumerate() {
        let mut app = moves.applicable(m);
        while app != 0 {
            let j = app.trailing_zeros() as usize;
            app &= app - 1;
            uf.union(i, index[&moves.apply(m, j)]);
        }
    }
    let mut groups: HashMap<usize, Vec<Mask>> = HashMap::new();
    for (i, &m) in masks.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(m);
    }
    let weights = table.weights(proto.weights());
    let mut out: Vec<SliceClass> = groups
        .into_values()
        .map(|mut members| {
            sort_masks(&mut members);
            let canonical = members[0];
            let (lhs, rhs) = table.lhs_rhs(&weights, canonical);
            if verify {
                for &m in &members {
                    let (l, r) = table.lhs_rhs(&weights, m);
                    assert_eq!(
                        l == r,
                        lhs == rhs,
                        "noticed verdict differs inside the class of {}",
                        proto.with_painted(set_of(canonical))
                    );
                }
            }
            SliceClass { canonical, members, lhs, rhs }
        })
        .collect();
    out.sort_by_cached_key(|c| set_of(c.canonical));
    out
}

/// Automorphisms `σ` of the diagram with `σθσ⁻¹ = θ`.
fn centralizer(ty: SimpleType, theta: &Involution) -> Vec<Vec<usize>> {
    diagram_automorphisms(&cartan_matrix(ty))
        .into_iter()
        .filter(|s| (0..s.len()).all(|i| s[theta.apply(i)] == theta.apply(s[i])))
        .collect()
}

pub fn classify_all(ty: SimpleType, theta: &Involution, opts: SweepOptions) -> Result<Catalog> {
    check_theta(ty, theta)?;
    if ty.rank() > max_rank() {
        return Err(Error::RankCapExceeded { rank: ty.rank(), cap: max_rank() });
    }
    let diagram = cartan_matrix(ty);
    let rs = RootSystem::new(&diagram);
    let table = RootTable::new(&rs, theta);
    let masks = painted_masks(theta);
    let weights = weight_vectors(theta);
    let total_diagrams = weights.len() * masks.len();

    let mut groups: Vec<Group> = weights
        .into_par_iter()
        .map(|w| {
            let proto =
                WeightedVoganDiagram::from_parts_unchecked(diagram.clone(), theta.clone(), BTreeSet::new(), w.clone());
            classify_slice(&table, &proto, &masks, opts.verify)
                .into_iter()
                .map(|c| Group {
                    weights: w.clone(),
                    canonical: c.canonical,
                    lhs: c.lhs,
                    rhs: c.rhs,
                    parts: vec![(w.clone(), c.members)],
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();

    if opts.up_to_iso {
        groups = merge_up_to_iso(ty, theta, groups);
    }

    let make = |w: &[u8], m: Mask| {
        WeightedVoganDiagram::from_parts_unchecked(diagram.clone(), theta.clone(), set_of(m), w.to_vec())
    };
    let classes: Vec<ClassEntry> = groups
        .into_iter()
        .map(|g| {
            let size = g.parts.iter().map(|(_, ms)| ms.len()).sum();
            let members: Option<Vec<WeightedVoganDiagram>> = opts.full.then(|| {
                let mut all: Vec<_> =
                    g.parts.iter().flat_map(|(w, ms)| ms.iter().map(|&m| make(w, m))).collect();
                all.sort();
                all
            });
            let property_p_members =
                members.as_ref().map(|ms| ms.iter().filter(|d| has_property_p(d)).cloned().collect());
            ClassEntry {
                canonical: make(&g.weights, g.canonical),
                size,
                noticed: g.lhs == g.rhs,
                lhs: g.lhs,
                rhs: g.rhs,
                members,
                property_p_members,
            }
        })
        .collect();

    let stats = Stats {
        total_diagrams,
        total_classes: classes.len(),
        noticed_classes: classes.iter().filter(|c| c.noticed).count(),
    };
    Ok(Catalog { ty, theta: theta.clone(), classes, stats })
}

/// A class under construction: its least member and the members of each
/// weight vector it spans.
struct Group {
    weights: Vec<u8>,
    canonical: Mask,
    lhs: usize,
    rhs: usize,
    parts: Vec<(Vec<u8>, Vec<Mask>)>,
}

/// Unions classes whose canonical members are relabelings of each other by
/// an automorphism commuting with θ. The input is in canonical order, so the
/// first class of each union supplies the canonical member.
fn merge_up_to_iso(ty: SimpleType, theta: &Involution, groups: Vec<Group>) -> Vec<Group> {
    let sigmas = centralizer(ty, theta);
    let mut lookup: HashMap<(&[u8], Mask), usize> = HashMap::new();
    for (idx, g) in groups.iter().enumerate() {
        for (w, ms) in &g.parts {
            for &m in ms {
                lookup.insert((w.as_slice(), m), idx);
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(groups.len());
    for (idx, g) in groups.iter().enumerate() {
        for s in &sigmas {
            let mut w2 = vec![0u8; g.weights.len()];
            for (i, &x) in g.weights.iter().enumerate() {
                w2[s[i]] = x;
            }
            let m2 = set_of(g.canonical).iter().fold(0, |m, &i| m | 1 << s[i]);
            uf.union(idx, lookup[&(w2.as_slice(), m2)]);
        }
    }
    let roots: Vec<usize> = (0..groups.len()).map(|i| uf.find(i)).collect();
    let mut merged: Vec<Option<Group>> = Vec::with_capacity(groups.len());
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (g, root) in groups.into_iter().zip(roots) {
        match slot.get(&root) {
            Some(&k) => {
                let head = merged[k].as_mut().unwrap();
                debug_assert_eq!(head.lhs == head.rhs, g.lhs == g.rhs);
                head.parts.extend(g.parts);
            }
            None => {
                slot.insert(root, merged.len());
                merged.push(Some(g));
            }
        }
    }
    merged.into_iter().flatten().collect()
}

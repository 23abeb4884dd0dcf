//! Weighted Vogan diagrams `(D, θ, J, ω)`: validation, text and JSON forms,
//! rendering, and the underlying Vogan / weighted Dynkin diagrams.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::rootsys::{cartan_matrix, DynkinDiagram, SimpleType};

/// A diagram automorphism of order at most two, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Involution(Vec<usize>);

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution((0..n).collect())
    }

    /// Checks the permutation and involution laws and Cartan preservation.
    pub fn new(diagram: &DynkinDiagram, image: Vec<usize>) -> Result<Self> {
        let violations = involution_violations(diagram, &image);
        if violations.is_empty() {
            Ok(Involution(image))
        } else {
            Err(Error::Invalid(violations))
        }
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(image: Vec<usize>) -> Self {
        Involution(image)
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.0[i] == i
    }

    pub fn fixed_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &t)| *i == t).map(|(i, _)| i)
    }

    /// `N^θ`.
    pub fn fixed_count(&self) -> usize {
        self.fixed_nodes().count()
    }

    /// `N^θ_2`, the number of two-element orbits.
    pub fn two_orbit_count(&self) -> usize {
        (self.len() - self.fixed_count()) / 2
    }
}

fn involution_violations(diagram: &DynkinDiagram, image: &[usize]) -> Vec<Violation> {
    let n = diagram.rank();
    let mut v = Vec::new();
    if image.len() != n {
        v.push(Violation::WrongLength { field: "theta", expected: n, found: image.len() });
        return v;
    }
    if let Some(&bad) = image.iter().find(|&&t| t >= n) {
        v.push(Violation::NodeOutOfRange { field: "theta", node: bad + 1 });
        return v;
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    if distinct.len() != n {
        v.push(Violation::NotAPermutation);
        return v;
    }
    if (0..n).any(|i| image[image[i]] != i) {
        v.push(Violation::NotAnInvolution);
    }
    if !diagram.preserved_by(image) {
        v.push(Violation::NotAnAutomorphism);
    }
    v
}

/// Unvalidated diagram data as it arrives from text or JSON. Node indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDiagram {
    pub ty: SimpleType,
    pub theta: Vec<usize>,
    pub painted: Vec<usize>,
    pub weights: Vec<i64>,
}

/// A validated weighted Vogan diagram.
///
/// Equality is component-wise under the fixed numbering. The order compares
/// type, involution and weights first, then the sorted painted sets
/// lexicographically, which is the order used to pick canonical class members.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedVoganDiagram {
    diagram: DynkinDiagram,
    theta: Involution,
    painted: BTreeSet<usize>,
    weights: Vec<u8>,
}

impl Ord for WeightedVoganDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.diagram
            .simple_type()
            .cmp(&other.diagram.simple_type())
            .then_with(|| self.theta.cmp(&other.theta))
            .then_with(|| self.weights.cmp(&other.weights))
            .then_with(|| self.painted.cmp(&other.painted))
    }
}

impl PartialOrd for WeightedVoganDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Checks every invariant and reports all violations at once.
pub fn validate(raw: &RawDiagram) -> Result<WeightedVoganDiagram> {
    let diagram = cartan_matrix(raw.ty);
    let n = diagram.rank();
    let mut v = involution_violations(&diagram, &raw.theta);
    let theta_ok = v.is_empty();

    let mut painted = BTreeSet::new();
    for &p in &raw.painted {
        if p >= n {
            v.push(Violation::NodeOutOfRange { field: "painted", node: p + 1 });
        } else {
            painted.insert(p);
        }
    }
    if theta_ok {
        for &p in &painted {
            if raw.theta[p] != p {
                v.push(Violation::PaintedNotFixed { node: p + 1 });
            }
        }
    }

    if raw.weights.len() != n {
        v.push(Violation::WrongLength { field: "weights", expected: n, found: raw.weights.len() });
    } else {
        for (i, &w) in raw.weights.iter().enumerate() {
            if !(0..=2).contains(&w) {
                v.push(Violation::WeightOutOfRange { node: i + 1, weight: w });
            }
        }
        if theta_ok {
            for i in 0..n {
                let t = raw.theta[i];
                if i < t && raw.weights[i] != raw.weights[t] {
                    v.push(Violation::WeightNotSymmetric { node: i + 1, image: t + 1 });
                }
            }
        }
    }

    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    Ok(WeightedVoganDiagram {
        diagram,
        theta: Involution(raw.theta.clone()),
        painted,
        weights: raw.weights.iter().map(|&w| w as u8).collect(),
    })
}

impl WeightedVoganDiagram {
    /// Builds and validates from 0-based parts.
    pub fn new(
        ty: SimpleType,
        theta: Vec<usize>,
        painted: impl IntoIterator<Item = usize>,
        weights: Vec<i64>,
    ) -> Result<Self> {
        validate(&RawDiagram { ty, theta, painted: painted.into_iter().collect(), weights })
    }

    /// Assembles a diagram from parts already known to be consistent.
    pub(crate) fn from_parts_unchecked(
        diagram: DynkinDiagram,
        theta: Involution,
        painted: BTreeSet<usize>,
        weights: Vec<u8>,
    ) -> Self {
        debug_assert!(painted.iter().all(|&p| theta.is_fixed(p)));
        debug_assert!((0..weights.len()).all(|i| weights[i] == weights[theta.apply(i)]));
        WeightedVoganDiagram { diagram, theta, painted, weights }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn simple_type(&self) -> SimpleType {
        self.diagram.simple_type()
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn theta(&self) -> &Involution {
        &self.theta
    }

    pub fn painted(&self) -> &BTreeSet<usize> {
        &self.painted
    }

    pub fn is_painted(&self, i: usize) -> bool {
        self.painted.contains(&i)
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u8 {
        self.weights[i]
    }

    /// Same `D`, `θ` and `ω`, different painted set. The caller guarantees the
    /// new set is θ-fixed.
    pub(crate) fn with_painted(&self, painted: BTreeSet<usize>) -> Self {
        debug_assert!(painted.iter().all(|&p| self.theta.is_fixed(p)));
        WeightedVoganDiagram {
            diagram: self.diagram.clone(),
            theta: self.theta.clone(),
            painted,
            weights: self.weights.clone(),
        }
    }

    pub fn to_raw(&self) -> RawDiagram {
        RawDiagram {
            ty: self.simple_type(),
            theta: self.theta.image().to_vec(),
            painted: self.painted.iter().copied().collect(),
            weights: self.weights.iter().map(|&w| w as i64).collect(),
        }
    }

    /// Relabels nodes by a diagram automorphism `σ`: node `i` becomes `σ(i)`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.rank();
        let mut inverse = vec![0; n];
        for (i, &s) in sigma.iter().enumerate() {
            inverse[s] = i;
        }
        let theta: Vec<usize> = (0..n).map(|i| sigma[self.theta.apply(inverse[i])]).collect();
        let weights: Vec<i64> = (0..n).map(|i| self.weights[inverse[i]] as i64).collect();
        WeightedVoganDiagram::new(self.simple_type(), theta, self.painted.iter().map(|&p| sigma[p]), weights)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: DiagramJson = serde_json::from_str(text)?;
        json.try_into()
    }

    /// DOT form: painted nodes filled, θ-orbits as dashed double-headed
    /// edges, weights as external labels.
    pub fn to_dot(&self) -> String {
        let d = &self.diagram;
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.render_text());
        let _ = writeln!(out, "  node [shape=circle, label=\"\", width=0.25];");
        for i in 0..self.rank() {
            let fill = if self.is_painted(i) { "black" } else { "white" };
            let _ = writeln!(
                out,
                "  n{} [style=filled, fillcolor={fill}, xlabel=\"{}\", tooltip=\"node {}\"];",
                i + 1,
                self.weights[i],
                i + 1
            );
        }
        for (i, j) in d.edges() {
            let bond = d.bond(i, j).expect("edge implies bond");
            let attrs = match (bond.multiplicity, bond.long) {
                (1, _) => String::new(),
                (m, Some(long)) => {
                    let dir = if long == i { "forward" } else { "back" };
                    format!(" [penwidth={m}, dir={dir}, arrowhead=normal, arrowtail=normal]")
                }
                (m, None) => format!(" [penwidth={m}]"),
            };
            let _ = writeln!(out, "  n{} -- n{}{attrs};", i + 1, j + 1);
        }
        for i in 0..self.rank() {
            let t = self.theta.apply(i);
            if i < t {
                let _ = writeln!(
                    out,
                    "  n{} -- n{} [style=dashed, dir=both, constraint=false];",
                    i + 1,
                    t + 1
                );
            }
        }
        out.push_str("}\n");
        out
    }

    /// Pictorial one-line ASCII form: `*` painted, `o` unpainted, weight in
    /// brackets, bonds listed after the nodes.
    pub fn render_ascii(&self) -> String {
        let d = &self.diagram;
        let nodes: Vec<String> = (0..self.rank())
            .map(|i| {
                let mark = if self.is_painted(i) { '*' } else { 'o' };
                format!("{}{mark}[{}]", i + 1, self.weights[i])
            })
            .collect();
        let bonds: Vec<String> = d
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let b = d.bond(i, j).unwrap();
                let sym = match (b.multiplicity, b.long) {
                    (1, _) => "-".to_string(),
                    (2, Some(l)) if l == i => "=>".to_string(),
                    (2, _) => "<=".to_string(),
                    (_, Some(l)) if l == i => "≡>".to_string(),
                    _ => "<≡".to_string(),
                };
                format!("{}{sym}{}", i + 1, j + 1)
            })
            .collect();
        let orbits: Vec<String> = (0..self.rank())
            .filter(|&i| i < self.theta.apply(i))
            .map(|i| format!("{}<->{}", i + 1, self.theta.apply(i) + 1))
            .collect();
        let mut out = format!("{}: {}", self.simple_type(), nodes.join(" "));
        if !bonds.is_empty() {
            let _ = write!(out, " | {}", bonds.join(" "));
        }
        if !orbits.is_empty() {
            let _ = write!(out, " | theta {}", orbits.join(" "));
        }
        out
    }

    /// `<TYPE> theta=<images> J=<list> w=<list>`, 1-based, `id` for the identity.
    pub fn render_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeightedVoganDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = usize>| {
            it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        let theta = if self.theta.is_identity() {
            "id".to_string()
        } else {
            join(&mut self.theta.image().iter().map(|t| t + 1))
        };
        write!(
            f,
            "{} theta={} J={} w={}",
            self.simple_type(),
            theta,
            join(&mut self.painted.iter().map(|p| p + 1)),
            join(&mut self.weights.iter().map(|&w| w as usize))
        )
    }
}

/// Parses the one-line text form; semantic checks are delegated to [`validate`].
pub fn parse(text: &str) -> Result<WeightedVoganDiagram> {
    validate(&parse_raw(text)?)
}

impl FromStr for WeightedVoganDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn int_list(pos: usize, body: &str) -> Result<Vec<i64>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for item in body.split(',') {
        let v = item
            .parse::<i64>()
            .map_err(|_| syntax(pos + offset, format!("expected an integer, found `{item}`")))?;
        out.push(v);
        offset += item.len() + 1;
    }
    Ok(out)
}

fn node_list(pos: usize, body: &str, n: usize, field: &str) -> Result<Vec<usize>> {
    let values = int_list(pos, body)?;
    let mut out = Vec::with_capacity(values.len());
    let mut offset = 0;
    for (k, v) in values.iter().enumerate() {
        if *v < 1 || *v as usize > n {
            return Err(syntax(pos + offset, format!("{field} entry {v} is not a node in 1..={n}")));
        }
        out.push(*v as usize - 1);
        offset += body.split(',').nth(k).map_or(0, |s| s.len() + 1);
    }
    Ok(out)
}

pub fn parse_raw(text: &str) -> Result<RawDiagram> {
    let toks = tokens(text);
    let Some(&(tpos, tstr)) = toks.first() else {
        return Err(syntax(0, "empty input"));
    };
    let ty: SimpleType = tstr.parse().map_err(|e| match e {
        Error::Syntax { position, message } => syntax(tpos + position, message),
        other => other,
    })?;
    let n = ty.rank();

    let expected = ["theta=", "J=", "w="];
    if toks.len() != 4 {
        let pos = toks.get(4).map_or(text.len(), |t| t.0);
        return Err(syntax(
            pos,
            format!("expected `<TYPE> theta=<images> J=<list> w=<list>`, found {} fields", toks.len()),
        ));
    }
    let mut bodies = [(0usize, ""); 3];
    for (k, key) in expected.iter().enumerate() {
        let (pos, tok) = toks[k + 1];
        let body = tok
            .strip_prefix(key)
            .ok_or_else(|| syntax(pos, format!("expected `{key}...`, found `{tok}`")))?;
        bodies[k] = (pos + key.len(), body);
    }

    let (theta_pos, theta_body) = bodies[0];
    let theta = if theta_body == "id" {
        (0..n).collect()
    } else if theta_body.is_empty() {
        return Err(syntax(theta_pos, "expected `id` or an image list"));
    } else {
        node_list(theta_pos, theta_body, n, "theta")?
    };
    let painted = node_list(bodies[1].0, bodies[1].1, n, "J")?;
    let (wpos, wbody) = bodies[2];
    if wbody.is_empty() {
        return Err(syntax(wpos, "expected a weight list"));
    }
    let weights = int_list(wpos, wbody)?;
    Ok(RawDiagram { ty, theta, painted, weights })
}

pub fn render_text(d: &WeightedVoganDiagram) -> String {
    d.render_text()
}

/// JSON wire form, 1-based, painted set sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub theta: Vec<usize>,
    pub painted: Vec<usize>,
    pub weights: Vec<i64>,
}

impl From<&WeightedVoganDiagram> for DiagramJson {
    fn from(d: &WeightedVoganDiagram) -> Self {
        DiagramJson {
            ty: d.simple_type().to_string(),
            theta: d.theta.image().iter().map(|t| t + 1).collect(),
            painted: d.painted.iter().map(|p| p + 1).collect(),
            weights: d.weights.iter().map(|&w| w as i64).collect(),
        }
    }
}

impl TryFrom<DiagramJson> for WeightedVoganDiagram {
    type Error = Error;

    fn try_from(json: DiagramJson) -> Result<Self> {
        let ty: SimpleType = json.ty.parse()?;
        let n = ty.rank();
        let mut v = Vec::new();
        for &t in json.theta.iter().chain(&json.painted) {
            if t == 0 || t > n {
                v.push(Violation::NodeOutOfRange { field: "theta/painted", node: t });
            }
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        validate(&RawDiagram {
            ty,
            theta: json.theta.iter().map(|t| t - 1).collect(),
            painted: json.painted.iter().map(|p| p - 1).collect(),
            weights: json.weights,
        })
    }
}

impl Serialize for WeightedVoganDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedVoganDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = DiagramJson::deserialize(d)?;
        json.try_into().map_err(serde::de::Error::custom)
    }
}

/// `(D, ω)`: forgets θ and the painted set.
pub fn underlying_weighted_dynkin(d: &WeightedVoganDiagram) -> (DynkinDiagram, Vec<u8>) {
    (d.diagram.clone(), d.weights.clone())
}

/// `(D, θ, J)`: forgets the weights.
pub fn underlying_vogan(d: &WeightedVoganDiagram) -> (DynkinDiagram, Involution, BTreeSet<usize>) {
    (d.diagram.clone(), d.theta.clone(), d.painted.clone())
}

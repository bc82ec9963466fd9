//! Explicit finite crystal graphs: canonical element ordering, generation by
//! breadth-first closure, connected components and DOT/JSON interchange.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cartan::WeightVector;
use crate::crystal::{Crystal, ExtInt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalElement {
    pub key: String,
    pub wt: WeightVector,
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
}

/// An i-colored f~ edge between element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub i: usize,
}

/// A finite explicit crystal. Elements are stored sorted by canonical key, so
/// graphs are reproducible across runs regardless of generation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    rank: usize,
    elements: Vec<CrystalElement>,
    edges: Vec<Edge>,
    f_map: BTreeMap<(usize, usize), usize>,
    e_map: BTreeMap<(usize, usize), usize>,
    /// Set when generation hit its truncation bound.
    pub truncated: bool,
    /// Height bound used at generation time, when applicable.
    pub gen_depth: Option<i64>,
}

pub struct CrystalGraphBuilder {
    rank: usize,
    elements: Vec<CrystalElement>,
    index: BTreeMap<String, usize>,
    edges: Vec<(String, String, usize)>,
    truncated: bool,
    gen_depth: Option<i64>,
}

impl CrystalGraphBuilder {
    pub fn new(rank: usize) -> Self {
        CrystalGraphBuilder {
            rank,
            elements: Vec::new(),
            index: BTreeMap::new(),
            edges: Vec::new(),
            truncated: false,
            gen_depth: None,
        }
    }

    /// Insert an element; returns false if the key was already present.
    pub fn add_element(
        &mut self,
        key: String,
        wt: WeightVector,
        eps: Vec<ExtInt>,
        phi: Vec<ExtInt>,
    ) -> bool {
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key.clone(), self.elements.len());
        self.elements.push(CrystalElement { key, wt, eps, phi });
        true
    }

    pub fn contains(&self, key: &str) -> bool {
        self.index.contains_key(key)
    }

    pub fn add_f_edge(&mut self, from: String, to: String, i: usize) {
        self.edges.push((from, to, i));
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn set_gen_depth(&mut self, depth: i64) {
        self.gen_depth = Some(depth);
    }

    pub fn finish(self) -> Result<CrystalGraph> {
        let mut elements = self.elements;
        elements.sort_by(|a, b| a.key.cmp(&b.key));
        let index: BTreeMap<String, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for (from, to, i) in self.edges {
            let &f = index
                .get(&from)
                .ok_or_else(|| Error::Parse(format!("edge references unknown key '{from}'")))?;
            let &t = index
                .get(&to)
                .ok_or_else(|| Error::Parse(format!("edge references unknown key '{to}'")))?;
            edges.push(Edge { from: f, to: t, i });
        }
        edges.sort();
        edges.dedup();
        let mut f_map = BTreeMap::new();
        let mut e_map = BTreeMap::new();
        for edge in &edges {
            if f_map.insert((edge.from, edge.i), edge.to).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate f-edge of color {} out of '{}'",
                    edge.i, elements[edge.from].key
                )));
            }
            if e_map.insert((edge.to, edge.i), edge.from).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate f-edge of color {} into '{}'",
                    edge.i, elements[edge.to].key
                )));
            }
        }
        Ok(CrystalGraph {
            rank: self.rank,
            elements,
            edges,
            f_map,
            e_map,
            truncated: self.truncated,
            gen_depth: self.gen_depth,
        })
    }
}

impl CrystalGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CrystalElement] {
        &self.elements
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn element(&self, idx: usize) -> &CrystalElement {
        &self.elements[idx]
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.key.as_str().cmp(key))
            .ok()
    }

    pub fn f_edge(&self, idx: usize, i: usize) -> Option<usize> {
        self.f_map.get(&(idx, i)).copied()
    }

    pub fn e_edge(&self, idx: usize, i: usize) -> Option<usize> {
        self.e_map.get(&(idx, i)).copied()
    }

    /// Length of the f~_i string below the element (number of f-steps until
    /// the operator vanishes).
    pub fn f_string_length(&self, idx: usize, i: usize) -> usize {
        let mut cur = idx;
        let mut len = 0;
        while let Some(next) = self.f_edge(cur, i) {
            cur = next;
            len += 1;
            assert!(len <= self.elements.len(), "cycle in f-edges");
        }
        len
    }

    pub fn e_string_length(&self, idx: usize, i: usize) -> usize {
        let mut cur = idx;
        let mut len = 0;
        while let Some(next) = self.e_edge(cur, i) {
            cur = next;
            len += 1;
            assert!(len <= self.elements.len(), "cycle in e-edges");
        }
        len
    }

    /// Maximum |ht(wt(b) - from)| over elements.
    pub fn max_ht_distance(&self, from: &WeightVector) -> i64 {
        self.elements
            .iter()
            .map(|e| (e.wt.sub(from)).ht().abs())
            .max()
            .unwrap_or(0)
    }

    /// Indices of elements with the given weight.
    pub fn elements_of_weight(&self, wt: &WeightVector) -> Vec<usize> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, e)| &e.wt == wt)
            .map(|(i, _)| i)
            .collect()
    }

    /// Multiset census nu -> count, where wt(b) = lam + nu.
    pub fn weight_census(&self, lam: &WeightVector) -> BTreeMap<Vec<i64>, u64> {
        let mut census = BTreeMap::new();
        for e in &self.elements {
            let diff = e.wt.sub(lam);
            *census.entry(diff.nu.clone()).or_insert(0) += 1;
        }
        census
    }

    /// Partition by the undirected closure of all colored edges. Components
    /// are ordered by (size, minimal canonical key).
    pub fn connected_components(&self) -> Vec<CrystalGraph> {
        let n = self.elements.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            comp[start] = count;
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        let mut graphs = Vec::new();
        for c in 0..count {
            let mut builder = CrystalGraphBuilder::new(self.rank);
            for (idx, e) in self.elements.iter().enumerate() {
                if comp[idx] == c {
                    builder.add_element(e.key.clone(), e.wt.clone(), e.eps.clone(), e.phi.clone());
                }
            }
            for e in &self.edges {
                if comp[e.from] == c {
                    builder.add_f_edge(
                        self.elements[e.from].key.clone(),
                        self.elements[e.to].key.clone(),
                        e.i,
                    );
                }
            }
            graphs.push(builder.finish().expect("component of a valid graph"));
        }
        graphs.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.elements[0].key.cmp(&b.elements[0].key))
        });
        graphs
    }

    /// DOT rendering: one color per index i, edge label i, node label = wt.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta",
        ];
        let mut out = String::from("digraph crystal {\n");
        for (idx, e) in self.elements.iter().enumerate() {
            out.push_str(&format!(
                "  n{} [label=\"{}\"];\n",
                idx,
                dot_escape(&format!("{}", e.wt))
            ));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\", color=\"{}\"];\n",
                e.from,
                e.to,
                e.i,
                PALETTE[e.i % PALETTE.len()]
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "truncated": self.truncated,
            "gen_depth": self.gen_depth,
            "elements": self.elements.iter().map(|e| serde_json::json!({
                "key": e.key,
                "wt": {"lam": e.wt.lam, "nu": e.wt.nu},
                "eps": e.eps,
                "phi": e.phi,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": self.elements[e.from].key,
                "to": self.elements[e.to].key,
                "i": e.i,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<CrystalGraph> {
        let rank = v["rank"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing rank".into()))? as usize;
        let mut builder = CrystalGraphBuilder::new(rank);
        let elements = v["elements"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing elements".into()))?;
        for e in elements {
            let key = e["key"]
                .as_str()
                .ok_or_else(|| Error::Parse("missing key".into()))?
                .to_string();
            let lam: Vec<i64> = serde_json::from_value(e["wt"]["lam"].clone())?;
            let nu: Vec<i64> = serde_json::from_value(e["wt"]["nu"].clone())?;
            let eps: Vec<ExtInt> = serde_json::from_value(e["eps"].clone())?;
            let phi: Vec<ExtInt> = serde_json::from_value(e["phi"].clone())?;
            if !builder.add_element(key.clone(), WeightVector::new(lam, nu), eps, phi) {
                return Err(Error::Parse(format!("duplicate element key '{key}'")));
            }
        }
        let edges = v["edges"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing edges".into()))?;
        for e in edges {
            let from = e["from"]
                .as_str()
                .ok_or_else(|| Error::Parse("bad edge".into()))?;
            let to = e["to"]
                .as_str()
                .ok_or_else(|| Error::Parse("bad edge".into()))?;
            let i = e["i"].as_u64().ok_or_else(|| Error::Parse("bad edge".into()))? as usize;
            builder.add_f_edge(from.to_string(), to.to_string(), i);
        }
        if v["truncated"].as_bool().unwrap_or(false) {
            builder.mark_truncated();
        }
        if let Some(depth) = v["gen_depth"].as_i64() {
            builder.set_gen_depth(depth);
        }
        builder.finish()
    }
}

/// Breadth-first closure of `seeds` under guarded f~ and e~ application,
/// restricted to elements satisfying `keep`. Guards decide whether an
/// operator is applied at all; `keep` rejections mark the graph truncated.
pub fn generate_graph<C: Crystal>(
    crystal: &C,
    seeds: Vec<C::Elt>,
    keep: impl Fn(&C, &C::Elt) -> bool,
    guard_f: impl Fn(&C, &C::Elt, usize) -> bool,
    guard_e: impl Fn(&C, &C::Elt, usize) -> bool,
) -> Result<CrystalGraph> {
    let rank = crystal.rank();
    let mut builder = CrystalGraphBuilder::new(rank);
    let mut queue: VecDeque<C::Elt> = VecDeque::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for seed in seeds {
        let key = crystal.key(&seed);
        if seen.insert(key.clone()) {
            add_elt(crystal, &mut builder, &seed);
            queue.push_back(seed);
        }
    }
    while let Some(b) = queue.pop_front() {
        let bkey = crystal.key(&b);
        for i in 0..rank {
            if guard_f(crystal, &b, i) {
                if let Some(next) = crystal.f(&b, i) {
                    if keep(crystal, &next) {
                        let nkey = crystal.key(&next);
                        if seen.insert(nkey.clone()) {
                            add_elt(crystal, &mut builder, &next);
                            queue.push_back(next);
                        }
                        builder.add_f_edge(bkey.clone(), nkey, i);
                    } else {
                        builder.mark_truncated();
                    }
                }
            }
            if guard_e(crystal, &b, i) {
                if let Some(prev) = crystal.e(&b, i) {
                    if keep(crystal, &prev) {
                        let pkey = crystal.key(&prev);
                        if seen.insert(pkey.clone()) {
                            add_elt(crystal, &mut builder, &prev);
                            queue.push_back(prev);
                        }
                        builder.add_f_edge(pkey, bkey.clone(), i);
                    } else {
                        builder.mark_truncated();
                    }
                }
            }
        }
    }
    builder.finish()
}

fn add_elt<C: Crystal>(crystal: &C, builder: &mut CrystalGraphBuilder, b: &C::Elt) {
    let eps = (0..crystal.rank()).map(|i| crystal.eps(b, i)).collect();
    let phi = (0..crystal.rank()).map(|i| crystal.phi(b, i)).collect();
    builder.add_element(crystal.key(b), crystal.wt(b), eps, phi);
}

/// A crystal backed by an explicit graph; elements are graph indices.
#[derive(Debug, Clone)]
pub struct FiniteCrystal {
    graph: CrystalGraph,
}

impl FiniteCrystal {
    pub fn new(graph: CrystalGraph) -> Self {
        FiniteCrystal { graph }
    }

    pub fn graph(&self) -> &CrystalGraph {
        &self.graph
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        0..self.graph.len()
    }
}

impl Crystal for FiniteCrystal {
    type Elt = usize;

    fn rank(&self) -> usize {
        self.graph.rank()
    }
    fn wt(&self, b: &usize) -> WeightVector {
        self.graph.element(*b).wt.clone()
    }
    fn eps(&self, b: &usize, i: usize) -> ExtInt {
        self.graph.element(*b).eps[i]
    }
    fn phi(&self, b: &usize, i: usize) -> ExtInt {
        self.graph.element(*b).phi[i]
    }
    fn f(&self, b: &usize, i: usize) -> Option<usize> {
        self.graph.f_edge(*b, i)
    }
    fn e(&self, b: &usize, i: usize) -> Option<usize> {
        self.graph.e_edge(*b, i)
    }
    fn key(&self, b: &usize) -> String {
        self.graph.element(*b).key.clone()
    }
}

/// Check whether two graphs are isomorphic as colored crystals by canonical
/// breadth-first pairing from the given starting elements.
pub fn canonically_isomorphic(
    g1: &CrystalGraph,
    top1: usize,
    g2: &CrystalGraph,
    top2: usize,
) -> bool {
    if g1.len() != g2.len() || g1.rank() != g2.rank() {
        return false;
    }
    let mut pair: BTreeMap<usize, usize> = BTreeMap::new();
    let mut hit: BTreeSet<usize> = BTreeSet::new();
    pair.insert(top1, top2);
    hit.insert(top2);
    let mut queue = VecDeque::from([(top1, top2)]);
    while let Some((a, b)) = queue.pop_front() {
        let ea = g1.element(a);
        let eb = g2.element(b);
        if ea.wt != eb.wt || ea.eps != eb.eps || ea.phi != eb.phi {
            return false;
        }
        for i in 0..g1.rank() {
            for (na, nb) in [
                (g1.f_edge(a, i), g2.f_edge(b, i)),
                (g1.e_edge(a, i), g2.e_edge(b, i)),
            ] {
                match (na, nb) {
                    (None, None) => {}
                    (Some(x), Some(y)) => match pair.get(&x) {
                        Some(&prev) => {
                            if prev != y {
                                return false;
                            }
                        }
                        None => {
                            if !hit.insert(y) {
                                return false;
                            }
                            pair.insert(x, y);
                            queue.push_back((x, y));
                        }
                    },
                    _ => return false,
                }
            }
        }
    }
    pair.len() == g1.len()
}

fn dot_escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

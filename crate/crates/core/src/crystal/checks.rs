//! Verifiers: the crystal axioms on explicit graphs, morphism/strictness
//! checking, and the highest-weight characterization of a finite crystal
//! against a truncation of B(infinity) (x) T_lambda.

use std::collections::{BTreeMap, VecDeque};

use crate::cartan::{CartanDatum, WeightVector};
use crate::crystal::{CrystalGraph, ExtInt};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// phi_i(b) = eps_i(b) + <h_i, wt(b)>, with -inf on both sides together.
    C1,
    /// Along e~: wt + alpha_i, eps - 1, phi + 1.
    C2,
    /// Along f~: wt - alpha_i, eps + 1, phi - 1.
    C2Prime,
    /// f~ and e~ are mutually inverse partial maps.
    C3,
    /// phi_i(b) = -inf forbids any i-edge in or out.
    C4,
    /// Seminormal completeness: phi_i(b) > 0 requires an outgoing i-edge and
    /// eps_i(b) > 0 an incoming one. Holds for every crystal this crate
    /// constructs whole; a deleted edge trips it.
    StringCompleteness,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C2Prime => "C2'",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::StringCompleteness => "string-completeness",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct AxiomViolation {
    pub element: String,
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify C1-C4 (plus string completeness) at every element and edge.
/// Violations are data, not errors.
pub fn check_axioms(g: &CrystalGraph, cartan: &CartanDatum) -> Result<AxiomReport> {
    let n = g.rank();
    if cartan.rank() != n {
        return Err(Error::RankMismatch {
            expected: cartan.rank(),
            got: n,
        });
    }
    let mut report = AxiomReport::default();
    let mut violate = |element: &str, axiom: Axiom, detail: String| {
        report.violations.push(AxiomViolation {
            element: element.to_string(),
            axiom,
            detail,
        });
    };

    for (idx, e) in g.elements().iter().enumerate() {
        for i in 0..n {
            let eps = e.eps[i];
            let phi = e.phi[i];
            // C1
            match (eps, phi) {
                (ExtInt::NegInf, ExtInt::NegInf) => {}
                (ExtInt::Int(a), ExtInt::Int(b)) => {
                    let p = cartan.pairing(i, &e.wt)?;
                    if b != a + p {
                        violate(
                            &e.key,
                            Axiom::C1,
                            format!("phi_{i} = {b} but eps_{i} + <h_{i}, wt> = {}", a + p),
                        );
                    }
                }
                _ => violate(
                    &e.key,
                    Axiom::C1,
                    format!("eps_{i} = {eps} and phi_{i} = {phi} must be -inf together"),
                ),
            }
            // C4
            if phi.is_neg_inf() && (g.f_edge(idx, i).is_some() || g.e_edge(idx, i).is_some()) {
                violate(
                    &e.key,
                    Axiom::C4,
                    format!("phi_{i} = -inf but an {i}-edge touches the element"),
                );
            }
            // String completeness
            if let ExtInt::Int(p) = phi {
                if p > 0 && g.f_edge(idx, i).is_none() {
                    violate(
                        &e.key,
                        Axiom::StringCompleteness,
                        format!("phi_{i} = {p} > 0 but no outgoing {i}-edge"),
                    );
                }
            }
            if let ExtInt::Int(c) = eps {
                if c > 0 && g.e_edge(idx, i).is_none() {
                    violate(
                        &e.key,
                        Axiom::StringCompleteness,
                        format!("eps_{i} = {c} > 0 but no incoming {i}-edge"),
                    );
                }
            }
        }
    }

    for edge in g.edges() {
        let src = g.element(edge.from);
        let dst = g.element(edge.to);
        let i = edge.i;
        // C2' in the f~ direction.
        let expected_wt = src.wt.sub(&WeightVector::simple_root(n, i));
        if dst.wt != expected_wt {
            violate(
                &src.key,
                Axiom::C2Prime,
                format!("wt(f~_{i} b) = {} but expected {}", dst.wt, expected_wt),
            );
        }
        if dst.eps[i] != src.eps[i].plus(1) || dst.phi[i] != src.phi[i].plus(-1) {
            violate(
                &src.key,
                Axiom::C2Prime,
                format!(
                    "along {i}-edge eps {} -> {}, phi {} -> {}",
                    src.eps[i], dst.eps[i], src.phi[i], dst.phi[i]
                ),
            );
        }
        // C2 in the e~ direction (the same edge read backwards).
        let back_wt = dst.wt.add(&WeightVector::simple_root(n, i));
        if src.wt != back_wt
            || src.eps[i] != dst.eps[i].plus(-1)
            || src.phi[i] != dst.phi[i].plus(1)
        {
            violate(
                &dst.key,
                Axiom::C2,
                format!("e~_{i} inverse data inconsistent with edge into {}", dst.key),
            );
        }
        // C3: f_edge and e_edge mutually inverse.
        if g.e_edge(edge.to, i) != Some(edge.from) || g.f_edge(edge.from, i) != Some(edge.to) {
            violate(
                &src.key,
                Axiom::C3,
                format!("{i}-edge {} -> {} not mutually inverse", src.key, dst.key),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismRule {
    /// (2.2.3)-style preservation of wt, eps, phi on the domain.
    Preservation,
    /// Conditional commutation with e~.
    CommuteE,
    /// Conditional commutation with f~.
    CommuteF,
    /// Strict commutation, including the zero cases.
    Strict,
}

#[derive(Debug, Clone)]
pub struct MorphismViolation {
    pub element: String,
    pub rule: MorphismRule,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct MorphismReport {
    pub violations: Vec<MorphismViolation>,
}

impl MorphismReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify that `psi` (partial map by canonical key; `None` is the formal
/// zero) is a crystal morphism from g1 to g2, and a strict one when `strict`
/// is set. Keys of g1 absent from `psi` are outside the checked domain.
pub fn check_morphism(
    g1: &CrystalGraph,
    g2: &CrystalGraph,
    psi: &BTreeMap<String, Option<String>>,
    strict: bool,
) -> Result<MorphismReport> {
    let mut report = MorphismReport::default();
    let mut resolved: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    for (k, v) in psi {
        let idx = g1
            .index_of(k)
            .ok_or_else(|| Error::Parse(format!("psi domain key '{k}' not in source graph")))?;
        let target = match v {
            None => None,
            Some(t) => Some(g2.index_of(t).ok_or_else(|| {
                Error::Parse(format!("psi target key '{t}' not in target graph"))
            })?),
        };
        resolved.insert(idx, target);
    }

    for (&idx, target) in &resolved {
        let src = g1.element(idx);
        let Some(tidx) = target else {
            // psi(b) = 0; strictness demands psi(f~_i b) = 0 as well (zero is
            // absorbing under f~). The e~-neighbour may map to a nonzero
            // element: that is exactly the boundary of the nonzero locus.
            if strict {
                for i in 0..g1.rank() {
                    if let Some(next) = g1.f_edge(idx, i) {
                        if let Some(Some(_)) = resolved.get(&next) {
                            report.violations.push(MorphismViolation {
                                element: src.key.clone(),
                                rule: MorphismRule::Strict,
                                detail: format!(
                                    "psi(b) = 0 but psi(f~_{i} b) is nonzero"
                                ),
                            });
                        }
                    }
                }
            }
            continue;
        };
        let dst = g2.element(*tidx);
        if src.wt != dst.wt || src.eps != dst.eps || src.phi != dst.phi {
            report.violations.push(MorphismViolation {
                element: src.key.clone(),
                rule: MorphismRule::Preservation,
                detail: format!("structure of '{}' differs from image '{}'", src.key, dst.key),
            });
        }
        for i in 0..g1.rank() {
            // f~ side.
            let img_f = g2.f_edge(*tidx, i);
            match g1.f_edge(idx, i) {
                Some(next) => match resolved.get(&next) {
                    Some(Some(mapped)) => {
                        if img_f != Some(*mapped) {
                            report.violations.push(MorphismViolation {
                                element: src.key.clone(),
                                rule: MorphismRule::CommuteF,
                                detail: format!("psi(f~_{i} b) != f~_{i} psi(b)"),
                            });
                        }
                    }
                    Some(None) => {
                        if strict && img_f.is_some() {
                            report.violations.push(MorphismViolation {
                                element: src.key.clone(),
                                rule: MorphismRule::Strict,
                                detail: format!("psi(f~_{i} b) = 0 but f~_{i} psi(b) != 0"),
                            });
                        }
                    }
                    None => {} // outside checked domain
                },
                None => {
                    if strict && img_f.is_some() {
                        report.violations.push(MorphismViolation {
                            element: src.key.clone(),
                            rule: MorphismRule::Strict,
                            detail: format!("f~_{i} b = 0 but f~_{i} psi(b) != 0"),
                        });
                    }
                }
            }
            // e~ side.
            let img_e = g2.e_edge(*tidx, i);
            match g1.e_edge(idx, i) {
                Some(prev) => match resolved.get(&prev) {
                    Some(Some(mapped)) => {
                        if img_e != Some(*mapped) {
                            report.violations.push(MorphismViolation {
                                element: src.key.clone(),
                                rule: MorphismRule::CommuteE,
                                detail: format!("psi(e~_{i} b) != e~_{i} psi(b)"),
                            });
                        }
                    }
                    Some(None) => {
                        if strict && img_e.is_some() {
                            report.violations.push(MorphismViolation {
                                element: src.key.clone(),
                                rule: MorphismRule::Strict,
                                detail: format!("psi(e~_{i} b) = 0 but e~_{i} psi(b) != 0"),
                            });
                        }
                    }
                    None => {}
                },
                None => {
                    if strict && img_e.is_some() {
                        report.violations.push(MorphismViolation {
                            element: src.key.clone(),
                            rule: MorphismRule::Strict,
                            detail: format!("e~_{i} b = 0 but e~_{i} psi(b) != 0"),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct CharacterizationReport {
    /// Condition (1): unique element of weight lambda.
    pub top_uniqueness: Vec<String>,
    /// Conditions (2)-(3): morphism well-definedness and strictness witnesses.
    pub morphism: Vec<String>,
    /// Condition (2): elements of the graph not in the image.
    pub surjectivity: Vec<String>,
    /// Condition (3): distinct domain elements with the same nonzero image.
    pub injectivity: Vec<String>,
    /// Condition (4): eps/phi vs measured string lengths.
    pub string_lengths: Vec<String>,
}

impl CharacterizationReport {
    pub fn pass(&self) -> bool {
        self.top_uniqueness.is_empty()
            && self.morphism.is_empty()
            && self.surjectivity.is_empty()
            && self.injectivity.is_empty()
            && self.string_lengths.is_empty()
    }

    pub fn witnesses(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (label, list) in [
            ("condition-1", &self.top_uniqueness),
            ("condition-2/3 morphism", &self.morphism),
            ("condition-2 surjectivity", &self.surjectivity),
            ("condition-3 injectivity", &self.injectivity),
            ("condition-4 string-lengths", &self.string_lengths),
        ] {
            for w in list {
                out.push(format!("[{label}] {w}"));
            }
        }
        out
    }
}

/// Check the highest-weight characterization of the finite crystal `g`:
/// a unique top of weight lambda, a well-defined strict surjection from a
/// truncation of B(infinity) (x) T_lambda sending `domain_top` to `b_top`,
/// injective on the nonzero locus, and eps/phi equal to measured string
/// lengths.
///
/// `domain` must be the truncated B(infinity) (x) T_lambda graph generated
/// down to at least the ht-depth of `g` (deeper by one step to also witness
/// the zero cases); `domain_top` is the key of b_0 (x) t_lambda.
pub fn verify_highest_weight_characterization(
    cartan: &CartanDatum,
    g: &CrystalGraph,
    b_top: &str,
    lam: &WeightVector,
    domain: &CrystalGraph,
    domain_top: &str,
) -> Result<CharacterizationReport> {
    if g.rank() != cartan.rank() || domain.rank() != cartan.rank() || lam.rank() != cartan.rank() {
        return Err(Error::RankMismatch {
            expected: cartan.rank(),
            got: g.rank(),
        });
    }
    let g_depth = g.max_ht_distance(lam);
    let d_depth = domain.max_ht_distance(lam);
    if d_depth < g_depth {
        return Err(Error::DepthTooSmall {
            have: d_depth,
            need: g_depth,
        });
    }
    let top_idx = g
        .index_of(b_top)
        .ok_or_else(|| Error::Parse(format!("top element '{b_top}' not in graph")))?;
    let dom_top_idx = domain
        .index_of(domain_top)
        .ok_or_else(|| Error::Parse(format!("domain top '{domain_top}' not found")))?;

    let mut report = CharacterizationReport::default();

    // Condition (1): weight census at lambda.
    let tops = g.elements_of_weight(lam);
    if tops != vec![top_idx] {
        report.top_uniqueness.push(format!(
            "elements of weight lambda: {:?}, expected exactly '{}'",
            tops.iter().map(|&i| &g.element(i).key).collect::<Vec<_>>(),
            b_top
        ));
    }

    // Condition (4): eps/phi against measured string lengths.
    for (idx, e) in g.elements().iter().enumerate() {
        for i in 0..g.rank() {
            let f_len = g.f_string_length(idx, i) as i64;
            let e_len = g.e_string_length(idx, i) as i64;
            if e.phi[i] != ExtInt::Int(f_len) {
                report.string_lengths.push(format!(
                    "'{}': phi_{i} = {} but f~-string length is {f_len}",
                    e.key, e.phi[i]
                ));
            }
            if e.eps[i] != ExtInt::Int(e_len) {
                report.string_lengths.push(format!(
                    "'{}': eps_{i} = {} but e~-string length is {e_len}",
                    e.key, e.eps[i]
                ));
            }
        }
    }

    // Conditions (2)-(3): propagate Phi(b_0 (x) t_lambda) = b_top along
    // f~-words breadth-first, then verify strictness, surjectivity and
    // injectivity of the resulting partial map.
    let mut phi_map: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    phi_map.insert(dom_top_idx, Some(top_idx));
    let mut queue = VecDeque::from([dom_top_idx]);
    let mut visited = vec![false; domain.len()];
    visited[dom_top_idx] = true;
    while let Some(x) = queue.pop_front() {
        for i in 0..domain.rank() {
            let Some(x_next) = domain.f_edge(x, i) else {
                continue;
            };
            let target = match phi_map.get(&x).copied().flatten() {
                Some(y) => g.f_edge(y, i),
                None => None,
            };
            match phi_map.get(&x_next) {
                Some(prev) => {
                    if *prev != target {
                        report.morphism.push(format!(
                            "Phi not well-defined at '{}': conflicting images via color {i}",
                            domain.element(x_next).key
                        ));
                    }
                }
                None => {
                    phi_map.insert(x_next, target);
                }
            }
            if !visited[x_next] {
                visited[x_next] = true;
                queue.push_back(x_next);
            }
        }
    }

    // Strictness via the generic morphism checker.
    let psi: BTreeMap<String, Option<String>> = phi_map
        .iter()
        .map(|(&x, y)| {
            (
                domain.element(x).key.clone(),
                y.map(|idx| g.element(idx).key.clone()),
            )
        })
        .collect();
    let morphism_report = check_morphism(domain, g, &psi, true)?;
    for v in morphism_report.violations {
        report
            .morphism
            .push(format!("'{}' [{:?}]: {}", v.element, v.rule, v.detail));
    }

    // Surjectivity: every graph element must be hit.
    let mut hit = vec![false; g.len()];
    let mut preimages: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&x, y) in &phi_map {
        if let Some(yidx) = y {
            hit[*yidx] = true;
            preimages.entry(*yidx).or_default().push(x);
        }
    }
    for (idx, was_hit) in hit.iter().enumerate() {
        if !was_hit {
            report.surjectivity.push(format!(
                "'{}' not in the image of Phi",
                g.element(idx).key
            ));
        }
    }
    // Injectivity on the nonzero locus.
    for (yidx, xs) in preimages {
        if xs.len() > 1 {
            report.injectivity.push(format!(
                "'{}' has {} preimages: {:?}",
                g.element(yidx).key,
                xs.len(),
                xs.iter()
                    .map(|&x| &domain.element(x).key)
                    .collect::<Vec<_>>()
            ));
        }
    }

    Ok(report)
}

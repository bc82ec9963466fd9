//! End-to-end acceptance suite. Each criterion prints a single PASS/FAIL
//! line; the process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quivercrystal::binfinity::{
    binf_tensor_t, generate_binf_tensor_graph, generate_blambda_default, tensor_key, BInfinity,
    IotaSequence, StringElement,
};
use quivercrystal::crystal::{
    check_axioms, generate_graph, verify_highest_weight_characterization, BasicCrystal, BasicElt,
    Crystal, CrystalGraph, CrystalGraphBuilder, ElementaryCrystal, ExtInt, FiniteCrystal,
    TLambdaCrystal, TensorProduct,
};
use quivercrystal::quiver::{
    dimension_identity, extend_i, extend_kernel_dim, free_action_checks, sample_lagrangian_point,
    shrink_i, symplectic_form, ADHMDatum, DoubledQuiver, GradedDims, GroupElement,
};
use quivercrystal::{CartanDatum, WeightVector};

type CResult = Result<(), String>;

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> Ctx<T> for Result<T, E> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn require(cond: bool, msg: String) -> CResult {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

/// Highest-weight test matrix: type, label, highest weight.
fn suite() -> Vec<(String, CartanDatum, WeightVector)> {
    let mut cases = Vec::new();
    let a1 = CartanDatum::preset("A1").unwrap();
    for k in 1..=10 {
        cases.push((
            format!("A1 lam=[{k}]"),
            a1.clone(),
            WeightVector::from_lam(vec![k]),
        ));
    }
    let a2 = CartanDatum::preset("A2").unwrap();
    cases.push((
        "A2 lam=[1,0]".into(),
        a2.clone(),
        WeightVector::from_lam(vec![1, 0]),
    ));
    cases.push((
        "A2 lam=[1,1]".into(),
        a2,
        WeightVector::from_lam(vec![1, 1]),
    ));
    cases.push((
        "A3 lam=[0,1,0]".into(),
        CartanDatum::preset("A3").unwrap(),
        WeightVector::from_lam(vec![0, 1, 0]),
    ));
    cases.push((
        "D4 lam=[1,0,0,0]".into(),
        CartanDatum::preset("D4").unwrap(),
        WeightVector::from_lam(vec![1, 0, 0, 0]),
    ));
    cases
}

fn gen_case(cartan: &CartanDatum, lam: &WeightVector) -> Result<CrystalGraph, String> {
    let g = generate_blambda_default(cartan, lam, 30).ctx("generation")?;
    require(!g.truncated, "graph unexpectedly truncated".into())?;
    Ok(g)
}

/// Rebuild a graph, optionally bumping eps_0 of one element or dropping one
/// edge, to produce deliberately broken inputs for the checkers.
fn rebuild(g: &CrystalGraph, bump_eps: Option<usize>, drop_edge: Option<usize>) -> CrystalGraph {
    let mut b = CrystalGraphBuilder::new(g.rank());
    for (idx, el) in g.elements().iter().enumerate() {
        let mut eps = el.eps.clone();
        if bump_eps == Some(idx) {
            eps[0] = match eps[0] {
                ExtInt::Int(n) => ExtInt::Int(n + 1),
                ExtInt::NegInf => ExtInt::Int(0),
            };
        }
        b.add_element(el.key.clone(), el.wt.clone(), eps, el.phi.clone());
    }
    for (eidx, e) in g.edges().iter().enumerate() {
        if drop_edge == Some(eidx) {
            continue;
        }
        b.add_f_edge(
            g.element(e.from).key.clone(),
            g.element(e.to).key.clone(),
            e.i,
        );
    }
    b.finish().expect("rebuild must be structurally valid")
}

/// Add a second, disconnected element of weight lam to a graph.
fn add_phantom_top(g: &CrystalGraph, lam: &WeightVector) -> CrystalGraph {
    let mut b = CrystalGraphBuilder::new(g.rank());
    for el in g.elements() {
        b.add_element(el.key.clone(), el.wt.clone(), el.eps.clone(), el.phi.clone());
    }
    let zeros = vec![ExtInt::Int(0); g.rank()];
    b.add_element("phantom".into(), lam.clone(), zeros.clone(), zeros);
    for e in g.edges() {
        b.add_f_edge(
            g.element(e.from).key.clone(),
            g.element(e.to).key.clone(),
            e.i,
        );
    }
    b.finish().expect("phantom rebuild must be structurally valid")
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Dimension of the irreducible module: product over positive roots of
/// <lam+rho, root> / <rho, root>, computed with exact integer arithmetic.
/// Independent of the character expansion used elsewhere.
fn weyl_dim(cartan: &CartanDatum, lam: &WeightVector) -> Result<u128, String> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for root in cartan.positive_roots().ctx("positive roots")? {
        let n: i64 = root
            .nu
            .iter()
            .zip(&lam.lam)
            .map(|(c, l)| c * (l + 1))
            .sum();
        let d: i64 = root.nu.iter().sum();
        num *= n as u128;
        den *= d as u128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    require(den == 1, format!("dimension product not integral: {num}/{den}"))?;
    Ok(num)
}

// Criterion 1: the axiom checker passes on the whole highest-weight matrix
// and flags both a perturbed structure function and a deleted edge.
fn criterion_axioms() -> CResult {
    for (name, cartan, lam) in suite() {
        let g = gen_case(&cartan, &lam)?;
        let report = check_axioms(&g, &cartan).ctx(&name)?;
        require(report.is_clean(), format!("{name}: axiom violations found"))?;
    }

    let cartan = CartanDatum::preset("A2").unwrap();
    let lam = WeightVector::from_lam(vec![1, 1]);
    let g = gen_case(&cartan, &lam)?;

    let bumped = rebuild(&g, Some(0), None);
    let report = check_axioms(&bumped, &cartan).ctx("bumped-eps graph")?;
    require(
        !report.is_clean(),
        "perturbing eps_0 of one element went undetected".into(),
    )?;

    let dropped = rebuild(&g, None, Some(0));
    let report = check_axioms(&dropped, &cartan).ctx("edge-dropped graph")?;
    require(
        !report.is_clean(),
        "deleting an edge went undetected".into(),
    )?;
    Ok(())
}

// Criterion 2: the weight census of every generated crystal equals the
// character table exactly, and the total size equals the Weyl dimension
// product (an independent oracle).
fn criterion_character() -> CResult {
    for (name, cartan, lam) in suite() {
        let g = gen_case(&cartan, &lam)?;
        let depth = g.max_ht_distance(&lam);
        let table = cartan.weyl_kac_character(&lam, depth).ctx(&name)?;
        let census = g.weight_census(&lam);
        let expected: BTreeMap<Vec<i64>, u64> = table.entries.iter().cloned().collect();
        require(
            census == expected,
            format!("{name}: weight census differs from character table"),
        )?;
        let dim = weyl_dim(&cartan, &lam)?;
        require(
            g.len() as u128 == dim,
            format!("{name}: |B(lam)| = {} but dimension product = {dim}", g.len()),
        )?;
    }

    // Spot checks with externally known dimensions.
    for (preset, lam, dim) in [
        ("A1", vec![4], 5u128),
        ("A2", vec![1, 1], 8),
        ("A3", vec![0, 1, 0], 6),
        ("D4", vec![1, 0, 0, 0], 8),
    ] {
        let cartan = CartanDatum::preset(preset).unwrap();
        let got = weyl_dim(&cartan, &WeightVector::from_lam(lam.clone()))?;
        require(
            got == dim,
            format!("{preset} lam={lam:?}: dimension {got}, expected {dim}"),
        )?;
    }
    Ok(())
}

// Criterion 3: the highest-weight characterization verifier accepts every
// generated crystal and rejects doctored graphs with the right witness kind.
fn criterion_characterization() -> CResult {
    for (name, cartan, lam) in suite() {
        let g = gen_case(&cartan, &lam)?;
        let depth = g.max_ht_distance(&lam);
        let iota = IotaSequence::default_cycle(cartan.rank());
        let domain = generate_binf_tensor_graph(&cartan, &iota, &lam, depth + 1).ctx(&name)?;
        let top = tensor_key(&StringElement::b0(), &lam);
        let report =
            verify_highest_weight_characterization(&cartan, &g, &top, &lam, &domain, &top)
                .ctx(&name)?;
        require(
            report.pass(),
            format!("{name}: characterization failed: {:?}", report.witnesses()),
        )?;
    }

    // A graph with two elements of the top weight must fail uniqueness.
    let cartan = CartanDatum::preset("A2").unwrap();
    let lam = WeightVector::from_lam(vec![1, 0]);
    let g = gen_case(&cartan, &lam)?;
    let depth = g.max_ht_distance(&lam);
    let iota = IotaSequence::default_cycle(2);
    let domain = generate_binf_tensor_graph(&cartan, &iota, &lam, depth + 1).ctx("domain")?;
    let top = tensor_key(&StringElement::b0(), &lam);
    let doctored = add_phantom_top(&g, &lam);
    let report =
        verify_highest_weight_characterization(&cartan, &doctored, &top, &lam, &domain, &top)
            .ctx("phantom-top graph")?;
    require(
        !report.top_uniqueness.is_empty(),
        "duplicated top weight not flagged by the uniqueness condition".into(),
    )?;

    // Deleting an edge from a multi-path crystal must break the morphism
    // conditions for at least one choice of edge.
    let lam = WeightVector::from_lam(vec![1, 1]);
    let g = gen_case(&cartan, &lam)?;
    let depth = g.max_ht_distance(&lam);
    let domain = generate_binf_tensor_graph(&cartan, &iota, &lam, depth + 1).ctx("domain")?;
    let top = tensor_key(&StringElement::b0(), &lam);
    let mut morphism_flagged = false;
    for eidx in 0..g.edges().len() {
        let doctored = rebuild(&g, None, Some(eidx));
        let report =
            verify_highest_weight_characterization(&cartan, &doctored, &top, &lam, &domain, &top)
                .ctx("edge-dropped graph")?;
        require(
            !report.pass(),
            format!("dropping edge {eidx} left the characterization passing"),
        )?;
        if !report.morphism.is_empty() {
            morphism_flagged = true;
        }
    }
    require(
        morphism_flagged,
        "no dropped edge produced a morphism/strictness witness".into(),
    )?;
    Ok(())
}

// Criterion 4: for random operator words, vanishing read off the generated
// graph agrees with vanishing decided by the positivity guard in the
// ambient tensor crystal.
fn criterion_word_vanishing() -> CResult {
    for (case_idx, (name, cartan, lam)) in suite().into_iter().enumerate() {
        let g = gen_case(&cartan, &lam)?;
        let rank = cartan.rank();
        let top_key = tensor_key(&StringElement::b0(), &lam);
        let top_idx = g
            .index_of(&top_key)
            .ok_or_else(|| format!("{name}: top element missing"))?;
        let tensor = binf_tensor_t(BInfinity::with_default_iota(cartan.clone()), lam.clone());
        let max_len = (g.max_ht_distance(&lam) as usize) + 3;
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + case_idx as u64);
        for word_idx in 0..1000 {
            let len = rng.gen_range(1..=max_len);
            let mut node = Some(top_idx);
            let mut elt = Some((StringElement::b0(), ()));
            for step in 0..len {
                let i = rng.gen_range(0..rank);
                node = node.and_then(|n| g.f_edge(n, i));
                elt = elt.and_then(|b| {
                    if tensor.phi(&b, i) > ExtInt::Int(0) {
                        tensor.f(&b, i)
                    } else {
                        None
                    }
                });
                match (&node, &elt) {
                    (Some(n), Some(b)) => require(
                        g.element(*n).key == tensor.key(b),
                        format!("{name}: word {word_idx} step {step}: elements diverge"),
                    )?,
                    (None, None) => break,
                    _ => {
                        return Err(format!(
                            "{name}: word {word_idx} step {step}: graph walk and guard \
                             evaluation disagree on vanishing"
                        ))
                    }
                }
            }
        }
    }
    Ok(())
}

// Criterion 5: tensor products are associative on a heterogeneous test
// matrix, and a known product decomposes into the right components.
fn criterion_associativity() -> CResult {
    for preset in ["A1", "A2"] {
        let cartan = CartanDatum::preset(preset).unwrap();
        let rank = cartan.rank();
        let fund = WeightVector::fundamental(rank, 0);
        let bl = FiniteCrystal::new(gen_case(&cartan, &fund)?);
        let factors = [
            BasicCrystal::Finite(bl),
            BasicCrystal::TLambda(TLambdaCrystal::new(fund.clone())),
            BasicCrystal::Elementary(ElementaryCrystal::new(rank, 0)),
        ];
        let samples = |c: &BasicCrystal| -> Vec<BasicElt> {
            match c {
                BasicCrystal::Finite(f) => f.indices().map(BasicElt::Node).collect(),
                BasicCrystal::TLambda(_) => vec![BasicElt::T],
                BasicCrystal::Elementary(_) => (-2..=2).map(BasicElt::Elem).collect(),
            }
        };
        for a in &factors {
            for b in &factors {
                for c in &factors {
                    let left = TensorProduct::new(
                        cartan.clone(),
                        TensorProduct::new(cartan.clone(), a.clone(), b.clone()),
                        c.clone(),
                    );
                    let right = TensorProduct::new(
                        cartan.clone(),
                        a.clone(),
                        TensorProduct::new(cartan.clone(), b.clone(), c.clone()),
                    );
                    for x in samples(a) {
                        for y in samples(b) {
                            for z in samples(c) {
                                let lx = ((x.clone(), y.clone()), z.clone());
                                let rx = (x.clone(), (y.clone(), z.clone()));
                                let here = format!("{preset}: element {lx:?}");
                                require(
                                    left.wt(&lx) == right.wt(&rx),
                                    format!("{here}: weights differ under re-association"),
                                )?;
                                for i in 0..rank {
                                    require(
                                        left.eps(&lx, i) == right.eps(&rx, i)
                                            && left.phi(&lx, i) == right.phi(&rx, i),
                                        format!("{here}: eps/phi differ in color {i}"),
                                    )?;
                                    let lf = left.f(&lx, i);
                                    let rf = right.f(&rx, i);
                                    let lf_reassoc =
                                        lf.map(|((p, q), r)| (p, (q, r)));
                                    require(
                                        lf_reassoc == rf,
                                        format!("{here}: f images differ in color {i}"),
                                    )?;
                                    let le = left.e(&lx, i);
                                    let re = right.e(&rx, i);
                                    let le_reassoc =
                                        le.map(|((p, q), r)| (p, (q, r)));
                                    require(
                                        le_reassoc == re,
                                        format!("{here}: e images differ in color {i}"),
                                    )?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // The square of the 2-element crystal splits into components of size 3
    // and 1.
    let cartan = CartanDatum::preset("A1").unwrap();
    let fund = WeightVector::fundamental(1, 0);
    let g = gen_case(&cartan, &fund)?;
    let left = FiniteCrystal::new(g.clone());
    let right = FiniteCrystal::new(g);
    let seeds: Vec<(usize, usize)> = left
        .indices()
        .flat_map(|a| right.indices().map(move |b| (a, b)))
        .collect();
    let product = TensorProduct::new(cartan, left, right);
    let pg = generate_graph(
        &product,
        seeds,
        |_, _| true,
        |_, _, _| true,
        |_, _, _| true,
    )
    .ctx("product graph")?;
    let mut sizes: Vec<usize> = pg.connected_components().iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    require(
        sizes == vec![1, 3],
        format!("product decomposition sizes {sizes:?}, expected [1, 3]"),
    )?;
    Ok(())
}

// Criterion 6: the dimension identity holds on random graded dimensions.
fn criterion_dimension_identity() -> CResult {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = 0usize;
    for preset in ["A1", "A2", "A3"] {
        let cartan = CartanDatum::preset(preset).unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let rank = cartan.rank();
        for _ in 0..70 {
            let v: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=3)).collect();
            let w: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=3)).collect();
            let dims = GradedDims::new(v.clone(), w.clone()).ctx("dims")?;
            let id = dimension_identity(&cartan, &quiver, &dims).ctx(preset)?;
            require(
                id.equal,
                format!(
                    "{preset} v={v:?} w={w:?}: lhs {} != rhs {}",
                    id.lhs, id.rhs
                ),
            )?;
            total += 1;
        }
    }
    require(total >= 200, format!("only {total} cases run"))?;
    Ok(())
}

// Criterion 7: sampled points satisfy every invariant: zero moment map,
// stability, nilpotency, free action diagnostics, and the lower bound on the
// structure numbers.
fn criterion_sampling() -> CResult {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for preset in ["A1", "A2", "A3"] {
        let cartan = CartanDatum::preset(preset).unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let rank = cartan.rank();
        for trial in 0..50u64 {
            let w: Vec<usize> = (0..rank).map(|_| rng.gen_range(1..=2)).collect();
            let v: Vec<usize> = w.iter().map(|&wi| rng.gen_range(0..=wi)).collect();
            let dims = GradedDims::new(v.clone(), w.clone()).ctx("dims")?;
            let label = format!("{preset} v={v:?} w={w:?} trial {trial}");
            let d = sample_lagrangian_point(&quiver, &dims, 7000 + trial).ctx(&label)?;
            require(
                d.moment_map_is_zero(&quiver),
                format!("{label}: moment map nonzero"),
            )?;
            require(
                d.is_stable(&quiver).stable,
                format!("{label}: unstable point"),
            )?;
            require(
                d.is_nilpotent(&quiver),
                format!("{label}: not nilpotent"),
            )?;
            let fa = free_action_checks(&quiver, &d).ctx(&label)?;
            require(
                fa.passes(),
                format!(
                    "{label}: stabilizer {} rank {} expected {}",
                    fa.stabilizer_dim, fa.rank_dmu, fa.expected_rank
                ),
            )?;
            let lam_nu = dims.lam_plus_nu();
            for i in 0..rank {
                let eps = d.eps_i(&quiver, i);
                let pairing = cartan.pairing(i, &lam_nu).ctx(&label)?;
                require(
                    eps >= 0 && eps + pairing >= 0,
                    format!("{label}: eps_{i} = {eps}, pairing = {pairing}"),
                )?;
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    require(
        elapsed < 60.0,
        format!("sampling suite took {elapsed:.1}s, budget is 60s"),
    )?;
    Ok(())
}

// Criterion 8: shrink/extend moves shift the structure numbers by the stated
// amounts, the extension kernel has the predicted dimension, and an
// extend-then-shrink round trip restores dimensions and structure numbers.
fn criterion_moves() -> CResult {
    let bases: [(&str, Vec<usize>, Vec<usize>); 3] = [
        ("A1", vec![1], vec![2]),
        ("A2", vec![1, 0], vec![1, 1]),
        ("A2", vec![1, 1], vec![2, 2]),
    ];
    for (case_idx, (preset, v, w)) in bases.into_iter().enumerate() {
        let cartan = CartanDatum::preset(preset).unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(v.clone(), w.clone()).ctx("dims")?;
        let d = sample_lagrangian_point(&quiver, &dims, 8000 + case_idx as u64)
            .ctx("base point")?;
        let lam_nu = dims.lam_plus_nu();
        let rank = cartan.rank();
        let orig_eps: Vec<i64> = (0..rank).map(|i| d.eps_i(&quiver, i)).collect();
        for i in 0..rank {
            let c = orig_eps[i];
            let pairing = cartan.pairing(i, &lam_nu).ctx("pairing")?;
            let label = format!("{preset} v={v:?} w={w:?} vertex {i}");

            let kdim = extend_kernel_dim(&quiver, &d, i);
            require(
                kdim as i64 == pairing + c + dims.v[i] as i64,
                format!(
                    "{label}: extension kernel dim {kdim}, expected {}",
                    pairing + c + dims.v[i] as i64
                ),
            )?;

            // Direct shrinks by every admissible amount.
            for k in 0..=(c as usize) {
                let sh = shrink_i(&quiver, &d, i, k).ctx(&label)?;
                require(
                    sh.eps_i(&quiver, i) == c - k as i64,
                    format!("{label}: shrink by {k} gave eps {}", sh.eps_i(&quiver, i)),
                )?;
            }

            // Extend then shrink back; dimensions and the full structure
            // number profile must return to the original.
            let hi = c + pairing;
            for l in 1..=(hi.clamp(0, 2) as usize) {
                let ext =
                    extend_i(&quiver, &cartan, &d, i, l, 8100 + l as u64).ctx(&label)?;
                require(
                    ext.kernel_dim == kdim,
                    format!("{label}: extend reported kernel dim {}", ext.kernel_dim),
                )?;
                require(
                    ext.datum.eps_i(&quiver, i) == c + l as i64,
                    format!("{label}: extend by {l} did not raise eps by {l}"),
                )?;
                let back = shrink_i(&quiver, &ext.datum, i, l).ctx(&label)?;
                require(
                    back.dims.v == dims.v && back.dims.w == dims.w,
                    format!("{label}: round trip changed dimensions"),
                )?;
                let back_eps: Vec<i64> = (0..rank).map(|j| back.eps_i(&quiver, j)).collect();
                require(
                    back_eps == orig_eps,
                    format!("{label}: round trip eps {back_eps:?}, expected {orig_eps:?}"),
                )?;
            }
        }
    }
    Ok(())
}

// Criterion 9: the change-of-basis action conjugates the moment map,
// preserves the symplectic form, and leaves stability, structure numbers and
// nilpotency unchanged.
fn criterion_equivariance() -> CResult {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for preset in ["A1", "A2", "A3"] {
        let cartan = CartanDatum::preset(preset).unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let rank = cartan.rank();
        for trial in 0..100 {
            let v: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=2)).collect();
            let w: Vec<usize> = (0..rank).map(|_| rng.gen_range(0..=2)).collect();
            let dims = GradedDims::new(v.clone(), w.clone()).ctx("dims")?;
            let label = format!("{preset} v={v:?} w={w:?} trial {trial}");
            let d = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 3);
            let g = GroupElement::random(&dims, &mut rng, 2).ctx(&label)?;
            let gd = g.act(&quiver, &d).ctx(&label)?;

            let mu = d.moment_map(&quiver);
            let gmu = gd.moment_map(&quiver);
            for i in 0..rank {
                let inv = g.blocks[i]
                    .inverse()
                    .ok_or_else(|| format!("{label}: block {i} not invertible"))?;
                let conj = g.blocks[i].mul(&mu[i]).mul(&inv);
                require(
                    gmu[i] == conj,
                    format!("{label}: moment map does not conjugate at vertex {i}"),
                )?;
            }

            let x = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 3);
            let y = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 3);
            let gx = g.act(&quiver, &x).ctx(&label)?;
            let gy = g.act(&quiver, &y).ctx(&label)?;
            require(
                symplectic_form(&quiver, &gx, &gy) == symplectic_form(&quiver, &x, &y),
                format!("{label}: symplectic form not invariant"),
            )?;

            require(
                gd.is_stable(&quiver).stable == d.is_stable(&quiver).stable,
                format!("{label}: stability flag changed"),
            )?;
            require(
                gd.is_nilpotent(&quiver) == d.is_nilpotent(&quiver),
                format!("{label}: nilpotency flag changed"),
            )?;
            for i in 0..rank {
                require(
                    gd.eps_i(&quiver, i) == d.eps_i(&quiver, i),
                    format!("{label}: eps_{i} changed under the action"),
                )?;
            }
        }
    }
    Ok(())
}

// Criterion 10: every CLI command is deterministic: two runs with the same
// arguments and seed produce byte-identical output and the same exit status.
fn criterion_cli_determinism() -> CResult {
    let bin = env!("CARGO_BIN_EXE_qcr");
    let commands: Vec<Vec<&str>> = vec![
        vec!["crystal", "--type", "A2", "--lam", "1,1", "--format", "json"],
        vec!["crystal", "--type", "A2", "--lam", "1,0", "--format", "dot"],
        vec![
            "character", "--type", "A3", "--lam", "0,1,0", "--bound", "6", "--format", "csv",
        ],
        vec!["verify", "--type", "A1", "--lam", "3"],
        vec!["tensor", "--type", "A1", "--lam", "1", "--lam2", "2"],
        vec![
            "quiver-sample", "--type", "A2", "--dims", "v=1,1;w=2,1", "--seed", "11",
        ],
        vec![
            "quiver-check", "--type", "A2", "--dims", "v=1,0;w=1,1", "--seed", "7", "--count",
            "3",
        ],
        vec!["dim-identity", "--type", "A2", "--count", "25", "--seed", "9"],
    ];
    for args in commands {
        let run = || {
            Command::new(bin)
                .args(&args)
                .output()
                .map_err(|e| format!("spawning {args:?}: {e}"))
        };
        let first = run()?;
        let second = run()?;
        require(
            first.status.success(),
            format!(
                "{args:?} exited with {:?}: {}",
                first.status.code(),
                String::from_utf8_lossy(&first.stderr)
            ),
        )?;
        require(
            first.status == second.status && first.stdout == second.stdout,
            format!("{args:?}: output differs between identical runs"),
        )?;
        require(
            !first.stdout.is_empty(),
            format!("{args:?}: produced no output"),
        )?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(&str, fn() -> CResult)> = vec![
        (
            "crystal axiom suite and mutation detection",
            criterion_axioms,
        ),
        ("weight census matches character table", criterion_character),
        (
            "highest-weight characterization and doctored graphs",
            criterion_characterization,
        ),
        (
            "operator-word vanishing matches guard evaluation",
            criterion_word_vanishing,
        ),
        (
            "tensor associativity and product decomposition",
            criterion_associativity,
        ),
        (
            "dimension identity on random graded dimensions",
            criterion_dimension_identity,
        ),
        ("sampled points satisfy all invariants", criterion_sampling),
        ("shrink/extend moves and round trip", criterion_moves),
        ("group action equivariance", criterion_equivariance),
        ("CLI determinism under fixed seeds", criterion_cli_determinism),
    ];
    let mut all_ok = true;
    for (idx, (name, fun)) in criteria.iter().enumerate() {
        let started = Instant::now();
        match fun() {
            Ok(()) => println!(
                "criterion {:2}: PASS ({:6.2}s) {name}",
                idx + 1,
                started.elapsed().as_secs_f64()
            ),
            Err(msg) => {
                all_ok = false;
                println!("criterion {:2}: FAIL {name}: {msg}", idx + 1);
            }
        }
    }
    std::process::exit(if all_ok { 0 } else { 1 });
}

//! Helpers shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::{Complex, DMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use cyclograph::catalog::maximal_graphs;
use cyclograph::equiv::{
    canonical_key, contains_induced_equivalent, galois_conjugate, negate, switch, CanonicalKey, Flavor, Pattern,
};
use cyclograph::grow::{alphabet_from_norms, generate_columns};
use cyclograph::poly::{char_poly_bareiss, char_poly_faddeev, is_cyclotomic_matrix_fast, reciprocal_transform};
use cyclograph::{char_poly, is_cyclotomic_matrix, mahler_of_matrix, HermitianMatrix, Ring, RingElement, VertexAddition};

pub fn to_complex(x: RingElement) -> Complex<f64> {
    let (a, b) = (x.a as f64, x.b as f64);
    match x.ring {
        Ring::Rational => Complex::new(a, 0.0),
        Ring::Gaussian => Complex::new(a, b),
        // ω = e^{iπ/3}, the root of ω² − ω + 1
        Ring::Eisenstein => Complex::new(a + b / 2.0, b * 3f64.sqrt() / 2.0),
    }
}

/// Eigenvalues in ascending order, by a floating-point Hermitian solver.
pub fn eigenvalues(a: &HermitianMatrix) -> Vec<f64> {
    let n = a.n();
    if n <= 1 {
        return (0..n).map(|v| a.charge(v) as f64).collect();
    }
    let m = DMatrix::from_fn(n, n, |r, c| to_complex(a.get(r, c)));
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// A random Hermitian matrix with entry norms at most 4, charges in −2..=2
/// and roughly half of the off-diagonal entries zero.
pub fn random_matrix<R: Rng>(rng: &mut R, ring: Ring, n: usize) -> HermitianMatrix {
    let mut alphabet = Vec::new();
    for k in 1..=4 {
        alphabet.extend(ring.elements_of_norm(k));
    }
    let mut a = HermitianMatrix::zero(ring, n);
    for u in 0..n {
        a.set_edge(u, u, ring.integer(rng.gen_range(-2..=2))).unwrap();
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                a.set_edge(u, v, *alphabet.choose(rng).unwrap()).unwrap();
            }
        }
    }
    a
}

/// A random element of the equivalence group of the given flavor applied to `a`.
pub fn random_equivalent<R: Rng>(rng: &mut R, a: &HermitianMatrix, flavor: Flavor) -> HermitianMatrix {
    let units = a.ring().units();
    let mut perm: Vec<usize> = (0..a.n()).collect();
    perm.shuffle(rng);
    let mut m = a.permute(&perm);
    for v in 0..m.n() {
        m = switch(&m, v, *units.choose(rng).unwrap()).unwrap();
    }
    if rng.gen_bool(0.5) {
        m = galois_conjugate(&m);
    }
    if flavor == Flavor::Full && rng.gen_bool(0.5) {
        m = negate(&m);
    }
    m
}

/// Eigenvalues of every one-vertex deletion interlace those of `a`.
pub fn interlaces(a: &HermitianMatrix) -> bool {
    const EPS: f64 = 1e-7;
    let big = eigenvalues(a);
    (0..a.n()).all(|v| {
        let small = eigenvalues(&a.delete_vertex(v));
        small.iter().enumerate().all(|(k, &mu)| big[k] <= mu + EPS && mu <= big[k + 1] + EPS)
    })
}

/// Checks the char-poly, Mahler and canonical-key invariants of `a` under
/// `samples` random equivalences; `Err` names the first failure.
pub fn check_invariance<R: Rng>(rng: &mut R, a: &HermitianMatrix, samples: usize) -> Result<(), String> {
    let chi = char_poly(a);
    let m = mahler_of_matrix(a);
    let key_full = canonical_key(a, Flavor::Full).map_err(|e| e.to_string())?;
    let key_strong = canonical_key(a, Flavor::Strong).map_err(|e| e.to_string())?;
    for _ in 0..samples {
        let b = random_equivalent(rng, a, Flavor::Strong);
        if char_poly(&b) != chi {
            return Err(format!("char poly changed under strong equivalence of {a:?}"));
        }
        let mb = mahler_of_matrix(&b);
        if (mb.value - m.value).abs() > 1e-9 * m.value.max(1.0) || mb.is_exactly_one != m.is_exactly_one {
            return Err(format!("Mahler measure changed under equivalence of {a:?}"));
        }
        if canonical_key(&b, Flavor::Strong).map_err(|e| e.to_string())? != key_strong {
            return Err(format!("strong key not constant on the orbit of {a:?}"));
        }
        let c = random_equivalent(rng, a, Flavor::Full);
        if canonical_key(&c, Flavor::Full).map_err(|e| e.to_string())? != key_full {
            return Err(format!("full key not constant on the orbit of {a:?}"));
        }
        // negation maps R_A(z) to ±R_A(−z), preserving the measure
        let mc = mahler_of_matrix(&c);
        if (mc.value - m.value).abs() > 1e-9 * m.value.max(1.0) {
            return Err(format!("Mahler measure changed under negation of {a:?}"));
        }
    }
    Ok(())
}

/// Reciprocal polynomial is palindromic of degree `2n` and both char-poly methods agree.
pub fn check_polynomials(a: &HermitianMatrix) -> Result<(), String> {
    let f = char_poly_faddeev(a).map_err(|e| e.to_string())?;
    let b = char_poly_bareiss(a);
    if f != b {
        return Err(format!("Faddeev and Bareiss disagree on {a:?}"));
    }
    let r = reciprocal_transform(&f);
    if !r.is_palindromic() || r.degree() != 2 * a.n() {
        return Err(format!("reciprocal polynomial of {a:?} is not palindromic of degree 2n"));
    }
    if is_cyclotomic_matrix(a) != is_cyclotomic_matrix_fast(a) {
        return Err(format!("cyclotomicity tests disagree on {a:?}"));
    }
    Ok(())
}

/// Every element of the equivalence group applied to `a`, as flat entry lists.
fn orbit(a: &HermitianMatrix, flavor: Flavor) -> Vec<Vec<(i64, i64)>> {
    let n = a.n();
    let units = a.ring().units();
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    let mut out = Vec::new();
    let signs: &[bool] = if flavor == Flavor::Full { &[false, true] } else { &[false] };
    for conj in [false, true] {
        for &neg in signs {
            let mut base = if conj { galois_conjugate(a) } else { a.clone() };
            if neg {
                base = negate(&base);
            }
            for p in &perms {
                let pm = base.permute(p);
                let mut idx = vec![0usize; n];
                loop {
                    let mut m = pm.clone();
                    for v in 0..n {
                        m = switch(&m, v, units[idx[v]]).unwrap();
                    }
                    out.push(m.entries().iter().map(|x| (x.a, x.b)).collect());
                    let mut k = 0;
                    while k < n {
                        idx[k] += 1;
                        if idx[k] < units.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
            }
        }
    }
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Every connected Hermitian matrix on `n` vertices whose entries come from
/// `offdiag` (including zero) and whose charges come from `charges`.
pub fn all_connected(ring: Ring, n: usize, offdiag: &[RingElement], charges: &[i64]) -> Vec<HermitianMatrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut choices = vec![ring.zero()];
    choices.extend_from_slice(offdiag);
    let mut out = Vec::new();
    let mut idx = vec![0usize; pairs.len()];
    loop {
        let mut base = HermitianMatrix::zero(ring, n);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            base.set_edge(u, v, choices[idx[k]]).unwrap();
        }
        if base.is_connected() {
            let mut cidx = vec![0usize; n];
            loop {
                let mut m = base.clone();
                for v in 0..n {
                    m.set_edge(v, v, ring.integer(charges[cidx[v]])).unwrap();
                }
                out.push(m);
                if !advance(&mut cidx, charges.len()) {
                    break;
                }
            }
        }
        if !advance(&mut idx, choices.len()) {
            break;
        }
    }
    out
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Classes of the brute-force orbit partition and of the canonical-key
/// partition must coincide. Returns the number of classes.
pub fn oracle_partition(matrices: &[HermitianMatrix], flavor: Flavor) -> Result<usize, String> {
    let orbit_min: Vec<Vec<(i64, i64)>> =
        matrices.par_iter().map(|m| orbit(m, flavor).into_iter().min().expect("nonempty orbit")).collect();
    let keys: Vec<CanonicalKey> =
        matrices.par_iter().map(|m| canonical_key(m, flavor).expect("small matrix")).collect();
    let mut by_orbit: HashMap<&Vec<(i64, i64)>, &CanonicalKey> = HashMap::new();
    let mut by_key: HashMap<&CanonicalKey, &Vec<(i64, i64)>> = HashMap::new();
    for (o, k) in orbit_min.iter().zip(&keys) {
        if *by_orbit.entry(o).or_insert(k) != k {
            return Err(format!("one orbit has two keys: {o:?}"));
        }
        if *by_key.entry(k).or_insert(o) != o {
            return Err(format!("two orbits share key {k:?}"));
        }
    }
    Ok(by_orbit.len())
}

/// All connected 3-vertex ℤ[i] matrices with every entry of norm at most 2.
pub fn three_vertex_gaussian() -> Vec<HermitianMatrix> {
    let ring = Ring::Gaussian;
    let mut alphabet = ring.elements_of_norm(1);
    alphabet.extend(ring.elements_of_norm(2));
    all_connected(ring, 3, &alphabet, &[-1, 0, 1])
}

/// Minimal non-cyclotomic charged triangle-free unit-weight graphs on three
/// vertices, partitioned by the given flavor.
pub fn charged_path_classes(ring: Ring, flavor: Flavor) -> BTreeSet<CanonicalKey> {
    all_connected(ring, 3, &ring.units(), &[-1, 0, 1])
        .into_iter()
        .filter(|m| m.has_charges() && !(m.is_edge(0, 1) && m.is_edge(1, 2) && m.is_edge(0, 2)))
        .filter(cyclograph::grow::is_minimal_noncyclotomic)
        .map(|m| canonical_key(&m, flavor).unwrap())
        .collect()
}

/// Connected cyclotomic matrices up to full equivalence, grown vertex by
/// vertex: every connected graph has a vertex whose deletion stays connected,
/// and induced subgraphs of cyclotomic matrices are cyclotomic.
pub fn connected_cyclotomic_classes(ring: Ring, max_n: usize, norms: &[u64], charges: &[i64]) -> Vec<BTreeMap<CanonicalKey, HermitianMatrix>> {
    let alphabet = alphabet_from_norms(ring, norms);
    let mut levels: Vec<BTreeMap<CanonicalKey, HermitianMatrix>> = vec![BTreeMap::new()];
    let mut first = BTreeMap::new();
    for &x in charges {
        let m = HermitianMatrix::from_integers(ring, &[vec![x]]).unwrap();
        if is_cyclotomic_matrix(&m) {
            first.insert(canonical_key(&m, Flavor::Full).unwrap(), m);
        }
    }
    levels.push(first);
    for n in 2..=max_n {
        let columns = generate_columns(n - 1, &alphabet, None);
        let found: Vec<(CanonicalKey, HermitianMatrix)> = levels[n - 1]
            .par_iter()
            .flat_map_iter(|(_, parent)| {
                let mut local = Vec::new();
                for col in &columns {
                    for &x in charges {
                        let m = parent.extend(&VertexAddition { column: col.clone(), charge: x }).unwrap();
                        if is_cyclotomic_matrix_fast(&m) {
                            local.push((canonical_key(&m, Flavor::Full).unwrap(), m));
                        }
                    }
                }
                local
            })
            .collect();
        let mut level = BTreeMap::new();
        for (k, m) in found {
            level.entry(k).or_insert(m);
        }
        levels.push(level);
    }
    levels
}

/// Classes of connected cyclotomic ℤ[i] matrices on at most `max_n`
/// vertices with entry norms in {1, 2, 4} and charges in −2..=2 that embed in
/// no catalog maximal graph. Also returns the number of classes checked.
pub fn unembedded_cyclotomic(max_n: usize, k_max: usize) -> (usize, Vec<HermitianMatrix>) {
    let ring = Ring::Gaussian;
    let levels = connected_cyclotomic_classes(ring, max_n, &[1, 2, 4], &[-2, -1, 0, 1, 2]);
    let maximal: Vec<HermitianMatrix> = maximal_graphs(ring, k_max).iter().map(|g| g.matrix().unwrap().clone()).collect();
    let all: Vec<&HermitianMatrix> = levels.iter().flat_map(|l| l.values()).collect();
    let missing = all
        .par_iter()
        .filter(|m| {
            let p = Pattern::from_matrix(m);
            !maximal.iter().any(|g| g.n() >= m.n() && contains_induced_equivalent(g, &p, Flavor::Full))
        })
        .map(|m| (*m).clone())
        .collect();
    (all.len(), missing)
}

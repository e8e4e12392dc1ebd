//! Library results against brute-force oracles written independently here.

use std::collections::BTreeSet;
use std::sync::Arc;

use fgmod::cohomology::{h1, h2};
use fgmod::corpus;
use fgmod::field::{Field, FieldSpec};
use fgmod::formation::{formation_contains, formation_residual, FormationId};
use fgmod::groups::{GroupTable, Subgroup};
use fgmod::linalg::{rank, Mat};
use fgmod::meataxe::all_irreducibles;
use fgmod::module::RepModule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank over GF(p) by plain Gaussian elimination on `i64` rows.
fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = (1..p).find(|&x| rows[r][c] * x % p == 1).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x = (*x - k * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of `x` acting on the left: `x·v = v·ρ(x⁻¹)`, as integer rows.
fn left(v: &RepModule, x: usize) -> Vec<Vec<i64>> {
    let m = v.elem_mat(v.group().inv(x));
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&e| e as i64).collect())
        .collect()
}

/// Dimensions of Z¹ and B¹ from the full system over all pairs `(x, y)`.
fn brute_h1(v: &RepModule, p: i64) -> (usize, usize) {
    let g = v.group();
    let (n, m) = (g.order(), v.dim());
    let unknowns = n * m;
    // One column per unknown coordinate d(x)_k; one row per equation.
    let mut eqs = Vec::new();
    for x in 0..n {
        let lx = left(v, x);
        for y in 0..n {
            let xy = g.mul(x, y);
            for k in 0..m {
                // d(xy)_k - d(x)_k - Σ_j d(y)_j lx[j][k] = 0
                let mut row = vec![0i64; unknowns];
                row[xy * m + k] += 1;
                row[x * m + k] -= 1;
                for j in 0..m {
                    row[y * m + j] -= lx[j][k];
                }
                eqs.push(row.into_iter().map(|e| e.rem_euclid(p)).collect());
            }
        }
    }
    let z = unknowns - rank_mod_p(eqs, p);
    // B¹ is the image of v ↦ (x·v - v), whose kernel is the fixed space.
    let mut img = Vec::new();
    for i in 0..m {
        let mut row = Vec::with_capacity(unknowns);
        for x in 0..n {
            let lx = left(v, x);
            for (k, &e) in lx[i].iter().enumerate() {
                row.push((e - i64::from(i == k)).rem_euclid(p));
            }
        }
        img.push(row);
    }
    (z, rank_mod_p(img, p))
}

/// Dimensions of normalized Z² and B² from the full system over all triples.
fn brute_h2(v: &RepModule, p: i64) -> (usize, usize) {
    let g = v.group();
    let (n, m) = (g.order(), v.dim());
    let idx = |x: usize, y: usize, k: usize| (x * n + y) * m + k;
    let unknowns = n * n * m;
    let mut eqs = Vec::new();
    for x in 0..n {
        let lx = left(v, x);
        for y in 0..n {
            let xy = g.mul(x, y);
            for z in 0..n {
                let yz = g.mul(y, z);
                for k in 0..m {
                    // c(x,y) + c(xy,z) - x·c(y,z) - c(x,yz) = 0
                    let mut row = vec![0i64; unknowns];
                    row[idx(x, y, k)] += 1;
                    row[idx(xy, z, k)] += 1;
                    row[idx(x, yz, k)] -= 1;
                    for j in 0..m {
                        row[idx(y, z, j)] -= lx[j][k];
                    }
                    eqs.push(row.into_iter().map(|e| e.rem_euclid(p)).collect());
                }
            }
        }
    }
    // Normalized cochains: c(1, y) = c(x, 1) = 0.
    for x in 0..n {
        for k in 0..m {
            for at in [idx(0, x, k), idx(x, 0, k)] {
                let mut row = vec![0i64; unknowns];
                row[at] = 1;
                eqs.push(row);
            }
        }
    }
    let z2 = unknowns - rank_mod_p(eqs, p);
    let (z1, _) = brute_h1(v, p);
    (z2, (n - 1) * m - z1)
}

fn prime_field(p: u32) -> Arc<Field> {
    Arc::new(Field::prime(p).unwrap())
}

/// Small modules over prime fields: trivial, permutation and every irreducible.
fn small_cases() -> Vec<(String, RepModule, i64)> {
    let mut out = Vec::new();
    for (name, g) in corpus::group_arcs() {
        if g.order() > 8 {
            continue;
        }
        for p in [2u32, 3] {
            let f = prime_field(p);
            out.push((
                format!("{name}/GF({p})/perm"),
                RepModule::permutation(g.clone(), f.clone()).unwrap(),
                p as i64,
            ));
            for (i, s) in all_irreducibles(g.clone(), f, 0).unwrap().modules().iter().enumerate() {
                out.push((format!("{name}/GF({p})/irr{i}"), s.clone(), p as i64));
            }
        }
    }
    out
}

#[test]
fn h1_matches_all_pairs_system() {
    for (name, v, p) in small_cases() {
        let got = h1(&v).unwrap();
        let (z, b) = brute_h1(&v, p);
        assert_eq!((got.dim_cocycles, got.dim_coboundaries), (z, b), "{name}");
        assert_eq!(got.dim_cohomology, z - b, "{name}");
        assert!(got.verify(&v), "{name}");
    }
}

#[test]
fn h2_matches_all_triples_system() {
    for (name, v, p) in small_cases() {
        if v.group().order() * v.dim() > 24 {
            continue;
        }
        let got = h2(&v).unwrap();
        let (z, b) = brute_h2(&v, p);
        assert_eq!((got.dim_cocycles, got.dim_coboundaries), (z, b), "{name}");
        assert!(got.verify(&v), "{name}");
    }
}

fn det_mod_p(m: &[Vec<i64>], p: i64) -> i64 {
    if m.len() == 1 {
        return m[0][0].rem_euclid(p);
    }
    let mut acc = 0;
    for j in 0..m.len() {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc = (acc + sign * m[0][j] * det_mod_p(&minor, p)).rem_euclid(p);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Largest `k` with a nonzero `k×k` minor.
fn minor_rank(m: &[Vec<i64>], p: i64) -> usize {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                    det_mod_p(&sub, p) != 0
                })
            })
        })
        .unwrap_or(0)
}

#[test]
fn rank_matches_minor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u32, 3, 5] {
        let f = Field::prime(p).unwrap();
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
            // Bias towards zeros so low ranks show up.
            let rows: Vec<Vec<u32>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..p) })
                        .collect()
                })
                .collect();
            let m = Mat::from_rows(c, &rows).unwrap();
            let ints: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            assert_eq!(rank(&f, &m), minor_rank(&ints, p as i64), "{rows:?} over GF({p})");
        }
    }
}

/// Every normal subgroup, as sorted element sets, by closing normal closures
/// of single elements under joins.
fn normal_subgroups(g: &GroupTable) -> Vec<BTreeSet<usize>> {
    let to_set = |s: &Subgroup| s.elements().iter().copied().collect::<BTreeSet<usize>>();
    let mut found: BTreeSet<BTreeSet<usize>> = (0..g.order()).map(|x| to_set(&g.normal_closure(&[x]))).collect();
    loop {
        let list: Vec<_> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &list {
            for b in &list {
                let gens: Vec<usize> = a.union(b).copied().collect();
                if found.insert(to_set(&g.subgroup_generated(&gens))) {
                    grew = true;
                }
            }
        }
        if !grew {
            return found.into_iter().collect();
        }
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[test]
fn o_pprime_p_matches_normal_subgroup_scan() {
    for (name, g) in corpus::groups() {
        let normals = normal_subgroups(&g);
        for p in [2usize, 3] {
            let o_pprime = normals
                .iter()
                .filter(|n| n.len() % p != 0)
                .max_by_key(|n| n.len())
                .unwrap();
            let o_pprime_p = normals
                .iter()
                .filter(|n| n.is_superset(o_pprime) && is_power_of(n.len() / o_pprime.len(), p))
                .max_by_key(|n| n.len())
                .unwrap();
            for n in &normals {
                if n.len() % p != 0 {
                    assert!(o_pprime.is_superset(n), "{name}: O_p' is not largest");
                }
            }
            let got: BTreeSet<usize> = g.o_pprime_p(p as u32).unwrap().elements().iter().copied().collect();
            assert_eq!(&got, o_pprime_p, "{name} p={p}");
        }
    }
}

#[test]
fn residuals_are_least_normal_subgroups_with_quotient_in_formation() {
    let ids = [
        FormationId::Trivial,
        FormationId::Abelian,
        FormationId::Nilpotent,
        FormationId::NilpotentLength(2),
        FormationId::AllSoluble,
    ];
    for (name, g) in corpus::groups() {
        let normals = normal_subgroups(&g);
        for id in ids {
            let k: BTreeSet<usize> = formation_residual(id, &g).unwrap().elements().iter().copied().collect();
            for n in &normals {
                let sub = g.subgroup_generated(&n.iter().copied().collect::<Vec<_>>());
                let (q, _) = g.quotient(&sub).unwrap();
                let in_f = formation_contains(id, &q);
                assert_eq!(in_f, n.is_superset(&k), "{name} {id}: N of order {}", n.len());
            }
        }
    }
}

#[test]
fn quotient_closure_on_corpus() {
    let ids = [
        FormationId::Abelian,
        FormationId::Nilpotent,
        FormationId::NilpotentLength(2),
    ];
    for (name, g) in corpus::groups() {
        for id in ids.into_iter().filter(|&id| formation_contains(id, &g)) {
            for n in normal_subgroups(&g) {
                let sub = g.subgroup_generated(&n.iter().copied().collect::<Vec<_>>());
                let (q, proj) = g.quotient(&sub).unwrap();
                assert!(formation_contains(id, &q), "{name} {id}");
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(proj[g.mul(x, y)], q.mul(proj[x], proj[y]));
                    }
                }
            }
        }
    }
}

#[test]
fn gf4_h1_matches_restricted_scalars() {
    // dim over GF(2) of H¹(V) is twice its GF(4)-dimension.
    let gf4 = Arc::new(Field::new(FieldSpec::builtin(2, 2).unwrap()).unwrap());
    for (name, g) in corpus::group_arcs() {
        if g.order() > 24 {
            continue;
        }
        for s in all_irreducibles(g.clone(), gf4.clone(), 0).unwrap().modules() {
            let over_gf2 = s.restrict_scalars().unwrap();
            let (z, b) = brute_h1(&over_gf2, 2);
            assert_eq!(2 * h1(s).unwrap().dim_cohomology, z - b, "{name}");
        }
    }
}

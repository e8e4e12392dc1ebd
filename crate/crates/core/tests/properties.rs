use std::sync::{Arc, OnceLock};

use fgmod::cohomology::h1_dim;
use fgmod::corpus;
use fgmod::field::{Field, FieldSpec};
use fgmod::formation::SaturatedFormation;
use fgmod::hyperdec::decompose;
use fgmod::io::{format_cycles, parse_cycles};
use fgmod::linalg::{mat_mul, rank, right_kernel, rref, spin, vec_mat, Mat, Subspace};
use fgmod::meataxe::{all_irreducibles, composition_series_in, IsoClassTable};
use fgmod::module::RepModule;
use proptest::prelude::*;

fn fields() -> &'static [Arc<Field>] {
    static F: OnceLock<Vec<Arc<Field>>> = OnceLock::new();
    F.get_or_init(|| {
        [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]
            .iter()
            .map(|&(p, k)| Arc::new(Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap()))
            .collect()
    })
}

fn small_field() -> impl Strategy<Value = Arc<Field>> {
    (0..fields().len()).prop_map(|i| fields()[i].clone())
}

fn mat_over(f: &Field, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    let q = f.order();
    proptest::collection::vec(0..q, rows * cols).prop_map(move |d| Mat::from_vec(rows, cols, d).unwrap())
}

fn field_and_mat(max_r: usize, max_c: usize) -> impl Strategy<Value = (Arc<Field>, Mat)> {
    (small_field(), 1..=max_r, 1..=max_c).prop_flat_map(|(f, r, c)| {
        let m = mat_over(&f, r, c);
        (Just(f), m)
    })
}

fn field_and_two_subspaces() -> impl Strategy<Value = (Arc<Field>, Subspace, Subspace)> {
    (small_field(), 1..=6usize, 0..=5usize, 0..=5usize).prop_flat_map(|(f, n, a, b)| {
        let (ma, mb) = (mat_over(&f, a, n), mat_over(&f, b, n));
        let ff = f.clone();
        (Just(f), ma, mb)
            .prop_map(move |(_, x, y)| (ff.clone(), Subspace::from_rows(&ff, &x), Subspace::from_rows(&ff, &y)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent((f, m) in field_and_mat(6, 7)) {
        let (r1, k1, p1) = rref(&f, &m);
        let (r2, k2, p2) = rref(&f, &r1);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(k1, k2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_nullity((f, m) in field_and_mat(6, 7)) {
        let r = rank(&f, &m);
        prop_assert_eq!(r, rank(&f, &m.transpose()));
        let k = right_kernel(&f, &m);
        prop_assert_eq!(k.dim(), m.cols() - r);
        for i in 0..k.dim() {
            let v = k.basis().row(i);
            for j in 0..m.rows() {
                prop_assert_eq!(f.dot(m.row(j), v), 0);
            }
        }
    }

    #[test]
    fn modular_law_of_dimensions((f, u, w) in field_and_two_subspaces()) {
        let s = u.sum(&f, &w).unwrap();
        let i = u.intersect(&f, &w).unwrap();
        prop_assert_eq!(u.dim() + w.dim(), s.dim() + i.dim());
        prop_assert!(s.contains(&f, &u) && s.contains(&f, &w));
        prop_assert!(u.contains(&f, &i) && w.contains(&f, &i));
    }

    #[test]
    fn subspace_equality_is_set_equality((f, u, w) in field_and_two_subspaces()) {
        let same_set = u.contains(&f, &w) && w.contains(&f, &u);
        prop_assert_eq!(u == w, same_set);
        // A reshuffled spanning set gives the same canonical basis.
        let mut rows = u.basis().row_vecs();
        rows.reverse();
        let again = Subspace::from_vecs(&f, u.ambient(), &rows).unwrap();
        prop_assert_eq!(&again, &u);
    }

    #[test]
    fn spin_is_invariant(
        (f, a, b, seed) in (small_field(), 1..=5usize).prop_flat_map(|(f, n)| {
            let (a, b, s) = (mat_over(&f, n, n), mat_over(&f, n, n), mat_over(&f, 1, n));
            (Just(f), a, b, s)
        })
    ) {
        let mats = [a, b];
        let s = spin(&f, &[seed.row(0).to_vec()], &mats).unwrap();
        prop_assert!(s.contains_vec(&f, seed.row(0)));
        for m in &mats {
            for i in 0..s.dim() {
                prop_assert!(s.contains_vec(&f, &vec_mat(&f, s.basis().row(i), m)));
            }
        }
    }

    #[test]
    fn matrix_product_is_associative(
        (f, a, b, c) in (small_field(), 1..=4usize, 1..=4usize, 1..=4usize, 1..=4usize)
            .prop_flat_map(|(f, i, j, k, l)| {
                let (a, b, c) = (mat_over(&f, i, j), mat_over(&f, j, k), mat_over(&f, k, l));
                (Just(f), a, b, c)
            })
    ) {
        prop_assert_eq!(mat_mul(&f, &mat_mul(&f, &a, &b), &c), mat_mul(&f, &a, &mat_mul(&f, &b, &c)));
    }

    #[test]
    fn cycle_notation_roundtrip(perm in (1..=9usize).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())) {
        let text = format_cycles(&perm);
        prop_assert_eq!(parse_cycles(&text, perm.len()).unwrap(), perm);
    }
}

struct Ctx {
    name: &'static str,
    irr: IsoClassTable,
}

/// Irreducibles of the small corpus groups over GF(2), GF(3), GF(4).
fn contexts() -> &'static [Ctx] {
    static C: OnceLock<Vec<Ctx>> = OnceLock::new();
    C.get_or_init(|| {
        let mut out = Vec::new();
        for (name, g) in corpus::group_arcs() {
            if g.order() > 24 {
                continue;
            }
            for (p, k) in [(2, 1), (3, 1), (2, 2)] {
                let f = Arc::new(Field::new(FieldSpec::builtin(p, k).unwrap()).unwrap());
                out.push(Ctx {
                    name,
                    irr: all_irreducibles(g.clone(), f, 0).unwrap(),
                });
            }
        }
        out
    })
}

/// A module built as a direct sum of permutation and irreducible summands,
/// then twisted by a random change of basis.
fn module_in(c: usize) -> impl Strategy<Value = RepModule> {
    (proptest::collection::vec(0..8usize, 1..=3), any::<u64>()).prop_map(move |(picks, seed)| {
        let ctx = &contexts()[c];
        let g = ctx.irr.get(0).group().clone();
        let f = ctx.irr.get(0).field_arc().clone();
        let perm = RepModule::permutation(g, f).unwrap();
        let pick = |i: usize| {
            if i >= ctx.irr.len() {
                perm.clone()
            } else {
                ctx.irr.get(i).clone()
            }
        };
        let mut v = pick(picks[0]);
        for &i in &picks[1..] {
            v = v.direct_sum(&pick(i)).unwrap();
        }
        twist(&v, seed)
    })
}

fn random_module() -> impl Strategy<Value = (usize, RepModule)> {
    (0..contexts().len()).prop_flat_map(|c| (Just(c), module_in(c)))
}

fn random_pair() -> impl Strategy<Value = (usize, RepModule, RepModule)> {
    (0..contexts().len()).prop_flat_map(|c| (Just(c), module_in(c), module_in(c)))
}

fn twist(v: &RepModule, seed: u64) -> RepModule {
    use rand::{Rng, SeedableRng};
    let f = v.field();
    let n = v.dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..f.order())).collect();
        let p = Mat::from_vec(n, n, data).unwrap();
        if rank(f, &p) == n {
            return v.conjugate_by(&p).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_holder_signature_is_seed_independent((c, v) in random_module(), seed in 1..1000u64) {
        let mut table = contexts()[c].irr.clone();
        let a = composition_series_in(&v, 0, &mut table).unwrap();
        let b = composition_series_in(&v, seed, &mut table).unwrap();
        prop_assert_eq!(a.signature(), b.signature(), "{}", contexts()[c].name);
        prop_assert_eq!(a.factors.iter().map(|x| x.dim).sum::<usize>(), v.dim());
        for w in a.chain.windows(2) {
            prop_assert!(w[1].contains(v.field(), &w[0]) && w[1].dim() > w[0].dim());
        }
    }

    #[test]
    fn decomposition_is_direct_and_seed_independent((c, v) in random_module(), seed in 1..1000u64) {
        let f = v.field();
        let g = v.group();
        for sf in SaturatedFormation::corpus() {
            if !fgmod::formation::loc_contains(&sf, g).unwrap() {
                continue;
            }
            let d = decompose(&v, &sf, 0).unwrap();
            prop_assert_eq!(d.v_plus.dim() + d.v_minus.dim(), v.dim());
            prop_assert!(d.v_plus.is_direct_sum(f, &d.v_minus).unwrap());
            prop_assert!(v.is_invariant(&d.v_plus) && v.is_invariant(&d.v_minus));
            let e = decompose(&v, &sf, seed).unwrap();
            prop_assert_eq!(&d.v_plus, &e.v_plus, "{}", contexts()[c].name);
            prop_assert_eq!(&d.v_minus, &e.v_minus);
            let plus_dim: usize = d.plus_factors.iter().map(|x| x.dim).sum();
            prop_assert_eq!(plus_dim, d.v_plus.dim());
        }
    }

    #[test]
    fn h1_is_additive((_, v, w) in random_pair()) {
        let sum = v.direct_sum(&w).unwrap();
        prop_assert_eq!(h1_dim(&sum).unwrap(), h1_dim(&v).unwrap() + h1_dim(&w).unwrap());
    }

    #[test]
    fn split_complement_reconstructs((c, v, w) in random_pair()) {
        let sum = v.direct_sum(&w).unwrap();
        let f = sum.field();
        let n = v.dim();
        let first: Vec<Vec<u32>> = (0..n).map(|i| (0..sum.dim()).map(|j| u32::from(i == j)).collect()).collect();
        let a = Subspace::from_vecs(f, sum.dim(), &first).unwrap();
        let comp = sum.split_complement(&a).unwrap().expect("a direct summand splits");
        prop_assert!(a.is_direct_sum(f, &comp).unwrap());
        prop_assert_eq!(a.dim() + comp.dim(), sum.dim());
        prop_assert!(sum.is_invariant(&comp));
        // The complement has the composition factors of the other summand.
        let mut table = contexts()[c].irr.clone();
        let got = composition_series_in(&sum.sub(&comp).unwrap(), 0, &mut table).unwrap();
        let want = composition_series_in(&w, 0, &mut table).unwrap();
        prop_assert_eq!(got.signature(), want.signature());
    }

    #[test]
    fn double_dual_is_identity((_c, v) in random_module()) {
        let dd = v.dual().dual();
        prop_assert_eq!(dd.gen_mats(), v.gen_mats());
    }
}

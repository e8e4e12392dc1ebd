//! Built-in groups used by the test corpus and the canned example.

use std::sync::Arc;

use crate::groups::{GroupTable, PermGroupSpec, Subgroup, GROUP_CAP};

fn perm_group(degree: usize, gens: &[&[usize]]) -> GroupTable {
    let spec = PermGroupSpec {
        degree,
        generators: gens.iter().map(|g| g.to_vec()).collect(),
    };
    GroupTable::from_perms(&spec, GROUP_CAP).expect("built-in group")
}

pub fn c2() -> GroupTable {
    perm_group(2, &[&[1, 0]])
}

pub fn c3() -> GroupTable {
    perm_group(3, &[&[1, 2, 0]])
}

pub fn c6() -> GroupTable {
    perm_group(5, &[&[1, 2, 0, 4, 3]])
}

pub fn s3() -> GroupTable {
    perm_group(3, &[&[1, 2, 0], &[1, 0, 2]])
}

pub fn d4() -> GroupTable {
    perm_group(4, &[&[1, 2, 3, 0], &[2, 1, 0, 3]])
}

pub fn a4() -> GroupTable {
    perm_group(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
}

pub fn s4() -> GroupTable {
    perm_group(4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
}

/// `⟨(0 1 2), (0 1), (0 3)(1 4)(2 5)⟩`, the wreath product `S3 ≀ C2` of order 72.
pub fn g72() -> GroupTable {
    perm_group(6, &[&[1, 2, 0, 3, 4, 5], &[1, 0, 2, 3, 4, 5], &[3, 4, 5, 0, 1, 2]])
}

/// `⟨(0 1 2)⟩` on six points.
pub fn c3_on_six() -> GroupTable {
    perm_group(6, &[&[1, 2, 0, 3, 4, 5]])
}

/// Permutations of six points preserving `{0, 1, 2}`: `S3 × S3`.
pub fn block_stabilizer() -> GroupTable {
    perm_group(
        6,
        &[
            &[1, 2, 0, 3, 4, 5],
            &[1, 0, 2, 3, 4, 5],
            &[0, 1, 2, 4, 5, 3],
            &[0, 1, 2, 4, 3, 5],
        ],
    )
}

fn elements_where(g: &GroupTable, pred: impl Fn(&[usize]) -> bool) -> Subgroup {
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| pred(g.perm(x).expect("permutation group")))
        .collect();
    g.subgroup_generated(&elems)
}

/// The stabilizer of `{0, 1, 2}` inside [`g72`].
pub fn block_stabilizer_in(g: &GroupTable) -> Subgroup {
    elements_where(g, |p| p[0] < 3 && p[1] < 3 && p[2] < 3)
}

/// The subgroup `⟨(0 1 2)⟩` of a group of permutations of six points.
pub fn c3_on_six_in(g: &GroupTable) -> Subgroup {
    let c = g.find_perm(&[1, 2, 0, 3, 4, 5]).expect("3-cycle present");
    g.subgroup_generated(&[c])
}

/// The corpus groups by name.
pub fn groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("C2", c2()),
        ("C3", c3()),
        ("C6", c6()),
        ("S3", s3()),
        ("D4", d4()),
        ("A4", a4()),
        ("S4", s4()),
        ("G72", g72()),
    ]
}

pub fn group_arcs() -> Vec<(&'static str, Arc<GroupTable>)> {
    groups().into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

/// Generators of the corpus groups, for the shipped JSON fixtures.
pub fn group_spec(name: &str) -> Option<PermGroupSpec> {
    let (degree, gens): (usize, Vec<Vec<usize>>) = match name {
        "C2" => (2, vec![vec![1, 0]]),
        "C3" => (3, vec![vec![1, 2, 0]]),
        "C6" => (5, vec![vec![1, 2, 0, 4, 3]]),
        "S3" => (3, vec![vec![1, 2, 0], vec![1, 0, 2]]),
        "D4" => (4, vec![vec![1, 2, 3, 0], vec![2, 1, 0, 3]]),
        "A4" => (4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        "S4" => (4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]),
        "G72" => (
            6,
            vec![vec![1, 2, 0, 3, 4, 5], vec![1, 0, 2, 3, 4, 5], vec![3, 4, 5, 0, 1, 2]],
        ),
        "U" => (6, vec![vec![1, 2, 0, 3, 4, 5]]),
        _ => return None,
    };
    Some(PermGroupSpec {
        degree,
        generators: gens,
    })
}

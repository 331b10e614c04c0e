use std::fs;
use std::path::PathBuf;

use sgtree::oracle::{naive_count, NaiveSemigroup};
use sgtree::render::render_tree;
use sgtree::tree::{explore, ExploreConfig};
use sgtree::SemigroupState;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Roots of the seed-tree fixtures as `(file stem, left elements, conductor)`.
const SEED_TREES: [(&str, &[u32], u32); 6] = [
    ("natural", &[], 0),
    ("ordinary_2", &[0], 2),
    ("ordinary_3", &[0], 3),
    ("ordinary_4", &[0], 4),
    ("pseudo_ordinary_4_3", &[0, 4], 7),
    ("conductor_30", &[0, 8, 16, 18, 19, 24, 26, 27], 30),
];

fn tables_only(rendered: &str) -> String {
    rendered.lines().map(|l| format!("{}\n", l.split(" {").next().unwrap())).collect()
}

/// Seed tables three levels down, built from the oracle's explicit sets.
fn oracle_tree(root: &NaiveSemigroup) -> String {
    fn table(ns: &NaiveSemigroup) -> String {
        let elements = ns.elements();
        let rows: Vec<String> = (0..ns.rank())
            .map(|p| {
                let width = elements[p as usize + 1] - elements[p as usize];
                let seeds = ns.seeds(p);
                (ns.conductor()..ns.conductor() + width).map(|x| if seeds.contains(&x) { '1' } else { '0' }).collect()
            })
            .collect();
        format!("[{}]", rows.join("|"))
    }
    fn walk(ns: &NaiveSemigroup, level: usize, out: &mut String) {
        out.push_str(&format!("{}{}\n", "  ".repeat(level), table(ns)));
        if level < 3 {
            for child in ns.children() {
                walk(&child, level + 1, out);
            }
        }
    }
    let mut out = String::new();
    walk(root, 0, &mut out);
    out
}

fn read_counts() -> Vec<(u32, u64)> {
    fs::read_to_string(fixture("genus_counts.tsv"))
        .expect("genus_counts.tsv is checked in")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (g, n) = l.split_once('\t').unwrap();
            (g.parse().unwrap(), n.parse().unwrap())
        })
        .collect()
}

#[test]
fn seed_trees_match_fixtures() {
    for (name, left, c) in SEED_TREES {
        let expected = fs::read_to_string(fixture(&format!("seed_trees/{name}.txt"))).unwrap();
        let state = SemigroupState::<u128>::from_left_elements(left, c).unwrap();
        let rendered = tables_only(&render_tree(&state, 3).unwrap());
        assert_eq!(rendered, expected, "fast tree of {name}");
        let oracle = oracle_tree(&NaiveSemigroup::from_left_elements(left, c));
        assert_eq!(oracle, expected, "oracle tree of {name}");
    }
}

#[test]
fn natural_tree_levels() {
    let text = fs::read_to_string(fixture("seed_trees/natural.txt")).unwrap();
    let mut levels = [0u64; 4];
    for line in text.lines() {
        levels[(line.len() - line.trim_start().len()) / 2] += 1;
    }
    assert_eq!(levels, [1, 1, 2, 4]);
}

#[test]
fn exploration_matches_count_fixture() {
    let expected = read_counts();
    assert_eq!(expected.len(), 26);
    let report = explore::<u128>(25, &ExploreConfig::default()).unwrap();
    let found: Vec<(u32, u64)> = report.counts_by_genus.into_iter().collect();
    assert_eq!(found, expected);
}

#[test]
fn oracle_matches_count_fixture_prefix() {
    let expected: Vec<(u32, u64)> = read_counts().into_iter().take(16).collect();
    let found: Vec<(u32, u64)> = naive_count(15).into_iter().collect();
    assert_eq!(found, expected);
}

/// Rewrites the oracle-generated fixtures. Slow: run with `--ignored`.
#[test]
#[ignore]
fn regenerate_fixtures() {
    let counts = naive_count(25);
    let mut tsv = String::from("# genus\tcount\n");
    for (g, n) in &counts {
        tsv.push_str(&format!("{g}\t{n}\n"));
    }
    fs::write(fixture("genus_counts.tsv"), tsv).unwrap();
    for (name, left, c) in SEED_TREES {
        let path = fixture(&format!("seed_trees/{name}.txt"));
        if !path.exists() {
            fs::write(path, oracle_tree(&NaiveSemigroup::from_left_elements(left, c))).unwrap();
        }
    }
}

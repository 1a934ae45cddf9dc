//! Random inputs and independent reference computations shared by the
//! property tests and the acceptance runner.
//!
//! The reference scorers work on plain `Vec<Vec<u32>>` class lists and
//! recount everything from scratch, without the intersection table.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use coref_eval::metrics::{
    d_error, exclusive_assignment, overlapping, DErrorLabel, SizeDistribution,
};
use coref_eval::{align_and_extend, evaluate, IntersectionTable, Partition, Ratio, XpsMode};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Classes = Vec<Vec<u32>>;

#[derive(Debug, Clone)]
pub struct Pair {
    pub key: Classes,
    pub response: Classes,
}

impl Pair {
    pub fn partitions(&self) -> (Partition, Partition) {
        (partition(&self.key), partition(&self.response))
    }

    pub fn same_universe(&self) -> bool {
        universe(&self.key) == universe(&self.response)
    }
}

pub fn partition(classes: &Classes) -> Partition {
    Partition::from_classes(classes.iter().map(|c| c.iter().copied())).expect("generated classes are valid")
}

pub fn universe(classes: &Classes) -> BTreeSet<u32> {
    classes.iter().flatten().copied().collect()
}

/// Splits `mentions` into random classes. The shape varies: mostly
/// singletons, a few big classes, or anything in between.
pub fn random_classes<R: Rng>(rng: &mut R, mentions: &[u32]) -> Classes {
    if mentions.is_empty() {
        return Vec::new();
    }
    let n = mentions.len();
    let buckets = match rng.gen_range(0..4) {
        0 => rng.gen_range(1..=n.min(3)),
        1 => rng.gen_range(1..=n),
        2 => (n / 2).max(1),
        _ => n - rng.gen_range(0..=n / 4),
    };
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); buckets];
    for &m in mentions {
        let b = rng.gen_range(0..buckets);
        classes[b].push(m);
    }
    classes.retain(|c| !c.is_empty());
    classes.shuffle(rng);
    classes
}

/// A response derived from `key` by moving, merging and splitting.
pub fn perturb<R: Rng>(rng: &mut R, key: &Classes) -> Classes {
    let mut classes = key.clone();
    let edits = rng.gen_range(0..=4);
    for _ in 0..edits {
        if classes.is_empty() {
            break;
        }
        match rng.gen_range(0..3) {
            0 if classes.len() > 1 => {
                let a = rng.gen_range(0..classes.len());
                let moved = classes.swap_remove(a);
                let b = rng.gen_range(0..classes.len());
                classes[b].extend(moved);
            }
            1 => {
                let a = rng.gen_range(0..classes.len());
                if classes[a].len() > 1 {
                    let cut = rng.gen_range(1..classes[a].len());
                    let tail = classes[a].split_off(cut);
                    classes.push(tail);
                }
            }
            _ => {
                let a = rng.gen_range(0..classes.len());
                let b = rng.gen_range(0..classes.len());
                if a != b && !classes[a].is_empty() {
                    let i = rng.gen_range(0..classes[a].len());
                    let m = classes[a].swap_remove(i);
                    classes[b].push(m);
                }
            }
        }
        classes.retain(|c| !c.is_empty());
    }
    classes
}

/// Key and response over universes of up to `max_mentions` mentions. About a
/// third of the pairs have differing mention sets.
pub fn random_pair<R: Rng>(rng: &mut R, max_mentions: usize) -> Pair {
    let n = rng.gen_range(1..=max_mentions);
    let mentions: Vec<u32> = (1..=n as u32).collect();
    let key = random_classes(rng, &mentions);
    let response = match rng.gen_range(0..6) {
        0 | 1 => random_classes(rng, &mentions),
        2 | 3 => perturb(rng, &key),
        _ => {
            let mut resp_mentions: Vec<u32> = mentions.iter().copied().filter(|_| rng.gen_bool(0.85)).collect();
            let fresh = rng.gen_range(0..=n / 5);
            resp_mentions.extend(n as u32 + 1..=(n + fresh) as u32);
            if resp_mentions.is_empty() {
                resp_mentions.push(1);
            }
            random_classes(rng, &resp_mentions)
        }
    };
    Pair { key, response }
}

/// Exact fraction as (numerator, denominator), with the same zero-denominator
/// rules the scorer documents.
pub type Frac = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceScores {
    pub muc_recall: Frac,
    pub muc_precision: Frac,
    pub core_recall: Frac,
    pub core_precision: Frac,
}

fn membership(classes: &Classes) -> HashMap<u32, usize> {
    classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&m| (m, i)))
        .collect()
}

/// Adds every mention missing from `classes` but present in `all` as a singleton.
fn complete(classes: &Classes, all: &BTreeSet<u32>) -> Classes {
    let have = universe(classes);
    let mut out = classes.clone();
    out.extend(all.difference(&have).map(|&m| vec![m]));
    out
}

/// For each class of `from`, the sizes of its intersections with `onto`'s classes.
fn overlaps(from: &Classes, onto: &Classes) -> Vec<Vec<usize>> {
    let of = membership(onto);
    from.iter()
        .map(|class| {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for m in class {
                *counts.entry(of[m]).or_default() += 1;
            }
            counts.into_values().collect()
        })
        .collect()
}

pub fn reference_scores(pair: &Pair) -> ReferenceScores {
    let all: BTreeSet<u32> = universe(&pair.key).union(&universe(&pair.response)).copied().collect();
    let key = complete(&pair.key, &all);
    let response = complete(&pair.response, &all);
    let r = all.len() as u64;

    let side = |from: &Classes, onto: &Classes| {
        let parts = overlaps(from, onto);
        let classes = from.len() as u64;
        let touched: u64 = parts.iter().map(|p| p.len() as u64).sum();
        let largest: u64 = parts.iter().map(|p| *p.iter().max().unwrap() as u64).sum();
        let denominator = r - classes;
        ((r - touched, denominator), (largest - classes, denominator))
    };
    let (muc_recall, core_recall) = side(&key, &response);
    let (muc_precision, core_precision) = side(&response, &key);
    ReferenceScores {
        muc_recall,
        muc_precision,
        core_recall,
        core_precision,
    }
}

/// Classes in the scorer's canonical order: larger first, then by smallest
/// member compared as text.
pub fn canonical(classes: &Classes) -> Classes {
    let mut out: Classes = classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_by_key(|m| m.to_string());
            c
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].to_string().cmp(&b[0].to_string())));
    out
}

/// Σ|xc(K)| by sorting every non-empty (key, response) intersection once
/// (size descending, then key index, then response index) and taking each
/// one whose key and response are both still free.
pub fn greedy_cover_by_scan(pair: &Pair) -> usize {
    let all: BTreeSet<u32> = universe(&pair.key).union(&universe(&pair.response)).copied().collect();
    let key = canonical(&complete(&pair.key, &all));
    let response = canonical(&complete(&pair.response, &all));
    let resp_of = membership(&response);
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for (k, class) in key.iter().enumerate() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for m in class {
            *counts.entry(resp_of[m]).or_default() += 1;
        }
        cells.extend(counts.into_iter().map(|(r, size)| (size, k, r)));
    }
    cells.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_k = BTreeSet::new();
    let mut used_r = BTreeSet::new();
    let mut total = 0;
    for (size, k, r) in cells {
        if !used_k.contains(&k) && !used_r.contains(&r) {
            used_k.insert(k);
            used_r.insert(r);
            total += size;
        }
    }
    total
}

/// Largest Σ|K ∩ R| over all injective key-to-response bindings, by exhaustive search.
pub fn best_cover_exhaustive(key: &Classes, response: &Classes) -> usize {
    fn go(k: usize, sizes: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if k == sizes.len() {
            return 0;
        }
        let mut best = go(k + 1, sizes, used);
        for r in 0..used.len() {
            if !used[r] && sizes[k][r] > 0 {
                used[r] = true;
                best = best.max(sizes[k][r] + go(k + 1, sizes, used));
                used[r] = false;
            }
        }
        best
    }
    let resp_of = membership(response);
    let sizes: Vec<Vec<usize>> = key
        .iter()
        .map(|class| {
            let mut row = vec![0; response.len()];
            for m in class {
                if let Some(&r) = resp_of.get(m) {
                    row[r] += 1;
                }
            }
            row
        })
        .collect();
    go(0, &sizes, &mut vec![false; response.len()])
}

fn frac(r: &Ratio) -> Frac {
    (r.numerator(), r.denominator())
}

fn in_unit(r: &Ratio) -> bool {
    let (n, d) = r.exact();
    n <= d
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every score and both distributional figures lie in [0, 1].
pub fn check_bounds(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    for mode in [XpsMode::Reconstructed, XpsMode::Printed] {
        let r = evaluate(&key, &response, mode);
        for (name, t) in [("muc", r.muc), ("core", r.core), ("exclusive", r.exclusive)] {
            for (part, v) in [("recall", t.recall), ("precision", t.precision), ("f", t.f)] {
                ensure!(in_unit(&v), "{name} {part} = {v} ({mode})");
            }
        }
        ensure!(in_unit(&r.overlap), "overlap = {}", r.overlap);
        ensure!(in_unit(&r.d_error.magnitude), "d-error = {}", r.d_error.magnitude);
    }
    Ok(())
}

/// CRS ≤ MRS and CPS ≤ MPS, with equality on the recall side exactly when
/// every projection cell of every key class other than its core is a singleton.
pub fn check_severity(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    let r = evaluate(&key, &response, XpsMode::default());
    ensure!(
        r.core.recall.cmp_value(&r.muc.recall).is_le(),
        "CRS {} > MRS {}",
        r.core.recall,
        r.muc.recall
    );
    ensure!(
        r.core.precision.cmp_value(&r.muc.precision).is_le(),
        "CPS {} > MPS {}",
        r.core.precision,
        r.muc.precision
    );

    let all: BTreeSet<u32> = universe(&pair.key).union(&universe(&pair.response)).copied().collect();
    let parts = overlaps(&complete(&pair.key, &all), &complete(&pair.response, &all));
    let only_singletons_besides_core = parts.iter().all(|p| {
        let mut p = p.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p.iter().skip(1).all(|&s| s == 1)
    });
    let equal = r.core.recall.value_eq(&r.muc.recall);
    ensure!(
        equal == only_singletons_besides_core,
        "CRS = MRS is {equal} but non-core projections all singletons is {only_singletons_besides_core}"
    );
    Ok(())
}

/// MUC recall and precision numerators coincide, and the MUC and core
/// fractions match a from-scratch recount.
pub fn check_numerators(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    let r = evaluate(&key, &response, XpsMode::default());
    ensure!(
        r.muc.recall.numerator() == r.muc.precision.numerator(),
        "MUC numerators differ: {} vs {}",
        r.muc.recall,
        r.muc.precision
    );
    let want = reference_scores(pair);
    let got = ReferenceScores {
        muc_recall: frac(&r.muc.recall),
        muc_precision: frac(&r.muc.precision),
        core_recall: frac(&r.core.recall),
        core_precision: frac(&r.core.precision),
    };
    ensure!(got == want, "scores {got:?}, recount {want:?}");
    Ok(())
}

/// Adding one fresh singleton mention to both sides leaves the MUC and core
/// fractions untouched.
pub fn check_extension_invariance(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    let fresh = || std::iter::once(coref_eval::MentionId::from("fresh"));
    let before = evaluate(&key, &response, XpsMode::default());
    let after = evaluate(&key.with_singletons(fresh()), &response.with_singletons(fresh()), XpsMode::default());
    for (name, a, b) in [
        ("MRS", before.muc.recall, after.muc.recall),
        ("MPS", before.muc.precision, after.muc.precision),
        ("CRS", before.core.recall, after.core.recall),
        ("CPS", before.core.precision, after.core.precision),
    ] {
        ensure!(frac(&a) == frac(&b), "{name} {a} became {b}");
    }
    Ok(())
}

/// A response equal to the key scores one everywhere, provided the key has a
/// class of two or more.
pub fn check_identity(classes: &Classes) -> Result<(), String> {
    let p = partition(classes);
    if p.class_count() == p.mention_count() {
        return Ok(());
    }
    for mode in [XpsMode::Reconstructed, XpsMode::Printed] {
        let r = evaluate(&p, &p, mode);
        for (name, t) in [("muc", r.muc), ("core", r.core), ("exclusive", r.exclusive)] {
            ensure!(
                t.recall.is(1, 1) && t.precision.is(1, 1) && t.f.is(1, 1),
                "{name} = ({}, {}, {}) ({mode})",
                t.recall,
                t.precision,
                t.f
            );
        }
        ensure!(r.overlap.is(1, 1), "overlap {}", r.overlap);
        ensure!(
            r.d_error.label == DErrorLabel::Balanced && r.d_error.magnitude.is(0, 1),
            "d-error {:?}",
            r.d_error
        );
    }
    Ok(())
}

/// The greedy binding is injective, uses real intersections, binds at most
/// |P_K| key classes and agrees with a one-pass scan of the sorted cells.
pub fn check_assignment(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    let (key, response, _) = align_and_extend(&key, &response);
    let table = IntersectionTable::new(&key, &response).map_err(|e| e.to_string())?;
    let a = exclusive_assignment(&table);

    ensure!(a.order.len() <= key.class_count(), "{} rounds for {} key classes", a.order.len(), key.class_count());
    let bound: Vec<(usize, usize)> = a
        .bindings
        .iter()
        .enumerate()
        .filter_map(|(k, b)| b.as_ref().map(|b| (k, b.response)))
        .collect();
    ensure!(bound.len() == a.order.len(), "order lists {} keys, {} bound", a.order.len(), bound.len());
    let responses: BTreeSet<usize> = bound.iter().map(|&(_, r)| r).collect();
    ensure!(responses.len() == bound.len(), "a response class is bound twice");
    for r in 0..response.class_count() {
        ensure!(
            responses.contains(&r) != a.unassigned_responses.contains(&r),
            "response {r} both bound and unassigned, or neither"
        );
    }
    for (k, binding) in a.bindings.iter().enumerate() {
        let Some(b) = binding else { continue };
        ensure!(!b.members.is_empty(), "empty binding for key {k}");
        let kc: BTreeSet<_> = key.class(k).unwrap().iter().collect();
        let rc: BTreeSet<_> = response.class(b.response).unwrap().iter().collect();
        let inter: BTreeSet<_> = kc.intersection(&rc).copied().collect();
        let members: BTreeSet<_> = b.members.iter().collect();
        ensure!(members == inter, "binding of key {k} is not K ∩ R");
    }
    let scan = greedy_cover_by_scan(pair);
    ensure!(a.covered() == scan, "greedy covers {}, sorted scan {scan}", a.covered());
    Ok(())
}

/// With identical mention sets the reconstructed XPS equals XRS exactly.
pub fn check_reconstructed_symmetry(pair: &Pair) -> Result<(), String> {
    if !pair.same_universe() {
        return Ok(());
    }
    let (key, response) = pair.partitions();
    let r = evaluate(&key, &response, XpsMode::Reconstructed);
    ensure!(
        frac(&r.exclusive.recall) == frac(&r.exclusive.precision),
        "XRS {} vs XPS {}",
        r.exclusive.recall,
        r.exclusive.precision
    );
    Ok(())
}

/// Overlap is symmetric; swapping arguments flips the d-error label and keeps its magnitude.
pub fn check_distribution_symmetry(pair: &Pair) -> Result<(), String> {
    let (key, response) = pair.partitions();
    let dk = SizeDistribution::of(&key);
    let dr = SizeDistribution::of(&response);
    let (a, b) = (overlapping(&dk, &dr), overlapping(&dr, &dk));
    ensure!(frac(&a) == frac(&b), "overlap {a} vs {b}");
    let (x, y) = (d_error(&dk, &dr), d_error(&dr, &dk));
    ensure!(x.label.flipped() == y.label, "labels {:?} and {:?}", x.label, y.label);
    ensure!(x.magnitude.value_eq(&y.magnitude), "magnitudes {} and {}", x.magnitude, y.magnitude);
    Ok(())
}

/// A COREF document over `n` elements with random nesting, attributes and
/// filler, where element `i` has id `m{i}` and points at `links[i]`.
pub struct LinkedDocument {
    pub text: String,
    pub links: Vec<Option<usize>>,
}

pub fn random_link_document<R: Rng>(rng: &mut R, n: usize) -> LinkedDocument {
    let links: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if n > 1 && rng.gen_bool(0.6) {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                Some(j)
            } else {
                None
            }
        })
        .collect();

    let mut text = String::from("<DOC>\n<TEXT>\n");
    let mut open = 0usize;
    for (i, link) in links.iter().enumerate() {
        while open > 0 && rng.gen_bool(0.4) {
            text.push_str("</COREF> ");
            open -= 1;
        }
        if rng.gen_bool(0.1) {
            text.push_str("<!-- note --> ");
        }
        if rng.gen_bool(0.2) {
            text.push_str("the ");
        }
        text.push_str(&format!("<COREF ID=\"m{i}\""));
        if let Some(j) = link {
            text.push_str(&format!(" REF=\"m{j}\""));
        }
        if rng.gen_bool(0.3) {
            text.push_str(" TYPE=\"IDENT\"");
        }
        if rng.gen_bool(0.2) {
            text.push_str(&format!(" MIN=\"w{i}\""));
        }
        text.push_str(&format!(">w{i} "));
        if rng.gen_bool(0.3) {
            open += 1;
        } else {
            text.push_str("</COREF> ");
        }
    }
    for _ in 0..open {
        text.push_str("</COREF>");
    }
    text.push_str("\n</TEXT>\n</DOC>\n");
    LinkedDocument { text, links }
}

/// Connected components of the undirected link graph, found by breadth-first search.
pub fn link_components(links: &[Option<usize>]) -> BTreeSet<BTreeSet<String>> {
    let n = links.len();
    let mut adjacent = vec![Vec::new(); n];
    for (i, link) in links.iter().enumerate() {
        if let Some(j) = *link {
            adjacent[i].push(j);
            adjacent[j].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut out = BTreeSet::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut component = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            component.insert(format!("m{v}"));
            for &w in &adjacent[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.insert(component);
    }
    out
}

/// Parsed classes (singletons included) equal the link components.
pub fn check_sgml_closure(doc: &LinkedDocument) -> Result<(), String> {
    let parsed = coref_eval::io::parse_muc_sgml(doc.text.as_bytes()).map_err(|e| e.to_string())?;
    ensure!(parsed.mentions.len() == doc.links.len(), "{} mentions parsed", parsed.mentions.len());
    let p = parsed.partition().map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<String>> = p
        .classes()
        .iter()
        .map(|c| c.iter().map(|m| m.as_str().to_owned()).collect())
        .collect();
    ensure!(got == link_components(&doc.links), "classes differ from link components");
    Ok(())
}

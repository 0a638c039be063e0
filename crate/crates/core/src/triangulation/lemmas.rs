//! Executable forms of the structural statements about the dual graph.
//! Every check returns `Err(witness)` describing the first violation found.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::Rng;

use super::blocks::{ascends_on, compare_sets, unique_ascending_representative, Block};
use super::graph::{shift_down, EdgeKind};
use super::Triangulation;
use crate::perm::{IndexSet, Permutation};

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

/// Label permutations are exactly `{u : des(u⁻¹) = k-1}`.
pub fn check_vertex_set(t: &Triangulation) -> Check {
    let m = t.n() - 1;
    let got: BTreeSet<&Permutation> = t.simplices.iter().map(|s| &s.label_perm).collect();
    ensure(got.len() == t.simplices.len(), || {
        "repeated label permutation".into()
    })?;
    let want: BTreeSet<Permutation> = Permutation::all(m)
        .filter(|u| u.inverse().des() + 1 == t.k())
        .collect();
    ensure(
        got.len() == want.len() && want.iter().all(|u| got.contains(u)),
        || {
            let missing = want.iter().find(|u| !got.contains(u));
            match missing {
                Some(u) => format!("{u} has des(u⁻¹) = k-1 but labels no simplex"),
                None => "label set is larger than expected".into(),
            }
        },
    )
}

/// Adjacency described on Γ-avatars (swap adjacent non-consecutive entries,
/// or move a last letter other than `1, m` to the front) matches the
/// geometric adjacency.
pub fn check_gamma_edges(t: &Triangulation) -> Check {
    let g = &t.graph;
    let m = g.m();
    let index: HashMap<&Permutation, usize> = (0..g.len())
        .map(|v| (&g.node(v).avatars.gamma, v))
        .collect();
    let mut predicted = BTreeSet::new();
    for (&u, &a) in &index {
        let w = u.letters();
        for i in 0..m.saturating_sub(1) {
            if w[i].abs_diff(w[i + 1]) != 1 {
                let mut x = w.to_vec();
                x.swap(i, i + 1);
                if let Some(&b) = index.get(&Permutation::new(x).unwrap()) {
                    predicted.insert((a.min(b), a.max(b)));
                }
            }
        }
        if m >= 2 && w[m - 1] != 1 && w[m - 1] != m {
            let mut x = vec![w[m - 1]];
            x.extend_from_slice(&w[..m - 1]);
            if let Some(&b) = index.get(&Permutation::new(x).unwrap()) {
                predicted.insert((a.min(b), a.max(b)));
            }
        }
    }
    let geometric: BTreeSet<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
    ensure(predicted == geometric, || {
        let (a, b) = *predicted.symmetric_difference(&geometric).next().unwrap();
        format!(
            "Γ-avatars {} and {} disagree on adjacency",
            g.node(a).avatars.gamma,
            g.node(b).avatars.gamma
        )
    })
}

/// Removed lower facets sit exactly on simplices whose label permutation ends in `1`.
pub fn check_boundary(t: &Triangulation) -> Check {
    let m = t.n() - 1;
    for (v, s) in t.simplices.iter().enumerate() {
        let expected = t.k() > 1 && s.label_perm.at(m) == 1;
        ensure(
            s.boundary_removed == expected && t.graph.has_phantom(v) == expected,
            || {
                format!(
                    "boundary flag of {} is {}",
                    s.label_perm, s.boundary_removed
                )
            },
        )?;
    }
    Ok(())
}

/// Descent sets under a cyclic shift, for every permutation of `1..=m`:
/// with `v = u - 1 (mod m)` and `v_i = m`, `Des(u)` is `Des(v) \ {1}` when
/// `i = 1`, `Des(v) ∪ {m-1}` when `i = m`, and `Des(v) ∪ {i-1} \ {i}` otherwise.
pub fn check_shift_descents(m: usize) -> Check {
    if m < 2 {
        return Ok(());
    }
    for v in Permutation::all(m) {
        let u = Permutation::new(v.letters().iter().map(|&x| x % m + 1).collect()).unwrap();
        let i = v.position_of(m);
        let mut expected = v.descent_set();
        if i == 1 {
            expected.remove(1);
        } else if i == m {
            expected.insert(m - 1);
        } else {
            expected.insert(i - 1);
            expected.remove(i);
        }
        ensure(u.descent_set() == expected, || {
            format!("v = {v}, u = {u}: Des(u) = {}", u.descent_set())
        })?;
    }
    Ok(())
}

/// P-edges of type one keep the descent set and move the leading descent
/// set as prescribed; type two edges stay at the same descent number.
pub fn check_p_edges(t: &Triangulation) -> Check {
    let g = &t.graph;
    for e in g.edges() {
        let (pa, pb) = (&g.node(e.a).avatars.p, &g.node(e.b).avatars.p);
        match e.kind {
            EdgeKind::TypeOne => {
                let i = e.label;
                ensure(pa.descent_set() == pb.descent_set(), || {
                    format!("e_{i} {pa} -- {pb}: descent sets differ")
                })?;
                for (u, v) in [(pa, pb), (pb, pa)] {
                    let (lu, lv) = (u.leading_descent_set(), v.leading_descent_set());
                    let expected = match (lu.contains(i), lu.contains(i + 1)) {
                        (true, false) => {
                            let mut x = lu.clone();
                            x.remove(i);
                            x.insert(i + 1);
                            x
                        }
                        (false, true) => {
                            let mut x = lu.clone();
                            x.remove(i + 1);
                            x.insert(i);
                            x
                        }
                        _ => lu.clone(),
                    };
                    ensure(lv == expected, || {
                        format!("e_{i} {u} -- {v}: LdDes {lu} → {lv}")
                    })?;
                }
            }
            EdgeKind::TypeTwo => {
                let (lower, upper) = if shift_down(pa) == *pb {
                    (pa, pb)
                } else {
                    (pb, pa)
                };
                let i = upper.position_of(upper.len());
                ensure(
                    i != 1 && i != upper.len() && lower.des() == upper.des(),
                    || format!("e_0 {lower} -- {upper}: letter m at position {i}"),
                )?;
            }
        }
    }
    Ok(())
}

/// `Rexc(Q) = LdDes(P)`, `rexc(Q) = exc(S) = k-1`, `|Des(P)| = k-1`.
pub fn check_avatar_statistics(t: &Triangulation) -> Check {
    for node in t.graph.nodes() {
        let a = &node.avatars;
        ensure(
            a.q.reverse_excedance_set() == a.p.leading_descent_set(),
            || format!("Q = {}: Rexc differs from LdDes of P = {}", a.q, a.p),
        )?;
        ensure(
            a.q.rexc() + 1 == t.k() && a.s.exc() + 1 == t.k() && node.block.big.len() + 1 == t.k(),
            || format!("Q = {}: statistics do not match k = {}", a.q, t.k()),
        )?;
    }
    Ok(())
}

/// Incoming type one labels are `B_v ∪ (C_v ∩ Des v)`; an incoming `e_0`
/// (internal or removed facet) exists iff `v_m ≠ m` (for `k > 1`).
pub fn check_incoming_description(t: &Triangulation) -> Check {
    let g = &t.graph;
    let m = g.m();
    for v in 0..g.len() {
        let q = &g.node(v).avatars.q;
        let (_, b, c) = q.abc_decomposition();
        let des = q.descent_set();
        let expected: IndexSet = b.union(&c.intersection(&des));
        let mut type_one = IndexSet::new();
        let mut type_two = g.has_phantom(v);
        for e in g.in_edges(v) {
            let e = &g.edges()[e];
            match e.kind {
                EdgeKind::TypeOne => {
                    type_one.insert(e.label);
                }
                EdgeKind::TypeTwo => type_two = true,
            }
        }
        ensure(type_one == expected, || {
            format!("Q = {q}: incoming labels {type_one}, expected {expected}")
        })?;
        if t.k() > 1 {
            ensure(type_two == (q.at(m) != m), || {
                format!("Q = {q}: incoming e_0 is {type_two}")
            })?;
        }
    }
    Ok(())
}

/// Block changes along directed edges `u → v`: `e_0` raises the big block,
/// `i ∈ B_v` lowers the small block, `i ∈ C_v` stays in it.
pub fn check_block_changes(t: &Triangulation) -> Check {
    let g = &t.graph;
    for e in g.edges() {
        let (u, v) = (e.from(), e.to());
        let (bu, bv) = (&g.node(u).block, &g.node(v).block);
        let q = &g.node(v).avatars.q;
        let (_, b, c) = q.abc_decomposition();
        let i = e.label;
        let ok = if e.kind == EdgeKind::TypeTwo {
            compare_sets(&bv.big, &bu.big) == Some(Ordering::Greater)
        } else if b.contains(i) {
            bu.big == bv.big && compare_sets(&bv.small, &bu.small) == Some(Ordering::Less)
        } else if c.contains(i) {
            bu == bv
        } else {
            false
        };
        ensure(ok, || {
            format!(
                "e_{i} {} → {q}: blocks ({bu}) → ({bv})",
                g.node(u).avatars.q
            )
        })?;
    }
    Ok(())
}

/// Type one edges `(u, v)` with `i ∈ C_u`, both ways round.
fn small_block_edges(t: &Triangulation) -> Vec<(usize, Permutation, Permutation)> {
    let g = &t.graph;
    let mut out = Vec::new();
    for e in g.edges().iter().filter(|e| e.kind == EdgeKind::TypeOne) {
        for (x, y) in [(e.a, e.b), (e.b, e.a)] {
            let (u, v) = (&g.node(x).avatars.q, &g.node(y).avatars.q);
            if u.abc_decomposition().2.contains(e.label) {
                out.push((e.label, u.clone(), v.clone()));
            }
        }
    }
    out
}

/// For `e_i = (u, v)` with `i ∈ C_u` and `i ∈ Des(u)`: `i ∉ Des(v)` and
/// `inv(v) ≤ inv(u)`.
pub fn check_weak(t: &Triangulation) -> Check {
    for (i, u, v) in small_block_edges(t) {
        if u.at(i) > u.at(i + 1) {
            ensure(
                v.at(i) < v.at(i + 1) && v.inversion_count() <= u.inversion_count(),
                || format!("e_{i} ({u}, {v})"),
            )?;
        }
    }
    Ok(())
}

/// For `e_i = (u, v)` with `i ∈ C_u`: `u = s_i(v)` if the cycle types
/// differ, `u = t_i s_i(v)` otherwise.
pub fn check_single(t: &Triangulation) -> Check {
    for (i, u, v) in small_block_edges(t) {
        let s = v.swap_positions(i).unwrap();
        let expected = if u.cycle_type() != v.cycle_type() {
            s
        } else {
            s.swap_letters(i).unwrap()
        };
        ensure(u == expected, || {
            format!("e_{i} ({u}, {v}): expected u = {expected}")
        })?;
    }
    Ok(())
}

/// Along every directed path inside one small block, with `E` the set of
/// labels used, the `E`-restricted inversion count of the end exceeds that
/// of the start.
pub fn check_strict(t: &Triangulation) -> Check {
    let g = &t.graph;
    for start in 0..g.len() {
        let mut stack: Vec<(usize, IndexSet)> = vec![(start, IndexSet::new())];
        while let Some((v, labels)) = stack.pop() {
            for e in g.out_edges(v) {
                let edge = &g.edges()[e];
                let w = edge.to();
                if edge.kind != EdgeKind::TypeOne || g.node(w).block != g.node(start).block {
                    continue;
                }
                let mut next = labels.clone();
                next.insert(edge.label);
                let (qs, qw) = (&g.node(start).avatars.q, &g.node(w).avatars.q);
                ensure(
                    qs.inversion_count_restricted(&next) < qw.inversion_count_restricted(&next),
                    || format!("path {qs} ⇝ {qw} with labels {next}"),
                )?;
                stack.push((w, next));
            }
        }
    }
    Ok(())
}

/// Brute-force orbit scan: exactly one element of the `t_i`-orbit of `w`
/// has `F⁻¹` ascending on `ascents`, and the standardization finds it.
pub fn check_pureperm_case(w: &Permutation, ascents: &IndexSet) -> Check {
    let mut seen: HashSet<Permutation> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(u) = queue.pop_front() {
        for i in ascents.iter() {
            let x = u.swap_letters(i).unwrap();
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    let good: Vec<&Permutation> = seen
        .iter()
        .filter(|u| ascends_on(&u.foata_inverse(), ascents))
        .collect();
    ensure(good.len() == 1, || {
        format!(
            "w = {w}, I = {ascents}: {} ascending orbit members",
            good.len()
        )
    })?;
    let got = unique_ascending_representative(w, ascents);
    ensure(&got == good[0], || {
        format!(
            "w = {w}, I = {ascents}: standardized {got}, orbit scan {}",
            good[0]
        )
    })
}

/// `samples` random `(w, I)` with `1 ≤ m ≤ max_m`.
pub fn check_pureperm<R: Rng>(rng: &mut R, samples: usize, max_m: usize) -> Check {
    for _ in 0..samples {
        let m = rng.gen_range(1..=max_m);
        let w = Permutation::random(m, rng);
        let ascents: IndexSet = (1..m).filter(|_| rng.gen_bool(0.5)).collect();
        check_pureperm_case(&w, &ascents)?;
    }
    Ok(())
}

/// Sources of the subgraph on simplices containing a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSources {
    pub nodes: Vec<usize>,
    pub sources: Vec<usize>,
    pub all_reachable: bool,
}

/// Restrict to simplices containing `face` and find in-degree-0 nodes,
/// counting edges internal to the restriction and the removed-facet marker
/// of simplices whose removed facet contains a non-empty `face`.
pub fn face_subgraph_sources(t: &Triangulation, face: &[usize]) -> FaceSources {
    let nodes: Vec<usize> = (0..t.simplices.len())
        .filter(|&v| t.simplices[v].contains_all(face))
        .collect();
    let inside: HashSet<usize> = nodes.iter().copied().collect();
    subgraph_sources(t, &nodes, &inside, |e| inside.contains(&e.from()), face)
}

fn subgraph_sources(
    t: &Triangulation,
    nodes: &[usize],
    inside: &HashSet<usize>,
    keep: impl Fn(&super::DualEdge) -> bool,
    face: &[usize],
) -> FaceSources {
    let g = &t.graph;
    let face_removed = !face.is_empty() && face.iter().all(|&x| t.poset.on_lower_hyperplane(x));
    let sources: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&v| {
            let internal = g.in_edges(v).any(|e| keep(&g.edges()[e]));
            let phantom = g.has_phantom(v) && face_removed;
            !internal && !phantom
        })
        .collect();
    let mut all_reachable = false;
    if let [s] = sources.as_slice() {
        let mut seen = HashSet::from([*s]);
        let mut queue = VecDeque::from([*s]);
        while let Some(v) = queue.pop_front() {
            for e in g.out_edges(v) {
                let edge = &g.edges()[e];
                let w = edge.to();
                if inside.contains(&w) && keep(edge) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        all_reachable = seen.len() == nodes.len();
    }
    FaceSources {
        nodes: nodes.to_vec(),
        sources,
        all_reachable,
    }
}

/// Every face of the half-open complex. The empty face belongs to it only
/// for `k = 1`; otherwise it lies in the removed lower facet.
pub fn sweep_faces(t: &Triangulation) -> Vec<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &t.simplices {
        let v = s.sorted_vertices();
        for mask in 1usize..1 << v.len() {
            let f: Vec<usize> = (0..v.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            let removed = t.k() > 1 && f.iter().all(|&x| t.poset.on_lower_hyperplane(x));
            if !removed {
                faces.insert(f);
            }
        }
    }
    let mut out = Vec::new();
    if t.k() == 1 {
        out.push(Vec::new());
    }
    out.extend(faces);
    out
}

/// Connected components of the small blocks: nodes joined by edges whose
/// endpoints share a block. Returns a component id per node.
pub fn block_components(t: &Triangulation) -> Vec<usize> {
    let g = &t.graph;
    let mut comp = vec![usize::MAX; g.len()];
    let mut next = 0;
    for start in 0..g.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                let w = g.edges()[e].other(v);
                if comp[w] == usize::MAX && g.node(w).block == g.node(v).block {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// For every face `F`: the simplices containing `F` have one source reaching
/// all of them; so does their part in each connected small block; and
/// exactly one connected small block met by them has a minimal block key.
pub fn check_face_sources(t: &Triangulation) -> Check {
    let g = &t.graph;
    let comp = block_components(t);
    for face in sweep_faces(t) {
        let r = face_subgraph_sources(t, &face);
        ensure(r.sources.len() == 1 && r.all_reachable, || {
            format!(
                "face {face:?}: {} sources, all reachable = {}",
                r.sources.len(),
                r.all_reachable
            )
        })?;

        let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
        for &v in &r.nodes {
            by_comp.entry(comp[v]).or_default().push(v);
        }
        for members in by_comp.values() {
            let inside: HashSet<usize> = members.iter().copied().collect();
            let s = subgraph_sources(t, members, &inside, |e| inside.contains(&e.from()), &face);
            ensure(s.sources.len() == 1 && s.all_reachable, || {
                format!(
                    "face {face:?}, block ({}): {} sources, all reachable = {}",
                    g.node(members[0]).block,
                    s.sources.len(),
                    s.all_reachable
                )
            })?;
        }

        let keys: Vec<&Block> = by_comp.values().map(|m| &g.node(m[0]).block).collect();
        let minimal = keys
            .iter()
            .filter(|b| {
                !keys
                    .iter()
                    .any(|c| c.partial_cmp(b) == Some(Ordering::Less))
            })
            .count();
        ensure(minimal == 1, || {
            format!("face {face:?}: {minimal} minimal connected small blocks")
        })?;
    }
    Ok(())
}

pub type NamedCheck = (&'static str, fn(&Triangulation) -> Check);

/// Structural checks by name; the exhaustive ones enumerate faces, paths
/// or all permutations and are meant for small `n`.
pub fn checks(exhaustive: bool) -> Vec<NamedCheck> {
    let mut out: Vec<NamedCheck> = vec![
        ("vertex-set", check_vertex_set),
        ("boundary", check_boundary),
        ("p-edges", check_p_edges),
        ("avatar-statistics", check_avatar_statistics),
        ("incoming-description", check_incoming_description),
        ("block-changes", check_block_changes),
        ("weak", check_weak),
        ("single", check_single),
    ];
    if exhaustive {
        out.push(("gamma-edges", check_gamma_edges));
        out.push(("strict-paths", check_strict));
        out.push(("face-sources", check_face_sources));
    }
    out
}

pub const EXHAUSTIVE_CHECKS: [&str; 3] = ["gamma-edges", "strict-paths", "face-sources"];

/// Run [`checks`] on one triangulation.
pub fn suite(t: &Triangulation, exhaustive: bool) -> Vec<(&'static str, Check)> {
    checks(exhaustive)
        .into_iter()
        .map(|(name, f)| (name, f(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn suite_35() {
        let t = Triangulation::build(3, 5).unwrap();
        for (name, result) in suite(&t, true) {
            assert_eq!(result, Ok(()), "{name}");
        }
    }

    #[test]
    fn shift_descents() {
        for m in 1..=6 {
            assert_eq!(check_shift_descents(m), Ok(()));
        }
    }

    #[test]
    fn single_example() {
        // e_3 with differing cycle types, e_1 with equal ones
        let u = p("4321");
        assert_eq!(p("4312").swap_positions(3).unwrap(), u);
        assert_eq!(
            p("3412")
                .swap_positions(1)
                .unwrap()
                .swap_letters(1)
                .unwrap(),
            u
        );
    }

    #[test]
    fn pureperm_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(check_pureperm(&mut rng, 200, 7), Ok(()));
    }

    #[test]
    fn pureperm_examples() {
        assert_eq!(
            check_pureperm_case(&p("253496187"), &IndexSet::from([2, 3, 5, 7, 8])),
            Ok(())
        );
        assert_eq!(
            check_pureperm_case(&p("4231"), &IndexSet::from([1, 3])),
            Ok(())
        );
    }

    #[test]
    fn face_sources_extremes() {
        let t = Triangulation::build(3, 5).unwrap();
        let whole = face_subgraph_sources(&t, &[]);
        assert_eq!(whole.nodes.len(), 11);
        assert_eq!(whole.sources.len(), 1);
        assert_eq!(t.graph.node(whole.sources[0]).avatars.q, p("2413"));
        assert!(sweep_faces(&t).iter().all(|f| !f.is_empty()));
        let single = Triangulation::build(1, 4).unwrap();
        assert_eq!(sweep_faces(&single)[0], Vec::<usize>::new());
        let one = face_subgraph_sources(&t, &t.simplices[4].vertices);
        assert_eq!(one.nodes, vec![4]);
        assert_eq!(one.sources, vec![4]);
    }
}

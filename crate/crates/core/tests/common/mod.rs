#![allow(dead_code)]

use hatp3::classify::EqSystem;
use hatp3::graph::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Small graphs (at most 10 vertices) used wherever an exhaustive oracle is
/// affordable.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![];
    let und = |n: usize, e: &[(u32, u32)]| Graph::from_edges(n, e, false);
    for n in 3..=10u32 {
        let cyc: Vec<(u32, u32)> = (0..n).map(|x| (x, (x + 1) % n)).collect();
        out.push((format!("C{n}"), und(n as usize, &cyc)));
        if n <= 8 {
            out.push((format!("directed C{n}"), Graph::from_edges(n as usize, &cyc, true)));
        }
        let path: Vec<(u32, u32)> = (0..n - 1).map(|x| (x, x + 1)).collect();
        out.push((format!("P{n}"), und(n as usize, &path)));
        let star: Vec<(u32, u32)> = (1..n).map(|x| (0, x)).collect();
        out.push((format!("K1,{}", n - 1), und(n as usize, &star)));
        let mut wheel = star.clone();
        wheel.extend((1..n).map(|x| (x, if x + 1 == n { 1 } else { x + 1 })));
        if n >= 5 {
            out.push((format!("W{}", n - 1), und(n as usize, &wheel)));
        }
    }
    for n in 1..=8u32 {
        let k: Vec<(u32, u32)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        out.push((format!("K{n}"), und(n as usize, &k)));
    }
    for (m, n) in [(2, 3), (3, 3), (2, 5), (4, 4), (3, 5)] {
        let e: Vec<(u32, u32)> = (0..m).flat_map(|x| (m..m + n).map(move |y| (x, y))).collect();
        out.push((format!("K{m},{n}"), und((m + n) as usize, &e)));
    }
    out.push(("empty 5".into(), und(5, &[])));
    let petersen: Vec<(u32, u32)> = (0..5)
        .flat_map(|x| [(x, (x + 1) % 5), (x, x + 5), (x + 5, (x + 2) % 5 + 5)])
        .collect();
    out.push(("Petersen".into(), und(10, &petersen)));
    for n in 3..=5u32 {
        let prism: Vec<(u32, u32)> = (0..n)
            .flat_map(|x| [(x, (x + 1) % n), (x + n, (x + 1) % n + n), (x, x + n)])
            .collect();
        out.push((format!("prism {n}"), und(2 * n as usize, &prism)));
    }
    let cube: Vec<(u32, u32)> = (0..8u32)
        .flat_map(|x| (0..3).map(move |b| (x, x ^ (1 << b))))
        .filter(|&(x, y)| x < y)
        .collect();
    out.push(("Q3".into(), und(8, &cube)));
    out.push(("2K3".into(), und(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for t in 0..60 {
        let n = rng.gen_range(4..=10usize);
        let density = [0.2, 0.35, 0.5, 0.7][t % 4];
        let directed = t % 5 == 4;
        let mut e = vec![];
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                if (directed && x != y || x < y) && rng.gen_bool(density) {
                    e.push((x, y));
                }
            }
        }
        out.push((format!("random {t} (n={n})"), Graph::from_edges(n, &e, directed)));
    }
    out.extend(cyclic_cayley_corpus(10));
    out
}

/// Every Cay(Z_n, S) with `3 <= n <= max_n` and `S` a nonempty symmetric
/// subset of `Z_n \ {0}`.
pub fn cyclic_cayley_corpus(max_n: u32) -> Vec<(String, Graph)> {
    let mut out = vec![];
    for n in 3..=max_n {
        let reps: Vec<u32> = (1..=n / 2).collect();
        for mask in 1u32..(1 << reps.len()) {
            let s: Vec<u32> = reps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, &r)| [r, n - r])
                .collect();
            let e: Vec<(u32, u32)> = (0..n).flat_map(|x| s.iter().map(move |&r| (x, (x + r) % n))).collect();
            out.push((
                format!("Cay(Z{n}, mask {mask:b})"),
                Graph::from_edges(n as usize, &e, false),
            ));
        }
    }
    out
}

/// All automorphisms by backtracking over vertex images, checking adjacency
/// and non-adjacency against every already-placed vertex.
pub fn brute_force_automorphisms(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_arc(u, v)).collect()).collect();
    let mut out = vec![];
    let mut img = vec![u32::MAX; n];
    let mut used = vec![false; n];
    fn go(v: usize, adj: &[Vec<bool>], img: &mut [u32], used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        let n = adj.len();
        if v == n {
            out.push(img.to_vec());
            return;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            let ok = (0..v).all(|u| {
                let iu = img[u] as usize;
                adj[u][v] == adj[iu][w] && adj[v][u] == adj[w][iu]
            });
            if ok {
                used[w] = true;
                img[v] = w as u32;
                go(v + 1, adj, img, used, out);
                used[w] = false;
            }
        }
    }
    go(0, &adj, &mut img, &mut used, &mut out);
    out
}

/// Number of orbits of `perms` on `items` under `act`.
pub fn orbit_count<T: Copy + Ord>(perms: &[Vec<u32>], items: &[T], act: impl Fn(&[u32], T) -> T) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0;
    for &x in items {
        if seen.contains(&x) {
            continue;
        }
        count += 1;
        for g in perms {
            seen.insert(act(g, x));
        }
    }
    count
}

/// The three congruences of each system, written out with everything
/// multiplied by 2 so that no inverse of 2 is needed. Returns true when all
/// three vanish mod p.
pub fn congruences_hold(system: EqSystem, p: i64, i: i64, j: i64, k: i64) -> bool {
    let m = |x: i64| x.rem_euclid(p) == 0;
    match system {
        EqSystem::V6 => m(i * j - 1) && m(i + j * j) && m(2 * (-i * i * j + k * (j - i)) - i * j * j * (j - 1)),
        EqSystem::V8Klein => {
            m(i * i + j * j - 1)
                && m(2 * i * j)
                && m(2 * (-i * j * j * j + k * (i * i - j * j + i - j) - i * j * j)
                    - i * i * j * (i - 1)
                    - i * j * j * (j - 1))
        }
        EqSystem::V8Cyclic => {
            let s = i + j * j;
            m(i * s - 1)
                && m(j * (2 * i + j * j))
                && m(
                    2 * (i * i * i * j + (k - i * i * j) * s - i * k * (j - i)) + i * i * j * j * (j - 1)
                        - i * j * s * (s - 1),
                )
        }
    }
}

/// Sorted solution triples by a plain triple loop.
pub fn brute_solutions(system: EqSystem, p: u32) -> Vec<(u32, u32, u32)> {
    let mut out = vec![];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                if congruences_hold(system, p as i64, i as i64, j as i64, k as i64) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

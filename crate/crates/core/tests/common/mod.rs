//! Oracles shared by the integration tests.  Everything here is computed
//! independently of the library's own algorithms (brute force, textbook
//! definitions) so that the main code paths are checked against a second
//! implementation rather than against themselves.

use cartier_core::FinCommMonoid;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// All permutations of `items` (Heap's algorithm).
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn go(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, arr, out);
            if k % 2 == 0 {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    let mut arr = items.to_vec();
    let mut out = Vec::new();
    go(arr.len(), &mut arr, &mut out);
    out
}

/// Every commutative monoid on `n` elements, up to isomorphism, with the
/// identity relabeled to index 0.  Enumeration is a plain backtracking
/// search over the upper triangle of the multiplication table with
/// incremental associativity pruning; isomorphs are collapsed by taking
/// the lexicographically smallest table over all relabelings that fix the
/// identity.
pub fn commutative_monoids(n: usize) -> Vec<FinCommMonoid> {
    assert!(n >= 1);
    const UNSET: usize = usize::MAX;
    let mut table = vec![vec![UNSET; n]; n];
    for j in 0..n {
        table[0][j] = j;
        table[j][0] = j;
    }
    // Unknown cells, upper triangle among non-identity elements.
    let mut cells = Vec::new();
    for i in 1..n {
        for j in i..n {
            cells.push((i, j));
        }
    }
    let perms: Vec<Vec<usize>> = permutations(&(1..n).collect::<Vec<usize>>());

    // Associativity over all triples whose intermediate products are
    // already defined.  Triples containing the identity hold by
    // construction but are cheap enough to scan anyway.
    fn consistent(table: &[Vec<usize>], n: usize) -> bool {
        const UNSET: usize = usize::MAX;
        for a in 1..n {
            for b in a..n {
                let ab = table[a][b];
                if ab == UNSET {
                    continue;
                }
                for c in b..n {
                    let bc = table[b][c];
                    if bc == UNSET {
                        continue;
                    }
                    let left = table[ab][c];
                    let right = table[a][bc];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                    // Commutativity makes the six orderings of {a,b,c}
                    // collapse to the two bracketings above, but (ac)b
                    // against a(cb) is still an independent equation.
                    let ac = table[a][c];
                    if ac == UNSET {
                        continue;
                    }
                    let mid = table[ac][b];
                    if left != UNSET && mid != UNSET && left != mid {
                        return false;
                    }
                    if right != UNSET && mid != UNSET && right != mid {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn canonical(table: &[Vec<usize>], n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for perm in perms {
            // Full relabeling: position 0 stays, non-identity element i
            // goes to map[i].
            let mut map = vec![0usize; n];
            for (slot, &img) in perm.iter().enumerate() {
                map[slot + 1] = img;
            }
            let mut flat = vec![0usize; n * n];
            for i in 0..n {
                for j in 0..n {
                    flat[map[i] * n + map[j]] = map[table[i][j]];
                }
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
        best.unwrap()
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    fn search(
        idx: usize,
        cells: &[(usize, usize)],
        table: &mut Vec<Vec<usize>>,
        n: usize,
        perms: &[Vec<usize>],
        seen: &mut std::collections::BTreeSet<Vec<usize>>,
        out: &mut Vec<FinCommMonoid>,
    ) {
        if idx == cells.len() {
            let key = canonical(table, n, perms);
            if seen.insert(key.clone()) {
                let rows: Vec<Vec<usize>> =
                    (0..n).map(|i| key[i * n..(i + 1) * n].to_vec()).collect();
                out.push(FinCommMonoid::new(rows, 0).expect("search yields valid monoids"));
            }
            return;
        }
        let (i, j) = cells[idx];
        for v in 0..n {
            table[i][j] = v;
            table[j][i] = v;
            if consistent(table, n) {
                search(idx + 1, cells, table, n, perms, seen, out);
            }
        }
        table[i][j] = usize::MAX;
        table[j][i] = usize::MAX;
    }
    search(0, &cells, &mut table, n, &perms, &mut seen, &mut out);
    out
}

/// All invariant-factor chains `d₁ | d₂ | ... | d_k` (each `dᵢ ≥ 2`) whose
/// product is exactly `order` — one chain per isomorphism class of abelian
/// groups of that order.  `order = 1` yields the empty chain.
pub fn invariant_factor_chains(order: u64) -> Vec<Vec<u64>> {
    // Build chains from the largest factor down: pick d_k | order, then
    // recurse on order/d_k restricted to divisors of d_k.
    fn go(remaining: u64, max_factor: u64) -> Vec<Vec<u64>> {
        if remaining == 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let mut d = 2;
        while d <= remaining.min(max_factor) {
            if remaining % d == 0 && max_factor % d == 0 {
                for mut chain in go(remaining / d, d) {
                    chain.push(d);
                    out.push(chain);
                }
            }
            d += 1;
        }
        out
    }
    go(order, order)
}

/// Invariant factors of `∏ Z/(nᵢ)` computed the long way: split every
/// order into prime powers, then zip the per-prime exponent lists from the
/// largest down.  Returned ascending (`d₁ | d₂ | ...`), ones dropped.
pub fn invariant_factors_oracle(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                exponents.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if m > 1 {
            exponents.entry(m).or_default().push(1);
        }
    }
    let k = exponents.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; k];
    for (p, mut es) in exponents {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, e) in es.into_iter().enumerate() {
            factors[slot] *= p.pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors.reverse();
    factors
}

/// Every homomorphism from `m` into `Z/(modulus)` (written additively),
/// found by exhaustive search with constraint propagation.
pub fn monoid_homs_to_cyclic(m: &FinCommMonoid, modulus: u64) -> Vec<Vec<u64>> {
    let n = m.size();
    let e = m.identity();
    let mut f = vec![u64::MAX; n];
    f[e] = 0;
    let order: Vec<usize> = (0..n).filter(|&x| x != e).collect();

    fn ok(m: &FinCommMonoid, f: &[u64], modulus: u64) -> bool {
        let n = m.size();
        for a in 0..n {
            if f[a] == u64::MAX {
                continue;
            }
            for b in a..n {
                if f[b] == u64::MAX {
                    continue;
                }
                let ab = m.mul(a, b);
                if f[ab] != u64::MAX && f[ab] != (f[a] + f[b]) % modulus {
                    return false;
                }
            }
        }
        true
    }

    let mut out = Vec::new();
    fn search(
        idx: usize,
        order: &[usize],
        m: &FinCommMonoid,
        f: &mut Vec<u64>,
        modulus: u64,
        out: &mut Vec<Vec<u64>>,
    ) {
        if idx == order.len() {
            out.push(f.clone());
            return;
        }
        let x = order[idx];
        for v in 0..modulus {
            f[x] = v;
            if ok(m, f, modulus) {
                search(idx + 1, order, m, f, modulus, out);
            }
        }
        f[x] = u64::MAX;
    }
    search(0, &order, m, &mut f, modulus, &mut out);
    out
}

/// `gcd` of all `k×k` minors of an integer matrix, by enumerating row and
/// column subsets and expanding each determinant by cofactors.  Zero when
/// every minor vanishes.
pub fn minor_gcd(entries: &[Vec<BigInt>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = BigInt::zero();
        for (j, pivot) in m[0].iter().enumerate() {
            if pivot.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = pivot * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    let rows = entries.len();
    let cols = if rows == 0 { 0 } else { entries[0].len() };
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| entries[r][c].clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g.abs()
}

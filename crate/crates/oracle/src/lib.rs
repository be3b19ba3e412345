//! Brute-force reference computations for the test suites.
//!
//! Nothing here shares code with `kdilate-core`: groups are enumerated
//! element by element, Smith diagonals come from gcds of minors, and
//! vertex sets are checked against the definitions over all subsets.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    minor(&big, &rows, &cols)
}

fn minor(m: &[Vec<BigInt>], rows: &[usize], cols: &[usize]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    if k == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = BigInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let a = &m[rows[0]][c];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(m, &rows[1..], &rest);
        if pos % 2 == 0 {
            acc += a * sub;
        } else {
            acc -= a * sub;
        }
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Smith diagonal `s_k = d_k / d_{k-1}` from the determinantal divisors
/// `d_k = gcd of all k×k minors`. Length `min(rows, cols)`.
pub fn smith_diagonal_by_minors(m: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                d = d.gcd(&minor(&big, &rs, &cs));
            }
        }
        if d.is_zero() {
            out.resize(rows.min(cols), BigInt::zero());
            return out;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// Largest divisor of `b` coprime to `a`, by scanning all divisors.
pub fn bracket_by_divisors(a: u64, b: u64) -> u64 {
    (1..=b).filter(|c| b.is_multiple_of(*c) && c.gcd(&a) == 1).max().unwrap_or(1)
}

/// `ℤ/n₁ × … × ℤ/n_t`, elements encoded as mixed-radix indices.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub orders: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(orders.iter().all(|&n| n >= 1));
        Self { orders }
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.orders.len());
        for &n in &self.orders {
            v.push(idx % n);
            idx /= n;
        }
        v
    }

    pub fn encode(&self, coords: &[i64]) -> u64 {
        let mut idx = 0u64;
        for (&n, &x) in self.orders.iter().zip(coords).rev() {
            idx = idx * n + x.rem_euclid(n as i64) as u64;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    /// `x ↦ M x` with `M` a square matrix on the generators (columns = images).
    pub fn apply(&self, m: &[Vec<i64>], x: u64) -> u64 {
        let c = self.decode(x);
        let y: Vec<i64> = (0..self.orders.len())
            .map(|i| {
                let mut s: i64 = 0;
                for (j, &cj) in c.iter().enumerate() {
                    s = (s + m[i][j] * cj as i64).rem_euclid(self.orders[i] as i64);
                }
                s
            })
            .collect();
        self.encode(&y)
    }

    pub fn scalar_mul(&self, d: u64, x: u64) -> u64 {
        let c = self.decode(x);
        let y: Vec<i64> = c.iter().map(|&ci| (ci as i64) * d as i64).collect();
        self.encode(&y)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<i64> = a.iter().zip(&b).map(|(p, q)| (p + q) as i64).collect();
        self.encode(&s)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let a = self.decode(x);
        let s: Vec<i64> = a.iter().map(|&p| -(p as i64)).collect();
        self.encode(&s)
    }

    /// Whether `m` defines an endomorphism (each generator's image has compatible order).
    pub fn is_endomorphism(&self, m: &[Vec<i64>]) -> bool {
        (0..self.orders.len()).all(|j| {
            let mut e = vec![0i64; self.orders.len()];
            e[j] = 1;
            let img = self.apply(m, self.encode(&e));
            self.scalar_mul(self.orders[j], img) == 0
        })
    }

    /// Invariant factors (ascending, all ≥ 2) of a subgroup given as a set.
    pub fn subgroup_structure(&self, sub: &HashSet<u64>) -> Vec<u64> {
        let n = sub.len() as u64;
        structure_from_counts(n, |d| sub.iter().filter(|&&x| self.scalar_mul(d, x) == 0).count() as u64)
    }

    /// Invariant factors of the quotient of a subgroup `outer` by a subgroup `inner ⊆ outer`.
    pub fn quotient_structure(&self, outer: &HashSet<u64>, inner: &HashSet<u64>) -> Vec<u64> {
        let n = (outer.len() / inner.len()) as u64;
        structure_from_counts(n, |d| {
            let hits = outer.iter().filter(|&&x| inner.contains(&self.scalar_mul(d, x))).count();
            (hits / inner.len()) as u64
        })
    }

    pub fn whole(&self) -> HashSet<u64> {
        self.elements().collect()
    }

    pub fn kernel(&self, m: &[Vec<i64>], on: &HashSet<u64>) -> HashSet<u64> {
        on.iter().copied().filter(|&x| self.apply(m, x) == 0).collect()
    }

    pub fn image(&self, m: &[Vec<i64>], on: &HashSet<u64>) -> HashSet<u64> {
        on.iter().map(|&x| self.apply(m, x)).collect()
    }

    /// `x ↦ x − M x` on a subset.
    pub fn one_minus(&self, m: &[Vec<i64>], x: u64) -> u64 {
        self.add(x, self.neg(self.apply(m, x)))
    }

    /// The union of the kernels of `Mᵗ` and the least `t` where the chain stops growing.
    pub fn eventual_kernel(&self, m: &[Vec<i64>]) -> (HashSet<u64>, usize) {
        let mut power: Vec<u64> = self.elements().collect();
        let mut prev: HashSet<u64> = [0].into_iter().collect();
        let mut t = 0;
        loop {
            power = power.iter().map(|&x| self.apply(m, x)).collect();
            let next: HashSet<u64> = (0..self.order()).filter(|&x| power[x as usize] == 0).collect();
            if next == prev {
                return (prev, t);
            }
            prev = next;
            t += 1;
        }
    }

    /// `Mᵗ(G)` for `t` large enough that it no longer shrinks; `M` acts on it bijectively
    /// and it is isomorphic to the direct limit of `G` along `M`.
    pub fn eventual_image(&self, m: &[Vec<i64>]) -> HashSet<u64> {
        let mut cur = self.whole();
        loop {
            let next = self.image(m, &cur);
            if next.len() == cur.len() {
                return next;
            }
            cur = next;
        }
    }

    /// Kernel and cokernel structure of `Id − M` on the direct limit.
    pub fn ker_coker_one_minus_on_limit(&self, m: &[Vec<i64>]) -> (Vec<u64>, Vec<u64>) {
        let lim = self.eventual_image(m);
        let ker: HashSet<u64> = lim.iter().copied().filter(|&x| self.one_minus(m, x) == 0).collect();
        let img: HashSet<u64> = lim.iter().map(|&x| self.one_minus(m, x)).collect();
        (self.subgroup_structure(&ker), self.quotient_structure(&lim, &img))
    }

    /// Kernel and cokernel structure of `M` on the whole group.
    pub fn ker_coker(&self, m: &[Vec<i64>]) -> (Vec<u64>, Vec<u64>) {
        let all = self.whole();
        let ker = self.kernel(m, &all);
        let img = self.image(m, &all);
        (self.subgroup_structure(&ker), self.quotient_structure(&all, &img))
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Recovers invariant factors of a finite abelian group of order `n` from
/// `killed(d) = #{x : d·x = 0}` evaluated at prime powers.
pub fn structure_from_counts(n: u64, killed: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in prime_factors(n) {
        let log = |mut x: u64| {
            let mut k = 0u32;
            while x > 1 {
                assert_eq!(x % p, 0, "count is not a power of p");
                x /= p;
                k += 1;
            }
            k
        };
        // ranks[j] = number of cyclic p-factors of order ≥ p^(j+1)
        let mut ranks = Vec::new();
        let mut prev = 0;
        let mut j = 1;
        while prev < e {
            let cur = log(killed(p.pow(j)));
            ranks.push(cur - prev);
            prev = cur;
            j += 1;
        }
        // conjugate partition: exponents of the cyclic factors, descending
        let count = ranks[0] as usize;
        let exps: Vec<u32> =
            (0..count).map(|i| ranks.iter().filter(|&&r| r as usize > i).count() as u32).collect();
        per_prime.insert(p, exps);
    }
    let len = per_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, exps) in per_prime {
        for (i, e) in exps.iter().enumerate() {
            factors[i] *= p.pow(*e);
        }
    }
    factors.reverse();
    factors
}

/// Invariant factors of `⊕ ℤ/nᵢ` computed by counting elements.
pub fn invariants_of_product(orders: &[u64]) -> Vec<u64> {
    let g = FiniteGroup::new(orders.to_vec());
    g.subgroup_structure(&g.whole())
}

/// Whether `x` lies in the row span of `rels` over ℤ, assuming `modulus · ℤ^g`
/// is contained in that span (true when `modulus` is the order of the quotient).
/// Enumerates the span inside `(ℤ/modulus)^g`.
pub fn in_row_span(rels: &[Vec<i64>], modulus: u64, x: &[i64]) -> bool {
    let g = FiniteGroup::new(vec![modulus; x.len()]);
    let gens: Vec<u64> = rels.iter().map(|r| g.encode(r)).collect();
    let mut seen: HashSet<u64> = [0].into_iter().collect();
    let mut queue: VecDeque<u64> = [0].into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for &r in &gens {
            let w = g.add(v, r);
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.contains(&g.encode(x))
}

/// All hereditary and saturated vertex sets of a graph, by checking every
/// subset against the definitions. Bit `i` of a mask is vertex `i`.
pub fn hereditary_saturated_masks(adj: &[Vec<u64>]) -> Vec<u64> {
    let n = adj.len();
    assert!(n <= 20);
    (0..1u64 << n).filter(|&s| is_hereditary(adj, s) && is_saturated(adj, s)).collect()
}

pub fn is_hereditary(adj: &[Vec<u64>], s: u64) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 0 || (0..adj.len()).all(|w| adj[v][w] == 0 || s >> w & 1 == 1))
}

pub fn is_saturated(adj: &[Vec<u64>], s: u64) -> bool {
    (0..adj.len()).all(|v| {
        let emits = adj[v].iter().any(|&c| c > 0);
        let all_in = (0..adj.len()).all(|w| adj[v][w] == 0 || s >> w & 1 == 1);
        !(emits && all_in) || s >> v & 1 == 1
    })
}

//! Finite groups given by multiplication tables: subgroups, conjugacy,
//! cosets, normal cores and linear characters.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the order of a group produced by permutation closure.
pub const DEFAULT_MAX_ORDER: usize = 5000;
/// Default cap on the order of a group whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 128;
/// Tables up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 200_000;

/// A finite group stored as a full multiplication table on `0..order`.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Vec<String>,
    conjugacy: OnceLock<ConjugacyData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.mult == other.mult)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table: Latin square, two-sided identity,
    /// inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotLatinSquare("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatinSquare(format!("row {i} has length {}", row.len())));
            }
            mult.extend_from_slice(row);
        }
        if let Some(&bad) = mult.iter().find(|&&x| x >= n) {
            return Err(Error::NotLatinSquare(format!("entry {bad} out of range 0..{n}")));
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = mult[i * n + j];
                let c = mult[j * n + i];
                if std::mem::replace(&mut seen_row[r], true) {
                    return Err(Error::NotLatinSquare(format!("row {i} repeats {r}")));
                }
                if std::mem::replace(&mut seen_col[c], true) {
                    return Err(Error::NotLatinSquare(format!("column {i} repeats {c}")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mult[e * n + x] == x && mult[x * n + e] == x))
            .ok_or(Error::NoIdentity)?;
        check_associative(n, &mult)?;
        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            // Latin square: exactly one y with x*y = e.
            *slot = (0..n).find(|&y| mult[x * n + y] == identity).expect("latin square");
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(Error::NotLatinSquare(format!(
                        "{} labels for a table of order {n}",
                        l.len()
                    )));
                }
                let distinct: BTreeSet<&String> = l.iter().collect();
                if distinct.len() != n {
                    return Err(Error::NotLatinSquare("labels are not distinct".into()));
                }
                l
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { order: n, mult, identity, inv, labels, conjugacy: OnceLock::new() })
    }

    /// Closure of 0-based permutation images under composition.
    ///
    /// The product `a·b` applies `b` first. The identity is element 0 and
    /// labels use 1-based cycle notation.
    pub fn from_permutations(gens: &[Vec<usize>], max_order: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has degree {} but generator 0 has degree {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &p in g {
                if p >= degree || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidPermutation(format!("generator {i} is not a bijection")));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(g, &elements[x]);
                if !index.contains_key(&y) {
                    if elements.len() == max_order {
                        return Err(Error::OrderCapExceeded { order: max_order + 1, cap: max_order });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = index[&compose(&elements[a], &elements[b])];
            }
        }
        let labels = elements.iter().map(|p| cycle_label(p)).collect();
        Self::from_table(table, Some(labels))
    }

    /// The cyclic group `ℤ_n` with labels `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, None)
    }

    /// Direct product; element `(a, b)` has index `a·|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order, other.order);
        let mut table = vec![vec![0; n * m]; n * m];
        for x in 0..n * m {
            for y in 0..n * m {
                table[x][y] = self.mul(x / m, y / m) * m + other.mul(x % m, y % m);
            }
        }
        let labels = (0..n * m)
            .map(|x| format!("{}{}", self.label(x / m), other.label(x % m)))
            .collect::<Vec<_>>();
        let distinct: BTreeSet<&String> = labels.iter().collect();
        let labels = (distinct.len() == n * m).then_some(labels);
        Self::from_table(table, labels)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Resolves a label; `e`, `1` and `()` name the identity when no element
    /// carries that label.
    pub fn element_by_label(&self, label: &str) -> Result<usize> {
        let label = label.trim();
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        match label {
            "e" | "1" | "()" => Ok(self.identity),
            _ => Err(Error::UnknownElement(label.to_string())),
        }
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy(&self) -> &ConjugacyData {
        self.conjugacy.get_or_init(|| ConjugacyData::compute(self))
    }

    /// A small generating set of `h`, chosen greedily in index order.
    pub fn generators_of(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(self);
        for &x in h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = Subgroup::generated_by(self, &gens);
            }
        }
        gens
    }

    /// `h` as a standalone group together with the embedding of its elements.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let els = h.elements().to_vec();
        let table = els
            .iter()
            .map(|&a| els.iter().map(|&b| h.position(self.mul(a, b)).expect("closed")).collect())
            .collect();
        let labels = els.iter().map(|&a| self.label(a).to_string()).collect();
        let g = FiniteGroup::from_table(table, Some(labels)).expect("subgroup of a valid group");
        (g, els)
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&p| a[p]).collect()
}

fn cycle_label(perm: &[usize]) -> String {
    let sep = if perm.len() >= 10 { " " } else { "" };
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            cycle.push((p + 1).to_string());
            p = perm[p];
        }
        out.push('(');
        out.push_str(&cycle.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

fn check_associative(n: usize, mult: &[usize]) -> Result<()> {
    let m = |a: usize, b: usize| mult[a * n + b];
    let check = |a, b, c| {
        if m(m(a, b), c) != m(a, m(b, c)) {
            Err(Error::NotAssociative(a, b, c))
        } else {
            Ok(())
        }
    };
    if n <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x61_73_73_6f);
        for _ in 0..SAMPLED_ASSOC_TRIPLES {
            check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
        }
    }
    Ok(())
}

/// A subgroup, stored as its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `g`.
    pub fn new(g: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotASubgroup(format!("element {x} out of range")));
        }
        if !set.contains(&g.identity()) {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {}", g.label(a))));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under product at ({}, {})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup { elements: set.into_iter().collect() })
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { elements: vec![g.identity()] }
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; g.order()];
        inside[g.identity()] = true;
        let mut found = vec![g.identity()];
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    found.push(y);
                    queue.push_back(y);
                }
            }
        }
        found.sort_unstable();
        Subgroup { elements: found }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    /// `x H x⁻¹`.
    pub fn conjugate_by(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut els: Vec<usize> = self.elements.iter().map(|&h| g.conj(x, h)).collect();
        els.sort_unstable();
        Subgroup { elements: els }
    }

    pub fn labels(&self, g: &FiniteGroup) -> Vec<String> {
        self.elements.iter().map(|&x| g.label(x).to_string()).collect()
    }
}

fn ensure_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    Subgroup::new(g, h.elements().iter().copied()).map(|_| ())
}

/// The normal core `⋂_g gHg⁻¹`.
pub fn core(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    ensure_subgroup(g, h)?;
    let els = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| (0..g.order()).all(|y| h.contains(g.conj(g.inv(y), x))))
        .collect();
    Ok(Subgroup { elements: els })
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.elements().iter().all(|&x| (0..g.order()).all(|y| h.contains(g.conj(y, x))))
}

pub fn are_conjugate(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() == b.order() && (0..g.order()).any(|x| &a.conjugate_by(g, x) == b)
}

/// The commutator subgroup of `h`.
pub fn derived_subgroup(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let comms: BTreeSet<usize> = h
        .elements()
        .iter()
        .flat_map(|&a| h.elements().iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    Subgroup::generated_by(g, &comms.into_iter().collect::<Vec<_>>())
}

/// Every subgroup of `g` exactly once, sorted by (order, elements).
///
/// Built by repeatedly extending known subgroups by one cyclic generator.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded { order: g.order(), cap });
    }
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut gens_of: HashMap<Subgroup, Vec<usize>> = HashMap::new();
    for x in 0..g.order() {
        let c = Subgroup::generated_by(g, &[x]);
        if !gens_of.contains_key(&c) {
            cyclic_gens.push(x);
            gens_of.insert(c.clone(), vec![x]);
            found.insert(c);
        }
    }
    let mut stack: Vec<Subgroup> = found.iter().cloned().collect();
    while let Some(s) = stack.pop() {
        // Lagrange: a proper overgroup of s has order ≥ 2|s|.
        if 2 * s.order() > g.order() {
            continue;
        }
        let base = gens_of[&s].clone();
        for &x in &cyclic_gens {
            if s.contains(x) {
                continue;
            }
            let mut gens = base.clone();
            gens.push(x);
            let t = Subgroup::generated_by(g, &gens);
            if !found.contains(&t) {
                found.insert(t.clone());
                gens_of.insert(t.clone(), gens);
                stack.push(t);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}

/// One representative per conjugacy class of subgroups (the first in the
/// input order), in input order.
pub fn conjugacy_class_representatives(g: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<Subgroup> {
    let mut covered: BTreeSet<Subgroup> = BTreeSet::new();
    let mut reps = Vec::new();
    for s in subgroups {
        if covered.contains(s) {
            continue;
        }
        for x in 0..g.order() {
            covered.insert(s.conjugate_by(g, x));
        }
        reps.push(s.clone());
    }
    reps
}

/// Conjugacy classes; class 0 is `{e}`, the rest ordered by smallest element.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyData {
    fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut order: Vec<usize> = vec![g.identity()];
        order.extend((0..n).filter(|&x| x != g.identity()));
        for x in order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let members: BTreeSet<usize> = (0..n).map(|y| g.conj(y, x)).collect();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members.into_iter().collect());
        }
        ConjugacyData { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn representative(&self, k: usize) -> usize {
        self.classes[k][0]
    }
}

/// Left cosets `kH` with a fixed transversal `reps` (`reps[0] = e`, then the
/// smallest element index of each remaining coset in increasing order).
#[derive(Clone, Debug)]
pub struct CosetSystem {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    h_part: Vec<usize>,
}

impl CosetSystem {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        ensure_subgroup(g, h)?;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut order = vec![g.identity()];
        order.extend((0..n).filter(|&x| x != g.identity()));
        for k in order {
            if coset_of[k] != usize::MAX {
                continue;
            }
            for &x in h.elements() {
                coset_of[g.mul(k, x)] = reps.len();
            }
            reps.push(k);
        }
        let h_part = (0..n).map(|x| g.mul(g.inv(reps[coset_of[x]]), x)).collect();
        Ok(CosetSystem { subgroup: h.clone(), reps, coset_of, h_part })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// `[G:H]`.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Index into `reps` of the coset containing `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// The unique `x = k(x)·h(x)` with `k(x) ∈ reps`, `h(x) ∈ H`.
    pub fn factorize(&self, x: usize) -> (usize, usize) {
        (self.reps[self.coset_of[x]], self.h_part[x])
    }
}

/// A degree-one character of a subgroup with values `exp(2πi·k/modulus)`,
/// stored exactly as exponents aligned with the subgroup's element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    pub modulus: usize,
    pub exponents: Vec<usize>,
}

impl LinearCharacter {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn value(&self, position: usize) -> num_complex::Complex64 {
        let theta = 2.0 * std::f64::consts::PI * self.exponents[position] as f64 / self.modulus as f64;
        num_complex::Complex64::from_polar(1.0, theta)
    }

    /// Elements (as positions) on which the character is 1.
    pub fn kernel_positions(&self) -> Vec<usize> {
        (0..self.exponents.len()).filter(|&i| self.exponents[i] == 0).collect()
    }
}

/// All degree-one characters of `h`, built from the abelianization `h/[h,h]`.
/// The trivial character comes first.
pub fn linear_characters(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<LinearCharacter>> {
    ensure_subgroup(g, h)?;
    let derived = derived_subgroup(g, h);
    // Label each element of h by its coset of [h,h].
    let mut q_of = vec![usize::MAX; h.order()];
    let mut q_reps: Vec<usize> = Vec::new();
    for (pos, &x) in h.elements().iter().enumerate() {
        if q_of[pos] != usize::MAX {
            continue;
        }
        for &d in derived.elements() {
            q_of[h.position(g.mul(x, d)).expect("closed")] = q_reps.len();
        }
        q_reps.push(x);
    }
    let nq = q_reps.len();
    let q_mul = |a: usize, b: usize| q_of[h.position(g.mul(q_reps[a], q_reps[b])).expect("closed")];
    let q_id = q_of[h.position(g.identity()).expect("identity")];

    // Greedy generators of the abelian quotient with their orders.
    let span_of = |gens: &[usize]| -> Vec<bool> {
        let mut inside = vec![false; nq];
        inside[q_id] = true;
        let mut queue = VecDeque::from([q_id]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = q_mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    };
    let mut gens = Vec::new();
    let mut inside = span_of(&gens);
    for x in 0..nq {
        if !inside[x] {
            gens.push(x);
            inside = span_of(&gens);
        }
    }
    let orders: Vec<usize> = gens
        .iter()
        .map(|&x| {
            let mut k = 1;
            let mut y = x;
            while y != q_id {
                y = q_mul(y, x);
                k += 1;
            }
            k
        })
        .collect();

    let modulus = nq;
    let mut out = Vec::new();
    let combos: usize = orders.iter().product();
    for code in 0..combos {
        let mut rest = code;
        let mut images = Vec::with_capacity(gens.len());
        for &o in orders.iter().rev() {
            images.push((rest % o) * (modulus / o));
            rest /= o;
        }
        images.reverse();
        // Extend along a breadth-first search; reject on conflict.
        let mut val = vec![usize::MAX; nq];
        val[q_id] = 0;
        let mut queue = VecDeque::from([q_id]);
        let mut ok = true;
        'bfs: while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = q_mul(x, s);
                let v = (val[x] + images[i]) % modulus;
                if val[y] == usize::MAX {
                    val[y] = v;
                    queue.push_back(y);
                } else if val[y] != v {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            out.push(LinearCharacter { modulus, exponents: q_of.iter().map(|&q| val[q]).collect() });
        }
    }
    if out.len() != nq {
        return Err(Error::Inconsistency(format!(
            "found {} linear characters for an abelianization of order {nq}",
            out.len()
        )));
    }
    Ok(out)
}

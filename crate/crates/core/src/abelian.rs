//! Finite abelian groups given as products of cyclic factors.
//!
//! Elements are residue vectors. Internally every element also has a *code*,
//! its index in the lexicographic order of residue vectors (first factor most
//! significant), so the zero element has code 0 and the canonical enumeration
//! of the group is simply `0..order`. Addition and negation are table lookups
//! on codes; all search code works on codes and only converts back to
//! [`Element`] at the API boundary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest group order handled anywhere in the crate.
pub const MAX_ORDER: usize = 64;

/// Default cap on the order for exhaustive subgroup / Davenport searches.
pub const DEFAULT_SEARCH_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group spec `{0}` (expected e.g. Z4 or Z2xZ4)")]
    Malformed(String),
    #[error("cyclic factor must be at least 1, got {0}")]
    BadFactor(u64),
    #[error("group order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(u64),
    #[error("group order {order} exceeds the search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("element has {got} residues, group has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("residue {residue} out of range for factor Z{factor}")]
    ResidueOutOfRange { residue: u32, factor: u32 },
    #[error("sumset of an empty set")]
    EmptySet,
}

/// A group element as one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [] => write!(f, "0"),
            [r] => write!(f, "{r}"),
            rs => {
                write!(f, "(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Anything with an abelian group law on codes `0..order`, code 0 being the
/// identity. Implemented by [`GroupSpec`] and by coset tables of quotients.
pub trait AddTable {
    fn order(&self) -> usize;
    fn add_codes(&self, a: usize, b: usize) -> usize;
}

/// A finite abelian group `Z<n1> x Z<n2> x ...`.
#[derive(Clone)]
pub struct GroupSpec {
    factors: Vec<u32>,
    order: usize,
    exponent: u32,
    add: Vec<u8>,
    neg: Vec<u8>,
    davenport: OnceLock<usize>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

/// Parses `Z<n>` factors joined by `x` (case-insensitive, no whitespace).
/// Factors equal to 1 are dropped, so `Z1` is the trivial group.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let malformed = || GroupError::Malformed(text.to_string());
    if text.is_empty() {
        return Err(malformed());
    }
    let lower = text.to_ascii_lowercase();
    let mut factors = Vec::new();
    for part in lower.split('x') {
        let digits = part.strip_prefix('z').ok_or_else(malformed)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let n: u64 = digits.parse().map_err(|_| malformed())?;
        if n < 1 {
            return Err(GroupError::BadFactor(n));
        }
        if n > MAX_ORDER as u64 {
            return Err(GroupError::TooLarge(n));
        }
        if n > 1 {
            factors.push(n as u32);
        }
    }
    GroupSpec::new(factors)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self, GroupError> {
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &n in &factors {
            if n < 2 {
                return Err(GroupError::BadFactor(n as u64));
            }
            order *= n as u64;
            if order > MAX_ORDER as u64 {
                return Err(GroupError::TooLarge(order));
            }
            exponent = exponent / gcd(exponent, n as u64) * n as u64;
        }
        let order = order as usize;
        let mut spec = GroupSpec {
            factors,
            order,
            exponent: exponent as u32,
            add: Vec::new(),
            neg: Vec::new(),
            davenport: OnceLock::new(),
        };
        let mut add = vec![0u8; order * order];
        let mut neg = vec![0u8; order];
        let decoded: Vec<Vec<u32>> = (0..order).map(|c| spec.decode_residues(c)).collect();
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<u32> = decoded[a]
                    .iter()
                    .zip(&decoded[b])
                    .zip(&spec.factors)
                    .map(|((x, y), n)| (x + y) % n)
                    .collect();
                add[a * order + b] = spec.encode_residues(&sum) as u8;
            }
            let inv: Vec<u32> = decoded[a]
                .iter()
                .zip(&spec.factors)
                .map(|(x, n)| (n - x) % n)
                .collect();
            neg[a] = spec.encode_residues(&inv) as u8;
        }
        spec.add = add;
        spec.neg = neg;
        Ok(spec)
    }

    /// The cyclic group `Z_n` (trivial for `n == 1`).
    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadFactor(0));
        }
        GroupSpec::new(if n == 1 { vec![] } else { vec![n] })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// True when the group is cyclic of prime order.
    pub fn is_prime_cyclic(&self) -> bool {
        is_prime(self.order)
    }

    /// True when some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        self.exponent as usize == self.order
    }

    fn decode_residues(&self, mut code: usize) -> Vec<u32> {
        let mut res = vec![0u32; self.factors.len()];
        for (i, &n) in self.factors.iter().enumerate().rev() {
            res[i] = (code % n as usize) as u32;
            code /= n as usize;
        }
        res
    }

    fn encode_residues(&self, residues: &[u32]) -> usize {
        residues
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize)
    }

    /// Validates residues and builds an element (residues must already be reduced).
    pub fn element(&self, residues: Vec<u32>) -> Result<Element, GroupError> {
        self.validate(&Element(residues.clone()))?;
        Ok(Element(residues))
    }

    /// Builds an element reducing each residue modulo its factor.
    pub fn element_mod(&self, residues: &[i64]) -> Result<Element, GroupError> {
        if residues.len() != self.factors.len() {
            return Err(GroupError::DimensionMismatch {
                expected: self.factors.len(),
                got: residues.len(),
            });
        }
        Ok(Element(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    pub fn validate(&self, x: &Element) -> Result<(), GroupError> {
        if x.0.len() != self.factors.len() {
            return Err(GroupError::DimensionMismatch {
                expected: self.factors.len(),
                got: x.0.len(),
            });
        }
        for (&r, &n) in x.0.iter().zip(&self.factors) {
            if r >= n {
                return Err(GroupError::ResidueOutOfRange {
                    residue: r,
                    factor: n,
                });
            }
        }
        Ok(())
    }

    /// Code of a (valid) element; panics on a dimension mismatch.
    pub fn encode(&self, x: &Element) -> usize {
        assert_eq!(x.0.len(), self.factors.len(), "element dimension mismatch");
        self.encode_residues(&x.0)
    }

    pub fn decode(&self, code: usize) -> Element {
        assert!(code < self.order, "code {code} out of range");
        Element(self.decode_residues(code))
    }

    /// All elements in lexicographic residue order.
    pub fn elements(&self) -> Vec<Element> {
        (0..self.order).map(|c| self.decode(c)).collect()
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.factors.len()])
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.decode(self.add_code(self.encode(a), self.encode(b))))
    }

    pub fn neg(&self, a: &Element) -> Result<Element, GroupError> {
        self.validate(a)?;
        Ok(self.decode(self.neg_code(self.encode(a))))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, GroupError> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Sum of a sequence of elements.
    pub fn sum<'a, I: IntoIterator<Item = &'a Element>>(
        &self,
        xs: I,
    ) -> Result<Element, GroupError> {
        let mut acc = 0usize;
        for x in xs {
            self.validate(x)?;
            acc = self.add_code(acc, self.encode(x));
        }
        Ok(self.decode(acc))
    }

    /// Least `t >= 1` with `t * x = 0`.
    pub fn element_order(&self, x: &Element) -> Result<usize, GroupError> {
        self.validate(x)?;
        Ok(self.code_order(self.encode(x)))
    }

    #[inline]
    pub fn add_code(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg_code(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub_code(&self, a: usize, b: usize) -> usize {
        self.add_code(a, self.neg_code(b))
    }

    pub fn code_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut t = 1;
        while acc != 0 {
            acc = self.add_code(acc, x);
            t += 1;
        }
        t
    }

    /// Davenport constant with the default search cap; cached.
    pub fn davenport(&self) -> Result<usize, GroupError> {
        self.davenport_with_cap(DEFAULT_SEARCH_CAP)
    }

    pub fn davenport_with_cap(&self, cap: usize) -> Result<usize, GroupError> {
        if let Some(&d) = self.davenport.get() {
            return Ok(d);
        }
        if self.order > cap {
            return Err(GroupError::CapExceeded {
                order: self.order,
                cap,
            });
        }
        let d = davenport_of(self);
        Ok(*self.davenport.get_or_init(|| d))
    }

    /// Cached Davenport constant, if it has been computed.
    pub fn cached_davenport(&self) -> Option<usize> {
        self.davenport.get().copied()
    }

    /// A zero-sum-free sequence of the given length (lexicographically first
    /// nondecreasing one in code order), or `None` iff `length >= D(g)`.
    pub fn zero_sum_free_sequence(
        &self,
        length: usize,
    ) -> Result<Option<Vec<Element>>, GroupError> {
        if self.order > DEFAULT_SEARCH_CAP {
            return Err(GroupError::CapExceeded {
                order: self.order,
                cap: DEFAULT_SEARCH_CAP,
            });
        }
        Ok(zero_sum_free_codes(self, length)
            .map(|codes| codes.into_iter().map(|c| self.decode(c)).collect()))
    }

    /// Orbit representative (least code) for each element under the
    /// automorphisms found by enumerating generator images, stopping after
    /// `max_automorphisms`. A partial enumeration still yields valid (finer)
    /// orbits.
    pub fn automorphism_orbit_reps(&self, max_automorphisms: usize) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.order).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let k = self.factors.len();
        if k == 0 {
            return vec![0];
        }
        // candidate images for each generator: elements whose order divides the factor
        let candidates: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&n| {
                (0..self.order)
                    .filter(|&c| (n as usize).is_multiple_of(self.code_order(c)))
                    .collect()
            })
            .collect();
        let mut images = vec![0usize; k];
        let mut found = 0usize;
        let mut stack_state: Vec<usize> = vec![0; k];
        let mut depth = 0usize;
        // iterative DFS over generator images; span[i] = subgroup generated by images[..i]
        let mut span: Vec<u64> = vec![0; k + 1];
        span[0] = 1;
        'outer: loop {
            if depth == k {
                // full homomorphism, injective by construction of span
                found += 1;
                for c in 0..self.order {
                    let res = self.decode_residues(c);
                    let mut img = 0usize;
                    for (i, &r) in res.iter().enumerate() {
                        for _ in 0..r {
                            img = self.add_code(img, images[i]);
                        }
                    }
                    let (a, b) = (find(&mut parent, c), find(&mut parent, img));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
                if found >= max_automorphisms {
                    break;
                }
                depth -= 1;
                stack_state[depth] += 1;
                continue;
            }
            while stack_state[depth] < candidates[depth].len() {
                let y = candidates[depth][stack_state[depth]];
                // new span = span + <y>; injective iff size multiplies by factor
                let mut mult = 0u64;
                let mut acc = 0usize;
                for _ in 0..self.factors[depth] {
                    mult |= 1u64 << acc;
                    acc = self.add_code(acc, y);
                }
                let mut s = 0u64;
                let prev = span[depth];
                for a in 0..self.order {
                    if prev >> a & 1 == 1 {
                        for b in 0..self.order {
                            if mult >> b & 1 == 1 {
                                s |= 1u64 << self.add_code(a, b);
                            }
                        }
                    }
                }
                if s.count_ones() as u64 == prev.count_ones() as u64 * self.factors[depth] as u64 {
                    images[depth] = y;
                    span[depth + 1] = s;
                    depth += 1;
                    if depth < k {
                        stack_state[depth] = 0;
                    }
                    continue 'outer;
                }
                stack_state[depth] += 1;
            }
            if depth == 0 {
                break;
            }
            depth -= 1;
            stack_state[depth] += 1;
        }
        (0..self.order).map(|c| find(&mut parent, c)).collect()
    }

    /// Exact pointwise sumset `A + B`.
    pub fn sumset(&self, a: &[Element], b: &[Element]) -> Result<BTreeSet<Element>, GroupError> {
        if a.is_empty() || b.is_empty() {
            return Err(GroupError::EmptySet);
        }
        let mut out = BTreeSet::new();
        for x in a {
            for y in b {
                out.insert(self.add(x, y)?);
            }
        }
        Ok(out)
    }

    /// Mask version of [`GroupSpec::sumset`] over codes.
    pub fn sumset_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for x in iter_bits(a) {
            for y in iter_bits(b) {
                out |= 1u64 << self.add_code(x, y);
            }
        }
        out
    }

    /// Mask with every code of the group set.
    pub fn full_mask(&self) -> u64 {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }
}

impl AddTable for GroupSpec {
    fn order(&self) -> usize {
        self.order
    }

    fn add_codes(&self, a: usize, b: usize) -> usize {
        self.add_code(a, b)
    }
}

pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Nonempty subsequence sums of `sums` extended by `x`.
fn extend_sums<T: AddTable>(table: &T, sums: u64, x: usize) -> u64 {
    let mut out = sums | (1u64 << x);
    for s in iter_bits(sums) {
        out |= 1u64 << table.add_codes(s, x);
    }
    out
}

/// Davenport constant of any add table: one more than the length of the
/// longest zero-sum-free sequence, found by exhaustive search over
/// nondecreasing code sequences.
pub fn davenport_of<T: AddTable>(table: &T) -> usize {
    let order = table.order();
    if order <= 1 {
        return 1;
    }
    fn dfs<T: AddTable>(t: &T, start: usize, sums: u64, len: usize, best: &mut usize) {
        if len > *best {
            *best = len;
        }
        // D <= |G| bounds any zero-sum-free length by |G| - 1
        if *best == t.order() - 1 {
            return;
        }
        for x in start..t.order() {
            let next = extend_sums(t, sums, x);
            if next & 1 == 0 {
                dfs(t, x, next, len + 1, best);
                if *best == t.order() - 1 {
                    return;
                }
            }
        }
    }
    let mut best = 0;
    dfs(table, 1, 0, 0, &mut best);
    best + 1
}

/// Codes of a zero-sum-free sequence of exactly `length` elements, or `None`
/// when none exists.
pub fn zero_sum_free_codes<T: AddTable>(table: &T, length: usize) -> Option<Vec<usize>> {
    fn dfs<T: AddTable>(
        t: &T,
        start: usize,
        sums: u64,
        target: usize,
        seq: &mut Vec<usize>,
    ) -> bool {
        if seq.len() == target {
            return true;
        }
        for x in start..t.order() {
            let next = extend_sums(t, sums, x);
            if next & 1 == 0 {
                seq.push(x);
                if dfs(t, x, next, target, seq) {
                    return true;
                }
                seq.pop();
            }
        }
        false
    }
    if length >= table.order().max(1) {
        // D <= |G|
        return None;
    }
    let mut seq = Vec::with_capacity(length);
    if dfs(table, 1, 0, length, &mut seq) {
        Some(seq)
    } else {
        None
    }
}

/// A subgroup stored as a bitmask over element codes of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    mask: u64,
    maximal: bool,
}

impl Subgroup {
    pub fn whole(g: &GroupSpec) -> Self {
        Subgroup {
            mask: g.full_mask(),
            maximal: false,
        }
    }

    pub fn trivial() -> Self {
        Subgroup {
            mask: 1,
            maximal: false,
        }
    }

    /// Subgroup generated by the given codes.
    pub fn generated_by(g: &GroupSpec, gens: &[usize]) -> Self {
        Subgroup {
            mask: closure(g, 1, gens),
            maximal: false,
        }
    }

    /// Builds a subgroup from explicit members, checking closure.
    pub fn from_elements(g: &GroupSpec, members: &[Element]) -> Option<Self> {
        let mut mask = 0u64;
        for x in members {
            g.validate(x).ok()?;
            mask |= 1u64 << g.encode(x);
        }
        if mask & 1 == 0 {
            return None;
        }
        for a in iter_bits(mask) {
            if mask >> g.neg_code(a) & 1 == 0 {
                return None;
            }
            for b in iter_bits(mask) {
                if mask >> g.add_code(a, b) & 1 == 0 {
                    return None;
                }
            }
        }
        Some(Subgroup {
            mask,
            maximal: false,
        })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn index(&self, g: &GroupSpec) -> usize {
        g.order() / self.order()
    }

    pub fn contains_code(&self, code: usize) -> bool {
        self.mask >> code & 1 == 1
    }

    pub fn contains(&self, g: &GroupSpec, x: &Element) -> bool {
        g.validate(x).is_ok() && self.contains_code(g.encode(x))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask & !other.mask == 0
    }

    /// Maximal among the proper subgroups of the whole group (set by
    /// [`enumerate_subgroups`]).
    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    /// Member codes in increasing order.
    pub fn codes(&self) -> Vec<usize> {
        iter_bits(self.mask).collect()
    }

    pub fn members(&self, g: &GroupSpec) -> Vec<Element> {
        iter_bits(self.mask).map(|c| g.decode(c)).collect()
    }

    /// True when some member generates the subgroup.
    pub fn is_cyclic(&self, g: &GroupSpec) -> bool {
        self.generator(g).is_some()
    }

    /// Least code generating this subgroup, if cyclic.
    pub fn generator(&self, g: &GroupSpec) -> Option<usize> {
        let n = self.order();
        iter_bits(self.mask).find(|&c| g.code_order(c) == n)
    }
}

fn closure(g: &GroupSpec, start: u64, gens: &[usize]) -> u64 {
    let mut mask = start | 1;
    loop {
        let mut next = mask;
        for a in iter_bits(mask) {
            for &b in gens {
                next |= 1u64 << g.add_code(a, b);
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

/// All subgroups, sorted by order then member set, each flagged when it is a
/// maximal proper subgroup.
pub fn enumerate_subgroups(g: &GroupSpec) -> Result<Vec<Subgroup>, GroupError> {
    enumerate_subgroups_with_cap(g, DEFAULT_SEARCH_CAP)
}

pub fn enumerate_subgroups_with_cap(
    g: &GroupSpec,
    cap: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue = vec![1u64];
    seen.insert(1);
    while let Some(h) = queue.pop() {
        for x in 0..g.order() {
            if h >> x & 1 == 0 {
                let k = closure(g, h, &[x]);
                if seen.insert(k) {
                    queue.push(k);
                }
            }
        }
    }
    let full = g.full_mask();
    let masks: Vec<u64> = seen.into_iter().collect();
    let mut subs: Vec<Subgroup> = masks
        .iter()
        .map(|&m| Subgroup {
            mask: m,
            maximal: m != full && !masks.iter().any(|&k| k != full && k != m && m & !k == 0),
        })
        .collect();
    subs.sort_by_key(|s| (s.order(), s.codes()));
    Ok(subs)
}

/// Quotient `big / small` of two nested subgroups, as a coset table.
///
/// Coset `i` is represented by the least code in it; coset 0 is `small`
/// itself with representative 0.
#[derive(Clone, Debug)]
pub struct CosetTable {
    reps: Vec<usize>,
    coset_of: Vec<Option<usize>>,
    add: Vec<usize>,
}

impl CosetTable {
    pub fn new(g: &GroupSpec, big: &Subgroup, small: &Subgroup) -> Self {
        assert!(
            small.is_subgroup_of(big),
            "quotient of non-nested subgroups"
        );
        let mut coset_of = vec![None; g.order()];
        let mut reps = Vec::new();
        for x in big.codes() {
            if coset_of[x].is_some() {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for h in small.codes() {
                coset_of[g.add_code(x, h)] = Some(idx);
            }
        }
        let k = reps.len();
        let mut add = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                add[i * k + j] = coset_of[g.add_code(reps[i], reps[j])].expect("closed");
            }
        }
        CosetTable {
            reps,
            coset_of,
            add,
        }
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Coset index of a code in `big`, `None` outside `big`.
    pub fn project_code(&self, code: usize) -> Option<usize> {
        self.coset_of[code]
    }

    pub fn lift(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    /// Cyclic-factor structure of the quotient, in invariant-factor form.
    pub fn structure(&self) -> Vec<u32> {
        invariant_factors(self)
    }
}

impl AddTable for CosetTable {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn add_codes(&self, a: usize, b: usize) -> usize {
        self.add[a * self.reps.len() + b]
    }
}

/// Invariant factors `d1 | d2 | ... ` of an abelian add table, from the counts
/// of elements killed by each prime power.
pub fn invariant_factors<T: AddTable>(t: &T) -> Vec<u32> {
    let n = t.order();
    let mul = |x: usize, k: usize| {
        let mut acc = 0;
        for _ in 0..k {
            acc = t.add_codes(acc, x);
        }
        acc
    };
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime, cyclic p-power factor exponents (descending)
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let mut ranks = vec![0u32];
        let mut pk = 1usize;
        loop {
            pk *= p;
            let killed = (0..n).filter(|&x| mul(x, pk) == 0).count();
            let r = (killed as f64).log(p as f64).round() as u32;
            if r == *ranks.last().unwrap() {
                break;
            }
            ranks.push(r);
        }
        // number of factors of order >= p^k is ranks[k] - ranks[k-1]
        let levels = ranks.len() - 1;
        let mut exps = Vec::new();
        let count_at = |k: usize| (ranks[k] - ranks[k - 1]) as usize;
        for k in (1..=levels).rev() {
            let here = count_at(k) - if k < levels { count_at(k + 1) } else { 0 };
            for _ in 0..here {
                exps.push(p.pow(k as u32) as u32);
            }
        }
        per_prime.push(exps);
    }
    let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u32> = (0..width)
        .map(|i| {
            per_prime
                .iter()
                .map(|e| e.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    out.reverse();
    out
}

/// `G / H` for a subgroup `H` of the whole group.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    parent: GroupSpec,
    subgroup: Subgroup,
    table: CosetTable,
    quotient_spec: GroupSpec,
}

impl QuotientMap {
    pub fn new(parent: &GroupSpec, subgroup: &Subgroup) -> Self {
        let table = CosetTable::new(parent, &Subgroup::whole(parent), subgroup);
        let quotient_spec = GroupSpec::new(table.structure()).expect("quotient of a valid group");
        QuotientMap {
            parent: parent.clone(),
            subgroup: subgroup.clone(),
            table,
            quotient_spec,
        }
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn quotient_spec(&self) -> &GroupSpec {
        &self.quotient_spec
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn coset_reps(&self) -> Vec<Element> {
        self.table
            .reps()
            .iter()
            .map(|&c| self.parent.decode(c))
            .collect()
    }

    /// Index of the coset containing `x`.
    pub fn project(&self, x: &Element) -> usize {
        self.table
            .project_code(self.parent.encode(x))
            .expect("whole-group quotient")
    }

    pub fn coset_rep(&self, coset: usize) -> Element {
        self.parent.decode(self.table.lift(coset))
    }

    pub fn davenport(&self) -> usize {
        davenport_of(&self.table)
    }
}

/// All abelian groups of order `n` up to isomorphism, in invariant-factor form
/// (the cyclic group first).
pub fn groups_of_order(n: usize) -> Result<Vec<GroupSpec>, GroupError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::TooLarge(n as u64));
    }
    fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max)).rev() {
            for mut rest in partitions(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut prime_parts: Vec<(u32, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2usize;
    while m > 1 {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            prime_parts.push((p as u32, e));
        }
        p += 1;
    }
    let mut combos: Vec<Vec<Vec<u32>>> = vec![vec![]];
    for &(p, e) in &prime_parts {
        let mut next = Vec::new();
        for c in &combos {
            for part in partitions(e, e) {
                let mut c2 = c.clone();
                c2.push(part.iter().map(|&k| p.pow(k)).collect());
                next.push(c2);
            }
        }
        combos = next;
    }
    let mut out = Vec::new();
    for combo in combos {
        let width = combo.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u32> = (0..width)
            .map(|i| {
                combo
                    .iter()
                    .map(|v| v.get(i).copied().unwrap_or(1))
                    .product()
            })
            .collect();
        factors.reverse();
        out.push(GroupSpec::new(factors)?);
    }
    Ok(out)
}

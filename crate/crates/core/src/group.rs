//! Finite groups with a dense element encoding, and subsets over them.
//!
//! Every group stores its elements as indices `0..order`. Structured kinds
//! carry a documented bijection:
//!
//! * cyclic `Z/nZ`: index `i` is the residue `i`;
//! * direct product: mixed radix, first factor most significant, so the
//!   components `(c_1, .., c_t)` map to `((c_1 * n_2 + c_2) * n_3 + ..) + c_t`;
//! * symmetric `S_n`: the Lehmer-code rank of the permutation in one-line
//!   notation (0-based internally, printed 1-based). Composition is
//!   `(a * b)(i) = a(b(i))`, i.e. `b` acts first.
//!
//! Cyclic groups, direct products and symmetric groups all have identity 0.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Groups of at most this order get a cached Cayley table on first use.
const CAYLEY_CACHE_LIMIT: usize = 1024;
const MAX_DEGREE: usize = 12;

/// Parameters of a group. This is also the serialized form of a [`Group`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: u64 },
    Product { factors: Vec<GroupSpec> },
    Symmetric { degree: u32 },
    Table { order: usize, table: Vec<Vec<u32>> },
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Cyclic { n }
    }

    pub fn symmetric(degree: u32) -> Self {
        GroupSpec::Symmetric { degree }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Product { factors }
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(orders: &[u64]) -> Self {
        GroupSpec::Product {
            factors: orders.iter().map(|&n| GroupSpec::cyclic(n)).collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { n } => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric { degree } => write!(f, "sym:{degree}"),
            GroupSpec::Table { order, .. } => write!(f, "table:{order}"),
            GroupSpec::Product { factors } => {
                if factors.iter().all(|s| matches!(s, GroupSpec::Cyclic { .. })) {
                    write!(f, "product:")?;
                    for (i, s) in factors.iter().enumerate() {
                        if let GroupSpec::Cyclic { n } = s {
                            if i > 0 {
                                write!(f, ",")?;
                            }
                            write!(f, "{n}")?;
                        }
                    }
                    Ok(())
                } else {
                    write!(f, "product(")?;
                    for (i, s) in factors.iter().enumerate() {
                        if i > 0 {
                            write!(f, ";")?;
                        }
                        write!(f, "{s}")?;
                    }
                    write!(f, ")")
                }
            }
        }
    }
}

/// Parses `cyclic:N`, `sym:N` (or `symmetric:N`) and `product:N1,N2,..`
/// (a direct product of cyclic groups). Tables are only read from JSON.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognised group spec `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match kind.trim() {
            "cyclic" | "z" | "Z" => Ok(GroupSpec::cyclic(num(rest)?)),
            "sym" | "symmetric" | "S" => {
                let d = num(rest)?;
                Ok(GroupSpec::symmetric(u32::try_from(d).map_err(|_| bad())?))
            }
            "product" | "abelian" => {
                let orders = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
                if orders.is_empty() {
                    return Err(bad());
                }
                Ok(GroupSpec::abelian(&orders))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLimits {
    /// Cap on the order of cyclic groups and direct products.
    pub max_order: u64,
    pub max_symmetric_degree: u32,
    /// Table groups are validated exhaustively, which costs `order^3`.
    pub max_table_order: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        Self {
            max_order: 10_000_000,
            max_symmetric_degree: 12,
            max_table_order: 512,
        }
    }
}

#[derive(Debug)]
enum Repr {
    Cyclic,
    Product { factors: Vec<Group> },
    Symmetric { degree: usize, factorials: [usize; MAX_DEGREE + 1] },
    Table { table: Vec<u32>, inverses: Vec<u32> },
}

#[derive(Debug)]
struct Inner {
    spec: GroupSpec,
    order: usize,
    identity: usize,
    repr: Repr,
    cayley: OnceLock<Vec<u32>>,
}

/// A validated finite group. Cheap to clone; immutable and `Send + Sync`.
#[derive(Clone, Debug)]
pub struct Group(Arc<Inner>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Group {}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.spec.serialize(serializer)
    }
}

/// Builds a group from its spec with the default [`GroupLimits`].
pub fn make_group(spec: &GroupSpec) -> Result<Group> {
    Group::with_limits(spec, &GroupLimits::default())
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Group> {
        make_group(spec)
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        make_group(&GroupSpec::cyclic(n))
    }

    pub fn symmetric(degree: u32) -> Result<Group> {
        make_group(&GroupSpec::symmetric(degree))
    }

    pub fn abelian(orders: &[u64]) -> Result<Group> {
        make_group(&GroupSpec::abelian(orders))
    }

    pub fn with_limits(spec: &GroupSpec, limits: &GroupLimits) -> Result<Group> {
        let (order, identity, repr) = match spec {
            GroupSpec::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidArgument("cyclic group of order 0".into()));
                }
                if *n > limits.max_order {
                    return Err(Error::OverflowingOrder {
                        kind: "cyclic",
                        order: *n as u128,
                        limit: limits.max_order as u128,
                    });
                }
                (*n as usize, 0, Repr::Cyclic)
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidArgument("empty direct product".into()));
                }
                let groups = factors
                    .iter()
                    .map(|f| Group::with_limits(f, limits))
                    .collect::<Result<Vec<_>>>()?;
                let order = groups
                    .iter()
                    .try_fold(1u128, |acc, g| acc.checked_mul(g.order() as u128))
                    .unwrap_or(u128::MAX);
                if order > limits.max_order as u128 {
                    return Err(Error::OverflowingOrder {
                        kind: "product",
                        order,
                        limit: limits.max_order as u128,
                    });
                }
                // Identity of a product is the tuple of factor identities.
                let mut identity = 0usize;
                for g in &groups {
                    identity = identity * g.order() + g.identity();
                }
                (order as usize, identity, Repr::Product { factors: groups })
            }
            GroupSpec::Symmetric { degree } => {
                let cap = limits.max_symmetric_degree.min(MAX_DEGREE as u32);
                if *degree == 0 {
                    return Err(Error::InvalidArgument("symmetric group of degree 0".into()));
                }
                if *degree > cap {
                    return Err(Error::DegreeCapExceeded { degree: *degree, cap });
                }
                let mut factorials = [1usize; MAX_DEGREE + 1];
                for i in 1..=MAX_DEGREE {
                    factorials[i] = factorials[i - 1] * i;
                }
                let d = *degree as usize;
                (factorials[d], 0, Repr::Symmetric { degree: d, factorials })
            }
            GroupSpec::Table { order, table } => {
                if *order > limits.max_table_order {
                    return Err(Error::OverflowingOrder {
                        kind: "table",
                        order: *order as u128,
                        limit: limits.max_table_order as u128,
                    });
                }
                let (identity, flat, inverses) = validate_table(*order, table)?;
                (*order, identity, Repr::Table { table: flat, inverses })
            }
        };
        Ok(Group(Arc::new(Inner {
            spec: spec.clone(),
            order,
            identity,
            repr,
            cayley: OnceLock::new(),
        })))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.0.spec
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    pub fn is_cyclic_kind(&self) -> bool {
        matches!(self.0.repr, Repr::Cyclic)
    }

    /// Factors of a direct product; `None` for other kinds.
    pub fn factors(&self) -> Option<&[Group]> {
        match &self.0.repr {
            Repr::Product { factors } => Some(factors),
            _ => None,
        }
    }

    pub fn symmetric_degree(&self) -> Option<usize> {
        match &self.0.repr {
            Repr::Symmetric { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// Orders of the cyclic factors when the group is cyclic or a direct
    /// product of cyclic groups.
    pub fn cyclic_factor_orders(&self) -> Option<Vec<usize>> {
        match &self.0.repr {
            Repr::Cyclic => Some(vec![self.order()]),
            Repr::Product { factors } => factors
                .iter()
                .map(|f| f.is_cyclic_kind().then(|| f.order()))
                .collect(),
            _ => None,
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order() && b < self.order());
        match &self.0.repr {
            Repr::Cyclic => {
                let n = self.0.order;
                let s = a + b;
                if s >= n {
                    s - n
                } else {
                    s
                }
            }
            Repr::Table { table, .. } => table[a * self.0.order + b] as usize,
            _ => match self.cayley() {
                Some(t) => t[a * self.0.order + b] as usize,
                None => self.op_uncached(a, b),
            },
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        match &self.0.repr {
            Repr::Cyclic => {
                if a == 0 {
                    0
                } else {
                    self.0.order - a
                }
            }
            Repr::Table { inverses, .. } => inverses[a] as usize,
            Repr::Product { factors } => {
                let mut rest = a;
                let mut stride = 1;
                let mut out = 0;
                for f in factors.iter().rev() {
                    let m = f.order();
                    out += f.inv(rest % m) * stride;
                    rest /= m;
                    stride *= m;
                }
                out
            }
            Repr::Symmetric { degree, factorials } => {
                let p = unrank_perm(a, *degree, factorials);
                let mut q = [0u8; MAX_DEGREE];
                for i in 0..*degree {
                    q[p[i] as usize] = i as u8;
                }
                rank_perm(&q[..*degree], factorials)
            }
        }
    }

    /// `a^e` by repeated squaring.
    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            e >>= 1;
        }
        acc
    }

    fn cayley(&self) -> Option<&[u32]> {
        if self.0.order > CAYLEY_CACHE_LIMIT {
            return None;
        }
        let t = self.0.cayley.get_or_init(|| {
            let n = self.0.order;
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(self.op_uncached(a, b) as u32);
                }
            }
            t
        });
        Some(t)
    }

    fn op_uncached(&self, a: usize, b: usize) -> usize {
        match &self.0.repr {
            Repr::Cyclic => (a + b) % self.0.order,
            Repr::Table { table, .. } => table[a * self.0.order + b] as usize,
            Repr::Product { factors } => {
                let (mut ra, mut rb) = (a, b);
                let mut stride = 1;
                let mut out = 0;
                for f in factors.iter().rev() {
                    let m = f.order();
                    out += f.op(ra % m, rb % m) * stride;
                    ra /= m;
                    rb /= m;
                    stride *= m;
                }
                out
            }
            Repr::Symmetric { degree, factorials } => {
                let pa = unrank_perm(a, *degree, factorials);
                let pb = unrank_perm(b, *degree, factorials);
                let mut c = [0u8; MAX_DEGREE];
                for i in 0..*degree {
                    c[i] = pa[pb[i] as usize];
                }
                rank_perm(&c[..*degree], factorials)
            }
        }
    }

    /// Components of a product element, first factor first.
    pub fn components(&self, idx: usize) -> Option<Vec<usize>> {
        let factors = self.factors()?;
        let mut out = vec![0; factors.len()];
        let mut rest = idx;
        for (slot, f) in out.iter_mut().zip(factors).rev() {
            *slot = rest % f.order();
            rest /= f.order();
        }
        Some(out)
    }

    pub fn from_components(&self, comps: &[usize]) -> Result<usize> {
        let factors = self.factors().ok_or(Error::WrongGroupKind("a direct product"))?;
        if comps.len() != factors.len() {
            return Err(Error::InvalidArgument("wrong number of components".into()));
        }
        let mut idx = 0;
        for (&c, f) in comps.iter().zip(factors) {
            if c >= f.order() {
                return Err(Error::IndexOutOfRange { index: c, order: f.order() });
            }
            idx = idx * f.order() + c;
        }
        Ok(idx)
    }

    /// One-line notation (0-based) of a symmetric-group element.
    pub fn permutation(&self, idx: usize) -> Option<Vec<usize>> {
        match &self.0.repr {
            Repr::Symmetric { degree, factorials } => Some(
                unrank_perm(idx, *degree, factorials)[..*degree]
                    .iter()
                    .map(|&x| x as usize)
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn from_permutation(&self, perm: &[usize]) -> Result<usize> {
        let Repr::Symmetric { degree, factorials } = &self.0.repr else {
            return Err(Error::WrongGroupKind("symmetric"));
        };
        if perm.len() != *degree {
            return Err(Error::InvalidArgument("permutation has the wrong degree".into()));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = [0u8; MAX_DEGREE];
        for (i, &x) in perm.iter().enumerate() {
            if x >= *degree || seen[x] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[x] = true;
            p[i] = x as u8;
        }
        Ok(rank_perm(&p[..*degree], factorials))
    }

    /// Human-readable form of an element.
    pub fn label(&self, idx: usize) -> String {
        match &self.0.repr {
            Repr::Cyclic => idx.to_string(),
            Repr::Table { .. } => format!("#{idx}"),
            Repr::Product { factors } => {
                let comps = self.components(idx).unwrap_or_default();
                let parts: Vec<String> =
                    comps.iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
                format!("({})", parts.join(","))
            }
            Repr::Symmetric { .. } => {
                let p = self.permutation(idx).unwrap_or_default();
                let parts: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                format!("[{}]", parts.join(" "))
            }
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Closure, identity and inverse check for a subset.
    pub fn is_subgroup(&self, h: &Subset) -> bool {
        if h.group() != self || !h.contains(self.identity()) {
            return false;
        }
        let elems = h.to_vec();
        elems.iter().all(|&a| h.contains(self.inv(a)))
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| h.contains(self.op(a, b))))
    }
}

fn validate_table(order: usize, rows: &[Vec<u32>]) -> Result<(usize, Vec<u32>, Vec<u32>)> {
    if order == 0 {
        return Err(Error::NotAGroup("order 0".into()));
    }
    if rows.len() != order || rows.iter().any(|r| r.len() != order) {
        return Err(Error::NotAGroup(format!("table is not {order}x{order}")));
    }
    let flat: Vec<u32> = rows.iter().flatten().copied().collect();
    if flat.iter().any(|&x| x as usize >= order) {
        return Err(Error::NotAGroup("entry out of range".into()));
    }
    let at = |a: usize, b: usize| flat[a * order + b] as usize;
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    let mut inverses = vec![0u32; order];
    for a in 0..order {
        let b = (0..order)
            .find(|&b| at(a, b) == identity && at(b, a) == identity)
            .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
        inverses[a] = b as u32;
    }
    for a in 0..order {
        for b in 0..order {
            let ab = at(a, b);
            for c in 0..order {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails on ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok((identity, flat, inverses))
}

fn rank_perm(p: &[u8], factorials: &[usize; MAX_DEGREE + 1]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank += smaller * factorials[n - 1 - i];
    }
    rank
}

fn unrank_perm(mut rank: usize, n: usize, factorials: &[usize; MAX_DEGREE + 1]) -> [u8; MAX_DEGREE] {
    let mut avail: [u8; MAX_DEGREE] = std::array::from_fn(|i| i as u8);
    let mut len = n;
    let mut out = [0u8; MAX_DEGREE];
    for i in 0..n {
        let f = factorials[n - 1 - i];
        let d = rank / f;
        rank %= f;
        out[i] = avail[d];
        avail.copy_within(d + 1..len, d);
        len -= 1;
    }
    out
}

/// A set of elements of a fixed group, stored as a bit-vector.
#[derive(Clone)]
pub struct Subset {
    group: Group,
    bits: FixedBitSet,
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.bits == other.bits
    }
}

impl Eq for Subset {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serializes as the sorted list of element indices.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl Subset {
    pub fn empty(group: &Group) -> Subset {
        Subset {
            group: group.clone(),
            bits: FixedBitSet::with_capacity(group.order()),
        }
    }

    pub fn full(group: &Group) -> Subset {
        let mut s = Subset::empty(group);
        s.bits.insert_range(..);
        s
    }

    pub fn singleton(group: &Group, x: usize) -> Result<Subset> {
        Subset::from_indices(group, [x])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &Group, items: I) -> Result<Subset> {
        let mut s = Subset::empty(group);
        for x in items {
            s.insert(x)?;
        }
        Ok(s)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) -> Result<()> {
        if x >= self.group.order() {
            return Err(Error::IndexOutOfRange { index: x, order: self.group.order() });
        }
        self.bits.insert(x);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    fn check_same(&self, other: &Subset) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        Ok(s)
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        Ok(s)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.group == other.group && self.bits.is_subset(&other.bits)
    }

    /// `{g * s}`.
    pub fn left_translate(&self, g: usize) -> Subset {
        let mut out = Subset::empty(&self.group);
        for s in self.iter() {
            out.bits.insert(self.group.op(g, s));
        }
        out
    }

    /// `{s * g}`.
    pub fn right_translate(&self, g: usize) -> Subset {
        let mut out = Subset::empty(&self.group);
        for s in self.iter() {
            out.bits.insert(self.group.op(s, g));
        }
        out
    }

    /// `{s^-1}`.
    pub fn inverse(&self) -> Subset {
        let mut out = Subset::empty(&self.group);
        for s in self.iter() {
            out.bits.insert(self.group.inv(s));
        }
        out
    }
}

/// Left translate `gS`.
pub fn translate(g: usize, s: &Subset) -> Result<Subset> {
    if g >= s.group().order() {
        return Err(Error::IndexOutOfRange { index: g, order: s.group().order() });
    }
    Ok(s.left_translate(g))
}

/// Product set `ST = {st}` by exhaustive pairwise composition.
pub fn product_set(s: &Subset, t: &Subset) -> Result<Subset> {
    s.check_same(t)?;
    let g = s.group();
    if g.is_cyclic_kind() && t.len() * 16 > g.order() {
        return Ok(cyclic_sumset(s, t));
    }
    let mut out = Subset::empty(g);
    let rhs = t.to_vec();
    for a in s.iter() {
        for &b in &rhs {
            out.bits.insert(g.op(a, b));
        }
    }
    Ok(out)
}

/// `S + T` in `Z/nZ` as a union of rotated copies of `T`, one word at a time.
fn cyclic_sumset(s: &Subset, t: &Subset) -> Subset {
    const W: usize = usize::BITS as usize;
    let n = s.group().order();
    let words = n.div_ceil(W);
    // Bit i of `twice` is T[i mod n], for i < 2n + W.
    let mut twice = vec![0usize; (2 * n).div_ceil(W) + 2];
    for b in t.iter() {
        for i in [b, b + n] {
            twice[i / W] |= 1 << (i % W);
        }
    }
    let window = |off: usize| {
        let (q, r) = (off / W, off % W);
        if r == 0 {
            twice[q]
        } else {
            (twice[q] >> r) | (twice[q + 1] << (W - r))
        }
    };
    let mut out = vec![0usize; words];
    for a in s.iter() {
        // Bit j of T + a is T[j - a], i.e. bit j - a + n of `twice`.
        for (w, slot) in out.iter_mut().enumerate() {
            *slot |= window(w * W + n - a);
        }
    }
    if !n.is_multiple_of(W) {
        out[words - 1] &= (1usize << (n % W)) - 1;
    }
    Subset {
        group: s.group().clone(),
        bits: FixedBitSet::with_capacity_and_blocks(n, out),
    }
}

/// Returns whether `|XX| <= 3|X|`, together with `|XX|`.
pub fn is_non_doubling(x: &Subset) -> Result<(bool, usize)> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let size = product_set(x, x)?.len();
    Ok((size <= 3 * x.len(), size))
}

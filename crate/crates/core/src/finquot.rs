//! Finite groups as multiplication tables, and exact homomorphism counts from
//! finitely presented groups into them.
//!
//! A count `|Hom(G, F)|` over a battery of small groups `F` is an isomorphism
//! invariant of `G`, cheap enough to serve as an oracle for presentation
//! transformations that are supposed to preserve the group.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fpgroup::Presentation;
use crate::par::Execution;

/// Default cap on relator evaluations plus search-tree nodes.
pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// Groups of order above this are not supported.
pub const MAX_ORDER: usize = 1024;

/// Associativity is checked exhaustively up to this order.
const ASSOC_CHECK_LIMIT: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        let name = name.into();
        let bad = |why: &str| Error::UnsupportedGroup(format!("{name}: {why}"));
        if order == 0 || order > MAX_ORDER {
            return Err(bad("order out of range"));
        }
        if table.len() != order * order {
            return Err(bad("table has wrong size"));
        }
        let mut seen = vec![false; order];
        for i in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if v >= order || std::mem::replace(&mut seen[v], true) {
                    return Err(bad("row is not a permutation"));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..order {
                let v = table[j * order + i] as usize;
                if v >= order || std::mem::replace(&mut seen[v], true) {
                    return Err(bad("column is not a permutation"));
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|j| table[e * order + j] as usize == j))
            .ok_or_else(|| bad("no identity"))?;
        if order <= ASSOC_CHECK_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(bad("not associative"));
                        }
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] as usize == identity)
                    .expect("latin square row contains the identity")
            })
            .collect();
        Ok(FiniteGroup {
            name,
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic(usize),
    /// Symmetries of a regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Alternating(n) => write!(f, "A{n}"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::UnsupportedGroup(s.to_string());
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(err)?;
        let n: usize = chars.as_str().parse().map_err(|_| err())?;
        match kind {
            'C' => Ok(GroupKind::Cyclic(n)),
            'D' => Ok(GroupKind::Dihedral(n)),
            'S' => Ok(GroupKind::Symmetric(n)),
            'A' => Ok(GroupKind::Alternating(n)),
            _ => Err(err()),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[u8]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

fn permutation_group(name: String, perms: Vec<Vec<u8>>) -> Result<FiniteGroup> {
    let order = perms.len();
    let index: std::collections::HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            // (a·b)(i) = a(b(i))
            let c: Vec<u8> = b.iter().map(|&i| a[i as usize]).collect();
            table.push(index[c.as_slice()] as u32);
        }
    }
    FiniteGroup::from_table(name, order, table)
}

pub fn build_group(kind: GroupKind) -> Result<FiniteGroup> {
    let name = kind.to_string();
    let unsupported = || Error::UnsupportedGroup(name.clone());
    match kind {
        GroupKind::Cyclic(n) => {
            if n == 0 || n > MAX_ORDER {
                return Err(unsupported());
            }
            let table = (0..n)
                .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
                .collect();
            FiniteGroup::from_table(name, n, table)
        }
        GroupKind::Dihedral(n) => {
            if n == 0 || 2 * n > MAX_ORDER {
                return Err(unsupported());
            }
            // element s*n + k is r^k f^s; r^a f^s · r^b f^t = r^(a ± b) f^(s+t)
            let order = 2 * n;
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                let (s, a) = (x / n, x % n);
                for y in 0..order {
                    let (t, b) = (y / n, y % n);
                    let k = if s == 0 { (a + b) % n } else { (a + n - b) % n };
                    table.push(((s ^ t) * n + k) as u32);
                }
            }
            FiniteGroup::from_table(name, order, table)
        }
        GroupKind::Symmetric(n) => {
            if n == 0 || n > 5 {
                return Err(unsupported());
            }
            permutation_group(name, permutations(n))
        }
        GroupKind::Alternating(n) => {
            if n == 0 || n > 5 {
                return Err(unsupported());
            }
            let perms = permutations(n).into_iter().filter(|p| is_even(p)).collect();
            permutation_group(name, perms)
        }
    }
}

/// An ordered list of target groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Battery {
    groups: Vec<FiniteGroup>,
}

/// `C2,C3,C6,S3,D4,A4,S4`
pub const DEFAULT_BATTERY: &str = "C2,C3,C6,S3,D4,A4,S4";

impl Battery {
    pub fn new(groups: Vec<FiniteGroup>) -> Self {
        Battery { groups }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let groups = spec
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| build_group(s.parse()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Battery { groups })
    }

    pub fn default_battery() -> Self {
        Battery::parse(DEFAULT_BATTERY).expect("default battery is valid")
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn names(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.name.clone()).collect()
    }
}

struct CompiledRelator {
    /// `(slot, power)` with `power` already reduced mod the group order.
    syllables: Vec<(usize, usize)>,
}

/// Relators rewritten against one target group and sorted by the search slot
/// at which they become fully assigned.
struct SearchPlan<'g> {
    group: &'g FiniteGroup,
    slots: usize,
    /// `power[a * order + k] = a^k`
    power: Vec<u32>,
    checks: Vec<Vec<CompiledRelator>>,
    free_factor: u64,
}

impl<'g> SearchPlan<'g> {
    fn new(p: &Presentation, group: &'g FiniteGroup) -> Result<Self> {
        let order = group.order;
        let u = p.num_generators();
        let mut slot_of = vec![usize::MAX; u];
        let mut slots = 0;
        for (g, slot) in slot_of.iter_mut().enumerate() {
            if p.relators().iter().any(|r| r.contains(g)) {
                *slot = slots;
                slots += 1;
            }
        }
        let unused = (u - slots) as u32;
        let free_factor = (order as u64)
            .checked_pow(unused)
            .ok_or_else(|| Error::InvalidParameter("homomorphism count overflows u64".into()))?;

        let modulus = BigInt::from(order);
        let mut checks: Vec<Vec<CompiledRelator>> = (0..slots).map(|_| Vec::new()).collect();
        for r in p.relators() {
            let syllables: Vec<(usize, usize)> = r
                .syllables()
                .iter()
                .map(|s| {
                    let k = s.exponent.mod_floor(&modulus).to_usize().expect("reduced");
                    (slot_of[s.generator], k)
                })
                .filter(|&(_, k)| k != 0)
                .collect();
            if let Some(last) = syllables.iter().map(|&(slot, _)| slot).max() {
                checks[last].push(CompiledRelator { syllables });
            }
        }

        let mut power = Vec::with_capacity(order * order);
        for a in 0..order {
            let mut x = group.identity;
            for _ in 0..order {
                power.push(x as u32);
                x = group.mul(x, a);
            }
        }
        Ok(SearchPlan {
            group,
            slots,
            power,
            checks,
            free_factor,
        })
    }

    fn holds(&self, r: &CompiledRelator, assignment: &[usize]) -> bool {
        let order = self.group.order;
        let mut acc = self.group.identity;
        for &(slot, k) in &r.syllables {
            let x = self.power[assignment[slot] * order + k] as usize;
            acc = self.group.mul(acc, x);
        }
        acc == self.group.identity
    }
}

/// Shared step counter. Work is flushed in batches; the search aborts once the
/// global total passes the budget. Because the search is exhaustive and its
/// total work does not depend on the schedule, the outcome (count or error)
/// is the same for every execution strategy.
struct Budget {
    limit: u64,
    used: AtomicU64,
    exceeded: AtomicBool,
}

const FLUSH_EVERY: u64 = 4096;

impl Budget {
    fn charge(&self, local: &mut u64) -> bool {
        let total = self.used.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total > self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

fn search(
    plan: &SearchPlan<'_>,
    slot: usize,
    assignment: &mut Vec<usize>,
    local: &mut u64,
    budget: &Budget,
) -> Option<u64> {
    if slot == plan.slots {
        return Some(1);
    }
    let mut count = 0;
    for x in 0..plan.group.order {
        *local += 1 + plan.checks[slot].len() as u64;
        if *local >= FLUSH_EVERY && !budget.charge(local) {
            return None;
        }
        assignment[slot] = x;
        if plan.checks[slot].iter().all(|r| plan.holds(r, assignment)) {
            count += search(plan, slot + 1, assignment, local, budget)?;
        }
    }
    Some(count)
}

/// Search controls for [`count_homomorphisms_with`].
#[derive(Clone, Copy, Debug)]
pub struct HomSearch {
    pub budget: u64,
    pub execution: Execution,
}

impl Default for HomSearch {
    fn default() -> Self {
        HomSearch {
            budget: DEFAULT_HOM_BUDGET,
            execution: Execution::default(),
        }
    }
}

pub fn count_homomorphisms(p: &Presentation, g: &FiniteGroup) -> Result<u64> {
    count_homomorphisms_with(p, g, HomSearch::default())
}

/// Exact `|Hom(⟨p⟩, g)|`. Generators that occur in no relator contribute a
/// factor `|g|` each and are not enumerated. The parallel split partitions on
/// the image of the first enumerated generator.
pub fn count_homomorphisms_with(p: &Presentation, g: &FiniteGroup, opts: HomSearch) -> Result<u64> {
    let plan = SearchPlan::new(p, g)?;
    let budget = Budget {
        limit: opts.budget,
        used: AtomicU64::new(0),
        exceeded: AtomicBool::new(false),
    };
    let exceeded = || Error::BudgetExceeded {
        budget: opts.budget,
    };

    let core = if plan.slots == 0 {
        1
    } else {
        let branches = opts.execution.map_range(g.order, |x0| {
            let mut assignment = vec![0; plan.slots];
            assignment[0] = x0;
            let mut local = 1 + plan.checks[0].len() as u64;
            let result = if plan.checks[0].iter().all(|r| plan.holds(r, &assignment)) {
                search(&plan, 1, &mut assignment, &mut local, &budget)
            } else {
                Some(0)
            };
            budget.charge(&mut local);
            result
        });
        if budget.exceeded.load(Ordering::Relaxed) {
            return Err(exceeded());
        }
        branches
            .into_iter()
            .map(|b| b.ok_or_else(exceeded))
            .sum::<Result<u64>>()?
    };
    core.checked_mul(plan.free_factor)
        .ok_or_else(|| Error::InvalidParameter("homomorphism count overflows u64".into()))
}

/// Counts over every group of the battery, in battery order.
pub fn hom_count_signature(p: &Presentation, battery: &Battery) -> Result<Vec<u64>> {
    hom_count_signature_with(p, battery, HomSearch::default())
}

pub fn hom_count_signature_with(
    p: &Presentation,
    battery: &Battery,
    opts: HomSearch,
) -> Result<Vec<u64>> {
    battery
        .groups
        .iter()
        .map(|g| count_homomorphisms_with(p, g, opts))
        .collect()
}

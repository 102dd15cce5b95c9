//! Heap decomposition of signed permutations.
//!
//! Elements insert as leaves of min-heap-ordered `k`-ary trees; a child's
//! sign must be opposite to its parent's. Each node of sign `s` offers up to
//! `k` free slots of polarity `-s` whose bound is the node's value. The
//! greedy rule attaches each element at the compatible slot with the largest
//! bound, starting a new tree when none exists, and is optimal: it minimizes
//! the number of trees. The optimality argument rests on signature
//! domination, which is exercised directly by the test suites.
//!
//! Sorting the nodes of a forest by value and writing each node's free-slot
//! count with its slot polarity yields a word whose evolution under greedy
//! insertion is exactly one left-killing process step per element; nodes with
//! no free slots remain as value-0 letters, which is what keeps the word's
//! tree statistic equal to the number of trees in the forest.

use std::collections::{BTreeMap, HashMap};
use std::ops::Bound::{Excluded, Unbounded};

use serde_json::{Value, json};

use crate::error::{Error, Result};
use crate::perm::SignedPermutation;
use crate::word::{Polarity, SignedLetter, Word};

/// Longest permutation the exhaustive minimum-tree search accepts.
pub const MAX_SEARCH_LEN: usize = 12;

/// A free child position: values in `[bound, inf)` carrying the slot's
/// polarity may attach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub bound: i64,
    pub polarity: Polarity,
}

#[derive(Debug, Clone)]
struct Node {
    value: i64,
    sign: Polarity,
    children: Vec<usize>,
}

/// A min-heap-ordered `k`-ary forest with alternating signs.
#[derive(Debug, Clone)]
pub struct HeapForest {
    k: u32,
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl HeapForest {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(HeapForest {
            k,
            nodes: Vec::new(),
            roots: Vec::new(),
        })
    }

    pub fn arity(&self) -> u32 {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    fn free_slot_count(&self, idx: usize) -> u32 {
        self.k - self.nodes[idx].children.len() as u32
    }

    /// Nodes offering a compatible free slot for `(value, sign)`, in
    /// insertion order.
    pub fn compatible_hosts(&self, value: i64, sign: Polarity) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(idx, node)| {
                node.sign == sign.flip() && node.value <= value && self.free_slot_count(*idx) > 0
            })
            .map(|(idx, _)| idx)
            .collect()
    }

    fn check_fresh(&self, value: i64) -> Result<()> {
        if self.nodes.iter().any(|n| n.value == value) {
            Err(Error::DuplicateForestValue { value })
        } else {
            Ok(())
        }
    }

    fn attach(&mut self, host: Option<usize>, value: i64, sign: Polarity) {
        let idx = self.nodes.len();
        self.nodes.push(Node {
            value,
            sign,
            children: Vec::new(),
        });
        match host {
            Some(parent) => self.nodes[parent].children.push(idx),
            None => self.roots.push(idx),
        }
    }

    /// Attaches `(value, sign)` at the compatible slot with the largest
    /// bound, or as a new root when no slot is compatible.
    pub fn greedy_insert(&self, value: i64, sign: Polarity) -> Result<HeapForest> {
        let mut next = self.clone();
        next.greedy_insert_mut(value, sign)?;
        Ok(next)
    }

    fn greedy_insert_mut(&mut self, value: i64, sign: Polarity) -> Result<()> {
        self.check_fresh(value)?;
        let host = self
            .compatible_hosts(value, sign)
            .into_iter()
            .reduce(|best, idx| {
                if self.nodes[idx].value > self.nodes[best].value {
                    idx
                } else {
                    best
                }
            });
        self.attach(host, value, sign);
        Ok(())
    }

    /// Attaches `(value, sign)` under the given host (a new root for
    /// `None`), validating slot compatibility. The arbitrary-insertion
    /// counterpart of [`greedy_insert`](Self::greedy_insert).
    pub fn insert_at(&self, host: Option<usize>, value: i64, sign: Polarity) -> Result<HeapForest> {
        self.check_fresh(value)?;
        if let Some(parent) = host {
            let node = &self.nodes[parent];
            let compatible = node.sign == sign.flip()
                && node.value <= value
                && self.free_slot_count(parent) > 0;
            if !compatible {
                return Err(Error::IncompatibleSlot {
                    bound: node.value,
                    value,
                });
            }
        }
        let mut next = self.clone();
        next.attach(host, value, sign);
        Ok(next)
    }

    /// All free slots of the forest, unsorted.
    pub fn free_slots(&self) -> Vec<Slot> {
        let mut slots = Vec::new();
        for (idx, node) in self.nodes.iter().enumerate() {
            for _ in 0..self.free_slot_count(idx) {
                slots.push(Slot {
                    bound: node.value,
                    polarity: node.sign.flip(),
                });
            }
        }
        slots
    }

    /// Sorted multiset of free-slot bounds of one polarity.
    pub fn signature(&self, polarity: Polarity) -> Signature {
        let values = self
            .free_slots()
            .into_iter()
            .filter(|s| s.polarity == polarity)
            .map(|s| s.bound)
            .collect();
        Signature::new(polarity, values)
    }

    pub fn signatures(&self) -> SignaturePair {
        SignaturePair {
            plus: self.signature(Polarity::Plus),
            minus: self.signature(Polarity::Minus),
        }
    }

    /// The slot word of the forest: nodes sorted by value, each contributing
    /// a letter whose value is its free-slot count and whose polarity is its
    /// slot polarity. Nodes with no free slots contribute value-0 letters.
    pub fn to_word(&self) -> Word {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&idx| self.nodes[idx].value);
        let letters = order
            .into_iter()
            .map(|idx| SignedLetter::new(self.free_slot_count(idx), self.nodes[idx].sign.flip()))
            .collect();
        Word::new(letters, self.k).expect("slot counts bounded by k")
    }

    /// Verifies heap order, sign alternation, child capacity, and tree
    /// structure; used by tests on every constructed forest.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut seen = vec![false; self.nodes.len()];
        for &root in &self.roots {
            seen[root] = true;
        }
        for (idx, node) in self.nodes.iter().enumerate() {
            if node.children.len() > self.k as usize {
                return Err(format!("node {idx} exceeds {} children", self.k));
            }
            for &child in &node.children {
                let c = &self.nodes[child];
                if c.value < node.value {
                    return Err(format!(
                        "heap order violated: child {} under parent {}",
                        c.value, node.value
                    ));
                }
                if c.sign != node.sign.flip() {
                    return Err(format!(
                        "sign alternation violated at child {} of {}",
                        c.value, node.value
                    ));
                }
                if seen[child] {
                    return Err(format!("node index {child} attached twice"));
                }
                seen[child] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err("orphan node outside every tree".to_string());
        }
        Ok(())
    }

    /// DOT rendering with circle nodes labeled `value/sign` and boxed stubs
    /// for free slots labeled with their admission interval.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph forest {\n");
        for (idx, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!(
                "  n{idx} [shape=circle, label=\"{}/{}\"];\n",
                node.value, node.sign
            ));
        }
        for (idx, node) in self.nodes.iter().enumerate() {
            for &child in &node.children {
                out.push_str(&format!("  n{idx} -> n{child};\n"));
            }
            for slot in 0..self.free_slot_count(idx) {
                out.push_str(&format!(
                    "  s{idx}_{slot} [shape=box, label=\"[{},inf){}\"];\n",
                    node.value,
                    node.sign.flip()
                ));
                out.push_str(&format!("  n{idx} -> s{idx}_{slot} [style=dashed];\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let trees: Vec<Value> = self.roots.iter().map(|&r| self.node_json(r)).collect();
        json!({ "k": self.k, "trees": trees })
    }

    fn node_json(&self, idx: usize) -> Value {
        let node = &self.nodes[idx];
        json!({
            "value": node.value,
            "sign": node.sign.to_string(),
            "free_slots": self.free_slot_count(idx),
            "children": node.children.iter().map(|&c| self.node_json(c)).collect::<Vec<_>>(),
        })
    }
}

/// Folds [`HeapForest::greedy_insert`] over the permutation; returns the
/// forest and its tree count.
pub fn greedy_decompose(p: &SignedPermutation, k: u32) -> Result<(HeapForest, usize)> {
    let mut forest = HeapForest::new(k)?;
    for (value, sign) in p.iter() {
        forest.greedy_insert_mut(value, sign)?;
    }
    let trees = forest.tree_count();
    Ok((forest, trees))
}

/// The true minimum number of trees over all legal insertion sequences,
/// found by exhaustive search over slot choices. States are memoized on the
/// signature pair, which determines all future feasibility.
pub fn brute_force_min_trees(p: &SignedPermutation, k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    if p.len() > MAX_SEARCH_LEN {
        return Err(Error::ResourceLimit {
            what: "exhaustive decomposition search length",
            limit: MAX_SEARCH_LEN,
        });
    }
    let items: Vec<(i64, Polarity)> = p.iter().collect();
    let mut memo = HashMap::new();
    Ok(search_min_trees(
        &items,
        0,
        &(Vec::new(), Vec::new()),
        k,
        &mut memo,
    ) as usize)
}

type SlotState = (Vec<i64>, Vec<i64>);

fn side(state: &SlotState, polarity: Polarity) -> &Vec<i64> {
    match polarity {
        Polarity::Plus => &state.0,
        Polarity::Minus => &state.1,
    }
}

fn side_mut(state: &mut SlotState, polarity: Polarity) -> &mut Vec<i64> {
    match polarity {
        Polarity::Plus => &mut state.0,
        Polarity::Minus => &mut state.1,
    }
}

fn add_slots(state: &mut SlotState, polarity: Polarity, bound: i64, count: u32) {
    let values = side_mut(state, polarity);
    let at = values.partition_point(|&v| v <= bound);
    values.splice(at..at, std::iter::repeat_n(bound, count as usize));
}

fn search_min_trees(
    items: &[(i64, Polarity)],
    idx: usize,
    state: &SlotState,
    k: u32,
    memo: &mut HashMap<(usize, SlotState), u64>,
) -> u64 {
    if idx == items.len() {
        return 0;
    }
    let key = (idx, state.clone());
    if let Some(&cached) = memo.get(&key) {
        return cached;
    }
    let (value, sign) = items[idx];
    // start a new tree
    let mut next = state.clone();
    add_slots(&mut next, sign.flip(), value, k);
    let mut best = 1 + search_min_trees(items, idx + 1, &next, k, memo);
    // or consume a compatible slot; equal bounds are interchangeable
    let bounds = side(state, sign);
    let mut previous = None;
    let compatible = bounds.partition_point(|&b| b <= value);
    for (pos, &bound) in bounds[..compatible].iter().enumerate() {
        if previous == Some(bound) {
            continue;
        }
        previous = Some(bound);
        let mut next = state.clone();
        side_mut(&mut next, sign).remove(pos);
        add_slots(&mut next, sign.flip(), value, k);
        best = best.min(search_min_trees(items, idx + 1, &next, k, memo));
    }
    memo.insert(key, best);
    best
}

/// Sorted multiset of free-slot bounds of one polarity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    polarity: Polarity,
    values: Vec<i64>,
}

impl Signature {
    pub fn new(polarity: Polarity, mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        Signature { polarity, values }
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The positive and negative signatures of a forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignaturePair {
    pub plus: Signature,
    pub minus: Signature,
}

impl SignaturePair {
    /// Componentwise order: `self` dominates `other` when each of its
    /// signatures is no longer and pointwise no larger.
    pub fn dominates(&self, other: &SignaturePair) -> bool {
        sequence_dominates(self.plus.values(), other.plus.values())
            && sequence_dominates(self.minus.values(), other.minus.values())
    }
}

/// Free-function form of [`SignaturePair::dominates`].
pub fn dominates(a: &SignaturePair, b: &SignaturePair) -> bool {
    a.dominates(b)
}

fn sequence_dominates(a: &[i64], b: &[i64]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Victim selection for a multiset Hammersley insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Victim {
    /// The smallest element larger than the inserted one, if any.
    Greedy,
    /// A caller-chosen element, validated to be larger and present.
    Element(i64),
    /// Decrement nothing.
    None,
}

/// A multiset of integers with per-element multiplicity at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMultiset {
    k: u32,
    counts: BTreeMap<i64, u32>,
}

impl KMultiset {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(KMultiset {
            k,
            counts: BTreeMap::new(),
        })
    }

    /// Builds a multiset from `(element, multiplicity)` pairs; zero
    /// multiplicities are dropped and multiplicities above `k` rejected.
    pub fn from_counts<I: IntoIterator<Item = (i64, u32)>>(k: u32, pairs: I) -> Result<Self> {
        let mut set = KMultiset::new(k)?;
        for (value, mult) in pairs {
            if mult > k {
                return Err(Error::ValueOutOfRange { value: mult, k });
            }
            if mult > 0 {
                set.counts.insert(value, mult);
            }
        }
        Ok(set)
    }

    pub fn arity(&self) -> u32 {
        self.k
    }

    pub fn multiplicity_of(&self, x: i64) -> u32 {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.multiplicity_of(x) > 0
    }

    /// Total size counting multiplicities.
    pub fn len(&self) -> usize {
        self.counts.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Non-decreasing expansion with repetitions.
    pub fn sorted_elements(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len());
        for (&value, &count) in &self.counts {
            out.extend(std::iter::repeat_n(value, count as usize));
        }
        out
    }

    /// Inserts `x` with multiplicity `k` and reduces the victim's
    /// multiplicity by one.
    pub fn hammersley_insert(&self, x: i64, victim: Victim) -> Result<KMultiset> {
        if self.contains(x) {
            return Err(Error::DuplicateMultisetValue { value: x });
        }
        let mut next = self.clone();
        next.counts.insert(x, self.k);
        let chosen = match victim {
            Victim::Greedy => next
                .counts
                .range((Excluded(x), Unbounded))
                .find(|&(_, &count)| count > 0)
                .map(|(&value, _)| value),
            Victim::Element(y) => {
                if y <= x || !self.contains(y) {
                    return Err(Error::InvalidVictim {
                        victim: y,
                        inserted: x,
                    });
                }
                Some(y)
            }
            Victim::None => None,
        };
        if let Some(y) = chosen {
            let count = next.counts.get_mut(&y).expect("victim present");
            *count -= 1;
            if *count == 0 {
                next.counts.remove(&y);
            }
        }
        Ok(next)
    }

    /// The left-killing mirror of [`hammersley_insert`](Self::hammersley_insert):
    /// the victim lies below `x` and the greedy choice is the largest such
    /// element. This is the variant the slot signatures of a forest follow
    /// under greedy insertion (consuming the slot with the largest compatible
    /// bound), and the variant whose domination behavior the forest results
    /// rely on.
    pub fn hammersley_insert_mirrored(&self, x: i64, victim: Victim) -> Result<KMultiset> {
        if self.contains(x) {
            return Err(Error::DuplicateMultisetValue { value: x });
        }
        let mut next = self.clone();
        next.counts.insert(x, self.k);
        let chosen = match victim {
            Victim::Greedy => next
                .counts
                .range(..x)
                .rev()
                .find(|&(_, &count)| count > 0)
                .map(|(&value, _)| value),
            Victim::Element(y) => {
                if y >= x || !self.contains(y) {
                    return Err(Error::InvalidVictim {
                        victim: y,
                        inserted: x,
                    });
                }
                Some(y)
            }
            Victim::None => None,
        };
        if let Some(y) = chosen {
            let count = next.counts.get_mut(&y).expect("victim present");
            *count -= 1;
            if *count == 0 {
                next.counts.remove(&y);
            }
        }
        Ok(next)
    }

    /// Inserts a fresh `x` with multiplicity `k` and no victim.
    pub fn insert_full(&self, x: i64) -> Result<KMultiset> {
        self.hammersley_insert(x, Victim::None)
    }

    /// Removes every copy of `x`.
    pub fn delete_all(&self, x: i64) -> Result<KMultiset> {
        if !self.contains(x) {
            return Err(Error::MissingMultisetValue { value: x });
        }
        let mut next = self.clone();
        next.counts.remove(&x);
        Ok(next)
    }

    /// Multiset domination: no larger, and pointwise no larger on the sorted
    /// expansions.
    pub fn dominates(&self, other: &KMultiset) -> bool {
        sequence_dominates(&self.sorted_elements(), &other.sorted_elements())
    }
}

/// Runs the unsigned single-heap greedy construction on `values` and reads a
/// sign for each element off the parent links: the first element is positive
/// and every other element takes the negation of its parent's sign. Returns
/// `None` when some element has no eligible parent (the sequence cannot form
/// one heap), in which case no signing derived this way exists.
pub fn derive_sign(values: &[i64], k: u32) -> Result<Option<Vec<Polarity>>> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut signs: Vec<Polarity> = Vec::with_capacity(values.len());
    // (value, children) per already-placed element
    let mut placed: Vec<(i64, u32)> = Vec::with_capacity(values.len());
    for (i, &value) in values.iter().enumerate() {
        if placed.iter().any(|&(v, _)| v == value) {
            return Err(Error::DuplicateValue { value });
        }
        if i == 0 {
            signs.push(Polarity::Plus);
            placed.push((value, 0));
            continue;
        }
        let parent = placed
            .iter()
            .enumerate()
            .filter(|&(_, &(v, children))| v < value && children < k)
            .max_by_key(|&(_, &(v, _))| v)
            .map(|(idx, _)| idx);
        let Some(parent) = parent else {
            return Ok(None);
        };
        placed[parent].1 += 1;
        signs.push(signs[parent].flip());
        placed.push((value, 0));
    }
    Ok(Some(signs))
}

/// Free-function form of [`HeapForest::to_word`].
pub fn forest_to_word(forest: &HeapForest) -> Word {
    forest.to_word()
}

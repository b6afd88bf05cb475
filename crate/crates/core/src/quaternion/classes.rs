//! Left ideal classes of a maximal order, enumerated through the neighbor graph.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;

use super::algebra::algebra_for_level;
use super::ideal::{
    class_signature, ideal_equivalent, neighbors, normalize, pair_form, unit_weight, LeftIdeal,
};
use super::order::{maximal_order, MaximalOrder};
use crate::arith::lattice::{isqrt_i128, GramForm};
use crate::arith::modp::{is_prime, legendre};
use crate::error::{Error, Result};

/// Representatives of the left ideal classes together with the orders of the
/// unit groups of their right orders.
#[derive(Debug)]
pub struct ClassSet {
    order: MaximalOrder,
    reps: Vec<LeftIdeal>,
    weights: Vec<u32>,
    signatures: HashMap<Vec<u64>, Vec<usize>>,
    sig_bound: u64,
    pair_forms: Vec<OnceLock<GramForm>>,
}

impl ClassSet {
    pub fn level(&self) -> u64 {
        self.order.level()
    }

    pub fn order(&self) -> &MaximalOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[LeftIdeal] {
        &self.reps
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `sum 24 / w_i`, which equals `N - 1`.
    pub fn mass_times_24(&self) -> u64 {
        self.weights.iter().map(|&w| 24 / w as u64).sum()
    }

    /// Reduced norm form on `conj(I_j) I_i`, cached; symmetric in `i, j`.
    pub fn pair_form(&self, i: usize, j: usize) -> Result<&GramForm> {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let slot = &self.pair_forms[b * (b + 1) / 2 + a];
        if let Some(g) = slot.get() {
            return Ok(g);
        }
        let g = pair_form(&self.order, &self.reps[a], &self.reps[b])?;
        Ok(slot.get_or_init(|| g))
    }

    /// Index of the class containing `ideal`.
    pub fn class_of(&self, ideal: &LeftIdeal) -> Result<usize> {
        let small = normalize(&self.order, ideal)?;
        let sig = class_signature(&self.order, &small, self.sig_bound)?;
        if let Some(cands) = self.signatures.get(&sig) {
            for &c in cands {
                if ideal_equivalent(&self.order, &small, &self.reps[c])? {
                    return Ok(c);
                }
            }
        }
        Err(Error::internal("ideal matches no class representative"))
    }
}

/// Theta bound for class signatures: a few vectors beyond the minimum.
fn signature_bound(n: u64) -> u64 {
    isqrt_i128(n as i128) as u64 + 3
}

/// Prime used to walk the neighbor graph.
pub fn neighbor_prime(n: u64) -> u64 {
    if n == 2 {
        3
    } else {
        2
    }
}

/// Enumerate the class set of the maximal order attached to level `N` by a
/// breadth-first walk, stopping when the mass formula is met.
pub fn left_ideal_classes(n: u64) -> Result<ClassSet> {
    let ord = maximal_order(&algebra_for_level(n)?)?;
    classes_of_order(ord)
}

/// As [`left_ideal_classes`], for a given maximal order.
pub fn classes_of_order(ord: MaximalOrder) -> Result<ClassSet> {
    let n = ord.level();
    let target = n - 1;
    let p = neighbor_prime(n);
    let sig_bound = signature_bound(n);
    let o = LeftIdeal::unit(&ord);
    let mut set = ClassSet {
        reps: vec![o.clone()],
        weights: vec![unit_weight(&ord, &o)?],
        signatures: HashMap::from([(class_signature(&ord, &o, sig_bound)?, vec![0])]),
        sig_bound,
        pair_forms: Vec::new(),
        order: ord,
    };
    let mut mass = set.mass_times_24();
    let mut queue = VecDeque::from([0usize]);
    while mass < target {
        let Some(cur) = queue.pop_front() else {
            return Err(Error::internal(format!(
                "neighbor graph exhausted at mass {mass}/{target}"
            )));
        };
        let base = set.reps[cur].clone();
        for nb in neighbors(&set.order, &base, p)? {
            let small = normalize(&set.order, &nb)?;
            let sig = class_signature(&set.order, &small, sig_bound)?;
            let known = match set.signatures.get(&sig) {
                Some(cands) => {
                    let mut hit = false;
                    for &c in cands {
                        if ideal_equivalent(&set.order, &small, &set.reps[c])? {
                            hit = true;
                            break;
                        }
                    }
                    hit
                }
                None => false,
            };
            if known {
                continue;
            }
            let w = unit_weight(&set.order, &small)?;
            if w == 0 || 24 % w != 0 {
                return Err(Error::internal(format!("unit group of order {w}")));
            }
            let idx = set.reps.len();
            set.reps.push(small);
            set.weights.push(w);
            set.signatures.entry(sig).or_default().push(idx);
            queue.push_back(idx);
            mass += 24 / w as u64;
            if mass >= target {
                break;
            }
        }
    }
    if mass != target {
        return Err(Error::internal(format!("mass {mass} exceeds {target}")));
    }
    let h = set.reps.len();
    set.pair_forms = (0..h * (h + 1) / 2).map(|_| OnceLock::new()).collect();
    Ok(set)
}

/// Class number of a maximal order in the algebra ramified at `{N, inf}`.
pub fn eichler_class_number(n: u64) -> Result<u64> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if n <= 3 {
        return Ok(1);
    }
    // 12 h = (N - 1) + 3 (1 - (-4/N)) + 4 (1 - (-3/N))
    let a = 1 - legendre(-1, n) as i64;
    let b = 1 - legendre(-3, n) as i64;
    let twelve_h = (n as i64 - 1) + 3 * a + 4 * b;
    let (h, r) = twelve_h.div_rem(&12);
    if r != 0 {
        return Err(Error::internal("class number formula is not integral"));
    }
    Ok(h as u64)
}

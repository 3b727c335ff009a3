use std::sync::Arc;

use super::{QuotientElement, QuotientGroup};
use crate::error::{Error, Result};

/// Left cosets gH of a subgroup H in a finite group, with the left action of the group.
///
/// Each coset is represented by its smallest element (in the ambient order) and
/// cosets are numbered by increasing representative.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    ambient: Arc<QuotientGroup>,
    subgroup: Arc<QuotientGroup>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl CosetSpace {
    pub fn new(ambient: Arc<QuotientGroup>, subgroup: Arc<QuotientGroup>) -> Result<CosetSpace> {
        if !subgroup.is_subgroup_of(&ambient) {
            return Err(Error::DescriptorMismatch("subgroup is not contained in the ambient group".into()));
        }
        let n = ambient.len();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / subgroup.len().max(1));
        for g in 0..n {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g as u32);
            let x = ambient.element(g);
            for h in subgroup.elements() {
                let y = ambient
                    .index_of(&x.mul(h))
                    .ok_or_else(|| Error::DescriptorMismatch("ambient is not closed".into()))?;
                coset_of[y] = c;
            }
        }
        Ok(CosetSpace { ambient, subgroup, coset_of, reps })
    }

    pub fn ambient(&self) -> &Arc<QuotientGroup> {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Arc<QuotientGroup> {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, c: usize) -> QuotientElement {
        self.ambient.element(self.reps[c] as usize)
    }

    /// The coset containing g.
    pub fn coset_of(&self, g: &QuotientElement) -> usize {
        let i = self.ambient.index_of(g).expect("element of the ambient group");
        self.coset_of[i] as usize
    }

    /// The coset eH.
    pub fn base(&self) -> usize {
        self.coset_of(&self.ambient.identity())
    }

    /// g . (xH) = (gx)H.
    pub fn act(&self, g: &QuotientElement, c: usize) -> usize {
        self.coset_of(&g.mul(&self.representative(c)))
    }

    /// The permutation of cosets induced by g.
    pub fn action_table(&self, g: &QuotientElement) -> Vec<u32> {
        (0..self.len()).map(|c| self.act(g, c) as u32).collect()
    }

    /// Orbits of the cosets under left multiplication by `n` (for normal n these
    /// are the double cosets n \ G / H). Returns the orbit index of each coset.
    pub fn orbits_under(&self, n: &QuotientGroup) -> (Vec<usize>, usize) {
        let mut orbit = vec![usize::MAX; self.len()];
        let mut count = 0;
        for c in 0..self.len() {
            if orbit[c] != usize::MAX {
                continue;
            }
            let mut stack = vec![c];
            orbit[c] = count;
            while let Some(d) = stack.pop() {
                for x in n.elements() {
                    let t = self.act(x, d);
                    if orbit[t] == usize::MAX {
                        orbit[t] = count;
                        stack.push(t);
                    }
                }
            }
            count += 1;
        }
        (orbit, count)
    }
}

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::smith::smith_normal_form;
use super::{AbelianGroup, Element, GroupTable};
use crate::error::{Error, Result};

/// A subgroup, identified extensionally by its sorted element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: AbelianGroup,
    indices: Vec<usize>,
    generators: Vec<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.indices == other.indices
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then lexicographically by element list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.indices.len(), &self.indices, &self.parent).cmp(&(
            other.indices.len(),
            &other.indices,
            &other.parent,
        ))
    }
}

/// `S + <g>` as a membership mask.
fn join(table: &GroupTable, mask: &[bool], g: usize) -> Vec<bool> {
    let mut multiples = vec![0usize];
    let mut m = g;
    while m != 0 {
        multiples.push(m);
        m = table.add(m, g);
    }
    let mut out = vec![false; mask.len()];
    for (s, _) in mask.iter().enumerate().filter(|(_, &b)| b) {
        for &k in &multiples {
            out[table.add(s, k)] = true;
        }
    }
    out
}

fn mask_indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

impl Subgroup {
    fn from_mask(parent: &AbelianGroup, mask: &[bool], generators: Vec<Element>) -> Self {
        Subgroup {
            parent: parent.clone(),
            indices: mask_indices(mask),
            generators,
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: &AbelianGroup, gens: &[Element]) -> Result<Self> {
        for g in gens {
            parent.check(g)?;
        }
        let table = parent.table();
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut used = Vec::new();
        for g in gens {
            let gi = parent.index(g);
            if !mask[gi] {
                mask = join(&table, &mask, gi);
                used.push(g.clone());
            }
        }
        Ok(Self::from_mask(parent, &mask, used))
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            indices: vec![0],
            generators: vec![],
        }
    }

    pub fn whole(parent: &AbelianGroup) -> Self {
        let gens: Vec<Element> = (0..parent.rank()).map(|i| parent.generator(i)).collect();
        Self::generated(parent, &gens).expect("standard generators belong to the group")
    }

    /// Validate that `elements` form a subgroup.
    pub fn from_elements(parent: &AbelianGroup, elements: &[Element]) -> Result<Self> {
        for g in elements {
            parent.check(g)?;
        }
        let mut mask = vec![false; parent.order()];
        for g in elements {
            mask[parent.index(g)] = true;
        }
        let table = parent.table();
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let idx = mask_indices(&mask);
        for &a in &idx {
            if !mask[table.neg(a)] {
                return Err(Error::NotSubgroup(format!(
                    "not closed under negation at {}",
                    parent.element(a)
                )));
            }
            for &b in &idx {
                if !mask[table.add(a, b)] {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under addition at {} + {}",
                        parent.element(a),
                        parent.element(b)
                    )));
                }
            }
        }
        let elems: Vec<Element> = idx.iter().map(|&i| parent.element(i)).collect();
        let gens = Self::generated(parent, &elems)?.generators;
        Ok(Self::from_mask(parent, &mask, gens))
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.len() == 1
    }

    /// Sorted element indices in the parent.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn elements(&self) -> Vec<Element> {
        self.indices
            .iter()
            .map(|&i| self.parent.element(i))
            .collect()
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.parent.contains(g) && self.contains_index(self.parent.index(g))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.indices.iter().all(|&i| other.contains_index(i))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::ShapeMismatch("subgroups of different groups".into()));
        }
        let elems: Vec<Element> = self
            .indices
            .iter()
            .filter(|&&i| other.contains_index(i))
            .map(|&i| self.parent.element(i))
            .collect();
        Subgroup::from_elements(&self.parent, &elems)
    }

    /// An explicit isomorphism from a cyclic-factor group onto this subgroup.
    pub fn presentation(&self) -> SubgroupPresentation {
        SubgroupPresentation::new(self)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, g) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Every subgroup of `group` exactly once, sorted by order and then by
/// element list.
pub fn all_subgroups(group: &AbelianGroup, bound: usize) -> Result<Vec<Subgroup>> {
    let n = group.order();
    if n > bound {
        return Err(Error::GroupTooLarge { order: n, bound });
    }
    let table = group.table();
    let mut start = vec![false; n];
    start[0] = true;
    let mut seen: HashSet<Vec<bool>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
    let mut out = Vec::new();
    // breadth first, so each subgroup is first reached through a shortest
    // generating sequence
    while let Some((mask, gens)) = queue.pop_front() {
        for g in 0..n {
            if mask[g] {
                continue;
            }
            let next = join(&table, &mask, g);
            if seen.insert(next.clone()) {
                let mut ng = gens.clone();
                ng.push(g);
                queue.push_back((next, ng));
            }
        }
        let gens = gens.iter().map(|&i| group.element(i)).collect();
        out.push(Subgroup::from_mask(group, &mask, gens));
    }
    out.sort();
    Ok(out)
}

/// `G/H` in cyclic-factor (invariant factor) form, with the projection and
/// lexicographically least coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    parent: AbelianGroup,
    group: AbelianGroup,
    // columns of the Smith transform for the nontrivial invariant factors
    projection: Vec<Vec<i64>>,
    moduli: Vec<i64>,
    representatives: Vec<Element>,
}

impl Quotient {
    pub fn new(parent: &AbelianGroup, h: &Subgroup) -> Result<Self> {
        if h.parent() != parent {
            return Err(Error::NotSubgroup(format!(
                "{h} is not a subgroup of {parent}"
            )));
        }
        let r = parent.rank();
        let mut relations: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            parent.factors()[i] as i64
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        for g in h.generators() {
            relations.push(g.coords().iter().map(|&c| c as i64).collect());
        }
        let snf = smith_normal_form(&relations, r);
        let mut projection = Vec::new();
        let mut moduli = Vec::new();
        for (j, &d) in snf.diag.iter().enumerate() {
            if d > 1 {
                projection.push(snf.v.iter().map(|row| row[j]).collect());
                moduli.push(d);
            }
        }
        let group = if moduli.is_empty() {
            AbelianGroup::trivial()
        } else {
            AbelianGroup::new(moduli.iter().map(|&d| d as u32).collect())?
        };
        if group.order() * h.order() != parent.order() {
            return Err(Error::InternalInconsistency(format!(
                "|{parent}/H| computed as {} for |H| = {}",
                group.order(),
                h.order()
            )));
        }
        let mut q = Quotient {
            parent: parent.clone(),
            group,
            projection,
            moduli,
            representatives: Vec::new(),
        };
        let mut reps: Vec<Option<Element>> = vec![None; q.group.order()];
        for g in parent.elements() {
            let k = q.coset_index(&g);
            if reps[k].is_none() {
                reps[k] = Some(g);
            }
        }
        q.representatives = reps
            .into_iter()
            .map(|r| {
                r.ok_or_else(|| Error::InternalInconsistency("coset map not surjective".into()))
            })
            .collect::<Result<_>>()?;
        Ok(q)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    /// Image of `g` in the quotient group.
    pub fn project(&self, g: &Element) -> Element {
        if self.moduli.is_empty() {
            return self.group.zero();
        }
        let coords: Vec<i64> = self
            .projection
            .iter()
            .zip(&self.moduli)
            .map(|(col, &d)| {
                let s: i64 = g
                    .coords()
                    .iter()
                    .zip(col)
                    .map(|(&c, &v)| c as i64 * v)
                    .sum();
                s.rem_euclid(d)
            })
            .collect();
        self.group.reduce(&coords)
    }

    /// Index of the coset of `g` (position of its image in the quotient).
    pub fn coset_index(&self, g: &Element) -> usize {
        self.group.index(&self.project(g))
    }

    /// Lexicographically least member of each coset, by coset index.
    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }
}

/// An isomorphism `group → subgroup` given by the images of the standard
/// generators of `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    subgroup: Subgroup,
    group: AbelianGroup,
    images: Vec<Element>,
}

impl SubgroupPresentation {
    fn new(h: &Subgroup) -> Self {
        let parent = h.parent();
        let gens = h.generators();
        let (r, m) = (parent.rank(), gens.len());
        if m == 0 {
            return SubgroupPresentation {
                subgroup: h.clone(),
                group: AbelianGroup::trivial(),
                images: vec![parent.zero()],
            };
        }
        // left kernel of [A; diag(n)] gives the relations among the generators
        let mut stacked: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.coords().iter().map(|&c| c as i64).collect())
            .collect();
        for i in 0..r {
            stacked.push(
                (0..r)
                    .map(|j| {
                        if i == j {
                            parent.factors()[i] as i64
                        } else {
                            0
                        }
                    })
                    .collect(),
            );
        }
        let snf = smith_normal_form(&stacked, r);
        let rank = snf.diag.iter().filter(|&&d| d != 0).count();
        let relations: Vec<Vec<i64>> = snf.u[rank..].iter().map(|row| row[..m].to_vec()).collect();
        let rel = smith_normal_form(&relations, m);
        let mut factors = Vec::new();
        let mut images = Vec::new();
        for (j, &d) in rel.diag.iter().enumerate() {
            assert!(d != 0, "subgroup of a finite group presented as infinite");
            if d > 1 {
                factors.push(d as u32);
                let mut coords = vec![0i64; r];
                for (k, g) in gens.iter().enumerate() {
                    let c = rel.v_inv[j][k];
                    for (x, &y) in coords.iter_mut().zip(g.coords()) {
                        *x += c * y as i64;
                    }
                }
                images.push(parent.reduce(&coords));
            }
        }
        let (group, images) = if factors.is_empty() {
            (AbelianGroup::trivial(), vec![parent.zero()])
        } else {
            (
                AbelianGroup::new(factors).expect("positive factors"),
                images,
            )
        };
        let p = SubgroupPresentation {
            subgroup: h.clone(),
            group,
            images,
        };
        assert_eq!(p.group.order(), h.order(), "presentation order mismatch");
        p
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// The abstract cyclic-factor group.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generator_images(&self) -> &[Element] {
        &self.images
    }

    /// Image of an element of the abstract group inside the parent.
    pub fn embed(&self, a: &Element) -> Element {
        let parent = self.subgroup.parent();
        let mut coords = vec![0i64; parent.rank()];
        for (&k, img) in a.coords().iter().zip(&self.images) {
            for (x, &y) in coords.iter_mut().zip(img.coords()) {
                *x += k as i64 * y as i64;
            }
        }
        parent.reduce(&coords)
    }
}

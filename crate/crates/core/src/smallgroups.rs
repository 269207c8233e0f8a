//! Catalog of the groups of order at most 8, as validated multiplication
//! tables. Identity is always index 0; every table is checked against the
//! group laws when built.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupTableError {
    #[error("{group}: multiplication entry out of range")]
    EntryOutOfRange { group: String },
    #[error("{group}: index 0 is not an identity")]
    BadIdentity { group: String },
    #[error("{group}: associativity fails at ({a}, {b}, {c})")]
    NotAssociative {
        group: String,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("{group}: element {a} has no inverse")]
    MissingInverse { group: String, a: usize },
    #[error("catalog covers orders up to 8, requested {0}")]
    UnsupportedOrder(usize),
    #[error("map is not an automorphism of {group}")]
    NotAnAutomorphism { group: String },
}

/// A finite group as a complete multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteGroup {
    /// Builds and validates a table. `mul` is row-major: entry a*order + b
    /// is the product ab.
    pub fn from_table(name: &str, order: usize, mul: Vec<u16>) -> Result<FiniteGroup, GroupTableError> {
        let group = name.to_string();
        if mul.len() != order * order || mul.iter().any(|&x| x as usize >= order) {
            return Err(GroupTableError::EntryOutOfRange { group });
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupTableError::BadIdentity { group });
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupTableError::NotAssociative { group, a, b, c });
                    }
                }
            }
        }
        let mut inv = vec![0u16; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            let Some(b) = (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) else {
                return Err(GroupTableError::MissingInverse { group, a });
            };
            *slot = b as u16;
        }
        Ok(FiniteGroup {
            name: group,
            order,
            mul,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let (base, reps) = if k < 0 {
            (self.inv(a), (-k) as usize)
        } else {
            (a, k as usize)
        };
        let mut acc = self.identity();
        for _ in 0..reps {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != self.identity() {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Sorted closure of a generator list.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut members = vec![self.identity()];
        let mut seen = vec![false; self.order];
        seen[self.identity()] = true;
        let mut cursor = 0;
        while cursor < members.len() {
            let e = members[cursor];
            cursor += 1;
            for &g in generators {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// True iff some member generates the whole member set.
    pub fn is_cyclic_subgroup(&self, members: &[usize]) -> bool {
        members
            .iter()
            .any(|&m| self.element_order(m) == members.len())
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.order {
            return false;
        }
        let mut hit = vec![false; self.order];
        for &x in map {
            if x >= self.order || hit[x] {
                return false;
            }
            hit[x] = true;
        }
        (0..self.order)
            .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// The subgroup of Aut(G) generated by all inner automorphisms plus the
    /// supplied outer representatives, as permutation maps, sorted.
    pub fn automorphism_group(
        &self,
        outer_reps: &[Vec<usize>],
    ) -> Result<Vec<Vec<usize>>, GroupTableError> {
        for rep in outer_reps {
            if !self.is_automorphism(rep) {
                return Err(GroupTableError::NotAnAutomorphism {
                    group: self.name.clone(),
                });
            }
        }
        let mut generators: Vec<Vec<usize>> = (0..self.order)
            .map(|g| {
                (0..self.order)
                    .map(|x| self.mul(self.mul(self.inv(g), x), g))
                    .collect()
            })
            .collect();
        generators.extend(outer_reps.iter().cloned());
        let identity: Vec<usize> = (0..self.order).collect();
        let mut set: std::collections::HashSet<Vec<usize>> =
            std::iter::once(identity.clone()).collect();
        let mut queue = vec![identity];
        let mut cursor = 0;
        while cursor < queue.len() {
            let f = queue[cursor].clone();
            cursor += 1;
            for g in &generators {
                let composed: Vec<usize> = (0..self.order).map(|x| g[f[x]]).collect();
                if set.insert(composed.clone()) {
                    queue.push(composed);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = set.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

fn cyclic(name: &str, k: usize) -> FiniteGroup {
    let mul = (0..k)
        .flat_map(|a| (0..k).map(move |b| ((a + b) % k) as u16))
        .collect();
    FiniteGroup::from_table(name, k, mul).expect("cyclic table satisfies the laws")
}

fn direct_product(name: &str, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let order = a.order() * b.order();
    let idx = |x: usize, y: usize| x * b.order() + y;
    let mut mul = vec![0u16; order * order];
    for xa in 0..a.order() {
        for ya in 0..b.order() {
            for xb in 0..a.order() {
                for yb in 0..b.order() {
                    mul[idx(xa, ya) * order + idx(xb, yb)] =
                        idx(a.mul(xa, xb), b.mul(ya, yb)) as u16;
                }
            }
        }
    }
    FiniteGroup::from_table(name, order, mul).expect("product table satisfies the laws")
}

/// r^i s^f with s r s = r^-1; index = i + k*f.
fn dihedral(name: &str, k: usize) -> FiniteGroup {
    let order = 2 * k;
    let idx = |i: usize, f: usize| i + k * f;
    let mut mul = vec![0u16; order * order];
    for i in 0..k {
        for f in 0..2 {
            for j in 0..k {
                for g in 0..2 {
                    let rot = if f == 0 { (i + j) % k } else { (i + k - j) % k };
                    mul[idx(i, f) * order + idx(j, g)] = idx(rot, f ^ g) as u16;
                }
            }
        }
    }
    FiniteGroup::from_table(name, order, mul).expect("dihedral table satisfies the laws")
}

/// Indices 0..7 are 1, -1, i, -i, j, -j, k, -k.
fn quaternion() -> FiniteGroup {
    // (sign, axis) products on the axes 1, i, j, k
    let axis_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) | (2, 2) | (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mut mul = vec![0u16; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (s, x) = (a % 2, a / 2);
            let (t, y) = (b % 2, b / 2);
            let (u, z) = axis_mul(x, y);
            mul[a * 8 + b] = (z * 2 + (s ^ t ^ u)) as u16;
        }
    }
    FiniteGroup::from_table("Q8", 8, mul).expect("quaternion table satisfies the laws")
}

/// Complete catalog, up to isomorphism, of the groups of order <= max_order
/// (max 8), in the fixed order Z1, Z2, Z3, Z4, V4, Z5, Z6, S3, Z7, Z8,
/// Z2xZ4, Z2^3, D4, Q8.
pub fn small_groups_catalog(max_order: usize) -> Result<Vec<FiniteGroup>, GroupTableError> {
    if max_order > 8 {
        return Err(GroupTableError::UnsupportedOrder(max_order));
    }
    let z2 = cyclic("Z2", 2);
    let z4 = cyclic("Z4", 4);
    let all = vec![
        cyclic("Z1", 1),
        z2.clone(),
        cyclic("Z3", 3),
        z4.clone(),
        direct_product("V4", &z2, &z2),
        cyclic("Z5", 5),
        cyclic("Z6", 6),
        dihedral("S3", 3),
        cyclic("Z7", 7),
        cyclic("Z8", 8),
        direct_product("Z2xZ4", &z2, &z4),
        direct_product("Z2^3", &z2, &direct_product("Z2xZ2", &z2, &z2)),
        dihedral("D4", 4),
        quaternion(),
    ];
    Ok(all.into_iter().filter(|g| g.order() <= max_order).collect())
}

/// Looks up a catalog group by its fixed name.
pub fn catalog_group(name: &str) -> Result<Option<FiniteGroup>, GroupTableError> {
    Ok(small_groups_catalog(8)?.into_iter().find(|g| g.name() == name))
}

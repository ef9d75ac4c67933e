//! Finite groups given by an explicit Cayley table, and their regular
//! permutation representations.
//!
//! The only built-in group is the quaternion group of order 8 with the
//! fixed element indexing `idx(s^i t^j) = i + 4j`; arbitrary groups of
//! order at most 16 can be ingested from JSON and are validated eagerly
//! (Latin square, identity, full associativity).

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::perm::Perm;

pub const MAX_ORDER: usize = 16;

/// A finite group as a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    names: Vec<String>,
    generators: Vec<usize>,
}

/// On-disk JSON form of a group, per the external interface.
#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub names: Vec<String>,
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates and wraps a Cayley table. `generators` are the designated
    /// generators used wherever "checking on generators suffices".
    pub fn new(
        table: Vec<Vec<usize>>,
        names: Vec<String>,
        generators: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::MalformedTable);
        }
        if order > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        if table.iter().any(|row| row.len() != order) {
            return Err(GroupError::MalformedTable);
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(GroupError::EntryOutOfRange);
        }
        // Latin square: every row and column is a permutation of 0..order.
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                if row_seen[table[i][j]] || col_seen[table[j][i]] {
                    return Err(GroupError::NotLatin(i));
                }
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        if names.len() != order {
            return Err(GroupError::BadNames);
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(GroupError::BadGenerators);
        }
        let group = FiniteGroup {
            order,
            table,
            identity,
            names,
            generators,
        };
        if !group.generators.is_empty() {
            let mut reached = vec![false; order];
            reached[group.identity] = true;
            let mut frontier = vec![group.identity];
            while let Some(x) = frontier.pop() {
                for &g in &group.generators {
                    let y = group.mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
            if reached.iter().any(|&r| !r) {
                return Err(GroupError::BadGenerators);
            }
        }
        Ok(group)
    }

    /// The quaternion group of order 8 with generators s (index 1) and
    /// t (index 4), indexed by `idx(s^i t^j) = i + 4j`.
    pub fn q8() -> Self {
        let idx = |i: i64, j: i64| -> usize { (i.rem_euclid(4) + 4 * j.rem_euclid(2)) as usize };
        let mut table = vec![vec![0usize; 8]; 8];
        for i in 0..4i64 {
            for a in 0..2i64 {
                for j in 0..4i64 {
                    for b in 0..2i64 {
                        // (s^i t^a)(s^j t^b) = s^{i + (-1)^a j} t^{a+b}, with t^2 = s^2.
                        let mut exp = i + if a == 1 { -j } else { j };
                        let tt = a + b;
                        if tt >= 2 {
                            exp += 2;
                        }
                        table[idx(i, a)][idx(j, b)] = idx(exp, tt % 2);
                    }
                }
            }
        }
        let names = ["1", "s", "s2", "s3", "t", "st", "s2t", "s3t"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FiniteGroup::new(table, names, vec![1, 4]).expect("Q8 preset must validate")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.table[a][b] == self.identity)
            .expect("every element has an inverse in a validated table")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn check_index(&self, g: usize) -> Result<(), GroupError> {
        if g >= self.order {
            return Err(GroupError::IndexOutOfRange(g, self.order));
        }
        Ok(())
    }

    /// Left regular representation: `λ(g)[x] = g·x`.
    pub fn left_regular(&self, g: usize) -> Perm {
        Perm::from_image((0..self.order).map(|x| self.mul(g, x)).collect())
            .expect("rows of a Latin square are permutations")
    }

    /// Right regular representation: `ρ(g)[x] = x·g⁻¹`.
    pub fn right_regular(&self, g: usize) -> Perm {
        let ginv = self.inv(g);
        Perm::from_image((0..self.order).map(|x| self.mul(x, ginv)).collect())
            .expect("columns of a Latin square are permutations")
    }

    /// True when this group is isomorphic to the quaternion group of
    /// order 8. Among the order-8 groups the element-order multiset
    /// (one involution, six elements of order 4) is decisive.
    pub fn is_q8(&self) -> bool {
        if self.order != 8 {
            return false;
        }
        let mut involutions = 0;
        let mut order4 = 0;
        for x in 0..8 {
            match self.element_order(x) {
                2 => involutions += 1,
                4 => order4 += 1,
                _ => {}
            }
        }
        involutions == 1 && order4 == 6
    }

    pub fn from_group_file(file: GroupFile) -> Result<Self, GroupError> {
        if file.table.len() != file.order {
            return Err(GroupError::BadFile(
                "declared order does not match the table".into(),
            ));
        }
        FiniteGroup::new(file.table, file.names, file.generators)
    }

    pub fn from_json_str(json: &str) -> Result<Self, GroupError> {
        let file: GroupFile =
            serde_json::from_str(json).map_err(|e| GroupError::BadFile(e.to_string()))?;
        Self::from_group_file(file)
    }

    pub fn to_group_file(&self) -> GroupFile {
        GroupFile {
            order: self.order,
            table: self.table.clone(),
            names: self.names.clone(),
            generators: self.generators.clone(),
        }
    }
}

use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
///
/// `table[a][b]` is the index of `a·b`. Tables are accepted as soon as they
/// are square with in-range entries; [`verify_group`] checks the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group and rejects tables that fail the axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::from_table_unchecked(table)?;
        let report = verify_group(&g);
        if !report.is_valid() {
            return Err(Error::MalformedTable(report.summary()));
        }
        Ok(g)
    }

    /// Builds a table without checking the axioms. Identity and inverses
    /// are located on a best-effort basis (falling back to element 0 and to
    /// the element itself) so that a corrupted table can still be
    /// inspected.
    pub fn from_table_unchecked(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedTable(format!(
                    "row {i} contains out-of-range element {bad}"
                )));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .unwrap_or(0);
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .unwrap_or(a)
            })
            .collect();
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverse,
        })
    }

    /// The cyclic group `Z_n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table_unchecked(table)
    }

    /// Closes a set of generators under composition, giving the Cayley
    /// table together with the element list (index 0 is the identity).
    /// Returns `None` if the group would exceed `cap` elements.
    pub fn generate<T, F>(generators: &[T], identity: T, compose: F, cap: usize) -> Option<(Self, Vec<T>)>
    where
        T: Clone + PartialEq,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity];
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for g in generators {
                let next = compose(g, &current);
                if !elements.contains(&next) {
                    if elements.len() == cap {
                        return None;
                    }
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let ab = compose(a, b);
                        elements
                            .iter()
                            .position(|e| *e == ab)
                            .expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let group = Self::from_table_unchecked(table).ok()?;
        Some((group, elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// Result of checking the group axioms on a Cayley table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub order: usize,
    pub identity_found: bool,
    /// Triples `(a, b, c)` with `(ab)c ≠ a(bc)`.
    pub associativity: Vec<(usize, usize, usize)>,
    /// Elements `a` with `ea ≠ a` or `ae ≠ a`.
    pub identity: Vec<usize>,
    /// Elements without a two-sided inverse.
    pub inverses: Vec<usize>,
}

impl GroupReport {
    pub fn is_valid(&self) -> bool {
        self.identity_found && self.associativity.is_empty() && self.identity.is_empty() && self.inverses.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.identity_found {
            parts.push("no identity element".to_string());
        }
        if let Some((a, b, c)) = self.associativity.first() {
            parts.push(format!(
                "{} associativity violations, first ({a}·{b})·{c} ≠ {a}·({b}·{c})",
                self.associativity.len()
            ));
        }
        if !self.identity.is_empty() {
            parts.push(format!("identity law fails for {:?}", self.identity));
        }
        if !self.inverses.is_empty() {
            parts.push(format!("no inverse for {:?}", self.inverses));
        }
        if parts.is_empty() {
            "valid".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Checks associativity on every triple, and the identity and inverse
/// laws on every element.
pub fn verify_group(g: &FiniteGroup) -> GroupReport {
    let n = g.order;
    let e = g.identity;
    let mut report = GroupReport {
        order: n,
        identity_found: (0..n).all(|a| g.mul(e, a) == a && g.mul(a, e) == a),
        ..Default::default()
    };
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                    report.associativity.push((a, b, c));
                }
            }
        }
        if g.mul(e, a) != a || g.mul(a, e) != a {
            report.identity.push(a);
        }
        let inv = g.inverse[a];
        if g.mul(a, inv) != e || g.mul(inv, a) != e {
            report.inverses.push(a);
        }
    }
    report
}

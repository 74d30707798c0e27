use std::collections::HashMap;

use super::RingError;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    label: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl CayleyTable {
    /// Validates a multiplication table: Latin square, two-sided identity,
    /// associativity on every triple.
    pub fn new(
        label: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, RingError> {
        let n = names.len();
        if n == 0 {
            return Err(RingError::InvalidGroup("a group has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(RingError::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if let Some((a, b)) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| table[a][b] >= n)
        {
            return Err(RingError::InvalidGroup(format!(
                "product ({a}, {b}) = {} is out of range",
                table[a][b]
            )));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(RingError::InvalidGroup(format!(
                    "row or column {i} repeats an element (not a Latin square)"
                )));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| RingError::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(RingError::InvalidGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            label: label.into(),
            names,
            table,
            identity,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n written additively, elements named `[0] … [n-1]`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let names = (0..n).map(|k| format!("[{k}]")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(format!("C{n}"), names, table).expect("cyclic table is a group")
    }

    /// Dihedral group of the given (even) order, elements `sᵃrᵇ` ordered by `(a, b)`.
    pub fn dihedral(order: usize) -> Self {
        assert!(order >= 2 && order.is_multiple_of(2), "dihedral order must be even and positive");
        let n = order / 2;
        let name = |a: usize, b: usize| {
            let s = if a == 1 { "s" } else { "" };
            let r = match b {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r{b}"),
            };
            let joined = format!("{s}{r}");
            if joined.is_empty() {
                "e".to_string()
            } else {
                joined
            }
        };
        let names = (0..2).flat_map(|a| (0..n).map(move |b| name(a, b))).collect();
        let idx = |a: usize, b: usize| a * n + b;
        let mut table = vec![vec![0; order]; order];
        for a in 0..2 {
            for b in 0..n {
                for c in 0..2 {
                    for d in 0..n {
                        // r^b s^c = s^c r^{±b}
                        let rb = if c == 1 { (n - b) % n } else { b };
                        table[idx(a, b)][idx(c, d)] = idx((a + c) % 2, (rb + d) % n);
                    }
                }
            }
        }
        Self::new(format!("D{order}"), names, table).expect("dihedral table is a group")
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // Units 0..4 = 1, i, j, k; element index = sign * 4 + unit.
        const UNIT_MUL: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let units = ["1", "i", "j", "k"];
        let names = (0..8)
            .map(|x| format!("{}{}", if x >= 4 { "-" } else { "" }, units[x % 4]))
            .collect();
        let table = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (sign, unit) = UNIT_MUL[x % 4][y % 4];
                        ((x / 4 + y / 4 + sign) % 2) * 4 + unit
                    })
                    .collect()
            })
            .collect();
        Self::new("Q8", names, table).expect("quaternion table is a group")
    }

    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb)
            .map(|x| format!("({},{})", a.names[x / nb], b.names[x % nb]))
            .collect();
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Self::new(format!("{}x{}", a.label, b.label), names, table)
            .expect("product of groups is a group")
    }

    /// The permutation group generated by `generators` (images of `0..degree`).
    /// Elements are listed in breadth-first order from the identity.
    pub fn from_permutations(
        label: impl Into<String>,
        generators: &[Vec<usize>],
    ) -> Result<Self, RingError> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(RingError::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
            // (p·q)(x) = q(p(x)): apply p first.
            p.iter().map(|&x| q[x]).collect()
        };
        let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            for g in generators {
                let next = compose(&elements[frontier], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        let table = elements
            .iter()
            .map(|p| elements.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        Self::new(label, names, table)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("Latin square has inverses")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether `map` (images of this group's elements in `target`) is a group homomorphism.
    pub fn is_homomorphism(&self, target: &CayleyTable, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && (0..self.order()).all(|a| {
                (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_relations() {
        let d = CayleyTable::dihedral(6);
        let s = d.index_of("s").unwrap();
        let r = d.index_of("r").unwrap();
        let e = d.identity();
        assert_eq!(d.names(), ["e", "r", "r2", "s", "sr", "sr2"]);
        assert_eq!(d.mul(s, s), e);
        assert_eq!(d.mul(r, d.mul(r, r)), e);
        // srs = r^{-1}
        assert_eq!(d.mul(d.mul(s, r), s), d.inverse(r));
    }

    #[test]
    fn quaternion_relations() {
        let q = CayleyTable::quaternion();
        let i = q.index_of("i").unwrap();
        let j = q.index_of("j").unwrap();
        let k = q.index_of("k").unwrap();
        let minus_one = q.index_of("-1").unwrap();
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.index_of("-k").unwrap());
    }

    #[test]
    fn permutation_closure() {
        let a4 = CayleyTable::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
        assert_eq!(a4.order(), 12);
        let s3 = CayleyTable::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn rejects_non_groups() {
        let err = CayleyTable::new("bad", vec!["a".into(), "b".into()], vec![vec![0, 0], vec![1, 1]]);
        assert!(err.is_err());
        let err = CayleyTable::new("bad", vec!["a".into()], vec![vec![3]]);
        assert!(err.is_err());
    }

    #[test]
    fn homomorphism_check() {
        let c2 = CayleyTable::cyclic(2);
        let d6 = CayleyTable::dihedral(6);
        let phi = vec![d6.identity(), d6.index_of("s").unwrap()];
        assert!(c2.is_homomorphism(&d6, &phi));
        let bad = vec![d6.identity(), d6.index_of("r").unwrap()];
        assert!(!c2.is_homomorphism(&d6, &bad));
    }
}

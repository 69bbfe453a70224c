//! Coxeter matrices and the finite-type test.
//!
//! A matrix is of finite type exactly when every connected component of its
//! Coxeter diagram is one of A_n, B_n, D_n, E_6, E_7, E_8, F_4, H_3, H_4 or a
//! dihedral I_2(m).

use std::fmt;

use crate::error::{Error, Result};

/// Symmetric Coxeter matrix. `None` stands for an infinite entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<Option<u32>>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCoxeterMatrix("no generators".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[i] != Some(1) {
                return Err(Error::InvalidCoxeterMatrix(format!("diagonal entry {i} must be 1")));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if m != entries[j][i] {
                    return Err(Error::InvalidCoxeterMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                if let Some(m) = m {
                    if m < 2 {
                        return Err(Error::InvalidCoxeterMatrix(format!(
                            "off-diagonal entry ({i},{j}) = {m} must be at least 2"
                        )));
                    }
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, s: usize, t: usize) -> Option<u32> {
        self.entries[s][t]
    }

    pub fn entries(&self) -> &[Vec<Option<u32>>] {
        &self.entries
    }

    /// Classifies every component of the Coxeter diagram, failing if one of
    /// them is not a finite Coxeter group.
    pub fn finite_type(&self) -> Result<Vec<CoxeterType>> {
        components(self)
            .into_iter()
            .map(|nodes| classify_component(self, &nodes))
            .collect()
    }
}

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E(n) => write!(f, "E{n}"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::H(n) => write!(f, "H{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

// Diagram edge: m >= 3 or infinite.
fn is_edge(m: Option<u32>) -> bool {
    m.map_or(true, |m| m >= 3)
}

fn components(matrix: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let n = matrix.rank();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if w != v && !seen[w] && is_edge(matrix.get(v, w)) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn classify_component(matrix: &CoxeterMatrix, nodes: &[usize]) -> Result<CoxeterType> {
    let rank = nodes.len();
    if rank == 1 {
        return Ok(CoxeterType::A(1));
    }
    let mut edges = Vec::new();
    for (a, &s) in nodes.iter().enumerate() {
        for &t in &nodes[a + 1..] {
            let m = matrix.get(s, t);
            if is_edge(m) {
                match m {
                    None => {
                        return Err(Error::NotFiniteType(format!("generators {s} and {t} have infinite order product")))
                    }
                    Some(m) => edges.push((s, t, m)),
                }
            }
        }
    }
    if edges.len() != rank - 1 {
        return Err(Error::NotFiniteType("Coxeter diagram contains a cycle".into()));
    }
    let degree = |v: usize| edges.iter().filter(|&&(s, t, _)| s == v || t == v).count();
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 >= 4).copied().collect();

    if rank == 2 {
        let m = edges[0].2;
        return Ok(match m {
            3 => CoxeterType::A(2),
            4 => CoxeterType::B(2),
            m => CoxeterType::I2(m),
        });
    }

    match heavy.len() {
        0 => {
            let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
            match branch.as_slice() {
                [] => Ok(CoxeterType::A(rank)),
                [centre] if degree(*centre) == 3 => {
                    let mut legs = leg_lengths(&edges, *centre);
                    legs.sort_unstable();
                    match legs.as_slice() {
                        [1, 1, _] => Ok(CoxeterType::D(rank)),
                        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok(CoxeterType::E(rank)),
                        _ => Err(Error::NotFiniteType(format!("branched diagram with legs {legs:?}"))),
                    }
                }
                _ => Err(Error::NotFiniteType("diagram has more than one branch point".into())),
            }
        }
        1 => {
            if nodes.iter().any(|&v| degree(v) > 2) {
                return Err(Error::NotFiniteType("branched diagram with an edge label above 3".into()));
            }
            let (s, t, m) = heavy[0];
            let at_end = degree(s) == 1 || degree(t) == 1;
            match (m, rank, at_end) {
                (4, _, true) => Ok(CoxeterType::B(rank)),
                (4, 4, false) => Ok(CoxeterType::F4),
                (5, 3 | 4, true) => Ok(CoxeterType::H(rank)),
                _ => Err(Error::NotFiniteType(format!("label {m} in a rank {rank} component"))),
            }
        }
        _ => Err(Error::NotFiniteType("more than one edge label above 3".into())),
    }
}

fn leg_lengths(edges: &[(usize, usize, u32)], centre: usize) -> Vec<usize> {
    let neighbours = |v: usize| {
        edges
            .iter()
            .filter_map(move |&(s, t, _)| if s == v { Some(t) } else if t == v { Some(s) } else { None })
    };
    neighbours(centre)
        .map(|first| {
            let (mut prev, mut cur, mut len) = (centre, first, 1);
            loop {
                let next = neighbours(cur).find(|&w| w != prev);
                match next {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coxeter matrix of a labelled path diagram; `labels[i]` joins i and i+1.
    fn path(labels: &[u32]) -> CoxeterMatrix {
        let n = labels.len() + 1;
        let mut m = vec![vec![Some(2); n]; n];
        for i in 0..n {
            m[i][i] = Some(1);
        }
        for (i, &l) in labels.iter().enumerate() {
            m[i][i + 1] = Some(l);
            m[i + 1][i] = Some(l);
        }
        CoxeterMatrix::new(m).unwrap()
    }

    fn star(legs: &[usize]) -> CoxeterMatrix {
        let n = 1 + legs.iter().sum::<usize>();
        let mut m = vec![vec![Some(2); n]; n];
        for i in 0..n {
            m[i][i] = Some(1);
        }
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                m[prev][next] = Some(3);
                m[next][prev] = Some(3);
                prev = next;
                next += 1;
            }
        }
        CoxeterMatrix::new(m).unwrap()
    }

    #[test]
    fn classifies_standard_families() {
        assert_eq!(path(&[3, 3]).finite_type().unwrap(), vec![CoxeterType::A(3)]);
        assert_eq!(path(&[3, 3, 4]).finite_type().unwrap(), vec![CoxeterType::B(4)]);
        assert_eq!(path(&[3, 4, 3]).finite_type().unwrap(), vec![CoxeterType::F4]);
        assert_eq!(path(&[5, 3]).finite_type().unwrap(), vec![CoxeterType::H(3)]);
        assert_eq!(path(&[3, 3, 5]).finite_type().unwrap(), vec![CoxeterType::H(4)]);
        assert_eq!(path(&[6]).finite_type().unwrap(), vec![CoxeterType::I2(6)]);
        assert_eq!(star(&[1, 1, 2]).finite_type().unwrap(), vec![CoxeterType::D(5)]);
        assert_eq!(star(&[1, 2, 2]).finite_type().unwrap(), vec![CoxeterType::E(6)]);
        assert_eq!(star(&[1, 2, 4]).finite_type().unwrap(), vec![CoxeterType::E(8)]);
    }

    #[test]
    fn rejects_infinite_types() {
        assert!(path(&[3, 4, 4]).finite_type().is_err());
        assert!(path(&[3, 3, 3, 4, 3]).finite_type().is_err());
        assert!(path(&[6, 3]).finite_type().is_err());
        assert!(path(&[3, 5, 3]).finite_type().is_err());
        assert!(star(&[2, 2, 2]).finite_type().is_err()); // affine E6
        assert!(star(&[1, 2, 5]).finite_type().is_err()); // E9
        let cycle = CoxeterMatrix::new(vec![
            vec![Some(1), Some(3), Some(3)],
            vec![Some(3), Some(1), Some(3)],
            vec![Some(3), Some(3), Some(1)],
        ])
        .unwrap();
        assert!(cycle.finite_type().is_err());
        let free = CoxeterMatrix::new(vec![vec![Some(1), None], vec![None, Some(1)]]).unwrap();
        assert!(matches!(free.finite_type(), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn reducible_diagrams_split_into_components() {
        let m = CoxeterMatrix::new(vec![
            vec![Some(1), Some(2), Some(2)],
            vec![Some(2), Some(1), Some(3)],
            vec![Some(2), Some(3), Some(1)],
        ])
        .unwrap();
        assert_eq!(m.finite_type().unwrap(), vec![CoxeterType::A(1), CoxeterType::A(2)]);
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(CoxeterMatrix::new(vec![]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(2)]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(1), Some(3)], vec![Some(4), Some(1)]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(1), Some(1)], vec![Some(1), Some(1)]]).is_err());
    }
}

//! Finite topological spaces with opens as bitmasks over at most 64 points.

use std::collections::BTreeSet;

use super::SheafError;

pub type Open = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    pub points: Vec<String>,
    /// Every open set, sorted by bitmask.
    pub opens: Vec<Open>,
}

pub fn mask_of(n: usize) -> Open {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn is_subset(a: Open, b: Open) -> bool {
    a & !b == 0
}

fn close(points: usize, generators: impl IntoIterator<Item = Open>) -> Vec<Open> {
    let mut opens: BTreeSet<Open> = generators.into_iter().collect();
    opens.insert(0);
    opens.insert(mask_of(points));
    loop {
        let current: Vec<Open> = opens.iter().copied().collect();
        let before = opens.len();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                opens.insert(a | b);
                opens.insert(a & b);
            }
        }
        if opens.len() == before {
            return opens.into_iter().collect();
        }
    }
}

impl FiniteSpace {
    pub fn full(&self) -> Open {
        mask_of(self.points.len())
    }

    pub fn is_open(&self, u: Open) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    /// Opens contained in `u`, including `u` itself and `∅`.
    pub fn subopens(&self, u: Open) -> impl Iterator<Item = Open> + '_ {
        self.opens.iter().copied().filter(move |v| is_subset(*v, u))
    }

    pub fn point_index(&self, name: &str) -> Result<usize, SheafError> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| SheafError::UnknownPoint(name.to_string()))
    }

    pub fn set_of(&self, names: &[impl AsRef<str>]) -> Result<Open, SheafError> {
        names
            .iter()
            .try_fold(0u64, |acc, n| Ok(acc | 1u64 << self.point_index(n.as_ref())?))
    }

    pub fn open_of(&self, names: &[impl AsRef<str>]) -> Result<Open, SheafError> {
        let u = self.set_of(names)?;
        if self.is_open(u) {
            Ok(u)
        } else {
            Err(SheafError::NotOpen(self.show(u)))
        }
    }

    pub fn names_of(&self, u: Open) -> Vec<String> {
        (0..self.points.len())
            .filter(|i| u >> i & 1 == 1)
            .map(|i| self.points[i].clone())
            .collect()
    }

    pub fn show(&self, u: Open) -> String {
        format!("{{{}}}", self.names_of(u).join(","))
    }

    /// The smallest open containing each point.
    pub fn minimal_open(&self, point: usize) -> Open {
        self.opens
            .iter()
            .copied()
            .filter(|u| u >> point & 1 == 1)
            .fold(self.full(), |a, b| a & b)
    }

    pub fn sierpinski() -> Self {
        opens_from_basis(&["x", "y"], &[vec!["x"], vec!["x", "y"]]).expect("valid basis")
    }

    /// Checks closure under binary unions and intersections.
    pub fn is_topology(&self) -> bool {
        self.is_open(0)
            && self.is_open(self.full())
            && self
                .opens
                .iter()
                .all(|a| self.opens.iter().all(|b| self.is_open(a | b) && self.is_open(a & b)))
    }
}

/// The smallest topology containing the given sets.
pub fn opens_from_basis(points: &[impl AsRef<str>], basis: &[Vec<impl AsRef<str>>]) -> Result<FiniteSpace, SheafError> {
    let names: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    if names.len() > 64 {
        return Err(SheafError::TooManyPoints(names.len()));
    }
    let shell = FiniteSpace {
        points: names.clone(),
        opens: Vec::new(),
    };
    let sets = basis.iter().map(|b| shell.set_of(b)).collect::<Result<Vec<_>, _>>()?;
    let covered = sets.iter().fold(0, |a, b| a | b);
    if covered != mask_of(names.len()) {
        let missing = shell.names_of(mask_of(names.len()) & !covered);
        return Err(SheafError::CoverageError(missing.join(", ")));
    }
    Ok(FiniteSpace {
        opens: close(names.len(), sets),
        points: names,
    })
}

/// A finite model of an interval: even points are closed, odd points open.
pub fn khalimsky_interval(n: usize) -> FiniteSpace {
    assert!(n >= 1);
    let last = 2 * n;
    let points: Vec<String> = (0..=last).map(|i| i.to_string()).collect();
    let basis: Vec<Vec<String>> = (0..=last)
        .map(|p| {
            if p % 2 == 1 {
                vec![p.to_string()]
            } else {
                let lo = p.saturating_sub(1);
                let hi = (p + 1).min(last);
                (lo..=hi).map(|i| i.to_string()).collect()
            }
        })
        .collect();
    opens_from_basis(&points, &basis).expect("the basis covers every point")
}

/// `u` meets every nonempty open.
pub fn is_dense(space: &FiniteSpace, u: Open) -> bool {
    space.opens.iter().all(|v| *v == 0 || v & u != 0)
}

/// Every topology on `n ≤ 4` labelled points `0..n`.
pub fn all_topologies(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 4, "enumeration is exhaustive and only meant for tiny spaces");
    let full = mask_of(n);
    let middle: Vec<Open> = (1..full).collect();
    let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << middle.len()) {
        let mut opens = vec![0];
        opens.extend(middle.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, u)| *u));
        if full != 0 {
            opens.push(full);
        }
        let space = FiniteSpace {
            points: points.clone(),
            opens,
        };
        if space.is_topology() {
            out.push(space);
        }
    }
    out
}

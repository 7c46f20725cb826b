//! Finite-dimensional commutative ℚ-algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, is_zero, kernel, mat_vec, q, reduce, solve, span_basis, zeros, Matrix, Vector, Q};
use super::ZariskiError;

/// An element, as coordinates in the basis of its algebra.
pub type AlgElem = Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    pub basis: Vec<String>,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    pub table: Vec<Vec<Vector>>,
    pub unit: Vector,
    pub note: Option<String>,
}

/// A linear map between algebras, as a matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub matrix: Matrix,
    pub source: usize,
    pub target: usize,
}

impl Hom {
    pub fn identity(d: usize) -> Self {
        Hom {
            matrix: linalg::identity(d),
            source: d,
            target: d,
        }
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        assert_eq!(v.len(), self.source, "element lives in another algebra");
        mat_vec(&self.matrix, v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Hom {
        assert_eq!(self.target, other.source);
        Hom {
            matrix: linalg::mat_mul(&other.matrix, &self.matrix, self.target, self.source),
            source: self.source,
            target: other.target,
        }
    }
}

/// A family `1 = f1 + ... + fn` with the localizations at each member.
#[derive(Clone, Debug)]
pub struct Covering {
    pub parts: Vec<AlgElem>,
    pub localizations: Vec<FinDimAlgebra>,
}

#[derive(Serialize, Deserialize)]
struct StageFile {
    dimension: usize,
    basis: Vec<String>,
    structure: Vec<Vec<Vec<String>>>,
    unit: Vec<String>,
    #[serde(default)]
    constants: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    note: Option<String>,
}

fn rational_list(items: &[String], what: &str) -> Result<Vector, ZariskiError> {
    items
        .iter()
        .map(|s| linalg::parse_rational(s).ok_or_else(|| ZariskiError::Format(format!("{what}: bad rational `{s}`"))))
        .collect()
}

fn show_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(linalg::show_rational).collect()
}

impl FinDimAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn one(&self) -> AlgElem {
        self.unit.clone()
    }

    pub fn zero(&self) -> AlgElem {
        zeros(self.dim())
    }

    pub fn scalar(&self, c: Q) -> AlgElem {
        linalg::scale(&c, &self.unit)
    }

    pub fn basis_vector(&self, i: usize) -> AlgElem {
        linalg::unit_vector(self.dim(), i)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> AlgElem {
        let d = self.dim();
        let mut out = zeros(d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &c * t;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Q], k: usize) -> AlgElem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Multiplication by `x` as a matrix: column `j` is `x · e_j`.
    pub fn mult_matrix(&self, x: &[Q]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        linalg::from_columns(&cols, self.dim())
    }

    pub fn is_nilpotent(&self, x: &[Q]) -> bool {
        is_zero(&self.pow(x, self.dim().max(1)))
    }

    pub fn try_invert(&self, x: &[Q]) -> Option<AlgElem> {
        solve(&self.mult_matrix(x), &self.unit, self.dim())
    }

    pub fn trace(&self, x: &[Q]) -> Q {
        let m = self.mult_matrix(x);
        (0..self.dim()).fold(Q::zero(), |acc, i| acc + &m[i][i])
    }

    /// Dimension modulo the nilradical, which in characteristic zero is the
    /// radical of the trace form.
    pub fn reduced_dimension(&self) -> usize {
        let d = self.dim();
        let gram: Matrix = (0..d)
            .map(|i| (0..d).map(|j| self.trace(&self.table[i][j])).collect())
            .collect();
        linalg::rank(&gram, d)
    }

    /// Local with residue field ℚ: every element is a rational plus a nilpotent.
    pub fn is_split_local(&self) -> bool {
        self.reduced_dimension() == 1
    }

    /// Commutativity, associativity and unit laws on all basis triples.
    pub fn check_axioms(&self) -> Vec<String> {
        let d = self.dim();
        let mut report = Vec::new();
        if self.table.len() != d || self.table.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            report.push("structure constants do not match the dimension".to_string());
            return report;
        }
        if self.unit.len() != d {
            report.push("unit has the wrong length".to_string());
            return report;
        }
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e {
                report.push(format!("unit law fails at {}", self.basis[i]));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    report.push(format!("{}·{} differs from {}·{}", self.basis[i], self.basis[j], self.basis[j], self.basis[i]));
                }
                for k in 0..d {
                    let left = self.mul(&self.table[i][j], &self.basis_vector(k));
                    let right = self.mul(&e, &self.table[j][k]);
                    if left != right {
                        report.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        ));
                    }
                }
            }
        }
        report
    }

    fn checked(self) -> Result<Self, ZariskiError> {
        let report = self.check_axioms();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(ZariskiError::NotAnAlgebra(report.join("; ")))
        }
    }

    /// Parses a stage file; returns the algebra and its named constants.
    pub fn from_json(text: &str) -> Result<(Self, BTreeMap<String, AlgElem>), ZariskiError> {
        let file: StageFile = serde_json::from_str(text).map_err(|e| ZariskiError::Format(e.to_string()))?;
        let d = file.dimension;
        if file.basis.len() != d {
            return Err(ZariskiError::Format(format!("{} basis labels for dimension {d}", file.basis.len())));
        }
        let table = file
            .structure
            .iter()
            .map(|row| row.iter().map(|v| rational_list(v, "structure")).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = FinDimAlgebra {
            basis: file.basis,
            table,
            unit: rational_list(&file.unit, "unit")?,
            note: file.note,
        }
        .checked()?;
        let mut constants = BTreeMap::new();
        for (name, v) in &file.constants {
            let v = rational_list(v, name)?;
            if v.len() != d {
                return Err(ZariskiError::Format(format!("constant {name} has the wrong length")));
            }
            constants.insert(name.clone(), v);
        }
        Ok((algebra, constants))
    }

    pub fn to_json(&self, constants: &BTreeMap<String, AlgElem>) -> String {
        let file = StageFile {
            dimension: self.dim(),
            basis: self.basis.clone(),
            structure: self.table.iter().map(|r| r.iter().map(|v| show_vec(v)).collect()).collect(),
            unit: show_vec(&self.unit),
            constants: constants.iter().map(|(k, v)| (k.clone(), show_vec(v))).collect(),
            note: self.note.clone(),
        };
        serde_json::to_string_pretty(&file).expect("stage serializes")
    }

    /// Human-readable element, e.g. `1/2 - 3/4*eps`.
    pub fn show(&self, x: &[Q]) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (c, label) in x.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let coeff = linalg::show_rational(&abs);
            let term = match (label.as_str(), abs.is_one()) {
                ("1", _) => coeff,
                (_, true) => label.clone(),
                _ => format!("{coeff}*{label}"),
            };
            if out.is_empty() {
                out = if negative { format!("-{term}") } else { term };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    /// ℚ itself.
    pub fn rationals() -> Self {
        dual_numbers_of_order(1)
    }

    /// The zero ring, in which `1 = 0`.
    pub fn trivial() -> Self {
        FinDimAlgebra {
            basis: Vec::new(),
            table: Vec::new(),
            unit: Vec::new(),
            note: Some("trivial".into()),
        }
    }

    /// `ℚ[x]/(x^n + c[n-1] x^(n-1) + ... + c[0])` with basis `1, x, ..., x^(n-1)`.
    pub fn polynomial_quotient(var: &str, lower: &[Q]) -> Self {
        let n = lower.len();
        assert!(n >= 1);
        let label = |i: usize| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}{i}"),
        };
        // times_x(v) multiplies by x and reduces x^n
        let times_x = |v: &Vector| {
            let mut out = zeros(n);
            out[1..].clone_from_slice(&v[..n - 1]);
            let top = v[n - 1].clone();
            for (o, c) in out.iter_mut().zip(lower) {
                *o -= &top * c;
            }
            out
        };
        let mut powers = vec![linalg::unit_vector(n, 0)];
        for k in 1..2 * n {
            let next = times_x(&powers[k - 1]);
            powers.push(next);
        }
        FinDimAlgebra {
            basis: (0..n).map(label).collect(),
            table: (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect(),
            unit: linalg::unit_vector(n, 0),
            note: Some(format!("Q[{var}]/({})", relation(var, lower))),
        }
    }
}

/// `x^n + c[n-1] x^(n-1) + ... + c[0]` written in the variable `var`.
fn relation(var: &str, lower: &[Q]) -> String {
    let mut coeffs = lower.to_vec();
    coeffs.push(Q::one());
    super::dual::DualPoly::new(coeffs).to_string().replace('x', var)
}

fn dual_numbers_of_order(k: usize) -> FinDimAlgebra {
    let label = |i: usize| match i {
        0 => "1".to_string(),
        1 => "eps".to_string(),
        _ => format!("eps{i}"),
    };
    let table = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i + j < k { linalg::unit_vector(k, i + j) } else { zeros(k) })
                .collect()
        })
        .collect();
    FinDimAlgebra {
        basis: (0..k).map(label).collect(),
        table,
        unit: linalg::unit_vector(k, 0),
        note: Some(if k == 1 { "Q".into() } else { format!("Q[eps]/(eps^{k})") }),
    }
}

/// `ℚ[ε]/(ε^k)` with basis `1, eps, eps2, ...`.
pub fn dual_numbers(k: usize) -> FinDimAlgebra {
    assert!(k >= 2, "dual numbers need k >= 2");
    dual_numbers_of_order(k)
}

/// `ℚ[ε, ε']/(ε², ε'², εε')`.
pub fn two_infinitesimals() -> FinDimAlgebra {
    let e = |i| linalg::unit_vector(3, i);
    let z = zeros(3);
    FinDimAlgebra {
        basis: vec!["1".into(), "eps".into(), "eps'".into()],
        table: vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), z.clone(), z.clone()],
            vec![e(2), z.clone(), z],
        ],
        unit: e(0),
        note: Some("Q[eps, eps']/(eps^2, eps'^2, eps*eps')".into()),
    }
}

/// The quotient by the ideal generated by `gens`, with the projection.
pub fn quotient_map(a: &FinDimAlgebra, gens: &[AlgElem]) -> (FinDimAlgebra, Hom) {
    let d = a.dim();
    let ideal: Vec<Vector> = gens
        .iter()
        .flat_map(|g| (0..d).map(move |j| a.mul(g, &a.basis_vector(j))))
        .collect();
    let (reduced, pivots) = span_basis(&ideal, d);
    if pivots.is_empty() {
        return (a.clone(), Hom::identity(d));
    }
    let keep: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let project = |v: &[Q]| -> Vector {
        let r = reduce(v, &reduced, &pivots);
        keep.iter().map(|&k| r[k].clone()).collect()
    };
    let columns: Vec<Vector> = (0..d).map(|j| project(&a.basis_vector(j))).collect();
    let hom = Hom {
        matrix: linalg::from_columns(&columns, keep.len()),
        source: d,
        target: keep.len(),
    };
    let algebra = FinDimAlgebra {
        basis: keep.iter().map(|&k| a.basis[k].clone()).collect(),
        table: keep
            .iter()
            .map(|&i| keep.iter().map(|&j| project(&a.table[i][j])).collect())
            .collect(),
        unit: project(&a.unit),
        note: None,
    };
    (algebra, hom)
}

pub fn quotient_by(a: &FinDimAlgebra, x: &[Q]) -> FinDimAlgebra {
    quotient_map(a, &[x.to_vec()]).0
}

/// `A[f⁻¹]`, computed as `A / ker(f^d)`, with the canonical map.
pub fn localize_map(a: &FinDimAlgebra, f: &[Q]) -> (FinDimAlgebra, Hom) {
    let d = a.dim();
    if d == 0 {
        return (a.clone(), Hom::identity(0));
    }
    let fd = a.pow(f, d);
    let k = kernel(&a.mult_matrix(&fd), d);
    quotient_map(a, &k)
}

pub fn localize_at(a: &FinDimAlgebra, f: &[Q]) -> FinDimAlgebra {
    localize_map(a, f).0
}

/// The idempotent `e` with `A·e ≅ A[f⁻¹]`, from the decomposition
/// `A = ker(f^d) ⊕ im(f^d)`. It is `0` for nilpotent `f` and `1` for units.
pub fn fitting_idempotent(a: &FinDimAlgebra, f: &[Q]) -> AlgElem {
    let d = a.dim();
    if d == 0 {
        return Vec::new();
    }
    let m = a.mult_matrix(&a.pow(f, d));
    let ker = kernel(&m, d);
    let columns: Vec<Vector> = (0..d).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
    let (image, _) = span_basis(&columns, d);
    let mut all = ker.clone();
    all.extend(image.iter().cloned());
    let c = solve(&linalg::from_columns(&all, d), &a.unit, all.len()).expect("kernel and image span the algebra");
    image
        .iter()
        .zip(&c[ker.len()..])
        .fold(zeros(d), |acc, (v, ci)| linalg::add(&acc, &linalg::scale(ci, v)))
}

pub fn try_invert(a: &FinDimAlgebra, x: &[Q]) -> Option<AlgElem> {
    a.try_invert(x)
}

/// `A ⊗ B`, with the map `a ↦ a ⊗ 1`.
pub fn tensor(a: &FinDimAlgebra, b: &FinDimAlgebra) -> (FinDimAlgebra, Hom) {
    let (d, k) = (a.dim(), b.dim());
    let n = d * k;
    let index = |i: usize, p: usize| p * d + i;
    let mut basis = vec![String::new(); n];
    for p in 0..k {
        for i in 0..d {
            basis[index(i, p)] = match (a.basis[i].as_str(), b.basis[p].as_str()) {
                (x, "1") => x.to_string(),
                ("1", y) => y.to_string(),
                (x, y) => format!("{x}*{y}"),
            };
        }
    }
    let embed = |u: &[Q], w: &[Q]| -> Vector {
        let mut v = zeros(n);
        for (p, wp) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, ui) in u.iter().enumerate() {
                v[index(i, p)] = ui * wp;
            }
        }
        v
    };
    let mut table = vec![vec![zeros(n); n]; n];
    for p in 0..k {
        for pq in 0..k {
            for i in 0..d {
                for j in 0..d {
                    table[index(i, p)][index(j, pq)] = embed(&a.table[i][j], &b.table[p][pq]);
                }
            }
        }
    }
    let columns: Vec<Vector> = (0..d).map(|j| embed(&a.basis_vector(j), &b.unit)).collect();
    let hom = Hom {
        matrix: linalg::from_columns(&columns, n),
        source: d,
        target: n,
    };
    let algebra = FinDimAlgebra {
        basis,
        table,
        unit: embed(&a.unit, &b.unit),
        note: None,
    };
    (algebra, hom)
}

/// `A ⊗ ℚ[δ]/(δ^k)`, with `a ↦ a ⊗ 1`.
pub fn adjoin_nilpotent(a: &FinDimAlgebra, name: &str, k: usize) -> (FinDimAlgebra, Hom) {
    assert!(k >= 2);
    tensor(a, &FinDimAlgebra::polynomial_quotient(name, &vec![Q::zero(); k]))
}

/// The singleton covering, then every multiset of at most `n_max` pool
/// elements summing to `1`, each with its localizations.
pub fn covering_partitions(a: &FinDimAlgebra, pool: &[AlgElem], n_max: usize) -> Vec<Covering> {
    let mut out = vec![Covering {
        parts: vec![a.one()],
        localizations: vec![a.clone()],
    }];
    let mut stack: Vec<(Vec<usize>, Vector)> = (0..pool.len()).map(|i| (vec![i], pool[i].clone())).collect();
    while let Some((idx, sum)) = stack.pop() {
        if idx.len() >= 2 && sum == a.one() {
            let parts: Vec<AlgElem> = idx.iter().map(|&i| pool[i].clone()).collect();
            let localizations = parts.iter().map(|f| localize_at(a, f)).collect();
            out.push(Covering { parts, localizations });
        }
        if idx.len() < n_max {
            let last = *idx.last().expect("nonempty");
            for (j, p) in pool.iter().enumerate().skip(last) {
                let mut next = idx.clone();
                next.push(j);
                stack.push((next, linalg::add(&sum, p)));
            }
        }
    }
    out
}

/// `ℚ[x]/(x² − 1)`, used throughout the tests and demos.
pub fn split_quadratic() -> FinDimAlgebra {
    FinDimAlgebra::polynomial_quotient("x", &[q(-1), q(0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zariski::linalg::ratio;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn dual_number_products() {
        let a = dual_numbers(2);
        assert!(a.check_axioms().is_empty());
        assert_eq!(a.mul(&v(&[0, 1]), &v(&[0, 1])), v(&[0, 0]));
        // (a + bε)(a' + b'ε) = aa' + (ab' + a'b)ε
        assert_eq!(a.mul(&v(&[2, 3]), &v(&[5, 7])), v(&[10, 14 + 15]));
        let b = dual_numbers(3);
        let eps = b.basis_vector(1);
        assert_eq!(b.mul(&eps, &eps), b.basis_vector(2));
        assert!(is_zero(&b.mul(&b.basis_vector(2), &eps)));
    }

    #[test]
    fn two_infinitesimal_algebra() {
        let a = two_infinitesimals();
        assert_eq!(a.dim(), 3);
        assert!(a.check_axioms().is_empty());
        assert!(is_zero(&a.mul(&a.basis_vector(1), &a.basis_vector(2))));
    }

    #[test]
    fn quotients() {
        let a = dual_numbers(2);
        assert_eq!(quotient_by(&a, &a.basis_vector(1)).dim(), 1);
        let qq = FinDimAlgebra::rationals();
        assert!(quotient_by(&qq, &qq.one()).is_trivial());
        let s = split_quadratic();
        let (c, h) = quotient_map(&s, &[v(&[-1, 1])]);
        assert_eq!(c.dim(), 1);
        // x maps to 1: evaluation at x = 1
        assert_eq!(h.apply(&s.basis_vector(1)), c.one());
        assert!(c.check_axioms().is_empty());
    }

    #[test]
    fn localizations() {
        let a = dual_numbers(2);
        assert!(localize_at(&a, &a.basis_vector(1)).is_trivial());
        assert_eq!(localize_at(&a, &v(&[1, 1])), a);
        let s = split_quadratic();
        let half = ratio(1, 2);
        let e = vec![half.clone(), half];
        let l = localize_at(&s, &e);
        assert_eq!(l.dim(), 1);
    }

    #[test]
    fn inverses() {
        let a = dual_numbers(2);
        let y = a.try_invert(&v(&[2, 3])).unwrap();
        assert_eq!(y, vec![ratio(1, 2), ratio(-3, 4)]);
        assert_eq!(a.mul(&y, &v(&[2, 3])), a.one());
        assert!(a.try_invert(&a.basis_vector(1)).is_none());
        let s = split_quadratic();
        assert_eq!(s.try_invert(&s.basis_vector(1)), Some(s.basis_vector(1)));
    }

    #[test]
    fn partitions_of_unity() {
        let s = split_quadratic();
        let h = ratio(1, 2);
        let pool = vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]];
        let cov = covering_partitions(&s, &pool, 2);
        assert_eq!(cov.len(), 2);
        assert_eq!(cov[1].localizations.iter().map(|l| l.dim()).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(covering_partitions(&s, &[], 3).len(), 1);
        let t = FinDimAlgebra::trivial();
        assert_eq!(covering_partitions(&t, &[vec![], vec![]], 2).len(), 1 + 3);
    }

    #[test]
    fn idempotents_from_fitting() {
        let s = split_quadratic();
        let h = ratio(1, 2);
        assert_eq!(fitting_idempotent(&s, &v(&[-1, 1])), vec![h.clone(), -h]);
        let a = dual_numbers(3);
        assert_eq!(fitting_idempotent(&a, &a.basis_vector(1)), a.zero());
        assert_eq!(fitting_idempotent(&a, &v(&[2, 1, 0])), a.one());
    }

    #[test]
    fn nilradical_dimension() {
        assert_eq!(dual_numbers(3).reduced_dimension(), 1);
        assert_eq!(split_quadratic().reduced_dimension(), 2);
        assert_eq!(two_infinitesimals().reduced_dimension(), 1);
        assert!(FinDimAlgebra::rationals().is_split_local());
    }

    #[test]
    fn adjoining_a_nilpotent() {
        let (b, h) = adjoin_nilpotent(&split_quadratic(), "d", 2);
        assert_eq!(b.dim(), 4);
        assert!(b.check_axioms().is_empty());
        let s = split_quadratic();
        let x = s.basis_vector(1);
        assert_eq!(h.apply(&s.mul(&x, &x)), b.mul(&h.apply(&x), &h.apply(&x)));
    }

    #[test]
    fn stage_files_round_trip() {
        let a = two_infinitesimals();
        let consts = BTreeMap::from([("e".to_string(), a.basis_vector(1))]);
        let (b, c) = FinDimAlgebra::from_json(&a.to_json(&consts)).unwrap();
        assert_eq!((b, c), (a, consts));
        let bad = r#"{"dimension":2,"basis":["1","x"],"structure":[[["1","0"],["0","1"]],[["0","1"],["1","1"]]],"unit":["0","1"]}"#;
        assert!(matches!(FinDimAlgebra::from_json(bad), Err(ZariskiError::NotAnAlgebra(_))));
    }

    fn test_algebras() -> Vec<FinDimAlgebra> {
        vec![
            FinDimAlgebra::rationals(),
            dual_numbers(2),
            dual_numbers(3),
            dual_numbers(5),
            two_infinitesimals(),
            split_quadratic(),
            FinDimAlgebra::polynomial_quotient("x", &[q(0), q(0), q(-1)]),
            FinDimAlgebra::polynomial_quotient("x", &[q(0), q(1), q(0), q(-2)]),
            adjoin_nilpotent(&split_quadratic(), "d", 2).0,
        ]
    }

    #[test]
    fn test_algebras_satisfy_ring_axioms() {
        for a in test_algebras() {
            assert!(a.check_axioms().is_empty(), "{:?}", a.note);
        }
    }

    proptest! {
        #[test]
        fn localization_inverts_and_collapses_exactly_on_nilpotents(
            which in 0usize..9,
            coords in proptest::collection::vec(-2i64..=2, 5),
        ) {
            let a = &test_algebras()[which];
            let f: Vector = coords.iter().take(a.dim()).map(|&c| q(c)).collect();
            let (l, h) = localize_map(a, &f);
            prop_assert!(l.check_axioms().is_empty());
            prop_assert!(l.try_invert(&h.apply(&f)).is_some());
            prop_assert_eq!(l.is_trivial(), a.is_nilpotent(&f));
        }

        #[test]
        fn dual_number_invertibility(a in -20i64..20, b in -20i64..20, d in 1i64..7) {
            let alg = dual_numbers(2);
            let x = vec![ratio(a, d), ratio(b, d)];
            prop_assert_eq!(alg.try_invert(&x).is_some(), a != 0);
        }
    }
}

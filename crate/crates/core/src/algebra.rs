//! Graded algebras given by structure constants, and exhaustive identity
//! checkers over basis triples.
//!
//! By multilinearity an identity holds on the whole algebra as soon as it
//! holds on basis vectors, so every checker here loops over basis pairs or
//! triples. The superidentity sign only depends on the parities of the second
//! and third arguments; basis vectors are homogeneous, so no extra care is
//! needed for the first argument.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{axpy, LinalgError, Matrix, RowSpace, Scalar, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("product [{left},{right}] has a component on {target} of the wrong parity")]
    GradingViolation {
        left: String,
        right: String,
        target: String,
    },
    #[error("algebra has odd basis vectors; expected a purely even algebra")]
    NotEven,
    #[error("the even part does not satisfy the Leibniz identity")]
    EvenPartNotLeibniz,
    #[error("the algebra does not satisfy the Leibniz superidentity")]
    NotLeibnizSuper,
    #[error("invalid algebra JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn sum(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub index: usize,
    pub label: String,
    pub parity: Parity,
}

/// A vector in a space of fixed dimension, stored sparsely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    dim: usize,
    coeffs: SparseVec,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            dim,
            coeffs: SparseVec::new(),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for {dim}");
        let mut coeffs = SparseVec::new();
        coeffs.insert(index, Scalar::one());
        Element { dim, coeffs }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut e = Element::zero(dim);
        for (i, c) in terms {
            if i >= dim {
                return Err(AlgebraError::IndexOutOfRange { index: i, dim });
            }
            e.add_term(i, &c);
        }
        Ok(e)
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Element {
            dim: v.len(),
            coeffs: crate::linalg::dense_to_sparse(v),
        }
    }

    pub fn from_sparse(dim: usize, coeffs: SparseVec) -> Result<Self, AlgebraError> {
        Element::from_terms(dim, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn sparse(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        (0..self.dim).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, index: usize, coeff: &Scalar) {
        let mut single = SparseVec::new();
        single.insert(index, Scalar::one());
        axpy(&mut self.coeffs, coeff, &single);
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Scalar, other: &Element) {
        debug_assert_eq!(self.dim, other.dim);
        axpy(&mut self.coeffs, factor, &other.coeffs);
    }

    pub fn scaled(&self, factor: &Scalar) -> Element {
        let mut out = Element::zero(self.dim);
        out.add_scaled(factor, self);
        out
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{{")?;
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// Renders `Σ c_i b_i` compactly: `2e - h`, `x_1`, `(1/2)h`.
pub fn format_combination<'a, I>(terms: I, labels: &[String]) -> String
where
    I: IntoIterator<Item = (usize, &'a Scalar)>,
{
    let mut out = String::new();
    for (i, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            if mag.is_integer() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("({mag})"));
            }
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A finite-dimensional Z2-graded algebra `[b_i, b_j] = Σ_k c_ij^k b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    basis: Vec<BasisVector>,
    // dense d*d table, row-major by (left, right)
    table: Vec<Element>,
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra({})", self.labels.join(", "))?;
        for line in self.table_lines() {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

impl SuperAlgebra {
    /// Builds an algebra from its basis and the nonzero basis products.
    /// Pairs that are not listed multiply to zero.
    pub fn new<I>(basis: Vec<(String, Parity)>, products: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, Element)>,
    {
        let d = basis.len();
        let mut by_label = HashMap::new();
        let mut vectors = Vec::with_capacity(d);
        for (index, (label, parity)) in basis.into_iter().enumerate() {
            if by_label.insert(label.clone(), index).is_some() {
                return Err(AlgebraError::DuplicateLabel(label));
            }
            vectors.push(BasisVector { index, label, parity });
        }
        let labels: Vec<String> = vectors.iter().map(|b| b.label.clone()).collect();
        let mut table = vec![Element::zero(d); d * d];
        for (i, j, value) in products {
            for idx in [i, j] {
                if idx >= d {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: d });
                }
            }
            if value.dim() != d {
                return Err(AlgebraError::DimensionMismatch {
                    expected: d,
                    found: value.dim(),
                });
            }
            let expected = vectors[i].parity.sum(vectors[j].parity);
            if let Some((k, _)) = value.terms().find(|(k, _)| vectors[*k].parity != expected) {
                return Err(AlgebraError::GradingViolation {
                    left: labels[i].clone(),
                    right: labels[j].clone(),
                    target: labels[k].clone(),
                });
            }
            table[i * d + j] = value;
        }
        Ok(SuperAlgebra {
            basis: vectors,
            table,
            labels,
            by_label,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, index: usize) -> Parity {
        self.basis[index].parity
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_owned()))
    }

    pub fn is_purely_even(&self) -> bool {
        self.basis.iter().all(|b| b.parity == Parity::Even)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        self.indices_of(Parity::Even)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        self.indices_of(Parity::Odd)
    }

    fn indices_of(&self, parity: Parity) -> Vec<usize> {
        self.basis
            .iter()
            .filter(|b| b.parity == parity)
            .map(|b| b.index)
            .collect()
    }

    /// `[b_i, b_j]`.
    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim() + j]
    }

    /// Basis vector by label, as an element.
    pub fn element(&self, label: &str) -> Result<Element, AlgebraError> {
        Ok(Element::basis(self.dim(), self.index_of(label)?))
    }

    /// Element from `(coefficient, label)` pairs.
    pub fn combination(&self, terms: &[(i64, &str)]) -> Result<Element, AlgebraError> {
        let mut e = Element::zero(self.dim());
        for &(c, label) in terms {
            e.add_term(self.index_of(label)?, &Scalar::from_int(c));
        }
        Ok(e)
    }

    /// Nonzero products `(i, j, [b_i, b_j])` in basis-index order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &Element)> + '_ {
        let d = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(n, e)| (n / d, n % d, e))
    }

    pub fn format(&self, e: &Element) -> String {
        format_combination(e.terms(), &self.labels)
    }

    /// One `[a,b] = expr` line per nonzero product.
    pub fn table_lines(&self) -> Vec<String> {
        self.nonzero_products()
            .map(|(i, j, e)| format!("[{},{}] = {}", self.labels[i], self.labels[j], self.format(e)))
            .collect()
    }

    /// Homogeneous parity of an element, `None` if mixed. Zero counts as even.
    pub fn element_parity(&self, e: &Element) -> Option<Parity> {
        let mut parities = e.terms().map(|(i, _)| self.parity(i));
        let first = parities.next().unwrap_or(Parity::Even);
        parities.all(|p| p == first).then_some(first)
    }

    fn check_dim(&self, e: &Element) -> Result<(), AlgebraError> {
        if e.dim() != self.dim() {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: e.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let p = self.product(i, j);
                if !p.is_zero() {
                    out.add_scaled(&(a * b), p);
                }
            }
        }
        out
    }

    /// `[b, e_j]` for a basis vector `b` given by index.
    fn bracket_basis_left(&self, i: usize, y: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (j, b) in y.terms() {
            let p = self.product(i, j);
            if !p.is_zero() {
                out.add_scaled(b, p);
            }
        }
        out
    }

    fn bracket_basis_right(&self, x: &Element, j: usize) -> Element {
        let mut out = Element::zero(self.dim());
        for (i, a) in x.terms() {
            let p = self.product(i, j);
            if !p.is_zero() {
                out.add_scaled(a, p);
            }
        }
        out
    }

    /// Matrix of `z ↦ [b_i, z]`; column `j` holds the coordinates of `[b_i, b_j]`.
    pub fn left_multiplication(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in self.product(i, j).terms() {
                m.set(k, j, c.clone()).expect("in range");
            }
        }
        m
    }

    /// Matrix of `z ↦ [z, b_j]`.
    pub fn right_multiplication(&self, j: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for (k, c) in self.product(i, j).terms() {
                m.set(k, i, c.clone()).expect("in range");
            }
        }
        m
    }

    /// Applies a change of basis. Column `i` of `new_basis` holds the old
    /// coordinates of the `i`-th new basis vector; labels and parities are
    /// kept. Each new basis vector must be homogeneous of the old parity.
    pub fn change_basis(&self, new_basis: &Matrix) -> Result<SuperAlgebra, AlgebraError> {
        let d = self.dim();
        if new_basis.rows() != d || new_basis.cols() != d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: new_basis.rows().max(new_basis.cols()),
            });
        }
        let inverse = new_basis.inverse()?;
        let columns: Vec<Element> = (0..d)
            .map(|i| {
                Element::from_terms(d, new_basis.column(i).map(|(r, v)| (r, v.clone()))).expect("in range")
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let old = self.bracket_unchecked(&columns[i], &columns[j]);
                if old.is_zero() {
                    continue;
                }
                let new = inverse.mul_vec(&old.to_dense())?;
                products.push((i, j, Element::from_dense(&new)));
            }
        }
        let basis = self.basis.iter().map(|b| (b.label.clone(), b.parity)).collect();
        SuperAlgebra::new(basis, products)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            basis: self
                .basis
                .iter()
                .map(|b| BasisJson {
                    label: b.label.clone(),
                    parity: b.parity,
                })
                .collect(),
            brackets: self
                .nonzero_products()
                .map(|(i, j, e)| BracketJson {
                    left: self.labels[i].clone(),
                    right: self.labels[j].clone(),
                    result: e
                        .terms()
                        .map(|(k, c)| TermJson {
                            coeff: c.clone(),
                            label: self.labels[k].clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<SuperAlgebra, AlgebraError> {
        let basis: Vec<(String, Parity)> = json.basis.iter().map(|b| (b.label.clone(), b.parity)).collect();
        let index: HashMap<&str, usize> = json
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.label.as_str(), i))
            .collect();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownLabel(label.to_owned()))
        };
        let d = basis.len();
        let mut merged: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for br in &json.brackets {
            let key = (lookup(&br.left)?, lookup(&br.right)?);
            let entry = merged.entry(key).or_insert_with(|| Element::zero(d));
            for t in &br.result {
                entry.add_term(lookup(&t.label)?, &t.coeff);
            }
        }
        SuperAlgebra::new(basis, merged.into_iter().map(|((i, j), e)| (i, j, e)))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<SuperAlgebra, AlgebraError> {
        let json: AlgebraJson = serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        SuperAlgebra::from_json(&json)
    }
}

/// The shared on-disk algebra format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub basis: Vec<BasisJson>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub label: String,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub left: String,
    pub right: String,
    pub result: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: Scalar,
    pub label: String,
}

/// One failed identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which identity failed, e.g. `"superidentity"` or `"axiom 2"`.
    pub identity: &'static str,
    pub arguments: Vec<String>,
    pub residual: Element,
    /// Labels for rendering the residual.
    pub residual_labels: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}): residual {}",
            self.identity,
            self.arguments.join(", "),
            format_combination(self.residual.terms(), &self.residual_labels)
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    fn push(&mut self, identity: &'static str, args: Vec<String>, residual: Element, labels: &[String]) {
        debug_assert!(!residual.is_zero());
        self.violations.push(Violation {
            identity,
            arguments: args,
            residual,
            residual_labels: labels.to_vec(),
        });
    }

    pub fn contains_arguments(&self, args: &[&str]) -> bool {
        self.violations
            .iter()
            .any(|v| v.arguments.iter().map(String::as_str).eq(args.iter().copied()))
    }

    pub fn merge(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
    }
}

/// Leibniz-identity residual `[x,[y,z]] - [[x,y],z] + sign·[[x,z],y]` on basis
/// vectors, with `sign = (-1)^{|y||z|}`.
pub fn superidentity_residual(a: &SuperAlgebra, x: usize, y: usize, z: usize) -> Element {
    let yz = a.product(y, z);
    let mut r = a.bracket_basis_left(x, yz);
    let xy = a.product(x, y);
    r.add_scaled(&-Scalar::one(), &a.bracket_basis_right(xy, z));
    let xz = a.product(x, z);
    let sign = Scalar::sign_power(a.parity(y).bit() * a.parity(z).bit());
    r.add_scaled(&sign, &a.bracket_basis_right(xz, y));
    r
}

/// Checks `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on all basis triples of a
/// purely even algebra.
pub fn check_leibniz(a: &SuperAlgebra) -> Result<ViolationReport, AlgebraError> {
    if !a.is_purely_even() {
        return Err(AlgebraError::NotEven);
    }
    Ok(check_triples(a, "leibniz"))
}

/// Checks the Leibniz superidentity on all basis triples.
pub fn check_leibniz_super(a: &SuperAlgebra) -> ViolationReport {
    check_triples(a, "superidentity")
}

fn check_triples(a: &SuperAlgebra, identity: &'static str) -> ViolationReport {
    let d = a.dim();
    let mut report = ViolationReport::default();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let r = superidentity_residual(a, x, y, z);
                if !r.is_zero() {
                    let args = vec![a.labels[x].clone(), a.labels[y].clone(), a.labels[z].clone()];
                    report.push(identity, args, r, &a.labels);
                }
            }
        }
    }
    report
}

/// Reports basis pairs with `[x,y] ≠ -(-1)^{|x||y|}[y,x]`.
pub fn check_graded_antisymmetry(a: &SuperAlgebra) -> ViolationReport {
    let d = a.dim();
    let mut report = ViolationReport::default();
    for x in 0..d {
        for y in x..d {
            let sign = Scalar::sign_power(a.parity(x).bit() * a.parity(y).bit());
            let mut r = a.product(x, y).clone();
            r.add_scaled(&sign, a.product(y, x));
            if !r.is_zero() {
                let args = vec![a.labels[x].clone(), a.labels[y].clone()];
                report.push("graded antisymmetry", args, r, &a.labels);
            }
        }
    }
    report
}

/// Basis of `{z : [b, z] = 0 for all b}` in canonical RREF form.
pub fn right_annihilator(a: &SuperAlgebra) -> Vec<Element> {
    let d = a.dim();
    let mut space = RowSpace::new(d);
    for i in 0..d {
        for row in a.left_multiplication(i).sparse_rows() {
            space.insert(row.clone());
        }
    }
    space
        .nullspace()
        .into_iter()
        .map(|v| Element::from_dense(&v))
        .collect()
}

/// Checks that every `[a,b] + (-1)^{|a||b|}[b,a]` lies in the right annihilator.
pub fn symmetrized_products_in_annihilator(a: &SuperAlgebra) -> Result<ViolationReport, AlgebraError> {
    if !check_leibniz_super(a).is_empty() {
        return Err(AlgebraError::NotLeibnizSuper);
    }
    let d = a.dim();
    let mut ann = RowSpace::new(d);
    for z in right_annihilator(a) {
        ann.insert(z.sparse().clone());
    }
    let mut report = ViolationReport::default();
    for x in 0..d {
        for y in x..d {
            let sign = Scalar::sign_power(a.parity(x).bit() * a.parity(y).bit());
            let mut s = a.product(x, y).clone();
            s.add_scaled(&sign, a.product(y, x));
            if !ann.contains(s.sparse()) {
                let args = vec![a.labels[x].clone(), a.labels[y].clone()];
                report.push("symmetrized product outside R(L)", args, s, &a.labels);
            }
        }
    }
    Ok(report)
}

/// A bimodule over a purely even Leibniz algebra, given by one matrix per
/// even basis vector for each action. Column `m` of `right[g]` holds the
/// coordinates of `[m, g]`; column `m` of `left[g]` those of `[g, m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleSpec {
    even: SuperAlgebra,
    labels: Vec<String>,
    right: Vec<Matrix>,
    left: Vec<Matrix>,
}

impl BimoduleSpec {
    pub fn new(
        even: SuperAlgebra,
        labels: Vec<String>,
        right: Vec<Matrix>,
        left: Vec<Matrix>,
    ) -> Result<Self, AlgebraError> {
        if !even.is_purely_even() {
            return Err(AlgebraError::NotEven);
        }
        let g = even.dim();
        let m = labels.len();
        for actions in [&right, &left] {
            if actions.len() != g {
                return Err(AlgebraError::DimensionMismatch {
                    expected: g,
                    found: actions.len(),
                });
            }
            for a in actions.iter() {
                if a.rows() != m || a.cols() != m {
                    return Err(AlgebraError::DimensionMismatch {
                        expected: m,
                        found: a.rows().max(a.cols()),
                    });
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) || even.index_of(l).is_ok() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(BimoduleSpec {
            even,
            labels,
            right,
            left,
        })
    }

    pub fn even(&self) -> &SuperAlgebra {
        &self.even
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_owned()))
    }

    pub fn right_action(&self, g: usize) -> &Matrix {
        &self.right[g]
    }

    pub fn left_action(&self, g: usize) -> &Matrix {
        &self.left[g]
    }

    /// `[m, g]` for a module vector `m`.
    pub fn act_right(&self, m: &Element, g: usize) -> Element {
        apply(&self.right[g], m)
    }

    /// `[g, m]`.
    pub fn act_left(&self, g: usize, m: &Element) -> Element {
        apply(&self.left[g], m)
    }

    /// `[m, x]` for an arbitrary even element `x`.
    pub fn act_right_by(&self, m: &Element, x: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (g, c) in x.terms() {
            out.add_scaled(c, &self.act_right(m, g));
        }
        out
    }

    pub fn act_left_by(&self, x: &Element, m: &Element) -> Element {
        let mut out = Element::zero(self.dim());
        for (g, c) in x.terms() {
            out.add_scaled(c, &self.act_left(g, m));
        }
        out
    }

    /// Right-action image of a module basis vector, for table-style tests.
    pub fn right_image(&self, label: &str, g: &str) -> Result<Element, AlgebraError> {
        let m = Element::basis(self.dim(), self.index_of(label)?);
        Ok(self.act_right(&m, self.even.index_of(g)?))
    }

    pub fn left_image(&self, g: &str, label: &str) -> Result<Element, AlgebraError> {
        let m = Element::basis(self.dim(), self.index_of(label)?);
        Ok(self.act_left(self.even.index_of(g)?, &m))
    }

    pub fn format(&self, e: &Element) -> String {
        format_combination(e.terms(), &self.labels)
    }
}

fn apply(m: &Matrix, v: &Element) -> Element {
    let mut out = Element::zero(m.rows());
    for (c, a) in v.terms() {
        for (r, x) in m.column(c) {
            out.add_term(r, &(a * x));
        }
    }
    out
}

/// Checks the three bimodule axioms
///
/// ```text
/// [m,[x,y]] = [[m,x],y] - [[m,y],x]
/// [x,[m,y]] = [[x,m],y] - [[x,y],m]
/// [x,[y,m]] = [[x,y],m] - [[x,m],y]
/// ```
///
/// on every (module basis, even basis, even basis) triple.
pub fn check_bimodule_axioms(spec: &BimoduleSpec) -> Result<ViolationReport, AlgebraError> {
    if !check_leibniz(spec.even())?.is_empty() {
        return Err(AlgebraError::EvenPartNotLeibniz);
    }
    let even = spec.even();
    let g = even.dim();
    let mut report = ViolationReport::default();
    let name = |m: usize, x: usize, y: usize, order: [u8; 3]| -> Vec<String> {
        order
            .iter()
            .map(|&o| match o {
                0 => spec.labels[m].clone(),
                1 => even.labels()[x].clone(),
                _ => even.labels()[y].clone(),
            })
            .collect()
    };
    for m in 0..spec.dim() {
        let mv = Element::basis(spec.dim(), m);
        for x in 0..g {
            for y in 0..g {
                let xy = even.product(x, y);
                let mx = spec.act_right(&mv, x);
                let my = spec.act_right(&mv, y);
                let xm = spec.act_left(x, &mv);

                let r1 = spec
                    .act_right_by(&mv, xy)
                    .minus(&spec.act_right(&mx, y))
                    .plus(&spec.act_right(&my, x));
                if !r1.is_zero() {
                    report.push("axiom 1", name(m, x, y, [0, 1, 2]), r1, &spec.labels);
                }

                let r2 = spec
                    .act_left(x, &my)
                    .minus(&spec.act_right(&xm, y))
                    .plus(&spec.act_left_by(xy, &mv));
                if !r2.is_zero() {
                    report.push("axiom 2", name(m, x, y, [1, 0, 2]), r2, &spec.labels);
                }

                let ym = spec.act_left(y, &mv);
                let r3 = spec
                    .act_left(x, &ym)
                    .minus(&spec.act_left_by(xy, &mv))
                    .plus(&spec.act_right(&xm, y));
                if !r3.is_zero() {
                    report.push("axiom 3", name(m, x, y, [1, 2, 0]), r3, &spec.labels);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn tiny() -> SuperAlgebra {
        // two-dimensional non-Lie Leibniz algebra with [x,x] = y
        let basis = vec![("x".into(), Parity::Even), ("y".into(), Parity::Even)];
        SuperAlgebra::new(basis, [(0, 0, Element::basis(2, 1))]).unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        let basis = vec![("a".into(), Parity::Even), ("a".into(), Parity::Odd)];
        assert_eq!(
            SuperAlgebra::new(basis, []),
            Err(AlgebraError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn grading_enforced() {
        let basis = vec![("a".into(), Parity::Even), ("m".into(), Parity::Odd)];
        // [a,m] must be odd
        let err = SuperAlgebra::new(basis, [(0, 1, Element::basis(2, 0))]).unwrap_err();
        assert!(matches!(err, AlgebraError::GradingViolation { .. }));
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let a = tiny();
        let err = a
            .bracket(&Element::basis(3, 0), &Element::basis(2, 0))
            .unwrap_err();
        assert!(matches!(err, AlgebraError::DimensionMismatch { .. }));
    }

    #[test]
    fn tiny_leibniz_algebra() {
        let a = tiny();
        assert!(check_leibniz(&a).unwrap().is_empty());
        assert!(!check_graded_antisymmetry(&a).is_empty());
        let r = right_annihilator(&a);
        assert_eq!(r, vec![Element::basis(2, 1)]);
        assert!(symmetrized_products_in_annihilator(&a).unwrap().is_empty());
    }

    #[test]
    fn leibniz_rejects_odd_basis() {
        let basis = vec![("m".into(), Parity::Odd)];
        let a = SuperAlgebra::new(basis, []).unwrap();
        assert_eq!(check_leibniz(&a), Err(AlgebraError::NotEven));
        assert!(check_leibniz_super(&a).is_empty());
    }

    #[test]
    fn formatting() {
        let labels: Vec<String> = ["e", "f", "h"].iter().map(|s| s.to_string()).collect();
        let e = Element::from_terms(3, [(0, s(2)), (2, s(-1))]).unwrap();
        assert_eq!(format_combination(e.terms(), &labels), "2e - h");
        let e = Element::from_terms(3, [(1, Scalar::ratio(-1, 2))]).unwrap();
        assert_eq!(format_combination(e.terms(), &labels), "-(1/2)f");
        assert_eq!(format_combination(Element::zero(3).terms(), &labels), "0");
    }

    #[test]
    fn json_roundtrip_is_stable() {
        let a = tiny();
        let text = a.to_json_string();
        let back = SuperAlgebra::from_json_str(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn json_errors() {
        let bad =
            r#"{"basis":[{"label":"a","parity":"even"}],"brackets":[{"left":"a","right":"b","result":[]}]}"#;
        assert_eq!(
            SuperAlgebra::from_json_str(bad),
            Err(AlgebraError::UnknownLabel("b".into()))
        );
        let bad = r#"{"basis":[{"label":"a","parity":"even"}],"brackets":[],"extra":1}"#;
        assert!(matches!(
            SuperAlgebra::from_json_str(bad),
            Err(AlgebraError::Json(_))
        ));
        let bad = r#"{"basis":[{"label":"a","parity":"even"}],"brackets":[{"left":"a","right":"a","result":[{"coeff":"0.5","label":"a"}]}]}"#;
        assert!(matches!(
            SuperAlgebra::from_json_str(bad),
            Err(AlgebraError::Json(_))
        ));
    }

    #[test]
    fn change_basis_identity_is_noop() {
        let a = tiny();
        assert_eq!(a.change_basis(&Matrix::identity(2)).unwrap(), a);
    }

    #[test]
    fn bimodule_dimension_checks() {
        let a = tiny();
        let err = BimoduleSpec::new(
            a.clone(),
            vec!["m".into()],
            vec![Matrix::zeros(1, 1)],
            vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::DimensionMismatch { .. }));
        let zero = BimoduleSpec::new(
            a,
            vec!["m".into()],
            vec![Matrix::zeros(1, 1); 2],
            vec![Matrix::zeros(1, 1); 2],
        )
        .unwrap();
        assert!(check_bimodule_axioms(&zero).unwrap().is_empty());
    }
}

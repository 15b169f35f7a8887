//! Linear constraints that the Leibniz superidentity imposes on the unknown
//! odd·odd brackets of `even ⊕ module`, and their exact solution.
//!
//! Write `[m_i, m_j] = Σ_c u^c_{ij} g_c` with unknown coefficients `u`. For a
//! basis triple with at least two odd members every term of the
//! superidentity contains exactly one odd·odd bracket, composed with known
//! even products and actions, so each component of the residual is a
//! homogeneous linear form in the `u`. Triples with at most one odd member
//! do not involve `u` at all and hold because the even part is Leibniz and the
//! module satisfies the bimodule axioms.
//!
//! The symbolic evaluator below tracks every value as a known part plus a
//! linear part, and refuses any product of two terms that both depend on
//! `u`. Generation therefore either succeeds with genuinely linear rows or
//! reports the offending triple.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    check_bimodule_axioms, check_leibniz, check_leibniz_super, AlgebraError, BimoduleSpec, Element,
    SuperAlgebra,
};
use crate::catalog::{self, assemble, module_n1, sl2, CatalogError, OddBracketTable};
use crate::linalg::{axpy, primitive_integer, Matrix, RowSpace, Scalar, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("even part does not satisfy the Leibniz identity")]
    EvenNotLeibniz,
    #[error("module fails the bimodule axioms ({0} violations)")]
    ModuleNotBimodule(usize),
    #[error("nonlinear term in the superidentity for triple ({0})")]
    Nonlinear(String),
    #[error("superidentity for triple ({0}) has a term without unknowns")]
    Inhomogeneous(String),
    #[error("solution is not symmetric in the odd indices: [{0}] differs from its transpose")]
    Asymmetric(String),
    #[error("representative {name} fails the superidentity ({count} violations)")]
    Unsound { name: String, count: usize },
    #[error("{0} is not the square of a nonzero rational")]
    NotRationalSquare(Scalar),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Coefficient of even basis vector `component` in `[m_i, m_j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnknownId {
    pub component: usize,
    pub i: usize,
    pub j: usize,
}

impl UnknownId {
    /// Swapped odd indices, same component.
    pub fn transposed(self) -> UnknownId {
        UnknownId {
            component: self.component,
            i: self.j,
            j: self.i,
        }
    }
}

impl fmt::Display for UnknownId {
    /// `a_i_j`, `b_i_j`, `c_i_j` for the coefficients of `e`, `f`, `h`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = (b'a' + self.component as u8) as char;
        write!(f, "{letter}_{}_{}", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenerateOptions {
    /// Treat `[m_i,m_j]` and `[m_j,m_i]` as independent unknowns.
    pub strict_symmetry: bool,
    /// Pre-zero brackets that involve odd vectors known to lie in the right
    /// annihilator (see [`annihilator_prefilter`]).
    pub prefilter: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub coeffs: SparseVec,
    /// Basis triple of the assembled algebra that produced the row.
    pub triple: [usize; 3],
    /// Basis vector of the assembled algebra whose coefficient is equated.
    pub component: usize,
}

/// Homogeneous linear system over the odd·odd unknowns.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    unknowns: Vec<UnknownId>,
    rows: Vec<ConstraintRow>,
    labels: Vec<String>,
    even_dim: usize,
    odd_dim: usize,
    strict_symmetry: bool,
    prefiltered: BTreeSet<usize>,
}

impl ConstraintSystem {
    pub fn unknowns(&self) -> &[UnknownId] {
        &self.unknowns
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn strict_symmetry(&self) -> bool {
        self.strict_symmetry
    }

    /// Module-local indices of the odd vectors that were pre-zeroed.
    pub fn prefiltered(&self) -> &BTreeSet<usize> {
        &self.prefiltered
    }

    pub fn unknown_index(&self, id: UnknownId) -> Option<usize> {
        self.unknowns.iter().position(|u| *u == id)
    }

    /// Looks up an unknown by name, e.g. `"c_0_1"`. `a`, `b`, `c` are the
    /// first three components.
    pub fn unknown_named(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u.to_string() == name)
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(
            self.unknowns.len(),
            self.rows.iter().map(|r| r.coeffs.clone()).collect(),
        )
        .expect("rows reference declared unknowns")
    }

    /// Keeps only rows whose provenance triple satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&[usize; 3]) -> bool) -> ConstraintSystem {
        ConstraintSystem {
            rows: self.rows.iter().filter(|r| keep(&r.triple)).cloned().collect(),
            ..self.clone()
        }
    }

    pub fn is_odd(&self, basis_index: usize) -> bool {
        basis_index >= self.even_dim
    }

    pub fn row_space(&self) -> RowSpace {
        let mut space = RowSpace::new(self.unknowns.len());
        for r in &self.rows {
            space.insert(r.coeffs.clone());
        }
        space
    }

    pub fn to_json(&self) -> ConstraintSystemJson {
        let names: Vec<String> = self.unknowns.iter().map(|u| u.to_string()).collect();
        ConstraintSystemJson {
            unknowns: names.clone(),
            strict_symmetry: self.strict_symmetry,
            prefiltered: self
                .prefiltered
                .iter()
                .map(|&i| self.labels[self.even_dim + i].clone())
                .collect(),
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    triple: r.triple.iter().map(|&t| self.labels[t].clone()).collect(),
                    component: self.labels[r.component].clone(),
                    coeffs: r
                        .coeffs
                        .iter()
                        .map(|(&u, c)| CoeffJson {
                            unknown: names[u].clone(),
                            coeff: c.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintSystemJson {
    pub unknowns: Vec<String>,
    pub strict_symmetry: bool,
    pub prefiltered: Vec<String>,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowJson {
    pub triple: Vec<String>,
    pub component: String,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffJson {
    pub unknown: String,
    pub coeff: Scalar,
}

/// Known element plus a linear part: component index -> linear form.
#[derive(Clone, Debug)]
struct Sym {
    known: Element,
    linear: BTreeMap<usize, SparseVec>,
}

impl Sym {
    fn basis(dim: usize, i: usize) -> Sym {
        Sym {
            known: Element::basis(dim, i),
            linear: BTreeMap::new(),
        }
    }

    fn add_scaled(&mut self, factor: &Scalar, other: &Sym) {
        self.known.add_scaled(factor, &other.known);
        for (&k, form) in &other.linear {
            let slot = self.linear.entry(k).or_default();
            axpy(slot, factor, form);
            if slot.is_empty() {
                self.linear.remove(&k);
            }
        }
    }

    fn add_form(&mut self, component: usize, factor: &Scalar, form: &SparseVec) {
        let slot = self.linear.entry(component).or_default();
        axpy(slot, factor, form);
        if slot.is_empty() {
            self.linear.remove(&component);
        }
    }
}

struct Generator<'a> {
    skeleton: &'a SuperAlgebra,
    even_dim: usize,
    // (i, j) module-local -> index of the first component's unknown
    pair_base: HashMap<(usize, usize), usize>,
    strict: bool,
}

impl Generator<'_> {
    fn is_odd(&self, idx: usize) -> bool {
        idx >= self.even_dim
    }

    fn unknown_base(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (i - self.even_dim, j - self.even_dim);
        let key = if self.strict { (a, b) } else { (a.min(b), a.max(b)) };
        self.pair_base.get(&key).copied()
    }

    fn bracket(&self, x: &Sym, y: &Sym) -> Result<Sym, ()> {
        if !x.linear.is_empty() && !y.linear.is_empty() {
            return Err(());
        }
        let d = self.skeleton.dim();
        let mut out = Sym {
            known: self.skeleton.bracket(&x.known, &y.known).expect("dimensions"),
            linear: BTreeMap::new(),
        };
        for (i, a) in x.known.terms() {
            for (j, b) in y.known.terms() {
                if self.is_odd(i) && self.is_odd(j) {
                    if let Some(base) = self.unknown_base(i, j) {
                        for c in 0..self.even_dim {
                            let mut form = SparseVec::new();
                            form.insert(base + c, Scalar::one());
                            out.add_form(c, &(a * b), &form);
                        }
                    }
                }
            }
        }
        for (i, a) in x.known.terms() {
            for (&k, form) in &y.linear {
                if self.is_odd(i) && self.is_odd(k) {
                    return Err(());
                }
                for (l, g) in self.skeleton.product(i, k).terms() {
                    out.add_form(l, &(a * g), form);
                }
            }
        }
        for (&k, form) in &x.linear {
            for (j, b) in y.known.terms() {
                if self.is_odd(k) && self.is_odd(j) {
                    return Err(());
                }
                for (l, g) in self.skeleton.product(k, j).terms() {
                    out.add_form(l, &(b * g), form);
                }
            }
        }
        debug_assert!(out.linear.keys().all(|&k| k < d));
        Ok(out)
    }

    /// `[x,[y,z]] - [[x,y],z] + (-1)^{|y||z|}[[x,z],y]`.
    fn residual(&self, x: usize, y: usize, z: usize) -> Result<Sym, ()> {
        let d = self.skeleton.dim();
        let (bx, by, bz) = (Sym::basis(d, x), Sym::basis(d, y), Sym::basis(d, z));
        let mut r = self.bracket(&bx, &self.bracket(&by, &bz)?)?;
        r.add_scaled(&-Scalar::one(), &self.bracket(&self.bracket(&bx, &by)?, &bz)?);
        let sign = Scalar::sign_power(self.skeleton.parity(y).bit() * self.skeleton.parity(z).bit());
        r.add_scaled(&sign, &self.bracket(&self.bracket(&bx, &bz)?, &by)?);
        Ok(r)
    }
}

fn check_preconditions(even: &SuperAlgebra, module: &BimoduleSpec) -> Result<(), ClassifyError> {
    if !check_leibniz(even)?.is_empty() {
        return Err(ClassifyError::EvenNotLeibniz);
    }
    let report = check_bimodule_axioms(module).map_err(|e| match e {
        AlgebraError::EvenPartNotLeibniz => ClassifyError::EvenNotLeibniz,
        other => other.into(),
    })?;
    if !report.is_empty() {
        return Err(ClassifyError::ModuleNotBimodule(report.len()));
    }
    if module.even() != even {
        return Err(CatalogError::EvenPartMismatch.into());
    }
    Ok(())
}

/// Symmetric unknowns, all triples with at least two odd members.
pub fn generate_constraints(
    even: &SuperAlgebra,
    module: &BimoduleSpec,
) -> Result<ConstraintSystem, ClassifyError> {
    generate_constraints_with(even, module, GenerateOptions::default())
}

pub fn generate_constraints_with(
    even: &SuperAlgebra,
    module: &BimoduleSpec,
    options: GenerateOptions,
) -> Result<ConstraintSystem, ClassifyError> {
    check_preconditions(even, module)?;
    let g = even.dim();
    let m = module.dim();
    let skeleton = assemble(even, module, &OddBracketTable::zero(m, g))?;
    let prefiltered = if options.prefilter {
        annihilator_prefilter(even, module)?
    } else {
        BTreeSet::new()
    };

    let mut unknowns = Vec::new();
    let mut pair_base = HashMap::new();
    for i in 0..m {
        let start = if options.strict_symmetry { 0 } else { i };
        for j in start..m {
            let pinned = if options.strict_symmetry {
                prefiltered.contains(&j)
            } else {
                prefiltered.contains(&i) || prefiltered.contains(&j)
            };
            if pinned {
                continue;
            }
            pair_base.insert((i, j), unknowns.len());
            unknowns.extend((0..g).map(|component| UnknownId { component, i, j }));
        }
    }

    let generator = Generator {
        skeleton: &skeleton,
        even_dim: g,
        pair_base,
        strict: options.strict_symmetry,
    };
    let labels = skeleton.labels().to_vec();
    let d = skeleton.dim();
    let name = |x: usize, y: usize, z: usize| format!("{}, {}, {}", labels[x], labels[y], labels[z]);

    let mut rows = Vec::new();
    let mut seen: HashSet<SparseVec> = HashSet::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let odd = [x, y, z].iter().filter(|&&t| t >= g).count();
                if odd < 2 {
                    continue;
                }
                let r = generator
                    .residual(x, y, z)
                    .map_err(|()| ClassifyError::Nonlinear(name(x, y, z)))?;
                if !r.known.is_zero() {
                    return Err(ClassifyError::Inhomogeneous(name(x, y, z)));
                }
                for (component, form) in r.linear {
                    if seen.insert(form.clone()) {
                        rows.push(ConstraintRow {
                            coeffs: form,
                            triple: [x, y, z],
                            component,
                        });
                    }
                }
            }
        }
    }

    Ok(ConstraintSystem {
        unknowns,
        rows,
        labels,
        even_dim: g,
        odd_dim: m,
        strict_symmetry: options.strict_symmetry,
        prefiltered,
    })
}

/// Nullspace of a constraint system in canonical RREF form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    unknowns: Vec<UnknownId>,
    basis: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn unknowns(&self) -> &[UnknownId] {
        &self.unknowns
    }

    /// Coordinates over `full`, with zero for unknowns this space does not
    /// declare.
    pub fn embedded(&self, full: &[UnknownId]) -> Vec<Vec<Scalar>> {
        let index: HashMap<UnknownId, usize> =
            self.unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        self.basis
            .iter()
            .map(|v| {
                full.iter()
                    .map(|u| index.get(u).map_or_else(Scalar::zero, |&i| v[i].clone()))
                    .collect()
            })
            .collect()
    }

    /// Whether both spaces span the same subspace, with undeclared
    /// unknowns read as zero.
    pub fn same_span(&self, other: &SolutionSpace) -> bool {
        let all: BTreeSet<UnknownId> = self.unknowns.iter().chain(&other.unknowns).copied().collect();
        let all: Vec<UnknownId> = all.into_iter().collect();
        let span = |s: &SolutionSpace| {
            let mut space = RowSpace::new(all.len());
            for v in s.embedded(&all) {
                space.insert(crate::linalg::dense_to_sparse(&v));
            }
            space.to_matrix()
        };
        span(self) == span(other)
    }

    /// Odd·odd table of a solution vector. Fails in strict mode when the
    /// vector is not symmetric.
    pub fn table(
        &self,
        v: &[Scalar],
        odd_dim: usize,
        even_dim: usize,
    ) -> Result<OddBracketTable, ClassifyError> {
        let mut values: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for (u, c) in self.unknowns.iter().zip(v) {
            let slot = values
                .entry((u.i, u.j))
                .or_insert_with(|| Element::zero(even_dim));
            slot.add_term(u.component, c);
        }
        let mut table = OddBracketTable::zero(odd_dim, even_dim);
        let zero = Element::zero(even_dim);
        for (&(i, j), value) in &values {
            if self.unknowns.iter().any(|u| u.i > u.j) {
                let mirror = values.get(&(j, i)).unwrap_or(&zero);
                if mirror != value {
                    return Err(ClassifyError::Asymmetric(format!("{i},{j}")));
                }
            }
            if i <= j {
                table.set(i, j, value.clone())?;
            }
        }
        Ok(table)
    }

    /// Whether every basis vector is symmetric under `[m_i,m_j] ↔ [m_j,m_i]`.
    pub fn is_symmetric(&self) -> bool {
        let index: HashMap<UnknownId, usize> =
            self.unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        self.basis.iter().all(|v| {
            self.unknowns.iter().enumerate().all(|(n, u)| {
                let t = index
                    .get(&u.transposed())
                    .map_or_else(Scalar::zero, |&k| v[k].clone());
                v[n] == t
            })
        })
    }
}

pub fn solve(cs: &ConstraintSystem) -> SolutionSpace {
    SolutionSpace {
        unknowns: cs.unknowns.clone(),
        basis: cs.row_space().nullspace(),
    }
}

/// Module-local indices of odd basis vectors that lie in the right
/// annihilator of every Leibniz superalgebra `even ⊕ module`.
///
/// Every `[a,m] + [m,a]` with `a` even lies in `R(L)`, and `R(L)` is closed
/// under right multiplication, so the span of those vectors saturated under
/// the right action is contained in `R(L)` whatever the odd·odd bracket is.
pub fn annihilator_prefilter(
    even: &SuperAlgebra,
    module: &BimoduleSpec,
) -> Result<BTreeSet<usize>, ClassifyError> {
    check_preconditions(even, module)?;
    let m = module.dim();
    let g = even.dim();
    let mut span = RowSpace::new(m);
    for idx in 0..m {
        let v = Element::basis(m, idx);
        for a in 0..g {
            let s = module.act_left(a, &v).plus(&module.act_right(&v, a));
            span.insert(s.sparse().clone());
        }
    }
    loop {
        let mut grew = false;
        for row in span.clone().into_rows() {
            let v = Element::from_sparse(m, row)?;
            for a in 0..g {
                grew |= span.insert(module.act_right(&v, a).sparse().clone());
            }
        }
        if !grew {
            break;
        }
    }
    Ok((0..m)
        .filter(|&i| span.contains(Element::basis(m, i).sparse()))
        .collect())
}

#[derive(Debug, Clone)]
pub struct Representative {
    /// Catalog name when the algebra matches a named one.
    pub name: Option<String>,
    /// Coordinates over the system's unknowns.
    pub point: Vec<Scalar>,
    pub algebra: SuperAlgebra,
}

impl Representative {
    pub fn display_name(&self, position: usize) -> String {
        self.name.clone().unwrap_or_else(|| {
            if self.point.iter().all(Scalar::is_zero) {
                "zero".to_owned()
            } else {
                format!("R{position}")
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub system: ConstraintSystem,
    pub space: SolutionSpace,
    pub representatives: Vec<Representative>,
}

impl Classification {
    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn representative_names(&self) -> Vec<String> {
        self.representatives
            .iter()
            .enumerate()
            .map(|(i, r)| r.display_name(i))
            .collect()
    }

    /// `"[L1,L1]=0"` when only the zero bracket survives, otherwise
    /// `"family: <names>"`.
    pub fn verdict(&self) -> String {
        if self.dimension() == 0 {
            "[L1,L1]=0".to_owned()
        } else {
            format!("family: {}", self.representative_names().join(","))
        }
    }
}

fn catalog_name(a: &SuperAlgebra) -> Option<String> {
    if *a == catalog::superalgebra_s1() {
        Some("S1".into())
    } else if *a == catalog::superalgebra_s2() {
        Some("S2".into())
    } else {
        None
    }
}

pub fn classify(even: &SuperAlgebra, module: &BimoduleSpec) -> Result<Classification, ClassifyError> {
    classify_with(
        even,
        module,
        GenerateOptions {
            prefilter: true,
            ..Default::default()
        },
    )
}

/// Solves the system and assembles the zero solution plus one representative
/// per basis vector of the solution space, scaled to a primitive integer
/// vector. Every representative is verified against the superidentity.
pub fn classify_with(
    even: &SuperAlgebra,
    module: &BimoduleSpec,
    options: GenerateOptions,
) -> Result<Classification, ClassifyError> {
    let system = generate_constraints_with(even, module, options)?;
    let space = solve(&system);
    let (m, g) = (module.dim(), even.dim());
    let mut points = vec![vec![Scalar::zero(); system.unknowns.len()]];
    points.extend(space.basis.iter().map(|v| primitive_integer(v)));
    let mut representatives = Vec::new();
    for (position, point) in points.into_iter().enumerate() {
        let table = space.table(&point, m, g)?;
        let algebra = assemble(even, module, &table)?;
        let report = check_leibniz_super(&algebra);
        let name = catalog_name(&algebra);
        if !report.is_empty() {
            return Err(ClassifyError::Unsound {
                name: name.unwrap_or_else(|| format!("R{position}")),
                count: report.len(),
            });
        }
        representatives.push(Representative { name, point, algebra });
    }
    Ok(Classification {
        system,
        space,
        representatives,
    })
}

/// `sl2 ⊕ N1(1)` with `[x_0,x_0] = 2c e`, `[x_1,x_1] = 2c f`,
/// `[x_0,x_1] = [x_1,x_0] = c h`.
pub fn s2_family(c: &Scalar) -> SuperAlgebra {
    let even = sl2();
    let module = module_n1(1);
    let mut table = OddBracketTable::zero(2, 3);
    let term = |k: usize, factor: i64| {
        Element::from_terms(3, [(k, c * Scalar::from_int(factor))]).expect("in range")
    };
    table.set(0, 0, term(catalog::E, 2)).expect("in range");
    table.set(1, 1, term(catalog::F, 2)).expect("in range");
    table.set(0, 1, term(catalog::H, 1)).expect("in range");
    assemble(&even, &module, &table).expect("matching parts")
}

/// Rescales the odd basis of the `c`-member of the two-dimensional family
/// by `1/r` with `r^2 = c` and compares the result with S2.
pub fn verify_rescaling_isomorphism(c: &Scalar) -> Result<bool, ClassifyError> {
    let r = c
        .rational_sqrt()
        .filter(|r| !r.is_zero())
        .ok_or_else(|| ClassifyError::NotRationalSquare(c.clone()))?;
    let family = s2_family(c);
    let mut change = Matrix::identity(family.dim());
    let inv = r.recip().expect("nonzero");
    for idx in family.odd_indices() {
        change.set(idx, idx, inv.clone()).expect("in range");
    }
    let rescaled = family.change_basis(&change)?;
    Ok(rescaled == catalog::superalgebra_s2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bimodule_m1, bimodule_m2, module_n2};

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn unknown_names() {
        let u = UnknownId {
            component: 2,
            i: 0,
            j: 1,
        };
        assert_eq!(u.to_string(), "c_0_1");
        assert_eq!(u.transposed().to_string(), "c_1_0");
    }

    #[test]
    fn n1_1_rows_from_e_x0_x0() {
        let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
        assert_eq!(cs.unknowns().len(), 9);
        let b00 = cs.unknown_named("b_0_0").unwrap();
        let c00 = cs.unknown_named("c_0_0").unwrap();
        let rows: Vec<&ConstraintRow> = cs.rows().iter().filter(|r| r.triple == [0, 3, 3]).collect();
        // [e,[x0,x0]] - 2[[e,x0],x0] = b_00 h + 2 c_00 e
        let h_row = rows.iter().find(|r| r.component == catalog::H).unwrap();
        assert_eq!(h_row.coeffs, SparseVec::from([(b00, s(1))]));
        let e_row = rows.iter().find(|r| r.component == catalog::E).unwrap();
        assert_eq!(e_row.coeffs, SparseVec::from([(c00, s(2))]));
    }

    #[test]
    fn n1_1_has_one_parameter() {
        let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
        assert_eq!(cs.row_space().rank(), 8);
        let space = solve(&cs);
        assert_eq!(space.dimension(), 1);
        let v = primitive_integer(&space.basis()[0]);
        let expect = |name: &str| v[cs.unknown_named(name).unwrap()].clone();
        assert_eq!(expect("a_0_0"), s(2));
        assert_eq!(expect("c_0_1"), s(1));
        assert_eq!(expect("b_1_1"), s(2));
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 3);
    }

    #[test]
    fn small_simple_modules_are_rigid() {
        for n in [0, 2, 3] {
            let cs = generate_constraints(&sl2(), &module_n1(n)).unwrap();
            assert_eq!(solve(&cs).dimension(), 0, "n = {n}");
        }
        let cs = generate_constraints(&sl2(), &module_n2(2)).unwrap();
        assert_eq!(solve(&cs).dimension(), 0);
    }

    #[test]
    fn classify_n1_1_names_s1_s2() {
        let c = classify(&sl2(), &module_n1(1)).unwrap();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.representative_names(), ["S1", "S2"]);
        assert_eq!(c.verdict(), "family: S1,S2");
    }

    #[test]
    fn prefilter_examples() {
        let even = sl2();
        let m1 = bimodule_m1(3).unwrap();
        let y: BTreeSet<usize> = (4..6).collect();
        assert_eq!(annihilator_prefilter(&even, &m1).unwrap(), y);
        let m2 = bimodule_m2(3).unwrap();
        let x: BTreeSet<usize> = (0..4).collect();
        assert_eq!(annihilator_prefilter(&even, &m2).unwrap(), x);
        assert!(annihilator_prefilter(&even, &module_n1(3)).unwrap().is_empty());
    }

    #[test]
    fn preconditions_enforced() {
        let even = sl2();
        let bad = catalog::bimodule_m3_with(4, 2, catalog::TableReading::Verbatim).unwrap();
        assert!(matches!(
            generate_constraints(&even, &bad),
            Err(ClassifyError::ModuleNotBimodule(_))
        ));
    }

    #[test]
    fn rescaling() {
        for c in [s(1), s(4), Scalar::ratio(9, 4), s(25)] {
            assert!(verify_rescaling_isomorphism(&c).unwrap());
        }
        assert!(matches!(
            verify_rescaling_isomorphism(&s(2)),
            Err(ClassifyError::NotRationalSquare(_))
        ));
        assert!(verify_rescaling_isomorphism(&s(0)).is_err());
        assert!(verify_rescaling_isomorphism(&s(-1)).is_err());
    }

    #[test]
    fn strict_mode_forces_symmetry() {
        let opts = GenerateOptions {
            strict_symmetry: true,
            prefilter: false,
        };
        let cs = generate_constraints_with(&sl2(), &module_n1(1), opts).unwrap();
        assert_eq!(cs.unknowns().len(), 12);
        let space = solve(&cs);
        assert_eq!(space.dimension(), 1);
        assert!(space.is_symmetric());
        let sym = solve(&generate_constraints(&sl2(), &module_n1(1)).unwrap());
        let table = space.table(&space.basis()[0], 2, 3).unwrap();
        let sym_table = sym.table(&sym.basis()[0], 2, 3).unwrap();
        assert_eq!(table, sym_table);
    }

    #[test]
    fn json_export_names_unknowns() {
        let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
        let json = serde_json::to_value(cs.to_json()).unwrap();
        assert_eq!(json["unknowns"][5], "c_0_1");
        assert_eq!(json["rows"][0]["triple"].as_array().unwrap().len(), 3);
    }
}

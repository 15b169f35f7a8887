//! Named algebras and sl2-bimodules, plus the assembler that glues an even
//! part, a bimodule and an odd·odd table into one superalgebra.
//!
//! Index conventions: `x_i` for the `(n+1)`-dimensional simple module of
//! highest weight `n`, `y_j` for the second summand of the two-summand
//! families, `v_i^p` for the `p`-th summand of the chain families, which has
//! highest weight `n - 2(p-1)`. Basis symbols with an out-of-range index are
//! zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{check_bimodule_axioms, AlgebraError, BimoduleSpec, Element, Parity, SuperAlgebra};
use crate::linalg::{Matrix, Scalar};

pub const E: usize = 0;
pub const F: usize = 1;
pub const H: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: ModuleKind, reason: String },
    #[error("{id} fails the bimodule axioms ({count} violations, first: {first})")]
    AxiomValidation { id: String, count: usize, first: String },
    #[error("odd·odd table does not fit: {0}")]
    OddTable(String),
    #[error("bimodule is defined over a different even part")]
    EvenPartMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleKind {
    N1,
    N2,
    M1,
    M2,
    M3,
    M4,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::N1 => "N1",
            ModuleKind::N2 => "N2",
            ModuleKind::M1 => "M1",
            ModuleKind::M2 => "M2",
            ModuleKind::M3 => "M3",
            ModuleKind::M4 => "M4",
        })
    }
}

impl FromStr for ModuleKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "n1" => ModuleKind::N1,
            "n2" => ModuleKind::N2,
            "m1" => ModuleKind::M1,
            "m2" => ModuleKind::M2,
            "m3" => ModuleKind::M3,
            "m4" => ModuleKind::M4,
            _ => return Err(CatalogError::UnknownId(s.to_owned())),
        })
    }
}

impl ModuleKind {
    pub fn has_summand_count(self) -> bool {
        matches!(self, ModuleKind::M3 | ModuleKind::M4)
    }
}

/// Which reading of a printed multiplication table to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableReading {
    /// Index and coefficient typos repaired; validated against the axioms.
    #[default]
    Repaired,
    /// Transcribed as printed, for auditing. Not validated.
    Verbatim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuleId {
    pub kind: ModuleKind,
    pub n: usize,
    /// Number of simple summands; only meaningful for M3/M4.
    pub k: usize,
}

impl ModuleId {
    pub fn new(kind: ModuleKind, n: usize, k: usize) -> Result<Self, CatalogError> {
        let invalid = |reason: String| CatalogError::InvalidParameters { family: kind, reason };
        match kind {
            ModuleKind::N1 | ModuleKind::N2 => {}
            ModuleKind::M1 | ModuleKind::M2 => {
                if n < 2 {
                    return Err(invalid(format!("n must be at least 2, got {n}")));
                }
            }
            ModuleKind::M3 | ModuleKind::M4 => {
                if k < 2 {
                    return Err(invalid(format!("k must be at least 2, got {k}")));
                }
                if n < 2 * (k - 1) {
                    return Err(invalid(format!(
                        "n must be at least 2(k-1) = {}, got {n}",
                        2 * (k - 1)
                    )));
                }
            }
        }
        let k = match kind {
            ModuleKind::N1 | ModuleKind::N2 => 1,
            ModuleKind::M1 | ModuleKind::M2 => 2,
            _ => k,
        };
        Ok(ModuleId { kind, n, k })
    }

    pub fn build(&self, reading: TableReading) -> Result<BimoduleSpec, CatalogError> {
        match self.kind {
            ModuleKind::N1 => Ok(module_n1(self.n)),
            ModuleKind::N2 => Ok(module_n2(self.n)),
            ModuleKind::M1 => bimodule_m1(self.n),
            ModuleKind::M2 => bimodule_m2_with(self.n, reading),
            ModuleKind::M3 => bimodule_m3_with(self.n, self.k, reading),
            ModuleKind::M4 => bimodule_m4_with(self.n, self.k, reading),
        }
    }
}

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = self.kind.to_string().to_ascii_lowercase();
        if self.kind.has_summand_count() {
            write!(f, "{family}:{}:{}", self.n, self.k)
        } else {
            write!(f, "{family}:{}", self.n)
        }
    }
}

impl FromStr for ModuleId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownId(s.to_owned());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let kind: ModuleKind = parts[0].parse().map_err(|_| unknown())?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match (kind.has_summand_count(), parts.len()) {
            (false, 2) => ModuleId::new(kind, num(parts[1])?, 0),
            (true, 3) => ModuleId::new(kind, num(parts[1])?, num(parts[2])?),
            _ => Err(unknown()),
        }
    }
}

/// Anything addressable by a catalog string id.
#[derive(Debug, Clone)]
pub enum CatalogEntry {
    Algebra(SuperAlgebra),
    Module(ModuleId, BimoduleSpec),
}

/// Resolves `"sl2"`, `"s1"`, `"s2"`, `"n1:<n>"`, `"n2:<n>"`, `"m1:<n>"`,
/// `"m2:<n>"`, `"m3:<n>:<k>"` and `"m4:<n>:<k>"`.
pub fn resolve(id: &str, reading: TableReading) -> Result<CatalogEntry, CatalogError> {
    match id.trim().to_ascii_lowercase().as_str() {
        "sl2" => Ok(CatalogEntry::Algebra(sl2())),
        "s1" => Ok(CatalogEntry::Algebra(superalgebra_s1())),
        "s2" => Ok(CatalogEntry::Algebra(superalgebra_s2())),
        _ => {
            let mid: ModuleId = id.parse()?;
            Ok(CatalogEntry::Module(mid, mid.build(reading)?))
        }
    }
}

fn even_parts(labels: &[&str]) -> Vec<(String, Parity)> {
    labels.iter().map(|l| (l.to_string(), Parity::Even)).collect()
}

fn sl2_products(d: usize) -> Vec<(usize, usize, Element)> {
    let t = |k: usize, c: i64| Element::from_terms(d, [(k, Scalar::from_int(c))]).expect("in range");
    vec![
        (E, H, t(E, 2)),
        (H, F, t(F, 2)),
        (E, F, t(H, 1)),
        (H, E, t(E, -2)),
        (F, H, t(F, -2)),
        (F, E, t(H, -1)),
    ]
}

/// sl2 on the ordered basis `e, f, h`.
pub fn sl2() -> SuperAlgebra {
    SuperAlgebra::new(even_parts(&["e", "f", "h"]), sl2_products(3)).expect("valid sl2 table")
}

/// Fills action matrices from label-based table entries. Targets whose label
/// is not in the module are dropped, which realizes the boundary convention.
struct ModuleBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    right: Vec<Matrix>,
    left: Vec<Matrix>,
}

type Terms = Vec<(i64, String)>;

impl ModuleBuilder {
    fn new(labels: Vec<String>) -> Self {
        let m = labels.len();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        ModuleBuilder {
            labels,
            index,
            right: vec![Matrix::zeros(m, m); 3],
            left: vec![Matrix::zeros(m, m); 3],
        }
    }

    fn write(matrices: &mut [Matrix], index: &HashMap<String, usize>, g: usize, source: &str, terms: Terms) {
        let Some(&col) = index.get(source) else { return };
        let m = matrices[g].rows();
        let mut column = vec![Scalar::zero(); m];
        for (c, label) in terms {
            if let Some(&row) = index.get(&label) {
                column[row] += Scalar::from_int(c);
            }
        }
        for (row, v) in column.into_iter().enumerate() {
            matrices[g].set(row, col, v).expect("in range");
        }
    }

    /// `[source, g] = terms`, replacing any earlier entry.
    fn right(&mut self, source: &str, g: usize, terms: Terms) {
        Self::write(&mut self.right, &self.index, g, source, terms);
    }

    /// `[g, source] = terms`, replacing any earlier entry.
    fn left(&mut self, g: usize, source: &str, terms: Terms) {
        Self::write(&mut self.left, &self.index, g, source, terms);
    }

    fn has(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    fn finish(self) -> BimoduleSpec {
        BimoduleSpec::new(sl2(), self.labels, self.right, self.left).expect("consistent dimensions")
    }
}

fn x(i: i64) -> String {
    format!("x_{i}")
}

fn y(j: i64) -> String {
    format!("y_{j}")
}

fn v(i: i64, p: i64) -> String {
    format!("v_{i}^{p}")
}

/// Right action of the simple module of highest weight `m` on `label(i)`.
fn simple_right(b: &mut ModuleBuilder, m: i64, label: impl Fn(i64) -> String) {
    for i in 0..=m {
        b.right(&label(i), H, vec![(m - 2 * i, label(i))]);
        b.right(&label(i), F, vec![(1, label(i + 1))]);
        b.right(&label(i), E, vec![(-i * (m - i + 1), label(i - 1))]);
    }
}

/// Left action `[g, m] = -[m, g]` on a simple summand.
fn symmetric_terms(m: i64, i: i64, label: &impl Fn(i64) -> String) -> [Terms; 3] {
    [
        vec![(i * (m - i + 1), label(i - 1))],
        vec![(-1, label(i + 1))],
        vec![(-(m - 2 * i), label(i))],
    ]
}

fn simple_module(n: usize, symmetric: bool) -> BimoduleSpec {
    let m = n as i64;
    let mut b = ModuleBuilder::new((0..=m).map(x).collect());
    simple_right(&mut b, m, x);
    if symmetric {
        for i in 0..=m {
            for (g, terms) in symmetric_terms(m, i, &x).into_iter().enumerate() {
                b.left(g, &x(i), terms);
            }
        }
    }
    b.finish()
}

/// Simple symmetric module: left action is minus the right action.
pub fn module_n1(n: usize) -> BimoduleSpec {
    simple_module(n, true)
}

/// Simple antisymmetric module: left action is zero.
pub fn module_n2(n: usize) -> BimoduleSpec {
    simple_module(n, false)
}

fn validated(id: String, spec: BimoduleSpec) -> Result<BimoduleSpec, CatalogError> {
    let report = check_bimodule_axioms(&spec)?;
    match report.violations.first() {
        None => Ok(spec),
        Some(first) => Err(CatalogError::AxiomValidation {
            id,
            count: report.len(),
            first: first.to_string(),
        }),
    }
}

/// Extra left-action terms on a symmetric summand of highest weight `m`
/// that map into the summand of highest weight `m - 2` (labelled `below`).
fn down_terms(i: i64, below: &impl Fn(i64) -> String) -> [Terms; 3] {
    [
        vec![(i * (i - 1), below(i - 2))],
        vec![(1, below(i))],
        vec![(-2 * i, below(i - 1))],
    ]
}

/// Extra left-action terms on a symmetric summand of highest weight `m`
/// that map into the summand of highest weight `m + 2` (labelled `above`).
fn up_terms(m: i64, i: i64, above: &impl Fn(i64) -> String) -> [Terms; 3] {
    [
        vec![((m + 1 - i) * (m + 2 - i), above(i))],
        vec![(1, above(i + 2))],
        vec![(2 * (m + 1 - i), above(i + 1))],
    ]
}

/// Chain of `k` simple summands of highest weights `n, n-2, ...`, where the
/// summands for which `symmetric(p)` holds carry a left action coupling them
/// to their neighbours and the others have zero left action.
fn chain_module(n: usize, k: usize, symmetric: impl Fn(usize) -> bool) -> BimoduleSpec {
    let n = n as i64;
    let kk = k as i64;
    let hw = |p: i64| n - 2 * (p - 1);
    let labels = (1..=kk).flat_map(|p| (0..=hw(p)).map(move |i| v(i, p))).collect();
    let mut b = ModuleBuilder::new(labels);
    for p in 1..=kk {
        let m = hw(p);
        let own = |i| v(i, p);
        simple_right(&mut b, m, own);
        if !symmetric(p as usize) {
            continue;
        }
        for i in 0..=m {
            let mut terms = symmetric_terms(m, i, &own);
            if p > 1 {
                for (t, extra) in terms.iter_mut().zip(up_terms(m, i, &|i| v(i, p - 1))) {
                    t.extend(extra);
                }
            }
            if p < kk {
                for (t, extra) in terms.iter_mut().zip(down_terms(i, &|i| v(i, p + 1))) {
                    t.extend(extra);
                }
            }
            for (g, t) in terms.into_iter().enumerate() {
                b.left(g, &own(i), t);
            }
        }
    }
    b.finish()
}

fn two_summand_labels(n: i64) -> Vec<String> {
    (0..=n).map(x).chain((0..=n - 2).map(y)).collect()
}

fn check_params(kind: ModuleKind, n: usize, k: usize) -> Result<ModuleId, CatalogError> {
    ModuleId::new(kind, n, k)
}

/// Indecomposable bimodule with symmetric top `x` and antisymmetric `y`.
pub fn bimodule_m1(n: usize) -> Result<BimoduleSpec, CatalogError> {
    let id = check_params(ModuleKind::M1, n, 2)?;
    let m = n as i64;
    let mut b = ModuleBuilder::new(two_summand_labels(m));
    simple_right(&mut b, m, x);
    simple_right(&mut b, m - 2, y);
    for i in 0..=m {
        b.left(H, &x(i), vec![(-(m - 2 * i), x(i)), (-2 * i, y(i - 1))]);
        b.left(F, &x(i), vec![(-1, x(i + 1)), (1, y(i))]);
        b.left(
            E,
            &x(i),
            vec![(i * (m - i + 1), x(i - 1)), (i * (i - 1), y(i - 2))],
        );
    }
    validated(id.to_string(), b.finish())
}

/// Indecomposable bimodule with antisymmetric top `x` and symmetric `y`.
pub fn bimodule_m2(n: usize) -> Result<BimoduleSpec, CatalogError> {
    bimodule_m2_with(n, TableReading::Repaired)
}

pub fn bimodule_m2_with(n: usize, reading: TableReading) -> Result<BimoduleSpec, CatalogError> {
    let id = check_params(ModuleKind::M2, n, 2)?;
    let m = n as i64;
    let mut b = ModuleBuilder::new(two_summand_labels(m));
    simple_right(&mut b, m, x);
    simple_right(&mut b, m - 2, y);
    for j in 0..=m - 2 {
        b.left(
            H,
            &y(j),
            vec![(2 * (m - j - 1), x(j + 1)), (-(m - 2 * j - 2), y(j))],
        );
        let f_terms = match reading {
            TableReading::Repaired => vec![(1, x(j + 2)), (-1, y(j + 1))],
            // the printed `y_{i+1}` has an unbound index; no term survives
            TableReading::Verbatim => vec![(1, x(j + 2))],
        };
        b.left(F, &y(j), f_terms);
        b.left(
            E,
            &y(j),
            vec![((m - j - 1) * (m - j), x(j)), ((m - j - 1) * j, y(j - 1))],
        );
    }
    let spec = b.finish();
    match reading {
        TableReading::Repaired => validated(id.to_string(), spec),
        TableReading::Verbatim => Ok(spec),
    }
}

/// Chain bimodule whose odd-numbered summands are antisymmetric.
pub fn bimodule_m3(n: usize, k: usize) -> Result<BimoduleSpec, CatalogError> {
    bimodule_m3_with(n, k, TableReading::Repaired)
}

pub fn bimodule_m3_with(n: usize, k: usize, reading: TableReading) -> Result<BimoduleSpec, CatalogError> {
    let id = check_params(ModuleKind::M3, n, k)?;
    match reading {
        TableReading::Repaired => validated(id.to_string(), chain_module(n, k, |p| p % 2 == 0)),
        TableReading::Verbatim => Ok(m3_as_printed(n as i64, k as i64)),
    }
}

/// Chain bimodule whose odd-numbered summands are symmetric.
pub fn bimodule_m4(n: usize, k: usize) -> Result<BimoduleSpec, CatalogError> {
    bimodule_m4_with(n, k, TableReading::Repaired)
}

pub fn bimodule_m4_with(n: usize, k: usize, reading: TableReading) -> Result<BimoduleSpec, CatalogError> {
    let id = check_params(ModuleKind::M4, n, k)?;
    match reading {
        TableReading::Repaired => validated(id.to_string(), chain_module(n, k, |p| p % 2 == 1)),
        TableReading::Verbatim => Ok(m4_as_printed(n as i64, k as i64)),
    }
}

fn chain_labels(n: i64, k: i64) -> Vec<String> {
    (1..=k)
        .flat_map(|p| (0..=n - 2 * (p - 1)).map(move |i| v(i, p)))
        .collect()
}

/// The printed rows of a block, applied to every `i` of the block's summand.
/// Blocks whose summand does not exist are skipped; later rows overwrite
/// earlier ones with the same left-hand side.
fn printed_block(b: &mut ModuleBuilder, n: i64, sup: i64, rows: impl Fn(&mut ModuleBuilder, i64)) {
    if !b.has(&v(0, sup)) {
        return;
    }
    for i in 0..=n - 2 * (sup - 1) {
        rows(b, i);
    }
}

fn m3_as_printed(n: i64, k: i64) -> BimoduleSpec {
    let mut b = ModuleBuilder::new(chain_labels(n, k));
    let mut p = 1;
    while 2 * p - 1 <= k {
        let (a, s, c) = (2 * p - 1, 2 * p, 2 * p + 1);
        printed_block(&mut b, n, a, |b, i| {
            b.right(&v(i, a), H, vec![(n - 4 * p + 4 - 2 * i, v(i, a))]);
            b.left(H, &v(i, a), vec![]);
            b.right(&v(i, a), F, vec![(1, v(i + 1, a))]);
            b.left(F, &v(i, a), vec![]);
            b.right(&v(i, a), E, vec![(-i * (n - 4 * p + 5 - i), v(i - 1, a))]);
            b.left(E, &v(i, a), vec![]);
        });
        printed_block(&mut b, n, s, |b, i| {
            b.right(&v(i, s), H, vec![(n - 4 * p + 2 - 2 * i, v(i, s))]);
            b.left(
                H,
                &v(i, s),
                vec![
                    (2 * (n - 2 * p - i + 3), v(i + 1, a)),
                    (-(n - 2 * p - 2 * i + 2), v(i + 1, s)),
                    (-2 * i, v(i - 1, c)),
                ],
            );
            b.right(&v(i, s), F, vec![(1, v(i + 1, s))]);
            // printed with left-hand side [f, v_i^{2p-1}]
            b.left(
                F,
                &v(i, a),
                vec![(1, v(i + 2, a)), (-1, v(i + 1, s)), (1, v(i, c))],
            );
            b.right(&v(i, s), E, vec![(-i * (n - 4 * p + 1 - i), v(i - 1, s))]);
            let up = n - 2 * p - i + 3;
            b.left(
                E,
                &v(i, s),
                vec![
                    (up * (n - 2 * p - i + 4), v(i, a)),
                    (up * i, v(i - 1, s)),
                    (i * (i - 1), v(i - 2, c)),
                ],
            );
        });
        printed_block(&mut b, n, c, |b, i| {
            b.right(&v(i, c), H, vec![(n - 4 * p + 1 - i, v(i, c))]);
            b.left(H, &v(i, c), vec![]);
            b.right(&v(i, c), F, vec![(1, v(i + 1, c))]);
            b.left(F, &v(i, c), vec![]);
            b.right(&v(i, c), E, vec![(-i * (n - 4 * p - 1 - i), v(i - 1, c))]);
            b.left(E, &v(i, c), vec![]);
        });
        p += 1;
    }
    b.finish()
}

fn m4_as_printed(n: i64, k: i64) -> BimoduleSpec {
    let mut b = ModuleBuilder::new(chain_labels(n, k));
    printed_block(&mut b, n, 1, |b, i| {
        b.right(&v(i, 1), H, vec![(n - 2 * i, v(i, 1))]);
        b.left(H, &v(i, 1), vec![(-(n - 2 * i), v(i, 1)), (-2 * i, v(i - 1, 2))]);
        b.right(&v(i, 1), F, vec![(1, v(i + 1, 1))]);
        b.left(F, &v(i, 1), vec![(-1, v(i + 1, 1)), (1, v(i, 2))]);
        b.right(&v(i, 1), E, vec![(-i * (n - i + 1), v(i - 1, 1))]);
        b.left(
            E,
            &v(i, 1),
            vec![(i * (n - i + 1), v(i - 1, 1)), (i * (i - 1), v(i - 2, 2))],
        );
    });
    let mut p = 1;
    while 2 * p <= k {
        let (s, c, d) = (2 * p, 2 * p + 1, 2 * p + 2);
        printed_block(&mut b, n, s, |b, i| {
            b.right(&v(i, s), H, vec![(n - 4 * p + 2 - 2 * i, v(i, s))]);
            b.left(H, &v(i, s), vec![]);
            b.right(&v(i, s), F, vec![(1, v(i + 1, s))]);
            // printed with left-hand side [f, v_i^{2p-1}]
            b.left(F, &v(i, s - 1), vec![]);
            b.right(&v(i, s), E, vec![(-i * (n - 4 * p + 1 - i), v(i - 1, s))]);
            b.left(E, &v(i, s), vec![]);
        });
        printed_block(&mut b, n, c, |b, i| {
            b.right(&v(i, c), H, vec![(n - 4 * p - 2 * i, v(i, c))]);
            b.left(
                H,
                &v(i, c),
                vec![
                    (n - 4 * p - i + 1, v(i + 1, s)),
                    (-(n - 4 * p - 2 * i), v(i + 1, c)),
                    (-2 * i, v(i - 1, d)),
                ],
            );
            b.right(&v(i, c), F, vec![(1, v(i + 1, c))]);
            b.left(
                F,
                &v(i, c),
                vec![(1, v(i + 2, s)), (-1, v(i + 1, c)), (1, v(i, d))],
            );
            b.right(&v(i, c), E, vec![(-i * (n - 4 * p - 1 - i), v(i - 1, c))]);
            let up = n - 4 * p - i + 1;
            b.left(
                E,
                &v(i, c),
                vec![
                    (up * (n - 4 * p - i + 2), v(i, s)),
                    (up * i, v(i - 1, c)),
                    (i * (i - 1), v(i - 2, d)),
                ],
            );
        });
        p += 1;
    }
    b.finish()
}

/// One repaired entry of a printed multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub family: ModuleKind,
    /// The product whose printed value was changed.
    pub entry: &'static str,
    pub printed: &'static str,
    pub repaired: &'static str,
    pub justification: &'static str,
}

const ERRATA: &[Erratum] = &[
    Erratum {
        family: ModuleKind::M2,
        entry: "[f,y_j]",
        printed: "y_{i+1}",
        repaired: "y_{j+1}",
        justification: "i is unbound in a j-indexed row; the symmetric part of [f,y_j] must be -[y_j,f] = -y_{j+1}",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[v_i^{2p},e]",
        printed: "-i(n-4p+1-i)v_{i-1}^{2p}",
        repaired: "-i(n-4p+3-i)v_{i-1}^{2p}",
        justification: "V_{2p} has highest weight n-4p+2, so e lowers with coefficient -i(n-4p+3-i); the printed value breaks the right-module axiom",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[h,v_i^{2p}]",
        printed: "2(n-2p-i+3)v_{i+1}^{2p-1}-(n-2p-2i+2)v_{i+1}^{2p}-2iv_{i-1}^{2p+1}",
        repaired: "2(n-4p+3-i)v_{i+1}^{2p-1}-(n-4p+2-2i)v_{i}^{2p}-2iv_{i-1}^{2p+1}",
        justification: "symmetric part must be -[v_i^{2p},h]; coupling coefficient into V_{2p-1} follows the M2 pattern with highest weight n-4p+2",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[f,v_i^{2p}]",
        printed: "[f,v_i^{2p-1}]=v_{i+2}^{2p-1}-v_{i+1}^{2p}+v_{i}^{2p+1}",
        repaired: "[f,v_i^{2p}]=v_{i+2}^{2p-1}-v_{i+1}^{2p}+v_{i}^{2p+1}",
        justification: "row sits in the v^{2p} block and its symmetric part is -[v_i^{2p},f]; the printed left-hand side contradicts [f,v_i^{2p-1}]=0",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[e,v_i^{2p}]",
        printed: "(n-2p-i+3)((n-2p-i+4)v_{i}^{2p-1}+iv_{i-1}^{2p})+i(i-1)v_{i-2}^{2p+1}",
        repaired: "(n-4p+3-i)((n-4p+4-i)v_{i}^{2p-1}+iv_{i-1}^{2p})+i(i-1)v_{i-2}^{2p+1}",
        justification: "symmetric part must be -[v_i^{2p},e] = i(n-4p+3-i)v_{i-1}^{2p}; coupling into V_{2p-1} follows the M2 pattern",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[v_i^{2p+1},h]",
        printed: "(n-4p+1-i)v_{i}^{2p+1}",
        repaired: "(n-4p-2i)v_{i}^{2p+1}",
        justification: "V_{2p+1} has highest weight n-4p; agrees with the v^{2p-1} rows at p+1",
    },
    Erratum {
        family: ModuleKind::M3,
        entry: "[v_i^{2p+1},e]",
        printed: "-i(n-4p-1-i)v_{i-1}^{2p+1}",
        repaired: "-i(n-4p+1-i)v_{i-1}^{2p+1}",
        justification: "V_{2p+1} has highest weight n-4p; agrees with the v^{2p-1} rows at p+1",
    },
    Erratum {
        family: ModuleKind::M4,
        entry: "[f,v_i^{2p}]",
        printed: "[f,v_i^{2p-1}]=0",
        repaired: "[f,v_i^{2p}]=0",
        justification: "row sits in the antisymmetric v^{2p} block; the printed left-hand side would erase the f-action on V_{2p-1}",
    },
    Erratum {
        family: ModuleKind::M4,
        entry: "[v_i^{2p},e]",
        printed: "-i(n-4p+1-i)v_{i-1}^{2p}",
        repaired: "-i(n-4p+3-i)v_{i-1}^{2p}",
        justification: "V_{2p} has highest weight n-4p+2",
    },
    Erratum {
        family: ModuleKind::M4,
        entry: "[h,v_i^{2p+1}]",
        printed: "(n-4p-i+1)v_{i+1}^{2p}-(n-4p-2i)v_{i+1}^{2p+1}-2iv_{i-1}^{2p+2}",
        repaired: "2(n-4p-i+1)v_{i+1}^{2p}-(n-4p-2i)v_{i}^{2p+1}-2iv_{i-1}^{2p+2}",
        justification: "symmetric part must be -[v_i^{2p+1},h]; the h-component of the coupling into V_{2p} needs the factor 2 of the M2 pattern to match the f and e rows",
    },
    Erratum {
        family: ModuleKind::M4,
        entry: "[v_i^{2p+1},e]",
        printed: "-i(n-4p-1-i)v_{i-1}^{2p+1}",
        repaired: "-i(n-4p+1-i)v_{i-1}^{2p+1}",
        justification: "V_{2p+1} has highest weight n-4p",
    },
];

/// Every deviation of the repaired tables from the printed ones.
pub fn errata() -> &'static [Erratum] {
    ERRATA
}

pub fn errata_for(kind: ModuleKind) -> impl Iterator<Item = &'static Erratum> {
    ERRATA.iter().filter(move |e| e.family == kind)
}

/// Symmetric odd·odd products `[m_i, m_j] = [m_j, m_i]` with values in the
/// even part. Indices are module-local.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddBracketTable {
    odd_dim: usize,
    even_dim: usize,
    entries: BTreeMap<(usize, usize), Element>,
}

impl OddBracketTable {
    pub fn zero(odd_dim: usize, even_dim: usize) -> Self {
        OddBracketTable {
            odd_dim,
            even_dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    pub fn set(&mut self, i: usize, j: usize, value: Element) -> Result<(), CatalogError> {
        if i >= self.odd_dim || j >= self.odd_dim {
            return Err(CatalogError::OddTable(format!(
                "pair ({i}, {j}) outside odd dimension {}",
                self.odd_dim
            )));
        }
        if value.dim() != self.even_dim {
            return Err(CatalogError::OddTable(format!(
                "value has dimension {}, even part has {}",
                value.dim(),
                self.even_dim
            )));
        }
        let key = (i.min(j), i.max(j));
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Element> {
        self.entries.get(&(i.min(j), i.max(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Element)> + '_ {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }
}

/// One superalgebra on `even ⊕ module`: even·even from `even`, mixed
/// products from the actions, odd·odd from `odd2` extended symmetrically.
pub fn assemble(
    even: &SuperAlgebra,
    module: &BimoduleSpec,
    odd2: &OddBracketTable,
) -> Result<SuperAlgebra, CatalogError> {
    if module.even() != even {
        return Err(CatalogError::EvenPartMismatch);
    }
    let g = even.dim();
    let m = module.dim();
    if odd2.odd_dim != m || odd2.even_dim != g {
        return Err(CatalogError::OddTable(format!(
            "table is {}x{} over an even part of dimension {}, expected {m}x{m} over {g}",
            odd2.odd_dim, odd2.odd_dim, odd2.even_dim
        )));
    }
    let d = g + m;
    let mut basis: Vec<(String, Parity)> = even.basis().iter().map(|b| (b.label.clone(), b.parity)).collect();
    basis.extend(module.labels().iter().map(|l| (l.clone(), Parity::Odd)));
    let lift = |e: &Element, offset: usize| {
        Element::from_terms(d, e.terms().map(|(k, c)| (k + offset, c.clone()))).expect("in range")
    };
    let mut products = Vec::new();
    for (i, j, e) in even.nonzero_products() {
        products.push((i, j, lift(e, 0)));
    }
    for a in 0..g {
        let (right, left) = (module.right_action(a), module.left_action(a));
        for col in 0..m {
            let r = Element::from_terms(d, right.column(col).map(|(row, c)| (row + g, c.clone())))?;
            if !r.is_zero() {
                products.push((g + col, a, r));
            }
            let l = Element::from_terms(d, left.column(col).map(|(row, c)| (row + g, c.clone())))?;
            if !l.is_zero() {
                products.push((a, g + col, l));
            }
        }
    }
    for (i, j, e) in odd2.entries() {
        products.push((g + i, g + j, lift(e, 0)));
        if i != j {
            products.push((g + j, g + i, lift(e, 0)));
        }
    }
    products.sort_by_key(|(i, j, _)| (*i, *j));
    Ok(SuperAlgebra::new(basis, products)?)
}

fn s_basis() -> Vec<(String, Parity)> {
    let mut basis = even_parts(&["e", "f", "h"]);
    basis.push(("x_0".into(), Parity::Odd));
    basis.push(("x_1".into(), Parity::Odd));
    basis
}

fn s_products(with_odd_squares: bool) -> Vec<(usize, usize, Element)> {
    let d = 5;
    let (x0, x1) = (3, 4);
    let t = |k: usize, c: i64| Element::from_terms(d, [(k, Scalar::from_int(c))]).expect("in range");
    let mut p = sl2_products(d);
    p.extend([
        (x0, H, t(x0, 1)),
        (x1, H, t(x1, -1)),
        (x0, F, t(x1, 1)),
        (x1, E, t(x0, -1)),
        (H, x0, t(x0, -1)),
        (H, x1, t(x1, 1)),
        (F, x0, t(x1, -1)),
        (E, x1, t(x0, 1)),
    ]);
    if with_odd_squares {
        p.extend([
            (x0, x0, t(E, 2)),
            (x1, x1, t(F, 2)),
            (x0, x1, t(H, 1)),
            (x1, x0, t(H, 1)),
        ]);
    }
    p
}

/// sl2 ⊕ (2-dim symmetric module) with zero odd·odd part.
pub fn superalgebra_s1() -> SuperAlgebra {
    SuperAlgebra::new(s_basis(), s_products(false)).expect("valid table")
}

/// sl2 ⊕ (2-dim symmetric module) with `[x_0,x_0]=2e`, `[x_1,x_1]=2f`,
/// `[x_0,x_1]=[x_1,x_0]=h`.
pub fn superalgebra_s2() -> SuperAlgebra {
    SuperAlgebra::new(s_basis(), s_products(true)).expect("valid table")
}

//! JSON and text formats for algebras, Hopf algebras and partial modules.
//!
//! Vectors are lists of `[label, "p/q"]` pairs in basis order; zero entries are omitted.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, MulTable, NonUnitalAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, Space, Vector};
use crate::group::FiniteGroup;
use crate::hopf::{group_hopf, HopfAlgebra, HopfData};
use crate::partial::{check_pr, PartialModule};
use crate::report::CheckReport;

pub type SparseVec = Vec<(String, Scalar)>;

pub fn to_sparse(space: &Space, v: &Vector) -> SparseVec {
    v.iter().map(|(i, c)| (space.label(i).to_string(), c.clone())).collect()
}

pub fn from_sparse(space: &Space, s: &SparseVec) -> Result<Vector> {
    let items = s
        .iter()
        .map(|(l, c)| Ok((index(space, l)?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::from_entries(space.dim(), items))
}

fn index(space: &Space, label: &str) -> Result<usize> {
    space.index_of(label).ok_or_else(|| Error::Parse(format!("unknown basis label {label:?} in {}", space.name())))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_err)
}

fn products(space: &Space, table: &MulTable) -> Vec<(String, String, SparseVec)> {
    let n = space.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = table.basis_product(i, j);
            if !p.is_zero() {
                out.push((space.label(i).to_string(), space.label(j).to_string(), to_sparse(space, p)));
            }
        }
    }
    out
}

fn table_from(space: &Space, mult: &[(String, String, SparseVec)]) -> Result<MulTable> {
    let n = space.dim();
    let mut table = MulTable::from_fn(n, |_, _| Vector::zeros(n));
    let mut seen = std::collections::HashSet::new();
    for (a, b, v) in mult {
        let (i, j) = (index(space, a)?, index(space, b)?);
        if !seen.insert((i, j)) {
            return Err(Error::Parse(format!("product {a}·{b} given twice")));
        }
        table.set(i, j, from_sparse(space, v)?);
    }
    Ok(table)
}

/// `{name, basis, unit, mult}`; a missing unit is solved for.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<SparseVec>,
    pub mult: Vec<(String, String, SparseVec)>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        let s = a.space();
        AlgebraFile {
            name: s.name().to_string(),
            basis: s.labels().to_vec(),
            unit: Some(to_sparse(s, a.unit())),
            mult: products(s, a.table()),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let space = Space::new(&self.name, self.basis.clone())?;
        let table = table_from(&space, &self.mult)?;
        match &self.unit {
            Some(u) => Algebra::new(space.clone(), table, from_sparse(&space, u)?),
            None => NonUnitalAlgebra::new(space, table)?.into_unital(),
        }
    }
}

/// Algebra plus `comul: [h, [[a, b, c], …]]`, `counit` and `antipode`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HopfFile {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<SparseVec>,
    pub mult: Vec<(String, String, SparseVec)>,
    pub comul: Vec<(String, Vec<(String, String, Scalar)>)>,
    pub counit: SparseVec,
    pub antipode: Vec<(String, SparseVec)>,
}

impl HopfFile {
    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        let a = AlgebraFile::from_algebra(h.algebra());
        let s = h.space();
        let n = h.dim();
        let comul = (0..n)
            .map(|i| {
                let terms = h.comul_matrix().col(i).iter().map(|(k, c)| (s.label(k / n).to_string(), s.label(k % n).to_string(), c.clone())).collect();
                (s.label(i).to_string(), terms)
            })
            .collect();
        let counit = (0..n)
            .filter_map(|i| {
                let c = h.counit_basis(i);
                (!c.is_zero()).then(|| (s.label(i).to_string(), c))
            })
            .collect();
        let antipode = (0..n).map(|i| (s.label(i).to_string(), to_sparse(s, h.antipode_matrix().col(i)))).collect();
        HopfFile { name: a.name, basis: a.basis, unit: a.unit, mult: a.mult, comul, counit, antipode }
    }

    /// Structure maps without validation.
    pub fn to_data(&self) -> Result<HopfData> {
        let algebra = AlgebraFile { name: self.name.clone(), basis: self.basis.clone(), unit: self.unit.clone(), mult: self.mult.clone() }.to_algebra()?;
        let s = algebra.space().clone();
        let n = s.dim();
        let mut comul = vec![None; n];
        for (h, terms) in &self.comul {
            let i = index(&s, h)?;
            let items = terms.iter().map(|(a, b, c)| Ok((index(&s, a)? * n + index(&s, b)?, c.clone()))).collect::<Result<Vec<_>>>()?;
            comul[i] = Some(Vector::from_entries(n * n, items));
        }
        let comul = comul
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::Parse(format!("comultiplication of {} missing", s.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        let counit_v = from_sparse(&s, &self.counit)?;
        let counit = Matrix::from_columns(1, (0..n).map(|i| Vector::from_entries(1, [(0, counit_v.get(i))])).collect());
        let mut anti = vec![None; n];
        for (h, v) in &self.antipode {
            anti[index(&s, h)?] = Some(from_sparse(&s, v)?);
        }
        let anti = anti
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::Parse(format!("antipode of {} missing", s.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(HopfData {
            algebra,
            comul: Matrix::from_columns(n * n, comul),
            counit,
            antipode: Matrix::from_columns(n, anti),
            antipode_inv: None,
        })
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebra> {
        HopfAlgebra::new(self.to_data()?)
    }
}

/// `{hopf_ref, name, carrier_basis, action: [[h, m, out], …]}`.
///
/// `hopf_ref` is `group:<builtin>` (e.g. `group:cyclic:2`) or a Hopf JSON path relative to the module file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PartialModuleFile {
    pub hopf_ref: String,
    #[serde(default)]
    pub name: String,
    pub carrier_basis: Vec<String>,
    pub action: Vec<(String, String, SparseVec)>,
}

/// A partial module as read from disk, before the axioms are checked.
#[derive(Clone, Debug)]
pub struct RawPartialModule {
    pub hopf: Arc<HopfAlgebra>,
    pub carrier: Space,
    pub action: Vec<Matrix>,
}

impl RawPartialModule {
    pub fn check(&self) -> CheckReport {
        check_pr(&self.hopf, self.carrier.dim(), &self.action)
    }

    pub fn into_module(self) -> Result<PartialModule> {
        PartialModule::new(self.hopf, self.carrier, self.action)
    }
}

pub fn resolve_hopf_ref(r: &str, base: Option<&Path>) -> Result<Arc<HopfAlgebra>> {
    if let Some(spec) = r.strip_prefix("group:") {
        return Ok(Arc::new(group_hopf(&FiniteGroup::builtin(spec)?)));
    }
    let path = match base {
        Some(b) => b.join(r),
        None => PathBuf::from(r),
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(Arc::new(from_json::<HopfFile>(&text)?.to_hopf()?))
}

impl PartialModuleFile {
    pub fn from_module(m: &PartialModule, hopf_ref: &str) -> Self {
        let s = m.carrier();
        let hs = m.hopf().space();
        let mut action = Vec::new();
        for h in 0..m.hopf().dim() {
            for i in 0..m.dim() {
                let v = m.op(h).col(i);
                if !v.is_zero() {
                    action.push((hs.label(h).to_string(), s.label(i).to_string(), to_sparse(s, v)));
                }
            }
        }
        PartialModuleFile { hopf_ref: hopf_ref.to_string(), name: s.name().to_string(), carrier_basis: s.labels().to_vec(), action }
    }

    pub fn to_raw(&self, hopf: Arc<HopfAlgebra>) -> Result<RawPartialModule> {
        let name = if self.name.is_empty() { "M" } else { &self.name };
        let carrier = Space::new(name, self.carrier_basis.clone())?;
        let d = carrier.dim();
        let mut cols = vec![vec![Vector::zeros(d); d]; hopf.dim()];
        for (h, m, v) in &self.action {
            let hi = index(hopf.space(), h)?;
            cols[hi][index(&carrier, m)?] = from_sparse(&carrier, v)?;
        }
        let action = cols.into_iter().map(|c| Matrix::from_columns(d, c)).collect();
        Ok(RawPartialModule { hopf, carrier, action })
    }
}

pub fn load_partial_module(path: &Path) -> Result<RawPartialModule> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file: PartialModuleFile = from_json(&text)?;
    let hopf = resolve_hopf_ref(&file.hopf_ref, path.parent())?;
    file.to_raw(hopf)
}

fn show_vector(space: &Space, v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}·"));
        }
        out.push_str(space.label(i));
    }
    out
}

/// Nonzero basis products, one per line.
pub fn algebra_text(a: &Algebra) -> String {
    let s = a.space();
    let mut out = format!("# {} (dim {})\nunit = {}\n", s.name(), s.dim(), show_vector(s, a.unit()));
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let p = a.basis_product(i, j);
            if !p.is_zero() {
                out.push_str(&format!("{} * {} = {}\n", s.label(i), s.label(j), show_vector(s, p)));
            }
        }
    }
    out
}

/// A map `H → A` as `[h, value]` rows.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MapTable {
    pub name: String,
    pub rows: Vec<(String, SparseVec)>,
}

pub fn map_table(name: &str, domain: &Space, codomain: &Space, f: &Matrix) -> MapTable {
    MapTable { name: name.to_string(), rows: (0..domain.dim()).map(|k| (domain.label(k).to_string(), to_sparse(codomain, f.col(k)))).collect() }
}

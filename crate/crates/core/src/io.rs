//! JSON file formats for modules and varieties.
//!
//! Files written here are canonical: one field per line, one matrix row or
//! point per line, so `save(load(f)) == f` byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{ModuleRep, RModule, RqModule};
use crate::scalars::{Fe, FieldCtx, Mat};
use crate::variety::{PPoint, VarietySet};

pub const MODULE_SCHEMA: u32 = 1;
pub const VARIETY_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub schema_version: u32,
    pub p: u32,
    pub ell: u32,
    pub q: u32,
    pub n: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// `n` matrices, each a list of rows.
    pub x: Vec<Vec<Vec<u32>>>,
    pub g: Vec<Vec<Vec<u32>>>,
}

fn mat_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.0).collect()).collect()
}

fn rows_to_mat(ctx: &FieldCtx, rows: &[Vec<u32>], dim: usize, what: &str) -> Result<Mat> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Format(format!("{what} is not a {dim}x{dim} matrix")));
    }
    let p = ctx.p();
    let mut data = Vec::with_capacity(dim * dim);
    for r in rows {
        for &v in r {
            if v >= p {
                return Err(Error::Format(format!("{what} has entry {v} outside [0, {p})")));
            }
            data.push(Fe(v));
        }
    }
    Ok(Mat::from_vec(ctx.base(), dim, dim, data))
}

impl ModuleFile {
    pub fn from_module(m: &ModuleRep, label: Option<String>) -> ModuleFile {
        let ctx = m.ctx();
        ModuleFile {
            schema_version: MODULE_SCHEMA,
            p: ctx.p(),
            ell: ctx.ell(),
            q: ctx.q().0,
            n: ctx.n(),
            dim: m.dim(),
            label,
            x: m.xs().iter().map(mat_rows).collect(),
            g: m.gs().iter().map(mat_rows).collect(),
        }
    }

    /// Rebuilds the module, checking the context and every defining relation.
    pub fn to_module(&self) -> Result<ModuleRep> {
        let ctx = checked_context(self.schema_version, self.p, self.ell, self.q, self.n)?;
        if self.x.len() != self.n || self.g.len() != self.n {
            return Err(Error::Format(format!("expected {} X and g matrices", self.n)));
        }
        let conv = |mats: &[Vec<Vec<u32>>], name: &str| -> Result<Vec<Mat>> {
            mats.iter()
                .enumerate()
                .map(|(i, rows)| rows_to_mat(&ctx, rows, self.dim, &format!("{name}{}", i + 1)))
                .collect()
        };
        let x = conv(&self.x, "X")?;
        let g = conv(&self.g, "g")?;
        if self.dim == 0 {
            return Ok(ModuleRep::zero(&ctx));
        }
        ModuleRep::new(&ctx, x, g)
    }

    pub fn parse(text: &str) -> Result<ModuleFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    /// Canonical text.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema_version\": {},", self.schema_version);
        let _ = writeln!(s, "  \"p\": {},", self.p);
        let _ = writeln!(s, "  \"ell\": {},", self.ell);
        let _ = writeln!(s, "  \"q\": {},", self.q);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        let _ = writeln!(s, "  \"dim\": {},", self.dim);
        if let Some(label) = &self.label {
            let quoted = serde_json::to_string(label).expect("strings serialize");
            let _ = writeln!(s, "  \"label\": {quoted},");
        }
        render_matrices(&mut s, "x", &self.x, true);
        render_matrices(&mut s, "g", &self.g, false);
        s.push_str("}\n");
        s
    }
}

fn render_row(values: &[u32]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn render_matrices(s: &mut String, key: &str, mats: &[Vec<Vec<u32>>], comma: bool) {
    let _ = write!(s, "  \"{key}\": [");
    for (i, m) in mats.iter().enumerate() {
        s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        for (j, row) in m.iter().enumerate() {
            s.push_str(if j == 0 { "\n      " } else { ",\n      " });
            s.push_str(&render_row(row));
        }
        s.push_str(if m.is_empty() { "]" } else { "\n    ]" });
    }
    s.push_str(if mats.is_empty() { "]" } else { "\n  ]" });
    s.push_str(if comma { ",\n" } else { "\n" });
}

/// Which subalgebra a [`SubmoduleFile`] is a module over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subalgebra {
    /// `R`, generated by the `X_i`.
    R,
    /// `R_q`, generated by the `Y_i`.
    Rq,
}

/// A module over `R` or `R_q`, stored by its generator matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleFile {
    pub schema_version: u32,
    pub algebra: Subalgebra,
    pub p: u32,
    pub ell: u32,
    pub q: u32,
    pub n: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generators: Vec<Vec<Vec<u32>>>,
}

fn checked_context(schema: u32, p: u32, ell: u32, q: u32, n: usize) -> Result<Arc<FieldCtx>> {
    if schema != MODULE_SCHEMA {
        return Err(Error::Format(format!("unsupported module schema version {schema} (expected {MODULE_SCHEMA})")));
    }
    let ctx = FieldCtx::new(p, ell, n)?;
    if ctx.q().0 != q {
        return Err(Error::Format(format!(
            "q = {q} does not match the root of unity {} fixed for p = {p}, ell = {ell}",
            ctx.q().0
        )));
    }
    Ok(ctx)
}

impl SubmoduleFile {
    fn header(ctx: &FieldCtx, algebra: Subalgebra, dim: usize, gens: &[Mat], label: Option<String>) -> SubmoduleFile {
        SubmoduleFile {
            schema_version: MODULE_SCHEMA,
            algebra,
            p: ctx.p(),
            ell: ctx.ell(),
            q: ctx.q().0,
            n: ctx.n(),
            dim,
            label,
            generators: gens.iter().map(mat_rows).collect(),
        }
    }

    pub fn from_r(m: &RModule, label: Option<String>) -> SubmoduleFile {
        SubmoduleFile::header(m.ctx(), Subalgebra::R, m.dim(), m.xs(), label)
    }

    pub fn from_rq(m: &RqModule, label: Option<String>) -> SubmoduleFile {
        SubmoduleFile::header(m.ctx(), Subalgebra::Rq, m.dim(), m.ys(), label)
    }

    fn matrices(&self) -> Result<(Arc<FieldCtx>, Vec<Mat>)> {
        let ctx = checked_context(self.schema_version, self.p, self.ell, self.q, self.n)?;
        if self.generators.len() != self.n {
            return Err(Error::Format(format!("expected {} generator matrices", self.n)));
        }
        let name = if self.algebra == Subalgebra::R { "X" } else { "Y" };
        let mats = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, rows)| rows_to_mat(&ctx, rows, self.dim, &format!("{name}{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok((ctx, mats))
    }

    pub fn to_r(&self) -> Result<RModule> {
        if self.algebra != Subalgebra::R {
            return Err(Error::Format("expected an R-module file".into()));
        }
        let (ctx, mats) = self.matrices()?;
        RModule::new(&ctx, mats)
    }

    pub fn to_rq(&self) -> Result<RqModule> {
        if self.algebra != Subalgebra::Rq {
            return Err(Error::Format("expected an R_q-module file".into()));
        }
        let (ctx, mats) = self.matrices()?;
        RqModule::new(&ctx, mats)
    }

    pub fn parse(text: &str) -> Result<SubmoduleFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema_version\": {},", self.schema_version);
        let algebra = serde_json::to_string(&self.algebra).expect("enums serialize");
        let _ = writeln!(s, "  \"algebra\": {algebra},");
        let _ = writeln!(s, "  \"p\": {},", self.p);
        let _ = writeln!(s, "  \"ell\": {},", self.ell);
        let _ = writeln!(s, "  \"q\": {},", self.q);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        let _ = writeln!(s, "  \"dim\": {},", self.dim);
        if let Some(label) = &self.label {
            let quoted = serde_json::to_string(label).expect("strings serialize");
            let _ = writeln!(s, "  \"label\": {quoted},");
        }
        render_matrices(&mut s, "generators", &self.generators, false);
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreePoints {
    pub degree: u32,
    /// Field elements as codes `c_0 + c_1 p + ..`.
    pub points: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFile {
    pub schema_version: u32,
    pub p: u32,
    pub ell: u32,
    pub q: u32,
    pub n: usize,
    pub variety: Vec<DegreePoints>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<DegreePoints>>,
}

fn degree_points(v: &VarietySet) -> Vec<DegreePoints> {
    v.sets()
        .iter()
        .map(|(&degree, pts)| DegreePoints { degree, points: pts.iter().map(PPoint::codes).collect() })
        .collect()
}

fn to_variety(ctx: &FieldCtx, entries: &[DegreePoints]) -> Result<VarietySet> {
    let mut sets = BTreeMap::new();
    for entry in entries {
        let field = ctx.extend(entry.degree)?;
        let mut set = BTreeSet::new();
        for codes in &entry.points {
            if codes.len() != ctx.n() || codes.iter().any(|&c| c >= field.order()) {
                return Err(Error::Format(format!("malformed point {codes:?}")));
            }
            let point = PPoint::new(&field, codes.iter().map(|&c| Fe(c)).collect())?;
            if point.codes() != *codes {
                return Err(Error::Format(format!("point {codes:?} is not normalized")));
            }
            set.insert(point);
        }
        if set.len() != entry.points.len() || !entry.points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Format(format!("points at degree {} are not sorted and distinct", entry.degree)));
        }
        if sets.insert(entry.degree, set).is_some() {
            return Err(Error::Format(format!("degree {} listed twice", entry.degree)));
        }
    }
    Ok(VarietySet::from_sets(sets))
}

impl VarietyFile {
    pub fn new(ctx: &FieldCtx, variety: &VarietySet, psi: Option<&VarietySet>) -> VarietyFile {
        VarietyFile {
            schema_version: VARIETY_SCHEMA,
            p: ctx.p(),
            ell: ctx.ell(),
            q: ctx.q().0,
            n: ctx.n(),
            variety: degree_points(variety),
            psi: psi.map(degree_points),
        }
    }

    pub fn parse(text: &str) -> Result<VarietyFile> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn context(&self) -> Result<Arc<FieldCtx>> {
        if self.schema_version != VARIETY_SCHEMA {
            return Err(Error::Format(format!("unsupported variety schema version {}", self.schema_version)));
        }
        let ctx = FieldCtx::new(self.p, self.ell, self.n)?;
        if ctx.q().0 != self.q {
            return Err(Error::Format(format!("q = {} does not match {}", self.q, ctx.q().0)));
        }
        Ok(ctx)
    }

    pub fn to_variety(&self) -> Result<VarietySet> {
        to_variety(&*self.context()?, &self.variety)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema_version\": {},", self.schema_version);
        let _ = writeln!(s, "  \"p\": {},", self.p);
        let _ = writeln!(s, "  \"ell\": {},", self.ell);
        let _ = writeln!(s, "  \"q\": {},", self.q);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        render_degrees(&mut s, "variety", &self.variety, self.psi.is_some());
        if let Some(psi) = &self.psi {
            render_degrees(&mut s, "psi", psi, false);
        }
        s.push_str("}\n");
        s
    }
}

fn render_degrees(s: &mut String, key: &str, entries: &[DegreePoints], comma: bool) {
    let _ = write!(s, "  \"{key}\": [");
    for (i, e) in entries.iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(s, "    {{\n      \"degree\": {},\n      \"points\": [", e.degree);
        for (j, p) in e.points.iter().enumerate() {
            s.push_str(if j == 0 { "\n        " } else { ",\n        " });
            s.push_str(&render_row(p));
        }
        s.push_str(if e.points.is_empty() { "]\n    }" } else { "\n      ]\n    }" });
    }
    s.push_str(if entries.is_empty() { "]" } else { "\n  ]" });
    s.push_str(if comma { ",\n" } else { "\n" });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{monomial_quotient, regular_rep, trivial, Char};
    use crate::variety::rank_variety;

    #[test]
    fn module_round_trip_is_byte_identical() {
        let c = FieldCtx::new(7, 3, 2).unwrap();
        for (m, label) in [
            (trivial(&c), None),
            (monomial_quotient(&c, &Char(vec![1, 2]), &[vec![1, 1]]), Some("cyclic \"q\"".to_string())),
            (ModuleRep::zero(&c), None),
        ] {
            let text = ModuleFile::from_module(&m, label).render();
            let parsed = ModuleFile::parse(&text).unwrap();
            assert_eq!(parsed.to_module().unwrap(), m);
            assert_eq!(parsed.render(), text);
        }
    }

    #[test]
    fn load_rejects_bad_files() {
        let c = FieldCtx::new(5, 2, 1).unwrap();
        let mut f = ModuleFile::from_module(&regular_rep(&c), None);
        f.q = 3;
        assert!(matches!(f.to_module(), Err(Error::Format(_))));
        let mut f = ModuleFile::from_module(&trivial(&c), None);
        f.x[0][0][0] = 1;
        assert_eq!(f.to_module().unwrap_err(), Error::Validation("X1^2 = 0".into()));
        let mut f = ModuleFile::from_module(&trivial(&c), None);
        f.g[0][0][0] = 9;
        assert!(matches!(f.to_module(), Err(Error::Format(_))));
        assert!(matches!(ModuleFile::parse("{\"p\": 5}"), Err(Error::Format(_))));
    }

    #[test]
    fn variety_round_trip() {
        let c = FieldCtx::new(5, 2, 2).unwrap();
        let v = rank_variety(&trivial(&c), &[1, 2]).unwrap();
        let file = VarietyFile::new(&c, &v, Some(&v));
        let text = file.render();
        let parsed = VarietyFile::parse(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.render(), text);
        assert_eq!(parsed.to_variety().unwrap(), v);
        let empty = VarietyFile::new(&c, &VarietySet::empty(&[1]), None);
        assert_eq!(VarietyFile::parse(&empty.render()).unwrap(), empty);
    }

    #[test]
    fn submodule_round_trip() {
        let c = FieldCtx::new(7, 3, 2).unwrap();
        let m = monomial_quotient(&c, &Char(vec![0, 1]), &[vec![2, 0]]);
        let r = crate::rep::restrict_to_r(&m);
        let text = SubmoduleFile::from_r(&r, None).render();
        let parsed = SubmoduleFile::parse(&text).unwrap();
        assert_eq!(parsed.render(), text);
        assert_eq!(parsed.to_r().unwrap().xs(), r.xs());
        assert!(parsed.to_rq().is_err());
        let rq = crate::rep::restrict_to_rq(&m);
        let text = SubmoduleFile::from_rq(&rq, Some("y".into())).render();
        assert_eq!(SubmoduleFile::parse(&text).unwrap().to_rq().unwrap().ys(), rq.ys());
    }
}

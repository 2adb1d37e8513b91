//! Golden fixtures: worked examples stored as JSON data and re-checked
//! against fresh computations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conecount::{f_q, has_trivial_parallelepipeds, parallelepiped_points, trivial_parallelepiped_form, cone_indices};
use crate::exactalg::RatFun;
use crate::finiteweyl::GroupTable;
use crate::pipeline::AffinePipeline;
use crate::rootdata::{CartanType, RootSystem};
use crate::subset::Subset;

pub const BUILTIN: &[(&str, &str)] = &[
    ("a2", include_str!("../fixtures/a2.json")),
    ("a3", include_str!("../fixtures/a3.json")),
    ("b3", include_str!("../fixtures/b3.json")),
    ("c2", include_str!("../fixtures/c2.json")),
    ("c3", include_str!("../fixtures/c3.json")),
    ("c4", include_str!("../fixtures/c4.json")),
    ("f4", include_str!("../fixtures/f4.json")),
    ("g2", include_str!("../fixtures/g2.json")),
];

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub system: String,
    #[serde(default)]
    pub note: String,
    pub checks: Vec<FixtureCheck>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind")]
pub enum FixtureCheck {
    #[serde(rename = "cartan")]
    Cartan { expect: Vec<Vec<i64>>, det: i64 },
    #[serde(rename = "cone_generators")]
    ConeGenerators { expect: Vec<Vec<i64>> },
    #[serde(rename = "two_rho")]
    TwoRho { index: usize, expect: i64 },
    #[serde(rename = "points")]
    Points {
        #[serde(rename = "Q")]
        q: Vec<usize>,
        expect: Vec<Vec<i64>>,
    },
    #[serde(rename = "f_q")]
    FQ {
        #[serde(rename = "Q")]
        q: Vec<usize>,
        text: String,
        series: RatFun,
    },
    #[serde(rename = "m_affine")]
    MAffine {
        #[serde(rename = "Q")]
        q: Vec<usize>,
        #[serde(rename = "J")]
        j: Vec<usize>,
        text: String,
        series: RatFun,
    },
    #[serde(rename = "m_finite")]
    MFinite {
        #[serde(rename = "K")]
        k: Vec<usize>,
        #[serde(rename = "Q")]
        q: Vec<usize>,
        #[serde(rename = "J")]
        j: Vec<usize>,
        text: String,
        series: RatFun,
    },
    #[serde(rename = "trivial_form")]
    TrivialForm {
        #[serde(rename = "Q")]
        q: Vec<usize>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub system: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Read every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> std::io::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push((name, std::fs::read_to_string(&path)?));
        }
    }
    out.sort();
    Ok(out)
}

pub fn builtin() -> Vec<(String, String)> {
    BUILTIN
        .iter()
        .map(|(n, s)| (n.to_string(), s.to_string()))
        .collect()
}

/// Parse and check one fixture file. Parse errors become failures.
pub fn evaluate(name: &str, json: &str) -> FixtureOutcome {
    let mut out = FixtureOutcome {
        name: name.to_string(),
        system: String::new(),
        checks: 0,
        failures: Vec::new(),
    };
    let fixture: Fixture = match serde_json::from_str(json) {
        Ok(f) => f,
        Err(e) => {
            out.failures.push(format!("cannot parse fixture: {e}"));
            return out;
        }
    };
    out.system = fixture.system.clone();
    let t: CartanType = match fixture.system.parse() {
        Ok(t) => t,
        Err(e) => {
            out.failures.push(e.to_string());
            return out;
        }
    };
    let rs = RootSystem::build(t);
    let mut pipeline: Option<std::sync::Arc<AffinePipeline>> = None;
    let mut table: Option<GroupTable> = None;
    for (idx, check) in fixture.checks.iter().enumerate() {
        out.checks += 1;
        if let Err(msg) = run_check(&rs, check, &mut pipeline, &mut table) {
            out.failures.push(format!("check {idx}: {msg}"));
        }
    }
    out
}

fn subset(rs: &RootSystem, ids: &[usize]) -> Result<Subset, String> {
    Subset::from_ids(ids, rs.rank()).ok_or_else(|| format!("bad generator ids {ids:?}"))
}

fn compare_series(label: &str, text: &str, stored: &RatFun, got: &RatFun) -> Result<(), String> {
    let parsed: RatFun = text
        .parse()
        .map_err(|e| format!("{label}: cannot parse text `{text}`: {e}"))?;
    if &parsed != stored {
        return Err(format!("{label}: stored series {stored} disagrees with its text `{text}`"));
    }
    if got != stored {
        return Err(format!("{label}: expected {stored}, computed {got}"));
    }
    Ok(())
}

fn run_check(
    rs: &RootSystem,
    check: &FixtureCheck,
    pipeline: &mut Option<std::sync::Arc<AffinePipeline>>,
    table: &mut Option<GroupTable>,
) -> Result<(), String> {
    match check {
        FixtureCheck::Cartan { expect, det } => {
            if &rs.cartan().rows() != expect || rs.det() != *det {
                return Err(format!(
                    "cartan: expected {expect:?} (det {det}), computed {:?} (det {})",
                    rs.cartan().rows(),
                    rs.det()
                ));
            }
        }
        FixtureCheck::ConeGenerators { expect } => {
            if rs.cone_generators() != expect.as_slice() {
                return Err(format!(
                    "cone generators: expected {expect:?}, computed {:?}",
                    rs.cone_generators()
                ));
            }
        }
        FixtureCheck::TwoRho { index, expect } => {
            let w = rs
                .cone_generators()
                .get(index.wrapping_sub(1))
                .ok_or("two_rho: index out of range")?;
            let got = rs.two_rho_weight(w);
            if got != *expect {
                return Err(format!("two_rho w_{index}: expected {expect}, computed {got}"));
            }
        }
        FixtureCheck::Points { q, expect } => {
            let q = subset(rs, q)?;
            let got = parallelepiped_points(rs, cone_indices(rs, q));
            let mut want = expect.clone();
            want.sort();
            if got != want {
                return Err(format!("points Q={q}: expected {want:?}, computed {got:?}"));
            }
        }
        FixtureCheck::FQ { q, text, series } => {
            let q = subset(rs, q)?;
            compare_series(&format!("f_Q Q={q}"), text, series, &f_q(rs, q))?;
        }
        FixtureCheck::MAffine { q, j, text, series } => {
            let q = subset(rs, q)?;
            let j = subset(rs, j)?;
            if pipeline.is_none() {
                *pipeline = Some(AffinePipeline::shared(rs.cartan_type()).map_err(|e| e.to_string())?);
            }
            let p = pipeline.as_ref().unwrap();
            let got = p.matrix_m().get(q, j).clone();
            compare_series(&format!("M_S[{q}][{j}]"), text, series, &got)?;
        }
        FixtureCheck::MFinite { k, q, j, text, series } => {
            let k = subset(rs, k)?;
            let q = subset(rs, q)?;
            let j = subset(rs, j)?;
            if table.is_none() {
                *table = Some(GroupTable::enumerate(rs, rs.full()).map_err(|e| e.to_string())?);
            }
            let got = RatFun::from_poly(table.as_ref().unwrap().p_poly(q, j, k));
            compare_series(&format!("M_{{{k},S}}[{q}][{j}]"), text, series, &got)?;
        }
        FixtureCheck::TrivialForm { q } => {
            let q = subset(rs, q)?;
            if !has_trivial_parallelepipeds(rs, q) {
                return Err(format!("trivial_form Q={q}: some face has a nontrivial parallelepiped"));
            }
            let short = trivial_parallelepiped_form(rs, cone_indices(rs, q));
            let full = f_q(rs, q);
            if short != full {
                return Err(format!("trivial_form Q={q}: closed form {short} but f_Q = {full}"));
            }
        }
    }
    Ok(())
}

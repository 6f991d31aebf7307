//! Scenario files and the command runner behind the CLI.
//!
//! A scenario is a TOML document carrying one geometry, a slope, optional
//! data blocks (`N`, `N1`, `dtpar_series`, `gv`, `pt_n_table`, `chow_model`)
//! and a `run` list of commands. Unknown keys are rejected, rationals are
//! written as exact strings, and identical inputs produce byte-identical
//! reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::chow::{local_to_global_check, ChowModel, Stratum};
use crate::error::{Error, Result};
use crate::geometry::{CurveClass, Generator, Geometry};
use crate::git::{git_stability_test, hm_weight, DimensionTriple, FiltrationStep, WeightData};
use crate::invariants::{InvariantTable, SlopeContext};
use crate::lie::lie_transform_check;
use crate::poly::parse_poly;
use crate::pt::{
    gv_expand, l_series_solve, l_series_solve_multicover, l_symmetry_report, pt_rationality_report,
    GvTable, PtSeries,
};
use crate::ratfun::RatFun;
use crate::rational::{parse_rational, rat_int};
use crate::report::Report;
use crate::series::ConeSeries;
use crate::transforms::{
    check_multiple_cover, dt_par_from_n, multiple_cover_extend, n_from_dt_par,
};
use crate::verify;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    geometry: GeometryDoc,
    mu: String,
    #[serde(rename = "N", default)]
    n_block: Vec<EntryDoc>,
    #[serde(rename = "N1", default)]
    n1_block: Vec<EntryDoc>,
    #[serde(default)]
    dtpar_series: Vec<EntryDoc>,
    #[serde(default)]
    gv: Vec<GvEntryDoc>,
    #[serde(default)]
    pt_n_table: Vec<PtEntryDoc>,
    chow_model: Option<ChowModelDoc>,
    #[serde(default)]
    run: Vec<RunDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryDoc {
    d: u64,
    generators: Vec<GeneratorDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    name: String,
    omega: u64,
    h: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    #[serde(default)]
    n: Option<i64>,
    beta: Vec<u32>,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GvEntryDoc {
    g: u32,
    beta: Vec<u32>,
    value: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PtEntryDoc {
    n: i64,
    beta: Vec<u32>,
    value: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChowModelDoc {
    beta: Vec<u32>,
    strata: Vec<StratumDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumDoc {
    label: String,
    chi: i64,
    gamma: Vec<u32>,
    #[serde(default)]
    dtpar: Vec<NValueDoc>,
    #[serde(default)]
    n1: Vec<ClassValueDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NValueDoc {
    n: i64,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassValueDoc {
    beta: Vec<u32>,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleDoc {
    dim_v: u32,
    chi_f: String,
    dim_a: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunDoc {
    cmd: String,
    #[serde(default)]
    prefactor: Option<String>,
    #[serde(default)]
    n: Option<i64>,
    #[serde(default)]
    steps: Option<Vec<TripleDoc>>,
    #[serde(default)]
    total: Option<TripleDoc>,
    #[serde(default)]
    sub: Option<TripleDoc>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    max_d: Option<u64>,
}

impl TripleDoc {
    fn to_triple(&self) -> Result<DimensionTriple> {
        Ok(DimensionTriple {
            dim_v: self.dim_v,
            chi_f: parse_poly(&self.chi_f)?,
            dim_a: self.dim_a,
        })
    }
}

/// A parsed, validated scenario ready to execute.
pub struct Scenario {
    geometry: Arc<Geometry>,
    ctx: SlopeContext,
    n_table: InvariantTable,
    n1_table: InvariantTable,
    dtpar_series: ConeSeries<crate::rational::Rational>,
    gv: GvTable,
    pt_table: Vec<(i64, CurveClass, i64)>,
    chow: Option<ChowModel>,
    run: Vec<RunDoc>,
}

fn table_from_entries(
    geometry: &Arc<Geometry>,
    entries: &[EntryDoc],
    default_n: Option<i64>,
    what: &str,
) -> Result<InvariantTable> {
    let mut table = InvariantTable::new(geometry);
    for entry in entries {
        let n = match (entry.n, default_n) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Parse(format!("{what}: entry is missing n")));
            }
        };
        table.insert(
            n,
            CurveClass::new(entry.beta.clone()),
            parse_rational(&entry.value)?,
        )?;
    }
    Ok(table)
}

impl Scenario {
    /// Parses scenario text; every structural error is reported as a parse
    /// failure so front ends can map it to the parse exit code.
    pub fn parse(text: &str) -> Result<Scenario> {
        let doc: ScenarioDoc = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::build(doc).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(msg),
            other => Error::Parse(other.to_string()),
        })
    }

    fn build(doc: ScenarioDoc) -> Result<Scenario> {
        let generators = doc
            .geometry
            .generators
            .into_iter()
            .map(|g| Generator {
                name: g.name,
                omega: g.omega,
                h: g.h,
            })
            .collect();
        let geometry = Geometry::new(generators, doc.geometry.d)?;
        let ctx = SlopeContext::new(&geometry, parse_rational(&doc.mu)?);

        let n_table = table_from_entries(&geometry, &doc.n_block, None, "N")?;
        let n1_table = table_from_entries(&geometry, &doc.n1_block, Some(1), "N1")?;
        for (key, _) in n1_table.iter() {
            if key.n != 1 {
                return Err(Error::Parse(format!(
                    "N1: entry at ({}, {}) must have n = 1",
                    key.n, key.class
                )));
            }
        }

        let mut series = ConeSeries::one(&geometry);
        for entry in &doc.dtpar_series {
            let n = entry
                .n
                .ok_or_else(|| Error::Parse("dtpar_series: entry is missing n".into()))?;
            series = series.add(&ConeSeries::monomial(
                &geometry,
                n,
                CurveClass::new(entry.beta.clone()),
                parse_rational(&entry.value)?,
            )?)?;
        }

        if !doc.gv.is_empty() && !doc.pt_n_table.is_empty() {
            return Err(Error::Parse(
                "provide either a gv block or a pt_n_table block, not both".into(),
            ));
        }
        let mut gv = GvTable::new(&geometry);
        for entry in &doc.gv {
            gv.insert(entry.g, CurveClass::new(entry.beta.clone()), entry.value)?;
        }

        let pt_table = doc
            .pt_n_table
            .iter()
            .map(|e| (e.n, CurveClass::new(e.beta.clone()), e.value))
            .collect();

        let chow = match doc.chow_model {
            None => None,
            Some(model) => {
                let strata = model
                    .strata
                    .into_iter()
                    .map(|s| {
                        let mut dtpar = BTreeMap::new();
                        for entry in &s.dtpar {
                            dtpar.insert(entry.n, parse_rational(&entry.value)?);
                        }
                        let mut n1 = BTreeMap::new();
                        for entry in &s.n1 {
                            n1.insert(
                                CurveClass::new(entry.beta.clone()),
                                parse_rational(&entry.value)?,
                            );
                        }
                        Ok(Stratum {
                            label: s.label,
                            chi: s.chi,
                            cycle_mults: s.gamma,
                            dtpar,
                            n1,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(ChowModel::new(
                    &geometry,
                    CurveClass::new(model.beta),
                    strata,
                )?)
            }
        };

        Ok(Scenario {
            geometry,
            ctx,
            n_table,
            n1_table,
            dtpar_series: series,
            gv,
            pt_table,
            chow,
            run: doc.run,
        })
    }

    fn pt_series(&self) -> Result<PtSeries> {
        if !self.gv.is_empty() {
            return gv_expand(&self.geometry, &self.gv);
        }
        let mut series = PtSeries::one(&self.geometry);
        for (n, class, value) in &self.pt_table {
            let coeff = RatFun::q_power(*n).scale(&rat_int(*value));
            series = series.add(&PtSeries::monomial(
                &self.geometry,
                0,
                class.clone(),
                coeff,
            )?)?;
        }
        Ok(series)
    }

    fn solve_l(&self, prefactor: Option<&str>) -> Result<PtSeries> {
        let pt = self.pt_series()?;
        let mode = match prefactor {
            Some(mode) => mode.to_string(),
            None if !self.n_table.is_empty() => "table".to_string(),
            None => "multicover".to_string(),
        };
        match mode.as_str() {
            "table" => l_series_solve(&self.geometry, &pt, &self.n_table),
            "multicover" => l_series_solve_multicover(&self.geometry, &pt, &self.n1_table),
            other => Err(Error::Parse(format!("unknown prefactor mode {other:?}"))),
        }
    }

    fn merged_table(&self) -> Result<InvariantTable> {
        self.n_table.merged(&self.n1_table)
    }

    fn execute_one(&self, run: &RunDoc) -> Result<Report> {
        match run.cmd.as_str() {
            "forward" => {
                let series = dt_par_from_n(&self.ctx, &self.n_table)?;
                Ok(Report::new("forward", true, series.tsv_rows()).with_payload(series.to_doc()))
            }
            "inverse" => {
                let table = n_from_dt_par(&self.ctx, &self.dtpar_series)?;
                Ok(Report::new("inverse", true, table.tsv_rows()).with_payload(table.to_doc()))
            }
            "multcover" => {
                let table = multiple_cover_extend(&self.ctx, &self.n1_table)?;
                Ok(Report::new("multcover", true, table.tsv_rows()).with_payload(table.to_doc()))
            }
            "check-equiv" => {
                let report = check_multiple_cover(&self.ctx, &self.merged_table()?)?;
                Ok(Report::new(
                    "check-equiv",
                    report.all_ok(),
                    report.tsv_rows(),
                ))
            }
            "lie-check" => {
                let report = lie_transform_check(&self.ctx, &self.merged_table()?)?;
                Ok(Report::new("lie-check", report.all_ok(), report.tsv_rows()))
            }
            "gv-expand" => {
                let series = self.pt_series()?;
                Ok(Report::new("gv-expand", true, series.tsv_rows()).with_payload(series.to_doc()))
            }
            "pt-rationality" => {
                let report = pt_rationality_report(&self.pt_series()?);
                let rows = report
                    .rows
                    .iter()
                    .map(|row| {
                        vec![
                            row.class.to_string(),
                            row.fun.to_string(),
                            row.symmetric.to_string(),
                        ]
                    })
                    .collect();
                Ok(Report::new("pt-rationality", report.all_symmetric(), rows))
            }
            "l-solve" => {
                let l = self.solve_l(run.prefactor.as_deref())?;
                Ok(Report::new("l-solve", true, l.tsv_rows()).with_payload(l.to_doc()))
            }
            "l-symmetry" => {
                let report = l_symmetry_report(&self.solve_l(run.prefactor.as_deref())?);
                Ok(Report::new(
                    "l-symmetry",
                    report.all_ok(),
                    report.tsv_rows(),
                ))
            }
            "chow-aggregate" => {
                let model = self.chow.as_ref().ok_or_else(|| {
                    Error::Parse("chow-aggregate needs a chow_model block".into())
                })?;
                let n = run
                    .n
                    .ok_or_else(|| Error::Parse("chow-aggregate needs n".into()))?;
                let value = model.aggregate_local(n);
                Ok(Report::new(
                    "chow-aggregate",
                    true,
                    vec![vec![
                        n.to_string(),
                        model.class().to_string(),
                        value.to_string(),
                    ]],
                ))
            }
            "local-global" => {
                let model = self
                    .chow
                    .as_ref()
                    .ok_or_else(|| Error::Parse("local-global needs a chow_model block".into()))?;
                let report = local_to_global_check(model, self.ctx.slope())?;
                let ok = report.global_ok && report.all_strata_consistent();
                Ok(Report::new("local-global", ok, report.tsv_rows()))
            }
            "hm-weight" => {
                let total = run
                    .total
                    .as_ref()
                    .ok_or_else(|| Error::Parse("hm-weight needs total".into()))?
                    .to_triple()?;
                let steps = run
                    .steps
                    .as_ref()
                    .ok_or_else(|| Error::Parse("hm-weight needs steps".into()))?
                    .iter()
                    .map(|s| {
                        Ok(FiltrationStep {
                            dim_v: s.dim_v,
                            chi_f: parse_poly(&s.chi_f)?,
                            dim_a: s.dim_a,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let weight = hm_weight(&WeightData {
                    dim_v: total.dim_v,
                    steps,
                    chi_f: total.chi_f,
                    dim_a: total.dim_a,
                })?;
                Ok(Report::new(
                    "hm-weight",
                    true,
                    vec![vec![weight.render("l")]],
                ))
            }
            "git-test" => {
                let total = run
                    .total
                    .as_ref()
                    .ok_or_else(|| Error::Parse("git-test needs total".into()))?
                    .to_triple()?;
                let sub = run
                    .sub
                    .as_ref()
                    .ok_or_else(|| Error::Parse("git-test needs sub".into()))?
                    .to_triple()?;
                let sign = git_stability_test(&total, &sub)?;
                Ok(Report::new("git-test", true, vec![vec![sign.to_string()]]))
            }
            "verify" => {
                let outcomes = verify::run_all(run.seed.unwrap_or(42), run.max_d.unwrap_or(6));
                let ok = outcomes.iter().all(|o| o.passed);
                let rows = outcomes
                    .into_iter()
                    .map(|o| vec![o.name, o.passed.to_string(), o.detail])
                    .collect();
                Ok(Report::new("verify", ok, rows))
            }
            other => Err(Error::Parse(format!("unknown command {other:?}"))),
        }
    }

    /// Runs every command in order.
    pub fn execute(&self) -> Result<Vec<Report>> {
        self.run.iter().map(|run| self.execute_one(run)).collect()
    }
}

/// Parses and executes scenario text. Parse errors surface as `Error::Parse`;
/// the returned reports carry per-command ok flags.
pub fn run_scenario_str(text: &str) -> Result<Vec<Report>> {
    Scenario::parse(text)?.execute()
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use complement_geometry::algebra::{DivisionRing, Verdict};
use complement_geometry::chart::{AffineChart, ComplementCoord};
use complement_geometry::dualspread::{
    ds1_violation, family_from_dual_spread, is_dual_spread, DualSpreadReport, FamilyReport, Violation,
};
use complement_geometry::par::Strategy;
use complement_geometry::projective::all_complements;
use complement_geometry::reguli::{
    classify_line, incidence_violation, reconstruct_from_transversals, LineClass, Regulus,
};
use complement_geometry::serial::{
    dual_spread_from_json, dual_spread_to_json, family_from_json, family_to_json, matrix_from_json, matrix_to_json,
    regulus_to_json, subspace_to_json, transversals_from_json, transversals_to_json,
};
use complement_geometry::Error;

use crate::{CliError, Command, Outcome, Settings, Status};

pub(crate) fn run<R: DivisionRing>(ring: R, s: &Settings, cmd: &Command) -> Result<Outcome, CliError> {
    let chart = s.chart(ring)?;
    let ctx = Ctx { s, chart };
    match cmd {
        Command::Enumerate => ctx.enumerate(),
        Command::ClassifyLines => ctx.classify_lines(),
        Command::Regulus { through, transversals_out } => ctx.regulus(&through[0], &through[1], transversals_out.as_deref()),
        Command::Reconstruct { transversals } => ctx.reconstruct(transversals),
        Command::CheckDualSpread { file } => ctx.check_dual_spread(file),
        Command::BuildDualSpread { family, out } => ctx.build_dual_spread(family, out.as_deref()),
        Command::ExtractFamily { file, index, out } => ctx.extract_family(file, *index, out.as_deref()),
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "checked": v.checked, "coverage": v.coverage })
}

struct Ctx<'a, R: DivisionRing> {
    s: &'a Settings,
    chart: AffineChart<R>,
}

impl<R: DivisionRing> Ctx<'_, R> {
    fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), json!(command));
        m.insert("field".into(), json!(self.s.domain.spec()));
        m.insert("n".into(), json!(self.s.n));
        m.insert("k".into(), json!(self.s.k));
        m.insert("seed".into(), json!(self.s.seed));
        m
    }

    fn finish(&self, mut body: serde_json::Map<String, Value>, status: Status, text: String) -> Outcome {
        body.insert("status".into(), json!(status.name()));
        Outcome { status, json: Value::Object(body), text, files: Vec::new() }
    }

    fn coord_arg(&self, arg: &str, name: &str) -> Result<ComplementCoord<R>, CliError> {
        let v: Value = serde_json::from_str(arg).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
        Ok(self.chart.coord(matrix_from_json(self.chart.ring(), &v, Some(self.chart.k()))?)?)
    }

    fn enumerate(&self) -> Result<Outcome, CliError> {
        let coords = self.chart.all_coords()?;
        let oracle = all_complements(self.chart.w())?;
        let mut mismatches = 0usize;
        for c in &coords {
            let s = self.chart.decoordinatize(c)?;
            if self.chart.coordinatize(&s)? != *c {
                mismatches += 1;
            }
        }
        let mut a: Vec<_> = coords.iter().map(|c| self.chart.decoordinatize(c)).collect::<Result<_, _>>()?;
        let mut b = oracle.clone();
        a.sort();
        b.sort();
        let holds = mismatches == 0 && a == b;
        let mut body = self.header("enumerate");
        body.insert(
            "chart".into(),
            json!({ "w_basis": matrix_to_json(self.chart.w_basis()), "u_basis": matrix_to_json(self.chart.u_basis()) }),
        );
        body.insert("count".into(), json!(coords.len()));
        body.insert("matches_subspace_enumeration".into(), json!(a == b));
        body.insert("coordinates".into(), Value::Array(coords.iter().map(|c| matrix_to_json(c.gamma())).collect()));
        let text = format!(
            "enumerate: {} complements of W (dim {}) in {}^{}; subspace enumeration {}\n",
            coords.len(),
            self.s.k,
            self.s.domain,
            self.s.n,
            if a == b { "agrees" } else { "DISAGREES" }
        );
        Ok(self.finish(body, Status::from_holds(holds), text))
    }

    fn classify_lines(&self) -> Result<Outcome, CliError> {
        let lines = self.chart.lines_through_origin()?;
        let mut counts: BTreeMap<&str, usize> =
            [LineClass::Regular, LineClass::ExactCone, LineClass::NonExactCone].iter().map(|c| (c.name(), 0)).collect();
        let mut entries = Vec::with_capacity(lines.len());
        let mut failures = 0usize;
        for line in &lines {
            let (class, cone) = classify_line(&self.chart, line)?;
            *counts.get_mut(class.name()).expect("all classes listed") += 1;
            let mut ok = cone.vertex_in_points(self.s.seed)?.holds && cone.intersection_property(self.s.seed)?.holds;
            if cone.exact {
                ok &= cone.cone_set_equals_line()?;
            }
            if !ok {
                failures += 1;
            }
            entries.push(json!({
                "alpha": matrix_to_json(line.alpha()),
                "class": class.name(),
                "kernel_dim": cone.kernel.dim(),
                "vertex_dim": cone.vertex.dim(),
                "checks_hold": ok,
            }));
        }
        let mut body = self.header("classify-lines");
        let mut text = format!("classify-lines: {} lines through U\n", lines.len());
        if !self.chart.is_symmetric() {
            let notice = format!("k = {} differs from n - k = {}, so no line is regular", self.s.k, self.s.n - self.s.k);
            let _ = writeln!(text, "  notice: {notice}");
            body.insert("notice".into(), json!(notice));
        }
        for (name, c) in &counts {
            let _ = writeln!(text, "  {name}: {c}");
        }
        let _ = writeln!(text, "  cone checks failed: {failures}");
        body.insert("total".into(), json!(lines.len()));
        body.insert("counts".into(), json!(counts));
        body.insert("failed_checks".into(), json!(failures));
        body.insert("lines".into(), Value::Array(entries));
        Ok(self.finish(body, Status::from_holds(failures == 0), text))
    }

    fn regulus(&self, a: &str, b: &str, transversals_out: Option<&Path>) -> Result<Outcome, CliError> {
        self.chart_symmetric()?;
        let u1 = self.coord_arg(a, "A")?;
        let u2 = self.coord_arg(b, "B")?;
        let mut body = self.header("regulus");
        body.insert("through".into(), json!([matrix_to_json(u1.gamma()), matrix_to_json(u2.gamma())]));
        if !self.chart.complementary(&u1, &u2)? {
            body.insert("reason".into(), json!("A and B are not complementary"));
            return Ok(self.finish(body, Status::Fail, "regulus: A and B are not complementary\n".into()));
        }
        let reg = Regulus::through(&self.chart, &u1, &u2)?;
        let seed = self.s.seed;
        let members = reg.members(seed)?;
        let ts = reg.transversals()?;
        let mut contains = reg.contains_w()?;
        for c in [&u1, &u2] {
            contains &= reg.contains(&self.chart.decoordinatize(c)?)?;
        }
        let pairwise = reg.pairwise_complementary(seed)?;
        let incidence = incidence_violation(&members.items, &ts.lines)?;
        let w_plus = reg.w_plus_condition()?;
        let holds = contains && pairwise.holds && incidence.is_none() && w_plus.holds;
        body.insert("regulus".into(), regulus_to_json(&reg, seed)?);
        let ts_json = transversals_to_json(&ts, self.chart.ambient_dim());
        body.insert("transversals".into(), ts_json.clone());
        body.insert(
            "checks".into(),
            json!({
                "contains_w_a_b": contains,
                "pairwise_complementary": verdict_json(&pairwise),
                "incidence_violation": incidence,
                "w_plus_transversals_equals_w_plus_z_points": verdict_json(&w_plus),
            }),
        );
        let text = format!(
            "regulus: {} members ({:?}), {} transversals\n  contains W, A, B: {contains}\n  pairwise complementary: {}\n  incidence: {}\n  W+T = W+Z(U): {}\n",
            members.len(),
            members.coverage,
            ts.len(),
            pairwise.holds,
            incidence.as_deref().unwrap_or("ok"),
            w_plus.holds,
        );
        let mut out = self.finish(body, Status::from_holds(holds), text);
        if let Some(p) = transversals_out {
            out.files.push((p.to_path_buf(), ts_json));
        }
        Ok(out)
    }

    fn chart_symmetric(&self) -> Result<(), CliError> {
        if !self.chart.is_symmetric() {
            return Err(CliError::Usage(format!("this command needs n = 2k, got n = {}, k = {}", self.s.n, self.s.k)));
        }
        Ok(())
    }

    fn reconstruct(&self, file: &Path) -> Result<Outcome, CliError> {
        self.chart_symmetric()?;
        let ts = transversals_from_json(self.chart.ring(), &read_json(file)?, self.chart.ambient_dim())?;
        let mut body = self.header("reconstruct");
        body.insert("transversal_count".into(), json!(ts.len()));
        match reconstruct_from_transversals(&self.chart, &ts, Strategy::Parallel) {
            Ok(reg) => {
                let ms = reg.members(self.s.seed)?;
                body.insert("regulus".into(), regulus_to_json(&reg, self.s.seed)?);
                let text = format!("reconstruct: regulus with {} members from {} transversals\n", ms.len(), ts.len());
                Ok(self.finish(body, Status::Pass, text))
            }
            Err(Error::Reconstruction(why)) => {
                body.insert("reason".into(), json!(why));
                Ok(self.finish(body, Status::Fail, format!("reconstruct: failed: {why}\n")))
            }
            Err(e) => Err(e.into()),
        }
    }

    fn spread_report_json(&self, r: &DualSpreadReport<R>) -> Value {
        let violation = match &r.violation {
            None => Value::Null,
            Some(Violation::NotComplementary(i, j)) => json!({ "condition": "ds1", "pair": [i, j] }),
            Some(Violation::Uncovered(x)) => json!({ "condition": "ds2", "hyperplane": subspace_to_json(x) }),
        };
        json!({
            "pairs_checked": r.pairs_checked,
            "hyperplanes_checked": r.hyperplanes_checked,
            "violation": violation,
        })
    }

    fn spread_text(r: &DualSpreadReport<R>) -> String {
        match &r.violation {
            None => format!("PASS ({} pairs, {} hyperplanes)", r.pairs_checked, r.hyperplanes_checked),
            Some(Violation::NotComplementary(i, j)) => format!("FAIL: members {i} and {j} are not complementary"),
            Some(Violation::Uncovered(x)) => format!("FAIL: hyperplane {x:?} contains no member"),
        }
    }

    fn check_dual_spread(&self, file: &Path) -> Result<Outcome, CliError> {
        self.chart_symmetric()?;
        let b = dual_spread_from_json(&self.chart, &read_json(file)?)?;
        if !self.chart.ring().is_finite() {
            let ds1 = ds1_violation(&self.chart, &b, Strategy::Parallel)?;
            let part = match ds1 {
                None => "pairwise complementarity holds".to_string(),
                Some((i, j)) => format!("members {i} and {j} are not complementary"),
            };
            return Err(CliError::Usage(format!(
                "hyperplane coverage cannot be decided over {} by enumeration ({part})",
                self.s.domain
            )));
        }
        let report = is_dual_spread(&self.chart, &b, Strategy::Parallel)?;
        let mut body = self.header("check-dual-spread");
        body.insert("members".into(), json!(b.members.len() + 1));
        body.insert("report".into(), self.spread_report_json(&report));
        let text = format!("check-dual-spread: {} members with W: {}\n", b.members.len() + 1, Self::spread_text(&report));
        Ok(self.finish(body, Status::from_holds(report.holds()), text))
    }

    fn family_report_json(r: &FamilyReport<R>) -> Value {
        json!({
            "t1_violation": r.t1_violation.map(|(i, j)| json!([i, j])),
            "t2_violation": r.t2_violation.as_ref().map(subspace_to_json),
        })
    }

    fn build_dual_spread(&self, file: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
        self.chart_symmetric()?;
        let fam = family_from_json(self.chart.ring(), &read_json(file)?)?;
        let report = fam.verify(&self.chart, Strategy::Parallel)?;
        let mut body = self.header("build-dual-spread");
        body.insert("entries".into(), json!(fam.domain.len()));
        body.insert("verify".into(), Self::family_report_json(&report));
        if !report.holds() {
            let text = format!(
                "build-dual-spread: family fails{}{}\n",
                if report.t1_violation.is_some() { " (T1*)" } else { "" },
                if report.t2_violation.is_some() { " (T2*)" } else { "" },
            );
            return Ok(self.finish(body, Status::Fail, text));
        }
        let b = fam.dual_spread(&self.chart)?;
        let check = is_dual_spread(&self.chart, &b, Strategy::Parallel)?;
        let spread = dual_spread_to_json(&b);
        body.insert("dual_spread".into(), spread.clone());
        body.insert("recheck".into(), self.spread_report_json(&check));
        let text = format!(
            "build-dual-spread: {} members with W; re-check {}\n",
            b.members.len() + 1,
            Self::spread_text(&check)
        );
        let mut outcome = self.finish(body, Status::from_holds(check.holds()), text);
        if let Some(p) = out {
            outcome.files.push((PathBuf::from(p), spread));
        }
        Ok(outcome)
    }

    fn extract_family(&self, file: &Path, index: usize, out: Option<&Path>) -> Result<Outcome, CliError> {
        self.chart_symmetric()?;
        let b = dual_spread_from_json(&self.chart, &read_json(file)?)?;
        if index >= self.chart.m() {
            return Err(CliError::Usage(format!("--index {index} is out of range for |I| = {}", self.chart.m())));
        }
        let check = is_dual_spread(&self.chart, &b, Strategy::Parallel)?;
        let mut body = self.header("extract-family");
        body.insert("index".into(), json!(index));
        body.insert("input_check".into(), self.spread_report_json(&check));
        if !check.holds() {
            let text = format!("extract-family: input is not a dual spread: {}\n", Self::spread_text(&check));
            return Ok(self.finish(body, Status::Fail, text));
        }
        let fam = family_from_dual_spread(&self.chart, &b, index)?;
        let report = fam.verify(&self.chart, Strategy::Parallel)?;
        let fam_json = family_to_json(self.chart.ring(), &fam);
        body.insert("family".into(), fam_json.clone());
        body.insert("verify".into(), Self::family_report_json(&report));
        let text = format!(
            "extract-family: {} entries at index {index}; (T1*)/(T2*) {}\n",
            fam.domain.len(),
            if report.holds() { "hold" } else { "FAIL" }
        );
        let mut outcome = self.finish(body, Status::from_holds(report.holds()), text);
        if let Some(p) = out {
            outcome.files.push((PathBuf::from(p), fam_json));
        }
        Ok(outcome)
    }
}

//! Task execution and JSON reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycles::{cycle_hilbert, express_in_point_basis, is_fake_linear, verify_tensor_decomposition, Provenance};
use crate::error::{Error, Result};
use crate::jacobian::{
    colon_piece, hessian_det, ideal_equal, ideal_piece, is_artinian_gorenstein, membership, smoothness_check, Colon,
};
use crate::problem::{
    names_param, numbers_param, polynomial_param, polynomials_param, rational_param, rationals_param, unsigned_param,
    Problem, Task,
};
use crate::qform::{qff_pair, qff_vanishes_on_degree, theorem4_witness, theorem6_check};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: ToolInfo = ToolInfo {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskEcho {
    pub index: usize,
    pub line: usize,
    pub op: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportError {
    pub message: String,
    pub exit_code: i32,
}

/// One JSON line per task.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: TaskEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    pub elapsed_ms: f64,
    pub tool: ToolInfo,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit_code)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// Runs a single task.
pub fn run_task(problem: &Problem, task: &Task) -> Report {
    let start = Instant::now();
    let outcome = execute(problem, task);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (result, error) = match outcome {
        Ok(v) => (Some(v), None),
        Err(e) => (
            None,
            Some(ReportError {
                message: e.to_string(),
                exit_code: e.exit_code(),
            }),
        ),
    };
    Report {
        task: TaskEcho {
            index: task.index,
            line: task.line,
            op: task.op.clone(),
            params: task.echo(),
        },
        result,
        error,
        elapsed_ms,
        tool: TOOL,
    }
}

/// Runs every task; the output is in task order either way.
pub fn run_all(problem: &Problem, parallel: bool) -> Vec<Report> {
    if parallel {
        problem.tasks.par_iter().map(|t| run_task(problem, t)).collect()
    } else {
        problem.tasks.iter().map(|t| run_task(problem, t)).collect()
    }
}

fn execute(problem: &Problem, task: &Task) -> Result<Value> {
    let p = task.params.get("on");
    match task.op.as_str() {
        "smoothness_check" => {
            let spec = problem.surface(p)?;
            Ok(json!({ "smooth": smoothness_check(&spec) }))
        }
        "jacobian_quotient_dim" => {
            let spec = problem.surface(p)?;
            let e = unsigned_param(task.param("degree")?)?;
            Ok(json!({ "degree": e, "dim": spec.jacobian_quotient_dim(e) }))
        }
        "hessian_det" => {
            let spec = problem.surface(p)?;
            Ok(json!({ "hessian": hessian_det(&spec) }))
        }
        "ideal_piece" => {
            let spec = problem.surface(p)?;
            let gens = polynomials_param(task.param("gens")?, spec.nvars())?;
            let e = unsigned_param(task.param("degree")?)?;
            Ok(to_value(&ideal_piece(&gens, &spec, e)))
        }
        "membership" => {
            let spec = problem.surface(p)?;
            let gens = polynomials_param(task.param("gens")?, spec.nvars())?;
            let q = polynomial_param(task.param("poly")?, spec.nvars())?;
            Ok(json!({ "member": membership(&spec, &gens, &q)? }))
        }
        _ => cycle_task(problem, task),
    }
}

fn cycle_task(problem: &Problem, task: &Task) -> Result<Value> {
    if task.op == "theorem4_witness" {
        let d = unsigned_param(task.param("d")?)?;
        let alpha0 = unsigned_param(task.param("alpha0")?)?;
        let r = rational_param(task.param("r")?)?;
        let rc = rational_param(task.param("rcheck")?)?;
        return Ok(to_value(&theorem4_witness(d, alpha0, &r, &rc)?));
    }
    if task.op == "theorem6_check" {
        let names = names_param(task.param("factors")?);
        let factors = names
            .iter()
            .map(|n| {
                problem
                    .hypersurfaces
                    .get(n)
                    .map(|s| (**s).clone())
                    .ok_or_else(|| Error::Domain(format!("unknown hypersurface `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = numbers_param(task.param("c")?)?;
        return Ok(to_value(&theorem6_check(&factors, &c)?));
    }
    let entry = problem.cycle(task.param("cycle")?)?;
    let spec = &*entry.on;
    let poly = &entry.cycle.poly;
    match task.op.as_str() {
        "hilbert_function" => {
            let hf = cycle_hilbert(spec, poly)?;
            Ok(json!({
                "hilbert": hf.values(),
                "socle_degree": hf.socle_degree(),
                "symmetric": hf.is_symmetric(),
            }))
        }
        "colon_piece" => {
            let e = unsigned_param(task.param("degree")?)?;
            Ok(to_value(&colon_piece(spec, poly, e)?))
        }
        "colon_contains" => {
            let g = polynomial_param(task.param("poly")?, spec.nvars())?;
            Ok(json!({ "member": Colon::new(spec, poly)?.contains(&g) }))
        }
        "is_artinian_gorenstein" => Ok(to_value(&is_artinian_gorenstein(spec, poly)?)),
        "ideal_equal" => {
            let other_entry = task.param("other")?;
            let other = problem.cycle(other_entry)?;
            if other.on.f() != spec.f() {
                return Err(Error::Domain("cycles live on different hypersurfaces".into()));
            }
            Ok(json!({ "equal": ideal_equal(spec, poly, &other.cycle.poly)? }))
        }
        "is_fake_linear" => Ok(to_value(&is_fake_linear(spec, poly)?)),
        "express_in_point_basis" => {
            let roots = rationals_param(task.param("roots")?)?;
            Ok(json!({ "coefficients": express_in_point_basis(poly, &roots)? }))
        }
        "verify_tensor_decomposition" => {
            let (Provenance::Join { left, right }, Some((f, g))) = (&entry.cycle.provenance, &entry.factors) else {
                return Err(Error::Domain("cycle is not a join".into()));
            };
            Ok(json!({ "holds": verify_tensor_decomposition(f, g, &left.poly, &right.poly, None)? }))
        }
        "qff_pair" => {
            let g = polynomial_param(task.param("g")?, spec.nvars())?;
            let h = polynomial_param(task.param("h")?, spec.nvars())?;
            Ok(to_value(&qff_pair(spec, poly, &g, &h)?))
        }
        "qff_vanishes_on_degree" => {
            let e = unsigned_param(task.param("degree")?)?;
            Ok(to_value(&qff_vanishes_on_degree(spec, poly, e)?))
        }
        other => Err(Error::Domain(format!("unsupported task `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "\
[ring]
nvars = 4
d = 3
[hypersurface]
F = x0^3 + x1^3 + x2^3 + x3^3
[hypersurface g]
F = x0^3 + x1^3
[cycle p]
kind = point
on = g
r = z(6)
[cycle J]
kind = join
left = p
right = p
[task]
op = hilbert_function
cycle = J
[task]
op = verify_tensor_decomposition
cycle = J
[task]
op = qff_vanishes_on_degree
cycle = J
degree = 1
[task]
op = express_in_point_basis
cycle = J
roots = 0, 1
";

    #[test]
    fn runs_tasks_in_order() {
        let problem = Problem::parse(SRC).unwrap();
        let seq = run_all(&problem, false);
        let par = run_all(&problem, true);
        assert_eq!(seq.len(), 4);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.task, b.task);
            assert_eq!(a.result, b.result);
        }
        assert_eq!(seq[0].result.as_ref().unwrap()["hilbert"], json!([1, 2, 1]));
        assert_eq!(seq[1].result.as_ref().unwrap()["holds"], json!(true));
        assert_eq!(seq[2].result.as_ref().unwrap()["vanishes"], json!(true));
        assert_eq!(seq[3].exit_code(), 4);
    }
}

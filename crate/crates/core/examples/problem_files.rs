//! Reading a problem from JSON and producing the same report the
//! command-line tool prints.
//!
//!     cargo run --example problem_files

use dirac_sturm::io::render_json;
use dirac_sturm::{
    build_basis, parse_problem, solve_spectrum, Method, MissFunction, SpectrumReport,
};

const PROBLEM: &str = r#"{
  "potential": {"type": "piecewise_constant", "breakpoints": [0, 0.4, 1], "values": [3, -15]},
  "weight": {"nodes": [0.2, 0.5, 0.8], "masses": [1, 2, 0.5]},
  "tolerances": {"zero_det": 1e-10}
}"#;

fn main() -> dirac_sturm::Result<()> {
    let p = parse_problem(PROBLEM)?;
    let tol = p.tolerances();
    let basis = build_basis(&p.potential, &tol)?;
    let c = solve_spectrum(&basis, &p.weight, &tol, Method::Auto)?;
    let report = SpectrumReport::new(&c, &MissFunction::from_basis(&basis, &p.weight))?;
    print!("{}", render_json(&report.to_json_value()));
    print!("{}", report.to_csv());
    Ok(())
}

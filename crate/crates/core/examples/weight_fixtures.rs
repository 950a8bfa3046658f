//! Runs the classification fixtures and prints a verdict per fixture.
use holotorsion::catalog::{all_fixtures, run_fixtures};

fn main() -> holotorsion::Result<()> {
    let out = run_fixtures(&all_fixtures())?;
    for o in &out {
        let sign = if o.positive { "+" } else { "-" };
        println!("{:<28} {sign} {:<40} {}", o.theorem, o.label, if o.pass { "PASS" } else { "FAIL" });
    }
    println!("{}/{} fixtures pass", out.iter().filter(|o| o.pass).count(), out.len());
    Ok(())
}

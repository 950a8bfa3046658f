//! Lowest eigenvalue of the Laplacian across degrees, against the predicted value.
use holotorsion::dbar::first_eigenvalue_scan;
use holotorsion::field::parse_rational;

fn main() -> holotorsion::Result<()> {
    for n in 1..=3 {
        for a in ["-1/2", "-1", "-3"] {
            let s = first_eigenvalue_scan(n, &parse_rational(a)?, 6)?.result;
            println!("n={n} alpha={a:<5} lambda1={:<4} nu={:<4} mult={} {:?}", s.lambda1_exact, s.nu, s.multiplicity, s.eigenspace);
        }
    }
    Ok(())
}

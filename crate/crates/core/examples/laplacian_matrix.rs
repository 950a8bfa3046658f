//! The Laplacian on a graded piece: symbolic matrix, spectrum and Gershgorin data.
use holotorsion::dbar::{box1_matrix_symbolic, spectral_report};
use holotorsion::field::parse_rational;

fn main() -> holotorsion::Result<()> {
    let b = box1_matrix_symbolic(2, 2)?;
    for i in 0..b.size() {
        let row: Vec<String> = (0..b.size()).map(|j| format!("{:>5}", b.entry(i, j).to_string())).collect();
        println!("{:<10} {}", b.basis.label(i), row.join(" "));
    }
    let alpha = parse_rational("-1/2")?;
    let r = spectral_report(2, &alpha, 2, false)?;
    for c in &r.eigenvalues {
        println!("eigenvalue {:.6} x{}", c.value, c.multiplicity);
    }
    println!("closed form matches: {}, column sum {}", r.closed_form_matches, r.column_sum);
    println!("min delta {} vs bound {}", r.gershgorin.min_delta, r.gershgorin.bound);
    Ok(())
}

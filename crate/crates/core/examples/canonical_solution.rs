//! Canonical solution of d f = eta and the weighted L2 estimate.
use holotorsion::bergman::estimate_check;
use holotorsion::dbar::{canonical_solution, MonomialForm};
use holotorsion::field::parse_rational;

fn main() -> holotorsion::Result<()> {
    let alpha = parse_rational("-1")?;
    for eta in ["dz1", "z1*z2*dz1 + 1/2*z1^2*dz2", "z2^3*dz2"] {
        let form = MonomialForm::parse(2, eta)?;
        let s = canonical_solution(&form, &alpha)?;
        let r = estimate_check(&form, &alpha)?;
        println!("eta = {eta}");
        println!("  f = {}  (exact: {})", s.f, s.exact);
        println!("  ||f||^2 = {:.6e} <= {:.6e} : {}", r.lhs, r.rhs, r.holds);
    }
    Ok(())
}

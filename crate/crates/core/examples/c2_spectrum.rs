//! The two-dimensional example: admissible monomials, their norms and the spectrum.
use holotorsion::bergman::{c2_membership, c2_norm};
use holotorsion::dbar::c2_spectrum;

fn main() -> holotorsion::Result<()> {
    for r in c2_spectrum(10)? {
        println!("eigenvalue {:>2}: multiplicity {:>2} (expected {})", r.value, r.multiplicity, r.expected);
    }
    for (k, l) in [(2, 0), (3, 1), (4, 1), (1, 0), (3, 2)] {
        println!("z1^{k} z2^{l}: member {} norm {:?}", c2_membership(k, l), c2_norm(k, l)?);
    }
    Ok(())
}

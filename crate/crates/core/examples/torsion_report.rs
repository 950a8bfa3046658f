//! Chern torsion and curvature of the half hyperbolic metric.
use holotorsion::catalog::{make_family, FamilySpec};
use holotorsion::geometry::ChernConnection;

fn main() -> holotorsion::Result<()> {
    let n = 2;
    let fam = make_family(&FamilySpec::new("half_hyperbolic", n))?;
    let c = ChernConnection::new(&fam.metric);
    if let Some(d) = fam.metric.det().to_rational() {
        println!("det h = {d}");
    }
    for (j, t) in c.torsion_form().iter().enumerate() {
        println!("tau_{} = {}", j + 1, t.clone().simplified());
    }
    println!("holomorphic torsion: {}", c.has_holomorphic_torsion());
    let (s, sh) = c.scalar_curvatures();
    if let (Some(s), Some(sh)) = (s.to_rational(), sh.to_rational()) {
        println!("scalar curvatures: {s} and {sh}");
    }
    if let Some(pair) = &fam.conformal {
        println!("tripod agrees: {}", pair.tripod().agrees());
    }
    Ok(())
}

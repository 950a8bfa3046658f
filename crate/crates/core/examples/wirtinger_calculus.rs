//! Wirtinger derivatives of a rational field on the ball.
use holotorsion::field::{parse_expr_str, Slot};

fn main() -> holotorsion::Result<()> {
    let f = parse_expr_str(2, r#"{"div": [{"mul": [{"var": "z1"}, {"var": "zbar2"}]}, {"sub": [1, {"var": "r"}]}]}"#)?;
    println!("f          = {f}");
    println!("d f/dz1    = {}", f.wirtinger(Slot::Holo(0)).simplified());
    println!("d f/dzbar1 = {}", f.wirtinger(Slot::Anti(0)).simplified());
    let mixed = f.wirtinger(Slot::Holo(1)).wirtinger(Slot::Anti(0));
    println!("mixed partials agree: {}", mixed.equals(&f.wirtinger(Slot::Anti(0)).wirtinger(Slot::Holo(1))));
    println!("conj(conj f) = f: {}", f.conj().conj().equals(&f));
    Ok(())
}

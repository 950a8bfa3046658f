//! Weighted monomial integrals on the ball: closed form against quadrature.
use holotorsion::bergman::{gram_block, monomial_integral, quadrature_pairing};
use holotorsion::dbar::{multi_indices, MultiIndex};
use holotorsion::field::parse_rational;

fn main() -> holotorsion::Result<()> {
    for c in [0.0, 0.5, 2.0] {
        for lam in multi_indices(2, 2) {
            let exact = monomial_integral(&lam, &lam, c, 2)?;
            let quad = quadrature_pairing(&lam, &lam, c)?;
            println!("c={c} {lam}: {exact:.12} vs {:.12}", quad.re);
        }
    }
    let off = quadrature_pairing(&MultiIndex(vec![1, 0]), &MultiIndex(vec![0, 1]), 0.5)?;
    println!("z1 against z2: {off:.2e}");
    let g = gram_block(2, &parse_rational("-1")?, 1)?;
    for row in &g.exact {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("pi^2 * [{}]", r.join(", "));
    }
    Ok(())
}

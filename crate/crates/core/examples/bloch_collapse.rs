//! Extended Bloch representation: Gell-Mann coordinates of a qutrit state,
//! the measurement simplex of a nondegenerate observable, and the uniform
//! membrane collapse probabilities, which match the Born rule.

use qcog::bloch::{bloch_to_density, collapse_probabilities_uniform, simplex_of, state_to_bloch, BlochPoint, GeneratorBasis};
use qcog::{random_spectral_family, random_state};

fn main() -> qcog::Result<()> {
    let basis = GeneratorBasis::gell_mann(3)?;
    let state = random_state(3, 7)?;
    let point = state_to_bloch(&state, &basis)?;
    println!("Bloch vector ({} coordinates), |r| = {:.6}", point.coords.len(), point.norm());

    let family = random_spectral_family(3, &[1, 1, 1], 8)?;
    let simplex = simplex_of(&family, &basis)?;
    println!("simplex geometry deviation {:.2e}", simplex.geometry_deviation());

    let collapse = collapse_probabilities_uniform(&point, &simplex)?;
    let born = family.probabilities(&state)?;
    for (k, (c, b)) in collapse.iter().zip(&born).enumerate() {
        println!("outcome {k}: barycentric {c:.10}  Born {b:.10}");
    }

    let antipode = point.scaled(-1.0);
    match bloch_to_density(&antipode, &basis) {
        Ok(_) => println!("antipode is a state"),
        Err(e) => println!("antipode rejected: {e}"),
    }
    let centre = bloch_to_density(&BlochPoint::origin(3), &basis)?;
    println!("origin maps to the maximally mixed state: trace = {:.3}", centre.entries().trace().re);
    Ok(())
}

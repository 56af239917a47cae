//! A conceptual entity in a three-dimensional Hilbert space, measured in two
//! contexts. Shows Born probabilities, the Lüders update and the order
//! dependence of sequential probabilities when the contexts do not commute.

use qcog::{
    commutator_frobenius_norm, sequential_probability, ConceptualEntity, Projector, SpectralFamily,
    StateVector,
};

fn main() -> qcog::Result<()> {
    let state = StateVector::from_real(&[0.6, 0.48, 0.64])?;

    // Context "fruit": is it a fruit (basis vector 0) or not.
    let fruit_yes = Projector::rank_one(&StateVector::basis(3, 0)?);
    let fruit = SpectralFamily::yes_no(fruit_yes)?;
    // Context "sweet": yes-space spanned by a tilted vector.
    let sweet_yes = Projector::rank_one(&StateVector::normalized(vec![1.0.into(), 1.0.into(), 0.0.into()])?);
    let sweet = SpectralFamily::yes_no(sweet_yes)?;

    let mut entity = ConceptualEntity::new("tomato", state.clone())
        .with_context("fruit", fruit.clone())?
        .with_context("sweet", sweet.clone())?;

    println!("P(fruit = yes)  = {:.4}", entity.outcome_probability("fruit", 0)?);
    println!("P(sweet = yes)  = {:.4}", entity.outcome_probability("sweet", 0)?);

    let p = entity.measure("fruit", 0)?;
    println!("after answering fruit = yes (p = {p:.4}):");
    println!("  P(fruit = yes) = {:.4}", entity.outcome_probability("fruit", 0)?);
    println!("  P(sweet = yes) = {:.4}", entity.outcome_probability("sweet", 0)?);

    let fs = sequential_probability(&state, &[(&fruit, 0), (&sweet, 0)])?;
    let sf = sequential_probability(&state, &[(&sweet, 0), (&fruit, 0)])?;
    println!("P(fruit yes, then sweet yes) = {fs:.4}");
    println!("P(sweet yes, then fruit yes) = {sf:.4}");
    println!(
        "commutator norm ||[M_fruit, M_sweet]|| = {:.4}",
        commutator_frobenius_norm(fruit.projector(0)?, sweet.projector(0)?)?
    );
    Ok(())
}

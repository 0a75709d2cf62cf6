//! Chern character of the normal bundle by both routes, then its Chern classes.

use fourman::ringcalc::{
    c_normal_closed_form, ch_normal_direct, ch_normal_pipeline, chern_from_character,
    ChNormalInput, CohomologyModel, CupTable,
};
use fourman::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = vec![vec![0, 1], vec![1, 0]];
    let model = CohomologyModel::new(0, h.clone(), &CupTable::new(), 3)?
        .with_characteristic_numbers(24, -16);
    let input = ChNormalInput::new(model, vec![1, -3], vec![0, 0], 0)?;
    let (np, npp) = input.indices()?;
    let direct = ch_normal_direct(&input)?;
    let pipeline = ch_normal_pipeline(&input)?;
    println!("n′ = {np}, n″ = {npp}");
    println!("direct   {direct}");
    println!("pipeline {pipeline}");
    println!("agree: {}", direct == pipeline);
    let rank = Rational::from_integer((np + npp).into());
    println!("c   = {}", chern_from_character(&direct, &rank, 3)?);
    println!("(1+2μ)^n′(1+μ)^n″ = {}", c_normal_closed_form(&input)?);

    // b₁ = 2 with γ₁γ₂ = e: the Jacobian terms appear
    let mut cups = CupTable::new();
    cups.insert((0, 1), vec![1, 0]);
    let model = CohomologyModel::new(2, h, &cups, 2)?;
    let input = ChNormalInput::new(model, vec![1, 1], vec![0, 2], 0)?;
    let direct = ch_normal_direct(&input)?;
    println!("b1 = 2: {direct}");
    println!("agree: {}", direct == ch_normal_pipeline(&input)?);
    Ok(())
}

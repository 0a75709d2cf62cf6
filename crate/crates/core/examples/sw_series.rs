//! Seiberg-Witten series and the Witten side of the relation.

use fourman::lattice::IntegerLattice;
use fourman::series::{sw_series, witten_rhs, SeriesContext};
use fourman::topology::SWDatum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = IntegerLattice::diagonal(&[1, -1])?;
    let data = vec![SWDatum::new(vec![1, 1], 1), SWDatum::new(vec![-1, -1], 1)];
    let ctx = SeriesContext::new(q, vec![0, 0], data, 4, 3)?;
    let sw = sw_series(&ctx)?;
    println!("SW  = {sw}");
    println!("order {:?}", sw.vanishing_order());
    println!("RHS = {}", witten_rhs(&ctx)?);
    Ok(())
}

//! Blow-up behaviour of the Donaldson and Seiberg-Witten series.

use fourman::lattice::{build_standard_lattice, StandardFormDescriptor};
use fourman::series::{blowup_congruence_suite, blowup_donaldson, witten_rhs, SeriesContext};
use fourman::topology::SWDatum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = build_standard_lattice(&StandardFormDescriptor::Even { e8_count: 0, h_count: 1 });
    let ctx = SeriesContext::new(h, vec![0, 0], vec![SWDatum::new(vec![0, 0], 1)], 3, 2)?;
    let d = witten_rhs(&ctx)?;
    println!("D   = {d}");
    let blown = blowup_donaldson(&d.extend_vars("e"), -1);
    println!("D~  = {blown}");
    println!("orders {:?} -> {:?}", d.vanishing_order(), blown.vanishing_order());

    let report = blowup_congruence_suite(&ctx, &d)?;
    println!("suite passed: {}", report.passed);

    let wrong = SeriesContext {
        sw_data: vec![SWDatum::new(vec![0, 0], 3)],
        ..ctx
    };
    let report = blowup_congruence_suite(&wrong, &d)?;
    println!(
        "perturbed: passed {}, first failure at {:?}",
        report.passed, report.precondition.first_failure
    );
    Ok(())
}

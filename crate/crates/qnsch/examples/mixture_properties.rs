//! Mixture density and viscosity, the averaged nonlinearities and the
//! nondimensional groups derived from a fluid pair.

use qnsch::physics::{double_well, g_avg, r_avg, FluidPair, NondimGroups};

fn main() -> qnsch::Result<()> {
    let fl = FluidPair::new(10.0, 1.0, 10.0, 1.0)?;
    println!("alpha = {:.6}", fl.alpha());
    for c in [-0.05, 0.0, 0.25, 0.5, 0.75, 1.0, 1.05] {
        let (f, df) = double_well(c);
        println!(
            "c={c:>5}: rho={:.4} mu={:.4} F={f:.5} F'={df:.5}",
            fl.density(c),
            fl.viscosity(c)
        );
    }
    let (cn, co) = (0.8, 0.3);
    println!("g_avg({cn},{co}) = {:.6}", g_avg(cn, co));
    println!("r_avg({cn},{co}) = {:.6}", r_avg(cn, co, &fl));
    let groups = NondimGroups::asymptotic(100.0, 1.0, 1.0, 0.01, &fl, None)?;
    println!("{groups:#?}");
    Ok(())
}

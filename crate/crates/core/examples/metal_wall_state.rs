//! Electron in vacuum in front of a metal: numeric states against the
//! hydrogen-like closed form.

use imagewell::electrostatics::DielectricConstant::{Finite, Metal};
use imagewell::scenarios::{solve_left_halfspace, SolverSettings};
use imagewell::schrodinger::{bohr_radius_numeric, hydrogenic_bohr_radius, hydrogenic_energy, HydrogenicParams};

fn main() -> imagewell::Result<()> {
    let sol = solve_left_halfspace(1.0, Metal, Metal, 0.0, -1.0, 1.0, 3, SolverSettings::default())?;
    for (k, state) in sol.states.iter().enumerate() {
        let p = HydrogenicParams::vacuum_facing(Metal, k as u32 + 1)?;
        println!(
            "n = {}: E = {:.6} eV (closed form {:.6}), peak at {:.4} nm (n²a = {:.4} nm)",
            k + 1,
            state.energy_ev(),
            hydrogenic_energy(&p),
            bohr_radius_numeric(state),
            hydrogenic_bohr_radius(&p)?,
        );
    }
    // A dielectric wall binds more weakly.
    let water_like = HydrogenicParams::vacuum_facing(Finite(80.0), 1)?;
    println!("eps = 80 wall: E1 = {:.6} eV", hydrogenic_energy(&water_like));
    Ok(())
}

//! Electron above helium and argon films on a metal, with the effective
//! permittivity a single wall would need to give the same state size.

use imagewell::scenarios::{
    default_epsilon_samples, effective_epsilon, effective_epsilon_curve, material, noble_film_sweep, SolverSettings,
};

fn main() -> imagewell::Result<()> {
    let table = effective_epsilon_curve(&default_epsilon_samples())?;
    for name in ["LHe", "sAr"] {
        let film = material(name)?;
        let layers = [0, 1, 2, 5, 10, 30, 100];
        println!("{name} (bulk ε = {})", film.eps);
        for row in noble_film_sweep(&film, &layers, 1, SolverSettings::default())? {
            let row = row?;
            let eps = effective_epsilon(row.bohr0(), &table)?;
            println!(
                "  {:>4} layers: E0 = {:>10.6} eV, peak {:>8.3} nm, ε_eff = {eps}",
                row.layers.unwrap_or(0),
                row.e0(),
                row.bohr0()
            );
        }
    }
    Ok(())
}

//! Carrier in a semiconductor facing a metal across a vacuum gap.

use imagewell::scenarios::{material, schottky_gap_sweep, Carrier, SolverSettings};

fn main() -> imagewell::Result<()> {
    let gaas = material("GaAs")?;
    let gaps = [0.0, 1.0, 3.0, 10.0, 30.0, 100.0];
    let rows = schottky_gap_sweep(&gaas, Carrier::Electron, &gaps, 1, SolverSettings::default())?;
    let eps = gaas.finite_eps()?;
    let m = gaas.carrier_mass(Carrier::Electron)?;
    for row in rows {
        let row = row?;
        println!(
            "gap {:>6.1} nm: E0 = {:.4e} eV, peak {:>8.2} nm, E0·ε²/m = {:.5} eV",
            row.gap_nm,
            row.e0(),
            row.bohr0(),
            row.e0() * eps * eps / m
        );
    }
    Ok(())
}

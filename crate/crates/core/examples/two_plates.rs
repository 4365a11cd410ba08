//! Electron between two metal plates: the single-wall states pair up into
//! even and odd combinations whose splitting closes with the gap.

use imagewell::scenarios::{averaged_plate_plate, two_plate_spectrum};
use imagewell::schrodinger::DEFAULT_POINTS;

fn main() -> imagewell::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10} {:>12} {:>10} {:>10}", "D/nm", "U_max", "E_even", "E_odd", "split", "Upp_even", "Upp_odd");
    for gap in [0.75, 1.0, 1.6, 2.5, 4.0, 6.0] {
        let spec = two_plate_spectrum(gap, 2, -1.0, 1.0, DEFAULT_POINTS)?;
        let (a, b) = (&spec.states[0], &spec.states[1]);
        let upp_a = averaged_plate_plate(gap, a, -1.0, 1e-12)?;
        let upp_b = averaged_plate_plate(gap, b, -1.0, 1e-12)?;
        println!(
            "{gap:>6.2} {:>10.4} {:>10.4} {:>10.4} {:>12.3e} {:>10.4} {:>10.4}  ({:?}/{:?})",
            spec.u_max_ev,
            a.energy_ev(),
            b.energy_ev(),
            b.energy_ev() - a.energy_ev(),
            upp_a,
            upp_b,
            a.kind,
            b.kind
        );
    }
    Ok(())
}

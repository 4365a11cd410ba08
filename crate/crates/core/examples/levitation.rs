//! Forces on two plates holding trapped electrons, and the mass the net
//! repulsion could support. A neutron in a box is shown for scale.

use imagewell::scenarios::{levitation_curve, PlateSystem};
use imagewell::schrodinger::particle_in_box_levitation;
use imagewell::units::NEUTRON_MASS_KG;

fn main() -> imagewell::Result<()> {
    let system = PlateSystem::new(100_000, 1e-12, 1e-19)?;
    let gaps = [0.4, 0.45, 0.5, 0.6, 0.8];
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}", "D/nm", "F_bind/N", "F_pp/N", "F_cas/N", "F_vdw/N", "F_tot/N", "mass/kg");
    for point in levitation_curve(&system, &gaps)? {
        let p = point?;
        let b = p.breakdown;
        println!(
            "{:>6.2} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}  repulsive={} stable={:?}",
            b.gap_nm, b.f_binding, b.f_plate_plate, b.f_casimir, b.f_vdw, b.f_total, p.mass_kg, p.repulsive, p.stable
        );
    }
    for gap in [1.0, 2.0, 5.0] {
        let m = particle_in_box_levitation(NEUTRON_MASS_KG, 1, gap)?;
        println!("neutron in a {gap} nm box holds up {m:.4e} kg");
    }
    Ok(())
}

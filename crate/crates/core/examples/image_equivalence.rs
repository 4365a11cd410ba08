//! Self-potential of a charge in a dielectric slab, evaluated three ways.

use imagewell::electrostatics::{
    potential_kernel_quadrature, potential_slab_images, potential_slab_series, DielectricConstant, DielectricStack,
    DEFAULT_TOL,
};

fn main() -> imagewell::Result<()> {
    let stack = DielectricStack::new(
        DielectricConstant::Finite(2.0),
        DielectricConstant::Finite(1.0),
        DielectricConstant::Finite(5.0),
        0.0,
        1.0,
    )?;
    println!("{:>6} {:>16} {:>16} {:>16}", "z0/nm", "series/V", "images/V", "quadrature/V");
    for z0 in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let s = potential_slab_series(&stack, z0, -1.0, DEFAULT_TOL)?;
        let i = potential_slab_images(&stack, z0, -1.0, DEFAULT_TOL)?;
        let k = potential_kernel_quadrature(&stack, z0, -1.0)?;
        println!("{z0:>6.2} {:>16.12} {:>16.12} {:>16.12}", s.v, i.v, k.v);
    }
    Ok(())
}

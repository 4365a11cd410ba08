use rayon::prelude::*;

use crate::electrostatics::{
    potential_kernel_quadrature, potential_slab_images, potential_slab_series, DielectricConstant, DielectricStack,
};
use crate::scenarios::{
    averaged_plate_plate, default_epsilon_samples, effective_epsilon, effective_epsilon_curve, levitation_curve,
    noble_film_sweep, schottky_gap_sweep, solve_left_halfspace, two_plate_spectrum, Carrier, Material, PlateSystem,
    SolverSettings, SweepRow,
};
use crate::schrodinger::{bohr_radius_numeric, particle_in_box_levitation, Eigenstate, Parity, StateKind};
use crate::Result;

use super::args::{Command, Domain, LevitationModel, Method, RunConfig};
use super::output::{Cell, Table};
use super::sweep::{LayerRange, Sweep};

pub(crate) fn execute(cfg: &RunConfig) -> Result<Table> {
    let settings = SolverSettings { points: cfg.points, series_tol: cfg.tol };
    match &cfg.command {
        Command::Potential { stack, z0, q, method } => potential(stack, z0, *q, *method, cfg.tol),
        Command::Eigen { domain, width, eps_host, wall, charge, mass, states } => {
            eigen(*domain, *width, *eps_host, *wall, *charge, *mass, *states, settings)
        }
        Command::Schottky { material, carrier, gaps, states } => schottky(material, *carrier, gaps, *states, settings),
        Command::Film { material, layers, states } => film(material, layers, *states, settings),
        Command::Plates { gaps, states, charge, mass } => plates(gaps, *states, *charge, *mass, settings),
        Command::Levitate { model: LevitationModel::Plates, gaps, electrons, area, hamaker, state, .. } => {
            let system = PlateSystem {
                n_electrons: *electrons,
                area_m2: *area,
                hamaker_j: *hamaker,
                state_index: *state,
                charge: -1.0,
                mass_ratio: 1.0,
                points: cfg.points,
                tol: cfg.tol,
            };
            levitate_plates(&system, gaps)
        }
        Command::Levitate { model: LevitationModel::Box, gaps, particle_kg, n, .. } => {
            levitate_box(gaps, *particle_kg, *n)
        }
    }
}

fn label_kind(k: StateKind) -> Cell {
    Cell::Text(format!("{k:?}"))
}

fn label_parity(p: Parity) -> Cell {
    Cell::Text(format!("{p:?}"))
}

fn label_bool(b: bool) -> Cell {
    Cell::Text(if b { "yes" } else { "no" }.into())
}

fn potential(stack: &DielectricStack, z0: &Sweep, q: f64, method: Method, tol: f64) -> Result<Table> {
    let mut t = Table::new(["z0(nm)", "V(V)", "terms(count)", "error_bound(V)"]);
    let rows: Vec<_> = z0
        .values()
        .into_par_iter()
        .map(|z| {
            let v = match method {
                Method::Series => potential_slab_series(stack, z, q, tol),
                Method::Images => potential_slab_images(stack, z, q, tol),
                Method::Quadrature => potential_kernel_quadrature(stack, z, q),
            };
            (z, v)
        })
        .collect();
    for (z, v) in rows {
        match v {
            Ok(p) => t.push(vec![z.into(), p.v.into(), (p.terms_used as f64).into(), p.truncation_error_bound.into()]),
            Err(e) => t.push_failure(vec![z.into()], &e),
        }
    }
    Ok(t)
}

const STATE_COLUMNS: [&str; 6] = ["state(index)", "E(eV)", "nodes(count)", "parity(label)", "kind(label)", "peak(nm)"];

fn state_row(k: usize, s: &Eigenstate) -> Vec<Cell> {
    vec![
        (k as f64).into(),
        s.energy_ev().into(),
        (s.nodes as f64).into(),
        label_parity(s.parity),
        label_kind(s.kind),
        bohr_radius_numeric(s).into(),
    ]
}

#[allow(clippy::too_many_arguments)]
fn eigen(
    domain: Domain,
    width: f64,
    eps_host: f64,
    wall: DielectricConstant,
    charge: f64,
    mass: f64,
    n: usize,
    settings: SolverSettings,
) -> Result<Table> {
    let states = match domain {
        Domain::Interval => two_plate_spectrum(width, n, charge, mass, settings.points)?.states,
        Domain::Wall => solve_left_halfspace(eps_host, wall, wall, 0.0, charge, mass, n, settings)?.states,
    };
    let mut t = Table::new(STATE_COLUMNS);
    for (k, s) in states.iter().enumerate() {
        t.push(state_row(k, s));
    }
    Ok(t)
}

fn sweep_columns(t: &mut Table, states: usize) {
    for k in 0..states {
        t.columns.push(format!("E{k}(eV)"));
        t.columns.push(format!("bohr{k}(nm)"));
        t.columns.push(format!("kind{k}(label)"));
    }
}

fn sweep_cells(row: &SweepRow) -> Vec<Cell> {
    let mut cells = Vec::new();
    for k in 0..row.energies_ev.len() {
        cells.push(row.energies_ev[k].into());
        cells.push(row.bohr_nm[k].into());
        cells.push(label_kind(row.kinds[k]));
    }
    cells
}

fn schottky(material: &Material, carrier: Carrier, gaps: &Sweep, states: usize, settings: SolverSettings) -> Result<Table> {
    let gaps = gaps.values();
    let rows = schottky_gap_sweep(material, carrier, &gaps, states, settings)?;
    let mut t = Table::new(["gap(nm)"]);
    sweep_columns(&mut t, states);
    for (gap, row) in gaps.iter().zip(rows) {
        match row {
            Ok(r) => {
                let mut cells = vec![Cell::Num(*gap)];
                cells.extend(sweep_cells(&r));
                t.push(cells);
            }
            Err(e) => t.push_failure(vec![Cell::Num(*gap)], &e),
        }
    }
    Ok(t)
}

fn film(material: &Material, layers: &LayerRange, states: usize, settings: SolverSettings) -> Result<Table> {
    let layers = layers.values();
    let rows = noble_film_sweep(material, &layers, states, settings)?;
    let table = effective_epsilon_curve(&default_epsilon_samples())?;
    let thickness = material.layer_thickness.unwrap_or(0.0);
    let mut t = Table::new(["layers(count)", "gap(nm)"]);
    sweep_columns(&mut t, states);
    t.columns.push("eps_eff(rel)".into());
    for (l, row) in layers.iter().zip(rows) {
        let key = vec![Cell::Num(*l as f64), Cell::Num(*l as f64 * thickness)];
        match row.and_then(|r| effective_epsilon(r.bohr0(), &table).map(|eps| (r, eps))) {
            Ok((r, eps)) => {
                let mut cells = key;
                cells.extend(sweep_cells(&r));
                cells.push(eps.value().into());
                t.push(cells);
            }
            Err(e) => t.push_failure(key, &e),
        }
    }
    Ok(t)
}

fn plates(gaps: &Sweep, states: usize, charge: f64, mass: f64, settings: SolverSettings) -> Result<Table> {
    let mut t = Table::new(["gap(nm)", "U_max(eV)"]);
    for k in 0..states {
        for c in ["E{k}(eV)", "parity{k}(label)", "kind{k}(label)", "Upp{k}(eV)"] {
            t.columns.push(c.replace("{k}", &k.to_string()));
        }
    }
    let rows: Vec<(f64, Result<Vec<Cell>>)> = gaps
        .values()
        .into_par_iter()
        .map(|gap| {
            let row = two_plate_spectrum(gap, states, charge, mass, settings.points).and_then(|spec| {
                let mut cells = vec![Cell::Num(gap), Cell::Num(spec.u_max_ev)];
                for s in &spec.states {
                    let upp = if charge == 0.0 { 0.0 } else { averaged_plate_plate(gap, s, charge, settings.series_tol)? };
                    cells.extend([s.energy_ev().into(), label_parity(s.parity), label_kind(s.kind), upp.into()]);
                }
                Ok(cells)
            });
            (gap, row)
        })
        .collect();
    for (gap, row) in rows {
        match row {
            Ok(cells) => t.push(cells),
            Err(e) => t.push_failure(vec![Cell::Num(gap)], &e),
        }
    }
    Ok(t)
}

fn levitate_plates(system: &PlateSystem, gaps: &Sweep) -> Result<Table> {
    let gaps = gaps.values();
    let points = levitation_curve(system, &gaps)?;
    let mut t = Table::new([
        "gap(nm)",
        "E_binding(eV)",
        "U_pp(eV)",
        "F_binding(N)",
        "F_pp(N)",
        "F_casimir(N)",
        "F_vdw(N)",
        "F_total(N)",
        "mass(kg)",
        "repulsive(label)",
        "stable(label)",
    ]);
    for (gap, p) in gaps.iter().zip(points) {
        match p {
            Ok(p) => {
                let b = p.breakdown;
                t.push(vec![
                    b.gap_nm.into(),
                    b.e_binding.into(),
                    b.u_plate_plate.into(),
                    b.f_binding.into(),
                    b.f_plate_plate.into(),
                    b.f_casimir.into(),
                    b.f_vdw.into(),
                    b.f_total.into(),
                    p.mass_kg.into(),
                    label_bool(p.repulsive),
                    p.stable.map_or(Cell::Text("unknown".into()), label_bool),
                ]);
            }
            Err(e) => t.push_failure(vec![Cell::Num(*gap)], &e),
        }
    }
    Ok(t)
}

fn levitate_box(gaps: &Sweep, particle_kg: f64, n: u32) -> Result<Table> {
    let mut t = Table::new(["gap(nm)", "mass(kg)"]);
    for gap in gaps.values() {
        match particle_in_box_levitation(particle_kg, n, gap) {
            Ok(m) => t.push(vec![gap.into(), m.into()]),
            Err(e) => t.push_failure(vec![gap.into()], &e),
        }
    }
    Ok(t)
}

//! Orbits of M, F and C from the same starting point.
//!
//! ```text
//! cargo run --example map_dynamics
//! ```

use pwl_market::map::{c_closed_form, c_limit, iterate, jacobian, Branch, MapKind};
use pwl_market::{ModelParams, State};

fn main() -> pwl_market::Result<()> {
    let p = ModelParams::new(0.8, 2.5, 0.05)?;

    for s0 in [State::new(-0.12, -0.16), State::new(0.13, 0.0)] {
        let t = iterate(MapKind::M, s0, 300, &p);
        let visits = Branch::ALL.map(|b| t.branches.iter().filter(|x| **x == Some(b)).count());
        let last = t.last();
        println!("M from ({}, {}): after 300 steps ({:.6}, {:.6}), visits L/M/R = {visits:?}", s0.x, s0.y, last.x, last.y);
    }

    // F spirals into the origin for these parameters
    let f = iterate(MapKind::F, State::new(0.15, 0.0), 60, &p.with_h(0.05)?);
    println!("F after 60 steps: {:?}", f.last());

    // C settles on the diagonal at a point fixed by the initial condition
    let s0 = State::new(-0.13, -0.17);
    let c = iterate(MapKind::C, s0, 200, &p);
    println!("C limit {} (simulated {:?}, closed form at t=200 {:?})", c_limit(s0, p.b)?, c.last(), c_closed_form(s0, p.b, 200)?);

    for b in Branch::ALL {
        let j = jacobian(b, &p);
        println!("J_{b}: trace {:+.3}, det {:.3}, eigenvalues {:?}", j.trace(), j.det(), j.eigen());
    }
    Ok(())
}

//! The parallelogram of initial conditions that reach the fixed segment
//! without leaving the band, and its two preimage triangles.

use pwl_market::analysis::basin::{a_double_prime, left_triangle_closed_form, preimage_triangles};
use pwl_market::analysis::{immediate_basin, in_immediate_basin};
use pwl_market::map::c_limit;
use pwl_market::{ModelParams, State};

fn main() -> pwl_market::Result<()> {
    let p = ModelParams::new(0.4, 2.85, 0.05)?;
    let basin = immediate_basin(&p)?;
    println!("vertices {:?}", basin.vertices);
    println!("area {:.6} (4h²(1-b)/b = {:.6})", basin.area(), 4.0 * p.h * p.h * (1.0 - p.b) / p.b);

    let (left, right) = preimage_triangles(&p)?;
    println!("left triangle  {:?}", left.vertices);
    println!("closed form    {:?}", left_triangle_closed_form(&p)?);
    println!("right triangle {:?}", right.vertices);
    println!("A'' = {:?}", a_double_prime(&p));

    for s in [State::new(0.0, 0.0), State::new(0.03, -0.01), State::new(-0.05, -0.05), State::new(0.0, 0.1), State::new(0.06, 0.0)] {
        let limit = in_immediate_basin(s, &p).then(|| c_limit(s, p.b)).transpose()?;
        println!("({:+.2}, {:+.2}) in basin: {:5}  limit {limit:?}", s.x, s.y, limit.is_some());
    }
    Ok(())
}

//! Set covariance g_Ω(y) = |Ω ∩ (Ω + y)| and the perimeter it encodes.

use levy_heat::geometry::Shape;

fn main() -> levy_heat::Result<()> {
    let shapes = [
        ("interval [0, 2]", Shape::interval(0.0, 2.0)?),
        ("unit disk", Shape::ball(&[0.0, 0.0], 1.0)?),
        ("triangle", Shape::polygon(&[[0.0, 0.0], [2.0, 0.0], [0.5, 1.5]])?),
        ("box 1×2×0.5", Shape::rect(&[1.0, 2.0, 0.5])?),
    ];
    for (name, shape) in &shapes {
        let d = shape.dim();
        let mut u = vec![0.0; d];
        u[0] = 1.0;
        let y: Vec<f64> = u.iter().map(|x| 0.25 * x).collect();
        println!("{name}");
        println!("  |Ω| = {:.6}, Per(Ω) = {:.6}", shape.volume(), shape.perimeter());
        println!("  g(0.25·e₁) = {:.6}", shape.covariance(&y));
        println!("  V_e₁(Ω) = {:.6}", shape.directional_variation(&u)?);
        if d <= 2 {
            println!("  Per from the spherical mean of V_u: {:.6}", shape.perimeter_via_covariance()?);
        }
    }
    Ok(())
}

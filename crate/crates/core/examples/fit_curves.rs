//! Fit `y = a·ln(x) + b` to the simulated power sweep and compare with the
//! reference curve family.

use fanet_sim::curve::{fit_log_curve, CurveFamily};
use fanet_sim::sweep::{run_packet_power_sweep, SweepSpec, SweptAxis};

fn main() -> fanet_sim::Result<()> {
    let result = run_packet_power_sweep(&SweepSpec::with_defaults(SweptAxis::PacketSizeByPower))?;
    let reference = CurveFamily::default();
    println!("power   fitted a   fitted b   reference a   reference b");
    for &power in &result.spec.axis_values {
        let points: Vec<(f64, f64)> = result
            .spec
            .packet_sizes
            .iter()
            .zip(result.column(power))
            .map(|(&n, y)| (n as f64, y))
            .collect();
        let fit = fit_log_curve(&points, power)?;
        let r = reference.at_power(power).expect("reference power");
        println!(
            "{power:5} {:10.3} {:10.3} {:13.1} {:13.1}",
            fit.a, fit.b, r.a, r.b
        );
    }
    Ok(())
}

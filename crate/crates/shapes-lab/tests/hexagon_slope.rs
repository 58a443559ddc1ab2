use shapes_lab::hexagon::enumerate_weighted;

#[test]
fn slope_over_500_to_1000() {
    let c = enumerate_weighted(1000);
    let s = c.mean_slope(500, 1000);
    println!("mean slope {s}");
    assert!((s - 0.45798279709).abs() < 0.1 * 0.45798279709, "{s}");
}

use cweno_web::{compute_field_2d, compute_shock, compute_weights};

#[test]
fn shock_profile_is_consistent() {
    let r = compute_shock("sod", 200, 1e-2, 2, false).unwrap();
    assert_eq!(r.x().len(), 200);
    assert_eq!(r.density().len(), 200);
    assert_eq!(r.exact_density().len(), 200);
    assert_eq!(r.w_center().len(), 200);
    assert!(r.l1() > 0.0 && r.l1() < 1e-2);
    assert!(r.x().windows(2).all(|w| w[1] > w[0]));
    assert!(r.w_center().iter().all(|w| (0.0..=1.0).contains(w)));
}

#[test]
fn shock_rejects_smooth_problems_and_small_meshes() {
    assert!(compute_shock("burgers", 200, 1e-2, 2, false).is_err());
    assert!(compute_shock("sod", 50, 1e-2, 2, false).is_err());
    assert!(compute_shock("sod", 200, -1.0, 2, false).is_err());
}

#[test]
fn weights_switch_off_the_discontinuous_side() {
    let out = compute_weights(0.0, 0.0, 1.0, 1e-2, 2, 11).unwrap();
    assert_eq!(out.len(), 3 + 11);
    assert!(out[0] >= 0.999 && out[1] <= 1e-4 && out[2] <= 2e-4);
    assert!((out[..3].iter().sum::<f64>() - 1.0).abs() < 1e-15);
    // nearly the flat left member over the middle cell
    assert!(out[3..].iter().all(|v| v.abs() < 1e-3));
}

#[test]
fn weights_reconstruction_keeps_the_cell_mean() {
    let samples = 1001;
    let out = compute_weights(0.3, -0.2, 0.7, 1e-2, 2, samples).unwrap();
    // trapezoid rule over [-1/2, 1/2] on a quadratic, error O(1e-7)
    let p = &out[3..];
    let mean = (p.iter().sum::<f64>() - 0.5 * (p[0] + p[samples - 1])) / (samples - 1) as f64;
    assert!((mean + 0.2).abs() < 1e-6, "{mean}");
}

#[test]
fn weights_reject_bad_arguments() {
    assert!(compute_weights(0.0, 0.0, 1.0, 0.0, 2, 11).is_err());
    assert!(compute_weights(0.0, 0.0, 1.0, 1e-2, 2, 1).is_err());
}

#[test]
fn field_2d_reports_error_against_exact_solution() {
    let f = compute_field_2d("advection-2d", 16, 0.25, 1e-2, 2, false).unwrap();
    assert_eq!(f.n(), 16);
    assert_eq!(f.values().len(), 256);
    assert_eq!(f.exact().len(), 256);
    assert!(f.l1() > 0.0 && f.l1() < 5e-2, "{}", f.l1());
    assert!(f.steps() >= 2 && f.steps().is_multiple_of(2));
}

#[test]
fn field_2d_rejects_one_dimensional_problems() {
    assert!(compute_field_2d("sod", 16, 0.1, 1e-2, 2, false).is_err());
}

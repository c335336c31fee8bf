use coherent_realize::algebra::catalog;
use coherent_realize::{homomorphism_residual, realize_all, OrbitModel, SolverConfig};
use num_complex::Complex32;

#[test]
fn single_precision_realization() {
    let m: OrbitModel<f32> = catalog::su2(1.0).unwrap();
    let table = realize_all(&m, &SolverConfig::for_precision::<f32>());
    assert!(table.is_complete());
    let op = table.op(2).unwrap();
    assert!((op.p().coeff(&[1]) - Complex32::new(2.0, 0.0)).norm() < 1e-5);
    assert!((op.q()[0].coeff(&[2]) + Complex32::new(1.0, 0.0)).norm() < 1e-5);
    assert_eq!((op.p().degree(), op.q()[0].degree()), (Some(1), Some(2)));
    assert!(homomorphism_residual(&m, &table).unwrap() < 1e-4);
}

#[test]
fn single_precision_heisenberg() {
    let m: OrbitModel<f32> = catalog::heisenberg(8, 3).unwrap();
    let table = realize_all(&m, &SolverConfig::for_precision::<f32>());
    assert!(table.is_complete());
    assert!(table.max_residual() < 1e-4);
}

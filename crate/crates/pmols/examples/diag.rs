use pmols::experiments::{derive_seed, gen_gaussian_matrix};
use pmols::matrix::{self, DenseMatrix, DEFAULT_RANK_TOL};
use pmols::precondition;

fn main() {
    let psi = gen_gaussian_matrix(128, 256, derive_seed(7, "acc4|128x256|18"));
    let pre = precondition::pip_preconditioner(&psi, DEFAULT_RANK_TOL).unwrap();
    let phi = pre.matrix.matmul(&psi);
    // phi should be a projector: check directly
    let sym = phi.max_abs_diff(&phi.transpose());
    let idem = phi.matmul(&phi).max_abs_diff(&phi);
    println!("phi symmetry dev: {sym:e}, phi idempotence dev (phi^2 vs phi): {idem:e}");

    // Second SVD: decompose phi
    let d2 = matrix::svd(&phi, DEFAULT_RANK_TOL).unwrap();
    println!("rank detected: {}", d2.numerical_rank);
    println!("sigma[0]   = {:.16}", d2.singular_values[0]);
    println!("sigma[126] = {:.16}", d2.singular_values[126]);
    println!("sigma[127] = {:.16}", d2.singular_values[127]);
    println!("sigma[128] = {:.16e}", d2.singular_values[128]);
    println!("sigma[129] = {:.16e}", d2.singular_values[129]);
    // orthonormality of U and V
    let utu = d2.u.transpose().matmul(&d2.u).max_abs_diff(&DenseMatrix::identity(256));
    let vtv = d2.v.transpose().matmul(&d2.v).max_abs_diff(&DenseMatrix::identity(256));
    println!("U orth dev {utu:e}, V orth dev {vtv:e}");
    // reconstruction error
    let p = d2.singular_values.len();
    let mut s = DenseMatrix::zeros(p, p);
    for i in 0..p { s.set(i, i, d2.singular_values[i]); }
    let rec = d2.u.matmul(&s).matmul(&d2.v.transpose());
    println!("reconstruction dev {:e}", rec.max_abs_diff(&phi));
    // pairing: for symmetric PSD projector, u_i should equal v_i (up to sign) on the top block
    let mut worst_pair = 0.0f64;
    for i in 0..128 {
        let u: Vec<f64> = (0..256).map(|r| d2.u.get(r, i)).collect();
        let v: Vec<f64> = (0..256).map(|r| d2.v.get(r, i)).collect();
        let dotuv = matrix::dot(&u, &v).abs();
        worst_pair = worst_pair.max(1.0 - dotuv);
    }
    println!("worst 1-|<u_i,v_i>| over top block: {worst_pair:e}");

    let p2 = precondition::pip_preconditioner(&phi, DEFAULT_RANK_TOL).unwrap();
    let dev = p2.matrix.matmul(&phi).max_abs_diff(&phi);
    println!("idempotence deviation: {dev:e}");
}

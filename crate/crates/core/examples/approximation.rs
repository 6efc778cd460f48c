use moment_atlas::approx::{approximate, error_bound, sup_error, Builtin};

// Kernel approximation of the builtin functions on [-1, 1]^2 against the
// a-priori error bound.
fn main() {
    for f in [Builtin::Abs, Builtin::SumAbs, Builtin::Cone, Builtin::Wave] {
        for k in [4, 16, 64] {
            let p = approximate(|x| f.eval(x), 2, k);
            let err = sup_error(|x| f.eval(x), &p, 41);
            println!("{:>8} k = {k:>2}: sup error {err:.3e}, bound {:.3e}", f.name(), error_bound(2, k, f.lipschitz()));
        }
    }
}

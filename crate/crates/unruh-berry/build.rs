fn main() {
    // LAPACK/BLAS symbols (zheevr, dgeev, dgesv, ...) come from the system
    // OpenBLAS. ndarray-linalg is used without a bundled backend feature; the
    // vendored backends do not build in offline environments.
    println!("cargo:rustc-link-lib=dylib=openblas");
}

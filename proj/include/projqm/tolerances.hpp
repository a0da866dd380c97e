#pragma once

namespace projqm {

// Validation tolerances used by type constructors and checks.
// Defaults are the library-wide contract; callers may override per call.
struct Tolerances {
    double herm = 1e-10;     // entrywise |A - A*|/2
    double trace = 1e-10;    // |tr(rho) - 1|
    double norm = 1e-10;     // | ||psi|| - 1 |
    double psd = 1e-10;      // eigenvalue floor for density matrices
    double unitary = 1e-10;  // entrywise |U*U - I|
    double frame = 1e-8;     // spread of frame sums across bases
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace projqm

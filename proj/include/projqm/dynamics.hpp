#pragma once

#include <cstddef>
#include <vector>

#include "projqm/geometry.hpp"
#include "projqm/observables.hpp"
#include "projqm/states.hpp"

namespace projqm {

// Integration controls for the Hamiltonian flow. The step count is fixed up
// front from t_final and dt (a short remainder step absorbs the leftover), so
// trajectories are reproducible for a given configuration.
struct FlowConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    bool reproject = true;    // pull each step back onto the rank-one stratum
    std::size_t stride = 10;  // keep every stride-th step (plus the endpoint)
};

struct FlowSample {
    double t;
    PurePoint point;
};

// Exact propagation: psi(t) = exp(-i t H) psi(0) through the spectral
// decomposition of the generator.
PurePoint evolve_exact(const PurePoint& initial, const HermitianOperator& h, double t);

// Fourth-order Runge-Kutta on the projector equation dp/dt = -i[H, p],
// with per-step hermitization and optional reprojection onto pure states.
// Returns the stored trajectory including the initial and final points.
std::vector<FlowSample> evolve_flow(const PurePoint& initial, const HermitianOperator& h,
                                    const FlowConfig& cfg);

// Heisenberg picture at time t: A(t) = U(t)^* A U(t) with U(t) = exp(-i t H).
ComplexMatrix heisenberg(const HermitianOperator& a, const HermitianOperator& h, double t);

// Pushes a point and a set of tangent generators through the flow at time t
// and reports the worst deviation between metric/symplectic pairings before
// and after, certifying that the flow acts by isometries.
struct KillingCheck {
    double max_metric_deviation;
    double max_symplectic_deviation;
};
KillingCheck killing_check(const PurePoint& p, const std::vector<HermitianOperator>& generators,
                           const HermitianOperator& h, double t, double kappa);

}  // namespace projqm

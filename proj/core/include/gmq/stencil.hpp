#pragma once

#include <array>
#include <vector>

#include <gmq/dd.hpp>
#include <gmq/ext/json.hpp>
#include <gmq/params.hpp>

namespace gmq {

// Finite symmetric lattice stencil.  Weights are stored per orbit of the
// signed-permutation group and expanded on demand; reps are canonical
// (componentwise nonnegative, sorted ascending).  n = 1 uses the first
// component only.
//
// weights is the plain double minimum-norm solution (the official result,
// no iterative refinement).  weights_dd is an internal companion refined
// against the constraint system to ~1e-31; every evaluation path that
// subtracts large lattice contributions uses it, because the 1e-17 moment
// residuals of rounded doubles otherwise dominate far-field sums.
struct Stencil {
    RbfParams params;
    int support_radius = 0;
    int target_order = 0;
    std::vector<std::array<int, 3>> reps;
    std::vector<double> weights;
    std::vector<dd> weights_dd;
    double solve_residual = 0.0;
};

// All lattice points of an orbit, deterministic order.
std::vector<std::array<int, 3>> orbit_points(const std::array<int, 3>& rep, int n);

// Minimum-norm solve of the moment/radiality/window system at the given
// support radius.  target_order defaults to 2d - 1.  Throws
// infeasible_construction naming the smallest sufficient radius (found by
// incremental retry) when the system is inconsistent at the requested one.
// Requires n and d odd; n in {1, 3}; n = 3 additionally caps d <= 3 and
// support_radius <= 4.
Stencil build_stencil(const RbfParams& p, int support_radius, int target_order = -1);

// 1D construction through the closed ansatz
//   p(y) = (2 sin(y/2))^(1+d) * sum_{m<d} a_m cos(m y),
// solved exactly for the d window conditions; support radius (3d-1)/2.
// Agrees pointwise with build_stencil at that radius.
Stencil build_stencil_1d_closed(const RbfParams& p);

// trigonometric symbol p(y) = sum_k mu_k cos(k.y); the sine part vanishes
// by symmetry and is asserted below 1e-13 relative
double symbol_eval(const Stencil& st, const std::array<double, 3>& y);

// p(y) * phihat(|y|); y = 0 is a pole of the second factor -> domain error
double psi_hat_eval(const Stencil& st, const std::array<double, 3>& y);

struct FlatnessReport {
    std::array<int, 3> at{};                 // lattice point j, location 2*pi*j
    double pooled_order = 0.0;
    std::vector<double> per_direction;
    std::vector<double> radii;
    std::vector<std::vector<double>> values; // |target| per direction per radius
};

// Fitted flatness order of psihat at 2*pi*j (of psihat - 1 when j = 0) over
// a geometric radius decade contained in (0, pi).
FlatnessReport flatness_order(const Stencil& st, const std::array<int, 3>& at,
                              double r_lo, double r_hi);

// serialization: {params: {c,d,n}, orbits: [{representative, weight}]};
// doubles survive the round trip bit-exactly
nlohmann::json stencil_to_json(const Stencil& st);
Stencil stencil_from_json(const nlohmann::json& j);

} // namespace gmq

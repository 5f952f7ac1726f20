#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmq/ext/json.hpp>
#include <gmq/lattice.hpp>
#include <gmq/stencil.hpp>

namespace gmq {

// Uniform container for experiment outputs.  Everything needed to rerun the
// experiment sits in config; raw holds the unreduced samples; fitted holds
// quantities derived from raw (refittable: see self_consistent).  No
// timestamps or absolute paths, so identical configs produce identical bytes.
struct ExperimentReport {
    std::string experiment;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json raw = nlohmann::json::array();
    nlohmann::json fitted = nlohmann::json::object();
    nlohmann::json checks = nlohmann::json::object();
    nlohmann::json provenance = nlohmann::json::object();

    nlohmann::json to_json() const;
    std::string to_csv() const;  // raw rows, 17 significant digits
};

// recompute the headline fits from raw and compare against fitted
bool self_consistent(const ExperimentReport& rep, double tol = 1e-12);

std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t stencil_hash(const Stencil& st);

// deterministic probe machinery
double halton(std::uint64_t index, int base);
std::vector<std::array<double, 3>> probe_points(int n, int count);

// smooth test profiles: "sinexp", "runge", "gauss"; for n = 3 the envelope
// is radialized and the oscillation acts on the first coordinate.  "linear"
// (f = x1) lands inside every reproduced space and drives the fit degenerate
// on purpose.
std::function<double(const std::array<double, 3>&)> test_function(const std::string& tag, int n);

// max_x |Q p - p| over the probe points for p of each requested degree
// (<= 2d - 1); a degree counts as reproduced when the worst residual falls
// within max(10 * tail_estimate, 1e-9).  Empty points = 33 canonical probes.
ExperimentReport reproduction_test(const Stencil& st, const std::vector<int>& degrees,
                                   LatticeSumSettings settings,
                                   const std::vector<std::array<double, 3>>& points = {});

// sup error over the probe points for each h (dyadic ladder, >= 5 rungs),
// fitted three ways: successive local orders, pure-power least squares, and
// the logarithm-corrected model e(h) = C h^alpha (A + ln(1/h)) with A found
// by a deterministic grid scan
ExperimentReport convergence_study(const Stencil& st, const std::string& f_tag,
                                   const std::vector<double>& h_list,
                                   LatticeSumSettings settings,
                                   const std::vector<std::array<double, 3>>& points = {});

// 2x2 interpolation matrix [[c^d, phi(r)], [phi(r), c^d]]: analytic
// eigenvalues c^d -+ phi(r) against a dense symmetric eigensolver
ExperimentReport pd_demo(const RbfParams& p, double r);

// convergence_study plus the order bookkeeping: proven 2d, conjectured
// n - 1 + 2d, and what the fit can actually distinguish
ExperimentReport conjecture_probe(const Stencil& st, const std::string& f_tag,
                                  const std::vector<double>& h_list,
                                  LatticeSumSettings settings);

// |sum_j Psi(x - j) - 1| over |j - x|_inf <= R for a batch of off-lattice
// points in (0,1)^n; algebraically the quasi-interpolant of f == 1, computed
// through the weight-convolution rearrangement so large-R 3D batches stay
// affordable
std::vector<double> pou_deviation(const Stencil& st,
                                  const std::vector<std::array<double, 3>>& xs,
                                  long long R);

} // namespace gmq

#ifndef HADAMARD_DIAGNOSTICS_HPP
#define HADAMARD_DIAGNOSTICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "hadamard/mappings.hpp"
#include "hadamard/solvers.hpp"

namespace hadamard {

/// Finite-window stand-in for the asymptotic center: the minimizer of
/// y -> max_{k in window} d(y, x_k) as found by the shared search engine.
/// Always an estimate; the underlying limit object is out of reach of any
/// finite computation.
struct AsymptoticCenterEstimate {
  Point center;
  double radius{0.0};  // max distance from the center to the window
  int window_start{0};
  int window_end{0};  // exclusive
  double refinement_residual{0.0};
};

/// Asymptotic center estimate over points[start, end). Constant windows
/// return the repeated point with radius exactly zero. Throws
/// std::domain_error on an empty window.
AsymptoticCenterEstimate asymptotic_center(const Space& space,
                                           const std::vector<Point>& points, int start,
                                           int end);

struct DeltaLimitEstimate {
  Point estimate;       // center of the last window
  double stability{0.0};  // max pairwise distance between window centers
  std::vector<AsymptoticCenterEstimate> centers;
};

/// Per-window asymptotic centers of an iteration trace; agreement between
/// windows is necessary evidence (never proof) of a Delta-limit.
DeltaLimitEstimate delta_limit_estimate(const Space& space, const IterationTrace& trace,
                                        const std::vector<std::pair<int, int>>& windows);

/// Two trailing quarter windows of a length-n trace (window size at least
/// one point), the default stability probe; needs n >= 2.
std::vector<std::pair<int, int>> default_windows(int n);

struct DoubleSequenceReport {
  std::vector<double> consecutive;   // A(n, n+1) = d(x_n, x_{n+1})^2
  double hypothesis_slack{0.0};      // min of A(n+1,m) + A(n,m+1) - 2 A(n+1,m+1)
  bool hypothesis_ok{false};         // slack >= -1e-7
  bool trend_ok{false};              // last < first or last < 1e-6
};

/// Checks the double-sequence contraction pattern A(n,m) = d(x_n, x_m)^2 on
/// an orbit: the hypothesis inequality on sampled index pairs and the decay
/// of the consecutive values. Throws std::domain_error for orbits shorter
/// than 3.
DoubleSequenceReport double_sequence_residual(const Space& space,
                                              const std::vector<Point>& orbit);

/// Minimizer of the normalized weighted mean-square distance
/// y -> (1 / sum w) sum_k w_k d(y, z_k)^2, by the same search engine.
/// Coincides with the weighted arithmetic mean in the Euclidean model.
Point g_minimizer(const Space& space, const std::vector<Point>& images,
                  const std::vector<double>& weights);

struct DemiclosednessReport {
  std::string status;  // "ok" | "window residuals too large"
  bool pass{false};
  Point center;
  double residual_at_center{0.0};  // d(p, T p)
  double max_window_residual{0.0};
};

/// Finite surrogate of the demiclosedness principle: if the residuals over
/// the window are already small (< 1e-4), the window's asymptotic center
/// should be nearly fixed (d(p, Tp) < 1e-3).
DemiclosednessReport demiclosedness_probe(const Mapping& mapping, const IterationTrace& trace,
                                          std::pair<int, int> window);

}  // namespace hadamard

#endif  // HADAMARD_DIAGNOSTICS_HPP

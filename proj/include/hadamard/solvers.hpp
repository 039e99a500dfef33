#ifndef HADAMARD_SOLVERS_HPP
#define HADAMARD_SOLVERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hadamard/mappings.hpp"

namespace hadamard {

/// Relaxation schedule alpha_n for the Mann iteration, n counted from 1.
///
/// Metadata mirrors the hypotheses that matter for convergence: whether the
/// sum of the steps diverges and inf_n alpha_n (1 - alpha_n). For custom
/// schedules both are computed from the provided prefix only and
/// `metadata_from_prefix` is set; past the prefix the last entry repeats.
class StepSchedule {
public:
  enum class Kind { Constant, Harmonic, Custom };

  static StepSchedule constant(double alpha);
  static StepSchedule harmonic();
  static StepSchedule custom(std::vector<double> alphas);

  double alpha(int n) const;  // n >= 1
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool sum_diverges() const { return sum_diverges_; }
  double inf_alpha_one_minus_alpha() const { return inf_a1ma_; }
  bool metadata_from_prefix() const { return prefix_only_; }

private:
  StepSchedule(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  double alpha_{1.0};
  std::vector<double> alphas_;
  bool sum_diverges_{true};
  double inf_a1ma_{0.0};
  bool prefix_only_{false};
};

/// Record of one iteration run. `iterates` holds x_1 .. x_K; `residuals`
/// and `steps` have K-1 entries (residual d(x_n, T x_n) and step
/// d(x_{n+1}, x_n) for each completed update); `ref_dists` has K entries
/// when a reference point was supplied and is empty otherwise.
struct IterationTrace {
  std::vector<Point> iterates;
  std::vector<double> residuals;
  std::vector<double> steps;
  std::vector<double> ref_dists;
  std::string schedule;
  std::string termination;  // "converged" | "max_iter" | "unbounded"
  std::vector<double> family_residuals;  // cyclic runs: d(x, T_k x) at the final point

  const Point& last() const { return iterates.back(); }
  bool diverged() const { return termination == "unbounded"; }
};

struct SolveOptions {
  std::optional<Point> ref_point;    // records d(ref, x_n) when set
  double divergence_factor{1e8};     // hard displacement cap multiplier
};

/// Picard orbit x_{n+1} = T x_n. Stops when the step distance drops below
/// tol, max_iter updates were made, or divergence is detected.
IterationTrace picard(const Mapping& mapping, const Point& x1, int max_iter, double tol,
                      const SolveOptions& options = {});

/// Mann iteration x_{n+1} = (1 - alpha_n) x_n (+) alpha_n T x_n with the
/// given schedule. alpha == 1 reproduces the Picard orbit point for point.
IterationTrace mann(const Mapping& mapping, const Point& x1, const StepSchedule& schedule,
                    int max_iter, double tol, const SolveOptions& options = {});

/// Applies the family cyclically; one trace entry per application. Stops
/// when a full cycle moves the point less than tol in total. The final
/// per-mapping residuals are reported even when they stall at a positive
/// gap (disjoint targets are not an error).
IterationTrace cyclic_picard(const std::vector<MappingPtr>& family, const Point& x1,
                             int max_iter, double tol, const SolveOptions& options = {});

/// CSV rendering: header row, then one row per iterate with columns
/// n, residual, step, ref_dist (blank when absent) and the space-native
/// coordinates, all with 17 significant digits.
std::string trace_to_csv(const Space& space, const IterationTrace& trace);

}  // namespace hadamard

#endif  // HADAMARD_SOLVERS_HPP

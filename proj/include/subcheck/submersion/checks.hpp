#pragma once

// Identity and property checks for anti-invariant Riemannian submersions from
// an almost contact metric chart. Every check group measures residuals over
// the point's orthonormal vertical and horizontal frames; fields are extended
// off the point as projected constant fields unless noted.

#include "subcheck/report.hpp"
#include "subcheck/submersion/submersion.hpp"
#include "subcheck/tolerances.hpp"

#include <string>
#include <vector>

namespace subcheck::submersion {

/// Residual bound for the closed-form projector identities.
inline constexpr double kProjectorTolerance = 1e-10;

/// Group names in report order.
const std::vector<std::string>& submersion_groups();

void measure_rank(const MatrixXd& J, const Tolerances& tol, std::vector<Measurement>& out);
void measure_riemannian_submersion(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_projectors(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_anti_invariance(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_oneill(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_lemmas(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_second_fundamental_form(const SubmersionPoint& sp, const Tolerances& tol,
                                     std::vector<Measurement>& out);
void measure_tension(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_integrability(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_foliations(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_totally_geodesic_map(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);
void measure_umbilical(const SubmersionPoint& sp, const Tolerances& tol, std::vector<Measurement>& out);

/// Runs the selected groups at one point. A point where the geometry cannot
/// be built records an error for each group; a degenerate point records an
/// exclusion instead.
void measure_submersion(const SubmersionSpec& S, const Point& p, const std::vector<std::string>& groups,
                        const Tolerances& tol, PointOutcome& out);

/// Co-occurrence entries for the equivalent conditions, computed from the
/// aggregated member checks at verdict tolerance tol.differential.
void add_submersion_equivalences(CheckReport& report, const Tolerances& tol);

CheckReport check_submersion(const SubmersionSpec& S, const std::vector<Point>& points,
                             const std::vector<std::string>& groups, const Tolerances& tol = {},
                             ExecutionPolicy policy = ExecutionPolicy::Serial);

CheckReport check_riemannian_submersion(const SubmersionSpec& S, const std::vector<Point>& points,
                                        const Tolerances& tol = {});
CheckReport check_anti_invariance(const SubmersionSpec& S, const std::vector<Point>& points,
                                  const Tolerances& tol = {});
CheckReport check_lemma_suite(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol = {});
CheckReport tension_and_harmonicity(const SubmersionSpec& S, const std::vector<Point>& points,
                                    const Tolerances& tol = {});
CheckReport check_integrability(const SubmersionSpec& S, const std::vector<Point>& points,
                                const Tolerances& tol = {});
CheckReport check_foliations(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol = {});
CheckReport check_totally_geodesic_map(const SubmersionSpec& S, const std::vector<Point>& points,
                                       const Tolerances& tol = {});
CheckReport check_umbilical(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol = {});

/// Largest |T_E F| and |A_E F| over the full frame at each point.
struct ONeillNorms {
  double T = 0.0;
  double A = 0.0;
};
ONeillNorms max_oneill_norms(const SubmersionSpec& S, const std::vector<Point>& points, const Tolerances& tol = {});

}  // namespace subcheck::submersion

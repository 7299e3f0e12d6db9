#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "trient/measures.hpp"
#include "trient/states.hpp"

namespace trient {

// Closed form for the tangle of sqrt(p)|gGHZ> - sqrt(1-p) e^{i phi}|gW>:
// 4 |p^2 a^2 b^2 - 4 sqrt(p(1-p)^3) e^{3i phi} b c d f|.
inline double tangle_eigenstate_closed(const RankTwoFamily& fam) {
  fam.validate();
  const double a = fam.gghz.a, b = fam.gghz.b;
  const double c = fam.gw.c, d = fam.gw.d, f = fam.gw.f;
  const Complex phase = std::exp(Complex(0.0, 3.0 * fam.phi));
  const Complex inner = fam.p * fam.p * a * a * b * b -
                        4.0 * std::sqrt(fam.p * std::pow(1.0 - fam.p, 3)) *
                            phase * b * c * d * f;
  return 4.0 * std::abs(inner);
}

// Reading of the stray "e^2 f^2" symbol in the y coefficient. CSquared is the
// resolution that reproduces the p -> 0 limit (the gW fill); AsPrinted keeps
// the undefined symbol, which contributes nothing.
enum class FillYTail { CSquared, AsPrinted };

struct EigenstateClosedForms {
  Complex x, y, z;
  double tangle = 0.0;
  double c_fill = 0.0;
};

// Closed form for the fill of the superposed eigenstate, coefficients as
// printed (including their phase factors). Direct evaluation of the fill on
// the constructed state is phase-independent and is authoritative wherever
// the two disagree; see the discrepancy report in the test suite.
inline EigenstateClosedForms cf_eigenstate_closed(
    const RankTwoFamily& fam, FillYTail symbol = FillYTail::CSquared) {
  fam.validate();
  const double a = fam.gghz.a, b = fam.gghz.b;
  const double c = fam.gw.c, d = fam.gw.d, f = fam.gw.f;
  const double p = fam.p;
  const Complex e2 = std::exp(Complex(0.0, 2.0 * fam.phi));
  const Complex e4 = std::exp(Complex(0.0, 4.0 * fam.phi));
  const double lead = p * p * a * a * b * b;
  const double cross = 2.0 * p * (1.0 - p);
  const double tail = 2.0 * (1.0 - p) * (1.0 - p);

  EigenstateClosedForms out;
  out.x = lead + cross * e2 * f * f * b * b + tail * e4 * c * c * d * d;
  const double y_tail = symbol == FillYTail::CSquared ? c * c * f * f : 0.0;
  out.y = lead + cross * e2 * d * d * b * b + tail * e4 * y_tail;
  out.z = lead + cross * e2 * c * c * b * b + tail * e4 * d * d * f * f;
  out.tangle = tangle_eigenstate_closed(fam);
  out.c_fill = std::pow(
      (256.0 / 3.0) * std::abs(out.x * out.y * out.z * (out.x + out.y + out.z)),
      0.25);
  return out;
}

inline double cf_gghz(const GGHZParams& g) {
  g.validate();
  return 4.0 * g.a * g.a * g.b * g.b;
}

inline double cf_gw(const GWParams& w) {
  w.validate();
  const double c2 = w.c * w.c, d2 = w.d * w.d, f2 = w.f * w.f;
  return 8.0 * w.c * w.d * w.f *
         std::pow((c2 * d2 + d2 * f2 + c2 * f2) / 3.0, 0.25);
}

// Candidate stationary mixing weights of the eigenstate fill at phi = 2n pi.
// All three coincide exactly at the minimizing configuration.
struct StationaryPoints {
  std::optional<double> p1, p2, p3;

  bool coincident(double tolerance = 1e-10) const {
    if (!p1 || !p2 || !p3) return false;
    return std::abs(*p1 - *p2) <= tolerance && std::abs(*p2 - *p3) <= tolerance;
  }
};

inline StationaryPoints stationary_points(const RankTwoFamily& fam) {
  fam.validate();
  const double a2 = fam.gghz.a * fam.gghz.a, b2 = fam.gghz.b * fam.gghz.b;
  const double c2 = fam.gw.c * fam.gw.c, d2 = fam.gw.d * fam.gw.d,
               f2 = fam.gw.f * fam.gw.f;
  auto ratio = [&](double u, double v) -> std::optional<double> {
    const double den = a2 * b2 + 2.0 * (u - v);
    if (std::abs(den) < 1e-14) return std::nullopt;
    return (2.0 * u - v) / den;
  };
  StationaryPoints out;
  out.p1 = ratio(c2 * d2, f2 * b2);
  out.p2 = ratio(c2 * f2, b2 * d2);
  out.p3 = ratio(d2 * f2, b2 * c2);
  return out;
}

struct MinimumBound {
  double p_min = 0.0;
  double cf_lower = 0.0;
};

// Minimizing weight p_min = 1/(1 + 3 b^2) and stationary fill value
// 4 b^2 / (1 + 3 b^2) for the symmetric W part c = d = f = 1/sqrt(3).
// The stationary point is a minimum only while b^2 < 2/3; beyond that the
// fill is concave in p and the value bounds from above instead (see the
// discrepancy report).
inline MinimumBound p_min_and_lower_bound(const GGHZParams& g) {
  g.validate();
  if (g.b < 1e-12 || g.a < 1e-12)
    throw std::invalid_argument("p_min requires 0 < b < 1");
  const double b2 = g.b * g.b;
  MinimumBound out;
  out.p_min = 1.0 / (1.0 + 3.0 * b2);
  out.cf_lower = 4.0 * b2 / (1.0 + 3.0 * b2);

  const double s3 = 1.0 / std::sqrt(3.0);
  const RankTwoFamily at_min{g, {s3, s3, s3}, out.p_min, 0.0};
  if (std::abs(cf_eigenstate_closed(at_min).c_fill - out.cf_lower) > 1e-9)
    throw NumericalError("stationary fill value check failed");
  return out;
}

inline MinimumBound p_min_and_lower_bound(const GGHZParams& g,
                                          const GWParams& w) {
  w.validate();
  const double s3 = 1.0 / std::sqrt(3.0);
  if (std::abs(w.c - s3) > 1e-10 || std::abs(w.d - s3) > 1e-10 ||
      std::abs(w.f - s3) > 1e-10)
    throw std::invalid_argument("the bound requires c = d = f = 1/sqrt(3)");
  return p_min_and_lower_bound(g);
}

// Zero-tangle threshold p0 = (16 c^2 d^2 f^2)^{1/3} /
// ((a^4 b^2)^{1/3} + (16 c^2 d^2 f^2)^{1/3}).
inline double p_zero(const GGHZParams& g, const GWParams& w) {
  g.validate();
  w.validate();
  const double c2 = w.c * w.c, d2 = w.d * w.d, f2 = w.f * w.f;
  const double num = std::cbrt(16.0 * c2 * d2 * f2);
  const double den = std::cbrt(std::pow(g.a, 4) * g.b * g.b);
  if (num + den < 1e-15)
    throw std::invalid_argument("degenerate family: both cube-root terms vanish");
  return num / (den + num);
}

// Equal-weight mixture of the three phase states psi_{p, 2k pi/3}. The phase
// average kills the cross terms, so this equals the rank-2 mixture at p.
inline DensityMatrix rho_hat(const GGHZParams& g, const GWParams& w, double p) {
  Matrix sum = Matrix::Zero(8, 8);
  for (int k = 0; k < 3; ++k) {
    const RankTwoFamily fam{g, w, p, 2.0 * std::numbers::pi * k / 3.0};
    const Vector amps = make_eigenstate(fam).amplitudes();
    sum += amps * amps.adjoint();
  }
  return DensityMatrix(Matrix(sum / 3.0));
}

struct UpperBound {
  double printed = 0.0;     // first term evaluated at p, as printed
  double variant_p0 = 0.0;  // first term evaluated at p0, matching the
                            // optimal-decomposition line
};

namespace detail {

// Three-phase average of the fill over psi_{p, 2k pi/3}, evaluated directly
// on the constructed states. The as-printed coefficient closed form is not
// used here: its phase factors make it undershoot at 2 pi/3 and 4 pi/3,
// which would push the "bound" below values every decomposition can reach.
inline double three_phase_average_fill(const GGHZParams& g, const GWParams& w,
                                       double p) {
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const RankTwoFamily fam{g, w, p, 2.0 * std::numbers::pi * k / 3.0};
    sum += concurrence_fill_direct(make_eigenstate(fam));
  }
  return sum / 3.0;
}

}  // namespace detail

// Fill upper bound for the zero-tangle regime 0 <= p <= p0:
// (p/p0) B + ((p0-p)/p0) C_F(|gW>), with B the three-phase fill average.
// Both readings of the B argument (p as printed, p0 per the decomposition)
// are returned.
inline UpperBound cf_upper_bound(const GGHZParams& g, const GWParams& w,
                                 double p) {
  const double p0 = p_zero(g, w);
  if (p < -1e-12 || p > p0 + 1e-12)
    throw std::invalid_argument("upper bound applies to 0 <= p <= p0 only");
  p = std::min(std::max(p, 0.0), p0);
  const double w_fill = cf_gw(w);
  const double mix = p / p0;
  UpperBound out;
  out.printed = mix * detail::three_phase_average_fill(g, w, p) +
                (1.0 - mix) * w_fill;
  out.variant_p0 = mix * detail::three_phase_average_fill(g, w, p0) +
                   (1.0 - mix) * w_fill;
  return out;
}

// ---------------------------------------------------------------------------
// Numerical convex-roof estimator for rank <= 2 states.
// ---------------------------------------------------------------------------

using PureMeasure = std::function<double(const PureState3&)>;

enum class RoofMeasure { ConcurrenceFill, Tangle };

inline PureMeasure roof_measure(RoofMeasure which) {
  if (which == RoofMeasure::ConcurrenceFill)
    return [](const PureState3& psi) { return concurrence_fill_direct(psi); };
  // Hyperdeterminant route; agrees with the concurrence route to 1e-10 and
  // costs no eigensolves.
  return [](const PureState3& psi) { return tangle_hyperdeterminant(psi); };
}

struct RoofOptions {
  int budget = 2000;       // random Stiefel samples
  int refine_sweeps = 200; // pattern-search sweeps per refinement
  std::uint64_t seed = 42;
};

struct RoofEstimate {
  double value = 0.0;
  int decomposition_size = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Gram-Schmidt onto orthonormal columns; false if the input is degenerate.
inline bool orthonormalize_columns(Matrix& u) {
  const double n0 = u.col(0).norm();
  if (n0 < 1e-9) return false;
  u.col(0) /= n0;
  u.col(1) -= u.col(0) * (u.col(0).dot(u.col(1)));
  const double n1 = u.col(1).norm();
  if (n1 < 1e-9) return false;
  u.col(1) /= n1;
  return true;
}

struct RoofProblem {
  Vector v1, v2;  // eigenvectors weighted by sqrt(eigenvalue)
  const PureMeasure* measure = nullptr;

  // Average measure of the decomposition induced by orthonormal columns.
  double evaluate(const Matrix& u, int* size_out = nullptr) const {
    double total = 0.0;
    int size = 0;
    for (Eigen::Index j = 0; j < u.rows(); ++j) {
      const Vector w = u(j, 0) * v1 + u(j, 1) * v2;
      const double q = w.squaredNorm();
      if (q < 1e-14) continue;
      total += q * (*measure)(PureState3(Vector(w / std::sqrt(q))));
      ++size;
    }
    if (size_out) *size_out = size;
    return total;
  }

  double evaluate_raw(const Matrix& raw, int* size_out = nullptr) const {
    Matrix u = raw;
    if (!orthonormalize_columns(u))
      return std::numeric_limits<double>::infinity();
    return evaluate(u, size_out);
  }
};

// Coordinate-wise pattern search over modulus/phase coordinates of the raw
// parametrization, re-orthonormalized on every trial. The polar chart keeps
// the phase-alignment valleys of |.|-shaped objectives axis-aligned, where
// Cartesian probes stall on ridges. Steps halve whenever a full sweep fails
// to improve.
inline double refine_decomposition(const RoofProblem& problem, const Matrix& start,
                                   int max_sweeps, double& best_value,
                                   Matrix& best_raw) {
  const int m = static_cast<int>(start.rows());
  Eigen::MatrixXd radius(m, 2), angle(m, 2);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < 2; ++c) {
      radius(r, c) = std::abs(start(r, c));
      angle(r, c) = std::arg(start(r, c));
    }
  auto assemble = [m](const Eigen::MatrixXd& rad, const Eigen::MatrixXd& ang) {
    Matrix out(m, 2);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < 2; ++c)
        out(r, c) = rad(r, c) * std::exp(Complex(0.0, ang(r, c)));
    return out;
  };

  double current = problem.evaluate_raw(assemble(radius, angle));
  double step = 0.3;
  for (int sweep = 0; sweep < max_sweeps && step > 1e-10; ++sweep) {
    bool improved = false;
    for (int coord = 0; coord < 4 * m; ++coord) {
      const int row = (coord / 4) % m;
      const int col = (coord / 2) % 2;
      const bool is_angle = coord % 2;
      for (double sign : {1.0, -1.0}) {
        double delta = sign * step;
        Eigen::MatrixXd rad = radius, ang = angle;
        (is_angle ? ang(row, col) : rad(row, col)) += delta;
        double value = problem.evaluate_raw(assemble(rad, ang));
        if (value < current) {
          // Keep moving in the improving direction while it pays off.
          while (true) {
            delta *= 2.0;
            Eigen::MatrixXd rad2 = rad, ang2 = ang;
            (is_angle ? ang2(row, col) : rad2(row, col)) += delta;
            const double next_value = problem.evaluate_raw(assemble(rad2, ang2));
            if (next_value < value) {
              rad = rad2;
              ang = ang2;
              value = next_value;
            } else {
              break;
            }
          }
          radius = rad;
          angle = ang;
          current = value;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  if (current < best_value) {
    best_value = current;
    best_raw = assemble(radius, angle);
  }
  return current;
}

}  // namespace detail

// Upper estimate of min over convex decompositions of the average pure-state
// measure. Decompositions of size m in {2,3,4} are parametrized by m x 2
// matrices with orthonormal columns applied to the weighted eigenvectors;
// the search is seeded random sampling plus coordinate-wise refinement of
// every running best, so the result is deterministic for a fixed (seed,
// budget) and nonincreasing in the budget.
inline RoofEstimate convex_roof_estimate(const DensityMatrix& rho,
                                         const PureMeasure& measure,
                                         const RoofOptions& options = {}) {
  if (options.budget < 1) throw std::invalid_argument("budget must be >= 1");
  const int dim = rho.dim();
  if (dim != 8)
    throw std::invalid_argument("convex_roof_estimate expects a three-qubit state");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const auto& ev = es.eigenvalues();  // ascending
  for (int i = 0; i < dim - 2; ++i)
    if (ev(i) > 1e-8)
      throw std::invalid_argument("convex_roof_estimate requires rank <= 2");

  const double mu1 = std::max(0.0, ev(dim - 1));
  const double mu2 = std::max(0.0, ev(dim - 2));
  if (mu2 <= 1e-14) {
    // Pure state: the decomposition is unique.
    const PureState3 psi(Vector(es.eigenvectors().col(dim - 1)));
    return {measure(psi), 1};
  }

  detail::RoofProblem problem;
  problem.v1 = std::sqrt(mu1) * es.eigenvectors().col(dim - 1);
  problem.v2 = std::sqrt(mu2) * es.eigenvectors().col(dim - 2);
  problem.measure = &measure;

  // Records, running bests and kicks are tracked per decomposition size:
  // the sizes have separate optimum structures, and a strong small-size
  // local minimum must not starve the larger sizes of refinement starts.
  double best_value[3];
  Matrix best_raw[3];
  double record[3];
  for (int k = 0; k < 3; ++k) {
    best_value[k] = std::numeric_limits<double>::infinity();
    best_raw[k] = Matrix::Identity(2 + k, 2);
    record[k] = std::numeric_limits<double>::infinity();
  }

  for (int i = 0; i < options.budget; ++i) {
    const int slot = i % 3;
    const int m = 2 + slot;
    std::mt19937_64 rng(detail::splitmix64(options.seed ^
                                           (0x9E3779B97F4A7C15ULL * (i + 1))));
    std::normal_distribution<double> normal(0.0, 1.0);
    // Log-normal row scales spread the samples over strongly asymmetric
    // weight configurations, which plain Gaussian Stiefel sampling rarely
    // reaches.
    Matrix raw(m, 2);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < 2; ++c) {
        const double scale = std::exp(1.2 * normal(rng));
        raw(r, c) = scale * Complex(normal(rng), normal(rng));
      }
    const double sampled = problem.evaluate_raw(raw);
    if (sampled < best_value[slot]) {
      best_value[slot] = sampled;
      best_raw[slot] = raw;
    }
    // Polish every new per-size record and a fixed subsequence of
    // candidates. Both triggers depend only on the candidate index prefix,
    // which keeps the final value monotone under budget growth.
    bool refine = i % 64 == 0;
    if (sampled < record[slot]) {
      record[slot] = sampled;
      refine = true;
    }
    if (refine) {
      detail::refine_decomposition(problem, raw, options.refine_sweeps,
                                   best_value[slot], best_raw[slot]);
      // Deterministic kicked restarts around the per-size running best
      // escape the shallow local minima of |.|-shaped measures; scales cover
      // nearby valleys and neighboring basins.
      static constexpr double kick_scales[] = {0.1, 0.2, 0.35, 0.5};
      for (int kick = 0; kick < 4; ++kick) {
        std::mt19937_64 kick_rng(detail::splitmix64(
            options.seed ^ (0xC2B2AE3D27D4EB4FULL * (4 * i + kick + 1))));
        std::normal_distribution<double> kick_normal(0.0, 1.0);
        Matrix kicked = best_raw[slot];
        for (Eigen::Index r = 0; r < kicked.rows(); ++r)
          for (int c = 0; c < 2; ++c)
            kicked(r, c) += kick_scales[kick] * Complex(kick_normal(kick_rng),
                                                        kick_normal(kick_rng));
        detail::refine_decomposition(problem, kicked, options.refine_sweeps,
                                     best_value[slot], best_raw[slot]);
      }
    }
  }

  int arg = 0;
  for (int k = 1; k < 3; ++k)
    if (best_value[k] < best_value[arg]) arg = k;
  int size = 0;
  const double value = problem.evaluate_raw(best_raw[arg], &size);
  return {std::min(value, best_value[arg]), size};
}

inline RoofEstimate convex_roof_estimate(const DensityMatrix& rho,
                                         RoofMeasure which,
                                         const RoofOptions& options = {}) {
  return convex_roof_estimate(rho, roof_measure(which), options);
}

// ---------------------------------------------------------------------------
// Sweep tables consumed by the CLI.
// ---------------------------------------------------------------------------

struct EigenstateSweepRow {
  double p = 0.0;
  double cf_closed = 0.0;
  double cf_direct = 0.0;
  double tangle = 0.0;
};

inline std::vector<EigenstateSweepRow> sweep_eigenstate(const GGHZParams& g,
                                                        const GWParams& w,
                                                        double phi,
                                                        int n_points) {
  if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  std::vector<EigenstateSweepRow> rows;
  rows.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double p = static_cast<double>(i) / (n_points - 1);
    const RankTwoFamily fam{g, w, p, phi};
    const PureState3 psi = make_eigenstate(fam);
    rows.push_back({p, cf_eigenstate_closed(fam).c_fill,
                    concurrence_fill_direct(psi), tangle_pure(psi)});
  }
  return rows;
}

struct MixtureBoundRow {
  double p = 0.0;
  double cf_upper_printed = 0.0;
  double cf_upper_variant = 0.0;
  double cf_roof_estimate = 0.0;
};

inline std::vector<MixtureBoundRow> sweep_mixture_bound(
    const GGHZParams& g, const GWParams& w, int n_points,
    const RoofOptions& options = {}) {
  if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  const double p0 = p_zero(g, w);
  std::vector<MixtureBoundRow> rows;
  rows.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double p = p0 * static_cast<double>(i) / (n_points - 1);
    const UpperBound bound = cf_upper_bound(g, w, p);
    const RankTwoFamily fam{g, w, p, 0.0};
    const RoofEstimate roof = convex_roof_estimate(
        make_rank2_mixture(fam), RoofMeasure::ConcurrenceFill, options);
    rows.push_back({p, bound.printed, bound.variant_p0, roof.value});
  }
  return rows;
}

}  // namespace trient

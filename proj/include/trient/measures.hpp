#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "trient/linalg.hpp"
#include "trient/states.hpp"

namespace trient {

// Per-state collection of every entanglement quantity: pairwise concurrences,
// one-vs-rest concurrences, tangle, partial tangles and concurrence fill.
struct MeasureBundle {
  double c_ab = 0.0, c_ac = 0.0, c_bc = 0.0;
  double c_a_bc = 0.0, c_b_ac = 0.0, c_c_ab = 0.0;
  double tangle = 0.0;
  double tau_ab = 0.0, tau_ac = 0.0, tau_bc = 0.0;
  double c_fill = 0.0;
};

namespace detail {

// Reduced density matrices straight from the amplitudes, no intermediate
// 8x8 projector. Output ordering follows the A,B,C qubit order.
inline Matrix reduced_single(const PureState3& psi, Qubit q) {
  const Vector& a = psi.amplitudes();
  const int shift = bit_shift(q);
  int rest[2];
  int n = 0;
  for (int s = 2; s >= 0; --s)
    if (s != shift) rest[n++] = s;
  Matrix out = Matrix::Zero(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Complex sum = 0.0;
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
          const int tail = (u << rest[0]) | (v << rest[1]);
          sum += a((r << shift) | tail) * std::conj(a((c << shift) | tail));
        }
      out(r, c) = sum;
    }
  return out;
}

inline Matrix reduced_pair(const PureState3& psi, Qubit q1, Qubit q2) {
  const Vector& a = psi.amplitudes();
  const int s1 = bit_shift(q1);
  const int s2 = bit_shift(q2);
  const int traced = 3 - s1 - s2;
  Matrix out = Matrix::Zero(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int rb = ((r >> 1) << s1) | ((r & 1) << s2);
      const int cb = ((c >> 1) << s1) | ((c & 1) << s2);
      Complex sum = 0.0;
      for (int t = 0; t < 2; ++t)
        sum += a(rb | (t << traced)) * std::conj(a(cb | (t << traced)));
      out(r, c) = sum;
    }
  return out;
}

inline double det2_real(const Matrix& m) {
  return m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
}

}  // namespace detail

// Wootters concurrence of a two-qubit state. The lambda_i are the square
// roots of the eigenvalues of rho * rho_tilde. With rho = sum_i |v_i><v_i|
// (subnormalized eigenvectors) they equal the singular values of the
// symmetric matrix S_ij = v_i^T (sigma_y (x) sigma_y) v_j, which keeps full
// precision for rank-deficient states where the spectrum of rho rho_tilde
// degenerates at zero.
inline double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("concurrence_mixed expects a two-qubit state");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());

  static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
  std::vector<Vector> v;
  for (int i = 0; i < 4; ++i) {
    const double mu = es.eigenvalues()(i);
    if (mu > 1e-13) v.push_back(std::sqrt(mu) * es.eigenvectors().col(i));
  }
  if (v.empty()) return 0.0;

  const int r = static_cast<int>(v.size());
  Matrix s = Matrix::Zero(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < 4; ++k) sum += v[i](k) * sign[k] * v[j](3 - k);
      s(i, j) = sum;
      s(j, i) = sum;
    }

  Eigen::JacobiSVD<Matrix> svd(s);
  double lambda[4] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < r; ++i) lambda[i] = svd.singularValues()(i);
  std::sort(lambda, lambda + 4, std::greater<double>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

// One-vs-rest concurrence C_{pivot|rest} = 2 sqrt(det rho_pivot).
inline double concurrence_pure_bipartition(const PureState3& psi, Qubit pivot) {
  const double det = detail::det2_real(detail::reduced_single(psi, pivot));
  return 2.0 * std::sqrt(clamp_nonneg(det, "reduced determinant"));
}

namespace detail {

inline std::pair<Qubit, Qubit> others(Qubit pivot) {
  switch (pivot) {
    case Qubit::A: return {Qubit::B, Qubit::C};
    case Qubit::B: return {Qubit::A, Qubit::C};
    default: return {Qubit::A, Qubit::B};
  }
}

inline double concurrence_pair(const PureState3& psi, Qubit q1, Qubit q2) {
  return concurrence_mixed(DensityMatrix(reduced_pair(psi, q1, q2)));
}

}  // namespace detail

// Residual entanglement C^2_{i|jk} - C^2_{ij} - C^2_{ik}; invariant under the
// choice of pivot.
inline double tangle_pure(const PureState3& psi, Qubit pivot = Qubit::A) {
  const auto [j, k] = detail::others(pivot);
  const double side = concurrence_pure_bipartition(psi, pivot);
  const double cij = detail::concurrence_pair(psi, pivot, j);
  const double cik = detail::concurrence_pair(psi, pivot, k);
  const double tau = side * side - cij * cij - cik * cik;
  return clamp_nonneg(tau, "tangle");
}

// Cayley hyperdeterminant route to the tangle; algebraic, no eigensolves.
// Used as a fast evaluation and as a cross-check of the concurrence route.
inline double tangle_hyperdeterminant(const PureState3& psi) {
  const Vector& a = psi.amplitudes();
  const Complex d1 = a(0) * a(0) * a(7) * a(7) + a(1) * a(1) * a(6) * a(6) +
                     a(2) * a(2) * a(5) * a(5) + a(4) * a(4) * a(3) * a(3);
  const Complex d2 = a(0) * a(7) * a(3) * a(4) + a(0) * a(7) * a(5) * a(2) +
                     a(0) * a(7) * a(6) * a(1) + a(3) * a(4) * a(5) * a(2) +
                     a(3) * a(4) * a(6) * a(1) + a(5) * a(2) * a(6) * a(1);
  const Complex d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

// Partial tangles tau_ij = sqrt(C^2_{i|jk} - C^2_{ik}), returned in the order
// (tau_AB, tau_AC, tau_BC).
inline std::array<double, 3> partial_tangles(const PureState3& psi) {
  const double ca2 = std::pow(concurrence_pure_bipartition(psi, Qubit::A), 2);
  const double cb2 = std::pow(concurrence_pure_bipartition(psi, Qubit::B), 2);
  const double cab2 = std::pow(detail::concurrence_pair(psi, Qubit::A, Qubit::B), 2);
  const double cac2 = std::pow(detail::concurrence_pair(psi, Qubit::A, Qubit::C), 2);
  return {std::sqrt(clamp_nonneg(ca2 - cac2, "partial tangle radicand")),
          std::sqrt(clamp_nonneg(ca2 - cab2, "partial tangle radicand")),
          std::sqrt(clamp_nonneg(cb2 - cab2, "partial tangle radicand"))};
}

struct PolygonCheck {
  bool holds = false;
  std::array<double, 3> margins{};  // indexed by the distinguished qubit A,B,C
};

// Entanglement polygon inequality: each squared one-vs-rest concurrence is at
// most the sum of the other two.
inline PolygonCheck polygon_inequality_check(const PureState3& psi) {
  const double s[3] = {std::pow(concurrence_pure_bipartition(psi, Qubit::A), 2),
                       std::pow(concurrence_pure_bipartition(psi, Qubit::B), 2),
                       std::pow(concurrence_pure_bipartition(psi, Qubit::C), 2)};
  PolygonCheck out;
  for (int i = 0; i < 3; ++i)
    out.margins[i] = s[(i + 1) % 3] + s[(i + 2) % 3] - s[i];
  out.holds = out.margins[0] >= -tol::clamp && out.margins[1] >= -tol::clamp &&
              out.margins[2] >= -tol::clamp;
  return out;
}

namespace detail {

// C_F^4 from the three squared one-vs-rest concurrences (Heron form).
inline double fill_fourth_power(double sa, double sb, double sc) {
  const double q = 0.5 * (sa + sb + sc);
  const double fa = clamp_nonneg(q - sa, "triangle factor");
  const double fb = clamp_nonneg(q - sb, "triangle factor");
  const double fc = clamp_nonneg(q - sc, "triangle factor");
  return (16.0 / 3.0) * q * fa * fb * fc;
}

}  // namespace detail

// Concurrence fill: normalized area of the triangle whose sides are the
// squared one-vs-rest concurrences.
inline double concurrence_fill_direct(const PureState3& psi) {
  const double sa = std::pow(concurrence_pure_bipartition(psi, Qubit::A), 2);
  const double sb = std::pow(concurrence_pure_bipartition(psi, Qubit::B), 2);
  const double sc = std::pow(concurrence_pure_bipartition(psi, Qubit::C), 2);
  return std::pow(detail::fill_fourth_power(sa, sb, sc), 0.25);
}

// Concurrence fill from the tangle and the three partial tangles. The last
// factor is Q = sum tau_ij^2 - 3 tau / 2, a single subtraction; this is what
// matches the side-based formula algebraically.
inline double concurrence_fill_reformulated(double tangle,
                                            const std::array<double, 3>& partials) {
  double prod = 16.0 / 3.0;
  double sum = 0.0;
  for (double t : partials) {
    prod *= clamp_nonneg(t * t - 0.5 * tangle, "triangle factor");
    sum += t * t;
  }
  prod *= clamp_nonneg(sum - 1.5 * tangle, "triangle factor");
  return std::pow(prod, 0.25);
}

// Closed forms for the five-term canonical family. The as-printed degree-8
// C^2_BC variant is kept behind the flag for comparison; the standard
// degree-4 expression is what direct evaluation reproduces.
enum class AcinBcForm { Standard, AsPrinted };

struct AcinClosedForms {
  double tangle = 0.0;
  double c2_ab = 0.0;
  double c2_ac = 0.0;
  double c2_bc = 0.0;
};

inline AcinClosedForms acin_closed_forms(const AcinParams& p,
                                         AcinBcForm form = AcinBcForm::Standard) {
  p.validate();
  AcinClosedForms out;
  out.tangle = 4.0 * p.lambda0 * p.lambda0 * p.lambda4 * p.lambda4;
  out.c2_ab = 4.0 * p.lambda0 * p.lambda0 * p.lambda3 * p.lambda3;
  out.c2_ac = 4.0 * p.lambda0 * p.lambda0 * p.lambda2 * p.lambda2;
  if (form == AcinBcForm::Standard) {
    const Complex z = p.lambda2 * p.lambda3 -
                      p.lambda1 * p.lambda4 * std::exp(Complex(0.0, p.theta));
    out.c2_bc = 4.0 * std::norm(z);
  } else {
    const double diff = p.lambda2 * p.lambda2 * p.lambda3 * p.lambda3 -
                        p.lambda1 * p.lambda1 * p.lambda4 * p.lambda4;
    out.c2_bc = 4.0 * diff * diff;
  }
  return out;
}

// All quantities for one state; shared intermediates computed once.
inline MeasureBundle bundle(const PureState3& psi) {
  MeasureBundle m;
  m.c_a_bc = concurrence_pure_bipartition(psi, Qubit::A);
  m.c_b_ac = concurrence_pure_bipartition(psi, Qubit::B);
  m.c_c_ab = concurrence_pure_bipartition(psi, Qubit::C);
  m.c_ab = detail::concurrence_pair(psi, Qubit::A, Qubit::B);
  m.c_ac = detail::concurrence_pair(psi, Qubit::A, Qubit::C);
  m.c_bc = detail::concurrence_pair(psi, Qubit::B, Qubit::C);
  m.tangle = clamp_nonneg(m.c_a_bc * m.c_a_bc - m.c_ab * m.c_ab - m.c_ac * m.c_ac,
                          "tangle");
  m.tau_ab = std::sqrt(clamp_nonneg(m.c_a_bc * m.c_a_bc - m.c_ac * m.c_ac,
                                    "partial tangle radicand"));
  m.tau_ac = std::sqrt(clamp_nonneg(m.c_a_bc * m.c_a_bc - m.c_ab * m.c_ab,
                                    "partial tangle radicand"));
  m.tau_bc = std::sqrt(clamp_nonneg(m.c_b_ac * m.c_b_ac - m.c_ab * m.c_ab,
                                    "partial tangle radicand"));
  m.c_fill = std::pow(detail::fill_fourth_power(m.c_a_bc * m.c_a_bc,
                                                m.c_b_ac * m.c_b_ac,
                                                m.c_c_ab * m.c_c_ab),
                      0.25);
  return m;
}

}  // namespace trient

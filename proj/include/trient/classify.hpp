#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "trient/measures.hpp"

namespace trient {

enum class ClassLabel {
  FullySeparable,
  Biseparable,
  WClass,
  GHZClass,
  GMEUndetermined
};

inline const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::FullySeparable: return "FullySeparable";
    case ClassLabel::Biseparable: return "Biseparable";
    case ClassLabel::WClass: return "WClass";
    case ClassLabel::GHZClass: return "GHZClass";
    default: return "GMEUndetermined";
  }
}

enum class QubitPair { AB, AC, BC };

inline const char* to_string(QubitPair pair) {
  switch (pair) {
    case QubitPair::AB: return "AB";
    case QubitPair::AC: return "AC";
    default: return "BC";
  }
}

// Witness report for [C_F]^4 >= k tau_pair^2 with
// k = (s_xy)^{4/3} (s_xz)^{4/3} (s_pair)^{1/3}, s_ij = tau_ij^2 + C_ij^2.
// Violation is a GHZ-class certificate; non-violation decides nothing on its
// own (generalized GHZ states sit exactly on the equality).
struct CriterionReport {
  QubitPair pair = QubitPair::BC;
  double lhs = 0.0;  // C_F^4
  double k = 0.0;
  double rhs = 0.0;  // k * tau_pair^2
  bool violated = false;
  ClassLabel label = ClassLabel::GMEUndetermined;
};

namespace detail {

inline CriterionReport criterion_from_bundle(const MeasureBundle& m,
                                             QubitPair pair) {
  const double s_ab = m.tau_ab * m.tau_ab + m.c_ab * m.c_ab;
  const double s_ac = m.tau_ac * m.tau_ac + m.c_ac * m.c_ac;
  const double s_bc = m.tau_bc * m.tau_bc + m.c_bc * m.c_bc;

  double s_pair = s_bc, tau_pair = m.tau_bc, s1 = s_ab, s2 = s_ac;
  if (pair == QubitPair::AB) {
    s_pair = s_ab;
    tau_pair = m.tau_ab;
    s1 = s_ac;
    s2 = s_bc;
  } else if (pair == QubitPair::AC) {
    s_pair = s_ac;
    tau_pair = m.tau_ac;
    s1 = s_ab;
    s2 = s_bc;
  }

  CriterionReport report;
  report.pair = pair;
  report.lhs = fill_fourth_power(m.c_a_bc * m.c_a_bc, m.c_b_ac * m.c_b_ac,
                                 m.c_c_ab * m.c_c_ab);
  report.k = std::pow(s1, 4.0 / 3.0) * std::pow(s2, 4.0 / 3.0) *
             std::pow(s_pair, 1.0 / 3.0);
  report.rhs = report.k * tau_pair * tau_pair;
  report.violated = report.lhs < report.rhs - 1e-12;
  report.label =
      report.violated ? ClassLabel::GHZClass : ClassLabel::GMEUndetermined;
  return report;
}

}  // namespace detail

inline CriterionReport w_class_criterion(const PureState3& psi,
                                         QubitPair pair = QubitPair::BC) {
  return detail::criterion_from_bundle(bundle(psi), pair);
}

inline std::array<CriterionReport, 3> w_class_criterion_all_pairs(
    const PureState3& psi) {
  const MeasureBundle m = bundle(psi);
  return {detail::criterion_from_bundle(m, QubitPair::BC),
          detail::criterion_from_bundle(m, QubitPair::AB),
          detail::criterion_from_bundle(m, QubitPair::AC)};
}

// Classification by partial tangles first, then the tangle dichotomy:
// all tau_ij below tol -> fully separable; any below tol -> biseparable;
// otherwise tangle separates W class from GHZ class.
inline ClassLabel classify_pure(const PureState3& psi, double tolerance = 1e-7) {
  const auto taus = partial_tangles(psi);
  const int below = (taus[0] < tolerance) + (taus[1] < tolerance) +
                    (taus[2] < tolerance);
  if (below == 3) return ClassLabel::FullySeparable;
  if (below > 0) return ClassLabel::Biseparable;
  return tangle_pure(psi) < tolerance ? ClassLabel::WClass
                                      : ClassLabel::GHZClass;
}

struct Classification {
  ClassLabel label = ClassLabel::GMEUndetermined;
  CriterionReport criterion;  // corroborating witness, BC pair
};

inline Classification classify_report(const PureState3& psi,
                                      double tolerance = 1e-7) {
  Classification out;
  out.label = classify_pure(psi, tolerance);
  out.criterion = w_class_criterion(psi);
  return out;
}

struct Example1Row {
  double d = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Family c|001> + d|010> + f|100> + e|011> restricted per case:
// case 1 fixes c = 0, e = 1/sqrt(5); case 2 fixes e = 0, c = 1/sqrt(5).
// Either way d^2 + f^2 = 4/5 and d sweeps the open interval (0, sqrt(4/5)).
inline std::vector<Example1Row> sweep_example1(int case_id, int n_points) {
  if (case_id != 1 && case_id != 2)
    throw std::invalid_argument("sweep case must be 1 or 2");
  if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");

  const double fixed = 1.0 / std::sqrt(5.0);
  const double d_max = std::sqrt(4.0 / 5.0);
  std::vector<Example1Row> rows;
  rows.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double d = d_max * static_cast<double>(i + 1) /
                     static_cast<double>(n_points + 1);
    const double f = std::sqrt(std::max(0.0, 4.0 / 5.0 - d * d));
    Vector v = Vector::Zero(8);
    v(2) = d;
    v(4) = f;
    if (case_id == 1)
      v(3) = fixed;  // e|011>
    else
      v(1) = fixed;  // c|001>
    const CriterionReport report =
        w_class_criterion(PureState3::normalized(std::move(v)));
    rows.push_back({d, report.lhs, report.rhs});
  }
  return rows;
}

}  // namespace trient

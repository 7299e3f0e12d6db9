#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "trient/linalg.hpp"

namespace trient {

namespace tol {
inline constexpr double state_norm = 1e-10;
inline constexpr double unitary_input = 1e-8;
}  // namespace tol

// Normalized three-qubit pure state, 8 basis-ordered complex amplitudes.
class PureState3 {
 public:
  static constexpr int kDim = 8;

  explicit PureState3(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() != kDim)
      throw std::invalid_argument("pure state needs 8 amplitudes");
    if (std::abs(amps_.norm() - 1.0) > tol::state_norm)
      throw std::invalid_argument("pure state is not normalized");
  }

  // Rescale to unit norm; rejects vectors with no usable magnitude.
  static PureState3 normalized(Vector amplitudes) {
    const double n = amplitudes.norm();
    if (n < 1e-12)
      throw std::invalid_argument("cannot normalize a near-zero state vector");
    return PureState3(Vector(amplitudes / n));
  }

  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(int basis_index) const { return amps_(basis_index); }

  DensityMatrix projector() const { return DensityMatrix::from_pure(amps_); }

 private:
  Vector amps_;
};

inline Complex inner(const PureState3& a, const PureState3& b) {
  return a.amplitudes().dot(b.amplitudes());
}

// |<a|b>|; equals 1 iff the states agree up to global phase.
inline double overlap(const PureState3& a, const PureState3& b) {
  return std::abs(inner(a, b));
}

inline PureState3 basis_state(int index) {
  Vector v = Vector::Zero(PureState3::kDim);
  v(index) = 1.0;
  return PureState3(std::move(v));
}

inline PureState3 ghz_state() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::numbers::sqrt2;
  return PureState3(std::move(v));
}

inline PureState3 w_state() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return PureState3(std::move(v));
}

// Five-term canonical family: lambda0|000> + lambda1 e^{i theta}|100>
// + lambda2|101> + lambda3|110> + lambda4|111>, lambda_i >= 0,
// sum of squares 1, theta in [0, pi].
struct AcinParams {
  double lambda0 = 0.0, lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0,
         lambda4 = 0.0;
  double theta = 0.0;

  void validate() const {
    const double lambdas[5] = {lambda0, lambda1, lambda2, lambda3, lambda4};
    double sq = 0.0;
    for (double l : lambdas) {
      if (l < 0.0) throw std::invalid_argument("Acin amplitudes must be >= 0");
      sq += l * l;
    }
    if (std::abs(sq - 1.0) > tol::state_norm)
      throw std::invalid_argument("Acin amplitudes must have unit square sum");
    if (theta < 0.0 || theta > std::numbers::pi)
      throw std::invalid_argument("Acin phase must lie in [0, pi]");
  }
};

struct GGHZParams {
  double a = 0.0, b = 0.0;

  void validate() const {
    if (a < 0.0 || b < 0.0)
      throw std::invalid_argument("gGHZ amplitudes must be >= 0");
    if (std::abs(a * a + b * b - 1.0) > tol::state_norm)
      throw std::invalid_argument("gGHZ amplitudes must satisfy a^2 + b^2 = 1");
  }
};

struct GWParams {
  double c = 0.0, d = 0.0, f = 0.0;

  void validate() const {
    if (c < 0.0 || d < 0.0 || f < 0.0)
      throw std::invalid_argument("gW amplitudes must be >= 0");
    if (std::abs(c * c + d * d + f * f - 1.0) > tol::state_norm)
      throw std::invalid_argument("gW amplitudes must satisfy c^2 + d^2 + f^2 = 1");
  }
};

// Parameters of the rank-2 mixture p|gGHZ><gGHZ| + (1-p)|gW><gW| and of the
// superposed eigenstate sqrt(p)|gGHZ> - sqrt(1-p) e^{i phi}|gW>.
struct RankTwoFamily {
  GGHZParams gghz;
  GWParams gw;
  double p = 1.0;
  double phi = 0.0;

  void validate() const {
    gghz.validate();
    gw.validate();
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("mixing weight p must lie in [0, 1]");
  }
};

inline PureState3 make_acin_state(const AcinParams& params) {
  params.validate();
  Vector v = Vector::Zero(8);
  v(0) = params.lambda0;
  v(4) = params.lambda1 * std::exp(Complex(0.0, params.theta));
  v(5) = params.lambda2;
  v(6) = params.lambda3;
  v(7) = params.lambda4;
  return PureState3(std::move(v));
}

inline PureState3 make_gghz(const GGHZParams& params) {
  params.validate();
  Vector v = Vector::Zero(8);
  v(0) = params.a;
  v(7) = params.b;
  return PureState3(std::move(v));
}

inline PureState3 make_gw(const GWParams& params) {
  params.validate();
  Vector v = Vector::Zero(8);
  v(1) = params.c;
  v(2) = params.d;
  v(4) = params.f;
  return PureState3(std::move(v));
}

inline PureState3 make_eigenstate(const RankTwoFamily& fam) {
  fam.validate();
  const double sp = std::sqrt(fam.p);
  const Complex sw = std::sqrt(1.0 - fam.p) * std::exp(Complex(0.0, fam.phi));
  Vector v = Vector::Zero(8);
  v(0) = sp * fam.gghz.a;
  v(7) = sp * fam.gghz.b;
  v(1) = -sw * fam.gw.c;
  v(2) = -sw * fam.gw.d;
  v(4) = -sw * fam.gw.f;
  // The two branches are orthogonal, so the combination is already normalized
  // up to parameter tolerance.
  if (std::abs(v.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("eigenstate branches are not normalized");
  return PureState3::normalized(std::move(v));
}

inline DensityMatrix make_rank2_mixture(const RankTwoFamily& fam) {
  fam.validate();
  const Vector g = make_gghz(fam.gghz).amplitudes();
  const Vector w = make_gw(fam.gw).amplitudes();
  Matrix rho = fam.p * (g * g.adjoint()) + (1.0 - fam.p) * (w * w.adjoint());
  return DensityMatrix(std::move(rho));
}

inline PureState3 apply_local_unitary(const PureState3& state, const Matrix& ua,
                                      const Matrix& ub, const Matrix& uc) {
  for (const Matrix* u : {&ua, &ub, &uc}) {
    if (u->rows() != 2 || u->cols() != 2)
      throw std::invalid_argument("local unitary factors must be 2x2");
    Matrix gram = u->adjoint() * (*u);
    if (max_abs(Matrix(gram - Matrix::Identity(2, 2))) > tol::unitary_input)
      throw std::invalid_argument("local factor is not unitary within 1e-8");
  }
  const Vector& in = state.amplitudes();
  Vector out = Vector::Zero(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Complex sum = 0.0;
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
              sum += ua(a, x) * ub(b, y) * uc(c, z) * in(4 * x + 2 * y + z);
        out(4 * a + 2 * b + c) = sum;
      }
  return PureState3::normalized(std::move(out));
}

// Haar-like sampling: normalized complex Gaussian amplitude vector,
// deterministic for a fixed engine state.
inline PureState3 random_pure_state(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(8);
  for (int i = 0; i < 8; ++i) v(i) = Complex(normal(rng), normal(rng));
  return PureState3::normalized(std::move(v));
}

inline AcinParams random_acin_params(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  double l[5];
  double sq = 0.0;
  for (double& x : l) {
    x = std::abs(normal(rng));
    sq += x * x;
  }
  const double scale = 1.0 / std::sqrt(sq);
  AcinParams p;
  p.lambda0 = l[0] * scale;
  p.lambda1 = l[1] * scale;
  p.lambda2 = l[2] * scale;
  p.lambda3 = l[3] * scale;
  p.lambda4 = l[4] * scale;
  p.theta = angle(rng);
  return p;
}

// Haar-random 2x2 unitary via QR of a complex Gaussian matrix with the
// R-diagonal phases absorbed.
inline Matrix random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace trient

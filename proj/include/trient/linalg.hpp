#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace trient {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Qubit labels. Basis ordering is |b_A b_B b_C> with A the most significant
// bit, so |000>,|001>,...,|111> map to indices 0..7.
enum class Qubit { A = 0, B = 1, C = 2 };

// Thrown when a clamping threshold is exceeded, i.e. a radicand or triangle
// factor is negative beyond what float noise can explain.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double hermitian_construct = 1e-10;
inline constexpr double hermitian_input = 1e-8;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double clamp = 1e-9;
inline constexpr double clamp_fail = 1e-6;
}  // namespace tol

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(Matrix(m - m.adjoint())) <= tolerance;
}

// Clamp small negative values to zero; reject values negative enough to
// signal formula misuse rather than rounding.
inline double clamp_nonneg(double x, const char* what) {
  if (x >= 0.0) return x;
  if (x < -tol::clamp_fail)
    throw NumericalError(std::string(what) + " negative beyond tolerance: " +
                         std::to_string(x));
  return 0.0;
}

inline Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Validated density matrix of dimension 2, 4 or 8: Hermitian, unit trace,
// positive semidefinite within construction tolerances.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) { validate(); }

  static DensityMatrix from_pure(const Vector& amplitudes) {
    return DensityMatrix(Matrix(amplitudes * amplitudes.adjoint()));
  }

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  void validate() const {
    const auto n = m_.rows();
    if (m_.cols() != n || (n != 2 && n != 4 && n != 8))
      throw std::invalid_argument("density matrix dimension must be 2, 4 or 8");
    if (!is_hermitian(m_, tol::hermitian_construct))
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex(1.0)) > tol::trace_one)
      throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd)
      throw std::invalid_argument("density matrix is not positive semidefinite");
  }

  Matrix m_;
};

// Real eigenvalues of a Hermitian matrix, sorted descending.
inline std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  if (!is_hermitian(m, tol::hermitian_input))
    throw std::invalid_argument("matrix is not Hermitian within 1e-8");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

namespace detail {
inline int bit_shift(Qubit q) { return 2 - static_cast<int>(q); }
}  // namespace detail

// Partial trace of a three-qubit state onto the kept qubits. Output basis
// keeps the A,B,C ordering of the retained qubits.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   std::initializer_list<Qubit> keep) {
  if (rho.dim() != 8)
    throw std::invalid_argument("partial_trace expects an 8-dimensional state");

  bool kept[3] = {false, false, false};
  for (Qubit q : keep) kept[static_cast<int>(q)] = true;
  std::vector<int> keep_shift, trace_shift;
  for (int i = 0; i < 3; ++i) {
    if (kept[i])
      keep_shift.push_back(2 - i);
    else
      trace_shift.push_back(2 - i);
  }
  if (keep_shift.empty() || trace_shift.empty())
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset");

  const int out_dim = 1 << keep_shift.size();
  const int traced = 1 << trace_shift.size();
  const Matrix& in = rho.matrix();
  Matrix out = Matrix::Zero(out_dim, out_dim);

  auto expand = [](const std::vector<int>& shifts, int packed) {
    int idx = 0;
    for (std::size_t k = 0; k < shifts.size(); ++k) {
      int bit = (packed >> (shifts.size() - 1 - k)) & 1;
      idx |= bit << shifts[k];
    }
    return idx;
  };

  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < out_dim; ++c) {
      const int rbase = expand(keep_shift, r);
      const int cbase = expand(keep_shift, c);
      Complex sum = 0.0;
      for (int t = 0; t < traced; ++t) {
        const int tbits = expand(trace_shift, t);
        sum += in(rbase | tbits, cbase | tbits);
      }
      out(r, c) = sum;
    }
  }
  return DensityMatrix(std::move(out));
}

// Spin-flipped matrix (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y) in the
// standard basis {|00>,|01>,|10>,|11>}.
inline Matrix spin_flip(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("spin_flip expects a 4-dimensional state");
  // sigma_y (x) sigma_y is the real antidiagonal (-1, 1, 1, -1).
  static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
  const Matrix& m = rho.matrix();
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out(i, j) = sign[i] * sign[j] * std::conj(m(3 - i, 3 - j));
  return out;
}

}  // namespace trient

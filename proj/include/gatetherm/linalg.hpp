#pragma once

// Fixed-size complex linear algebra for one- and two-qubit operators.
//
// Index convention for two-qubit objects: i = 2*psi_A + phi_B with
// psi, phi in {0, 1}. Single-qubit ordering is (|0>, |1>) and
// sigma_z = diag(-1, +1), so sigma_z|1> = +|1>.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gatetherm {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

template <std::size_t N>
struct SquareMatrix {
  std::array<Complex, N * N> data{};

  static constexpr std::size_t size() { return N; }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * N + c]; }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static SquareMatrix zero() { return SquareMatrix{}; }

  static SquareMatrix diagonal(const std::array<Complex, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] += o.data[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data[i] -= o.data[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& x : data) x *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend std::array<Complex, N> operator*(const SquareMatrix& a, const std::array<Complex, N>& v) {
    std::array<Complex, N> out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * v[c];
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

using Mat2 = SquareMatrix<2>;
using TwoQubitOperator = SquareMatrix<4>;
using TwoQubitState = std::array<Complex, 4>;

inline constexpr std::size_t basis_index(int psi_a, int phi_b) {
  return static_cast<std::size_t>(2 * psi_a + phi_b);
}

TwoQubitState basis_state(std::size_t index);
double norm_squared(const TwoQubitState& s);

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
/// diag(-1, +1) in the (|0>, |1>) ordering.
Mat2 z();
/// |k><k| for k in {0, 1}.
Mat2 projector(int k);
}  // namespace pauli

/// Kronecker product: result(2i+k, 2j+l) = a(i,j) * b(k,l).
TwoQubitOperator tensor(const Mat2& a, const Mat2& b);

/// Largest absolute entry of a - b.
template <std::size_t N>
double op_distance(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.data[i] - b.data[i]));
  return d;
}

template <std::size_t N>
bool is_hermitian(const SquareMatrix<N>& m, double tol = kDefaultTol) {
  return op_distance(m, m.adjoint()) <= tol;
}

template <std::size_t N>
bool is_unitary(const SquareMatrix<N>& m, double tol = kDefaultTol) {
  return op_distance(m.adjoint() * m, SquareMatrix<N>::identity()) <= tol;
}

struct HermitianEigen {
  std::array<double, 4> values{};  // ascending
  TwoQubitOperator vectors;        // column k is the eigenvector of values[k]
};

/// Cyclic complex Jacobi. Reconstruction V diag(values) V^dagger matches
/// the input to ~1e-14 for well-scaled inputs.
/// Throws std::invalid_argument when h is not Hermitian within kDefaultTol.
HermitianEigen eigh(const TwoQubitOperator& h);

/// exp(i * s * h) for Hermitian h.
TwoQubitOperator expm_hermitian(const TwoQubitOperator& h, double s);

enum class DensityViolation { kHermiticity, kTrace, kPositivity };

class DensityError : public std::invalid_argument {
 public:
  DensityError(DensityViolation which, const std::string& what)
      : std::invalid_argument(what), which_(which) {}
  DensityViolation which() const { return which_; }

 private:
  DensityViolation which_;
};

/// A validated two-qubit density operator: Hermitian, unit trace and
/// positive semidefinite, each within kDefaultTol.
class DensityOperator {
 public:
  const TwoQubitOperator& matrix() const { return m_; }
  double population(std::size_t i) const { return m_(i, i).real(); }

  friend DensityOperator validate_density(const TwoQubitOperator& r);

 private:
  explicit DensityOperator(const TwoQubitOperator& m) : m_(m) {}
  TwoQubitOperator m_;
};

/// Throws DensityError naming the first failing invariant.
DensityOperator validate_density(const TwoQubitOperator& r);

}  // namespace gatetherm

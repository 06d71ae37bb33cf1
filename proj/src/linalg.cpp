#include "gatetherm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gatetherm {

TwoQubitState basis_state(std::size_t index) {
  if (index >= 4) throw std::out_of_range("basis_state: index must be < 4");
  TwoQubitState s{};
  s[index] = 1.0;
  return s;
}

double norm_squared(const TwoQubitState& s) {
  double n = 0.0;
  for (const auto& a : s) n += std::norm(a);
  return n;
}

namespace pauli {

Mat2 identity() { return Mat2::identity(); }

Mat2 x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Mat2 y() {
  Mat2 m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

Mat2 z() { return Mat2::diagonal({-1.0, 1.0}); }

Mat2 projector(int k) {
  if (k != 0 && k != 1) throw std::out_of_range("projector: k must be 0 or 1");
  Mat2 m;
  m(k, k) = 1.0;
  return m;
}

}  // namespace pauli

TwoQubitOperator tensor(const Mat2& a, const Mat2& b) {
  TwoQubitOperator m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

namespace {

double off_diagonal_norm(const TwoQubitOperator& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

double frobenius(const TwoQubitOperator& a) {
  double s = 0.0;
  for (const auto& x : a.data) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

HermitianEigen eigh(const TwoQubitOperator& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("eigh: input is not Hermitian");

  // Symmetrize so that round-off in the input does not leak into the sweep.
  TwoQubitOperator a = (h + h.adjoint()) * Complex(0.5);
  TwoQubitOperator v = TwoQubitOperator::identity();
  const double scale = std::max(frobenius(a), 1e-300);

  for (int sweep = 0; sweep < 64 && off_diagonal_norm(a) > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;

        // Unitary rotation zeroing a(p,q): with apq = |apq| e^{i phi},
        // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] acting on columns p, q.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex sp = s * phase;
        const Complex sp_conj = std::conj(sp);

        // a <- a J
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - sp_conj * akq;
          a(k, q) = sp * akp + c * akq;
        }
        // a <- J^dagger a
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = sp_conj * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // v <- v J
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - sp_conj * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, 4> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < 4; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

TwoQubitOperator expm_hermitian(const TwoQubitOperator& h, double s) {
  const HermitianEigen e = eigh(h);
  std::array<Complex, 4> phases{};
  for (std::size_t k = 0; k < 4; ++k) phases[k] = std::polar(1.0, s * e.values[k]);
  return e.vectors * TwoQubitOperator::diagonal(phases) * e.vectors.adjoint();
}

DensityOperator validate_density(const TwoQubitOperator& r) {
  if (!is_hermitian(r))
    throw DensityError(DensityViolation::kHermiticity, "density operator is not Hermitian");
  const Complex tr = r.trace();
  if (std::abs(tr - Complex(1.0)) > kDefaultTol)
    throw DensityError(DensityViolation::kTrace,
                       "density operator trace " + std::to_string(tr.real()) + " != 1");
  const HermitianEigen e = eigh(r);
  if (e.values[0] < -kDefaultTol)
    throw DensityError(DensityViolation::kPositivity,
                       "density operator has negative eigenvalue " + std::to_string(e.values[0]));
  return DensityOperator(r);
}

}  // namespace gatetherm

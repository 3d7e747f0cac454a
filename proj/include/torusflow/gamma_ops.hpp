#pragma once

#include "torusflow/discrete_calculus.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace torusflow {

inline void require_1d(const TorusGrid& g) {
  if (g.dim() != 1) throw std::invalid_argument("operation requires a 1-D grid");
}

/// Periodic shifts tau_+ (index k -> k+1) and tau_-.
inline GridFunction shift_plus(const GridFunction& u) {
  require_1d(u.grid);
  GridFunction out(u.grid);
  const Index k = u.size();
  for (Index i = 0; i < k; ++i) out.values[i] = u.values[(i + 1) % k];
  return out;
}

inline GridFunction shift_minus(const GridFunction& u) {
  require_1d(u.grid);
  GridFunction out(u.grid);
  const Index k = u.size();
  for (Index i = 0; i < k; ++i) out.values[i] = u.values[(i + k - 1) % k];
  return out;
}

/// Real spectral multiplier for 1-D circulant operators, diagonalized by the
/// discrete Fourier basis. The symbol must satisfy s_{k-l} = s_l so the
/// action maps real vectors to real vectors.
class SpectralCirculant {
public:
  SpectralCirculant(Index k, Eigen::VectorXd symbol) : k_(k), symbol_(std::move(symbol)) {
    if (symbol_.size() != k_) throw std::invalid_argument("SpectralCirculant: symbol size");
  }

  const Eigen::VectorXd& symbol() const { return symbol_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return transform(u, symbol_); }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    return transform(b, symbol_.cwiseInverse());
  }

private:
  Eigen::VectorXd transform(const Eigen::VectorXd& u, const Eigen::VectorXd& multiplier) const {
    if (u.size() != k_) throw std::invalid_argument("SpectralCirculant: vector size");
    std::vector<std::complex<double>> freq(k_);
    std::vector<double> time(u.data(), u.data() + k_);
    fft_.fwd(freq, time);
    for (Index l = 0; l < k_; ++l) freq[l] *= multiplier[l];
    std::vector<double> out(k_);
    fft_.inv(out, freq);
    return Eigen::Map<Eigen::VectorXd>(out.data(), k_);
  }

  Index k_;
  Eigen::VectorXd symbol_;
  mutable Eigen::FFT<double> fft_;  // caches twiddle plans across applies
};

/// Eigenvalues gamma_l = (2 + cos(2 pi h l)) / 3, l = 0..k-1.
inline Eigen::VectorXd gamma_spectrum(Index k) {
  Eigen::VectorXd s(k);
  for (Index l = 0; l < k; ++l) s[l] = (2.0 + std::cos(2.0 * M_PI * l / double(k))) / 3.0;
  return s;
}

/// Symbol of the 1-D graph Laplacian: (2 cos(2 pi l / k) - 2) / h^2.
inline Eigen::VectorXd laplacian_spectrum(Index k) {
  const double h = 1.0 / double(k);
  Eigen::VectorXd s(k);
  for (Index l = 0; l < k; ++l)
    s[l] = (2.0 * std::cos(2.0 * M_PI * l / double(k)) - 2.0) / (h * h);
  return s;
}

/// (Gamma u)_k = (2/3) u_k + (1/6)(u_{k-1} + u_{k+1}), periodic.
inline GridFunction gamma_apply(const GridFunction& u) {
  require_1d(u.grid);
  GridFunction out(u.grid);
  const Index k = u.size();
  for (Index i = 0; i < k; ++i) {
    out.values[i] = (2.0 / 3.0) * u.values[i] +
                    (u.values[(i + k - 1) % k] + u.values[(i + 1) % k]) / 6.0;
  }
  return out;
}

inline GridFunction gamma_solve(const GridFunction& b) {
  require_1d(b.grid);
  const Index k = b.size();
  SpectralCirculant op(k, gamma_spectrum(k));
  return GridFunction(b.grid, op.solve(b.values));
}

inline GridFunction gamma_sqrt_apply(const GridFunction& u) {
  require_1d(u.grid);
  const Index k = u.size();
  SpectralCirculant op(k, gamma_spectrum(k).cwiseSqrt());
  return GridFunction(u.grid, op.apply(u.values));
}

/// Dense circulant matrix of Gamma (test/cross-check path).
inline Eigen::MatrixXd gamma_matrix(Index k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    m(i, i) += 2.0 / 3.0;
    m(i, (i + 1) % k) += 1.0 / 6.0;
    m(i, (i + k - 1) % k) += 1.0 / 6.0;
  }
  return m;
}

/// Gamma^{-1} b by dense cyclic-tridiagonal elimination (cross-check path).
inline GridFunction gamma_solve_dense(const GridFunction& b) {
  require_1d(b.grid);
  const Index k = b.size();
  Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(gamma_matrix(k)).solve(b.values);
  return GridFunction(b.grid, x);
}

inline constexpr Index kGammaExpSizeGuard = 4096;

/// e^{Gamma x} by the cosine-sum spectral formula.
inline Eigen::MatrixXd gamma_exp(double x, Index k) {
  if (k < 2 || k > kGammaExpSizeGuard) throw std::invalid_argument("gamma_exp: size out of range");
  if (!std::isfinite(x)) throw std::invalid_argument("gamma_exp: x must be finite");
  const double h = 1.0 / double(k);
  Eigen::VectorXd radial(k);  // entry depends only on (i - j) mod k
  for (Index d = 0; d < k; ++d) {
    double s = 0.0;
    for (Index l = 0; l < k; ++l)
      s += std::exp(std::cos(2.0 * M_PI * h * l) * x / 3.0) * std::cos(2.0 * M_PI * h * l * d);
    radial[d] = h * std::exp(2.0 * x / 3.0) * s;
  }
  Eigen::MatrixXd m(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) m(i, j) = radial[((i - j) % k + k) % k];
  return m;
}

/// B_l(x) = sum_m (x/6)^{m k + l} / (m k + l)!, truncated when the next term
/// is below 1e-15 of the partial sum for every l.
inline Eigen::VectorXd gamma_exp_series_coeffs(double x, Index k, int term_cap = 512) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  const double y = x / 6.0;
  // walk the full power series of exp at y, binning exponents modulo k
  double term = 1.0;  // y^0 / 0!
  bool converged = false;
  for (int p = 0; p < term_cap * k; ++p) {
    b[p % k] += term;
    if (p > 0 && p % k == 0) {
      double scale = b.cwiseAbs().maxCoeff();
      if (std::abs(term) < 1e-15 * std::max(scale, 1.0)) {
        converged = true;
        break;
      }
    }
    term *= y / double(p + 1);
  }
  if (!converged) throw std::runtime_error("gamma_exp_series: series did not converge within cap");
  return b;
}

/// e^{Gamma x} by the binned power-series formula (independent of the
/// spectral path).
inline Eigen::MatrixXd gamma_exp_series(double x, Index k, int term_cap = 512) {
  if (k < 2 || k > kGammaExpSizeGuard) throw std::invalid_argument("gamma_exp_series: size out of range");
  const Eigen::VectorXd b = gamma_exp_series_coeffs(x, k, term_cap);
  Eigen::MatrixXd m(k, k);
  const double pre = std::exp(2.0 * x / 3.0);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      double s = 0.0;
      for (Index l = 0; l < k; ++l) s += b[l] * b[(l + j - i + 2 * k) % k];
      m(i, j) = pre * s;
    }
  return m;
}

}  // namespace torusflow

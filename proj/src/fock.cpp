#include "otcss/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "otcss/error.hpp"

namespace otcss::fock {

namespace {

using cd = std::complex<double>;
using SparseC = Eigen::SparseMatrix<cd>;
using SparseD = Eigen::SparseMatrix<double>;

constexpr double kMaxStateDeficit = 1e-6;
constexpr double kMomentDeficit = 1e-8;
constexpr int kMinExponentialCutoff = 10;
constexpr int kMaxTaylorTerms = 80;

int padding(int cutoff) { return std::max(10, cutoff / 4); }

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be positive");
}

void require_small_deficit(const FockState2& state) {
  if (!(state.norm_deficit < kMomentDeficit)) {
    throw CutoffTooSmall(state.cutoff, state.norm_deficit);
  }
}

Eigen::MatrixXcd single_mode_quadrature(bool momentum, int cutoff) {
  const Eigen::MatrixXd a = annihilation(cutoff);
  const Eigen::MatrixXd ad = a.transpose();
  if (!momentum) return ((a + ad) / std::numbers::sqrt2).cast<cd>();
  return cd(0.0, -1.0) * ((a - ad) / std::numbers::sqrt2).cast<cd>();
}

SparseC kron_sparse(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right) {
  const SparseC l = left.sparseView();
  const SparseC r = right.sparseView();
  SparseC out = Eigen::kroneckerProduct(l, r).eval();
  out.makeCompressed();
  return out;
}

Eigen::MatrixXcd identity(int cutoff) { return Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1); }

// Copies the amplitudes into a larger zero-filled matrix.
Eigen::MatrixXcd zero_padded(const FockState2& state, int dim) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
  const int n = state.cutoff + 1;
  c.topLeftCorner(n, n) = state.amplitudes;
  return c;
}

void require_displacement(const FockState2& state, const PhasePoint4& x) {
  const double limit = state.cutoff / 4.0;
  const double a = std::abs(x.alpha());
  const double b = std::abs(x.beta());
  if (a > limit || b > limit) {
    throw DisplacementTooLarge("displacement magnitude " + std::to_string(std::max(a, b)) +
                               " exceeds cutoff/4 = " + std::to_string(limit));
  }
}

int displacement_dim(const FockState2& state, const PhasePoint4& x) {
  const double r = std::max(std::abs(x.alpha()), std::abs(x.beta()));
  return state.cutoff + padding(state.cutoff) + static_cast<int>(std::ceil(r * r + 6.0 * r)) + 1;
}

// v <- exp(K) v for a real sparse K by a scaled Taylor action.
Eigen::VectorXd expm_action(const SparseD& k, Eigen::VectorXd v) {
  double norm1 = 0.0;
  for (int col = 0; col < k.outerSize(); ++col) {
    double s = 0.0;
    for (SparseD::InnerIterator it(k, col); it; ++it) s += std::abs(it.value());
    norm1 = std::max(norm1, s);
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(norm1)));
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd term = v;
    Eigen::VectorXd sum = v;
    const double scale = v.norm();
    for (int j = 1; j <= kMaxTaylorTerms; ++j) {
      term = (h / j) * (k * term);
      sum += term;
      if (term.norm() <= 1e-18 * scale) break;
    }
    v = std::move(sum);
  }
  return v;
}

}  // namespace

Eigen::MatrixXd annihilation(int cutoff) {
  require_cutoff(cutoff);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

TruncatedOperator quadrature_operator(Quadrature which, int cutoff) {
  require_cutoff(cutoff);
  const bool momentum = which == Quadrature::p1 || which == Quadrature::p2;
  const Eigen::MatrixXcd x = single_mode_quadrature(momentum, cutoff);
  TruncatedOperator op;
  op.cutoff = cutoff;
  switch (which) {
    case Quadrature::q1:
      op.label = "Q1";
      op.matrix = kron_sparse(x, identity(cutoff));
      break;
    case Quadrature::p1:
      op.label = "P1";
      op.matrix = kron_sparse(x, identity(cutoff));
      break;
    case Quadrature::q2:
      op.label = "Q2";
      op.matrix = kron_sparse(identity(cutoff), x);
      break;
    case Quadrature::p2:
      op.label = "P2";
      op.matrix = kron_sparse(identity(cutoff), x);
      break;
  }
  return op;
}

TruncatedOperator parity_operator(int cutoff) {
  require_cutoff(cutoff);
  const int d = cutoff + 1;
  TruncatedOperator op;
  op.cutoff = cutoff;
  op.label = "parity";
  op.matrix.resize(d * d, d * d);
  op.matrix.reserve(Eigen::VectorXi::Constant(d * d, 1));
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) op.matrix.insert(m * d + n, m * d + n) = ((m + n) % 2 == 0) ? 1.0 : -1.0;
  }
  op.matrix.makeCompressed();
  return op;
}

TruncatedOperator generator_operator(const OtcssParams& params, int cutoff) {
  require_cutoff(cutoff);
  const Eigen::MatrixXcd q = single_mode_quadrature(false, cutoff);
  const Eigen::MatrixXcd p = single_mode_quadrature(true, cutoff);
  TruncatedOperator op;
  op.cutoff = cutoff;
  op.label = "generator";
  op.matrix = params.lambda1() * kron_sparse(q, p) + params.lambda2() * kron_sparse(p, q);
  op.matrix.makeCompressed();
  return op;
}

Eigen::MatrixXcd single_mode_displacement(cd alpha, int cutoff) {
  require_cutoff(cutoff);
  const Eigen::MatrixXcd a = annihilation(cutoff).cast<cd>();
  // exp(alpha a^dag - alpha* a) = exp(-i H), H = i(alpha a^dag - alpha* a).
  Eigen::MatrixXcd h = cd(0.0, 1.0) * (alpha * a.adjoint() - std::conj(alpha) * a);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::VectorXcd phases =
      eig.eigenvalues().unaryExpr([](double e) { return std::exp(cd(0.0, -e)); });
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

TruncatedOperator displacement_operator(cd alpha, cd beta, int cutoff) {
  TruncatedOperator op;
  op.cutoff = cutoff;
  op.label = "displacement";
  op.matrix = kron_sparse(single_mode_displacement(alpha, cutoff),
                          single_mode_displacement(beta, cutoff));
  return op;
}

FockState2 build_state_exponential(const OtcssParams& params, int cutoff) {
  if (cutoff < kMinExponentialCutoff) {
    throw InvalidArgument("exponential construction needs cutoff >= " +
                          std::to_string(kMinExponentialCutoff));
  }
  const int big = cutoff + padding(cutoff);
  const int d = big + 1;

  // -iG is real: Q is real symmetric and -iP = -(a - a^dag)/sqrt(2) is real.
  const Eigen::MatrixXd a = annihilation(big);
  const Eigen::MatrixXd q = (a + a.transpose()) / std::numbers::sqrt2;
  const Eigen::MatrixXd mip = -(a - a.transpose()) / std::numbers::sqrt2;
  const SparseD qs = q.sparseView();
  const SparseD ps = mip.sparseView();
  SparseD k = params.lambda1() * SparseD(Eigen::kroneckerProduct(qs, ps)) +
              params.lambda2() * SparseD(Eigen::kroneckerProduct(ps, qs));
  k.makeCompressed();

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d) * d);
  v(0) = 1.0;
  v = expm_action(k, std::move(v));

  FockState2 state;
  state.cutoff = cutoff;
  state.amplitudes.resize(cutoff + 1, cutoff + 1);
  for (int m = 0; m <= cutoff; ++m) {
    for (int n = 0; n <= cutoff; ++n) state.amplitudes(m, n) = v(m * d + n);
  }
  state.norm_deficit = std::max(0.0, 1.0 - state.norm_squared());
  if (state.norm_deficit > kMaxStateDeficit) throw CutoffTooSmall(cutoff, state.norm_deficit);
  return state;
}

FockState2 vacuum_state(int cutoff) {
  require_cutoff(cutoff);
  FockState2 state;
  state.cutoff = cutoff;
  state.amplitudes = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  state.amplitudes(0, 0) = 1.0;
  return state;
}

cd state_overlap(const FockState2& a, const FockState2& b) {
  const int n = std::min(a.cutoff, b.cutoff) + 1;
  return (a.amplitudes.topLeftCorner(n, n).conjugate().cwiseProduct(b.amplitudes.topLeftCorner(n, n)))
      .sum();
}

double normalized_overlap(const FockState2& a, const FockState2& b) {
  const double na = a.amplitudes.norm();
  const double nb = b.amplitudes.norm();
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("overlap of a zero state");
  return std::abs(state_overlap(a, b)) / (na * nb);
}

Eigen::Vector4d first_moments(const FockState2& state) {
  const int dim = state.cutoff + 2;
  const Eigen::MatrixXcd c = zero_padded(state, dim);
  const Eigen::MatrixXcd q = single_mode_quadrature(false, dim - 1);
  const Eigen::MatrixXcd p = single_mode_quadrature(true, dim - 1);
  const auto expect = [&](const Eigen::MatrixXcd& xc) { return c.conjugate().cwiseProduct(xc).sum().real(); };
  return {expect(q * c), expect(p * c), expect(c * q.transpose()), expect(c * p.transpose())};
}

CovMatrix4 covariance_numeric(const FockState2& state) {
  require_small_deficit(state);
  const int dim = state.cutoff + 3;
  const Eigen::MatrixXcd c = zero_padded(state, dim);
  const Eigen::MatrixXcd q = single_mode_quadrature(false, dim - 1);
  const Eigen::MatrixXcd p = single_mode_quadrature(true, dim - 1);
  const Eigen::MatrixXcd applied[4] = {q * c, p * c, c * q.transpose(), c * p.transpose()};

  const Eigen::Vector4d mean = first_moments(state);
  Eigen::Matrix4d s;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      // Re <X_i psi|X_j psi> = <{X_i, X_j}>/2 for Hermitian X.
      const double second = applied[i].conjugate().cwiseProduct(applied[j]).sum().real();
      s(i, j) = s(j, i) = second - mean(i) * mean(j);
    }
  }
  return CovMatrix4(s);
}

double wigner_numeric(const FockState2& state, const PhasePoint4& x) {
  require_displacement(state, x);
  const int dim = displacement_dim(state, x);
  const Eigen::MatrixXcd c = zero_padded(state, dim);
  const Eigen::MatrixXcd d1 = single_mode_displacement(x.alpha(), dim - 1);
  const Eigen::MatrixXcd d2 = single_mode_displacement(x.beta(), dim - 1);
  const Eigen::MatrixXcd phi = d1.adjoint() * c * d2.conjugate();
  double sum = 0.0;
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) sum += (((m + n) % 2 == 0) ? 1.0 : -1.0) * std::norm(phi(m, n));
  }
  return sum / (std::numbers::pi * std::numbers::pi);
}

cd cf_numeric(const FockState2& state, const PhasePoint4& x) {
  require_displacement(state, x);
  const int dim = displacement_dim(state, x);
  const Eigen::MatrixXcd c = zero_padded(state, dim);
  const Eigen::MatrixXcd d1 = single_mode_displacement(x.alpha(), dim - 1);
  const Eigen::MatrixXcd d2 = single_mode_displacement(x.beta(), dim - 1);
  return c.conjugate().cwiseProduct(d1 * c * d2.transpose()).sum();
}

double log_negativity_numeric(const FockState2& state) {
  require_small_deficit(state);
  const int d = state.cutoff + 1;
  const Eigen::MatrixXcd& c = state.amplitudes;
  const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;

  // rho^(T2)_{(m,n),(m',n')} = rho_{(m,n'),(m',n)} = c(m,n') conj(c(m',n)).
  const bool real = c.imag().cwiseAbs().maxCoeff() == 0.0;
  double trace_norm = 0.0;
  if (real) {
    const Eigen::MatrixXd cr = c.real();
    Eigen::MatrixXd pt(dim, dim);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        for (int mp = 0; mp < d; ++mp)
          for (int np = 0; np < d; ++np) pt(m * d + n, mp * d + np) = cr(m, np) * cr(mp, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pt, Eigen::EigenvaluesOnly);
    trace_norm = eig.eigenvalues().cwiseAbs().sum();
  } else {
    Eigen::MatrixXcd pt(dim, dim);
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        for (int mp = 0; mp < d; ++mp)
          for (int np = 0; np < d; ++np)
            pt(m * d + n, mp * d + np) = c(m, np) * std::conj(c(mp, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(pt, Eigen::EigenvaluesOnly);
    trace_norm = eig.eigenvalues().cwiseAbs().sum();
  }
  return std::log(trace_norm);
}

}  // namespace otcss::fock

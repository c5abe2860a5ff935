#pragma once

// Brute-force truncated Fock-space oracle. A two-mode state is stored as the
// (N+1)x(N+1) amplitude matrix C with C(m, n) = <m, n|psi>; an operator A (x) B
// acts as C -> A C B^T. Flattened vectors use index m (N+1) + n.

#include <complex>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "otcss/fock_state.hpp"
#include "otcss/gaussian.hpp"
#include "otcss/model.hpp"

namespace otcss::fock {

enum class Quadrature { q1, p1, q2, p2 };

struct TruncatedOperator {
  Eigen::SparseMatrix<std::complex<double>> matrix;
  std::string label;
  int cutoff = 0;
};

/// Single-mode annihilation operator on photon numbers 0..cutoff.
Eigen::MatrixXd annihilation(int cutoff);

TruncatedOperator quadrature_operator(Quadrature which, int cutoff);

/// (-1)^(n1 + n2).
TruncatedOperator parity_operator(int cutoff);

/// G = lambda1 Q1 P2 + lambda2 Q2 P1, Hermitian.
TruncatedOperator generator_operator(const OtcssParams& params, int cutoff);

/// exp(alpha a^dag - alpha* a) on a single mode, exponentiated in the
/// truncated space through a Hermitian eigendecomposition.
Eigen::MatrixXcd single_mode_displacement(std::complex<double> alpha, int cutoff);

/// D1(alpha) D2(beta) embedded in the two-mode space.
TruncatedOperator displacement_operator(std::complex<double> alpha, std::complex<double> beta,
                                        int cutoff);

/// exp(-iG)|00> with G truncated at cutoff + max(10, cutoff/4), then projected
/// onto photon numbers <= cutoff. Never renormalised. Requires cutoff >= 10;
/// throws CutoffTooSmall if the projection loses more than 1e-6.
FockState2 build_state_exponential(const OtcssParams& params, int cutoff);

/// The product vacuum |00>.
FockState2 vacuum_state(int cutoff);

/// <a|b> over the common photon-number range.
std::complex<double> state_overlap(const FockState2& a, const FockState2& b);

/// |<a|b>| / (|a| |b|).
double normalized_overlap(const FockState2& a, const FockState2& b);

/// <X_i> in (q1, p1, q2, p2) order. Ladder operators act exactly on a
/// zero-padded copy, so there is no truncation error beyond the state itself.
Eigen::Vector4d first_moments(const FockState2& state);

/// Symmetrised second moments minus products of means. Requires
/// norm_deficit < 1e-8.
CovMatrix4 covariance_numeric(const FockState2& state);

/// (1/pi^2) <psi| D1 D2 (-1)^(n1+n2) D2^dag D1^dag |psi>. Displacements are
/// built with padding above the cutoff; |alpha|, |beta| <= cutoff/4.
double wigner_numeric(const FockState2& state, const PhasePoint4& x);

/// <psi| D1(alpha) D2(beta) |psi>.
std::complex<double> cf_numeric(const FockState2& state, const PhasePoint4& x);

/// ln || rho^(T2) ||_1 from the eigenvalues of the partially transposed
/// density matrix. Requires norm_deficit < 1e-8.
double log_negativity_numeric(const FockState2& state);

}  // namespace otcss::fock

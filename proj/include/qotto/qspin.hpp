#pragma once

#include <variant>

#include "qotto/complex_mat2.hpp"
#include "qotto/ramp_protocol.hpp"

// Units: h = 1. Hamiltonian entries are in Hz, inverse temperatures in 1/Hz.
namespace qotto {

enum class Axis { x, y, z };
enum class Stroke { cold, hot };

ComplexMat2 pauli(Axis axis);

/// -nu/2 sigma_x (cold) or -nu/2 sigma_y (hot).
ComplexMat2 stroke_hamiltonian(Stroke kind, double nu);

/// Expansion: H(t) = -nu(t)/2 [cos(pi t / 2 tau) sigma_x + sin(pi t / 2 tau) sigma_y].
/// Compression: -H_exp(tau - t). Endpoints are exact.
ComplexMat2 ramp_hamiltonian(const RampProtocol& proto, double t, RampDirection direction);

/// Inverse temperature from excited-state population, beta = ln((1-p)/p) / nu.
double beta_from_population(double p_plus, double nu);

/// Excited-state population 1/(exp(beta nu) + 1), evaluated overflow-free.
double population_from_beta(double beta, double nu);

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  static constexpr double tolerance = 1e-12;

  /// Throws domain_error if any invariant is violated.
  explicit DensityMatrix(const ComplexMat2& m);

  /// Hermitian part of m rescaled to unit trace; for printed/measured data
  /// that is only approximately normalized. Positivity is still enforced.
  static DensityMatrix from_measured(const ComplexMat2& m);

  const ComplexMat2& mat() const { return mat_; }
  complex operator()(int r, int c) const { return mat_(r, c); }

  double purity() const { return trace_product(mat_, mat_).real(); }

 private:
  struct unchecked {};
  DensityMatrix(const ComplexMat2& m, unchecked) : mat_(m) {}
  ComplexMat2 mat_;
};

/// exp(-beta H) / Tr exp(-beta H) by spectral decomposition.
DensityMatrix gibbs_state(const ComplexMat2& H, double beta);

/// rho -> U rho U^dag
DensityMatrix conjugate(const ComplexMat2& U, const DensityMatrix& rho);

struct Eigenbasis {
  Vec2 plus;
  Vec2 minus;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
};

/// Eigenvectors of a Hermitian 2x2 matrix. `plus` carries the larger
/// eigenvalue; each vector's first nonzero component is real positive.
Eigenbasis eigenbasis(const ComplexMat2& H);

/// One reservoir: its frequency and a temperature given either as an
/// inverse temperature or as an excited-state population.
class ReservoirSpec {
 public:
  struct Beta {
    double value;
  };
  struct Population {
    double value;
  };

  static ReservoirSpec from_beta(double nu, double beta);
  /// p_plus in [0, 1]; the endpoints are representable (beta is then infinite).
  static ReservoirSpec from_population(double nu, double p_plus);

  double nu() const { return nu_; }
  /// Throws infinite_temperature_error for p_plus in {0, 1}.
  double beta() const;
  double p_plus() const;
  /// tanh(beta nu / 2) = 1 - 2 p_plus, finite even where beta is not.
  double tanh_half() const;
  bool given_as_population() const { return std::holds_alternative<Population>(temp_); }

 private:
  ReservoirSpec(double nu, std::variant<Beta, Population> t) : nu_(nu), temp_(t) {}
  double nu_;
  std::variant<Beta, Population> temp_;
};

}  // namespace qotto

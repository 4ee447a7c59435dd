#include "qotto/qspin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

namespace {

constexpr complex I{0.0, 1.0};

// H = c0 I + n . sigma
struct PauliDecomposition {
  double c0, nx, ny, nz;
};

PauliDecomposition decompose(const ComplexMat2& H) {
  return {0.5 * (H.a[0] + H.a[3]).real(), 0.5 * (H.a[1] + H.a[2]).real(),
          0.5 * (H.a[2] - H.a[1]).imag(), 0.5 * (H.a[0] - H.a[3]).real()};
}

void require_hermitian(const ComplexMat2& H, const char* what) {
  if (!H.is_finite())
    throw domain_error(std::string(what) + ": matrix has non-finite entries");
  if (hermiticity_defect(H) > 1e-12 * std::max(1.0, H.max_abs()))
    throw domain_error(std::string(what) + ": matrix is not Hermitian");
}

Vec2 normalized_with_phase(Vec2 v) {
  const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  v[0] /= norm;
  v[1] /= norm;
  // first nonzero component real positive
  const complex lead = std::abs(v[0]) > 1e-14 ? v[0] : v[1];
  const complex phase = std::conj(lead) / std::abs(lead);
  v[0] *= phase;
  v[1] *= phase;
  if (std::abs(v[0]) > 1e-14)
    v[0] = std::abs(v[0]);
  else
    v[1] = std::abs(v[1]);
  return v;
}

// Eigenvector of n.sigma for eigenvalue sign*|n|. Two algebraically
// equivalent forms; the larger one is used to avoid cancellation.
Vec2 pauli_eigenvector(double nx, double ny, double nz, double r, double sign) {
  const Vec2 a{nz + sign * r, complex(nx, ny)};
  const Vec2 b{complex(nx, -ny), sign * r - nz};
  const double na = std::norm(a[0]) + std::norm(a[1]);
  const double nb = std::norm(b[0]) + std::norm(b[1]);
  return normalized_with_phase(na >= nb ? a : b);
}

}  // namespace

ComplexMat2 pauli(Axis axis) {
  switch (axis) {
    case Axis::x:
      return {0.0, 1.0, 1.0, 0.0};
    case Axis::y:
      return {0.0, -I, I, 0.0};
    case Axis::z:
      return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

ComplexMat2 stroke_hamiltonian(Stroke kind, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw domain_error("stroke_hamiltonian: nu must be positive and finite");
  return -0.5 * nu * pauli(kind == Stroke::cold ? Axis::x : Axis::y);
}

ComplexMat2 ramp_hamiltonian(const RampProtocol& proto, double t, RampDirection direction) {
  if (!(t >= 0.0 && t <= proto.tau))
    throw domain_error("ramp_hamiltonian: t outside [0, tau]");
  // Endpoints returned verbatim so H(0) and H(tau) are exact.
  if (direction == RampDirection::compression) {
    const double s = proto.tau - t;
    if (t == 0.0) return -stroke_hamiltonian(Stroke::hot, proto.nu_hot);
    if (t == proto.tau) return -stroke_hamiltonian(Stroke::cold, proto.nu_cold);
    return -ramp_hamiltonian(proto, s, RampDirection::expansion);
  }
  if (t == 0.0) return stroke_hamiltonian(Stroke::cold, proto.nu_cold);
  if (t == proto.tau) return stroke_hamiltonian(Stroke::hot, proto.nu_hot);
  const double angle = std::numbers::pi * t / (2.0 * proto.tau);
  const double nu = proto.frequency_at(t);
  return -0.5 * nu * (std::cos(angle) * pauli(Axis::x) + std::sin(angle) * pauli(Axis::y));
}

double beta_from_population(double p_plus, double nu) {
  if (!(nu > 0.0)) throw domain_error("beta_from_population: nu must be positive");
  if (p_plus == 0.0 || p_plus == 1.0)
    throw infinite_temperature_error("beta_from_population: p_plus in {0,1} gives |beta| = inf");
  if (!(p_plus > 0.0 && p_plus < 1.0))
    throw domain_error("beta_from_population: p_plus outside (0,1)");
  return std::log((1.0 - p_plus) / p_plus) / nu;
}

double population_from_beta(double beta, double nu) {
  if (!(nu > 0.0)) throw domain_error("population_from_beta: nu must be positive");
  return 0.5 * (1.0 - std::tanh(0.5 * beta * nu));
}

DensityMatrix::DensityMatrix(const ComplexMat2& m) : mat_(m) {
  if (!m.is_finite()) throw domain_error("DensityMatrix: non-finite entries");
  if (hermiticity_defect(m) > tolerance) throw domain_error("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - 1.0) > tolerance) throw domain_error("DensityMatrix: trace != 1");
  // For a Hermitian unit-trace 2x2, eigenvalues are 1/2 +- r.
  const auto d = decompose(m);
  const double r = std::hypot(d.nx, d.ny, d.nz);
  if (0.5 - r < -tolerance) throw domain_error("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_measured(const ComplexMat2& m) {
  ComplexMat2 h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw domain_error("DensityMatrix::from_measured: non-positive trace");
  h *= 1.0 / tr;
  return DensityMatrix(h);
}

DensityMatrix gibbs_state(const ComplexMat2& H, double beta) {
  require_hermitian(H, "gibbs_state");
  if (!std::isfinite(beta)) throw domain_error("gibbs_state: beta must be finite");
  const auto d = decompose(H);
  const double r = std::hypot(d.nx, d.ny, d.nz);
  if (beta == 0.0 || r <= 1e-300) {
    return DensityMatrix(0.5 * ComplexMat2::identity());
  }
  // exp(-beta H) / Z = (I - tanh(beta r) n.sigma / r) / 2; the identity
  // shift c0 cancels in the normalization and tanh never overflows.
  const double k = -std::tanh(beta * r) / r;
  ComplexMat2 rho{0.5 * (1.0 + k * d.nz), 0.5 * k * complex(d.nx, -d.ny),
                  0.5 * k * complex(d.nx, d.ny), 0.5 * (1.0 - k * d.nz)};
  return DensityMatrix(rho);
}

DensityMatrix conjugate(const ComplexMat2& U, const DensityMatrix& rho) {
  ComplexMat2 out = U * rho.mat() * U.adjoint();
  // Remove round-off asymmetry so the result validates.
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(out);
}

Eigenbasis eigenbasis(const ComplexMat2& H) {
  require_hermitian(H, "eigenbasis");
  const auto d = decompose(H);
  const double r = std::hypot(d.nx, d.ny, d.nz);
  if (r <= 1e-14 * std::max(H.max_abs(), 1e-300))
    throw degeneracy_error("eigenbasis: degenerate spectrum");
  Eigenbasis eb;
  eb.plus = pauli_eigenvector(d.nx, d.ny, d.nz, r, +1.0);
  eb.minus = pauli_eigenvector(d.nx, d.ny, d.nz, r, -1.0);
  eb.energy_plus = d.c0 + r;
  eb.energy_minus = d.c0 - r;
  return eb;
}

ReservoirSpec ReservoirSpec::from_beta(double nu, double beta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw domain_error("ReservoirSpec: nu must be positive");
  if (!std::isfinite(beta)) throw domain_error("ReservoirSpec: beta must be finite");
  return {nu, Beta{beta}};
}

ReservoirSpec ReservoirSpec::from_population(double nu, double p_plus) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw domain_error("ReservoirSpec: nu must be positive");
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw domain_error("ReservoirSpec: p_plus outside [0,1]");
  return {nu, Population{p_plus}};
}

double ReservoirSpec::beta() const {
  if (const auto* b = std::get_if<Beta>(&temp_)) return b->value;
  return beta_from_population(std::get<Population>(temp_).value, nu_);
}

double ReservoirSpec::p_plus() const {
  if (const auto* p = std::get_if<Population>(&temp_)) return p->value;
  return population_from_beta(std::get<Beta>(temp_).value, nu_);
}

double ReservoirSpec::tanh_half() const {
  if (const auto* p = std::get_if<Population>(&temp_)) return 1.0 - 2.0 * p->value;
  return std::tanh(0.5 * std::get<Beta>(temp_).value * nu_);
}

}  // namespace qotto

#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fermient/fock.hpp"

namespace fermient {

enum class ModelKind { FreeChain, Hubbard, EksDimer };
enum class Boundary { Open, Periodic };

inline constexpr int kMaxSpinlessSites = 16;
inline constexpr int kMaxSpinfulSites = 8;

/// Parameters of the three lattice models. EksDimer forces L = 2 and ignores
/// t, u and mu (half filling, zero chemical potential).
struct ModelSpec {
  ModelKind kind = ModelKind::FreeChain;
  int sites = 2;
  double t = 1.0;
  double u = 0.0;
  double mu = 0.0;
  Boundary boundary = Boundary::Periodic;

  bool spinful() const { return kind != ModelKind::FreeChain; }
  int num_modes() const { return spinful() ? 2 * sites : sites; }
  /// True when the chemical potential term -mu*N is part of H itself; thermal
  /// sums must then not apply a grand-canonical mu weight on top.
  bool mu_in_hamiltonian() const {
    return kind != ModelKind::EksDimer && mu != 0.0;
  }
};

void check_model_caps(const ModelSpec& spec);

/// Second-quantized Hamiltonian for FreeChain and Hubbard. The EKS dimer is
/// defined by its graded-swap action and has no expression form here.
OperatorExpr hamiltonian_expr(const ModelSpec& spec);

/// Dense Hermitian realization in the given basis (any of the three kinds).
Eigen::MatrixXcd hamiltonian_matrix(const ModelSpec& spec, const FockBasis& basis);

/// Graded permutator action on a pair of local site states:
/// phase -1 iff both parities are odd, and the pair is swapped.
std::pair<int, std::pair<LocalState, LocalState>> eks_apply(LocalState a,
                                                            LocalState b);

/// Strictly increasing momentum-mode indices l, each standing for
/// k = 2*pi*l/L.
struct MomentumTuple {
  std::vector<int> modes;
};

/// N-particle eigenstate of the periodic free chain built from Fourier
/// creators, as a full-basis vector. Duplicate momenta are a domain error.
StateVector momentum_eigenstate(int sites, const MomentumTuple& tuple);

/// Energy -2t sum cos(k_m) - mu*N of a momentum eigenstate.
double momentum_energy(const ModelSpec& spec, const MomentumTuple& tuple);

double alpha_plus(double x);
double alpha_minus(double x);

/// Hubbard-dimer ground state in the (1 up, 1 down) sector: the normalized
/// two-parameter superposition with alpha_+ weighting, plus the lowest
/// eigenvalue of the realized sector Hamiltonian.
std::pair<double, StateVector> hubbard_dimer_ground_state(double t, double u);

}  // namespace fermient

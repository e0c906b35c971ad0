#include "fermient/models.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "fermient/mode_transform.hpp"

namespace fermient {

void check_model_caps(const ModelSpec& spec) {
  if (spec.kind == ModelKind::EksDimer) {
    if (spec.sites != 2) {
      throw std::domain_error("the graded-permutator dimer is defined for L=2 only");
    }
    return;
  }
  if (!std::isfinite(spec.t) || !std::isfinite(spec.u) || !std::isfinite(spec.mu)) {
    throw std::domain_error("model parameters must be finite");
  }
  if (spec.sites < 1) throw std::domain_error("site count must be positive");
  const int cap = spec.spinful() ? kMaxSpinfulSites : kMaxSpinlessSites;
  if (spec.sites > cap) {
    throw ResourceError("site count " + std::to_string(spec.sites) +
                        " exceeds cap " + std::to_string(cap));
  }
}

namespace {

OperatorExpr hopping_bond(ModeIndex a, ModeIndex b, double t) {
  OperatorExpr h = creation(a) * annihilation(b) + creation(b) * annihilation(a);
  h *= Complex{-t, 0.0};
  return h;
}

OperatorExpr free_chain_expr(int sites, double t, double mu, Boundary boundary,
                             Spin spin) {
  OperatorExpr h;
  auto mode = [spin](int site) {
    return spin == Spin::None ? ModeIndex::spinless(site)
                              : ModeIndex::spinful(site, spin);
  };
  for (int j = 0; j + 1 < sites; ++j) {
    h += hopping_bond(mode(j + 1), mode(j), t);
  }
  // Periodic wrap; at L=2 this duplicates the single bond.
  if (boundary == Boundary::Periodic && sites >= 2) {
    h += hopping_bond(mode(0), mode(sites - 1), t);
  }
  if (mu != 0.0) {
    for (int j = 0; j < sites; ++j) {
      h += Complex{-mu, 0.0} * number_of(mode(j));
    }
  }
  return h;
}

}  // namespace

OperatorExpr hamiltonian_expr(const ModelSpec& spec) {
  check_model_caps(spec);
  switch (spec.kind) {
    case ModelKind::FreeChain:
      return free_chain_expr(spec.sites, spec.t, spec.mu, spec.boundary, Spin::None);
    case ModelKind::Hubbard: {
      OperatorExpr h =
          free_chain_expr(spec.sites, spec.t, spec.mu, spec.boundary, Spin::Up);
      h += free_chain_expr(spec.sites, spec.t, spec.mu, spec.boundary, Spin::Down);
      for (int j = 0; j < spec.sites; ++j) {
        h += Complex{spec.u, 0.0} * (number_of(ModeIndex::spinful(j, Spin::Up)) *
                                     number_of(ModeIndex::spinful(j, Spin::Down)));
      }
      return h;
    }
    default:
      throw std::domain_error("the EKS dimer has no second-quantized expression here");
  }
}

std::pair<int, std::pair<LocalState, LocalState>> eks_apply(LocalState a,
                                                            LocalState b) {
  const int phase = (local_parity(a) && local_parity(b)) ? -1 : 1;
  return {phase, {b, a}};
}

namespace {

/// Graded permutator on the 16-dim dimer space in the canonical bit basis.
/// Per-site ordering phases cancel between input and swapped output, so the
/// matrix is the bare signed block swap.
Eigen::MatrixXcd eks_matrix(const FockBasis& basis) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    const FockState s = basis.state(col);
    const LocalState a = local_state_of(s, 0);
    const LocalState b = local_state_of(s, 1);
    const auto [phase, swapped] = eks_apply(a, b);
    const std::uint32_t swapped_bits =
        ((s.bits & 3u) << 2) | ((s.bits >> 2) & 3u);
    const auto row = basis.index_of(FockState{swapped_bits});
    if (!row) continue;  // sector bases are swap-closed, full basis always hits
    (void)swapped;
    h(*row, col) += static_cast<double>(phase);
  }
  return h;
}

}  // namespace

Eigen::MatrixXcd hamiltonian_matrix(const ModelSpec& spec, const FockBasis& basis) {
  check_model_caps(spec);
  if (basis.num_modes() != spec.num_modes()) {
    throw std::domain_error("basis mode count does not match the model");
  }
  if (spec.kind == ModelKind::EksDimer) return eks_matrix(basis);
  return realize_matrix(hamiltonian_expr(spec), basis);
}

StateVector momentum_eigenstate(int sites, const MomentumTuple& tuple) {
  if (sites < 1 || sites > kMaxSpinlessSites) {
    throw ResourceError("momentum eigenstates need 1 <= L <= " +
                        std::to_string(kMaxSpinlessSites));
  }
  std::set<int> seen;
  for (const int l : tuple.modes) {
    if (l < 0 || l >= sites) {
      throw std::domain_error("momentum mode index outside [0, L)");
    }
    if (!seen.insert(l).second) {
      throw std::domain_error("duplicate momentum: Pauli exclusion in momentum space");
    }
  }
  const Eigen::MatrixXcd f = fourier_map(sites).u;
  const int dim = 1 << sites;
  Eigen::VectorXcd cur = Eigen::VectorXcd::Zero(dim);
  cur(0) = 1.0;
  std::vector<int> modes(tuple.modes.begin(), tuple.modes.end());
  std::sort(modes.begin(), modes.end(), std::greater<int>());
  for (const int l : modes) {
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(dim); ++s) {
      const Complex amp = cur(s);
      if (amp == Complex{0.0, 0.0}) continue;
      for (int j = 0; j < sites; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        if (s & bit) continue;
        const int below = std::popcount(s & (bit - 1));
        next(s | bit) += std::conj(f(l, j)) * ((below & 1) ? -1.0 : 1.0) * amp;
      }
    }
    cur = std::move(next);
  }
  return make_state(make_basis(sites), std::move(cur));
}

double momentum_energy(const ModelSpec& spec, const MomentumTuple& tuple) {
  double e = 0.0;
  for (const int l : tuple.modes) {
    e += -2.0 * spec.t * std::cos(2.0 * std::numbers::pi * l / spec.sites);
  }
  return e - spec.mu * static_cast<double>(tuple.modes.size());
}

double alpha_plus(double x) { return x + std::sqrt(1.0 + x * x); }
double alpha_minus(double x) { return x - std::sqrt(1.0 + x * x); }

std::pair<double, StateVector> hubbard_dimer_ground_state(double t, double u) {
  if (!(t > 0.0) || u < 0.0) {
    throw std::domain_error("dimer ground state needs t > 0 and U >= 0");
  }
  const double alpha = alpha_plus(u / (4.0 * t));
  auto basis = make_basis(4, SectorLabel{SpinResolved{1, 1}});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->size());
  auto set = [&](std::uint32_t bits, double value) {
    amps(*basis->index_of(FockState{bits})) = value;
  };
  // Creator pairs of the alpha-weighted superposition in canonical phases:
  // site-0 pair, site-1 pair, and the two opposite-site spin pairs.
  set(0b0011, 1.0);
  set(0b1100, 1.0);
  set(0b1001, alpha);   // up on site 0, down on site 1
  set(0b0110, -alpha);  // down on site 0, up on site 1
  amps.normalize();

  const ModelSpec spec{ModelKind::Hubbard, 2, t, u, 0.0, Boundary::Open};
  const Eigen::MatrixXcd h = hamiltonian_matrix(spec, *basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  return {solver.eigenvalues()(0), make_state(std::move(basis), std::move(amps))};
}

}  // namespace fermient

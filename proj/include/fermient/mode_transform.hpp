#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fermient/fock.hpp"

namespace fermient {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kProductUnitaryTol = 1e-8;

/// A particle-conserving Bogoliubov map c_i -> sum_j u(i,j) c_j.
/// For spinful lattices the matrix acts on flat modes and is block-diagonal
/// per spin when lifted from a spatial map.
struct ModeMap {
  Eigen::MatrixXcd u;

  int num_modes() const { return static_cast<int>(u.rows()); }
};

bool is_unitary(const Eigen::MatrixXcd& m, double tol = kUnitaryTol);

/// Discrete Fourier map u(l, j) = exp(i*k_l*j)/sqrt(L), k_l = 2*pi*l/L.
/// Mode and site labels are 0-based; this differs from 1-based site labels
/// by a phase per momentum mode, which no computed quantity depends on.
ModeMap fourier_map(int sites);

/// Cyclic shift j -> j+1 (mod L), oriented so the induced Fock unitary gives
/// momentum eigenstates the eigenvalue exp(+i sum k).
ModeMap translation_map(int sites);

/// Lift a spatial L x L map to the 2L x 2L site-major spinful layout,
/// acting identically on both spin species.
ModeMap lift_to_spinful(const ModeMap& spatial);

/// Unitary on the full 2^M Fock space.
struct FockUnitary {
  Eigen::MatrixXcd w;
  int num_modes = 0;
  std::optional<ModeMap> provenance;

  int dim() const { return static_cast<int>(w.rows()); }
  FockUnitary adjoint() const;
};

/// The Fock-space unitary carrying each canonical basis state to the same
/// creator product built from the transformed modes. It satisfies
/// W c_i W† = sum_j u(i,j) c_j and fixes the vacuum with phase +1.
/// OpenMP-parallel over columns; the _serial variant is the reference.
FockUnitary induce_fock_unitary(const ModeMap& map);
FockUnitary induce_fock_unitary_serial(const ModeMap& map);

/// W * v on the full basis (sector vectors are embedded first).
StateVector transform_state(const FockUnitary& w, const StateVector& v);

/// True iff w factorizes as a tensor product of unitaries on each local
/// factor, decided by operator-Schmidt rank-1 tests across every prefix cut.
bool is_product_unitary(const Eigen::MatrixXcd& w,
                        const std::vector<int>& local_dims,
                        double tol = kProductUnitaryTol);

inline bool is_product_unitary(const FockUnitary& w,
                               const std::vector<int>& local_dims,
                               double tol = kProductUnitaryTol) {
  return is_product_unitary(w.w, local_dims, tol);
}

}  // namespace fermient

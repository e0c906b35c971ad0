#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "fermient/fock.hpp"
#include "fermient/mode_transform.hpp"

namespace fermient {

enum class EntropyKind { VonNeumann, Linear };

/// Which single-site decomposition a reduced density matrix refers to:
/// the real lattice, or the Fourier (reciprocal) modes.
enum class Decomposition { Real, Reciprocal };

/// Reduced density matrix of one site: 2x2 for a spinless mode, 4x4 for a
/// spinful site (basis order |0>, |up>, |down>, |updown>).
struct LocalDensityMatrix {
  Eigen::MatrixXcd rho;
  int site = 0;
  std::string decomposition_tag = "real";
};

/// Throws std::domain_error unless rho is Hermitian (1e-10), unit trace
/// (1e-10) and positive semidefinite (eigenvalues >= -1e-10).
void validate_density_matrix(const Eigen::MatrixXcd& rho);

/// Brute-force partial trace onto one site of a normalized state. local_dim
/// is 2 for spinless modes, 4 for a spinful site's contiguous 2-bit block.
/// The 4x4 case is reported in the |0>,|up>,|down>,|updown> local basis
/// whose doubly occupied state is the down-then-up creator pair.
LocalDensityMatrix partial_trace_site(const StateVector& v, int site,
                                      int local_dim,
                                      std::string_view tag = "real");

/// Fast path for particle-number eigenstates: rho is diagonal with entries
/// (1 - <n_i>, <n_i>). Rejects states with number variance above 1e-10.
LocalDensityMatrix local_rho_number_eigenstate(const StateVector& v, int site);

/// Fast path for translation-invariant S^z eigenstates on a spinful lattice:
/// diag(L - Nu - Nd - Nl, Nu, Nd, Nl)/L from the single/double occupation
/// counts. Preconditions are verified and violations are domain errors.
LocalDensityMatrix local_rho_spinful_symmetric(const StateVector& v);

/// Von Neumann (natural log) or linear (1 - Tr rho^2) entropy.
double entropy(const LocalDensityMatrix& rho, EntropyKind kind);

/// Binary Shannon entropy -n ln n - (1-n) ln(1-n) of a filling fraction.
double shannon_filling(double n);

struct DimerCurvePoint {
  double u_over_4t = 0.0;
  double entanglement = 0.0;
};

/// Ground-state local entanglement of the Hubbard dimer over a grid of
/// U/(4t) values, computed from dense sector eigenvectors: real-lattice
/// site entropy, or reciprocal-mode entropy after a Fourier frame change.
/// OpenMP-parallel over grid points; the _serial variant is the reference.
std::vector<DimerCurvePoint> dimer_curve(double t,
                                         const std::vector<double>& u_over_4t,
                                         Decomposition decomposition,
                                         EntropyKind kind);
std::vector<DimerCurvePoint> dimer_curve_serial(
    double t, const std::vector<double>& u_over_4t, Decomposition decomposition,
    EntropyKind kind);

/// Default U/(4t) grid of Fig-style curves: 201 points on [0, 10].
std::vector<double> default_dimer_grid();

}  // namespace fermient

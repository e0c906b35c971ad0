#pragma once

#include <limits>
#include <vector>

#include "fermient/entanglement.hpp"
#include "fermient/fock.hpp"
#include "fermient/mode_transform.hpp"
#include "fermient/models.hpp"

namespace fermient {

/// Eigenvalues closer than this within one sector count as unresolved
/// degeneracy for thermal averages.
inline constexpr double kDegeneracyTol = 1e-9;

struct SpectralEntry {
  SectorLabel sector;
  double eigenvalue = 0.0;
  StateVector vec;  // on the entry's sector basis
  int particle_number = 0;
  /// Set when this entry shares its sector eigenvalue with a neighbor within
  /// kDegeneracyTol and the eigenbasis was picked by the numeric solver.
  bool degenerate = false;
};

struct SpectralDecomposition {
  ModelSpec spec;
  std::vector<SpectralEntry> entries;
  bool any_degenerate = false;
};

struct ThermalParams {
  double beta = 1.0;  // >= 0; +infinity selects the ground-state limit
  double mu = 0.0;

  static constexpr double ground_state_beta() {
    return std::numeric_limits<double>::infinity();
  }
};

/// Sector-resolved exact diagonalization: TotalN sectors for the free chain
/// (the periodic chain uses the analytic momentum eigenbasis), SpinResolved
/// for Hubbard, EksTriple for the EKS dimer. Entries are eigenvalue-ascending
/// within each sector and total 2^M.
SpectralDecomposition diagonalize(const ModelSpec& spec);

/// Grand-canonical partition function sum_m exp(-beta (e_m - mu N_m)),
/// evaluated with a ground-shift to avoid overflow. The mu weight is only
/// admissible for models whose Hamiltonian was built with mu = 0.
double partition_function(const SpectralDecomposition& decomp,
                          const ThermalParams& params);

/// Grand-canonical mean filling <N>/L.
double thermal_mean_filling(const SpectralDecomposition& decomp,
                            const ThermalParams& params);

/// Lattice-averaged single-site entropy of each eigenstate, in entry order.
/// `frame`, when given, re-expresses every eigenvector (W v) before tracing.
/// OpenMP-parallel over entries; the _serial variant is the reference.
std::vector<double> state_entropy_table(const SpectralDecomposition& decomp,
                                        EntropyKind kind,
                                        const FockUnitary* frame = nullptr);
std::vector<double> state_entropy_table_serial(
    const SpectralDecomposition& decomp, EntropyKind kind,
    const FockUnitary* frame = nullptr);

/// Boltzmann-weighted, lattice-averaged local entanglement over the
/// eigenstates. Finite beta refuses any unresolved in-sector degeneracy;
/// beta = +infinity averages the minimal-weight entries (ties across sectors
/// share equal weight) and refuses only a degenerate in-sector minimum.
double thermal_local_entanglement(const SpectralDecomposition& decomp,
                                  const ThermalParams& params, EntropyKind kind,
                                  const FockUnitary* frame = nullptr);

}  // namespace fermient

#include "fermient/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace fermient {

namespace {

int particle_number_of(const SectorLabel& label) {
  if (const auto* t = std::get_if<TotalN>(&label)) return t->n;
  if (const auto* s = std::get_if<SpinResolved>(&label)) return s->n_up + s->n_down;
  const auto& e = std::get<EksTriple>(label);
  return e.singles_up + e.singles_down + 2 * e.doubles;
}

/// Numeric eigendecomposition of one sector; flags in-sector near-degeneracy.
void diagonalize_sector(const ModelSpec& spec, const SectorLabel& label,
                        std::vector<SpectralEntry>& out, bool& any_degenerate) {
  auto basis = make_basis(spec.num_modes(), label);
  if (basis->size() == 0) return;
  const Eigen::MatrixXcd h = hamiltonian_matrix(spec, *basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const auto& values = solver.eigenvalues();
  const std::size_t first = out.size();
  for (int i = 0; i < values.size(); ++i) {
    out.push_back({label, values(i),
                   make_state(basis, solver.eigenvectors().col(i)),
                   particle_number_of(label), false});
  }
  for (int i = 1; i < values.size(); ++i) {
    if (values(i) - values(i - 1) < kDegeneracyTol) {
      out[first + static_cast<std::size_t>(i) - 1].degenerate = true;
      out[first + static_cast<std::size_t>(i)].degenerate = true;
      any_degenerate = true;
    }
  }
}

/// Periodic free chain: the analytic momentum eigenbasis, sector by sector.
/// Momentum labels form a complete commuting set, so coincident eigenvalues
/// within a TotalN sector are resolved by construction and never flagged.
void momentum_decomposition(const ModelSpec& spec,
                            std::vector<SpectralEntry>& out) {
  const int sites = spec.sites;
  std::vector<std::uint32_t> masks(std::size_t{1} << sites);
  std::iota(masks.begin(), masks.end(), 0u);

  std::vector<std::pair<double, StateVector>> built(masks.size());
  const auto n = static_cast<std::int64_t>(masks.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint32_t mask = masks[static_cast<std::size_t>(i)];
    MomentumTuple tuple;
    for (int l = 0; l < sites; ++l) {
      if (mask & (std::uint32_t{1} << l)) tuple.modes.push_back(l);
    }
    const StateVector full = momentum_eigenstate(sites, tuple);
    const int count = std::popcount(mask);
    auto sector = make_basis(sites, SectorLabel{TotalN{count}});
    Eigen::VectorXcd amps(sector->size());
    for (int j = 0; j < sector->size(); ++j) {
      amps(j) = full.amps(*full.basis->index_of(sector->state(j)));
    }
    built[static_cast<std::size_t>(i)] = {momentum_energy(spec, tuple),
                                          make_state(sector, std::move(amps))};
  }

  for (int count = 0; count <= sites; ++count) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (std::popcount(masks[i]) == count) members.push_back(i);
    }
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) {
                       return built[a].first < built[b].first;
                     });
    for (const std::size_t i : members) {
      out.push_back({SectorLabel{TotalN{count}}, built[i].first,
                     std::move(built[i].second), count, false});
    }
  }
}

}  // namespace

SpectralDecomposition diagonalize(const ModelSpec& spec) {
  check_model_caps(spec);
  SpectralDecomposition decomp{spec, {}, false};
  switch (spec.kind) {
    case ModelKind::FreeChain:
      if (spec.boundary == Boundary::Periodic) {
        momentum_decomposition(spec, decomp.entries);
      } else {
        for (int n = 0; n <= spec.sites; ++n) {
          diagonalize_sector(spec, SectorLabel{TotalN{n}}, decomp.entries,
                             decomp.any_degenerate);
        }
      }
      break;
    case ModelKind::Hubbard:
      for (int up = 0; up <= spec.sites; ++up) {
        for (int down = 0; down <= spec.sites; ++down) {
          diagonalize_sector(spec, SectorLabel{SpinResolved{up, down}},
                             decomp.entries, decomp.any_degenerate);
        }
      }
      break;
    case ModelKind::EksDimer:
      for (int up = 0; up <= 2; ++up) {
        for (int down = 0; down <= 2; ++down) {
          for (int doubles = 0; doubles <= 2; ++doubles) {
            if (up + down + doubles > 2) continue;
            diagonalize_sector(spec, SectorLabel{EksTriple{up, down, doubles}},
                               decomp.entries, decomp.any_degenerate);
          }
        }
      }
      break;
  }
  return decomp;
}

namespace {

void check_thermal_params(const SpectralDecomposition& decomp,
                          const ThermalParams& params) {
  if (std::isnan(params.beta) || params.beta < 0.0) {
    throw std::domain_error("beta must be nonnegative");
  }
  if (params.mu != 0.0 && decomp.spec.mu_in_hamiltonian()) {
    throw std::domain_error(
        "model already carries mu in H; a grand-canonical mu would double-apply");
  }
}

double shifted_exponent(const SpectralEntry& e, const ThermalParams& p) {
  return e.eigenvalue - p.mu * e.particle_number;
}

double min_exponent(const SpectralDecomposition& decomp,
                    const ThermalParams& params) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : decomp.entries) {
    lo = std::min(lo, shifted_exponent(e, params));
  }
  return lo;
}

}  // namespace

double partition_function(const SpectralDecomposition& decomp,
                          const ThermalParams& params) {
  check_thermal_params(decomp, params);
  if (std::isinf(params.beta)) {
    throw std::domain_error("partition function needs finite beta");
  }
  const double shift = min_exponent(decomp, params);
  double acc = 0.0;
  for (const auto& e : decomp.entries) {
    acc += std::exp(-params.beta * (shifted_exponent(e, params) - shift));
  }
  return std::exp(-params.beta * shift) * acc;
}

double thermal_mean_filling(const SpectralDecomposition& decomp,
                            const ThermalParams& params) {
  check_thermal_params(decomp, params);
  if (std::isinf(params.beta)) {
    throw std::domain_error("mean filling needs finite beta");
  }
  const double shift = min_exponent(decomp, params);
  double z = 0.0, n = 0.0;
  for (const auto& e : decomp.entries) {
    const double w = std::exp(-params.beta * (shifted_exponent(e, params) - shift));
    z += w;
    n += w * e.particle_number;
  }
  return n / z / decomp.spec.sites;
}

namespace {

double entry_site_entropy(const SpectralDecomposition& decomp,
                          const SpectralEntry& entry, EntropyKind kind,
                          const FockUnitary* frame) {
  StateVector state = embed_full(entry.vec);
  const char* tag = "real";
  if (frame != nullptr) {
    state = transform_state(*frame, state);
    tag = "transformed";
  }
  const int local_dim = decomp.spec.spinful() ? 4 : 2;
  double acc = 0.0;
  for (int site = 0; site < decomp.spec.sites; ++site) {
    acc += entropy(partial_trace_site(state, site, local_dim, tag), kind);
  }
  return acc / decomp.spec.sites;
}

std::vector<double> entropy_table_impl(const SpectralDecomposition& decomp,
                                       EntropyKind kind,
                                       const FockUnitary* frame, bool parallel) {
  std::vector<double> table(decomp.entries.size());
  const auto n = static_cast<std::int64_t>(decomp.entries.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
      table[static_cast<std::size_t>(i)] = entry_site_entropy(
          decomp, decomp.entries[static_cast<std::size_t>(i)], kind, frame);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      table[static_cast<std::size_t>(i)] = entry_site_entropy(
          decomp, decomp.entries[static_cast<std::size_t>(i)], kind, frame);
    }
  }
  return table;
}

[[noreturn]] void refuse_degenerate(const SpectralEntry& entry) {
  throw DegeneracyError("sector " + to_string(entry.sector) +
                        " has an unresolved degenerate eigenvalue near " +
                        std::to_string(entry.eigenvalue) +
                        "; per-state entanglement is basis-dependent there");
}

}  // namespace

std::vector<double> state_entropy_table(const SpectralDecomposition& decomp,
                                        EntropyKind kind,
                                        const FockUnitary* frame) {
  return entropy_table_impl(decomp, kind, frame, true);
}

std::vector<double> state_entropy_table_serial(
    const SpectralDecomposition& decomp, EntropyKind kind,
    const FockUnitary* frame) {
  return entropy_table_impl(decomp, kind, frame, false);
}

double thermal_local_entanglement(const SpectralDecomposition& decomp,
                                  const ThermalParams& params, EntropyKind kind,
                                  const FockUnitary* frame) {
  check_thermal_params(decomp, params);
  if (decomp.entries.empty()) throw std::domain_error("empty decomposition");

  if (std::isinf(params.beta)) {
    const double lo = min_exponent(decomp, params);
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < decomp.entries.size(); ++i) {
      if (shifted_exponent(decomp.entries[i], params) <= lo + 1e-10) {
        if (decomp.entries[i].degenerate) refuse_degenerate(decomp.entries[i]);
        minimal.push_back(i);
      }
    }
    double acc = 0.0;
    for (const std::size_t i : minimal) {
      acc += entry_site_entropy(decomp, decomp.entries[i], kind, frame);
    }
    return acc / static_cast<double>(minimal.size());
  }

  for (const auto& entry : decomp.entries) {
    if (entry.degenerate) refuse_degenerate(entry);
  }
  const std::vector<double> table = state_entropy_table(decomp, kind, frame);
  const double shift = min_exponent(decomp, params);
  double z = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < decomp.entries.size(); ++i) {
    const double w =
        std::exp(-params.beta * (shifted_exponent(decomp.entries[i], params) - shift));
    z += w;
    acc += w * table[i];
  }
  return acc / z;
}

}  // namespace fermient

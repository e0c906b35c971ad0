#include "fermient/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "fermient/models.hpp"

namespace fermient {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kNormTol = 1e-8;

void check_normalized(const StateVector& v) {
  if (std::abs(v.norm() - 1.0) > kNormTol) {
    throw std::domain_error("state vector is not normalized");
  }
}

/// Remove `width` bits starting at `pos`, closing the gap.
std::uint32_t extract_env(std::uint32_t bits, int pos, int width) {
  const std::uint32_t low = bits & ((std::uint32_t{1} << pos) - 1);
  const std::uint32_t high = bits >> (pos + width);
  return low | (high << pos);
}

std::uint32_t insert_local(std::uint32_t env, int pos, int width,
                           std::uint32_t local) {
  const std::uint32_t low = env & ((std::uint32_t{1} << pos) - 1);
  const std::uint32_t high = env >> pos;
  return low | (local << pos) | (high << (pos + width));
}

/// Canonical 2-bit block -> local basis index |0>,|up>,|down>,|updown> and
/// the phase relating the canonical creator order (up then down) to the
/// down-then-up product defining |updown>.
double local_phase(int local_dim, std::uint32_t local) {
  return (local_dim == 4 && local == 3u) ? -1.0 : 1.0;
}

}  // namespace

void validate_density_matrix(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::domain_error("density matrix must be square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > kTraceTol) {
    throw std::domain_error("density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::domain_error("density matrix has a negative eigenvalue");
  }
}

LocalDensityMatrix partial_trace_site(const StateVector& v, int site,
                                      int local_dim, std::string_view tag) {
  if (local_dim != 2 && local_dim != 4) {
    throw std::domain_error("local dimension must be 2 or 4");
  }
  check_normalized(v);
  const StateVector full = embed_full(v);
  const int m = full.num_modes();
  const int width = local_dim == 2 ? 1 : 2;
  if (m % width != 0 || site < 0 || site >= m / width) {
    throw std::domain_error("site index outside the lattice");
  }
  const int pos = site * width;
  const std::uint32_t env_count = std::uint32_t{1} << (m - width);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(local_dim, local_dim);
  Eigen::VectorXcd column(local_dim);
  for (std::uint32_t env = 0; env < env_count; ++env) {
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(local_dim); ++a) {
      const std::uint32_t s = insert_local(env, pos, width, a);
      column(a) = local_phase(local_dim, a) * full.amps(s);
    }
    rho += column * column.adjoint();
  }
  validate_density_matrix(rho);
  return {std::move(rho), site, std::string(tag)};
}

LocalDensityMatrix local_rho_number_eigenstate(const StateVector& v, int site) {
  check_normalized(v);
  const StateVector full = embed_full(v);
  const int m = full.num_modes();
  if (site < 0 || site >= m) throw std::domain_error("site index outside lattice");

  double n_mean = 0.0, n_sq = 0.0, occupied = 0.0;
  for (int i = 0; i < full.amps.size(); ++i) {
    const double p = std::norm(full.amps(i));
    if (p == 0.0) continue;
    const FockState s = full.basis->state(i);
    const double n = s.count();
    n_mean += p * n;
    n_sq += p * n * n;
    if (s.occupied(site)) occupied += p;
  }
  if (n_sq - n_mean * n_mean > 1e-10) {
    throw std::domain_error(
        "state is not a particle-number eigenstate; off-diagonals need not vanish");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0 - occupied;
  rho(1, 1) = occupied;
  validate_density_matrix(rho);
  return {std::move(rho), site, "real"};
}

LocalDensityMatrix local_rho_spinful_symmetric(const StateVector& v) {
  check_normalized(v);
  const StateVector full = embed_full(v);
  const int m = full.num_modes();
  if (m % 2 != 0) throw std::domain_error("spinful lattice needs an even mode count");
  const int sites = m / 2;

  // S^z eigenstate check (diagonal in the occupation basis).
  double sz_mean = 0.0, sz_sq = 0.0;
  for (int i = 0; i < full.amps.size(); ++i) {
    const double p = std::norm(full.amps(i));
    if (p == 0.0) continue;
    const auto label = std::get<SpinResolved>(
        label_of(full.basis->state(i), m, SectorFamily::SpinResolved));
    const double sz = label.n_up - label.n_down;
    sz_mean += p * sz;
    sz_sq += p * sz * sz;
  }
  if (sz_sq - sz_mean * sz_mean > 1e-10) {
    throw std::domain_error("state is not an S^z eigenstate");
  }

  const FockUnitary t =
      induce_fock_unitary(lift_to_spinful(translation_map(sites)));
  const Eigen::VectorXcd shifted = t.w * full.amps;
  const Complex overlap = full.amps.dot(shifted);
  if (std::abs(overlap) < 0.5) {
    throw std::domain_error("state is not translation invariant");
  }
  const Complex phase = overlap / std::abs(overlap);
  if ((shifted - phase * full.amps).norm() > 1e-8) {
    throw std::domain_error("state is not translation invariant");
  }

  double n_up = 0.0, n_down = 0.0, n_double = 0.0;
  for (int i = 0; i < full.amps.size(); ++i) {
    const double p = std::norm(full.amps(i));
    if (p == 0.0) continue;
    const auto counts = std::get<EksTriple>(
        label_of(full.basis->state(i), m, SectorFamily::EksTriple));
    n_up += p * counts.singles_up;
    n_down += p * counts.singles_down;
    n_double += p * counts.doubles;
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = (sites - n_up - n_down - n_double) / sites;
  rho(1, 1) = n_up / sites;
  rho(2, 2) = n_down / sites;
  rho(3, 3) = n_double / sites;
  validate_density_matrix(rho);
  return {std::move(rho), 0, "real"};
}

double entropy(const LocalDensityMatrix& rho, EntropyKind kind) {
  validate_density_matrix(rho.rho);
  if (kind == EntropyKind::Linear) {
    const double purity = (rho.rho * rho.rho).trace().real();
    return std::max(0.0, 1.0 - purity);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.rho,
                                                         Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return std::max(0.0, s);
}

double shannon_filling(double n) {
  if (n < 0.0 || n > 1.0) throw std::domain_error("filling must lie in [0, 1]");
  double s = 0.0;
  if (n > 0.0) s -= n * std::log(n);
  if (n < 1.0) s -= (1.0 - n) * std::log(1.0 - n);
  return s;
}

namespace {

DimerCurvePoint dimer_point(double t, double x, Decomposition decomposition,
                            EntropyKind kind, const FockBasis& sector,
                            const FockUnitary* to_reciprocal) {
  const ModelSpec spec{ModelKind::Hubbard, 2, t, 4.0 * t * x, 0.0, Boundary::Open};
  const Eigen::MatrixXcd h = hamiltonian_matrix(spec, sector);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  StateVector ground = make_state(
      std::make_shared<const FockBasis>(sector), solver.eigenvectors().col(0));
  StateVector framed = decomposition == Decomposition::Reciprocal
                           ? transform_state(*to_reciprocal, ground)
                           : embed_full(ground);
  const char* tag = decomposition == Decomposition::Reciprocal ? "reciprocal" : "real";
  double s = 0.0;
  for (int site = 0; site < 2; ++site) {
    s += entropy(partial_trace_site(framed, site, 4, tag), kind);
  }
  return {x, s / 2.0};
}

std::vector<DimerCurvePoint> dimer_curve_impl(
    double t, const std::vector<double>& grid, Decomposition decomposition,
    EntropyKind kind, bool parallel) {
  if (!(t > 0.0)) throw std::domain_error("dimer curve needs t > 0");
  const FockBasis sector = build_basis(4, SectorLabel{SpinResolved{1, 1}});
  FockUnitary to_reciprocal;
  if (decomposition == Decomposition::Reciprocal) {
    // Coordinates in the Fourier mode basis are W† v.
    to_reciprocal = induce_fock_unitary(lift_to_spinful(fourier_map(2))).adjoint();
  }
  std::vector<DimerCurvePoint> out(grid.size());
  const auto n = static_cast<std::int64_t>(grid.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = dimer_point(
          t, grid[static_cast<std::size_t>(i)], decomposition, kind, sector,
          &to_reciprocal);
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = dimer_point(
          t, grid[static_cast<std::size_t>(i)], decomposition, kind, sector,
          &to_reciprocal);
    }
  }
  return out;
}

}  // namespace

std::vector<DimerCurvePoint> dimer_curve(double t,
                                         const std::vector<double>& u_over_4t,
                                         Decomposition decomposition,
                                         EntropyKind kind) {
  return dimer_curve_impl(t, u_over_4t, decomposition, kind, true);
}

std::vector<DimerCurvePoint> dimer_curve_serial(
    double t, const std::vector<double>& u_over_4t, Decomposition decomposition,
    EntropyKind kind) {
  return dimer_curve_impl(t, u_over_4t, decomposition, kind, false);
}

std::vector<double> default_dimer_grid() {
  std::vector<double> grid(201);
  for (int i = 0; i < 201; ++i) grid[i] = 10.0 * i / 200.0;
  return grid;
}

}  // namespace fermient

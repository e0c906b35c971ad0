#include "fermient/mode_transform.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace fermient {

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  return (gram - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
             .cwiseAbs()
             .maxCoeff() < tol;
}

ModeMap fourier_map(int sites) {
  if (sites < 1) throw std::domain_error("fourier_map needs L >= 1");
  Eigen::MatrixXcd u(sites, sites);
  const double norm = 1.0 / std::sqrt(static_cast<double>(sites));
  for (int l = 0; l < sites; ++l) {
    const double k = 2.0 * std::numbers::pi * l / sites;
    for (int j = 0; j < sites; ++j) {
      u(l, j) = std::polar(norm, k * j);
    }
  }
  return {std::move(u)};
}

ModeMap translation_map(int sites) {
  if (sites < 1) throw std::domain_error("translation_map needs L >= 1");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(sites, sites);
  for (int i = 0; i < sites; ++i) {
    u(i, (i + sites - 1) % sites) = 1.0;
  }
  return {std::move(u)};
}

ModeMap lift_to_spinful(const ModeMap& spatial) {
  const int sites = spatial.num_modes();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * sites, 2 * sites);
  for (int i = 0; i < sites; ++i) {
    for (int j = 0; j < sites; ++j) {
      u(2 * i, 2 * j) = spatial.u(i, j);
      u(2 * i + 1, 2 * j + 1) = spatial.u(i, j);
    }
  }
  return {std::move(u)};
}

FockUnitary FockUnitary::adjoint() const {
  std::optional<ModeMap> prov;
  if (provenance) prov = ModeMap{provenance->u.adjoint()};
  return {w.adjoint(), num_modes, std::move(prov)};
}

namespace {

/// Apply the transformed creator sum_j conj(u(mode, j)) c†_j to a dense
/// full-space vector.
Eigen::VectorXcd apply_transformed_creator(const Eigen::MatrixXcd& u, int mode,
                                           const Eigen::VectorXcd& in,
                                           int num_modes) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
  const auto dim = static_cast<std::uint32_t>(in.size());
  for (std::uint32_t s = 0; s < dim; ++s) {
    const Complex amp = in(s);
    if (amp == Complex{0.0, 0.0}) continue;
    for (int j = 0; j < num_modes; ++j) {
      const std::uint32_t bit = std::uint32_t{1} << j;
      if (s & bit) continue;
      const int below = std::popcount(s & (bit - 1));
      const double sign = (below & 1) ? -1.0 : 1.0;
      out(s | bit) += std::conj(u(mode, j)) * sign * amp;
    }
  }
  return out;
}

Eigen::VectorXcd induced_column(const Eigen::MatrixXcd& u, int num_modes,
                                std::uint32_t source_bits) {
  const int dim = 1 << num_modes;
  Eigen::VectorXcd cur = Eigen::VectorXcd::Zero(dim);
  cur(0) = 1.0;
  // Canonical order: the highest occupied mode's creator acts on the vacuum first.
  for (int mode = num_modes - 1; mode >= 0; --mode) {
    if (source_bits & (std::uint32_t{1} << mode)) {
      cur = apply_transformed_creator(u, mode, cur, num_modes);
    }
  }
  return cur;
}

FockUnitary induce_impl(const ModeMap& map, bool parallel) {
  if (!is_unitary(map.u, kUnitaryTol)) {
    throw std::domain_error("mode map is not unitary within 1e-10");
  }
  const int m = map.num_modes();
  if (m > kFullBasisModeCap) {
    throw ResourceError("Fock unitary needs M <= " +
                        std::to_string(kFullBasisModeCap));
  }
  const int dim = 1 << m;
  Eigen::MatrixXcd w(dim, dim);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int col = 0; col < dim; ++col) {
      w.col(col) = induced_column(map.u, m, static_cast<std::uint32_t>(col));
    }
  } else {
    for (int col = 0; col < dim; ++col) {
      w.col(col) = induced_column(map.u, m, static_cast<std::uint32_t>(col));
    }
  }
  return {std::move(w), m, map};
}

}  // namespace

FockUnitary induce_fock_unitary(const ModeMap& map) {
  return induce_impl(map, true);
}

FockUnitary induce_fock_unitary_serial(const ModeMap& map) {
  return induce_impl(map, false);
}

StateVector transform_state(const FockUnitary& w, const StateVector& v) {
  const StateVector full = embed_full(v);
  if (full.amps.size() != w.dim()) {
    throw std::invalid_argument("state dimension does not match Fock unitary");
  }
  return make_state(full.basis, w.w * full.amps);
}

bool is_product_unitary(const Eigen::MatrixXcd& w,
                        const std::vector<int>& local_dims, double tol) {
  long prod = 1;
  for (const int d : local_dims) prod *= d;
  if (prod != w.rows() || w.rows() != w.cols()) {
    throw std::invalid_argument("local dimensions do not multiply to dim(W)");
  }
  // Operator-Schmidt rank across every prefix cut; all rank 1 iff W is a
  // full tensor product (tensoring a factor on the left preserves the rank
  // of the remaining cuts).
  for (std::size_t cut = 1; cut < local_dims.size(); ++cut) {
    long dl = 1;
    for (std::size_t i = 0; i < cut; ++i) dl *= local_dims[i];
    const long dr = w.rows() / dl;
    Eigen::MatrixXcd realigned(dl * dl, dr * dr);
    for (long rl = 0; rl < dl; ++rl) {
      for (long cl = 0; cl < dl; ++cl) {
        for (long rr = 0; rr < dr; ++rr) {
          for (long cr = 0; cr < dr; ++cr) {
            realigned(rl * dl + cl, rr * dr + cr) =
                w(rl * dr + rr, cl * dr + cr);
          }
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(realigned);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1 && sv(1) > tol * sv(0)) return false;
  }
  return true;
}

}  // namespace fermient

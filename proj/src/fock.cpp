#include "fermient/fock.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fermient {

std::string to_string(LocalState s) {
  switch (s) {
    case LocalState::Empty: return "0";
    case LocalState::Up: return "up";
    case LocalState::Down: return "down";
    default: return "updown";
  }
}

std::string to_string(const SectorLabel& label) {
  std::ostringstream os;
  if (const auto* t = std::get_if<TotalN>(&label)) {
    os << "N=" << t->n;
  } else if (const auto* s = std::get_if<SpinResolved>(&label)) {
    os << "Nup=" << s->n_up << " Ndn=" << s->n_down;
  } else {
    const auto& e = std::get<EksTriple>(label);
    os << "s_up=" << e.singles_up << " s_dn=" << e.singles_down
       << " d=" << e.doubles;
  }
  return os.str();
}

namespace {

void require_spinful_layout(int num_modes, const char* what) {
  if (num_modes % 2 != 0) {
    throw std::domain_error(std::string(what) +
                            " requires an even mode count (site-major spinful layout)");
  }
}

SpinResolved spin_counts(FockState s, int num_modes) {
  int up = 0, down = 0;
  for (int m = 0; m < num_modes; m += 2) {
    up += s.occupied(m);
    down += s.occupied(m + 1);
  }
  return {up, down};
}

EksTriple eks_counts(FockState s, int num_modes) {
  EksTriple t;
  for (int site = 0; site < num_modes / 2; ++site) {
    switch (local_state_of(s, site)) {
      case LocalState::Up: ++t.singles_up; break;
      case LocalState::Down: ++t.singles_down; break;
      case LocalState::Double: ++t.doubles; break;
      case LocalState::Empty: break;
    }
  }
  return t;
}

}  // namespace

SectorLabel label_of(FockState s, int num_modes, SectorFamily family) {
  switch (family) {
    case SectorFamily::TotalN:
      return TotalN{s.count()};
    case SectorFamily::SpinResolved:
      require_spinful_layout(num_modes, "SpinResolved label");
      return spin_counts(s, num_modes);
    default:
      require_spinful_layout(num_modes, "EksTriple label");
      return eks_counts(s, num_modes);
  }
}

bool sector_matches(const SectorLabel& label, FockState s, int num_modes) {
  if (std::holds_alternative<TotalN>(label)) {
    return std::get<TotalN>(label).n == s.count();
  }
  if (std::holds_alternative<SpinResolved>(label)) {
    return spin_counts(s, num_modes) == std::get<SpinResolved>(label);
  }
  return eks_counts(s, num_modes) == std::get<EksTriple>(label);
}

void check_sector_consistent(const SectorLabel& label, int num_modes) {
  if (const auto* t = std::get_if<TotalN>(&label)) {
    if (t->n < 0 || t->n > num_modes) {
      throw std::domain_error("TotalN sector out of range for mode count");
    }
    return;
  }
  require_spinful_layout(num_modes, "spin-resolved sector");
  const int sites = num_modes / 2;
  if (const auto* s = std::get_if<SpinResolved>(&label)) {
    if (s->n_up < 0 || s->n_down < 0 || s->n_up > sites || s->n_down > sites) {
      throw std::domain_error("SpinResolved sector out of range for site count");
    }
    return;
  }
  const auto& e = std::get<EksTriple>(label);
  if (e.singles_up < 0 || e.singles_down < 0 || e.doubles < 0 ||
      e.singles_up + e.singles_down + 2 * e.doubles > num_modes ||
      e.singles_up + e.singles_down + e.doubles > sites) {
    throw std::domain_error("EksTriple sector out of range for site count");
  }
}

FockBasis::FockBasis(int num_modes, std::optional<SectorLabel> label,
                     std::vector<FockState> states)
    : num_modes_(num_modes), label_(std::move(label)), states_(std::move(states)) {
  lookup_.reserve(states_.size());
  for (int i = 0; i < static_cast<int>(states_.size()); ++i) {
    lookup_.emplace(states_[static_cast<std::size_t>(i)].bits, i);
  }
}

std::optional<int> FockBasis::index_of(FockState s) const {
  const auto it = lookup_.find(s.bits);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

FockBasis build_basis(int num_modes, std::optional<SectorLabel> sector,
                      int mode_cap) {
  if (num_modes <= 0 || num_modes > mode_cap) {
    throw ResourceError("mode count " + std::to_string(num_modes) +
                        " outside (0, " + std::to_string(mode_cap) + "]");
  }
  if (!sector && num_modes > kFullBasisModeCap) {
    throw ResourceError("unrestricted basis needs M <= " +
                        std::to_string(kFullBasisModeCap) +
                        "; pass a sector label above that");
  }
  if (sector) check_sector_consistent(*sector, num_modes);

  std::vector<FockState> states;
  const std::uint64_t total = std::uint64_t{1} << num_modes;
  if (!sector) states.reserve(total);
  for (std::uint64_t b = 0; b < total; ++b) {
    const FockState s{static_cast<std::uint32_t>(b)};
    if (!sector || sector_matches(*sector, s, num_modes)) states.push_back(s);
  }
  return FockBasis(num_modes, std::move(sector), std::move(states));
}

BasisPtr make_basis(int num_modes, std::optional<SectorLabel> sector, int mode_cap) {
  return std::make_shared<const FockBasis>(
      build_basis(num_modes, std::move(sector), mode_cap));
}

ApplyResult apply_operator(int mode, bool dagger, FockState s) {
  const std::uint32_t bit = std::uint32_t{1} << mode;
  if (dagger ? (s.bits & bit) : !(s.bits & bit)) return {1, std::nullopt};
  const int below = std::popcount(s.bits & (bit - 1));
  return {(below & 1) ? -1 : 1, FockState{s.bits ^ bit}};
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(Complex scale) {
  for (auto& t : terms) t.coeff *= scale;
  return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      OperatorTerm t;
      t.coeff = ta.coeff * tb.coeff;
      t.factors = ta.factors;
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr out;
  out.terms.reserve(terms.size());
  for (const auto& t : terms) {
    OperatorTerm a;
    a.coeff = std::conj(t.coeff);
    a.factors.assign(t.factors.rbegin(), t.factors.rend());
    for (auto& f : a.factors) f.dagger = !f.dagger;
    out.terms.push_back(std::move(a));
  }
  return out;
}

OperatorExpr identity_expr() { return OperatorExpr{{OperatorTerm{}}}; }

OperatorExpr creation(ModeIndex mode) {
  return OperatorExpr{{OperatorTerm{{1.0, 0.0}, {{mode, true}}}}};
}

OperatorExpr annihilation(ModeIndex mode) {
  return OperatorExpr{{OperatorTerm{{1.0, 0.0}, {{mode, false}}}}};
}

OperatorExpr number_of(ModeIndex mode) {
  return OperatorExpr{{OperatorTerm{{1.0, 0.0}, {{mode, true}, {mode, false}}}}};
}

OperatorExpr number_operator(int lo, int hi) {
  OperatorExpr out;
  for (int m = lo; m < hi; ++m) {
    out += number_of(ModeIndex::spinless(m));
  }
  return out;
}

OperatorExpr spinful_site_projector(int site, LocalState which) {
  const auto up = ModeIndex::spinful(site, Spin::Up);
  const auto dn = ModeIndex::spinful(site, Spin::Down);
  const OperatorExpr n_up = number_of(up);
  const OperatorExpr n_dn = number_of(dn);
  const OperatorExpr n_both = n_up * n_dn;
  switch (which) {
    case LocalState::Empty:
      return identity_expr() + (-1.0) * n_up + (-1.0) * n_dn + n_both;
    case LocalState::Up:
      return n_up + (-1.0) * n_both;
    case LocalState::Down:
      return n_dn + (-1.0) * n_both;
    default:
      return n_both;
  }
}

std::optional<std::pair<int, FockState>> apply_term(
    std::span<const OperatorFactor> factors, FockState s) {
  int sign = 1;
  FockState cur = s;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const ApplyResult r = apply_operator(it->mode.flat(), it->dagger, cur);
    if (!r.state) return std::nullopt;
    sign *= r.sign;
    cur = *r.state;
  }
  return std::make_pair(sign, cur);
}

namespace {

void check_expr_modes(const OperatorExpr& expr, int num_modes) {
  for (const auto& t : expr.terms) {
    for (const auto& f : t.factors) {
      const int flat = f.mode.flat();
      if (flat < 0 || flat >= num_modes) {
        throw std::domain_error("operator mode " + std::to_string(flat) +
                                " outside basis with M=" + std::to_string(num_modes));
      }
    }
  }
}

void accumulate_column(const OperatorExpr& expr, const FockBasis& basis, int col,
                       Eigen::MatrixXcd& out) {
  const FockState source = basis.state(col);
  for (const auto& term : expr.terms) {
    const auto applied = apply_term(term.factors, source);
    if (!applied) continue;
    const auto row = basis.index_of(applied->second);
    if (!row) continue;  // projected out of a sector-restricted basis
    out(*row, col) += term.coeff * static_cast<double>(applied->first);
  }
}

}  // namespace

Eigen::MatrixXcd realize_matrix_serial(const OperatorExpr& expr,
                                       const FockBasis& basis) {
  check_expr_modes(expr, basis.num_modes());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    accumulate_column(expr, basis, col, out);
  }
  return out;
}

Eigen::MatrixXcd realize_matrix(const OperatorExpr& expr, const FockBasis& basis) {
  check_expr_modes(expr, basis.num_modes());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  const int n = basis.size();
#pragma omp parallel for schedule(dynamic, 16)
  for (int col = 0; col < n; ++col) {
    accumulate_column(expr, basis, col, out);
  }
  return out;
}

StateVector make_state(BasisPtr basis, Eigen::VectorXcd amps) {
  if (amps.size() != basis->size()) {
    throw std::invalid_argument("amplitude count does not match basis size");
  }
  return StateVector{std::move(basis), std::move(amps)};
}

StateVector basis_state(int num_modes, FockState s) {
  auto basis = make_basis(num_modes);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->size());
  const auto idx = basis->index_of(s);
  if (!idx) throw std::domain_error("bit-set outside the full basis");
  amps(*idx) = 1.0;
  return {std::move(basis), std::move(amps)};
}

StateVector embed_full(const StateVector& v) {
  if (v.basis->is_full()) return v;
  auto full = make_basis(v.num_modes());
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(full->size());
  for (int i = 0; i < v.basis->size(); ++i) {
    amps(*full->index_of(v.basis->state(i))) = v.amps(i);
  }
  return {std::move(full), std::move(amps)};
}

std::vector<std::pair<SectorLabel, StateVector>> sector_split(
    const StateVector& v, SectorFamily family) {
  if (!v.basis->is_full()) {
    throw std::domain_error("sector_split expects a full-basis vector");
  }
  const int m = v.num_modes();
  std::map<SectorLabel, std::vector<std::pair<FockState, Complex>>> groups;
  for (int i = 0; i < v.basis->size(); ++i) {
    const Complex a = v.amps(i);
    if (a == Complex{0.0, 0.0}) continue;
    groups[label_of(v.basis->state(i), m, family)].emplace_back(v.basis->state(i), a);
  }
  std::vector<std::pair<SectorLabel, StateVector>> out;
  out.reserve(groups.size());
  for (auto& [label, entries] : groups) {
    auto basis = make_basis(m, label);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis->size());
    for (const auto& [s, a] : entries) amps(*basis->index_of(s)) = a;
    out.emplace_back(label, StateVector{std::move(basis), std::move(amps)});
  }
  return out;
}

}  // namespace fermient

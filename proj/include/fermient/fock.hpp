#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "fermient/errors.hpp"

namespace fermient {

using Complex = std::complex<double>;

/// Hard cap on the number of fermionic modes a basis may span.
inline constexpr int kDefaultModeCap = 24;
/// Above this mode count the unrestricted 2^M basis is refused; a sector is required.
inline constexpr int kFullBasisModeCap = 16;

enum class Spin : std::uint8_t { None, Up, Down };

/// A single-particle mode: a lattice site, optionally carrying a spin label.
/// Flat layout is site-major for spinful lattices: (site, up) -> 2*site,
/// (site, down) -> 2*site + 1. Spinless modes map to their site index.
struct ModeIndex {
  int site = 0;
  Spin spin = Spin::None;

  int flat() const {
    if (spin == Spin::None) return site;
    return 2 * site + (spin == Spin::Down ? 1 : 0);
  }
  static ModeIndex spinless(int site) { return {site, Spin::None}; }
  static ModeIndex spinful(int site, Spin s) { return {site, s}; }
  static ModeIndex from_flat(int flat, bool spinful) {
    if (!spinful) return {flat, Spin::None};
    return {flat / 2, (flat % 2 == 0) ? Spin::Up : Spin::Down};
  }
  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Occupation bit-set over M modes; bit b set iff mode b is occupied.
/// The canonical Fock state for a set of modes is the creator product in
/// ascending flat order (highest index applied to the vacuum first).
struct FockState {
  std::uint32_t bits = 0;

  int count() const { return std::popcount(bits); }
  bool occupied(int mode) const { return (bits >> mode) & 1u; }
  friend auto operator<=>(const FockState&, const FockState&) = default;
};

/// The four states of a spinful site's contiguous 2-bit block.
enum class LocalState : std::uint8_t { Empty = 0, Up = 1, Down = 2, Double = 3 };

/// Fermionic parity of a local state: odd for singly occupied sites.
inline int local_parity(LocalState s) {
  return (s == LocalState::Up || s == LocalState::Down) ? 1 : 0;
}

/// Decode the 2-bit block of `site` (site-major spinful layout).
inline LocalState local_state_of(FockState s, int site) {
  const unsigned block = (s.bits >> (2 * site)) & 3u;
  switch (block) {
    case 0: return LocalState::Empty;
    case 1: return LocalState::Up;    // bit 2*site = up
    case 2: return LocalState::Down;  // bit 2*site+1 = down
    default: return LocalState::Double;
  }
}

std::string to_string(LocalState s);

// --- sector labels ------------------------------------------------------

struct TotalN {
  int n = 0;
  friend auto operator<=>(const TotalN&, const TotalN&) = default;
};

struct SpinResolved {
  int n_up = 0;
  int n_down = 0;
  friend auto operator<=>(const SpinResolved&, const SpinResolved&) = default;
};

/// Counts of singly-occupied-up, singly-occupied-down and doubly occupied sites.
struct EksTriple {
  int singles_up = 0;
  int singles_down = 0;
  int doubles = 0;
  friend auto operator<=>(const EksTriple&, const EksTriple&) = default;
};

using SectorLabel = std::variant<TotalN, SpinResolved, EksTriple>;

enum class SectorFamily { TotalN, SpinResolved, EksTriple };

std::string to_string(const SectorLabel& label);

/// Label of a basis state under the given family. Spin-resolved families
/// require an even mode count (site-major spinful layout).
SectorLabel label_of(FockState s, int num_modes, SectorFamily family);

/// True iff the state carries exactly the given label.
bool sector_matches(const SectorLabel& label, FockState s, int num_modes);

/// Throws std::domain_error when the label cannot occur for M modes.
void check_sector_consistent(const SectorLabel& label, int num_modes);

// --- basis ---------------------------------------------------------------

/// An ordered list of Fock states (ascending bit-set value) with an index map,
/// either the full 2^M space or one symmetry sector.
class FockBasis {
 public:
  FockBasis(int num_modes, std::optional<SectorLabel> label,
            std::vector<FockState> states);

  int num_modes() const { return num_modes_; }
  int size() const { return static_cast<int>(states_.size()); }
  FockState state(int i) const { return states_[static_cast<std::size_t>(i)]; }
  const std::vector<FockState>& states() const { return states_; }
  const std::optional<SectorLabel>& label() const { return label_; }
  bool is_full() const { return !label_.has_value(); }

  /// Position of a bit-set in this basis, or nullopt when outside it.
  std::optional<int> index_of(FockState s) const;

 private:
  int num_modes_;
  std::optional<SectorLabel> label_;
  std::vector<FockState> states_;
  std::unordered_map<std::uint32_t, int> lookup_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Enumerate the Fock basis for M modes, optionally restricted to one sector.
/// Unrestricted bases are capped at 2^16 states; sectors may go to the cap.
FockBasis build_basis(int num_modes, std::optional<SectorLabel> sector = {},
                      int mode_cap = kDefaultModeCap);

BasisPtr make_basis(int num_modes, std::optional<SectorLabel> sector = {},
                    int mode_cap = kDefaultModeCap);

// --- operator application -------------------------------------------------

struct ApplyResult {
  int sign = 1;                       // valid only when state is present
  std::optional<FockState> state;     // absent: amplitude is exactly zero
};

/// Apply c_mode (dagger=false) or c†_mode (dagger=true) to a basis state.
/// Sign convention: (-1)^(number of occupied modes with flat index below mode).
ApplyResult apply_operator(int mode, bool dagger, FockState s);

// --- operator expressions ---------------------------------------------------

struct OperatorFactor {
  ModeIndex mode;
  bool dagger = false;
};

struct OperatorTerm {
  Complex coeff{1.0, 0.0};
  std::vector<OperatorFactor> factors;  // applied right-to-left
};

/// A sum of monomials in creation/annihilation operators. An empty factor
/// list is the identity.
struct OperatorExpr {
  std::vector<OperatorTerm> terms;

  OperatorExpr& operator+=(const OperatorExpr& other);
  OperatorExpr& operator*=(Complex scale);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) {
    a += b;
    return a;
  }
  friend OperatorExpr operator*(OperatorExpr a, Complex s) {
    a *= s;
    return a;
  }
  friend OperatorExpr operator*(Complex s, OperatorExpr a) {
    a *= s;
    return a;
  }
  /// Operator product: (a*b)|psi> = a(b|psi>).
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  OperatorExpr adjoint() const;
};

OperatorExpr identity_expr();
OperatorExpr creation(ModeIndex mode);
OperatorExpr annihilation(ModeIndex mode);
OperatorExpr number_of(ModeIndex mode);

/// Sum of c†_b c_b over a flat-index range [lo, hi).
OperatorExpr number_operator(int lo, int hi);

/// Projector of a spinful site onto one of {|0>, |up>, |down>, |updown>}.
OperatorExpr spinful_site_projector(int site, LocalState which);

/// Apply all factors of a term right-to-left. Returns the accumulated sign
/// and resulting state, or nullopt when the amplitude vanishes.
std::optional<std::pair<int, FockState>> apply_term(
    std::span<const OperatorFactor> factors, FockState s);

/// Dense matrix of an operator expression in the given basis: element (r, c)
/// is the coefficient-weighted signed amplitude <basis[r]| expr |basis[c]>.
/// Components leaving a sector-restricted basis are projected out.
/// OpenMP-parallel over columns; realize_matrix_serial is the reference.
Eigen::MatrixXcd realize_matrix(const OperatorExpr& expr, const FockBasis& basis);
Eigen::MatrixXcd realize_matrix_serial(const OperatorExpr& expr,
                                       const FockBasis& basis);

// --- state vectors -----------------------------------------------------------

/// Dense complex amplitudes over a Fock basis (full space or one sector).
struct StateVector {
  BasisPtr basis;
  Eigen::VectorXcd amps;

  int num_modes() const { return basis->num_modes(); }
  double norm() const { return amps.norm(); }
};

StateVector make_state(BasisPtr basis, Eigen::VectorXcd amps);

/// Unit vector on the full 2^M basis concentrated on one bit-set.
StateVector basis_state(int num_modes, FockState s);

/// Re-express a sector-restricted vector on the full 2^M basis (no-op when
/// already full).
StateVector embed_full(const StateVector& v);

/// Group a full-basis vector's components by sector label. Only sectors with
/// nonzero amplitude appear; labels ascend in their natural order.
std::vector<std::pair<SectorLabel, StateVector>> sector_split(
    const StateVector& v, SectorFamily family);

}  // namespace fermient

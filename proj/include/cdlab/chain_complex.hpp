#ifndef CDLAB_CHAIN_COMPLEX_HPP
#define CDLAB_CHAIN_COMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdlab/f2_matrix.hpp"

namespace cdlab {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mod-2 chain: a set of cells of one dimension (coefficients are 0 or 1).
struct Chain {
  int dim = 0;
  std::set<std::string> support;

  bool empty() const { return support.empty(); }

  /// Symmetric difference, i.e. addition over GF(2).
  Chain& operator+=(const Chain& other) {
    if (other.dim != dim && !other.empty() && !empty())
      throw ComplexError("cannot add chains of different dimensions");
    if (empty()) dim = other.dim;
    for (const auto& cell : other.support)
      if (!support.erase(cell)) support.insert(cell);
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend bool operator==(const Chain&, const Chain&) = default;
};

struct Violation {
  std::string cell;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Cellular chain complex over GF(2): named cells graded by dimension and a
/// boundary incidence set per cell. Construction accepts anything; structural
/// checks live in validate().
class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  /// Appends a cell. The boundary is stored as given; duplicate or dangling
  /// names are reported by validate().
  ChainComplex& add_cell(const std::string& id, int dim, std::vector<std::string> boundary = {}) {
    if (dim < 0) throw ComplexError("cell '" + id + "' has negative dimension");
    if (static_cast<std::size_t>(dim) >= cells_.size()) cells_.resize(static_cast<std::size_t>(dim) + 1);
    cells_[static_cast<std::size_t>(dim)].push_back(id);
    entries_.push_back({id, dim, std::move(boundary)});
    return *this;
  }

  /// Replaces the boundary list of an existing cell.
  void set_boundary(const std::string& id, std::vector<std::string> boundary) {
    for (auto& e : entries_)
      if (e.id == id) {
        e.boundary = std::move(boundary);
        return;
      }
    throw ComplexError("unknown cell '" + id + "'");
  }

  /// Highest dimension carrying a cell; -1 for the empty complex.
  int top_dim() const {
    for (std::size_t k = cells_.size(); k-- > 0;)
      if (!cells_[k].empty()) return static_cast<int>(k);
    return -1;
  }

  const std::vector<std::string>& cells(int dim) const {
    static const std::vector<std::string> none;
    if (dim < 0 || static_cast<std::size_t>(dim) >= cells_.size()) return none;
    return cells_[static_cast<std::size_t>(dim)];
  }

  std::size_t cell_count(int dim) const { return cells(dim).size(); }

  std::size_t size() const { return entries_.size(); }

  struct Entry {
    std::string id;
    int dim;
    std::vector<std::string> boundary;
  };

  /// Cells in insertion order.
  const std::vector<Entry>& entries() const { return entries_; }

  bool has_cell(const std::string& id) const { return find(id) != nullptr; }

  int dim_of(const std::string& id) const {
    const Entry* e = find(id);
    if (!e) throw ComplexError("unknown cell '" + id + "'");
    return e->dim;
  }

  const std::vector<std::string>& boundary_of(const std::string& id) const {
    const Entry* e = find(id);
    if (!e) throw ComplexError("unknown cell '" + id + "'");
    return e->boundary;
  }

  /// Position of a cell within its dimension.
  std::size_t index_of(const std::string& id) const {
    const Entry* e = find(id);
    if (!e) throw ComplexError("unknown cell '" + id + "'");
    const auto& list = cells(e->dim);
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), id) - list.begin());
  }

  /// Matrix of the boundary map from dimension k to k-1: rows are the
  /// (k-1)-cells, columns the k-cells. Empty when either side has no cells.
  f2::BitMatrix boundary_matrix(int k) const {
    f2::BitMatrix m(cell_count(k - 1), cell_count(k));
    const auto& cols = cells(k);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& face : boundary_of(cols[c])) {
        if (dim_of(face) != k - 1) throw ComplexError("cell '" + cols[c] + "' has a face of the wrong dimension");
        m.flip(index_of(face), c);
      }
    return m;
  }

  f2::BitVector to_vector(const Chain& z) const {
    f2::BitVector v(cell_count(z.dim));
    for (const auto& cell : z.support) {
      if (!has_cell(cell)) throw ComplexError("unknown cell '" + cell + "'");
      if (dim_of(cell) != z.dim) throw ComplexError("cell '" + cell + "' is not of the chain's dimension");
      v.set(index_of(cell));
    }
    return v;
  }

  Chain to_chain(int dim, const f2::BitVector& v) const {
    Chain z{dim, {}};
    const auto& list = cells(dim);
    for (std::size_t i : v.support()) z.support.insert(list[i]);
    return z;
  }

  Chain boundary(const Chain& z) const {
    Chain out{z.dim - 1, {}};
    for (const auto& cell : z.support) {
      if (!has_cell(cell)) throw ComplexError("unknown cell '" + cell + "'");
      if (dim_of(cell) != z.dim) throw ComplexError("cell '" + cell + "' is not of the chain's dimension");
      for (const auto& face : boundary_of(cell))
        if (!out.support.erase(face)) out.support.insert(face);
    }
    return out;
  }

  const Entry* find(const std::string& id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }

 private:

  std::string name_;
  std::vector<std::vector<std::string>> cells_;
  std::vector<Entry> entries_;
};

/// Checks unique names, boundary faces that exist one dimension down, no
/// repeated faces, and that the boundary of every boundary vanishes mod 2.
/// Collects all violations.
inline ValidationReport validate(const ChainComplex& c) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& e : c.entries())
    if (!seen.insert(e.id).second) report.violations.push_back({e.id, "duplicate cell name"});

  bool structural_ok = report.ok();
  for (const auto& e : c.entries()) {
    std::set<std::string> faces;
    for (const auto& face : e.boundary) {
      if (!faces.insert(face).second) {
        report.violations.push_back({e.id, "face '" + face + "' listed twice"});
        structural_ok = false;
      }
      const ChainComplex::Entry* f = c.find(face);
      if (!f) {
        report.violations.push_back({e.id, "boundary refers to unknown cell '" + face + "'"});
        structural_ok = false;
      } else if (f->dim != e.dim - 1) {
        report.violations.push_back(
            {e.id, "face '" + face + "' has dimension " + std::to_string(f->dim) + ", expected " +
                       std::to_string(e.dim - 1)});
        structural_ok = false;
      }
    }
  }
  if (!structural_ok) return report;

  for (const auto& e : c.entries()) {
    if (e.dim < 2) continue;
    const Chain bb = c.boundary(c.boundary(Chain{e.dim, {e.id}}));
    if (!bb.empty()) {
      std::string terms;
      for (const auto& t : bb.support) terms += (terms.empty() ? "" : " + ") + t;
      report.violations.push_back({e.id, "boundary of boundary is " + terms + ", not 0"});
    }
  }
  return report;
}

inline void require_valid(const ChainComplex& c) {
  const auto report = validate(c);
  if (!report.ok())
    throw ComplexError("invalid complex '" + c.name() + "': " + report.violations.front().cell + ": " +
                       report.violations.front().message);
}

inline std::size_t boundary_rank(const ChainComplex& c, int k) {
  if (k <= 0 || k > c.top_dim()) return 0;
  return f2::rank(c.boundary_matrix(k));
}

/// Mod-2 Betti numbers b_0..b_top.
inline std::vector<std::size_t> betti(const ChainComplex& c) {
  require_valid(c);
  std::vector<std::size_t> out;
  for (int k = 0; k <= c.top_dim(); ++k)
    out.push_back(c.cell_count(k) - boundary_rank(c, k) - boundary_rank(c, k + 1));
  return out;
}

inline long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  for (int k = 0; k <= c.top_dim(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.cell_count(k));
  return chi;
}

inline bool is_cycle(const ChainComplex& c, const Chain& z) { return c.boundary(z).empty(); }

/// The chain whose boundary is z, if any.
inline std::optional<Chain> boundary_preimage(const ChainComplex& c, const Chain& z) {
  if (z.empty()) return Chain{z.dim + 1, {}};
  if (z.dim + 1 > c.top_dim()) return std::nullopt;
  const auto result = f2::solve(c.boundary_matrix(z.dim + 1), c.to_vector(z));
  if (!result) return std::nullopt;
  return c.to_chain(z.dim + 1, result.solution);
}

inline bool is_boundary(const ChainComplex& c, const Chain& z) {
  if (!is_cycle(c, z)) throw ComplexError("is_boundary: chain is not a cycle");
  return boundary_preimage(c, z).has_value();
}

inline bool homologous(const ChainComplex& c, const Chain& z1, const Chain& z2) {
  if (!is_cycle(c, z1) || !is_cycle(c, z2)) throw ComplexError("homologous: both chains must be cycles");
  if (!z1.empty() && !z2.empty() && z1.dim != z2.dim) return false;
  return is_boundary(c, z1 + z2);
}

namespace detail {

inline bool support_less(const Chain& a, const Chain& b) {
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  return std::lexicographical_compare(a.support.begin(), a.support.end(), b.support.begin(), b.support.end());
}

// Kernels up to this dimension are enumerated exhaustively to find
// minimal-support representatives.
inline constexpr std::size_t max_enumerated_kernel = 20;

}  // namespace detail

/// Cycles whose classes form a basis of H_k. Representatives have minimal
/// support, ties broken lexicographically by cell name.
inline std::vector<Chain> homology_basis(const ChainComplex& c, int k) {
  require_valid(c);
  if (k < 0 || k > c.top_dim()) return {};
  const std::size_t n = c.cell_count(k);

  std::vector<f2::BitVector> cycles =
      k == 0 ? std::vector<f2::BitVector>{} : f2::kernel_basis(c.boundary_matrix(k));
  if (k == 0)
    for (std::size_t i = 0; i < n; ++i) {
      f2::BitVector v(n);
      v.set(i);
      cycles.push_back(std::move(v));
    }

  std::vector<f2::BitVector> image;
  if (k < c.top_dim()) {
    const f2::BitMatrix d = c.boundary_matrix(k + 1);
    const f2::BitMatrix dt = d.transpose();
    for (std::size_t j = 0; j < dt.rows(); ++j) image.push_back(dt.row(j));
  }

  std::vector<f2::BitVector> candidates;
  if (cycles.size() <= detail::max_enumerated_kernel) {
    // Enumerate the full cycle space and order by support.
    std::vector<Chain> all;
    const std::size_t total = std::size_t{1} << cycles.size();
    for (std::size_t mask = 1; mask < total; ++mask) {
      f2::BitVector v(n);
      for (std::size_t i = 0; i < cycles.size(); ++i)
        if ((mask >> i) & 1u) v ^= cycles[i];
      all.push_back(c.to_chain(k, v));
    }
    std::sort(all.begin(), all.end(), detail::support_less);
    for (const auto& z : all) candidates.push_back(c.to_vector(z));
  } else {
    candidates = cycles;
  }

  std::vector<Chain> basis;
  for (const auto& v : f2::independent_modulo(candidates, image, n)) basis.push_back(c.to_chain(k, v));
  return basis;
}

}  // namespace cdlab

#endif  // CDLAB_CHAIN_COMPLEX_HPP

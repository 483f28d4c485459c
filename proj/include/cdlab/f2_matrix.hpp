#ifndef CDLAB_F2_MATRIX_HPP
#define CDLAB_F2_MATRIX_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// \namespace cdlab::f2
/// \brief Dense linear algebra over the two-element field.
namespace cdlab::f2 {

using word_t = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + word_bits - 1) / word_bits;
}

/// Bit-packed vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}
  BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b != 0);
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
  bool operator[](std::size_t i) const { return get(i); }

  void set(std::size_t i, bool value = true) {
    const word_t mask = word_t{1} << (i % word_bits);
    if (value)
      words_[i / word_bits] |= mask;
    else
      words_[i / word_bits] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / word_bits] ^= word_t{1} << (i % word_bits); }

  BitVector& operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch in xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](word_t w) { return w == 0; });
  }
  bool any() const { return !none(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (word_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Parity of the bitwise AND, i.e. the GF(2) dot product.
  bool dot(const BitVector& other) const {
    if (other.size_ != size_) throw std::invalid_argument("BitVector: size mismatch in dot");
    word_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  /// Index of the first set bit, or size() when the vector is zero.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<word_t> words_;
};

/// Dense row-major matrix over GF(2); each row is a packed BitVector.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
  BitMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("BitMatrix: ragged initializer");
      rows_.emplace_back(r);
    }
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  void append_row(BitVector r) {
    if (r.size() != cols_) throw std::invalid_argument("BitMatrix: appended row has wrong width");
    rows_.push_back(std::move(r));
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) t.set(c, r);
    return t;
  }

  BitVector multiply(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BitMatrix: vector length does not match cols");
    BitVector y(rows());
    for (std::size_t r = 0; r < rows(); ++r) y.set(r, rows_[r].dot(x));
    return y;
  }

  BitMatrix multiply(const BitMatrix& other) const {
    if (other.rows() != cols_) throw std::invalid_argument("BitMatrix: inner dimensions differ");
    BitMatrix out(rows(), other.cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t k = 0; k < cols_; ++k)
        if (get(r, k)) out.rows_[r] ^= other.rows_[k];
    return out;
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.none(); });
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Reduced row echelon form produced by XOR elimination. Pivot columns are
/// chosen as the first nonzero entry scanning left to right.
struct Echelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot column of reduced row i
  std::size_t rank() const { return pivot_cols.size(); }
};

inline Echelon row_reduce(BitMatrix m) {
  Echelon e;
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.cols() && next < m.rows(); ++col) {
    std::size_t pivot = next;
    while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(m.row(pivot), m.row(next));
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != next && m.get(r, col)) m.row(r) ^= m.row(next);
    e.pivot_cols.push_back(col);
    ++next;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank(); }

/// Basis of {v : m v = 0}; one vector per free column of the echelon form.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(m.cols());
    v.set(free);
    for (std::size_t r = 0; r < e.rank(); ++r)
      if (e.reduced.get(r, free)) v.set(e.pivot_cols[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolveStatus { solved, inconsistent, dimension_mismatch };

struct SolveResult {
  SolveStatus status = SolveStatus::inconsistent;
  BitVector solution;
  explicit operator bool() const { return status == SolveStatus::solved; }
};

/// Finds x with m x = b (free variables set to zero).
inline SolveResult solve(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) return {SolveStatus::dimension_mismatch, {}};

  // Reduce the augmented matrix [m | b].
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) aug.set(r, c);
    aug.set(r, m.cols(), b.get(r));
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return {SolveStatus::inconsistent, {}};

  BitVector x(m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r)
    if (e.reduced.get(r, m.cols())) x.set(e.pivot_cols[r]);
  return {SolveStatus::solved, std::move(x)};
}

/// Incremental span over GF(2): keeps a reduced basis so membership and
/// independence tests are a single reduction pass.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return basis_.size(); }

  BitVector reduce(BitVector v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (v.get(pivots_[i])) v ^= basis_[i];
    return v;
  }

  bool contains(const BitVector& v) const { return reduce(v).none(); }

  /// Adds v; returns false if it was already in the span.
  bool insert(const BitVector& v) {
    if (v.size() != dim_) throw std::invalid_argument("Span: vector has wrong length");
    BitVector r = reduce(v);
    if (r.none()) return false;
    const std::size_t p = r.first_set();
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].get(p)) basis_[i] ^= r;
    basis_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Selects, in order, the candidates that are linearly independent modulo
/// the span of `image`. Used to pick homology and cohomology bases.
inline std::vector<BitVector> independent_modulo(const std::vector<BitVector>& candidates,
                                                 const std::vector<BitVector>& image, std::size_t dim) {
  Span span(dim);
  for (const auto& v : image) span.insert(v);
  std::vector<BitVector> picked;
  for (const auto& c : candidates)
    if (span.insert(c)) picked.push_back(c);
  return picked;
}

}  // namespace cdlab::f2

#endif  // CDLAB_F2_MATRIX_HPP

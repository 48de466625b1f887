#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace obci {

/// Carrier element, identified by index. Labels are presentation only.
using Elem = std::uint8_t;

/// Subsets are 64-bit masks, so carriers are capped here.
inline constexpr std::size_t kMaxCarrier = 64;

/// Raised for malformed tables, bad labels and universe mismatches.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside its precondition
/// (e.g. a closedness query on a set that is not a filter).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a search or sweep would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset of a carrier {0, ..., n-1}.
class Subset {
 public:
  Subset() = default;
  Subset(std::size_t n, std::uint64_t bits) : n_(n), bits_(bits & full_mask(n)) {
    if (n > kMaxCarrier) throw StructureError("carrier too large for a subset");
  }

  static Subset empty(std::size_t n) { return {n, 0}; }
  static Subset full(std::size_t n) { return {n, full_mask(n)}; }
  static Subset of(std::size_t n, std::initializer_list<Elem> elems) {
    Subset s(n, 0);
    for (Elem e : elems) s.insert(e);
    return s;
  }

  static constexpr std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  std::size_t universe_size() const { return n_; }
  std::uint64_t bits() const { return bits_; }

  bool contains(std::size_t x) const { return (bits_ >> x) & 1U; }
  void insert(std::size_t x) {
    check_index(x);
    bits_ |= std::uint64_t{1} << x;
  }
  void erase(std::size_t x) {
    check_index(x);
    bits_ &= ~(std::uint64_t{1} << x);
  }

  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_mask(n_); }

  bool is_subset_of(const Subset& other) const {
    same_universe(other);
    return (bits_ & ~other.bits_) == 0;
  }

  Subset operator|(const Subset& o) const {
    same_universe(o);
    return {n_, bits_ | o.bits_};
  }
  Subset operator&(const Subset& o) const {
    same_universe(o);
    return {n_, bits_ & o.bits_};
  }
  Subset complement() const { return {n_, ~bits_}; }

  /// Members in increasing index order.
  std::vector<Elem> members() const {
    std::vector<Elem> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<Elem>(std::countr_zero(b)));
    }
    return out;
  }

  void same_universe(const Subset& o) const {
    if (o.n_ != n_) {
      throw StructureError("subset universe mismatch: " + std::to_string(n_) + " vs " +
                           std::to_string(o.n_));
    }
  }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  void check_index(std::size_t x) const {
    if (x >= n_) throw StructureError("element index " + std::to_string(x) + " out of range");
  }

  std::size_t n_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace obci

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coedge/complex.hpp"

namespace coedge {

/// Coefficient field: the rationals or F_p for a prime p < 2^31.
class CoefficientField {
 public:
  enum class Kind { Rationals, Prime };

  static CoefficientField rationals() noexcept { return CoefficientField(Kind::Rationals, 0); }
  /// Throws ArgumentError unless p is a prime below 2^31.
  static CoefficientField prime(std::uint32_t p);
  /// "Q" or "Fp:<prime>".
  static CoefficientField parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_rationals() const noexcept { return kind_ == Kind::Rationals; }
  std::string to_string() const;

  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;

 private:
  CoefficientField(Kind k, std::uint32_t m) : kind_(k), modulus_(m) {}
  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t p);

/// ∂_k from k-chains to (k-1)-chains in sparse triplet form; rows follow the
/// (k-1)-face ordinals, columns the k-face ordinals. For k = 0 this is the
/// augmentation map (one row, all entries +1).
struct BoundaryMatrix {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    std::int8_t value;
  };
  int k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;  // sorted by (col, row)
};

BoundaryMatrix boundary_matrix(const FaceTable& faces, int k);
/// Throws ArgumentError unless 0 <= k <= dim_cap.
BoundaryMatrix boundary_matrix(const CliqueComplex& c, int k);

/// Exact rank. Over Q: fraction-free integer elimination, 64-bit with
/// overflow detection and a GMP fallback. Over F_p: modular elimination.
/// Pivots follow the Markowitz rule with ties broken by (row, column).
std::size_t rank_over_field(const BoundaryMatrix& m, const CoefficientField& field);

/// Reduced Betti numbers over one field for degrees lo..hi.
struct HomologyProfile {
  CoefficientField field = CoefficientField::rationals();
  int lo = 0;
  std::vector<std::uint64_t> betti;  // betti[i - lo]

  int hi() const noexcept { return lo + static_cast<int>(betti.size()) - 1; }
  /// 0 outside the computed range.
  std::uint64_t operator[](int degree) const noexcept {
    return degree < lo || degree > hi() ? 0 : betti[static_cast<std::size_t>(degree - lo)];
  }
};

/// Reduced homology of a complex given by a downward-closed face table with
/// every dimension up to hi + 1 present.
HomologyProfile reduced_betti(const FaceTable& faces, const CoefficientField& field, int lo, int hi);
/// Degrees must lie in [-1, dim_cap]. When the complex is truncated the
/// (hi+1)-faces needed for the top degree are re-enumerated from the graph.
HomologyProfile reduced_betti(const CliqueComplex& c, const CoefficientField& field, int lo, int hi);
/// All degrees -1..dim Δ of the full flag complex of g.
HomologyProfile reduced_betti(const Graph& g, const CoefficientField& field);

}  // namespace coedge

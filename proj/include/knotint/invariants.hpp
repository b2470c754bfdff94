#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knotint/curve.hpp"
#include "knotint/diagram.hpp"
#include "knotint/polynomial.hpp"

namespace knotint {

struct CatalogEntry {
  std::string name;
  int crossing_number;
  LaurentPoly poly;  // normalized Alexander polynomial
};

// 0_1, 3_1, 4_1, 5_1, 5_2, 6_1, 6_2, 6_3, 3_1#3_1, 3_1#4_1. Pairwise distinct
// polynomials are checked when the table is first built.
std::span<const CatalogEntry> catalog();

// Knot type up to mirror image: a catalog entry, or an off-catalog polynomial.
class KnotLabel {
 public:
  KnotLabel() = default;  // unknot
  static KnotLabel from_catalog(std::size_t index);
  static KnotLabel other(LaurentPoly poly);
  // Off-catalog type known only by its modular key (see classify_modular).
  static KnotLabel other_key(std::uint64_t key);
  static KnotLabel unknot() { return {}; }

  bool is_other() const noexcept { return index_ < 0; }
  bool is_unknot() const noexcept { return index_ == 0; }
  int catalog_index() const noexcept { return index_; }
  std::string name() const;
  // Crossing number for catalog types; off-catalog labels sort last.
  int crossing_number() const noexcept;
  // Throws UnresolvedType for an OTHER label built from a key alone.
  const LaurentPoly& poly() const;
  bool has_poly() const noexcept { return index_ >= 0 || has_poly_; }

  // OTHER labels compare by key, so exact and key-only labels of the same
  // polynomial are equal.
  friend bool operator==(const KnotLabel& a, const KnotLabel& b) {
    return a.index_ == b.index_ && (a.index_ >= 0 || a.key_ == b.key_);
  }
  // Simpler types first: crossing number, then name; OTHER last.
  friend bool operator<(const KnotLabel& a, const KnotLabel& b);

 private:
  int index_ = 0;
  LaurentPoly other_;
  bool has_poly_ = false;
  std::uint64_t key_ = 0;
};

// Parses catalog names ("3_1", "3_1#4_1", ...). Off-catalog names are rejected.
std::optional<KnotLabel> label_from_name(const std::string& name);

// Crossing-relation matrix determinant, one row and column deleted, unit
// normalized. Exact integer arithmetic throughout.
LaurentPoly alexander(const KnotDiagram& diagram);

// Determinant of the reduced relation matrix at t modulo 2^61 - 1. Equals
// +-t^k times the Alexander polynomial at t.
std::uint64_t alexander_mod(const KnotDiagram& diagram, std::uint64_t t);

KnotLabel classify(const LaurentPoly& poly);

// Classifies a diagram: a modular fingerprint is matched against the catalog,
// and only off-catalog diagrams pay for the exact polynomial.
KnotLabel classify(const KnotDiagram& diagram);

// Same classes as classify, but an off-catalog diagram gets a key-only label:
// D(t)D(1/t) = Delta(t)^2 mod p at two points, which is free of the +-t^k
// ambiguity of the determinant. Used wherever only type equality matters.
KnotLabel classify_modular(const KnotDiagram& diagram);

// True when the diagram's Alexander polynomial equals the label's.
bool has_type(const KnotDiagram& diagram, const KnotLabel& label);

// Classifies a closed curve from one generic projection with
// classify_modular; degenerate directions are resampled from the seed stream.
KnotLabel classify_curve(const PLCurve& curve, std::uint64_t seed = 0);
KnotDiagram generic_projection(const PLCurve& curve, std::uint64_t seed);

// Gauss double sums over non-adjacent edge pairs with the exact per-pair
// solid angle.
double writhe(const PLCurve& curve);
double acn(const PLCurve& curve);
// Signed contribution of one edge pair (in units of crossings).
double edge_pair_writhe(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4);

}  // namespace knotint

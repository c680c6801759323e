#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hvlab/field.hpp"
#include "hvlab/linalg.hpp"

namespace hvlab {

using Coords = std::vector<Elem>;
/// Rank of a normalized point in the lexicographic enumeration of P^m.
using PointIndex = std::uint32_t;

/// A point of P^m, normalized so that its first nonzero coordinate is 1.
struct ProjPoint {
  Coords coords;

  auto operator<=>(const ProjPoint&) const = default;
};

/// Scales a nonzero vector so its first nonzero entry is 1.
ProjPoint normalize(const Field& f, Coords v);
/// Normalizes in place; returns false for the zero vector.
bool normalize_in_place(const Field& f, std::span<Elem> v) noexcept;

/// (s^{n} - 1)/(s - 1): number of points of P^{n-1}(F_s).
std::uint64_t projective_count(std::uint64_t s, int n_coords);

/// Points of P^m(F) with O(m) rank/unrank. Points are ordered
/// lexicographically by coordinate indices, so (0,...,0,1) comes first and
/// the points with x_0 = 1 come last.
class PointSpace {
 public:
  PointSpace(FieldPtr f, int m);

  const Field& field() const noexcept { return *f_; }
  const FieldPtr& field_ptr() const noexcept { return f_; }
  int m() const noexcept { return m_; }
  int ncoords() const noexcept { return m_ + 1; }
  std::uint64_t count() const noexcept { return count_; }

  PointIndex rank(std::span<const Elem> normalized) const noexcept;
  void unrank(PointIndex idx, std::span<Elem> out) const noexcept;
  ProjPoint point(PointIndex idx) const;
  /// Rank of an arbitrary nonzero vector (normalizes a copy).
  PointIndex rank_any(std::span<const Elem> v) const;

  /// Visits points [begin, end) in order; fn(PointIndex, std::span<const Elem>).
  template <class Fn>
  void for_each_in_range(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    std::vector<Elem> x(static_cast<std::size_t>(ncoords()));
    unrank(static_cast<PointIndex>(begin), x);
    for (std::uint64_t i = begin;;) {
      fn(static_cast<PointIndex>(i), std::span<const Elem>(x));
      if (++i == end) break;
      advance(x);
    }
  }
  template <class Fn>
  void for_each(Fn&& fn) const {
    for_each_in_range(0, count_, std::forward<Fn>(fn));
  }

  std::vector<ProjPoint> points() const;

 private:
  void advance(std::span<Elem> x) const noexcept;

  FieldPtr f_;
  int m_;
  std::uint64_t count_;
  std::vector<std::uint64_t> offset_;  // offset_[i]: first rank with leading coordinate i
};

/// A projective linear subspace of P^m, stored as a reduced row-echelon basis
/// ((dim+1) x (m+1)). The representative is canonical, so equality and
/// hashing are structural.
struct Flat {
  int m = 0;
  int dim = -1;
  Matrix basis;

  bool operator==(const Flat& o) const { return m == o.m && dim == o.dim && basis == o.basis; }
  bool operator<(const Flat& o) const;
};

struct FlatHash {
  std::size_t operator()(const Flat& x) const noexcept;
};

/// Row-reduces `rows` (any number of rows, m+1 columns) into a flat.
/// Throws EmptyInput when every row is zero.
Flat make_flat(const Field& f, Matrix rows);
Flat span(const Field& f, std::span<const ProjPoint> points);
Flat point_flat(const ProjPoint& p);
/// Whole-space flat of P^m.
Flat whole_space(int m);

std::uint64_t flat_point_count(std::uint64_t s, int dim);

/// Visits the points of a flat, already normalized; fn(std::span<const Elem>).
void for_each_flat_point(const Field& f, const Flat& x,
                         const std::function<void(std::span<const Elem>)>& fn);
std::vector<ProjPoint> flat_points(const Field& f, const Flat& x);
std::vector<PointIndex> flat_point_indices(const PointSpace& space, const Flat& x);

bool incidence(const Field& f, const ProjPoint& p, const Flat& x);
bool incidence(const Field& f, std::span<const Elem> p, const Flat& x);
/// inner ⊆ outer.
bool contains(const Field& f, const Flat& outer, const Flat& inner);
Flat join(const Field& f, const Flat& a, const Flat& b);
std::optional<Flat> intersect(const Field& f, const Flat& a, const Flat& b);

/// Dual subspace {a : a·x = 0 for all x in X}; nullopt for the whole space.
std::optional<Flat> annihilator(const Field& f, const Flat& x);
/// Hyperplane {x : Σ c_i x_i = 0}.
Flat hyperplane_from_coeffs(const Field& f, std::span<const Elem> coeffs);
/// Normalized coefficient vector of a hyperplane.
Coords hyperplane_coeffs(const Field& f, const Flat& hyperplane);

/// All flats of a fixed dimension in P^m, ordered by pivot-column set
/// (lexicographic) and then by free entries (row-major odometer).
class FlatSpace {
 public:
  FlatSpace(FieldPtr f, int m, int dim);

  std::uint64_t count() const noexcept { return total_; }
  Flat unrank(std::uint64_t idx) const;
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < total_; ++i) fn(unrank(i));
  }

 private:
  struct Pattern {
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
    std::uint64_t first = 0;
    std::uint64_t count = 0;
  };

  FieldPtr f_;
  int m_;
  int dim_;
  std::vector<Pattern> patterns_;
  std::uint64_t total_ = 0;
};

/// All flats of dimension `dim` inside X, in X's parameter-coordinate order.
std::vector<Flat> subflats(const FieldPtr& f, const Flat& x, int dim);
/// All flats of dimension `dim` containing X.
std::vector<Flat> flats_through(const FieldPtr& f, const Flat& x, int dim);

/// B(ℓ): planes of P^4 containing a line.
std::vector<Flat> book_of_planes(const FieldPtr& f, const Flat& line);
/// B_Σ(ℓ): planes with ℓ ⊂ Π ⊂ Σ.
std::vector<Flat> book_in_hyperplane(const FieldPtr& f, const Flat& line, const Flat& hyperplane);
std::vector<Flat> hyperplanes_through_plane(const FieldPtr& f, const Flat& plane);
/// One line through P per point of the coordinate hyperplane x_i = 0, where i
/// is the position of P's leading 1.
std::vector<Flat> lines_through(const Field& f, const ProjPoint& p, int m);

}  // namespace hvlab

#include "hvlab/projective.hpp"

#include <algorithm>
#include <string>

namespace hvlab {

namespace {

// Visits every normalized vector of length n over a field of size s.
template <class Fn>
void for_each_normalized(std::size_t n, Elem s, Fn&& fn) {
  std::vector<Elem> y(n, 0);
  for (std::size_t lead = n; lead-- > 0;) {
    std::fill(y.begin(), y.end(), 0);
    y[lead] = 1;
    for (;;) {
      fn(std::span<const Elem>(y));
      std::size_t j = n;
      while (j-- > lead + 1) {
        if (++y[j] < s) break;
        y[j] = 0;
      }
      if (j == lead) break;
    }
  }
}

void combos(std::size_t n, std::size_t r, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  if (r > n) return;
  for (;;) {
    out.push_back(c);
    std::size_t i = r;
    while (i-- > 0) {
      if (c[i] < n - r + i) break;
    }
    if (i == static_cast<std::size_t>(-1)) return;
    ++c[i];
    for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

bool normalize_in_place(const Field& f, std::span<Elem> v) noexcept {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      if (v[i] != 1) {
        const Elem s = f.inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(v[j], s);
      }
      return true;
    }
  }
  return false;
}

ProjPoint normalize(const Field& f, Coords v) {
  if (!normalize_in_place(f, v)) throw Error(Errc::InvalidArgument, "zero vector is not a point");
  return ProjPoint{std::move(v)};
}

std::uint64_t projective_count(std::uint64_t s, int n_coords) {
  std::uint64_t total = 0;
  std::uint64_t pw = 1;
  for (int i = 0; i < n_coords; ++i) {
    total += pw;
    pw *= s;
  }
  return total;
}

PointSpace::PointSpace(FieldPtr f, int m) : f_(std::move(f)), m_(m) {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative ambient dimension");
  const std::uint64_t s = f_->size();
  count_ = projective_count(s, m + 1);
  if (count_ > 0xFFFFFFFFull) throw Error(Errc::SizeBudgetExceeded, "point space too large to index");
  offset_.resize(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) offset_[i] = projective_count(s, m - i);
}

PointIndex PointSpace::rank(std::span<const Elem> x) const noexcept {
  int lead = 0;
  while (lead < m_ && x[lead] == 0) ++lead;
  std::uint64_t t = 0;
  const std::uint64_t s = f_->size();
  for (int j = lead + 1; j <= m_; ++j) t = t * s + x[j];
  return static_cast<PointIndex>(offset_[lead] + t);
}

PointIndex PointSpace::rank_any(std::span<const Elem> v) const {
  std::vector<Elem> x(v.begin(), v.end());
  if (!normalize_in_place(*f_, x)) throw Error(Errc::InvalidArgument, "zero vector is not a point");
  return rank(x);
}

void PointSpace::unrank(PointIndex idx, std::span<Elem> out) const noexcept {
  const std::uint64_t s = f_->size();
  int lead = m_;
  while (lead > 0 && idx >= offset_[lead - 1]) --lead;
  std::fill(out.begin(), out.end(), 0);
  out[lead] = 1;
  std::uint64_t t = idx - offset_[lead];
  for (int j = m_; j > lead; --j) {
    out[j] = static_cast<Elem>(t % s);
    t /= s;
  }
}

ProjPoint PointSpace::point(PointIndex idx) const {
  ProjPoint p{Coords(static_cast<std::size_t>(ncoords()))};
  unrank(idx, p.coords);
  return p;
}

void PointSpace::advance(std::span<Elem> x) const noexcept {
  const Elem s = f_->size();
  int lead = 0;
  while (lead < m_ && x[lead] == 0) ++lead;
  for (int j = m_; j > lead; --j) {
    if (++x[j] < s) return;
    x[j] = 0;
  }
  if (lead == 0) return;  // wrapped past the last point
  x[lead] = 0;
  x[lead - 1] = 1;
}

std::vector<ProjPoint> PointSpace::points() const {
  std::vector<ProjPoint> out;
  out.reserve(count_);
  for_each([&](PointIndex, std::span<const Elem> x) { out.push_back({Coords(x.begin(), x.end())}); });
  return out;
}

bool Flat::operator<(const Flat& o) const {
  if (m != o.m) return m < o.m;
  if (dim != o.dim) return dim < o.dim;
  return basis.data() < o.basis.data();
}

std::size_t FlatHash::operator()(const Flat& x) const noexcept {
  std::size_t h = static_cast<std::size_t>(x.m) * 1315423911u + static_cast<std::size_t>(x.dim + 1);
  for (Elem e : x.basis.data()) h = h * 1000003u ^ e;
  return h;
}

Flat make_flat(const Field& f, Matrix rows) {
  const std::size_t cols = rows.cols();
  if (cols == 0) throw Error(Errc::EmptyInput, "flat with no coordinates");
  const auto pivots = rref_in_place(f, rows);
  if (pivots.empty()) throw Error(Errc::EmptyInput, "rows span the zero subspace");
  Matrix basis(pivots.size(), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) basis(i, j) = rows(i, j);
  }
  return Flat{static_cast<int>(cols) - 1, static_cast<int>(pivots.size()) - 1, std::move(basis)};
}

Flat span(const Field& f, std::span<const ProjPoint> points) {
  if (points.empty()) throw Error(Errc::EmptyInput, "span of no points");
  const std::size_t cols = points.front().coords.size();
  Matrix rows(points.size(), cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].coords.size() != cols) throw Error(Errc::DimensionMismatch, "points from different spaces");
    for (std::size_t j = 0; j < cols; ++j) rows(i, j) = points[i].coords[j];
  }
  return make_flat(f, std::move(rows));
}

Flat point_flat(const ProjPoint& p) {
  Matrix rows(1, p.coords.size(), p.coords);
  return Flat{static_cast<int>(p.coords.size()) - 1, 0, std::move(rows)};
}

Flat whole_space(int m) {
  return Flat{m, m, Matrix::identity(static_cast<std::size_t>(m + 1))};
}

std::uint64_t flat_point_count(std::uint64_t s, int dim) { return projective_count(s, dim + 1); }

void for_each_flat_point(const Field& f, const Flat& x,
                         const std::function<void(std::span<const Elem>)>& fn) {
  const std::size_t r = x.basis.rows();
  const std::size_t c = x.basis.cols();
  std::vector<Elem> pt(c);
  for_each_normalized(r, f.size(), [&](std::span<const Elem> y) {
    std::fill(pt.begin(), pt.end(), 0);
    for (std::size_t k = 0; k < r; ++k) {
      if (y[k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) pt[j] = f.add(pt[j], f.mul(y[k], x.basis(k, j)));
    }
    // Leading coefficient of y sits on a pivot column, so pt is already normalized.
    fn(std::span<const Elem>(pt));
  });
}

std::vector<ProjPoint> flat_points(const Field& f, const Flat& x) {
  std::vector<ProjPoint> out;
  for_each_flat_point(f, x, [&](std::span<const Elem> p) { out.push_back({Coords(p.begin(), p.end())}); });
  return out;
}

std::vector<PointIndex> flat_point_indices(const PointSpace& space, const Flat& x) {
  std::vector<PointIndex> out;
  out.reserve(flat_point_count(space.field().size(), x.dim));
  for_each_flat_point(space.field(), x, [&](std::span<const Elem> p) { out.push_back(space.rank(p)); });
  return out;
}

bool incidence(const Field& f, std::span<const Elem> p, const Flat& x) {
  if (p.size() != x.basis.cols()) throw Error(Errc::DimensionMismatch, "point and flat in different spaces");
  std::vector<Elem> v(p.begin(), p.end());
  // Reduce against the RREF rows; the point lies in the flat iff nothing remains.
  for (std::size_t i = 0; i < x.basis.rows(); ++i) {
    std::size_t piv = 0;
    while (x.basis(i, piv) == 0) ++piv;
    const Elem c = v[piv];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(nc, x.basis(i, j)));
  }
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

bool incidence(const Field& f, const ProjPoint& p, const Flat& x) { return incidence(f, p.coords, x); }

bool contains(const Field& f, const Flat& outer, const Flat& inner) {
  if (inner.dim > outer.dim) return false;
  for (std::size_t i = 0; i < inner.basis.rows(); ++i) {
    if (!incidence(f, inner.basis.row(i), outer)) return false;
  }
  return true;
}

Flat join(const Field& f, const Flat& a, const Flat& b) {
  if (a.m != b.m) throw Error(Errc::DimensionMismatch, "flats in different spaces");
  Matrix rows(a.basis.rows() + b.basis.rows(), a.basis.cols());
  for (std::size_t i = 0; i < a.basis.rows(); ++i) {
    for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) = a.basis(i, j);
  }
  for (std::size_t i = 0; i < b.basis.rows(); ++i) {
    for (std::size_t j = 0; j < rows.cols(); ++j) rows(a.basis.rows() + i, j) = b.basis(i, j);
  }
  return make_flat(f, std::move(rows));
}

std::optional<Flat> annihilator(const Field& f, const Flat& x) {
  Matrix ns = nullspace(f, x.basis);
  if (ns.rows() == 0) return std::nullopt;
  return make_flat(f, std::move(ns));
}

std::optional<Flat> intersect(const Field& f, const Flat& a, const Flat& b) {
  if (a.m != b.m) throw Error(Errc::DimensionMismatch, "flats in different spaces");
  const auto aa = annihilator(f, a);
  const auto bb = annihilator(f, b);
  if (!aa) return b;
  if (!bb) return a;
  const Flat dual = join(f, *aa, *bb);
  return annihilator(f, dual);
}

Flat hyperplane_from_coeffs(const Field& f, std::span<const Elem> coeffs) {
  Matrix row(1, coeffs.size(), Coords(coeffs.begin(), coeffs.end()));
  Matrix ns = nullspace(f, row);
  if (ns.rows() + 1 != coeffs.size()) throw Error(Errc::InvalidArgument, "zero linear form");
  return make_flat(f, std::move(ns));
}

Coords hyperplane_coeffs(const Field& f, const Flat& hyperplane) {
  if (hyperplane.dim != hyperplane.m - 1) throw Error(Errc::DimensionMismatch, "not a hyperplane");
  const auto a = annihilator(f, hyperplane);
  return a->basis.row(0);
}

FlatSpace::FlatSpace(FieldPtr f, int m, int dim) : f_(std::move(f)), m_(m), dim_(dim) {
  if (dim < 0 || dim > m) throw Error(Errc::DimensionMismatch, "flat dimension out of range");
  std::vector<std::vector<std::size_t>> cs;
  combos(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(dim + 1), cs);
  const std::uint64_t s = f_->size();
  for (auto& c : cs) {
    Pattern pat;
    pat.pivots = c;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t col = c[i] + 1; col <= static_cast<std::size_t>(m); ++col) {
        if (std::find(c.begin(), c.end(), col) == c.end()) pat.free.emplace_back(i, col);
      }
    }
    pat.first = total_;
    pat.count = 1;
    for (std::size_t i = 0; i < pat.free.size(); ++i) pat.count *= s;
    total_ += pat.count;
    patterns_.push_back(std::move(pat));
  }
}

Flat FlatSpace::unrank(std::uint64_t idx) const {
  auto it = std::upper_bound(patterns_.begin(), patterns_.end(), idx,
                             [](std::uint64_t v, const Pattern& p) { return v < p.first; });
  const Pattern& pat = *(it - 1);
  std::uint64_t local = idx - pat.first;
  const std::size_t r = static_cast<std::size_t>(dim_ + 1);
  Matrix basis(r, static_cast<std::size_t>(m_ + 1));
  for (std::size_t i = 0; i < r; ++i) basis(i, pat.pivots[i]) = 1;
  const std::uint64_t s = f_->size();
  for (std::size_t k = pat.free.size(); k-- > 0;) {
    basis(pat.free[k].first, pat.free[k].second) = static_cast<Elem>(local % s);
    local /= s;
  }
  return Flat{m_, dim_, std::move(basis)};
}

std::vector<Flat> subflats(const FieldPtr& f, const Flat& x, int dim) {
  FlatSpace inner(f, x.dim, dim);
  std::vector<Flat> out;
  out.reserve(inner.count());
  inner.for_each([&](const Flat& y) { out.push_back(make_flat(*f, multiply(*f, y.basis, x.basis))); });
  return out;
}

std::vector<Flat> flats_through(const FieldPtr& f, const Flat& x, int dim) {
  if (dim < x.dim || dim > x.m) throw Error(Errc::DimensionMismatch, "no flats of that dimension through X");
  if (dim == x.m) return {whole_space(x.m)};
  const auto ann = annihilator(*f, x);
  if (!ann) throw Error(Errc::DimensionMismatch, "X is the whole space");
  std::vector<Flat> out;
  for (const Flat& d : subflats(f, *ann, x.m - 1 - dim)) out.push_back(*annihilator(*f, d));
  return out;
}

std::vector<Flat> book_of_planes(const FieldPtr& f, const Flat& line) {
  if (line.dim != 1 || line.m != 4) throw Error(Errc::DimensionMismatch, "book of planes needs a line of P^4");
  return flats_through(f, line, 2);
}

std::vector<Flat> book_in_hyperplane(const FieldPtr& f, const Flat& line, const Flat& hyperplane) {
  if (hyperplane.dim != hyperplane.m - 1) throw Error(Errc::DimensionMismatch, "not a hyperplane");
  if (!contains(*f, hyperplane, line)) throw Error(Errc::ContainmentViolated, "line not inside hyperplane");
  std::vector<Flat> out;
  for (auto& pl : book_of_planes(f, line)) {
    if (contains(*f, hyperplane, pl)) out.push_back(std::move(pl));
  }
  return out;
}

std::vector<Flat> hyperplanes_through_plane(const FieldPtr& f, const Flat& plane) {
  if (plane.dim != 2 || plane.m != 4) throw Error(Errc::DimensionMismatch, "needs a plane of P^4");
  return flats_through(f, plane, 3);
}

std::vector<Flat> lines_through(const Field& f, const ProjPoint& p, int m) {
  if (static_cast<int>(p.coords.size()) != m + 1) throw Error(Errc::DimensionMismatch, "point not in P^m");
  std::size_t lead = 0;
  while (p.coords[lead] == 0) ++lead;
  std::vector<Flat> out;
  for_each_normalized(static_cast<std::size_t>(m), f.size(), [&](std::span<const Elem> y) {
    Matrix rows(2, static_cast<std::size_t>(m + 1));
    for (std::size_t j = 0; j <= static_cast<std::size_t>(m); ++j) rows(0, j) = p.coords[j];
    for (std::size_t j = 0, k = 0; j <= static_cast<std::size_t>(m); ++j) {
      rows(1, j) = (j == lead) ? 0 : y[k++];
    }
    out.push_back(make_flat(f, std::move(rows)));
  });
  return out;
}

}  // namespace hvlab

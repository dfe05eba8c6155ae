#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jetvar/expr.hpp"

namespace jetvar {

/// T^rM over an n-dimensional base: coordinates x^i, y^{(1)i}, ..., y^{(r)i}.
class JetSpace {
 public:
  JetSpace(int n, int r);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  int dim() const noexcept { return (r_ + 1) * n_; }

  bool contains(CoordId id) const noexcept {
    return id.order >= 0 && id.order <= r_ && id.index >= 1 && id.index <= n_;
  }
  /// Flat position of a coordinate: order-major, index-minor.
  int flat(CoordId id) const noexcept { return id.order * n_ + (id.index - 1); }
  CoordId coord(int flat) const noexcept { return {flat / n_, flat % n_ + 1}; }

  friend bool operator==(const JetSpace&, const JetSpace&) = default;

 private:
  int n_;
  int r_;
};

/// A point of T^rM stored flat in JetSpace::flat order.
class JetPoint {
 public:
  explicit JetPoint(JetSpace space);
  JetPoint(JetSpace space, std::vector<double> coords);

  const JetSpace& space() const noexcept { return space_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }

  double operator[](CoordId id) const { return coords_[space_.flat(id)]; }
  double& operator[](CoordId id) { return coords_[space_.flat(id)]; }

  /// Membership in T^r_0M: y^{(1)} != 0.
  bool regular() const noexcept;

 private:
  JetSpace space_;
  std::vector<double> coords_;
};

/// A batch of points, row-major (one row per point).
class PointSet {
 public:
  explicit PointSet(JetSpace space) : space_(space) {}
  PointSet(JetSpace space, std::vector<double> data);

  const JetSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return data_.size() / static_cast<std::size_t>(space_.dim()); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const double> row(std::size_t i) const noexcept {
    const auto d = static_cast<std::size_t>(space_.dim());
    return {data_.data() + i * d, d};
  }
  JetPoint point(std::size_t i) const;
  void push_back(std::span<const double> coords);
  void push_back(const JetPoint& p) { push_back(p.coords()); }

  std::span<const double> data() const noexcept { return data_; }

 private:
  JetSpace space_;
  std::vector<double> data_;
};

}  // namespace jetvar

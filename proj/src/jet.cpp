#include "jetvar/jet.hpp"

#include <stdexcept>
#include <string>

namespace jetvar {

JetSpace::JetSpace(int n, int r) : n_(n), r_(r) {
  if (n < 1) throw std::invalid_argument("jet space dimension n must be >= 1, got " + std::to_string(n));
  if (r < 1) throw std::invalid_argument("jet order r must be >= 1, got " + std::to_string(r));
}

JetPoint::JetPoint(JetSpace space) : space_(space), coords_(static_cast<std::size_t>(space.dim()), 0.0) {}

JetPoint::JetPoint(JetSpace space, std::vector<double> coords) : space_(space), coords_(std::move(coords)) {
  if (coords_.size() != static_cast<std::size_t>(space_.dim()))
    throw std::invalid_argument("jet point has " + std::to_string(coords_.size()) + " coordinates, expected " +
                                std::to_string(space_.dim()));
}

bool JetPoint::regular() const noexcept {
  for (int i = 1; i <= space_.n(); ++i)
    if ((*this)[CoordId{1, i}] != 0.0) return true;
  return false;
}

PointSet::PointSet(JetSpace space, std::vector<double> data) : space_(space), data_(std::move(data)) {
  if (data_.size() % static_cast<std::size_t>(space_.dim()) != 0)
    throw std::invalid_argument("point data is not a whole number of rows");
}

JetPoint PointSet::point(std::size_t i) const {
  auto r = row(i);
  return JetPoint(space_, std::vector<double>(r.begin(), r.end()));
}

void PointSet::push_back(std::span<const double> coords) {
  if (coords.size() != static_cast<std::size_t>(space_.dim())) throw std::invalid_argument("point dimension mismatch");
  data_.insert(data_.end(), coords.begin(), coords.end());
}

}  // namespace jetvar

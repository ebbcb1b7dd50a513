#include "pvscore/point_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvscore {

PointSet::PointSet(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), dim_(dim) {
  if (dim_ == 0) {
    if (!coords_.empty()) throw std::invalid_argument("PointSet: dimension must be >= 1");
    return;
  }
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("PointSet: coordinate count is not a multiple of the dimension");
  }
  validate();
}

PointSet::PointSet(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& r : rows) {
    if (dim_ == 0) dim_ = r.size();
    if (r.size() != dim_ || dim_ == 0) {
      throw std::invalid_argument("PointSet: rows must share a nonzero dimension");
    }
    coords_.insert(coords_.end(), r.begin(), r.end());
  }
  validate();
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> coords;
  std::size_t dim = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dim || dim == 0) {
      throw std::invalid_argument("PointSet: rows must share a nonzero dimension");
    }
    coords.insert(coords.end(), r.begin(), r.end());
  }
  return PointSet(std::move(coords), dim);
}

PointSet PointSet::from_values(std::span<const double> values) {
  return PointSet(std::vector<double>(values.begin(), values.end()), values.empty() ? 0 : 1);
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  PointSet out;
  out.dim_ = dim_;
  out.coords_.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    auto r = row(i);
    out.coords_.insert(out.coords_.end(), r.begin(), r.end());
  }
  return out;
}

PointSet PointSet::without(std::size_t i) const {
  PointSet out;
  out.dim_ = dim_;
  out.coords_.reserve(coords_.size() - dim_);
  out.coords_.insert(out.coords_.end(), coords_.begin(), coords_.begin() + i * dim_);
  out.coords_.insert(out.coords_.end(), coords_.begin() + (i + 1) * dim_, coords_.end());
  return out;
}

void PointSet::validate() const {
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!std::isfinite(coords_[k])) {
      throw std::invalid_argument("PointSet: non-finite coordinate in row " +
                                  std::to_string(k / dim_));
    }
  }
}

}  // namespace pvscore

#ifndef PVSCORE_POINT_SET_HPP
#define PVSCORE_POINT_SET_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pvscore {

/// A sample of n points in R^d, stored row-major.
///
/// Every row has the same dimension and every coordinate is finite; the
/// constructors enforce both and throw std::invalid_argument otherwise.
class PointSet {
 public:
  PointSet() = default;

  /// Takes ownership of `coords` laid out as n rows of `dim` values.
  PointSet(std::vector<double> coords, std::size_t dim);

  /// Builds from nested rows, e.g. `PointSet({{0, 1}, {2, 3}})`.
  PointSet(std::initializer_list<std::initializer_list<double>> rows);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  /// One-dimensional sample from scalar values.
  static PointSet from_values(std::span<const double> values);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {coords_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t k) const { return coords_[i * dim_ + k]; }

  const std::vector<double>& coords() const { return coords_; }

  /// Points listed by `indices`, duplicates allowed (used for resampling).
  PointSet subset(std::span<const std::size_t> indices) const;

  /// The set with row `i` removed.
  PointSet without(std::size_t i) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  void validate() const;

  std::vector<double> coords_;
  std::size_t dim_ = 0;
};

}  // namespace pvscore

#endif  // PVSCORE_POINT_SET_HPP

#ifndef PVSCORE_PROJECTION_HPP
#define PVSCORE_PROJECTION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pvscore/inference.hpp"
#include "pvscore/point_set.hpp"

namespace pvscore {

/// K random unit directions in R^d. Direction k is drawn from its own
/// substream of `seed`, so a larger K with the same seed extends the set.
struct ProjectionSet {
  std::vector<std::vector<double>> directions;
  std::size_t dim = 0;
  std::uint64_t seed = 0;

  std::size_t size() const { return directions.size(); }
};

/// Uniform directions on S^(d-1): normalized vectors of i.i.d. standard
/// normals.
ProjectionSet sample_directions(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Maps each point x to (r.x - lo) / |r|_1 with lo = sum_k min(r_k, 0).
///
/// [0,1]^d lands in [0,1], and |r.(x - y)| / |r|_1 <= |x - y|_inf <= |x - y|_2,
/// so the map never expands L-infinity or Euclidean distances.
PointSet project_to_line(const PointSet& s, std::span<const double> direction);

struct PpvEstimate {
  double value = 0.0;
  std::vector<double> per_projection;
  std::size_t argmax_index = 0;
};

/// Maximum over directions of the 1-D PV estimate of the projected samples.
PpvEstimate ppv_hat(const PointSet& s1, const PointSet& s2, double epsilon,
                    const ProjectionSet& projections);

/// Supplies the sample pair used for projection `index`.
using SamplePairSource = std::function<std::pair<PointSet, PointSet>(std::size_t index)>;

/// Projected similarity test of H0: PV = 0.
///
/// With `resample_per_projection` each direction gets a fresh pair from
/// `source`; otherwise source(0) is drawn once and reused for every direction.
/// The type-2 guarantee of the test assumes fresh pairs. Rejects iff the
/// maximum projected PV exceeds ppv_threshold. Samples are expected in [0,1]^d.
TestReport ppv_similarity_test(const SamplePairSource& source, double epsilon,
                               std::size_t projections, double alpha, std::uint64_t seed,
                               bool resample_per_projection);

/// Fixed-pair convenience overload.
TestReport ppv_similarity_test(const PointSet& s1, const PointSet& s2, double epsilon,
                               std::size_t projections, double alpha, std::uint64_t seed);

}  // namespace pvscore

#endif  // PVSCORE_PROJECTION_HPP

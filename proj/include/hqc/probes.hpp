#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hqc/analytic_function.hpp"
#include "hqc/harmonic_map.hpp"
#include "hqc/types.hpp"

namespace hqc {

struct ProbeGrid {
  std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  std::size_t angles_per_circle = 1024;

  /// Radii strictly increasing in (0, 1) and at least one angle.
  void validate() const;
};

struct QcCertificate {
  bool certified = false;
  double k = 0.0;
  double sup_dilatation = 0.0;  // max |g'/h'| over the grid
  double max_distortion = 1.0;  // max (1 + |w|) / (1 - |w|)
  double implied_K = 1.0;       // (1 + k) / (1 - k) when certified, else infinity
  std::size_t nodes = 0;
};

/// Certifies |w| <= k + 1e-10 on the grid. SenseReversalError if the
/// Jacobian is not positive at some node.
QcCertificate qc_certify(const HarmonicMap& f, double k, const ProbeGrid& grid = {});

struct SchwarzVerdict {
  bool holds = true;
  double max_excess = 0.0;  // max of |w(z)| - k|z|
  Complex worst_z{};
};

/// |w(z)| <= k|z| + 1e-10 on the grid. PreconditionError if |w(0)| >= 1e-12.
SchwarzVerdict schwarz_check(const AnalyticFunction& omega, double k, const ProbeGrid& grid = {});

struct ConvexityVerdict {
  bool convex = false;
  double min_cross = 0.0;      // smallest Im(conj(d_j) d_{j+1}) / (|d_j| |d_{j+1}|)
  double total_turning = 0.0;  // sum of exterior angles
  std::size_t samples = 0;
};

/// Convexity of the image of |z| = r from the secants of a closed polygon on
/// n points. DegenerateCurveError when two consecutive images coincide.
ConvexityVerdict convexity_probe(const HarmonicMap& f, double r, std::size_t n = 4096);

struct PositivityWitness {
  double alpha = 0.0;
  double beta = 0.0;
  double min_real_part = 0.0;
};

/// First (alpha, beta) on an angle_grid x angle_grid lattice of [0, 2 pi)^2,
/// in lexicographic order, with
///   Re{(e^{i alpha} h'(z) + e^{-i alpha} g'(z)) (e^{i beta} - e^{-i beta} z^2)} > 0
/// at 2^8 angles on each of the radii r/8, 2r/8, ..., r. Empty means no
/// witness on this lattice, not that the condition fails.
std::optional<PositivityWitness> cs_positivity_probe(const HarmonicMap& f, double r,
                                                     std::size_t angle_grid = 64);

}  // namespace hqc

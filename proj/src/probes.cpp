#include "hqc/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr double kProbeSlack = 1e-10;

template <class Visit>
void for_each_node(const ProbeGrid& grid, Visit&& visit) {
  const double n = static_cast<double>(grid.angles_per_circle);
  for (double r : grid.radii) {
    for (std::size_t j = 0; j < grid.angles_per_circle; ++j) {
      visit(std::polar(r, kTwoPi * static_cast<double>(j) / n));
    }
  }
}

}  // namespace

void ProbeGrid::validate() const {
  if (radii.empty() || angles_per_circle == 0) {
    throw PreconditionError("probe grid needs radii and angles");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0) || (i > 0 && radii[i] <= radii[i - 1])) {
      throw PreconditionError("probe radii must increase strictly inside (0, 1)");
    }
  }
}

QcCertificate qc_certify(const HarmonicMap& f, double k, const ProbeGrid& grid) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("k must lie in [0, 1)");
  }
  grid.validate();
  const AnalyticFunction dh = f.dh();
  const AnalyticFunction dg = f.dg();
  QcCertificate cert;
  cert.k = k;
  for_each_node(grid, [&](Complex z) {
    const Complex a = dh.value(z);
    const Complex b = dg.value(z);
    if (!(std::norm(a) - std::norm(b) > 0.0)) {
      throw SenseReversalError(f.id() + " is not sense-preserving at z = " +
                               std::to_string(z.real()) + " + " + std::to_string(z.imag()) +
                               "i");
    }
    cert.sup_dilatation = std::max(cert.sup_dilatation, std::abs(b) / std::abs(a));
    ++cert.nodes;
  });
  cert.max_distortion = (1.0 + cert.sup_dilatation) / (1.0 - cert.sup_dilatation);
  cert.certified = cert.sup_dilatation <= k + kProbeSlack;
  cert.implied_K = cert.certified ? K_of_k(k) : std::numeric_limits<double>::infinity();
  return cert;
}

SchwarzVerdict schwarz_check(const AnalyticFunction& omega, double k, const ProbeGrid& grid) {
  if (!(std::abs(omega.value(0.0)) < 1e-12)) {
    throw PreconditionError("Schwarz bound needs w(0) = 0");
  }
  grid.validate();
  SchwarzVerdict verdict;
  verdict.max_excess = -std::numeric_limits<double>::infinity();
  for_each_node(grid, [&](Complex z) {
    const double excess = std::abs(omega.value(z)) - k * std::abs(z);
    if (excess > verdict.max_excess) {
      verdict.max_excess = excess;
      verdict.worst_z = z;
    }
  });
  verdict.holds = verdict.max_excess <= kProbeSlack;
  return verdict;
}

ConvexityVerdict convexity_probe(const HarmonicMap& f, double r, std::size_t n) {
  if (!(r > 0.0 && r <= kMaxRadius)) {
    throw DomainError("convexity probe radius must lie in (0, 1 - 2^-20]");
  }
  if (n < 3) {
    throw DomainError("convexity probe needs at least three points");
  }
  std::vector<Complex> points(n);
  for (std::size_t j = 0; j < n; ++j) {
    points[j] = f.value(std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
  }
  std::vector<Complex> secants(n);
  for (std::size_t j = 0; j < n; ++j) {
    secants[j] = points[(j + 1) % n] - points[j];
    if (std::abs(secants[j]) < 1e-14) {
      throw DegenerateCurveError("consecutive image points coincide for " + f.id());
    }
  }
  ConvexityVerdict verdict;
  verdict.samples = n;
  verdict.min_cross = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex turn = std::conj(secants[j]) * secants[(j + 1) % n];
    // Cross product scaled by the two secant lengths: the sine of the turn.
    verdict.min_cross = std::min(verdict.min_cross, turn.imag() / std::abs(turn));
    verdict.total_turning += std::arg(turn);
  }
  verdict.convex = verdict.min_cross >= -1e-9 && std::abs(verdict.total_turning - kTwoPi) <= 1e-6;
  return verdict;
}

std::optional<PositivityWitness> cs_positivity_probe(const HarmonicMap& f, double r,
                                                     std::size_t angle_grid) {
  if (!(r > 0.0 && r <= kMaxRadius)) {
    throw DomainError("positivity probe radius must lie in (0, 1 - 2^-20]");
  }
  if (angle_grid == 0) {
    throw DomainError("angle grid must be non-empty");
  }
  constexpr std::size_t kAngles = 256;
  constexpr std::size_t kRadii = 8;
  const AnalyticFunction dh = f.dh();
  const AnalyticFunction dg = f.dg();
  std::vector<Complex> hp, gp, zz;
  hp.reserve(kAngles * kRadii);
  for (std::size_t i = 1; i <= kRadii; ++i) {
    const double rho = r * static_cast<double>(i) / kRadii;
    for (std::size_t j = 0; j < kAngles; ++j) {
      const Complex z = std::polar(rho, kTwoPi * static_cast<double>(j) / kAngles);
      hp.push_back(dh.value(z));
      gp.push_back(dg.value(z));
      zz.push_back(z * z);
    }
  }
  const double step = kTwoPi / static_cast<double>(angle_grid);
  for (std::size_t a = 0; a < angle_grid; ++a) {
    const Complex ea = std::polar(1.0, step * static_cast<double>(a));
    for (std::size_t b = 0; b < angle_grid; ++b) {
      const Complex eb = std::polar(1.0, step * static_cast<double>(b));
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < hp.size() && lowest > 0.0; ++q) {
        const Complex value = (ea * hp[q] + std::conj(ea) * gp[q]) * (eb - std::conj(eb) * zz[q]);
        lowest = std::min(lowest, value.real());
      }
      if (lowest > 0.0) {
        return PositivityWitness{step * static_cast<double>(a), step * static_cast<double>(b),
                                 lowest};
      }
    }
  }
  return std::nullopt;
}

}  // namespace hqc

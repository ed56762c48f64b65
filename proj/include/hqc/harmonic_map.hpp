#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hqc/analytic_function.hpp"
#include "hqc/types.hpp"

namespace hqc {

enum class MapClass : std::uint8_t {
  convex = 1u << 0,
  close_to_convex = 1u << 1,
  starlike = 1u << 2,
  convex_in_one_direction = 1u << 3,
  analytic = 1u << 4,
};

std::string_view to_string(MapClass c);
MapClass map_class_from_string(std::string_view name);

class ClassTags {
 public:
  ClassTags() = default;
  ClassTags(std::initializer_list<MapClass> classes);

  bool has(MapClass c) const { return (bits_ & static_cast<std::uint8_t>(c)) != 0; }
  void insert(MapClass c) { bits_ |= static_cast<std::uint8_t>(c); }
  bool empty() const { return bits_ == 0; }

  /// True for any class the scrH bounds cover (close-to-convex,
  /// starlike, convex in one direction; convex maps are close-to-convex).
  bool close_to_convex_family() const;

  std::vector<std::string> names() const;
  static ClassTags from_names(const std::vector<std::string>& names);

  friend bool operator==(const ClassTags&, const ClassTags&) = default;

 private:
  std::uint8_t bits_ = 0;
};

/// f = h + conj(g) on the unit disk.
class HarmonicMap {
 public:
  /// Evaluates (h(z), g(z)) in one pass; used when g shares work with h.
  using PartsEvaluator = std::function<std::pair<Complex, Complex>(Complex)>;

  HarmonicMap(std::string id, AnalyticFunction h, AnalyticFunction g, ClassTags tags,
              std::optional<double> qc_k, PartsEvaluator parts = {});

  const std::string& id() const { return id_; }
  const AnalyticFunction& h() const { return h_; }
  const AnalyticFunction& g() const { return g_; }
  const ClassTags& tags() const { return tags_; }
  std::optional<double> qc_k() const { return qc_k_; }

  std::pair<Complex, Complex> parts(Complex z) const;
  Complex value(Complex z) const;
  Complex operator()(Complex z) const { return value(z); }

  AnalyticFunction dh() const { return h_.derivative_function(); }
  AnalyticFunction dg() const { return g_.derivative_function(); }

  /// g'/h' as an analytic function.
  AnalyticFunction dilatation() const;

  HarmonicMap with_tags(ClassTags tags) const;
  HarmonicMap with_qc_k(std::optional<double> qc_k) const;
  HarmonicMap with_id(std::string id) const;

 private:
  std::string id_;
  AnalyticFunction h_;
  AnalyticFunction g_;
  ClassTags tags_;
  std::optional<double> qc_k_;
  PartsEvaluator parts_;
};

Complex eval_harmonic(const HarmonicMap& f, Complex z);

/// |h'(z)|^2 - |g'(z)|^2.
double jacobian(const HarmonicMap& f, Complex z);

/// g'(z) / h'(z); SingularityError when |h'(z)| < 1e-300.
Complex analytic_dilatation(const HarmonicMap& f, Complex z);

/// k = (K - 1) / (K + 1) for K >= 1.
double k_of_K(double K);
/// K = (1 + k) / (1 - k) for 0 <= k < 1.
double K_of_k(double k);

/// Maximum of |F| over the circle |z| = kMaxRadius (2^12-point grid). By the
/// maximum principle this bounds |F| on the whole evaluation disk.
double boundary_sup_modulus(const AnalyticFunction& f);

/// Horizontal shear: h - g = phi and g' = omega h', i.e.
/// h(z) = integral over [0, z] of phi'/(1 - omega). Tagged convex in one
/// direction and close-to-convex; qc_k is the boundary sup of |omega|.
HarmonicMap make_shear(std::string id, const AnalyticFunction& phi, const AnalyticFunction& omega);

/// f0 = (f - conj(alpha f)) / (1 - |alpha|^2) with alpha = g'(0), so that
/// g0'(0) = 0. Requires h(0) = g(0) = 0, h'(0) = 1 and |alpha| < 1.
HarmonicMap normalize_to_S0(const HarmonicMap& f);

}  // namespace hqc

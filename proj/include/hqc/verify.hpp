#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqc/catalog.hpp"
#include "hqc/harmonic_map.hpp"
#include "hqc/means.hpp"

namespace hqc {

/// One inequality check lhs <= rhs. p is empty for star-level rows.
struct ReportRow {
  std::string mapping_id;
  std::string inequality_id;
  double k = 0.0;
  std::optional<double> p;
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool pass = true;
};

/// margin = rhs - lhs, tol = rel_tol |rhs|, pass iff margin >= -tol.
ReportRow make_row(std::string mapping_id, std::string inequality_id, double k,
                   std::optional<double> p, double r, double lhs, double rhs, double rel_tol);

/// Order by (inequality_id, mapping_id, k, p, r).
bool row_less(const ReportRow& a, const ReportRow& b);

/// Integral means of several functions at several radii, each circle sampled
/// once for all exponents. Keys identify the function.
class MeansTable {
 public:
  explicit MeansTable(MeansOptions opts = {}) : opts_(opts) {}

  double get(const std::string& key, const ComplexMap& f, double r, double p);
  /// Evaluates every p in `ps` on one CircleModuli and stores the results.
  void fill(const std::string& key, const ComplexMap& f, double r, std::span<const double> ps);

 private:
  MeansOptions opts_;
  std::map<std::tuple<std::string, double, double>, double> values_;
};

/// Extremal H (needs the convex tag) or extremal scrH (
/// needs a close-to-convex family tag): M_p(r, h') <= M_p(r, H) and
/// M_p(r, g') <= M_p(r, G) at every (p, r). ClassTagError when the tag is
/// missing, CertificationError when qc_certify(f, k) fails.
std::vector<ReportRow> check_means_domination(const HarmonicMap& f, Extremal e, double k,
                                              std::span<const double> p_grid,
                                              std::span<const double> r_grid,
                                              double rel_tol = 1e-6);

/// Star-level version at radius r: (log|h'|)* <= (log|H|)* and
/// (log|g'|)* <= (log|G|)*. The g row is skipped when g' or G vanishes
/// identically. One row per comparison, reporting the worst theta.
std::vector<ReportRow> check_star_chain(const HarmonicMap& f, Extremal e, double k, double r,
                                        double rel_tol = 1e-6);

/// M_p(r, f) <= (1 + k) * integral over [0, r] of M_p(s, H) ds (cor1) or
/// with scrH (cor2). Same preconditions as check_means_domination; p >= 1.
std::vector<ReportRow> check_corollary(const HarmonicMap& f, Extremal e, double k,
                                       std::span<const double> p_grid,
                                       std::span<const double> r_grid, double rel_tol = 1e-6);

/// Classical analytic bounds against the Koebe function: M_p(r, f) <=
/// M_p(r, koebe) (thmA) and M_p(r, f') <= M_p(r, koebe') (thmB). Needs the
/// analytic tag.
std::vector<ReportRow> check_classical(const HarmonicMap& f, std::span<const double> p_grid,
                                       std::span<const double> r_grid, double rel_tol = 1e-8);

/// Least-squares slope of log M against -log(1 - r) over the last 6 radii of
/// the form 1 - 2^-j. InsufficientDataError otherwise.
double growth_exponent(const MeansCurve& curve);

/// gamma = -slope of log2 |Delta_j| against j over the last 5 increments of
/// M_p^p along the dyadic radii. Positive gamma means geometric decay.
double increment_decay(const MeansCurve& curve);

enum class Membership { member, divergent, inconclusive };
const char* to_string(Membership m);

struct MembershipResult {
  Membership verdict = Membership::inconclusive;
  double beta = 0.0;
  double gamma = 0.0;
  /// Largest last-doubling relative change over the curve; above the means
  /// tolerance when some radius stopped at the maximum grid.
  double means_rel_change = 0.0;
  MeansCurve curve;
};

/// member if gamma >= 0.05; divergent if gamma <= -0.05 and beta > 0.05;
/// otherwise inconclusive. `depth` >= 6 dyadic radii. Means that do not
/// settle by the maximum grid use the last iterate (see means_rel_change).
Membership classify_membership(double beta, double gamma);
MembershipResult hardy_membership_verdict(const HarmonicMap& f, double p, int depth = 12);
std::vector<MembershipResult> hardy_membership_verdicts(const HarmonicMap& f,
                                                        std::span<const double> ps,
                                                        int depth = 12);

struct GrowthRow {
  std::string mapping_id;
  double p = 0.0;
  int depth = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double power_exponent = 0.0;  // p * beta, the growth exponent of M_p^p
  double means_rel_change = 0.0;
  Membership verdict = Membership::inconclusive;
  std::optional<Membership> expected;
  std::optional<double> theorem_threshold;
  std::optional<double> nonqc_threshold;
  std::optional<double> general_qc_threshold;  // 1 / (2K)

  bool pass() const { return !expected || *expected == verdict; }
};

/// Growth row with thresholds taken from the class tags and qc_k of f. The
/// expected verdict is "member" below the theorem threshold of a QC member;
/// `non_qc_extremal` marks a map (harmonic Koebe) expected to be divergent
/// above the threshold for its class without a QC bound.
GrowthRow make_growth_row(const HarmonicMap& f, double p, int depth, const MembershipResult& m,
                          bool non_qc_extremal = false);

struct VerifyConfig {
  std::vector<std::string> suites{"all"};  // theorems, star, corollary, classical, growth
  std::optional<MapClass> class_filter;
  std::vector<double> K_grid{1.0, 1.5, 2.0, 3.0, 5.0};
  std::vector<double> p_grid{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> r_grid{0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99};
  std::vector<double> corollary_p{1.0, 2.0, 4.0};
  std::vector<double> corollary_r{0.5, 0.9, 0.99};
  double rel_tol = 1e-6;
  double classical_tol = 1e-8;
  int growth_depth = 12;
  std::string timestamp = "1970-01-01T00:00:00Z";

  bool wants(const std::string& suite) const;
};

struct VerificationReport {
  nlohmann::json metadata;
  std::vector<ReportRow> rows;
  std::vector<GrowthRow> growth;

  std::size_t violations() const;
};

VerificationReport run_verification(const VerifyConfig& config,
                                    const std::vector<CorpusEntry>& corpus);

/// FNV-1a of the compact JSON manifest, as 16 hex digits.
std::string corpus_hash(const std::vector<CorpusEntry>& corpus);

nlohmann::json report_json(const VerificationReport& report);

/// mapping_id,inequality_id,k,p,r,lhs,rhs,margin,tol,verdict
void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);
std::vector<ReportRow> read_report_csv(std::istream& in);

/// mapping_id,p,depth,beta,gamma,power_exponent,means_rel_change,verdict,
/// expected,theorem_threshold,nonqc_threshold,general_qc_threshold
void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows);
std::vector<GrowthRow> read_growth_csv(std::istream& in);

}  // namespace hqc

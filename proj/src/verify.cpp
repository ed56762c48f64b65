#include "hqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"
#include "hqc/probes.hpp"
#include "hqc/star.hpp"

namespace hqc {

namespace {

constexpr std::size_t kStarSamples = std::size_t{1} << 12;
constexpr std::size_t kStarSamplesNearBoundary = std::size_t{1} << 16;
constexpr int kFitPoints = 6;
constexpr int kDecayIncrements = 5;

ComplexMap as_map(const AnalyticFunction& f) {
  return [f](Complex z) { return f.value(z); };
}

ComplexMap as_map(const HarmonicMap& f) {
  return [f](Complex z) { return f.value(z); };
}

std::string k_key(double k) { return csv::format_double(k); }

bool vanishes(const AnalyticFunction& f) {
  for (Complex z : {Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(0.1, -0.7)}) {
    if (f.value(z) != Complex(0.0)) return false;
  }
  return true;
}

std::string theorem_prefix(Extremal e) { return e == Extremal::H ? "thm1" : "thm2"; }
std::string corollary_id(Extremal e) { return e == Extremal::H ? "cor1" : "cor2"; }

void require_class(const HarmonicMap& f, Extremal e) {
  const bool ok = e == Extremal::H ? f.tags().has(MapClass::convex)
                                   : f.tags().close_to_convex_family();
  if (!ok) {
    throw ClassTagError(f.id() + " lacks the class tag required for the " +
                        std::string(e == Extremal::H ? "convex" : "close-to-convex") +
                        " bound");
  }
}

void require_certified(const HarmonicMap& f, double k) {
  if (!qc_certify(f, k).certified) {
    throw CertificationError(f.id() + " is not certified " + k_key(k) + "-quasiconformal");
  }
}

// Shared state for one verification run: means and stars of the extremals are
// reused across corpus members.
struct Context {
  MeansTable table;
  std::map<std::tuple<int, double, double, double>, double> bounds;
  std::map<std::tuple<std::string, double>, SampledCircle> logs;

  double bound(Extremal e, double k, double p, double r) {
    const auto key = std::make_tuple(static_cast<int>(e), k, p, r);
    auto it = bounds.find(key);
    if (it == bounds.end()) {
      it = bounds.emplace(key, corollary_bound(k, p, r, e)).first;
    }
    return it->second;
  }

  const SampledCircle& log_modulus(const std::string& key, const AnalyticFunction& f, double r) {
    const auto id = std::make_tuple(key, r);
    auto it = logs.find(id);
    if (it == logs.end()) {
      const std::size_t n = r >= 0.99 ? kStarSamplesNearBoundary : kStarSamples;
      it = logs.emplace(id, sample_log_modulus(f, r, n)).first;
    }
    return it->second;
  }
};

void means_rows(Context& ctx, std::vector<ReportRow>& out, const HarmonicMap& f, Extremal e,
                double k, std::span<const double> ps, std::span<const double> rs,
                double rel_tol) {
  const auto dh = as_map(f.dh());
  const auto dg = as_map(f.dg());
  const auto H = as_map(extremal_h(e, k));
  const auto G = as_map(extremal_g(e, k));
  const std::string hk = std::string(to_string(e)) + ":" + k_key(k);
  const std::string gk = std::string(e == Extremal::H ? "G" : "scrG") + ":" + k_key(k);
  const std::string prefix = theorem_prefix(e);
  for (double r : rs) {
    ctx.table.fill(f.id() + ":dh", dh, r, ps);
    ctx.table.fill(f.id() + ":dg", dg, r, ps);
    ctx.table.fill(hk, H, r, ps);
    ctx.table.fill(gk, G, r, ps);
    for (double p : ps) {
      out.push_back(make_row(f.id(), prefix + "-h", k, p, r,
                             ctx.table.get(f.id() + ":dh", dh, r, p),
                             ctx.table.get(hk, H, r, p), rel_tol));
      out.push_back(make_row(f.id(), prefix + "-g", k, p, r,
                             ctx.table.get(f.id() + ":dg", dg, r, p),
                             ctx.table.get(gk, G, r, p), rel_tol));
    }
  }
}

ReportRow star_row(const std::string& mapping, const std::string& inequality, double k, double r,
                   const SampledCircle& a, const SampledCircle& b, double rel_tol) {
  const StarFunction sa = star_function(a);
  const StarFunction sb = star_function(b);
  double scale = 1.0;
  for (double v : sb.values) scale = std::max(scale, std::abs(v));
  const StarVerdict verdict = star_dominates(sa, sb, rel_tol * scale);
  ReportRow row;
  row.mapping_id = mapping;
  row.inequality_id = inequality;
  row.k = k;
  row.r = r;
  row.lhs = sa.values[verdict.argmax];
  row.rhs = sb.values[verdict.argmax];
  row.margin = -verdict.max_violation;
  row.tol = rel_tol * scale;
  row.pass = verdict.holds;
  return row;
}

void star_rows(Context& ctx, std::vector<ReportRow>& out, const HarmonicMap& f, Extremal e,
               double k, double r, double rel_tol) {
  const std::string prefix = theorem_prefix(e) + "-star";
  const AnalyticFunction H = extremal_h(e, k);
  const std::string hk = std::string(to_string(e)) + ":" + k_key(k);
  out.push_back(star_row(f.id(), prefix + "-h", k, r, ctx.log_modulus(f.id() + ":dh", f.dh(), r),
                         ctx.log_modulus(hk, H, r), rel_tol));
  const AnalyticFunction dg = f.dg();
  if (k == 0.0 || vanishes(dg)) return;
  const AnalyticFunction G = extremal_g(e, k);
  const std::string gk = std::string(e == Extremal::H ? "G" : "scrG") + ":" + k_key(k);
  out.push_back(star_row(f.id(), prefix + "-g", k, r, ctx.log_modulus(f.id() + ":dg", dg, r),
                         ctx.log_modulus(gk, G, r), rel_tol));
}

void corollary_rows(Context& ctx, std::vector<ReportRow>& out, const HarmonicMap& f, Extremal e,
                    double k, std::span<const double> ps, std::span<const double> rs,
                    double rel_tol) {
  const auto fm = as_map(f);
  for (double r : rs) {
    ctx.table.fill(f.id() + ":f", fm, r, ps);
    for (double p : ps) {
      out.push_back(make_row(f.id(), corollary_id(e), k, p, r,
                             ctx.table.get(f.id() + ":f", fm, r, p), ctx.bound(e, k, p, r),
                             rel_tol));
    }
  }
}

void classical_rows(Context& ctx, std::vector<ReportRow>& out, const HarmonicMap& f,
                    std::span<const double> ps, std::span<const double> rs, double rel_tol) {
  const auto fm = as_map(f.h());
  const auto dfm = as_map(f.dh());
  const auto koebe = as_map(catalog("koebe"));
  const auto dkoebe = as_map(catalog("koebe-derivative"));
  for (double r : rs) {
    ctx.table.fill(f.id() + ":h", fm, r, ps);
    ctx.table.fill(f.id() + ":dh", dfm, r, ps);
    ctx.table.fill("koebe", koebe, r, ps);
    ctx.table.fill("koebe'", dkoebe, r, ps);
    for (double p : ps) {
      out.push_back(make_row(f.id(), "thmA", 0.0, p, r, ctx.table.get(f.id() + ":h", fm, r, p),
                             ctx.table.get("koebe", koebe, r, p), rel_tol));
      out.push_back(make_row(f.id(), "thmB", 0.0, p, r, ctx.table.get(f.id() + ":dh", dfm, r, p),
                             ctx.table.get("koebe'", dkoebe, r, p), rel_tol));
    }
  }
}

void require_analytic(const HarmonicMap& f) {
  if (!f.tags().has(MapClass::analytic)) {
    throw ClassTagError(f.id() + " is not tagged analytic");
  }
}

struct LineFit {
  double slope;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return {(n * sxy - sx * sy) / (n * sxx - sx * sx)};
}

// -log2(1 - r) for the trailing radii, checked to be integers.
std::vector<double> dyadic_exponents(const MeansCurve& curve, std::size_t count) {
  if (curve.radii.size() < count || curve.values.size() != curve.radii.size()) {
    throw InsufficientDataError("growth fit needs at least " + std::to_string(count) +
                                " dyadic radii");
  }
  std::vector<double> js;
  for (std::size_t i = curve.radii.size() - count; i < curve.radii.size(); ++i) {
    const double j = -std::log2(1.0 - curve.radii[i]);
    if (std::abs(j - std::round(j)) > 1e-6) {
      throw InsufficientDataError("radius " + csv::format_double(curve.radii[i]) +
                                  " is not of the form 1 - 2^-j");
    }
    js.push_back(std::round(j));
  }
  return js;
}

std::string optional_text(const std::optional<double>& x) {
  return x ? csv::format_double(*x) : std::string();
}

std::optional<double> optional_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return csv::parse_double(s);
}

Membership membership_from_string(const std::string& s) {
  if (s == "member") return Membership::member;
  if (s == "divergent") return Membership::divergent;
  if (s == "inconclusive") return Membership::inconclusive;
  throw PreconditionError("unknown membership verdict: " + s);
}

nlohmann::json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

ReportRow make_row(std::string mapping_id, std::string inequality_id, double k,
                   std::optional<double> p, double r, double lhs, double rhs, double rel_tol) {
  ReportRow row;
  row.mapping_id = std::move(mapping_id);
  row.inequality_id = std::move(inequality_id);
  row.k = k;
  row.p = p;
  row.r = r;
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = rhs - lhs;
  row.tol = rel_tol * std::abs(rhs);
  row.pass = row.margin >= -row.tol;
  return row;
}

bool row_less(const ReportRow& a, const ReportRow& b) {
  return std::tie(a.inequality_id, a.mapping_id, a.k, a.p, a.r) <
         std::tie(b.inequality_id, b.mapping_id, b.k, b.p, b.r);
}

double MeansTable::get(const std::string& key, const ComplexMap& f, double r, double p) {
  const auto id = std::make_tuple(key, r, p);
  auto it = values_.find(id);
  if (it == values_.end()) {
    it = values_.emplace(id, integral_means(f, p, r, opts_)).first;
  }
  return it->second;
}

void MeansTable::fill(const std::string& key, const ComplexMap& f, double r,
                      std::span<const double> ps) {
  std::vector<double> missing;
  for (double p : ps) {
    if (!values_.contains(std::make_tuple(key, r, p))) missing.push_back(p);
  }
  if (missing.empty()) return;
  CircleModuli samples(f, r);
  for (double p : missing) {
    values_.emplace(std::make_tuple(key, r, p), integral_means(samples, p, opts_));
  }
}

std::vector<ReportRow> check_means_domination(const HarmonicMap& f, Extremal e, double k,
                                              std::span<const double> p_grid,
                                              std::span<const double> r_grid, double rel_tol) {
  require_class(f, e);
  require_certified(f, k);
  Context ctx;
  std::vector<ReportRow> rows;
  means_rows(ctx, rows, f, e, k, p_grid, r_grid, rel_tol);
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

std::vector<ReportRow> check_star_chain(const HarmonicMap& f, Extremal e, double k, double r,
                                        double rel_tol) {
  require_class(f, e);
  require_certified(f, k);
  Context ctx;
  std::vector<ReportRow> rows;
  star_rows(ctx, rows, f, e, k, r, rel_tol);
  return rows;
}

std::vector<ReportRow> check_corollary(const HarmonicMap& f, Extremal e, double k,
                                       std::span<const double> p_grid,
                                       std::span<const double> r_grid, double rel_tol) {
  require_class(f, e);
  require_certified(f, k);
  Context ctx;
  std::vector<ReportRow> rows;
  corollary_rows(ctx, rows, f, e, k, p_grid, r_grid, rel_tol);
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

std::vector<ReportRow> check_classical(const HarmonicMap& f, std::span<const double> p_grid,
                                       std::span<const double> r_grid, double rel_tol) {
  require_analytic(f);
  Context ctx;
  std::vector<ReportRow> rows;
  classical_rows(ctx, rows, f, p_grid, r_grid, rel_tol);
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

double growth_exponent(const MeansCurve& curve) {
  const auto js = dyadic_exponents(curve, kFitPoints);
  std::vector<double> x, y;
  const std::size_t first = curve.values.size() - kFitPoints;
  for (std::size_t i = 0; i < kFitPoints; ++i) {
    x.push_back(js[i] * std::log(2.0));
    y.push_back(std::log(curve.values[first + i]));
  }
  return fit_line(x, y).slope;
}

double increment_decay(const MeansCurve& curve) {
  const auto js = dyadic_exponents(curve, kDecayIncrements + 1);
  const std::size_t first = curve.values.size() - (kDecayIncrements + 1);
  std::vector<double> powered;
  double top = 0.0;
  for (std::size_t i = first; i < curve.values.size(); ++i) {
    powered.push_back(std::pow(curve.values[i], curve.p));
    top = std::max(top, std::abs(powered.back()));
  }
  // Increments below rounding level of the curve itself count as zero.
  const double floor = std::max(top * 1e-15, std::numeric_limits<double>::min());
  std::vector<double> x, y;
  for (int i = 0; i < kDecayIncrements; ++i) {
    x.push_back(js[i + 1]);
    y.push_back(std::log2(std::max(std::abs(powered[i + 1] - powered[i]), floor)));
  }
  return -fit_line(x, y).slope;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::member:
      return "member";
    case Membership::divergent:
      return "divergent";
    case Membership::inconclusive:
      break;
  }
  return "inconclusive";
}

Membership classify_membership(double beta, double gamma) {
  if (gamma >= 0.05) return Membership::member;
  if (gamma <= -0.05 && beta > 0.05) return Membership::divergent;
  return Membership::inconclusive;
}

std::vector<MembershipResult> hardy_membership_verdicts(const HarmonicMap& f,
                                                        std::span<const double> ps, int depth) {
  if (depth < kFitPoints) {
    throw InsufficientDataError("dyadic depth must be at least 6");
  }
  for (double p : ps) {
    if (!(p > 0.0) || std::isinf(p)) {
      throw DomainError("membership needs 0 < p < infinity");
    }
  }
  const auto radii = dyadic_radii(depth);
  const auto fm = as_map(f);
  std::vector<MembershipResult> results(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    results[i].curve = MeansCurve{f.id(), ps[i], radii, {}};
  }
  for (double r : radii) {
    CircleModuli samples(fm, r);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const MeansEstimate m = integral_means_estimate(samples, ps[i]);
      results[i].curve.values.push_back(m.value);
      results[i].means_rel_change = std::max(results[i].means_rel_change, m.rel_change);
    }
  }
  for (auto& result : results) {
    result.beta = growth_exponent(result.curve);
    result.gamma = increment_decay(result.curve);
    result.verdict = classify_membership(result.beta, result.gamma);
  }
  return results;
}

MembershipResult hardy_membership_verdict(const HarmonicMap& f, double p, int depth) {
  const double ps[] = {p};
  return hardy_membership_verdicts(f, ps, depth).front();
}

GrowthRow make_growth_row(const HarmonicMap& f, double p, int depth, const MembershipResult& m,
                          bool non_qc_extremal) {
  GrowthRow row;
  row.mapping_id = f.id();
  row.p = p;
  row.depth = depth;
  row.beta = m.beta;
  row.gamma = m.gamma;
  row.power_exponent = p * m.beta;
  row.means_rel_change = m.means_rel_change;
  row.verdict = m.verdict;
  const bool convex = f.tags().has(MapClass::convex);
  const bool family = f.tags().close_to_convex_family();
  if (f.qc_k()) {
    if (convex) {
      row.theorem_threshold = 1.0;
    } else if (family) {
      row.theorem_threshold = 0.5;
    }
    row.general_qc_threshold = 1.0 / (2.0 * K_of_k(*f.qc_k()));
  }
  if (convex) {
    row.nonqc_threshold = 0.5;
  } else if (family) {
    row.nonqc_threshold = 1.0 / 3.0;
  }
  if (row.theorem_threshold && p < *row.theorem_threshold) {
    row.expected = Membership::member;
  } else if (non_qc_extremal && !f.qc_k() && row.nonqc_threshold && p > *row.nonqc_threshold) {
    row.expected = Membership::divergent;
  }
  return row;
}

bool VerifyConfig::wants(const std::string& suite) const {
  return std::find(suites.begin(), suites.end(), "all") != suites.end() ||
         std::find(suites.begin(), suites.end(), suite) != suites.end();
}

std::size_t VerificationReport::violations() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.pass ? 0 : 1;
  for (const auto& row : growth) n += row.pass() ? 0 : 1;
  return n;
}

std::string corpus_hash(const std::vector<CorpusEntry>& corpus) {
  const std::string text = corpus_manifest(corpus).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

VerificationReport run_verification(const VerifyConfig& config,
                                    const std::vector<CorpusEntry>& corpus) {
  for (const auto& suite : config.suites) {
    static const std::vector<std::string> known{"all",       "theorems",  "star",
                                                "corollary", "classical", "growth"};
    if (std::find(known.begin(), known.end(), suite) != known.end()) continue;
    throw PreconditionError("unknown suite: " + suite);
  }
  std::vector<double> ks;
  for (double K : config.K_grid) ks.push_back(k_of_K(K));

  // H bounds for convex members, scrH bounds for the close-to-convex family.
  // A class filter narrows both the members and the extremal.
  const bool filtered = config.class_filter.has_value();
  const bool convex_only = filtered && *config.class_filter == MapClass::convex;

  Context ctx;
  VerificationReport report;
  for (const auto& entry : corpus) {
    const HarmonicMap f = build_mapping(entry);
    if (filtered && !f.tags().has(*config.class_filter)) continue;
    std::vector<Extremal> extremals;
    if (f.tags().has(MapClass::convex) && (!filtered || convex_only)) {
      extremals.push_back(Extremal::H);
    }
    if (f.tags().close_to_convex_family() && !convex_only) {
      extremals.push_back(Extremal::scrH);
    }
    const QcCertificate cert = qc_certify(f, 0.0);
    for (double k : ks) {
      if (cert.sup_dilatation > k + 1e-10) continue;
      for (Extremal e : extremals) {
        if (config.wants("theorems")) {
          means_rows(ctx, report.rows, f, e, k, config.p_grid, config.r_grid, config.rel_tol);
        }
        if (config.wants("star")) {
          for (double r : config.r_grid) star_rows(ctx, report.rows, f, e, k, r, config.rel_tol);
        }
        if (config.wants("corollary")) {
          corollary_rows(ctx, report.rows, f, e, k, config.corollary_p, config.corollary_r,
                         config.rel_tol);
        }
      }
    }
    if (!filtered && config.wants("classical") && f.tags().has(MapClass::analytic)) {
      classical_rows(ctx, report.rows, f, config.p_grid, config.r_grid, config.classical_tol);
    }
    if (!filtered && config.wants("growth")) {
      std::vector<double> ps;
      if (f.qc_k() && f.tags().close_to_convex_family()) {
        ps = {0.25, 0.45};
      }
      if (f.qc_k() && f.tags().has(MapClass::convex)) {
        ps.push_back(0.9);
      }
      if (entry.kind == "harmonic-koebe") {
        ps.push_back(0.4);
      }
      if (ps.empty()) continue;
      const auto results = hardy_membership_verdicts(f, ps, config.growth_depth);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        report.growth.push_back(make_growth_row(f, ps[i], config.growth_depth, results[i],
                                                entry.kind == "harmonic-koebe"));
      }
    }
  }
  std::sort(report.rows.begin(), report.rows.end(), row_less);
  std::sort(report.growth.begin(), report.growth.end(), [](const GrowthRow& a, const GrowthRow& b) {
    return std::tie(a.mapping_id, a.p) < std::tie(b.mapping_id, b.p);
  });

  nlohmann::json grids;
  grids["K"] = config.K_grid;
  grids["p"] = config.p_grid;
  grids["r"] = config.r_grid;
  grids["corollary_p"] = config.corollary_p;
  grids["corollary_r"] = config.corollary_r;
  grids["growth_depth"] = config.growth_depth;
  grids["star_samples"] = kStarSamples;
  grids["star_samples_near_boundary"] = kStarSamplesNearBoundary;
  grids["probe"] = {{"radii", ProbeGrid{}.radii}, {"angles", ProbeGrid{}.angles_per_circle}};
  report.metadata["grids"] = grids;
  report.metadata["tolerances"] = {{"relative", config.rel_tol},
                                   {"classical", config.classical_tol},
                                   {"means_rel_tol", MeansOptions{}.rel_tol}};
  report.metadata["suites"] = config.suites;
  report.metadata["class_filter"] = filtered ? nlohmann::json(std::string(to_string(*config.class_filter)))
                                             : nlohmann::json(nullptr);
  report.metadata["corpus_hash"] = corpus_hash(corpus);
  report.metadata["corpus_size"] = corpus.size();
  report.metadata["timestamp"] = config.timestamp;
  report.metadata["row_count"] = report.rows.size();
  report.metadata["violations"] = report.violations();
  return report;
}

nlohmann::json report_json(const VerificationReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"mapping_id", row.mapping_id},
                    {"inequality_id", row.inequality_id},
                    {"k", row.k},
                    {"p", optional_json(row.p)},
                    {"r", row.r},
                    {"lhs", row.lhs},
                    {"rhs", row.rhs},
                    {"margin", row.margin},
                    {"tol", row.tol},
                    {"verdict", row.pass ? "pass" : "fail"}});
  }
  nlohmann::json growth = nlohmann::json::array();
  for (const auto& row : report.growth) {
    growth.push_back({{"mapping_id", row.mapping_id},
                      {"p", row.p},
                      {"depth", row.depth},
                      {"beta", row.beta},
                      {"gamma", row.gamma},
                      {"power_exponent", row.power_exponent},
                      {"means_rel_change", row.means_rel_change},
                      {"verdict", to_string(row.verdict)},
                      {"expected", row.expected ? nlohmann::json(to_string(*row.expected))
                                                : nlohmann::json(nullptr)},
                      {"theorem_threshold", optional_json(row.theorem_threshold)},
                      {"nonqc_threshold", optional_json(row.nonqc_threshold)},
                      {"general_qc_threshold", optional_json(row.general_qc_threshold)},
                      {"pass", row.pass()}});
  }
  return {{"metadata", report.metadata}, {"rows", rows}, {"growth", growth}};
}

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "mapping_id,inequality_id,k,p,r,lhs,rhs,margin,tol,verdict\n";
  for (const auto& row : rows) {
    out << csv::join({row.mapping_id, row.inequality_id, csv::format_double(row.k),
                      optional_text(row.p), csv::format_double(row.r),
                      csv::format_double(row.lhs), csv::format_double(row.rhs),
                      csv::format_double(row.margin), csv::format_double(row.tol),
                      row.pass ? "pass" : "fail"})
        << '\n';
  }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "mapping_id,inequality_id,k,p,r,lhs,rhs,margin,tol,verdict") {
    throw PreconditionError("unexpected report CSV header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 10 || (f[9] != "pass" && f[9] != "fail")) {
      throw PreconditionError("malformed report CSV row: " + line);
    }
    ReportRow row;
    row.mapping_id = f[0];
    row.inequality_id = f[1];
    row.k = csv::parse_double(f[2]);
    row.p = optional_number(f[3]);
    row.r = csv::parse_double(f[4]);
    row.lhs = csv::parse_double(f[5]);
    row.rhs = csv::parse_double(f[6]);
    row.margin = csv::parse_double(f[7]);
    row.tol = csv::parse_double(f[8]);
    row.pass = f[9] == "pass";
    rows.push_back(row);
  }
  return rows;
}

void write_growth_csv(std::ostream& out, std::span<const GrowthRow> rows) {
  out << "mapping_id,p,depth,beta,gamma,power_exponent,means_rel_change,verdict,expected,"
         "theorem_threshold,"
         "nonqc_threshold,general_qc_threshold\n";
  for (const auto& row : rows) {
    out << csv::join({row.mapping_id, csv::format_double(row.p), std::to_string(row.depth),
                      csv::format_double(row.beta), csv::format_double(row.gamma),
                      csv::format_double(row.power_exponent),
                      csv::format_double(row.means_rel_change), to_string(row.verdict),
                      row.expected ? to_string(*row.expected) : "",
                      optional_text(row.theorem_threshold), optional_text(row.nonqc_threshold),
                      optional_text(row.general_qc_threshold)})
        << '\n';
  }
}

std::vector<GrowthRow> read_growth_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "mapping_id,p,depth,beta,gamma,power_exponent,means_rel_change,verdict,expected,"
         "theorem_threshold,"
              "nonqc_threshold,general_qc_threshold") {
    throw PreconditionError("unexpected growth CSV header");
  }
  std::vector<GrowthRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 12) {
      throw PreconditionError("malformed growth CSV row: " + line);
    }
    GrowthRow row;
    row.mapping_id = f[0];
    row.p = csv::parse_double(f[1]);
    row.depth = std::stoi(f[2]);
    row.beta = csv::parse_double(f[3]);
    row.gamma = csv::parse_double(f[4]);
    row.power_exponent = csv::parse_double(f[5]);
    row.means_rel_change = csv::parse_double(f[6]);
    row.verdict = membership_from_string(f[7]);
    if (!f[8].empty()) row.expected = membership_from_string(f[8]);
    row.theorem_threshold = optional_number(f[9]);
    row.nonqc_threshold = optional_number(f[10]);
    row.general_qc_threshold = optional_number(f[11]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hqc

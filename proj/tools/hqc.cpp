// hqc: integral means, star functions and the inequality harness from the
// command line.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hqc/catalog.hpp"
#include "hqc/csv.hpp"
#include "hqc/errors.hpp"
#include "hqc/means.hpp"
#include "hqc/output.hpp"
#include "hqc/star.hpp"
#include "hqc/verify.hpp"

namespace fs = std::filesystem;
using namespace hqc;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string catalog_name;
  double k = 0.0;
  std::string corpus_id;
  std::string shear_spec;
  std::string manifest;
  std::string part;
  std::vector<double> p;
  std::vector<double> r;
  int depth = 0;
  std::size_t samples = 4096;
  std::vector<std::string> suites;
  std::string class_name;
  std::vector<double> K;
  double rel_tol = 1e-6;
  std::string out_dir;
  std::vector<std::string> formats;
  std::string log_axes;
  std::string timestamp;
};

// What a means/star/growth command operates on.
struct Target {
  std::string id;
  std::optional<AnalyticFunction> analytic;  // set when a single analytic function is selected
  std::optional<HarmonicMap> harmonic;       // set for corpus and shear selections
  bool non_qc_extremal = false;
};

std::vector<CorpusEntry> load_corpus(const Options& o) {
  if (o.manifest.empty()) return builtin_corpus_entries();
  std::ifstream in(o.manifest);
  if (!in) throw UsageError("cannot read manifest " + o.manifest);
  try {
    return parse_corpus_manifest(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed manifest " + o.manifest + ": " + e.what());
  }
}

Target resolve_target(const Options& o, const std::string& default_part) {
  const int selectors = !o.catalog_name.empty() + !o.corpus_id.empty() + !o.shear_spec.empty();
  if (selectors != 1) {
    throw UsageError("select exactly one target with --catalog, --corpus or --shear");
  }
  Target t;
  if (!o.catalog_name.empty()) {
    if (!o.part.empty()) throw UsageError("--part applies to --corpus and --shear targets");
    t.analytic = catalog(o.catalog_name, o.k);
    t.id = t.analytic->id();
    return t;
  }
  CorpusEntry entry;
  if (!o.corpus_id.empty()) {
    const auto corpus = load_corpus(o);
    const auto it = std::find_if(corpus.begin(), corpus.end(),
                                 [&](const CorpusEntry& e) { return e.id == o.corpus_id; });
    if (it == corpus.end()) throw UsageError("unknown corpus id: " + o.corpus_id);
    entry = *it;
  } else {
    entry = parse_shear_spec(o.shear_spec);
  }
  const HarmonicMap f = build_mapping(entry);
  t.non_qc_extremal = entry.kind == "harmonic-koebe";
  const std::string part = o.part.empty() ? default_part : o.part;
  if (part == "f") {
    t.harmonic = f;
    t.id = f.id();
  } else {
    t.analytic = part == "h" ? f.h() : part == "g" ? f.g() : part == "dh" ? f.dh() : f.dg();
    t.id = f.id() + ":" + part;
  }
  return t;
}

ComplexMap target_map(const Target& t) {
  if (t.harmonic) {
    HarmonicMap f = *t.harmonic;
    return [f](Complex z) { return f.value(z); };
  }
  AnalyticFunction f = *t.analytic;
  return [f](Complex z) { return f.value(z); };
}

bool wants(const Options& o, const std::string& format) {
  return std::find(o.formats.begin(), o.formats.end(), format) != o.formats.end();
}

fs::path output_dir(const Options& o) {
  fs::path dir = o.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("HQC_OUTPUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

PlotAxes axes(const Options& o, std::string title, std::string x, std::string y, bool log_x,
              bool log_y) {
  PlotAxes a{std::move(title), std::move(x), std::move(y), log_x, log_y};
  if (!o.log_axes.empty()) {
    a.log_x = o.log_axes == "x" || o.log_axes == "xy";
    a.log_y = o.log_axes == "y" || o.log_axes == "xy";
  }
  return a;
}

std::string svg_text(const PlotAxes& a, const std::vector<PlotSeries>& series) {
  std::ostringstream out;
  write_svg_plot(out, a, series);
  return out.str();
}

void require_positive_p(const std::vector<double>& ps) {
  if (ps.empty()) throw UsageError("--p is required");
  for (double p : ps) {
    if (!(p > 0.0) || std::isinf(p)) throw UsageError("--p values must satisfy 0 < p < inf");
  }
}

void require_radii(const std::vector<double>& rs) {
  for (double r : rs) {
    if (!(r > 0.0 && r <= kMaxRadius)) {
      throw UsageError("--r values must lie in (0, 1 - 2^-20]");
    }
  }
}

int cmd_means(const Options& o) {
  const Target t = resolve_target(o, "f");
  require_positive_p(o.p);
  require_radii(o.r);
  if (o.r.empty() && o.depth < 1) throw UsageError("give --r or a positive --depth");
  const std::vector<double> radii = o.r.empty() ? dyadic_radii(o.depth) : o.r;
  const ComplexMap f = target_map(t);
  std::vector<MeansCurve> curves;
  for (double p : o.p) curves.push_back(means_curve(f, t.id, p, radii));

  const fs::path dir = output_dir(o);
  if (wants(o, "csv")) {
    std::ostringstream out;
    write_means_csv(out, curves);
    write_file_atomic(dir / "means.csv", out.str());
  }
  if (wants(o, "json")) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : curves) {
      j.push_back({{"target_id", c.target_id}, {"p", c.p}, {"r", c.radii}, {"value", c.values}});
    }
    write_file_atomic(dir / "means.json", j.dump(2) + "\n");
  }
  if (wants(o, "svg")) {
    std::vector<PlotSeries> series;
    for (const auto& c : curves) series.push_back({"p=" + csv::format_double(c.p), c.radii, c.values});
    write_file_atomic(dir / "means.svg",
                      svg_text(axes(o, "M_p(r) of " + t.id, "r", "M_p", false, true), series));
  }
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.radii.size(); ++i) {
      std::cout << c.target_id << " p=" << csv::format_double(c.p)
                << " r=" << csv::format_double(c.radii[i])
                << " M=" << csv::format_double(c.values[i]) << '\n';
    }
  }
  return 0;
}

int cmd_star(const Options& o) {
  const Target t = resolve_target(o, "dh");
  if (!t.analytic) throw UsageError("star needs an analytic part (h, g, dh or dg)");
  require_radii(o.r);
  if (o.r.empty()) throw UsageError("--r is required");
  if (o.samples < 2 || (o.samples & (o.samples - 1)) != 0) {
    throw UsageError("--n must be a power of two");
  }
  std::vector<StarFunction> stars;
  for (double r : o.r) {
    SampledCircle s = sample_log_modulus(*t.analytic, r, o.samples);
    s.source_id = t.id;
    stars.push_back(star_function(s));
  }
  const fs::path dir = output_dir(o);
  if (wants(o, "csv")) {
    std::ostringstream out;
    write_star_csv(out, stars);
    write_file_atomic(dir / "star.csv", out.str());
  }
  if (wants(o, "json")) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : stars) {
      j.push_back({{"source_id", s.source_id}, {"radius", s.radius}, {"theta", s.thetas},
                   {"value", s.values}});
    }
    write_file_atomic(dir / "star.json", j.dump(2) + "\n");
  }
  if (wants(o, "svg")) {
    std::vector<PlotSeries> series;
    for (const auto& s : stars) {
      series.push_back({"r=" + csv::format_double(s.radius), s.thetas, s.values});
    }
    write_file_atomic(dir / "star.svg",
                      svg_text(axes(o, "star function of log|" + t.id + "|", "theta", "g*",
                                    false, false),
                               series));
  }
  for (const auto& s : stars) {
    std::cout << s.source_id << " r=" << csv::format_double(s.radius)
              << " g*(pi)=" << csv::format_double(s.values.back()) << '\n';
  }
  return 0;
}

int cmd_growth(const Options& o) {
  const Target t = resolve_target(o, "f");
  require_positive_p(o.p);
  const int depth = o.depth == 0 ? 12 : o.depth;
  if (depth < 6) throw UsageError("--depth must be at least 6 for growth");
  const HarmonicMap f = t.harmonic ? *t.harmonic
                                   : HarmonicMap(t.id, *t.analytic,
                                                 AnalyticFunction::constant("zero", 0.0),
                                                 ClassTags{MapClass::analytic}, std::nullopt);
  const auto results = hardy_membership_verdicts(f, o.p, depth);
  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < o.p.size(); ++i) {
    rows.push_back(make_growth_row(f, o.p[i], depth, results[i], t.non_qc_extremal));
  }
  const fs::path dir = output_dir(o);
  if (wants(o, "csv")) {
    std::ostringstream out;
    write_growth_csv(out, rows);
    write_file_atomic(dir / "growth.csv", out.str());
  }
  if (wants(o, "json")) {
    VerificationReport report;
    report.growth = rows;
    write_file_atomic(dir / "growth.json", report_json(report)["growth"].dump(2) + "\n");
  }
  if (wants(o, "svg")) {
    std::vector<PlotSeries> series;
    for (const auto& m : results) {
      PlotSeries s{"p=" + csv::format_double(m.curve.p), {}, m.curve.values};
      for (double r : m.curve.radii) s.x.push_back(1.0 / (1.0 - r));
      series.push_back(std::move(s));
    }
    write_file_atomic(dir / "growth.svg",
                      svg_text(axes(o, "M_p along 1 - 2^-j for " + t.id, "1/(1-r)", "M_p", true,
                                    true),
                               series));
  }
  for (const auto& row : rows) {
    std::cout << row.mapping_id << " p=" << csv::format_double(row.p)
              << " beta=" << csv::format_double(row.beta)
              << " gamma=" << csv::format_double(row.gamma)
              << " verdict=" << to_string(row.verdict) << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o) {
  VerifyConfig config;
  if (!o.suites.empty()) config.suites = o.suites;
  if (!o.class_name.empty()) config.class_filter = map_class_from_string(o.class_name);
  if (!o.K.empty()) {
    for (double K : o.K) {
      if (!(K >= 1.0)) throw UsageError("--K values must be >= 1");
    }
    config.K_grid = o.K;
  }
  if (!o.p.empty()) {
    require_positive_p(o.p);
    config.p_grid = o.p;
  }
  if (!o.r.empty()) {
    require_radii(o.r);
    config.r_grid = o.r;
  }
  if (o.depth != 0) {
    if (o.depth < 6) throw UsageError("--depth must be at least 6");
    config.growth_depth = o.depth;
  }
  if (!(o.rel_tol > 0.0)) throw UsageError("--rel-tol must be positive");
  config.rel_tol = o.rel_tol;
  config.timestamp = o.timestamp;

  std::vector<CorpusEntry> corpus = load_corpus(o);
  if (!o.corpus_id.empty()) {
    std::erase_if(corpus, [&](const CorpusEntry& e) { return e.id != o.corpus_id; });
    if (corpus.empty()) throw UsageError("unknown corpus id: " + o.corpus_id);
  }
  const VerificationReport report = run_verification(config, corpus);

  const fs::path dir = output_dir(o);
  if (wants(o, "json")) {
    write_file_atomic(dir / "report.json", report_json(report).dump(2) + "\n");
  }
  if (wants(o, "csv")) {
    std::ostringstream rows;
    write_report_csv(rows, report.rows);
    write_file_atomic(dir / "report.csv", rows.str());
    std::ostringstream growth;
    write_growth_csv(growth, report.growth);
    write_file_atomic(dir / "growth.csv", growth.str());
  }
  if (wants(o, "svg")) {
    // Relative margins per inequality, in report order.
    std::map<std::string, PlotSeries> by_id;
    for (const auto& row : report.rows) {
      auto& s = by_id[row.inequality_id];
      s.label = row.inequality_id;
      s.x.push_back(static_cast<double>(s.x.size()));
      s.y.push_back(row.margin / std::max(std::abs(row.rhs), 1e-300));
    }
    std::vector<PlotSeries> series;
    for (auto& [id, s] : by_id) series.push_back(std::move(s));
    write_file_atomic(dir / "margins.svg",
                      svg_text(axes(o, "relative margins", "row", "margin / |rhs|", false, false),
                               series));
  }
  const std::size_t violations = report.violations();
  std::cout << "rows=" << report.rows.size() << " growth=" << report.growth.size()
            << " violations=" << violations << '\n';
  for (const auto& row : report.rows) {
    if (!row.pass) {
      std::cout << "FAIL " << row.inequality_id << ' ' << row.mapping_id
                << " k=" << csv::format_double(row.k) << " r=" << csv::format_double(row.r)
                << " margin=" << csv::format_double(row.margin) << '\n';
    }
  }
  for (const auto& row : report.growth) {
    if (!row.pass()) {
      std::cout << "FAIL growth " << row.mapping_id << " p=" << csv::format_double(row.p)
                << " verdict=" << to_string(row.verdict) << '\n';
    }
  }
  return violations == 0 ? 0 : kExitViolations;
}

std::string default_timestamp() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (!epoch || !*epoch) return "1970-01-01T00:00:00Z";
  char* end = nullptr;
  const long long seconds = std::strtoll(epoch, &end, 10);
  if (*end != '\0' || seconds < 0) throw UsageError("SOURCE_DATE_EPOCH must be a non-negative integer");
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic quasiconformal maps: integral means, star functions, inequality checks"};
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("command", o.command, "means | star | verify | growth")
      ->required()
      ->check(CLI::IsMember({"means", "star", "verify", "growth"}));
  app.add_option("--catalog", o.catalog_name, "Catalog function (H, G, scrH, scrG, koebe, ...)");
  app.add_option("--k", o.k, "Parameter k in [0, 1) for catalog extremals");
  app.add_option("--corpus", o.corpus_id, "Corpus member id");
  app.add_option("--shear", o.shear_spec, "Shear spec, e.g. phi=halfplane,omega=0.5z");
  app.add_option("--manifest", o.manifest, "JSON corpus manifest (default: built-in corpus)");
  app.add_option("--part", o.part, "Part of a harmonic target: f, h, g, dh, dg")
      ->check(CLI::IsMember({"f", "h", "g", "dh", "dg"}));
  app.add_option("--p", o.p, "Exponents, comma separated")->delimiter(',');
  app.add_option("--r", o.r, "Radii, comma separated")->delimiter(',');
  app.add_option("--depth", o.depth, "Dyadic depth: radii 1 - 2^-j, j = 1..depth");
  app.add_option("--n", o.samples, "Samples per circle for star functions");
  app.add_option("--suite", o.suites, "verify suites: all, theorems, star, corollary, classical, growth")
      ->delimiter(',')
      ->check(CLI::IsMember({"all", "theorems", "star", "corollary", "classical", "growth"}));
  app.add_option("--class", o.class_name, "Restrict verify to one class tag");
  app.add_option("--K", o.K, "Quasiconformality constants K >= 1, comma separated")->delimiter(',');
  app.add_option("--rel-tol", o.rel_tol, "Relative tolerance for verify rows");
  app.add_option("--out", o.out_dir, "Output directory (default: $HQC_OUTPUT_DIR or .)");
  app.add_option("--format", o.formats, "Output formats: csv, json, svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--log-axes", o.log_axes, "Log-scaled plot axes: none, x, y, xy")
      ->check(CLI::IsMember({"none", "x", "y", "xy"}));
  app.add_option("--timestamp", o.timestamp, "Report timestamp (default: $SOURCE_DATE_EPOCH)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "hqc: " << message << '\n';
    return kExitUsage;
  }

  try {
    if (o.timestamp.empty()) o.timestamp = default_timestamp();
    if (o.formats.empty()) {
      o.formats = o.command == "verify" ? std::vector<std::string>{"json", "csv"}
                                        : std::vector<std::string>{"csv"};
    }
    if (o.command == "means") return cmd_means(o);
    if (o.command == "star") return cmd_star(o);
    if (o.command == "growth") return cmd_growth(o);
    return cmd_verify(o);
  } catch (const NonConvergenceError& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ZeroOnGridError& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularityError& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegenerateCurveError& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const UsageError& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "hqc: " << e.what() << '\n';
    return kExitUsage;
  }
}

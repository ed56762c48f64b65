#include "hqc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

using series::Coefficients;

Coefficients inverse_power_of_one_minus_z(int power, std::size_t n) {
  Coefficients out = series::geometric(1.0, n);
  for (int i = 1; i < power; ++i) {
    out = series::multiply(out, series::geometric(1.0, n), n);
  }
  return out;
}

void require_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("catalog parameter k must lie in [0, 1)");
  }
}

// (1+z)^a / ((1-z)^b (1-kz)), times kz when `with_kz`.
AnalyticFunction extremal(std::string id, int a, int b, double k, bool with_kz) {
  auto base = [a, b, k](Complex z) {
    return ipow(1.0 + z, a) / (ipow(1.0 - z, b) * (1.0 - k * z));
  };
  auto base_log_derivative = [a, b, k](Complex z) {
    return static_cast<double>(a) / (1.0 + z) + static_cast<double>(b) / (1.0 - z) +
           k / (1.0 - k * z);
  };
  auto series = [a, b, k, with_kz](std::size_t n) {
    Coefficients numerator = a == 1 ? series::polynomial({1.0, 1.0}, n)
                                    : series::polynomial({1.0, 2.0, 1.0}, n);
    Coefficients out = series::multiply(numerator, inverse_power_of_one_minus_z(b, n), n);
    out = series::multiply(out, series::geometric(k, n), n);
    if (with_kz) {
      out = series::multiply(out, series::polynomial({0.0, k}, n), n);
    }
    return out;
  };
  if (!with_kz) {
    return AnalyticFunction::closed_form(
        std::move(id), base,
        [base, base_log_derivative](Complex z) { return base(z) * base_log_derivative(z); },
        series);
  }
  return AnalyticFunction::closed_form(
      std::move(id), [base, k](Complex z) { return k * z * base(z); },
      [base, base_log_derivative, k](Complex z) {
        return k * base(z) * (1.0 + z * base_log_derivative(z));
      },
      series);
}

std::string format_k(double k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", k);
  return buf;
}

Complex json_complex(const nlohmann::json& j) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

AnalyticFunction omega_monomial(double k, int power) {
  if (power < 1) {
    throw DomainError("omega power must be >= 1");
  }
  return AnalyticFunction::closed_form(
      "omega", [k, power](Complex z) { return k * ipow(z, power); },
      [k, power](Complex z) { return k * static_cast<double>(power) * ipow(z, power - 1); },
      [k, power](std::size_t n) {
        Coefficients out(n);
        if (static_cast<std::size_t>(power) < n) {
          out[power] = k;
        }
        return out;
      });
}

std::string canonical_phi(std::string_view name) {
  if (name == "identity") return "identity";
  if (name == "halfplane" || name == "half-plane") return "half-plane";
  if (name == "strip") return "strip";
  throw UnknownNameError("unknown shear base phi: " + std::string(name));
}

// Probe-style radii used to validate declared qc constants.
constexpr double kProbeRadii[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};

}  // namespace

AnalyticFunction catalog(std::string_view name, double k) {
  if (name == "H") {
    require_k(k);
    return extremal("H[k=" + format_k(k) + "]", 1, 2, k, false);
  }
  if (name == "G") {
    require_k(k);
    return extremal("G[k=" + format_k(k) + "]", 1, 2, k, true);
  }
  if (name == "scrH") {
    require_k(k);
    return extremal("scrH[k=" + format_k(k) + "]", 2, 3, k, false);
  }
  if (name == "scrG") {
    require_k(k);
    return extremal("scrG[k=" + format_k(k) + "]", 2, 3, k, true);
  }
  if (name == "identity") {
    return AnalyticFunction::closed_form(
        "identity", [](Complex z) { return z; }, [](Complex) { return Complex{1.0}; },
        [](std::size_t n) { return series::polynomial({0.0, 1.0}, n); },
        [](Complex) { return Complex{}; });
  }
  if (name == "koebe") {
    return AnalyticFunction::closed_form(
        "koebe", [](Complex z) { return z / ((1.0 - z) * (1.0 - z)); },
        [](Complex z) { return (1.0 + z) / ipow(1.0 - z, 3); },
        [](std::size_t n) {
          return series::multiply(series::polynomial({0.0, 1.0}, n),
                                  inverse_power_of_one_minus_z(2, n), n);
        },
        [](Complex z) { return (4.0 + 2.0 * z) / ipow(1.0 - z, 4); });
  }
  if (name == "koebe-derivative") {
    return AnalyticFunction::closed_form(
        "koebe-derivative", [](Complex z) { return (1.0 + z) / ipow(1.0 - z, 3); },
        [](Complex z) { return (4.0 + 2.0 * z) / ipow(1.0 - z, 4); },
        [](std::size_t n) {
          return series::multiply(series::polynomial({1.0, 1.0}, n),
                                  inverse_power_of_one_minus_z(3, n), n);
        });
  }
  if (name == "half-plane" || name == "halfplane") {
    return AnalyticFunction::closed_form(
        "half-plane", [](Complex z) { return z / (1.0 - z); },
        [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); },
        [](std::size_t n) {
          auto out = series::geometric(1.0, n);
          out[0] = 0.0;
          return out;
        },
        [](Complex z) { return 2.0 / ipow(1.0 - z, 3); });
  }
  if (name == "vertical-slit") {
    return AnalyticFunction::closed_form(
        "vertical-slit", [](Complex z) { return z / (1.0 - z * z); },
        [](Complex z) { return (1.0 + z * z) / ipow(1.0 - z * z, 2); },
        [](std::size_t n) {
          Coefficients out(n);
          for (std::size_t m = 1; m < n; m += 2) out[m] = 1.0;
          return out;
        });
  }
  if (name == "strip") {
    return AnalyticFunction::closed_form(
        "strip", [](Complex z) { return std::atanh(z); },
        [](Complex z) { return 1.0 / (1.0 - z * z); },
        [](std::size_t n) {
          Coefficients out(n);
          for (std::size_t m = 1; m < n; m += 2) out[m] = 1.0 / static_cast<double>(m);
          return out;
        },
        [](Complex z) { return 2.0 * z / ipow(1.0 - z * z, 2); });
  }
  if (name == "herglotz") {
    return AnalyticFunction::closed_form(
        "herglotz", [](Complex z) { return (1.0 + z) / (1.0 - z); },
        [](Complex z) { return 2.0 / ((1.0 - z) * (1.0 - z)); },
        [](std::size_t n) {
          auto out = series::scale(series::geometric(1.0, n), 2.0);
          out[0] = 1.0;
          return out;
        });
  }
  if (name == "cauchy") {
    return AnalyticFunction::closed_form(
        "cauchy", [](Complex z) { return 1.0 / (1.0 - z); },
        [](Complex z) { return 1.0 / ((1.0 - z) * (1.0 - z)); },
        [](std::size_t n) { return series::geometric(1.0, n); },
        [](Complex z) { return 2.0 / ipow(1.0 - z, 3); });
  }
  throw UnknownNameError("unknown catalog entry: " + std::string(name));
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "H",     "G",      "scrH",     "scrG",   "identity", "koebe", "koebe-derivative",
      "half-plane", "vertical-slit", "strip", "herglotz", "cauchy"};
  return names;
}

HarmonicMap harmonic_koebe() {
  auto dh_series = [](std::size_t n) {
    return series::multiply(series::polynomial({1.0, 1.0}, n), inverse_power_of_one_minus_z(4, n),
                            n);
  };
  auto h = AnalyticFunction::closed_form(
      "harmonic-koebe.h",
      [](Complex z) { return (z - z * z / 2.0 + z * z * z / 6.0) / ipow(1.0 - z, 3); },
      [](Complex z) { return (1.0 + z) / ipow(1.0 - z, 4); },
      [dh_series](std::size_t n) { return series::integrate(dh_series(n)); },
      [](Complex z) { return (5.0 + 3.0 * z) / ipow(1.0 - z, 5); });
  auto g = AnalyticFunction::closed_form(
      "harmonic-koebe.g",
      [](Complex z) { return (z * z / 2.0 + z * z * z / 6.0) / ipow(1.0 - z, 3); },
      [](Complex z) { return z * (1.0 + z) / ipow(1.0 - z, 4); },
      [dh_series](std::size_t n) {
        return series::integrate(
            series::multiply(series::polynomial({0.0, 1.0}, n), dh_series(n), n));
      },
      [](Complex z) { return (1.0 + 5.0 * z + 2.0 * z * z) / ipow(1.0 - z, 5); });
  return HarmonicMap("harmonic-koebe", std::move(h), std::move(g),
                     ClassTags{MapClass::close_to_convex, MapClass::convex_in_one_direction},
                     std::nullopt);
}

void to_json(nlohmann::json& j, const CorpusEntry& e) {
  j = nlohmann::json{{"id", e.id},
                     {"kind", e.kind},
                     {"parameters", e.parameters},
                     {"class_tags", e.class_tags},
                     {"qc_k", e.qc_k ? nlohmann::json(*e.qc_k) : nlohmann::json(nullptr)}};
}

void from_json(const nlohmann::json& j, CorpusEntry& e) {
  static const std::vector<std::string> known{"id", "kind", "parameters", "class_tags", "qc_k"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw PreconditionError("unknown corpus manifest key: " + key);
    }
  }
  e.id = j.at("id").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.parameters = j.value("parameters", nlohmann::json::object());
  e.class_tags = j.value("class_tags", std::vector<std::string>{});
  if (j.contains("qc_k") && !j.at("qc_k").is_null()) {
    e.qc_k = j.at("qc_k").get<double>();
  } else {
    e.qc_k.reset();
  }
}

HarmonicMap build_mapping(const CorpusEntry& entry) {
  const ClassTags tags = ClassTags::from_names(entry.class_tags);
  auto zero = AnalyticFunction::constant(entry.id + ".g", 0.0);
  double max_radius = kMaxRadius;

  std::optional<HarmonicMap> built;
  if (entry.kind == "analytic") {
    const auto name = entry.parameters.at("function").get<std::string>();
    auto h = catalog(name);
    HarmonicMap::PartsEvaluator parts = [h](Complex z) {
      return std::pair<Complex, Complex>{h.value(z), Complex{}};
    };
    built.emplace(entry.id, h, zero, tags, entry.qc_k, parts);
  } else if (entry.kind == "shear") {
    const auto phi = catalog(canonical_phi(entry.parameters.at("phi").get<std::string>()));
    const double k = entry.parameters.at("omega_coefficient").get<double>();
    const int power = entry.parameters.value("omega_power", 1);
    built.emplace(make_shear(entry.id, phi, omega_monomial(k, power)));
  } else if (entry.kind == "harmonic-koebe") {
    built.emplace(harmonic_koebe().with_id(entry.id));
  } else if (entry.kind == "series") {
    max_radius = entry.parameters.value("radius", 0.99);
    auto read = [&](const char* key) {
      Coefficients c;
      if (entry.parameters.contains(key)) {
        for (const auto& x : entry.parameters.at(key)) c.push_back(json_complex(x));
      }
      if (c.empty()) c.push_back(0.0);
      return c;
    };
    const Coefficients hc = read("h");
    const Coefficients gc = read("g");
    auto from = [max_radius](std::string id, Coefficients c) {
      return AnalyticFunction::power_series(
          std::move(id),
          [c](std::size_t n) {
            Coefficients out(n);
            std::copy_n(c.begin(), std::min(n, c.size()), out.begin());
            return out;
          },
          max_radius);
    };
    built.emplace(entry.id, from(entry.id + ".h", hc), from(entry.id + ".g", gc), tags,
                  entry.qc_k);
  } else {
    throw UnknownNameError("unknown corpus kind: " + entry.kind);
  }

  HarmonicMap f = built->with_tags(tags).with_qc_k(entry.qc_k);
  if (std::abs(f.h().value(0.0)) > 1e-12 || std::abs(f.g().value(0.0)) > 1e-12) {
    throw PreconditionError("corpus member " + entry.id + " violates h(0) = g(0) = 0");
  }
  if (entry.qc_k) {
    double sup = 0.0;
    for (double r : kProbeRadii) {
      if (r > max_radius) break;
      for (std::size_t j = 0; j < 1024; ++j) {
        sup = std::max(sup, std::abs(analytic_dilatation(f, std::polar(r, kTwoPi * j / 1024))));
      }
    }
    if (sup > *entry.qc_k + 1e-10) {
      throw PreconditionError("corpus member " + entry.id + " exceeds its declared qc_k");
    }
  }
  return f;
}

std::vector<CorpusEntry> builtin_corpus_entries() {
  using Tags = std::vector<std::string>;
  const Tags convex_analytic{"convex", "close-to-convex", "starlike", "convex-in-one-direction",
                             "analytic"};
  std::vector<CorpusEntry> entries{
      {"identity", "analytic", {{"function", "identity"}}, convex_analytic, 0.0},
      {"koebe",
       "analytic",
       {{"function", "koebe"}},
       {"close-to-convex", "starlike", "convex-in-one-direction", "analytic"},
       0.0},
      {"half-plane", "analytic", {{"function", "half-plane"}}, convex_analytic, 0.0},
      {"vertical-slit",
       "analytic",
       {{"function", "vertical-slit"}},
       {"close-to-convex", "starlike", "convex-in-one-direction", "analytic"},
       0.0},
      {"strip", "analytic", {{"function", "strip"}}, convex_analytic, 0.0},
      {"harmonic-koebe",
       "harmonic-koebe",
       nlohmann::json::object(),
       {"close-to-convex", "convex-in-one-direction"},
       std::nullopt},
  };
  for (const std::string phi : {"identity", "half-plane", "strip"}) {
    for (int power : {1, 2}) {
      for (double k : {0.25, 0.5, 0.8}) {
        Tags tags{"close-to-convex", "convex-in-one-direction"};
        // Only these shears pass the convexity probe on every grid radius.
        if ((phi == "identity" && k == 0.25) || (phi == "strip" && k <= 0.5)) {
          tags.insert(tags.begin(), "convex");
        }
        entries.push_back(
            {"shear-" + phi + (power == 1 ? "-kz-" : "-kz2-") + format_k(k),
             "shear",
             {{"phi", phi}, {"omega_coefficient", k}, {"omega_power", power}},
             tags,
             k});
      }
    }
  }
  return entries;
}

std::vector<HarmonicMap> build_corpus(const std::vector<CorpusEntry>& entries) {
  std::vector<HarmonicMap> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    out.push_back(build_mapping(e));
  }
  return out;
}

nlohmann::json corpus_manifest(const std::vector<CorpusEntry>& entries) {
  return nlohmann::json(entries);
}

std::vector<CorpusEntry> parse_corpus_manifest(const nlohmann::json& manifest) {
  if (!manifest.is_array()) {
    throw PreconditionError("corpus manifest must be a JSON array");
  }
  return manifest.get<std::vector<CorpusEntry>>();
}

CorpusEntry parse_shear_spec(std::string_view spec) {
  std::string phi;
  std::string omega;
  std::stringstream stream{std::string(spec)};
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::erase(item, ' ');
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("malformed shear spec item: " + item);
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "phi") {
      phi = canonical_phi(value);
    } else if (key == "omega") {
      omega = value;
    } else {
      throw PreconditionError("unknown shear spec key: " + key);
    }
  }
  if (phi.empty() || omega.empty()) {
    throw PreconditionError("shear spec needs phi=... and omega=...");
  }
  int power = 1;
  std::string coefficient = omega;
  for (const std::string suffix : {"z^2", "z2", "z\xc2\xb2", "*z", "z"}) {
    if (coefficient.size() >= suffix.size() &&
        coefficient.compare(coefficient.size() - suffix.size(), suffix.size(), suffix) == 0) {
      power = suffix == "*z" || suffix == "z" ? 1 : 2;
      coefficient.resize(coefficient.size() - suffix.size());
      break;
    }
  }
  if (!coefficient.empty() && coefficient.back() == '*') coefficient.pop_back();
  double k = 0.0;
  try {
    std::size_t used = 0;
    k = coefficient.empty() ? 1.0 : std::stod(coefficient, &used);
    if (used != coefficient.size()) throw std::invalid_argument(coefficient);
  } catch (const std::logic_error&) {
    throw PreconditionError("malformed omega in shear spec: " + omega);
  }
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("omega coefficient must lie in [0, 1)");
  }
  return {"shear-" + phi + (power == 1 ? "-kz-" : "-kz2-") + format_k(k),
          "shear",
          {{"phi", phi}, {"omega_coefficient", k}, {"omega_power", power}},
          {"close-to-convex", "convex-in-one-direction"},
          k};
}

}  // namespace hqc

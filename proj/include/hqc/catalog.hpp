#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqc/analytic_function.hpp"
#include "hqc/harmonic_map.hpp"

namespace hqc {

/// Closed-form functions by name. Parametrized entries take k in [0, 1):
///   H      (1+z) / ((1-z)^2 (1-kz))
///   G      kz (1+z) / ((1-z)^2 (1-kz))
///   scrH   (1+z)^2 / ((1-z)^3 (1-kz))
///   scrG   kz (1+z)^2 / ((1-z)^3 (1-kz))
/// Unparametrized: identity, koebe, koebe-derivative, half-plane, vertical-slit,
/// strip, herglotz ((1+z)/(1-z)), cauchy (1/(1-z)).
AnalyticFunction catalog(std::string_view name, double k = 0.0);

/// Names accepted by catalog().
const std::vector<std::string>& catalog_names();

/// h = (z - z^2/2 + z^3/6)/(1-z)^3, g = (z^2/2 + z^3/6)/(1-z)^3; dilatation z.
HarmonicMap harmonic_koebe();

/// Declarative description of a corpus member; this is what the JSON manifest
/// stores.
struct CorpusEntry {
  std::string id;
  std::string kind;           // analytic | shear | harmonic-koebe | series
  nlohmann::json parameters;  // kind-specific
  std::vector<std::string> class_tags;
  std::optional<double> qc_k;
};

void to_json(nlohmann::json& j, const CorpusEntry& e);
void from_json(const nlohmann::json& j, CorpusEntry& e);

/// Builds the mapping; validates the normalization h(0) = g(0) = 0 and, when
/// qc_k is declared, that the boundary sup of |g'/h'| does not exceed it.
HarmonicMap build_mapping(const CorpusEntry& entry);

/// identity, koebe, half-plane, vertical-slit, strip, harmonic-koebe and the
/// 18 shears of {identity, half-plane, strip} by {kz, kz^2}, k in {.25,.5,.8}.
std::vector<CorpusEntry> builtin_corpus_entries();
std::vector<HarmonicMap> build_corpus(const std::vector<CorpusEntry>& entries);

nlohmann::json corpus_manifest(const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> parse_corpus_manifest(const nlohmann::json& manifest);

/// CLI shear grammar: "phi=<identity|halfplane|strip>,omega=<k>z" or "<k>z2".
CorpusEntry parse_shear_spec(std::string_view spec);

}  // namespace hqc

#ifndef UPSHARP_SERIALIZE_HPP
#define UPSHARP_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "upsharp/constants.hpp"
#include "upsharp/extremals.hpp"
#include "upsharp/minimize.hpp"
#include "upsharp/profiles.hpp"
#include "upsharp/rational.hpp"
#include "upsharp/seminorms.hpp"

namespace upsharp {

/// Insertion-ordered so reports read in a fixed field order.
using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

Json to_json(const Rational& q);
Json to_json(const AnalyticProfile& p);
Json to_json(const SampledProfile& p);
Json to_json(const Profile& p);
/// {"family", "params"} or {"grid", "values", "scheme"}.
Profile profile_from_json(const Json& j);

Json to_json(const ModeFunctionalValue& v);
Json to_json(const ScanResult& s);
Json to_json(const QuotientReport& r);
Json to_json(const GridConfig& g);
Json to_json(const VariationalProblem& p);
Json to_json(const MinimizationResult& r, bool with_profile = true);
Json to_json(const CombinedBound& b);
Json to_json(const ConjectureReport& r);

/// principle,N,beta,quotient,predicted,rel_gap
std::string quotient_csv_header();
std::string quotient_csv_row(const QuotientReport& r);
/// N,k,num,den,value
std::string scan_csv(const ScanResult& s, bool header = true);
/// iteration,quotient
std::string history_csv(const MinimizationResult& r);
/// k,resolution,min_value plus the relaxed bound, the conjectured value and convergence
std::string conjecture_csv(const ConjectureReport& r);

struct RunManifest {
  std::string command;
  Json parameters;
  std::uint64_t seed = 0;
  std::string versions;
  std::string timestamp;
};

/// Version string of the tool, compiler and Eigen.
std::string version_string();
/// UTC ISO-8601; SOURCE_DATE_EPOCH overrides the clock.
std::string iso_timestamp();
RunManifest make_manifest(std::string command, Json parameters, std::uint64_t seed);
Json to_json(const RunManifest& m);

}  // namespace upsharp

#endif  // UPSHARP_SERIALIZE_HPP

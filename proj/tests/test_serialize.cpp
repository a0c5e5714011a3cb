#include <cstdlib>

#include <doctest.h>

#include "upsharp/errors.hpp"
#include "upsharp/serialize.hpp"

using namespace upsharp;

TEST_CASE("rationals keep exact parts") {
  const Json j = to_json(Rational(833, 100));
  CHECK(j["num"] == "833");
  CHECK(j["den"] == "100");
  CHECK(j["float"].get<double>() == doctest::Approx(8.33));
}

TEST_CASE("profiles round-trip") {
  const Profile profiles[] = {AnalyticProfile::gaussian(2.0, 0.5), AnalyticProfile::exponential(1.0, 3.0),
                              AnalyticProfile::hydrogen_second(1.5, 1.0),
                              AnalyticProfile::monomial_cutoff(1.0, 1.0, 2.0),
                              SampledProfile::sample(AnalyticProfile::gaussian(1.0, 1.0), uniform_grid(0.01, 4.0, 65))};
  for (const auto& p : profiles) {
    const Profile back = profile_from_json(to_json(p));
    for (double r : {0.05, 0.3, 1.7}) CHECK(eval_profile(back, r, 0) == eval_profile(p, r, 0));
  }
  CHECK_THROWS_AS(profile_from_json(Json{{"family", "gaussian"}}), domain_error);
  CHECK_THROWS_AS(profile_from_json(Json{{"family", "nope"}, {"params", Json::object()}}), domain_error);
}

TEST_CASE("scan reports carry the annotation outside the proved range") {
  const Json in = to_json(scan_infimum(ScanFormula::lemma34_f, 6, 8));
  CHECK_FALSE(in.contains("annotation"));
  CHECK(in["matches_prediction"] == true);
  const Json out = to_json(scan_infimum(ScanFormula::lemma34_f, 3, 8));
  CHECK(out["annotation"] == "outside lemma range");
  CHECK(scan_csv(scan_infimum(ScanFormula::lemma33_S, 2, 8)).rfind("N,k,num,den,value\n2,0,4,1,4\n", 0) == 0);
}

TEST_CASE("manifest") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(iso_timestamp() == "1970-01-01T00:00:00Z");
  const Json m = to_json(make_manifest("scan", Json{{"n", "2"}}, 9));
  CHECK(m["command"] == "scan");
  CHECK(m["seed"] == 9);
  CHECK(m["versions"].get<std::string>().find(kVersion) != std::string::npos);
  setenv("SOURCE_DATE_EPOCH", "soon", 1);
  CHECK_THROWS_AS(iso_timestamp(), domain_error);
  unsetenv("SOURCE_DATE_EPOCH");
}

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "efpr/eos.hpp"
#include "efpr/errors.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace efpr;
using fixtures::kGasDensity;
using fixtures::kLiquidDensity;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("derive_eos_params reproduces the n-butane constants") {
  const EosParams p = fixtures::nc4_330();
  // 50-digit values from an independent mpmath evaluation of the correlations.
  CHECK(rel(p.m, 0.67086063808) < 1e-12);
  CHECK(rel(p.alpha, 1.7536594586976607495) < 1e-13);
  CHECK(rel(p.beta, 7.2380810396730353951e-5) < 1e-13);
  CHECK(rel(p.kappa, 2.0607973750616246756e-19) < 1e-12);
  CHECK(rel(p.beta, 7.2381e-5) < 1e-4);
  CHECK(p.subcritical());

  const oracle::Pr hp = oracle::nc4_params(330);
  CHECK(rel(p.alpha, hp.alpha.convert_to<double>()) < 1e-14);
  CHECK(rel(p.beta, hp.beta.convert_to<double>()) < 1e-14);
}

TEST_CASE("beta does not depend on temperature") {
  const Substance s = *substance_preset("nC4");
  CHECK(derive_eos_params(s, 250.0).beta == derive_eos_params(s, 400.0).beta);
}

TEST_CASE("m(omega) branches") {
  CHECK(m_from_acentric(0.0) == 0.37464);
  const double first = 0.37464 + 1.54226 * 0.49 - 0.26992 * 0.49 * 0.49;
  CHECK(m_from_acentric(0.49) == first);
  const double w = std::nextafter(0.49, 1.0);
  CHECK(m_from_acentric(w) ==
        doctest::Approx(0.379642 + 1.485030 * w - 0.164423 * w * w + 0.016666 * w * w * w)
            .epsilon(1e-15));
  // The two printed correlations differ by 4.25e-3 at the switch.
  CHECK(std::abs(m_from_acentric(w) - first) == doctest::Approx(4.249867934e-3).epsilon(1e-6));
}

TEST_CASE("derive_eos_params rejects non-finite or non-positive input") {
  Substance s = *substance_preset("nC4");
  CHECK_THROWS_AS(derive_eos_params(s, std::numeric_limits<double>::quiet_NaN()), ConfigError);
  CHECK_THROWS_AS(derive_eos_params(s, -1.0), ConfigError);
  s.acentric_factor = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(derive_eos_params(s, 330.0), ConfigError);
  s = *substance_preset("nC4");
  s.critical_pressure = 0.0;
  CHECK_THROWS_AS(derive_eos_params(s, 330.0), ConfigError);
}

TEST_CASE("supercritical temperature is flagged, not rejected") {
  const EosParams p = derive_eos_params(*substance_preset("nC4"), 500.0);
  CHECK_FALSE(p.subcritical());
  CHECK(p.alpha > 0.0);
}

TEST_CASE("substance block parsing") {
  const Substance s = parse_substance_block(
      "# n-butane\nname = butane\nTc_K = 425.2\nPc_bar: 38.0\nomega = 0.199  # Table value\n");
  CHECK(s.name == "butane");
  CHECK(s.critical_temperature == 425.2);
  CHECK(s.critical_pressure == 38.0e5);
  CHECK(s.acentric_factor == 0.199);

  CHECK_THROWS_AS(parse_substance_block("Tc_K = 425.2\nomega = 0.2\n"), ConfigError);
  try {
    parse_substance_block("Tc_K = 425.2\nPc_bar = abc\nomega = 0.2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "Pc_bar");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_substance("no-such-substance"), ConfigError);
}

TEST_CASE("bulk free energy terms vanish as c -> 0") {
  const EosParams p = fixtures::nc4_330();
  const BulkEnergy tiny = bulk_free_energy(1e-9, p);
  const BulkEnergy one = bulk_free_energy(1.0, p);
  CHECK(std::abs(tiny.ideal) < 1e-6 * std::abs(p.rt()));
  CHECK(std::abs(tiny.repulsion) < 1e-6 * std::abs(one.repulsion));
  CHECK(std::abs(tiny.attraction) < 1e-6 * std::abs(one.attraction));
  // vartheta0 = 0 and ln 1 = 0.
  CHECK(one.ideal == 0.0);
}

TEST_CASE("bulk free energy at the liquid density matches 50-digit evaluation") {
  const EosParams p = fixtures::nc4_330();
  const BulkEnergy e = bulk_free_energy(kLiquidDensity, p);
  CHECK(rel(e.total, 162631995.55263104938) < 1e-12);
  CHECK(rel(e.ideal, 239486581.76306607450) < 1e-12);
  CHECK(rel(e.repulsion, 30577102.641256484638) < 1e-12);
  CHECK(rel(e.attraction, -107431688.85169150975) < 1e-12);
  CHECK(e.total == e.ideal + e.repulsion + e.attraction);

  const oracle::Pr hp = oracle::nc4_params(330);
  const double expected = oracle::f_bulk(hp, oracle::Real(kLiquidDensity)).convert_to<double>();
  CHECK(rel(e.total, expected) < 1e-12);
}

TEST_CASE("domain guard names the failed bound") {
  const EosParams p = fixtures::nc4_330();
  try {
    bulk_free_energy(0.0, p);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("positive") != std::string::npos);
  }
  try {
    pressure(1.0 / p.beta, p);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("beta*c") != std::string::npos);
  }
  CHECK_THROWS_AS(bulk_chemical_potential(-5.0, p), DomainError);
  CHECK_NOTHROW(bulk_free_energy(0.999 / p.beta, p));
}

TEST_CASE("chemical potential without attraction is the term-by-term derivative") {
  EosParams p = fixtures::nc4_330();
  p.alpha = 0.0;
  p.vartheta0 = 1234.5;
  const double rt = p.rt();
  for (double c : {10.0, 500.0, 5000.0, 12000.0}) {
    const double bc = p.beta * c;
    const double expected = p.vartheta0 + rt * std::log(c) + rt - rt * std::log(1.0 - bc) +
                            rt * bc / (1.0 - bc);
    CHECK(rel(bulk_chemical_potential(c, p), expected) < 1e-14);
  }
}

TEST_CASE("chemical potential matches finite differences of the free energy") {
  const EosParams p = fixtures::nc4_330();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double c = fixtures::uniform(rng, 0.9 * kGasDensity, 1.1 * kLiquidDensity);
    const double d = 1e-6 * c;
    const double fd =
        (bulk_free_energy(c + d, p).total - bulk_free_energy(c - d, p).total) / (2.0 * d);
    const double mu = bulk_chemical_potential(c, p);
    REQUIRE(rel(mu, fd) < 1e-6);
  }
}

TEST_CASE("chemical potential agrees with the high-precision derivative") {
  const EosParams p = fixtures::nc4_330();
  const oracle::Pr hp = oracle::nc4_params(330);
  for (double c : {kGasDensity, 1000.0, 4000.0, kLiquidDensity}) {
    const auto f = [&](oracle::Real x) { return oracle::f_bulk(hp, x); };
    const double expected = oracle::derivative(f, oracle::Real(c)).convert_to<double>();
    CHECK(rel(bulk_chemical_potential(c, p), expected) < 1e-12);
  }
}

TEST_CASE("coexisting phases have equal chemical potential and pressure") {
  const EosParams p = fixtures::nc4_330();
  const double mu_g = bulk_chemical_potential(kGasDensity, p);
  const double mu_l = bulk_chemical_potential(kLiquidDensity, p);
  // mpmath: 17132.956434347513 and 17132.957184671147.
  CHECK(rel(mu_g, 17132.956434347513) < 1e-12);
  CHECK(rel(mu_l, 17132.957184671147) < 1e-12);
  CHECK(std::abs(mu_g - mu_l) / std::abs(mu_g) <= 0.02);

  const double p_g = pressure(kGasDensity, p);
  const double p_l = pressure(kLiquidDensity, p);
  CHECK(rel(p_g, 590986.30034962322) < 1e-11);
  CHECK(rel(p_l, 590994.24486153635) < 1e-9);
  CHECK(std::abs(p_g - p_l) / p_g <= 0.05);
}

TEST_CASE("pressure approaches the ideal gas law at low density") {
  const EosParams p = fixtures::nc4_330();
  const double c = 1e-5 / p.beta;
  CHECK(rel(pressure(c, p), c * p.rt()) < 1e-3);
}

TEST_CASE("pressure expanded denominator equals the printed form") {
  const EosParams p = fixtures::nc4_330();
  const oracle::Pr hp = oracle::nc4_params(330);
  for (double c : {1.0, kGasDensity, 3000.0, kLiquidDensity, 13000.0}) {
    CHECK(rel(pressure(c, p), oracle::pressure(hp, oracle::Real(c)).convert_to<double>()) <
          1e-9);
  }
}

TEST_CASE("packing fractions of the coexisting phases") {
  const EosParams p = fixtures::nc4_330();
  CHECK(std::abs(p.beta * kGasDensity - 0.0180) < 1e-3);
  CHECK(std::abs(p.beta * kLiquidDensity - 0.6896) < 1e-3);
}

TEST_CASE("evaluations are deterministic") {
  const EosParams p = fixtures::nc4_330();
  const double c = 4321.123;
  const BulkEnergy a = bulk_free_energy(c, p);
  const BulkEnergy b = bulk_free_energy(c, p);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  const double pa = pressure(c, p);
  const double pb = pressure(c, p);
  CHECK(std::memcmp(&pa, &pb, sizeof pa) == 0);
}

TEST_CASE("attraction energy is concave on the physical range") {
  const EosParams p = fixtures::nc4_330();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double c = fixtures::uniform(rng, 1.0, 0.99 / p.beta);
    const double d = 1e-3 * c;
    const double second = attraction_energy(c + d, p) - 2.0 * attraction_energy(c, p) +
                          attraction_energy(c - d, p);
    REQUIRE(second <= 1e-9 * std::abs(attraction_energy(c, p)));
  }
}

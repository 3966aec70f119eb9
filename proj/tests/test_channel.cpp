#include <cmath>

#include "doctest.h"
#include "irs/channel.hpp"
#include "irs/errors.hpp"

using irs::complex;
using irs::ComplexVector;
using irs::Link;

TEST_CASE("path gain at the reference distance is the reference gain") {
  irs::Geometry g;
  g.user_pos = {0, 0, 0};
  g.ap_pos = {1, 0, 0};
  g.irs_center = {0, 5, 0};
  for (double exponent : {2.0, 3.3, 4.5}) {
    g.pathloss_exp_ua = exponent;
    CHECK(irs::path_gain(g, Link::UA) == doctest::Approx(1e-3).epsilon(1e-14));
  }
}

TEST_CASE("default deployment link gains") {
  const irs::Geometry g;
  CHECK(irs::distance(g.user_pos, g.ap_pos) == 50.0);
  CHECK(irs::distance(g.user_pos, g.irs_center) == 2.0);
  CHECK(irs::path_gain(g, Link::UA) == doctest::Approx(1e-3 * std::pow(50.0, -4.5)).epsilon(1e-13));
  CHECK(irs::path_gain(g, Link::UI) == doctest::Approx(1e-3 * std::pow(2.0, -2.2)).epsilon(1e-13));
  const double d_ia = std::sqrt(2.0 * 2.0 + 50.0 * 50.0);
  CHECK(irs::path_gain(g, Link::IA) == doctest::Approx(1e-3 * std::pow(d_ia, -2.5)).epsilon(1e-13));
}

TEST_CASE("doubling the distance with exponent 2 quarters the gain") {
  irs::Geometry g;
  g.user_pos = {0, 0, 0};
  g.ap_pos = {3, 0, 0};
  g.irs_center = {0, 7, 0};
  g.pathloss_exp_ua = 2.0;
  const double near = irs::path_gain(g, Link::UA);
  g.ap_pos = {6, 0, 0};
  CHECK(irs::path_gain(g, Link::UA) == doctest::Approx(near / 4.0).epsilon(1e-14));
}

TEST_CASE("geometry validation") {
  irs::Geometry g;
  g.irs_center = g.user_pos;
  CHECK_THROWS_AS(g.validate(), irs::ValidationError);
  g = irs::Geometry{};
  g.pathloss_exp_ui = 1.0;
  CHECK_THROWS_AS(g.validate(), irs::ValidationError);
  g.pathloss_exp_ui = 6.5;
  CHECK_THROWS_AS(g.validate(), irs::ValidationError);
  CHECK_NOTHROW(irs::Geometry{}.validate());
}

TEST_CASE("element fading statistics") {
  const irs::Geometry g;
  irs::Rng rng = irs::make_rng(21);
  const std::size_t n = 100000;
  const auto e = irs::sample_channels(g, n, rng);
  const double gain = irs::path_gain(g, Link::UI);
  double power = 0.0, re2 = 0.0, im2 = 0.0;
  for (const complex z : e.h_ui) {
    power += std::norm(z);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
  }
  const double dn = static_cast<double>(n);
  CHECK(std::abs(power / dn / gain - 1.0) < 0.02);
  CHECK(std::abs(re2 / dn / (gain / 2.0) - 1.0) < 0.02);
  CHECK(std::abs(im2 / dn / (gain / 2.0) - 1.0) < 0.02);

  const double gain_ia = irs::path_gain(g, Link::IA);
  double power_ia = 0.0;
  for (const complex z : e.h_ia) power_ia += std::norm(z);
  CHECK(std::abs(power_ia / dn / gain_ia - 1.0) < 0.02);
}

TEST_CASE("sampling is deterministic under a fixed seed") {
  const irs::Geometry g;
  irs::Rng a = irs::make_rng(5, {1, 2});
  irs::Rng b = irs::make_rng(5, {1, 2});
  const auto x = irs::sample_channels(g, 16, a);
  const auto y = irs::sample_channels(g, 16, b);
  CHECK(x.h_ua == y.h_ua);
  CHECK(x.h_ui == y.h_ui);
  CHECK(x.h_ia == y.h_ia);
  irs::Rng c = irs::make_rng(5, {1, 3});
  CHECK(irs::sample_channels(g, 16, c).h_ui != x.h_ui);
}

TEST_CASE("grouping") {
  SUBCASE("singleton groups") {
    irs::Rng rng = irs::make_rng(22);
    const auto e = irs::sample_channels(irs::Geometry{}, 6, rng);
    const auto r = irs::group_channels(e, 6);
    for (std::size_t m = 0; m < 6; ++m) CHECK(r.h_r[m] == std::conj(e.h_ia[m]) * e.h_ui[m]);
  }
  SUBCASE("all-ones elements sum per group") {
    const auto r = irs::group_channels(complex{1.0, 2.0}, ComplexVector(4, 1.0), ComplexVector(4, 1.0), 2);
    CHECK(r.h_r == ComplexVector{2.0, 2.0});
    CHECK(r.h_ext.size() == 3);
    CHECK(r.h_ext[0] == complex{1.0, -2.0});
  }
  SUBCASE("indivisible") {
    CHECK_THROWS_AS(irs::group_channels(complex{}, ComplexVector(4, 1.0), ComplexVector(4, 1.0), 3),
                    irs::IndivisibleGrouping);
  }
}

TEST_CASE("all-ones reflection reproduces the direct plus cascaded channel") {
  irs::Rng rng = irs::make_rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto e = irs::sample_channels(irs::Geometry{}, 12, rng);
    const auto r = irs::group_channels(e, 4);
    complex eff{};
    for (const complex z : r.h_ext) eff += z;  // theta^H h with theta = 1
    complex expected = std::conj(e.h_ua);
    for (const complex z : r.h_r) expected += z;
    CHECK(std::abs(eff - expected) <= 1e-15 * std::abs(expected) + 1e-30);
  }
}

TEST_CASE("coarse grouping equals summing the fine grouping") {
  irs::Rng rng = irs::make_rng(24);
  const auto e = irs::sample_channels(irs::Geometry{}, 24, rng);
  const auto fine = irs::group_channels(e, 24);
  for (std::size_t m : {1, 2, 3, 4, 6, 8, 12}) {
    const auto coarse = irs::group_channels(e, m);
    const std::size_t per = 24 / m;
    for (std::size_t g = 0; g < m; ++g) {
      complex acc{};
      for (std::size_t k = g * per; k < (g + 1) * per; ++k) acc += fine.h_r[k];
      CHECK(acc == coarse.h_r[g]);
    }
  }
}

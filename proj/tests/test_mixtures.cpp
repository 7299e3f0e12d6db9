#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/generators.hpp"
#include "trient/mixtures.hpp"

using namespace trient;

namespace {
const double kS2 = 1.0 / std::numbers::sqrt2;
const double kS3 = 1.0 / std::sqrt(3.0);
const GGHZParams kSymG{kS2, kS2};
const GWParams kSymW{kS3, kS3, kS3};
}  // namespace

TEST_CASE("eigenstate tangle closed form") {
  SECTION("endpoints") {
    CHECK(tangle_eigenstate_closed({kSymG, kSymW, 1.0, 0.7}) ==
          Catch::Approx(1.0).margin(1e-12));
    CHECK(tangle_eigenstate_closed({kSymG, kSymW, 0.0, 0.7}) ==
          Catch::Approx(0.0).margin(1e-12));
    const GGHZParams g{0.8, 0.6};
    CHECK(tangle_eigenstate_closed({g, kSymW, 1.0, 0.0}) ==
          Catch::Approx(4.0 * 0.64 * 0.36).margin(1e-12));
  }
  SECTION("vanishes at the zero-tangle weight") {
    const double p0 = p_zero(kSymG, kSymW);
    CHECK(tangle_eigenstate_closed({kSymG, kSymW, p0, 0.0}) ==
          Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("matches the direct tangle everywhere") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double a = 0.15 + 0.7 * uni(rng);
      const GGHZParams g{a, std::sqrt(1.0 - a * a)};
      double c = 0.1 + uni(rng), d = 0.1 + uni(rng), f = 0.1 + uni(rng);
      const double n = std::sqrt(c * c + d * d + f * f);
      const RankTwoFamily fam{g, {c / n, d / n, f / n}, uni(rng),
                              2.0 * std::numbers::pi * uni(rng)};
      CHECK(tangle_eigenstate_closed(fam) ==
            Catch::Approx(tangle_pure(make_eigenstate(fam))).margin(1e-10));
    }
  }
}

TEST_CASE("eigenstate fill closed form") {
  SECTION("endpoints reproduce the pure closed forms") {
    CHECK(cf_eigenstate_closed({kSymG, kSymW, 1.0, 0.0}).c_fill ==
          Catch::Approx(cf_gghz(kSymG)).margin(1e-12));
    CHECK(cf_eigenstate_closed({kSymG, kSymW, 0.0, 0.0}).c_fill ==
          Catch::Approx(cf_gw(kSymW)).margin(1e-12));
    const GGHZParams g{0.8, 0.6};
    const GWParams w{0.7, std::sqrt(1.0 - 0.49 - 0.16), 0.4};
    CHECK(cf_eigenstate_closed({g, w, 0.0, 0.0}).c_fill ==
          Catch::Approx(cf_gw(w)).margin(1e-10));
  }
  SECTION("symmetric two-fifths point") {
    CHECK(cf_eigenstate_closed({kSymG, kSymW, 0.4, 0.0}).c_fill ==
          Catch::Approx(0.8).margin(1e-12));
  }
  SECTION("stored fill matches its own coefficients") {
    const EigenstateClosedForms forms =
        cf_eigenstate_closed({kSymG, kSymW, 0.35, 1.1});
    const double recomputed = std::pow(
        (256.0 / 3.0) *
            std::abs(forms.x * forms.y * forms.z * (forms.x + forms.y + forms.z)),
        0.25);
    CHECK(forms.c_fill == Catch::Approx(recomputed).margin(1e-12));
  }
  SECTION("agrees with the direct fill at inert phases") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 150; ++i) {
      const double a = 0.15 + 0.7 * uni(rng);
      const GGHZParams g{a, std::sqrt(1.0 - a * a)};
      double c = 0.1 + uni(rng), d = 0.1 + uni(rng), f = 0.1 + uni(rng);
      const double n = std::sqrt(c * c + d * d + f * f);
      for (double phi : {0.0, std::numbers::pi}) {
        const RankTwoFamily fam{g, {c / n, d / n, f / n}, uni(rng), phi};
        CHECK(cf_eigenstate_closed(fam).c_fill ==
              Catch::Approx(concurrence_fill_direct(make_eigenstate(fam)))
                  .margin(1e-9));
      }
    }
  }
  SECTION("printed phase factors break the nonzero-phase values") {
    // The direct fill is phase-independent; the printed coefficients are not.
    const RankTwoFamily fam{kSymG, kSymW, 0.5, std::numbers::pi / 2.0};
    const double direct = concurrence_fill_direct(make_eigenstate(fam));
    CHECK(direct == Catch::Approx(cf_eigenstate_closed(
                        {kSymG, kSymW, 0.5, 0.0}).c_fill).margin(1e-12));
    CHECK(std::abs(cf_eigenstate_closed(fam).c_fill - direct) > 0.5);
  }
  SECTION("dropping the y tail term kills the p -> 0 limit") {
    const RankTwoFamily fam{kSymG, kSymW, 0.0, 0.0};
    CHECK(cf_eigenstate_closed(fam, FillYTail::AsPrinted).c_fill ==
          Catch::Approx(0.0).margin(1e-12));
    CHECK(cf_eigenstate_closed(fam).c_fill ==
          Catch::Approx(8.0 / 9.0).margin(1e-12));
  }
}

TEST_CASE("pure closed forms") {
  CHECK(cf_gghz({kS2, kS2}) == Catch::Approx(1.0).margin(1e-12));
  CHECK(cf_gw(kSymW) == Catch::Approx(8.0 / 9.0).margin(1e-12));
  CHECK(cf_gghz({1.0, 0.0}) == Catch::Approx(0.0).margin(1e-12));
  SECTION("match the direct fill on constructed states") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
      const double a = uni(rng);
      const GGHZParams g{a, std::sqrt(1.0 - a * a)};
      CHECK(cf_gghz(g) ==
            Catch::Approx(concurrence_fill_direct(make_gghz(g))).margin(1e-10));
      double c = 0.1 + uni(rng), d = 0.1 + uni(rng), f = 0.1 + uni(rng);
      const double n = std::sqrt(c * c + d * d + f * f);
      const GWParams w{c / n, d / n, f / n};
      CHECK(cf_gw(w) ==
            Catch::Approx(concurrence_fill_direct(make_gw(w))).margin(1e-10));
    }
  }
}

TEST_CASE("stationary points") {
  SECTION("symmetric family coincides at 2/5") {
    const StationaryPoints sp = stationary_points({kSymG, kSymW, 0.5, 0.0});
    REQUIRE(sp.p1);
    CHECK(*sp.p1 == Catch::Approx(0.4).margin(1e-12));
    CHECK(*sp.p2 == Catch::Approx(0.4).margin(1e-12));
    CHECK(*sp.p3 == Catch::Approx(0.4).margin(1e-12));
    CHECK(sp.coincident());
  }
  SECTION("generic families do not coincide") {
    const GWParams w{0.8, 0.5, std::sqrt(1.0 - 0.64 - 0.25)};
    const StationaryPoints sp = stationary_points({kSymG, w, 0.5, 0.0});
    CHECK_FALSE(sp.coincident());
  }
  SECTION("zero denominators are flagged per component") {
    // a = 0 with c^2 d^2 = f^2 b^2 drives the p1 denominator to zero:
    // take c = d and f = c^2, so 2 c^2 + c^4 = 1 gives c^2 = sqrt(2) - 1.
    const double c2 = std::numbers::sqrt2 - 1.0;
    const GWParams w{std::sqrt(c2), std::sqrt(c2), c2};
    const StationaryPoints sp = stationary_points({{0.0, 1.0}, w, 0.5, 0.0});
    CHECK_FALSE(sp.p1);
    CHECK(sp.p2);
    CHECK_FALSE(sp.coincident());
  }
}

TEST_CASE("minimizing weight and stationary fill value") {
  SECTION("symmetric example") {
    const MinimumBound mb = p_min_and_lower_bound(kSymG);
    CHECK(mb.p_min == Catch::Approx(0.4).margin(1e-15));
    CHECK(mb.cf_lower == Catch::Approx(0.8).margin(1e-15));
  }
  SECTION("quarter weight") {
    const MinimumBound mb = p_min_and_lower_bound({std::sqrt(0.75), 0.5});
    CHECK(mb.p_min == Catch::Approx(4.0 / 7.0).margin(1e-12));
    CHECK(mb.cf_lower == Catch::Approx(4.0 / 7.0).margin(1e-12));
  }
  SECTION("limits of the formulas") {
    const double b = std::sqrt(1.0 - 1e-8);
    const MinimumBound mb = p_min_and_lower_bound({1e-4, b});
    CHECK(mb.p_min == Catch::Approx(0.25).epsilon(1e-6));
    CHECK(mb.cf_lower == Catch::Approx(1.0).epsilon(1e-6));
  }
  SECTION("degenerate endpoints are rejected") {
    CHECK_THROWS_AS(p_min_and_lower_bound({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(p_min_and_lower_bound({0.0, 1.0}), std::invalid_argument);
  }
  SECTION("explicit W part must be symmetric") {
    CHECK_NOTHROW(p_min_and_lower_bound(kSymG, kSymW));
    CHECK_THROWS_AS(
        p_min_and_lower_bound(kSymG, {0.8, 0.5, std::sqrt(0.11)}),
        std::invalid_argument);
  }
}

TEST_CASE("zero-tangle weight") {
  SECTION("symmetric value") {
    const double expected =
        4.0 * std::cbrt(2.0) / (3.0 + 4.0 * std::cbrt(2.0));
    CHECK(p_zero(kSymG, kSymW) == Catch::Approx(expected).margin(1e-15));
  }
  SECTION("extremes") {
    CHECK(p_zero({0.0, 1.0}, kSymW) == Catch::Approx(1.0).margin(1e-15));
    CHECK(p_zero(kSymG, {0.0, kS2, kS2}) == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("degenerate family is rejected") {
    CHECK_THROWS_AS(p_zero({1.0, 0.0}, {0.0, kS2, kS2}), std::invalid_argument);
  }
  SECTION("phase states at p0 carry no tangle") {
    const double p0 = p_zero(kSymG, kSymW);
    for (int k = 0; k < 3; ++k) {
      const RankTwoFamily fam{kSymG, kSymW, p0,
                              2.0 * std::numbers::pi * k / 3.0};
      CHECK(tangle_pure(make_eigenstate(fam)) ==
            Catch::Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("phase-averaged mixture") {
  SECTION("pure endpoints") {
    CHECK(max_abs(Matrix(rho_hat(kSymG, kSymW, 1.0).matrix() -
                         make_gghz(kSymG).projector().matrix())) < 1e-12);
    CHECK(max_abs(Matrix(rho_hat(kSymG, kSymW, 0.0).matrix() -
                         make_gw(kSymW).projector().matrix())) < 1e-12);
  }
  SECTION("equals the rank-2 mixture at any weight") {
    for (double p : {0.1, 0.3, 0.7, 0.95})
      CHECK(max_abs(Matrix(rho_hat(kSymG, kSymW, p).matrix() -
                           make_rank2_mixture({kSymG, kSymW, p, 0.0}).matrix())) <
            1e-12);
  }
  SECTION("decomposition identity on the zero-tangle segment") {
    const double p0 = p_zero(kSymG, kSymW);
    const Matrix hat0 = rho_hat(kSymG, kSymW, p0).matrix();
    const Matrix omega = make_gw(kSymW).projector().matrix();
    for (int i = 0; i <= 20; ++i) {
      const double p = p0 * i / 20.0;
      const Matrix combined = (p / p0) * hat0 + ((p0 - p) / p0) * omega;
      CHECK(max_abs(Matrix(
                combined - make_rank2_mixture({kSymG, kSymW, p, 0.0}).matrix())) <
            1e-12);
    }
  }
}

TEST_CASE("fill upper bound") {
  SECTION("left endpoint is the gW fill") {
    const UpperBound ub = cf_upper_bound(kSymG, kSymW, 0.0);
    CHECK(ub.printed == Catch::Approx(8.0 / 9.0).margin(1e-12));
    CHECK(ub.variant_p0 == Catch::Approx(8.0 / 9.0).margin(1e-12));
  }
  SECTION("readings coincide at p0") {
    const double p0 = p_zero(kSymG, kSymW);
    const UpperBound ub = cf_upper_bound(kSymG, kSymW, p0);
    CHECK(ub.printed == Catch::Approx(ub.variant_p0).margin(1e-12));
  }
  SECTION("out-of-range weights are rejected") {
    const double p0 = p_zero(kSymG, kSymW);
    CHECK_THROWS_AS(cf_upper_bound(kSymG, kSymW, p0 + 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(cf_upper_bound(kSymG, kSymW, -0.01), std::invalid_argument);
  }
  SECTION("dominates the fill of the phase-decomposition elements") {
    const double p0 = p_zero(kSymG, kSymW);
    for (int i = 0; i <= 10; ++i) {
      const double p = p0 * i / 10.0;
      const UpperBound ub = cf_upper_bound(kSymG, kSymW, p);
      const double element =
          concurrence_fill_direct(make_eigenstate({kSymG, kSymW, p, 0.0}));
      CHECK(ub.printed >= std::min(element, cf_gw(kSymW)) - 1e-9);
    }
  }
}

TEST_CASE("convex roof estimator") {
  SECTION("pure states are exact") {
    const RoofEstimate est = convex_roof_estimate(
        make_rank2_mixture({kSymG, kSymW, 1.0, 0.0}), RoofMeasure::Tangle);
    CHECK(est.value == Catch::Approx(1.0).margin(1e-12));
    CHECK(est.decomposition_size == 1);
    const GGHZParams g{0.8, 0.6};
    const RoofEstimate fill_est = convex_roof_estimate(
        make_rank2_mixture({g, kSymW, 1.0, 0.0}), RoofMeasure::ConcurrenceFill);
    CHECK(fill_est.value == Catch::Approx(cf_gghz(g)).margin(1e-9));
  }
  SECTION("rejects higher-rank states") {
    Matrix mixed = 0.5 * ghz_state().projector().matrix() +
                   0.3 * w_state().projector().matrix() +
                   0.2 * basis_state(3).projector().matrix();
    CHECK_THROWS_AS(
        convex_roof_estimate(DensityMatrix(mixed), RoofMeasure::Tangle),
        std::invalid_argument);
  }
  SECTION("deterministic and monotone in the budget") {
    const DensityMatrix rho = make_rank2_mixture({kSymG, kSymW, 0.3, 0.0});
    RoofOptions small;
    small.budget = 200;
    RoofOptions medium;
    medium.budget = 600;
    RoofOptions large;
    large.budget = 1400;
    const double v_small =
        convex_roof_estimate(rho, RoofMeasure::Tangle, small).value;
    const double v_small_again =
        convex_roof_estimate(rho, RoofMeasure::Tangle, small).value;
    const double v_medium =
        convex_roof_estimate(rho, RoofMeasure::Tangle, medium).value;
    const double v_large =
        convex_roof_estimate(rho, RoofMeasure::Tangle, large).value;
    CHECK(v_small == v_small_again);
    CHECK(v_medium <= v_small + 1e-15);
    CHECK(v_large <= v_medium + 1e-15);
  }
  SECTION("tangle vanishes on the zero-tangle segment") {
    RoofOptions options;
    options.budget = 1200;
    for (double p : {0.3, 0.55}) {
      const RoofEstimate est = convex_roof_estimate(
          make_rank2_mixture({kSymG, kSymW, p, 0.0}), RoofMeasure::Tangle,
          options);
      CHECK(est.value <= 1e-6);
    }
  }
  SECTION("fill estimate sits between the roof and the bound") {
    RoofOptions options;
    options.budget = 1200;
    const double p = 0.3;
    const RoofEstimate est = convex_roof_estimate(
        make_rank2_mixture({kSymG, kSymW, p, 0.0}),
        RoofMeasure::ConcurrenceFill, options);
    // Every decomposition element is a superposition of the two branches, so
    // its fill is the phase-free eigenstate fill at its own weight; that
    // function is convex in the weight for the symmetric family, which pins
    // the exact roof at g(p) = (5 p^2 - 4 p + 8) / 9.
    const double roof = (5.0 * p * p - 4.0 * p + 8.0) / 9.0;
    CHECK(est.value >= roof - 1e-6);
    CHECK(est.value <= cf_upper_bound(kSymG, kSymW, p).printed + 1e-6);
    CHECK(est.value == Catch::Approx(roof).margin(1e-4));
  }
  SECTION("custom measures are supported") {
    const DensityMatrix rho = make_rank2_mixture({kSymG, kSymW, 0.5, 0.0});
    RoofOptions options;
    options.budget = 300;
    const RoofEstimate est = convex_roof_estimate(
        rho, [](const PureState3& psi) { return tangle_pure(psi); }, options);
    CHECK(est.value <= 1e-5);
  }
}

TEST_CASE("sweep tables") {
  SECTION("eigenstate sweep shape") {
    const auto rows = sweep_eigenstate(kSymG, kSymW, 0.0, 11);
    REQUIRE(rows.size() == 11);
    CHECK(rows.front().p == 0.0);
    CHECK(rows.back().p == 1.0);
    CHECK(rows.front().cf_direct == Catch::Approx(8.0 / 9.0).margin(1e-12));
    CHECK(rows.back().cf_direct == Catch::Approx(1.0).margin(1e-12));
    for (const auto& r : rows)
      CHECK(r.cf_closed == Catch::Approx(r.cf_direct).margin(1e-9));
  }
  SECTION("mixture bound sweep shape") {
    RoofOptions options;
    options.budget = 150;
    const auto rows = sweep_mixture_bound(kSymG, kSymW, 5, options);
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().p == 0.0);
    CHECK(rows.back().p == Catch::Approx(p_zero(kSymG, kSymW)).margin(1e-15));
    CHECK(rows.front().cf_upper_printed ==
          Catch::Approx(8.0 / 9.0).margin(1e-12));
    for (const auto& r : rows)
      CHECK(r.cf_roof_estimate <= r.cf_upper_printed + 1e-6);
  }
  SECTION("sweeps validate the sample count") {
    CHECK_THROWS_AS(sweep_eigenstate(kSymG, kSymW, 0.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_mixture_bound(kSymG, kSymW, 1), std::invalid_argument);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "efg/coeffs.hpp"

using namespace efg;

namespace {
double abs_of(const XComplex& x) { return std::exp(xc_log_abs(x)); }
} // namespace

TEST_CASE("catalog: sin(2) coefficients and ground truth") {
    auto s = catalog("sin:lambda=2");
    // a_3 = -2^3/3! = -4/3
    auto a3 = xc_to_complex(s.coeff(3));
    CHECK(a3.real() == Catch::Approx(-4.0 / 3.0).epsilon(1e-14));
    CHECK(a3.imag() == 0.0);
    CHECK(s.coeff(2).is_zero());
    CHECK(s.log_abs(2) == -kInf);
    REQUIRE(s.ground_truth.has_value());
    CHECK(s.ground_truth->order == 1.0);
    CHECK(s.ground_truth->type_value == 2.0);
}

TEST_CASE("catalog: power_type termwise identity gives exact type") {
    auto s = catalog("power_type:rho=2");
    for (index_t n : {1, 7, 100, 5000}) {
        // n * |a_n|^{2/n} = 1 for all n >= 1, so tau = 1/(2e)
        const double v = static_cast<double>(n) *
                         std::exp((2.0 / static_cast<double>(n)) * s.log_abs(n));
        CHECK(v == Catch::Approx(1.0).epsilon(1e-12));
    }
    CHECK(s.ground_truth->type_value == Catch::Approx(1.0 / (2.0 * std::exp(1.0))));
}

TEST_CASE("catalog: designer padding and parameter validation") {
    auto mini = catalog("minimal_type:rho=1");
    CHECK(abs_of(mini.coeff(0)) == 1.0);
    CHECK(mini.coeff(1).is_zero());
    CHECK(std::isfinite(mini.log_abs(2)));
    auto maxi = catalog("maximal_type:rho=1");
    CHECK(maxi.coeff(1).is_zero());
    CHECK(maxi.coeff(2).is_zero());
    CHECK(std::isfinite(maxi.log_abs(3)));

    CHECK_THROWS_AS(catalog("mittag_leffler:alpha=-1"), BadParam);
    CHECK_THROWS_AS(catalog("power_type:rho=0"), BadParam);
    CHECK_THROWS_AS(catalog("sin:lambda=0"), BadParam);
    CHECK_THROWS_AS(catalog("nope"), UnknownId);
}

TEST_CASE("catalog ground truths") {
    CHECK(catalog("exp").ground_truth->order == 1.0);
    CHECK(catalog("exp").ground_truth->type_value == 1.0);
    CHECK(catalog("exp_zk:k=3").ground_truth->order == 3.0);
    CHECK(catalog("mittag_leffler:alpha=0.5").ground_truth->order == 2.0);
    CHECK(catalog("sin_plus_cos2").ground_truth->type_value == 2.0);
    auto poly = catalog("polynomial:coeffs=1,0,3");
    CHECK(poly.ground_truth->order == 0.0);
    CHECK_FALSE(poly.ground_truth->type_defined());
    CHECK(catalog("minimal_type:rho=2").ground_truth->type_tag == GroundTruth::TypeTag::minimal);
    CHECK(catalog("maximal_type:rho=2").ground_truth->type_tag == GroundTruth::TypeTag::maximal);
}

TEST_CASE("exp_zk has exact zeros off multiples of k") {
    auto s = catalog("exp_zk:k=2");
    for (index_t n = 0; n <= 40; ++n) {
        if (n % 2 == 0) {
            CHECK(std::isfinite(s.log_abs(n)));
        } else {
            CHECK(s.coeff(n).is_zero());
            CHECK(s.log_abs(n) == -kInf);
        }
    }
}

TEST_CASE("coeff and log_abs agree on every catalog entry") {
    for (const char* spec : {"exp", "sin:lambda=2", "cos:lambda=1.5", "exp_zk:k=2",
                             "mittag_leffler:alpha=0.5", "power_type:rho=2", "minimal_type:rho=1",
                             "maximal_type:rho=1", "sin_plus_cos2"}) {
        auto s = catalog(spec);
        for (index_t n = 0; n <= 2000; n += 37) {
            const double la = s.log_abs(n);
            const double lc = xc_log_abs(s.coeff(n));
            if (la == -kInf) {
                CHECK(lc == -kInf);
            } else {
                CHECK(std::fabs(lc - la) <= 1e-8 * std::max(1.0, std::fabs(la)));
            }
        }
    }
}

TEST_CASE("derivative_exact at 0 reproduces the Taylor coefficients") {
    for (const char* spec : {"exp", "sin:lambda=2", "cos:lambda=1.5", "sin_plus_cos2"}) {
        auto s = catalog(spec);
        REQUIRE(s.has_derivative_exact());
        for (index_t n = 0; n <= 300; n += 7) {
            const XComplex d = s.derivative_exact({0.0, 0.0}, n);
            const XComplex c = s.coeff(n);
            if (c.is_zero()) {
                CHECK(d.is_zero());
                continue;
            }
            // d / n! == a_n within 1e-10 relative in log magnitude and phase
            const double got = xc_log_abs(d) - ln_factorial(n);
            const double want = s.log_abs(n);
            CHECK(std::fabs(got - want) <= 1e-10 * std::max(1.0, std::fabs(want)));
            const double dphase = std::remainder(xc_arg(d) - xc_arg(c), 6.283185307179586);
            CHECK(std::fabs(dphase) <= 1e-10);
        }
    }
}

TEST_CASE("source_sum examples") {
    auto sum = source_sum(catalog("sin:lambda=1"), catalog("cos:lambda=2"));
    // coefficient of z^2 comes from cos(2z): -(2z)^2/2! / z^2 = -2
    auto a2 = xc_to_complex(sum.coeff(2));
    CHECK(a2.real() == Catch::Approx(-2.0).epsilon(1e-14));
    CHECK(sum.has_derivative_exact());
    CHECK_FALSE(sum.ground_truth.has_value());

    // f + zero polynomial = coefficients of f
    auto f = catalog("exp");
    auto same = source_sum(f, catalog("polynomial:coeffs=0"));
    for (index_t n = 0; n < 30; ++n)
        CHECK(xc_value_eq(same.coeff(n), f.coeff(n)));

    // the closed-form sin z + cos 2z matches the combinator route
    auto spc = catalog("sin_plus_cos2");
    auto built = source_sum(catalog("sin:lambda=1"), catalog("cos:lambda=2"));
    for (index_t n = 0; n <= 60; ++n) {
        const double a = spc.log_abs(n);
        const double b = built.log_abs(n);
        if (a == -kInf || b == -kInf) {
            CHECK(a == b);
        } else {
            CHECK(a == Catch::Approx(b).margin(1e-10));
        }
    }
}

TEST_CASE("parity-masked combination dispatches per index") {
    // even part: minimal-type of order 2; odd part: order-1 source.  The sum
    // realizes an order-2 minimal-type function whose order sup is not
    // attained along the odds.
    auto even_part = masked(catalog("minimal_type:rho=2"), IndexSequence::evens());
    auto odd_part = masked(catalog("power_type:rho=1"), IndexSequence::odds());
    auto g = source_sum(even_part, odd_part);
    auto mini = catalog("minimal_type:rho=2");
    auto pt = catalog("power_type:rho=1");
    for (index_t n = 2; n <= 500; ++n) {
        if (n % 2 == 0) {
            CHECK(xc_value_eq(g.coeff(n), mini.coeff(n)));
        } else {
            CHECK(xc_value_eq(g.coeff(n), pt.coeff(n)));
        }
    }
}

TEST_CASE("sharp source keeps log_abs bit-identical") {
    auto s = catalog("sin:lambda=2");
    auto sh = sharp_source(s);
    for (index_t n = 0; n <= 500; ++n) {
        CHECK(sh.log_abs(n) == s.log_abs(n));
        auto c = sh.coeff(n);
        CHECK(c.mant_im == 0.0);
        CHECK(c.mant_re >= 0.0);
    }
}

TEST_CASE("entirety diagnostic trends") {
    CHECK(entirety_diagnostic(catalog("exp"), 500).ok);
    CHECK(entirety_diagnostic(catalog("maximal_type:rho=1"), 500).ok);
    CHECK(entirety_diagnostic(catalog("polynomial:coeffs=1,2"), 500).ok); // vacuous
}

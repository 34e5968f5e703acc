#include "qfi/errors.hpp"
#include "qfi/monotone_catalog.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace qfi;

namespace {

std::vector<MonotoneFamily> all_test_families() {
    std::vector<MonotoneFamily> v = named_families();
    for (double a : {0.1, 0.3, 0.7, 0.9}) v.push_back(MonotoneFamily::wyd(a));
    for (double p : {-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) v.push_back(MonotoneFamily::power_difference(p));
    return v;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return g;
}

} // namespace

TEST(EvalF, Normalization) {
    EXPECT_DOUBLE_EQ(eval_f(MonotoneFamily::bkm(), 1.0), 1.0);
    for (const auto& f : all_test_families()) EXPECT_NEAR(eval_f(f, 1.0), 1.0, 1e-14) << f.label();
}

TEST(EvalF, LinearBures) {
    EXPECT_DOUBLE_EQ(eval_f(MonotoneFamily::bures(), 3.0), 2.0);
}

TEST(EvalF, MorozovaChentsovAtE) {
    // ((e-1)/ln e)^2 * 2/(1+e)
    const double e = std::exp(1.0);
    EXPECT_NEAR(eval_f(MonotoneFamily::mc(), e), 1.5880950279, 1e-9);
    EXPECT_NEAR(eval_f(MonotoneFamily::mc(), e), (e - 1) * (e - 1) * 2 / (1 + e), 1e-14);
}

TEST(EvalF, RemovableSingularityIsContinuous) {
    for (const auto& f : all_test_families()) {
        const double below = eval_f(f, 1.0 - 1e-9);
        const double at = eval_f(f, 1.0);
        const double above = eval_f(f, 1.0 + 1e-9);
        EXPECT_NEAR(below, at, 1e-8) << f.label();
        EXPECT_NEAR(above, at, 1e-8) << f.label();
    }
}

TEST(EvalF, DomainErrors) {
    EXPECT_THROW(eval_f(MonotoneFamily::bkm(), 0.0), DomainError);
    EXPECT_THROW(eval_f(MonotoneFamily::bures(), -1.0), DomainError);
    EXPECT_THROW(eval_c(MonotoneFamily::bures(), 0.0, 1.0), DomainError);
}

TEST(EvalF, PowerDifferenceTwoIsBures) {
    const auto p2 = MonotoneFamily::power_difference(2.0);
    for (double x : log_grid(1e-3, 1e3, 31)) EXPECT_NEAR(eval_f(p2, x), (1 + x) / 2, 1e-12 * (1 + x)) << x;
}

TEST(EvalF, AtZero) {
    EXPECT_DOUBLE_EQ(eval_f_at_zero(MonotoneFamily::bures()), 0.5);
    EXPECT_DOUBLE_EQ(eval_f_at_zero(MonotoneFamily::bkm()), 0.0);
    EXPECT_DOUBLE_EQ(eval_f_at_zero(MonotoneFamily::har()), 0.0);
    EXPECT_DOUBLE_EQ(eval_f_at_zero(MonotoneFamily::mc()), 0.0);
    EXPECT_DOUBLE_EQ(eval_f_at_zero(MonotoneFamily::geometric()), 0.0);
    EXPECT_NEAR(eval_f_at_zero(MonotoneFamily::wyd(0.5)), 0.25, 1e-15);
    for (double a : {0.1, 0.3, 0.5, 0.8}) {
        const auto w = MonotoneFamily::wyd(a);
        EXPECT_NEAR(eval_f_at_zero(w), a * (1 - a), 1e-15);
        // f(x) - f(0) = O(x^min(alpha, 1 - alpha))
        const double x = 1e-12;
        EXPECT_NEAR(eval_f(w, x), eval_f_at_zero(w), std::pow(x, std::min(a, 1 - a)));
    }
}

TEST(EvalC, Examples) {
    EXPECT_NEAR(eval_c(MonotoneFamily::bures(), 0.3, 0.7), 2.0, 1e-15);
    EXPECT_NEAR(eval_c(MonotoneFamily::bkm(), 0.5, 0.5), 2.0, 1e-15);
    const double r1 = 0.7310585786300049, r2 = 0.2689414213699951;
    EXPECT_NEAR(eval_c(MonotoneFamily::bkm(), r1, r2), 2.163953413738653, 1e-12);
}

TEST(EvalC, SymmetryAndHomogeneity) {
    for (const auto& f : all_test_families()) {
        for (auto [x, y] : {std::pair{0.2, 0.9}, std::pair{3.0, 0.01}, std::pair{1.0, 1.0 + 1e-10}}) {
            EXPECT_NEAR(eval_c(f, x, y), eval_c(f, y, x), 1e-12 * eval_c(f, x, y)) << f.label();
            EXPECT_NEAR(eval_c(f, 2.5 * x, 2.5 * y), eval_c(f, x, y) / 2.5, 1e-12 * eval_c(f, x, y)) << f.label();
        }
    }
}

TEST(EvalG, NamedValues) {
    EXPECT_DOUBLE_EQ(eval_g(MonotoneFamily::bkm(), 0.7), 1.0);
    EXPECT_DOUBLE_EQ(eval_g(MonotoneFamily::mc(), 0.0), 1.0);
    EXPECT_NEAR(eval_g(MonotoneFamily::bures(), 0.5), 0.92423431452002, 1e-13);
    EXPECT_NEAR(eval_g(MonotoneFamily::mc(), 1.0), 1.3130352854993313, 1e-14);
    EXPECT_NEAR(eval_g(MonotoneFamily::har(), 1.0), std::sinh(2.0) / 2.0, 1e-14);
    EXPECT_NEAR(eval_g(MonotoneFamily::geometric(), 1.0), std::sinh(1.0), 1e-14);
    EXPECT_NEAR(eval_g(MonotoneFamily::wyd(0.5), 1.0), std::tanh(0.5) / 0.5, 1e-14);
}

TEST(EvalG, DefinitionFromF) {
    // g_f(x) = (e^{2x} - 1) / (2x f(e^{2x}))
    for (const auto& f : all_test_families()) {
        for (double x : {-2.0, -0.3, 0.05, 0.7, 1.9}) {
            const double direct = std::expm1(2 * x) / (2 * x * eval_f(f, std::exp(2 * x)));
            EXPECT_NEAR(eval_g(f, x), direct, 1e-12 * direct) << f.label() << " x=" << x;
        }
    }
}

TEST(EvalG, EvenAndOneAtZero) {
    for (const auto& f : all_test_families()) {
        EXPECT_DOUBLE_EQ(eval_g(f, 0.0), 1.0) << f.label();
        EXPECT_DOUBLE_EQ(eval_g_hat(f, 0.0), 1.0) << f.label();
        for (double x : {1e-9, 0.4, 3.0, 40.0}) EXPECT_EQ(eval_g(f, x), eval_g(f, -x)) << f.label();
    }
}

TEST(EvalG, LogMatchesValue) {
    for (const auto& f : all_test_families()) {
        for (double x : {0.0, 0.3, 2.0, 10.0}) {
            EXPECT_NEAR(std::exp(eval_log_g(f, x)), eval_g(f, x), 1e-13 * eval_g(f, x)) << f.label();
            EXPECT_NEAR(std::exp(eval_log_g_hat(f, x)), eval_g_hat(f, x), 1e-13 * eval_g_hat(f, x)) << f.label();
        }
    }
}

TEST(EvalG, LogStaysFiniteForHugeArguments) {
    EXPECT_TRUE(std::isfinite(eval_log_g(MonotoneFamily::har(), 800.0)));
    EXPECT_TRUE(std::isinf(eval_g(MonotoneFamily::har(), 800.0)));
}

TEST(EvalGHat, Examples) {
    EXPECT_NEAR(eval_g_hat(MonotoneFamily::mc(), 1.3), 1.0, 1e-14);
    EXPECT_NEAR(eval_g_hat(MonotoneFamily::bkm(), 0.5), 0.92423431452002, 1e-13);
    for (double x : {0.2, 1.0, 4.0})
        EXPECT_NEAR(eval_g(MonotoneFamily::mc(), x) * eval_g(MonotoneFamily::bures(), x), 1.0, 1e-14);
}

TEST(EvalGDifference, MatchesPlainDifference) {
    for (const auto& f : all_test_families()) {
        for (double x : {0.01, 0.5, 2.0}) {
            const double plain = eval_g(f, x) - eval_g(MonotoneFamily::bkm(), x);
            EXPECT_NEAR(eval_g_difference(f, MonotoneFamily::bkm(), x), plain, 1e-13 * std::max(1.0, eval_g(f, x)));
        }
    }
    // near x = 0 the difference is O(x^2) and keeps full relative accuracy
    const double x = 1e-6;
    EXPECT_NEAR(eval_g_difference(MonotoneFamily::mc(), MonotoneFamily::bkm(), x), x * x / 3, 1e-10 * x * x);
}

TEST(Taylor, Examples) {
    EXPECT_EQ(taylor_coeffs(MonotoneFamily::bkm(), SeriesKind::G, 3), (std::vector<double>{0, 0, 0}));
    const auto mc = taylor_coeffs(MonotoneFamily::mc(), SeriesKind::G, 1);
    ASSERT_EQ(mc.size(), 1u);
    EXPECT_NEAR(mc[0], 1.0 / 3.0, 1e-16);
    const auto b = taylor_coeffs(MonotoneFamily::bures(), SeriesKind::G, 2);
    EXPECT_NEAR(b[0], -1.0 / 3.0, 1e-16);
    EXPECT_NEAR(b[1], 2.0 / 15.0, 1e-16);
    for (double c : taylor_coeffs(MonotoneFamily::mc(), SeriesKind::GHat, 5)) EXPECT_EQ(c, 0.0);
}

TEST(Taylor, OrderValidation) {
    EXPECT_THROW(taylor_coeffs(MonotoneFamily::mc(), SeriesKind::G, 0), ValidationError);
    EXPECT_THROW(taylor_coeffs(MonotoneFamily::mc(), SeriesKind::G, 15), ValidationError);
}

TEST(Taylor, ClosedFormMatchesFactorSeries) {
    for (const auto& f : named_families()) {
        ASSERT_TRUE(detail::has_closed_form(f));
        for (auto kind : {SeriesKind::G, SeriesKind::GHat}) {
            const auto a = detail::taylor_coeffs_closed_form(f, kind, 14);
            const auto b = detail::taylor_coeffs_by_factors(f, kind, 14);
            for (int l = 0; l < 14; ++l)
                EXPECT_NEAR(a[l], b[l], 1e-13 * std::max(1.0, std::abs(a[l]))) << f.label() << " l=" << l + 1;
        }
    }
}

TEST(Taylor, FiniteDifferenceOracle) {
    // a_1 = g''(0)/2 by a centered difference
    const double h = 1e-3;
    for (const auto& f : all_test_families()) {
        for (auto kind : {SeriesKind::G, SeriesKind::GHat}) {
            const auto eval = [&](double x) { return kind == SeriesKind::G ? eval_g(f, x) : eval_g_hat(f, x); };
            const double fd = (eval(h) + eval(-h) - 2.0) / (2 * h * h);
            EXPECT_NEAR(taylor_coeffs(f, kind, 1)[0], fd, 1e-5) << f.label();
        }
    }
}

TEST(Taylor, PartialSumsConvergeInsideRadius) {
    for (const auto& f : all_test_families()) {
        for (auto kind : {SeriesKind::G, SeriesKind::GHat}) {
            const double x = std::min(0.3, 0.2 * series_radius(f, kind));
            const auto a = taylor_coeffs(f, kind, 14);
            double s = 1.0, xp = 1.0;
            for (double c : a) {
                xp *= x * x;
                s += c * xp;
            }
            const double ref = kind == SeriesKind::G ? eval_g(f, x) : eval_g_hat(f, x);
            EXPECT_NEAR(s, ref, 1e-13) << f.label();
        }
    }
}

TEST(Taylor, Radii) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(series_radius(MonotoneFamily::bkm(), SeriesKind::G), inf);
    EXPECT_EQ(series_radius(MonotoneFamily::har(), SeriesKind::G), inf);
    EXPECT_EQ(series_radius(MonotoneFamily::geometric(), SeriesKind::G), inf);
    EXPECT_NEAR(series_radius(MonotoneFamily::bures(), SeriesKind::G), M_PI / 2, 1e-12);
    EXPECT_NEAR(series_radius(MonotoneFamily::mc(), SeriesKind::G), M_PI, 1e-12);
    EXPECT_NEAR(series_radius(MonotoneFamily::wyd(0.5), SeriesKind::G), M_PI, 1e-12);
    EXPECT_NEAR(series_radius(MonotoneFamily::bkm(), SeriesKind::GHat), M_PI / 2, 1e-12);
    EXPECT_EQ(series_radius(MonotoneFamily::har(), SeriesKind::GHat), inf);
    // sinh(3y)/sinh(y) = 4 cosh^2 y - 1 is entire
    EXPECT_EQ(series_radius(MonotoneFamily::power_difference(-0.5), SeriesKind::G), inf);
    EXPECT_NEAR(series_radius(MonotoneFamily::power_difference(1.2), SeriesKind::G), M_PI / 1.2, 1e-12);
}

TEST(Taylor, RadiusMatchesCoefficientGrowth) {
    // Cauchy-Hadamard estimate |a_l|^{-1/(2l)} at l = 14 against the factor analysis
    for (const auto& f : {MonotoneFamily::bures(), MonotoneFamily::mc(), MonotoneFamily::wyd(0.3)}) {
        const auto a = taylor_coeffs(f, SeriesKind::G, 14);
        const double est = std::pow(std::abs(a[13]) / std::abs(a[12]), -0.5);
        EXPECT_NEAR(est, series_radius(f, SeriesKind::G), 1e-3) << f.label();
    }
}

TEST(VerifyStandard, CatalogPasses) {
    const std::vector<double> lin = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    EXPECT_TRUE(verify_standard(MonotoneFamily::bures(), lin).pass);
    const auto grid = log_grid(1e-3, 1e3, 61);
    EXPECT_TRUE(verify_standard(MonotoneFamily::wyd(0.3), grid).pass);
    EXPECT_TRUE(verify_standard(MonotoneFamily::power_difference(2.0), grid).pass);
    for (const auto& f : all_test_families()) {
        const StandardReport r = verify_standard(f, grid);
        EXPECT_TRUE(r.pass) << f.label() << " sym " << r.symmetry << " mono " << r.monotonicity;
    }
}

TEST(VerifyStandard, Errors) {
    EXPECT_THROW(verify_standard(MonotoneFamily::bures(), std::vector<double>{}), ValidationError);
    EXPECT_THROW(verify_standard(MonotoneFamily::bures(), std::vector<double>{1.0, -2.0}), DomainError);
}

TEST(Identifiers, ParseAndLabel) {
    for (const char* id : {"har", "bures", "bkm", "mc", "geometric", "wyd:0.3", "pdiff:-0.5"}) {
        EXPECT_EQ(parse_family(id).label(), id);
    }
    const auto pair = parse_families("pair:0.7");
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_EQ(pair[0].label(), "pdiff:-0.2");
    EXPECT_EQ(pair[1].label(), "pdiff:1.2");
    EXPECT_NEAR(pair[0].parameter() + pair[1].parameter(), 1.0, 1e-15);
}

TEST(Identifiers, Rejections) {
    EXPECT_THROW(parse_family("sld"), ValidationError);
    EXPECT_THROW(parse_family("wyd:"), ValidationError);
    EXPECT_THROW(parse_family("wyd:0.3x"), ValidationError);
    EXPECT_THROW(parse_family("pair:0.2"), ValidationError);
    EXPECT_THROW(parse_family("wyd:1.5"), DomainError);
    EXPECT_THROW(parse_family("pdiff:3"), DomainError);
    EXPECT_THROW(parse_families("pair:2"), DomainError);
}

TEST(Ordering, PointwiseChainOfFilterFunctions) {
    // g_B <= g_WY <= 1 <= g_G everywhere, and g_MC <= g_Har everywhere
    for (double x = 0.01; x < 20.0; x *= 1.3) {
        const double b = eval_g(MonotoneFamily::bures(), x), wy = eval_g(MonotoneFamily::wyd(0.5), x);
        const double g = eval_g(MonotoneFamily::geometric(), x), mc = eval_g(MonotoneFamily::mc(), x);
        const double har = eval_g(MonotoneFamily::har(), x);
        EXPECT_LE(b, wy);
        EXPECT_LE(wy, 1.0);
        EXPECT_GE(g, 1.0);
        EXPECT_LE(mc, har);
    }
}

TEST(Ordering, GeometricAboveMorozovaChentsovForLargeArguments) {
    // sinh(x)/x <= x coth(x) holds only up to x ~ 2.676
    EXPECT_LE(eval_g(MonotoneFamily::geometric(), 2.6), eval_g(MonotoneFamily::mc(), 2.6));
    EXPECT_GT(eval_g(MonotoneFamily::geometric(), 2.7), eval_g(MonotoneFamily::mc(), 2.7));
}

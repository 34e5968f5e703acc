// monotone_catalog.cpp - standard operator monotone functions, filter functions, series data

#include "qfi/monotone_catalog.hpp"

#include "qfi/errors.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace qfi {

namespace {

std::string format_number(double v) {
    std::array<char, 64> buf{};
    // 15 digits hide the rounding left by 1/2 -/+ d in pair members
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 15);
    return std::string(buf.data(), ptr);
}

double parse_number(std::string_view text, std::string_view id) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ValidationError("invalid family parameter in '" + std::string(id) + "'");
    }
    return v;
}

// --------------------------- hyperbolic factor model -------------------------

// One factor (sinh(cx)/(cx))^power or cosh(cx)^power, c > 0.
struct Factor {
    bool is_cosh = false;
    double scale = 1.0;
    int power = 0;
};

using Factors = std::vector<Factor>;

void add_factor(Factors& fs, bool is_cosh, double scale, int power) {
    scale = std::abs(scale);
    if (scale == 0.0 || power == 0) return;  // sinh(0)/0 = cosh(0) = 1
    for (auto& f : fs) {
        if (f.is_cosh == is_cosh && std::abs(f.scale - scale) <= 1e-15 * scale) {
            f.power += power;
            return;
        }
    }
    fs.push_back({is_cosh, scale, power});
}

Factors prune(Factors fs) {
    std::erase_if(fs, [](const Factor& f) { return f.power == 0; });
    return fs;
}

Factors g_factors(const MonotoneFamily& fam) {
    Factors fs;
    switch (fam.kind()) {
    case FamilyKind::Har:
        add_factor(fs, false, 2.0, 1);
        break;
    case FamilyKind::Geometric:
        add_factor(fs, false, 1.0, 1);
        break;
    case FamilyKind::Bures:
        add_factor(fs, false, 1.0, 1);
        add_factor(fs, true, 1.0, -1);
        break;
    case FamilyKind::BKM:
        break;
    case FamilyKind::MC:
        add_factor(fs, false, 1.0, -1);
        add_factor(fs, true, 1.0, 1);
        break;
    case FamilyKind::WYD: {
        const double a = fam.parameter();
        add_factor(fs, false, a, 1);
        add_factor(fs, false, 1.0 - a, 1);
        add_factor(fs, false, 1.0, -1);
        break;
    }
    case FamilyKind::PowerDifference: {
        const double p = fam.parameter();
        add_factor(fs, false, 1.0, 1);
        add_factor(fs, false, p - 1.0, 1);
        add_factor(fs, false, p, -1);
        break;
    }
    }
    return prune(std::move(fs));
}

Factors factors_for(const MonotoneFamily& fam, SeriesKind kind) {
    Factors fs = g_factors(fam);
    if (kind == SeriesKind::GHat) {
        // tanh(x)/x = (sinh x / x) / cosh x
        add_factor(fs, false, 1.0, 1);
        add_factor(fs, true, 1.0, -1);
    }
    return prune(std::move(fs));
}

double log_factor(const Factor& f, double x) {
    const double z = f.scale * x;
    return f.is_cosh ? detail::log_cosh(z) : detail::log_sinhc(z);
}

double log_product(const Factors& fs, double x) {
    x = std::abs(x);
    double s = 0.0;
    for (const auto& f : fs) s += f.power * log_factor(f, x);
    return s;
}

// Factors of g_f / g_h (or ĝ_f / ĝ_h).
Factors quotient(Factors num, const Factors& den) {
    for (const auto& f : den) add_factor(num, f.is_cosh, f.scale, -f.power);
    return prune(std::move(num));
}

// --------------------------- power series in u = x^2 -------------------------

using Series = std::vector<long double>;

Series factor_series(const Factor& f, int n) {
    Series s(static_cast<std::size_t>(n) + 1);
    const long double c2 = static_cast<long double>(f.scale) * f.scale;
    long double term = 1.0L;  // c^{2k} / (2k+1)! or c^{2k} / (2k)!
    for (int k = 0; k <= n; ++k) {
        s[static_cast<std::size_t>(k)] = term;
        const long double a = f.is_cosh ? (2 * k + 1) * (2 * k + 2) : (2 * k + 2) * (2 * k + 3);
        term *= c2 / a;
    }
    return s;
}

Series multiply(const Series& a, const Series& b) {
    Series r(a.size(), 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// a / b with b[0] != 0
Series divide(const Series& a, const Series& b) {
    Series r(a.size(), 0.0L);
    for (std::size_t k = 0; k < a.size(); ++k) {
        long double acc = a[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * r[k - j];
        r[k] = acc / b[0];
    }
    return r;
}

long double factorial(int n) {
    long double r = 1.0L;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

__extension__ typedef __int128 i128;

// Euler numbers E_{2n}, exact up to n = 16.
long double euler_number(int n) {
    static const std::vector<i128> table = [] {
        std::vector<i128> e(17);
        e[0] = 1;
        for (int m = 1; m <= 16; ++m) {
            i128 acc = 0;
            i128 binom = 1;  // C(2m, 2k), updated incrementally
            for (int k = 0; k < m; ++k) {
                acc += binom * e[static_cast<std::size_t>(k)];
                // C(2m, 2k+2) = C(2m, 2k) (2m-2k)(2m-2k-1) / ((2k+1)(2k+2))
                binom = binom * (2 * m - 2 * k) * (2 * m - 2 * k - 1) / ((2 * k + 1) * (2 * k + 2));
            }
            e[static_cast<std::size_t>(m)] = -acc;
        }
        return e;
    }();
    if (n < 0 || n > 16) throw ValidationError("euler_number: order out of range");
    return static_cast<long double>(table[static_cast<std::size_t>(n)]);
}

long double bernoulli(int n) {  // B_{2n}
    return boost::math::bernoulli_b2n<long double>(n);
}

// Coefficient of x^{2l} in tanh(x)/x.
long double tanhc_coeff(int l) {
    const int n = l + 1;
    const long double p = std::ldexp(1.0L, 2 * n);
    return p * (p - 1.0L) * bernoulli(n) / factorial(2 * n);
}

void check_order(int L) {
    if (L < 1) throw ValidationError("taylor_coeffs: L must be >= 1");
    if (L > 14) throw ValidationError("taylor_coeffs: L must be <= 14");
}

} // namespace

// ------------------------------- MonotoneFamily -------------------------------

MonotoneFamily::MonotoneFamily(FamilyKind kind, double param, std::string label)
    : kind_(kind), param_(param), label_(std::move(label)) {}

MonotoneFamily MonotoneFamily::har() { return {FamilyKind::Har, 0.0, "har"}; }
MonotoneFamily MonotoneFamily::bures() { return {FamilyKind::Bures, 0.0, "bures"}; }
MonotoneFamily MonotoneFamily::bkm() { return {FamilyKind::BKM, 0.0, "bkm"}; }
MonotoneFamily MonotoneFamily::mc() { return {FamilyKind::MC, 0.0, "mc"}; }
MonotoneFamily MonotoneFamily::geometric() { return {FamilyKind::Geometric, 0.0, "geometric"}; }

MonotoneFamily MonotoneFamily::wyd(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("wyd: alpha must lie in (0, 1)");
    return {FamilyKind::WYD, alpha, "wyd:" + format_number(alpha)};
}

MonotoneFamily MonotoneFamily::power_difference(double p) {
    if (!(p >= -1.0 && p <= 2.0)) throw DomainError("pdiff: p must lie in [-1, 2]");
    return {FamilyKind::PowerDifference, p, "pdiff:" + format_number(p)};
}

std::pair<MonotoneFamily, MonotoneFamily> MonotoneFamily::half_pair(double d) {
    if (!(d >= 0.0 && d <= 1.5)) throw DomainError("pair: d must lie in [0, 3/2]");
    return {power_difference(0.5 - d), power_difference(0.5 + d)};
}

std::vector<MonotoneFamily> named_families() {
    return {MonotoneFamily::bures(), MonotoneFamily::wyd(0.5), MonotoneFamily::bkm(),
            MonotoneFamily::geometric(), MonotoneFamily::mc(), MonotoneFamily::har()};
}

std::vector<MonotoneFamily> parse_families(std::string_view id) {
    if (id.starts_with("pair:")) {
        auto [lo, hi] = MonotoneFamily::half_pair(parse_number(id.substr(5), id));
        return {lo, hi};
    }
    return {parse_family(id)};
}

MonotoneFamily parse_family(std::string_view id) {
    if (id == "har") return MonotoneFamily::har();
    if (id == "bures") return MonotoneFamily::bures();
    if (id == "bkm") return MonotoneFamily::bkm();
    if (id == "mc") return MonotoneFamily::mc();
    if (id == "geometric") return MonotoneFamily::geometric();
    if (id.starts_with("wyd:")) return MonotoneFamily::wyd(parse_number(id.substr(4), id));
    if (id.starts_with("pdiff:")) return MonotoneFamily::power_difference(parse_number(id.substr(6), id));
    if (id.starts_with("pair:")) {
        throw ValidationError("'" + std::string(id) + "' names a pair of families, not a single family");
    }
    throw ValidationError("unknown family identifier '" + std::string(id) + "'");
}

// ---------------------------------- f and c ----------------------------------

double eval_f(const MonotoneFamily& family, double x) {
    if (!(x > 0.0)) throw DomainError("eval_f: x must be positive");
    using detail::expm1_ratio;
    const double L = std::log(x);
    switch (family.kind()) {
    case FamilyKind::Har:
        return 2.0 * x / (x + 1.0);
    case FamilyKind::Bures:
        return 0.5 * (x + 1.0);
    case FamilyKind::BKM:
        return expm1_ratio(L);
    case FamilyKind::MC: {
        const double q = expm1_ratio(L);
        return q * q * 2.0 / (1.0 + x);
    }
    case FamilyKind::Geometric:
        return std::sqrt(x);
    case FamilyKind::WYD: {
        const double a = family.parameter();
        const double q = expm1_ratio(L);
        return q * q / (expm1_ratio(a * L) * expm1_ratio((1.0 - a) * L));
    }
    case FamilyKind::PowerDifference: {
        const double p = family.parameter();
        return expm1_ratio(p * L) / expm1_ratio((p - 1.0) * L);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double eval_f_at_zero(const MonotoneFamily& family) {
    switch (family.kind()) {
    case FamilyKind::Bures:
        return 0.5;
    case FamilyKind::WYD: {
        const double a = family.parameter();
        return a * (1.0 - a);
    }
    case FamilyKind::PowerDifference: {
        const double p = family.parameter();
        return p > 1.0 ? (p - 1.0) / p : 0.0;
    }
    default:
        return 0.0;
    }
}

double eval_c(const MonotoneFamily& family, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("eval_c: arguments must be positive");
    return 1.0 / (x * eval_f(family, y / x));
}

// ---------------------------------- g and ĝ ----------------------------------

double eval_log_g(const MonotoneFamily& family, double x) {
    return log_product(factors_for(family, SeriesKind::G), x);
}

double eval_g(const MonotoneFamily& family, double x) {
    if (family.kind() == FamilyKind::BKM) return 1.0;
    return std::exp(eval_log_g(family, x));
}

double eval_log_g_hat(const MonotoneFamily& family, double x) {
    return log_product(factors_for(family, SeriesKind::GHat), x);
}

double eval_g_hat(const MonotoneFamily& family, double x) {
    if (family.kind() == FamilyKind::MC) return 1.0;
    return std::exp(eval_log_g_hat(family, x));
}

double eval_g_difference(const MonotoneFamily& f, const MonotoneFamily& h, double x) {
    const Factors q = quotient(factors_for(f, SeriesKind::G), factors_for(h, SeriesKind::G));
    return eval_g(h, x) * std::expm1(log_product(q, x));
}

// ------------------------------ Taylor coefficients ----------------------------

namespace detail {

bool has_closed_form(const MonotoneFamily& family) {
    switch (family.kind()) {
    case FamilyKind::WYD:
        return family.parameter() == 0.5;
    case FamilyKind::PowerDifference:
        return false;
    default:
        return true;
    }
}

std::vector<double> taylor_coeffs_by_factors(const MonotoneFamily& family, SeriesKind kind, int L) {
    check_order(L);
    Series acc(static_cast<std::size_t>(L) + 1, 0.0L);
    acc[0] = 1.0L;
    for (const auto& f : factors_for(family, kind)) {
        const Series s = factor_series(f, L);
        for (int k = 0; k < std::abs(f.power); ++k) acc = f.power > 0 ? multiply(acc, s) : divide(acc, s);
    }
    return std::vector<double>(acc.begin() + 1, acc.end());
}

std::vector<double> taylor_coeffs_closed_form(const MonotoneFamily& family, SeriesKind kind, int L) {
    check_order(L);
    if (!has_closed_form(family)) {
        throw UnsupportedFamilyError("no closed-form series for family " + family.label());
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(L));
    const bool g = kind == SeriesKind::G;
    for (int l = 1; l <= L; ++l) {
        long double a = 0.0L;
        const long double four_l = std::ldexp(1.0L, 2 * l);
        switch (family.kind()) {
        case FamilyKind::BKM:
            a = g ? 0.0L : tanhc_coeff(l);
            break;
        case FamilyKind::MC:
            a = g ? four_l * bernoulli(l) / factorial(2 * l) : 0.0L;
            break;
        case FamilyKind::Har:
            a = g ? four_l / factorial(2 * l + 1) : 4.0L * four_l / (2.0L * factorial(2 * l + 2));
            break;
        case FamilyKind::Geometric:
            a = g ? 1.0L / factorial(2 * l + 1) : (1.0L - euler_number(l + 1)) / factorial(2 * l + 2);
            break;
        case FamilyKind::Bures:
            if (g) {
                a = tanhc_coeff(l);
            } else {
                // tanh^2(x)/x^2 = (1 - tanh'(x)) / x^2
                const int n = l + 2;
                const long double p = std::ldexp(1.0L, 2 * n);
                a = -p * (p - 1.0L) * bernoulli(n) * (2 * n - 1) / factorial(2 * n);
            }
            break;
        case FamilyKind::WYD:  // alpha = 1/2
            a = g ? tanhc_coeff(l) / four_l : -2.0L * euler_number(l + 1) / factorial(2 * l + 2);
            break;
        case FamilyKind::PowerDifference:
            break;
        }
        out.push_back(static_cast<double>(a));
    }
    return out;
}

double expm1_ratio(double z) {
    if (std::abs(z) < 1e-4) {
        // 1 + z/2! + z^2/3! + ... through z^6
        return 1.0 + z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 + z * (1.0 / 720 + z / 5040)))));
    }
    return std::expm1(z) / z;
}

double log_sinhc(double z) {
    z = std::abs(z);
    if (z < 0.5) {
        // sinh(z)/z - 1 = sum_{k>=1} z^{2k}/(2k+1)!
        const double z2 = z * z;
        double term = z2 / 6.0;
        double sum = 0.0;
        for (int k = 1; k < 30 && term > 1e-20 * (sum + 1e-300); ++k) {
            sum += term;
            term *= z2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        }
        return std::log1p(sum);
    }
    if (z < 20.0) return std::log(std::sinh(z) / z);
    return z - std::log(2.0 * z) + std::log1p(-std::exp(-2.0 * z));
}

double log_cosh(double z) {
    z = std::abs(z);
    if (z < 20.0) {
        const double s = std::sinh(0.5 * z);
        return std::log1p(2.0 * s * s);
    }
    return z - std::numbers::ln2 + std::log1p(std::exp(-2.0 * z));
}

} // namespace detail

std::vector<double> taylor_coeffs(const MonotoneFamily& family, SeriesKind kind, int L) {
    if (detail::has_closed_form(family)) return detail::taylor_coeffs_closed_form(family, kind, L);
    return detail::taylor_coeffs_by_factors(family, kind, L);
}

// ------------------------------- convergence radius ----------------------------

double series_radius(const MonotoneFamily& family, SeriesKind kind) {
    const Factors fs = factors_for(family, kind);
    constexpr int kZeros = 64;
    const double pi = std::numbers::pi;

    // Zeros of each factor lie on the imaginary axis at i*t, t > 0.
    auto is_zero_of = [&](const Factor& f, double t) {
        const double m = t * f.scale / pi - (f.is_cosh ? 0.5 : 0.0);
        const double r = std::round(m);
        const double floor_m = f.is_cosh ? 0.0 : 1.0;
        return r >= floor_m && std::abs(m - r) <= 1e-9 * std::max(1.0, std::abs(m));
    };

    std::vector<double> candidates;
    for (const auto& f : fs) {
        if (f.power >= 0) continue;
        for (int m = 0; m < kZeros; ++m) {
            const double t = f.is_cosh ? pi * (m + 0.5) / f.scale : pi * (m + 1) / f.scale;
            candidates.push_back(t);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    for (double t : candidates) {
        int net = 0;
        for (const auto& f : fs)
            if (is_zero_of(f, t)) net += f.power;
        if (net < 0) return t;
    }
    return std::numeric_limits<double>::infinity();
}

// ------------------------------- standard checks -------------------------------

StandardReport verify_standard(const MonotoneFamily& family, std::span<const double> grid) {
    if (grid.empty()) throw ValidationError("verify_standard: grid must be nonempty");
    StandardReport rep;
    rep.normalization = std::abs(eval_f(family, 1.0) - 1.0);

    std::vector<double> xs(grid.begin(), grid.end());
    std::sort(xs.begin(), xs.end());
    double min_f = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (!(x > 0.0)) throw DomainError("verify_standard: grid points must be positive");
        const double fx = eval_f(family, x);
        min_f = std::min(min_f, fx);
        const double expect = fx / x;
        rep.symmetry = std::max(rep.symmetry, std::abs(eval_f(family, 1.0 / x) - expect) / expect);
        if (i > 0 && fx < prev) rep.monotonicity = std::max(rep.monotonicity, (prev - fx) / prev);
        prev = fx;
    }
    rep.positivity = min_f > 0.0 ? 0.0 : std::max(1.0, -min_f);
    constexpr double tol = 1e-12;
    rep.pass = rep.normalization <= tol && rep.symmetry <= tol && rep.positivity <= tol && rep.monotonicity <= tol;
    return rep;
}

} // namespace qfi

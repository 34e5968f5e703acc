// monotone_catalog.hpp - standard operator monotone functions and their filter functions
//
// Every family f in the catalog induces
//   c_f(x, y) = 1 / (x f(y/x))                          (Morozova-Chentsov kernel)
//   g_f(x)    = (e^{2x} - 1) / (2x f(e^{2x}))           (filter function, even, g_f(0) = 1)
//   ĝ_f(x)    = g_f(x) tanh(x) / x
// For all catalog members g_f and ĝ_f are finite products of powers of
// sinh(cx)/(cx) and cosh(cx); that representation drives evaluation, Taylor
// coefficients and convergence radii.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qfi {

enum class FamilyKind { Har, Bures, BKM, MC, Geometric, WYD, PowerDifference };

class MonotoneFamily {
public:
    static MonotoneFamily har();
    static MonotoneFamily bures();
    static MonotoneFamily bkm();
    static MonotoneFamily mc();
    static MonotoneFamily geometric();
    // Wigner-Yanase-Dyson, 0 < alpha < 1. alpha = 1/2 is the Wigner-Yanase metric.
    static MonotoneFamily wyd(double alpha);
    // Power-difference family f_p, -1 <= p <= 2.
    static MonotoneFamily power_difference(double p);
    // The pair (f_{1/2-d}, f_{1/2+d}), 0 <= d <= 3/2, whose geometric mean is f_G.
    static std::pair<MonotoneFamily, MonotoneFamily> half_pair(double d);

    FamilyKind kind() const noexcept { return kind_; }
    // alpha for WYD, p for PowerDifference, 0 otherwise.
    double parameter() const noexcept { return param_; }
    // Canonical identifier ("bures", "wyd:0.3", "pdiff:1.5", ...).
    const std::string& label() const noexcept { return label_; }

    friend bool operator==(const MonotoneFamily& a, const MonotoneFamily& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_;
    }

private:
    MonotoneFamily(FamilyKind kind, double param, std::string label);

    FamilyKind kind_;
    double param_;
    std::string label_;
};

// The six named families Har, G, Bures, BKM, WY, MC.
std::vector<MonotoneFamily> named_families();

// Parse a canonical identifier. "pair:<d>" expands to its two power-difference members.
std::vector<MonotoneFamily> parse_families(std::string_view id);
// Parse a single-family identifier; "pair:<d>" is rejected.
MonotoneFamily parse_family(std::string_view id);

// f(x), x > 0. Throws DomainError for x <= 0.
double eval_f(const MonotoneFamily& family, double x);
// lim_{x->0+} f(x).
double eval_f_at_zero(const MonotoneFamily& family);
// c_f(x, y) = 1/(x f(y/x)), x, y > 0.
double eval_c(const MonotoneFamily& family, double x, double y);

double eval_g(const MonotoneFamily& family, double x);
double eval_log_g(const MonotoneFamily& family, double x);
double eval_g_hat(const MonotoneFamily& family, double x);
double eval_log_g_hat(const MonotoneFamily& family, double x);

// g_f(x) - g_h(x) evaluated as g_h(x) expm1(log g_f(x) - log g_h(x)), so the
// sign is exact even where both are close to one.
double eval_g_difference(const MonotoneFamily& f, const MonotoneFamily& h, double x);

enum class SeriesKind { G, GHat };

// Coefficients of x^{2l}, l = 1..L, in g_f (a_{2l-1}) or ĝ_f (a_{2l}).
// Throws ValidationError for L < 1.
std::vector<double> taylor_coeffs(const MonotoneFamily& family, SeriesKind kind, int L);

// Radius of convergence (in x) of the Maclaurin series of g_f or ĝ_f;
// +infinity for entire functions.
double series_radius(const MonotoneFamily& family, SeriesKind kind);

struct StandardReport {
    double normalization = 0.0;  // |f(1) - 1|
    double symmetry = 0.0;       // max relative |f(1/x) - f(x)/x|
    double positivity = 0.0;     // max(0, -min f)
    double monotonicity = 0.0;   // max relative decrease between sorted grid points
    bool pass = false;
};

// Checks the defining properties of a standard monotone function on a grid.
// Passes when every violation is <= 1e-12.
StandardReport verify_standard(const MonotoneFamily& family, std::span<const double> grid);

namespace detail {

// Coefficients via power-series arithmetic on the hyperbolic factors, for any
// family. Used as the production path for parametric families and as a
// cross-check for the closed forms of the named ones.
std::vector<double> taylor_coeffs_by_factors(const MonotoneFamily& family, SeriesKind kind, int L);

// Closed-form (Bernoulli / Euler number) coefficients. Only valid for the named families.
std::vector<double> taylor_coeffs_closed_form(const MonotoneFamily& family, SeriesKind kind, int L);

bool has_closed_form(const MonotoneFamily& family);

// phi(z) = (e^z - 1)/z with phi(0) = 1.
double expm1_ratio(double z);
// log(sinh(z)/z), even in z.
double log_sinhc(double z);
// log(cosh(z)).
double log_cosh(double z);

} // namespace detail

} // namespace qfi

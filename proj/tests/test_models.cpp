#include "fixtures.hpp"

#include "qfi/dsf.hpp"
#include "qfi/errors.hpp"
#include "qfi/metrics.hpp"
#include "qfi/models.hpp"

#include <gtest/gtest.h>

using namespace qfi;
using namespace qfi::testing;

TEST(SpinMatrices, Commutators) {
    for (double S : {0.5, 1.0, 1.5, 2.0, 3.5}) {
        const SpinMatrices m = spin_matrices(S);
        const cplx i(0.0, 1.0);
        EXPECT_LE((m.Sx * m.Sy - m.Sy * m.Sx - i * m.Sz).norm(), 1e-13) << S;
        EXPECT_LE((m.Sy * m.Sz - m.Sz * m.Sy - i * m.Sx).norm(), 1e-13) << S;
        const Matrix casimir = m.Sx * m.Sx + m.Sy * m.Sy + m.Sz * m.Sz;
        EXPECT_LE((casimir - S * (S + 1) * Matrix::Identity(casimir.rows(), casimir.cols())).norm(), 1e-12);
        EXPECT_EQ(m.Sz(0, 0).real(), S);
    }
    const SpinMatrices one = spin_matrices(1.0);
    EXPECT_NEAR(one.Sx(0, 1).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(spin_matrices(0.7), ValidationError);
    EXPECT_THROW(spin_matrices(0.0), ValidationError);
}

TEST(SpinRatio, QubitBures) {
    const SpinRatioReport r = spin_ratio_property({0.5, 1.0}, MonotoneFamily::bures());
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.support_ok);
    EXPECT_NEAR(r.ratio, 0.9242343145200195, 1e-12);
    EXPECT_NEAR(r.expected, std::tanh(0.5) / 0.5, 1e-15);
    EXPECT_EQ(r.printed_at_zero_field, 0.0);
    EXPECT_NEAR(r.printed_over_brute, 8.0, 1e-10);
}

TEST(SpinRatio, LargerSpins) {
    const SpinRatioReport mc = spin_ratio_property({1.5, 2.0}, MonotoneFamily::mc());
    EXPECT_TRUE(mc.pass);
    EXPECT_NEAR(mc.ratio, std::cosh(1.0) / std::sinh(1.0), 1e-10);
    EXPECT_NEAR(mc.ratio, 1.3130352854993312, 1e-10);
    for (double S : {0.5, 1.0, 1.5, 2.0}) {
        for (double w : {0.5, 1.0, 2.0}) {
            const SpinRatioReport b = spin_ratio_property({S, w}, MonotoneFamily::bkm());
            EXPECT_NEAR(b.ratio, 1.0, 1e-13);
            EXPECT_LE(rel(b.d_bkm, b.bkm_closed_form), 1e-10) << S << " " << w;
            for (const auto& f : named_families()) EXPECT_TRUE(spin_ratio_property({S, w}, f).pass) << f.label();
        }
    }
}

TEST(Boson, LadderPattern) {
    const ModelOperators ops = boson_build({1, 1.0, 60});
    EXPECT_EQ(ops.T.dim(), 61);
    EXPECT_NEAR(ops.S.matrix()(0, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(ops.S.matrix()(3, 4).real(), 2.0, 1e-15);
    EXPECT_EQ(ops.S.matrix()(0, 2), cplx(0.0));
    EXPECT_NEAR(ops.T.matrix()(5, 5).real(), 5.0, 1e-15);
}

TEST(Boson, TwoPhotonSelectionRule) {
    const ModelOperators ops = boson_build({2, 1.0, 60});
    EXPECT_NEAR(ops.S.matrix()(0, 2).real(), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(ops.S.matrix()(0, 1), cplx(0.0));
    const LineSpectrum Q = build_dsf(gibbs_state(ops.T), ops.S);
    for (const auto& l : Q.lines()) EXPECT_NEAR(std::abs(l.omega), 2.0, 1e-12);
}

TEST(Boson, CutoffErrors) {
    EXPECT_THROW(check_boson_cutoff({1, 1.0, 10}), CutoffError);
    EXPECT_NO_THROW(check_boson_cutoff({1, 1.0, 60}));
    EXPECT_THROW(boson_build({1, 0.1, 60}), CutoffError);
    EXPECT_NO_THROW(boson_build({1, 0.1, 60}, false));
    EXPECT_THROW(boson_build({0, 1.0, 60}), ValidationError);
}

TEST(Boson, CutoffDoublingStable) {
    for (int k : {1, 2}) {
        for (double w : {0.5, 1.0, 2.0}) {
            const ModelOperators a = boson_build({k, w, 60});
            const ModelOperators b = boson_build({k, w, 120});
            for (const auto& f : named_families()) {
                const double x = metric_spectral(gibbs_state(a.T), a.S, f).value;
                const double y = metric_spectral(gibbs_state(b.T), b.S, f).value;
                EXPECT_LE(rel(x, y), 1e-10) << k << " " << w << " " << f.label();
            }
        }
    }
}

TEST(Boson, Correlators) {
    const double n = 1 / std::expm1(1.0);
    const BosonCorrelators c1 = boson_correlators({1, 1.0, 60});
    EXPECT_NEAR(c1.nbar, n, 1e-14);
    EXPECT_NEAR(c1.K, -1.0, 1e-12);
    EXPECT_NEAR(c1.L, 2 * n + 1, 1e-12);
    EXPECT_NEAR(c1.L, 2.163953413738653, 1e-12);
    const BosonCorrelators c2 = boson_correlators({2, 1.0, 60});
    EXPECT_NEAR(c2.K, -2 * (2 * n + 1), 1e-11);
    EXPECT_NEAR(c2.K, c2.K_printed, 1e-11);
    EXPECT_NEAR(c2.L, 4 * n * n + 4 * n + 2, 1e-11);
    EXPECT_NEAR(c2.L_printed, 4 * n * n, 1e-14);
    EXPECT_GT(c2.L - c2.L_printed, 1.0);
}

TEST(Boson, ClosedForms) {
    const BosonClosedForms bkm = boson_closed_forms({1, 1.0, 60}, MonotoneFamily::bkm());
    EXPECT_NEAR(bkm.brute, 0.5, 1e-12);
    const BosonClosedForms b = boson_closed_forms({1, 1.0, 60}, MonotoneFamily::bures());
    EXPECT_NEAR(b.brute, std::tanh(0.5), 1e-12);
    EXPECT_NEAR(b.brute, 0.4621171572600098, 1e-12);
    for (int k : {1, 2}) {
        for (double w : {0.5, 1.0, 2.0}) {
            for (const auto& f : named_families()) {
                const BosonClosedForms c = boson_closed_forms({k, w, 60}, f);
                EXPECT_LE(rel(c.via_nu1, c.brute), 1e-10) << k << w << f.label();
                EXPECT_LE(rel(c.via_nu2, c.brute), 1e-10) << k << w << f.label();
            }
        }
    }
    const BosonClosedForms mc = boson_closed_forms({2, 1.0, 60}, MonotoneFamily::mc());
    EXPECT_NEAR(mc.via_nu2, mc.brute, 1e-12);
}

TEST(Boson, PrefactorConvention) {
    for (int k : {1, 2}) {
        const auto rows = boson_prefactor_report({k, 1.5, 80}, 6);
        ASSERT_EQ(rows.size(), 6u);
        for (const auto& r : rows) {
            EXPECT_LE(rel(r.numeric, r.kw_form), 1e-9) << k << " p " << r.p;
            if (k == 1) EXPECT_EQ(r.kw_form, r.w_form);
            if (k == 2 && r.p > 1) EXPECT_GT(rel(r.numeric, r.w_form), 0.1) << r.p;
        }
    }
}

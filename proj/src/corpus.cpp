#include "qfi/corpus.hpp"

#include <cmath>
#include <random>

namespace qfi {

namespace {

Matrix gue(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            x(i, j) = cplx(re, im);
        }
    return 0.5 * (x + x.adjoint());
}

} // namespace

Matrix random_gue(int dim, std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    return gue(dim, rng);
}

Instance corpus_instance(std::uint64_t seed, std::uint64_t index, const CorpusOptions& opts) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> dim_dist(opts.dim_min, opts.dim_max);
    std::uniform_real_distribution<double> log_spread(std::log(opts.spread_min), std::log(opts.spread_max));
    const int dim = dim_dist(rng);
    const double spread = std::exp(log_spread(rng));

    Matrix t = gue(dim, rng);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(t, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    t.diagonal().array() -= lo;
    if (hi > lo) t *= spread / (hi - lo);

    Instance inst;
    inst.T = HermitianOperator(t);
    inst.S = HermitianOperator(gue(dim, rng));
    inst.A = HermitianOperator(gue(dim, rng));
    inst.B = HermitianOperator(gue(dim, rng));
    inst.spread = spread;
    return inst;
}

} // namespace qfi

// corpus.hpp - seeded random Hermitian instances for property checks

#pragma once

#include "qfi/hilbert.hpp"

#include <cstdint>

namespace qfi {

struct CorpusOptions {
    int dim_min = 2;
    int dim_max = 8;
    double spread_min = 0.1;  // spectral width max(T) - min(T), drawn log-uniformly
    double spread_max = 10.0;
};

struct Instance {
    HermitianOperator T;
    HermitianOperator S;
    HermitianOperator A;  // extra pair for cross metrics
    HermitianOperator B;
    double spread = 0.0;
};

// GUE-style draw: H = (X + X^dagger)/2 with complex Gaussian X. T is shifted
// and rescaled so its spectral width equals the drawn spread. The result is
// a pure function of (seed, index, options).
Instance corpus_instance(std::uint64_t seed, std::uint64_t index, const CorpusOptions& opts = {});

Matrix random_gue(int dim, std::uint64_t seed, std::uint64_t stream);

} // namespace qfi

#pragma once

#include <stdexcept>
#include <string>

namespace relaychain {

// Factorization hit a pivot at or below the positive-definiteness tolerance.
struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

// The block being conditioned on is not invertible within tolerance.
struct SingularConditioningBlock : std::runtime_error {
    explicit SingularConditioningBlock(const std::string& what) : std::runtime_error(what) {}
};

// |rho12| >= 1 where a strictly non-degenerate correlation is required.
struct DegenerateCorrelation : std::runtime_error {
    explicit DegenerateCorrelation(const std::string& what) : std::runtime_error(what) {}
};

// The concatenated scheme is defined only for rho13 == rho23 == 0.
struct UnsupportedCorrelationStructure : std::runtime_error {
    explicit UnsupportedCorrelationStructure(const std::string& what) : std::runtime_error(what) {}
};

// The (possibly quantization-augmented) noise covariance determinant vanished.
struct SingularNoiseCovariance : std::runtime_error {
    explicit SingularNoiseCovariance(const std::string& what) : std::runtime_error(what) {}
};

// Covariance square root failed: the matrix is indefinite beyond tolerance.
struct FactorizationFailure : std::runtime_error {
    explicit FactorizationFailure(const std::string& what) : std::runtime_error(what) {}
};

// A sample-covariance block came out numerically singular.
struct SingularSampleCovariance : std::runtime_error {
    explicit SingularSampleCovariance(const std::string& what) : std::runtime_error(what) {}
};

// Grid bounds or resolution describe no evaluable grid.
struct EmptyGrid : std::runtime_error {
    explicit EmptyGrid(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relaychain

#pragma once

#include <cstdint>
#include <vector>

namespace pparab {

/// Halton low-discrepancy sequence with a seed-dependent Cranley–Patterson
/// rotation. Deterministic for a fixed (dim, seed).
class Halton {
public:
    Halton(int dim, std::uint64_t seed = 0);

    /// Point with index i in [0, 1)^dim.
    [[nodiscard]] std::vector<double> at(std::uint64_t i) const;
    [[nodiscard]] int dim() const { return static_cast<int>(shift_.size()); }

private:
    std::vector<double> shift_;
};

/// Radical inverse of i in the given prime base.
double radical_inverse(std::uint64_t i, unsigned base);

}  // namespace pparab

#include "pparab/sampling.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pparab {

namespace {

constexpr std::array<unsigned, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

double radical_inverse(std::uint64_t i, unsigned base)
{
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

Halton::Halton(int dim, std::uint64_t seed)
{
    if (dim < 1 || dim > static_cast<int>(kPrimes.size())) {
        throw std::invalid_argument("Halton: dimension out of range");
    }
    shift_.assign(static_cast<std::size_t>(dim), 0.0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (auto& s : shift_) {
            s = unif(rng);
        }
    }
}

std::vector<double> Halton::at(std::uint64_t i) const
{
    std::vector<double> out(shift_.size());
    for (std::size_t d = 0; d < shift_.size(); ++d) {
        // Index 0 of the raw sequence is the corner; skip it.
        double v = radical_inverse(i + 1, kPrimes[d]) + shift_[d];
        out[d] = v - std::floor(v);
    }
    return out;
}

}  // namespace pparab

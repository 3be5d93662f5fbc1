#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace icslab {

/// Derives a child seed from a parent seed and a label.
///
/// The label is hashed with 64-bit FNV-1a, combined with the parent and
/// passed through the splitmix64 finalizer. The result depends only on
/// (parent, label), so substreams do not depend on the order in which
/// they are requested.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);

/// Same as above with an integer label (trial index, replicate index).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Seeded generator with platform-independent variate transforms.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform and normal variates are produced by explicit
/// transforms here instead of the <random> distributions, whose
/// algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Uniform integer on [0, bound), unbiased. bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace icslab

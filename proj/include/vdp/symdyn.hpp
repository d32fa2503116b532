#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdp/errors.hpp"

namespace vdp {

// Bi-infinite binary sequence over {0, 1}, represented either exactly as a
// repeating block with phase (periodic objects) or as a finite window
// (constructions). Windows may carry an implicit-zero convention outside the
// stored range; without it, out-of-range access is a CoverageError.
class SymbolSequence {
public:
    enum class Mode { PeriodicRep, Window };

    static SymbolSequence periodic(std::vector<std::uint8_t> block, int phase = 0);
    static SymbolSequence window(std::vector<std::uint8_t> bits, long start_index,
                                 bool implicit_zeros = false);

    Mode mode() const { return mode_; }
    int bit(long i) const;
    bool covers(long lo, long hi) const;

    // Bernoulli shift: d'_i = d_{i+1}.
    SymbolSequence shift() const;

    long window_lo() const;  // covered range, Window mode only
    long window_hi() const;  // inclusive
    const std::vector<std::uint8_t>& block() const { return bits_; }
    int phase() const { return phase_; }
    bool implicit_zeros() const { return implicit_zeros_; }

private:
    Mode mode_ = Mode::Window;
    std::vector<std::uint8_t> bits_;
    int phase_ = 0;           // PeriodicRep
    long start_ = 0;          // Window: sequence index of bits_[0]
    bool implicit_zeros_ = false;
};

struct MetricResult {
    double value = 0.0;
    double error_bound = 0.0;  // tail bound 2^{1-W} of the truncated sum
};

// Truncated 2^{-|i|}-weighted distance over the window [-W, W].
MetricResult metric(const SymbolSequence& d, const SymbolSequence& e, int window);

// All sequences with shift^m(d) = d; exactly 2^m of them.
std::vector<SymbolSequence> enumerate_fixed(int m);

// Concatenation of every binary word of lengths 1..depth on the nonnegative
// axis; its shift orbit visits every word of length <= depth at the origin.
SymbolSequence dense_orbit(int depth);

struct SensitivityWitness {
    SymbolSequence e;
    int n = 0;  // shifts after which the sequences are >= 1 apart
};

// A sequence within 2^{1-W} of d that separates to distance >= 1 after
// W + 1 shifts.
SensitivityWitness sensitivity_witness(const SymbolSequence& d, int window);

// Levinson spacing encoding: (2n-1)pi -> 0, (2n+1)pi -> 1.
SymbolSequence encode_spacings(const std::vector<double>& spacings, int n, double tol);

// Text form "...s-1 s0 . s1 s2..." with the dot after index 0.
std::string to_literal(const SymbolSequence& d, long lo, long hi);
SymbolSequence parse_literal(const std::string& text);

bool equal_on(const SymbolSequence& d, const SymbolSequence& e, long lo, long hi);

}  // namespace vdp

#include "vdp/symdyn.hpp"

#include <cmath>
#include <numbers>

namespace vdp {

namespace {
long mod_index(long i, long n) {
    long r = i % n;
    return r < 0 ? r + n : r;
}
}  // namespace

SymbolSequence SymbolSequence::periodic(std::vector<std::uint8_t> block, int phase) {
    if (block.empty()) throw DomainError("SymbolSequence: block must be non-empty");
    if (phase < 0 || phase >= static_cast<int>(block.size()))
        throw DomainError("SymbolSequence: phase out of range");
    for (auto b : block)
        if (b > 1) throw DomainError("SymbolSequence: alphabet is {0, 1}");
    SymbolSequence s;
    s.mode_ = Mode::PeriodicRep;
    s.bits_ = std::move(block);
    s.phase_ = phase;
    return s;
}

SymbolSequence SymbolSequence::window(std::vector<std::uint8_t> bits, long start_index,
                                      bool implicit_zeros) {
    if (bits.empty()) throw DomainError("SymbolSequence: window must be non-empty");
    for (auto b : bits)
        if (b > 1) throw DomainError("SymbolSequence: alphabet is {0, 1}");
    SymbolSequence s;
    s.mode_ = Mode::Window;
    s.bits_ = std::move(bits);
    s.start_ = start_index;
    s.implicit_zeros_ = implicit_zeros;
    return s;
}

int SymbolSequence::bit(long i) const {
    if (mode_ == Mode::PeriodicRep)
        return bits_[static_cast<std::size_t>(
            mod_index(phase_ + i, static_cast<long>(bits_.size())))];
    const long off = i - start_;
    if (off < 0 || off >= static_cast<long>(bits_.size())) {
        if (implicit_zeros_) return 0;
        throw CoverageError("SymbolSequence: index " + std::to_string(i) +
                            " outside covered window");
    }
    return bits_[static_cast<std::size_t>(off)];
}

bool SymbolSequence::covers(long lo, long hi) const {
    if (mode_ == Mode::PeriodicRep || implicit_zeros_) return true;
    return lo >= start_ && hi < start_ + static_cast<long>(bits_.size());
}

SymbolSequence SymbolSequence::shift() const {
    SymbolSequence s = *this;
    if (mode_ == Mode::PeriodicRep) {
        s.phase_ = static_cast<int>(mod_index(phase_ + 1, static_cast<long>(bits_.size())));
    } else {
        if (bits_.empty()) throw CoverageError("SymbolSequence: shifting an empty window");
        s.start_ = start_ - 1;
    }
    return s;
}

long SymbolSequence::window_lo() const {
    if (mode_ != Mode::Window) throw DomainError("window_lo: not a Window sequence");
    return start_;
}

long SymbolSequence::window_hi() const {
    if (mode_ != Mode::Window) throw DomainError("window_hi: not a Window sequence");
    return start_ + static_cast<long>(bits_.size()) - 1;
}

MetricResult metric(const SymbolSequence& d, const SymbolSequence& e, int window) {
    if (window < 1) throw DomainError("metric: window must be >= 1");
    if (!d.covers(-window, window) || !e.covers(-window, window))
        throw CoverageError("metric: sequences must cover [-W, W]");
    double value = 0.0;
    for (long i = -window; i <= window; ++i)
        value += std::fabs(static_cast<double>(d.bit(i) - e.bit(i))) *
                 std::ldexp(1.0, -static_cast<int>(std::labs(i)));
    return {value, std::ldexp(1.0, 1 - window)};
}

bool equal_on(const SymbolSequence& d, const SymbolSequence& e, long lo, long hi) {
    for (long i = lo; i <= hi; ++i)
        if (d.bit(i) != e.bit(i)) return false;
    return true;
}

std::vector<SymbolSequence> enumerate_fixed(int m) {
    if (m < 1) throw DomainError("enumerate_fixed: m must be >= 1");
    if (m > 20) throw BudgetExceeded("enumerate_fixed: m > 20 exceeds enumeration budget");
    std::vector<SymbolSequence> out;
    out.reserve(std::size_t{1} << m);
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << m); ++code) {
        std::vector<std::uint8_t> block(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            block[static_cast<std::size_t>(k)] =
                static_cast<std::uint8_t>((code >> (m - 1 - k)) & 1u);
        SymbolSequence seq = SymbolSequence::periodic(std::move(block));
        // m applications of the shift must reproduce the sequence.
        SymbolSequence it = seq;
        for (int k = 0; k < m; ++k) it = it.shift();
        if (!equal_on(seq, it, -m, m))
            throw NumericError("enumerate_fixed: shift verification failed");
        out.push_back(std::move(seq));
    }
    return out;
}

SymbolSequence dense_orbit(int depth) {
    if (depth < 1) throw DomainError("dense_orbit: depth must be >= 1");
    if (depth > 12) throw BudgetExceeded("dense_orbit: depth > 12 exceeds budget");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(depth), 0);  // zeros left of origin
    for (int k = 1; k <= depth; ++k)
        for (std::uint32_t code = 0; code < (std::uint32_t{1} << k); ++code)
            for (int j = 0; j < k; ++j)
                bits.push_back(static_cast<std::uint8_t>((code >> (k - 1 - j)) & 1u));
    return SymbolSequence::window(std::move(bits), -depth, /*implicit_zeros=*/true);
}

SensitivityWitness sensitivity_witness(const SymbolSequence& d, int window) {
    if (window < 1) throw DomainError("sensitivity_witness: window must be >= 1");
    if (!d.covers(-window, window + 1))
        throw CoverageError("sensitivity_witness: d must cover [-W, W+1]");
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(2 * window + 2));
    for (long i = -window; i <= window; ++i)
        bits.push_back(static_cast<std::uint8_t>(d.bit(i)));
    bits.push_back(static_cast<std::uint8_t>(1 - d.bit(window + 1)));
    return {SymbolSequence::window(std::move(bits), -window, /*implicit_zeros=*/true),
            window + 1};
}

SymbolSequence encode_spacings(const std::vector<double>& spacings, int n, double tol) {
    if (n < 1) throw DomainError("encode_spacings: n must be >= 1");
    if (spacings.empty()) throw DomainError("encode_spacings: empty spacing list");
    const double lo = (2.0 * n - 1.0) * std::numbers::pi;
    const double hi = (2.0 * n + 1.0) * std::numbers::pi;
    std::vector<std::uint8_t> bits;
    bits.reserve(spacings.size());
    for (double s : spacings) {
        if (std::fabs(s - lo) <= tol)
            bits.push_back(0);
        else if (std::fabs(s - hi) <= tol)
            bits.push_back(1);
        else
            throw UnrecognizedSpacing("encode_spacings: spacing " + std::to_string(s) +
                                      " is neither (2n-1)pi nor (2n+1)pi");
    }
    return SymbolSequence::window(std::move(bits), 0);
}

std::string to_literal(const SymbolSequence& d, long lo, long hi) {
    if (lo > 0 || hi < 1) throw DomainError("to_literal: range must straddle the dot");
    std::string out;
    for (long i = lo; i <= hi; ++i) {
        out += static_cast<char>('0' + d.bit(i));
        if (i == 0) out += '.';
    }
    return out;
}

SymbolSequence parse_literal(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) throw DomainError("parse_literal: missing dot");
    std::vector<std::uint8_t> bits;
    for (char c : text) {
        if (c == '.') continue;
        if (c != '0' && c != '1') throw DomainError("parse_literal: alphabet is {0, 1}");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (bits.empty()) throw DomainError("parse_literal: empty sequence");
    // Characters left of the dot cover indices ending at 0.
    const long start = -(static_cast<long>(dot) - 1);
    return SymbolSequence::window(std::move(bits), start);
}

}  // namespace vdp

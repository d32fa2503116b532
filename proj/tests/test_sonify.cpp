#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "vdp/sonify.hpp"
#include "vdp/spectra.hpp"

using namespace vdp;

namespace {

PeakList single_peak(double freq, double rel = 1.0) {
    PeakList pl;
    pl.peaks.push_back({freq, rel, rel});
    return pl;
}

}  // namespace

TEST_CASE("synthesize: single sinusoid at the scaled frequency, unit peak") {
    const auto buf = synthesize(single_peak(1.0), 1000.0, 1.0, 44100);
    REQUIRE(buf.samples.size() == 44100);
    CHECK_FALSE(buf.inaudible_range);
    double peak = 0.0;
    for (double s : buf.samples) peak = std::max(peak, std::fabs(s));
    CHECK(peak == 1.0);  // normalization hits exactly 1 at the argmax
    const double w = 2.0 * std::numbers::pi * 1000.0 / 44100.0;
    for (std::size_t i = 0; i < 500; ++i)
        CHECK(buf.samples[i] == doctest::Approx(std::sin(w * i)).epsilon(1e-4));
}

TEST_CASE("synthesize: empty peak list is silence") {
    const auto buf = synthesize(PeakList{}, 1000.0, 0.25, 8000);
    REQUIRE(buf.samples.size() == 2000);
    for (double s : buf.samples) CHECK(s == 0.0);
}

TEST_CASE("synthesize: inaudible-range flag") {
    CHECK(synthesize(single_peak(0.001), 1000.0, 0.1, 8000).inaudible_range);   // 1 Hz
    CHECK(synthesize(single_peak(30.0), 1000.0, 0.1, 8000).inaudible_range);    // 30 kHz
    CHECK_FALSE(synthesize(single_peak(0.44), 1000.0, 0.1, 8000).inaudible_range);
}

TEST_CASE("synthesize: invalid arguments") {
    CHECK_THROWS_AS(synthesize(single_peak(1.0), 1000.0, 0.0, 8000), DomainError);
    CHECK_THROWS_AS(synthesize(single_peak(1.0), 1000.0, 1.0, 0), DomainError);
}

TEST_CASE("write_wav: golden single-sample file") {
    AudioBuffer buf;
    buf.sample_rate = 44100;
    buf.samples = {0.0};
    std::ostringstream out(std::ios::binary);
    write_wav(out, buf);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 46);
    CHECK(bytes.substr(0, 4) == "RIFF");
    CHECK(bytes.substr(8, 4) == "WAVE");
    CHECK(bytes.substr(12, 4) == "fmt ");
    CHECK(bytes.substr(36, 4) == "data");
    CHECK(static_cast<unsigned char>(bytes[20]) == 1);  // PCM
    CHECK(static_cast<unsigned char>(bytes[22]) == 1);  // mono
    CHECK(bytes[44] == 0);                              // sample word low byte
    CHECK(bytes[45] == 0);                              // sample word high byte
}

TEST_CASE("write_wav: symmetric quantization of the extremes") {
    AudioBuffer buf;
    buf.sample_rate = 8000;
    buf.samples = {1.0, -1.0};
    std::ostringstream out(std::ios::binary);
    write_wav(out, buf);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 48);
    auto word = [&](std::size_t off) {
        return static_cast<std::int16_t>(static_cast<unsigned char>(bytes[off]) |
                                         (static_cast<unsigned char>(bytes[off + 1]) << 8));
    };
    CHECK(word(44) == 32767);
    CHECK(word(46) == -32767);  // -32768 is never emitted
}

TEST_CASE("write_wav/read_wav: quantization round trip within 1/32767") {
    const auto buf = synthesize(single_peak(0.5), 1000.0, 0.1, 8000);
    std::stringstream io(std::ios::in | std::ios::out | std::ios::binary);
    write_wav(io, buf);
    const auto back = read_wav(io);
    REQUIRE(back.samples.size() == buf.samples.size());
    CHECK(back.sample_rate == 8000);
    for (std::size_t i = 0; i < buf.samples.size(); ++i)
        CHECK(std::fabs(back.samples[i] - buf.samples[i]) <= 1.0 / 32767.0);
}

TEST_CASE("write_wav: determinism, byte-identical output") {
    const auto buf = synthesize(single_peak(0.3, 0.8), 1000.0, 0.2, 8000);
    std::ostringstream a(std::ios::binary), b(std::ios::binary);
    write_wav(a, buf);
    write_wav(b, buf);
    CHECK(a.str() == b.str());
}

TEST_CASE("round trip through the spectrum: frequencies and rels recovered") {
    // Choose frequencies that land on FFT bins (2 s at 44100 Hz truncates to
    // 65536 samples) so leakage-free rel recovery is possible without a window.
    const int rate = 44100;
    const double df = 44100.0 / 65536.0;
    PeakList pl;
    pl.peaks.push_back({1486.0 * df / 1000.0, 1.0, 1.0});
    pl.peaks.push_back({2526.0 * df / 1000.0, 0.6, 0.6});
    pl.peaks.push_back({4311.0 * df / 1000.0, 0.3, 0.3});
    const auto buf = synthesize(pl, 1000.0, 2.0, rate);
    const auto spec = power_spectrum(buf.samples, 1.0 / rate);
    const auto found = detect_peaks(spec, 10.0);
    const double bin = spec.freqs[1];
    for (const auto& want : pl.peaks) {
        bool matched = false;
        for (const auto& got : found.peaks) {
            if (std::fabs(got.freq - 1000.0 * want.freq) <= bin &&
                std::fabs(got.rel - want.rel) <= 0.05) {
                matched = true;
                break;
            }
        }
        CHECK(matched);
    }
}

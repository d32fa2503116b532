#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vdp/spectra.hpp"

namespace vdp {

struct AudioBuffer {
    int sample_rate = 44100;
    std::vector<double> samples;      // normalized to peak <= 1
    bool inaudible_range = false;     // every scaled partial fell outside [16, 20000] Hz
};

// Sum of sinusoids rel_i * sin(2 pi k_scale f_i t), normalized to unit peak.
AudioBuffer synthesize(const PeakList& peaks, double k_scale, double duration,
                       int sample_rate = 44100);

// RIFF/WAVE, PCM, mono, 16-bit signed little-endian. Quantization is
// round(sample * 32767) clamped; -32768 is never emitted.
void write_wav(std::ostream& out, const AudioBuffer& buf);
void write_wav_file(const std::string& path, const AudioBuffer& buf);

// Parse a file produced by write_wav back into samples (for round-trip checks).
AudioBuffer read_wav(std::istream& in);

}  // namespace vdp

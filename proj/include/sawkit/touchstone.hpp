#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sawkit/errors.hpp"

namespace sawkit {

// One-port reflection data on a sorted frequency grid.
struct FrequencySweep {
    std::vector<double> freqs;              // Hz, strictly increasing, all > 0
    std::vector<std::complex<double>> s11;  // dimensionless
    double z_ref = 50.0;                    // reference impedance, ohms

    std::size_t size() const noexcept { return freqs.size(); }

    // Throws std::invalid_argument on any invariant violation.
    void validate() const;
};

enum class TouchstoneFormat { RI, MA, DB };

// Parses a Touchstone v1 one-port (.s1p) file. Option-line defaults are
// GHz / S / MA / R 50. Two-port files and non-S parameters are rejected.
// Throws ParseError carrying the offending line number.
FrequencySweep parse_touchstone(const std::string& text);

// Emits a v1-conformant .s1p document. Frequencies are written in Hz with
// full double precision so parse(write(x)) recovers them exactly.
// In DB format the magnitude is floored at -300 dB.
std::string write_touchstone(const FrequencySweep& sweep, TouchstoneFormat format);

}  // namespace sawkit

#include "sawkit/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace sawkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDbFloor = -300.0;

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok)
        out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, std::size_t line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size())
        throw ParseError("invalid number '" + tok + "'", line);
    if (!std::isfinite(v))
        throw ParseError("non-finite number '" + tok + "'", line);
    return v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void FrequencySweep::validate() const {
    if (freqs.empty())
        throw std::invalid_argument("FrequencySweep: empty frequency grid");
    if (s11.size() != freqs.size())
        throw std::invalid_argument("FrequencySweep: freqs/s11 length mismatch");
    if (!(z_ref > 0.0))
        throw std::invalid_argument("FrequencySweep: z_ref must be > 0");
    double prev = 0.0;
    for (double f : freqs) {
        if (!(f > prev) || !std::isfinite(f))
            throw std::invalid_argument("FrequencySweep: frequencies must be strictly increasing and > 0");
        prev = f;
    }
}

FrequencySweep parse_touchstone(const std::string& text) {
    FrequencySweep sweep;
    double unit_factor = 1e9;  // GHz default
    TouchstoneFormat format = TouchstoneFormat::MA;
    bool option_seen = false;
    bool data_seen = false;

    std::istringstream stream(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (auto bang = raw.find('!'); bang != std::string::npos)
            raw.erase(bang);
        std::string line = raw;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;

        if (line[first] == '#') {
            if (option_seen)
                throw ParseError("multiple option lines", lineno);
            if (data_seen)
                throw ParseError("option line after data", lineno);
            auto toks = split_ws(line.substr(first + 1));
            for (std::size_t i = 0; i < toks.size(); ++i) {
                std::string t = to_upper(toks[i]);
                if (t == "HZ") unit_factor = 1.0;
                else if (t == "KHZ") unit_factor = 1e3;
                else if (t == "MHZ") unit_factor = 1e6;
                else if (t == "GHZ") unit_factor = 1e9;
                else if (t == "S") { /* only supported parameter */ }
                else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                    throw ParseError("unsupported parameter type '" + toks[i] + "' (only S)", lineno);
                else if (t == "RI") format = TouchstoneFormat::RI;
                else if (t == "MA") format = TouchstoneFormat::MA;
                else if (t == "DB") format = TouchstoneFormat::DB;
                else if (t == "R") {
                    if (++i >= toks.size())
                        throw ParseError("'R' with no resistance value", lineno);
                    sweep.z_ref = parse_number(toks[i], lineno);
                    if (!(sweep.z_ref > 0.0))
                        throw ParseError("reference resistance must be > 0", lineno);
                } else {
                    throw ParseError("malformed option token '" + toks[i] + "'", lineno);
                }
            }
            option_seen = true;
            continue;
        }

        if (!option_seen)
            throw ParseError("data before option line (missing '#' line)", lineno);
        auto toks = split_ws(line);
        if (toks.size() != 3)
            throw ParseError("expected 3 columns for a one-port file, got " +
                                 std::to_string(toks.size()),
                             lineno);
        double f = parse_number(toks[0], lineno) * unit_factor;
        double a = parse_number(toks[1], lineno);
        double b = parse_number(toks[2], lineno);
        if (!(f > 0.0))
            throw ParseError("frequency must be > 0", lineno);
        if (!sweep.freqs.empty() && !(f > sweep.freqs.back()))
            throw ParseError("non-monotonic frequency", lineno);

        std::complex<double> s;
        switch (format) {
            case TouchstoneFormat::RI:
                s = {a, b};
                break;
            case TouchstoneFormat::MA:
                s = std::polar(a, b * kPi / 180.0);
                break;
            case TouchstoneFormat::DB:
                s = std::polar(std::pow(10.0, a / 20.0), b * kPi / 180.0);
                break;
        }
        sweep.freqs.push_back(f);
        sweep.s11.push_back(s);
        data_seen = true;
    }

    if (!option_seen)
        throw ParseError("missing option line");
    if (sweep.freqs.empty())
        throw ParseError("empty data section");
    return sweep;
}

std::string write_touchstone(const FrequencySweep& sweep, TouchstoneFormat format) {
    sweep.validate();
    std::ostringstream out;
    const char* fmt_name = format == TouchstoneFormat::RI   ? "RI"
                           : format == TouchstoneFormat::MA ? "MA"
                                                            : "DB";
    out << "! one-port S-parameter data\n";
    out << "# Hz S " << fmt_name << " R " << fmt(sweep.z_ref) << '\n';
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto s = sweep.s11[i];
        double a = 0.0, b = 0.0;
        switch (format) {
            case TouchstoneFormat::RI:
                a = s.real();
                b = s.imag();
                break;
            case TouchstoneFormat::MA:
                a = std::abs(s);
                b = std::arg(s) * 180.0 / kPi;
                break;
            case TouchstoneFormat::DB: {
                double mag = std::abs(s);
                a = mag > 0.0 ? std::max(20.0 * std::log10(mag), kDbFloor) : kDbFloor;
                b = std::arg(s) * 180.0 / kPi;
                break;
            }
        }
        out << fmt(sweep.freqs[i]) << ' ' << fmt(a) << ' ' << fmt(b) << '\n';
    }
    return out.str();
}

}  // namespace sawkit

#include "latspec/common.hpp"

#include <charconv>
#include <cmath>

namespace latspec {

namespace {

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

}  // namespace

std::string format_complex(Complex z) {
    const double re = z.real(), im = z.imag();
    if (im == 0.0) return format_double(re);
    std::string imag_part;
    const double mag = std::abs(im);
    if (mag == 1.0)
        imag_part = "i";
    else
        imag_part = format_double(mag) + "i";
    if (re == 0.0) return (im < 0.0 ? "-" : "") + imag_part;
    return format_double(re) + (im < 0.0 ? " - " : " + ") + imag_part;
}

}  // namespace latspec

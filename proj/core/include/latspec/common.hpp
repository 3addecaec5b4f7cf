#ifndef LATSPEC_COMMON_HPP
#define LATSPEC_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace latspec {

using Complex = std::complex<double>;

/// Thrown when a domain value violates a documented invariant
/// (unbounded generator, empty period, horizon too small, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_complex(Complex z);

}  // namespace latspec

#endif

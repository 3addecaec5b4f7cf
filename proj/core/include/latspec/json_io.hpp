#ifndef LATSPEC_JSON_IO_HPP
#define LATSPEC_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include "latspec/center_operator.hpp"
#include "latspec/config.hpp"

namespace latspec {

// JSON operator-spec files and the report schema.  Complex numbers are
// encoded as [re, im]; unknown object keys are rejected.  See
// docs/spec_file.md and docs/report_schema.md for the formats.

struct SpecError : std::runtime_error {
    SpecError(const std::string& what, std::size_t byte_offset_ = 0)
        : std::runtime_error(what), byte_offset(byte_offset_) {}
    /// 1-based byte offset for malformed JSON; 0 when not applicable.
    std::size_t byte_offset = 0;
};

struct SpecFile {
    CenterOperator op;
    AnalysisConfig config;
};

SpecFile parse_spec_file(const std::string& json_text);
SpecFile load_spec_file(const std::string& path);
std::string spec_file_to_json(const SpecFile& spec);

std::string report_to_json(const SpectralReport& report);
SpectralReport report_from_json(const std::string& json_text);

std::string format_report_text(const SpectralReport& report, int max_points = 32);

}  // namespace latspec

#endif

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sltrace/value.hpp"

namespace sltrace {

struct TraceFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical one-line JSON for a value, e.g. {"t":"pair","v":[{"t":"sym","v":"open"},{"t":"unit"}]}.
std::string encode_value(const Value& v);
Value decode_value(std::string_view json_text);

// One event per line, emission order. Blank lines are skipped on read.
void write_trace(std::ostream& out, const Trace& t);
Trace read_trace(std::istream& in);

void write_trace_file(const std::filesystem::path& p, const Trace& t);
Trace read_trace_file(const std::filesystem::path& p);

}  // namespace sltrace

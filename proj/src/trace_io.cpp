#include "sltrace/trace_io.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace sltrace {

namespace {

using nlohmann::json;

json to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::unit: return {{"t", "unit"}};
    case Value::Kind::integer: return {{"t", "int"}, {"v", v.as_int()}};
    case Value::Kind::loc: return {{"t", "loc"}, {"v", v.as_loc()}};
    case Value::Kind::fun: return {{"t", "fun"}, {"v", v.as_fun()}};
    case Value::Kind::sym: return {{"t", "sym"}, {"v", v.sym_name()}};
    case Value::Kind::pair: return {{"t", "pair"}, {"v", json::array({to_json(v.first()), to_json(v.second())})}};
  }
  return nullptr;
}

std::uint64_t natural(const json& j) {
  // the parser stores non-negative literals as unsigned
  if (!j.is_number_unsigned()) throw TraceFormatError("expected a non-negative integer, got " + j.dump());
  return j.get<std::uint64_t>();
}

Value from_json(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j["t"].is_string()) throw TraceFormatError("expected {\"t\": ...}, got " + j.dump());
  const std::string tag = j["t"].get<std::string>();
  const std::size_t want = tag == "unit" ? 1 : 2;
  if (j.size() != want) throw TraceFormatError("unexpected fields in " + j.dump());
  if (tag == "unit") return Value();
  const json& v = j["v"];
  if (tag == "int") {
    if (!v.is_number_integer()) throw TraceFormatError("int payload must be an integer: " + j.dump());
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      throw TraceFormatError("int out of range: " + j.dump());
    return Value::integer(v.get<std::int64_t>());
  }
  if (tag == "loc") return Value::loc(natural(v));
  if (tag == "fun") return Value::fun(natural(v));
  if (tag == "sym") {
    if (!v.is_string() || v.get<std::string>().empty()) throw TraceFormatError("sym payload must be a name: " + j.dump());
    return Value::sym(v.get<std::string>());
  }
  if (tag == "pair") {
    if (!v.is_array() || v.size() != 2) throw TraceFormatError("pair payload must have two elements: " + j.dump());
    return Value::pair(from_json(v[0]), from_json(v[1]));
  }
  throw TraceFormatError("unknown value tag \"" + tag + "\"");
}

}  // namespace

std::string encode_value(const Value& v) { return to_json(v).dump(); }

Value decode_value(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw TraceFormatError("malformed JSON: " + std::string(text));
  return from_json(j);
}

void write_trace(std::ostream& out, const Trace& t) {
  for (const Value& v : t) out << encode_value(v) << '\n';
}

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      t.push_back(decode_value(line));
    } catch (const TraceFormatError& e) {
      throw TraceFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

void write_trace_file(const std::filesystem::path& p, const Trace& t) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw TraceFormatError("cannot write " + p.string());
  write_trace(out, t);
}

Trace read_trace_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw TraceFormatError("cannot read " + p.string());
  return read_trace(in);
}

}  // namespace sltrace

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "doctest.h"
#include "sltrace/trace_io.hpp"

using namespace sltrace;

TEST_CASE("canonical encoding") {
  CHECK(encode_value(Value()) == R"({"t":"unit"})");
  CHECK(encode_value(Value::integer(-3)) == R"({"t":"int","v":-3})");
  CHECK(encode_value(Value::loc(2)) == R"({"t":"loc","v":2})");
  CHECK(encode_value(Value::fun(0)) == R"({"t":"fun","v":0})");
  CHECK(encode_value(Value::sym("open")) == R"({"t":"sym","v":"open"})");
  CHECK(encode_value(Value::tuple({Value::sym("ret"), Value::sym("pop"), Value()})) ==
        R"({"t":"pair","v":[{"t":"sym","v":"ret"},{"t":"pair","v":[{"t":"sym","v":"pop"},{"t":"unit"}]}]})");
}

TEST_CASE("round trip") {
  const Trace t = {Value::sym("open"), Value::tuple({Value::sym("call"), Value::fun(4), Value::integer(INT64_MIN)}),
                   Value::pair(Value::loc(7), Value::pair(Value(), Value::integer(INT64_MAX)))};
  std::stringstream ss;
  write_trace(ss, t);
  const std::string text = ss.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(read_trace(ss) == t);
  for (const Value& v : t) CHECK(decode_value(encode_value(v)) == v);
}

TEST_CASE("decoding tolerates field order and blank lines") {
  std::stringstream ss(" \n{\"v\":1,\"t\":\"int\"}\n\n");
  CHECK(read_trace(ss) == Trace{Value::integer(1)});
}

TEST_CASE("malformed input is rejected with a line number") {
  for (const char* bad : {"{", R"({"t":"loc","v":-1})", R"({"t":"int","v":1.5})", R"({"t":"pair","v":[{"t":"unit"}]})",
                          R"({"t":"sym","v":""})", R"({"t":"frob"})", R"({"t":"unit","v":0})", R"([1,2])",
                          R"({"t":"int","v":9223372036854775808})"}) {
    INFO(bad);
    CHECK_THROWS_AS(decode_value(bad), TraceFormatError);
  }
  std::stringstream ss("{\"t\":\"unit\"}\nnope\n");
  try {
    read_trace(ss);
    FAIL("expected an error");
  } catch (const TraceFormatError& e) {
    CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
  }
  CHECK_THROWS_AS(read_trace_file("/nonexistent/trace.jsonl"), TraceFormatError);
}

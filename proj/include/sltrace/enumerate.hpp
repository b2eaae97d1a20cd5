#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "sltrace/monitors.hpp"

namespace sltrace {

// The restricted per-language alphabets used for exhaustive checking.
// Function ids are #f1, #f2; locations #l1, #l2.
Trace small_alphabet(LangId lang);
std::size_t small_max_len(LangId lang);  // 8 for L-stack, 6 otherwise

struct EnumReport {
  LangId lang;
  std::size_t max_len = 0;
  std::uint64_t traces = 0;  // including ε
  std::uint64_t accepted = 0;
  std::uint64_t disagreements = 0;       // monitor verdict != member
  std::uint64_t closure_violations = 0;  // member(t) with some prefix rejected
  std::optional<Trace> first_disagreement;
  std::optional<Trace> first_closure_violation;
};

// Called once per enumerated trace with its declarative verdict.
using TraceVisitor = std::function<void(const Trace&, bool member)>;

// Depth-first walk of every trace over `alphabet` up to max_len, comparing
// the folded monitor verdict against the declarative oracle at each node.
EnumReport enumerate_check(LangId lang, const Trace& alphabet, std::size_t max_len, const TraceVisitor& visit = {});

}  // namespace sltrace

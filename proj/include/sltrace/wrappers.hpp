#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sltrace/expr.hpp"

namespace sltrace {

enum class LibName { file, coll, brac, stack, stack_simple, str };

std::string_view to_string(LibName n);
std::optional<LibName> lib_from_string(std::string_view s);
const std::vector<LibName>& all_libs();

// Operation names in tuple order.
const std::vector<std::string>& lib_op_names(LibName n);

// A library as the object language sees it. `init` is closed: it allocates
// the library state and evaluates to the right-nested tuple of operations.
// `ops` holds the individual operation bodies for inspection; they mention
// the state binders introduced by `init` and are not closed on their own.
struct LibraryBundle {
  LibName name;
  std::vector<std::pair<std::string, Expr>> ops;
  Expr init;
  bool wrapped = false;
};

// Reference implementations. They check nothing, so clients that break a
// protocol still run to completion.
LibraryBundle make_lib(LibName n);

// Instruments `lib` with emits. The new init applies the wrapper to the old
// init; the wrapper projects the raw operations and rebuilds the tuple from
// instrumented ones. Throws std::invalid_argument when lib's arity does not
// match n.
LibraryBundle wrap(LibName n, const LibraryBundle& lib);

// Right-nested tuple of expressions and the matching projection.
Expr tuple_expr(const std::vector<Expr>& items);
Expr tuple_proj(const Expr& e, std::size_t index, std::size_t arity);

// (let __lib INIT (let n1 (proj 1) ... body)). An empty name list means the
// library's own operation names.
Expr link(const LibraryBundle& lib, const std::vector<std::string>& names, const Expr& body);

}  // namespace sltrace

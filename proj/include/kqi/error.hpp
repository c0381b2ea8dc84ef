#pragma once

#include <stdexcept>
#include <string>

namespace kqi {

enum class Errc {
  ok = 0,
  io,
  malformed_line,
  duplicate_edge,
  cycle,
  already_augmented,
  not_augmented,
  missing_year,
  zero_in_strength,
  mismatched_table,
  unknown_group_kind,
  unknown_node,
  degenerate_input,
  too_few_points,
  all_zero,
  nonconvergence,
  key_mismatch,
  empty_selection,
  fragment_explosion,
  validity_guard,
  invalid_argument,
  internal,
};

const char* errc_name(Errc c);

// Single exception type for every domain error; the code is what crosses the
// C boundary, the message is advisory.
class Error : public std::runtime_error {
 public:
  Error(Errc c, std::string msg) : std::runtime_error(std::move(msg)), code_(c) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, std::string msg) { throw Error(c, std::move(msg)); }

}  // namespace kqi

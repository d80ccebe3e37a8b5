#pragma once

#include <stdexcept>
#include <string>

namespace relhyp {

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct search_bound_exceeded : error {
  explicit search_bound_exceeded(const std::string& msg) : error(msg) {}
};

struct unsupported_quotient : error {
  explicit unsupported_quotient(const std::string& msg) : error(msg) {}
};

struct incomplete_oracle : error {
  explicit incomplete_oracle(const std::string& msg) : error(msg) {}
};

struct resource_limit : error {
  explicit resource_limit(const std::string& msg) : error(msg) {}
};

struct disconnected : error {
  explicit disconnected(const std::string& msg) : error(msg) {}
};

struct self_loop : error {
  explicit self_loop(const std::string& msg) : error(msg) {}
};

struct not_a_loop : error {
  explicit not_a_loop(const std::string& msg) : error(msg) {}
};

struct depth_overflow : error {
  explicit depth_overflow(const std::string& msg) : error(msg) {}
};

struct boundary_not_in_t : error {
  explicit boundary_not_in_t(const std::string& msg) : error(msg) {}
};

struct circulation_outside_t : error {
  explicit circulation_outside_t(const std::string& msg) : error(msg) {}
};

struct truncation_unsound : error {
  explicit truncation_unsound(const std::string& msg) : error(msg) {}
};

struct corner_at_l2 : error {
  explicit corner_at_l2(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
  explicit parse_error(const std::string& msg) : error(msg) {}
};

}  // namespace relhyp

#pragma once

#include <stdexcept>
#include <string>

namespace amar {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class errc {
  invalid_argument,
  invalid_order,
  not_representable,
  domain,
  degenerate_parameter,
  explosive_path,
  singular_design,
  insufficient_data,
  insufficient_history,
  infeasible_threshold,
  unknown_preset,
  parse,
  data_gap,
  io,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::invalid_order: return "invalid-order";
    case errc::not_representable: return "not-representable";
    case errc::domain: return "domain";
    case errc::degenerate_parameter: return "degenerate-parameter";
    case errc::explosive_path: return "explosive-path";
    case errc::singular_design: return "singular-design";
    case errc::insufficient_data: return "insufficient-data";
    case errc::insufficient_history: return "insufficient-history";
    case errc::infeasible_threshold: return "infeasible-threshold";
    case errc::unknown_preset: return "unknown-preset";
    case errc::parse: return "parse";
    case errc::data_gap: return "data-gap";
    case errc::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

namespace detail {
[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}
}  // namespace detail

}  // namespace amar

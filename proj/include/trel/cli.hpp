#ifndef TREL_CLI_HPP_
#define TREL_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trel/arith.hpp"

namespace trel {

// premise:/goal:/domain: lines; '#' starts a comment.
struct ProblemFile {
  std::vector<std::string> premises;
  std::string goal;
  std::optional<Domain> domain;
};

class ProblemError : public std::runtime_error {
 public:
  ProblemError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

ProblemFile parse_problem(std::string_view text);

// "lo..hi"
Domain parse_domain(std::string_view text);

enum ExitCode : int {
  kExitTRelevant = 0,
  kExitNotTRelevant = 1,
  kExitNotValid = 2,
  kExitInconclusive = 3,
  kExitUsage = 64,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trel

#endif  // TREL_CLI_HPP_

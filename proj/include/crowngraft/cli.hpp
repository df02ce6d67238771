#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crowngraft/grafting.hpp"
#include "crowngraft/moebius.hpp"

namespace crowngraft {

struct CommandRequest {
  std::string subcommand;  // polygon graft ungraft fiber crown-coords match glue tips render
  std::string input = "-";
  std::string output = "-";
  double tol = 1e-10;  // projective tolerance, or the tip tolerance for tips
  int nmax = 1;
  std::optional<int> root;
  Traversal traversal = Traversal::BreadthFirst;
  int degree = 0;
  std::string coeffs = "[]";
  std::optional<double> radius;
  std::string trace;  // CSV path for solution traces
  std::string layers = "all";
  bool clear_basepoint = false;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

// args excludes the program name. default_tol comes from the environment
// (CROWNGRAFT_TOL) when set. Throws Error(UsageError) (schema) on unknown
// flags or bad values; returns nullopt after printing help to out.
std::optional<CommandRequest> parse_command(const std::vector<std::string>& args, const char* default_tol,
                                            std::ostream& out);

// Executes a parsed request. Throws crowngraft::Error.
void execute(const CommandRequest& request, std::istream& in, std::ostream& out);

// parse_command + execute with errors reported as a JSON object on err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* default_tol = nullptr);

}  // namespace crowngraft

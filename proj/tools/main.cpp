#include <cstdio>
#include <string>
#include <vector>

#include "iep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const iep::cli::CommandOutcome out = iep::cli::run(args);
  if (!out.rendered.empty()) std::fwrite(out.rendered.data(), 1, out.rendered.size(), stdout);
  if (!out.diagnostics.empty()) std::fprintf(stderr, "iep: %s\n", out.diagnostics.c_str());
  std::fflush(stdout);
  return out.exit_code;
}

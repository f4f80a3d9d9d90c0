#pragma once

#include <ostream>

namespace focustree {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

// Subcommands: build, validate, synth, replay, metrics, serve.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace focustree

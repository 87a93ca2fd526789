#pragma once

namespace rla {

// CLI entry point (subcommands: gen, audit, simulate, report).
// Exit codes: 0 = success / all assertions confirmed, 2 = full-hand-count
// verdict, 1 = error.
int run_cli(int argc, const char* const* argv);

}  // namespace rla

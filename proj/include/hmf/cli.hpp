#pragma once

namespace hmf {

// Command-line entry point: subcommands cosets, eval, verify, limits.
// Returns 0 when everything passed, 1 on a failed or inconclusive check
// (or a runtime error), 2 on a usage error.
int cli_main(int argc, char** argv);

}  // namespace hmf

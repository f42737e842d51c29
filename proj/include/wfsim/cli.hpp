#pragma once

namespace wfsim {

/// Parses arguments and dispatches to the run / bet / sweep subcommands.
/// Exit codes: 0 success, 2 configuration error, 3 numerical invariant
/// violation, 1 anything else.
int run_cli(int argc, char** argv);

}  // namespace wfsim

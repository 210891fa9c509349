#pragma once

namespace mellg {

/// Entry point behind the `mellg` binary; also callable from tests.
/// Subcommands: run <config>, preset <name> [overrides], verify,
/// mesh-info <path>.
int cli_main(int argc, const char* const* argv);

}  // namespace mellg

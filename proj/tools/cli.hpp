#pragma once

#include <iosfwd>

namespace tomo {
namespace cli {

/**
 * Entry point of the `tomo` tool. Returns 0 on success, 2 on usage errors
 * (bad flags or violated preconditions) and 1 on runtime failures.
 */
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace tomo

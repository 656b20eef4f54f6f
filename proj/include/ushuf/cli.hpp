#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace ushuf::cli {

// Entry point shared by the binary and the tests.  Exit status: 0 on success,
// 1 when a requested verification fails, 2 on usage errors.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ushuf::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feec::cli
{

/// Exit codes: 0 every certificate passed, 1 some certificate failed,
/// 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, char** argv);

} // namespace feec::cli

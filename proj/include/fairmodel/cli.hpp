#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairmodel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCatalogueEnv = "FAIRMODEL_CATALOGUE";

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairmodel::cli

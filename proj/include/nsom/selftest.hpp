// Library-level invariant suite behind the `validate` subcommand.
#pragma once

#include <string>
#include <vector>

namespace nsom::selftest {

struct PropertyResult {
  std::string name;
  bool pass;
  std::string detail;  // filled on failure
};

std::vector<PropertyResult> run_all();

}  // namespace nsom::selftest

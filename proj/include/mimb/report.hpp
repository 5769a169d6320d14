#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mimb/hiton.hpp"
#include "mimb/mimb.hpp"

namespace mimb {

/// Variable names sorted lexicographically.
nlohmann::json name_list(const std::vector<std::string>& names, const VarSet& s);

nlohmann::json to_json(const DiscoveryResult& r, const std::vector<std::string>& names);
nlohmann::json to_json(const BaselineResult& r, const std::vector<std::string>& names);

}  // namespace mimb

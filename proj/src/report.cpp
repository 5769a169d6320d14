#include "mimb/report.hpp"

#include <algorithm>

using nlohmann::json;

namespace mimb {

json name_list(const std::vector<std::string>& names, const VarSet& s) {
    std::vector<std::string> out;
    for (VarId v : s) out.push_back(names.at(static_cast<std::size_t>(v)));
    std::sort(out.begin(), out.end());
    return out;
}

json to_json(const DiscoveryResult& r, const std::vector<std::string>& names) {
    json cmb = json::array();
    for (const auto& c : r.cmb) cmb.push_back(name_list(names, c));
    json sepset = json::object();
    for (const auto& [v, s] : r.sepset) sepset[names.at(static_cast<std::size_t>(v))] = name_list(names, s);
    json neighbours = json::object();
    for (const auto& [v, s] : r.neighbour_cpc) neighbours[names.at(static_cast<std::size_t>(v))] = name_list(names, s);
    json spouses = json::array();
    for (const auto& sp : r.spouses)
        spouses.push_back({{"spouse", names.at(static_cast<std::size_t>(sp.spouse))},
                           {"via", names.at(static_cast<std::size_t>(sp.via))},
                           {"dataset", sp.dataset}});
    return {{"mimb_mb", name_list(names, r.mb)},
            {"mimb_pa", name_list(names, r.pa)},
            {"cpc", name_list(names, r.cpc)},
            {"cmb", cmb},
            {"sepset", sepset},
            {"neighbour_cpc", neighbours},
            {"spouses", spouses},
            {"n_test", r.n_test},
            {"tests_per_dataset", r.tests_per_dataset}};
}

json to_json(const BaselineResult& r, const std::vector<std::string>& names) {
    json per = json::array();
    for (const auto& d : r.per_dataset) per.push_back({{"pc", name_list(names, d.pc)}, {"mb", name_list(names, d.mb)}});
    return {{"base_mb", name_list(names, r.mb)},
            {"base_pa", name_list(names, r.pa)},
            {"per_dataset", per},
            {"n_test", r.n_test},
            {"tests_per_dataset", r.tests_per_dataset}};
}

}  // namespace mimb

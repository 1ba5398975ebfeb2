#ifndef GRANULAR_SERIALIZE_HPP
#define GRANULAR_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include "granular/angle.hpp"
#include "granular/dyadic.hpp"
#include "granular/epr.hpp"
#include "granular/quaternions.hpp"
#include "granular/sequence.hpp"
#include "granular/signed_permutation.hpp"
#include "granular/superpose.hpp"

// value-construction hooks; these types have no default constructor
namespace nlohmann {

template <>
struct adl_serializer<granular::BitSequence> {
  static granular::BitSequence from_json(const json& j) {
    std::vector<std::int8_t> e;
    e.reserve(j.size());
    for (const auto& v : j)
      e.push_back(static_cast<std::int8_t>(v.get<int>()));
    return granular::BitSequence(std::move(e));
  }
  static void to_json(json& j, const granular::BitSequence& s) {
    j = json::array();
    for (std::int8_t v : s) j.push_back(static_cast<int>(v));
  }
};

template <>
struct adl_serializer<granular::SignedPermutation> {
  static granular::SignedPermutation from_json(const json& j) {
    std::vector<std::uint32_t> perm =
        j.at("perm").get<std::vector<std::uint32_t>>();
    std::vector<std::int8_t> signs;
    for (const auto& v : j.at("signs"))
      signs.push_back(static_cast<std::int8_t>(v.get<int>()));
    return granular::SignedPermutation(std::move(perm), std::move(signs));
  }
  static void to_json(json& j, const granular::SignedPermutation& p) {
    j = json{{"perm", p.perm()}, {"signs", json::array()}};
    for (std::int8_t v : p.signs()) j["signs"].push_back(static_cast<int>(v));
  }
};

} // namespace nlohmann

namespace granular {

// Exact quantities serialize as strings ("p/q"), never as floats.

inline void to_json(nlohmann::json& j, const Dyadic& d) { j = d.to_string(); }

inline void to_json(nlohmann::json& j, const SymbolicAngle& a) {
  j = a.to_string();
}

inline void to_json(nlohmann::json& j, const RootSet& r) {
  j = nlohmann::json{{"level", r.level},
                     {"block", std::size_t(1) << r.level},
                     {"count", r.ops.size()},
                     {"ops", r.ops}};
}

inline void to_json(nlohmann::json& j, const Certificate& c) {
  j = nlohmann::json{{"cos", c.cos_value.to_string()},
                     {"disjoint", c.disjoint},
                     {"steps", c.steps}};
}

inline void to_json(nlohmann::json& j, const CorrelationTable& t) {
  j["left_angles"] = t.left_angles;
  j["right_angles"] = t.right_angles;
  auto rows = nlohmann::json::array();
  for (const auto& row : t.cells) {
    auto r = nlohmann::json::array();
    for (const auto& cell : row) {
      if (cell)
        r.push_back(cell->to_string());
      else
        r.push_back("undefined");
    }
    rows.push_back(std::move(r));
  }
  j["cells"] = rows;
}

} // namespace granular

#endif // GRANULAR_SERIALIZE_HPP

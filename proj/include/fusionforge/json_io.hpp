#pragma once

// JSON serialization for the domain types.  All emitters use ordered JSON and
// deterministic traversal so identical inputs produce byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "fusionforge/biset.hpp"
#include "fusionforge/character.hpp"
#include "fusionforge/cyclo.hpp"
#include "fusionforge/gamma.hpp"
#include "fusionforge/group.hpp"

namespace fusionforge {

using Json = nlohmann::ordered_json;

namespace detail {

inline long long checked_ll(const Integer& v) {
  if (v > Integer(9007199254740991LL) || v < Integer(-9007199254740991LL))
    throw Error("integer too large for JSON emission");
  return static_cast<long long>(v);
}

} // namespace detail

/// {"m": conductor, "coeffs": [[num,den], ...]} over the power basis
/// zeta^0..zeta^(m-1) (entries beyond the reduced degree are zero).
inline Json to_json(const Cyclotomic& c) {
  Json coeffs = Json::array();
  for (std::size_t k = 0; k < c.conductor(); ++k) {
    Rational r = k < c.coeffs().size() ? c.coeffs()[k] : Rational(0);
    coeffs.push_back(Json::array(
        {detail::checked_ll(boost::multiprecision::numerator(r)),
         detail::checked_ll(boost::multiprecision::denominator(r))}));
  }
  return Json{{"m", c.conductor()}, {"coeffs", coeffs}};
}

inline Json to_json(const Subgroup& s) {
  Json members = Json::array();
  for (Elt m : s.members) members.push_back(m);
  return Json{{"group", s.parent->label()}, {"members", members}};
}

/// Map table [[x, phi(x)], ...] over the sorted domain.
inline Json hom_map_table(const Hom& h) {
  Json table = Json::array();
  for (std::size_t i = 0; i < h.domain.members.size(); ++i)
    table.push_back(Json::array({h.domain.members[i], h.images[i]}));
  return table;
}

inline Json to_json(const Hom& h) {
  return Json{{"domain_order", h.domain.order()}, {"map", hom_map_table(h)}};
}

/// {"base": label, "summands": [{"domain_order": q, "phi": map-table}, ...]}
inline Json to_json(const Biset& b) {
  Json summands = Json::array();
  for (const auto& sm : b.summands)
    summands.push_back(Json{{"domain_order", sm.phi.domain.order()},
                            {"phi", hom_map_table(sm.phi)}});
  return Json{{"base", b.s->label()}, {"summands", summands}};
}

/// {"perm": [images], "twists": [element indices]}
inline Json to_json(const GammaElement& g) {
  Json perm = Json::array();
  for (auto v : g.perm) perm.push_back(v);
  Json twists = Json::array();
  for (auto v : g.twists) twists.push_back(v);
  return Json{{"perm", perm}, {"twists", twists}};
}

/// {"group": label, "classes": [rep element index], "values": [cyclotomic]}
inline Json to_json(const Character& c) {
  Json classes = Json::array();
  for (Elt r : c.class_reps) classes.push_back(r);
  Json values = Json::array();
  for (const auto& v : c.values) values.push_back(to_json(v));
  return Json{{"group", c.sub.describe()},
              {"classes", classes},
              {"values", values},
              {"build", c.build}};
}

} // namespace fusionforge

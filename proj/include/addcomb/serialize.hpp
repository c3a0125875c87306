#pragma once

#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "addcomb/ap.hpp"
#include "addcomb/coset.hpp"
#include "addcomb/covering.hpp"
#include "addcomb/engine.hpp"
#include "addcomb/exact.hpp"
#include "addcomb/freiman.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/residue_set.hpp"
#include "addcomb/spectral.hpp"
#include "addcomb/version.hpp"

namespace addcomb {

using nlohmann::json;

inline json to_json(const ResidueSet& a) {
  return {{"modulus", a.modulus()}, {"elements", a.elements()}, {"literal", to_literal(a)}};
}

inline json to_json(const IntSet& a) { return {{"elements", a.elements()}, {"literal", to_literal(a)}}; }

inline json to_json(const ApDescriptor& ap) {
  json j{{"start", ap.start}, {"step", ap.step}, {"length", ap.length}};
  j["modulus"] = ap.in_integers() ? json(nullptr) : json(ap.modulus);
  return j;
}

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return static_cast<i64>(v);
  return v.str();
}

inline json to_json(const CoverResult& c) {
  return {{"length", c.length}, {"witness", to_json(c.witness)}, {"bound", c.bound}, {"within_bound", c.within_bound}};
}

inline json to_json(const MainTheoremReport& r) {
  return {{"size", r.size},
          {"doubling", r.doubling},
          {"doubling_hypothesis", r.doubling_hypothesis},
          {"density_hypothesis", r.density_hypothesis ? "met" : "unmet-at-scale"},
          {"cover", to_json(r.cover)},
          {"conclusion_holds", r.conclusion_holds}};
}

inline json to_json(const VosperReport& r) {
  return {{"size", r.size}, {"doubling", r.doubling}, {"critical", r.critical}, {"is_ap", r.is_ap}, {"agree", r.agree}};
}

inline json to_json(const ConjectureReport& r) {
  return {{"size", r.size},
          {"doubling", r.doubling},
          {"excess", r.excess},
          {"condition_i", r.condition_i},
          {"condition_ii", r.condition_ii},
          {"cover", to_json(r.cover)},
          {"status", std::string(to_string(r.status))}};
}

inline json to_json(const CosetProfile& c) {
  return {{"subgroup_order", c.subgroup_order},
          {"cosets_met", c.cosets_met},
          {"ap_of_cosets_length", c.ap_of_cosets_length},
          {"heaviest_coset_count", c.heaviest_coset_count},
          {"heaviest_coset_fill", static_cast<double>(c.heaviest_coset_count) / static_cast<double>(c.subgroup_order)}};
}

inline json to_json(const Spectrum& s) {
  return {{"modulus", s.modulus}, {"magnitudes", s.magnitudes}, {"tolerance", s.tolerance},
          {"parseval_residual", s.parseval_residual()}};
}

inline json to_json(const LargestCoefficient& c) {
  return {{"d", c.d}, {"magnitude", c.magnitude}, {"bound", c.bound}};
}

inline json to_json(const RectWindow& w) {
  return {{"d", w.d},
          {"u", w.u},
          {"window_size", w.window_size},
          {"mode", std::string(to_string(w.mode))},
          {"captured", to_json(w.captured)},
          {"fourier_magnitude", w.fourier_magnitude}};
}

inline json to_json(const DimensionResult& d) {
  json basis = json::array();
  for (const auto& row : d.nullspace_basis) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    basis.push_back(r);
  }
  return {{"dim", d.dim}, {"nullspace_basis", basis}};
}

inline json to_json(const Rectification& r) {
  return {{"image", to_json(r.image)}, {"values", r.values}, {"coefficients", r.coefficients}};
}

inline json to_json(const TwoLinesCover& t) {
  return {{"p1", to_json(t.p1)}, {"p2", to_json(t.p2)}, {"route", t.route}, {"union_size", t.union_size},
          {"bound", t.bound}};
}

inline json to_json(const HigherDimWitness& w) {
  json pts = json::array();
  for (const auto& p : w.points) pts.push_back({p[0], p[1]});
  return {{"verdict", w.applicable ? "APPLICABLE" : "NOT_APPLICABLE"},
          {"projection", to_json(w.projection)},
          {"witness", pts},
          {"dim", w.dim}};
}

inline json to_json(const EngineTrace& t) {
  json j{{"schema_version", kJsonSchemaVersion},
         {"modulus", t.modulus},
         {"size", t.size},
         {"doubling", t.doubling},
         {"bound", t.bound},
         {"window", to_json(t.window)},
         {"fourier_guarantee", t.fourier_guarantee},
         {"fourier_guarantee_holds", t.fourier_guarantee_holds},
         {"branch", std::string(to_string(t.branch))},
         {"dilation_used", t.dilation_used},
         {"message", t.message},
         {"reverified", t.reverified}};
  j["a1_doubling_ok"] = t.a1_doubling_ok ? json(*t.a1_doubling_ok) : json(nullptr);
  j["dim_a1"] = t.dim_a1 ? json(*t.dim_a1) : json(nullptr);
  j["attempted"] = t.attempted ? json(std::string(to_string(*t.attempted))) : json(nullptr);
  j["c"] = t.c ? json(*t.c) : json(nullptr);
  if (t.parts) {
    j["parts"] = {{"scale", t.parts->scale},
                  {"shift", t.parts->shift},
                  {"width_prime", t.parts->width_prime},
                  {"width_second", t.parts->width_second},
                  {"a1_prime", to_json(t.parts->a1_prime)},
                  {"a1_second", to_json(t.parts->a1_second)},
                  {"rest", to_json(t.parts->rest)}};
  } else {
    j["parts"] = nullptr;
  }
  j["result"] = t.result ? to_json(*t.result) : json(nullptr);
  json ann = json::array();
  for (const auto& a : t.annotations) {
    ann.push_back({{"name", a.name}, {"asymptotic", a.asymptotic}, {"measured", a.measured}, {"holds", a.holds}});
  }
  j["annotations"] = ann;
  return j;
}

}  // namespace addcomb

#pragma once

#include "json.hpp"
#include "webcat/normalizer.hpp"

namespace webcat::nf {

/// {"source":[...],"target":[...],"terms":[{"coeff":"p/q","A":[[...]],
///  "P":[[[parts]...]]}]} with terms in canonical order.
inline nlohmann::ordered_json to_json(const NormalForm& f) {
  nlohmann::ordered_json j;
  j["source"] = f.source().parts();
  j["target"] = f.target().parts();
  auto terms = nlohmann::ordered_json::array();
  for (auto& [e, c] : f.terms()) {
    nlohmann::ordered_json t;
    t["coeff"] = rat_to_string(c);
    auto a = nlohmann::ordered_json::array();
    for (int i = 0; i < e.A.rows(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int k = 0; k < e.A.cols(); ++k) row.push_back(e.A.at(i, k));
      a.push_back(row);
    }
    t["A"] = a;
    auto p = nlohmann::ordered_json::array();
    for (auto& row : e.P) {
      auto prow = nlohmann::ordered_json::array();
      for (auto& nu : row) prow.push_back(nu.parts());
      p.push_back(prow);
    }
    t["P"] = p;
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

inline nlohmann::ordered_json cfd_json(const ElementaryCFD& e) {
  nlohmann::ordered_json t;
  auto a = nlohmann::ordered_json::array();
  for (int i = 0; i < e.A.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int k = 0; k < e.A.cols(); ++k) row.push_back(e.A.at(i, k));
    a.push_back(row);
  }
  t["A"] = a;
  auto p = nlohmann::ordered_json::array();
  for (auto& row : e.P) {
    auto prow = nlohmann::ordered_json::array();
    for (auto& nu : row) prow.push_back(nu.parts());
    p.push_back(prow);
  }
  t["P"] = p;
  t["degree"] = e.dot_degree();
  return t;
}

}  // namespace webcat::nf

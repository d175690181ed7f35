#pragma once

// Repo-wide matrix text format:
//   {"layout": ["1", "2b", ...], "side": 64, "entries": [[re, im], ...]}
// with entries row-major. nlohmann::json prints doubles in shortest
// round-trip form, so write -> read reproduces every bit.

#include "qdisc/labeled_operator.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace qdisc {

inline nlohmann::json to_json(const LabeledOperator& x) {
  nlohmann::json j;
  j["layout"] = nlohmann::json::array();
  for (Register r : x.layout()) j["layout"].push_back(std::string(to_string(r)));
  j["side"] = x.side();
  auto entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < x.side(); ++r) {
    for (Eigen::Index c = 0; c < x.side(); ++c) {
      const Complex v = x.matrix()(r, c);
      entries.push_back({v.real(), v.imag()});
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

inline LabeledOperator operator_from_json(const nlohmann::json& j) {
  std::vector<Register> regs;
  for (const auto& s : j.at("layout")) regs.push_back(parse_register(s.get<std::string>()));
  SystemLayout layout(std::move(regs));
  const auto side = j.at("side").get<Eigen::Index>();
  if (side != static_cast<Eigen::Index>(layout.dim())) {
    throw std::invalid_argument("matrix document: side " + std::to_string(side) + " does not match layout " + layout.str());
  }
  const auto& entries = j.at("entries");
  if (entries.size() != static_cast<std::size_t>(side * side)) {
    throw std::invalid_argument("matrix document: expected " + std::to_string(side * side) + " entries");
  }
  CMatrix m(side, side);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < side; ++r) {
    for (Eigen::Index c = 0; c < side; ++c, ++k) {
      const auto& e = entries[k];
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return {std::move(layout), std::move(m)};
}

inline std::string to_text(const LabeledOperator& x) { return to_json(x).dump() + "\n"; }

inline LabeledOperator operator_from_text(const std::string& text) { return operator_from_json(nlohmann::json::parse(text)); }

inline void write_operator(const std::string& path, const LabeledOperator& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_text(x);
}

inline LabeledOperator read_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return operator_from_json(nlohmann::json::parse(in));
}

}  // namespace qdisc

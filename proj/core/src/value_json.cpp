#include "dmm/value_json.hpp"

namespace dmm {

using nlohmann::json;

json fdvector_to_json(const FDVector& v) {
  json j;
  j["default"] = v.def;
  json e = json::object();
  for (const auto& [k, x] : v.except) e[k] = x;
  j["except"] = e;
  return j;
}

FDVector fdvector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("default")) {
    throw ParseError("FD vector literal must be {\"default\":..,\"except\":..}");
  }
  FDVector v(j.at("default").get<double>());
  if (j.contains("except")) {
    for (const auto& [k, x] : j.at("except").items()) {
      v.set(k, x.get<double>());
    }
  }
  return v;
}

json value_to_json(const StreamValue& v) {
  if (const auto* d = std::get_if<DenseMatrix>(&v)) {
    json rows = json::array();
    for (int i = 0; i < d->rows; ++i) {
      json row = json::array();
      for (int j = 0; j < d->cols; ++j) row.push_back(d->at(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  }
  const FDMatrix& f = std::get<FDMatrix>(v);
  json terms = json::array();
  for (const auto& t : f.terms) {
    terms.push_back({{"u", fdvector_to_json(t.u)}, {"v", fdvector_to_json(t.v)}});
  }
  return json{{"terms", std::move(terms)}};
}

StreamValue value_from_json(const json& j, Mode mode, int m, int n) {
  if (mode == Mode::Lightweight) {
    if (!j.is_array() || int(j.size()) != m) {
      throw ParseError("dense literal must be an array of " +
                       std::to_string(m) + " rows");
    }
    DenseMatrix d(m, n);
    for (int i = 0; i < m; ++i) {
      const json& row = j.at(std::size_t(i));
      if (!row.is_array() || int(row.size()) != n) {
        throw ParseError("dense literal row " + std::to_string(i) +
                         " must have " + std::to_string(n) + " entries");
      }
      for (int c = 0; c < n; ++c) d.at(i, c) = row.at(std::size_t(c)).get<double>();
    }
    return d;
  }
  FDMatrix f;
  if (j.is_object() && j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      f.terms.push_back(
          {fdvector_from_json(t.at("u")), fdvector_from_json(t.at("v"))});
    }
    return f;
  }
  if (j.is_array()) {  // sparse triplets for finite-support matrices
    for (const auto& t : j) {
      if (!t.is_array() || t.size() != 3) {
        throw ParseError("triplet literal entries must be [row, col, w]");
      }
      f.terms.push_back({fv_scale(t.at(2).get<double>(),
                                  FDVector::unit(t.at(0).get<std::string>())),
                         FDVector::unit(t.at(1).get<std::string>())});
    }
    return f;
  }
  throw ParseError("unrecognized countable matrix literal");
}

}  // namespace dmm

#include "bbk/json_io.hpp"

namespace bbk {

namespace {
Json matrixToJson(const Mat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::variant<Mat, ParseError> matrixFromJson(const Json& j, const std::string& loc) {
  if (!j.is_array()) return ParseError{loc, "expected an array of rows"};
  std::vector<std::vector<Rat>> rows;
  size_t cols = 0;
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    if (!row.is_array()) return ParseError{loc + "[" + std::to_string(i) + "]", "expected a row"};
    if (i == 0) cols = row.size();
    if (row.size() != cols)
      return ParseError{loc + "[" + std::to_string(i) + "]", "ragged matrix"};
    std::vector<Rat> r;
    for (size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_string())
        return ParseError{loc + "[" + std::to_string(i) + "][" + std::to_string(c) + "]",
                          "rationals are serialized as strings"};
      auto v = Rat::parse(row[c].get<std::string>());
      if (!v)
        return ParseError{loc + "[" + std::to_string(i) + "][" + std::to_string(c) + "]",
                          "malformed rational '" + row[c].get<std::string>() + "'"};
      r.push_back(*v);
    }
    rows.push_back(std::move(r));
  }
  Mat m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t c = 0; c < cols; ++c) m(static_cast<Index>(i), static_cast<Index>(c)) = rows[i][c];
  return m;
}
}  // namespace

Json toJson(const GradedVectorSpace& v) {
  Json basis = Json::array();
  for (Index i = 0; i < v.dim(); ++i)
    basis.push_back(Json{{"label", v.labelOf(i)}, {"degree", v.degreeOf(i)}});
  return Json{{"basis", std::move(basis)}};
}

Json toJson(const GradedMap& f) {
  Json blocks = Json::array();
  for (const auto& [k, m] : f.blocks()) {
    blocks.push_back(Json{{"from_degree", k}, {"matrix", matrixToJson(m)}});
  }
  return Json{{"degree", f.degree()}, {"blocks", std::move(blocks)}};
}

Json toJson(const CochainComplex& c) {
  return Json{{"space", toJson(*c.space)}, {"differential", toJson(c.d)}};
}

Json toJson(const CyclicLInfinity& alg) {
  const auto& space = *alg.space();
  Json j;
  j["dim"] = space.dim();
  Json labels = Json::array(), degrees = Json::array();
  for (Index i = 0; i < space.dim(); ++i) {
    labels.push_back(space.labelOf(i));
    degrees.push_back(space.degreeOf(i));
  }
  j["labels"] = std::move(labels);
  j["degrees"] = std::move(degrees);
  j["maxArity"] = alg.maxArity();
  Json dEntries = Json::array();
  for (const auto& [k, m] : alg.differential().blocks()) {
    const auto& src = space.slot(k);
    const auto& tgt = space.slot(k + 1);
    for (size_t col = 0; col < src.size(); ++col)
      for (size_t row = 0; row < tgt.size(); ++row) {
        const Rat& v = m(static_cast<Index>(row), static_cast<Index>(col));
        if (!v.isZero())
          dEntries.push_back(Json{{"row", tgt[row]}, {"col", src[col]}, {"coeff", v.str()}});
      }
  }
  j["differential"] = std::move(dEntries);
  Json brackets = Json::array();
  for (int k = 2; k <= alg.maxArity(); ++k) {
    auto entries = alg.entries(k);
    if (entries.empty()) continue;
    Json list = Json::array();
    for (const auto& e : entries) {
      Json inputs = Json::array();
      for (Index i : e.inputs) inputs.push_back(i);
      list.push_back(
          Json{{"inputs", std::move(inputs)}, {"output", e.output}, {"coeff", e.coeff.str()}});
    }
    brackets.push_back(Json{{"arity", k}, {"entries", std::move(list)}});
  }
  j["brackets"] = std::move(brackets);
  Json pairing;
  pairing["degree"] = alg.declaredPairingDegree();
  pairing["symplectic"] = alg.symplectic();
  Json pEntries = Json::array();
  const Mat& p = alg.pairingMatrix();
  for (Index i = 0; i < p.rows(); ++i)
    for (Index jj = 0; jj < p.cols(); ++jj)
      if (!p(i, jj).isZero())
        pEntries.push_back(Json{{"i", i}, {"j", jj}, {"coeff", p(i, jj).str()}});
  pairing["entries"] = std::move(pEntries);
  j["pairing"] = std::move(pairing);
  return j;
}

Json toJson(const BulkBoundarySystem& sys) {
  Json j;
  j["name"] = sys.name();
  j["polyCap"] = sys.polyCap();
  Json breaks = Json::array();
  for (const auto& b : sys.mesh().breakpoints()) breaks.push_back(b.str());
  j["mesh"] = Json{{"breakpoints", std::move(breaks)}};
  j["boundary"] = toJson(sys.boundary());
  if (sys.hasCondition()) {
    const auto& cond = sys.condition();
    j["condition"] = Json{{"name", cond.name},
                          {"l", matrixToJson(cond.l)},
                          {"lPrime", matrixToJson(cond.lPrime)}};
  }
  return j;
}

Json toJson(const Cohomology& h) {
  Json out = Json::array();
  for (const auto& [deg, piece] : h)
    out.push_back(Json{{"degree", deg}, {"dim", piece.dim}});
  return out;
}

Json toJson(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  return out;
}

Json toJson(const PolyForm& w) {
  return Json{{"p", toJson(w.p)}, {"q", toJson(w.q)}, {"delta", w.delta.str()}};
}

std::optional<ParseError> validateSystemJson(const Json& j) {
  if (!j.is_object()) return ParseError{"$", "descriptor must be an object"};
  if (!j.contains("name") || !j["name"].is_string())
    return ParseError{"$.name", "required string"};
  if (!j.contains("polyCap") || !j["polyCap"].is_number_integer() || j["polyCap"].get<int>() < 1)
    return ParseError{"$.polyCap", "required positive integer"};
  if (!j.contains("mesh") || !j["mesh"].is_object() || !j["mesh"].contains("breakpoints") ||
      !j["mesh"]["breakpoints"].is_array() || j["mesh"]["breakpoints"].size() < 2)
    return ParseError{"$.mesh.breakpoints", "required array of at least two rationals"};
  for (size_t i = 0; i < j["mesh"]["breakpoints"].size(); ++i) {
    const auto& b = j["mesh"]["breakpoints"][i];
    if (!b.is_string() || !Rat::parse(b.get<std::string>()))
      return ParseError{"$.mesh.breakpoints[" + std::to_string(i) + "]", "malformed rational"};
  }
  if (!j.contains("boundary") || !j["boundary"].is_object())
    return ParseError{"$.boundary", "required object"};
  const auto& b = j["boundary"];
  if (!b.contains("dim") || !b["dim"].is_number_integer() || b["dim"].get<int>() < 0)
    return ParseError{"$.boundary.dim", "required nonnegative integer"};
  const int dim = b["dim"].get<int>();
  if (!b.contains("labels") || !b["labels"].is_array() ||
      static_cast<int>(b["labels"].size()) != dim)
    return ParseError{"$.boundary.labels", "must list exactly dim labels"};
  if (!b.contains("degrees") || !b["degrees"].is_array() ||
      static_cast<int>(b["degrees"].size()) != dim)
    return ParseError{"$.boundary.degrees", "must list exactly dim degrees"};
  if (!b.contains("maxArity") || !b["maxArity"].is_number_integer() ||
      b["maxArity"].get<int>() < 1)
    return ParseError{"$.boundary.maxArity", "required positive integer"};
  auto checkIndex = [&](const Json& v, const std::string& loc) -> std::optional<ParseError> {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= dim)
      return ParseError{loc, "index out of range"};
    return std::nullopt;
  };
  auto checkCoeff = [&](const Json& v, const std::string& loc) -> std::optional<ParseError> {
    if (!v.is_string() || !Rat::parse(v.get<std::string>()))
      return ParseError{loc, "malformed rational"};
    return std::nullopt;
  };
  if (b.contains("differential")) {
    if (!b["differential"].is_array()) return ParseError{"$.boundary.differential", "array"};
    for (size_t i = 0; i < b["differential"].size(); ++i) {
      const auto& e = b["differential"][i];
      std::string loc = "$.boundary.differential[" + std::to_string(i) + "]";
      if (!e.is_object() || !e.contains("row") || !e.contains("col") || !e.contains("coeff"))
        return ParseError{loc, "entry needs row, col, coeff"};
      if (auto err = checkIndex(e["row"], loc + ".row")) return err;
      if (auto err = checkIndex(e["col"], loc + ".col")) return err;
      if (auto err = checkCoeff(e["coeff"], loc + ".coeff")) return err;
    }
  }
  if (b.contains("brackets")) {
    if (!b["brackets"].is_array()) return ParseError{"$.boundary.brackets", "array"};
    for (size_t i = 0; i < b["brackets"].size(); ++i) {
      const auto& blk = b["brackets"][i];
      std::string loc = "$.boundary.brackets[" + std::to_string(i) + "]";
      if (!blk.is_object() || !blk.contains("arity") || !blk.contains("entries"))
        return ParseError{loc, "bracket block needs arity and entries"};
      if (!blk["arity"].is_number_integer() || blk["arity"].get<int>() < 2)
        return ParseError{loc + ".arity", "arity must be an integer >= 2"};
      const int arity = blk["arity"].get<int>();
      if (arity > b["maxArity"].get<int>())
        return ParseError{loc + ".arity", "arity exceeds the declared budget"};
      if (!blk["entries"].is_array()) return ParseError{loc + ".entries", "array"};
      for (size_t k = 0; k < blk["entries"].size(); ++k) {
        const auto& e = blk["entries"][k];
        std::string eloc = loc + ".entries[" + std::to_string(k) + "]";
        if (!e.is_object() || !e.contains("inputs") || !e.contains("output") ||
            !e.contains("coeff"))
          return ParseError{eloc, "entry needs inputs, output, coeff"};
        if (!e["inputs"].is_array() || static_cast<int>(e["inputs"].size()) != arity)
          return ParseError{eloc + ".inputs", "inputs must match the declared arity"};
        for (size_t t = 0; t < e["inputs"].size(); ++t)
          if (auto err = checkIndex(e["inputs"][t], eloc + ".inputs[" + std::to_string(t) + "]"))
            return err;
        if (auto err = checkIndex(e["output"], eloc + ".output")) return err;
        if (auto err = checkCoeff(e["coeff"], eloc + ".coeff")) return err;
      }
    }
  }
  if (b.contains("pairing")) {
    const auto& p = b["pairing"];
    if (!p.is_object() || !p.contains("entries") || !p["entries"].is_array())
      return ParseError{"$.boundary.pairing", "object with an entries array"};
    for (size_t i = 0; i < p["entries"].size(); ++i) {
      const auto& e = p["entries"][i];
      std::string loc = "$.boundary.pairing.entries[" + std::to_string(i) + "]";
      if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("coeff"))
        return ParseError{loc, "entry needs i, j, coeff"};
      if (auto err = checkIndex(e["i"], loc + ".i")) return err;
      if (auto err = checkIndex(e["j"], loc + ".j")) return err;
      if (auto err = checkCoeff(e["coeff"], loc + ".coeff")) return err;
    }
  }
  if (j.contains("condition")) {
    const auto& c = j["condition"];
    if (!c.is_object() || !c.contains("l") || !c.contains("lPrime"))
      return ParseError{"$.condition", "object with l and lPrime column matrices"};
    for (const char* key : {"l", "lPrime"}) {
      auto m = matrixFromJson(c[key], std::string("$.condition.") + key);
      if (std::holds_alternative<ParseError>(m)) return std::get<ParseError>(m);
      const Mat& mat = std::get<Mat>(m);
      if (mat.cols() > 0 && mat.rows() != dim)
        return ParseError{std::string("$.condition.") + key,
                          "columns must live in the boundary space"};
    }
  }
  return std::nullopt;
}

std::variant<BulkBoundarySystem, ParseError> systemFromJson(const Json& j) {
  if (auto err = validateSystemJson(j)) return *err;
  const auto& b = j["boundary"];
  const int dim = b["dim"].get<int>();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (int i = 0; i < dim; ++i) {
    labels.push_back(b["labels"][i].get<std::string>());
    degrees.push_back(b["degrees"][i].get<int>());
  }
  SpaceRef space;
  try {
    space = makeSpace(std::move(labels), std::move(degrees));
  } catch (const std::exception& e) {
    return ParseError{"$.boundary.labels", e.what()};
  }
  int declaredDegree = 0;
  if (b.contains("pairing") && b["pairing"].contains("degree"))
    declaredDegree = b["pairing"]["degree"].get<int>();
  CyclicLInfinity alg(space, b["maxArity"].get<int>(), declaredDegree);
  if (b.contains("differential")) {
    GradedMap d(space, space, 1);
    for (const auto& e : b["differential"]) {
      try {
        d.addEntry(e["row"].get<Index>(), e["col"].get<Index>(),
                   *Rat::parse(e["coeff"].get<std::string>()));
      } catch (const std::exception& ex) {
        return ParseError{"$.boundary.differential", ex.what()};
      }
    }
    alg.setDifferential(std::move(d));
  }
  if (b.contains("brackets")) {
    for (const auto& blk : b["brackets"]) {
      for (const auto& e : blk["entries"]) {
        std::vector<Index> inputs;
        for (const auto& t : e["inputs"]) inputs.push_back(t.get<Index>());
        try {
          alg.addBracket(inputs, e["output"].get<Index>(),
                         *Rat::parse(e["coeff"].get<std::string>()));
        } catch (const std::exception& ex) {
          return ParseError{"$.boundary.brackets", ex.what()};
        }
      }
    }
  }
  if (b.contains("pairing")) {
    Mat p = Mat::Zero(dim, dim);
    for (const auto& e : b["pairing"]["entries"])
      p(e["i"].get<Index>(), e["j"].get<Index>()) = *Rat::parse(e["coeff"].get<std::string>());
    bool symplectic =
        b["pairing"].contains("symplectic") && b["pairing"]["symplectic"].get<bool>();
    alg.setPairing(std::move(p), symplectic);
  }
  std::vector<Rat> breaks;
  for (const auto& bp : j["mesh"]["breakpoints"])
    breaks.push_back(*Rat::parse(bp.get<std::string>()));
  std::optional<CellMesh> mesh;
  try {
    mesh.emplace(std::move(breaks));
  } catch (const std::exception& e) {
    return ParseError{"$.mesh.breakpoints", e.what()};
  }
  BulkBoundarySystem sys(j["name"].get<std::string>(), std::move(alg), std::move(*mesh),
                         j["polyCap"].get<int>());
  if (j.contains("condition")) {
    BoundaryCondition cond;
    cond.l = std::get<Mat>(matrixFromJson(j["condition"]["l"], "$.condition.l"));
    cond.lPrime = std::get<Mat>(matrixFromJson(j["condition"]["lPrime"], "$.condition.lPrime"));
    if (j["condition"].contains("name")) cond.name = j["condition"]["name"].get<std::string>();
    try {
      sys.setCondition(std::move(cond));
    } catch (const std::exception& e) {
      return ParseError{"$.condition", e.what()};
    }
  }
  return sys;
}

Json systemSchema() {
  return Json::parse(R"({
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "bulk-boundary system descriptor",
    "type": "object",
    "required": ["name", "polyCap", "mesh", "boundary"],
    "properties": {
      "name": {"type": "string"},
      "polyCap": {"type": "integer", "minimum": 1},
      "mesh": {
        "type": "object",
        "required": ["breakpoints"],
        "properties": {
          "breakpoints": {"type": "array", "minItems": 2,
                           "items": {"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"}}
        }
      },
      "boundary": {
        "type": "object",
        "required": ["dim", "labels", "degrees", "maxArity"],
        "properties": {
          "dim": {"type": "integer", "minimum": 0},
          "labels": {"type": "array", "items": {"type": "string"}},
          "degrees": {"type": "array", "items": {"type": "integer"}},
          "maxArity": {"type": "integer", "minimum": 1},
          "differential": {"type": "array", "items": {
            "type": "object", "required": ["row", "col", "coeff"],
            "properties": {"row": {"type": "integer"}, "col": {"type": "integer"},
                            "coeff": {"type": "string"}}}},
          "brackets": {"type": "array", "items": {
            "type": "object", "required": ["arity", "entries"],
            "properties": {
              "arity": {"type": "integer", "minimum": 2},
              "entries": {"type": "array", "items": {
                "type": "object", "required": ["inputs", "output", "coeff"],
                "properties": {"inputs": {"type": "array", "items": {"type": "integer"}},
                                "output": {"type": "integer"},
                                "coeff": {"type": "string"}}}}}}},
          "pairing": {"type": "object", "required": ["entries"],
            "properties": {
              "degree": {"type": "integer"},
              "symplectic": {"type": "boolean"},
              "entries": {"type": "array", "items": {
                "type": "object", "required": ["i", "j", "coeff"],
                "properties": {"i": {"type": "integer"}, "j": {"type": "integer"},
                                "coeff": {"type": "string"}}}}}}
        }
      },
      "condition": {
        "type": "object",
        "required": ["l", "lPrime"],
        "properties": {
          "name": {"type": "string"},
          "l": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
          "lPrime": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}
        }
      }
    }
  })");
}

}  // namespace bbk

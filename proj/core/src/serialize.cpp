#include "pluriminimal/serialize.hpp"

#include <limits>

#include "json.hpp"

#include "pluriminimal/errors.hpp"

namespace pluri {
namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::string require_string(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw FormatError("bad integer string");
    return z;
  }
  throw FormatError("rational parts must be integers or integer strings");
}

mpq_class rational_from_json(const json& num, const json& den) {
  mpq_class q(integer_from_json(num), integer_from_json(den));
  if (sgn(q.get_den()) == 0) throw FormatError("zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace

std::string to_json(const WeierstrassData& data) {
  json j;
  j["arity"] = data.arity;
  json base = json::array();
  for (const auto& c : data.basepoint) base.push_back({c.real(), c.imag()});
  j["basepoint"] = base;
  j["constant"] = data.constant;
  json forms = json::array();
  for (const auto& f : data.forms) {
    json coeffs = json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(to_string(c));
    forms.push_back({{"coeffs", coeffs}});
  }
  j["forms"] = forms;
  if (data.primitives) {
    json prims = json::array();
    for (const auto& p : *data.primitives) prims.push_back(to_string(p));
    j["primitives"] = prims;
  } else {
    j["primitives"] = nullptr;
  }
  return j.dump(2);
}

WeierstrassData data_from_json(std::string_view text) {
  const json j = parse_document(text);
  const int m = require_int(j, "arity");
  if (m < 1) throw FormatError("arity must be positive");

  std::optional<std::vector<HoloExpr>> primitives;
  if (j.contains("primitives") && !j.at("primitives").is_null()) {
    const json& ps = j.at("primitives");
    if (!ps.is_array()) throw FormatError("primitives must be an array");
    primitives.emplace();
    for (const auto& p : ps) primitives->push_back(parse_expr(require_string(p, "primitive"), m));
  }

  WeierstrassData data;
  if (j.contains("forms")) {
    const json& fs = j.at("forms");
    if (!fs.is_array()) throw FormatError("forms must be an array");
    data.arity = m;
    for (const auto& f : fs) {
      const json& coeffs = require(f, "coeffs");
      if (!coeffs.is_array()) throw FormatError("coeffs must be an array");
      OneForm form;
      for (const auto& c : coeffs) form.coeffs.push_back(parse_expr(require_string(c, "coefficient"), m));
      data.forms.push_back(std::move(form));
    }
    data.primitives = std::move(primitives);
  } else if (primitives) {
    data = WeierstrassData::from_primitives(std::move(*primitives));
  } else {
    throw FormatError("either forms or primitives must be given");
  }
  data.arity = m;

  data.basepoint.assign(static_cast<std::size_t>(m), Complex(0.0, 0.0));
  if (j.contains("basepoint")) {
    const json& b = j.at("basepoint");
    if (!b.is_array() || b.size() != static_cast<std::size_t>(m)) {
      throw FormatError("basepoint must have one [re, im] entry per variable");
    }
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!b[k].is_array() || b[k].size() != 2 || !b[k][0].is_number() || !b[k][1].is_number()) {
        throw FormatError("basepoint entries are [re, im]");
      }
      data.basepoint[k] = {b[k][0].get<double>(), b[k][1].get<double>()};
    }
  }
  data.constant.assign(data.size(), 0.0);
  if (j.contains("constant")) {
    const json& c = j.at("constant");
    if (!c.is_array() || c.size() != data.size()) throw FormatError("constant must have one entry per form");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_number()) throw FormatError("constant entries must be numbers");
      data.constant[i] = c[i].get<double>();
    }
  }
  try {
    data.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  return data;
}

std::string to_json(const FamilyInput& input) {
  json j{{"f", to_string(input.f)}, {"g", to_string(input.g)}};
  return j.dump(2);
}

FamilyInput family_from_json(std::string_view text) {
  const json j = parse_document(text);
  FamilyInput in;
  in.f = parse_expr(require_string(require(j, "f"), "f"), 1);
  in.g = parse_expr(require_string(require(j, "g"), "g"), 1);
  return in;
}

std::string to_json(const QuadraticRelation& relation) {
  json gamma = json::array();
  for (const auto& row : relation.gamma) {
    json r = json::array();
    for (const auto& x : row) {
      r.push_back({integer_json(x.re().get_num()), integer_json(x.re().get_den()),
                   integer_json(x.im().get_num()), integer_json(x.im().get_den())});
    }
    gamma.push_back(r);
  }
  json j{{"m", relation.basis.m}, {"n", relation.basis.n}, {"gamma", gamma}};
  return j.dump();
}

QuadraticRelation relation_from_json(std::string_view text) {
  const json j = parse_document(text);
  const int m = require_int(j, "m");
  const int n = require_int(j, "n");
  if (m < 1 || n < 1) throw FormatError("m and n must be positive");
  QuadraticRelation r;
  r.basis = PolyBasis::make(m, n);
  const std::size_t d = r.basis.dimension();
  const json& g = require(j, "gamma");
  if (!g.is_array() || g.size() != d) throw FormatError("gamma must be a square matrix of basis size");
  for (const auto& row : g) {
    if (!row.is_array() || row.size() != d) throw FormatError("gamma must be a square matrix of basis size");
    ComplexRationalVector v;
    for (const auto& x : row) {
      if (!x.is_array() || x.size() != 4) throw FormatError("gamma entries are [re_num, re_den, im_num, im_den]");
      v.emplace_back(rational_from_json(x[0], x[1]), rational_from_json(x[2], x[3]));
    }
    r.gamma.push_back(std::move(v));
  }
  return r;
}

}  // namespace pluri

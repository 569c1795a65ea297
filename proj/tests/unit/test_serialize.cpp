#include <gtest/gtest.h>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/family.hpp"
#include "pluriminimal/serialize.hpp"

namespace pluri {
namespace {

TEST(Serialize, DataRoundTrip) {
  auto d = split_pairs(solve_family({parse_expr("z1^3", 1), parse_expr("sin(z1)", 1)})).data;
  d.basepoint = {{0.25, -1}, {3, 0.5}};
  d.constant = {1, 2, 3, 4, 5, 6.5};
  const std::string text = to_json(d);
  const auto back = data_from_json(text);
  EXPECT_EQ(back.arity, 2);
  EXPECT_EQ(back.basepoint, d.basepoint);
  EXPECT_EQ(back.constant, d.constant);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t k = 0; k < 2; ++k) EXPECT_TRUE(structurally_equal(back.forms[i].coeffs[k], d.forms[i].coeffs[k]));
    EXPECT_TRUE(structurally_equal((*back.primitives)[i], (*d.primitives)[i]));
  }
  EXPECT_EQ(to_json(back), text);
}

TEST(Serialize, FormsOnlyAndDefaults) {
  const auto d = data_from_json(R"({"arity": 2, "forms": [{"coeffs": ["z2", "0"]}], "primitives": null})");
  EXPECT_FALSE(d.primitives.has_value());
  EXPECT_EQ(d.basepoint.size(), 2u);
  EXPECT_EQ(d.constant, std::vector<double>{0.0});
}

TEST(Serialize, PrimitivesOnly) {
  const auto d = data_from_json(R"({"arity": 1, "primitives": ["z1^2", "1i*z1^2"]})");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(to_string(d.forms[0].coeffs[0]), "2*z1");
}

TEST(Serialize, SchemaErrors) {
  EXPECT_THROW(data_from_json("{"), FormatError);
  EXPECT_THROW(data_from_json(R"({"forms": []})"), FormatError);
  EXPECT_THROW(data_from_json(R"({"arity": 2, "forms": [{"coeffs": ["z1"]}]})"), FormatError);
  EXPECT_THROW(data_from_json(R"({"arity": 1, "forms": [{"coeffs": [3]}]})"), FormatError);
  EXPECT_THROW(data_from_json(R"({"arity": 1, "forms": [{"coeffs": ["z1"]}], "constant": [1, 2]})"), FormatError);
  EXPECT_THROW(data_from_json(R"({"arity": 1, "forms": [{"coeffs": ["z1 +"]}]})"), ParseError);
}

TEST(Serialize, FamilyRoundTrip) {
  const FamilyInput in{parse_expr("exp(z1)-z1^2", 1), parse_expr("(0.5+1i)*z1", 1)};
  const auto back = family_from_json(to_json(in));
  EXPECT_TRUE(structurally_equal(back.f, in.f));
  EXPECT_TRUE(structurally_equal(back.g, in.g));
  EXPECT_THROW(family_from_json(R"({"f": "z2", "g": "0"})"), ParseError);
}

TEST(Serialize, RelationRoundTrip) {
  const auto basis = PolyBasis::make(2, 3);
  const auto ker = kernel(build_mu(basis));
  for (const auto& r : ker.relations) {
    const auto back = relation_from_json(to_json(r));
    EXPECT_EQ(back.gamma, r.gamma);
    EXPECT_EQ(back.basis.monomials, r.basis.monomials);
  }
  QuadraticRelation big{PolyBasis::make(1, 1), {{ComplexRational(mpq_class("123456789012345678901234567890/7"), 1)}}};
  EXPECT_EQ(relation_from_json(to_json(big)).gamma, big.gamma);
  EXPECT_THROW(relation_from_json(R"({"m": 1, "n": 1, "gamma": [[[1, 0, 0, 1]]]})"), FormatError);
  EXPECT_THROW(relation_from_json(R"({"m": 1, "n": 2, "gamma": [[[1, 1, 0, 1]]]})"), FormatError);
}

}  // namespace
}  // namespace pluri

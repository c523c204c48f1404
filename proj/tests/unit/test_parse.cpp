#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "punip/error.hpp"
#include "punip/parse.hpp"

using namespace punip;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::filesystem::path(PUNIP_TEST_DATA) / name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> corpus_imports() { return {{"v1_lambda.pg", slurp("v1_lambda.pg")}}; }

ParseError parse_error_of(const std::string& text) {
  try {
    parse_document(text, corpus_imports());
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("none", 0, 0);
}

TEST(Parse, FieldHeader) {
  Field f = parse_field("GF(3)(l,m)");
  EXPECT_EQ(f->p, 3);
  EXPECT_EQ(f->header(), "GF(3)(l,m)");
  EXPECT_THROW(parse_field("GF(4)(l)"), Error);
  EXPECT_THROW(parse_field("GF(2)(l"), ParseError);
  EXPECT_THROW(parse_field("GF(2)(l) x"), ParseError);
}

TEST(Parse, Expressions) {
  Field f = parse_field("GF(2)(l,m)");
  RatFunc l = RatFunc::var(f, 0), m = RatFunc::var(f, 1), one(f, 1);
  EXPECT_EQ(parse_ratfunc(f, "l/(1+l)"), l / (one + l));
  EXPECT_EQ(parse_ratfunc(f, "(l+m)^2"), l * l + m * m);
  EXPECT_EQ(parse_ratfunc(f, "3*l - l"), RatFunc(f));
  PPoly rel = parse_relation(f, {"S", "S0"}, "-S + l*S^2 + S0^2");
  EXPECT_EQ(rel, -PPoly::var(f, 2, 0) + PPoly::var(f, 2, 0, 1).scaled(l) + PPoly::var(f, 2, 1, 1));
  EXPECT_EQ(parse_relation(f, {"S", "S0"}, "S = l*S^2 + S0^2"), rel);
  EXPECT_THROW(parse_ppoly(f, {"S", "S0"}, "S*S0"), ParseError);
  EXPECT_THROW(parse_ppoly(f, {"S"}, "S^3"), ParseError);
  // Division by zero inside an expression is reported with its position.
  EXPECT_THROW(parse_ratfunc(f, "1/(l+l)"), ParseError);
}

TEST(Parse, RelationRoundTrip) {
  Field f = parse_field("GF(2)(l)");
  std::vector<std::string> vars{"S", "S0"};
  PPoly rel = parse_relation(f, vars, "-S + l*S^2 + S0^2");
  EXPECT_EQ(parse_relation(f, vars, rel.to_string(vars)), rel);
}

TEST(Parse, CorpusRoundTrip) {
  for (const char* name : {"v1_lambda.pg", "u_ext.pg", "twisted.pg", "p3_group.pg"}) {
    Document d = parse_document(slurp(name), corpus_imports());
    std::string once = d.to_string();
    Document again = parse_document(once);
    EXPECT_EQ(again.to_string(), once) << name;
    ASSERT_EQ(again.groups.size(), d.groups.size()) << name;
    for (std::size_t i = 0; i < d.groups.size(); ++i) {
      EXPECT_EQ(again.groups[i].vars(), d.groups[i].vars()) << name;
      EXPECT_EQ(again.groups[i].relations(), d.groups[i].relations()) << name;
      for (std::size_t r = 0; r < d.groups[i].leads().size(); ++r) {
        EXPECT_EQ(again.groups[i].leads()[r].var, d.groups[i].leads()[r].var) << name;
        EXPECT_EQ(again.groups[i].leads()[r].power, d.groups[i].leads()[r].power) << name;
      }
    }
  }
}

TEST(Parse, LeadDesignation) {
  Document d = parse_document(slurp("v1_lambda.pg"));
  const Presentation& vm = d.group("Vm");
  EXPECT_FALSE(vm.lead_power(0));
  EXPECT_EQ(vm.lead_power(1), 1);
  EXPECT_EQ(vm.leads()[0].var, vm.var_index("T0"));
}

TEST(Parse, ImportsAndDelta) {
  Document d = parse_document(slurp("u_ext.pg"), corpus_imports());
  EXPECT_EQ(d.groups.size(), 3u);
  ASSERT_EQ(d.extensions.size(), 1u);
  const auto& decl = std::get<DeltaDecl>(d.extensions[0]);
  ConnectingExtension e = build_delta(d, decl);
  EXPECT_EQ(e.result.vars(), (std::vector<std::string>{"X0", "X1", "S", "S0"}));
  EXPECT_EQ(e.result.relations().size(), 2u);
  EXPECT_THROW(parse_document(slurp("u_ext.pg")), ParseError);
}

TEST(Parse, TwistedDecl) {
  Document d = parse_document(slurp("twisted.pg"));
  ASSERT_EQ(d.extensions.size(), 1u);
  TwistedExtension t = build_twisted(d, std::get<TwistedDecl>(d.extensions[0]));
  EXPECT_EQ(t.cocycle.size(), 4u);
  EXPECT_TRUE(associativity_check(t));
}

TEST(Parse, ErrorsCarryPositions) {
  ParseError na = parse_error_of(slurp("bad_nonadditive.pg"));
  EXPECT_EQ(na.line(), 5u);
  EXPECT_EQ(na.column(), 7u);
  ParseError und = parse_error_of(slurp("bad_undeclared.pg"));
  EXPECT_EQ(und.line(), 5u);
  EXPECT_NE(std::string(und.what()).find("5:"), std::string::npos);

  ParseError dup = parse_error_of("field GF(2)(l);\ngroup A { vars x; rel x; }\ngroup A { vars y; rel y; }\n");
  EXPECT_EQ(dup.line(), 3u);
  ParseError kw = parse_error_of("field GF(2)(l);\ngrup A { vars x; }\n");
  EXPECT_EQ(kw.line(), 2u);
  EXPECT_EQ(kw.column(), 1u);
  ParseError imp = parse_error_of("field GF(2)(l);\nimport \"missing.pg\";\n");
  EXPECT_EQ(imp.line(), 2u);
  ParseError wrong = parse_error_of("field GF(3)(l,m);\nimport \"v1_lambda.pg\";\n");
  EXPECT_NE(std::string(wrong.what()).find("GF(2)(l,m)"), std::string::npos);
  ParseError arity = parse_error_of(
      "field GF(2)(l);\ngroup G { vars x; rel x^2 - x; }\ngroup W { vars z, w; rel z; rel w; }\n"
      "extension E twisted { base G; fiber W; cocycle (x*x'); }\n");
  EXPECT_EQ(arity.line(), 4u);
  EXPECT_THROW(parse_document("field GF(2)(l);\ngroup A { vars x; rel x + ; }"), ParseError);
  EXPECT_THROW(parse_document("field GF(2)(l);\ngroup A { vars x; rel x; lead x^3; }"), ParseError);
}

}  // namespace

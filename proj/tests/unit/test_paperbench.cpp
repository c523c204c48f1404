#include <gtest/gtest.h>

#include "json.hpp"
#include "punip/cases.hpp"
#include "punip/error.hpp"

using namespace punip;

namespace {

bool allowed(const std::string& id, int p) {
  if (id == "example-3-6") return p != 2;
  if (id == "remark-3-7") return p == 2;
  return true;
}

std::string failures(const Certificate& c) {
  std::string out = c.message;
  for (const auto& ch : c.checks)
    if (!ch.ok) out += "\n  " + ch.name + ": " + ch.detail;
  for (const auto& s : c.solves)
    if (!s.forced_zero()) out += "\n  " + s.label + ": " + s.status;
  return out;
}

class EveryCase : public ::testing::TestWithParam<std::tuple<std::string, int>> {};

TEST_P(EveryCase, SucceedsAtDefaults) {
  auto [id, p] = GetParam();
  CaseParams params;
  params.p = p;
  Certificate c = run_case(id, resolve_params(id, params));
  EXPECT_TRUE(c.success()) << id << " p=" << p << ": " << to_string(c.status) << failures(c);
  EXPECT_FALSE(c.checks.empty() && c.solves.empty()) << id;
  for (const auto& s : c.solves) EXPECT_FALSE(s.stability.empty()) << s.label;
}

std::vector<std::tuple<std::string, int>> applicable() {
  std::vector<std::tuple<std::string, int>> out;
  for (const auto& info : case_registry())
    for (int p : {2, 3})
      if (allowed(info.id, p)) out.emplace_back(info.id, p);
  return out;
}

std::string param_name(const ::testing::TestParamInfo<EveryCase::ParamType>& info) {
  std::string s = std::get<0>(info.param) + "_p" + std::to_string(std::get<1>(info.param));
  for (auto& ch : s)
    if (ch == '-') ch = '_';
  return s;
}

INSTANTIATE_TEST_SUITE_P(Registry, EveryCase, ::testing::ValuesIn(applicable()), param_name);

TEST(Cases, HigherN) {
  for (const char* id : {"lemma-3-2", "fm-surjection", "structure-lemma-3-4"}) {
    CaseParams params;
    params.n = 2;
    Certificate c = run_case(id, resolve_params(id, params));
    EXPECT_TRUE(c.success()) << id << failures(c);
  }
  CaseParams p3;
  p3.p = 3;
  p3.n = 2;
  EXPECT_TRUE(run_case("example-3-6", resolve_params("example-3-6", p3)).success());
}

TEST(Cases, CertificateIsDeterministic) {
  CaseParams params;
  params.p = 3;
  CaseParams r = resolve_params("example-3-5", params);
  std::string a = certificate_json(run_case("example-3-5", r), "h");
  std::string b = certificate_json(run_case("example-3-5", r), "h");
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["schema"], "punip.certificate/1");
  EXPECT_EQ(j["case"], "example-3-5");
  EXPECT_EQ(j["params"]["p"], 3);
  EXPECT_FALSE(j["solves"].empty());
  EXPECT_EQ(canonical_input("example-3-5", r), canonical_input("example-3-5", r));
  CaseParams other = r;
  other.coeff_deg += 1;
  EXPECT_NE(canonical_input("example-3-5", r), canonical_input("example-3-5", other));
}

TEST(Cases, Refusals) {
  CaseParams p2;
  EXPECT_THROW(resolve_params("example-3-6", p2), DomainError);
  CaseParams p3;
  p3.p = 3;
  EXPECT_THROW(resolve_params("remark-3-7", p3), DomainError);
  CaseParams mismatch;
  mismatch.p = 3;
  mismatch.field = "GF(2)(l,m)";
  EXPECT_THROW(resolve_params("example-3-5", mismatch), DomainError);
  CaseParams few;
  few.field = "GF(2)(l)";
  EXPECT_THROW(resolve_params("example-5-7-image", few), DomainError);
  EXPECT_THROW(resolve_params("no-such-case", CaseParams{}), DomainError);
  CaseParams big;
  big.p = 17;
  EXPECT_THROW(resolve_params("lemma-3-2", big), DomainError);
  CaseParams n4;
  n4.n = 4;
  EXPECT_THROW(resolve_params("lemma-3-2", n4), DomainError);
  CaseParams fm3;
  fm3.n = 3;
  EXPECT_THROW(resolve_params("fm-surjection", fm3), DomainError);
}

TEST(Cases, OverflowIsAStatus) {
  CaseParams params;
  params.p = 3;
  params.max_degree = 4;
  CaseParams r = resolve_params("example-3-5", params);
  Certificate c = run_case("example-3-5", r);
  EXPECT_EQ(c.status, Status::Overflow) << to_string(c.status) << " " << c.message;
  EXPECT_FALSE(c.success());
}

}  // namespace

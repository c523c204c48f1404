// punip: command line front end for the case registry and the core operations.

#include <openssl/evp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "punip/cases.hpp"
#include "punip/error.hpp"
#include "punip/parse.hpp"

using json = nlohmann::ordered_json;
using namespace punip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFailed = 3;
constexpr int kExitOverflow = 4;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads every `import "x";` reachable from `text`, resolving names against `dir`.
void collect_imports(const std::string& text, const std::filesystem::path& dir,
                     std::map<std::string, std::string>& out) {
  static const std::regex re(R"re(import\s+"([^"]+)")re");
  for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it) {
    std::string name = (*it)[1];
    if (out.count(name)) continue;
    out[name] = read_file((dir / name).string());
    collect_imports(out[name], dir, out);
  }
}

Document load_document(const std::string& path) {
  std::string text = read_file(path);
  std::map<std::string, std::string> imports;
  collect_imports(text, std::filesystem::path(path).parent_path(), imports);
  return parse_document(text, imports);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

void emit(const json& j, const std::string& path) {
  std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

struct Common {
  int p = 2;
  int n = 1;
  std::string field;
  int coeff_deg = 4;
  std::optional<int> max_power;
  std::string denominator;
  std::string json_out;
  unsigned jobs = 1;
  int max_degree = 64;
  std::vector<CLI::Option*> p_options;

  bool p_given() const {
    for (auto* o : p_options)
      if (o->count()) return true;
    return false;
  }
  // Without --p the characteristic is taken from --field.
  void settle_p() {
    if (!field.empty() && !p_given()) p = parse_field(field, max_degree)->p;
  }
};

void add_common(CLI::App* app, Common& c) {
  c.p_options.push_back(app->add_option("--p", c.p, "characteristic")->check(CLI::Range(2, 13)));
  app->add_option("--n", c.n, "level n of V_{n,alpha}");
  app->add_option("--field", c.field, "field header, e.g. GF(3)(l,m)");
  app->add_option("--coeff-deg", c.coeff_deg, "total degree of the coefficient basis");
  app->add_option("--max-power", c.max_power, "largest Frobenius power in the ansatz");
  app->add_option("--denominator", c.denominator, "common denominator of the coefficient basis");
  app->add_option("--json", c.json_out, "write JSON to this file ('-' for stdout)");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 64u));
  app->add_option("--max-degree", c.max_degree, "degree bound for field elements")->check(CLI::Range(8, 4096));
}

Field field_of(const Common& c, const std::string& fallback_vars = "l,m") {
  std::string header = c.field.empty() ? "GF(" + std::to_string(c.p) + ")(" + fallback_vars + ")" : c.field;
  Field f = parse_field(header, c.max_degree);
  if (f->p != c.p)
    throw DomainError("--field " + c.field + " disagrees with --p " + std::to_string(c.p));
  return f;
}

std::optional<MPoly> denominator_of(const Common& c, const Field& f) {
  if (c.denominator.empty()) return std::nullopt;
  RatFunc d = parse_ratfunc(f, c.denominator);
  if (d.is_zero() || !d.is_polynomial()) throw DomainError("--denominator must be a nonzero polynomial");
  return d.num();
}

std::string key_string(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

// ---------------------------------------------------------------- verify

int exit_for(Status s) {
  switch (s) {
    case Status::Verified:
    case Status::ForcedZeroWithinAnsatz:
      return kExitOk;
    case Status::Overflow:
      return kExitOverflow;
    case Status::Failed:
      return kExitFailed;
  }
  return kExitFailed;
}

int cmd_verify(const std::string& which, const Common& c) {
  CaseParams base;
  base.p = c.p;
  base.n = c.n;
  base.coeff_deg = c.coeff_deg;
  base.max_power = c.max_power;
  base.field = c.field;
  base.denominator = c.denominator;
  base.max_degree = c.max_degree;

  std::vector<std::string> ids;
  if (which == "all") {
    for (const auto& ci : case_registry()) ids.push_back(ci.id);
  } else {
    ids.push_back(which);
  }

  struct Slot {
    std::optional<Certificate> cert;
    std::string skipped;
    std::string hash;
  };
  std::vector<Slot> slots(ids.size());
  // A single named case refuses loudly; `all` skips cases outside their hypotheses.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    try {
      CaseParams resolved = resolve_params(ids[i], base);
      slots[i].hash = sha256_hex(canonical_input(ids[i], resolved));
    } catch (const DomainError& e) {
      if (which != "all") throw;
      slots[i].skipped = e.what();
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < ids.size();)
      if (slots[i].skipped.empty()) slots[i].cert = run_case(ids[i], base);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(c.jobs, ids.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  json certs = json::array();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Slot& s = slots[i];
    if (!s.cert) {
      std::cout << ids[i] << ": SKIPPED (" << s.skipped << ")\n";
      continue;
    }
    const Certificate& cert = *s.cert;
    std::cout << ids[i] << ": " << to_string(cert.status);
    if (!cert.message.empty()) std::cout << " (" << cert.message << ")";
    std::cout << "\n";
    certs.push_back(json::parse(certificate_json(cert, s.hash)));
    code = std::max(code, exit_for(cert.status));
  }
  if (!c.json_out.empty()) {
    if (which == "all")
      emit(json{{"schema", "punip.run/1"}, {"certificates", certs}}, c.json_out);
    else
      emit(certs.front(), c.json_out);
  }
  return code;
}

// ---------------------------------------------------------------- hom / points

int cmd_hom(const std::string& file, const std::string& src, const std::string& tgt, const std::string& functional,
            const Common& c) {
  Document d = load_document(file);
  const Presentation& S = d.group(src);
  const Presentation& T = d.group(tgt);
  Ansatz a{c.max_power.value_or(1), MonomialBasis::total_degree(d.field, c.coeff_deg, denominator_of(c, d.field))};
  HomSpace hs = hom_space(S, T, a);
  json basis = json::array();
  for (const auto& v : hs.space.basis) {
    HomTuple t = hs.decode(v);
    json coords = json::object();
    for (std::size_t i = 0; i < T.arity(); ++i) coords[T.vars()[i]] = t.coords[i].to_string(S.vars());
    basis.push_back(coords);
  }
  json out{{"src", src},
           {"tgt", tgt},
           {"ansatz", a.describe()},
           {"unknowns", hs.unknowns()},
           {"matrix_shape", {hs.space.equations, hs.unknowns()}},
           {"rank", hs.space.rank},
           {"dim", hs.space.dim()},
           {"saturates_boundary", hs.saturates_boundary()},
           {"basis", basis}};
  if (!functional.empty()) {
    auto parts = split(functional, ',');
    Functional phi{functional, std::nullopt, std::nullopt, std::nullopt};
    if (parts.size() > 3) throw DomainError("--functional takes coord[,src_var[,power]]");
    auto index = [&](const Presentation& P, const std::string& name) {
      int i = P.var_index(name);
      if (i < 0) throw DomainError("unknown variable " + name + " in " + P.name());
      return static_cast<std::size_t>(i);
    };
    phi.tgt_coord = index(T, parts[0]);
    if (parts.size() > 1) phi.src_var = index(S, parts[1]);
    if (parts.size() > 2) phi.power = std::stoi(parts[2]);
    ForcedZeroResult r = functional_forced_zero(hs, phi);
    out["functional"] = {{"label", functional}, {"status", r.status()}, {"selected_unknowns", r.selected_unknowns}};
    if (r.witness) out["functional"]["witness"] = r.witness->to_string();
  }
  emit(out, c.json_out);
  return kExitOk;
}

int cmd_points(const std::string& file, const std::string& group, const Common& c) {
  Document d = load_document(file);
  const Presentation& G = d.group(group);
  MonomialBasis B = MonomialBasis::total_degree(d.field, c.coeff_deg, denominator_of(c, d.field));
  PointSpace ps = points(G, B);
  json basis = json::array();
  for (const auto& pt : ps.basis_points) {
    json row = json::object();
    for (std::size_t i = 0; i < G.arity(); ++i) row[G.vars()[i]] = pt[i].to_string();
    basis.push_back(row);
  }
  emit(json{{"group", group}, {"truncation", B.description}, {"dim", ps.dim()}, {"basis", basis}}, c.json_out);
  return kExitOk;
}

// ---------------------------------------------------------------- field utilities

int cmd_frobdecomp(const std::string& expr, int level, const Common& c) {
  Field f = field_of(c);
  FrobDecomp fd = frobenius_decompose(parse_ratfunc(f, expr), level);
  json out = json::object();
  for (const auto& [k, g] : fd.parts) out[key_string(k)] = g.to_string();
  emit(out, c.json_out);
  return kExitOk;
}

int cmd_independent(const std::string& exprs, const Common& c) {
  Field f = field_of(c);
  std::vector<RatFunc> elems;
  for (const auto& e : split(exprs, ';')) elems.push_back(parse_ratfunc(f, e));
  IndependenceResult r = p_independent(elems);
  json out{{"field", f->header()}, {"independent", r.independent}, {"rank", r.rank}};
  if (!r.independent) {
    json rel = json::array();
    for (std::size_t k = 0; k < r.relation.size(); ++k)
      rel.push_back({{"product", r.products[k]}, {"coefficient", r.relation[k].to_string()}});
    out["relation"] = rel;
  }
  emit(out, c.json_out);
  return kExitOk;
}

int cmd_member(const std::string& expr, const std::string& gens, const Common& c) {
  Field f = field_of(c);
  std::vector<RatFunc> g;
  for (const auto& e : split(gens, ';')) g.push_back(parse_ratfunc(f, e));
  auto r = kp_module_membership(parse_ratfunc(f, expr), g);
  json out{{"field", f->header()}, {"member", r.has_value()}};
  if (r) {
    json coeffs = json::array();
    for (const auto& a : *r) coeffs.push_back(a.to_string());
    out["coefficients"] = coeffs;
  }
  emit(out, c.json_out);
  return kExitOk;
}

// ---------------------------------------------------------------- parse

int cmd_parse(const std::string& file, const std::string& rel, const std::string& vars, const Common& c) {
  if (!rel.empty()) {
    Field f = field_of(c, "l");
    auto names = split(vars, ',');
    PPoly r = parse_relation(f, names, rel);
    std::string text = r.to_string(names) + " = 0";
    bool round_trip = parse_relation(f, names, text) == r;
    if (c.json_out.empty())
      std::cout << text << "\n";
    else
      emit(json{{"relation", text}, {"round_trip", round_trip}}, c.json_out);
    return round_trip ? kExitOk : kExitFailed;
  }
  if (file.empty()) throw DomainError("parse needs a FILE or --rel");
  Document d = load_document(file);
  std::string text = d.to_string();
  bool round_trip = parse_document(text).to_string() == text;
  if (c.json_out.empty()) {
    std::cout << text;
  } else {
    json groups = json::array();
    for (const auto& g : d.groups) groups.push_back(g.name());
    json exts = json::array();
    for (const auto& e : d.extensions) exts.push_back(extension_to_string(d, e));
    emit(json{{"field", d.field->header()},
              {"groups", groups},
              {"extensions", exts},
              {"canonical", text},
              {"round_trip", round_trip}},
         c.json_out);
  }
  return round_trip ? kExitOk : kExitFailed;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "punip: " << e.what() << "\n";
    return kExitInput;
  } catch (const OverflowError& e) {
    std::cerr << "punip: overflow: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const DomainError& e) {
    std::cerr << "punip: " << e.what() << "\n";
    return kExitInput;
  } catch (const DivisionByZero& e) {
    std::cerr << "punip: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "punip: error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-polynomials and unipotent group presentations over F_p(t1..tr)"};
  app.require_subcommand(1);
  Common c;

  std::string which;
  auto* verify = app.add_subcommand("verify", "run a registry case (or 'all') and emit a certificate");
  verify->add_option("case", which, "case id or 'all'")->required();
  add_common(verify, c);
  auto* list = app.add_subcommand("list", "list the registry");

  std::string file, src, tgt, functional, group;
  auto* hom = app.add_subcommand("hom", "homomorphisms between two groups of a file within an ansatz");
  hom->add_option("file", file)->required();
  hom->add_option("--src", src)->required();
  hom->add_option("--tgt", tgt)->required();
  hom->add_option("--functional", functional, "coord[,src_var[,power]]: decide whether it is forced to zero");
  add_common(hom, c);

  auto* pts = app.add_subcommand("points", "points of a group with coordinates in a truncation");
  pts->add_option("file", file)->required();
  pts->add_option("--group", group)->required();
  add_common(pts, c);

  std::string expr, exprs, gens;
  int level = 1;
  auto* frob = app.add_subcommand("frobdecomp", "Frobenius decomposition over the standard p-basis");
  frob->add_option("--expr", expr)->required();
  frob->add_option("--level", level)->check(CLI::Range(1, 4));
  add_common(frob, c);

  auto* indep = app.add_subcommand("independent", "p-independence of ';'-separated elements");
  indep->add_option("--exprs", exprs)->required();
  add_common(indep, c);

  auto* member = app.add_subcommand("member", "membership of an element in the K^p-span of generators");
  member->add_option("--expr", expr)->required();
  member->add_option("--gens", gens)->required();
  add_common(member, c);

  std::string rel, vars;
  auto* parse = app.add_subcommand("parse", "parse a group file (or one relation) and print it canonically");
  parse->add_option("file", file);
  parse->add_option("--rel", rel, "a single relation 'lhs = rhs'");
  parse->add_option("--vars", vars, "comma-separated variables for --rel");
  add_common(parse, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*list) {
    for (const auto& ci : case_registry())
      std::cout << ci.id << "  " << ci.summary << (ci.hypotheses.empty() ? "" : "  [" + ci.hypotheses + "]") << "\n";
    return kExitOk;
  }
  return guarded([&] {
    c.settle_p();
    if (*verify) return cmd_verify(which, c);
    if (*hom) return cmd_hom(file, src, tgt, functional, c);
    if (*pts) return cmd_points(file, group, c);
    if (*frob) return cmd_frobdecomp(expr, level, c);
    if (*indep) return cmd_independent(exprs, c);
    if (*member) return cmd_member(expr, gens, c);
    return cmd_parse(file, rel, vars, c);
  });
}

#include "fsrecon/json_io.hpp"

#include <fstream>
#include <sstream>

#include "fsrecon/error.hpp"

namespace fsrecon::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      bad("not a decimal integer: \"" + s + "\"");
    return BigInt(s);
  }
  bad("expected an integer (number or decimal string), got " + j.dump());
}

std::int64_t int_from_json(const Json& j) {
  const BigInt v = big_from_json(j);
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    bad("integer out of 64-bit range: " + v.str());
  return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> int_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of integers, got " + j.dump());
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

Json elements_json(const std::vector<GroupElement>& v) {
  Json a = Json::array();
  for (const auto& g : v) a.push_back(to_json(g));
  return a;
}

}  // namespace

Json to_json(const GroupSpec& g) {
  return Json{{"torsion", g.torsion()}, {"free_rank", g.free_rank()}};
}

GroupSpec group_from_json(const Json& j) {
  if (!j.is_object()) bad("group must be an object {\"torsion\": [...], \"free_rank\": r}");
  std::vector<std::int64_t> torsion = j.contains("torsion") ? int_list(j.at("torsion")) : std::vector<std::int64_t>{};
  const std::int64_t rank = j.contains("free_rank") ? int_from_json(j.at("free_rank")) : 0;
  if (rank < 0 || rank > 64) bad("free_rank out of range");
  return make_group(std::move(torsion), static_cast<int>(rank));
}

Json to_json(const GroupElement& g) { return Json(g.coords); }

GroupElement element_from_json(const GroupSpec& group, const Json& j) {
  std::vector<std::int64_t> raw = j.is_array() ? int_list(j) : std::vector<std::int64_t>{int_from_json(j)};
  if (raw.size() != group.dimension())
    bad("element " + j.dump() + " has " + std::to_string(raw.size()) + " coordinates, group needs " +
        std::to_string(group.dimension()));
  return group.element(std::move(raw));
}

Json to_json(const IntFunction& f) {
  Json entries = Json::array();
  for (const auto& [g, v] : f.entries()) entries.push_back(Json::array({to_json(g), std::to_string(v)}));
  return Json{{"group", to_json(f.group())}, {"entries", std::move(entries)}};
}

IntFunction int_function_from_json(const Json& j, const GroupSpec& fallback) {
  if (!j.is_object()) bad("function must be an object with \"entries\"");
  const GroupSpec group = j.contains("group") ? group_from_json(j.at("group")) : fallback;
  IntFunction f(group);
  for (const auto& e : field(j, "entries")) {
    if (e.is_array() && e.size() == 2) f.add(element_from_json(group, e[0]), int_from_json(e[1]));
    else f.add(element_from_json(group, e), 1);  // bare element: one copy
  }
  return f;
}

IntFunction int_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group")) bad("function document needs a \"group\"");
  return int_function_from_json(j, GroupSpec{});
}

Json to_json(const FSMultiset& s) {
  Json entries = Json::array();
  for (const auto& [g, m] : s.entries()) entries.push_back(Json::array({to_json(g), m.str()}));
  return Json{{"group", to_json(s.group())}, {"total", s.total().str()}, {"entries", std::move(entries)}};
}

FSMultiset fs_multiset_from_json(const Json& j) {
  const GroupSpec group = group_from_json(field(j, "group"));
  FSMultiset s(group);
  for (const auto& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 2) bad("FS entry must be [element, multiplicity]");
    s.add(element_from_json(group, e[0]), big_from_json(e[1]));
  }
  if (j.contains("total") && big_from_json(j.at("total")) != s.total()) bad("FS total does not match the entries");
  return s;
}

Json to_json(const Move& m) {
  if (const auto* f = std::get_if<SignFlip>(&m)) return Json{{"type", "sign_flip"}, {"g", to_json(f->g)}};
  const auto& s = std::get<CosetSwap>(m);
  return Json{{"type", "coset_swap"},
              {"n", s.n},
              {"iota", to_json(s.iota.target_of_one)},
              {"alpha", s.alpha},
              {"beta", s.beta}};
}

Json to_json(const MoveCertificate& c) {
  Json steps = Json::array();
  for (const auto& st : c.steps) {
    Json j = to_json(st.move);
    j["shift"] = to_json(st.predicted_shift);
    steps.push_back(std::move(j));
  }
  return Json{{"steps", std::move(steps)}, {"total_shift", to_json(c.total_shift)}};
}

MoveCertificate certificate_from_json(const GroupSpec& group, const Json& j) {
  MoveCertificate c;
  for (const auto& st : field(j, "steps")) {
    const auto type = field(st, "type");
    if (!type.is_string()) bad("step type must be a string");
    Move m;
    if (type == "sign_flip") {
      m = SignFlip{element_from_json(group, field(st, "g"))};
    } else if (type == "coset_swap") {
      const std::int64_t n = int_from_json(field(st, "n"));
      m = CosetSwap{n, Embedding{element_from_json(group, field(st, "iota")), n}, int_from_json(field(st, "alpha")),
                    int_from_json(field(st, "beta"))};
    } else {
      bad("unknown step type " + type.dump());
    }
    c.steps.push_back(MoveStep{std::move(m), element_from_json(group, field(st, "shift"))});
  }
  c.total_shift = element_from_json(group, field(j, "total_shift"));
  return c;
}

Json to_json(const Homomorphism& h) {
  return Json{{"source", to_json(h.source())},
              {"target", to_json(h.target())},
              {"images", elements_json(h.generator_images())}};
}

Homomorphism homomorphism_from_json(const Json& j) {
  const GroupSpec source = group_from_json(field(j, "source"));
  const GroupSpec target = group_from_json(field(j, "target"));
  std::vector<GroupElement> images;
  for (const auto& e : field(j, "images")) images.push_back(element_from_json(target, e));
  return Homomorphism::make(source, target, std::move(images));
}

Json to_json(const USet& u) {
  return Json{{"n", u.modulus}, {"k", u.k}, {"sign", u.sign}, {"elements", u.elements}};
}

Json to_json(const VWitness& w) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DoublingViolation>)
          return Json{{"type", "doubling"}, {"g", to_json(v.g)}, {"pair_sum", v.pair_sum}, {"doubled_sum", v.doubled_sum}};
        else if constexpr (std::is_same_v<T, SubgroupSumViolation>)
          return Json{{"type", "subgroup_sum"}, {"subgroup", elements_json(v.subgroup)}, {"sum", v.sum}};
        else
          return Json{{"type", "infinite_order_pair"}, {"g", to_json(v.g)}, {"pair_sum", v.pair_sum}};
      },
      w);
}

Json to_json(const VMembershipReport& r) {
  Json j{{"member", r.member}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const RankReport& r) {
  Json j{{"n", r.n}, {"closed_form", r.closed_form}, {"tilde_closed_form", r.tilde_closed_form}};
  if (r.snf_rank) j["snf_rank"] = *r.snf_rank;
  if (r.generator_count) j["generator_count"] = *r.generator_count;
  return j;
}

Json to_json(const CertificateReport& r) {
  return Json{{"ok", r.ok},
              {"recomputed_total_shift", to_json(r.recomputed_total_shift)},
              {"fs_checked_steps", r.fs_checked_steps},
              {"fs_replay_skipped", r.fs_replay_skipped}};
}

Json to_json(const EquivalenceReport& r) {
  Json j;
  j["shift_equivalent"] = r.shift_equivalent;
  j["shift"] = r.shift ? to_json(*r.shift) : Json(nullptr);
  j["no_shift_equal"] = r.no_shift_equal;
  j["cond_i"] = r.cond_i ? elements_json(*r.cond_i) : Json(nullptr);
  Json ii = to_json(r.cond_ii);
  ii["weighted_difference"] = to_json(r.weighted_difference);
  j["cond_ii"] = std::move(ii);
  j["certificate"] = r.cond_iii ? to_json(*r.cond_iii) : Json(nullptr);
  j["consistent"] = r.consistent;
  return j;
}

Json to_json(const CycInt& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs) coeffs.push_back(x.str());
  return Json{{"d", c.d}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const FourierClaim& c) {
  Json per = Json::array();
  for (const auto& d : c.per_divisor)
    per.push_back(Json{{"d", d.d}, {"holds", d.holds}, {"lhs", to_json(d.lhs)["coeffs"]}, {"rhs", to_json(d.rhs)["coeffs"]}});
  return Json{{"n", c.n}, {"s", c.s}, {"holds", c.holds()}, {"per_divisor", std::move(per)}};
}

Json to_json(const EquidistributionReport& r) {
  Json j{{"uniform", r.uniform}, {"n", r.n}, {"order_of_two", r.order_of_two}};
  if (r.baseline) j["baseline"] = to_json(*r.baseline);
  if (r.membership) j["membership"] = to_json(*r.membership);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

Json to_json(const FiberScanReport& r, bool include_timing) {
  Json disc = Json::array();
  for (const auto& d : r.discrepancies)
    disc.push_back(Json{{"kind", d.kind}, {"detail", d.detail}, {"a", to_json(d.a)}, {"b", to_json(d.b)}});
  Json j{{"multisets", r.multisets},
         {"planned_pairs", r.planned_pairs},
         {"pairs_tested", r.pairs_tested},
         {"equivalent_pairs", r.equivalent_pairs},
         {"classes", r.classes},
         {"certificates_issued", r.certificates_issued},
         {"fourier_checked", r.fourier_checked},
         {"sum_rule_checked", r.sum_rule_checked},
         {"discrepancies", std::move(disc)}};
  if (!r.pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
      Json a = Json::array();
      Json b = Json::array();
      for (const auto& g : p.a.elements()) a.push_back(to_json(g));
      for (const auto& g : p.b.elements()) b.push_back(to_json(g));
      pairs.push_back(Json{{"a", std::move(a)}, {"b", std::move(b)}, {"shift", to_json(p.shift)}});
    }
    j["pairs"] = std::move(pairs);
  }
  if (include_timing) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

Json to_json(const RadonData& d) {
  Json values = Json::array();
  const std::int64_t homs = d.shape.size();
  for (std::int64_t p = 0; p < homs; ++p)
    for (std::int64_t c = 0; c < d.shape.n; ++c) values.push_back(Json::array({d.shape.coords(p), c, d.at(p, c)}));
  return Json{{"n", d.shape.n}, {"r", d.shape.r}, {"values", std::move(values)}};
}

RadonData radon_from_json(const Json& j) {
  const std::int64_t n = int_from_json(field(j, "n"));
  const std::int64_t r = int_from_json(field(j, "r"));
  if (n < 1 || r < 1 || r > 16) bad("Radon data needs n >= 1 and 1 <= r <= 16");
  RadonData d{TorusShape{n, static_cast<int>(r)}, {}};
  const std::int64_t homs = d.shape.size();
  d.values.assign(static_cast<std::size_t>(checked_mul(homs, n)), 0);
  std::vector<bool> seen(d.values.size(), false);
  for (const auto& e : field(j, "values")) {
    if (!e.is_array() || e.size() != 3) bad("Radon entry must be [[psi...], c, value]");
    const auto psi = int_list(e[0]);
    if (static_cast<std::int64_t>(psi.size()) != r) bad("homomorphism vector has the wrong length");
    const auto idx = static_cast<std::size_t>(d.shape.index(psi) * n + mod_reduce(int_from_json(e[1]), n));
    if (seen[idx]) bad("duplicate Radon entry " + e.dump());
    seen[idx] = true;
    d.values[idx] = int_from_json(e[2]);
  }
  return d;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("JSON parse error: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace fsrecon::json

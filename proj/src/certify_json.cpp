#include <json.hpp>

#include "kvar/certify.hpp"

namespace kvar {

namespace {

using nlohmann::json;

const char* kind_name(GoalKind k) {
  switch (k) {
    case GoalKind::Hypersurface: return "hypersurface";
    case GoalKind::System: return "system";
    case GoalKind::Union: return "union";
  }
  return "?";
}

GoalKind kind_from_name(const std::string& s) {
  if (s == "hypersurface") return GoalKind::Hypersurface;
  if (s == "system") return GoalKind::System;
  if (s == "union") return GoalKind::Union;
  fail(Errc::BadInput, "unknown goal kind: " + s);
}

json node_to_json(const CertNode& node) {
  json j;
  j["kind"] = kind_name(node.goal.kind);
  j["n"] = node.goal.n;
  json polys = json::array();
  for (const MPoly& f : node.goal.polys) polys.push_back(f.str());
  j["polys"] = polys;
  j["rule"] = rule_name(node.rule);
  j["residue"] = node.residue;
  j["trusted"] = node.trusted;
  if (node.exact_class) j["exact_class"] = node.exact_class->str();
  if (node.var) j["var"] = *node.var;
  if (node.permutation) j["permutation"] = *node.permutation;
  if (node.f_low) j["f_low"] = node.f_low->str();
  if (node.f_high) j["f_high"] = node.f_high->str();
  json children = json::array();
  for (const auto& c : node.children) children.push_back(node_to_json(*c));
  j["children"] = children;
  return j;
}

std::unique_ptr<CertNode> node_from_json(const json& j) {
  auto node = std::make_unique<CertNode>();
  node->goal.kind = kind_from_name(j.at("kind").get<std::string>());
  node->goal.n = j.at("n").get<int>();
  if (node->goal.n < 0) fail(Errc::BadInput, "negative ambient dimension in certificate");
  int nvars = node->goal.n + 1;
  for (const auto& s : j.at("polys"))
    node->goal.polys.push_back(poly_parse(s.get<std::string>(), nvars));
  if (node->goal.polys.empty()) fail(Errc::BadInput, "certificate node without polynomials");
  if (node->goal.kind == GoalKind::Hypersurface && node->goal.polys.size() != 1)
    fail(Errc::BadInput, "hypersurface goal must carry exactly one polynomial");
  node->rule = rule_from_name(j.at("rule").get<std::string>());
  node->residue = j.at("residue").get<int64_t>();
  node->trusted = j.value("trusted", false);
  if (j.contains("exact_class"))
    node->exact_class = lpoly_parse(j.at("exact_class").get<std::string>());
  if (j.contains("var")) node->var = j.at("var").get<int>();
  if (j.contains("permutation"))
    node->permutation = j.at("permutation").get<std::vector<int>>();
  // SpecialForm parts live in the child's coordinates (one variable fewer)
  if (j.contains("f_low")) node->f_low = poly_parse(j.at("f_low").get<std::string>(), nvars - 1);
  if (j.contains("f_high"))
    node->f_high = poly_parse(j.at("f_high").get<std::string>(), nvars - 1);
  for (const auto& c : j.at("children")) node->children.push_back(node_from_json(c));
  return node;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert, int indent) {
  json j;
  j["format"] = "kvar-certificate";
  j["version"] = 1;
  j["root"] = node_to_json(*cert.root);
  return j.dump(indent) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadInput, std::string("certificate JSON parse error: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "kvar-certificate")
      fail(Errc::BadInput, "not a certificate document");
    Certificate cert;
    cert.root = node_from_json(j.at("root"));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadInput, std::string("malformed certificate document: ") + e.what());
  }
}

}  // namespace kvar

// Scenario files: a connection, optional volume form, tagged candidate objects
// and a list of named checks, all in UTF-8 JSON with polynomial-string entries.

#pragma once

#include <json.hpp>

#include "pwlab/solutions.hpp"

namespace pwlab {

enum class CandidateKind {
  Solution,         // one of the six base solution kinds
  Scale,            // positive scale on M for covariance / invariance checks
  EinsteinScale,    // density on the total space for the Einstein checks
  ConformalKilling, // vector field on the total space, conformal mode
  Killing,          // vector field on the total space, metric mode
  WalkerTheta,      // symmetric Theta_AB(x, p) for the recovery check
  Upsilon,          // one-form on M for the invariance checks
};

struct Candidate {
  CandidateKind kind;
  std::optional<SolKind> solkind;  // when kind == Solution
  std::string name;
  TensorField data;        // shaped per kind
  Scalar scalar;           // for Scale / EinsteinScale
  bool expect_fail = false;
  bool affine = false;             // bivectors: also exercise the metric lift
  std::string expect_rejection;    // WalkerTheta: "", "accept", or a condition name
};

struct ScenarioOptions {
  int degree_bound = 3;
  int jobs = 1;
  Scalar k_coefficient = Scalar(3);  // used by the decomposition round trip
};

struct Scenario {
  std::string name;
  AffineConnection connection;
  std::vector<Candidate> candidates;
  std::vector<std::string> checks;  // resolved later; empty = default battery
  ScenarioOptions options;
};

namespace detail {

inline Scalar parse_component(const std::string& src, const Chart& chart,
                              const std::string& where) {
  try {
    return parse_scalar(src, chart);
  } catch (const ParseError& e) {
    throw Error(where + ": " + e.what());
  }
}

}  // namespace detail

inline Scenario parse_scenario_json(const nlohmann::json& j) {
  Scenario sc;
  if (!j.is_object()) throw Error("scenario: top level must be an object");
  sc.name = j.value("name", std::string("unnamed"));
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw Error("scenario: missing integer dimension 'n'");
  int n = j["n"].get<int>();
  if (n < 2 || n > 4) throw Error("scenario: dimension must satisfy 2 <= n <= 4");
  std::vector<std::string> coords;
  if (j.contains("coordinates")) {
    for (const auto& c : j["coordinates"]) coords.push_back(c.get<std::string>());
    if (static_cast<int>(coords.size()) != n)
      throw Error("scenario: expected " + std::to_string(n) + " coordinate names");
  }
  ChartPtr chart = Chart::make(n, coords);
  const Chart& ch = *chart;

  TensorField gamma(chart, {Space::MDown, Space::MUp, Space::MDown});
  if (j.contains("connection")) {
    for (const auto& e : j["connection"]) {
      int A = e.at("A").get<int>(), C = e.at("C").get<int>(), B = e.at("B").get<int>();
      if (A < 1 || A > n || B < 1 || B > n || C < 1 || C > n)
        throw Error("scenario: connection index out of range in Gamma[" + std::to_string(A) +
                    "][" + std::to_string(C) + "][" + std::to_string(B) + "]");
      Scalar v = detail::parse_component(e.at("value").get<std::string>(), ch,
                                         "connection entry Gamma[" + std::to_string(A) + "][" +
                                             std::to_string(C) + "][" + std::to_string(B) + "]");
      for (int idx = 0; idx < n; ++idx)
        if (v.depends_on(ch.pvar(idx)))
          throw Error("scenario: connection entry depends on a fiber variable");
      Scalar& lo = gamma.at({A - 1, C - 1, B - 1});
      Scalar& hi = gamma.at({B - 1, C - 1, A - 1});
      if (!lo.is_zero() && lo != v)
        throw Error("scenario: non-symmetric gamma entry Gamma[" + std::to_string(A) + "][" +
                    std::to_string(C) + "][" + std::to_string(B) + "]");
      lo = v;
      if (A != B) {
        if (!hi.is_zero() && hi != v)
          throw Error("scenario: non-symmetric gamma entry Gamma[" + std::to_string(B) + "][" +
                      std::to_string(C) + "][" + std::to_string(A) + "]");
        hi = v;
      }
    }
  }
  std::optional<TensorField> volume;
  if (j.contains("volume")) {
    Scalar f = detail::parse_component(j["volume"].get<std::string>(), ch, "volume");
    volume = f * levi_civita_down(chart);
  }
  sc.connection = make_connection(chart, std::move(gamma), std::move(volume));

  auto comp_list = [&](const nlohmann::json& e) {
    std::vector<std::string> out;
    for (const auto& c : e.at("components")) out.push_back(c.get<std::string>());
    return out;
  };
  if (j.contains("candidates")) {
    for (const auto& e : j["candidates"]) {
      Candidate cand;
      cand.name = e.value("name", std::string("candidate"));
      cand.expect_fail = e.value("expect", std::string("pass")) == std::string("fail");
      cand.affine = e.value("affine", false);
      std::string kind = e.at("kind").get<std::string>();
      std::string where = "candidate '" + cand.name + "'";
      auto comps = comp_list(e);
      auto need = [&](size_t k) {
        if (comps.size() != k)
          throw Error(where + ": expected " + std::to_string(k) + " components");
      };
      if (auto sk = kind_from_name(kind)) {
        cand.kind = CandidateKind::Solution;
        cand.solkind = *sk;
        if (*sk == SolKind::Bivector) {
          need(static_cast<size_t>(n * (n - 1) / 2));
          TensorField w(chart, {Space::MUp, Space::MUp});
          size_t idx = 0;
          for (int A = 0; A < n; ++A)
            for (int B = A + 1; B < n; ++B) {
              w.at({A, B}) = detail::parse_component(comps[idx], ch, where);
              w.at({B, A}) = -w.at({A, B});
              ++idx;
            }
          cand.data = std::move(w);
        } else if (*sk == SolKind::RicciFlatScale) {
          need(1);
          cand.data = TensorField::scalar(chart, detail::parse_component(comps[0], ch, where));
        } else {
          need(static_cast<size_t>(n));
          TensorField u(chart, kind_slots(*sk));
          for (int A = 0; A < n; ++A) u.at({A}) = detail::parse_component(comps[A], ch, where);
          cand.data = std::move(u);
        }
        cand.data = make_solution(*sk, cand.data).data;
      } else if (kind == "scale" || kind == "einstein-scale") {
        need(1);
        cand.kind = kind == "scale" ? CandidateKind::Scale : CandidateKind::EinsteinScale;
        cand.scalar = detail::parse_component(comps[0], ch, where);
      } else if (kind == "conformal-killing" || kind == "killing") {
        need(static_cast<size_t>(2 * n));
        cand.kind = kind == "killing" ? CandidateKind::Killing : CandidateKind::ConformalKilling;
        TensorField v(chart, {Space::MtUp});
        for (int a = 0; a < 2 * n; ++a) v.at({a}) = detail::parse_component(comps[a], ch, where);
        cand.data = std::move(v);
      } else if (kind == "walker-theta") {
        need(static_cast<size_t>(n * (n + 1) / 2));
        cand.kind = CandidateKind::WalkerTheta;
        cand.expect_rejection = e.value("expect", std::string("accept"));
        TensorField th(chart, {Space::MDown, Space::MDown});
        size_t idx = 0;
        for (int A = 0; A < n; ++A)
          for (int B = A; B < n; ++B) {
            th.at({A, B}) = detail::parse_component(comps[idx], ch, where);
            th.at({B, A}) = th.at({A, B});
            ++idx;
          }
        cand.data = std::move(th);
      } else if (kind == "upsilon") {
        need(static_cast<size_t>(n));
        cand.kind = CandidateKind::Upsilon;
        TensorField u(chart, {Space::MDown});
        for (int A = 0; A < n; ++A) u.at({A}) = detail::parse_component(comps[A], ch, where);
        cand.data = std::move(u);
      } else {
        throw Error(where + ": unknown candidate kind '" + kind + "'");
      }
      sc.candidates.push_back(std::move(cand));
    }
  }
  if (j.contains("checks"))
    for (const auto& c : j["checks"]) sc.checks.push_back(c.get<std::string>());
  if (j.contains("options")) {
    const auto& o = j["options"];
    sc.options.degree_bound = o.value("degree_bound", 3);
    sc.options.jobs = o.value("jobs", 1);
    if (o.contains("k_coefficient"))
      sc.options.k_coefficient =
          detail::parse_component(o["k_coefficient"].get<std::string>(), ch, "options");
  }
  return sc;
}

inline Scenario parse_scenario_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("scenario: JSON parse error: ") + e.what());
  }
  return parse_scenario_json(j);
}

}  // namespace pwlab

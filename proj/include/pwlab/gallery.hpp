// The bundled worked-example gallery: five connections at n = 2, 3 with the
// base solutions found for them, covering every check in the registry.

#pragma once

#include "pwlab/checks.hpp"

namespace pwlab {

inline const std::vector<std::pair<std::string, std::string>>& gallery_fixtures() {
  static const std::vector<std::pair<std::string, std::string>> fx = {
      {"flat_n2", R"json({
  "name": "flat_n2",
  "n": 2,
  "connection": []
})json"},

      {"flat_n3", R"json({
  "name": "flat_n3",
  "n": 3,
  "connection": [],
  "candidates": [
    {"kind": "euler-field", "name": "xi_radial", "components": ["x1", "x2", "x3"]},
    {"kind": "euler-field", "name": "xi_const", "components": ["1", "0", "0"]},
    {"kind": "ricciflat-scale", "name": "sigma_one", "components": ["1"]},
    {"kind": "ricciflat-scale", "name": "sigma_lin", "components": ["x2"]},
    {"kind": "bivector", "name": "w_const", "components": ["1", "0", "0"], "affine": true},
    {"kind": "killing-oneform", "name": "alpha_dx2", "components": ["0", "1", "0"]},
    {"kind": "projective-symmetry", "name": "v_scaling", "components": ["x1", "0", "0"]},
    {"kind": "affine-symmetry", "name": "v_shear", "components": ["x1", "-x2", "0"]},
    {"kind": "einstein-scale", "name": "sig_mixed", "components": ["1 + x1*p1 + x2*p2 + x3*p3"]},
    {"kind": "scale", "name": "s_poly", "components": ["1 + x1^2"]},
    {"kind": "conformal-killing", "name": "ck_sum",
     "components": ["0", "0", "0", "2*p1", "1 + 2*p2", "2*p3"]},
    {"kind": "killing", "name": "kf_vertical", "components": ["0", "0", "0", "0", "1", "0"]}
  ],
  "checks": ["base.special", "base.curvature", "base.schouten_symmetric",
             "base.weyl_tracefree", "base.weyl_invariance", "base.thomas",
             "base.ricci_flat", "base.solutions", "base.prolong", "base.dualize",
             "pw.build", "pw.frame_christoffels", "pw.riemann",
             "pw.curvature_dictionary", "pw.schouten_zero", "pw.k",
             "pw.conformal_covariance", "pw.recover", "pw.thomas_pw",
             "spin.clifford", "spin.projectors", "spin.chi_parallel",
             "spin.chi_twistor", "spin.lie_chi", "spin.eta",
             "eins.aes", "eins.lifts", "eins.decompose",
             "sym.k_ck", "sym.prolongation", "sym.lifts",
             "sym.decompose.roundtrip", "sym.lightlike", "sym.invariance",
             "sym.commutators"]
})json"},

      {"E2", R"json({
  "name": "E2",
  "n": 2,
  "connection": [{"A": 1, "C": 2, "B": 1, "value": "x2"}],
  "candidates": [
    {"kind": "euler-field", "name": "xi_e2", "components": ["0", "1"]},
    {"kind": "ricciflat-scale", "name": "sigma_x2", "components": ["x2"]},
    {"kind": "bivector", "name": "w_dual", "components": ["x2"]},
    {"kind": "killing-oneform", "name": "alpha_dx1", "components": ["1", "0"]},
    {"kind": "projective-symmetry", "name": "v_translation", "components": ["1", "0"]},
    {"kind": "affine-symmetry", "name": "v_translation_aff", "components": ["1", "0"]},
    {"kind": "einstein-scale", "name": "sig_e2", "components": ["x2 + p2"]},
    {"kind": "scale", "name": "s_poly", "components": ["1 + x2^2"]},
    {"kind": "walker-theta", "name": "theta_quadratic", "components": ["p1^2", "0", "0"],
     "expect": "linearity"},
    {"kind": "walker-theta", "name": "theta_traceful", "components": ["p1", "0", "0"],
     "expect": "trace"}
  ],
  "checks": ["base.special", "base.curvature", "base.schouten_symmetric",
             "base.weyl_tracefree", "base.weyl_invariance", "base.thomas",
             "base.solutions", "base.prolong", "base.dualize",
             "pw.build", "pw.frame_christoffels", "pw.riemann",
             "pw.curvature_dictionary", "pw.k", "pw.conformal_covariance",
             "pw.recover", "pw.thomas_pw",
             "spin.clifford", "spin.projectors", "spin.chi_parallel",
             "spin.chi_twistor", "spin.lie_chi", "spin.eta",
             "eins.aes", "eins.lifts", "eins.decompose",
             "sym.k_ck", "sym.prolongation", "sym.lifts",
             "sym.decompose.roundtrip", "sym.lightlike", "sym.invariance",
             "sym.commutators"]
})json"},

      {"E2_cotton", R"json({
  "name": "E2_cotton",
  "n": 2,
  "connection": [{"A": 1, "C": 2, "B": 1, "value": "x2^2"}],
  "candidates": [
    {"kind": "euler-field", "name": "xi_e2c", "components": ["0", "1"]},
    {"kind": "killing-oneform", "name": "alpha_dx1", "components": ["1", "0"]},
    {"kind": "projective-symmetry", "name": "v_translation", "components": ["1", "0"]},
    {"kind": "affine-symmetry", "name": "v_translation_aff", "components": ["1", "0"]},
    {"kind": "einstein-scale", "name": "sig_plus", "components": ["p2"]},
    {"kind": "scale", "name": "s_poly", "components": ["1 + x2^2"]}
  ],
  "checks": ["base.special", "base.curvature", "base.schouten_symmetric",
             "base.weyl_tracefree", "base.weyl_invariance", "base.thomas",
             "base.solutions", "base.prolong", "base.dualize",
             "pw.build", "pw.frame_christoffels", "pw.riemann",
             "pw.curvature_dictionary", "pw.k", "pw.conformal_covariance",
             "pw.recover", "pw.thomas_pw",
             "spin.clifford", "spin.projectors", "spin.chi_parallel",
             "spin.chi_twistor", "spin.lie_chi", "spin.eta",
             "eins.aes", "eins.lifts", "eins.decompose",
             "sym.k_ck", "sym.prolongation", "sym.lifts",
             "sym.decompose.roundtrip", "sym.lightlike", "sym.invariance",
             "sym.commutators"]
})json"},

      {"E3_ricciflat", R"json({
  "name": "E3_ricciflat",
  "n": 3,
  "connection": [{"A": 1, "C": 2, "B": 1, "value": "x3"}],
  "candidates": [
    {"kind": "euler-field", "name": "xi_e3", "components": ["0", "1", "0"]},
    {"kind": "ricciflat-scale", "name": "sigma_one", "components": ["1"]},
    {"kind": "ricciflat-scale", "name": "sigma_x1", "components": ["x1"]},
    {"kind": "killing-oneform", "name": "alpha_dx1", "components": ["1", "0", "0"]},
    {"kind": "killing-oneform", "name": "alpha_dx3", "components": ["0", "0", "1"]},
    {"kind": "projective-symmetry", "name": "v_translation", "components": ["1", "0", "0"]},
    {"kind": "affine-symmetry", "name": "v_translation_aff", "components": ["1", "0", "0"]},
    {"kind": "einstein-scale", "name": "sig_e3", "components": ["1 + p2"]},
    {"kind": "scale", "name": "s_poly", "components": ["1 + x1^2 + x3^2"]},
    {"kind": "walker-theta", "name": "theta_pw", "components": ["x3*p2", "0", "0", "0", "0", "0"],
     "expect": "accept"}
  ],
  "checks": ["base.special", "base.curvature", "base.schouten_symmetric",
             "base.weyl_tracefree", "base.weyl_invariance", "base.thomas",
             "base.ricci_flat", "base.solutions", "base.prolong", "base.dualize",
             "pw.build", "pw.frame_christoffels", "pw.riemann",
             "pw.curvature_dictionary", "pw.schouten_zero", "pw.k",
             "pw.conformal_covariance", "pw.recover", "pw.thomas_pw",
             "spin.clifford", "spin.projectors", "spin.chi_parallel",
             "spin.chi_twistor", "spin.lie_chi", "spin.eta",
             "eins.aes", "eins.lifts", "eins.decompose",
             "sym.k_ck", "sym.prolongation", "sym.lifts",
             "sym.decompose.roundtrip", "sym.lightlike", "sym.invariance",
             "sym.commutators"]
})json"},
  };
  return fx;
}

inline std::vector<CheckReport> run_gallery(int jobs = 1) {
  std::vector<CheckReport> out;
  for (const auto& [name, text] : gallery_fixtures())
    out.push_back(run_checks(parse_scenario_string(text), jobs));
  return out;
}

}  // namespace pwlab

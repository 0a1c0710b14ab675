#pragma once

/// Degree certificates for the constructed functions, and a declarative recipe
/// for each construction that rebuilds the same truth table.
///
/// Every construction is the sign of an explicit polynomial in block sums; its
/// values at the 2^n points go through certificate_from_values, which checks
/// the multilinear degree and the strict sign and returns realizing weights.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "ptf/boolean_function.hpp"
#include "ptf/constructions.hpp"
#include "ptf/exact_lp.hpp"
#include "ptf/polynomial.hpp"

namespace ptf {

namespace detail {

// Values of P(block-1 sum, offset + block-2 sum) at every point, memoized per grid vertex.
inline std::vector<mpq_class> grid_polynomial_values(const QuotientGraphSpec& s, const BivariatePolynomial& p) {
  std::vector<mpq_class> at_vertex;
  for (int i = 0; i <= s.b1; ++i) {
    for (int j = 0; j <= s.b2; ++j) at_vertex.push_back(p(s.x_of(i), s.y_of(j)));
  }
  const std::size_t block1 = (std::size_t{1} << s.b1) - 1;
  std::vector<mpq_class> values(std::size_t{1} << s.num_vars());
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const int i = hamming_weight(idx & block1);
    const int j = hamming_weight(idx >> s.b1);
    values[idx] = at_vertex[static_cast<std::size_t>(i * (s.b2 + 1) + j)];
  }
  return values;
}

}  // namespace detail

inline PtfCertificate gl_extremal_certificate(int n, int d) {
  const auto [f, rl] = gl_extremal(n, d);
  std::vector<mpq_class> layer(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    mpz_class v = 1;
    for (int r : rl.roots) v *= sum_from_weight(k, n) - r;
    layer[static_cast<std::size_t>(k)] = v;
  }
  std::vector<mpq_class> values(f.size());
  for (std::size_t idx = 0; idx < values.size(); ++idx) values[idx] = layer[static_cast<std::size_t>(hamming_weight(idx))];
  return certificate_from_values(f, d, std::move(values));
}

inline PtfCertificate hsf_n_2_certificate(int n) {
  return certificate_from_values(build_hsf_n_2(n), 2,
                                 detail::grid_polynomial_values(hsf_n_2_spec(n), hsf_quadratic_polynomial()));
}

// f_{5,2} is f_{n,2} at n = 5 with the same variable blocks.
inline PtfCertificate hsf_5_2_certificate() { return hsf_n_2_certificate(5); }

inline PtfCertificate hsf_general_certificate(int n, int d) {
  const auto [f, recipe] = build_hsf_general(n, d);
  return certificate_from_values(f, d, detail::grid_polynomial_values(recipe.spec, recipe.p));
}

// ---------------------------------------------------------------------------
// Recipes

enum class Family { GlExtremal, Hsf52, HsfN2, HsfGeneral };

inline const char* family_tag(Family f) {
  switch (f) {
    case Family::GlExtremal: return "gl-extremal";
    case Family::Hsf52: return "hsf-5-2";
    case Family::HsfN2: return "hsf-n-2";
    case Family::HsfGeneral: return "hsf-general";
  }
  return "?";
}

inline Family parse_family(const std::string& tag) {
  for (Family f : {Family::GlExtremal, Family::Hsf52, Family::HsfN2, Family::HsfGeneral}) {
    if (tag == family_tag(f)) return f;
  }
  throw std::invalid_argument("unknown family '" + tag + "' (expected gl-extremal, hsf-5-2, hsf-n-2, hsf-general)");
}

/// Enough to rebuild a construction without the builders: either roots of a
/// univariate polynomial in the coordinate sum, or a bivariate polynomial on
/// the block-sum grid.
struct ConstructionRecipe {
  Family family = Family::GlExtremal;
  int n = 0;
  int d = 0;
  std::vector<int> roots;          // gl-extremal
  QuotientGraphSpec spec;          // grid families
  BivariatePolynomial polynomial;  // grid families
  mpq_class epsilon = 0;           // hsf-general only, informational
};

inline ConstructionRecipe make_recipe(Family family, int n, int d) {
  ConstructionRecipe r;
  r.family = family;
  r.n = n;
  r.d = d;
  switch (family) {
    case Family::GlExtremal:
      r.roots = gl_roots(n, d).roots;
      break;
    case Family::Hsf52:
      if (n != 5 || d != 2) throw std::invalid_argument("hsf-5-2 takes n = 5, d = 2");
      r.spec = hsf_n_2_spec(5);
      r.polynomial = hsf_quadratic_polynomial();
      break;
    case Family::HsfN2:
      check_hsf_n_2(n);
      if (d != 2) throw std::invalid_argument("hsf-n-2 has degree 2");
      r.spec = hsf_n_2_spec(n);
      r.polynomial = hsf_quadratic_polynomial();
      break;
    case Family::HsfGeneral: {
      GeneralRecipe g = general_recipe(n, d);
      r.spec = g.spec;
      r.polynomial = std::move(g.p);
      r.epsilon = g.epsilon;
      break;
    }
  }
  return r;
}

inline BooleanFunction rebuild(const ConstructionRecipe& r) {
  if (r.family == Family::GlExtremal) {
    std::vector<Sign> layers;
    for (int k = 0; k <= r.n; ++k) layers.push_back(sign_of_root_product(r.roots, sum_from_weight(k, r.n)));
    return symmetric_from_pattern(LayerSignPattern(r.n, std::move(layers)));
  }
  if (r.spec.num_vars() != r.n) throw std::invalid_argument("recipe blocks do not sum to n");
  return lift(GridSigns::tabulate(r.spec, [&](int x, int y) { return sign_of_nonzero(r.polynomial(x, y)); }));
}

inline PtfCertificate recipe_certificate(const ConstructionRecipe& r) {
  const BooleanFunction f = rebuild(r);
  if (r.family == Family::GlExtremal) return gl_extremal_certificate(r.n, r.d);
  return certificate_from_values(f, r.d, detail::grid_polynomial_values(r.spec, r.polynomial));
}

inline nlohmann::json to_json(const ConstructionRecipe& r) {
  nlohmann::json j;
  j["family"] = family_tag(r.family);
  j["n"] = r.n;
  j["d"] = r.d;
  if (r.family == Family::GlExtremal) {
    j["roots"] = r.roots;
    return j;
  }
  j["blocks"] = {r.spec.b1, r.spec.b2};
  j["offset"] = r.spec.offset;
  auto terms = nlohmann::json::array();
  for (const auto& [e, c] : r.polynomial.terms()) terms.push_back({{"x", e.first}, {"y", e.second}, {"c", c.get_str()}});
  j["polynomial"] = terms;
  if (r.family == Family::HsfGeneral) j["epsilon"] = r.epsilon.get_str();
  return j;
}

inline ConstructionRecipe recipe_from_json(const nlohmann::json& j) {
  ConstructionRecipe r;
  r.family = parse_family(j.at("family").get<std::string>());
  r.n = j.at("n").get<int>();
  r.d = j.at("d").get<int>();
  if (r.family == Family::GlExtremal) {
    r.roots = j.at("roots").get<std::vector<int>>();
    return r;
  }
  const auto blocks = j.at("blocks").get<std::vector<int>>();
  if (blocks.size() != 2) throw std::invalid_argument("blocks must have two entries");
  r.spec = {blocks[0], blocks[1], j.at("offset").get<int>()};
  for (const auto& t : j.at("polynomial")) {
    mpq_class c(t.at("c").get<std::string>());
    c.canonicalize();
    r.polynomial.add_term(t.at("x").get<int>(), t.at("y").get<int>(), c);
  }
  if (j.contains("epsilon")) {
    r.epsilon = mpq_class(j.at("epsilon").get<std::string>());
    r.epsilon.canonicalize();
  }
  return r;
}

}  // namespace ptf

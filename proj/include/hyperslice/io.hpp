#pragma once

// JSON forms of polynomial stems, slice points and BM reports.
//
//   polynomial: {"algebra": "octonion", "arity": 2,
//                "terms": [{"mu": [1, 2], "coeff": [8 reals]}, ...]}
//   point:      {"alpha": [...], "beta": [...], "j": [Dim reals]}

#include <fstream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "hyperslice/integral.hpp"

namespace hyperslice {

using Json = nlohmann::json;

namespace detail {

template <std::size_t Dim>
Hypercomplex<Dim> element_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, std::string(field) + ": expected an array of reals");
  if (j.size() != Dim) {
    throw Error(ErrorCode::AlgebraMismatch, std::string(field) + ": expected " + std::to_string(Dim) +
                                                " coefficients, got " + std::to_string(j.size()));
  }
  typename Hypercomplex<Dim>::Coeffs c{};
  for (std::size_t k = 0; k < Dim; ++k) c[k] = j[k].get<double>();
  return Hypercomplex<Dim>(c);
}

template <std::size_t Dim>
Json element_to_json(const Hypercomplex<Dim>& a) {
  return Json(std::vector<double>(a.coeffs().begin(), a.coeffs().end()));
}

inline Json require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

template <std::size_t Dim>
Json to_json(const StemPolynomial<Dim>& p) {
  Json terms = Json::array();
  for (const auto& [mu, coeff] : p.terms()) {
    terms.push_back({{"mu", mu}, {"coeff", detail::element_to_json(coeff)}});
  }
  return {{"algebra", std::string(AlgebraTag::of<Dim>().name())}, {"arity", p.arity()}, {"terms", terms}};
}

template <std::size_t Dim>
StemPolynomial<Dim> polynomial_from_json(const Json& j) {
  try {
    if (j.contains("algebra")) {
      const auto tag = AlgebraTag::parse(j.at("algebra").get<std::string>());
      if (tag.dim() != Dim) {
        throw Error(ErrorCode::AlgebraMismatch, "polynomial is over " + std::string(tag.name()) + ", expected " +
                                                    std::string(AlgebraTag::of<Dim>().name()));
      }
    }
    const auto arity = detail::require(j, "arity").get<std::size_t>();
    if (arity == 0) throw Error(ErrorCode::ParseError, "arity must be positive");
    StemPolynomial<Dim> p(arity);
    for (const auto& term : detail::require(j, "terms")) {
      auto mu = detail::require(term, "mu").get<MultiIndex>();
      if (mu.size() != arity) throw Error(ErrorCode::ArityMismatch, "multi-index length differs from arity");
      p.add_term(std::move(mu), detail::element_from_json<Dim>(detail::require(term, "coeff"), "coeff"));
    }
    return p;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <std::size_t Dim>
StemPolynomial<Dim> load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return polynomial_from_json<Dim>(j);
}

template <std::size_t Dim>
Json to_json(const SlicePoint<Dim>& x) {
  return {{"alpha", x.alpha}, {"beta", x.beta}, {"j", detail::element_to_json(x.j.value())}};
}

template <std::size_t Dim>
SlicePoint<Dim> slice_point_from_json(const Json& j) {
  try {
    auto alpha = detail::require(j, "alpha").get<std::vector<double>>();
    auto beta = detail::require(j, "beta").get<std::vector<double>>();
    if (alpha.size() != beta.size() || alpha.empty()) {
      throw Error(ErrorCode::ArityMismatch, "alpha and beta must have the same nonzero length");
    }
    const auto unit = ImaginaryUnit<Dim>::from(detail::element_from_json<Dim>(detail::require(j, "j"), "j"));
    return SlicePoint<Dim>::make(std::move(alpha), std::move(beta), unit);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json to_json(const BMReport& r) {
  return {{"abs_error", r.abs_error},
          {"nodes_used", r.nodes_used},
          {"reference", r.reference},
          {"reproduced", r.reproduced},
          {"wall_ms", r.wall_ms}};
}

inline BMReport bm_report_from_json(const Json& j) {
  try {
    BMReport r;
    r.abs_error = detail::require(j, "abs_error").get<double>();
    r.nodes_used = detail::require(j, "nodes_used").get<std::size_t>();
    r.reference = detail::require(j, "reference").get<std::vector<double>>();
    r.reproduced = detail::require(j, "reproduced").get<std::vector<double>>();
    r.wall_ms = detail::require(j, "wall_ms").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

/// The frozen basis table: row i, column j holds e_i e_j as "+ek" or "-ek".
template <std::size_t Dim>
void write_basis_table(std::ostream& os) {
  os << AlgebraTag::of<Dim>().name() << " basis products, row e_i times column e_j\n    ";
  for (std::size_t j = 0; j < Dim; ++j) os << "   e" << j;
  os << '\n';
  for (std::size_t i = 0; i < Dim; ++i) {
    os << "  e" << i;
    for (std::size_t j = 0; j < Dim; ++j) {
      const auto& p = basis_table<Dim>[i][j];
      os << "  " << (p.sign > 0 ? '+' : '-') << 'e' << p.index;
    }
    os << '\n';
  }
}

}  // namespace hyperslice

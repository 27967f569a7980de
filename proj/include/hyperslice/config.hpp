#pragma once

// Experiment configuration, read from an INI file:
//
//   suite = bm
//   algebra = octonion
//   n = 2
//   seed = 1
//   samples = 1000
//
//   [quadrature]
//   angular_nodes = 64
//   radial_nodes = 32
//   volume_refinement = 3
//
//   [tolerances]
//   bm.reproduction = 1e-8
//
//   [functions]
//   cubic = functions/cubic.json

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hyperslice/integral.hpp"

namespace hyperslice {

enum class SuiteKind { Algebra, Representation, Products, Spherical, Zeros, Bm, OffSlice, Hartogs, Regularity, All };

inline constexpr std::array<std::pair<SuiteKind, std::string_view>, 10> kSuiteNames{{
    {SuiteKind::Algebra, "algebra"},
    {SuiteKind::Representation, "representation"},
    {SuiteKind::Products, "products"},
    {SuiteKind::Spherical, "spherical"},
    {SuiteKind::Zeros, "zeros"},
    {SuiteKind::Bm, "bm"},
    {SuiteKind::OffSlice, "off-slice"},
    {SuiteKind::Hartogs, "hartogs"},
    {SuiteKind::Regularity, "regularity"},
    {SuiteKind::All, "all"},
}};

constexpr std::string_view to_string(SuiteKind s) {
  for (const auto& [kind, name] : kSuiteNames) {
    if (kind == s) return name;
  }
  return "unknown";
}

inline SuiteKind parse_suite(std::string_view text) {
  for (const auto& [kind, name] : kSuiteNames) {
    if (name == text) return kind;
  }
  throw Error(ErrorCode::InvalidConfig, "suite: unknown suite '" + std::string(text) + "'");
}

/// Tolerance names accepted in [tolerances], with their defaults.
inline const std::map<std::string, double, std::less<>>& default_tolerances() {
  static const std::map<std::string, double, std::less<>> table{
      {"algebra.identities", 1e-10},   {"representation.lift", 1e-12}, {"representation.agreement", 1e-13},
      {"products.star", 1e-12},        {"products.leibniz", 1e-10},    {"products.pointwise", 1e-12},
      {"products.witness", 0.1},       {"spherical.identities", 1e-10}, {"zeros.brute_force", 1e-7},
      {"zeros.classify", 1e-9},        {"bm.reproduction", 1e-8},      {"bm.calibration", 1e-10},
      {"bm.routes", 1e-12},            {"bm.c1", 5e-3},                {"off_slice.lift", 1e-8},
      {"off_slice.collapse", 1e-12},   {"hartogs.extension", 1e-6},    {"hartogs.counterexample", 0.1},
      {"regularity.pass", 1e-8},       {"regularity.fail", 1e-6},      {"regularity.osgood", 1e-8},
  };
  return table;
}

struct ExperimentConfig {
  SuiteKind suite = SuiteKind::All;
  AlgebraTag algebra{};
  std::size_t n = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::map<std::string, double, std::less<>> tolerances;
  QuadratureSpec quadrature{};
  /// Polynomial JSON files by name, paths resolved against the config file.
  std::map<std::string, std::string> functions;

  double tolerance(std::string_view name) const {
    if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
    const auto& defaults = default_tolerances();
    if (auto it = defaults.find(name); it != defaults.end()) return it->second;
    throw Error(ErrorCode::InvalidConfig, "unknown tolerance '" + std::string(name) + "'");
  }

  void validate() const {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "field 'n': must be at least 1");
    if (samples < 1) throw Error(ErrorCode::InvalidConfig, "field 'samples': must be at least 1");
    for (const auto& [name, value] : tolerances) {
      if (!default_tolerances().contains(name)) {
        throw Error(ErrorCode::InvalidConfig, "field 'tolerances." + name + "': unknown tolerance");
      }
      if (!(value > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "field 'tolerances." + name + "': must be positive");
      }
    }
    try {
      quadrature.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("section [quadrature]: ") + e.what());
    }
  }
};

namespace detail {

template <class T>
T config_value(const boost::property_tree::ptree& node, const std::string& field) {
  const auto text = node.get_value<std::string>();
  if (auto v = node.get_value_optional<T>()) {
    if constexpr (std::is_unsigned_v<T>) {
      if (text.find('-') != std::string::npos) {
        throw Error(ErrorCode::InvalidConfig, "field '" + field + "': expected a non-negative integer, got '" + text + "'");
      }
    }
    return *v;
  }
  throw Error(ErrorCode::InvalidConfig, "field '" + field + "': cannot parse '" + text + "'");
}

}  // namespace detail

/// Parses INI text. `base_dir` resolves relative function paths; `source`
/// names the input in diagnostics.
inline ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {},
                                     const std::string& source = "<config>") {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig cfg;
  for (const auto& [key, node] : tree) {
    if (key == "quadrature" || key == "tolerances" || key == "functions" || !node.empty()) {
      if (key == "quadrature") {
        for (const auto& [qkey, qnode] : node) {
          const auto field = "quadrature." + qkey;
          if (qkey == "angular_nodes") {
            cfg.quadrature.angular_nodes = detail::config_value<std::size_t>(qnode, field);
          } else if (qkey == "radial_nodes") {
            cfg.quadrature.radial_nodes = detail::config_value<std::size_t>(qnode, field);
          } else if (qkey == "volume_refinement") {
            cfg.quadrature.volume_refinement = detail::config_value<std::size_t>(qnode, field);
          } else {
            throw Error(ErrorCode::InvalidConfig, source + ": unknown field '" + field + "'");
          }
        }
      } else if (key == "tolerances") {
        for (const auto& [tkey, tnode] : node) {
          cfg.tolerances[tkey] = detail::config_value<double>(tnode, "tolerances." + tkey);
        }
      } else if (key == "functions") {
        for (const auto& [fkey, fnode] : node) {
          std::filesystem::path p = fnode.get_value<std::string>();
          if (p.is_relative()) p = base_dir / p;
          cfg.functions[fkey] = p.string();
        }
      } else {
        throw Error(ErrorCode::InvalidConfig, source + ": unknown section [" + key + "]");
      }
      continue;
    }
    if (key == "suite") {
      cfg.suite = parse_suite(node.get_value<std::string>());
    } else if (key == "algebra") {
      try {
        cfg.algebra = AlgebraTag::parse(node.get_value<std::string>());
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidConfig, "field 'algebra': expected octonion or quaternion, got '" +
                                                  node.get_value<std::string>() + "'");
      }
    } else if (key == "n") {
      cfg.n = detail::config_value<std::size_t>(node, "n");
    } else if (key == "seed") {
      cfg.seed = detail::config_value<std::uint64_t>(node, "seed");
    } else if (key == "samples") {
      cfg.samples = detail::config_value<std::size_t>(node, "samples");
    } else {
      throw Error(ErrorCode::InvalidConfig, source + ": unknown field '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_config(in, path.parent_path(), path.string());
}

}  // namespace hyperslice

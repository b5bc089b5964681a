#include "cmsunit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <filesystem>

#include "cmsunit/error.hpp"

namespace cmsunit {

namespace {

template <class T>
void read_positive(const boost::property_tree::ptree& tree, const std::string& key, T& field,
                   const std::string& path) {
  if (!tree.count(key)) return;
  const T v = tree.get<T>(key);  // ptree_bad_data on malformed text
  if (!(v > 0)) raise(ErrorKind::InvalidArgument, path + ": " + key + " must be positive");
  field = v;
}

}  // namespace

Config load_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    raise(ErrorKind::InvalidArgument, std::string("config: ") + e.what());
  }
  static const char* known[] = {"c1", "k", "grid_ratio", "grid_ceiling", "precision_margin_bits",
                                "factor_budget"};
  for (const auto& [key, node] : tree) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) raise(ErrorKind::InvalidArgument, path + ": unknown key '" + key + "'");
  }
  Config c;
  try {
    read_positive(tree, "c1", c.c1, path);
    read_positive(tree, "grid_ratio", c.grid_ratio, path);
    read_positive(tree, "grid_ceiling", c.grid_ceiling, path);
    read_positive(tree, "precision_margin_bits", c.precision_margin_bits, path);
    read_positive(tree, "factor_budget", c.factor_budget, path);
    // k = 0 is a legitimate choice for P(k).
    if (tree.count("k")) {
      const double k = tree.get<double>("k");
      if (!(k >= 0)) raise(ErrorKind::InvalidArgument, path + ": k must be nonnegative");
      c.k = k;
    }
  } catch (const boost::property_tree::ptree_bad_data& e) {
    raise(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
  if (c.grid_ratio <= 1.0) raise(ErrorKind::InvalidArgument, path + ": grid_ratio must exceed 1");
  c.source = path;
  return c;
}

Config resolve_config(const std::optional<std::string>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv("CM_SUNIT_CONFIG"); env && *env) return load_config(env);
#ifdef CMSUNIT_DEFAULT_CONSTANTS
  if (std::filesystem::exists(CMSUNIT_DEFAULT_CONSTANTS)) return load_config(CMSUNIT_DEFAULT_CONSTANTS);
#endif
  return Config{};
}

}  // namespace cmsunit

#include "dichot/cache.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "dichot/errors.hpp"

namespace dichot {

namespace {

using nlohmann::json;

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_u64(const json &j) {
  const auto s = j.get<std::string>();
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size())
    throw PreconditionError("cache: not a decimal integer: " + s);
  return v;
}

std::int64_t parse_i64(const json &j) {
  const auto s = j.get<std::string>();
  std::size_t used = 0;
  const auto v = std::stoll(s, &used);
  if (used != s.size())
    throw PreconditionError("cache: not a decimal integer: " + s);
  return v;
}

} // namespace

json summary_to_json(const LatticeSummary &summary) {
  json classes = json::array();
  for (const auto &c : summary.classes) {
    json orbits = json::array();
    for (auto s : c.orbit_sizes)
      orbits.push_back(dec(s));
    classes.push_back({{"order", dec(c.order)},
                       {"length", dec(c.length)},
                       {"mu", c.mu.get_str()},
                       {"orbit_sizes", orbits},
                       {"in_k0", c.in_k0 ? json(*c.in_k0) : json(nullptr)}});
  }
  json marks = json::array();
  for (std::size_t i = 0; i < summary.marks.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < summary.marks.cols(); ++j)
      row.push_back(std::to_string(summary.marks(i, j)));
    marks.push_back(std::move(row));
  }
  return {{"schema_version", std::to_string(kCacheSchemaVersion)},
          {"n", dec(summary.n)},
          {"group_order", dec(summary.group_order)},
          {"convention", "ascending"},
          {"classes", classes},
          {"marks", marks}};
}

LatticeSummary summary_from_json(const json &doc) {
  try {
    if (doc.at("schema_version").get<std::string>() != std::to_string(kCacheSchemaVersion))
      throw PreconditionError("cache: schema version mismatch");
    if (doc.at("convention").get<std::string>() != "ascending")
      throw PreconditionError("cache: unexpected index convention");
    LatticeSummary s;
    s.n = static_cast<std::uint32_t>(parse_u64(doc.at("n")));
    s.group_order = parse_u64(doc.at("group_order"));
    for (const auto &c : doc.at("classes")) {
      ClassRecord r;
      r.order = parse_u64(c.at("order"));
      r.length = parse_u64(c.at("length"));
      if (r.mu.set_str(c.at("mu").get<std::string>(), 10) != 0)
        throw PreconditionError("cache: malformed mu");
      for (const auto &o : c.at("orbit_sizes"))
        r.orbit_sizes.push_back(static_cast<std::uint32_t>(parse_u64(o)));
      if (!c.at("in_k0").is_null())
        r.in_k0 = c.at("in_k0").get<bool>();
      s.classes.push_back(std::move(r));
    }
    const auto &rows = doc.at("marks");
    s.marks = Matrix<std::int64_t>(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw PreconditionError("cache: marks matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j)
        s.marks(i, j) = parse_i64(rows[i][j]);
    }
    if (s.marks.rows() != s.classes.size())
      throw PreconditionError("cache: marks and class table sizes differ");
    return s;
  } catch (const json::exception &e) {
    throw PreconditionError(std::string("cache: malformed document: ") + e.what());
  } catch (const std::logic_error &e) {
    // stoull/stoll failures
    if (dynamic_cast<const PreconditionError *>(&e))
      throw;
    throw PreconditionError(std::string("cache: malformed integer: ") + e.what());
  }
}

std::optional<std::filesystem::path> LatticeCache::path_for(std::uint32_t n) const {
  if (!dir_)
    return std::nullopt;
  return *dir_ / ("affine_lattice_n" + std::to_string(n) + ".json");
}

std::optional<LatticeSummary> LatticeCache::load(std::uint32_t n) const {
  const auto path = path_for(n);
  if (!path || !std::filesystem::exists(*path))
    return std::nullopt;
  std::ifstream in(*path);
  const json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    return std::nullopt;
  try {
    LatticeSummary s = summary_from_json(doc);
    if (s.n != n)
      return std::nullopt;
    return s;
  } catch (const PreconditionError &) {
    return std::nullopt;
  }
}

void LatticeCache::store(const LatticeSummary &summary) const {
  const auto path = path_for(summary.n);
  if (!path)
    return;
  std::filesystem::create_directories(path->parent_path());
  // Write to a sibling file and rename, so readers never see a partial file.
  auto tmp = *path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << summary_to_json(summary).dump() << '\n';
    if (!out)
      throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, *path);
}

LatticeSummary LatticeCache::get(std::uint32_t n, const LatticeOptions &options, bool *hit) const {
  if (auto cached = load(n)) {
    if (cached->group_order > options.max_order) {
      std::ostringstream msg;
      msg << "group order " << cached->group_order << " exceeds cap " << options.max_order;
      throw OrderCapExceeded(msg.str());
    }
    if (hit)
      *hit = true;
    return *std::move(cached);
  }
  if (hit)
    *hit = false;
  LatticeSummary s = summarize_affine_lattice(n, options);
  store(s);
  return s;
}

} // namespace dichot

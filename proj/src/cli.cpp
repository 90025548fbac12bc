#include "dichot/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dichot/affine.hpp"
#include "dichot/cache.hpp"
#include "dichot/dichotomy.hpp"
#include "dichot/errors.hpp"
#include "dichot/inventory.hpp"

namespace dichot {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::vector<std::uint32_t> k;
  std::optional<std::uint32_t> n;
  std::string method = "formula";
  std::string format = "text";
  std::string cache_dir;
  unsigned jobs = 0;
  std::size_t max_order = kDefaultOrderCap;
  std::uint32_t bf_cutoff = kDefaultBruteForceMaxK;
  std::uint32_t subset_cutoff = kDefaultInventoryCutoff;
  std::string convention = "descending";
  bool allow_even = false;

  LatticeOptions lattice() const { return {max_order, jobs}; }
  BruteForceOptions bruteforce() const { return {jobs, bf_cutoff, allow_even}; }
  LatticeCache cache() const {
    return cache_dir.empty() ? LatticeCache() : LatticeCache(std::filesystem::path(cache_dir));
  }
};

std::string dec(std::uint64_t v) { return std::to_string(v); }
std::string dec(const mpz_class &v) { return v.get_str(); }
json opt_dec(const std::optional<mpz_class> &v) { return v ? json(v->get_str()) : json(nullptr); }

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Low to high, up to the degree; the zero polynomial gives [].
json coefficients_json(const IntegerPolynomial &p) {
  json out = json::array();
  for (const auto &c : p.coefficients())
    out.push_back(c.get_str());
  return out;
}

std::uint32_t single_k(const RunConfig &c) {
  if (c.k.size() != 1)
    throw PreconditionError("exactly one --k is required");
  return c.k.front();
}

// Exactly one of --k / --n; --k means n = 2k.
std::uint32_t modulus_of(const RunConfig &c) {
  if (c.n && !c.k.empty())
    throw PreconditionError("give exactly one of --k and --n");
  if (c.n) {
    if (*c.n == 0)
      throw PreconditionError("--n must be positive");
    return *c.n;
  }
  const std::uint32_t k = single_k(c);
  if (k == 0)
    throw PreconditionError("--k must be positive");
  return 2 * k;
}

std::uint32_t even_modulus_of(const RunConfig &c) {
  const std::uint32_t n = modulus_of(c);
  if (n % 2 != 0)
    throw PreconditionError("n must be even (n = 2k)");
  return n;
}

void check_format(const RunConfig &c) {
  if (c.format != "text" && c.format != "json" && c.format != "csv")
    throw PreconditionError("--format must be text, json or csv");
}

json report_json(const StrongCountReport &r, bool with_theorem) {
  return {{"k", dec(r.k)},
          {"n", dec(2 * r.k)},
          {"method", r.method},
          {"s", dec(r.s_value)},
          {"s_formula", opt_dec(r.s_formula)},
          {"s_bruteforce", opt_dec(r.s_bruteforce)},
          {"qrig_at_minus_one", opt_dec(r.qrig_at_minus_one)},
          {"qrig_moebius_at_minus_one", opt_dec(r.qrig_moebius_at_minus_one)},
          {"theorem_holds", with_theorem ? json(r.theorem_holds) : json(nullptr)},
          {"methods_agree", r.methods_agree},
          {"group_order", dec(r.group_order)},
          {"class_count", dec(r.class_count)},
          {"subgroup_count", dec(r.subgroup_count)},
          {"elapsed_seconds", seconds(r.elapsed_seconds)}};
}

// strong: s(2k) by the class formula, the brute-force scan, or both.
int cmd_strong(const RunConfig &c, std::ostream &out, std::ostream &err) {
  check_format(c);
  if (c.k.empty())
    throw PreconditionError("--k is required");
  if (c.method != "formula" && c.method != "bruteforce" && c.method != "both")
    throw PreconditionError("--method must be formula, bruteforce or both");
  const bool formula = c.method != "bruteforce";
  const bool brute = c.method != "formula";
  const LatticeCache cache = c.cache();

  std::vector<StrongCountReport> reports;
  bool ok = true;
  for (std::uint32_t k : c.k) {
    const auto start = Clock::now();
    StrongCountReport r;
    r.k = k;
    r.method = c.method;
    if (formula) {
      if (k == 0 || k % 2 == 0)
        throw PreconditionError("This formula is for odd k. (got k = " + std::to_string(k) + ")");
      bool hit = false;
      const LatticeSummary summary = cache.get(2 * k, c.lattice(), &hit);
      if (!c.cache_dir.empty())
        err << "lattice cache " << (hit ? "hit" : "miss") << " for n = " << 2 * k << '\n';
      VerifyOptions vo;
      vo.with_bruteforce = false;
      r = verify_theorem(k, summary, vo);
      r.method = c.method;
    } else {
      r.group_order = static_cast<std::uint64_t>(2 * k) * euler_phi(2 * k);
    }
    if (brute) {
      r.s_bruteforce = strong_count_bruteforce(k, c.bruteforce());
      if (!formula)
        r.s_value = *r.s_bruteforce;
      r.methods_agree = !r.s_formula || *r.s_formula == *r.s_bruteforce;
      r.theorem_holds = r.theorem_holds && r.methods_agree;
    }
    r.elapsed_seconds = since(start);
    ok = ok && r.methods_agree && (!formula || r.theorem_holds);
    reports.push_back(std::move(r));
  }

  if (c.format == "json") {
    json doc = json::array();
    for (const auto &r : reports)
      doc.push_back(report_json(r, formula));
    out << (doc.size() == 1 ? doc.front() : doc).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "k,s,method,s_formula,s_bruteforce,qrig_at_minus_one,theorem_holds,elapsed_seconds\n";
    for (const auto &r : reports) {
      out << r.k << ',' << r.s_value << ',' << r.method << ','
          << (r.s_formula ? r.s_formula->get_str() : "") << ','
          << (r.s_bruteforce ? r.s_bruteforce->get_str() : "") << ','
          << (r.qrig_at_minus_one ? r.qrig_at_minus_one->get_str() : "") << ','
          << (formula ? (r.theorem_holds ? "true" : "false") : "") << ','
          << seconds(r.elapsed_seconds) << '\n';
    }
  } else {
    std::size_t width = 1;
    for (const auto &r : reports)
      width = std::max(width, std::to_string(r.k).size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "k" << "s(2k)\n";
    for (const auto &r : reports)
      out << std::left << std::setw(static_cast<int>(width) + 2) << r.k << r.s_value << '\n';
    out << '\n';
    for (const auto &r : reports) {
      out << "k = " << r.k << ": method " << r.method;
      if (r.s_formula && r.s_bruteforce)
        out << (r.methods_agree ? ", methods agree" : ", METHODS DISAGREE");
      if (r.qrig_at_minus_one)
        out << ", Q_rig(-1) = " << *r.qrig_at_minus_one
            << (r.theorem_holds ? " (theorem holds)" : " (THEOREM FAILS)");
      out << ", " << seconds(r.elapsed_seconds) << " s\n";
    }
  }
  return ok ? kExitOk : kExitFailure;
}

// qrig: Q_rig(x) by every available path.
int cmd_qrig(const RunConfig &c, std::ostream &out, std::ostream &) {
  check_format(c);
  const std::uint32_t n = even_modulus_of(c);
  const auto start = Clock::now();
  const LatticeSummary summary = c.cache().get(n, c.lattice());
  const IntegerPolynomial by_moebius = qrig_via_moebius(summary);
  const IntegerPolynomial by_tom = qrig_via_tom(summary);
  std::optional<IntegerPolynomial> by_brute;
  if (n <= c.subset_cutoff)
    by_brute = qrig_bruteforce(n, c.subset_cutoff, c.jobs);

  const bool agree = by_moebius == by_tom && (!by_brute || *by_brute == by_tom);
  const bool palindromic = by_tom.is_palindromic(n);
  const mpz_class at_minus_one = eval_at_minus_one(by_tom);
  const double elapsed = since(start);

  if (c.format == "json") {
    json paths = {{"moebius", coefficients_json(by_moebius)},
                  {"tom", coefficients_json(by_tom)}};
    if (by_brute)
      paths["bruteforce"] = coefficients_json(*by_brute);
    json doc = {{"n", dec(n)},
                {"group_order", dec(summary.group_order)},
                {"coefficients", coefficients_json(by_tom)},
                {"at_minus_one", at_minus_one.get_str()},
                {"rigid_classes", by_tom.evaluate(1).get_str()},
                {"palindromic", palindromic},
                {"paths", paths},
                {"paths_agree", agree},
                {"elapsed_seconds", seconds(elapsed)}};
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "degree,coefficient\n";
    for (std::size_t d = 0; d < by_tom.coefficients().size(); ++d)
      out << d << ',' << by_tom.coefficients()[d] << '\n';
  } else {
    out << "n = " << n << ", |G| = " << summary.group_order << '\n';
    out << "coefficients (low to high):";
    for (const auto &coeff : by_tom.coefficients())
      out << ' ' << coeff;
    out << "\nQ_rig(x) = " << by_tom << '\n';
    out << "Q_rig(-1) = " << at_minus_one << '\n';
    out << "palindromic: " << (palindromic ? "yes" : "NO") << '\n';
    out << "paths: moebius, tom" << (by_brute ? ", bruteforce" : "")
        << (agree ? " agree" : " DISAGREE") << '\n';
  }
  return agree && palindromic ? kExitOk : kExitFailure;
}

// tom: the table of marks with its index convention.
int cmd_tom(const RunConfig &c, std::ostream &out, std::ostream &) {
  check_format(c);
  if (c.convention != "ascending" && c.convention != "descending")
    throw PreconditionError("--convention must be ascending or descending");
  const std::uint32_t n = modulus_of(c);
  const LatticeSummary summary = c.cache().get(n, c.lattice());
  const bool descending = c.convention == "descending";
  const Matrix<std::int64_t> marks = descending ? summary.marks.reversed() : summary.marks;
  std::vector<std::uint64_t> orders, lengths;
  for (const auto &cls : summary.classes) {
    orders.push_back(cls.order);
    lengths.push_back(cls.length);
  }
  if (descending) {
    std::reverse(orders.begin(), orders.end());
    std::reverse(lengths.begin(), lengths.end());
  }

  if (c.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < marks.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < marks.cols(); ++j)
        row.push_back(std::to_string(marks(i, j)));
      rows.push_back(std::move(row));
    }
    json ord = json::array(), len = json::array();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      ord.push_back(dec(orders[i]));
      len.push_back(dec(lengths[i]));
    }
    out << json{{"n", dec(n)},
                {"group_order", dec(summary.group_order)},
                {"convention", c.convention},
                {"orders", ord},
                {"lengths", len},
                {"marks", rows}}
               .dump(2)
        << '\n';
  } else {
    const char sep = c.format == "csv" ? ',' : ' ';
    if (c.format == "text")
      out << "table of marks of Aff(Z/" << n << "Z), " << summary.classes.size()
          << " classes, convention: " << c.convention << "\norders:";
    else
      out << "order";
    for (auto o : orders)
      out << sep << o;
    out << '\n';
    for (std::size_t i = 0; i < marks.rows(); ++i) {
      if (c.format == "csv")
        out << orders[i] << ',';
      for (std::size_t j = 0; j < marks.cols(); ++j)
        out << (j ? std::string(1, sep) : std::string()) << marks(i, j);
      out << '\n';
    }
  }
  return kExitOk;
}

// lattice: the conjugacy-class table of subgroups.
int cmd_lattice(const RunConfig &c, std::ostream &out, std::ostream &) {
  check_format(c);
  const std::uint32_t n = modulus_of(c);
  const LatticeSummary s = c.cache().get(n, c.lattice());
  auto orbit_list = [](const ClassRecord &r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.orbit_sizes.size(); ++i)
      os << (i ? " " : "") << r.orbit_sizes[i];
    return os.str();
  };
  auto k0_text = [](const ClassRecord &r) {
    return r.in_k0 ? (*r.in_k0 ? "yes" : "no") : "-";
  };

  if (c.format == "json") {
    json doc = summary_to_json(s);
    doc.erase("marks");
    doc.erase("schema_version");
    doc["subgroup_count"] = dec(s.subgroup_count());
    doc["class_count"] = dec(s.classes.size());
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "class,order,length,mu,in_k0,orbit_sizes\n";
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      const auto &r = s.classes[i];
      out << i << ',' << r.order << ',' << r.length << ',' << r.mu << ',' << k0_text(r) << ','
          << orbit_list(r) << '\n';
    }
  } else {
    out << "subgroup classes of Aff(Z/" << n << "Z), |G| = " << s.group_order
        << ", convention: ascending\n";
    out << std::left << std::setw(7) << "class" << std::setw(7) << "order" << std::setw(8)
        << "length" << std::setw(8) << "mu" << std::setw(7) << "in K0" << "orbit sizes\n";
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      const auto &r = s.classes[i];
      out << std::left << std::setw(7) << i << std::setw(7) << r.order << std::setw(8) << r.length
          << std::setw(8) << r.mu.get_str() << std::setw(7) << k0_text(r) << orbit_list(r) << '\n';
    }
    out << "subgroups: " << s.subgroup_count() << ", classes: " << s.classes.size() << '\n';
  }
  return kExitOk;
}

int cmd_quasipolarities(const RunConfig &c, std::ostream &out, std::ostream &) {
  check_format(c);
  const std::uint32_t n = even_modulus_of(c);
  const auto qs = quasipolarities(n);
  if (c.format == "json") {
    json list = json::array();
    for (const auto &q : qs)
      list.push_back({{"u", dec(q.translation())}, {"v", dec(q.multiplier())}});
    out << json{{"n", dec(n)}, {"quasipolarities", list}}.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "u,v\n";
    for (const auto &q : qs)
      out << q.translation() << ',' << q.multiplier() << '\n';
  } else {
    out << qs.size() << " quasipolarities of Z/" << n << "Z as (u, v), x -> v x + u:\n";
    for (const auto &q : qs)
      out << '(' << q.translation() << ", " << q.multiplier() << ")\n";
  }
  return kExitOk;
}

// verify: Q_rig(-1) = -s(2k), plus the brute-force count when within budget.
int cmd_verify(const RunConfig &c, std::ostream &out, std::ostream &) {
  check_format(c);
  const std::uint32_t k = single_k(c);
  if (k == 0 || k % 2 == 0)
    throw PreconditionError("This formula is for odd k. (got k = " + std::to_string(k) + ")");
  const auto start = Clock::now();
  const LatticeSummary summary = c.cache().get(2 * k, c.lattice());
  VerifyOptions vo;
  vo.bruteforce = c.bruteforce();
  StrongCountReport r = verify_theorem(k, summary, vo);
  r.elapsed_seconds = since(start);

  if (c.format == "json") {
    out << report_json(r, true).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "k,s_formula,s_bruteforce,qrig_at_minus_one,qrig_moebius_at_minus_one,theorem_holds\n"
        << k << ',' << *r.s_formula << ',' << (r.s_bruteforce ? r.s_bruteforce->get_str() : "")
        << ',' << *r.qrig_at_minus_one << ',' << *r.qrig_moebius_at_minus_one << ','
        << (r.theorem_holds ? "true" : "false") << '\n';
  } else {
    out << "k = " << k << " (n = " << 2 * k << ", |G| = " << r.group_order << ", "
        << r.subgroup_count << " subgroups in " << r.class_count << " classes)\n";
    out << "s(2k) formula        = " << *r.s_formula << '\n';
    if (r.s_bruteforce)
      out << "s(2k) brute force    = " << *r.s_bruteforce << '\n';
    else
      out << "s(2k) brute force    = skipped (k > " << c.bf_cutoff << ")\n";
    out << "Q_rig(-1) via tom     = " << *r.qrig_at_minus_one << '\n';
    out << "Q_rig(-1) via moebius = " << *r.qrig_moebius_at_minus_one << '\n';
    out << "Q_rig(-1) = -s(2k): " << (r.theorem_holds ? "holds" : "FAILS") << " ("
        << seconds(r.elapsed_seconds) << " s)\n";
  }
  return r.theorem_holds ? kExitOk : kExitFailure;
}

void add_common_options(CLI::App *sub, RunConfig &c, bool multi_k) {
  if (multi_k)
    sub->add_option("--k", c.k, "half the modulus, n = 2k (repeatable)")->envname("DICHOT_K");
  else
    sub->add_option("--k", c.k, "half the modulus, n = 2k")->envname("DICHOT_K")->expected(1);
  sub->add_option("--n", c.n, "modulus n")->envname("DICHOT_N");
  sub->add_option("--format", c.format, "text, json or csv")->envname("DICHOT_FORMAT");
  sub->add_option("--cache-dir", c.cache_dir, "directory for cached lattice tables")
      ->envname("DICHOT_CACHE_DIR");
  sub->add_option("--jobs", c.jobs, "worker threads, 0 = all cores")->envname("DICHOT_JOBS");
  sub->add_option("--max-order", c.max_order, "largest group order to enumerate")
      ->envname("DICHOT_MAX_ORDER")
      ->check(CLI::PositiveNumber);
  sub->add_option("--bf-cutoff", c.bf_cutoff, "largest k for the brute-force dichotomy count")
      ->envname("DICHOT_BF_CUTOFF")
      ->check(CLI::PositiveNumber);
  sub->add_option("--subset-cutoff", c.subset_cutoff,
                  "largest n for the brute-force subset scan of Q_rig")
      ->envname("DICHOT_SUBSET_CUTOFF")
      ->check(CLI::PositiveNumber);
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Strong dichotomy classes and rigid pattern inventories over Z/2kZ", "dichot"};
  app.require_subcommand(1);
  RunConfig c;

  auto *strong = app.add_subcommand("strong", "number s(2k) of strong dichotomy classes");
  add_common_options(strong, c, true);
  strong->add_option("--method", c.method, "formula, bruteforce or both")->envname("DICHOT_METHOD");
  strong->add_flag("--allow-even", c.allow_even, "let the brute force run for even k");

  auto *qrig = app.add_subcommand("qrig", "rigid pattern-inventory polynomial Q_rig(x)");
  add_common_options(qrig, c, false);
  auto *tom = app.add_subcommand("tom", "table of marks of Aff(Z/nZ)");
  add_common_options(tom, c, false);
  tom->add_option("--convention", c.convention, "ascending or descending subgroup order");
  auto *lattice = app.add_subcommand("lattice", "conjugacy classes of subgroups of Aff(Z/nZ)");
  add_common_options(lattice, c, false);
  auto *qp = app.add_subcommand("quasipolarities", "affine involutions without fixed points");
  add_common_options(qp, c, false);
  auto *verify = app.add_subcommand("verify", "check Q_rig(-1) = -s(2k) for odd k");
  add_common_options(verify, c, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (strong->parsed())
      return cmd_strong(c, out, err);
    if (qrig->parsed())
      return cmd_qrig(c, out, err);
    if (tom->parsed())
      return cmd_tom(c, out, err);
    if (lattice->parsed())
      return cmd_lattice(c, out, err);
    if (qp->parsed())
      return cmd_quasipolarities(c, out, err);
    if (verify->parsed())
      return cmd_verify(c, out, err);
  } catch (const PreconditionError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConsistencyError &e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace dichot

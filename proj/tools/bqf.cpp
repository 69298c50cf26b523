// bqf: command-line front end for eligibility, class counts, densities,
// Selmer sizes, class-group averages and n-monogenized counts.

#include "bqf/classgroup.hpp"
#include "bqf/enumeration.hpp"
#include "bqf/local_arith.hpp"
#include "bqf/selmer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

using namespace bqf;

namespace {

constexpr int kOk = 0, kHardError = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rows of string cells; integers and rationals are always exact strings
class Table {
 public:
  explicit Table(std::vector<std::string> cols) : cols_(std::move(cols)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void print(const std::string& format, std::ostream& os) const {
    if (format == "json-lines") {
      for (const auto& r : rows_) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < cols_.size(); ++i) j[cols_[i]] = r[i];
        os << j.dump() << "\n";
      }
    } else if (format == "text") {
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "  " : "") << cols_[i] << "=" << r[i];
        os << "\n";
      }
    } else {
      for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i];
      os << "\n";
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
      }
    }
  }

 private:
  static std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  std::vector<std::string> cols_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << x;
  return os.str();
}

Int parse_height(const std::string& s) {
  // accepts plain integers and 1e6-style powers of ten
  auto e = s.find_first_of("eE");
  try {
    if (e == std::string::npos) return Int::parse(s);
    Int mant = Int::parse(s.substr(0, e));
    int ex = std::stoi(s.substr(e + 1));
    if (ex < 0) throw UsageError("height must be an integer: " + s);
    return mant * pow(Int(10), static_cast<unsigned>(ex));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("bad height: " + s);
  }
}

std::vector<Int> parse_ladder(const std::string& s, const Int& top) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_height(item));
  if (out.empty()) out.push_back(top);
  return out;
}

double zeta2() { return M_PI * M_PI / 6.0; }

// --cache DIR, else $BQF_CACHE_DIR, else none
std::unique_ptr<ClassCache> open_cache(const std::string& flag, bool disabled) {
  if (disabled) return nullptr;
  std::string dir = flag;
  if (dir.empty())
    if (const char* env = std::getenv("BQF_CACHE_DIR")) dir = env;
  if (dir.empty()) return nullptr;
  auto cache = std::make_unique<ClassCache>(dir);
  cache->load();
  return cache;
}

void close_cache(const std::unique_ptr<ClassCache>& c) {
  if (c && c->dirty()) c->save();
}

struct Common {
  std::string format = "csv";
  int threads = 1;
  std::string cache;
  bool no_cache = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_cache) {
  cmd->add_option("--format", c.format, "csv | json-lines | text")->check(CLI::IsMember({"csv", "json-lines", "text"}));
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 256));
  if (with_cache) {
    cmd->add_option("--cache", c.cache, "per-fiber class cache directory (default: $BQF_CACHE_DIR)");
    cmd->add_flag("--no-cache", c.no_cache, "ignore any cache directory");
  }
}

bool on_off(const std::string& s) { return s == "on"; }

// --- commands ------------------------------------------------------------------

int cmd_eligible(const std::string& height, const std::string& sign, bool list, const Common& c) {
  Int X = parse_height(height);
  DiscSign ds = sign == "+" ? DiscSign::Positive : DiscSign::Negative;
  if (list) {
    Table t({"I", "J"});
    for (const auto& p : eligible_pairs(X, ds)) t.row({p.I.str(), p.J.str()});
    t.print(c.format, std::cout);
    return kOk;
  }
  long long n = eligible_pair_count(X, ds);
  double x56 = std::pow(X.to_double(), 5.0 / 6.0);
  Rational target = ds == DiscSign::Positive ? Rational(8, 135) : Rational(32, 135);
  double ratio = static_cast<double>(n) / x56;
  Table t({"X", "sign", "count", "ratio", "target", "target_value", "relative_error"});
  t.row({X.str(), sign, std::to_string(n), fixed(ratio), target.str(), fixed(target.to_double()),
         fixed(ratio / target.to_double() - 1.0)});
  t.print(c.format, std::cout);
  return kOk;
}

int cmd_count_classes(const std::string& height, const std::string& rt, const std::string& filter,
                      const std::string& weighted, bool breakdown, const Common& c) {
  Int X = parse_height(height);
  CountOptions opt;
  if (rt != "all") opt.root_type = parse_root_type(rt);
  opt.filter = filter == "strongly-maximal" ? ClassFilter::StronglyMaximal : ClassFilter::None;
  opt.weighted = on_off(weighted);
  opt.threads = c.threads;
  auto cache = open_cache(c.cache, c.no_cache);
  opt.cache = cache.get();
  auto cc = count_quartic_classes(X, opt);
  close_cache(cache);

  if (breakdown) {
    Table t({"I", "J", "n0", "n1", "n2+", "n2-", "reducible"});
    for (const auto& f : cc.breakdown)
      t.row({f.inv.I.str(), f.inv.J.str(), std::to_string(f.by_type[0]), std::to_string(f.by_type[1]),
             std::to_string(f.by_type[2]), std::to_string(f.by_type[3]), std::to_string(f.reducible)});
    t.print(c.format, std::cout);
    return kOk;
  }
  double x56 = std::pow(X.to_double(), 5.0 / 6.0);
  bool sm = opt.filter == ClassFilter::StronglyMaximal;
  // zeta(2) in the numerator for plain counts, in the denominator after the maximality sieve
  // each definite sign carries half of the 8/135 for no real roots
  const Rational num[4] = {Rational(4, 135), Rational(32, 135), Rational(4, 135), Rational(4, 135)};
  Table t({"X", "root_type", "filter", "count", "weighted", "ratio", "target", "target_value", "ratio_to_target"});
  for (int k = 0; k < 4; ++k) {
    if (opt.root_type && static_cast<int>(*opt.root_type) != k) continue;
    const Rational& base = num[k];
    double tv = base.to_double() * (sm ? 1.0 / zeta2() : zeta2());
    std::string tname = base.str() + (sm ? "/zeta(2)" : "*zeta(2)");
    double value = opt.weighted ? cc.weighted_by_type[k].to_double() : static_cast<double>(cc.by_type[k]);
    double ratio = value / x56;
    t.row({X.str(), root_type_name(static_cast<RootType>(k)), filter, std::to_string(cc.by_type[k]),
           cc.weighted_by_type[k].str(), fixed(ratio), tname, fixed(tv), fixed(ratio / tv)});
  }
  t.print(c.format, std::cout);
  std::cerr << "fibers=" << cc.fibers << " reducible=" << cc.reducible << " irreducible=" << cc.irreducible
            << " big_stabilizer=" << cc.big_stabilizer << "\n";
  return kOk;
}

int cmd_densities(long long p, const std::string& fam_name, bool tables, const Common& c) {
  auto fam = parse_family(fam_name);
  if (!fam) throw UsageError("unknown family " + fam_name);
  if (p < 2 || !is_prime(Int(p))) throw UsageError("--prime must be prime");
  auto ft = density_formula_table(p);
  auto census = density_census(*fam, p);
  int dims = *fam == Family::MonicCubic ? 3 : *fam == Family::Quartic ? 5 : *fam == Family::GeneralCubic ? 4 : 12;
  Int split_total = pow(Int(p), static_cast<unsigned>(dims)), full_total = split_total * split_total;

  Table t({"quantity", "count", "total", "density", "target", "status"});
  std::vector<std::string> text;
  bool all_ok = true;
  auto emit = [&](const std::string& what, const Rational& d, const Int& total, const Rational& target) {
    Rational cnt = d * Rational(total);
    bool ok = target == d;
    all_ok = all_ok && ok;
    t.row({what, cnt.str(), total.str(), d.str(), target.str(), ok ? "OK" : "MISMATCH"});
    text.push_back(what + ": " + cnt.str() + "/" + total.str() + " = " + d.str() + ", target " + target.str() + ", " +
                   (ok ? "OK" : "MISMATCH"));
  };
  if (*fam == Family::MonicCubic) {
    for (std::size_t i = 0; i < census.split.size(); ++i) emit(ft.monic_split[i].label, census.split[i], split_total, ft.monic_split[i].value);
    for (std::size_t i = 0; i < census.split_max.size(); ++i)
      emit(ft.monic_split_max[i].label + " maximal", census.split_max[i], full_total, ft.monic_split_max[i].value);
    emit("maximal", census.maximal, full_total, ft.monic_maximal);
  } else if (*fam == Family::Quartic) {
    for (std::size_t i = 0; i < census.split_max.size(); ++i)
      emit(ft.quartic_split_max[i].label + " strongly-maximal", census.split_max[i], full_total, ft.quartic_split_max[i].value);
    emit("strongly-maximal", census.maximal, full_total, ft.quartic_strongly_maximal);
  } else if (*fam == Family::GeneralCubic) {
    emit("maximal", census.maximal, full_total, ft.general_maximal);
  } else {
    emit("strongly-maximal", census.maximal, full_total, ft.pair_strongly_maximal);
  }
  if (c.format == "text")
    for (const auto& l : text) std::cout << l << "\n";
  else
    t.print(c.format, std::cout);
  if (tables) {
    Table r({"table", "sigma", "left", "preimage", "right_sum", "holds"});
    auto add = [&](const char* name, const std::vector<RatioRow>& rows) {
      for (const auto& row : rows) {
        std::string pre;
        for (const auto& s : row.preimage) pre += (pre.empty() ? "" : " ") + s;
        r.row({name, row.sigma, row.left.str(), pre, row.right_sum.str(), row.holds ? "OK" : "MISMATCH"});
      }
    };
    add("monic", ft.monic_ratios);
    add("general", ft.general_ratios);
    r.print(c.format, std::cout);
  }
  return all_ok ? kOk : kHardError;
}

int cmd_selmer(const std::string& curve, const Common& c) {
  auto comma = curve.find(',');
  if (comma == std::string::npos) throw UsageError("--curve expects A,B");
  Int A, B;
  try {
    A = Int::parse(curve.substr(0, comma));
    B = Int::parse(curve.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("--curve expects integers A,B");
  }
  EllipticCurve E(A, B);
  auto rep = selmer_size(E);
  auto cert = infinite_order_certificate(E);
  Table t({"curve", "I", "J", "height4", "two_torsion", "size", "power_of_two", "identity", "insoluble_classes",
           "point", "x_2P"});
  auto inv = curve_invariants(E);
  t.row({E.str(), inv.I.str(), inv.J.str(), curve_height4(E).str(), has_rational_two_torsion(E) ? "yes" : "no",
         std::to_string(rep.size), rep.power_of_two ? "yes" : "no", rep.identity_found ? "yes" : "no",
         std::to_string(rep.insoluble_classes), cert ? "(" + cert->x.str() + "," + cert->y.str() + ")" : "-",
         cert ? cert->x2.str() : "-"});
  t.print(c.format, std::cout);
  Table k({"class", "representative", "members", "identity", "places_checked"});
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& sc = rep.classes[i];
    std::string places = "inf";
    for (auto p : sc.certificate.primes_checked) places += " " + std::to_string(p);
    k.row({std::to_string(i), sc.representative.str(), std::to_string(sc.members.size()), sc.identity ? "yes" : "no",
           places});
  }
  k.print(c.format, std::cout);
  return rep.power_of_two && rep.identity_found ? kOk : kHardError;
}

CurveFamily load_family(const std::string& spec) {
  if (spec.empty() || spec == "all") return {};
  std::string text = spec;
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::string line, joined;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
      if (line.empty()) continue;
      if (line == "all") return {};
      joined += (joined.empty() ? "" : "|") + line;
    }
    text = joined;
  }
  try {
    return CurveFamily::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad family: ") + e.what());
  }
}

int cmd_selmer_average(const std::string& height, const std::string& ladder, const std::string& family,
                       const Common& c) {
  Int X = parse_height(height);
  auto fam = load_family(family);
  Table t({"X", "curves", "total_size", "mean", "target", "excluded_nonrigid", "excluded_torsion", "not_power_of_two",
           "identity_missing", "histogram"});
  for (const auto& x : parse_ladder(ladder, X)) {
    auto st = selmer_average(fam, x, c.threads);
    std::string hist;
    for (const auto& [k, v] : st.size_histogram) hist += (hist.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
    t.row({x.str(), std::to_string(st.curves), std::to_string(st.total_size),
           st.curves ? Rational(Int(st.total_size), Int(st.curves)).str() : "-", "3",
           std::to_string(st.excluded_nonrigid), std::to_string(st.excluded_torsion),
           std::to_string(st.not_power_of_two), std::to_string(st.identity_missing), hist});
  }
  t.print(c.format, std::cout);
  std::cerr << "mass ratio product over p <= 100: " << mass_ratio_product(100).str()
            << " (family largeness is assumed, not verified)\n";
  return kOk;
}

int cmd_classgroup(const std::string& height, const std::string& ladder, const std::string& sig_name,
                   const std::string& narrow, const std::string& conds, const Common& c) {
  Int X = parse_height(height);
  auto sig = parse_signature(sig_name);
  if (!sig) throw UsageError("--signature must be totally-real or complex");
  std::vector<LocalCondition> lc;
  try {
    lc = parse_local_conditions(conds);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  auto cache = open_cache(c.cache, c.no_cache);
  Table t({"X", "signature", "narrow", "fields", "sum", "average", "target", "power_of_two_violations",
           "reducible_violations", "skipped_nonmaximal", "histogram"});
  for (const auto& x : parse_ladder(ladder, X)) {
    auto st = mcc_averages(x, *sig, on_off(narrow), lc, c.threads, cache.get());
    long long sum = st.narrow ? st.sum_cl2_plus : st.sum_cl2;
    std::string hist;
    for (const auto& [k, v] : st.histogram) hist += (hist.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
    t.row({x.str(), signature_name(*sig), narrow, std::to_string(st.fields), std::to_string(sum),
           st.fields ? Rational(Int(sum), Int(st.fields)).str() : "-",
           *sig == Signature::Complex ? "2" : (st.narrow ? "5/2" : "3/2"), std::to_string(st.power_of_two_violations),
           std::to_string(st.reducible_count_violations), std::to_string(st.skipped_nonmaximal), hist});
    if (st.power_of_two_violations || st.reducible_count_violations) {
      close_cache(cache);
      t.print(c.format, std::cout);
      std::cerr << "power-of-two law violated\n";
      return kHardError;
    }
  }
  close_cache(cache);
  t.print(c.format, std::cout);
  return kOk;
}

int cmd_nmono(const std::string& height, double delta, bool per_n, const Common& c) {
  Int X = parse_height(height);
  if (!(delta > 0 && delta <= 0.25)) throw UsageError("--delta must lie in (0, 1/4]");
  auto r = n_monogenized_cubic_count(X, delta);
  double scale = std::pow(X.to_double(), 5.0 / 6.0 + 2.0 * delta / 3.0);
  Table t({"X", "delta", "max_n", "N_positive", "N_negative", "ratio_positive", "target_positive", "ratio_negative",
           "target_negative"});
  t.row({X.str(), fixed(delta, 4), std::to_string(r.max_n), std::to_string(r.positive), std::to_string(r.negative),
         fixed(r.positive / scale), "4/45", fixed(r.negative / scale), "16/45"});
  t.print(c.format, std::cout);
  if (per_n) {
    Table n({"n", "positive", "negative"});
    for (std::size_t i = 0; i < r.per_n.size(); ++i)
      n.row({std::to_string(i + 1), std::to_string(r.per_n[i].first), std::to_string(r.per_n[i].second)});
    n.print(c.format, std::cout);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary quartic forms workbench"};
  app.require_subcommand(1);
  std::string height = "1000", sign = "+", root = "all", filter = "none", weighted = "off", family, curve, ladder,
              signature = "totally-real", narrow = "off", conds;
  bool list = false, breakdown = false, tables = false, per_n = false;
  long long prime = 2;
  double delta = 0.25;
  Common common;

  auto* el = app.add_subcommand("eligible", "eligible invariant pairs with H < X");
  el->add_option("--height-max", height, "X")->required();
  el->add_option("--disc-sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}))->required();
  el->add_flag("--list", list, "print every pair instead of the count");
  add_common(el, common, false);

  auto* cc = app.add_subcommand("count-classes", "irreducible GL2(Z)-classes with H < X");
  cc->add_option("--height-max", height, "X")->required();
  cc->add_option("--root-type", root, "0, 1, 2+, 2- or all")->check(CLI::IsMember({"0", "1", "2+", "2-", "all"}));
  cc->add_option("--filter", filter, "none or strongly-maximal")->check(CLI::IsMember({"none", "strongly-maximal"}));
  cc->add_option("--weighted", weighted, "on or off")->check(CLI::IsMember({"on", "off"}));
  cc->add_flag("--breakdown", breakdown, "per-fiber table");
  add_common(cc, common, true);

  auto* de = app.add_subcommand("densities", "p-adic densities by exhaustion against closed forms");
  de->add_option("--prime", prime, "p")->required();
  de->add_option("--family", family, "monic-cubic, quartic, general-cubic or ternary-pair")->required();
  de->add_flag("--tables", tables, "also print the splitting-ratio table rows");
  add_common(de, common, false);

  auto* se = app.add_subcommand("selmer", "2-Selmer group size of y^2 = x^3 + A x + B");
  se->add_option("--curve", curve, "A,B")->required();
  add_common(se, common, false);

  auto* sa = app.add_subcommand("selmer-average", "mean 2-Selmer size over curves with H' < X");
  sa->add_option("--height-max", height, "X")->required();
  sa->add_option("--ladder", ladder, "comma-separated heights (default: X only)");
  sa->add_option("--family", family,
                 "all, a config file, or inline 'm:a,b;a,b|m2:...'; averages are only predicted for large families");
  add_common(sa, common, false);

  auto* cg = app.add_subcommand("classgroup", "average 2-torsion of class groups of monogenized cubic fields");
  cg->add_option("--height-max", height, "X")->required();
  cg->add_option("--ladder", ladder, "comma-separated heights (default: X only)");
  cg->add_option("--signature", signature, "totally-real or complex");
  cg->add_option("--narrow", narrow, "on or off")->check(CLI::IsMember({"on", "off"}));
  cg->add_option("--conditions", conds, "splitting conditions, e.g. 2:(3),5:(111)");
  add_common(cg, common, true);

  auto* nm = app.add_subcommand("nmono", "n-monogenized cubic rings");
  nm->add_option("--height-max", height, "X")->required();
  nm->add_option("--delta", delta, "0 < delta <= 1/4");
  nm->add_flag("--per-n", per_n, "per-n breakdown");
  add_common(nm, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (el->parsed()) return cmd_eligible(height, sign, list, common);
    if (cc->parsed()) return cmd_count_classes(height, root, filter, weighted, breakdown, common);
    if (de->parsed()) return cmd_densities(prime, family, tables, common);
    if (se->parsed()) return cmd_selmer(curve, common);
    if (sa->parsed()) return cmd_selmer_average(height, ladder, family, common);
    if (cg->parsed()) return cmd_classgroup(height, ladder, signature, narrow, conds, common);
    if (nm->parsed()) return cmd_nmono(height, delta, per_n, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "outside budget: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHardError;
  }
  return kUsage;
}

#include "bqf/classgroup.hpp"

#include "parallel.hpp"

#include <sstream>
#include <stdexcept>

namespace bqf {

namespace {

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

Cl2Counts tally(const InvariantPair& inv, const std::vector<QuarticForm>& forms) {
  Cl2Counts c;
  bool positive = inv.disc_numerator().sign() > 0;
  for (const auto& f : forms) {
    ++c.cl2_plus;
    if (!is_irreducible_q(f)) ++c.reducible;
    if (!positive || root_type(f) == RootType::FourReal) ++c.cl2;
  }
  c.power_of_two = pow2(c.cl2) && pow2(c.cl2_plus);
  return c;
}

}  // namespace

Cl2Counts cl2_counts(const InvariantPair& inv, const BoxConstants& box, ClassCache* cache) {
  if (!is_eligible(inv) || inv.disc_numerator().is_zero())
    throw std::invalid_argument("cl2_counts: ineligible or degenerate pair " + inv.str());
  CubicForm g = monic_cubic_for(inv);
  if (cubic_has_rational_root(g)) throw std::invalid_argument("cl2_counts: reducible cubic for " + inv.str());
  if (!is_maximal_cubic_everywhere(g)) throw std::invalid_argument("cl2_counts: non-maximal cubic for " + inv.str());
  return tally(inv, fiber_forms(inv, box, true, cache));
}

std::optional<Signature> parse_signature(std::string_view s) {
  if (s == "real" || s == "totally-real" || s == "+") return Signature::TotallyReal;
  if (s == "complex" || s == "-") return Signature::Complex;
  return std::nullopt;
}

const char* signature_name(Signature s) { return s == Signature::TotallyReal ? "totally-real" : "complex"; }

std::vector<LocalCondition> parse_local_conditions(const std::string& s) {
  std::vector<LocalCondition> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("local condition needs p:(symbol): " + item);
    LocalCondition c;
    c.p = std::stoll(item.substr(0, colon));
    if (c.p < 2 || !is_prime(Int(c.p))) throw std::invalid_argument("local condition prime: " + item);
    auto sigma = parse_cubic_split(item.substr(colon + 1));
    if (!sigma) throw std::invalid_argument("unknown splitting symbol: " + item);
    c.sigma = *sigma;
    out.push_back(c);
  }
  return out;
}

double MccStats::target() const {
  if (signature == Signature::Complex) return 2.0;
  return narrow ? 2.5 : 1.5;
}

MccStats mcc_averages(const Int& X, Signature sig, bool narrow, const std::vector<LocalCondition>& conds, int threads,
                      ClassCache* cache, const BoxConstants& box) {
  MccStats st;
  st.X = X;
  st.signature = sig;
  st.narrow = narrow;
  auto monic = monic_cubic_classes(X, sig == Signature::TotallyReal ? DiscSign::Positive : DiscSign::Negative);
  std::vector<InvariantPair> fields;
  for (const auto& m : monic) {
    if (!m.irreducible) {
      ++st.skipped_reducible;
      continue;
    }
    bool ok = true;
    for (const auto& c : conds)
      if (splitting_type_cubic(m.form, c.p) != c.sigma) ok = false;
    if (!ok) {
      ++st.skipped_conditions;
      continue;
    }
    if (!is_maximal_cubic_everywhere(m.form)) {
      ++st.skipped_nonmaximal;
      continue;
    }
    fields.push_back(m.inv);
  }
  std::vector<Cl2Counts> counts(fields.size());
  detail::parallel_for(fields.size(), threads,
                       [&](std::size_t i) { counts[i] = tally(fields[i], fiber_forms(fields[i], box, true, cache)); });
  for (const auto& c : counts) {
    ++st.fields;
    st.sum_cl2 += c.cl2;
    st.sum_cl2_plus += c.cl2_plus;
    ++st.histogram[narrow ? c.cl2_plus : c.cl2];
    if (!c.power_of_two) ++st.power_of_two_violations;
    if (c.reducible != 1) ++st.reducible_count_violations;
  }
  return st;
}

long long strongly_maximal_class_count(const Int& X, RootType t, int threads, ClassCache* cache) {
  CountOptions opt;
  opt.root_type = t;
  opt.filter = ClassFilter::StronglyMaximal;
  opt.threads = threads;
  opt.cache = cache;
  return count_quartic_classes(X, opt).total;
}

}  // namespace bqf
